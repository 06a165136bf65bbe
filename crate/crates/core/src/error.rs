use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    InvalidPrime(u64),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },

    #[error("quotient did not stabilize below path length {bound}; algebra is infinite-dimensional or the bound is too small")]
    InfiniteDimensional { bound: usize },
    #[error("relation {0} is not contained in the square of the arrow ideal")]
    NonAdmissibleRelation(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("structure constants are not associative on ({0})")]
    NonAssociative(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("Cartan matrix is singular")]
    SingularCartan,

    #[error("invalid module {name}: {reason}")]
    InvalidModule { name: String, reason: String },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("operation requires a nonzero module")]
    ZeroModule,
    #[error("extension class is zero; the sequence splits")]
    SplitExtension,
    #[error("decomposition failed after {draws} random draws; the field may be too small")]
    DecompositionFailed { draws: usize },
    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("algebra is not self-injective: {0}")]
    NotSelfInjective(String),
    #[error("Ext^1 symmetry fails: dim Ext^1({a},{b}) = {ab} but dim Ext^1({b},{a}) = {ba}")]
    NotTwoCalabiYau {
        a: String,
        b: String,
        ab: usize,
        ba: usize,
    },
    #[error("catalog entries {0} and {1} are isomorphic")]
    DuplicateCatalogEntry(String, String),
    #[error("catalog entry {0} is not indecomposable")]
    DecomposableCatalogEntry(String),
    #[error("not a cluster-tilting object: {0}")]
    NotClusterTilting(String),
    #[error("approximation kernel of {0} does not lie in add T")]
    KernelNotInAddT(String),
    #[error("the two formulas for theta disagree on {object}: {definition} vs {via_op_index}")]
    ThetaMismatch {
        object: String,
        definition: String,
        via_op_index: String,
    },
    #[error("phi system is inconsistent: {0}")]
    PhiInconsistent(String),
    #[error("catalog classes span rank {rank} of K0(mod C), need {needed}")]
    PhiDeficientSpan { rank: usize, needed: usize },

    #[error("module of dimension {dim} exceeds the enumeration cap {cap}")]
    EnumerationCap { dim: usize, cap: usize },
    #[error("point counts are not polynomial within the degree bound: {0}")]
    Interpolation(String),

    #[error("dim Ext^1({n},{m}) = {dim}, expected 1")]
    ExtNotOneDimensional { n: String, m: String, dim: usize },
    #[error("unknown module {0}")]
    UnknownModule(String),
    #[error("indecomposable summand of {0} is not in the catalog")]
    NotInCatalog(String),

    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json error in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}
