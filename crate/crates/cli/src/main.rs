use std::path::PathBuf;
use std::process::ExitCode;

use ccx_core::character::{Engine, EngineConfig, Formula};
use ccx_core::error::Error;
use ccx_core::fixture::Fixture;
use ccx_core::grassmann::{DEFAULT_ENUM_CAP, DEFAULT_PRIMES};
use ccx_core::laurent::LaurentPoly;
use ccx_core::module::{ext1_dim, Module};
use ccx_core::verify::{self, Selection};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Indices, the map Phi and cluster characters of a 2-CY Frobenius category.
#[derive(Parser, Debug)]
#[command(name = "ccx", version)]
struct Cli {
    /// Fixture directory containing category.json.
    #[arg(long, value_name = "DIR")]
    fixture: PathBuf,
    /// Prime for the main computation; defaults to the algebra file's.
    #[arg(long)]
    prime: Option<u64>,
    /// Primes used for Grassmannian point counts.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES.to_vec())]
    primes: Vec<u64>,
    /// Largest module dimension the submodule enumerator accepts.
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    enum_cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character of a catalog object or of a sum such as `T2+2`.
    Character {
        module: String,
        #[arg(long, value_enum, default_value_t = FormulaArg::X)]
        formula: FormulaArg,
    },
    /// Index of each catalog object, or of one.
    Index { module: Option<String> },
    /// Theta of each catalog object, or of one.
    Theta { module: Option<String> },
    /// The matrix of Phi.
    Phi,
    /// Runs the invariant suite.
    Verify {
        #[arg(long)]
        multiplication: bool,
        #[arg(long)]
        condition_tt: bool,
        #[arg(long)]
        specialize: bool,
        #[arg(long)]
        all: bool,
    },
    /// Lists the catalog.
    Catalog,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormulaArg {
    X,
    Fu,
    Palu,
}

impl From<FormulaArg> for Formula {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::X => Formula::Index,
            FormulaArg::Fu => Formula::FuKeller,
            FormulaArg::Palu => Formula::Palu,
        }
    }
}

enum Failure {
    /// A check did not pass; the report is still printed.
    Verification(String),
    Setup(Error),
    Runtime(Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) | Failure::Runtime(_) => 1,
            Failure::Setup(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Verification(out) => print!("{out}"),
                Failure::Setup(e) => eprintln!("ccx: {e}"),
                Failure::Runtime(e) => eprintln!("ccx: {e}"),
            }
            ExitCode::from(code)
        }
    }
}

fn render(cli: &Cli, value: Value, text: String) -> String {
    if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
    } else {
        text
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let fixture = Fixture::load(&cli.fixture).map_err(Failure::Setup)?;
    let prime = cli.prime.unwrap_or_else(|| fixture.default_prime());
    let config = EngineConfig {
        prime,
        primes: cli.primes.clone(),
        enum_cap: cli.enum_cap,
        seed: cli.seed,
    };
    let engine = Engine::new(fixture, config).map_err(Failure::Setup)?;
    let rt = Failure::Runtime;
    match &cli.command {
        Command::Character { module, formula } => {
            let formula = Formula::from(*formula);
            let value = character(&engine, formula, module).map_err(rt)?;
            let label = match formula {
                Formula::Index => "x",
                Formula::FuKeller => "fu",
                Formula::Palu => "palu",
            };
            Ok(render(
                cli,
                json!({"module": module, "formula": label, "character": value.to_string()}),
                format!("{value}\n"),
            ))
        }
        Command::Index { module } => per_object(cli, &engine, module.as_deref(), "index", |e, m| {
            Ok(e.tilting().index(m)?.to_string())
        }),
        Command::Theta { module } => per_object(cli, &engine, module.as_deref(), "theta", |e, m| {
            Ok(e.tilting().theta(m)?.to_string())
        }),
        Command::Phi => {
            let phi = engine.tilting().phi();
            let columns: Vec<String> = (0..phi.r()).map(|j| phi.column(j).to_string()).collect();
            let mut text = String::new();
            for (j, c) in columns.iter().enumerate() {
                text.push_str(&format!("Phi(S'{}) = {c}\n", j + 1));
            }
            text.push_str(&format!("{phi}\n"));
            Ok(render(cli, json!({"columns": columns, "matrix": phi.rows()}), text))
        }
        Command::Verify {
            multiplication,
            condition_tt,
            specialize,
            all,
        } => {
            let sel = Selection {
                multiplication: *multiplication,
                condition_tt: *condition_tt,
                specialize: *specialize,
                all: *all,
            };
            let report = verify::run(&engine, sel);
            let out = render(cli, report.to_json(), report.to_text());
            if report.passed() {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Catalog => {
            let t = engine.tilting();
            let cat = t.category().catalog();
            let mut text = String::new();
            let mut items = Vec::new();
            for e in cat {
                let ext: Vec<usize> = cat.iter().map(|o| ext1_dim(&e.module, &o.module)).collect();
                let summand = t.summand_index(&e.module).map(|i| format!("T{}", i + 1));
                text.push_str(&format!(
                    "{}: dims {:?}{}{}, Ext^1 with catalog {:?}\n",
                    e.name,
                    e.module.dims(),
                    if e.projective { ", projective" } else { "" },
                    summand.as_ref().map(|s| format!(", summand {s}")).unwrap_or_default(),
                    ext
                ));
                items.push(json!({
                    "name": e.name,
                    "dims": e.module.dims(),
                    "projective": e.projective,
                    "summand": summand,
                    "ext1": ext,
                }));
            }
            Ok(render(cli, json!({"catalog": items}), text))
        }
    }
}

/// Parses `A+B+...` into a direct sum of catalog objects.
fn parse_sum(engine: &Engine, spec: &str) -> Result<Module, Error> {
    let parts = spec
        .split('+')
        .map(|n| engine.module(n.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let alg = engine.tilting().category().algebra().clone();
    Ok(Module::direct_sum_all(alg, parts.iter()))
}

fn character(engine: &Engine, formula: Formula, spec: &str) -> Result<LaurentPoly, Error> {
    if !spec.contains('+') {
        return engine.character(formula, spec.trim());
    }
    engine.character_of(formula, &parse_sum(engine, spec)?)
}

fn per_object(
    cli: &Cli,
    engine: &Engine,
    module: Option<&str>,
    key: &str,
    f: impl Fn(&Engine, &Module) -> Result<String, Error>,
) -> Result<String, Failure> {
    let names: Vec<String> = match module {
        Some(m) => vec![m.to_string()],
        None => engine.catalog_names(),
    };
    let mut text = String::new();
    let mut items = Vec::new();
    for name in names {
        let m = parse_sum(engine, &name).map_err(Failure::Runtime)?;
        let v = f(engine, &m).map_err(Failure::Runtime)?;
        text.push_str(&format!("{name}: {v}\n"));
        items.push(json!({"module": name, key: v}));
    }
    Ok(render(cli, json!({ key: items }), text))
}
