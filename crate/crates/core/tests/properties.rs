use ccx_core::field::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod};
use ccx_core::grassmann::interpolate;
use ccx_core::k0::{K0Basis, K0Vector};
use ccx_core::laurent::{parse_laurent, LaurentPoly};
use ccx_core::matrix::Matrix;
use proptest::prelude::*;

const P: u64 = 101;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..P, rows * cols).prop_map(move |d| Matrix::from_rows_raw(P, rows, cols, d))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..3, 3), -3i64..4), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPoly::zero(3), |acc, (e, c)| acc.add(&LaurentPoly::monomial(e, c)).unwrap())
    })
}

proptest! {
    #[test]
    fn field_axioms(a in 0..P, b in 0..P, c in 0..P) {
        prop_assert_eq!(mul_mod(a, add_mod(b, c, P), P), add_mod(mul_mod(a, b, P), mul_mod(a, c, P), P));
        prop_assert_eq!(add_mod(sub_mod(a, b, P), b, P), a);
        if a != 0 {
            prop_assert_eq!(mul_mod(a, inv_mod(a, P), P), 1);
            prop_assert_eq!(pow_mod(a, P - 1, P), 1);
        }
    }

    #[test]
    fn rank_nullity(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in kernel {
            prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_reproduces_right_hand_side(a in matrix(3, 4), x in matrix(4, 2)) {
        let b = a.mul(&x);
        let y = a.solve(&b).unwrap().expect("consistent by construction");
        prop_assert_eq!(a.mul(&y), b);
    }

    #[test]
    fn inverse_is_two_sided(a in matrix(3, 3)) {
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv), Matrix::identity(3, P));
            prop_assert_eq!(inv.mul(&a), Matrix::identity(3, P));
        } else {
            prop_assert!(a.rank() < 3);
        }
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn specialization_is_a_ring_map(a in laurent(), b in laurent()) {
        let s = |x: &LaurentPoly| x.specialize(&[1, 2]);
        prop_assert_eq!(s(&a.mul(&b).unwrap()), s(&a).mul(&s(&b)).unwrap());
        prop_assert_eq!(s(&a.add(&b).unwrap()), s(&a).add(&s(&b)).unwrap());
        prop_assert_eq!(a.value_at_ones(), s(&a).value_at_ones());
    }

    #[test]
    fn laurent_text_round_trips(a in laurent()) {
        prop_assert_eq!(parse_laurent(3, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn interpolation_recovers_counting_polynomials(coeffs in prop::collection::vec(0i64..5, 1..4)) {
        let eval = |q: u64| coeffs.iter().rev().fold(0i64, |acc, &c| acc * q as i64 + c) as u64;
        let points: Vec<(u64, u64)> = [2u64, 3, 5, 7, 11].iter().map(|&q| (q, eval(q))).collect();
        let poly = interpolate(&points, coeffs.len() - 1).unwrap();
        let mut want = coeffs.clone();
        while want.len() > 1 && want.last() == Some(&0) {
            want.pop();
        }
        prop_assert_eq!(&poly.coefficients, &want);
        prop_assert_eq!(poly.euler_characteristic(), coeffs.iter().sum::<i64>());
    }

    #[test]
    fn k0_group_laws(a in prop::collection::vec(-5i64..5, 3), b in prop::collection::vec(-5i64..5, 3)) {
        let x = K0Vector::new(K0Basis::SummandsOfT, a);
        let y = K0Vector::new(K0Basis::SummandsOfT, b);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
    }
}
