//! Soundness of the certified root-modulus enclosures, checked against an
//! independent float oracle: eigenvalues of the companion matrix computed
//! by nalgebra. The certified interval must contain the oracle value up to
//! float fuzz, and the reversal duality min(p) * max(reverse p) must
//! bracket 1.

use dynzeta::{max_root_modulus, min_root_modulus, rat, Polynomial, Rational};
use nalgebra::DMatrix;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn tol9() -> Rational {
    rat(1, 1_000_000_000)
}

fn to_f64(x: &Rational) -> f64 {
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

/// Extreme root moduli from the companion matrix, in floats.
fn oracle_moduli(p: &Polynomial) -> Option<(f64, f64)> {
    let coeffs = p.coeffs();
    let lead = coeffs.last()?;
    let n = coeffs.len() - 1;
    if n == 0 {
        return None;
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -to_f64(&(&coeffs[i] / lead));
    }
    let eig = m.complex_eigenvalues();
    let moduli: Vec<f64> = eig.iter().map(|z| z.norm()).collect();
    let max = moduli.iter().cloned().fold(f64::MIN, f64::max);
    let min = moduli.iter().cloned().fold(f64::MAX, f64::min);
    Some((min, max))
}

fn arb_poly(deg_range: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<i64>> {
    deg_range.prop_flat_map(|deg| {
        (
            prop::collection::vec(-20i64..=20, deg),
            (1i64..=20).prop_union(-20i64..=-1),
        )
            .prop_map(|(mut lower, lead)| {
                lower.push(lead);
                lower
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn max_enclosure_contains_the_oracle(coeffs in arb_poly(2..=6)) {
        let p = Polynomial::from_ints(&coeffs);
        prop_assume!(p.degree().map_or(false, |d| d >= 2));
        let iv = max_root_modulus(&p, &tol9()).unwrap();
        let (_, oracle) = oracle_moduli(&p).unwrap();
        let fuzz = 1e-6 * (1.0 + oracle.abs());
        prop_assert!(to_f64(&iv.lo) <= oracle + fuzz, "lo {} > oracle {}", iv.lo, oracle);
        prop_assert!(to_f64(&iv.hi) >= oracle - fuzz, "hi {} < oracle {}", iv.hi, oracle);
    }

    #[test]
    fn min_enclosure_contains_the_oracle(coeffs in arb_poly(2..=6)) {
        let p = Polynomial::from_ints(&coeffs);
        prop_assume!(p.degree().map_or(false, |d| d >= 2));
        prop_assume!(!p.constant_term().is_zero());
        let iv = min_root_modulus(&p, &tol9()).unwrap();
        let (oracle, _) = oracle_moduli(&p).unwrap();
        let fuzz = 1e-6 * (1.0 + oracle.abs());
        prop_assert!(to_f64(&iv.lo) <= oracle + fuzz, "lo {} > oracle {}", iv.lo, oracle);
        prop_assert!(to_f64(&iv.hi) >= oracle - fuzz, "hi {} < oracle {}", iv.hi, oracle);
    }

    #[test]
    fn reversal_duality_brackets_one(coeffs in arb_poly(2..=6)) {
        let p = Polynomial::from_ints(&coeffs);
        prop_assume!(p.degree().map_or(false, |d| d >= 2));
        prop_assume!(!p.constant_term().is_zero());
        let minm = min_root_modulus(&p, &tol9()).unwrap();
        let maxm = max_root_modulus(&p.reverse(), &tol9()).unwrap();
        prop_assert!(minm.mul(&maxm).contains(&Rational::one()));
    }
}

#[test]
fn enclosures_are_tight_on_wilkinson_style_products() {
    // (t-1)(t-2)...(t-6): well-separated integer roots
    let mut p = Polynomial::one();
    for r in 1..=6 {
        p = p.mul(&Polynomial::from_ints(&[-r, 1]));
    }
    let max = max_root_modulus(&p, &tol9()).unwrap();
    assert!(max.contains(&rat(6, 1)));
    assert!(max.width() <= tol9());
    let min = min_root_modulus(&p, &tol9()).unwrap();
    assert!(min.contains(&rat(1, 1)));
    assert!(min.width() <= tol9());
}
