//! Positivity analysis for log-zeta series.
//!
//! When the trace sequence is nonnegative, the exponential of its
//! generating series dominates it coefficientwise, and both series share a
//! radius of convergence. This module checks the nonnegativity hypothesis,
//! builds the Bell-type polynomials that express derivatives of exp(G) in
//! derivatives of G (all with positive integer coefficients, which is the
//! whole point), verifies the domination, and estimates radii from
//! coefficient tails. Everything except the radius estimate is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{ln_abs, Rational};
use crate::series::TruncatedSeries;

/// Outcome of a coefficientwise check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    Pass,
    FirstViolation(usize),
}

impl Positivity {
    pub fn is_pass(&self) -> bool {
        matches!(self, Positivity::Pass)
    }
}

/// Checks that every coefficient of `g` is nonnegative. The constant term
/// must be zero (log-zeta series live in t*Q[[t]]).
pub fn nonneg_check(g: &TruncatedSeries) -> Result<Positivity> {
    if !g.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm(g.coeff(0).to_string()));
    }
    for k in 1..=g.order() {
        if g.coeff(k).is_negative() {
            return Ok(Positivity::FirstViolation(k));
        }
    }
    Ok(Positivity::Pass)
}

/// Multivariate polynomial in x_1..x_n with positive integer
/// coefficients, stored sparsely by exponent vector.
///
/// The structural facts that matter downstream: the monomial x_n appears
/// with coefficient exactly 1, and every other monomial involves only
/// x_1..x_{n-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellPolynomial {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl BellPolynomial {
    fn validate(&self) {
        let mut top = vec![0u32; self.n];
        top[self.n - 1] = 1;
        assert_eq!(
            self.terms.get(&top),
            Some(&BigInt::one()),
            "x_n must appear with coefficient 1"
        );
        for (mono, coeff) in &self.terms {
            assert_eq!(mono.len(), self.n);
            assert!(coeff.is_positive(), "coefficients must be positive");
            if *mono != top {
                assert_eq!(mono[self.n - 1], 0, "only x_n's own monomial may use x_n");
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    /// Evaluates at the first `n` entries of `xs`.
    pub fn eval(&self, xs: &[Rational]) -> Rational {
        assert!(xs.len() >= self.n, "not enough arguments");
        let mut total = Rational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = Rational::from_integer(coeff.clone());
            for (x, &e) in xs.iter().zip(mono) {
                for _ in 0..e {
                    term *= x;
                }
            }
            total += term;
        }
        total
    }
}

/// The derivative polynomials P_1..P_n: (exp G)^(k)(0) = P_k(G'(0), ...,
/// G^(k)(0)). Built by the chain-rule recursion
/// P_{k+1} = sum_i x_{i+1} dP_k/dx_i + x_1 P_k, which visibly preserves
/// positivity of all coefficients.
pub fn bell_polynomials(n: usize) -> Result<Vec<BellPolynomial>> {
    if !(1..=12).contains(&n) {
        return Err(Error::BellIndexOutOfRange(n));
    }
    let mut out: Vec<BellPolynomial> = Vec::with_capacity(n);
    let mut current: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    current.insert(vec![1], BigInt::one());
    for k in 1..=n {
        let poly = BellPolynomial {
            n: k,
            terms: current.clone(),
        };
        poly.validate();
        out.push(poly);
        if k == n {
            break;
        }
        let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        let mut bump = |mono: Vec<u32>, coeff: BigInt| {
            *next.entry(mono).or_insert_with(BigInt::zero) += coeff;
        };
        for (mono, coeff) in &current {
            // x_1 * P_k
            let mut lifted = mono.clone();
            lifted.push(0);
            lifted[0] += 1;
            bump(lifted, coeff.clone());
            // x_{i+1} * dP_k/dx_i
            for i in 0..k {
                if mono[i] == 0 {
                    continue;
                }
                let mut shifted = mono.clone();
                shifted.push(0);
                shifted[i] -= 1;
                shifted[i + 1] += 1;
                bump(shifted, coeff * BigInt::from(mono[i]));
            }
        }
        current = next;
    }
    Ok(out)
}

/// Verifies coeff_n(exp G) >= coeff_n(G) for 1 <= n <= order. Requires a
/// nonnegative G; a violation on valid input would contradict the
/// positivity of the derivative polynomials, so this is a bug trap, not
/// an expected outcome.
pub fn derivative_domination_check(g: &TruncatedSeries) -> Result<Positivity> {
    match nonneg_check(g)? {
        Positivity::Pass => {}
        Positivity::FirstViolation(k) => return Err(Error::NegativeCoefficient(k)),
    }
    let e = g.exp()?;
    for k in 1..=g.order() {
        if e.coeff(k) < g.coeff(k) {
            return Ok(Positivity::FirstViolation(k));
        }
    }
    Ok(Positivity::Pass)
}

/// Radius estimate from the coefficient tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusEstimate {
    Finite(f64),
    Unbounded,
}

/// Estimates the radius of convergence as the reciprocal of a limsup
/// proxy: the geometric mean of |a_k|^(1/k) over the last `window`
/// coefficients. Zero coefficients are skipped; if the whole window is
/// zero the series is (as far as the data shows) a polynomial and the
/// radius is unbounded.
pub fn radius_estimate(s: &TruncatedSeries, window: usize) -> Result<RadiusEstimate> {
    if window < 4 {
        return Err(Error::WindowTooSmall(window));
    }
    if s.order() < 2 * window {
        return Err(Error::WindowTooLarge {
            order: s.order(),
            window,
        });
    }
    let mut log_sum = 0.0;
    let mut samples = 0usize;
    for k in (s.order() - window + 1)..=s.order() {
        let a = s.coeff(k);
        if a.is_zero() {
            continue;
        }
        log_sum += ln_abs(&a) / k as f64;
        samples += 1;
    }
    if samples == 0 {
        return Ok(RadiusEstimate::Unbounded);
    }
    Ok(RadiusEstimate::Finite((-(log_sum / samples as f64)).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{abelian_graded_action, torus_graded_action, AbelianProductModel, IntMatrix, TorusModel};
    use crate::models::trace_sequence;
    use crate::poly::Polynomial;
    use crate::ratfun::RationalFunction;
    use crate::rational::{rat, rat_int};

    fn log_zeta(traces: &[Rational]) -> TruncatedSeries {
        let mut coeffs = vec![Rational::zero()];
        for (i, tr) in traces.iter().enumerate() {
            coeffs.push(tr * rat(1, (i + 1) as i64));
        }
        TruncatedSeries::new(coeffs)
    }

    #[test]
    fn abelian_log_zeta_is_nonnegative() {
        let model = AbelianProductModel::new(5, -3, IntMatrix::from_ints(&[&[1]])).unwrap();
        let action = abelian_graded_action(&model).unwrap();
        let g = log_zeta(&trace_sequence(&action, 10));
        assert_eq!(nonneg_check(&g).unwrap(), Positivity::Pass);
    }

    #[test]
    fn torus_log_zeta_fails_at_index_one() {
        let model = TorusModel::new(2, IntMatrix::from_ints(&[&[2, 3], &[1, 2]])).unwrap();
        let action = torus_graded_action(&model).unwrap();
        let g = log_zeta(&trace_sequence(&action, 6));
        assert_eq!(nonneg_check(&g).unwrap(), Positivity::FirstViolation(1));
    }

    #[test]
    fn zero_series_passes() {
        assert_eq!(
            nonneg_check(&TruncatedSeries::zero(5)).unwrap(),
            Positivity::Pass
        );
    }

    #[test]
    fn nonzero_constant_term_is_rejected() {
        let s = TruncatedSeries::one(3);
        assert!(matches!(
            nonneg_check(&s),
            Err(Error::NonzeroConstantTerm(_))
        ));
    }

    #[test]
    fn first_bell_polynomials_are_the_classics() {
        let ps = bell_polynomials(3).unwrap();
        // P_1 = x_1
        assert_eq!(
            ps[0].terms().iter().collect::<Vec<_>>(),
            vec![(&vec![1u32], &BigInt::one())]
        );
        // P_2 = x_2 + x_1^2
        let p2: Vec<(Vec<u32>, i64)> = vec![(vec![0, 1], 1), (vec![2, 0], 1)];
        assert_eq!(
            ps[1].terms(),
            &p2.into_iter()
                .map(|(m, c)| (m, BigInt::from(c)))
                .collect::<BTreeMap<_, _>>()
        );
        // P_3 = x_3 + 3 x_1 x_2 + x_1^3
        let p3: Vec<(Vec<u32>, i64)> = vec![(vec![0, 0, 1], 1), (vec![1, 1, 0], 3), (vec![3, 0, 0], 1)];
        assert_eq!(
            ps[2].terms(),
            &p3.into_iter()
                .map(|(m, c)| (m, BigInt::from(c)))
                .collect::<BTreeMap<_, _>>()
        );
    }

    #[test]
    fn bell_values_at_one_are_bell_numbers() {
        let ps = bell_polynomials(5).unwrap();
        let ones = vec![rat_int(1); 5];
        let values: Vec<Rational> = ps.iter().map(|p| p.eval(&ones)).collect();
        assert_eq!(
            values,
            vec![rat_int(1), rat_int(2), rat_int(5), rat_int(15), rat_int(52)]
        );
    }

    #[test]
    fn bell_index_bounds() {
        assert!(matches!(bell_polynomials(0), Err(Error::BellIndexOutOfRange(0))));
        assert!(matches!(bell_polynomials(13), Err(Error::BellIndexOutOfRange(13))));
        assert!(bell_polynomials(12).is_ok());
    }

    #[test]
    fn domination_holds_for_harmonic_log() {
        // G = sum t^n / n = -log(1 - t)
        let mut coeffs = vec![Rational::zero()];
        for n in 1..=8 {
            coeffs.push(rat(1, n));
        }
        let g = TruncatedSeries::new(coeffs);
        assert_eq!(derivative_domination_check(&g).unwrap(), Positivity::Pass);
    }

    #[test]
    fn domination_holds_for_plain_t() {
        let g = TruncatedSeries::new(vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(derivative_domination_check(&g).unwrap(), Positivity::Pass);
    }

    #[test]
    fn domination_rejects_negative_input() {
        let g = TruncatedSeries::new(vec![rat_int(0), rat_int(1), rat_int(-2)]);
        assert!(matches!(
            derivative_domination_check(&g),
            Err(Error::NegativeCoefficient(2))
        ));
    }

    #[test]
    fn radius_of_a_geometric_series() {
        let rf = RationalFunction::new(
            Polynomial::one(),
            Polynomial::from_ints(&[1, -4]),
        )
        .unwrap();
        let s = rf.expand(32);
        match radius_estimate(&s, 8).unwrap() {
            RadiusEstimate::Finite(r) => assert!((r - 0.25).abs() <= 0.25 * 0.05),
            RadiusEstimate::Unbounded => panic!("geometric series has a finite radius"),
        }
    }

    #[test]
    fn log_and_exp_radii_agree() {
        // G = sum (2t)^n / n, exp(G) = 1/(1-2t); the 1/n factor biases the
        // log-side estimate by k^(1/k) ~ 7% at this window, so the
        // agreement tolerance is looser than the exp-side one
        let mut coeffs = vec![Rational::zero()];
        for n in 1..=64i64 {
            coeffs.push(rat(2, 1).pow(n as i32) * rat(1, n));
        }
        let g = TruncatedSeries::new(coeffs);
        let e = g.exp().unwrap();
        let (rg, re) = match (radius_estimate(&g, 8).unwrap(), radius_estimate(&e, 8).unwrap()) {
            (RadiusEstimate::Finite(a), RadiusEstimate::Finite(b)) => (a, b),
            _ => panic!("both radii are finite"),
        };
        assert!((rg - re).abs() <= 0.10 * re.max(rg));
        assert!((re - 0.5).abs() <= 0.5 * 0.05);
    }

    #[test]
    fn polynomial_tail_is_unbounded() {
        let s = TruncatedSeries::from_polynomial(&Polynomial::from_ints(&[0, 0, 0, 1]), 20);
        assert_eq!(radius_estimate(&s, 8).unwrap(), RadiusEstimate::Unbounded);
    }

    #[test]
    fn window_preconditions() {
        let s = TruncatedSeries::zero(10);
        assert!(matches!(
            radius_estimate(&s, 3),
            Err(Error::WindowTooSmall(3))
        ));
        assert!(matches!(
            radius_estimate(&s, 6),
            Err(Error::WindowTooLarge { order: 10, window: 6 })
        ));
    }
}
