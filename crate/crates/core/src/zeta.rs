//! The twisted zeta function, built three ways and cross-checked.
//!
//! Z(t) = exp(sum_n Tr((f . F^n)*) t^n / n) is taken as the definition:
//! the series route exponentiates the trace sequence, the reconstruction
//! route recovers a rational function from the series coefficients, and
//! the product route multiplies the degree-wise determinants
//! det(1 - t frob f)^(+-1). Rationality says all three agree; `zeta`
//! records whether they actually do.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::models::{
    abelian_graded_action, torus_fixed_count_formula, torus_graded_action, trace_sequence,
    AbelianProductModel, GradedAction, TorusModel,
};
use crate::ratfun::{reconstruct_rational, RationalFunction};
use crate::rational::{rat, Rational};
use crate::series::TruncatedSeries;

/// The zeta function of one graded action, all three representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaResult {
    pub traces: Vec<Rational>,
    pub series: TruncatedSeries,
    pub reconstructed: RationalFunction,
    pub product_form: RationalFunction,
    pub agreement: bool,
}

/// exp of the trace generating series sum_{n=1..N} traces[n] t^n / n,
/// truncated at order N.
pub fn zeta_series(traces: &[Rational], n_terms: usize) -> Result<TruncatedSeries> {
    assert!(
        n_terms <= traces.len(),
        "requested order exceeds the available traces"
    );
    let mut coeffs = Vec::with_capacity(n_terms + 1);
    coeffs.push(Rational::zero());
    for (i, tr) in traces.iter().take(n_terms).enumerate() {
        coeffs.push(tr * rat(1, (i + 1) as i64));
    }
    TruncatedSeries::new(coeffs).exp()
}

/// The alternating determinant product: numerator over odd degrees,
/// denominator over even degrees, each factor det(1 - t frob f).
pub fn product_formula(action: &GradedAction) -> RationalFunction {
    let mut num = crate::poly::Polynomial::one();
    let mut den = crate::poly::Polynomial::one();
    for piece in action.pieces() {
        if piece.size() == 0 {
            continue;
        }
        let factor = piece
            .combined()
            .det_one_minus_t()
            .expect("validated square piece");
        if piece.degree % 2 == 1 {
            num = num.mul(&factor);
        } else {
            den = den.mul(&factor);
        }
    }
    RationalFunction::new(num, den).expect("determinant factors have constant term 1")
}

/// Computes the zeta function of the action with `n_terms` series terms
/// and checks that reconstruction agrees with the determinant product.
///
/// The reconstruction degree bounds are the parity Betti totals, so
/// `n_terms` must be at least their sum plus one.
pub fn zeta(action: &GradedAction, n_terms: usize) -> Result<ZetaResult> {
    let (even, odd) = action.betti_totals();
    let min = even + odd + 1;
    if n_terms < min {
        return Err(Error::NotEnoughTerms {
            got: n_terms,
            min,
        });
    }
    let traces = trace_sequence(action, n_terms);
    let series = zeta_series(&traces, n_terms)?;
    let reconstructed = reconstruct_rational(series.coeffs(), odd, even)?;
    let product_form = product_formula(action);
    let agreement = reconstructed == product_form;
    Ok(ZetaResult {
        traces,
        series,
        reconstructed,
        product_form,
        agreement,
    })
}

/// A model whose twisted fixed points admit an independent exact count.
#[derive(Debug, Clone)]
pub enum CountedModel {
    Torus(TorusModel),
    Abelian(AbelianProductModel),
}

impl CountedModel {
    pub fn graded_action(&self) -> Result<GradedAction> {
        match self {
            CountedModel::Torus(m) => torus_graded_action(m),
            CountedModel::Abelian(m) => abelian_graded_action(m),
        }
    }

    /// Exact fixed-point count of f . F^m: the determinant formula for
    /// tori, deg(1 - f F^m) = det(I - combined on degree 1) for abelian
    /// products.
    fn fixed_count(&self, action: &GradedAction, m: u32) -> Result<Rational> {
        match self {
            CountedModel::Torus(model) => Ok(Rational::from_integer(
                torus_fixed_count_formula(model, m)?,
            )),
            CountedModel::Abelian(_) => {
                let degree1 = action
                    .pieces()
                    .iter()
                    .find(|p| p.degree == 1)
                    .expect("abelian action has a degree-1 piece");
                let combined = degree1
                    .f_action
                    .mul(&degree1.frob_action.pow(m as u64).expect("square"))
                    .expect("sizes match");
                let n = combined.n_rows();
                QMatrix::identity(n).sub(&combined).expect("same size").det()
            }
        }
    }
}

/// Least m <= max_m for which the alternating trace of (f . F^m)* is a
/// nonnegative integer equal to the model's independent fixed-point
/// count; None when no m in range qualifies.
pub fn n0_estimate(model: &CountedModel, max_m: u32) -> Result<Option<u32>> {
    assert!(max_m >= 1);
    let action = model.graded_action()?;
    // per piece, frob_action^m maintained incrementally
    let mut frob_powers: Vec<QMatrix> = action
        .pieces()
        .iter()
        .map(|p| p.frob_action.clone())
        .collect();
    for m in 1..=max_m {
        if m > 1 {
            for (power, piece) in frob_powers.iter_mut().zip(action.pieces()) {
                *power = power.mul(&piece.frob_action).expect("sizes match");
            }
        }
        let mut trace = Rational::zero();
        for (power, piece) in frob_powers.iter().zip(action.pieces()) {
            let tr = piece.f_action.mul(power).expect("sizes match").trace().expect("square");
            if piece.degree % 2 == 0 {
                trace += tr;
            } else {
                trace -= tr;
            }
        }
        let count = model.fixed_count(&action, m)?;
        if trace.is_integer() && !trace.is_negative() && trace == count {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
