//! Rational functions in normalized coprime form, and exact recovery of a
//! rational function from a prefix of its power-series coefficients.
//!
//! Normalization: numerator and denominator are coprime (exact gcd) and the
//! denominator has constant term 1. Under these rules the representation is
//! unique, so two routes to the same function compare bit-identically.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::series::TruncatedSeries;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds `num/den` in normalized coprime form.
    ///
    /// The denominator must be nonzero and must not vanish at the origin
    /// (otherwise the function has no power-series expansion there, and the
    /// constant-term-1 normalization is impossible).
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            if den.constant_term().is_zero() {
                return Err(Error::DenominatorVanishesAtOrigin);
            }
            return Ok(RationalFunction {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            });
        }
        let g = num.gcd(&den)?;
        let num = num.div_exact(&g);
        let den = den.div_exact(&g);
        let c = den.constant_term();
        if c.is_zero() {
            return Err(Error::DenominatorVanishesAtOrigin);
        }
        let inv = c.recip();
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn one() -> Self {
        RationalFunction {
            num: Polynomial::one(),
            den: Polynomial::one(),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Power-series expansion about the origin to the given order.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        // den has constant term 1, so the linear recurrence
        // a_n = num_n - sum_{k>=1} den_k * a_{n-k} needs no division.
        let mut coeffs = Vec::with_capacity(order + 1);
        let dd = self.den.degree().unwrap_or(0);
        for n in 0..=order {
            let mut acc = self.num.coeff(n);
            for k in 1..=dd.min(n) {
                let d = self.den.coeff(k);
                if d.is_zero() {
                    continue;
                }
                let prev: &Rational = &coeffs[n - k];
                acc -= d * prev;
            }
            coeffs.push(acc);
        }
        TruncatedSeries::new(coeffs)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Recovers the unique rational function with `deg num <= max_num_deg`,
/// `deg den <= max_den_deg` whose expansion matches every supplied
/// coefficient, if one exists.
///
/// The denominator is found as the kernel of the Hankel-style linear system
/// `sum_j q_j a_{n-j} = 0` for `n > max_num_deg`, eliminated incrementally
/// over exact rationals; the numerator is the truncated product `q * a`.
/// When some prefix is representable but a later coefficient is not, the
/// error reports the first index that broke consistency.
pub fn reconstruct_rational(
    seq: &[Rational],
    max_num_deg: usize,
    max_den_deg: usize,
) -> Result<RationalFunction> {
    let needed = max_num_deg + max_den_deg + 1;
    if seq.len() < needed {
        return Err(Error::SequenceTooShort {
            len: seq.len(),
            num_deg: max_num_deg,
            den_deg: max_den_deg,
        });
    }

    // Incremental row reduction. Unknowns are q_1..q_dq (q_0 = 1); the row
    // for index n encodes sum_{j=1..dq} a_{n-j} q_j = -a_n.
    let dq = max_den_deg;
    let mut pivots: Vec<Option<usize>> = Vec::new(); // pivot column per stored row
    let mut rows: Vec<Vec<Rational>> = Vec::new(); // reduced rows, length dq+1 (rhs last)

    for n in (max_num_deg + 1)..seq.len() {
        let mut row: Vec<Rational> = Vec::with_capacity(dq + 1);
        for j in 1..=dq {
            row.push(if n >= j {
                seq[n - j].clone()
            } else {
                Rational::zero()
            });
        }
        row.push(-seq[n].clone());

        // reduce against existing rows
        for (r, p) in rows.iter().zip(&pivots) {
            let p = p.expect("stored rows always have pivots");
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(r.iter()) {
                *x -= &factor * y;
            }
        }

        match row.iter().take(dq).position(|x| !x.is_zero()) {
            Some(p) => {
                let inv = row[p].recip();
                for x in row.iter_mut() {
                    *x *= &inv;
                }
                // back-substitute into stored rows to keep them reduced
                for r in rows.iter_mut() {
                    if !r[p].is_zero() {
                        let factor = r[p].clone();
                        for (x, y) in r.iter_mut().zip(row.iter()) {
                            *x -= &factor * y;
                        }
                    }
                }
                rows.push(row);
                pivots.push(Some(p));
            }
            None => {
                if !row[dq].is_zero() {
                    // all coefficient entries eliminated but a nonzero rhs
                    // remains: index n is the first inconsistent coefficient
                    return Err(Error::ReconstructionFailed { mismatch_index: n });
                }
            }
        }
    }

    // particular solution: free variables set to zero
    let mut q = vec![Rational::zero(); dq + 1];
    q[0] = Rational::one();
    for (r, p) in rows.iter().zip(&pivots) {
        let p = p.unwrap();
        q[p + 1] = r[dq].clone();
    }
    let den = Polynomial::new(q);

    // numerator = (den * seq) truncated past max_num_deg
    let mut num = vec![Rational::zero(); max_num_deg + 1];
    for (n, c) in num.iter_mut().enumerate() {
        let mut acc = Rational::zero();
        for j in 0..=n.min(dq) {
            let d = den.coeff(j);
            if d.is_zero() {
                continue;
            }
            acc += d * &seq[n - j];
        }
        *c = acc;
    }
    RationalFunction::new(Polynomial::new(num), den)
}
