//! Formal power series over the rationals, truncated at a stated order.
//!
//! A series of order `N` stores exactly the coefficients of `t^0 ..= t^N`.
//! Binary operations between series of different orders truncate to the
//! smaller order. Everything is exact; no floating point enters here.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{rat_int, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// A series from coefficients `[a0, a1, ..., aN]`; order is `N`.
    /// Panics on an empty coefficient list (a series carries at least `t^0`).
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs a constant term");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Drops coefficients beyond `order` (or keeps all if already shorter).
    pub fn truncate(&self, order: usize) -> Self {
        let take = (order + 1).min(self.coeffs.len());
        TruncatedSeries {
            coeffs: self.coeffs[..take].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        TruncatedSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        TruncatedSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![Rational::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Formal derivative; order drops by one.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::OrderTooSmall { order: 0, min: 1 });
        }
        Ok(TruncatedSeries {
            coeffs: (1..self.coeffs.len())
                .map(|k| &self.coeffs[k] * rat_int(k as i64))
                .collect(),
        })
    }

    /// `exp` of a series with zero constant term, to the same order.
    ///
    /// Uses the first-order recurrence obtained from `E' = G' E`:
    /// `n * e_n = sum_{k=1..n} k * g_k * e_{n-k}`, so no factorial-sized
    /// intermediates appear.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm(
                crate::rational::rational_to_string(&self.coeffs[0]),
            ));
        }
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        out[0] = Rational::one();
        for m in 1..n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &self.coeffs[k] * rat_int(k as i64) * &out[m - k];
            }
            out[m] = acc / rat_int(m as i64);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `log` of a series with constant term one; inverse of [`exp`](Self::exp).
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne(
                crate::rational::rational_to_string(&self.coeffs[0]),
            ));
        }
        // From S' = L' S: n*s_n = sum_{k=1..n} k*l_k*s_{n-k}.
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for m in 1..n {
            let mut acc = &self.coeffs[m] * rat_int(m as i64);
            for k in 1..m {
                if out[k].is_zero() || self.coeffs[m - k].is_zero() {
                    continue;
                }
                acc -= &out[k] * rat_int(k as i64) * &self.coeffs[m - k];
            }
            out[m] = acc / rat_int(m as i64);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Embeds a polynomial as a series of the given order (truncating or
    /// zero-padding as needed).
    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(|k| p.coeff(k)).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Polynomial::new(self.coeffs.clone());
        write!(f, "{} + O(t^{})", p, self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
