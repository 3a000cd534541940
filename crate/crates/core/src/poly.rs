//! Dense univariate polynomials over the exact rationals.
//!
//! Coefficients are stored lowest degree first with trailing zeros trimmed.
//! The zero polynomial has an empty coefficient vector and `degree()` is
//! `None` for it, so degree comparisons never silently treat "minus
//! infinity" as an ordinary integer.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// Coefficients of small integers, for test fixtures: `[a0, a1, ...]`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| crate::rational::rat_int(c)).collect())
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Coefficient of `t^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        Polynomial::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    /// Panics on a zero divisor.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in div.coeffs.iter().enumerate() {
                let delta = &c * d;
                rem[k - dd + j] -= delta;
            }
            quot[k - dd] = c;
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, div: &Self) -> Self {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic exact gcd. Errors when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeroPolynomials);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        let lead = a.leading().cloned().unwrap();
        Ok(a.scale(&lead.recip()))
    }

    /// Reversal `t^deg * p(1/t)`; root moduli are reciprocated.
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Polynomial::new(coeffs)
    }

    /// `p(-t)`; flips the sign of every root.
    pub fn flip_sign(&self) -> Self {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Polynomial::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{}", term(c, k, true))?;
                first = false;
            } else {
                write!(f, " {}", term(c, k, false))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn term(c: &Rational, k: usize, first: bool) -> String {
    use num_traits::Signed;
    let sign = if c.is_negative() {
        if first {
            "-"
        } else {
            "- "
        }
    } else if first {
        ""
    } else {
        "+ "
    };
    let mag = c.abs();
    let coeff = if mag.is_one() && k > 0 {
        String::new()
    } else {
        format!("{}", mag)
    };
    let var = match k {
        0 => String::new(),
        1 => "t".to_string(),
        _ => format!("t^{}", k),
    };
    let sep = if coeff.is_empty() || var.is_empty() {
        ""
    } else {
        "*"
    };
    format!("{sign}{coeff}{sep}{var}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn degree_markers() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::one().degree(), Some(0));
        assert_eq!(Polynomial::from_ints(&[0, 0, 3]).degree(), Some(2));
        assert_eq!(Polynomial::from_ints(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn gcd_examples() {
        // gcd(t^2 - 1, t - 1) = t - 1
        let p = Polynomial::from_ints(&[-1, 0, 1]);
        let q = Polynomial::from_ints(&[-1, 1]);
        assert_eq!(p.gcd(&q).unwrap(), q);

        // gcd(p, 1) = 1
        assert_eq!(p.gcd(&Polynomial::one()).unwrap(), Polynomial::one());

        // gcd((1-2t)^2, (1-2t)(1-3t)) = monic multiple of (1-2t): t - 1/2
        let a = Polynomial::from_ints(&[1, -2]).pow(2);
        let b = Polynomial::from_ints(&[1, -2]).mul(&Polynomial::from_ints(&[1, -3]));
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, Polynomial::new(vec![rat(-1, 2), rat_int(1)]));
    }

    #[test]
    fn gcd_of_zeros_is_an_error() {
        assert_eq!(
            Polynomial::zero().gcd(&Polynomial::zero()),
            Err(Error::GcdOfZeroPolynomials)
        );
    }

    #[test]
    fn division_and_reversal() {
        let p = Polynomial::from_ints(&[2, 0, -3, 1]);
        let d = Polynomial::from_ints(&[-1, 1]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), p);
        assert!(r.degree() < d.degree() || r.is_zero());

        let rev = Polynomial::from_ints(&[1, -2]).reverse();
        assert_eq!(rev, Polynomial::from_ints(&[-2, 1]));
        assert_eq!(rev.eval(&rat_int(2)), rat_int(0));
    }

    #[test]
    fn sign_flip_negates_roots() {
        let p = Polynomial::from_ints(&[-6, 1, 1]); // (t-2)(t+3)
        let q = p.flip_sign();
        assert_eq!(q.eval(&rat_int(-2)), rat_int(0));
        assert_eq!(q.eval(&rat_int(3)), rat_int(0));
    }

    #[test]
    fn eval_horner() {
        let p = Polynomial::from_ints(&[1, -8, 4]);
        assert_eq!(p.eval(&rat_int(2)), rat_int(1));
        assert_eq!(p.eval(&rat(1, 2)), rat_int(-2));
    }
}
