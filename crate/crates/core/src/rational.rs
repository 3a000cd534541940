//! Exact rational scalars.
//!
//! Every quantity in this crate that is not explicitly an interval bound is
//! an arbitrary-precision rational. `Ratio<BigInt>` keeps values reduced to
//! lowest terms with a positive denominator, which is exactly the canonical
//! form required here (canonical zero is 0/1).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Alias used throughout the crate.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `"num/den"` rendering, denominator always present.
pub fn rational_to_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"num/den"` or a bare integer string.
pub fn rational_from_str(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

/// `x^k` for signed `k`; `k < 0` requires `x != 0` (panics otherwise).
pub fn rat_pow(x: &Rational, k: i64) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    let mut base = if k < 0 { x.recip() } else { x.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = Rational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Natural log of `|x|` as a float, robust to values far outside f64 range.
pub fn ln_abs(x: &Rational) -> f64 {
    fn ln_big(n: &BigInt) -> f64 {
        use num_traits::ToPrimitive;
        let n = n.magnitude();
        let bits = n.bits();
        if bits <= 52 {
            return n.to_f64().unwrap().ln();
        }
        // top 52 bits as mantissa, rest as an exponent
        let shift = bits - 52;
        let top = (n >> shift).to_f64().unwrap();
        top.ln() + (shift as f64) * std::f64::consts::LN_2
    }
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_big(&x.numer().abs()) - ln_big(x.denom())
}
