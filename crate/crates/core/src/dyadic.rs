//! Fixed-precision dyadic numbers `m * 2^e` with directed rounding.
//!
//! Graeffe root-squaring doubles coefficient bit-length every round if run
//! fully exactly, which makes 40 rounds impossible. Instead every value here
//! is an exact rational of the form m * 2^e whose mantissa is truncated back
//! to [`PREC`] bits after each operation, rounding toward the caller's chosen
//! direction. All derived enclosures therefore stay certified: a Floor result
//! never exceeds the true value, a Ceil result never undershoots it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Mantissa bits kept after rounding. Generous enough that 40 squaring
/// rounds leave hundreds of accurate bits.
pub(crate) const PREC: u64 = 320;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Dir {
    Floor,
    Ceil,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dyadic {
    m: BigInt,
    e: i64,
}

fn shr_floor(m: &BigInt, s: u64) -> BigInt {
    // BigInt shr rounds toward negative infinity, which is exactly floor
    m >> s
}

fn shr_ceil(m: &BigInt, s: u64) -> BigInt {
    -shr_floor(&-m, s)
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic { m: n, e: 0 }.normalize()
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    fn normalize(mut self) -> Self {
        if self.m.is_zero() {
            self.e = 0;
            return self;
        }
        if let Some(tz) = self.m.trailing_zeros() {
            if tz > 0 {
                self.m = &self.m >> tz;
                self.e += tz as i64;
            }
        }
        self
    }

    fn bits(&self) -> u64 {
        self.m.magnitude().bits()
    }

    /// Exponent of the magnitude: 2^(scale-1) <= |v| < 2^scale.
    fn scale(&self) -> i64 {
        self.e + self.bits() as i64
    }

    pub fn round(self, dir: Dir) -> Self {
        let bits = self.bits();
        if bits <= PREC {
            return self.normalize();
        }
        let s = bits - PREC;
        let m = match dir {
            Dir::Floor => shr_floor(&self.m, s),
            Dir::Ceil => shr_ceil(&self.m, s),
        };
        Dyadic {
            m,
            e: self.e + s as i64,
        }
        .normalize()
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            m: -&self.m,
            e: self.e,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            m: self.m.abs(),
            e: self.e,
        }
    }

    pub fn mul(&self, other: &Self, dir: Dir) -> Self {
        Dyadic {
            m: &self.m * &other.m,
            e: self.e + other.e,
        }
        .round(dir)
    }

    pub fn add(&self, other: &Self, dir: Dir) -> Self {
        if self.is_zero() {
            return other.clone().round(dir);
        }
        if other.is_zero() {
            return self.clone().round(dir);
        }
        let (big, small) = if self.scale() >= other.scale() {
            (self, other)
        } else {
            (other, self)
        };
        let gap = big.scale() - small.scale();
        if gap > PREC as i64 + 8 {
            // the small term cannot reach the rounded mantissa; absorb it
            // into a nudge of one precision-ulp in the rounding direction
            let base = big.clone().round(dir);
            let need_nudge = match dir {
                Dir::Floor => small.is_negative(),
                Dir::Ceil => !small.is_negative(),
            };
            if !need_nudge {
                return base;
            }
            let ulp_e = base.scale() - PREC as i64;
            let shift = (base.e - ulp_e) as u64;
            let m = (&base.m << shift) + if dir == Dir::Ceil { 1 } else { -1 };
            return Dyadic { m, e: ulp_e }.normalize();
        }
        let e0 = self.e.min(other.e);
        let ma = &self.m << (self.e - e0) as u64;
        let mb = &other.m << (other.e - e0) as u64;
        Dyadic { m: ma + mb, e: e0 }.round(dir)
    }

    /// Exact multiplication by 2^k.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            m: self.m.clone(),
            e: self.e + k,
        }
    }

    /// Directed division; the divisor must be nonzero.
    pub fn div(&self, other: &Self, dir: Dir) -> Self {
        debug_assert!(!other.is_zero());
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = PREC + 4 + other.bits();
        let n = &self.m << shift;
        let q = match dir {
            Dir::Floor => n.div_floor(&other.m),
            Dir::Ceil => n.div_ceil(&other.m),
        };
        Dyadic {
            m: q,
            e: self.e - other.e - shift as i64,
        }
        .round(dir)
    }

    pub fn cmp_value(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let sa = self.m.sign();
        let sb = other.m.sign();
        let sign_rank = |s: num_bigint::Sign| match s {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        };
        match sign_rank(sa).cmp(&sign_rank(sb)) {
            Ordering::Equal => {}
            ord => return ord,
        }
        if self.m.is_zero() {
            return Ordering::Equal;
        }
        let mag = match self.scale().cmp(&other.scale()) {
            Ordering::Equal => {
                // equal scales: exponent gap equals the mantissa-length gap,
                // so the alignment shift is at most PREC bits
                let e0 = self.e.min(other.e);
                let ma = self.m.magnitude() << (self.e - e0) as u64;
                let mb = other.m.magnitude() << (other.e - e0) as u64;
                ma.cmp(&mb)
            }
            ord => ord,
        };
        if self.is_negative() {
            mag.reverse()
        } else {
            mag
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self.cmp_value(&other) == std::cmp::Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self.cmp_value(&other) == std::cmp::Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn from_rational(r: &Rational, dir: Dir) -> Self {
        if r.is_zero() {
            return Dyadic::zero();
        }
        let num = r.numer();
        let den = r.denom();
        let s = PREC as i64 + den.magnitude().bits() as i64 - num.magnitude().bits() as i64 + 2;
        let (n, d) = if s >= 0 {
            (num << s as u64, den.clone())
        } else {
            (num.clone(), den << (-s) as u64)
        };
        let m = match dir {
            Dir::Floor => n.div_floor(&d),
            Dir::Ceil => n.div_ceil(&d),
        };
        Dyadic { m, e: -s }.normalize()
    }

    pub fn to_rational(&self) -> Rational {
        if self.e >= 0 {
            Rational::from(&self.m << self.e as u64)
        } else {
            Rational::new(self.m.clone(), BigInt::one() << (-self.e) as u64)
        }
    }

    /// Directed square root; the value must be nonnegative.
    pub fn sqrt(&self, dir: Dir) -> Self {
        debug_assert!(!self.is_negative());
        if self.is_zero() {
            return Dyadic::zero();
        }
        let target = 2 * PREC + 4;
        let bits = self.bits();
        let mut s = target.saturating_sub(bits) as i64;
        if (self.e - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let n = &self.m << s as u64;
        let t = n.sqrt();
        let half = (self.e - s) / 2;
        let m = match dir {
            Dir::Floor => t,
            Dir::Ceil => {
                if (&t * &t) == n {
                    t
                } else {
                    t + 1
                }
            }
        };
        Dyadic { m, e: half }.round(dir)
    }

    /// Directed k-th root for small k; the value must be nonnegative.
    pub fn nth_root(&self, k: u32, dir: Dir) -> Self {
        debug_assert!(k >= 1);
        debug_assert!(!self.is_negative());
        if k == 1 {
            return self.clone().round(dir);
        }
        if k == 2 {
            return self.sqrt(dir);
        }
        if self.is_zero() {
            return Dyadic::zero();
        }
        let target = (k as u64) * (PREC + 4);
        let bits = self.bits();
        let mut s = target.saturating_sub(bits) as i64;
        s += (self.e - s).rem_euclid(k as i64);
        let n = &self.m << s as u64;
        let t = n.nth_root(k);
        let root_e = (self.e - s) / k as i64;
        let m = match dir {
            Dir::Floor => t,
            Dir::Ceil => {
                if t.pow(k) == n {
                    t
                } else {
                    t + 1
                }
            }
        };
        Dyadic { m, e: root_e }.round(dir)
    }
}
