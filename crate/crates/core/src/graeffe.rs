//! Certified enclosures of extreme root moduli via Graeffe root squaring.
//!
//! Each squaring step maps root moduli to their squares; Cauchy/Lagrange
//! coefficient bounds on the iterate then bracket the largest modulus to a
//! ratio of at most (2^(n+1))^(1/2^j) after j rounds, which converges to 1.
//! Coefficients are carried as dyadic intervals ([`crate::dyadic`]) so every
//! returned enclosure is certified despite the truncation: the true iterate's
//! coefficients always lie inside the tracked intervals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dyadic::{Dir, Dyadic};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{rat_int, Rational};

/// Hard cap on squaring rounds; bit growth is bounded by rounding, but the
/// convergence ratio is already ~(2^(n+1))^(2^-40) at the cap.
const MAX_GRAEFFE_ROUNDS: usize = 40;

/// Certified enclosure `[lo, hi]` of a nonnegative quantity, typically a
/// root modulus or a spectral radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl ModulusInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(!lo.is_negative() && lo <= hi, "invalid modulus interval");
        ModulusInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        ModulusInterval::new(v.clone(), v)
    }

    pub fn zero() -> Self {
        ModulusInterval::point(Rational::zero())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Intersection of two enclosures of the same quantity.
    pub fn intersect(self, other: Self) -> Self {
        ModulusInterval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// Enclosure of max(x, y) given enclosures of x and y.
    pub fn max_with(self, other: Self) -> Self {
        ModulusInterval::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    /// Product enclosure (both quantities nonnegative).
    pub fn mul(&self, other: &Self) -> Self {
        ModulusInterval::new(&self.lo * &other.lo, &self.hi * &other.hi)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        assert!(!c.is_negative());
        ModulusInterval::new(&self.lo * c, &self.hi * c)
    }

    /// Reciprocal enclosure; requires a positive lower endpoint.
    pub fn recip(&self) -> Self {
        assert!(self.lo.is_positive());
        ModulusInterval::new(self.hi.recip(), self.lo.recip())
    }
}

impl std::fmt::Display for ModulusInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Clone)]
struct Iv {
    lo: Dyadic,
    hi: Dyadic,
}

impl Iv {
    fn from_rational(r: &Rational) -> Self {
        Iv {
            lo: Dyadic::from_rational(r, Dir::Floor),
            hi: Dyadic::from_rational(r, Dir::Ceil),
        }
    }

    fn neg(&self) -> Self {
        Iv {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    fn add(&self, o: &Self) -> Self {
        Iv {
            lo: self.lo.add(&o.lo, Dir::Floor),
            hi: self.hi.add(&o.hi, Dir::Ceil),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        let pairs = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for (x, y) in pairs {
            let f = x.mul(y, Dir::Floor);
            let c = x.mul(y, Dir::Ceil);
            lo = Some(match lo {
                None => f,
                Some(cur) => cur.min(f),
            });
            hi = Some(match hi {
                None => c,
                Some(cur) => cur.max(c),
            });
        }
        Iv {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    fn mul_pow2(&self, k: i64) -> Self {
        Iv {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    /// Upper bound on |x| over the interval.
    fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    /// Lower bound on |x| over the interval (0 when the sign is uncertain).
    fn mig(&self) -> Dyadic {
        if !self.lo.is_negative() {
            self.lo.clone()
        } else if self.hi.is_negative() {
            self.hi.abs()
        } else {
            Dyadic::zero()
        }
    }
}

/// One Graeffe step: coefficients of a polynomial whose roots are the
/// (sign-adjusted) squares of the input's roots. Only moduli matter here,
/// so the alternating global sign is dropped.
fn graeffe_round(a: &[Iv]) -> Vec<Iv> {
    let n = a.len() - 1;
    (0..=n)
        .map(|k| {
            let mut acc = a[k].mul(&a[k]);
            for d in 1..=k.min(n - k) {
                let t = a[k - d].mul(&a[k + d]).mul_pow2(1);
                acc = if d % 2 == 1 { acc.sub(&t) } else { acc.add(&t) };
            }
            acc
        })
        .collect()
}

/// Exact root-squaring over the rationals: the returned polynomial's root
/// moduli are the squares of `p`'s root moduli. Used where one exact round
/// is enough to rationalize a target modulus (e.g. q^(w/2) with w odd).
pub(crate) fn root_square_exact(p: &Polynomial) -> Polynomial {
    let a = p.coeffs();
    let n = a.len() - 1;
    let coeffs: Vec<Rational> = (0..=n)
        .map(|k| {
            let mut acc = &a[k] * &a[k];
            for d in 1..=k.min(n - k) {
                let t = &a[k - d] * &a[k + d] * rat_int(2);
                if d % 2 == 1 {
                    acc -= t;
                } else {
                    acc += t;
                }
            }
            acc
        })
        .collect();
    Polynomial::new(coeffs)
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = (&row[k] * BigInt::from((n - k) as u64)) / BigInt::from((k + 1) as u64);
        row.push(next);
    }
    row
}

/// Lagrange-style bracket of the maximum root modulus of the interval
/// polynomial: lower from Vieta with binomial slack, upper from Fujiwara.
/// None when the leading coefficient's sign is no longer certain.
fn modulus_bounds(iv: &[Iv], binoms: &[BigInt]) -> Option<(Dyadic, Dyadic)> {
    let n = iv.len() - 1;
    let mig_lead = iv[n].mig();
    if mig_lead.is_zero() {
        return None;
    }
    let mag_lead = iv[n].mag();
    let mut u = Dyadic::zero();
    let mut l = Dyadic::zero();
    for k in 1..=n {
        let c = &iv[n - k];
        let mag = c.mag();
        if !mag.is_zero() {
            let r = mag
                .div(&mig_lead, Dir::Ceil)
                .nth_root(k as u32, Dir::Ceil)
                .mul_pow2(1);
            u = u.max(r);
        }
        let mig = c.mig();
        if !mig.is_zero() {
            let r = mig
                .div(&mag_lead, Dir::Floor)
                .div(&Dyadic::from_bigint(binoms[k].clone()), Dir::Floor)
                .nth_root(k as u32, Dir::Floor);
            l = l.max(r);
        }
    }
    Some((l, u))
}

/// Certified enclosure of the maximum root modulus of `p`.
///
/// Linear factors are resolved exactly; otherwise Graeffe squaring runs
/// until the enclosure width drops below `tol` or the round cap is hit, in
/// which case the tightest certified interval found so far is returned.
pub fn max_root_modulus(p: &Polynomial, tol: &Rational) -> Result<ModulusInterval> {
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let deg = p.degree().ok_or(Error::NoRoots)?;
    if deg == 0 {
        return Err(Error::NoRoots);
    }
    let v = p
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    let coeffs = &p.coeffs()[v..];
    let n = coeffs.len() - 1;
    if n == 0 {
        // p = c * t^deg: every root sits at the origin
        return Ok(ModulusInterval::zero());
    }
    if n == 1 {
        let m = (&coeffs[0] / &coeffs[1]).abs();
        return Ok(ModulusInterval::point(m));
    }

    let mut iv: Vec<Iv> = coeffs.iter().map(Iv::from_rational).collect();
    let binoms = binomial_row(n);
    let mut best: Option<(Rational, Rational)> = None;
    for j in 0..=MAX_GRAEFFE_ROUNDS {
        if j > 0 {
            iv = graeffe_round(&iv);
        }
        let Some((mut lo_d, mut hi_d)) = modulus_bounds(&iv, &binoms) else {
            break;
        };
        for _ in 0..j {
            lo_d = lo_d.sqrt(Dir::Floor);
            hi_d = hi_d.sqrt(Dir::Ceil);
        }
        let lo_r = lo_d.to_rational();
        let hi_r = hi_d.to_rational();
        best = Some(match best {
            None => (lo_r, hi_r),
            Some((bl, bh)) => (bl.max(lo_r), bh.min(hi_r)),
        });
        let (bl, bh) = best.as_ref().unwrap();
        if bh - bl <= *tol {
            break;
        }
    }
    let (lo, hi) = best.expect("initial bounds always exist for exact input");
    Ok(ModulusInterval::new(lo, hi))
}

/// Certified enclosure of the minimum root modulus of `p`, via the maximum
/// root modulus of the reversed polynomial, reciprocated outward.
pub fn min_root_modulus(p: &Polynomial, tol: &Rational) -> Result<ModulusInterval> {
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let deg = p.degree().ok_or(Error::NoRoots)?;
    if deg == 0 {
        return Err(Error::NoRoots);
    }
    if p.constant_term().is_zero() {
        return Err(Error::RootAtOrigin);
    }
    let rev = p.reverse();
    let mut inner = tol.clone();
    let mut result: Option<ModulusInterval> = None;
    for _ in 0..12 {
        let m = max_root_modulus(&rev, &inner)?;
        // rev has a nonzero constant term, so its Vieta lower bound is > 0
        debug_assert!(m.lo.is_positive());
        let cand = m.recip();
        result = Some(match result {
            None => cand,
            Some(prev) => prev.intersect(cand),
        });
        let r = result.as_ref().unwrap();
        let w = r.width();
        if w <= *tol {
            return Ok(result.unwrap());
        }
        // reciprocation rescaled the width; shrink the inner tolerance
        inner = &inner * tol / w / rat_int(4);
    }
    Ok(result.expect("at least one pass ran"))
}
