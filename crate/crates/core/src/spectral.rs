//! Spectral verdicts: the parity spectral radii lambda_even / lambda_odd,
//! the attaining weights k_even / k_odd, and the certified interval
//! comparisons behind the two inequalities (lambda_even >= lambda_odd;
//! on equality, k_even >= k_odd).
//!
//! All quantities are certified enclosures, never float estimates. When a
//! comparison is ambiguous at the working tolerance the intervals are
//! refined by halving; for the genuinely-equal case, which no amount of
//! refinement can separate, an exact certificate factors the shared
//! spectral part out of the two characteristic polynomials and checks
//! that everything left is strictly smaller.

use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::graeffe::{max_root_modulus, min_root_modulus, root_square_exact, ModulusInterval};
use crate::models::GradedAction;
use crate::poly::Polynomial;
use crate::rational::{rat, rat_int, Rational};
use crate::zeta::ZetaResult;

const REFINE_ROUNDS: usize = 20;

/// Outcome of an interval comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
    NotApplicable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotApplicable => "not-applicable",
        };
        write!(f, "{s}")
    }
}

/// Parity spectral radii, attaining weights, and the two inequality
/// verdicts for one graded action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralReport {
    pub lambda_even: ModulusInterval,
    pub lambda_odd: ModulusInterval,
    pub k_even: Option<usize>,
    pub k_odd: Option<usize>,
    pub ineq1: Verdict,
    pub ineq2: Verdict,
}

/// Spectral radius enclosure for one characteristic polynomial; constant
/// polynomials (no eigenvalues) and nilpotent spectra give [0, 0].
fn radius(charpoly: &Polynomial, tol: &Rational) -> Result<ModulusInterval> {
    match charpoly.degree() {
        None | Some(0) => Ok(ModulusInterval::zero()),
        Some(_) => max_root_modulus(charpoly, tol),
    }
}

fn fold_max(acc: Option<ModulusInterval>, iv: ModulusInterval) -> Option<ModulusInterval> {
    Some(match acc {
        None => iv,
        Some(prev) => prev.max_with(iv),
    })
}

/// Divides out of `p` every factor it shares with `g`, repeatedly, so no
/// root of `g` survives in the result.
fn strip_shared_roots(p: &Polynomial, g: &Polynomial) -> Polynomial {
    let mut r = p.clone();
    loop {
        if r.degree().map_or(true, |d| d == 0) {
            return r;
        }
        let d = r.gcd(g).expect("nonzero inputs");
        if d.degree().map_or(true, |deg| deg == 0) {
            return r;
        }
        r = r.div_exact(&d);
    }
}

/// Upper end of the spectral radius of a residual factor (0 if constant).
fn residual_max(p: &Polynomial, tol: &Rational) -> Result<Rational> {
    Ok(radius(p, tol)?.hi)
}

/// Exact equality certificate for the two parity radii; on success the
/// shared enclosure of both is returned.
///
/// Let E and O be the products of the even and odd characteristic
/// polynomials. Shared roots (up to sign) are split off by gcd; if the
/// shared part G has positive top modulus rho and both residuals lie
/// strictly below rho, then lambda_even = lambda_odd = rho exactly: every
/// root of G is a root (up to sign) of both sides, so rho bounds neither
/// parity from above strictly, and the residuals cannot raise either side
/// past rho.
fn certify_equal_radii(
    even: &[Polynomial],
    odd: &[Polynomial],
    tol: &Rational,
) -> Result<Option<ModulusInterval>> {
    let product = |polys: &[Polynomial]| {
        polys
            .iter()
            .filter(|p| p.degree().map_or(false, |d| d >= 1))
            .fold(Polynomial::one(), |acc, p| acc.mul(p))
    };
    let e = product(even);
    let o = product(odd);
    if e.is_one() || o.is_one() {
        return Ok(None);
    }
    let g1 = e.gcd(&o)?;
    let e1 = strip_shared_roots(&e, &g1);
    let o1 = strip_shared_roots(&o, &g1);
    // sign-flipped matches between the residuals
    let g2 = e1.gcd(&o1.flip_sign().monic())?;
    let e_res = strip_shared_roots(&e1, &g2);
    let o_res = strip_shared_roots(&o1, &g2.flip_sign().monic());
    let mut rho: Option<ModulusInterval> = None;
    for g in [&g1, &g2] {
        if g.degree().map_or(false, |d| d >= 1) {
            rho = fold_max(rho, max_root_modulus(g, tol)?);
        }
    }
    let Some(rho) = rho else {
        return Ok(None);
    };
    if !rho.lo.is_positive() {
        return Ok(None);
    }
    if residual_max(&e_res, tol)? < rho.lo && residual_max(&o_res, tol)? < rho.lo {
        Ok(Some(rho))
    } else {
        Ok(None)
    }
}

/// Computes the spectral report at tolerance `tol`.
///
/// Per-piece spectral radii come from det(tI - f_action); the parity
/// radius is their max, with [0, 0] for an empty or nilpotent parity.
/// k_even / k_odd are the largest weights whose piece radius overlaps the
/// parity radius. Ambiguous radius comparisons are refined by halving the
/// tolerance up to 20 times, with an exact equality certificate tried
/// first; only an unresolved overlap at the cap yields `Inconclusive`.
pub fn spectral_report(action: &GradedAction, tol: &Rational) -> Result<SpectralReport> {
    assert!(
        !action.pieces().is_empty(),
        "spectral report needs at least one piece"
    );
    let charpolys: Vec<(usize, usize, Polynomial)> = action
        .pieces()
        .iter()
        .map(|p| {
            let cp = if p.size() == 0 {
                Polynomial::one()
            } else {
                p.f_action.charpoly().expect("validated square")
            };
            (p.degree, p.weight, cp)
        })
        .collect();
    let mut cached: Vec<Option<ModulusInterval>> = vec![None; charpolys.len()];
    let mut cur_tol = tol.clone();
    let mut ineq1 = Verdict::Inconclusive;
    let mut certified: Option<ModulusInterval> = None;
    let half = rat(1, 2);
    for round in 0..=REFINE_ROUNDS {
        for ((_, _, cp), slot) in charpolys.iter().zip(cached.iter_mut()) {
            let iv = radius(cp, &cur_tol)?;
            *slot = Some(match slot.take() {
                None => iv,
                Some(prev) => prev.intersect(iv),
            });
        }
        let (le, lo) = parity_radii(&charpolys, &cached);
        if le.lo >= lo.hi {
            ineq1 = Verdict::Holds;
            break;
        }
        if le.hi < lo.lo {
            ineq1 = Verdict::Fails;
            break;
        }
        if round == 0 {
            let even: Vec<Polynomial> = charpolys
                .iter()
                .filter(|(d, _, _)| d % 2 == 0)
                .map(|(_, _, cp)| cp.clone())
                .collect();
            let odd: Vec<Polynomial> = charpolys
                .iter()
                .filter(|(d, _, _)| d % 2 == 1)
                .map(|(_, _, cp)| cp.clone())
                .collect();
            if let Some(rho) = certify_equal_radii(&even, &odd, tol)? {
                certified = Some(rho);
                ineq1 = Verdict::Holds;
                break;
            }
        }
        cur_tol *= &half;
    }
    let (mut lambda_even, mut lambda_odd) = parity_radii(&charpolys, &cached);
    if let Some(rho) = &certified {
        // three enclosures of the same number collapse to their intersection
        let common = lambda_even.intersect(lambda_odd).intersect(rho.clone());
        lambda_even = common.clone();
        lambda_odd = common;
    }
    let k_even = attained_weight(&charpolys, &cached, &lambda_even, 0);
    let k_odd = attained_weight(&charpolys, &cached, &lambda_odd, 1);
    let applicable = certified.is_some() || lambda_even.overlaps(&lambda_odd);
    let ineq2 = match (applicable, k_even, k_odd) {
        (false, _, _) | (true, None, _) | (true, _, None) => Verdict::NotApplicable,
        (true, Some(ke), Some(ko)) => {
            if ke >= ko {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
    };
    Ok(SpectralReport {
        lambda_even,
        lambda_odd,
        k_even,
        k_odd,
        ineq1,
        ineq2,
    })
}

fn parity_radii(
    charpolys: &[(usize, usize, Polynomial)],
    cached: &[Option<ModulusInterval>],
) -> (ModulusInterval, ModulusInterval) {
    let mut even: Option<ModulusInterval> = None;
    let mut odd: Option<ModulusInterval> = None;
    for ((degree, _, _), iv) in charpolys.iter().zip(cached) {
        let iv = iv.clone().expect("pass always fills the cache");
        if degree % 2 == 0 {
            even = fold_max(even, iv);
        } else {
            odd = fold_max(odd, iv);
        }
    }
    (
        even.unwrap_or_else(ModulusInterval::zero),
        odd.unwrap_or_else(ModulusInterval::zero),
    )
}

/// Largest weight among pieces of the given parity whose radius interval
/// overlaps the parity radius.
fn attained_weight(
    charpolys: &[(usize, usize, Polynomial)],
    cached: &[Option<ModulusInterval>],
    lambda: &ModulusInterval,
    parity: usize,
) -> Option<usize> {
    charpolys
        .iter()
        .zip(cached)
        .filter(|((degree, _, _), _)| degree % 2 == parity)
        .filter(|(_, iv)| iv.as_ref().expect("cache filled").overlaps(lambda))
        .map(|((_, weight, _), _)| *weight)
        .max()
}

/// Result of the disc-containment check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscCheck {
    pub verdict: Verdict,
    /// Set when positivity held yet the check failed: that combination
    /// contradicts the containment lemma and indicates a bug.
    pub contradiction: bool,
}

/// Checks that the closed disc spanned by the smallest denominator root
/// also contains a numerator root: min|den roots| <= min|num roots|,
/// certified by intervals and refined by halving on ambiguity. A constant
/// numerator or denominator holds vacuously.
pub fn disc_lemma_check(z: &ZetaResult, positivity_ok: bool, tol: &Rational) -> Result<DiscCheck> {
    let num = z.reconstructed.numerator();
    let den = z.reconstructed.denominator();
    let nonconstant = |p: &Polynomial| p.degree().map_or(false, |d| d >= 1);
    if !nonconstant(num) || !nonconstant(den) {
        return Ok(DiscCheck {
            verdict: Verdict::Holds,
            contradiction: false,
        });
    }
    let mut cur_tol = tol.clone();
    let mut den_iv: Option<ModulusInterval> = None;
    let mut num_iv: Option<ModulusInterval> = None;
    let mut verdict = Verdict::Inconclusive;
    let half = rat(1, 2);
    for _ in 0..=REFINE_ROUNDS {
        let d = min_root_modulus(den, &cur_tol)?;
        let n = min_root_modulus(num, &cur_tol)?;
        den_iv = Some(match den_iv.take() {
            None => d,
            Some(prev) => prev.intersect(d),
        });
        num_iv = Some(match num_iv.take() {
            None => n,
            Some(prev) => prev.intersect(n),
        });
        let (d, n) = (den_iv.as_ref().unwrap(), num_iv.as_ref().unwrap());
        if d.hi <= n.lo {
            verdict = Verdict::Holds;
            break;
        }
        if d.lo > n.hi {
            verdict = Verdict::Fails;
            break;
        }
        cur_tol *= &half;
    }
    Ok(DiscCheck {
        verdict,
        contradiction: positivity_ok && verdict == Verdict::Fails,
    })
}

/// What a weight-bound violation complains about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// An inverse root of det(1 - t frob f) on an even piece exceeds
    /// lambda_even * q^dim.
    InverseRootBound,
    /// Combined eigenvalue moduli do not match
    /// (f eigenvalue modulus) * q^(weight/2).
    ModulusMismatch,
}

/// A named violation, identifying the offending piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightBoundViolation {
    pub degree: usize,
    pub weight: usize,
    pub kind: ViolationKind,
}

impl std::fmt::Display for WeightBoundViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let what = match self.kind {
            ViolationKind::InverseRootBound => "inverse root exceeds lambda_even * q^dim",
            ViolationKind::ModulusMismatch => {
                "combined eigenvalue moduli do not match weight q^(w/2) scaling"
            }
        };
        write!(f, "piece (degree {}, weight {}): {}", self.degree, self.weight, what)
    }
}

/// Checks the two root-modulus bounds behind the main theorem:
/// every even-piece inverse root of det(1 - t frob f) is at most
/// lambda_even * q^dim, and on every piece the combined eigenvalue moduli
/// are the f eigenvalue moduli scaled by q^(weight/2), compared on
/// squared moduli so the scale is rational. Returns all violations found.
pub fn weight_bound_check(
    action: &GradedAction,
    tol: &Rational,
) -> Result<Vec<WeightBoundViolation>> {
    let mut violations = Vec::new();
    let mut lambda_even: Option<ModulusInterval> = None;
    for piece in action.pieces() {
        if piece.degree % 2 == 0 && piece.size() > 0 {
            let cp = piece.f_action.charpoly().expect("validated square");
            lambda_even = fold_max(lambda_even, radius(&cp, tol)?);
        }
    }
    let lambda_even = lambda_even.unwrap_or_else(ModulusInterval::zero);
    let q_dim =
        Rational::from_integer(num_bigint::BigInt::from(action.q()).pow(action.dim() as u32));
    let bound = &lambda_even.hi * &q_dim;
    let one_plus = rat_int(1) + tol;
    let one_minus = (rat_int(1) - tol).max(Rational::zero());
    for piece in action.pieces() {
        if piece.size() == 0 {
            continue;
        }
        let combined_cp = piece.combined().charpoly().expect("validated square");
        if piece.degree % 2 == 0 {
            let r = radius(&combined_cp, tol)?;
            if r.hi > bound {
                violations.push(WeightBoundViolation {
                    degree: piece.degree,
                    weight: piece.weight,
                    kind: ViolationKind::InverseRootBound,
                });
            }
        }
        let f_cp = piece.f_action.charpoly().expect("validated square");
        let qk = Rational::from_integer(
            num_bigint::BigInt::from(action.q()).pow(piece.weight as u32),
        );
        let mut mismatch = combined_cp.constant_term().is_zero() != f_cp.constant_term().is_zero();
        if !mismatch {
            let scale_tol = &qk * tol;
            let lhs_max = radius(&root_square_exact(&combined_cp), &scale_tol)?;
            let rhs_max = radius(&root_square_exact(&f_cp), &scale_tol)?;
            let band = |iv: &ModulusInterval| {
                (
                    &iv.lo * &qk * &one_minus * &one_minus,
                    &iv.hi * &qk * &one_plus * &one_plus,
                )
            };
            let (blo, bhi) = band(&rhs_max);
            if lhs_max.hi < blo || lhs_max.lo > bhi {
                mismatch = true;
            } else if !combined_cp.constant_term().is_zero() {
                let sq_c = root_square_exact(&combined_cp);
                let sq_f = root_square_exact(&f_cp);
                let lhs_min = min_root_modulus(&sq_c, &scale_tol)?;
                let rhs_min = min_root_modulus(&sq_f, &scale_tol)?;
                let (blo, bhi) = band(&rhs_min);
                if lhs_min.hi < blo || lhs_min.lo > bhi {
                    mismatch = true;
                }
            }
        }
        if mismatch {
            violations.push(WeightBoundViolation {
                degree: piece.degree,
                weight: piece.weight,
                kind: ViolationKind::ModulusMismatch,
            });
        }
    }
    Ok(violations)
}
