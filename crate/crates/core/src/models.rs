//! Model families: weight-graded cohomology actions for split tori with
//! monomial self-maps, powers of an elliptic curve with an integer matrix
//! action, and constant maps, plus brute-force fixed-point oracles that
//! count points by genuine small-field arithmetic.
//!
//! A model is summarized by a [`GradedAction`]: one commuting pair of
//! matrices (the self-map and Frobenius) per cohomological degree and
//! weight. Everything downstream (traces, zeta functions, spectral data)
//! consumes only this summary. The brute-force oracles are deliberately
//! independent of it, so the two routes to a fixed-point count can be
//! compared as a consistency check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graeffe::{max_root_modulus, min_root_modulus, root_square_exact, ModulusInterval};
use crate::matrix::{exterior_power, QMatrix};
use crate::rational::{rat, Rational};
use crate::smallfield::{is_prime, prime_power_decompose, SmallField};
use crate::snf::smith_normal_form;

/// Enumeration cap for the torus fixed-point oracle.
const TORUS_ENUM_GUARD: u64 = 10_000_000;
/// Enumeration cap for the elliptic point-count oracle.
const ELLIPTIC_ENUM_GUARD: u64 = 1_000_000;

/// Square integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
        }
        Ok(IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        IntMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("integer literal rows must be square")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.n {
            for i in 0..self.n {
                data.push(self.at(i, j).clone());
            }
        }
        IntMatrix { n: self.n, data }
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::new(
            (0..self.n)
                .map(|i| {
                    (0..self.n)
                        .map(|j| Rational::from_integer(self.at(i, j).clone()))
                        .collect()
                })
                .collect(),
        )
        .expect("square by construction")
    }

    pub fn det(&self) -> BigInt {
        let d = self.to_qmatrix().det().expect("square by construction");
        debug_assert!(d.is_integer());
        d.to_integer()
    }
}

/// One weight-graded slice of the cohomology: the self-map and Frobenius
/// acting on the same space, commuting exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: usize,
    pub weight: usize,
    pub f_action: QMatrix,
    pub frob_action: QMatrix,
}

impl GradedPiece {
    pub fn new(degree: usize, weight: usize, f_action: QMatrix, frob_action: QMatrix) -> Self {
        GradedPiece {
            degree,
            weight,
            f_action,
            frob_action,
        }
    }

    pub fn size(&self) -> usize {
        self.f_action.n_rows()
    }

    /// The combined operator whose powers produce the trace sequence.
    pub fn combined(&self) -> QMatrix {
        self.f_action
            .mul(&self.frob_action)
            .expect("validated square pair")
    }
}

/// A full graded action: validated pieces plus the base-field size, the
/// dimension of the underlying variety and whether it is proper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAction {
    pieces: Vec<GradedPiece>,
    q: u64,
    dim: usize,
    proper: bool,
}

impl GradedAction {
    /// Validates and normalizes the pieces (sorted by degree, then weight).
    ///
    /// Checks: q is a prime power, matrices are square of matching sizes,
    /// the two actions commute exactly, gradings stay within 2*dim, no
    /// duplicate (degree, weight) slot, and for proper actions purity of
    /// Frobenius eigenvalue moduli to 1e-9 relative tolerance.
    pub fn new(pieces: Vec<GradedPiece>, q: u64, dim: usize, proper: bool) -> Result<Self> {
        prime_power_decompose(q)?;
        let max = 2 * dim;
        let mut seen = std::collections::BTreeSet::new();
        for p in &pieces {
            if !p.f_action.is_square() {
                return Err(Error::NotSquare {
                    rows: p.f_action.n_rows(),
                    cols: p.f_action.n_cols(),
                });
            }
            if !p.frob_action.is_square() {
                return Err(Error::NotSquare {
                    rows: p.frob_action.n_rows(),
                    cols: p.frob_action.n_cols(),
                });
            }
            if p.f_action.n_rows() != p.frob_action.n_rows() {
                return Err(Error::PieceSizeMismatch {
                    degree: p.degree,
                    weight: p.weight,
                });
            }
            if p.degree > max || p.weight > max {
                return Err(Error::GradingOutOfRange {
                    degree: p.degree,
                    weight: p.weight,
                    max,
                });
            }
            if !p
                .f_action
                .commutes_with(&p.frob_action)
                .expect("sizes already checked")
            {
                return Err(Error::NonCommutingActions {
                    degree: p.degree,
                    weight: p.weight,
                });
            }
            if !seen.insert((p.degree, p.weight)) {
                return Err(Error::DuplicatePiece {
                    degree: p.degree,
                    weight: p.weight,
                });
            }
        }
        if proper {
            for p in &pieces {
                check_purity(p, q)?;
            }
        }
        let mut pieces = pieces;
        pieces.sort_by_key(|p| (p.degree, p.weight));
        Ok(GradedAction {
            pieces,
            q,
            dim,
            proper,
        })
    }

    pub fn pieces(&self) -> &[GradedPiece] {
        &self.pieces
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn proper(&self) -> bool {
        self.proper
    }

    /// Total matrix size over pieces of even (resp. odd) degree.
    pub fn betti_totals(&self) -> (usize, usize) {
        let mut even = 0;
        let mut odd = 0;
        for p in &self.pieces {
            if p.degree % 2 == 0 {
                even += p.size();
            } else {
                odd += p.size();
            }
        }
        (even, odd)
    }
}

/// Purity: every Frobenius eigenvalue on a weight-w piece must have
/// modulus q^(w/2). Checked on the root-squared characteristic polynomial
/// so the target modulus q^w is rational even for odd w. A violation is
/// reported only when the certified extreme-modulus enclosures lie wholly
/// outside the band target * (1 +/- 1e-9)^2, which is formed exactly;
/// genuine mislabels miss the band by a factor of q and are always caught.
fn check_purity(piece: &GradedPiece, q: u64) -> Result<()> {
    if piece.size() == 0 {
        return Ok(());
    }
    let degree = piece.degree;
    let weight = piece.weight;
    let charpoly = piece.frob_action.charpoly().expect("validated square");
    let target_sq = Rational::from_integer(BigInt::from(q).pow(weight as u32));
    let violation = |lo: &Rational, hi: &Rational| Error::PurityViolation {
        degree,
        weight,
        lo: format!("{:.9}", sqrt_approx(lo)),
        hi: format!("{:.9}", sqrt_approx(hi)),
        expected: format!("{:.9}", sqrt_approx(&target_sq)),
    };
    if charpoly.constant_term().is_zero() {
        return Err(violation(&Rational::zero(), &Rational::zero()));
    }
    let squared = root_square_exact(&charpoly);
    let tol = &target_sq * rat(1, 1_000_000_000_000);
    let max = max_root_modulus(&squared, &tol)?;
    let min = min_root_modulus(&squared, &tol)?;
    let one_plus = rat(1_000_000_001, 1_000_000_000);
    let one_minus = rat(999_999_999, 1_000_000_000);
    let band_hi = &target_sq * &one_plus * &one_plus;
    let band_lo = &target_sq * &one_minus * &one_minus;
    let outside =
        |iv: &ModulusInterval| -> bool { iv.lo > band_hi || iv.hi < band_lo };
    if outside(&max) || outside(&min) {
        return Err(violation(&min.lo, &max.hi));
    }
    Ok(())
}

fn sqrt_approx(x: &Rational) -> f64 {
    let v = x.numer().to_f64().unwrap_or(f64::MAX) / x.denom().to_f64().unwrap_or(1.0);
    v.max(0.0).sqrt()
}

/// Rank-2 split torus with a monomial self-map given by an integer matrix
/// on the cocharacter lattice.
#[derive(Debug, Clone)]
pub struct TorusModel {
    pub q: u64,
    pub m: IntMatrix,
}

impl TorusModel {
    pub fn new(q: u64, m: IntMatrix) -> Result<Self> {
        prime_power_decompose(q)?;
        if m.det().is_zero() {
            return Err(Error::SingularTorusMatrix);
        }
        Ok(TorusModel { q, m })
    }
}

/// Product of g copies of an elliptic curve over F_q with Frobenius trace
/// `frob_trace`, carrying the endomorphism given by the integer matrix M.
#[derive(Debug, Clone)]
pub struct AbelianProductModel {
    pub q: u64,
    pub frob_trace: i64,
    pub m: IntMatrix,
}

impl AbelianProductModel {
    pub fn new(q: u64, frob_trace: i64, m: IntMatrix) -> Result<Self> {
        prime_power_decompose(q)?;
        let a2 = (frob_trace as i128) * (frob_trace as i128);
        if a2 > 4 * q as i128 {
            return Err(Error::WeilBoundViolated {
                trace: frob_trace,
                q,
            });
        }
        if m.det().is_zero() {
            return Err(Error::SingularAbelianMatrix);
        }
        Ok(AbelianProductModel { q, frob_trace, m })
    }

    pub fn genus_count(&self) -> usize {
        self.m.size()
    }
}

fn rat_u64(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Graded action of a monomial self-map on a rank-2 split torus.
///
/// Degrees 2, 3, 4 carry weights 0, 2, 4; the self-map acts by det(M) on
/// the two 1-dimensional ends and by M itself in the middle. Properness is
/// false: a torus is affine, and the trace formula uses compact supports.
pub fn torus_graded_action(model: &TorusModel) -> Result<GradedAction> {
    let r = model.m.size();
    if r != 2 {
        return Err(Error::UnsupportedTorusRank(r));
    }
    let q = model.q;
    let det = Rational::from_integer(model.m.det());
    let one = QMatrix::from_ints(&[&[1]]);
    let det_m = QMatrix::new(vec![vec![det]]).expect("1x1");
    let frob_mid = QMatrix::identity(2).scale(&rat_u64(q));
    let frob_top = QMatrix::new(vec![vec![Rational::from_integer(BigInt::from(q).pow(2))]])
        .expect("1x1");
    let pieces = vec![
        GradedPiece::new(2, 0, det_m.clone(), one),
        GradedPiece::new(3, 2, model.m.to_qmatrix(), frob_mid),
        GradedPiece::new(4, 4, det_m, frob_top),
    ];
    GradedAction::new(pieces, q, 2, false)
}

/// Graded action for E^g with an integer endomorphism matrix.
///
/// Degree 1 is the 2g-dimensional pair (M^T tensor I_2, I_g tensor C) with
/// C the companion matrix of t^2 - a t + q; degree k is its k-th exterior
/// power, pure of weight k.
pub fn abelian_graded_action(model: &AbelianProductModel) -> Result<GradedAction> {
    let g = model.genus_count();
    let q = model.q;
    let a = model.frob_trace;
    let companion = QMatrix::new(vec![
        vec![Rational::zero(), -rat_u64(q)],
        vec![Rational::from_integer(BigInt::from(1)), Rational::from_integer(BigInt::from(a))],
    ])
    .expect("2x2");
    let b_f = model.m.transpose().to_qmatrix().kronecker(&QMatrix::identity(2));
    let b_frob = QMatrix::identity(g).kronecker(&companion);
    let mut pieces = Vec::with_capacity(2 * g + 1);
    for k in 0..=2 * g {
        pieces.push(GradedPiece::new(
            k,
            k,
            exterior_power(&b_f, k)?,
            exterior_power(&b_frob, k)?,
        ));
    }
    GradedAction::new(pieces, q, g, true)
}

/// Graded action of a constant self-map: everything collapses onto the
/// image point, a single weight-0 line where both actions are trivial.
pub fn constant_map_action(q: u64) -> Result<GradedAction> {
    let one = QMatrix::from_ints(&[&[1]]);
    GradedAction::new(
        vec![GradedPiece::new(0, 0, one.clone(), one)],
        q,
        0,
        true,
    )
}

/// Alternating trace sequence: entry n (1-based) is
/// sum over pieces of (-1)^degree Tr((f_action . frob_action)^n),
/// by repeated exact matrix multiplication.
pub fn trace_sequence(action: &GradedAction, n_terms: usize) -> Vec<Rational> {
    assert!(n_terms >= 1, "trace sequence needs at least one term");
    let mut out = vec![Rational::zero(); n_terms];
    for piece in action.pieces() {
        if piece.size() == 0 {
            continue;
        }
        let step = piece.combined();
        let mut power = step.clone();
        for entry in out.iter_mut() {
            let tr = power.trace().expect("square");
            if piece.degree % 2 == 0 {
                *entry += &tr;
            } else {
                *entry -= &tr;
            }
            power = power.mul(&step).expect("sizes match");
        }
    }
    out
}

fn torus_twist_matrix(model: &TorusModel, n: u32) -> IntMatrix {
    let qn = BigInt::from(model.q).pow(n);
    let r = model.m.size();
    IntMatrix::new(
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let mut v = model.m.at(i, j) * &qn;
                        if i == j {
                            v -= 1;
                        }
                        v
                    })
                    .collect()
            })
            .collect(),
    )
    .expect("square by construction")
}

/// Closed-form fixed-point count of the n-th Frobenius twist on the torus:
/// |det(q^n M - I)|.
pub fn torus_fixed_count_formula(model: &TorusModel, n: u32) -> Result<BigInt> {
    assert!(n >= 1);
    let det = torus_twist_matrix(model, n).det();
    if det.is_zero() {
        return Err(Error::NonIsolatedFixedPoints);
    }
    let (p, _) = prime_power_decompose(model.q).expect("validated at construction");
    assert!(
        det.gcd(&BigInt::from(p)).is_one(),
        "torus fixed count must be coprime to the characteristic"
    );
    Ok(det.abs())
}

fn mod_inverse(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (n as i128, a as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert!(r == 1, "inverse requires coprime arguments");
    t.rem_euclid(n as i128) as u64
}

/// Brute-force fixed-point count on the torus: solves the monomial
/// equations x^{A11} y^{A12} = x^{A21} y^{A22} = 1 (A = q^n M - I) by
/// enumerating the multiplicative group of F_{q^s} through its log table,
/// where s is the smallest extension containing all solutions.
///
/// Every counted pair is re-verified by square-and-multiply in the field,
/// independently of the congruence bookkeeping that found it.
pub fn torus_fixed_count_bruteforce(model: &TorusModel, n: u32, ext_bound: u32) -> Result<u64> {
    assert!(n >= 1);
    if model.m.size() != 2 {
        return Err(Error::UnsupportedTorusRank(model.m.size()));
    }
    let a = torus_twist_matrix(model, n);
    if a.det().is_zero() {
        return Err(Error::NonIsolatedFixedPoints);
    }
    let rows: Vec<Vec<BigInt>> = (0..2)
        .map(|i| (0..2).map(|j| a.at(i, j).clone()).collect())
        .collect();
    let invariants = smith_normal_form(&rows)?;
    let exponent = invariants[1].to_u64().filter(|&d| d <= TORUS_ENUM_GUARD).ok_or(
        Error::FieldTooLarge {
            ext: ext_bound,
            size: invariants[1].to_u128().unwrap_or(u128::MAX),
            guard: TORUS_ENUM_GUARD as u128,
        },
    )?;
    // smallest s with exponent | q^s - 1; the invariant gcd(count, p) = 1
    // guarantees q is invertible modulo the exponent
    let s = if exponent == 1 {
        1
    } else {
        assert!(
            model.q.gcd(&exponent) == 1,
            "solution group order must be coprime to the characteristic"
        );
        let mut cur = model.q % exponent;
        let mut s = 1;
        while cur != 1 {
            cur = cur * (model.q % exponent) % exponent;
            s += 1;
            assert!(s <= exponent, "order of q must divide a value below d2");
        }
        s
    };
    if s > ext_bound as u64 {
        return Err(Error::InsufficientExtension {
            ext_bound,
            needed: s as u32,
        });
    }
    let mut field_size: u64 = 1;
    for _ in 0..s {
        field_size = field_size.saturating_mul(model.q);
        if field_size > TORUS_ENUM_GUARD {
            return Err(Error::FieldTooLarge {
                ext: s as u32,
                size: field_size as u128,
                guard: TORUS_ENUM_GUARD as u128,
            });
        }
    }
    let (p, e) = prime_power_decompose(model.q).expect("validated at construction");
    let field = SmallField::new(p, (e as u64 * s) as usize, TORUS_ENUM_GUARD)?;
    let group = field.order();
    let reduce = |v: &BigInt| -> u64 {
        v.mod_floor(&BigInt::from(group)).to_u64().expect("below group order")
    };
    let r = [
        [reduce(a.at(0, 0)), reduce(a.at(0, 1))],
        [reduce(a.at(1, 0)), reduce(a.at(1, 1))],
    ];
    let verify = |i: u64, j: u64| -> bool {
        let x = field.exp(i);
        let y = field.exp(j);
        (0..2).all(|row| {
            field.mul(field.pow(x, r[row][0]), field.pow(y, r[row][1])) == field.one()
        })
    };
    // pick the equation with a nonzero y-coefficient as the solver
    let (main, other) = if r[0][1] != 0 {
        (r[0], r[1])
    } else if r[1][1] != 0 {
        (r[1], r[0])
    } else {
        // both equations constrain x only; y ranges over the whole group
        let mut count_x = 0;
        let (mut c0, mut c1) = (0u64, 0u64);
        for i in 0..group {
            if c0 == 0 && c1 == 0 {
                count_x += 1;
                debug_assert!(verify(i, 0));
            }
            c0 = (c0 + r[0][0]) % group;
            c1 = (c1 + r[1][0]) % group;
        }
        return Ok(count_x * group);
    };
    let g = main[1].gcd(&group);
    let step = group / g;
    let inv = mod_inverse(main[1] / g, step);
    let mut count = 0;
    let (mut c_main, mut c_other) = (0u64, 0u64);
    for i in 0..group {
        if c_main % g == 0 {
            let rhs = (group - c_main) % group;
            let j0 = rhs / g % step * inv % step;
            for t in 0..g {
                let j = j0 + t * step;
                if (c_other + other[1] % group * j) % group == 0 {
                    assert!(verify(i, j), "congruence solution failed field check");
                    count += 1;
                }
            }
        }
        c_main = (c_main + main[0]) % group;
        c_other = (c_other + other[0]) % group;
    }
    Ok(count)
}

/// Brute-force point count of y^2 = x^3 + a4 x + a6 over F_{q^n}, including
/// the point at infinity. Quadratic residues are recognized by parity of
/// the discrete log.
pub fn elliptic_point_count_bruteforce(q: u64, a4: i64, a6: i64, n: u32) -> Result<u64> {
    assert!(n >= 1);
    if q == 2 {
        return Err(Error::EvenCharacteristic(q));
    }
    assert!(is_prime(q), "elliptic base field must be prime");
    let disc = 4 * (a4 as i128).pow(3) + 27 * (a6 as i128).pow(2);
    if disc.rem_euclid(q as i128) == 0 {
        return Err(Error::SingularCurve { q, a4, a6 });
    }
    let field = SmallField::new(q, n as usize, ELLIPTIC_ENUM_GUARD)?;
    let a = field.from_int(a4);
    let b = field.from_int(a6);
    let mut count = 1; // point at infinity
    for x in 0..field.size() {
        let x3 = field.mul(field.mul(x, x), x);
        let v = field.add(x3, field.add(field.mul(a, x), b));
        if v == field.zero() {
            count += 1;
        } else if field.log(v).expect("nonzero element") % 2 == 0 {
            count += 2;
        }
    }
    Ok(count)
}

/// Checks sum_k (-1)^k Tr(Lambda^k B) = det(I - B) exactly.
pub fn lefschetz_determinant_identity(b: &QMatrix) -> Result<bool> {
    if !b.is_square() {
        return Err(Error::NotSquare {
            rows: b.n_rows(),
            cols: b.n_cols(),
        });
    }
    let n = b.n_rows();
    let mut sum = Rational::zero();
    for k in 0..=n {
        let tr = exterior_power(b, k)?.trace()?;
        if k % 2 == 0 {
            sum += tr;
        } else {
            sum -= tr;
        }
    }
    let det = QMatrix::identity(n).sub(b)?.det()?;
    Ok(sum == det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::rational::rat_int;

    fn torus_example() -> TorusModel {
        TorusModel::new(2, IntMatrix::from_ints(&[&[2, 3], &[1, 2]])).unwrap()
    }

    fn abelian_g3() -> AbelianProductModel {
        AbelianProductModel::new(
            5,
            -3,
            IntMatrix::from_ints(&[&[2, 3, 0], &[1, 2, 0], &[0, 0, 1]]),
        )
        .unwrap()
    }

    #[test]
    fn torus_pieces_match_the_rank_two_grading() {
        let action = torus_graded_action(&torus_example()).unwrap();
        assert_eq!(action.dim(), 2);
        assert!(!action.proper());
        let keys: Vec<(usize, usize)> =
            action.pieces().iter().map(|p| (p.degree, p.weight)).collect();
        assert_eq!(keys, vec![(2, 0), (3, 2), (4, 4)]);
        // det M = 1, so the ends carry the identity
        assert_eq!(action.pieces()[0].f_action, QMatrix::from_ints(&[&[1]]));
        assert_eq!(action.pieces()[2].f_action, QMatrix::from_ints(&[&[1]]));
        assert_eq!(
            action.pieces()[1].frob_action,
            QMatrix::from_ints(&[&[2, 0], &[0, 2]])
        );
        assert_eq!(action.pieces()[2].frob_action, QMatrix::from_ints(&[&[4]]));
        assert_eq!(action.betti_totals(), (2, 2));
    }

    #[test]
    fn torus_rank_must_be_two() {
        let m = TorusModel::new(2, IntMatrix::from_ints(&[&[1]])).unwrap();
        assert!(matches!(
            torus_graded_action(&m),
            Err(Error::UnsupportedTorusRank(1))
        ));
    }

    #[test]
    fn singular_torus_matrix_is_rejected() {
        assert!(matches!(
            TorusModel::new(2, IntMatrix::from_ints(&[&[1, 2], &[2, 4]])),
            Err(Error::SingularTorusMatrix)
        ));
    }

    #[test]
    fn torus_trace_sequence_matches_the_closed_form() {
        let action = torus_graded_action(&torus_example()).unwrap();
        let traces = trace_sequence(&action, 3);
        assert_eq!(traces, vec![rat_int(-3), rat_int(-39), rat_int(-351)]);
    }

    #[test]
    fn constant_map_has_all_one_traces() {
        let action = constant_map_action(2).unwrap();
        assert_eq!(trace_sequence(&action, 5), vec![rat_int(1); 5]);
        let action5 = constant_map_action(5).unwrap();
        assert_eq!(trace_sequence(&action5, 3), vec![rat_int(1); 3]);
    }

    #[test]
    fn abelian_g1_frobenius_charpoly() {
        let model = AbelianProductModel::new(5, -3, IntMatrix::from_ints(&[&[1]])).unwrap();
        let action = abelian_graded_action(&model).unwrap();
        assert!(action.proper());
        assert_eq!(action.dim(), 1);
        let degree1 = &action.pieces()[1];
        assert_eq!(degree1.degree, 1);
        let cp = degree1.frob_action.charpoly().unwrap();
        assert_eq!(cp, Polynomial::from_ints(&[5, 3, 1]));
    }

    #[test]
    fn abelian_g1_trace_is_the_point_count() {
        let model = AbelianProductModel::new(5, -3, IntMatrix::from_ints(&[&[1]])).unwrap();
        let action = abelian_graded_action(&model).unwrap();
        let traces = trace_sequence(&action, 2);
        assert_eq!(traces[0], rat_int(9));
        let brute = elliptic_point_count_bruteforce(5, 1, 1, 1).unwrap();
        assert_eq!(traces[0], rat_int(brute as i64));
        let brute2 = elliptic_point_count_bruteforce(5, 1, 1, 2).unwrap();
        assert_eq!(brute2, 27);
        assert_eq!(traces[1], rat_int(27));
    }

    #[test]
    fn abelian_g3_degree_one_eigenvalues() {
        let action = abelian_graded_action(&abelian_g3()).unwrap();
        let degree1 = &action.pieces()[1];
        assert_eq!(degree1.size(), 6);
        let cp = degree1.f_action.charpoly().unwrap();
        // eigenvalues 2 +/- sqrt(3) (twice each) and 1 (twice)
        let factor = Polynomial::from_ints(&[1, -4, 1]).mul(&Polynomial::from_ints(&[-1, 1]));
        assert_eq!(cp, factor.mul(&factor));
        assert_eq!(action.betti_totals(), (32, 32));
    }

    #[test]
    fn abelian_degree_zero_is_trivial() {
        let action = abelian_graded_action(&abelian_g3()).unwrap();
        let degree0 = &action.pieces()[0];
        assert_eq!(degree0.f_action, QMatrix::from_ints(&[&[1]]));
        assert_eq!(degree0.frob_action, QMatrix::from_ints(&[&[1]]));
    }

    #[test]
    fn weil_bound_is_enforced() {
        assert!(matches!(
            AbelianProductModel::new(5, -5, IntMatrix::from_ints(&[&[1]])),
            Err(Error::WeilBoundViolated { trace: -5, q: 5 })
        ));
        // boundary case 4q = a^2 is allowed
        assert!(AbelianProductModel::new(4, 4, IntMatrix::from_ints(&[&[1]])).is_ok());
    }

    #[test]
    fn purity_rejects_a_mislabeled_weight() {
        let piece = GradedPiece::new(
            1,
            0,
            QMatrix::identity(1),
            QMatrix::from_ints(&[&[2]]),
        );
        let err = GradedAction::new(vec![piece], 2, 1, true).unwrap_err();
        assert!(matches!(err, Error::PurityViolation { degree: 1, weight: 0, .. }));
    }

    #[test]
    fn purity_rejects_singular_frobenius() {
        let piece = GradedPiece::new(0, 0, QMatrix::identity(1), QMatrix::from_ints(&[&[0]]));
        assert!(matches!(
            GradedAction::new(vec![piece], 2, 0, true),
            Err(Error::PurityViolation { .. })
        ));
    }

    #[test]
    fn noncommuting_actions_are_rejected() {
        let piece = GradedPiece::new(
            0,
            0,
            QMatrix::from_ints(&[&[1, 1], &[0, 1]]),
            QMatrix::from_ints(&[&[1, 0], &[1, 1]]),
        );
        assert!(matches!(
            GradedAction::new(vec![piece], 2, 1, false),
            Err(Error::NonCommutingActions { .. })
        ));
    }

    #[test]
    fn duplicate_and_out_of_range_pieces_are_rejected() {
        let unit = || GradedPiece::new(0, 0, QMatrix::identity(1), QMatrix::identity(1));
        assert!(matches!(
            GradedAction::new(vec![unit(), unit()], 2, 1, false),
            Err(Error::DuplicatePiece { degree: 0, weight: 0 })
        ));
        let high = GradedPiece::new(3, 0, QMatrix::identity(1), QMatrix::identity(1));
        assert!(matches!(
            GradedAction::new(vec![high], 2, 1, false),
            Err(Error::GradingOutOfRange { degree: 3, .. })
        ));
    }

    #[test]
    fn piece_size_mismatch_is_rejected() {
        let piece = GradedPiece::new(0, 0, QMatrix::identity(2), QMatrix::identity(1));
        assert!(matches!(
            GradedAction::new(vec![piece], 2, 1, false),
            Err(Error::PieceSizeMismatch { .. })
        ));
    }

    #[test]
    fn fixed_count_formula_examples() {
        let m = torus_example();
        assert_eq!(torus_fixed_count_formula(&m, 1).unwrap(), BigInt::from(3));
        assert_eq!(torus_fixed_count_formula(&m, 2).unwrap(), BigInt::from(1));
        let id = TorusModel::new(2, IntMatrix::from_ints(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(torus_fixed_count_formula(&id, 1).unwrap(), BigInt::from(1));
    }

    #[test]
    fn bruteforce_count_matches_the_formula_on_examples() {
        let m = torus_example();
        assert_eq!(torus_fixed_count_bruteforce(&m, 1, 4).unwrap(), 3);
        assert_eq!(torus_fixed_count_bruteforce(&m, 2, 4).unwrap(), 1);
        let id = TorusModel::new(2, IntMatrix::from_ints(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(torus_fixed_count_bruteforce(&id, 1, 4).unwrap(), 1);
    }

    #[test]
    fn bruteforce_reports_insufficient_extension() {
        let m = torus_example();
        assert!(matches!(
            torus_fixed_count_bruteforce(&m, 1, 1),
            Err(Error::InsufficientExtension { ext_bound: 1, needed: 2 })
        ));
    }

    #[test]
    fn elliptic_counts() {
        assert_eq!(elliptic_point_count_bruteforce(5, 1, 1, 1).unwrap(), 9);
        assert_eq!(elliptic_point_count_bruteforce(5, 1, 1, 2).unwrap(), 27);
        assert_eq!(elliptic_point_count_bruteforce(7, 1, 0, 1).unwrap(), 8);
    }

    #[test]
    fn elliptic_preconditions() {
        assert!(matches!(
            elliptic_point_count_bruteforce(5, 0, 0, 1),
            Err(Error::SingularCurve { .. })
        ));
        assert!(matches!(
            elliptic_point_count_bruteforce(2, 1, 1, 1),
            Err(Error::EvenCharacteristic(2))
        ));
        assert!(matches!(
            elliptic_point_count_bruteforce(5, 1, 1, 10),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn lefschetz_identity_on_small_cases() {
        assert!(lefschetz_determinant_identity(&QMatrix::zeros(3, 3)).unwrap());
        assert!(lefschetz_determinant_identity(&QMatrix::from_ints(&[&[2, 0], &[0, 3]])).unwrap());
        assert!(
            lefschetz_determinant_identity(&QMatrix::from_ints(&[&[2, 3], &[1, 2]])).unwrap()
        );
    }

    #[test]
    fn weil_trace_from_brute_count() {
        let count = elliptic_point_count_bruteforce(5, 1, 1, 1).unwrap();
        let trace = 5 + 1 - count as i64;
        assert_eq!(trace, -3);
        assert!((trace * trace) as u64 <= 4 * 5);
    }
}
