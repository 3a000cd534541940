//! Dense exact matrices over the rationals.
//!
//! Sizes in this crate stay small (cohomology of low-dimensional models), so
//! everything is row-major `Vec` storage with straightforward cubic
//! algorithms. Characteristic polynomials come from the Faddeev-LeVerrier
//! recurrence, which needs only matrix products and exact division by small
//! integers.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{rat_int, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch(bad.len(), n_cols));
        }
        Ok(QMatrix {
            n_rows,
            n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        QMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
        .expect("literal rows share a length")
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        QMatrix {
            n_rows,
            n_cols,
            data: vec![Rational::zero(); n_rows * n_cols],
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n_cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.n_cols + j]
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.n_rows)
        } else {
            Err(Error::NotSquare {
                rows: self.n_rows,
                cols: self.n_cols,
            })
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = QMatrix::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
            return Err(Error::DimensionMismatch(self.n_rows, other.n_rows));
        }
        Ok(QMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n_cols != other.n_rows {
            return Err(Error::DimensionMismatch(self.n_cols, other.n_rows));
        }
        let mut out = QMatrix::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let n = self.require_square()?;
        let mut base = self.clone();
        let mut acc = QMatrix::identity(n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Rational> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| self.at(i, i)).sum())
    }

    /// Monic characteristic polynomial `det(x*I - A)`, coefficients in
    /// ascending order, via Faddeev-LeVerrier.
    pub fn charpoly(&self) -> Result<Polynomial> {
        let n = self.require_square()?;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        // m holds A*M_{k-1} entering round k; M_k = A*M_{k-1} + c_{n-k+1}*I
        let mut m = QMatrix::identity(n);
        for k in 1..=n {
            if k > 1 {
                let c = coeffs[n - k + 1].clone();
                for i in 0..n {
                    *m.at_mut(i, i) += &c;
                }
            }
            let am = self.mul(&m)?;
            coeffs[n - k] = -(am.trace()? / rat_int(k as i64));
            m = am;
        }
        Ok(Polynomial::new(coeffs))
    }

    pub fn det(&self) -> Result<Rational> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(Rational::one());
        }
        let p = self.charpoly()?;
        let c0 = p.constant_term();
        Ok(if n % 2 == 0 { c0 } else { -c0 })
    }

    /// `det(I - t*A)` as a polynomial in `t`: the reversed characteristic
    /// polynomial, so its constant term is 1.
    pub fn det_one_minus_t(&self) -> Result<Polynomial> {
        let n = self.require_square()?;
        let p = self.charpoly()?;
        let coeffs = (0..=n).map(|j| p.coeff(n - j)).collect();
        Ok(Polynomial::new(coeffs))
    }

    pub fn kronecker(&self, other: &Self) -> Self {
        let mut out = QMatrix::zeros(self.n_rows * other.n_rows, self.n_cols * other.n_cols);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.n_rows {
                    for q in 0..other.n_cols {
                        *out.at_mut(i * other.n_rows + p, j * other.n_cols + q) =
                            a * other.at(p, q);
                    }
                }
            }
        }
        out
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.n_rows, self.n_cols)?;
        for i in 0..self.n_rows {
            let row: Vec<String> = (0..self.n_cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// All k-element subsets of {0..n-1} in lexicographic order.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for i in start..=(n - remaining) {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut current, &mut out);
    }
    out
}

fn minor_det(m: &QMatrix, rows: &[usize], cols: &[usize]) -> Rational {
    let k = rows.len();
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| m.at(i, j).clone()).collect())
        .collect();
    let mut det = Rational::one();
    for c in 0..k {
        let pivot = match (c..k).find(|&r| !a[r][c].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != c {
            a.swap(pivot, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for r in (c + 1)..k {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = &a[r][c] * &inv;
            for j in c..k {
                let sub = &factor * &a[c][j];
                a[r][j] -= sub;
            }
        }
    }
    det
}

/// k-th exterior power: the `C(n,k) x C(n,k)` matrix of `k x k` minors,
/// rows and columns indexed by k-subsets in lexicographic order.
pub fn exterior_power(m: &QMatrix, k: usize) -> Result<QMatrix> {
    let n = m.require_square()?;
    if k > n {
        return Err(Error::ExteriorPowerOutOfRange { k, size: n });
    }
    let subsets = k_subsets(n, k);
    let dim = subsets.len();
    let mut out = QMatrix::zeros(dim, dim);
    for (i, rows) in subsets.iter().enumerate() {
        for (j, cols) in subsets.iter().enumerate() {
            *out.at_mut(i, j) = minor_det(m, rows, cols);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn charpoly_of_2x2() {
        let m = QMatrix::from_ints(&[&[2, 3], &[1, 2]]);
        // x^2 - 4x + 1
        assert_eq!(m.charpoly().unwrap(), Polynomial::from_ints(&[1, -4, 1]));
        assert_eq!(m.det().unwrap(), rat_int(1));
        assert_eq!(m.trace().unwrap(), rat_int(4));
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // companion of x^2 - a x + q with a = 1, q = 2
        let c = QMatrix::from_ints(&[&[0, -2], &[1, 1]]);
        assert_eq!(c.charpoly().unwrap(), Polynomial::from_ints(&[2, -1, 1]));
    }

    #[test]
    fn charpoly_of_3x3() {
        let m = QMatrix::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        let p = m.charpoly().unwrap();
        assert_eq!(p.coeff(3), rat_int(1));
        assert_eq!(p.coeff(2), -m.trace().unwrap());
        assert_eq!(m.det().unwrap(), rat_int(-3));
        // Cayley-Hamilton: p(M) = 0
        let mut acc = QMatrix::zeros(3, 3);
        for k in 0..=3 {
            let mk = m.pow(k as u64).unwrap().scale(&p.coeff(k));
            acc = acc.add(&mk).unwrap();
        }
        assert_eq!(acc, QMatrix::zeros(3, 3));
    }

    #[test]
    fn det_one_minus_t_reverses_charpoly() {
        let m = QMatrix::from_ints(&[&[2, 3], &[1, 2]]);
        assert_eq!(
            m.det_one_minus_t().unwrap(),
            Polynomial::from_ints(&[1, -4, 1])
        );
        let a = QMatrix::from_ints(&[&[3, 0], &[0, 5]]);
        // (1-3t)(1-5t) = 1 - 8t + 15t^2
        assert_eq!(
            a.det_one_minus_t().unwrap(),
            Polynomial::from_ints(&[1, -8, 15])
        );
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let m = QMatrix::from_ints(&[&[2, 3], &[1, 2]]);
        let m3 = m.mul(&m).unwrap().mul(&m).unwrap();
        assert_eq!(m.pow(3).unwrap(), m3);
        assert_eq!(m.pow(0).unwrap(), QMatrix::identity(2));
    }

    #[test]
    fn kronecker_mixed_product() {
        let a = QMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = QMatrix::from_ints(&[&[0, 1], &[1, 1]]);
        let c = QMatrix::from_ints(&[&[2, 0], &[1, 1]]);
        let d = QMatrix::from_ints(&[&[1, 1], &[0, 2]]);
        let lhs = a.kronecker(&b).mul(&c.kronecker(&d)).unwrap();
        let rhs = a.mul(&c).unwrap().kronecker(&b.mul(&d).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(
            a.kronecker(&b).trace().unwrap(),
            a.trace().unwrap() * b.trace().unwrap()
        );
    }

    #[test]
    fn exterior_power_edges() {
        let m = QMatrix::from_ints(&[&[2, 3], &[1, 2]]);
        let l0 = exterior_power(&m, 0).unwrap();
        assert_eq!(l0, QMatrix::identity(1));
        assert_eq!(exterior_power(&m, 1).unwrap(), m);
        let l2 = exterior_power(&m, 2).unwrap();
        assert_eq!(l2.at(0, 0), &rat_int(1)); // det M
        assert!(matches!(
            exterior_power(&m, 3),
            Err(Error::ExteriorPowerOutOfRange { k: 3, size: 2 })
        ));
    }

    #[test]
    fn exterior_power_trace_is_elementary_symmetric() {
        let d = QMatrix::from_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(exterior_power(&d, 2).unwrap().trace().unwrap(), rat_int(11));
        assert_eq!(exterior_power(&d, 3).unwrap().trace().unwrap(), rat_int(6));
    }

    #[test]
    fn exterior_power_is_functorial() {
        let a = QMatrix::from_ints(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let b = QMatrix::from_ints(&[&[2, 1, 1], &[0, 1, 0], &[1, 1, 2]]);
        let lhs = exterior_power(&a.mul(&b).unwrap(), 2).unwrap();
        let rhs = exterior_power(&a, 2)
            .unwrap()
            .mul(&exterior_power(&b, 2).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn alternating_exterior_traces_give_det_id_minus() {
        // sum_k (-1)^k tr Lambda^k(X) = det(I - X)
        let x = QMatrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 2]]);
        let mut lhs = Rational::zero();
        for k in 0..=3 {
            let t = exterior_power(&x, k).unwrap().trace().unwrap();
            if k % 2 == 0 {
                lhs += t;
            } else {
                lhs -= t;
            }
        }
        let rhs = QMatrix::identity(3).sub(&x).unwrap().det().unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_entries_round_trip() {
        let m = QMatrix::new(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ])
        .unwrap();
        let det = m.det().unwrap();
        assert_eq!(det, rat(1, 10) - rat(1, 12));
        assert_eq!(m.charpoly().unwrap().coeff(0), det);
    }

    #[test]
    fn ragged_rows_rejected() {
        let m = QMatrix::new(vec![vec![rat_int(1)], vec![rat_int(1), rat_int(2)]]);
        assert!(matches!(m, Err(Error::DimensionMismatch(_, _))));
    }
}
