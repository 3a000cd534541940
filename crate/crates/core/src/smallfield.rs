//! Explicit arithmetic in small finite fields F_{p^m}.
//!
//! Elements are packed coefficient vectors (base-p digits) and the whole
//! multiplicative group is tabulated as powers of x modulo a primitive
//! polynomial. The primitive polynomial is found by deterministic search in
//! ascending packed order, and primitivity is established directly: x must
//! cycle through all p^m - 1 nonzero residues before returning to 1, which
//! simultaneously proves irreducibility (the ring is a field) and that x
//! generates. Fields here are tiny, so the tables double as discrete-log
//! oracles for the brute-force fixed-point counts.

use crate::error::{Error, Result};

pub struct SmallField {
    p: u64,
    m: usize,
    size: u64,
    order: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes n = p^e with p prime, or errors.
pub fn prime_power_decompose(n: u64) -> Result<(u64, u32)> {
    if n < 2 {
        return Err(Error::NotPrimePower(n));
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut v = n;
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            return if v == 1 {
                Ok((p, e))
            } else {
                Err(Error::NotPrimePower(n))
            };
        }
        p += 1;
    }
    Ok((n, 1))
}

impl SmallField {
    /// Builds F_{p^m}; `size_guard` caps p^m to keep the tables honest.
    pub fn new(p: u64, m: usize, size_guard: u64) -> Result<Self> {
        assert!(is_prime(p), "field characteristic must be prime");
        assert!(m >= 1);
        let mut size: u64 = 1;
        for _ in 0..m {
            size = size.saturating_mul(p);
            if size > size_guard {
                return Err(Error::FieldTooLarge {
                    ext: m as u32,
                    size: size as u128,
                    guard: size_guard as u128,
                });
            }
        }
        let order = size - 1;
        // packed candidates with nonzero constant term, ascending
        for packed in 1..size {
            if packed % p == 0 {
                continue;
            }
            let modulus = unpack(packed, p, m);
            if let Some((exp, log)) = try_build_tables(p, m, size, &modulus) {
                return Ok(SmallField {
                    p,
                    m,
                    size,
                    order,
                    modulus,
                    exp,
                    log,
                });
            }
        }
        Err(Error::PrimitivePolyNotFound { p, m: m as u32 })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    /// The tabulated generator g^i (i taken mod the group order).
    pub fn exp(&self, i: u64) -> u64 {
        self.exp[(i % self.order) as usize] as u64
    }

    pub fn log(&self, a: u64) -> Option<u64> {
        let l = self.log[a as usize];
        if l == NO_LOG {
            None
        } else {
            Some(l as u64)
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        let mut pow = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.m {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * pow;
            pow *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let mut out = 0;
        let mut pow = 1;
        let mut a = a;
        for _ in 0..self.m {
            let d = (self.p - a % self.p) % self.p;
            out += d * pow;
            pow *= self.p;
            a /= self.p;
        }
        out
    }

    /// Schoolbook product reduced by the modulus; independent of the tables.
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let av = unpack(a, self.p, self.m);
        let bv = unpack(b, self.p, self.m);
        let mut prod = vec![0u64; 2 * self.m - 1];
        for (i, &x) in av.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in bv.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // fold x^(m+k) down using x^m = -modulus
        for d in (self.m..2 * self.m - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &mi) in self.modulus.iter().enumerate() {
                let sub = c * mi % self.p;
                prod[d - self.m + i] = (prod[d - self.m + i] + self.p - sub) % self.p;
            }
        }
        pack(&prod[..self.m], self.p)
    }

    /// Square-and-multiply powering built on `mul`, for verification paths
    /// that must not trust the log tables.
    pub fn pow(&self, a: u64, e: u64) -> u64 {
        let mut base = a;
        let mut e = e;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Embeds an integer (residue mod p) as a constant field element.
    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

fn unpack(packed: u64, p: u64, m: usize) -> Vec<u64> {
    let mut v = Vec::with_capacity(m);
    let mut x = packed;
    for _ in 0..m {
        v.push(x % p);
        x /= p;
    }
    v
}

fn pack(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Walks powers of x modulo the candidate; succeeds only when the walk
/// visits every nonzero residue exactly once before closing at 1.
fn try_build_tables(p: u64, m: usize, size: u64, modulus: &[u64]) -> Option<(Vec<u32>, Vec<u32>)> {
    let order = size - 1;
    let mut exp = Vec::with_capacity(order as usize);
    let mut log = vec![NO_LOG; size as usize];
    let mut cur = vec![0u64; m];
    cur[0] = 1;
    for i in 0..order {
        let packed = pack(&cur, p);
        if packed == 1 && i > 0 {
            return None; // x has small order: reducible or imprimitive
        }
        if log[packed as usize] != NO_LOG {
            return None; // revisit without closing: not a field
        }
        log[packed as usize] = i as u32;
        exp.push(packed as u32);
        // cur *= x
        let top = cur[m - 1];
        for k in (1..m).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (k, &mk) in modulus.iter().enumerate() {
                let sub = top * mk % p;
                cur[k] = (cur[k] + p - sub) % p;
            }
        }
    }
    // the walk must close: x^order = 1
    if pack(&cur, p) != 1 {
        return None;
    }
    Some((exp, log))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_uses_the_classic_modulus() {
        let f = SmallField::new(2, 2, 1 << 20).unwrap();
        // x^2 + x + 1: packed reduction vector (1, 1)
        assert_eq!(f.modulus(), &[1, 1]);
        assert_eq!(f.order(), 3);
        // elements 1, x, x+1 cycle
        assert_eq!(f.exp(0), 1);
        assert_eq!(f.exp(1), 2);
        assert_eq!(f.exp(2), 3);
        assert_eq!(f.mul(2, 2), 3); // x * x = x + 1
        assert_eq!(f.mul(2, 3), 1); // x (x+1) = x^2 + x = 1
    }

    #[test]
    fn prime_field_is_supported() {
        let f = SmallField::new(5, 1, 100).unwrap();
        assert_eq!(f.order(), 4);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.neg(2), 3);
        // generator really has order 4
        let g = f.exp(1);
        assert_ne!(f.pow(g, 2), 1);
        assert_eq!(f.pow(g, 4), 1);
    }

    #[test]
    fn f9_tables_are_a_bijection() {
        let f = SmallField::new(3, 2, 1 << 20).unwrap();
        assert_eq!(f.order(), 8);
        let mut seen = vec![false; 9];
        for i in 0..8 {
            let v = f.exp(i);
            assert!(!seen[v as usize]);
            seen[v as usize] = true;
            assert_eq!(f.log(v), Some(i));
        }
        assert!(!seen[0]);
        assert_eq!(f.log(0), None);
    }

    #[test]
    fn pow_matches_table_exponentiation() {
        let f = SmallField::new(2, 4, 1 << 20).unwrap();
        let g = f.exp(1);
        for e in 0..20 {
            assert_eq!(f.pow(g, e), f.exp(e));
        }
    }

    #[test]
    fn size_guard_is_enforced() {
        assert!(matches!(
            SmallField::new(2, 30, 1 << 20),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power_decompose(8).unwrap(), (2, 3));
        assert_eq!(prime_power_decompose(5).unwrap(), (5, 1));
        assert_eq!(prime_power_decompose(49).unwrap(), (7, 2));
        assert!(matches!(prime_power_decompose(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(prime_power_decompose(1), Err(Error::NotPrimePower(1))));
    }
}
