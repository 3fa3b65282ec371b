use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The prime field `F_p`, `p ≥ 5`. Elements are plain `u32` values in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub struct PrimeField {
    p: u32,
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    p: u64,
}

impl TryFrom<FieldRepr> for PrimeField {
    type Error = Error;

    fn try_from(r: FieldRepr) -> Result<Self> {
        PrimeField::new(r.p)
    }
}

impl From<PrimeField> for FieldRepr {
    fn from(f: PrimeField) -> Self {
        FieldRepr { p: f.p as u64 }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Validates primality by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 / 2 {
            return Err(Error::InvalidInput(format!("p = {p} is out of range")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::CharacteristicTooSmall(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of points (and of lines) of `PG(2, p)`.
    pub fn plane_size(&self) -> usize {
        let p = self.p as usize;
        p * p + p + 1
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn elem(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a as u64 % self.p as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    ///
    /// Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> usize {
        assert!(!a.is_multiple_of(self.p), "order of zero");
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.pow(a, (self.p as u64 - 1) / 2) == 1
    }

    /// A square root, if one exists. Brute force; `p` is small.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        (0..self.p).find(|&x| self.mul(x, x) == a)
    }

    /// The smallest generator of `F_p^*`.
    pub fn primitive_root(&self) -> u32 {
        (2..self.p)
            .find(|&g| self.order(g) == self.p as usize - 1)
            .unwrap_or(1)
    }

    /// The unique subgroup of order `n` of `F_p^*`, listed as `1, g, g², …`
    /// where `g` is the smallest element of order exactly `n`.
    pub fn mult_subgroup(&self, n: usize) -> Result<Vec<u32>> {
        let order = self.p as usize - 1;
        if n == 0 || !order.is_multiple_of(n) {
            return Err(Error::NotADivisor { p: self.p, n });
        }
        let g = (1..self.p)
            .find(|&x| self.order(x) == n)
            .expect("F_p^* is cyclic");
        let mut out = Vec::with_capacity(n);
        let mut x = 1;
        for _ in 0..n {
            out.push(x);
            x = self.mul(x, g);
        }
        Ok(out)
    }
}
