use std::fmt;
use std::ops::{Add, Mul};

use crate::{Error, Result};

/// Polynomial over GF(2), little-endian: bit `i` is the coefficient of `z^i`.
///
/// Trailing zero words are always trimmed, so the zero polynomial has no
/// words and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyF2 {
    words: Vec<u64>,
}

impl PolyF2 {
    pub fn zero() -> Self {
        PolyF2 { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(e: usize) -> Self {
        let mut p = PolyF2 {
            words: vec![0; e / 64 + 1],
        };
        p.words[e / 64] = 1u64 << (e % 64);
        p
    }

    /// `z^n - 1` (equal to `z^n + 1` over GF(2)).
    pub fn cyclic_modulus(n: usize) -> Self {
        Self::monomial(n) + Self::one()
    }

    /// Sum of `z^(e mod n)` over `exps`. Colliding exponents cancel.
    pub fn from_exponents(n: usize, exps: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        let mut p = PolyF2 {
            words: vec![0; n.div_ceil(64)],
        };
        for &e in exps {
            let e = e % n;
            p.words[e / 64] ^= 1u64 << (e % 64);
        }
        p.trim();
        Ok(p)
    }

    /// Polynomial with exactly the given exponents (no reduction; repeats cancel).
    pub fn from_support(exps: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    /// Builds from a `u64` bit pattern.
    pub fn from_bits(bits: u64) -> Self {
        let mut p = PolyF2 { words: vec![bits] };
        p.trim();
        p
    }

    /// The low 64 coefficients as a bit pattern, or `None` if the degree is too high.
    pub fn to_bits(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    fn flip(&mut self, e: usize) {
        if self.words.len() <= e / 64 {
            self.words.resize(e / 64 + 1, 0);
        }
        self.words[e / 64] ^= 1u64 << (e % 64);
        self.trim();
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// `self ^= other << shift`.
    fn xor_shifted(&mut self, other: &PolyF2, shift: usize) {
        if other.is_zero() {
            return;
        }
        let ws = shift / 64;
        let bs = shift % 64;
        let needed = other.words.len() + ws + 1;
        if self.words.len() < needed {
            self.words.resize(needed, 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs != 0 {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.trim();
    }

    /// Quotient and remainder with `deg(remainder) < deg(den)`.
    pub fn divmod(&self, den: &PolyF2) -> Result<(PolyF2, PolyF2)> {
        let dd = den.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = PolyF2::zero();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            rem.xor_shifted(den, shift);
            quot.flip(shift);
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, den: &PolyF2) -> Result<PolyF2> {
        Ok(self.divmod(den)?.1)
    }

    /// Whether `self` divides `other`. The zero polynomial divides only zero.
    pub fn divides(&self, other: &PolyF2) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Greatest common divisor by Euclid's algorithm.
    pub fn gcd(&self, other: &PolyF2) -> Result<PolyF2> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Reduction modulo `z^n - 1` by folding exponents.
    pub fn reduce_cyclic(&self, n: usize) -> PolyF2 {
        assert!(n > 0, "cyclic length must be positive");
        if self.degree().is_none_or(|d| d < n) {
            return self.clone();
        }
        let mut out = PolyF2 {
            words: vec![0; n.div_ceil(64)],
        };
        for e in self.exponents() {
            let e = e % n;
            out.words[e / 64] ^= 1u64 << (e % 64);
        }
        out.trim();
        out
    }

    /// Product in `F2[z]/(z^n - 1)`.
    pub fn mul_mod(&self, other: &PolyF2, n: usize) -> PolyF2 {
        (self * other).reduce_cyclic(n)
    }

    /// Image under `z -> z^(-1)` in `F2[z]/(z^n - 1)`: exponent `e` becomes `-e mod n`.
    pub fn reciprocal(&self, n: usize) -> PolyF2 {
        assert!(n > 0, "cyclic length must be positive");
        let mut out = PolyF2::zero();
        for e in self.reduce_cyclic(n).exponents() {
            out.flip((n - e % n) % n);
        }
        out
    }

    /// Coefficient vector of length `n` (requires `deg < n`).
    pub fn to_bitvector(&self, n: usize) -> crate::BitVector {
        let exps = self.exponents();
        assert!(
            exps.last().is_none_or(|&d| d < n),
            "degree exceeds vector length"
        );
        crate::BitVector::from_support(n, exps)
    }

    pub fn from_bitvector(v: &crate::BitVector) -> PolyF2 {
        PolyF2::from_support(v.iter_ones())
    }

    /// Comma-separated exponent list, e.g. `0,3,9`.
    pub fn exponent_list(&self) -> String {
        self.exponents()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses a comma-separated list of non-negative exponents, e.g. `"0,3,9"`.
/// An empty string yields an empty list.
pub fn parse_exponent_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<usize>()
                .map_err(|_| format!("invalid exponent {tok:?}"))
        })
        .collect()
}

impl Add for PolyF2 {
    type Output = PolyF2;
    fn add(mut self, rhs: PolyF2) -> PolyF2 {
        self.xor_shifted(&rhs, 0);
        self
    }
}

impl Add<&PolyF2> for &PolyF2 {
    type Output = PolyF2;
    fn add(self, rhs: &PolyF2) -> PolyF2 {
        let mut out = self.clone();
        out.xor_shifted(rhs, 0);
        out
    }
}

impl Mul<&PolyF2> for &PolyF2 {
    type Output = PolyF2;
    fn mul(self, rhs: &PolyF2) -> PolyF2 {
        let mut out = PolyF2::zero();
        for e in self.exponents() {
            out.xor_shifted(rhs, e);
        }
        out
    }
}

impl Mul for PolyF2 {
    type Output = PolyF2;
    fn mul(self, rhs: PolyF2) -> PolyF2 {
        &self * &rhs
    }
}

impl fmt::Display for PolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "z".to_string(),
                _ => format!("z^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for PolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyF2({self})")
    }
}
