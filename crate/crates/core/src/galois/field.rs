use super::{CosetPartition, PolyF2};
use crate::{Error, Result};

/// Largest extension degree handled with exp/log tables.
pub const MAX_EXTENSION_DEGREE: usize = 20;

/// `GF(2^m)` arithmetic for the splitting field of `z^N - 1`, together with a
/// fixed primitive `N`-th root of unity.
///
/// Elements are `u32` bit patterns of polynomials modulo `modulus`.
#[derive(Clone, Debug)]
pub struct FieldContext {
    n: usize,
    m: usize,
    modulus: PolyF2,
    generator: u32,
    order: usize,
    exp: Vec<u32>,
    log: Vec<u32>,
    omega: u32,
    omega_log: usize,
}

/// Multiplicative order of 2 modulo odd `n`.
pub fn order_of_two(n: usize) -> usize {
    assert!(n % 2 == 1, "order of 2 is defined only for odd moduli");
    if n == 1 {
        return 1;
    }
    let mut x = 2 % n;
    let mut k = 1;
    while x != 1 {
        x = x * 2 % n;
        k += 1;
    }
    k
}

fn mul_raw(a: u64, b: u64, modulus: u64, m: usize) -> u64 {
    let mut a = a;
    let mut b = b;
    let mut r = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> m) & 1 == 1 {
            a ^= modulus;
        }
    }
    r
}

fn pow_raw(base: u64, mut e: u64, modulus: u64, m: usize) -> u64 {
    let mut result = 1u64;
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_raw(result, b, modulus, m);
        }
        b = mul_raw(b, b, modulus, m);
        e >>= 1;
    }
    result
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x % p == 0 {
            out.push(p);
            while x % p == 0 {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(p: &PolyF2) -> bool {
    let Some(d) = p.degree() else { return false };
    if d == 0 {
        return false;
    }
    for bits in 2u64..(1u64 << (d / 2 + 1)) {
        if PolyF2::from_bits(bits).divides(p) {
            return false;
        }
    }
    true
}

/// Smallest (as an integer bit pattern) irreducible polynomial of degree `m`.
pub fn smallest_irreducible(m: usize) -> PolyF2 {
    assert!((1..63).contains(&m));
    (1u64 << m..1u64 << (m + 1))
        .map(PolyF2::from_bits)
        .find(is_irreducible)
        .expect("irreducible polynomials exist in every degree")
}

impl FieldContext {
    /// Field for odd `n`: `m = ord_n(2)`, modulus the smallest irreducible of
    /// degree `m`, generator the smallest element of full order, and
    /// `omega = generator^((2^m - 1) / n)`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        if n % 2 == 0 {
            return Err(Error::EvenLength(n));
        }
        let m = order_of_two(n);
        if m > MAX_EXTENSION_DEGREE {
            return Err(Error::FieldTooLarge {
                m,
                max: MAX_EXTENSION_DEGREE,
            });
        }
        let modulus = smallest_irreducible(m);
        let mod_bits = modulus.to_bits().expect("degree below 64");
        let order = (1usize << m) - 1;
        let factors = prime_factors(order as u64);
        let generator = (1u64..=order as u64)
            .find(|&g| {
                // The group is trivial when order == 1.
                factors
                    .iter()
                    .all(|&p| pow_raw(g, order as u64 / p, mod_bits, m) != 1)
            })
            .expect("GF(2^m)* is cyclic") as u32;

        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; order + 1];
        let mut x = 1u64;
        for i in 0..order {
            exp[i] = x as u32;
            exp[i + order] = x as u32;
            log[x as usize] = i as u32;
            x = mul_raw(x, generator as u64, mod_bits, m);
        }
        let omega_log = order / n;
        let omega = exp[omega_log];

        let ctx = FieldContext {
            n,
            m,
            modulus,
            generator,
            order,
            exp,
            log,
            omega,
            omega_log,
        };
        let mut acc = 1u32;
        for j in 1..=n {
            acc = ctx.mul(acc, omega);
            if (acc == 1) != (j == n) {
                return Err(Error::InvariantViolated(format!(
                    "omega has order {j}, expected {n}"
                )));
            }
        }
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Extension degree `m = ord_N(2)`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &PolyF2 {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// The primitive `N`-th root of unity.
    pub fn omega(&self) -> u32 {
        self.omega
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    pub fn pow(&self, a: u32, e: usize) -> u32 {
        if a == 0 {
            return u32::from(e == 0);
        }
        let l = self.log[a as usize] as usize;
        self.exp[(l * (e % self.order)) % self.order]
    }

    /// `omega^e`.
    pub fn omega_pow(&self, e: usize) -> u32 {
        self.exp[(self.omega_log * (e % self.n)) % self.order]
    }

    /// Evaluates a binary polynomial at a field element (Horner).
    pub fn eval(&self, p: &PolyF2, x: u32) -> u32 {
        let Some(d) = p.degree() else { return 0 };
        let mut acc = 0u32;
        for i in (0..=d).rev() {
            acc = self.mul(acc, x);
            if p.coeff(i) {
                acc ^= 1;
            }
        }
        acc
    }

    /// `{ e in [0, N) : g(omega^e) = 0 }`, ascending. `g` must divide `z^N - 1`.
    pub fn root_exponents(&self, g: &PolyF2) -> Result<Vec<usize>> {
        if g.is_zero() || !g.divides(&PolyF2::cyclic_modulus(self.n)) {
            return Err(Error::NotADivisor { n: self.n });
        }
        Ok((0..self.n)
            .filter(|&e| self.eval(g, self.omega_pow(e)) == 0)
            .collect())
    }

    /// Minimal polynomial of `omega^e` for `e` in a cyclotomic coset: the
    /// product of `(z - omega^e)` over the coset.
    pub fn minimal_polynomial(&self, coset: &[usize]) -> PolyF2 {
        // Coefficients in GF(2^m), little-endian.
        let mut acc: Vec<u32> = vec![1];
        for &e in coset {
            let root = self.omega_pow(e);
            let mut next = vec![0u32; acc.len() + 1];
            for (i, &c) in acc.iter().enumerate() {
                next[i + 1] ^= c;
                next[i] ^= self.mul(c, root);
            }
            acc = next;
        }
        assert!(
            acc.iter().all(|&c| c <= 1),
            "coset product has non-binary coefficients"
        );
        PolyF2::from_support(
            acc.iter()
                .enumerate()
                .filter(|(_, &c)| c == 1)
                .map(|(i, _)| i),
        )
    }

    /// The irreducible factors of `z^N - 1`, one per cyclotomic coset, in the
    /// coset order of [`CosetPartition::new`].
    pub fn irreducible_factors(&self) -> Vec<PolyF2> {
        CosetPartition::new(self.n)
            .cosets()
            .iter()
            .map(|c| self.minimal_polynomial(c))
            .collect()
    }

    /// Every monic divisor of `z^N - 1`, as products of subsets of the
    /// irreducible factors. Subset `mask` bit `i` selects factor `i`.
    pub fn divisors(&self) -> Vec<PolyF2> {
        let factors = self.irreducible_factors();
        assert!(factors.len() < 24, "too many factors to enumerate divisors");
        (0u32..1 << factors.len())
            .map(|mask| {
                factors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(PolyF2::one(), |acc, (_, f)| &acc * f)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_degrees() {
        assert_eq!(FieldContext::new(7).unwrap().m(), 3);
        // 2^6 = 64 = 3 * 21 + 1, and 2^1..2^5 mod 21 = 2, 4, 8, 16, 11.
        let pow2: Vec<usize> = (1..=6).map(|k| (1usize << k) % 21).collect();
        assert_eq!(pow2, vec![2, 4, 8, 16, 11, 1]);
        assert_eq!(FieldContext::new(21).unwrap().m(), 6);
        assert_eq!(FieldContext::new(63).unwrap().m(), 6);
        assert_eq!(FieldContext::new(1).unwrap().m(), 1);
    }

    #[test]
    fn even_and_zero_lengths_rejected() {
        assert_eq!(FieldContext::new(18).unwrap_err(), Error::EvenLength(18));
        assert_eq!(FieldContext::new(0).unwrap_err(), Error::ZeroLength);
    }

    #[test]
    fn modulus_is_smallest_irreducible() {
        assert_eq!(smallest_irreducible(3), PolyF2::from_bits(0b1011));
        assert_eq!(smallest_irreducible(6), PolyF2::from_bits(0b1000011));
        let ctx = FieldContext::new(63).unwrap();
        assert!(is_irreducible(ctx.modulus()));
    }

    #[test]
    fn omega_has_exact_order() {
        for n in [3, 5, 7, 9, 15, 21, 33, 63] {
            let ctx = FieldContext::new(n).unwrap();
            let w = ctx.omega();
            assert_eq!(ctx.pow(w, n), 1);
            assert!((1..n).all(|j| ctx.pow(w, j) != 1), "n = {n}");
        }
    }

    #[test]
    fn root_exponents_examples() {
        let ctx = FieldContext::new(9).unwrap();
        assert_eq!(
            ctx.root_exponents(&PolyF2::from_bits(0b11)).unwrap(),
            vec![0]
        );
        assert!(ctx.root_exponents(&PolyF2::one()).unwrap().is_empty());
        assert!(ctx.root_exponents(&PolyF2::from_bits(0b101)).is_err());

        // 1 + z + z^3 at N = 7: brute-force evaluation at every omega^e.
        let ctx = FieldContext::new(7).unwrap();
        let g = PolyF2::from_bits(0b1011);
        let brute: Vec<usize> = (0..7)
            .filter(|&e| {
                let x = ctx.pow(ctx.omega(), e);
                let x3 = ctx.mul(ctx.mul(x, x), x);
                1 ^ x ^ x3 == 0
            })
            .collect();
        let roots = ctx.root_exponents(&g).unwrap();
        assert_eq!(roots, brute);
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|&e| roots.contains(&(2 * e % 7))));
    }

    #[test]
    fn minimal_polynomials_multiply_to_cyclic_modulus() {
        for n in [7, 9, 15, 21, 63] {
            let ctx = FieldContext::new(n).unwrap();
            let prod = ctx
                .irreducible_factors()
                .iter()
                .fold(PolyF2::one(), |a, f| &a * f);
            assert_eq!(prod, PolyF2::cyclic_modulus(n));
            assert!(ctx.irreducible_factors().iter().all(is_irreducible));
        }
    }
}
