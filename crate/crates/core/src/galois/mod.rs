//! Binary polynomials, the cyclic ring `F2[z]/(z^N - 1)`, and the extension
//! field `GF(2^m)` that splits `z^N - 1`.

mod field;
mod poly;

pub use field::{
    is_irreducible, order_of_two, smallest_irreducible, FieldContext, MAX_EXTENSION_DEGREE,
};
pub use poly::{parse_exponent_list, PolyF2};

use crate::{Error, Result};

/// Partition of `Z_N` into cyclotomic cosets `{e, 2e, 4e, ...} mod N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    n: usize,
    cosets: Vec<Vec<usize>>,
}

impl CosetPartition {
    /// Cosets ordered by their smallest element; each coset is sorted.
    /// Panics for even `n` (use [`cyclotomic_cosets`] for a checked variant).
    pub fn new(n: usize) -> Self {
        assert!(n % 2 == 1, "cyclotomic cosets of 2 need odd N");
        let mut seen = vec![false; n];
        let mut cosets = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut coset = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                coset.push(e);
                e = 2 * e % n;
            }
            coset.sort_unstable();
            cosets.push(coset);
        }
        CosetPartition { n, cosets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    /// Index of the coset containing `e`.
    pub fn coset_of(&self, e: usize) -> usize {
        self.cosets
            .iter()
            .position(|c| c.binary_search(&(e % self.n)).is_ok())
            .expect("partition")
    }
}

pub fn cyclotomic_cosets(n: usize) -> Result<CosetPartition> {
    match n {
        0 => Err(Error::ZeroLength),
        n if n % 2 == 0 => Err(Error::EvenLength(n)),
        n => Ok(CosetPartition::new(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn coset_examples() {
        let c7 = cyclotomic_cosets(7).unwrap();
        assert_eq!(c7.cosets(), &[vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        let c3 = cyclotomic_cosets(3).unwrap();
        assert_eq!(c3.cosets(), &[vec![0], vec![1, 2]]);
        assert!(cyclotomic_cosets(8).is_err());
    }

    #[test]
    fn coset_sizes_divide_order_of_two() {
        for n in (1..200).step_by(2) {
            let m = order_of_two(n);
            let part = CosetPartition::new(n);
            let total: usize = part.cosets().iter().map(Vec::len).sum();
            assert_eq!(total, n);
            for c in part.cosets() {
                assert_eq!(m % c.len(), 0, "n = {n}");
                for &e in c {
                    assert!(c.contains(&(2 * e % n)));
                }
            }
        }
    }

    fn random_divisor() -> impl Strategy<Value = (usize, u32)> {
        prop::sample::select(vec![7usize, 9, 15, 21, 63]).prop_flat_map(|n| (Just(n), any::<u32>()))
    }

    proptest! {
        #[test]
        fn divisor_root_sets_are_complementary((n, mask) in random_divisor()) {
            let ctx = FieldContext::new(n).unwrap();
            let factors = ctx.irreducible_factors();
            let g = factors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> (i % 32) & 1 == 1)
                .fold(PolyF2::one(), |a, (_, f)| &a * f);
            let modulus = PolyF2::cyclic_modulus(n);
            let (h, r) = modulus.divmod(&g).unwrap();
            prop_assert!(r.is_zero());
            prop_assert!(g.mul_mod(&h, n).is_zero());
            prop_assert_eq!(g.degree().unwrap() + h.degree().unwrap(), n);

            let rg = ctx.root_exponents(&g).unwrap();
            let rh = ctx.root_exponents(&h).unwrap();
            prop_assert_eq!(rg.len(), g.degree().unwrap());
            prop_assert_eq!(rh.len(), h.degree().unwrap());
            let mut all: Vec<usize> = rg.iter().chain(&rh).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        }
    }
}
