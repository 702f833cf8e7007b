use std::collections::HashMap;

use itertools::Itertools;

use crate::{BitVector, Error, GF2Matrix, Result};

/// Largest table [`BdLookup::build`] will create.
pub const LOOKUP_BUDGET: u128 = 10_000_000;

/// Strict bounded-distance decoder: maps each syndrome of an error of weight
/// at most `radius` to the lightest such error. Among equally light errors the
/// lexicographically first support wins. Nothing beyond `radius` is stored.
#[derive(Clone, Debug)]
pub struct BdLookup {
    ncols: usize,
    radius: usize,
    table: HashMap<BitVector, BitVector>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl BdLookup {
    pub fn build(h: &GF2Matrix, radius: usize) -> Result<Self> {
        let n = h.ncols();
        let needed: u128 = (0..=radius.min(n)).map(|i| binomial(n, i)).sum();
        if needed > LOOKUP_BUDGET {
            return Err(Error::BudgetExceeded {
                needed,
                budget: LOOKUP_BUDGET,
            });
        }
        let cols = h.columns();
        let mut table = HashMap::with_capacity(needed as usize);
        for w in 0..=radius.min(n) {
            for support in (0..n).combinations(w) {
                let mut s = BitVector::zeros(h.nrows());
                for &c in &support {
                    s.xor_assign(&cols[c]);
                }
                table
                    .entry(s)
                    .or_insert_with(|| BitVector::from_support(n, support.iter().copied()));
            }
        }
        Ok(BdLookup {
            ncols: n,
            radius,
            table,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Number of distinct syndromes stored.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Stored error for `syndrome`; `None` is a detected, uncorrected failure.
    pub fn decode(&self, syndrome: &BitVector) -> Option<&BitVector> {
        self.table.get(syndrome)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_code_single_flips() {
        // Checks of the [3,1] repetition code.
        let h = GF2Matrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]]);
        let lut = BdLookup::build(&h, 1).unwrap();
        assert_eq!(lut.len(), 4);
        for i in 0..3 {
            let e = BitVector::unit(3, i);
            assert_eq!(lut.decode(&h.matvec(&e)), Some(&e));
        }
    }

    #[test]
    fn miss_outside_table() {
        let h = GF2Matrix::identity(4);
        let lut = BdLookup::build(&h, 1).unwrap();
        assert_eq!(lut.len(), 5);
        assert_eq!(lut.decode(&BitVector::from_u8s(&[1, 1, 0, 0])), None);
    }

    #[test]
    fn collisions_resolve_lexicographically() {
        let h = GF2Matrix::from_dense(&[[1u8, 1, 1]]);
        let lut = BdLookup::build(&h, 2).unwrap();
        assert_eq!(
            lut.decode(&BitVector::from_u8s(&[1])).unwrap().to_string(),
            "100"
        );
    }

    #[test]
    fn budget() {
        let h = GF2Matrix::zeros(1, 400);
        assert!(matches!(
            BdLookup::build(&h, 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
