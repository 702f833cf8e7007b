use std::cmp::Ordering;

use crate::gf2la::eliminate;
use crate::{BitVector, Error, GF2Matrix, Result};

/// OSD search depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OsdOrder {
    Zero,
    /// OSD-0, then every single free-position flip, then every pair of flips
    /// among the first `window` free positions.
    Two {
        window: usize,
    },
}

impl OsdOrder {
    pub const DEFAULT_WINDOW: usize = 12;

    pub fn two() -> Self {
        OsdOrder::Two {
            window: Self::DEFAULT_WINDOW,
        }
    }
}

/// `sum_{i : e_i = 1} llr_i`, the negative log-likelihood of `e` up to a
/// constant.
pub fn soft_cost(e: &BitVector, llr: &[f64]) -> f64 {
    e.iter_ones().map(|i| llr[i]).sum()
}

/// Ordered-statistics post-processing. Returns some `e` with `H e = s`.
///
/// Columns are ranked by `llr` ascending (most likely flipped first, ties by
/// index) and pivots are taken greedily in that order. Free positions keep
/// their hard decision (`llr < 0`); pivot bits are solved. Order two then
/// tries the flip candidates described on [`OsdOrder::Two`] and keeps the
/// first candidate of minimal [`soft_cost`].
pub fn osd_decode(
    h: &GF2Matrix,
    syndrome: &BitVector,
    llr: &[f64],
    order: OsdOrder,
) -> Result<BitVector> {
    let n = h.ncols();
    assert_eq!(llr.len(), n, "llr length does not match column count");
    assert_eq!(
        syndrome.len(),
        h.nrows(),
        "syndrome length does not match row count"
    );

    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&a, &b| {
        llr[a]
            .partial_cmp(&llr[b])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut rows: Vec<BitVector> = h
        .rows()
        .iter()
        .map(|r| BitVector::from_support(n, (0..n).filter(|&c| r.get(perm[c]))))
        .collect();
    let mut rhs = syndrome.clone();
    let pivots = eliminate(&mut rows, n, &mut rhs);
    let rank = pivots.len();
    if rhs.next_one(rank).is_some() {
        return Err(Error::InfeasibleSyndrome);
    }
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    // Free positions in permuted order.
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let col = |c: usize| BitVector::from_support(rank, (0..rank).filter(|&r| rows[r].get(c)));

    let mut base_free = BitVector::zeros(free.len());
    let mut base_piv = rhs.slice(0, rank);
    for (j, &c) in free.iter().enumerate() {
        if llr[perm[c]] < 0.0 {
            base_free.set(j, true);
            base_piv.xor_assign(&col(c));
        }
    }

    let assemble = |fr: &BitVector, pv: &BitVector| {
        let piv_bits = pv.iter_ones().map(|r| perm[pivots[r]]);
        let free_bits = fr.iter_ones().map(|j| perm[free[j]]);
        BitVector::from_support(n, piv_bits.chain(free_bits))
    };
    let cost = |fr: &BitVector, pv: &BitVector| -> f64 {
        pv.iter_ones().map(|r| llr[perm[pivots[r]]]).sum::<f64>()
            + fr.iter_ones().map(|j| llr[perm[free[j]]]).sum::<f64>()
    };

    let OsdOrder::Two { window } = order else {
        return Ok(assemble(&base_free, &base_piv));
    };

    let cols: Vec<BitVector> = free.iter().map(|&c| col(c)).collect();
    let mut best = (
        cost(&base_free, &base_piv),
        base_free.clone(),
        base_piv.clone(),
    );
    let mut consider = |flips: &[usize]| {
        let mut fr = base_free.clone();
        let mut pv = base_piv.clone();
        for &j in flips {
            fr.flip(j);
            pv.xor_assign(&cols[j]);
        }
        let c = cost(&fr, &pv);
        if c < best.0 {
            best = (c, fr, pv);
        }
    };
    for j in 0..free.len() {
        consider(&[j]);
    }
    let w = window.min(free.len());
    for a in 0..w {
        for b in a + 1..w {
            consider(&[a, b]);
        }
    }
    Ok(assemble(&best.1, &best.2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming() -> GF2Matrix {
        GF2Matrix::from_dense(&[
            [1u8, 0, 1, 0, 1, 0, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [0, 0, 0, 1, 1, 1, 1],
        ])
    }

    #[test]
    fn confident_llr_recovers_weight_one_error() {
        let h = hamming();
        for i in 0..7 {
            let mut llr = vec![8.0; 7];
            llr[i] = -8.0;
            let e = BitVector::unit(7, i);
            for order in [OsdOrder::Zero, OsdOrder::two()] {
                assert_eq!(osd_decode(&h, &h.matvec(&e), &llr, order).unwrap(), e);
            }
        }
    }

    #[test]
    fn zero_syndrome_gives_zero() {
        let h = hamming();
        let llr = vec![2.0; 7];
        assert!(osd_decode(&h, &BitVector::zeros(3), &llr, OsdOrder::two())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn infeasible_syndrome_is_rejected() {
        let h = GF2Matrix::from_dense(&[[1u8, 1], [1, 1]]);
        let r = osd_decode(
            &h,
            &BitVector::from_u8s(&[1, 0]),
            &[1.0, 1.0],
            OsdOrder::Zero,
        );
        assert_eq!(r, Err(Error::InfeasibleSyndrome));
    }
}
