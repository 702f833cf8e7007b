use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::galois::FieldContext;
use crate::{BitVector, GF2Matrix, PolyF2, Result};

/// Default limit on the number of codewords visited by [`min_distance_exact`].
pub const DEFAULT_EXACT_BUDGET: u128 = 1 << 26;

/// Longest run of consecutive root exponents of a cyclic code's generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BchRun {
    /// First exponent of the run.
    pub start: usize,
    /// Designed distance: run length + 1.
    pub delta: usize,
}

/// Longest cyclic run `b, b+1, ..., b+delta-2 (mod N)` inside the root set of
/// `g`. Ties go to the smallest `b`. `g = 1` gives `delta = 1`.
pub fn bch_designed_distance(g: &PolyF2, ctx: &FieldContext) -> Result<BchRun> {
    let n = ctx.n();
    let roots = ctx.root_exponents(g)?;
    let mut is_root = vec![false; n];
    for &e in &roots {
        is_root[e] = true;
    }
    if roots.is_empty() {
        return Ok(BchRun { start: 0, delta: 1 });
    }
    if roots.len() == n {
        return Ok(BchRun {
            start: 0,
            delta: n + 1,
        });
    }
    let mut best = BchRun { start: 0, delta: 1 };
    for b in 0..n {
        if !is_root[b] || is_root[(b + n - 1) % n] {
            continue;
        }
        let len = (0..n).take_while(|&j| is_root[(b + j) % n]).count();
        if len + 1 > best.delta {
            best = BchRun {
                start: b,
                delta: len + 1,
            };
        }
    }
    Ok(best)
}

/// Outcome of an exhaustive distance computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceVerdict {
    Found {
        distance: usize,
        witness: BitVector,
    },
    /// The generator has no rows, so the code has no nonzero codeword.
    EmptyCode,
    BudgetExceeded {
        needed: u128,
        budget: u128,
    },
}

impl DistanceVerdict {
    pub fn distance(&self) -> Option<usize> {
        match self {
            DistanceVerdict::Found { distance, .. } => Some(*distance),
            _ => None,
        }
    }
}

fn weight(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Minimum weight over all `2^dim - 1` nonzero combinations of the rows of a
/// full-row-rank generator, by Gray-code enumeration. The message space is
/// split on its top bits and the parts are scanned in parallel; the result
/// does not depend on the split.
pub fn min_distance_exact(gen: &GF2Matrix, budget: u128) -> DistanceVerdict {
    let dim = gen.nrows();
    if dim == 0 {
        return DistanceVerdict::EmptyCode;
    }
    let needed = if dim >= 128 { u128::MAX } else { 1u128 << dim };
    if needed > budget {
        return DistanceVerdict::BudgetExceeded { needed, budget };
    }
    let rows: Vec<&[u64]> = gen.rows().iter().map(|r| r.words()).collect();
    let nwords = rows[0].len();
    let split = dim.min(8);
    let low = dim - split;

    let best = (0u64..1 << split)
        .into_par_iter()
        .map(|prefix| {
            let mut cur = vec![0u64; nwords];
            for (i, row) in rows[low..].iter().enumerate() {
                if prefix >> i & 1 == 1 {
                    xor_into(&mut cur, row);
                }
            }
            let mut best: Option<(usize, u64)> = None;
            let mut consider = |cur: &[u64], gray: u64| {
                let w = weight(cur);
                if w > 0 && best.is_none_or(|(bw, _)| w < bw) {
                    best = Some((w, gray));
                }
            };
            consider(&cur, 0);
            for i in 1u64..1 << low {
                let bit = i.trailing_zeros() as usize;
                xor_into(&mut cur, rows[bit]);
                consider(&cur, i ^ (i >> 1));
            }
            best.map(|(w, gray)| (w, prefix, gray))
        })
        .flatten()
        .min_by_key(|&(w, prefix, gray)| (w, prefix, gray))
        .expect("full-rank generator has a nonzero codeword");

    let (distance, prefix, gray) = best;
    let message = (0..dim).filter(|&i| {
        if i < low {
            gray >> i & 1 == 1
        } else {
            prefix >> (i - low) & 1 == 1
        }
    });
    let witness = gen.vecmat(&BitVector::from_support(dim, message));
    DistanceVerdict::Found { distance, witness }
}

/// Lightest codeword found by [`min_distance_upper`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperBound {
    pub weight: usize,
    pub witness: BitVector,
}

/// Stochastic upper bound on the minimum distance. Candidates:
///
/// * every generator row;
/// * when `cyclic = Some((gen_poly, N))`: every cyclic shift of the generator
///   polynomial and every product `gen_poly * (z^i + z^j)`;
/// * `trials` random information sets: the rows of the systematic form after
///   a random column permutation, and all pairwise sums of those rows.
///
/// Deterministic given `seed`. Returns `None` for an empty generator.
pub fn min_distance_upper(
    gen: &GF2Matrix,
    cyclic: Option<(&PolyF2, usize)>,
    trials: usize,
    seed: u64,
) -> Option<UpperBound> {
    fn offer(best: &mut Option<UpperBound>, v: &BitVector) {
        let w = v.weight();
        if w > 0 && best.as_ref().is_none_or(|b| w < b.weight) {
            *best = Some(UpperBound {
                weight: w,
                witness: v.clone(),
            });
        }
    }
    let mut best: Option<UpperBound> = None;
    for row in gen.rows() {
        offer(&mut best, row);
    }
    if let Some((g, n)) = cyclic {
        if !g.is_zero() {
            for i in 0..n {
                offer(
                    &mut best,
                    &g.mul_mod(&PolyF2::monomial(i), n).to_bitvector(n),
                );
            }
            for i in 0..n {
                for j in i + 1..n {
                    let lambda = PolyF2::from_support([i, j]);
                    offer(&mut best, &g.mul_mod(&lambda, n).to_bitvector(n));
                }
            }
        }
    }

    let ncols = gen.ncols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..ncols).collect();
    for _ in 0..trials {
        perm.shuffle(&mut rng);
        // Column c of the permuted matrix is column perm[c] of gen.
        let permuted: Vec<BitVector> = gen
            .rows()
            .iter()
            .map(|r| BitVector::from_support(ncols, (0..ncols).filter(|&c| r.get(perm[c]))))
            .collect();
        let ech = GF2Matrix::from_rows(ncols, permuted)
            .expect("same width")
            .rref();
        let sys: Vec<&BitVector> = ech.reduced.rows()[..ech.rank()].iter().collect();
        let unpermute =
            |v: &BitVector| BitVector::from_support(ncols, v.iter_ones().map(|c| perm[c]));
        let current = best.as_ref().map_or(usize::MAX, |b| b.weight);
        let mut local: Option<BitVector> = None;
        let mut local_w = current;
        for (i, a) in sys.iter().enumerate() {
            let w = a.weight();
            if w > 0 && w < local_w {
                local_w = w;
                local = Some((*a).clone());
            }
            for b in &sys[i + 1..] {
                let s = a.xor(b);
                let w = s.weight();
                if w > 0 && w < local_w {
                    local_w = w;
                    local = Some(s);
                }
            }
        }
        if let Some(v) = local {
            offer(&mut best, &unpermute(&v));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force minimum weight over all nonzero messages.
    fn brute(gen: &GF2Matrix) -> usize {
        let dim = gen.nrows();
        (1u32..1 << dim)
            .map(|m| {
                gen.vecmat(&BitVector::from_support(
                    dim,
                    (0..dim).filter(|i| m >> i & 1 == 1),
                ))
                .weight()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn repetition_code() {
        let gen = GF2Matrix::from_dense(&[[1u8, 1, 1]]);
        assert_eq!(
            min_distance_exact(&gen, DEFAULT_EXACT_BUDGET).distance(),
            Some(3)
        );
        assert_eq!(min_distance_upper(&gen, None, 4, 1).unwrap().weight, 3);
    }

    #[test]
    fn hamming_code_bch() {
        let ctx = FieldContext::new(7).unwrap();
        let factors = ctx.irreducible_factors();
        // The factor whose roots contain 1 generates a [7,4] Hamming code.
        let g = factors
            .iter()
            .find(|f| ctx.root_exponents(f).unwrap().contains(&1))
            .unwrap();
        assert_eq!(ctx.root_exponents(g).unwrap(), vec![1, 2, 4]);
        assert_eq!(
            bch_designed_distance(g, &ctx).unwrap(),
            BchRun { start: 1, delta: 3 }
        );
        let gen = GF2Matrix::from_rows(
            7,
            (0..4)
                .map(|i| g.mul_mod(&PolyF2::monomial(i), 7).to_bitvector(7))
                .collect(),
        )
        .unwrap();
        assert_eq!(brute(&gen), 3);
        assert_eq!(
            min_distance_exact(&gen, DEFAULT_EXACT_BUDGET).distance(),
            Some(3)
        );
    }

    #[test]
    fn parity_code_bch() {
        let ctx = FieldContext::new(9).unwrap();
        let run = bch_designed_distance(&PolyF2::from_bits(0b11), &ctx).unwrap();
        assert_eq!(run, BchRun { start: 0, delta: 2 });
        assert_eq!(
            bch_designed_distance(&PolyF2::one(), &ctx).unwrap().delta,
            1
        );
    }

    #[test]
    fn budget_is_respected() {
        let gen = GF2Matrix::identity(30);
        assert_eq!(
            min_distance_exact(&gen, DEFAULT_EXACT_BUDGET),
            DistanceVerdict::BudgetExceeded {
                needed: 1 << 30,
                budget: DEFAULT_EXACT_BUDGET
            }
        );
        assert_eq!(
            min_distance_exact(&GF2Matrix::zeros(0, 5), 16),
            DistanceVerdict::EmptyCode
        );
    }

    #[test]
    fn witness_is_a_codeword_of_that_weight() {
        let gen =
            GF2Matrix::from_dense(&[[1u8, 1, 0, 1, 1, 0], [0, 1, 1, 1, 0, 1], [1, 0, 1, 1, 1, 1]]);
        let DistanceVerdict::Found { distance, witness } = min_distance_exact(&gen, 1 << 10) else {
            panic!("expected a distance");
        };
        assert_eq!(distance, brute(&gen));
        assert_eq!(witness.weight(), distance);
        assert!(gen.in_rowspace(&witness));
    }
}
