//! Dense bit-packed linear algebra over GF(2).
//!
//! Syndromes and error patterns are plain [`BitVector`]s; `M x` is
//! [`GF2Matrix::matvec`] and `u M` is [`GF2Matrix::vecmat`], so no transposes
//! of vectors are ever materialised.

mod bitvec;
mod matrix;

pub use bitvec::BitVector;
pub use matrix::{Echelon, GF2Matrix, RowSpace};

pub(crate) use matrix::eliminate;

/// See [`GF2Matrix::circulant`].
pub fn circulant(p: &crate::PolyF2, n: usize) -> GF2Matrix {
    GF2Matrix::circulant(p, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PolyF2;
    use proptest::prelude::*;

    /// Every vector in the row span, by enumerating all 2^r combinations.
    fn span(m: &GF2Matrix) -> Vec<BitVector> {
        let r = m.nrows();
        (0u32..1 << r)
            .map(|mask| {
                let u = BitVector::from_support(r, (0..r).filter(|i| mask >> i & 1 == 1));
                m.vecmat(&u)
            })
            .collect()
    }

    fn random_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = GF2Matrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(0u8..2, c), r)
                .prop_map(|rows| GF2Matrix::from_dense(&rows))
        })
    }

    #[test]
    fn circulant_examples() {
        assert_eq!(circulant(&PolyF2::one(), 5), GF2Matrix::identity(5));
        let shift = circulant(&PolyF2::monomial(1), 3);
        assert_eq!(shift.dump(), "010\n001\n100\n");
    }

    #[test]
    fn hconcat_examples() {
        let i2 = GF2Matrix::identity(2);
        let m = i2.hconcat(&i2).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.ncols(), 4);
        assert!(i2.hconcat(&GF2Matrix::identity(3)).is_err());

        let a = circulant(&PolyF2::from_support([0, 3, 9]), 21);
        let hx = a.hconcat(&a).unwrap();
        assert_eq!((hx.nrows(), hx.ncols()), (21, 42));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(GF2Matrix::identity(9).rank(), 9);
        assert_eq!(GF2Matrix::zeros(4, 7).rank(), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(GF2Matrix::identity(4).left_nullspace_basis().nrows(), 0);
        let m = GF2Matrix::from_dense(&[[1u8, 0, 1], [0, 1, 1], [1, 0, 1]]);
        let r = m.left_nullspace_basis();
        assert_eq!(r.nrows(), 1);
        assert_eq!(r.row(0).to_string(), "101");
        assert!(r.mul(&m).unwrap().is_zero());
    }

    #[test]
    fn solve_examples() {
        let s = BitVector::from_u8s(&[1, 0, 1, 1]);
        assert_eq!(GF2Matrix::identity(4).solve(&s), Some(s.clone()));
        let m = GF2Matrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]]);
        assert_eq!(m.solve(&BitVector::zeros(2)), Some(BitVector::zeros(3)));
        let one_by_two = GF2Matrix::from_dense(&[[1u8, 1]]);
        assert_eq!(
            one_by_two
                .solve(&BitVector::from_u8s(&[1]))
                .unwrap()
                .to_string(),
            "10"
        );
        let dup = GF2Matrix::from_dense(&[[1u8, 1], [1, 1]]);
        assert_eq!(dup.solve(&BitVector::from_u8s(&[1, 0])), None);
    }

    #[test]
    fn rowspace_examples() {
        // Fixed 4x6 matrix; membership checked against the enumerated span.
        let m = GF2Matrix::from_dense(&[
            [1u8, 0, 1, 1, 0, 0],
            [0, 1, 1, 0, 1, 0],
            [1, 1, 0, 1, 1, 0],
            [0, 0, 0, 1, 1, 1],
        ]);
        let sp = span(&m);
        assert!(m.in_rowspace(&BitVector::zeros(6)));
        assert!(m.in_rowspace(m.row(2)));
        let mut v = m.row(0).xor(m.row(1));
        assert!(sp.contains(&v));
        // Column 2 is outside the rank profile's pivots (0, 1, 3); any unit
        // vector e_c that changes membership is rejected by the oracle too.
        v.flip(5);
        assert_eq!(m.in_rowspace(&v), sp.contains(&v));
        assert!(!m.in_rowspace(&v));
    }

    #[test]
    fn dump_round_trip() {
        let m = GF2Matrix::from_dense(&[[1u8, 0, 1], [0, 1, 1]]);
        assert_eq!(GF2Matrix::parse_dump(&m.dump()).unwrap(), m);
        assert!(GF2Matrix::parse_dump("10\n1").is_err());
        assert!(GF2Matrix::parse_dump("1x").is_err());
    }

    proptest! {
        #[test]
        fn nullspace_annihilates(m in random_matrix(64, 128)) {
            let r = m.left_nullspace_basis();
            let rank = m.rank();
            prop_assert_eq!(r.nrows() + rank, m.nrows());
            prop_assert_eq!(r.rank(), r.nrows());
            prop_assert!(r.mul(&m).unwrap().is_zero());
        }

        #[test]
        fn solve_reproduces_target(m in random_matrix(20, 40), seed in any::<u64>()) {
            let x0 = BitVector::from_support(m.ncols(), (0..m.ncols()).filter(|i| seed >> (i % 64) & 1 == 1));
            let s = m.matvec(&x0);
            let x = m.solve(&s).expect("target is in the image");
            prop_assert_eq!(m.matvec(&x), s);
        }

        #[test]
        fn rowspace_matches_enumeration(m in random_matrix(12, 10), bits in any::<u16>()) {
            let v = BitVector::from_support(m.ncols(), (0..m.ncols()).filter(|i| bits >> i & 1 == 1));
            prop_assert_eq!(m.in_rowspace(&v), span(&m).contains(&v));
        }

        #[test]
        fn matvec_is_linear(m in random_matrix(30, 70), a in any::<u64>(), b in any::<u64>()) {
            let n = m.ncols();
            let x = BitVector::from_support(n, (0..n).filter(|i| a >> (i % 64) & 1 == 1));
            let y = BitVector::from_support(n, (0..n).filter(|i| b >> (i % 64) & 1 == 1));
            prop_assert_eq!(m.matvec(&x.xor(&y)), m.matvec(&x).xor(&m.matvec(&y)));
            prop_assert!(m.matvec(&BitVector::zeros(n)).is_zero());
        }

        #[test]
        fn circulant_rank_from_gcd(bits in 1u64..(1 << 15), n in 1usize..=15) {
            let p = PolyF2::from_bits(bits).reduce_cyclic(n);
            prop_assume!(!p.is_zero());
            let g = p.gcd(&PolyF2::cyclic_modulus(n)).unwrap();
            prop_assert_eq!(circulant(&p, n).rank(), n - g.degree().unwrap());
        }

        #[test]
        fn circulant_is_ring_homomorphism(a in any::<u16>(), b in any::<u16>(), n in 1usize..=16) {
            let p = PolyF2::from_bits(a as u64).reduce_cyclic(n);
            let q = PolyF2::from_bits(b as u64).reduce_cyclic(n);
            let cp = circulant(&p, n);
            let cq = circulant(&q, n);
            let sum = circulant(&(&p + &q), n);
            let expected_sum = GF2Matrix::from_rows(
                n,
                cp.rows().iter().zip(cq.rows()).map(|(x, y)| x.xor(y)).collect(),
            ).unwrap();
            prop_assert_eq!(sum, expected_sum);
            prop_assert_eq!(circulant(&p.mul_mod(&q, n), n), cp.mul(&cq).unwrap());
        }
    }
}
