use coprime_bb::decode::{
    bp_decode, majority_vote, osd_decode, soft_cost, BdLookup, BpConfig, Decoder, DecoderId,
    DecoderOptions, OsdOrder, TannerGraph, TieRule,
};
use coprime_bb::{BbCode, BitVector, GF2Matrix, PolyF2, Sector};
use proptest::prelude::*;

fn hamming_checks() -> GF2Matrix {
    // All seven shifts of the check polynomial of the [7,4] Hamming code.
    GF2Matrix::circulant(&PolyF2::from_support([0, 2, 3, 4]), 7)
}

/// Cheapest solution of `H e = s` by enumeration over all of `F_2^n`.
fn brute_force_ml(h: &GF2Matrix, s: &BitVector, llr: &[f64]) -> Option<f64> {
    let n = h.ncols();
    (0u32..1 << n)
        .map(|m| BitVector::from_support(n, (0..n).filter(|i| m >> i & 1 == 1)))
        .filter(|e| &h.matvec(e) == s)
        .map(|e| soft_cost(&e, llr))
        .min_by(|a, b| a.partial_cmp(b).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = GF2Matrix> {
    proptest::collection::vec(proptest::collection::vec(0u8..2, cols), rows)
        .prop_map(|rows| GF2Matrix::from_dense(&rows))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn osd_solutions_are_consistent_and_osd2_never_worse(
        h in matrix(5, 9),
        e in proptest::collection::vec(any::<bool>(), 9),
        llr in proptest::collection::vec(-4.0f64..6.0, 9),
    ) {
        let s = h.matvec(&BitVector::from_bools(&e));
        let e0 = osd_decode(&h, &s, &llr, OsdOrder::Zero).unwrap();
        let e2 = osd_decode(&h, &s, &llr, OsdOrder::Two { window: 9 }).unwrap();
        prop_assert_eq!(&h.matvec(&e0), &s);
        prop_assert_eq!(&h.matvec(&e2), &s);
        prop_assert!(soft_cost(&e2, &llr) <= soft_cost(&e0, &llr) + 1e-12);
        let best = brute_force_ml(&h, &s, &llr).unwrap();
        prop_assert!(soft_cost(&e2, &llr) >= best - 1e-12);
    }

    #[test]
    fn osd2_is_exact_with_two_free_positions(
        h in matrix(6, 8),
        e in proptest::collection::vec(any::<bool>(), 8),
        llr in proptest::collection::vec(-4.0f64..6.0, 8),
    ) {
        prop_assume!(h.rank() == 6);
        let s = h.matvec(&BitVector::from_bools(&e));
        let e2 = osd_decode(&h, &s, &llr, OsdOrder::two()).unwrap();
        let best = brute_force_ml(&h, &s, &llr).unwrap();
        prop_assert!((soft_cost(&e2, &llr) - best).abs() < 1e-9);
    }

    #[test]
    fn converged_bp_satisfies_the_syndrome(
        h in matrix(6, 12),
        e in proptest::collection::vec(proptest::bool::weighted(0.15), 12),
    ) {
        let s = h.matvec(&BitVector::from_bools(&e));
        let r = bp_decode(&TannerGraph::new(&h), &s, &BpConfig::new(0.05).unwrap());
        if r.converged {
            prop_assert_eq!(h.matvec(&r.hard), s);
        }
        prop_assert_eq!(r.llr.len(), 12);
    }

    #[test]
    fn majority_matches_counting(
        rounds in (1usize..8).prop_flat_map(|r| proptest::collection::vec(proptest::collection::vec(any::<bool>(), 10), r))
    ) {
        let rs: Vec<BitVector> = rounds.iter().map(|r| BitVector::from_bools(r)).collect();
        let v = majority_vote(&rs, TieRule::LastRound);
        for i in 0..10 {
            let ones = rounds.iter().filter(|r| r[i]).count();
            let zeros = rounds.len() - ones;
            let expect = if ones == zeros { rounds.last().unwrap()[i] } else { ones > zeros };
            prop_assert_eq!(v.get(i), expect);
        }
    }
}

#[test]
fn osd_rejects_infeasible_syndromes() {
    let h = GF2Matrix::from_dense(&[[1u8, 1, 0], [1, 1, 0]]);
    let s = BitVector::from_support(2, [0]);
    assert!(osd_decode(&h, &s, &[1.0; 3], OsdOrder::Zero).is_err());
}

#[test]
fn bp_corrects_every_single_flip_of_the_hamming_code() {
    let h = hamming_checks();
    let graph = TannerGraph::new(&h);
    let cfg = BpConfig::new(0.01).unwrap();
    assert!(bp_decode(&graph, &BitVector::zeros(7), &cfg).hard.is_zero());
    for i in 0..7 {
        let e = BitVector::unit(7, i);
        let r = bp_decode(&graph, &h.matvec(&e), &cfg);
        assert!(r.converged, "flip {i}");
        assert_eq!(r.hard, e, "flip {i}");
    }
}

#[test]
fn lookup_is_strictly_bounded() {
    let h = hamming_checks();
    let lut = BdLookup::build(&h, 1).unwrap();
    assert_eq!(lut.len(), 8);
    for i in 0..7 {
        let e = BitVector::unit(7, i);
        assert_eq!(lut.decode(&h.matvec(&e)), Some(&e));
    }
    // A perfect code: every syndrome is covered, but weight-2 errors decode wrongly.
    let e = BitVector::from_support(7, [0, 1]);
    assert_ne!(lut.decode(&h.matvec(&e)), Some(&e));
    // The zero matrix leaves every nonzero error undetected, hence no entry
    // other than the empty syndrome.
    let lut = BdLookup::build(&GF2Matrix::zeros(2, 4), 2).unwrap();
    assert_eq!(lut.len(), 1);
}

#[test]
fn lookup_respects_budget() {
    let h = GF2Matrix::zeros(1, 200);
    assert!(BdLookup::build(&h, 4).is_err());
}

#[test]
fn syndrome_code_decoders_correct_single_flips() {
    // Single flips of a measured syndrome of the length-21 code are within t_S = 1.
    let code = BbCode::from_exponents(21, &[0, 3, 9], &[0, 3, 9]).unwrap();
    let checks = code.redundant_syndrome_check_matrix(Sector::X);
    let opts = DecoderOptions::default();
    let prior = vec![(0.99f64 / 0.01).ln(); 21];
    for id in [DecoderId::BdLookup, DecoderId::Bp, DecoderId::BpOsd2] {
        let dec = Decoder::new(id, &checks, opts).unwrap();
        let e_data = BitVector::from_support(42, [4, 30]);
        let s = code.syndrome(Sector::X, &e_data);
        for i in 0..21 {
            let nu = BitVector::unit(21, i);
            let out = dec.decode(&checks.matvec(&s.xor(&nu)), &prior);
            assert!(out.converged, "{id} flip {i}");
            assert_eq!(out.error, nu, "{id} flip {i}");
        }
    }
}

#[test]
fn decoder_names_round_trip() {
    for id in DecoderId::ALL {
        assert_eq!(id.as_str().parse::<DecoderId>().unwrap(), id);
    }
    assert!("osd3".parse::<DecoderId>().is_err());
}
