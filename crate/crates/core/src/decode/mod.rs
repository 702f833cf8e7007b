//! Decoders: sum-product BP, OSD post-processing, strict bounded-distance
//! lookup and temporal majority vote.
//!
//! Every decoder is deterministic and stateless once built, so a single
//! instance can be shared by concurrent trials.

mod bp;
mod lookup;
mod osd;

use std::fmt;
use std::str::FromStr;

pub use bp::{bp_decode, bp_decode_llr, llr_of, BpConfig, BpResult, TannerGraph};
pub use lookup::{BdLookup, LOOKUP_BUDGET};
pub use osd::{osd_decode, soft_cost, OsdOrder};

use crate::{BitVector, Error, GF2Matrix, Result};

/// How exact ties are broken in [`majority_vote`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieRule {
    /// A tie takes the value of the most recent round.
    #[default]
    LastRound,
}

/// Number of rounds in which each position reads 1.
pub fn ones_count(rounds: &[BitVector]) -> Vec<u32> {
    let m = rounds.first().map_or(0, BitVector::len);
    let mut counts = vec![0u32; m];
    for r in rounds {
        assert_eq!(r.len(), m, "rounds differ in length");
        for i in r.iter_ones() {
            counts[i] += 1;
        }
    }
    counts
}

/// Per-position majority over `rounds`.
pub fn majority_vote(rounds: &[BitVector], tie: TieRule) -> BitVector {
    assert!(!rounds.is_empty(), "majority vote needs at least one round");
    let r = rounds.len() as u32;
    let last = rounds.last().expect("nonempty");
    let counts = ones_count(rounds);
    let bits: Vec<bool> = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| match (2 * c).cmp(&r) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => match tie {
                TieRule::LastRound => last.get(i),
            },
        })
        .collect();
    BitVector::from_bools(&bits)
}

/// Decoder names accepted on the command line and in experiment specs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderId {
    Bp,
    BpOsd0,
    BpOsd2,
    BdLookup,
    /// No spatial decoding: the (voted) syndrome is used as is.
    Majority,
}

impl DecoderId {
    pub const ALL: [DecoderId; 5] = [
        DecoderId::Bp,
        DecoderId::BpOsd0,
        DecoderId::BpOsd2,
        DecoderId::BdLookup,
        DecoderId::Majority,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DecoderId::Bp => "bp",
            DecoderId::BpOsd0 => "bp-osd0",
            DecoderId::BpOsd2 => "bp-osd2",
            DecoderId::BdLookup => "bd-lookup",
            DecoderId::Majority => "majority",
        }
    }
}

impl fmt::Display for DecoderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecoderId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DecoderId::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown decoder {s:?}")))
    }
}

/// Settings shared by the decoder variants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoderOptions {
    pub max_iter: usize,
    pub clip: f64,
    pub osd_window: usize,
    /// Radius of the lookup table for [`DecoderId::BdLookup`].
    pub lookup_radius: usize,
}

impl Default for DecoderOptions {
    fn default() -> Self {
        DecoderOptions {
            max_iter: BpConfig::DEFAULT_MAX_ITER,
            clip: BpConfig::DEFAULT_CLIP,
            osd_window: OsdOrder::DEFAULT_WINDOW,
            lookup_radius: 1,
        }
    }
}

/// Result of [`Decoder::decode`].
#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutput {
    pub error: BitVector,
    /// `H error = syndrome`.
    pub converged: bool,
    pub used_osd: bool,
    /// Posterior LLRs when BP ran.
    pub llr: Option<Vec<f64>>,
}

#[derive(Clone, Debug)]
enum Kind {
    Bp,
    BpOsd(OsdOrder),
    Lookup(BdLookup),
    Identity,
}

/// A decoder bound to one parity-check matrix.
#[derive(Clone, Debug)]
pub struct Decoder {
    id: DecoderId,
    graph: TannerGraph,
    opts: DecoderOptions,
    kind: Kind,
}

impl Decoder {
    pub fn new(id: DecoderId, h: &GF2Matrix, opts: DecoderOptions) -> Result<Self> {
        let kind = match id {
            DecoderId::Bp => Kind::Bp,
            DecoderId::BpOsd0 => Kind::BpOsd(OsdOrder::Zero),
            DecoderId::BpOsd2 => Kind::BpOsd(OsdOrder::Two {
                window: opts.osd_window,
            }),
            DecoderId::BdLookup => Kind::Lookup(BdLookup::build(h, opts.lookup_radius)?),
            DecoderId::Majority => Kind::Identity,
        };
        Ok(Decoder {
            id,
            graph: TannerGraph::new(h),
            opts,
            kind,
        })
    }

    pub fn id(&self) -> DecoderId {
        self.id
    }

    pub fn matrix(&self) -> &GF2Matrix {
        self.graph.matrix()
    }

    /// Decodes `syndrome` given per-position prior LLRs (ignored by the lookup
    /// and identity decoders).
    pub fn decode(&self, syndrome: &BitVector, prior_llr: &[f64]) -> DecodeOutput {
        let n = self.graph.num_vars();
        match &self.kind {
            Kind::Identity => DecodeOutput {
                error: BitVector::zeros(n),
                converged: syndrome.is_zero(),
                used_osd: false,
                llr: None,
            },
            Kind::Lookup(lut) => match lut.decode(syndrome) {
                Some(e) => DecodeOutput {
                    error: e.clone(),
                    converged: true,
                    used_osd: false,
                    llr: None,
                },
                None => DecodeOutput {
                    error: BitVector::zeros(n),
                    converged: false,
                    used_osd: false,
                    llr: None,
                },
            },
            Kind::Bp | Kind::BpOsd(_) => {
                let cfg = BpConfig {
                    max_iter: self.opts.max_iter,
                    prior: 0.0,
                    clip: self.opts.clip,
                };
                let bp = bp_decode_llr(&self.graph, syndrome, prior_llr, &cfg);
                if bp.converged {
                    return DecodeOutput {
                        error: bp.hard,
                        converged: true,
                        used_osd: false,
                        llr: Some(bp.llr),
                    };
                }
                if let Kind::BpOsd(order) = self.kind {
                    if let Ok(e) = osd_decode(self.graph.matrix(), syndrome, &bp.llr, order) {
                        return DecodeOutput {
                            error: e,
                            converged: true,
                            used_osd: true,
                            llr: Some(bp.llr),
                        };
                    }
                }
                DecodeOutput {
                    error: bp.hard,
                    converged: false,
                    used_osd: false,
                    llr: Some(bp.llr),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn majority_examples() {
        let rounds = [
            BitVector::from_u8s(&[0]),
            BitVector::from_u8s(&[1]),
            BitVector::from_u8s(&[1]),
        ];
        assert_eq!(majority_vote(&rounds, TieRule::LastRound).to_string(), "1");
        let single = BitVector::from_u8s(&[1, 0, 1, 1]);
        assert_eq!(
            majority_vote(std::slice::from_ref(&single), TieRule::LastRound),
            single
        );
        let tie = [BitVector::from_u8s(&[1]), BitVector::from_u8s(&[0])];
        assert_eq!(majority_vote(&tie, TieRule::LastRound).to_string(), "0");
    }

    #[test]
    fn majority_corrects_minority_flips() {
        // Exhaustive over R <= 5, m <= 8: any pattern with at most
        // floor((R-1)/2) flips per position is undone.
        for r in 1..=5usize {
            let t = (r - 1) / 2;
            for m in 1..=8usize {
                for truth_bits in [0u32, 0b1010_1010, 0xff] {
                    let truth =
                        BitVector::from_support(m, (0..m).filter(|i| truth_bits >> i & 1 == 1));
                    // Each position independently picks a flip mask over rounds;
                    // enumerate masks of weight <= t and rotate across positions.
                    let masks: Vec<u32> = (0u32..1 << r)
                        .filter(|x| x.count_ones() as usize <= t)
                        .collect();
                    for shift in 0..masks.len() {
                        let rounds: Vec<BitVector> = (0..r)
                            .map(|round| {
                                let mut v = truth.clone();
                                for pos in 0..m {
                                    if masks[(pos + shift) % masks.len()] >> round & 1 == 1 {
                                        v.flip(pos);
                                    }
                                }
                                v
                            })
                            .collect();
                        assert_eq!(majority_vote(&rounds, TieRule::LastRound), truth);
                    }
                }
            }
        }
    }

    #[test]
    fn decoder_ids_round_trip() {
        for id in DecoderId::ALL {
            assert_eq!(id.as_str().parse::<DecoderId>().unwrap(), id);
        }
        assert!("min-sum".parse::<DecoderId>().is_err());
    }
}
