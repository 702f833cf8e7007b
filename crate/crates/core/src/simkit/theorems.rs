//! Finite, executable checks of the decoding guarantees.

use itertools::Itertools;

use crate::decode::{DecoderId, DecoderOptions};
use crate::gf2la::RowSpace;
use crate::simkit::pipeline::{NoiseConfig, Pipeline, PipelineConfig};
use crate::syndist::SyndromeReport;
use crate::{BbCode, BitVector, Result, Sector};

/// Repeated-round comparison for one `R`:
/// `t_time = floor((R-1)/2) <= t_S <= floor(deg g / 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundCondition {
    pub code: String,
    pub rounds: usize,
    pub t_time: usize,
    pub t_s: usize,
    pub half_deg_g: usize,
    /// `t_time <= t_S`: one round corrects every time-like pattern the
    /// `R`-round majority vote corrects.
    pub matches_baseline: bool,
    /// `t_S <= floor(deg g / 2)`.
    pub within_limit: bool,
}

impl RoundCondition {
    pub fn holds(&self) -> bool {
        self.matches_baseline && self.within_limit
    }

    pub const CSV_HEADER: &'static str = "code,R,t_time,t_S,half_deg_g,holds";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.code,
            self.rounds,
            self.t_time,
            self.t_s,
            self.half_deg_g,
            if self.holds() { "holds" } else { "violated" }
        )
    }
}

/// Evaluates the repeated-round condition with the report's verified `t_S`.
pub fn check_repeated_round_condition(report: &SyndromeReport, rounds: usize) -> RoundCondition {
    let t_time = rounds.saturating_sub(1) / 2;
    let half_deg_g = report.deg_g / 2;
    RoundCondition {
        code: report.name.clone(),
        rounds,
        t_time,
        t_s: report.t_s,
        half_deg_g,
        matches_baseline: t_time <= report.t_s,
        within_limit: report.t_s <= half_deg_g,
    }
}

/// Lightest error of weight `<= max_weight` that is invisible to the sector's
/// checks but is not a stabilizer, if any. Exhaustive over supports.
pub fn lightest_logical(code: &BbCode, sector: Sector, max_weight: usize) -> Option<BitVector> {
    let h = code.check_matrix(sector);
    let stabilizers = RowSpace::new(code.stabilizer_matrix(sector));
    let n = h.ncols();
    let cols = h.columns();
    for w in 1..=max_weight.min(n) {
        for support in (0..n).combinations(w) {
            let mut s = cols[support[0]].clone();
            for &c in &support[1..] {
                s.xor_assign(&cols[c]);
            }
            if s.is_zero() {
                let e = BitVector::from_support(n, support);
                if !stabilizers.contains(&e) {
                    return Some(e);
                }
            }
        }
    }
    None
}

/// Largest `t <= max_t` such that every data error of weight `<= t` is
/// determined up to stabilizers by its syndrome (no logical of weight
/// `<= 2t`).
pub fn data_error_radius(code: &BbCode, sector: Sector, max_t: usize) -> usize {
    match lightest_logical(code, sector, 2 * max_t) {
        Some(l) => (l.weight() - 1) / 2,
        None => max_t,
    }
}

/// One failing case of a [`single_round_sweep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepFailure {
    pub data_support: Vec<usize>,
    pub meas_support: Vec<usize>,
    pub residual_weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub cases: usize,
    pub failures: usize,
    /// The first few failing cases, in enumeration order.
    pub examples: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Single-round pipeline on every data error of weight exactly `data_weight`
/// combined with every measurement error of weight `<= meas_weight`.
///
/// The syndrome stage is a bounded-distance lookup of radius `t_s` on the
/// syndrome-check rows; `data_decoder` runs on the sector's check matrix.
pub fn single_round_sweep(
    code: &BbCode,
    sector: Sector,
    t_s: usize,
    data_weight: usize,
    meas_weight: usize,
    data_decoder: DecoderId,
) -> Result<SweepReport> {
    const KEEP: usize = 8;
    // The priors only matter for BP-based stages; a low rate keeps them sharp.
    let noise = NoiseConfig::new(1e-3, 1e-3)?;
    let cfg = PipelineConfig {
        rounds: 1,
        syndrome_decoder: DecoderId::BdLookup,
        data_decoder,
        sector,
        decoder_opts: DecoderOptions {
            lookup_radius: t_s,
            ..DecoderOptions::default()
        },
        ..PipelineConfig::default()
    };
    let pipe = Pipeline::new(code, noise, cfg, t_s)?;
    let n = code.n();
    let check = code.check_matrix(sector);
    let mut report = SweepReport {
        cases: 0,
        failures: 0,
        examples: Vec::new(),
    };
    for data in (0..2 * n).combinations(data_weight) {
        let e = BitVector::from_support(2 * n, data.iter().copied());
        let ideal = check.matvec(&e);
        for w in 0..=meas_weight.min(n) {
            for meas in (0..n).combinations(w) {
                let nu = BitVector::from_support(n, meas.iter().copied());
                let out = pipe.process(&e, &[ideal.xor(&nu)]);
                report.cases += 1;
                if out.logical_failure {
                    report.failures += 1;
                    if report.examples.len() < KEEP {
                        report.examples.push(SweepFailure {
                            data_support: data.clone(),
                            meas_support: meas,
                            residual_weight: out.residual_weight,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
