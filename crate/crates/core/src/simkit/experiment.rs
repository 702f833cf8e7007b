use std::sync::Arc;

use rand::RngExt;
use rayon::prelude::*;

use crate::decode::{llr_of, Decoder, DecoderId, DecoderOptions};
use crate::simkit::pipeline::{NoiseConfig, Pipeline, PipelineConfig};
use crate::simkit::rng::{fnv1a, sample_bits, trial_rng};
use crate::simkit::stats::McResult;
use crate::syndist::{
    analyze_cyclic, cyclic_generator_matrix, p_fail_theory, AnalysisOptions, SyndromeReport,
};
use crate::{BbCode, BitVector, Error, GF2Matrix, PolyF2, Result, Sector};

/// Stop a cell at `min_failures` failures or `max_trials` trials, whichever
/// comes first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StopRule {
    pub max_trials: u64,
    pub min_failures: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            max_trials: 1_000_000,
            min_failures: 100,
        }
    }
}

/// `(trials, failures)` for the sequential rule "run trial 0, 1, 2, ... and
/// stop right after the `min_failures`-th failure or at `max_trials`".
///
/// Trials are evaluated in parallel batches and the batch is cut at the exact
/// stopping trial, so the counts equal the sequential ones for any pool size.
pub fn run_until<F>(stop: StopRule, trial: F) -> (u64, u64)
where
    F: Fn(u64) -> bool + Sync,
{
    let mut done = 0u64;
    let mut failures = 0u64;
    let mut batch = 1024u64;
    while done < stop.max_trials && (stop.min_failures == 0 || failures < stop.min_failures) {
        let end = (done + batch).min(stop.max_trials);
        let outcomes: Vec<bool> = (done..end).into_par_iter().map(&trial).collect();
        for fail in outcomes {
            done += 1;
            if fail {
                failures += 1;
                if failures == stop.min_failures {
                    return (done, failures);
                }
            }
        }
        batch = (batch * 2).min(1 << 16);
    }
    (done, failures)
}

/// Runs `f` on a pool of `workers` threads (`0` = rayon's default).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Stream key of a grid cell. The number of rounds and the decoders are left
/// out so cells that differ only in those share their noise.
pub fn cell_key(experiment: &str, code: &str, p: f64, q: f64) -> u64 {
    fnv1a(
        format!(
            "{experiment}|{code}|{:016x}|{:016x}",
            p.to_bits(),
            q.to_bits()
        )
        .as_bytes(),
    )
}

/// One point of a logical-error-rate grid.
#[derive(Clone, Debug)]
pub struct LogicalCell {
    pub code: Arc<BbCode>,
    pub report: Arc<SyndromeReport>,
    pub noise: NoiseConfig,
    pub pipeline: PipelineConfig,
}

/// Logical failure rate for each cell, in grid order.
pub fn run_experiment(
    experiment: &str,
    cells: &[LogicalCell],
    stop: StopRule,
    seed: u64,
    workers: usize,
) -> Result<Vec<McResult>> {
    let pipes = cells
        .iter()
        .map(|c| Pipeline::new(&c.code, c.noise, c.pipeline, c.report.t_s))
        .collect::<Result<Vec<_>>>()?;
    with_workers(workers, || {
        cells
            .iter()
            .zip(&pipes)
            .map(|(cell, pipe)| {
                let key = cell_key(experiment, cell.code.name(), cell.noise.p, cell.noise.q);
                let (trials, failures) =
                    run_until(stop, |t| pipe.run_trial(seed, key, t).logical_failure);
                McResult {
                    experiment: experiment.to_string(),
                    code: cell.code.name().to_string(),
                    n_block: cell.code.n(),
                    n_qubits: cell.code.num_qubits(),
                    k: cell.code.k(),
                    d_s: cell.report.d_verified(),
                    p: cell.noise.p,
                    q: cell.noise.q,
                    rounds: cell.pipeline.rounds,
                    trials: 0,
                    failures: 0,
                    rate: 0.0,
                    ci_lo: 0.0,
                    ci_hi: 0.0,
                    seed,
                }
                .with_counts(trials, failures)
            })
            .collect()
    })
}

/// A classical syndrome code: generator rows and parity checks.
#[derive(Clone, Debug)]
pub struct SyndromeCode {
    pub name: String,
    pub n: usize,
    /// Qubit count of the parent quantum code (`n` for a plain cyclic code).
    pub n_qubits: usize,
    /// Logical dimension of the parent quantum code (the dimension for a
    /// plain cyclic code).
    pub k: usize,
    pub generator: GF2Matrix,
    pub checks: GF2Matrix,
    pub d_s: usize,
    pub t_s: usize,
}

impl SyndromeCode {
    pub fn from_bbcode(code: &BbCode, sector: Sector, report: &SyndromeReport) -> Self {
        SyndromeCode {
            name: code.name().to_string(),
            n: code.n(),
            n_qubits: code.num_qubits(),
            k: code.k(),
            generator: code.syndrome_generator_matrix(sector),
            checks: code.redundant_syndrome_check_matrix(sector),
            d_s: report.d_verified(),
            t_s: report.t_s,
        }
    }

    /// The cyclic code `<g>` of length `n`, checked by all shifts of the
    /// reciprocal of `h = (z^n - 1) / g`.
    pub fn from_cyclic(name: &str, n: usize, g: &PolyF2) -> Result<Self> {
        let report = analyze_cyclic(name, n, g, &AnalysisOptions::default())?;
        let h = PolyF2::cyclic_modulus(n).divmod(g)?.0;
        let checks = GF2Matrix::circulant(&h.reciprocal(n), n);
        let generator = cyclic_generator_matrix(g, n);
        Ok(SyndromeCode {
            name: name.to_string(),
            n,
            n_qubits: n,
            k: generator.nrows(),
            generator,
            checks,
            d_s: report.d_verified(),
            t_s: report.t_s,
        })
    }
}

/// One point of a syndrome-only grid.
#[derive(Clone, Debug)]
pub struct SyndromeCell {
    pub code: Arc<SyndromeCode>,
    pub q: f64,
    pub decoder: DecoderId,
    pub opts: DecoderOptions,
}

/// Decoder for a syndrome-only cell; the lookup radius is the code's `t_S`.
pub fn syndrome_decoder(cell: &SyndromeCell) -> Result<Decoder> {
    let opts = DecoderOptions {
        lookup_radius: cell.code.t_s,
        ..cell.opts
    };
    Decoder::new(cell.decoder, &cell.code.checks, opts)
}

/// One syndrome-only trial: a uniformly random codeword, BSC(`q`) noise,
/// decoding on the check rows. Returns `true` on a frame error.
pub fn syndrome_trial(
    code: &SyndromeCode,
    dec: &Decoder,
    q: f64,
    llr: &[f64],
    seed: u64,
    key: u64,
    t: u64,
) -> bool {
    let mut rng = trial_rng(seed, key, t);
    let dim = code.generator.nrows();
    let msg = BitVector::from_support(
        dim,
        (0..dim)
            .filter(|_| rng.random::<bool>())
            .collect::<Vec<_>>(),
    );
    let s = code.generator.vecmat(&msg);
    let y = s.xor(&sample_bits(code.n, q, &mut rng));
    let out = dec.decode(&code.checks.matvec(&y), llr);
    y.xor(&out.error) != s
}

/// Frame error rate of syndrome decoding for each cell, in grid order.
///
/// Rows are labelled `{experiment}/{decoder}`. The noise stream depends on
/// the code and `q` only, so decoders are compared on identical samples.
pub fn run_syndrome_only(
    experiment: &str,
    cells: &[SyndromeCell],
    stop: StopRule,
    seed: u64,
    workers: usize,
) -> Result<Vec<McResult>> {
    let decoders = cells
        .iter()
        .map(syndrome_decoder)
        .collect::<Result<Vec<_>>>()?;
    with_workers(workers, || {
        cells
            .iter()
            .zip(&decoders)
            .map(|(cell, dec)| {
                let code = &cell.code;
                let llr = vec![llr_of(cell.q, cell.opts.clip); code.n];
                let key = cell_key(experiment, &code.name, 0.0, cell.q);
                let (trials, failures) = run_until(stop, |t| {
                    syndrome_trial(code, dec, cell.q, &llr, seed, key, t)
                });
                let label = format!("{experiment}/{}", cell.decoder);
                syndrome_result(&label, code, cell.q, seed).with_counts(trials, failures)
            })
            .collect()
    })
}

fn syndrome_result(experiment: &str, code: &SyndromeCode, q: f64, seed: u64) -> McResult {
    McResult {
        experiment: experiment.to_string(),
        code: code.name.clone(),
        n_block: code.n,
        n_qubits: code.n_qubits,
        k: code.k,
        d_s: code.d_s,
        p: 0.0,
        q,
        rounds: 1,
        trials: 0,
        failures: 0,
        rate: 0.0,
        ci_lo: 0.0,
        ci_hi: 0.0,
        seed,
    }
}

/// Bounded-distance failure probability at radius `t_S` as result rows
/// labelled `{experiment}/theory`: `trials = failures = 0` and
/// `rate = ci_lo = ci_hi` = the closed form.
pub fn theory_rows(experiment: &str, code: &SyndromeCode, qs: &[f64], seed: u64) -> Vec<McResult> {
    let label = format!("{experiment}/theory");
    qs.iter()
        .map(|&q| {
            let v = p_fail_theory(code.n, code.t_s, q);
            McResult {
                rate: v,
                ci_lo: v,
                ci_hi: v,
                ..syndrome_result(&label, code, q, seed)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stopping_rule_matches_sequential_scan() {
        let fail = |t: u64| t % 7 == 3 || t % 11 == 0;
        let stop = StopRule {
            max_trials: 5000,
            min_failures: 40,
        };
        let mut seq = (0u64, 0u64);
        for t in 0..stop.max_trials {
            seq.0 += 1;
            if fail(t) {
                seq.1 += 1;
                if seq.1 == stop.min_failures {
                    break;
                }
            }
        }
        for workers in [1, 3] {
            assert_eq!(
                with_workers(workers, || run_until(stop, fail)).unwrap(),
                seq
            );
        }
        assert_eq!(
            run_until(
                StopRule {
                    max_trials: 10,
                    min_failures: 100
                },
                |_| true
            ),
            (10, 10)
        );
        assert_eq!(
            run_until(
                StopRule {
                    max_trials: 3000,
                    min_failures: 1
                },
                |_| false
            ),
            (3000, 0)
        );
    }
}
