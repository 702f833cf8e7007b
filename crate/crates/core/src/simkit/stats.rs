use std::fmt::Write as _;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `failures` out of `trials`.
pub fn wilson_interval(failures: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if failures == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let hi = if failures == trials {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (lo, hi)
}

/// One aggregated grid cell.
#[derive(Clone, Debug, PartialEq)]
pub struct McResult {
    pub experiment: String,
    pub code: String,
    pub n_block: usize,
    pub n_qubits: usize,
    pub k: usize,
    pub d_s: usize,
    pub p: f64,
    pub q: f64,
    pub rounds: usize,
    pub trials: u64,
    pub failures: u64,
    pub rate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
}

pub const RESULTS_CSV_HEADER: &str =
    "experiment,code,N,n,k,dS,p,q,R,trials,failures,rate,ci_lo,ci_hi,seed";

impl McResult {
    /// Fills `rate` and the Wilson interval from `trials`/`failures`.
    pub fn with_counts(mut self, trials: u64, failures: u64) -> Self {
        self.trials = trials;
        self.failures = failures;
        self.rate = if trials == 0 {
            0.0
        } else {
            failures as f64 / trials as f64
        };
        let (lo, hi) = wilson_interval(failures, trials, Z95);
        self.ci_lo = lo;
        self.ci_hi = hi;
        self
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{:.5e},{:.5e},{:.5e},{}",
            self.experiment,
            self.code,
            self.n_block,
            self.n_qubits,
            self.k,
            self.d_s,
            self.p,
            self.q,
            self.rounds,
            self.trials,
            self.failures,
            self.rate,
            self.ci_lo,
            self.ci_hi,
            self.seed
        )
    }

    /// Binomial standard error of the rate estimate.
    pub fn std_error(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        (self.rate * (1.0 - self.rate) / self.trials as f64).sqrt()
    }
}

/// Header plus one row per result, in the given order.
pub fn results_csv(results: &[McResult]) -> String {
    let mut out = String::from(RESULTS_CSV_HEADER);
    out.push('\n');
    for r in results {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_estimate() {
        for (f, n) in [(0u64, 10u64), (1, 10), (5, 10), (10, 10), (37, 100_000)] {
            let (lo, hi) = wilson_interval(f, n, Z95);
            let p = f as f64 / n as f64;
            assert!(lo <= p && p <= hi, "{f}/{n}: [{lo}, {hi}]");
        }
    }

    #[test]
    fn zero_failures_upper_end() {
        let (lo, hi) = wilson_interval(0, 1_000_000, Z95);
        assert_eq!(lo, 0.0);
        assert!((hi * 1e6 - Z95 * Z95).abs() < 1e-3);
    }

    #[test]
    fn reference_value() {
        // 10 of 100: Wilson interval (0.0552, 0.1744).
        let (lo, hi) = wilson_interval(10, 100, Z95);
        assert!(
            (lo - 0.055_229).abs() < 1e-5 && (hi - 0.174_366).abs() < 1e-5,
            "{lo} {hi}"
        );
    }

    #[test]
    fn csv_format() {
        let r = McResult {
            experiment: "sim-logical".into(),
            code: "code2".into(),
            n_block: 63,
            n_qubits: 126,
            k: 30,
            d_s: 3,
            p: 0.002,
            q: 0.002,
            rounds: 3,
            trials: 0,
            failures: 0,
            rate: 0.0,
            ci_lo: 0.0,
            ci_hi: 0.0,
            seed: 42,
        }
        .with_counts(1000, 7);
        assert_eq!(r.csv_row().split(',').nth(11), Some("7.00000e-3"));
        assert!(r
            .csv_row()
            .starts_with("sim-logical,code2,63,126,30,3,0.002,0.002,3,1000,7,"));
    }
}
