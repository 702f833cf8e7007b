//! Distance analysis of the cyclic syndrome codes.
//!
//! Lower bound from the BCH run of the generator's roots, exact distance by
//! enumeration when the dimension is small, a stochastic upper bound
//! otherwise, the Singleton limit `deg g + 1`, and the bounded-distance
//! failure probability.

mod distance;
mod theory;

use std::fmt;

pub use distance::{
    bch_designed_distance, min_distance_exact, min_distance_upper, BchRun, DistanceVerdict,
    UpperBound, DEFAULT_EXACT_BUDGET,
};
pub use theory::p_fail_theory;

use crate::galois::FieldContext;
use crate::{BbCode, GF2Matrix, PolyF2, Result, Sector};

/// Where the distance used for `t_S` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceSource {
    /// Exhaustive enumeration.
    Exact,
    /// BCH lower bound meets the search upper bound.
    Bracket,
    /// Only the BCH lower bound is guaranteed.
    Bch,
}

impl fmt::Display for DistanceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceSource::Exact => "exact",
            DistanceSource::Bracket => "bracket",
            DistanceSource::Bch => "bch",
        })
    }
}

/// Tuning for [`analyze`].
#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub exact_budget: u128,
    pub upper_trials: usize,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            exact_budget: DEFAULT_EXACT_BUDGET,
            upper_trials: 200,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeReport {
    pub name: String,
    pub sector: Sector,
    pub n: usize,
    pub dim: usize,
    pub deg_g: usize,
    pub bch_run: BchRun,
    pub d_lower: usize,
    pub d_exact: Option<usize>,
    pub d_upper: Option<usize>,
    pub d_source: DistanceSource,
    pub singleton_limit: usize,
    pub t_s: usize,
    /// Minimum distance of the code spanned by the syndrome-check rows, when
    /// small enough to enumerate.
    pub d_relation: Option<usize>,
    pub exact_budget_exceeded: bool,
}

impl SyndromeReport {
    pub const CSV_HEADER: &'static str = "name,N,dim,d_lower,d_exact,d_upper,singleton_limit,t_S";

    /// Best distance that is known to hold: exact when available, else the
    /// BCH bound.
    pub fn d_verified(&self) -> usize {
        self.d_exact.unwrap_or(self.d_lower)
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.name,
            self.n,
            self.dim,
            self.d_lower,
            opt(self.d_exact),
            opt(self.d_upper),
            self.singleton_limit,
            self.t_s
        )
    }
}

impl fmt::Display for SyndromeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_else(|| "unknown".into());
        writeln!(f, "name={}", self.name)?;
        writeln!(f, "sector={}", self.sector)?;
        writeln!(f, "N={}", self.n)?;
        writeln!(f, "dim={}", self.dim)?;
        writeln!(f, "deg_g={}", self.deg_g)?;
        writeln!(f, "bch_start={}", self.bch_run.start)?;
        writeln!(f, "d_lower={} (bch)", self.d_lower)?;
        match (self.d_exact, self.exact_budget_exceeded) {
            (None, true) => writeln!(f, "d_exact=unknown (enumeration budget exceeded)")?,
            (Some(d), true) => writeln!(
                f,
                "d_exact={d} ({}; enumeration budget exceeded)",
                self.d_source
            )?,
            _ => writeln!(f, "d_exact={} ({})", opt(self.d_exact), self.d_source)?,
        }
        writeln!(f, "d_upper={} (search)", opt(self.d_upper))?;
        writeln!(f, "singleton_limit={}", self.singleton_limit)?;
        writeln!(f, "t_S={}", self.t_s)?;
        writeln!(f, "d_relation={}", opt(self.d_relation))?;
        if self.deg_g == 0 {
            writeln!(
                f,
                "note=no syndrome redundancy: every syndrome pattern is a codeword"
            )?;
        }
        Ok(())
    }
}

/// Distance report for the syndrome code of `code` in `sector`.
pub fn analyze(code: &BbCode, sector: Sector, opts: &AnalysisOptions) -> Result<SyndromeReport> {
    let n = code.n();
    let gen_poly = code.syndrome_generator(sector);
    let ctx = FieldContext::new(n)?;
    let bch_run = bch_designed_distance(&gen_poly, &ctx)?;
    let gen = code.syndrome_generator_matrix(sector);
    let report = cyclic_report(code.name(), n, &gen_poly, &gen, bch_run, opts);
    let d_relation = match min_distance_exact(code.syndrome_check_matrix(sector), opts.exact_budget)
    {
        DistanceVerdict::Found { distance, .. } => Some(distance),
        _ => None,
    };
    Ok(SyndromeReport {
        sector,
        d_relation,
        ..report
    })
}

/// Report for the cyclic code generated by `g | z^N - 1`.
pub fn analyze_cyclic(
    name: &str,
    n: usize,
    g: &PolyF2,
    opts: &AnalysisOptions,
) -> Result<SyndromeReport> {
    let ctx = FieldContext::new(n)?;
    let bch_run = bch_designed_distance(g, &ctx)?;
    let deg = g.degree().expect("divisor is nonzero");
    let gen = cyclic_generator_matrix(g, n);
    let mut report = cyclic_report(name, n, g, &gen, bch_run, opts);
    let h = PolyF2::cyclic_modulus(n).divmod(g)?.0;
    let checks = GF2Matrix::from_rows(
        n,
        (0..deg)
            .map(|i| h.mul_mod(&PolyF2::monomial(i), n).to_bitvector(n))
            .collect(),
    )?;
    report.d_relation = min_distance_exact(&checks, opts.exact_budget).distance();
    Ok(report)
}

/// Shifts `z^i g` for `i < N - deg g`.
pub fn cyclic_generator_matrix(g: &PolyF2, n: usize) -> GF2Matrix {
    let dim = n - g.degree().expect("divisor is nonzero");
    GF2Matrix::from_rows(
        n,
        (0..dim)
            .map(|i| g.mul_mod(&PolyF2::monomial(i), n).to_bitvector(n))
            .collect(),
    )
    .expect("row length is N")
}

fn cyclic_report(
    name: &str,
    n: usize,
    gen_poly: &PolyF2,
    gen: &GF2Matrix,
    bch_run: BchRun,
    opts: &AnalysisOptions,
) -> SyndromeReport {
    let deg_g = gen_poly.degree().expect("divisor is nonzero");
    let exact = min_distance_exact(gen, opts.exact_budget);
    let exact_budget_exceeded = matches!(exact, DistanceVerdict::BudgetExceeded { .. });
    let upper = min_distance_upper(gen, Some((gen_poly, n)), opts.upper_trials, opts.seed)
        .map(|u| u.weight);
    let d_lower = bch_run.delta;
    let (d_exact, d_source) = match exact.distance() {
        Some(d) => (Some(d), DistanceSource::Exact),
        None if upper == Some(d_lower) => (Some(d_lower), DistanceSource::Bracket),
        None => (None, DistanceSource::Bch),
    };
    let d = d_exact.unwrap_or(d_lower);
    SyndromeReport {
        name: name.to_string(),
        sector: Sector::X,
        n,
        dim: gen.nrows(),
        deg_g,
        bch_run,
        d_lower,
        d_exact,
        d_upper: upper,
        d_source,
        singleton_limit: deg_g + 1,
        t_s: d.saturating_sub(1) / 2,
        d_relation: None,
        exact_budget_exceeded,
    }
}

/// Singleton verdict: `d <= deg g + 1`, with `margin = deg g + 1 - d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingletonCheck {
    pub holds: bool,
    pub margin: i64,
}

/// Checks the best known distance (exact, else the search upper bound, else
/// the BCH bound) against the Singleton limit.
pub fn singleton_check(report: &SyndromeReport) -> SingletonCheck {
    let d = report.d_exact.or(report.d_upper).unwrap_or(report.d_lower);
    let margin = report.singleton_limit as i64 - d as i64;
    SingletonCheck {
        holds: margin >= 0,
        margin,
    }
}

/// One divisor in a sandwich sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichRow {
    pub n: usize,
    pub g: PolyF2,
    pub dim: usize,
    pub delta: usize,
    pub d_exact: usize,
    pub singleton_limit: usize,
}

impl SandwichRow {
    pub fn holds(&self) -> bool {
        self.delta <= self.d_exact && self.d_exact <= self.singleton_limit
    }
}

/// `delta <= d <= deg g + 1` for every divisor `g` of `z^N - 1` whose cyclic
/// code has dimension in `1..=max_dim`.
pub fn sandwich_sweep(n: usize, max_dim: usize) -> Result<Vec<SandwichRow>> {
    let ctx = FieldContext::new(n)?;
    let mut rows = Vec::new();
    for g in ctx.divisors() {
        let deg = g.degree().expect("divisor is nonzero");
        let dim = n - deg;
        if dim == 0 || dim > max_dim {
            continue;
        }
        let delta = bch_designed_distance(&g, &ctx)?.delta;
        let gen = cyclic_generator_matrix(&g, n);
        let d_exact = min_distance_exact(&gen, u128::MAX)
            .distance()
            .expect("nonempty code within budget");
        rows.push(SandwichRow {
            n,
            g,
            dim,
            delta,
            d_exact,
            singleton_limit: deg + 1,
        });
    }
    Ok(rows)
}
