//! Command implementations behind the `coprime-bb` binary.
//!
//! Every command reads one `--spec` file: either a code file (`N`, `a`, `b`,
//! ...) or an experiment file with a `kind` key (see [`ExperimentSpec`]).
//! Exit status: 0 when the command ran, 1 on a structural or check failure,
//! 2 on usage and parse errors.

mod spec;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

pub use spec::{is_experiment, ExperimentSpec, Kind, QRule};

use crate::decode::{DecoderId, DecoderOptions};
use crate::simkit::{
    check_repeated_round_condition, data_error_radius, results_csv, run_experiment,
    run_syndrome_only, single_round_sweep, theory_rows, LogicalCell, McResult, NoiseConfig,
    PipelineConfig, RoundCondition, StopRule, SyndromeCell, SyndromeCode,
};
use crate::syndist::{analyze, sandwich_sweep, singleton_check, AnalysisOptions};
use crate::{BbCode, CodeReport, CodeSpec, Error, Result, Sector, SyndromeReport};

#[derive(Debug, Parser)]
#[command(
    name = "coprime-bb",
    version,
    about = "Coprime bivariate bicycle codes: construction, syndrome distance and single-shot simulation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build codes and print their parameters.
    Construct(CommonArgs),
    /// Syndrome-code distance report.
    Analyze(CommonArgs),
    /// Syndrome-only frame error rates, with the bounded-distance curve.
    SimSyndrome(CommonArgs),
    /// Logical error rates over a (p, q, R) grid.
    SimLogical(CommonArgs),
    /// Logical error rates as a function of R.
    SimRsweep(CommonArgs),
    /// Structural identities, distance bounds, the single-round sweep and the
    /// repeated-round table.
    CheckTheorems(CommonArgs),
}

impl Command {
    fn kind(&self) -> Kind {
        match self {
            Command::Construct(_) => Kind::Construct,
            Command::Analyze(_) => Kind::Analyze,
            Command::SimSyndrome(_) => Kind::SimSyndrome,
            Command::SimLogical(_) => Kind::SimLogical,
            Command::SimRsweep(_) => Kind::SimRsweep,
            Command::CheckTheorems(_) => Kind::CheckTheorems,
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Construct(a)
            | Command::Analyze(a)
            | Command::SimSyndrome(a)
            | Command::SimLogical(a)
            | Command::SimRsweep(a)
            | Command::CheckTheorems(a) => a,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Code or experiment file.
    #[arg(long)]
    pub spec: PathBuf,
    /// Master seed; overrides the spec.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output CSV path; overrides the spec. Without one the CSV goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Trial cap per grid cell (default 1000000).
    #[arg(long)]
    pub max_trials: Option<u64>,
    /// Stop a cell after this many failures; 0 runs exactly max-trials (default 100).
    #[arg(long)]
    pub min_failures: Option<u64>,
    /// Data decoder for logical runs, or the only decoder for syndrome runs.
    #[arg(long)]
    pub decoder: Option<DecoderId>,
    /// Syndrome-stage decoder for logical runs.
    #[arg(long)]
    pub syndrome_decoder: Option<DecoderId>,
    /// Flip entry (ROW,COL) of H_X after construction (negative control).
    #[arg(long, value_name = "ROW,COL", hide = true)]
    pub tamper_hx: Option<String>,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::InvalidArgument(_)
            | Error::EvenLength(_)
            | Error::ZeroLength
            | Error::BadFactorization { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(&cli.command, &mut stdout) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            let (CliError::Usage(msg) | CliError::Failed(msg)) = &e;
            eprintln!("error: {msg}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Runs one command, writing the human-readable output to `w`. Returns the
/// exit status for a completed run (1 when a check failed).
pub fn run(cmd: &Command, w: &mut dyn std::io::Write) -> std::result::Result<u8, CliError> {
    let args = cmd.args();
    let job = Job::load(cmd.kind(), args)?;
    let mut text = String::new();
    let status = match cmd.kind() {
        Kind::Construct => cmd_construct(&job, &mut text)?,
        Kind::Analyze => cmd_analyze(&job, &mut text)?,
        Kind::SimSyndrome | Kind::SimLogical | Kind::SimRsweep => cmd_simulate(&job, &mut text)?,
        Kind::CheckTheorems => cmd_check_theorems(&job, &mut text)?,
    };
    w.write_all(text.as_bytes())
        .map_err(|e| CliError::Failed(format!("writing output: {e}")))?;
    Ok(status)
}

/// Spec file plus flag overrides.
struct Job {
    exp: ExperimentSpec,
    codes: Vec<CodeSpec>,
    out: Option<PathBuf>,
    workers: usize,
    stop: StopRule,
    seed: Option<u64>,
    tamper: Option<(usize, usize)>,
}

impl Job {
    fn load(kind: Kind, args: &CommonArgs) -> std::result::Result<Self, CliError> {
        let text = std::fs::read_to_string(&args.spec)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", args.spec.display())))?;
        let (mut exp, codes) = if is_experiment(&text) {
            let exp = ExperimentSpec::from_file(&args.spec)?;
            if exp.kind != kind {
                return Err(CliError::Usage(format!(
                    "{} is a {} experiment, not {}",
                    args.spec.display(),
                    exp.kind,
                    kind
                )));
            }
            let codes = exp
                .codes
                .iter()
                .map(CodeSpec::from_file)
                .collect::<Result<Vec<_>>>()?;
            (exp, codes)
        } else {
            if kind.is_simulation() {
                return Err(CliError::Usage(format!(
                    "{kind} needs an experiment file with a grid"
                )));
            }
            let code = CodeSpec::from_file(&args.spec)?;
            let exp = ExperimentSpec {
                name: None,
                kind,
                codes: vec![args.spec.clone()],
                p: Vec::new(),
                q: QRule::List(Vec::new()),
                rounds: vec![1],
                decoders: vec![DecoderId::Bp],
                syndrome_decoder: DecoderId::Bp,
                data_decoder: DecoderId::BpOsd2,
                syndrome_llr: Default::default(),
                sector: Sector::X,
                seed: None,
                max_trials: None,
                min_failures: None,
                out: None,
            };
            (exp, vec![code])
        };
        if let Some(d) = args.decoder {
            match kind {
                Kind::SimSyndrome => exp.decoders = vec![d],
                _ => exp.data_decoder = d,
            }
        }
        if let Some(d) = args.syndrome_decoder {
            exp.syndrome_decoder = d;
        }
        let seed = args.seed.or(exp.seed);
        if kind.is_simulation() && seed.is_none() {
            return Err(CliError::Usage(format!(
                "{kind} needs a seed (spec key `seed` or --seed)"
            )));
        }
        let defaults = StopRule::default();
        let stop = StopRule {
            max_trials: args
                .max_trials
                .or(exp.max_trials)
                .unwrap_or(defaults.max_trials),
            min_failures: args
                .min_failures
                .or(exp.min_failures)
                .unwrap_or(defaults.min_failures),
        };
        let tamper = args.tamper_hx.as_deref().map(parse_pair).transpose()?;
        Ok(Job {
            out: args.out.clone().or(exp.out.clone()),
            exp,
            codes,
            workers: args.workers,
            stop,
            seed,
            tamper,
        })
    }

    fn build_codes(&self) -> Result<Vec<BbCode>> {
        self.codes.iter().map(BbCode::build).collect()
    }

    /// Writes `csv` to the output path, or appends it to `text` when there is
    /// none.
    fn emit_csv(&self, csv: &str, text: &mut String) -> std::result::Result<(), CliError> {
        match &self.out {
            Some(path) => write_file(path, csv),
            None => {
                text.push_str(csv);
                Ok(())
            }
        }
    }
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("expected ROW,COL, got {s:?}"));
    let (r, c) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        r.trim().parse().map_err(|_| bad())?,
        c.trim().parse().map_err(|_| bad())?,
    ))
}

fn write_file(path: &Path, contents: &str) -> std::result::Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Failed(format!("creating {}: {e}", dir.display())))?;
    }
    let mut f = std::fs::File::create(path)
        .map_err(|e| CliError::Failed(format!("creating {}: {e}", path.display())))?;
    f.write_all(contents.as_bytes())
        .map_err(|e| CliError::Failed(format!("writing {}: {e}", path.display())))
}

fn cmd_construct(job: &Job, text: &mut String) -> std::result::Result<u8, CliError> {
    let mut csv = format!("{}\n", CodeReport::CSV_HEADER);
    for spec in &job.codes {
        let report = BbCode::build(spec)?.report();
        let _ = writeln!(text, "{report}");
        let _ = writeln!(csv, "{}", report.csv_row());
    }
    job.emit_csv(&csv, text)?;
    Ok(0)
}

fn cmd_analyze(job: &Job, text: &mut String) -> std::result::Result<u8, CliError> {
    let mut csv = format!("{}\n", SyndromeReport::CSV_HEADER);
    for code in job.build_codes()? {
        let report = analyze(&code, job.exp.sector, &AnalysisOptions::default())?;
        if report.exact_budget_exceeded {
            eprintln!(
                "note: {}: exact enumeration skipped (budget exceeded)",
                code.name()
            );
        }
        let _ = writeln!(text, "{report}");
        let _ = writeln!(csv, "{}", report.csv_row());
    }
    job.emit_csv(&csv, text)?;
    Ok(0)
}

fn summary_table(results: &[McResult]) -> String {
    let mut s = format!(
        "{:<22} {:<10} {:>9} {:>9} {:>3} {:>9} {:>8} {:>11} {:>23}\n",
        "experiment", "code", "p", "q", "R", "trials", "fails", "rate", "95% interval"
    );
    for r in results {
        let _ = writeln!(
            s,
            "{:<22} {:<10} {:>9} {:>9} {:>3} {:>9} {:>8} {:>11.4e} [{:.3e}, {:.3e}]",
            r.experiment,
            r.code,
            r.p,
            r.q,
            r.rounds,
            r.trials,
            r.failures,
            r.rate,
            r.ci_lo,
            r.ci_hi
        );
    }
    s
}

fn cmd_simulate(job: &Job, text: &mut String) -> std::result::Result<u8, CliError> {
    let exp = &job.exp;
    let label = exp.label();
    let seed = job.seed.expect("checked when loading");
    let codes = job.build_codes()?;
    let mut results = Vec::new();
    for code in &codes {
        let report = analyze(code, exp.sector, &AnalysisOptions::default())?;
        if exp.kind == Kind::SimSyndrome {
            let sc = Arc::new(SyndromeCode::from_bbcode(code, exp.sector, &report));
            let qs = exp.q_list();
            let cells: Vec<SyndromeCell> = exp
                .decoders
                .iter()
                .flat_map(|&decoder| {
                    let sc = sc.clone();
                    qs.iter().map(move |&q| SyndromeCell {
                        code: sc.clone(),
                        q,
                        decoder,
                        opts: DecoderOptions::default(),
                    })
                })
                .collect();
            results.extend(run_syndrome_only(
                &label,
                &cells,
                job.stop,
                seed,
                job.workers,
            )?);
            results.extend(theory_rows(&label, &sc, &qs, seed));
        } else {
            let code = Arc::new(code.clone());
            let report = Arc::new(report);
            let mut cells = Vec::new();
            for (p, q) in exp.pq_pairs() {
                for &rounds in &exp.rounds {
                    cells.push(LogicalCell {
                        code: code.clone(),
                        report: report.clone(),
                        noise: NoiseConfig::new(p, q)?,
                        pipeline: PipelineConfig {
                            rounds,
                            syndrome_decoder: exp.syndrome_decoder,
                            data_decoder: exp.data_decoder,
                            sector: exp.sector,
                            syndrome_llr: exp.syndrome_llr,
                            ..PipelineConfig::default()
                        },
                    });
                }
            }
            results.extend(run_experiment(&label, &cells, job.stop, seed, job.workers)?);
        }
    }
    let csv = results_csv(&results);
    match &job.out {
        Some(path) => {
            write_file(path, &csv)?;
            text.push_str(&summary_table(&results));
        }
        None => {
            text.push_str(&csv);
            eprint!("{}", summary_table(&results));
        }
    }
    Ok(0)
}

/// Lengths and dimension cap of the distance-sandwich sweep.
pub const SANDWICH_LENGTHS: [usize; 4] = [7, 9, 15, 21];
pub const SANDWICH_MAX_DIM: usize = 16;
/// Rounds tabulated by the repeated-round condition.
pub const ROUND_TABLE: std::ops::RangeInclusive<usize> = 1..=7;

struct Checklist<'a> {
    text: &'a mut String,
    failed: usize,
}

impl Checklist<'_> {
    fn record(&mut self, ok: bool, name: &str, detail: impl std::fmt::Display) {
        if !ok {
            self.failed += 1;
        }
        let _ = writeln!(
            self.text,
            "{} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }

    fn info(&mut self, name: &str, detail: impl std::fmt::Display) {
        let _ = writeln!(self.text, "INFO {name}: {detail}");
    }
}

fn cmd_check_theorems(job: &Job, text: &mut String) -> std::result::Result<u8, CliError> {
    let sector = job.exp.sector;
    let mut table = format!("{}\n", RoundCondition::CSV_HEADER);
    let mut list = Checklist { text, failed: 0 };
    for spec in &job.codes {
        let mut code = BbCode::build(spec)?;
        if let Some((r, c)) = job.tamper {
            if r >= code.hx().nrows() || c >= code.hx().ncols() {
                return Err(CliError::Usage(format!(
                    "tamper position ({r},{c}) is outside H_X"
                )));
            }
            code = code.with_flipped_hx_bit(r, c);
            list.info("tamper", format!("{}: flipped H_X[{r},{c}]", code.name()));
        }
        let name = code.name().to_string();
        let identities = code.verify();
        let structural_ok = identities.iter().all(|c| c.holds);
        for check in identities {
            list.record(
                check.holds,
                &format!("{name} {}", check.name),
                &check.detail,
            );
        }
        if !structural_ok {
            list.info(&name, "remaining checks skipped: structure is broken");
            continue;
        }

        let report = analyze(&code, sector, &AnalysisOptions::default())?;
        let singleton = singleton_check(&report);
        list.record(
            singleton.holds,
            &format!("{name} singleton"),
            format_args!(
                "d={} <= deg g + 1 = {}",
                report.d_exact.or(report.d_upper).unwrap_or(report.d_lower),
                report.singleton_limit
            ),
        );
        let bch_ok = report.d_exact.is_none_or(|d| report.d_lower <= d)
            && report.d_upper.is_none_or(|d| report.d_lower <= d);
        list.record(
            bch_ok,
            &format!("{name} bch-lower-bound"),
            format_args!(
                "delta={} d_exact={:?} d_upper={:?}",
                report.d_lower, report.d_exact, report.d_upper
            ),
        );

        let sweep =
            single_round_sweep(&code, sector, report.t_s, 1, report.t_s, DecoderId::BpOsd2)?;
        list.record(
            sweep.passed(),
            &format!("{name} single-round-sweep"),
            format_args!(
                "weight-1 data x weight<={} measurement errors: {} failures in {} cases{}",
                report.t_s,
                sweep.failures,
                sweep.cases,
                sweep
                    .examples
                    .first()
                    .map(|f| format!(
                        " (first: data {:?}, meas {:?})",
                        f.data_support, f.meas_support
                    ))
                    .unwrap_or_default()
            ),
        );
        let t_data = data_error_radius(&code, sector, 1);
        let mut cases = 0;
        let mut failures = 0;
        for wt in 0..=t_data {
            let r =
                single_round_sweep(&code, sector, report.t_s, wt, report.t_s, DecoderId::BpOsd2)?;
            cases += r.cases;
            failures += r.failures;
        }
        list.record(
            failures == 0,
            &format!("{name} single-round-sweep-within-radius"),
            format_args!(
                "data weight<={t_data} (data correction radius) x weight<={} measurement errors: {failures} failures in {cases} cases",
                report.t_s
            ),
        );

        for rounds in ROUND_TABLE {
            let row = check_repeated_round_condition(&report, rounds);
            list.info(
                &format!("{name} repeated-round R={rounds}"),
                format_args!(
                    "t_time={} t_S={} floor(deg g/2)={} {}",
                    row.t_time,
                    row.t_s,
                    row.half_deg_g,
                    if row.holds() { "holds" } else { "violated" }
                ),
            );
            let _ = writeln!(table, "{}", row.csv_row());
        }
    }

    let mut exceptions = 0;
    let mut total = 0;
    for n in SANDWICH_LENGTHS {
        for row in sandwich_sweep(n, SANDWICH_MAX_DIM)? {
            total += 1;
            if !row.holds() {
                exceptions += 1;
            }
        }
    }
    list.record(
        exceptions == 0,
        "distance-sandwich",
        format_args!("delta <= d <= deg g + 1 for N in {SANDWICH_LENGTHS:?}, dim <= {SANDWICH_MAX_DIM}: {exceptions} exceptions in {total} divisors"),
    );

    let failed = list.failed;
    let _ = writeln!(
        list.text,
        "{}",
        if failed == 0 {
            "all checks passed".to_string()
        } else {
            format!("{failed} check(s) failed")
        }
    );
    if let Some(path) = &job.out {
        write_file(path, &table)?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
