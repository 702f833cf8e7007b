use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::decode::DecoderId;
use crate::simkit::SyndromeLlr;
use crate::{Error, Result, Sector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Construct,
    Analyze,
    SimSyndrome,
    SimLogical,
    SimRsweep,
    CheckTheorems,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Construct,
        Kind::Analyze,
        Kind::SimSyndrome,
        Kind::SimLogical,
        Kind::SimRsweep,
        Kind::CheckTheorems,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Construct => "construct",
            Kind::Analyze => "analyze",
            Kind::SimSyndrome => "sim-syndrome",
            Kind::SimLogical => "sim-logical",
            Kind::SimRsweep => "sim-rsweep",
            Kind::CheckTheorems => "check-theorems",
        }
    }

    pub fn is_simulation(self) -> bool {
        matches!(self, Kind::SimSyndrome | Kind::SimLogical | Kind::SimRsweep)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown experiment kind {s:?}")))
    }
}

/// Measurement flip rates: an explicit list, or `q = p` cell by cell.
#[derive(Clone, Debug, PartialEq)]
pub enum QRule {
    List(Vec<f64>),
    EqualsP,
}

/// A parsed experiment file.
///
/// ```text
/// # one key per line
/// name = fig3
/// kind = sim-logical
/// codes = code2.spec
/// p = 2e-3, 5e-3, 1e-2
/// q = p
/// R = 1, 3
/// seed = 3
/// ```
///
/// Code paths are resolved against the directory of the experiment file.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub name: Option<String>,
    pub kind: Kind,
    pub codes: Vec<PathBuf>,
    pub p: Vec<f64>,
    pub q: QRule,
    pub rounds: Vec<usize>,
    /// Decoders compared by `sim-syndrome`.
    pub decoders: Vec<DecoderId>,
    pub syndrome_decoder: DecoderId,
    pub data_decoder: DecoderId,
    pub syndrome_llr: SyndromeLlr,
    pub sector: Sector,
    pub seed: Option<u64>,
    pub max_trials: Option<u64>,
    pub min_failures: Option<u64>,
    pub out: Option<PathBuf>,
}

const KEYS: [&str; 15] = [
    "name",
    "kind",
    "codes",
    "p",
    "q",
    "R",
    "decoders",
    "syndrome_decoder",
    "data_decoder",
    "syndrome_llr",
    "sector",
    "seed",
    "max_trials",
    "min_failures",
    "out",
];

/// `true` when `text` has a `kind` key, i.e. is an experiment file rather
/// than a code file.
pub fn is_experiment(text: &str) -> bool {
    text.lines().any(|l| {
        let l = l.split('#').next().unwrap_or("");
        l.split_once('=').is_some_and(|(k, _)| k.trim() == "kind")
    })
}

impl ExperimentSpec {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut spec = Self::parse(&text, base)?;
        if spec.name.is_none() {
            spec.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        Ok(spec)
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut fields: BTreeMap<&str, (usize, String)> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                msg: format!("expected key = value, got {content:?}"),
            })?;
            let key = key.trim();
            let Some(&known) = KEYS.iter().find(|&&k| k == key) else {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown key {key:?}"),
                });
            };
            if fields
                .insert(known, (line, value.trim().to_string()))
                .is_some()
            {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate key {key:?}"),
                });
            }
        }

        let kind = match fields.get("kind") {
            Some((line, v)) => v.parse::<Kind>().map_err(|e| at(*line, e))?,
            None => {
                return Err(Error::Parse {
                    line: 0,
                    msg: "missing key \"kind\"".into(),
                })
            }
        };
        let codes = match fields.get("codes") {
            Some((line, v)) => {
                let list = split_list(v);
                if list.is_empty() {
                    return Err(Error::Parse {
                        line: *line,
                        msg: "empty code list".into(),
                    });
                }
                list.into_iter().map(|c| base.join(c)).collect()
            }
            None => {
                return Err(Error::Parse {
                    line: 0,
                    msg: "missing key \"codes\"".into(),
                })
            }
        };
        let p = parse_list::<f64>(&fields, "p")?.unwrap_or_default();
        let q = match fields.get("q") {
            Some((_, v)) if v == "p" => QRule::EqualsP,
            _ => QRule::List(parse_list::<f64>(&fields, "q")?.unwrap_or_default()),
        };
        let rounds = parse_list::<usize>(&fields, "R")?.unwrap_or_else(|| vec![1]);
        let decoders =
            parse_list::<DecoderId>(&fields, "decoders")?.unwrap_or_else(|| vec![DecoderId::Bp]);
        let one = |key: &str| -> Option<&(usize, String)> { fields.get(key) };
        let syndrome_decoder = parse_one(one("syndrome_decoder"))?.unwrap_or(DecoderId::Bp);
        let data_decoder = parse_one(one("data_decoder"))?.unwrap_or(DecoderId::BpOsd2);
        let syndrome_llr = match one("syndrome_llr") {
            None => SyndromeLlr::default(),
            Some((_, v)) if v == "vote-margin" => SyndromeLlr::VoteMargin,
            Some((_, v)) if v == "flat" => SyndromeLlr::Flat,
            Some((line, v)) => {
                return Err(Error::Parse {
                    line: *line,
                    msg: format!("syndrome_llr must be vote-margin or flat, got {v:?}"),
                })
            }
        };
        let sector = parse_one(one("sector"))?.unwrap_or_default();

        let spec = ExperimentSpec {
            name: one("name").map(|(_, v)| v.clone()),
            kind,
            codes,
            p,
            q,
            rounds,
            decoders,
            syndrome_decoder,
            data_decoder,
            syndrome_llr,
            sector,
            seed: parse_one(one("seed"))?,
            max_trials: parse_one(one("max_trials"))?,
            min_failures: parse_one(one("min_failures"))?,
            out: one("out").map(|(_, v)| base.join(v)),
        };
        spec.validate_grid()?;
        Ok(spec)
    }

    fn validate_grid(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(format!("{}: {msg}", self.kind)));
        if self.rounds.contains(&0) {
            return bad("R values must be at least 1");
        }
        let probs = self.p.iter().chain(match &self.q {
            QRule::List(q) => q.as_slice(),
            QRule::EqualsP => &[],
        });
        if probs.into_iter().any(|x| !(0.0..=1.0).contains(x)) {
            return bad("probabilities must lie in [0, 1]");
        }
        match self.kind {
            Kind::SimSyndrome => {
                if !matches!(&self.q, QRule::List(q) if !q.is_empty()) {
                    return bad("needs a non-empty q list");
                }
                if self.decoders.is_empty() {
                    return bad("needs at least one decoder");
                }
            }
            Kind::SimLogical | Kind::SimRsweep
                if self.p.is_empty()
                    || matches!(&self.q, QRule::List(q) if q.is_empty())
                    || self.rounds.is_empty() =>
            {
                return bad("needs non-empty p, q and R grids");
            }
            _ => {}
        }
        Ok(())
    }

    /// Label written to the `experiment` column.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.kind.to_string())
    }

    /// `(p, q)` pairs in grid order: `p` outer, `q` inner.
    pub fn pq_pairs(&self) -> Vec<(f64, f64)> {
        match &self.q {
            QRule::EqualsP => self.p.iter().map(|&p| (p, p)).collect(),
            QRule::List(qs) => self
                .p
                .iter()
                .flat_map(|&p| qs.iter().map(move |&q| (p, q)))
                .collect(),
        }
    }

    pub fn q_list(&self) -> Vec<f64> {
        match &self.q {
            QRule::List(q) => q.clone(),
            QRule::EqualsP => self.p.clone(),
        }
    }
}

fn at(line: usize, e: Error) -> Error {
    Error::Parse {
        line,
        msg: e.to_string(),
    }
}

fn split_list(v: &str) -> Vec<&str> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_list<T: FromStr>(
    fields: &BTreeMap<&str, (usize, String)>,
    key: &str,
) -> Result<Option<Vec<T>>>
where
    T::Err: fmt::Display,
{
    let Some((line, v)) = fields.get(key) else {
        return Ok(None);
    };
    split_list(v)
        .into_iter()
        .map(|s| {
            s.parse::<T>().map_err(|e| Error::Parse {
                line: *line,
                msg: format!("{key}: {s:?}: {e}"),
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn parse_one<T: FromStr>(field: Option<&(usize, String)>) -> Result<Option<T>>
where
    T::Err: fmt::Display,
{
    field
        .map(|(line, v)| {
            v.parse::<T>().map_err(|e| Error::Parse {
                line: *line,
                msg: format!("{v:?}: {e}"),
            })
        })
        .transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_spec() {
        let text = "\
# logical sweep
name = demo
kind = sim-logical
codes = a.spec, b.spec
p = 1e-3, 2e-3
q = p
R = 1, 3
data_decoder = bp-osd0
seed = 7
";
        let s = ExperimentSpec::parse(text, Path::new("/x")).unwrap();
        assert_eq!(s.kind, Kind::SimLogical);
        assert_eq!(
            s.codes,
            vec![PathBuf::from("/x/a.spec"), PathBuf::from("/x/b.spec")]
        );
        assert_eq!(s.pq_pairs(), vec![(1e-3, 1e-3), (2e-3, 2e-3)]);
        assert_eq!(s.rounds, vec![1, 3]);
        assert_eq!(s.data_decoder, DecoderId::BpOsd0);
        assert_eq!(s.syndrome_decoder, DecoderId::Bp);
        assert_eq!(s.seed, Some(7));
        assert_eq!(s.label(), "demo");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("kind = analyze\ncodes = a\nbogus = 1\n", 3),
            ("kind = analyze\nkind = construct\n", 2),
            ("kind = sim-syndrome\ncodes = a\nq = 0.1, x\n", 3),
            ("kind = nope\n", 1),
            ("kind = analyze\ncodes a\n", 2),
        ];
        for (text, line) in cases {
            match ExperimentSpec::parse(text, Path::new(".")) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn grid_validation() {
        assert!(ExperimentSpec::parse("kind = sim-syndrome\ncodes = a\n", Path::new(".")).is_err());
        assert!(ExperimentSpec::parse(
            "kind = sim-logical\ncodes = a\np = 0.1\nq = 0.1\nR = 0\n",
            Path::new(".")
        )
        .is_err());
        assert!(
            ExperimentSpec::parse("kind = sim-logical\ncodes = a\nq = 0.1\n", Path::new("."))
                .is_err()
        );
        assert!(ExperimentSpec::parse("kind = analyze\ncodes = a\n", Path::new(".")).is_ok());
    }

    #[test]
    fn detects_experiment_files() {
        assert!(is_experiment("kind = analyze\n"));
        assert!(!is_experiment("N = 21\na = 0,3,9\n# kind = analyze\n"));
    }
}
