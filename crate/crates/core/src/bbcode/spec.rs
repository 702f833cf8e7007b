use std::fmt;
use std::path::Path;

use crate::galois::parse_exponent_list;
use crate::{Error, Result};

/// Plain-text code description:
///
/// ```text
/// # Code 1
/// name=code1
/// N=21
/// a=0,3,9
/// b=0,3,9
/// ell=3
/// mel=7
/// ```
///
/// Keys are case-sensitive; `#` starts a comment; blank lines are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub name: Option<String>,
    pub n: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub ell: Option<usize>,
    pub mel: Option<usize>,
}

impl CodeSpec {
    pub fn new(n: usize, a: &[usize], b: &[usize]) -> Self {
        CodeSpec {
            name: None,
            n,
            a: a.to_vec(),
            b: b.to_vec(),
            ell: None,
            mel: None,
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn with_factors(mut self, ell: usize, mel: usize) -> Self {
        self.ell = Some(ell);
        self.mel = Some(mel);
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut n = None;
        let mut a = None;
        let mut b = None;
        let mut ell = None;
        let mut mel = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected key=value, got {content:?}"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            let perr = |msg: String| Error::Parse { line, msg };
            let dup = || Error::Parse {
                line,
                msg: format!("duplicate key {key:?}"),
            };
            let int = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| perr(format!("{key}: expected a non-negative integer, got {v:?}")))
            };
            match key {
                "name" => {
                    if name.replace(value.to_string()).is_some() {
                        return Err(dup());
                    }
                }
                "N" => {
                    if n.replace(int(value)?).is_some() {
                        return Err(dup());
                    }
                }
                "a" | "b" => {
                    let exps =
                        parse_exponent_list(value).map_err(|m| perr(format!("{key}: {m}")))?;
                    let slot = if key == "a" { &mut a } else { &mut b };
                    if slot.replace(exps).is_some() {
                        return Err(dup());
                    }
                }
                "ell" => {
                    if ell.replace(int(value)?).is_some() {
                        return Err(dup());
                    }
                }
                "mel" | "m" => {
                    if mel.replace(int(value)?).is_some() {
                        return Err(dup());
                    }
                }
                other => return Err(perr(format!("unknown key {other:?}"))),
            }
        }

        let last = text.lines().count().max(1);
        let missing = |k: &str| Error::Parse {
            line: last,
            msg: format!("missing required key {k:?}"),
        };
        let spec = CodeSpec {
            name,
            n: n.ok_or_else(|| missing("N"))?,
            a: a.ok_or_else(|| missing("a"))?,
            b: b.ok_or_else(|| missing("b"))?,
            ell,
            mel,
        };
        if spec.ell.is_some() != spec.mel.is_some() {
            return Err(Error::Parse {
                line: last,
                msg: "ell and mel must be given together".into(),
            });
        }
        Ok(spec)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        let mut spec = Self::parse(&text)?;
        if spec.name.is_none() {
            spec.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        Ok(spec)
    }

    /// `name`, or a name derived from the parameters.
    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("bb{}", self.n))
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| {
            v.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        if let Some(name) = &self.name {
            writeln!(f, "name={name}")?;
        }
        writeln!(f, "N={}", self.n)?;
        writeln!(f, "a={}", list(&self.a))?;
        writeln!(f, "b={}", list(&self.b))?;
        if let (Some(l), Some(m)) = (self.ell, self.mel) {
            writeln!(f, "ell={l}")?;
            writeln!(f, "mel={m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_spec() {
        let text =
            "# Code 1\nname = code1\nN=21\na=0,3,9   # trinomial\nb= 0, 3, 9\nell=3\nmel=7\n";
        let spec = CodeSpec::parse(text).unwrap();
        assert_eq!(
            spec,
            CodeSpec::new(21, &[0, 3, 9], &[0, 3, 9])
                .named("code1")
                .with_factors(3, 7)
        );
        assert_eq!(CodeSpec::parse(&spec.to_string()).unwrap(), spec);
    }

    #[test]
    fn reports_line_numbers() {
        let err = CodeSpec::parse("N=21\n\na=0,3,x\nb=0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = CodeSpec::parse("N=21\nN=23\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = CodeSpec::parse("N=21\ncolour=red\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = CodeSpec::parse("N 21\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        assert!(CodeSpec::parse("N=21\na=0\n").is_err());
        assert!(CodeSpec::parse("N=21\na=0\nb=0\nell=3\n").is_err());
    }
}
