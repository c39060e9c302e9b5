//! Argument types and input validation shared by the subcommands.

use std::fmt;
use std::ops::RangeInclusive;
use std::path::Path;
use std::str::FromStr;

use ybhom::biquandle::{from_builtin, make_cyclic, YBMap};
use ybhom::complex::Variant;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// Inclusive degree range written `A..B`, `A..=B` or `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeRange {
    pub start: usize,
    pub end: usize,
}

impl DegreeRange {
    pub fn degrees(&self) -> RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid degree `{t}` in `{s}`"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if start == 0 {
            return Err("degrees start at 1".into());
        }
        if start > end {
            return Err(format!("empty degree range `{s}`"));
        }
        Ok(DegreeRange { start, end })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantSel {
    One(Variant),
    All,
}

impl VariantSel {
    pub fn variants(&self) -> Vec<Variant> {
        match self {
            VariantSel::One(v) => vec![*v],
            VariantSel::All => Variant::ALL.to_vec(),
        }
    }
}

impl FromStr for VariantSel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            Ok(VariantSel::All)
        } else {
            s.parse().map(VariantSel::One)
        }
    }
}

/// An operator named on the command line, either a builtin specifier or a
/// JSON table file.
#[derive(Clone, Debug)]
pub struct Operator {
    pub spec: String,
    pub map: YBMap,
}

impl Operator {
    pub fn load(spec: &str) -> Result<Self, CliError> {
        let trimmed = spec.trim();
        let is_builtin = trimmed.starts_with("cyclic:") || trimmed.starts_with("alexander:");
        let map = if is_builtin {
            from_builtin(trimmed).map_err(|e| CliError::Input(format!("{spec}: {e}")))?.into_map()
        } else {
            let text = std::fs::read_to_string(trimmed)
                .map_err(|e| CliError::Input(format!("cannot read biquandle file {trimmed}: {e}")))?;
            YBMap::from_json(&text).map_err(|e| CliError::Input(format!("{trimmed}: {e}")))?
        };
        Ok(Operator { spec: trimmed.to_string(), map })
    }

    pub fn m(&self) -> usize {
        self.map.size()
    }

    /// Filesystem-safe name used for exported files.
    pub fn label(&self) -> String {
        if self.spec.starts_with("cyclic:") || self.spec.starts_with("alexander:") {
            self.spec.replace(':', "-")
        } else {
            Path::new(&self.spec)
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "operator".into())
        }
    }

    /// Homology needs a Yang-Baxter operator; the normalized variants also
    /// need the diagonal condition.
    pub fn require_complex(&self, variants: &[Variant]) -> Result<(), CliError> {
        let cert = self.map.certification();
        if !cert.is_yb_operator() {
            let (axiom, witness) = cert.first_failure().expect("a failing axiom");
            return Err(CliError::Input(format!(
                "{}: not a Yang-Baxter operator ({axiom} fails at {witness:?})",
                self.spec
            )));
        }
        if variants.iter().any(|v| *v != Variant::YB) && !cert.diagonal.passed() {
            return Err(CliError::Input(format!(
                "{}: the D and NYB complexes need a unique fixed pair per element",
                self.spec
            )));
        }
        Ok(())
    }

    /// The size of a cyclic biquandle, if this is one.
    pub fn cyclic_size(&self) -> Option<usize> {
        let m = self.m();
        (make_cyclic(m).map() == &self.map).then_some(m)
    }
}

/// Rejects work whose largest chain group exceeds the entry budget.
pub fn check_budget(m: usize, top_degree: usize, max_entries: usize, what: &str) -> Result<(), CliError> {
    let size = (m as u128).checked_pow(top_degree as u32);
    match size {
        Some(s) if s <= max_entries as u128 => Ok(()),
        _ => Err(CliError::Budget(format!(
            "{what} needs {m}^{top_degree} generators, above the limit of {max_entries} (raise --budget-entries)"
        ))),
    }
}
