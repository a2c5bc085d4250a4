//! Plain-text parameter files.
//!
//! One `key: value` pair per line; blank lines and lines starting with `#`
//! are ignored. Keys are `moduli`, `N`, `g_indices`, `h_indices` and `case`,
//! each exactly once. Lists are comma-separated decimal integers, and
//! indices are 1-based positions in the ascending moduli list. `g_indices`
//! may be empty.

use std::fmt;

use num_bigint::BigUint;
use rns_barrett::{ModuliSet, RangeCase, RnsBarrettContext};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamFile {
    pub moduli: Vec<u64>,
    pub n: BigUint,
    /// 1-based
    pub g_indices: Vec<usize>,
    /// 1-based
    pub h_indices: Vec<usize>,
    pub case: RangeCase,
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, String> {
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|item| {
            let item = item.trim();
            item.parse()
                .map_err(|_| format!("{key}: invalid entry '{item}'"))
        })
        .collect()
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl ParamFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut moduli = None;
        let mut n = None;
        let mut g = None;
        let mut h = None;
        let mut case = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| CliError::Parse(format!("line {}: {msg}", lineno + 1));
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| err(format!("expected 'key: value', got '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            let duplicate = match key {
                "moduli" => moduli
                    .replace(parse_list::<u64>(key, value).map_err(err)?)
                    .is_some(),
                "N" => {
                    let v: BigUint = value
                        .parse()
                        .map_err(|_| err(format!("N: invalid value '{value}'")))?;
                    n.replace(v).is_some()
                }
                "g_indices" => g
                    .replace(parse_list::<usize>(key, value).map_err(err)?)
                    .is_some(),
                "h_indices" => h
                    .replace(parse_list::<usize>(key, value).map_err(err)?)
                    .is_some(),
                "case" => {
                    let c: RangeCase = value
                        .parse()
                        .map_err(|_| err(format!("case: invalid value '{value}'")))?;
                    case.replace(c).is_some()
                }
                other => return Err(err(format!("unknown key '{other}'"))),
            };
            if duplicate {
                return Err(err(format!("duplicate key '{key}'")));
            }
        }
        let missing = |key: &str| CliError::Parse(format!("missing key '{key}'"));
        let file = Self {
            moduli: moduli.ok_or_else(|| missing("moduli"))?,
            n: n.ok_or_else(|| missing("N"))?,
            g_indices: g.ok_or_else(|| missing("g_indices"))?,
            h_indices: h.ok_or_else(|| missing("h_indices"))?,
            case: case.ok_or_else(|| missing("case"))?,
        };
        if !file.moduli.windows(2).all(|w| w[0] < w[1]) {
            return Err(CliError::Parse("moduli must be strictly ascending".into()));
        }
        let count = file.moduli.len();
        for &i in file.g_indices.iter().chain(&file.h_indices) {
            if i == 0 || i > count {
                return Err(CliError::Parse(format!("index {i} is outside 1..={count}")));
            }
        }
        Ok(file)
    }

    pub fn from_context(ctx: &RnsBarrettContext) -> Self {
        Self {
            moduli: ctx.moduli_set().moduli().to_vec(),
            n: ctx.modulus().clone(),
            g_indices: ctx.g_indices().iter().map(|i| i + 1).collect(),
            h_indices: ctx.h_indices().iter().map(|i| i + 1).collect(),
            case: ctx.case(),
        }
    }

    pub fn to_context(&self) -> Result<RnsBarrettContext, CliError> {
        let ms = ModuliSet::new(&self.moduli)?;
        let zero_based = |idx: &[usize]| idx.iter().map(|i| i - 1).collect::<Vec<_>>();
        Ok(RnsBarrettContext::new(
            &ms,
            self.n.clone(),
            &zero_based(&self.g_indices),
            &zero_based(&self.h_indices),
            self.case,
        )?)
    }
}

impl fmt::Display for ParamFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "moduli: {}", join(&self.moduli))?;
        writeln!(f, "N: {}", self.n)?;
        writeln!(f, "g_indices: {}", join(&self.g_indices))?;
        writeln!(f, "h_indices: {}", join(&self.h_indices))?;
        writeln!(f, "case: {}", self.case.number())
    }
}
