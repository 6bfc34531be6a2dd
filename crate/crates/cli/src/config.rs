use std::fmt;
use std::str::FromStr;

use qtangent::closedform::SearchBox;
use serde::{Serialize, Serializer};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown format `{0}`")]
    UnknownFormat(String),
    #[error("invalid box spec `{0}`: {1}")]
    InvalidBox(String, &'static str),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("search box is empty")]
    EmptyBox,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Pairs,
    Quotients,
    Oracle,
    Contfrac,
    Conjectures,
    Divisibility,
    Limits,
    All,
}

impl Suite {
    /// Concrete suites in the order `all` runs them.
    pub const EACH: [Suite; 7] = [
        Suite::Pairs,
        Suite::Quotients,
        Suite::Oracle,
        Suite::Limits,
        Suite::Contfrac,
        Suite::Conjectures,
        Suite::Divisibility,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pairs => "pairs",
            Suite::Quotients => "quotients",
            Suite::Oracle => "oracle",
            Suite::Contfrac => "contfrac",
            Suite::Conjectures => "conjectures",
            Suite::Divisibility => "divisibility",
            Suite::Limits => "limits",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(ConfigError::UnknownFormat(s.to_string())),
        }
    }
}

/// Exponent ranges, written `A:lo:hi,B:lo:hi,C:lo:hi,D:lo:hi`.
///
/// Letters may come in any order; omitted letters keep their default range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxSpec(pub SearchBox);

impl Default for BoxSpec {
    fn default() -> Self {
        BoxSpec(SearchBox::DEFAULT)
    }
}

impl FromStr for BoxSpec {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let bad = |why| ConfigError::InvalidBox(s.to_string(), why);
        let mut bx = SearchBox::DEFAULT;
        let mut seen = [false; 4];
        for part in s.split(',') {
            let mut it = part.trim().split(':');
            let (Some(letter), Some(lo), Some(hi), None) =
                (it.next(), it.next(), it.next(), it.next())
            else {
                return Err(bad("expected LETTER:lo:hi"));
            };
            let lo: i64 = lo
                .trim()
                .parse()
                .map_err(|_| bad("bound is not an integer"))?;
            let hi: i64 = hi
                .trim()
                .parse()
                .map_err(|_| bad("bound is not an integer"))?;
            if lo > hi {
                return Err(bad("lower bound exceeds upper bound"));
            }
            if lo.abs() > 64 || hi.abs() > 64 {
                return Err(bad("bounds must lie in -64..=64"));
            }
            let (slot, idx) = match letter.trim() {
                "A" | "a" => (&mut bx.a, 0),
                "B" | "b" => (&mut bx.b, 1),
                "C" | "c" => (&mut bx.c, 2),
                "D" | "d" => (&mut bx.d, 3),
                _ => return Err(bad("letter must be one of A, B, C, D")),
            };
            if std::mem::replace(&mut seen[idx], true) {
                return Err(bad("letter given twice"));
            }
            *slot = (lo, hi);
        }
        Ok(BoxSpec(bx))
    }
}

impl fmt::Display for BoxSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.0;
        write!(
            f,
            "A:{}:{},B:{}:{},C:{}:{},D:{}:{}",
            b.a.0, b.a.1, b.b.0, b.b.1, b.c.0, b.c.1, b.d.0, b.d.1
        )
    }
}

impl Serialize for BoxSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Series order `N` in `z`.
    pub order: usize,
    /// Largest word length or polynomial index.
    pub max_n: usize,
    /// Oracle alphabet cutoff `M`.
    pub cutoff: usize,
    #[serde(rename = "box")]
    pub search_box: BoxSpec,
    /// Continued-fraction depth.
    pub depth: usize,
    pub format: Format,
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            order: 12,
            max_n: 9,
            cutoff: 14,
            search_box: BoxSpec::default(),
            depth: 6,
            format: Format::Json,
            jobs: 1,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (v, name) in [
            (self.order, "order"),
            (self.max_n, "max-n"),
            (self.cutoff, "cutoff"),
            (self.depth, "depth"),
            (self.jobs, "jobs"),
        ] {
            if v == 0 {
                return Err(ConfigError::NonPositive(name));
            }
        }
        if self.search_box.0.is_empty() {
            return Err(ConfigError::EmptyBox);
        }
        Ok(())
    }
}
