use std::collections::BTreeMap;
use std::io::Write;

use qtangent::qalg::{QPoly, QRat, ZSeries};
use serde::Serialize;

use crate::config::{Format, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_order: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn new(suite: &'static str, name: impl Into<String>) -> Self {
        Self {
            suite,
            name: name.into(),
            params: BTreeMap::new(),
            status: Status::Pass,
            residual_order: None,
            witness: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn fail(mut self, order: Option<i64>, witness: impl ToString) -> Self {
        self.status = Status::Fail;
        self.residual_order = order;
        self.witness = Some(witness.to_string());
        self
    }

    pub fn error(mut self, e: impl ToString) -> Self {
        self.status = Status::Error;
        self.residual_order = None;
        self.witness = Some(e.to_string());
        self
    }

    /// Pass iff the series is zero; otherwise report its first nonzero `z`-coefficient.
    pub fn series(self, residual: &ZSeries) -> Self {
        match residual.first_nonzero() {
            None => self,
            Some(k) => self.fail(Some(k as i64), residual.coeff(k)),
        }
    }

    /// Pass iff the polynomial is zero; otherwise report it with its `q`-order.
    pub fn poly(self, residual: &QPoly) -> Self {
        match residual.low_order() {
            None => self,
            Some(k) => self.fail(Some(k as i64), residual),
        }
    }

    /// Pass iff the rational function is zero; the order is that of its Laurent expansion.
    pub fn qrat(self, residual: &QRat) -> Self {
        if residual.is_zero() {
            return self;
        }
        let ord = |p: &QPoly| p.low_order().unwrap_or(0) as i64;
        self.fail(Some(ord(residual.num()) - ord(residual.den())), residual)
    }

    pub fn check<T, E: ToString>(self, r: Result<T, E>, f: impl FnOnce(Self, T) -> Self) -> Self {
        match r {
            Ok(v) => f(self, v),
            Err(e) => self.error(e),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub config: SuiteConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: SuiteConfig, results: Vec<CheckResult>) -> Self {
        let mut summary = Summary::default();
        for r in &results {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Error => summary.error += 1,
            }
        }
        Self {
            suite: config.suite.name(),
            config,
            results,
            summary,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }
}

fn params_text(p: &BTreeMap<String, String>) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn emit_report(report: &Report, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .quote_style(csv::QuoteStyle::NonNumeric)
                .from_writer(out);
            w.write_record([
                "suite",
                "name",
                "params",
                "status",
                "residual_order",
                "witness",
            ])?;
            for r in &report.results {
                w.write_record([
                    r.suite.to_string(),
                    r.name.clone(),
                    params_text(&r.params),
                    r.status.name().to_string(),
                    r.residual_order.map(|o| o.to_string()).unwrap_or_default(),
                    r.witness.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()
        }
    }
}
