//! Report records and their JSON-lines rendering.
//!
//! One JSON object per line, fields in this order:
//! `suite, relation, model, sample, theta, phi, lambda, mu, nu, residual, pass`.
//! `theta`/`phi` are `[re, im]`; colours are rational strings or `null` when a
//! check does not use that slot. A summary table follows, each line starting
//! with `# `.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::config::Suite;
use crate::error::{Error, Result};
use crate::scalars::{Colour, Model, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub suite: Suite,
    pub relation: String,
    pub model: Model,
    pub sample: usize,
    pub theta: C64,
    pub phi: C64,
    pub lambda: Option<Colour>,
    pub mu: Option<Colour>,
    pub nu: Option<Colour>,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub records: Vec<Record>,
    /// Checks left out because the colours made them degenerate.
    pub skipped: usize,
}

#[derive(Serialize)]
struct Line<'a> {
    suite: &'static str,
    relation: &'a str,
    model: &'static str,
    sample: usize,
    theta: [f64; 2],
    phi: [f64; 2],
    lambda: Option<String>,
    mu: Option<String>,
    nu: Option<String>,
    residual: f64,
    pass: bool,
}

impl Record {
    pub fn to_json(&self) -> String {
        let s = |c: Option<Colour>| c.map(|c| c.to_string());
        let line = Line {
            suite: self.suite.name(),
            relation: &self.relation,
            model: self.model.name(),
            sample: self.sample,
            theta: [self.theta.re, self.theta.im],
            phi: [self.phi.re, self.phi.im],
            lambda: s(self.lambda),
            mu: s(self.mu),
            nu: s(self.nu),
            residual: self.residual,
            pass: self.pass,
        };
        serde_json::to_string(&line).expect("plain record")
    }
}

/// Per-relation tally for the summary table.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Tally {
    pub checks: usize,
    pub failed: usize,
    pub max_residual: f64,
}

impl Report {
    /// Orders by suite, relation, sample; ties keep run order.
    pub fn sort(&mut self) {
        self.records.sort_by(|a, b| (a.suite, &a.relation, a.sample).cmp(&(b.suite, &b.relation, b.sample)));
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.pass).count()
    }

    pub fn tallies(&self) -> BTreeMap<(Suite, String), Tally> {
        let mut out: BTreeMap<(Suite, String), Tally> = BTreeMap::new();
        for r in &self.records {
            let t = out.entry((r.suite, r.relation.clone())).or_default();
            t.checks += 1;
            t.failed += usize::from(!r.pass);
            t.max_residual = t.max_residual.max(r.residual);
        }
        out
    }

    pub fn summary(&self) -> String {
        let tallies = self.tallies();
        let w = tallies.keys().map(|(_, r)| r.len()).max().unwrap_or(0).max(8);
        let mut s = format!("# {:<9} {:<w$} {:>7} {:>6} {:>12}\n", "suite", "relation", "checks", "failed", "max-resid");
        for ((suite, rel), t) in &tallies {
            s += &format!("# {:<9} {:<w$} {:>7} {:>6} {:>12.3e}\n", suite.name(), rel, t.checks, t.failed, t.max_residual);
        }
        s += &format!("# total {} checks, {} failed, {} skipped (degenerate colours)\n", self.records.len(), self.failures(), self.skipped);
        s
    }

    pub fn emit<W: Write>(&self, sink: &mut W) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(e.to_string());
        for r in &self.records {
            writeln!(sink, "{}", r.to_json()).map_err(io)?;
        }
        sink.write_all(self.summary().as_bytes()).map_err(io)?;
        sink.flush().map_err(io)
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.emit(&mut buf).expect("in-memory sink");
        String::from_utf8(buf).expect("utf-8 report")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(pass: bool) -> Record {
        Record {
            suite: Suite::Ybe,
            relation: "coloured-ybe".into(),
            model: Model::Gl2,
            sample: 0,
            theta: C64::new(0.5, -0.25),
            phi: C64::new(0.0, 1.0),
            lambda: Some(Colour::frac(1, 2)),
            mu: Some(Colour::int(-1)),
            nu: None,
            residual: if pass { 1e-15 } else { 1e-3 },
            pass,
        }
    }

    #[test]
    fn empty_report_is_header_only() {
        let t = Report::default().to_text();
        let lines: Vec<_> = t.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines.iter().all(|l| l.starts_with("# ")));
    }

    #[test]
    fn single_record_line() {
        let r = Report { records: vec![rec(true)], skipped: 0 };
        let t = r.to_text();
        let first = t.lines().next().unwrap();
        assert_eq!(
            first,
            r#"{"suite":"ybe","relation":"coloured-ybe","model":"gl2","sample":0,"theta":[0.5,-0.25],"phi":[0.0,1.0],"lambda":"1/2","mu":"-1","nu":null,"residual":1e-15,"pass":true}"#
        );
        assert!(r.all_pass());
    }

    #[test]
    fn failures_counted() {
        let r = Report { records: vec![rec(true), rec(false)], skipped: 3 };
        assert_eq!(r.failures(), 1);
        assert!(!r.all_pass());
        assert!(r.summary().contains("2 checks, 1 failed, 3 skipped"));
        let t = r.tallies()[&(Suite::Ybe, "coloured-ybe".to_string())];
        assert_eq!((t.checks, t.failed, t.max_residual), (2, 1, 1e-3));
    }
}
