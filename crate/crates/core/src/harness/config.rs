//! Suite configuration: `key = value` files, flag overlays, validation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalars::{Colour, Model, C64};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_ORDER: u32 = 5;
pub const DEFAULT_SAMPLES: usize = 20;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_COLOURS: &str = "1,2,-1,1/2";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Ybe,
    Rtt,
    Axioms,
    Duality,
    Tmatrix,
    Appendix,
    Relations,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Ybe, Suite::Rtt, Suite::Axioms, Suite::Duality, Suite::Tmatrix, Suite::Appendix, Suite::Relations];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ybe => "ybe",
            Suite::Rtt => "rtt",
            Suite::Axioms => "axioms",
            Suite::Duality => "duality",
            Suite::Tmatrix => "tmatrix",
            Suite::Appendix => "appendix",
            Suite::Relations => "relations",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or(Error::UnknownIdentifier(s))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Explicit (θ, φ) sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSpec {
    pub theta: C64,
    pub phi: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub model: Model,
    pub suites: Vec<Suite>,
    pub samples: usize,
    pub seed: u64,
    pub order: u32,
    pub tol: f64,
    pub colours: Vec<Colour>,
    pub points: Vec<PointSpec>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            model: Model::Gl2,
            suites: Suite::ALL.to_vec(),
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            order: DEFAULT_ORDER,
            tol: DEFAULT_TOL,
            colours: parse_colours(DEFAULT_COLOURS).expect("default colours"),
            points: Vec::new(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config { line: 0, msg: msg.to_string() });
        if self.samples == 0 {
            return bad("samples must be at least 1");
        }
        if !(self.tol > 0.0) {
            return bad("tol must be positive");
        }
        if self.colours.is_empty() {
            return bad("colours list is empty");
        }
        if self.suites.is_empty() {
            return bad("suite list is empty");
        }
        if self.order < 2 {
            return bad("order must be at least 2");
        }
        Ok(())
    }

    /// Number of parameter points the run visits.
    pub fn point_count(&self) -> usize {
        if self.points.is_empty() {
            self.samples
        } else {
            self.points.len()
        }
    }
}

/// Raw `key = value` settings with the line each came from (0 for flags).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    entries: Vec<(String, String, usize)>,
}

pub const KEYS: [&str; 9] = ["model", "suite", "samples", "seed", "order", "tol", "colours", "params", "report"];

impl RawConfig {
    /// Parses a config file; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = RawConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config { line: i + 1, msg: format!("expected `key = value`, got `{line}`") })?;
            let k = normalise_key(k);
            if !KEYS.contains(&k.as_str()) {
                return Err(Error::Config { line: i + 1, msg: format!("unknown key `{k}`") });
            }
            raw.set_at(&k, v.trim(), i + 1);
        }
        Ok(raw)
    }

    fn set_at(&mut self, key: &str, value: &str, line: usize) {
        self.entries.retain(|(k, _, _)| k != key);
        self.entries.push((key.to_string(), value.to_string(), line));
    }

    /// Flag overlay: replaces any file value.
    pub fn set(&mut self, key: &str, value: &str) {
        self.set_at(&normalise_key(key), value, 0);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _, _)| k == key).map(|(_, v, _)| v.as_str())
    }

    fn line(&self, key: &str) -> usize {
        self.entries.iter().find(|(k, _, _)| k == key).map(|(_, _, l)| *l).unwrap_or(0)
    }

    /// Builds a validated config; unset keys take the defaults.
    pub fn build(&self) -> Result<SuiteConfig> {
        let mut cfg = SuiteConfig::default();
        let err = |key: &str, msg: String| Error::Config { line: self.line(key), msg: format!("{key}: {msg}") };
        if let Some(v) = self.get("model") {
            cfg.model = v.parse().map_err(|e: Error| err("model", e.to_string()))?;
        }
        if let Some(v) = self.get("suite") {
            cfg.suites = parse_suites(v).map_err(|e| err("suite", e.to_string()))?;
        }
        if let Some(v) = self.get("samples") {
            cfg.samples = v.parse().map_err(|_| err("samples", format!("not a count: `{v}`")))?;
        }
        if let Some(v) = self.get("seed") {
            cfg.seed = v.parse().map_err(|_| err("seed", format!("not a 64-bit integer: `{v}`")))?;
        }
        if let Some(v) = self.get("order") {
            cfg.order = v.parse().map_err(|_| err("order", format!("not a count: `{v}`")))?;
        }
        if let Some(v) = self.get("tol") {
            cfg.tol = v.parse().map_err(|_| err("tol", format!("not a number: `{v}`")))?;
        }
        if let Some(v) = self.get("colours") {
            cfg.colours = parse_colours(v).map_err(|e| err("colours", e.to_string()))?;
        }
        if let Some(v) = self.get("params") {
            cfg.points = parse_points(v).map_err(|e| err("params", e.to_string()))?;
        }
        cfg.validate().map_err(|e| match e {
            Error::Config { msg, .. } => {
                let key = ["samples", "tol", "colours", "suite", "order"].into_iter().find(|k| msg.starts_with(k)).unwrap_or("");
                Error::Config { line: self.line(key), msg }
            }
            other => other,
        })?;
        Ok(cfg)
    }
}

fn normalise_key(k: &str) -> String {
    let k = k.trim().trim_start_matches("--").to_ascii_lowercase().replace('_', "-");
    match k.as_str() {
        "colors" => "colours".into(),
        "suites" => "suite".into(),
        _ => k,
    }
}

pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out: Vec<Suite> = s.split(',').filter(|x| !x.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Comma-separated nonzero rationals; an empty list is returned as such and
/// rejected later by validation.
pub fn parse_colours(s: &str) -> Result<Vec<Colour>> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(str::parse).collect()
}

pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    t.parse::<C64>().map_err(|_| Error::Config { line: 0, msg: format!("not a complex number: `{s}`") })
}

/// `theta=..,phi=..` groups separated by `;`.
pub fn parse_points(s: &str) -> Result<Vec<PointSpec>> {
    let mut out = Vec::new();
    for group in s.split(';').map(str::trim).filter(|g| !g.is_empty()) {
        let (mut theta, mut phi) = (None, None);
        for kv in group.split(',') {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Config { line: 0, msg: format!("expected `name=value`, got `{kv}`") })?;
            match k.trim() {
                "theta" => theta = Some(parse_complex(v)?),
                "phi" => phi = Some(parse_complex(v)?),
                other => return Err(Error::UnknownIdentifier(other.to_string())),
            }
        }
        match (theta, phi) {
            (Some(theta), Some(phi)) => out.push(PointSpec { theta, phi }),
            _ => return Err(Error::Config { line: 0, msg: format!("point `{group}` needs theta and phi") }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let cfg = RawConfig::default().build().unwrap();
        assert_eq!(cfg.tol, 1e-9);
        assert_eq!(cfg.order, 5);
        assert_eq!(cfg.samples, 20);
        assert_eq!(cfg.colours.len(), 4);
        assert_eq!(cfg.suites.len(), 7);
    }

    #[test]
    fn file_then_flags() {
        let mut raw = RawConfig::parse("# run\nmodel = gl11\nsamples = 3\ncolours = 1, 2\n").unwrap();
        raw.set("samples", "7");
        let cfg = raw.build().unwrap();
        assert_eq!(cfg.model, Model::Gl11);
        assert_eq!(cfg.samples, 7);
        assert_eq!(cfg.colours, vec![Colour::int(1), Colour::int(2)]);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(RawConfig::parse("model = gl2\nbogus line").unwrap_err(), Error::Config {
            line: 2,
            msg: "expected `key = value`, got `bogus line`".into()
        });
        let raw = RawConfig::parse("seed = 1\ncolours = \n").unwrap();
        assert!(matches!(raw.build(), Err(Error::Config { line: 2, .. })));
        let raw = RawConfig::parse("tol = -1").unwrap();
        assert!(matches!(raw.build(), Err(Error::Config { line: 1, .. })));
        assert!(matches!(RawConfig::parse("speed = 1"), Err(Error::Config { line: 1, .. })));
    }

    #[test]
    fn zero_colour_rejected() {
        let raw = RawConfig::parse("colours = 1,0").unwrap();
        assert!(raw.build().is_err());
    }

    #[test]
    fn points_and_suites() {
        let p = parse_points("theta=0.3+0.1i,phi=-0.2; theta=0,phi=0.5i").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[1].phi, C64::new(0.0, 0.5));
        assert_eq!(parse_suites("rtt,ybe,rtt").unwrap(), vec![Suite::Ybe, Suite::Rtt]);
        assert!(parse_suites("ybe,nope").is_err());
    }
}
