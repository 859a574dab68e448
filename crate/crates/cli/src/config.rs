//! Run configuration: defaults, a flat `key = value` file, then flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(CliError::Usage(format!("output must be json or csv, got `{s}`"))),
        }
    }
}

/// Settings shared by all commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub q: f64,
    pub precision_bits: u32,
    /// Number of basis states of the default `l^2` window.
    pub window: usize,
    pub tol: f64,
    pub m_min: i64,
    pub m_max: i64,
    /// `None` lets each command pick its natural format.
    pub output: Option<OutputFormat>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            q: 0.7,
            precision_bits: 53,
            window: 512,
            tol: 1e-12,
            m_min: -3,
            m_max: 3,
            output: None,
        }
    }
}

/// Flag values; `None` keeps the file or default value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub q: Option<f64>,
    pub precision_bits: Option<u32>,
    pub window: Option<usize>,
    pub tol: Option<f64>,
    pub m_min: Option<i64>,
    pub m_max: Option<i64>,
    pub output: Option<OutputFormat>,
}

fn value<T: FromStr>(key: &str, v: &str, line: usize) -> Result<T, CliError> {
    v.parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: invalid value `{v}` for `{key}`")))
}

impl RunConfig {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, v)) = body.split_once('=') else {
                return Err(CliError::Usage(format!("config line {line}: expected `key = value`")));
            };
            let (key, v) = (key.trim(), v.trim());
            match key {
                "q" => cfg.q = value(key, v, line)?,
                "precision_bits" => cfg.precision_bits = value(key, v, line)?,
                "window" => cfg.window = value(key, v, line)?,
                "tol" => cfg.tol = value(key, v, line)?,
                "m_min" => cfg.m_min = value(key, v, line)?,
                "m_max" => cfg.m_max = value(key, v, line)?,
                "output" => cfg.output = Some(v.parse()?),
                _ => return Err(CliError::Usage(format!("config line {line}: unknown key `{key}`"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn apply(mut self, o: &Overrides) -> Result<Self, CliError> {
        if let Some(v) = o.q {
            self.q = v;
        }
        if let Some(v) = o.precision_bits {
            self.precision_bits = v;
        }
        if let Some(v) = o.window {
            self.window = v;
        }
        if let Some(v) = o.tol {
            self.tol = v;
        }
        if let Some(v) = o.m_min {
            self.m_min = v;
        }
        if let Some(v) = o.m_max {
            self.m_max = v;
        }
        if o.output.is_some() {
            self.output = o.output;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Usage(m));
        if !(self.q > 0.0 && self.q < 1.0) {
            return bad(format!("q = {} must lie in (0, 1)", self.q));
        }
        if self.precision_bits < 53 {
            return bad(format!("precision_bits = {} must be at least 53", self.precision_bits));
        }
        if self.window < 2 {
            return bad(format!("window = {} must be at least 2", self.window));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad(format!("tol = {} must be positive", self.tol));
        }
        if self.m_min > self.m_max {
            return bad(format!("empty lattice [{}, {}]", self.m_min, self.m_max));
        }
        Ok(())
    }

    /// Full-line window of `window` states centred at the origin.
    pub fn basis_window(&self) -> Result<reps::BasisWindow, CliError> {
        let half = (self.window / 2) as i64;
        let lo = -half;
        let hi = lo + self.window as i64 - 1;
        Ok(reps::BasisWindow::full(lo, hi)?)
    }

    pub fn lattice(&self) -> Result<plancherel::MomentumLattice, CliError> {
        Ok(plancherel::MomentumLattice::new(self.m_min, self.m_max, self.q)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let cfg = RunConfig::parse("# run\nq = 0.5\n\nwindow=64 # small\noutput = csv\nm_min = -1\n").unwrap();
        assert_eq!(cfg.q, 0.5);
        assert_eq!(cfg.window, 64);
        assert_eq!(cfg.output, Some(OutputFormat::Csv));
        assert_eq!(cfg.m_min, -1);
        assert_eq!(cfg.tol, 1e-12);
        let o = Overrides {
            q: Some(0.9),
            ..Default::default()
        };
        let cfg = cfg.apply(&o).unwrap();
        assert_eq!((cfg.q, cfg.window), (0.9, 64));
    }

    #[test]
    fn invalid_values_are_rejected() {
        for text in ["q = 1.5", "q = x", "precision_bits = 20", "colour = red", "q 0.5", "m_min = 4\nm_max = 3"] {
            assert!(RunConfig::parse(text).is_err(), "{text}");
        }
        let o = Overrides {
            tol: Some(-1.0),
            ..Default::default()
        };
        assert!(RunConfig::default().apply(&o).is_err());
    }

    #[test]
    fn default_window_is_centred() {
        let w = RunConfig::default().basis_window().unwrap();
        assert_eq!((w.lo, w.hi), (-256, 255));
    }
}
