//! Flat `key = value` scenario configs.
//!
//! ```text
//! # two bosons, weak interaction
//! system = boson
//! N = 2
//! ubar = 0.05
//! tau_max = 40
//! steps = 2001
//! initial = right-well
//! channels = avgC_CN, avgC_U
//! ```
//!
//! `initial` is `right-well`, `left-well` or a comma-separated amplitude
//! list in basis order (`0.6, 0.8i, 0`); complex entries use the `a+bi`
//! form. Boson amplitudes are ordered by left-well occupation, fermion pair
//! amplitudes as `(sym, |↑↓,0>, |0,↑↓>)`.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::evolve::{DEFAULT_DTAU, INIT_NORM_TOL};
use crate::fock::Mode;
use crate::hamiltonian::FermionVariant;
use crate::C64;

pub const DEFAULT_TAU_MAX: f64 = 40.0;
pub const DEFAULT_STEPS: usize = 2001;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    Boson,
    Fermion,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Initial {
    RightWell,
    LeftWell,
    Amplitudes(Vec<C64>),
}

/// The two fermion mode pairs studied: opposite spins across the wells, or
/// spin up in both wells.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ModePair {
    #[default]
    UpDown,
    UpUp,
}

impl ModePair {
    pub fn modes(self) -> (Mode, Mode) {
        match self {
            ModePair::UpDown => (Mode::LeftUp, Mode::RightDown),
            ModePair::UpUp => (Mode::LeftUp, Mode::RightUp),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModePair::UpDown => "l-up/r-down",
            ModePair::UpUp => "l-up/r-up",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Integrator {
    #[default]
    Eigen,
    Rk4,
}

impl FromStr for Integrator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "eigen" => Ok(Integrator::Eigen),
            "rk4" => Ok(Integrator::Rk4),
            other => Err(Error::Config(format!("unknown integrator `{other}`"))),
        }
    }
}

impl fmt::Display for Integrator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Integrator::Eigen => "eigen",
            Integrator::Rk4 => "rk4",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub system: System,
    /// Total boson number; unused for fermions.
    pub n: usize,
    pub ubar: f64,
    pub variant: FermionVariant,
    pub tau_max: f64,
    pub steps: usize,
    pub initial: Initial,
    pub mode_pair: ModePair,
    pub integrator: Integrator,
    pub dtau: f64,
    /// Empty means every channel the system provides.
    pub channels: Vec<String>,
    pub out: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn boson(n: usize, ubar: f64) -> Self {
        ScenarioConfig {
            system: System::Boson,
            n,
            ubar,
            variant: FermionVariant::default(),
            tau_max: DEFAULT_TAU_MAX,
            steps: DEFAULT_STEPS,
            initial: Initial::RightWell,
            mode_pair: ModePair::default(),
            integrator: Integrator::default(),
            dtau: DEFAULT_DTAU,
            channels: Vec::new(),
            out: None,
        }
    }

    pub fn fermion(ubar: f64, mode_pair: ModePair) -> Self {
        ScenarioConfig {
            system: System::Fermion,
            n: 2,
            mode_pair,
            ..Self::boson(2, ubar)
        }
    }

    pub fn dim(&self) -> usize {
        match self.system {
            System::Boson => self.n + 1,
            System::Fermion => 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.system == System::Boson && self.n == 0 {
            return bad("N must be at least 1".into());
        }
        if !self.ubar.is_finite() {
            return bad(format!("ubar must be finite, got {}", self.ubar));
        }
        if self.steps < 2 {
            return bad(format!("steps must be at least 2, got {}", self.steps));
        }
        if !(self.tau_max.is_finite() && self.tau_max > 0.0) {
            return bad(format!("tau_max must be positive, got {}", self.tau_max));
        }
        if !(self.dtau.is_finite() && self.dtau > 0.0) {
            return bad(format!("dtau must be positive, got {}", self.dtau));
        }
        if let Initial::Amplitudes(amps) = &self.initial {
            if amps.len() != self.dim() {
                return bad(format!(
                    "expected {} amplitudes, got {}",
                    self.dim(),
                    amps.len()
                ));
            }
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > INIT_NORM_TOL {
                return bad(format!("initial amplitudes have norm {norm}, expected 1"));
            }
        }
        Ok(())
    }

    /// Parses and validates a config file body.
    pub fn parse(text: &str) -> Result<Self> {
        let mut system = None;
        let mut fields: Vec<(usize, &str, &str)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key == "system" {
                system = Some(match value {
                    "boson" => System::Boson,
                    "fermion" => System::Fermion,
                    other => return Err(Error::Config(format!("unknown system `{other}`"))),
                });
            } else {
                fields.push((lineno + 1, key, value));
            }
        }
        let system = system.ok_or_else(|| Error::Config("missing `system`".into()))?;
        let mut cfg = match system {
            System::Boson => ScenarioConfig {
                n: 0,
                ..Self::boson(0, 0.0)
            },
            System::Fermion => Self::fermion(0.0, ModePair::default()),
        };
        let mut seen_ubar = false;
        let mut seen = std::collections::HashSet::new();
        for (lineno, key, value) in fields {
            if !seen.insert(key) {
                return Err(Error::Config(format!(
                    "line {lineno}: duplicate key `{key}`"
                )));
            }
            let err =
                |what: &str| Error::Config(format!("line {lineno}: invalid {what} `{value}`"));
            match (key, system) {
                ("N", System::Boson) => cfg.n = value.parse().map_err(|_| err("N"))?,
                ("ubar", _) => {
                    cfg.ubar = value.parse().map_err(|_| err("ubar"))?;
                    seen_ubar = true;
                }
                ("variant", System::Fermion) => cfg.variant = value.parse()?,
                ("tau_max", _) => cfg.tau_max = value.parse().map_err(|_| err("tau_max"))?,
                ("steps", _) => cfg.steps = value.parse().map_err(|_| err("steps"))?,
                ("initial", _) => cfg.initial = parse_initial(value)?,
                ("mode_pair", System::Fermion) => {
                    cfg.mode_pair = match value {
                        "l-up/r-down" => ModePair::UpDown,
                        "l-up/r-up" => ModePair::UpUp,
                        _ => return Err(err("mode_pair")),
                    }
                }
                ("integrator", _) => cfg.integrator = value.parse()?,
                ("dtau", _) => cfg.dtau = value.parse().map_err(|_| err("dtau"))?,
                ("channels", _) => {
                    cfg.channels = value
                        .split(',')
                        .map(|c| c.trim().to_string())
                        .filter(|c| !c.is_empty())
                        .collect()
                }
                ("out", _) => cfg.out = Some(PathBuf::from(value)),
                _ => {
                    return Err(Error::Config(format!(
                        "line {lineno}: key `{key}` is not valid for this system"
                    )))
                }
            }
        }
        if !seen_ubar {
            return Err(Error::Config("missing `ubar`".into()));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Canonical text form; parsing it yields the same config.
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let boson = self.system == System::Boson;
        let _ = writeln!(s, "system = {}", if boson { "boson" } else { "fermion" });
        if boson {
            let _ = writeln!(s, "N = {}", self.n);
        }
        let _ = writeln!(s, "ubar = {:?}", self.ubar);
        if !boson {
            let _ = writeln!(s, "variant = {}", self.variant);
            let _ = writeln!(s, "mode_pair = {}", self.mode_pair.as_str());
        }
        let _ = writeln!(s, "tau_max = {:?}", self.tau_max);
        let _ = writeln!(s, "steps = {}", self.steps);
        let initial = match &self.initial {
            Initial::RightWell => "right-well".to_string(),
            Initial::LeftWell => "left-well".to_string(),
            Initial::Amplitudes(a) => a.iter().map(format_complex).collect::<Vec<_>>().join(", "),
        };
        let _ = writeln!(s, "initial = {initial}");
        let _ = writeln!(s, "integrator = {}", self.integrator);
        let _ = writeln!(s, "dtau = {:?}", self.dtau);
        if !self.channels.is_empty() {
            let _ = writeln!(s, "channels = {}", self.channels.join(", "));
        }
        if let Some(out) = &self.out {
            let _ = writeln!(s, "out = {}", out.display());
        }
        s
    }
}

fn format_complex(z: &C64) -> String {
    // Debug formatting of f64 is the shortest string that round-trips.
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else if z.im < 0.0 {
        format!("{:?}-{:?}i", z.re, -z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}

fn parse_initial(value: &str) -> Result<Initial> {
    match value {
        "right-well" => return Ok(Initial::RightWell),
        "left-well" => return Ok(Initial::LeftWell),
        _ => {}
    }
    value
        .split(',')
        .map(|tok| {
            let tok: String = tok.chars().filter(|c| !c.is_whitespace()).collect();
            tok.parse::<C64>()
                .map_err(|_| Error::Config(format!("invalid amplitude `{tok}`")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Initial::Amplitudes)
}
