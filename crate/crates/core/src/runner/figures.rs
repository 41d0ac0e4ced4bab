//! Figure presets. Each preset expands into subplot CSVs (`fig1a.csv`, ...).

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::observe::TimeSeries;

use super::config::{Integrator, ModePair, ScenarioConfig};
use super::{simulate, write_csv_file};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Figure(u8);

impl Figure {
    pub fn number(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Figure> {
        (1..=11).map(Figure)
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix("fig")
            .and_then(|n| n.parse::<u8>().ok())
            .filter(|n| (1..=11).contains(n))
            .map(Figure)
            .ok_or_else(|| {
                Error::InvalidArgument(format!("unknown figure `{s}`, expected fig1..fig11"))
            })
    }
}

/// Grid and integrator overrides applied to every scenario of a preset.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Overrides {
    pub tau_max: Option<f64>,
    pub steps: Option<usize>,
    pub integrator: Option<Integrator>,
}

impl Overrides {
    fn apply(&self, mut cfg: ScenarioConfig) -> ScenarioConfig {
        if let Some(t) = self.tau_max {
            cfg.tau_max = t;
        }
        if let Some(s) = self.steps {
            cfg.steps = s;
        }
        if let Some(i) = self.integrator {
            cfg.integrator = i;
        }
        cfg
    }
}

/// One subplot: a suffix letter and its series.
pub struct Panel {
    pub name: String,
    pub series: TimeSeries,
}

fn single(cfg: ScenarioConfig, channel: &str, ov: &Overrides) -> Result<TimeSeries> {
    let mut cfg = ov.apply(cfg);
    cfg.channels = vec![channel.to_string()];
    simulate(&cfg)
}

/// Same channel for two interaction strengths, columns suffixed by `Ū`.
fn sweep(
    make: impl Fn(f64) -> ScenarioConfig,
    channel: &str,
    ubars: [f64; 2],
    ov: &Overrides,
) -> Result<TimeSeries> {
    let mut out: Option<TimeSeries> = None;
    for ubar in ubars {
        let ts = single(make(ubar), channel, ov)?;
        let values = ts.get(channel).expect("requested channel").to_vec();
        let target = out.get_or_insert_with(|| TimeSeries::new(ts.tau().to_vec()));
        target.push(format!("{channel}_ubar{ubar}"), values)?;
    }
    Ok(out.expect("two interaction strengths"))
}

pub fn panels(fig: Figure, ov: &Overrides) -> Result<Vec<Panel>> {
    let n = fig.number();
    let mut out = Vec::new();
    let mut push = |letter: char, series: TimeSeries| {
        out.push(Panel {
            name: format!("fig{n}{letter}"),
            series,
        });
    };
    match n {
        1..=4 => {
            let ubar = if n % 2 == 1 { 0.05 } else { 5.0 };
            let (cn, u) = if n <= 2 {
                ("avgC_CN", "avgC_U")
            } else {
                ("avgS_CN", "avgS_U")
            };
            let letters = ['a', 'b', 'c', 'd', 'e', 'f'];
            let mut k = 0;
            for channel in [cn, u] {
                for size in [2, 5, 10] {
                    push(
                        letters[k],
                        single(ScenarioConfig::boson(size, ubar), channel, ov)?,
                    );
                    k += 1;
                }
            }
        }
        5..=8 => {
            let ubar = if n % 2 == 1 { 0.05 } else { 5.0 };
            let pair = if n <= 6 {
                ModePair::UpDown
            } else {
                ModePair::UpUp
            };
            for (letter, channel) in [
                ('a', "avgC_U"),
                ('b', "avgS_U"),
                ('c', "fluctC"),
                ('d', "fluctS"),
            ] {
                push(
                    letter,
                    single(ScenarioConfig::fermion(ubar, pair), channel, ov)?,
                );
            }
        }
        9 => {
            for (letter, ubar, channel) in [
                ('a', 0.05, "fluctC"),
                ('b', 0.05, "fluctS"),
                ('c', 5.0, "fluctC"),
                ('d', 5.0, "fluctS"),
            ] {
                push(letter, single(ScenarioConfig::boson(2, ubar), channel, ov)?);
            }
        }
        10 | 11 => {
            let ubars = [0.05, 0.5];
            let boson = |u| ScenarioConfig::boson(2, u);
            let fermion = |u| ScenarioConfig::fermion(u, ModePair::UpDown);
            if n == 10 {
                push('a', sweep(boson, "avgW", ubars, ov)?);
                push('b', sweep(fermion, "avgW", ubars, ov)?);
                push('c', sweep(boson, "fluctW", ubars, ov)?);
                push('d', sweep(fermion, "fluctW", ubars, ov)?);
            } else {
                push('a', single(boson(5.0), "avgW", ov)?);
                push('b', single(fermion(5.0), "avgW", ov)?);
                push('c', single(boson(5.0), "fluctW", ov)?);
                push('d', single(fermion(5.0), "fluctW", ov)?);
            }
        }
        _ => unreachable!("figure numbers are validated on parse"),
    }
    Ok(out)
}

/// Writes every subplot CSV of `fig` into `dir` and returns the paths.
pub fn write_figure(fig: Figure, dir: &Path, ov: &Overrides) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    panels(fig, ov)?
        .into_iter()
        .map(|p| {
            let path = dir.join(format!("{}.csv", p.name));
            write_csv_file(&p.series, &path).map(|()| path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("fig7".parse::<Figure>().unwrap().number(), 7);
        for bad in ["fig0", "fig12", "7", "figure1"] {
            assert_eq!(bad.parse::<Figure>().unwrap_err().exit_code(), 1);
        }
        assert_eq!(Figure::all().count(), 11);
    }

    #[test]
    fn panel_layout() {
        let ov = Overrides {
            tau_max: Some(1.0),
            steps: Some(3),
            integrator: None,
        };
        let counts: Vec<usize> = Figure::all()
            .map(|f| panels(f, &ov).unwrap().len())
            .collect();
        assert_eq!(counts, vec![6, 6, 6, 6, 4, 4, 4, 4, 4, 4, 4]);
        let fig10 = panels(Figure(10), &ov).unwrap();
        let names: Vec<_> = fig10[1].series.names().collect();
        assert_eq!(names, vec!["avgW_ubar0.05", "avgW_ubar0.5"]);
        assert_eq!(fig10[1].name, "fig10b");
    }
}
