//! Scenario execution, CSV output, figure presets and the invariant checker
//! behind the `phasekit` binary.

pub mod config;
pub mod figures;
pub mod verify;

use std::fs::File;
use std::io::Write;
use std::path::Path;

use nalgebra::DVector;

pub use config::{Initial, Integrator, ModePair, ScenarioConfig, System};

use crate::error::{Error, Result};
use crate::evolve::{eigen_propagate, rk4_propagate, TauGrid, Trajectory, INIT_NORM_TOL};
use crate::fock::{boson_basis, BosonLabel, PairBasis, StateVector};
use crate::hamiltonian::{boson_dimer_hamiltonian, fermion_pair_hamiltonian};
use crate::observe::{
    expectation_series, fluctuation_series, xi_boson, xi_fermion, xi_fermion_closed_form,
    Embedding, TimeSeries,
};
use crate::ops::{
    boson_cn_phase, boson_number_diff, boson_unitary_phase, fermion_cn_phase, fermion_number_diff,
    fermion_unitary_phase, well_number_diff, OperatorMatrix,
};

/// Channels every system provides, in output order.
pub const COMMON_CHANNELS: [&str; 13] = [
    "avgC_CN",
    "avgS_CN",
    "avgC_U",
    "avgS_U",
    "fluctC_CN",
    "fluctS_CN",
    "fluctC",
    "fluctS",
    "avgW",
    "fluctW",
    "xi",
    "norm",
    "energy",
];

/// Extra fermion-pair channels.
pub const FERMION_CHANNELS: [&str; 4] = [
    "avgW_pair",
    "fluctW_pair",
    "xi_second_moment",
    "xi_closed_form",
];

pub fn available_channels(system: System) -> Vec<&'static str> {
    let mut names = COMMON_CHANNELS.to_vec();
    if system == System::Fermion {
        names.extend(FERMION_CHANNELS);
    }
    names
}

fn initial_state(cfg: &ScenarioConfig) -> Result<StateVector> {
    match (&cfg.initial, cfg.system) {
        (Initial::Amplitudes(a), _) => {
            StateVector::from_amplitudes(DVector::from_vec(a.clone()), INIT_NORM_TOL)
        }
        (Initial::RightWell, System::Boson) => {
            boson_basis(cfg.n)?.fock_state(BosonLabel::RightWell)
        }
        (Initial::LeftWell, System::Boson) => boson_basis(cfg.n)?.fock_state(BosonLabel::LeftWell),
        (Initial::RightWell, System::Fermion) => PairBasis.fock_state("right-well"),
        (Initial::LeftWell, System::Fermion) => PairBasis.fock_state("left-well"),
    }
}

/// The Hamiltonian and initial state a config describes.
pub fn setup(cfg: &ScenarioConfig) -> Result<(OperatorMatrix, StateVector)> {
    cfg.validate()?;
    let h = match cfg.system {
        System::Boson => boson_dimer_hamiltonian(&boson_basis(cfg.n)?, cfg.ubar)?,
        System::Fermion => fermion_pair_hamiltonian(cfg.ubar, cfg.variant)?,
    };
    Ok((h, initial_state(cfg)?))
}

pub fn propagate(cfg: &ScenarioConfig) -> Result<Trajectory> {
    let (h, psi0) = setup(cfg)?;
    let grid = TauGrid::uniform(cfg.tau_max, cfg.steps)?;
    match cfg.integrator {
        Integrator::Eigen => eigen_propagate(&h, &psi0, &grid),
        Integrator::Rk4 => rk4_propagate(&h, &psi0, &grid, cfg.dtau.min(grid.min_spacing())),
    }
}

/// Runs a scenario and returns the requested channels, or all of them when
/// the config names none.
pub fn simulate(cfg: &ScenarioConfig) -> Result<TimeSeries> {
    let available = available_channels(cfg.system);
    if let Some(bad) = cfg
        .channels
        .iter()
        .find(|c| !available.contains(&c.as_str()))
    {
        return Err(Error::Config(format!("unknown channel `{bad}`")));
    }
    let wanted = |name: &str| cfg.channels.is_empty() || cfg.channels.iter().any(|c| c == name);

    let (h, _) = setup(cfg)?;
    let traj = propagate(cfg)?;
    let mut all = TimeSeries::new(traj.tau.clone());

    let (cn, unitary, w, embed) = match cfg.system {
        System::Boson => {
            let basis = boson_basis(cfg.n)?;
            let u = boson_unitary_phase(&basis)?;
            (
                boson_cn_phase(&basis)?,
                u,
                boson_number_diff(&basis),
                Embedding::Identity,
            )
        }
        System::Fermion => {
            let (m, mp) = cfg.mode_pair.modes();
            (
                fermion_cn_phase(m, mp)?,
                fermion_unitary_phase(m, mp)?,
                well_number_diff(),
                Embedding::FermionPair,
            )
        }
    };
    let ops: [(&str, &OperatorMatrix, bool); 10] = [
        ("avgC_CN", &cn.cos, false),
        ("avgS_CN", &cn.sin, false),
        ("avgC_U", &unitary.cos, false),
        ("avgS_U", &unitary.sin, false),
        ("fluctC_CN", &cn.cos, true),
        ("fluctS_CN", &cn.sin, true),
        ("fluctC", &unitary.cos, true),
        ("fluctS", &unitary.sin, true),
        ("avgW", &w, false),
        ("fluctW", &w, true),
    ];
    for (name, op, fluct) in ops {
        if wanted(name) {
            let values = if fluct {
                fluctuation_series(&traj, op, embed)?
            } else {
                expectation_series(&traj, op, embed)?
            };
            all.push(name, values)?;
        }
    }

    let xi = match cfg.system {
        System::Boson => {
            if wanted("xi") {
                all.push("xi", xi_boson(&traj, &boson_basis(cfg.n)?)?)?;
            }
            None
        }
        System::Fermion => Some(xi_fermion(&traj)?),
    };
    if let Some(xi) = &xi {
        if wanted("xi") {
            all.push("xi", xi.variance.clone())?;
        }
    }
    if wanted("norm") {
        all.push("norm", traj.states.iter().map(|s| s.norm()).collect())?;
    }
    if wanted("energy") {
        all.push(
            "energy",
            expectation_series(&traj, &h, Embedding::Identity)?,
        )?;
    }
    if let Some(xi) = xi {
        let (m, mp) = cfg.mode_pair.modes();
        let pair_w = fermion_number_diff(m, mp)?;
        if wanted("avgW_pair") {
            all.push("avgW_pair", expectation_series(&traj, &pair_w, embed)?)?;
        }
        if wanted("fluctW_pair") {
            all.push("fluctW_pair", fluctuation_series(&traj, &pair_w, embed)?)?;
        }
        if wanted("xi_second_moment") {
            all.push("xi_second_moment", xi.second_moment)?;
        }
        if wanted("xi_closed_form") {
            let closed = traj
                .tau
                .iter()
                .map(|&t| xi_fermion_closed_form(cfg.ubar, t))
                .collect();
            all.push("xi_closed_form", closed)?;
        }
    }

    if cfg.channels.is_empty() {
        Ok(all)
    } else {
        all.select(&cfg.channels)
    }
}

/// Writes `tau,<channels>` rows with every value in `{:.16e}`.
pub fn write_csv<W: Write>(series: &TimeSeries, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .quote_style(csv::QuoteStyle::Never)
        .from_writer(out);
    let mut header = vec!["tau".to_string()];
    header.extend(series.names().map(str::to_string));
    w.write_record(&header)?;
    for (i, tau) in series.tau().iter().enumerate() {
        let mut row = vec![format!("{tau:.16e}")];
        row.extend(
            series
                .channels()
                .iter()
                .map(|(_, v)| format!("{:.16e}", v[i])),
        );
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_file(series: &TimeSeries, path: &Path) -> Result<()> {
    write_csv(series, File::create(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boson_channels_at_start() {
        let mut cfg = ScenarioConfig::boson(2, 0.05);
        cfg.steps = 3;
        cfg.tau_max = 1.0;
        let ts = simulate(&cfg).unwrap();
        let names: Vec<_> = ts.names().collect();
        assert_eq!(names, COMMON_CHANNELS.to_vec());
        // |0,2>: only the vacuum corner of C_B is seen.
        assert_eq!(ts.get("avgC_CN").unwrap()[0], 0.0);
        assert_eq!(ts.get("avgW").unwrap()[0], -2.0);
        assert!((ts.get("fluctC").unwrap()[0] - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((ts.get("energy").unwrap()[0] - 0.05).abs() < 1e-12);
    }

    #[test]
    fn fermion_channels_and_selection() {
        let mut cfg = ScenarioConfig::fermion(5.0, ModePair::UpDown);
        cfg.steps = 4;
        cfg.channels = vec!["xi_closed_form".into(), "avgW".into()];
        let ts = simulate(&cfg).unwrap();
        assert_eq!(
            ts.names().collect::<Vec<_>>(),
            vec!["xi_closed_form", "avgW"]
        );
        assert_eq!(ts.get("avgW").unwrap()[0], -2.0);
        cfg.channels = vec!["avgX".into()];
        assert_eq!(simulate(&cfg).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn csv_layout() {
        let mut ts = TimeSeries::new(vec![0.0, 0.5]);
        ts.push("a", vec![1.0, -2.5]).unwrap();
        let mut buf = Vec::new();
        write_csv(&ts, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "tau,a\n0.0000000000000000e0,1.0000000000000000e0\n\
             5.0000000000000000e-1,-2.5000000000000000e0\n"
        );
    }
}
