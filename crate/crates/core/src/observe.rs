//! Expectation values, fluctuations, number-squeezing parameters and
//! trapping detection over trajectories.

use crate::error::{Error, Result};
use crate::evolve::{fermion_omega, Trajectory};
use crate::fock::{BosonDimerBasis, PairBasis, StateVector};
use crate::ops::{boson_number_diff, well_number_diff, OperatorMatrix};

/// Imaginary parts below this are treated as roundoff.
pub const IMAG_TOL: f64 = 1e-10;
/// Variances down to `-VARIANCE_TOL` are clamped to zero.
pub const VARIANCE_TOL: f64 = 1e-10;
pub const DEFAULT_TRAP_EPS: f64 = 1e-3;

/// `<ψ|A|ψ>` for hermitian `A`.
pub fn expectation(op: &OperatorMatrix, state: &StateVector) -> Result<f64> {
    if !op.is_hermitian() {
        return Err(Error::NotHermitian {
            label: op.label().to_string(),
            residual: op.hermiticity_residual(),
        });
    }
    let z = state.amplitudes().dotc(&op.apply(state)?);
    if z.im.abs() > IMAG_TOL {
        return Err(Error::ImaginaryExpectation {
            label: op.label().to_string(),
            imag: z.im,
        });
    }
    Ok(z.re)
}

/// `√(<A²> - <A>²)` with `<A²> = ‖Aψ‖²`.
pub fn fluctuation(op: &OperatorMatrix, state: &StateVector) -> Result<f64> {
    let mean = expectation(op, state)?;
    let second = op.apply(state)?.norm_squared();
    let radicand = second - mean * mean;
    if radicand < -VARIANCE_TOL {
        return Err(Error::NegativeVariance(radicand, op.label().to_string()));
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Maps trajectory states into the space the operators act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// Operators and states share a basis.
    Identity,
    /// Pair-basis states lifted into the sixteen-state fermion Fock space.
    FermionPair,
}

impl Embedding {
    pub fn apply(self, state: &StateVector) -> Result<StateVector> {
        match self {
            Embedding::Identity => Ok(state.clone()),
            Embedding::FermionPair => PairBasis.lift(state),
        }
    }
}

pub fn expectation_series(
    traj: &Trajectory,
    op: &OperatorMatrix,
    embedding: Embedding,
) -> Result<Vec<f64>> {
    traj.states
        .iter()
        .map(|s| expectation(op, &embedding.apply(s)?))
        .collect()
}

pub fn fluctuation_series(
    traj: &Trajectory,
    op: &OperatorMatrix,
    embedding: Embedding,
) -> Result<Vec<f64>> {
    traj.states
        .iter()
        .map(|s| fluctuation(op, &embedding.apply(s)?))
        .collect()
}

/// `ξ_n = (ΔW)² / N` along a boson trajectory.
pub fn xi_boson(traj: &Trajectory, basis: &BosonDimerBasis) -> Result<Vec<f64>> {
    let w = boson_number_diff(basis);
    let n = basis.total() as f64;
    traj.states
        .iter()
        .map(|s| fluctuation(&w, s).map(|d| d * d / n))
        .collect()
}

/// Both normalizations of the fermion-pair number fluctuation.
#[derive(Clone, Debug, PartialEq)]
pub struct XiFermion {
    /// `(ΔW)² / N`.
    pub variance: Vec<f64>,
    /// `<W²> / N`.
    pub second_moment: Vec<f64>,
}

/// Fermion-pair squeezing parameters with `W` the well-level imbalance and
/// `N = 2`.
pub fn xi_fermion(traj: &Trajectory) -> Result<XiFermion> {
    let w = well_number_diff();
    let n = 2.0;
    let mut variance = Vec::with_capacity(traj.len());
    let mut second_moment = Vec::with_capacity(traj.len());
    for s in &traj.states {
        let lifted = PairBasis.lift(s)?;
        let d = fluctuation(&w, &lifted)?;
        variance.push(d * d / n);
        second_moment.push(w.apply(&lifted)?.norm_squared() / n);
    }
    Ok(XiFermion {
        variance,
        second_moment,
    })
}

/// Closed-form fermion-pair squeezing parameter
/// `2[1 - (2/Ω²)sin²(Ωτ) - (1/4Ω²)(Ω⁻cos(Ω⁺τ) - Ω⁺cos(Ω⁻τ))²]`
/// with `Ω = Ω_F` and `Ω± = Ω ± Ū/4`. It matches `<W²>/N` only at `Ū = 0`.
pub fn xi_fermion_closed_form(ubar: f64, tau: f64) -> f64 {
    let omega = fermion_omega(ubar);
    let plus = omega + ubar / 4.0;
    let minus = omega - ubar / 4.0;
    let o2 = omega * omega;
    let beat = minus * (plus * tau).cos() - plus * (minus * tau).cos();
    2.0 * (1.0 - 2.0 / o2 * (omega * tau).sin().powi(2) - beat * beat / (4.0 * o2))
}

/// Closed `τ` interval of consecutive grid points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrapInterval {
    pub start: f64,
    pub end: f64,
}

impl TrapInterval {
    pub fn contains(&self, tau: f64) -> bool {
        self.start <= tau && tau <= self.end
    }
}

/// Grid points where `|<W>| < eps`, merged into runs of consecutive points.
pub fn trapping_points(tau: &[f64], avg_w: &[f64], eps: f64) -> Result<Vec<TrapInterval>> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if tau.len() != avg_w.len() {
        return Err(Error::DimensionMismatch {
            expected: tau.len(),
            found: avg_w.len(),
        });
    }
    let mut out: Vec<TrapInterval> = Vec::new();
    let mut open: Option<TrapInterval> = None;
    for (&t, &w) in tau.iter().zip(avg_w) {
        if w.abs() < eps {
            open = Some(match open {
                Some(iv) => TrapInterval { end: t, ..iv },
                None => TrapInterval { start: t, end: t },
            });
        } else if let Some(iv) = open.take() {
            out.push(iv);
        }
    }
    out.extend(open);
    Ok(out)
}

/// Index of the first minimum.
pub fn argmin(values: &[f64]) -> Option<usize> {
    values
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (i, &v)| match best {
            Some((_, b)) if b <= v => best,
            _ => Some((i, v)),
        })
        .map(|(i, _)| i)
}

/// Index of the first maximum.
pub fn argmax(values: &[f64]) -> Option<usize> {
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    argmin(&negated)
}

/// Real-valued channels sampled on a common `τ` grid.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TimeSeries {
    tau: Vec<f64>,
    channels: Vec<(String, Vec<f64>)>,
}

impl TimeSeries {
    pub fn new(tau: Vec<f64>) -> Self {
        TimeSeries {
            tau,
            channels: Vec::new(),
        }
    }

    pub fn tau(&self) -> &[f64] {
        &self.tau
    }

    pub fn push(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        if values.len() != self.tau.len() {
            return Err(Error::DimensionMismatch {
                expected: self.tau.len(),
                found: values.len(),
            });
        }
        self.channels.push((name.into(), values));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&[f64]> {
        self.channels
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.channels.iter().map(|(n, _)| n.as_str())
    }

    pub fn channels(&self) -> &[(String, Vec<f64>)] {
        &self.channels
    }

    /// Keeps only the named channels, in the given order.
    pub fn select(&self, names: &[String]) -> Result<TimeSeries> {
        let mut out = TimeSeries::new(self.tau.clone());
        for name in names {
            let values = self
                .get(name)
                .ok_or_else(|| Error::Config(format!("unknown channel `{name}`")))?;
            out.push(name.clone(), values.to_vec())?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::{eigen_propagate, TauGrid};
    use crate::fock::{boson_basis, BosonLabel};
    use crate::hamiltonian::boson_dimer_hamiltonian;
    use crate::ops::boson_unitary_phase;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn unitary_cosine_fluctuation_on_right_well() {
        // C_B for N = 2 is 1/2 on every off-diagonal entry, so on |0,2>:
        // <C> = 0 and <C²> = 1/4 + 1/4.
        let b = boson_basis(2).unwrap();
        let u = boson_unitary_phase(&b).unwrap();
        let psi = b.fock_state(BosonLabel::RightWell).unwrap();
        assert_eq!(expectation(&u.cos, &psi).unwrap(), 0.0);
        assert!((u.cos.apply(&psi).unwrap().norm_squared() - 0.5).abs() < 1e-15);
        let d = fluctuation(&u.cos, &psi).unwrap();
        assert!((d - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn eigenstate_fluctuations_vanish() {
        let b = boson_basis(2).unwrap();
        let psi = b.fock_state(BosonLabel::RightWell).unwrap();
        assert_eq!(fluctuation(&boson_number_diff(&b), &psi).unwrap(), 0.0);
        assert_eq!(
            fluctuation(&OperatorMatrix::identity(3), &psi).unwrap(),
            0.0
        );
    }

    #[test]
    fn non_hermitian_expectation_rejected() {
        let b = boson_basis(2).unwrap();
        let u = boson_unitary_phase(&b).unwrap();
        let psi = b.fock_state(BosonLabel::RightWell).unwrap();
        assert!(expectation(&u.beta, &psi).is_err());
    }

    #[test]
    fn xi_boson_pair() {
        let b = boson_basis(2).unwrap();
        let h = boson_dimer_hamiltonian(&b, 0.0).unwrap();
        let psi0 = b.fock_state(BosonLabel::RightWell).unwrap();
        let grid = TauGrid::from_points(vec![0.0, FRAC_PI_4]).unwrap();
        let traj = eigen_propagate(&h, &psi0, &grid).unwrap();
        let xi = xi_boson(&traj, &b).unwrap();
        assert_eq!(xi[0], 0.0);
        assert!((xi[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(xi_fermion_closed_form(0.0, 0.0), 2.0);
        assert!((xi_fermion_closed_form(0.0, FRAC_PI_4) - 1.0).abs() < 1e-15);
        assert!((xi_fermion_closed_form(5.0, 0.0) - 1.438202).abs() < 1e-6);
    }

    #[test]
    fn trapping_intervals() {
        let tau: Vec<f64> = (0..10).map(f64::from).collect();
        let w = [-2.0; 10];
        assert!(trapping_points(&tau, &w, 1.0).unwrap().is_empty());
        let all = trapping_points(&tau, &w, 3.0).unwrap();
        assert_eq!(
            all,
            vec![TrapInterval {
                start: 0.0,
                end: 9.0
            }]
        );
        let w = [1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0];
        let iv = trapping_points(&tau, &w, 0.5).unwrap();
        assert_eq!(iv.len(), 3);
        assert_eq!(
            iv[0],
            TrapInterval {
                start: 1.0,
                end: 2.0
            }
        );
        assert_eq!(
            iv[2],
            TrapInterval {
                start: 9.0,
                end: 9.0
            }
        );
        assert!(trapping_points(&tau, &w, 0.0).is_err());
    }

    #[test]
    fn arg_extrema_take_first() {
        assert_eq!(argmin(&[3.0, 1.0, 1.0, 2.0]), Some(1));
        assert_eq!(argmax(&[3.0, 1.0, 3.0]), Some(0));
        assert_eq!(argmin(&[]), None);
    }

    #[test]
    fn series_channels() {
        let mut ts = TimeSeries::new(vec![0.0, 1.0]);
        ts.push("a", vec![1.0, 2.0]).unwrap();
        assert!(ts.push("b", vec![1.0]).is_err());
        assert_eq!(ts.get("a"), Some(&[1.0, 2.0][..]));
        assert!(ts.select(&["zzz".to_string()]).is_err());
    }
}
