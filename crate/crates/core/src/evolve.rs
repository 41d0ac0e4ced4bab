//! Time propagation of `i dψ/dτ = Hψ`.
//!
//! [`eigen_propagate`] is the reference solver. [`rk4_propagate`] is an
//! independent fixed-step integrator used to cross-check it, and the two
//! closed-form pair solutions serve as analytic oracles.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::ops::OperatorMatrix;
use crate::C64;

/// Norm tolerance for explicit initial amplitudes.
pub const INIT_NORM_TOL: f64 = 1e-9;
/// Largest norm drift an RK4 run may accumulate before it is rejected.
pub const RK4_MAX_DRIFT: f64 = 1e-6;
pub const DEFAULT_DTAU: f64 = 1e-3;

/// Strictly increasing sample times starting at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct TauGrid(Vec<f64>);

impl TauGrid {
    /// `steps` evenly spaced points on `[0, tau_max]`.
    pub fn uniform(tau_max: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {steps}"
            )));
        }
        if !(tau_max.is_finite() && tau_max > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "tau_max must be positive, got {tau_max}"
            )));
        }
        let last = (steps - 1) as f64;
        let mut points: Vec<f64> = (0..steps).map(|k| tau_max * k as f64 / last).collect();
        points[steps - 1] = tau_max;
        Ok(TauGrid(points))
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.first() != Some(&0.0) {
            return Err(Error::InvalidGrid("grid must start at 0".into()));
        }
        if points.windows(2).any(|w| {
            w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater) || !w[1].is_finite()
        }) {
            return Err(Error::InvalidGrid(
                "grid must be strictly increasing".into(),
            ));
        }
        Ok(TauGrid(points))
    }

    pub fn points(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_spacing(&self) -> f64 {
        self.0
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }
}

/// States sampled on a time grid.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub tau: Vec<f64>,
    pub states: Vec<StateVector>,
    pub label: String,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    /// Largest `|‖ψ(τ)‖ - 1|` along the trajectory.
    pub fn max_norm_drift(&self) -> f64 {
        self.states
            .iter()
            .map(|s| (s.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Largest deviation of `<ψ(τ)|H|ψ(τ)>` from its initial value.
    pub fn max_energy_drift(&self, h: &OperatorMatrix) -> Result<f64> {
        let energy = |s: &StateVector| -> Result<f64> { Ok(s.amplitudes().dotc(&h.apply(s)?).re) };
        let e0 = energy(&self.states[0])?;
        self.states
            .iter()
            .map(|s| energy(s).map(|e| (e - e0).abs()))
            .try_fold(0.0, |acc, d| d.map(|d| f64::max(acc, d)))
    }
}

/// Spectral decomposition `H = V diag(E) V†` of a hermitian operator.
#[derive(Clone, Debug)]
pub struct EigenPropagator {
    energies: DVector<f64>,
    vectors: DMatrix<C64>,
}

impl EigenPropagator {
    pub fn new(h: &OperatorMatrix) -> Result<Self> {
        if !h.is_hermitian() {
            return Err(Error::NotHermitian {
                label: h.label().to_string(),
                residual: h.hermiticity_residual(),
            });
        }
        let eig = SymmetricEigen::try_new(h.entries().clone(), f64::EPSILON, 100_000)
            .ok_or_else(|| Error::Eigen(format!("no convergence for `{}`", h.label())))?;
        Ok(EigenPropagator {
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
        })
    }

    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// `ψ(τ) = Σ_k e^{-iE_k τ} <k|ψ> |k>`; any real `τ`, including negative.
    pub fn evolve(&self, psi: &StateVector, tau: f64) -> Result<StateVector> {
        psi.check_dim(self.dim())?;
        if tau == 0.0 {
            return Ok(psi.clone());
        }
        let mut coeffs = self.vectors.adjoint() * psi.amplitudes();
        for (c, &e) in coeffs.iter_mut().zip(self.energies.iter()) {
            *c *= C64::from_polar(1.0, -e * tau);
        }
        Ok(StateVector::from_raw(&self.vectors * coeffs))
    }
}

/// Exact propagation through the eigendecomposition of `h`.
pub fn eigen_propagate(
    h: &OperatorMatrix,
    psi0: &StateVector,
    grid: &TauGrid,
) -> Result<Trajectory> {
    check_initial(h, psi0)?;
    let prop = EigenPropagator::new(h)?;
    let states = grid
        .points()
        .iter()
        .map(|&t| prop.evolve(psi0, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory {
        tau: grid.points().to_vec(),
        states,
        label: h.label().to_string(),
    })
}

fn check_initial(h: &OperatorMatrix, psi0: &StateVector) -> Result<()> {
    psi0.check_dim(h.dim())?;
    let norm = psi0.norm();
    if (norm - 1.0).abs() > INIT_NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    Ok(())
}

/// Classical RK4 on `dψ/dτ = -iHψ` without renormalization, together with
/// the largest norm drift seen. Each grid interval is split into the fewest
/// equal substeps no longer than `dtau`.
pub fn rk4_integrate(
    h: &OperatorMatrix,
    psi0: &StateVector,
    grid: &TauGrid,
    dtau: f64,
) -> Result<(Trajectory, f64)> {
    check_initial(h, psi0)?;
    if !(dtau.is_finite() && dtau > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "dtau must be positive, got {dtau}"
        )));
    }
    if dtau > grid.min_spacing() {
        return Err(Error::InvalidGrid(format!(
            "dtau {dtau} exceeds the grid spacing {}",
            grid.min_spacing()
        )));
    }
    let minus_i_h = h.entries() * C64::new(0.0, -1.0);
    let rhs = |psi: &DVector<C64>| &minus_i_h * psi;

    let mut psi = psi0.amplitudes().clone();
    let mut states = vec![psi0.clone()];
    let mut drift: f64 = 0.0;
    for w in grid.points().windows(2) {
        let span = w[1] - w[0];
        let substeps = ((span / dtau) - 1e-9).ceil().max(1.0) as usize;
        let step = span / substeps as f64;
        for _ in 0..substeps {
            let k1 = rhs(&psi);
            let k2 = rhs(&(&psi + &k1 * C64::from(0.5 * step)));
            let k3 = rhs(&(&psi + &k2 * C64::from(0.5 * step)));
            let k4 = rhs(&(&psi + &k3 * C64::from(step)));
            psi += (k1 + k2 * C64::from(2.0) + k3 * C64::from(2.0) + k4) * C64::from(step / 6.0);
        }
        drift = drift.max((psi.norm() - 1.0).abs());
        states.push(StateVector::from_raw(psi.clone()));
    }
    let label = format!("{} (rk4, dtau={dtau})", h.label());
    Ok((
        Trajectory {
            tau: grid.points().to_vec(),
            states,
            label,
        },
        drift,
    ))
}

/// [`rk4_integrate`] that rejects runs whose norm drifts beyond
/// [`RK4_MAX_DRIFT`].
pub fn rk4_propagate(
    h: &OperatorMatrix,
    psi0: &StateVector,
    grid: &TauGrid,
    dtau: f64,
) -> Result<Trajectory> {
    let (traj, drift) = rk4_integrate(h, psi0, grid, dtau)?;
    if drift > RK4_MAX_DRIFT {
        return Err(Error::NormDrift {
            drift,
            limit: RK4_MAX_DRIFT,
        });
    }
    Ok(traj)
}

/// Which components of a closed-form pair solution solve the Hamiltonian
/// dynamics exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalyticValidity {
    /// All three amplitudes.
    Exact,
    /// Only the singly-occupied amplitude `c_1`.
    MiddleOnly,
    /// No component is guaranteed.
    Unverified,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairSolution {
    pub amplitudes: [C64; 3],
    pub validity: AnalyticValidity,
}

fn check_init(init: &[C64; 3]) -> Result<()> {
    let norm = init.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > INIT_NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    Ok(())
}

/// Two-frequency solution shared by both pair problems. `shift` is the
/// centre of the two coupled levels, `omega` their half splitting; `middle`
/// is the amplitude coupled to the sum of the two `outer` amplitudes.
/// Returns `(middle(τ), integral term)` where each outer amplitude is its
/// initial value plus the integral term.
fn two_frequency(shift: f64, omega: f64, middle0: C64, outer_sum0: C64, tau: f64) -> (C64, C64) {
    let s2 = std::f64::consts::SQRT_2;
    let a = ((omega - shift) * middle0 + s2 * outer_sum0) / (2.0 * omega);
    let b = ((omega + shift) * middle0 - s2 * outer_sum0) / (2.0 * omega);
    let i = C64::i();
    let lo = shift - omega;
    let hi = shift + omega;
    let phase_lo = (-i * lo * tau).exp();
    let phase_hi = (-i * hi * tau).exp();
    let middle = a * phase_lo + b * phase_hi;
    let integral = i * s2 * (a * (phase_lo - 1.0) / (-i * lo) + b * (phase_hi - 1.0) / (-i * hi));
    (middle, integral)
}

/// Closed-form boson pair (`N = 2`) amplitudes `(c_0, c_1, c_2)` with
/// `Ω_B = √(4 + (Ū/2)²)`.
///
/// The two outer amplitudes ignore their `Ū` on-site energy, so they are
/// exact only at `Ū = 0`; `c_1` is exact for any `Ū` when `c_1(0) = 0`.
pub fn boson_pair_analytic(ubar: f64, tau: f64, init: [C64; 3]) -> Result<PairSolution> {
    check_init(&init)?;
    let [c0, c1, c2] = init;
    let omega = (4.0 + (ubar / 2.0).powi(2)).sqrt();
    let (middle, integral) = two_frequency(ubar / 2.0, omega, c1, c0 + c2, tau);
    let validity = if ubar == 0.0 {
        AnalyticValidity::Exact
    } else if c1 == C64::new(0.0, 0.0) {
        AnalyticValidity::MiddleOnly
    } else {
        AnalyticValidity::Unverified
    };
    Ok(PairSolution {
        amplitudes: [c0 + integral, middle, c2 + integral],
        validity,
    })
}

/// Closed-form fermion pair amplitudes `(c_1, c_2, c_3)` on
/// `(sym, |↑↓,0>, |0,↑↓>)` with `Ω_F = √(4 + (Ū/4)²)`. Exact for the
/// as-written pair Hamiltonian and any initial state.
pub fn fermion_pair_analytic(ubar: f64, tau: f64, init: [C64; 3]) -> Result<PairSolution> {
    check_init(&init)?;
    let [c1, c2, c3] = init;
    let omega = fermion_omega(ubar);
    let (middle, integral) = two_frequency(ubar / 4.0, omega, c1, c2 + c3, tau);
    Ok(PairSolution {
        amplitudes: [middle, c2 + integral, c3 + integral],
        validity: AnalyticValidity::Exact,
    })
}

/// `Ω_F = √(4 + (Ū/4)²)`.
pub fn fermion_omega(ubar: f64) -> f64 {
    (4.0 + (ubar / 4.0).powi(2)).sqrt()
}

/// `Ω_B = √(4 + (Ū/2)²)`.
pub fn boson_omega(ubar: f64) -> f64 {
    (4.0 + (ubar / 2.0).powi(2)).sqrt()
}
