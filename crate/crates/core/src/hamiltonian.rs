//! Double-well Hamiltonians in reduced units: energies in ħJ, time `τ = Jt`,
//! interaction `Ū = U/J`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fock::BosonDimerBasis;
use crate::ops::OperatorMatrix;

/// Which fermion-pair interaction diagonal to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FermionVariant {
    /// `Ū/2` on the split (one fermion per well) configuration only. This is
    /// the matrix of the interaction operator as written, and its propagation
    /// reproduces the closed-form pair solution with `Ω_F = √(4 + (Ū/4)²)`.
    #[default]
    AsWritten,
    /// `Ū/2` on all three amplitudes, which makes the interaction a global
    /// phase.
    UniformInteraction,
}

impl FermionVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            FermionVariant::AsWritten => "as-written",
            FermionVariant::UniformInteraction => "uniform-interaction",
        }
    }
}

impl fmt::Display for FermionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FermionVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "as-written" => Ok(FermionVariant::AsWritten),
            "uniform-interaction" => Ok(FermionVariant::UniformInteraction),
            other => Err(Error::Config(format!("unknown fermion variant `{other}`"))),
        }
    }
}

/// Model knobs shared by both particle species.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub ubar: f64,
    pub variant: FermionVariant,
}

impl ModelParams {
    pub fn new(ubar: f64) -> Result<Self> {
        if !ubar.is_finite() {
            return Err(Error::Config(format!(
                "interaction must be finite, got {ubar}"
            )));
        }
        Ok(ModelParams {
            ubar,
            variant: FermionVariant::default(),
        })
    }
}

/// Tunnelling amplitude `κ_l = √((l+1)(N-l))` between `|l>` and `|l+1>`.
pub fn hopping(basis: &BosonDimerBasis, l: usize) -> f64 {
    let n = basis.total();
    (((l + 1) * (n - l)) as f64).sqrt()
}

/// On-site energy `V_l = (Ū/2)[l² + (N-l)² - N]`.
pub fn onsite(basis: &BosonDimerBasis, ubar: f64, l: usize) -> f64 {
    let n = basis.total() as f64;
    let l = l as f64;
    0.5 * ubar * (l * l + (n - l) * (n - l) - n)
}

/// Bose–Hubbard dimer Hamiltonian: real symmetric tridiagonal with `-κ_l`
/// off the diagonal and `V_l` on it.
pub fn boson_dimer_hamiltonian(basis: &BosonDimerBasis, ubar: f64) -> Result<OperatorMatrix> {
    let dim = basis.dim();
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for l in 0..dim {
        h[(l, l)] = onsite(basis, ubar, l);
        if l + 1 < dim {
            let k = hopping(basis, l);
            h[(l, l + 1)] = -k;
            h[(l + 1, l)] = -k;
        }
    }
    OperatorMatrix::from_real(format!("H_B(N={}, U={ubar})", basis.total()), &h).into_hermitian()
}

/// Fermion-pair Hamiltonian on `(sym, |↑↓,0>, |0,↑↓>)`.
pub fn fermion_pair_hamiltonian(ubar: f64, variant: FermionVariant) -> Result<OperatorMatrix> {
    let t = -std::f64::consts::SQRT_2;
    let half_u = 0.5 * ubar;
    let paired = match variant {
        FermionVariant::AsWritten => 0.0,
        FermionVariant::UniformInteraction => half_u,
    };
    #[rustfmt::skip]
    let h = DMatrix::from_row_slice(3, 3, &[
        half_u, t,      t,
        t,      paired, 0.0,
        t,      0.0,    paired,
    ]);
    OperatorMatrix::from_real(format!("H_F(U={ubar}, {variant})"), &h).into_hermitian()
}

/// Barrier height `λ² q⁴ / 2` of `V(x) = λ²(x² - q²)²/2`.
pub fn barrier_height(lambda: f64, q: f64) -> f64 {
    0.5 * lambda * lambda * q.powi(4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::boson_basis;
    use crate::C64;
    use nalgebra::SymmetricEigen;

    fn real_spectrum(h: &OperatorMatrix) -> Vec<f64> {
        let re = h.entries().map(|z| z.re);
        let mut e: Vec<f64> = SymmetricEigen::new(re)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        e.sort_by(f64::total_cmp);
        e
    }

    #[test]
    fn boson_pair_matrix() {
        let b = boson_basis(2).unwrap();
        let h = boson_dimer_hamiltonian(&b, 5.0).unwrap();
        let s = std::f64::consts::SQRT_2;
        #[rustfmt::skip]
        let expected = [
            5.0, -s, 0.0,
            -s, 0.0, -s,
            0.0, -s, 5.0,
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!((h.get(i, j) - C64::new(expected[3 * i + j], 0.0)).norm() < 1e-15);
            }
        }
        for ubar in [0.0, 0.05, 5.0] {
            assert_eq!(onsite(&b, ubar, 0), ubar);
            assert_eq!(onsite(&b, ubar, 1), 0.0);
            assert_eq!(onsite(&b, ubar, 2), ubar);
        }
    }

    #[test]
    fn single_boson() {
        let h = boson_dimer_hamiltonian(&boson_basis(1).unwrap(), 3.0).unwrap();
        assert_eq!(h.real_diagonal(), None);
        assert_eq!(h.get(0, 1).re, -1.0);
        assert_eq!(h.get(0, 0).re, 0.0);
        assert_eq!(h.get(1, 1).re, 0.0);
    }

    #[test]
    fn mirror_symmetry() {
        for n in 1..=12 {
            let b = boson_basis(n).unwrap();
            let h = boson_dimer_hamiltonian(&b, 0.37).unwrap();
            for l in 0..=n {
                for lp in 0..=n {
                    assert_eq!(h.get(l, lp), h.get(n - l, n - lp));
                }
            }
        }
    }

    #[test]
    fn fermion_spectra() {
        for variant in [
            FermionVariant::AsWritten,
            FermionVariant::UniformInteraction,
        ] {
            let e = real_spectrum(&fermion_pair_hamiltonian(0.0, variant).unwrap());
            for (got, want) in e.iter().zip([-2.0, 0.0, 2.0]) {
                assert!((got - want).abs() < 1e-12);
            }
        }
        let e = real_spectrum(&fermion_pair_hamiltonian(5.0, FermionVariant::AsWritten).unwrap());
        let omega = 5.5625f64.sqrt();
        let want = [1.25 - omega, 0.0, 1.25 + omega];
        for (got, want) in e.iter().zip(want) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        let boson = real_spectrum(&boson_dimer_hamiltonian(&boson_basis(2).unwrap(), 0.0).unwrap());
        for (b, f) in boson.iter().zip([-2.0, 0.0, 2.0]) {
            assert!((b - f).abs() < 1e-12);
        }
    }

    #[test]
    fn variants_differ_by_paired_projector() {
        for ubar in [0.05, 5.0, -1.5] {
            let a = fermion_pair_hamiltonian(ubar, FermionVariant::AsWritten).unwrap();
            let b = fermion_pair_hamiltonian(ubar, FermionVariant::UniformInteraction).unwrap();
            let d = &b - &a;
            let diag = d.real_diagonal().unwrap();
            assert_eq!(diag, vec![0.0, ubar / 2.0, ubar / 2.0]);
        }
        assert!("sideways".parse::<FermionVariant>().is_err());
        assert_eq!(
            "as-written".parse::<FermionVariant>().unwrap(),
            FermionVariant::AsWritten
        );
    }

    #[test]
    fn barrier() {
        assert_eq!(barrier_height(1.0, 1.0), 0.5);
        assert_eq!(barrier_height(2.0, 1.0), 2.0);
        assert_eq!(barrier_height(0.0, 3.0), 0.0);
    }
}
