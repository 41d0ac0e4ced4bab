//! Dense operator matrices and the algebra diagnostics used to check them.

mod boson;
mod fermion;

pub use boson::{boson_cn_phase, boson_number_diff, boson_unitary_phase, boson_vacuum_phase};
pub use fermion::{
    fermion_cn_phase, fermion_ladder, fermion_number_diff, fermion_number_op,
    fermion_unitary_phase, half_filled_projector, literal_double_sum_phase, mirror_partner,
    well_number_diff,
};

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::C64;

/// Entrywise tolerance for the hermiticity flag.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense complex square matrix with a label and a hermiticity flag.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    label: String,
    hermitian: bool,
    entries: DMatrix<C64>,
}

/// Cosine and sine phase-difference operators.
#[derive(Clone, Debug)]
pub struct PhasePair {
    pub cos: OperatorMatrix,
    pub sin: OperatorMatrix,
}

/// Unitary phase-difference operators, with `beta = cos + i sin`.
#[derive(Clone, Debug)]
pub struct UnitaryPhase {
    pub cos: OperatorMatrix,
    pub sin: OperatorMatrix,
    pub beta: OperatorMatrix,
}

impl OperatorMatrix {
    /// General (not necessarily hermitian) operator.
    pub fn new(label: impl Into<String>, entries: DMatrix<C64>) -> Self {
        assert!(entries.is_square(), "operator matrices are square");
        OperatorMatrix {
            label: label.into(),
            hermitian: false,
            entries,
        }
    }

    /// Hermitian operator; fails when `max |A_ij - conj(A_ji)| > 1e-12`.
    pub fn hermitian(label: impl Into<String>, entries: DMatrix<C64>) -> Result<Self> {
        let mut op = Self::new(label, entries);
        let residual = op.hermiticity_residual();
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                label: op.label,
                residual,
            });
        }
        op.hermitian = true;
        Ok(op)
    }

    pub fn from_real(label: impl Into<String>, entries: &DMatrix<f64>) -> Self {
        Self::new(label, entries.map(|x| C64::new(x, 0.0)))
    }

    pub fn identity(dim: usize) -> Self {
        OperatorMatrix {
            label: "I".into(),
            hermitian: true,
            entries: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        OperatorMatrix {
            label: "0".into(),
            hermitian: true,
            entries: DMatrix::zeros(dim, dim),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// Re-checks the entries and sets the hermitian flag.
    pub fn into_hermitian(self) -> Result<Self> {
        Self::hermitian(self.label, self.entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[(row, col)]
    }

    pub fn hermiticity_residual(&self) -> f64 {
        max_abs(&(&self.entries - self.entries.adjoint()))
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix {
            label: format!("{}†", self.label),
            hermitian: self.hermitian,
            entries: self.entries.adjoint(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        let hermitian = self.hermitian && factor.im == 0.0;
        OperatorMatrix {
            label: self.label.clone(),
            hermitian,
            entries: &self.entries * factor,
        }
    }

    /// `max |A_ij|`.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.entries)
    }

    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> Result<f64> {
        check_dims(self, other)?;
        Ok(max_abs(&(&self.entries - &other.entries)))
    }

    pub fn apply(&self, state: &StateVector) -> Result<nalgebra::DVector<C64>> {
        state.check_dim(self.dim())?;
        Ok(&self.entries * state.amplitudes())
    }

    /// Sub-block on the given basis indices, `P A P` written in the
    /// coordinates of the retained states.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let n = indices.len();
        let entries = DMatrix::from_fn(n, n, |i, j| self.entries[(indices[i], indices[j])]);
        OperatorMatrix {
            label: self.label.clone(),
            hermitian: self.hermitian,
            entries,
        }
    }

    /// Diagonal entries as reals, or `None` when any off-diagonal entry or
    /// imaginary part is nonzero.
    pub fn real_diagonal(&self) -> Option<Vec<f64>> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let z = self.entries[(i, j)];
                if (i != j && z != C64::new(0.0, 0.0)) || z.im != 0.0 {
                    return None;
                }
            }
        }
        Some((0..n).map(|i| self.entries[(i, i)].re).collect())
    }
}

/// Hermitian parts of a shift operator `X`: `cos = (X + X†)/2` and
/// `sin = (X - X†)/2i`.
pub(crate) fn split_phase(name: &str, shift: &DMatrix<C64>) -> Result<PhasePair> {
    let adj = shift.adjoint();
    let cos = (shift + &adj) * C64::new(0.5, 0.0);
    // 1/2i = -i/2
    let sin = (shift - &adj) * C64::new(0.0, -0.5);
    Ok(PhasePair {
        cos: OperatorMatrix::hermitian(format!("C{name}"), cos)?,
        sin: OperatorMatrix::hermitian(format!("S{name}"), sin)?,
    })
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_dims(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        OperatorMatrix {
            label: format!("{} + {}", self.label, rhs.label),
            hermitian: self.hermitian && rhs.hermitian,
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        OperatorMatrix {
            label: format!("{} - {}", self.label, rhs.label),
            hermitian: self.hermitian && rhs.hermitian,
            entries: &self.entries - &rhs.entries,
        }
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        OperatorMatrix {
            label: format!("{}·{}", self.label, rhs.label),
            hermitian: false,
            entries: &self.entries * &rhs.entries,
        }
    }
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    check_dims(a, b)?;
    let entries = &a.entries * &b.entries - &b.entries * &a.entries;
    Ok(OperatorMatrix::new(
        format!("[{}, {}]", a.label, b.label),
        entries,
    ))
}

/// `{A, B} = AB + BA`.
pub fn anticommutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    check_dims(a, b)?;
    let entries = &a.entries * &b.entries + &b.entries * &a.entries;
    Ok(OperatorMatrix::new(
        format!("{{{}, {}}}", a.label, b.label),
        entries,
    ))
}

/// Max-entry residual of `[[A,B],C] + [[B,C],A] + [[C,A],B]`.
pub fn jacobi_residual(a: &OperatorMatrix, b: &OperatorMatrix, c: &OperatorMatrix) -> Result<f64> {
    let t1 = commutator(&commutator(a, b)?, c)?;
    let t2 = commutator(&commutator(b, c)?, a)?;
    let t3 = commutator(&commutator(c, a)?, b)?;
    Ok((&(&t1 + &t2) + &t3).max_abs())
}

/// Left and right unitarity residuals `‖P(AA† - I)P‖_max`, `‖P(A†A - I)P‖_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitarityResidual {
    pub left: f64,
    pub right: f64,
}

impl UnitarityResidual {
    pub fn max(&self) -> f64 {
        self.left.max(self.right)
    }
}

/// Measures how far `a` is from unitary, optionally on the range of the
/// projector `subspace` (identity when absent).
pub fn unitarity_deficiency(
    a: &OperatorMatrix,
    subspace: Option<&OperatorMatrix>,
) -> Result<UnitarityResidual> {
    let n = a.dim();
    let identity = DMatrix::<C64>::identity(n, n);
    let p = match subspace {
        Some(p) => {
            check_dims(a, p)?;
            p.entries.clone()
        }
        None => identity.clone(),
    };
    let adj = a.entries.adjoint();
    let left = &p * (&a.entries * &adj - &identity) * &p;
    let right = &p * (&adj * &a.entries - &identity) * &p;
    Ok(UnitarityResidual {
        left: max_abs(&left),
        right: max_abs(&right),
    })
}

/// Singular values of `a` on the range of a diagonal 0/1 projector.
pub fn singular_values_on(a: &OperatorMatrix, subspace: &OperatorMatrix) -> Result<Vec<f64>> {
    check_dims(a, subspace)?;
    let kept: Vec<usize> = (0..subspace.dim())
        .filter(|&i| subspace.get(i, i).re > 0.5)
        .collect();
    let block = a.restrict(&kept);
    let svd = block.entries.svd(false, false);
    let mut values: Vec<f64> = svd.singular_values.iter().copied().collect();
    values.sort_by(|x, y| x.total_cmp(y));
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli() -> (OperatorMatrix, OperatorMatrix, OperatorMatrix) {
        let o = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let x = DMatrix::from_row_slice(2, 2, &[o, one, one, o]);
        let y = DMatrix::from_row_slice(2, 2, &[o, -i, i, o]);
        let z = DMatrix::from_row_slice(2, 2, &[one, o, o, -one]);
        (
            OperatorMatrix::hermitian("X", x).unwrap(),
            OperatorMatrix::hermitian("Y", y).unwrap(),
            OperatorMatrix::hermitian("Z", z).unwrap(),
        )
    }

    #[test]
    fn pauli_commutator() {
        let (x, y, z) = pauli();
        let c = commutator(&x, &y).unwrap();
        let expected = z.scale(C64::new(0.0, 2.0));
        assert_eq!(c.max_abs_diff(&expected).unwrap(), 0.0);
        assert_eq!(commutator(&x, &x).unwrap().max_abs(), 0.0);
        assert_eq!(jacobi_residual(&x, &y, &z).unwrap(), 0.0);
    }

    #[test]
    fn dimension_mismatch() {
        let a = OperatorMatrix::identity(2);
        let b = OperatorMatrix::identity(3);
        assert!(matches!(
            commutator(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        );
        assert!(matches!(
            OperatorMatrix::hermitian("T", m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn deficiency_of_projector() {
        let mut m = DMatrix::<C64>::identity(3, 3);
        m[(2, 2)] = C64::new(0.0, 0.0);
        let p = OperatorMatrix::new("P", m.clone());
        let r = unitarity_deficiency(&p, None).unwrap();
        assert_eq!((r.left, r.right), (1.0, 1.0));
        let on_range = OperatorMatrix::new("P", m);
        let r = unitarity_deficiency(&p, Some(&on_range)).unwrap();
        assert_eq!(r.max(), 0.0);
    }
}
