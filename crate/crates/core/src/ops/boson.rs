use nalgebra::DMatrix;

use super::{split_phase, OperatorMatrix, PhasePair, UnitaryPhase};
use crate::error::Result;
use crate::fock::BosonDimerBasis;
use crate::C64;

/// Matrix of `(N_l + 1)^{-1/2} a_l a_r† (N_r + 1)^{-1/2}` on the fixed-`N`
/// sector. Each factor is evaluated on occupation numbers; the product maps
/// `|n_l, n_r> -> |n_l - 1, n_r + 1>` with unit coefficient.
fn cn_shift(basis: &BosonDimerBasis) -> DMatrix<C64> {
    let dim = basis.dim();
    let mut t = DMatrix::zeros(dim, dim);
    for l in 1..dim {
        let (nl, nr) = basis.occupations(l);
        let inv_sqrt = |n: usize| 1.0 / ((n + 1) as f64).sqrt();
        let coeff = inv_sqrt(nr)                // (N_r + 1)^{-1/2}
            * ((nr + 1) as f64).sqrt()          // a_r†
            * (nl as f64).sqrt()                // a_l
            * inv_sqrt(nl - 1); // (N_l + 1)^{-1/2}
        t[(l - 1, l)] = C64::new(coeff, 0.0);
    }
    t
}

/// Corner operator `|N,0><0,N|`.
fn vacuum_corner(basis: &BosonDimerBasis) -> DMatrix<C64> {
    let dim = basis.dim();
    let mut v = DMatrix::zeros(dim, dim);
    v[(basis.total(), 0)] = C64::new(1.0, 0.0);
    v
}

/// Carruthers–Nieto cosine and sine phase-difference operators.
pub fn boson_cn_phase(basis: &BosonDimerBasis) -> Result<PhasePair> {
    split_phase("_CN", &cn_shift(basis))
}

/// Vacuum terms coupling `|N,0>` and `|0,N>`:
/// `C0 = (|N,0><0,N| + h.c.)/2`, `S0 = (|N,0><0,N| - h.c.)/2i`.
pub fn boson_vacuum_phase(basis: &BosonDimerBasis) -> Result<PhasePair> {
    split_phase("_0", &vacuum_corner(basis))
}

/// Unitary cosine/sine operators (CN part plus vacuum terms) and
/// `beta = C + iS`, which acts as the cyclic shift of the Fock ladder.
pub fn boson_unitary_phase(basis: &BosonDimerBasis) -> Result<UnitaryPhase> {
    let cn = boson_cn_phase(basis)?;
    let vac = boson_vacuum_phase(basis)?;
    let cos = (&cn.cos + &vac.cos).with_label("C_B");
    let sin = (&cn.sin + &vac.sin).with_label("S_B");
    let beta = OperatorMatrix::new("beta", cos.entries() + sin.entries() * C64::new(0.0, 1.0));
    Ok(UnitaryPhase { cos, sin, beta })
}

/// Population imbalance `W = N_l - N_r`, diagonal with entry `2l - N`.
pub fn boson_number_diff(basis: &BosonDimerBasis) -> OperatorMatrix {
    let n = basis.total() as f64;
    let diag = nalgebra::DVector::from_fn(basis.dim(), |l, _| C64::new(2.0 * l as f64 - n, 0.0));
    OperatorMatrix::hermitian("W", DMatrix::from_diagonal(&diag)).expect("diagonal and real")
}
