//! Fermionic ladder operators and phase-difference operators on the
//! sixteen-state Fock space of `(l↑, l↓, r↑, r↓)`.
//!
//! Everything is built on the full space and restricted to sectors with
//! [`FermionSector::restrict`], so operator products pick up the signs of
//! the canonical ordering automatically.

use nalgebra::{DMatrix, DVector};

use super::{split_phase, OperatorMatrix, PhasePair, UnitaryPhase};
use crate::error::{Error, Result};
use crate::fock::{FermionSector, Mode};
use crate::C64;

const FOCK_DIM: usize = 16;

/// Annihilation operator `a_m` with sign `(-1)^(occupied modes before m)`.
pub fn fermion_ladder(mode: Mode) -> OperatorMatrix {
    let mut a = DMatrix::zeros(FOCK_DIM, FOCK_DIM);
    let bit = mode.bit();
    for mask in 0..FOCK_DIM as u8 {
        if mask & bit == 0 {
            continue;
        }
        let before = (mask & (bit - 1)).count_ones();
        let sign = if before.is_multiple_of(2) { 1.0 } else { -1.0 };
        a[((mask ^ bit) as usize, mask as usize)] = C64::new(sign, 0.0);
    }
    OperatorMatrix::new(format!("a_{mode}"), a)
}

fn occupation_diag(f: impl Fn(u8) -> f64) -> DMatrix<C64> {
    DMatrix::from_diagonal(&DVector::from_fn(FOCK_DIM, |mask, _| {
        C64::new(f(mask as u8), 0.0)
    }))
}

/// `N_m = a_m† a_m`.
pub fn fermion_number_op(mode: Mode) -> OperatorMatrix {
    let diag = occupation_diag(|mask| f64::from(mask & mode.bit() != 0));
    OperatorMatrix::hermitian(format!("N_{mode}"), diag).expect("real diagonal")
}

fn check_distinct(m: Mode, mp: Mode) -> Result<()> {
    if m == mp {
        return Err(Error::IdenticalModes);
    }
    Ok(())
}

/// `(N_m + 1)^{-1/2} a_m a_{m'}† (N_{m'} + 1)^{-1/2}` as a full-space matrix.
fn cn_shift(m: Mode, mp: Mode) -> DMatrix<C64> {
    let inv_sqrt = |mode: Mode| {
        occupation_diag(move |mask| 1.0 / (f64::from(mask & mode.bit() != 0) + 1.0).sqrt())
    };
    let a_m = fermion_ladder(m);
    let a_mp = fermion_ladder(mp);
    inv_sqrt(m) * a_m.entries() * a_mp.entries().adjoint() * inv_sqrt(mp)
}

/// Carruthers–Nieto style cosine and sine operators between modes `m` and `m'`.
pub fn fermion_cn_phase(m: Mode, mp: Mode) -> Result<PhasePair> {
    check_distinct(m, mp)?;
    split_phase(&format!("_CN({m},{mp})"), &cn_shift(m, mp))
}

/// Image of `mask` under the mode reflection that exchanges `m <-> m'` and
/// exchanges the remaining two modes with each other.
///
/// For `(l↑, r↓)` this is the well reflection combined with a spin flip; for
/// `(l↑, r↑)` it is the plain well reflection. It maps every `|10>`
/// configuration of the pair onto a `|01>` configuration with the same
/// particle number.
pub fn mirror_partner(mask: u8, m: Mode, mp: Mode) -> u8 {
    let others: Vec<Mode> = Mode::ALL
        .into_iter()
        .filter(|&k| k != m && k != mp)
        .collect();
    let swap = |mask: u8, x: Mode, y: Mode| {
        let bx = mask & x.bit() != 0;
        let by = mask & y.bit() != 0;
        let cleared = mask & !(x.bit() | y.bit());
        cleared | if by { x.bit() } else { 0 } | if bx { y.bit() } else { 0 }
    };
    swap(swap(mask, m, mp), others[0], others[1])
}

/// Vacuum coupling `sum_i |10>_i <01|_{R(i)}` with `R` from [`mirror_partner`].
fn vacuum_coupling(m: Mode, mp: Mode) -> DMatrix<C64> {
    let mut v = DMatrix::zeros(FOCK_DIM, FOCK_DIM);
    for mask in 0..FOCK_DIM as u8 {
        if mask & m.bit() != 0 && mask & mp.bit() == 0 {
            let partner = mirror_partner(mask, m, mp);
            v[(mask as usize, partner as usize)] = C64::new(1.0, 0.0);
        }
    }
    v
}

/// Unitary fermionic phase-difference operators: the CN part plus vacuum
/// terms coupling each `|01>` configuration to one `|10>` configuration with
/// coefficient +1. `beta` is unitary on the half-filled subspace of the pair.
pub fn fermion_unitary_phase(m: Mode, mp: Mode) -> Result<UnitaryPhase> {
    check_distinct(m, mp)?;
    let cn = fermion_cn_phase(m, mp)?;
    let vac = split_phase(&format!("_0({m},{mp})"), &vacuum_coupling(m, mp))?;
    let cos = (&cn.cos + &vac.cos).with_label(format!("C_F({m},{mp})"));
    let sin = (&cn.sin + &vac.sin).with_label(format!("S_F({m},{mp})"));
    let beta = OperatorMatrix::new(
        format!("beta_F({m},{mp})"),
        cos.entries() + sin.entries() * C64::new(0.0, 1.0),
    );
    Ok(UnitaryPhase { cos, sin, beta })
}

/// Variant with the vacuum term summed independently over every `|10>` and
/// every `|01>` state of `sector`, written in sector coordinates. Kept as a
/// counterexample: with more than one configuration it is not unitary.
pub fn literal_double_sum_phase(sector: &FermionSector, m: Mode, mp: Mode) -> Result<UnitaryPhase> {
    check_distinct(m, mp)?;
    let cn = fermion_cn_phase(m, mp)?;
    let dim = sector.dim();
    let mut v = DMatrix::zeros(dim, dim);
    let states = sector.states();
    for (i, &si) in states.iter().enumerate() {
        for (j, &sj) in states.iter().enumerate() {
            let ten = si & m.bit() != 0 && si & mp.bit() == 0;
            let one = sj & m.bit() == 0 && sj & mp.bit() != 0;
            if ten && one {
                v[(i, j)] = C64::new(1.0, 0.0);
            }
        }
    }
    let vac = split_phase("_0,sum", &v)?;
    let cos = &sector.restrict(&cn.cos) + &vac.cos;
    let sin = &sector.restrict(&cn.sin) + &vac.sin;
    let beta = OperatorMatrix::new(
        "beta_F,sum",
        cos.entries() + sin.entries() * C64::new(0.0, 1.0),
    );
    Ok(UnitaryPhase { cos, sin, beta })
}

/// Projector (in sector coordinates) onto states with exactly one of `m`,
/// `m'` occupied.
pub fn half_filled_projector(sector: &FermionSector, m: Mode, mp: Mode) -> Result<OperatorMatrix> {
    check_distinct(m, mp)?;
    let diag = DVector::from_iterator(
        sector.dim(),
        sector.states().iter().map(|&s| {
            let half = (s & m.bit() != 0) != (s & mp.bit() != 0);
            C64::new(f64::from(half), 0.0)
        }),
    );
    OperatorMatrix::hermitian("P_half", DMatrix::from_diagonal(&diag))
}

/// `W_{mm'} = N_m - N_{m'}`.
pub fn fermion_number_diff(m: Mode, mp: Mode) -> Result<OperatorMatrix> {
    check_distinct(m, mp)?;
    let diag =
        occupation_diag(|mask| f64::from(mask & m.bit() != 0) - f64::from(mask & mp.bit() != 0));
    OperatorMatrix::hermitian(format!("W_F({m},{mp})"), diag)
}

/// Well-level imbalance `(N_{l↑} + N_{l↓}) - (N_{r↑} + N_{r↓})`.
pub fn well_number_diff() -> OperatorMatrix {
    let diag = occupation_diag(|mask| {
        Mode::ALL
            .iter()
            .filter(|k| mask & k.bit() != 0)
            .map(|k| if k.is_left() { 1.0 } else { -1.0 })
            .sum()
    });
    OperatorMatrix::hermitian("W_F", diag).expect("real diagonal")
}

impl FermionSector {
    /// Full-space operator restricted to this sector.
    pub fn restrict(&self, op: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(
            op.dim(),
            FOCK_DIM,
            "sector restriction expects a full-space operator"
        );
        let idx: Vec<usize> = self.states().iter().map(|&s| s as usize).collect();
        op.restrict(&idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{parse_mask_label, PairBasis};
    use crate::ops::{anticommutator, singular_values_on, unitarity_deficiency};

    fn idx(label: &str) -> usize {
        parse_mask_label(label).unwrap() as usize
    }

    #[test]
    fn canonical_anticommutators() {
        let id = OperatorMatrix::identity(FOCK_DIM);
        for m in Mode::ALL {
            for mp in Mode::ALL {
                let a = fermion_ladder(m);
                let b = fermion_ladder(mp);
                let ab_dag = anticommutator(&a, &b.adjoint()).unwrap();
                let expected = if m == mp {
                    id.clone()
                } else {
                    OperatorMatrix::zeros(FOCK_DIM)
                };
                assert_eq!(ab_dag.max_abs_diff(&expected).unwrap(), 0.0);
                assert_eq!(anticommutator(&a, &b).unwrap().max_abs(), 0.0);
                assert_eq!(
                    anticommutator(&a.adjoint(), &b.adjoint())
                        .unwrap()
                        .max_abs(),
                    0.0
                );
            }
        }
    }

    #[test]
    fn number_operator_is_occupancy() {
        let a = fermion_ladder(Mode::LeftUp);
        let n = &a.adjoint() * &a;
        let diag = n.real_diagonal().unwrap();
        for mask in 0..16u8 {
            assert_eq!(diag[mask as usize], f64::from(mask & 1));
        }
        assert_eq!(
            n.max_abs_diff(&fermion_number_op(Mode::LeftUp)).unwrap(),
            0.0
        );
    }

    #[test]
    fn cn_vanishes_on_singlet_for_opposite_spins() {
        let cn = fermion_cn_phase(Mode::LeftUp, Mode::RightDown).unwrap();
        let sector = FermionSector::pair_singlet();
        assert_eq!(sector.restrict(&cn.cos).max_abs(), 0.0);
        assert_eq!(sector.restrict(&cn.sin).max_abs(), 0.0);
    }

    #[test]
    fn cn_shift_same_spin_action() {
        let u = cn_shift(Mode::LeftUp, Mode::RightUp);
        let pair = crate::fock::fermion_sector(Some(2), None).unwrap();
        let mut moved = Vec::new();
        for &s in pair.states() {
            for &t in pair.states() {
                let z = u[(t as usize, s as usize)];
                if z.norm() > 0.0 {
                    assert_eq!(z.norm(), 1.0);
                    moved.push((s as usize, t as usize));
                }
            }
        }
        moved.sort();
        let mut expected = vec![(idx("↑↓,0"), idx("↓,↑")), (idx("↑,↓"), idx("0,↑↓"))];
        expected.sort();
        assert_eq!(moved, expected);
    }

    #[test]
    fn cn_not_unitary_on_half_filled() {
        let full = FermionSector::full();
        for (m, mp) in [
            (Mode::LeftUp, Mode::RightUp),
            (Mode::LeftUp, Mode::RightDown),
        ] {
            let u = OperatorMatrix::new("U", cn_shift(m, mp));
            let p = half_filled_projector(&full, m, mp).unwrap();
            assert!(unitarity_deficiency(&u, Some(&p)).unwrap().max() > 0.5);
        }
    }

    #[test]
    fn identical_modes_rejected() {
        assert!(matches!(
            fermion_cn_phase(Mode::LeftUp, Mode::LeftUp),
            Err(Error::IdenticalModes)
        ));
        assert!(fermion_unitary_phase(Mode::RightDown, Mode::RightDown).is_err());
        assert!(fermion_number_diff(Mode::LeftDown, Mode::LeftDown).is_err());
    }

    #[test]
    fn mirror_partner_is_a_bijection_onto_01_states() {
        for (m, mp) in [
            (Mode::LeftUp, Mode::RightUp),
            (Mode::LeftUp, Mode::RightDown),
            (Mode::LeftDown, Mode::RightDown),
            (Mode::LeftUp, Mode::LeftDown),
        ] {
            let mut images = Vec::new();
            for mask in 0..16u8 {
                assert_eq!(mirror_partner(mirror_partner(mask, m, mp), m, mp), mask);
                if mask & m.bit() != 0 && mask & mp.bit() == 0 {
                    let p = mirror_partner(mask, m, mp);
                    assert!(p & m.bit() == 0 && p & mp.bit() != 0);
                    assert_eq!(p.count_ones(), mask.count_ones());
                    images.push(p);
                }
            }
            images.sort();
            images.dedup();
            assert_eq!(images.len(), 4);
        }
    }

    #[test]
    fn unitary_cosine_on_singlet_opposite_spins() {
        let u = fermion_unitary_phase(Mode::LeftUp, Mode::RightDown).unwrap();
        let sector = FermionSector::pair_singlet();
        let cos = sector.restrict(&u.cos);
        let a = sector.index_of(parse_mask_label("↑↓,0").unwrap()).unwrap();
        let b = sector.index_of(parse_mask_label("0,↑↓").unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i, j) == (a, b) || (i, j) == (b, a) {
                    0.5
                } else {
                    0.0
                };
                assert_eq!(cos.get(i, j), C64::new(want, 0.0), "({i},{j})");
            }
        }
    }

    #[test]
    fn beta_is_unitary_on_half_filled_space() {
        let full = FermionSector::full();
        for (m, mp) in [
            (Mode::LeftUp, Mode::RightUp),
            (Mode::LeftUp, Mode::RightDown),
            (Mode::LeftDown, Mode::RightDown),
        ] {
            let u = fermion_unitary_phase(m, mp).unwrap();
            let p = half_filled_projector(&full, m, mp).unwrap();
            assert!(unitarity_deficiency(&u.beta, Some(&p)).unwrap().max() <= 1e-12);
            for s in singular_values_on(&u.beta, &p).unwrap() {
                assert!((s - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn beta_annihilates_empty_pair_configurations() {
        let u = fermion_unitary_phase(Mode::LeftUp, Mode::RightUp).unwrap();
        for mask in [0u8, idx("↓,↓") as u8, idx("↓,0") as u8] {
            let col = u.beta.entries().column(mask as usize);
            assert_eq!(col.camax(), 0.0);
        }
    }

    #[test]
    fn literal_double_sum_breaks_unitarity() {
        let pair = crate::fock::fermion_sector(Some(2), None).unwrap();
        let lit = literal_double_sum_phase(&pair, Mode::LeftUp, Mode::RightUp).unwrap();
        let p = half_filled_projector(&pair, Mode::LeftUp, Mode::RightUp).unwrap();
        assert!(unitarity_deficiency(&lit.beta, Some(&p)).unwrap().max() >= 0.5);
    }

    #[test]
    fn number_differences() {
        let w = well_number_diff();
        assert_eq!(w.get(idx("0,↑↓"), idx("0,↑↓")).re, -2.0);
        assert_eq!(w.get(idx("↑,↓"), idx("↑,↓")).re, 0.0);
        let wm = fermion_number_diff(Mode::LeftUp, Mode::RightDown).unwrap();
        assert_eq!(wm.get(idx("↑↓,0"), idx("↑↓,0")).re, 1.0);
        // pair-basis lift keeps the imbalance diagonal
        let left = PairBasis.fock_state("↑↓,0").unwrap();
        let lifted = PairBasis.lift(&left).unwrap();
        assert_eq!(w.apply(&lifted).unwrap()[idx("↑↓,0")], C64::new(2.0, 0.0));
    }
}
