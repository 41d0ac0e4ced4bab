//! Finite Fock spaces for the double well and normalized states over them.
//!
//! Two families of spaces are handled here:
//!
//! * [`BosonDimerBasis`]: the fixed-`N` two-mode bosonic space. Index `l` is
//!   the left-well occupation, so index `l` labels `|l, N - l>`.
//! * [`FermionSector`]: subsets of the sixteen-state Fock space of four
//!   fermionic modes `(l↑, l↓, r↑, r↓)`. A state is an occupation bitmask with
//!   bit `k` set when mode `k` is occupied, and its canonical ket is
//!   `a†_{k1} a†_{k2} ... |0>` with `k1 < k2 < ...` in mode order.
//!
//! [`PairBasis`] is the three-dimensional singlet basis used for the
//! interacting fermion pair, with a lift into the full Fock space.

use std::fmt;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::C64;

const NORM_TOL: f64 = 1e-12;

/// Fixed-`N` two-mode bosonic Fock basis, `l <-> |n_l = l, n_r = N - l>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BosonDimerBasis {
    total: usize,
}

/// Ways to name a boson basis state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BosonLabel {
    /// All particles in the right well, `|0, N>`.
    RightWell,
    /// All particles in the left well, `|N, 0>`.
    LeftWell,
    /// Given left-well occupation.
    Left(usize),
}

impl std::str::FromStr for BosonLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "right-well" => Ok(BosonLabel::RightWell),
            "left-well" => Ok(BosonLabel::LeftWell),
            other => other
                .parse::<usize>()
                .map(BosonLabel::Left)
                .map_err(|_| Error::UnknownLabel(s.to_string())),
        }
    }
}

/// Builds the fixed-`N` dimer basis. `N = 0` carries no phase-difference
/// dynamics and is rejected.
pub fn boson_basis(total: usize) -> Result<BosonDimerBasis> {
    if total == 0 {
        return Err(Error::DegenerateBasis);
    }
    Ok(BosonDimerBasis { total })
}

impl BosonDimerBasis {
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn dim(&self) -> usize {
        self.total + 1
    }

    /// `(n_l, n_r)` for basis index `l`.
    pub fn occupations(&self, index: usize) -> (usize, usize) {
        assert!(index <= self.total, "basis index {index} out of range");
        (index, self.total - index)
    }

    pub fn index_of(&self, label: BosonLabel) -> Result<usize> {
        match label {
            BosonLabel::RightWell => Ok(0),
            BosonLabel::LeftWell => Ok(self.total),
            BosonLabel::Left(l) if l <= self.total => Ok(l),
            BosonLabel::Left(l) => Err(Error::UnknownLabel(format!(
                "n_l = {l} with N = {}",
                self.total
            ))),
        }
    }

    pub fn fock_state(&self, label: BosonLabel) -> Result<StateVector> {
        Ok(StateVector::basis(self.dim(), self.index_of(label)?))
    }

    pub fn ket_label(&self, index: usize) -> String {
        let (l, r) = self.occupations(index);
        format!("|{l},{r}>")
    }
}

/// One of the four single-particle modes, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    LeftUp = 0,
    LeftDown = 1,
    RightUp = 2,
    RightDown = 3,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::LeftUp, Mode::LeftDown, Mode::RightUp, Mode::RightDown];

    pub fn bit(self) -> u8 {
        1 << (self as u8)
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Twice the spin projection carried by one fermion in this mode.
    pub fn twice_sz(self) -> i32 {
        match self {
            Mode::LeftUp | Mode::RightUp => 1,
            Mode::LeftDown | Mode::RightDown => -1,
        }
    }

    pub fn is_left(self) -> bool {
        matches!(self, Mode::LeftUp | Mode::LeftDown)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::LeftUp => "l-up",
            Mode::LeftDown => "l-down",
            Mode::RightUp => "r-up",
            Mode::RightDown => "r-down",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "l-up" | "l↑" => Ok(Mode::LeftUp),
            "l-down" | "l↓" => Ok(Mode::LeftDown),
            "r-up" | "r↑" => Ok(Mode::RightUp),
            "r-down" | "r↓" => Ok(Mode::RightDown),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }
}

/// Spin projection `S_z`, stored as the integer `2 S_z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinProjection(i32);

impl SpinProjection {
    pub const ZERO: SpinProjection = SpinProjection(0);

    pub fn from_twice(twice: i32) -> Self {
        SpinProjection(twice)
    }

    /// `sz` must be a multiple of 1/2.
    pub fn new(sz: f64) -> Result<Self> {
        let twice = 2.0 * sz;
        if !twice.is_finite() || (twice - twice.round()).abs() > 1e-9 {
            return Err(Error::EmptySector(format!(
                "S_z = {sz} is not a half-integer"
            )));
        }
        Ok(SpinProjection(twice.round() as i32))
    }

    pub fn twice(self) -> i32 {
        self.0
    }
}

/// Twice the total `S_z` of an occupation bitmask.
pub fn mask_twice_sz(mask: u8) -> i32 {
    Mode::ALL
        .iter()
        .filter(|m| mask & m.bit() != 0)
        .map(|m| m.twice_sz())
        .sum()
}

/// Well-level ket notation, e.g. `|↑↓,0>` or `|↑,↓>`.
pub fn mask_label(mask: u8) -> String {
    fn side(up: bool, down: bool) -> &'static str {
        match (up, down) {
            (false, false) => "0",
            (true, false) => "↑",
            (false, true) => "↓",
            (true, true) => "↑↓",
        }
    }
    let has = |m: Mode| mask & m.bit() != 0;
    format!(
        "|{},{}>",
        side(has(Mode::LeftUp), has(Mode::LeftDown)),
        side(has(Mode::RightUp), has(Mode::RightDown))
    )
}

/// Parses `left,right` well notation (`0`, `↑`, `↓`, `↑↓`, or ASCII `u`, `d`,
/// `ud`) into an occupation bitmask.
pub fn parse_mask_label(label: &str) -> Result<u8> {
    let bad = || Error::UnknownLabel(label.to_string());
    let trimmed = label.trim().trim_start_matches('|').trim_end_matches('>');
    let (left, right) = trimmed.split_once(',').ok_or_else(bad)?;
    let side = |s: &str| -> Result<(bool, bool)> {
        match s.trim() {
            "0" => Ok((false, false)),
            "↑" | "u" => Ok((true, false)),
            "↓" | "d" => Ok((false, true)),
            "↑↓" | "ud" => Ok((true, true)),
            _ => Err(bad()),
        }
    };
    let (lu, ld) = side(left)?;
    let (ru, rd) = side(right)?;
    let mut mask = 0;
    for (occupied, mode) in [
        (lu, Mode::LeftUp),
        (ld, Mode::LeftDown),
        (ru, Mode::RightUp),
        (rd, Mode::RightDown),
    ] {
        if occupied {
            mask |= mode.bit();
        }
    }
    Ok(mask)
}

/// Ordered subset of the four-mode fermionic Fock space.
///
/// States are listed by ascending bitmask. Filters apply conjunctively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermionSector {
    states: Vec<u8>,
    particle_count: Option<u32>,
    sz: Option<SpinProjection>,
}

pub fn fermion_sector(
    particle_count: Option<u32>,
    sz: Option<SpinProjection>,
) -> Result<FermionSector> {
    if let Some(n) = particle_count {
        if n > 4 {
            return Err(Error::EmptySector(format!("{n} fermions in 4 modes")));
        }
    }
    let states: Vec<u8> = (0u8..16)
        .filter(|&mask| particle_count.is_none_or(|n| mask.count_ones() == n))
        .filter(|&mask| sz.is_none_or(|s| mask_twice_sz(mask) == s.twice()))
        .collect();
    if states.is_empty() {
        return Err(Error::EmptySector(format!(
            "no state with particle count {particle_count:?} and 2S_z {:?}",
            sz.map(|s| s.twice())
        )));
    }
    Ok(FermionSector {
        states,
        particle_count,
        sz,
    })
}

impl FermionSector {
    /// All sixteen states.
    pub fn full() -> Self {
        fermion_sector(None, None).expect("full Fock space is never empty")
    }

    /// Two fermions with `S_z = 0`: `|↑↓,0>`, `|↓,↑>`, `|↑,↓>`, `|0,↑↓>`.
    pub fn pair_singlet() -> Self {
        fermion_sector(Some(2), Some(SpinProjection::ZERO)).expect("non-empty")
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[u8] {
        &self.states
    }

    pub fn particle_count(&self) -> Option<u32> {
        self.particle_count
    }

    pub fn spin_projection(&self) -> Option<SpinProjection> {
        self.sz
    }

    pub fn index_of(&self, mask: u8) -> Option<usize> {
        self.states.iter().position(|&s| s == mask)
    }

    pub fn fock_state(&self, label: &str) -> Result<StateVector> {
        let mask = parse_mask_label(label)?;
        let index = self
            .index_of(mask)
            .ok_or_else(|| Error::UnknownLabel(format!("{label} is not in this sector")))?;
        Ok(StateVector::basis(self.dim(), index))
    }

    /// Embeds a sector state into the sixteen-dimensional space.
    pub fn embed(&self, state: &StateVector) -> Result<StateVector> {
        state.check_dim(self.dim())?;
        let mut full = DVector::zeros(16);
        for (amp, &mask) in state.amplitudes().iter().zip(&self.states) {
            full[mask as usize] = *amp;
        }
        Ok(StateVector { amps: full })
    }
}

/// Three-dimensional basis of the interacting fermion pair:
/// `sym = (|↑,↓> + |↓,↑>)/√2`, `|↑↓,0>`, `|0,↑↓>`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairBasis;

impl PairBasis {
    pub const DIM: usize = 3;
    pub const SPLIT: usize = 0;
    pub const LEFT_PAIR: usize = 1;
    pub const RIGHT_PAIR: usize = 2;

    pub fn labels() -> [&'static str; 3] {
        ["sym", "↑↓,0", "0,↑↓"]
    }

    pub fn fock_state(&self, label: &str) -> Result<StateVector> {
        let index = match label.trim() {
            "sym" => Self::SPLIT,
            "↑↓,0" | "ud,0" | "left-well" => Self::LEFT_PAIR,
            "0,↑↓" | "0,ud" | "right-well" => Self::RIGHT_PAIR,
            other => return Err(Error::UnknownLabel(other.to_string())),
        };
        Ok(StateVector::basis(Self::DIM, index))
    }

    /// Lifts a pair-basis state into the sixteen-dimensional Fock space.
    pub fn lift(&self, state: &StateVector) -> Result<StateVector> {
        state.check_dim(Self::DIM)?;
        let c = state.amplitudes();
        let split = c[Self::SPLIT] * std::f64::consts::FRAC_1_SQRT_2;
        let mut full = DVector::zeros(16);
        full[(Mode::LeftUp.bit() | Mode::RightDown.bit()) as usize] = split;
        full[(Mode::LeftDown.bit() | Mode::RightUp.bit()) as usize] = split;
        full[(Mode::LeftUp.bit() | Mode::LeftDown.bit()) as usize] = c[Self::LEFT_PAIR];
        full[(Mode::RightUp.bit() | Mode::RightDown.bit()) as usize] = c[Self::RIGHT_PAIR];
        Ok(StateVector { amps: full })
    }
}

/// Complex amplitude vector of unit norm.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: DVector<C64>,
}

impl StateVector {
    /// Unit vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = DVector::zeros(dim);
        amps[index] = C64::new(1.0, 0.0);
        StateVector { amps }
    }

    /// Accepts amplitudes whose norm is already 1 within `tol`; the stored
    /// vector is rescaled to unit norm.
    pub fn from_amplitudes(amps: DVector<C64>, tol: f64) -> Result<Self> {
        let norm = amps.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized(norm));
        }
        Ok(StateVector {
            amps: amps.unscale(norm),
        })
    }

    /// Rescales any nonzero vector to unit norm.
    pub fn normalized(amps: DVector<C64>) -> Result<Self> {
        let norm = amps.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized(norm));
        }
        Ok(StateVector {
            amps: amps.unscale(norm),
        })
    }

    /// Wraps amplitudes produced by a norm-preserving map without touching
    /// them. Callers are responsible for the norm.
    pub(crate) fn from_raw(amps: DVector<C64>) -> Self {
        StateVector { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOL
    }

    /// Probability `|c_i|^2`.
    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        self.check_dim(other.dim())?;
        Ok(self.amps.dotc(&other.amps))
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boson_basis_dimensions() {
        assert_eq!(boson_basis(1).unwrap().dim(), 2);
        assert_eq!(boson_basis(2).unwrap().dim(), 3);
        assert_eq!(boson_basis(10).unwrap().dim(), 11);
        assert!(matches!(boson_basis(0), Err(Error::DegenerateBasis)));
    }

    #[test]
    fn boson_index_map() {
        let b = boson_basis(2).unwrap();
        let kets: Vec<_> = (0..b.dim()).map(|l| b.ket_label(l)).collect();
        assert_eq!(kets, ["|0,2>", "|1,1>", "|2,0>"]);
        for l in 0..b.dim() {
            let (nl, nr) = b.occupations(l);
            assert_eq!(nl + nr, 2);
        }
    }

    #[test]
    fn boson_fock_states() {
        let b = boson_basis(2).unwrap();
        let right = b.fock_state(BosonLabel::RightWell).unwrap();
        assert_eq!(right.amplitudes()[0], C64::new(1.0, 0.0));
        assert_eq!(right.probability(1) + right.probability(2), 0.0);

        let b5 = boson_basis(5).unwrap();
        let left = b5.fock_state(BosonLabel::Left(5)).unwrap();
        assert_eq!(left.probability(5), 1.0);
        assert_eq!(b5.fock_state(BosonLabel::LeftWell).unwrap(), left);
        assert!(matches!(
            b5.fock_state(BosonLabel::Left(6)),
            Err(Error::UnknownLabel(_))
        ));
        assert!("sideways".parse::<BosonLabel>().is_err());
    }

    #[test]
    fn sector_counts() {
        assert_eq!(fermion_sector(None, None).unwrap().dim(), 16);
        assert_eq!(fermion_sector(Some(2), None).unwrap().dim(), 6);
        let singlet = fermion_sector(Some(2), Some(SpinProjection::ZERO)).unwrap();
        let labels: Vec<_> = singlet.states().iter().map(|&m| mask_label(m)).collect();
        assert_eq!(labels, ["|↑↓,0>", "|↓,↑>", "|↑,↓>", "|0,↑↓>"]);
    }

    #[test]
    fn inconsistent_filters_are_empty() {
        let one = SpinProjection::new(1.0).unwrap();
        assert!(matches!(
            fermion_sector(Some(1), Some(one)),
            Err(Error::EmptySector(_))
        ));
        assert!(matches!(
            fermion_sector(Some(5), None),
            Err(Error::EmptySector(_))
        ));
        assert!(SpinProjection::new(0.3).is_err());
    }

    #[test]
    fn fermion_fock_state_lookup() {
        let singlet = FermionSector::pair_singlet();
        let psi = singlet.fock_state("0,↑↓").unwrap();
        let idx = singlet.index_of(parse_mask_label("0,ud").unwrap()).unwrap();
        assert_eq!(psi.probability(idx), 1.0);
        assert!(singlet.fock_state("↑,↑").is_err());
        assert!(singlet.fock_state("nonsense").is_err());
    }

    #[test]
    fn mask_labels_round_trip() {
        for mask in 0u8..16 {
            assert_eq!(parse_mask_label(&mask_label(mask)).unwrap(), mask);
        }
    }

    #[test]
    fn pair_lift_preserves_norm() {
        let c = DVector::from_vec(vec![
            C64::new(0.6, 0.0),
            C64::new(0.0, 0.48),
            C64::new(0.64, 0.0),
        ]);
        let psi = StateVector::from_amplitudes(c, 1e-9).unwrap();
        let full = PairBasis.lift(&psi).unwrap();
        assert!((full.norm() - 1.0).abs() < 1e-15);
        let singlet = FermionSector::pair_singlet();
        let weight: f64 = singlet
            .states()
            .iter()
            .map(|&m| full.probability(m as usize))
            .sum();
        assert!((weight - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unnormalized_amplitudes_rejected() {
        let c = DVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
        assert!(StateVector::from_amplitudes(c.clone(), 1e-9).is_err());
        assert!(StateVector::normalized(c).unwrap().is_normalized());
    }
}
