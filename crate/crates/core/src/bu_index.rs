//! The Z2-index of a double cover `N_φ → N`.
//!
//! Index 3 iff the cup-cube of φ in `H¹(N; Z2)` is nonzero, index 1 iff φ
//! factors through `Z ↠ Z2`, index 2 otherwise. Both criteria are computed
//! generically here; [`listed_index_one`] and [`listed_index_three`] are the
//! explicit per-family lists they must agree with.

use std::fmt;

use serde::Serialize;

use crate::epimorphisms::Z2Char;
use crate::error::Result;
use crate::homology::h1;
use crate::nil::{Family, NilManifold};
use crate::seifert::Epsilon;

/// Which criterion decided the index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `d = 0`, `φ(h) = 1` and `c` (or `c + 2g′`) is `2 mod 4`.
    CupCubeRegular,
    /// `d > 0` and `Σ φ(s_j)·a_j/2` over even `a_j` is odd.
    CupCubeExceptional,
    /// φ kills the torsion of H1, so it factors through Z.
    FactorsThroughZ,
    Neither,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::CupCubeRegular => "cup-cube nonzero: d = 0, phi(h) = 1, c (+2g') = 2 mod 4",
            Criterion::CupCubeExceptional => "cup-cube nonzero: d > 0, sum phi(s_j) a_j/2 odd",
            Criterion::FactorsThroughZ => "phi kills torsion of H1, factors through Z -> Z2",
            Criterion::Neither => "cup-cube zero and phi nonzero on torsion",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub index: u8,
    pub criterion: Criterion,
}

/// φ factors through the projection `Z ↠ Z2`, i.e. vanishes on the torsion
/// subgroup of H1.
pub fn index_is_one(n: &NilManifold, phi: &Z2Char) -> Result<bool> {
    phi.validate(n)?;
    Ok(h1(n)?.torsion_subgroup_killed_by(&phi.values()))
}

fn cup_cube(n: &NilManifold, phi: &Z2Char) -> Result<Option<Criterion>> {
    phi.validate(n)?;
    let inv = n.expand();
    let cd = inv.cd_invariants()?;
    if cd.d == 0 {
        let c = match inv.epsilon() {
            Epsilon::Orientable => cd.c,
            Epsilon::NonOrientable => cd.c + 2 * i64::from(inv.g_prime()),
        };
        return Ok((phi.h() && c.rem_euclid(4) == 2).then_some(Criterion::CupCubeRegular));
    }
    let sum: i64 = inv
        .pairs()
        .iter()
        .zip(&phi.s)
        .filter(|(p, _)| p.a % 2 == 0)
        .map(|(p, &x)| i64::from(x) * p.a / 2)
        .sum();
    Ok((sum % 2 == 1).then_some(Criterion::CupCubeExceptional))
}

pub fn cup_cube_nonzero(n: &NilManifold, phi: &Z2Char) -> Result<bool> {
    Ok(cup_cube(n, phi)?.is_some())
}

/// The index in `{1, 2, 3}` and the criterion that fired.
pub fn z2_index(n: &NilManifold, phi: &Z2Char) -> Result<IndexReport> {
    let cube = cup_cube(n, phi)?;
    let one = index_is_one(n, phi)?;
    assert!(!(one && cube.is_some()), "index 1 and index 3 criteria both hold for {n}, {phi}");
    Ok(match (cube, one) {
        (Some(criterion), _) => IndexReport { index: 3, criterion },
        (None, true) => IndexReport { index: 1, criterion: Criterion::FactorsThroughZ },
        (None, false) => IndexReport { index: 2, criterion: Criterion::Neither },
    })
}

/// The explicit list of index-1 covers: class T with `φ(h) = 0`, and class
/// K with `φ(h) = 0`, `φ(v) = (1,1)`.
pub fn listed_index_one(n: &NilManifold, phi: &Z2Char) -> bool {
    match n.family() {
        Family::T => phi.h == 0,
        Family::K => phi.h == 0 && phi.v == [1, 1],
        _ => false,
    }
}

/// The explicit list of index-3 covers: T or K with `b ≡ 2 mod 4` and
/// `φ(h) = 1`; 333 with `b ≡ 2 + Σb_i mod 4`; 244 with `φ(s_1) = 1`.
pub fn listed_index_three(n: &NilManifold, phi: &Z2Char) -> bool {
    let b = n.b();
    match n.family() {
        Family::T | Family::K => b.rem_euclid(4) == 2 && phi.h == 1,
        Family::S333 => (b - 2 - n.params().iter().sum::<i64>()).rem_euclid(4) == 0,
        Family::S244 => phi.s[0] == 1,
        _ => false,
    }
}
