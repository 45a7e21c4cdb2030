//! Cross-checks of the whole pipeline against [`crate::reference`] over
//! every family, every fibre option and a range of `b`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bu_index::{cup_cube_nonzero, index_is_one, listed_index_one, listed_index_three, z2_index};
use crate::coverings::{covers_of, double_cover, quotients_of, verify_cover};
use crate::epimorphisms::{apply_move, applicable_moves, enumerate_epis, equivalence_classes};
use crate::error::Result;
use crate::homology::h1;
use crate::nil::{Family, NilManifold};
use crate::presentation::fundamental_group;
use crate::reference::{class_sizes, stated_cover, stated_homology, stated_quotients, table_row};

/// Every Nil manifold with `b_min ≤ b ≤ b_min + span`, ordered by family,
/// fibre option, then `b`.
pub fn sweep_manifolds(span: i64) -> Vec<NilManifold> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        for opt in fam.fibre_options() {
            let first = (-20..)
                .find_map(|b| NilManifold::new(fam, b, opt).ok())
                .expect("some b is admissible");
            let lo = first.b_min().expect("valid manifold");
            for b in lo..=lo + span {
                out.push(NilManifold::new(fam, b, opt).expect("b ≥ b_min"));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Check {
    Table,
    Homology,
    Partitions,
    Covers,
    Oracle,
    IndexCriteria,
    Quotients,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Table,
        Check::Homology,
        Check::Partitions,
        Check::Covers,
        Check::Oracle,
        Check::IndexCriteria,
        Check::Quotients,
    ];

    /// Number of the matching acceptance criterion.
    pub fn number(self) -> usize {
        Check::ALL.iter().position(|&c| c == self).expect("listed") + 1
    }

    pub fn title(self) -> &'static str {
        match self {
            Check::Table => "table (c, d, b_min)",
            Check::Homology => "first homology and generator images",
            Check::Partitions => "epimorphism counts and class partitions",
            Check::Covers => "double cover formulas",
            Check::Oracle => "Reidemeister-Schreier oracle and Euler numbers",
            Check::IndexCriteria => "index criteria against explicit lists",
            Check::Quotients => "2-quotients with indices",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.title())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: Check,
    /// Number of individual comparisons made.
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Outcome = (usize, Vec<String>);

fn run(check: Check, n: &NilManifold) -> Outcome {
    let res = match check {
        Check::Table => check_table(n),
        Check::Homology => check_homology(n),
        Check::Partitions => check_partitions(n),
        Check::Covers => check_covers(n),
        Check::Oracle => check_oracle(n),
        Check::IndexCriteria => check_index(n),
        Check::Quotients => check_quotients(n),
    };
    res.unwrap_or_else(|e| (1, vec![format!("{n}: {e}")]))
}

fn check_table(n: &NilManifold) -> Result<Outcome> {
    let Some(row) = table_row(n.family(), n.params()) else {
        return Ok((1, vec![format!("{n}: no table row")]));
    };
    let cd = n.expand().cd_invariants()?;
    let got = (cd.c, cd.d, n.b_min()?);
    let want = (row.c_slope * n.b() + row.c_offset, row.d, row.b_min);
    let fail = (got != want).then(|| format!("{n}: (c, d, b_min) = {got:?}, table says {want:?}"));
    Ok((1, fail.into_iter().collect()))
}

fn check_homology(n: &NilManifold) -> Result<Outcome> {
    let g = h1(n)?;
    let fail = stated_homology(n).check(n, &g).err().map(|e| format!("{n}: {e}"));
    Ok((1, fail.into_iter().collect()))
}

fn check_partitions(n: &NilManifold) -> Result<Outcome> {
    let mut fails = Vec::new();
    let epis = enumerate_epis(n);
    let pres = fundamental_group(&n.expand());
    for phi in &epis {
        if let Err(e) = pres.check_epimorphism(&phi.values()) {
            fails.push(format!("{n}: {phi} is not an epimorphism: {e}"));
        }
    }
    let rank = h1(n)?.mod2_rank();
    if epis.len() != (1 << rank) - 1 {
        fails.push(format!("{n}: {} epimorphisms, mod 2 rank {rank}", epis.len()));
    }
    let mut sizes = equivalence_classes(n).sizes();
    sizes.sort_unstable();
    let want = class_sizes(n);
    if sizes != want {
        fails.push(format!("{n}: class sizes {sizes:?}, expected {want:?}"));
    }
    Ok((epis.len() + 2, fails))
}

fn check_covers(n: &NilManifold) -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut cases = 0;
    for phi in enumerate_epis(n) {
        let got = double_cover(n, &phi)?;
        let want = stated_cover(n, &phi)?;
        if got != want {
            fails.push(format!("{n}, {phi}: cover {got}, expected {want}"));
        }
        cases += 1;
        if got.euler_number()? <= crate::rational::Rational::ZERO {
            fails.push(format!("{n}, {phi}: cover {got} is not Nil"));
        }
        for mv in applicable_moves(&phi, n) {
            let moved = apply_move(&phi, mv, n)?;
            cases += 1;
            if double_cover(n, &moved)? != got || stated_cover(n, &moved)? != want {
                fails.push(format!("{n}, {phi}: cover changes under {mv}"));
            }
        }
    }
    // classes kept apart must be told apart by cover or index
    let descs = covers_of(n)?;
    for (i, a) in descs.iter().enumerate() {
        for b in &descs[i + 1..] {
            cases += 1;
            if (a.cover.clone(), a.index) == (b.cover.clone(), b.index) {
                fails.push(format!("{n}: classes {} and {} share cover and index", a.phi, b.phi));
            }
        }
    }
    Ok((cases, fails))
}

fn check_oracle(n: &NilManifold) -> Result<Outcome> {
    let mut fails = Vec::new();
    let epis = enumerate_epis(n);
    for phi in &epis {
        let cover = double_cover(n, phi)?;
        if !verify_cover(n, phi, &cover)? {
            fails.push(format!("{n}, {phi}: kernel does not match {cover}"));
        }
    }
    Ok((epis.len(), fails))
}

fn check_index(n: &NilManifold) -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut cases = 0;
    for phi in enumerate_epis(n) {
        cases += 2;
        let one = index_is_one(n, &phi)?;
        if one != listed_index_one(n, &phi) {
            fails.push(format!("{n}, {phi}: factors through Z = {one}, list disagrees"));
        }
        let cube = cup_cube_nonzero(n, &phi)?;
        if cube != listed_index_three(n, &phi) {
            fails.push(format!("{n}, {phi}: cup-cube nonzero = {cube}, list disagrees"));
        }
    }
    for class in equivalence_classes(n).classes {
        let idx = z2_index(n, &class.representative)?.index;
        for phi in &class.members {
            cases += 1;
            if z2_index(n, phi)?.index != idx {
                fails.push(format!("{n}: index not constant on the class of {}", class.representative));
            }
        }
    }
    Ok((cases, fails))
}

fn check_quotients(n: &NilManifold) -> Result<Outcome> {
    let got: Vec<(NilManifold, u8)> = quotients_of(n)?
        .into_iter()
        .map(|d| (d.base, d.index))
        .collect();
    let want = stated_quotients(n)?;
    let fail = (got != want).then(|| {
        let show = |v: &[(NilManifold, u8)]| {
            v.iter().map(|(m, i)| format!("{m}:{i}")).collect::<Vec<_>>().join(" ")
        };
        format!("{n}: quotients [{}], expected [{}]", show(&got), show(&want))
    });
    Ok((1, fail.into_iter().collect()))
}

/// Runs one check over `manifolds`, failures in input order.
pub fn run_check(check: Check, manifolds: &[NilManifold]) -> CheckReport {
    let results: Vec<Outcome> = manifolds.par_iter().map(|n| run(check, n)).collect();
    let cases = results.iter().map(|r| r.0).sum();
    let failures = results.into_iter().flat_map(|r| r.1).collect();
    CheckReport { check, cases, failures }
}

/// Runs every check on a pool of `threads` workers (0 picks the default).
pub fn verify(span: i64, threads: usize) -> Result<Vec<CheckReport>, rayon::ThreadPoolBuildError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    let manifolds = sweep_manifolds(span);
    Ok(pool.install(|| Check::ALL.iter().map(|&c| run_check(c, &manifolds)).collect()))
}
