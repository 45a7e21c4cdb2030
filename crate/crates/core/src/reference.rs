//! Published closed forms, transcribed as data.
//!
//! Everything here is stated per family rather than computed, so the
//! pipeline can be checked against it: the `(c, d, b_min)` table, first
//! homology with explicit generator images, class sizes, the cover of each
//! character, and the 2-quotients of each manifold with their Z2-indices.

use crate::epimorphisms::Z2Char;
use crate::error::Result;
use crate::homology::AbelianGroup;
use crate::nil::{Family, NilManifold};
use crate::presentation::fundamental_group;
use crate::snf::{smith_normal_form, IntegerMatrix};

use num_traits::{One, ToPrimitive, Zero};

/// One table row: `c = c_slope·b + c_offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub c_slope: i64,
    pub c_offset: i64,
    pub d: usize,
    pub b_min: i64,
}

pub fn table_row(family: Family, params: &[i64]) -> Option<TableRow> {
    let row = |c_slope, c_offset, d, b_min| Some(TableRow { c_slope, c_offset, d, b_min });
    match (family, params) {
        (Family::T, []) => row(1, 0, 0, 1),
        (Family::K, []) => row(1, 0, 0, 1),
        (Family::S22, []) => row(2, 2, 2, 0),
        (Family::S2222, []) => row(2, 4, 4, -1),
        (Family::S236, [1, 1]) => row(6, 6, 2, 0),
        (Family::S236, [1, 5]) => row(6, 10, 2, -1),
        // missing from the printed table; e = b + 1/2 + 2/3 + 1/6
        (Family::S236, [2, 1]) => row(6, 8, 2, -1),
        (Family::S236, [2, 5]) => row(6, 12, 2, -1),
        (Family::S244, [1, 1]) => row(4, 4, 3, 0),
        (Family::S244, [1, 3]) => row(4, 6, 3, -1),
        (Family::S244, [3, 3]) => row(4, 8, 3, -1),
        (Family::S333, [1, 1, 1]) => row(3, 3, 0, 0),
        (Family::S333, [1, 1, 2]) => row(3, 4, 0, -1),
        (Family::S333, [1, 2, 2]) => row(3, 5, 0, -1),
        (Family::S333, [2, 2, 2]) => row(3, 6, 0, -1),
        _ => None,
    }
}

/// `Z^k ⊕ Z_{m_1} ⊕ …` as stated, with the stated image of every canonical
/// generator. Moduli of 0 are free factors and moduli of 1 are trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatedHomology {
    pub moduli: Vec<i64>,
    pub images: Vec<Vec<i64>>,
}

fn sub(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn scale(k: i64, x: &[i64]) -> Vec<i64> {
    x.iter().map(|a| k * a).collect()
}

pub fn stated_homology(n: &NilManifold) -> StatedHomology {
    let b = n.b();
    let p = n.params();
    let (moduli, images) = match n.family() {
        // v1, v2, h
        Family::T => (vec![0, 0, b], vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
        // v1 Z ⊕ (v1+v2) Z_4, h = 2(v1+v2)
        Family::K if b % 2 != 0 => (vec![0, 4], vec![vec![1, 0], vec![-1, 1], vec![0, 2]]),
        // v1 Z ⊕ (v1+v2) Z_2 ⊕ h Z_2
        Family::K => (vec![0, 2, 2], vec![vec![1, 0, 0], vec![-1, 1, 0], vec![0, 0, 1]]),
        // v1 Z_4 ⊕ s1 Z_4, h = -2s1, s2 = -(2b+1)s1 - 2v1; order s1, s2, v1, h
        Family::S22 => {
            (vec![4, 4], vec![vec![0, 1], vec![-2, -(2 * b + 1)], vec![1, 0], vec![0, -2]])
        }
        // (s2-s1) Z_2 ⊕ (s3-s1) Z_2 ⊕ s1 Z_{2c}, h = -2s1,
        // s4 = -(2b+1)s1 - s2 - s3
        Family::S2222 => {
            let c = 2 * b + 4;
            let s1 = vec![0, 0, 1];
            let s2 = vec![1, 0, 1];
            let s3 = vec![0, 1, 1];
            let s4 = sub(&sub(&scale(-(2 * b + 1), &s1), &s2), &s3);
            (vec![2, 2, 2 * c], vec![s1.clone(), s2, s3, s4, scale(-2, &s1)])
        }
        // (s2-s1) Z_{6c}, s1 = 3(2b2-3)(s2-s1), h = -2s1, s3 = -(2b+1)s1 - s2
        Family::S236 => {
            let c = 6 * b + 3 + 2 * p[0] + p[1];
            let s1 = 3 * (2 * p[0] - 3);
            let s2 = s1 + 1;
            let s3 = -(2 * b + 1) * s1 - s2;
            (vec![6 * c], vec![vec![s1], vec![s2], vec![s3], vec![-2 * s1]])
        }
        // Z_2 ⊕ Z_{4c}, s1 = (1, 2b2-4), s2 = s1 + (0,1), h = -2s1,
        // s3 = -(2b+1)s1 - s2
        Family::S244 => {
            let c = 4 * b + 2 + p[0] + p[1];
            let s1 = vec![1, 2 * p[0] - 4];
            let s2 = vec![1, 2 * p[0] - 3];
            let s3 = sub(&scale(-(2 * b + 1), &s1), &s2);
            (vec![2, 4 * c], vec![s1.clone(), s2, s3, scale(-2, &s1)])
        }
        // Z_3 ⊕ Z_{3c}, h = (0,3), s1 = (0,-b1), s2 = (-b2,-b2), s3 = bh - s1 - s2
        Family::S333 => {
            let c = 3 * b + p.iter().sum::<i64>();
            let h = vec![0, 3];
            let s1 = vec![0, -p[0]];
            let s2 = vec![-p[1], -p[1]];
            let s3 = sub(&sub(&scale(b, &h), &s1), &s2);
            (vec![3, 3 * c], vec![s1, s2, s3, h])
        }
    };
    StatedHomology { moduli, images }
}

impl StatedHomology {
    fn reduce(&self, x: &[i64]) -> Vec<i64> {
        x.iter().zip(&self.moduli).map(|(a, &m)| if m == 0 { *a } else { a.rem_euclid(m) }).collect()
    }

    /// Invariant factors of the stated group: free rank and torsion
    /// `d_1 | d_2 | …` with every `d_i ≥ 2`.
    pub fn invariants(&self) -> (usize, Vec<i64>) {
        let k = self.moduli.len();
        let mut diag = IntegerMatrix::zeros(k, k);
        for (i, &m) in self.moduli.iter().enumerate() {
            diag[(i, i)] = m.into();
        }
        let snf = smith_normal_form(&diag);
        let d = snf.s.diagonal();
        let free = d.iter().filter(|x| x.is_zero()).count();
        let tors = d
            .iter()
            .filter(|x| !x.is_zero() && !x.is_one())
            .map(|x| x.to_i64().expect("stated moduli are small"))
            .collect();
        (free, tors)
    }

    /// Checks that the stated images define an isomorphism from H1 of `n`
    /// onto the stated group. Every relator of π1 must map to zero, the
    /// images must generate, and the invariants must agree with `computed`.
    /// Returns a description of the first failure.
    pub fn check(&self, n: &NilManifold, computed: &AbelianGroup) -> Result<(), String> {
        let pres = fundamental_group(&n.expand());
        let k = self.moduli.len();
        if self.images.len() != pres.generators().len() {
            return Err("wrong number of generator images".into());
        }
        for (i, r) in pres.relators().iter().enumerate() {
            let sums = r.exponent_sums(self.images.len());
            let mut acc = vec![0i64; k];
            for (e, img) in sums.iter().zip(&self.images) {
                for (a, x) in acc.iter_mut().zip(img) {
                    *a += e * x;
                }
            }
            if self.reduce(&acc).iter().any(|&x| x != 0) {
                return Err(format!("relator {i} does not vanish"));
            }
        }
        // images together with the moduli relations must span Z^k
        let mut rows = self.images.clone();
        for (i, &m) in self.moduli.iter().enumerate() {
            let mut r = vec![0; k];
            r[i] = m;
            rows.push(r);
        }
        let span = smith_normal_form(&IntegerMatrix::from_rows_with_cols(&rows, k).expect("width k"));
        let d = span.s.diagonal();
        if d.len() != k || !d.iter().all(One::is_one) {
            return Err("stated images do not generate".into());
        }
        let (free, tors) = self.invariants();
        if free != computed.free_rank() || tors != computed.torsion() {
            return Err(format!("stated group has invariants {free}, {tors:?}; computed {computed}"));
        }
        Ok(())
    }
}

/// Sizes of the equivalence classes of characters, ascending.
pub fn class_sizes(n: &NilManifold) -> Vec<usize> {
    let b = n.b();
    let p = n.params();
    match n.family() {
        Family::T if b % 2 != 0 => vec![3],
        Family::T => vec![3, 4],
        Family::K if b % 2 != 0 => vec![1, 2],
        Family::K => vec![1, 2, 4],
        Family::S22 => vec![1, 2],
        Family::S2222 => vec![1, 6],
        Family::S236 => vec![1],
        Family::S244 if p[0] == p[1] => vec![1, 2],
        Family::S244 => vec![1, 1, 1],
        Family::S333 if (b + p.iter().sum::<i64>()) % 2 == 0 => vec![1],
        Family::S333 => vec![],
    }
}

/// The cover of `n` with characteristic class `phi`, read off from the
/// character's values directly (no class representative).
pub fn stated_cover(n: &NilManifold, phi: &Z2Char) -> Result<NilManifold> {
    let b = n.b();
    let p = n.params();
    match n.family() {
        Family::T if phi.h == 1 => NilManifold::t(b / 2),
        Family::T => NilManifold::t(2 * b),
        Family::K if phi.h == 1 => NilManifold::k(b / 2),
        Family::K if (phi.v[0] + phi.v[1]) % 2 == 1 => NilManifold::k(2 * b),
        Family::K => NilManifold::t(2 * b),
        Family::S22 if phi.s[1] == 1 => NilManifold::k(2 * b + 2),
        Family::S22 => NilManifold::s2222(2 * b),
        Family::S2222 if phi.s.iter().all(|&x| x == 1) => NilManifold::t(2 * b + 4),
        Family::S2222 => NilManifold::s2222(2 * b + 2),
        Family::S236 => {
            let q = (p[1] + 3) / 4;
            NilManifold::s333(2 * b + q, p[0], p[0], q)
        }
        Family::S244 if phi.s[2] == 0 => NilManifold::s244(2 * b + (p[0] + 1) / 2, p[1], p[1]),
        Family::S244 if phi.s[1] == 0 => NilManifold::s244(2 * b + (p[1] + 1) / 2, p[0], p[0]),
        Family::S244 => NilManifold::s2222(2 * b - 1 + (p[0] + p[1]) / 2),
        Family::S333 => {
            let sum: i64 = p.iter().sum();
            NilManifold::s333((b + sum - 6) / 2, 3 - p[2], 3 - p[1], 3 - p[0])
        }
    }
}

/// Bases of the 2-quotients of `m` with their Z2-indices, sorted.
pub fn stated_quotients(m: &NilManifold) -> Result<Vec<(NilManifold, u8)>> {
    let b = m.b();
    let p = m.params();
    let odd = b % 2 != 0;
    let mut out = match m.family() {
        Family::T if odd => vec![(NilManifold::t(2 * b)?, 3)],
        Family::T => vec![
            (NilManifold::t(2 * b)?, 2),
            (NilManifold::t(b / 2)?, 1),
            (NilManifold::s2222(b / 2 - 2)?, 2),
            (NilManifold::k(b / 2)?, 1),
        ],
        Family::K if odd => vec![(NilManifold::k(2 * b)?, 3)],
        Family::K => vec![
            (NilManifold::k(2 * b)?, 2),
            (NilManifold::k(b / 2)?, 2),
            (NilManifold::s22(b / 2 - 1)?, 2),
        ],
        Family::S2222 if odd => vec![(NilManifold::s244((b - 1) / 2, 1, 3)?, 2)],
        Family::S2222 => vec![
            (NilManifold::s2222(b / 2 - 1)?, 2),
            (NilManifold::s22(b / 2)?, 2),
            (NilManifold::s244(b / 2 - 1, 3, 3)?, 2),
            (NilManifold::s244(b / 2, 1, 1)?, 2),
        ],
        Family::S244 if p[0] == p[1] => {
            let x = p[0];
            if odd {
                vec![(NilManifold::s244((b - 1) / 2, 1, x)?, 3)]
            } else {
                vec![(NilManifold::s244(b / 2 - 1, x, 3)?, 3)]
            }
        }
        Family::S333 => {
            // params read as (x, x, y) up to order
            let (x, y) = match p {
                [a, b2, c] if a == b2 => (*a, *c),
                [a, _, c] => (*c, *a),
                _ => unreachable!("333 has three parameters"),
            };
            let up = NilManifold::s333(2 * b + 2 * x + y - 3, 3 - y, 3 - x, 3 - x)?;
            if (b - y) % 2 != 0 {
                vec![(up, 3)]
            } else {
                vec![(up, 2), (NilManifold::s236((b - y) / 2, x, 4 * y - 3)?, 2)]
            }
        }
        Family::S22 | Family::S244 | Family::S236 => vec![],
    };
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::h1;

    #[test]
    fn every_option_has_a_row() {
        for fam in Family::ALL {
            for opt in fam.fibre_options() {
                assert!(table_row(fam, opt).is_some(), "{fam} {opt:?}");
            }
        }
    }

    #[test]
    fn stated_homology_small_cases() {
        for m in [
            NilManifold::t(1).unwrap(),
            NilManifold::k(3).unwrap(),
            NilManifold::k(4).unwrap(),
            NilManifold::s22(0).unwrap(),
            NilManifold::s2222(-1).unwrap(),
            NilManifold::s236(-1, 2, 1).unwrap(),
            NilManifold::s244(0, 1, 3).unwrap(),
            NilManifold::s333(1, 1, 2, 2).unwrap(),
        ] {
            let st = stated_homology(&m);
            st.check(&m, &h1(&m).unwrap()).unwrap_or_else(|e| panic!("{m}: {e}"));
        }
    }

    #[test]
    fn wrong_images_are_caught() {
        let m = NilManifold::s22(1).unwrap();
        let mut st = stated_homology(&m);
        st.images[1] = vec![0, 1];
        assert!(st.check(&m, &h1(&m).unwrap()).is_err());
    }

    #[test]
    fn reordered_333_quotient() {
        // (x, y) = (2, 1): b - y even gives a 236 base with option (2, 1)
        let q = stated_quotients(&NilManifold::s333(1, 1, 2, 2).unwrap()).unwrap();
        assert!(q.contains(&(NilManifold::s236(0, 2, 1).unwrap(), 2)));
    }
}
