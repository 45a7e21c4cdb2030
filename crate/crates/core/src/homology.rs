//! Abelianization of finite presentations and first homology of Nil
//! manifolds.

use std::fmt;

use num_integer::Integer;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{checked, Error, Result};
use crate::nil::NilManifold;
use crate::presentation::{fundamental_group, FinitePresentation};
use crate::snf::{smith_normal_form, IntegerMatrix};

/// `Z^free_rank ⊕ Z_{d_1} ⊕ … ⊕ Z_{d_k}` with `d_1 | … | d_k`, `d_i ≥ 2`,
/// together with the images of the presentation generators.
///
/// Coordinates list the free part first, then the torsion factors in
/// ascending order. Torsion coordinates are reduced into `[0, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<i64>,
    generators: Vec<String>,
    gen_images: Vec<Vec<i64>>,
    /// For each coordinate, an exponent vector over the generators
    /// representing the corresponding basis element.
    basis_preimages: Vec<Vec<i64>>,
}

impl AbelianGroup {
    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn gen_images(&self) -> &[Vec<i64>] {
        &self.gen_images
    }

    pub fn image_of(&self, name: &str) -> Option<&[i64]> {
        let i = self.generators.iter().position(|g| g == name)?;
        Some(&self.gen_images[i])
    }

    pub fn basis_preimages(&self) -> &[Vec<i64>] {
        &self.basis_preimages
    }

    /// Modulus of each coordinate; 0 for free coordinates.
    pub fn moduli(&self) -> Vec<i64> {
        std::iter::repeat_n(0, self.free_rank).chain(self.torsion.iter().copied()).collect()
    }

    /// Reduces a coordinate vector modulo the torsion orders.
    pub fn reduce(&self, coords: &[i64]) -> Vec<i64> {
        coords
            .iter()
            .zip(self.moduli())
            .map(|(&x, m)| if m == 0 { x } else { x.rem_euclid(m) })
            .collect()
    }

    /// Coordinates of `Σ exps[i] · generator_i`.
    pub fn coords_of(&self, exps: &[i64]) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.free_rank + self.torsion.len()];
        for (e, img) in exps.iter().zip(&self.gen_images) {
            for (o, &x) in out.iter_mut().zip(img) {
                *o = checked(o.checked_add(checked(e.checked_mul(x))?))?;
            }
        }
        Ok(self.reduce(&out))
    }

    pub fn is_zero(&self, coords: &[i64]) -> bool {
        self.reduce(coords).iter().all(|&x| x == 0)
    }

    /// Order of an element, `None` if infinite.
    pub fn order_of(&self, coords: &[i64]) -> Option<i64> {
        let c = self.reduce(coords);
        if c[..self.free_rank].iter().any(|&x| x != 0) {
            return None;
        }
        Some(
            c[self.free_rank..]
                .iter()
                .zip(&self.torsion)
                .fold(1, |acc, (&x, &d)| acc.lcm(&(d / x.gcd(&d)))),
        )
    }

    /// Same free rank and torsion coefficients.
    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }

    /// Dimension of `H ⊗ Z2`.
    pub fn mod2_rank(&self) -> usize {
        self.free_rank + self.torsion.iter().filter(|d| *d % 2 == 0).count()
    }

    /// Whether the mod-2 character given by generator values vanishes on
    /// every torsion generator of the decomposition. The character must be
    /// well defined on the group.
    pub fn torsion_subgroup_killed_by(&self, phi: &[bool]) -> bool {
        self.basis_preimages[self.free_rank..].iter().all(|pre| {
            let s: i64 = pre.iter().zip(phi).filter(|(_, &p)| p).map(|(&x, _)| x).sum();
            s.rem_euclid(2) == 0
        })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

struct GenImages<'a>(&'a AbelianGroup);

impl Serialize for GenImages<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.generators.len()))?;
        for (name, img) in self.0.generators.iter().zip(&self.0.gen_images) {
            map.serialize_entry(name, img)?;
        }
        map.end()
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AbelianGroup", 3)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &self.torsion)?;
        st.serialize_field("gen_images", &GenImages(self))?;
        st.end()
    }
}

/// Relation matrix of the abelianized presentation: one row per relator,
/// one column per generator.
pub fn relation_matrix(pres: &FinitePresentation) -> IntegerMatrix {
    let n = pres.generators().len();
    let rows: Vec<Vec<i64>> = pres.relators().iter().map(|r| r.exponent_sums(n)).collect();
    IntegerMatrix::from_rows_with_cols(&rows, n).expect("rows have generator width")
}

/// The abelianization, as the cokernel of the relation matrix.
pub fn abelianization(pres: &FinitePresentation) -> Result<AbelianGroup> {
    let rel = relation_matrix(pres);
    let snf = smith_normal_form(&rel);
    let n = rel.cols();
    let diag = snf.s.diagonal();
    let modulus = |k: usize| -> Result<i64> {
        diag.get(k).map_or(Ok(0), |d| d.to_i64().ok_or(Error::Overflow))
    };
    let moduli: Vec<i64> = (0..n).map(modulus).collect::<Result<_>>()?;

    // free coordinates first, then torsion in diagonal (ascending) order
    let free: Vec<usize> = (0..n).filter(|&k| moduli[k] == 0).collect();
    let tors: Vec<usize> = (0..n).filter(|&k| moduli[k] > 1).collect();
    let kept: Vec<usize> = free.iter().chain(&tors).copied().collect();

    let gen_images = (0..n)
        .map(|j| {
            kept.iter()
                .map(|&k| {
                    let x = &snf.v[(j, k)];
                    let x = match moduli[k] {
                        0 => x.clone(),
                        m => x.mod_floor(&BigInt::from(m)),
                    };
                    x.to_i64().ok_or(Error::Overflow)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let basis_preimages = kept
        .iter()
        .map(|&k| (0..n).map(|j| snf.v_inv.get_i64(k, j)).collect())
        .collect::<Result<_>>()?;

    Ok(AbelianGroup {
        free_rank: free.len(),
        torsion: tors.iter().map(|&k| moduli[k]).collect(),
        generators: pres.generators().to_vec(),
        gen_images,
        basis_preimages,
    })
}

/// First homology of a Nil manifold, from its canonical π1 presentation.
pub fn h1(m: &NilManifold) -> Result<AbelianGroup> {
    abelianization(&fundamental_group(&m.expand()))
}
