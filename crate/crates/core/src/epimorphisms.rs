//! Epimorphisms π1(N) ↠ Z2 and their equivalence classes.
//!
//! A character is stored by its values on the canonical generators, so the
//! equivalence moves act on the nose: each move is an automorphism θ of π1
//! given on generators, and it sends φ to φ∘θ.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nil::{Family, NilManifold};
use crate::presentation::{fundamental_group, GroupWord};

/// Values of a character on `s_1…s_n`, `v_1…v_{g′}` and `h`.
///
/// The derived order is lexicographic in canonical generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Z2Char {
    #[serde(default)]
    pub s: Vec<u8>,
    #[serde(default)]
    pub v: Vec<u8>,
    pub h: u8,
}

impl Z2Char {
    pub fn new(s: &[u8], v: &[u8], h: u8) -> Self {
        Z2Char { s: s.to_vec(), v: v.to_vec(), h }
    }

    /// Inverse of [`Z2Char::values`] for a manifold with `n` exceptional
    /// fibres.
    pub fn from_values(values: &[bool], n: usize) -> Self {
        let bit = |b: &bool| u8::from(*b);
        let (s, rest) = values.split_at(n);
        let (v, h) = rest.split_at(rest.len() - 1);
        Z2Char { s: s.iter().map(bit).collect(), v: v.iter().map(bit).collect(), h: bit(&h[0]) }
    }

    /// Values in canonical generator order.
    pub fn values(&self) -> Vec<bool> {
        self.s.iter().chain(&self.v).chain([&self.h]).map(|&x| x == 1).collect()
    }

    pub fn h(&self) -> bool {
        self.h == 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }

    /// Checks shape and relators against `n`.
    pub fn validate(&self, n: &NilManifold) -> Result<()> {
        let fam = n.family();
        if self.s.len() != fam.fibre_orders().len() || self.v.len() != fam.g_prime() as usize {
            return Err(Error::InvalidCharacter(format!(
                "{n} needs {} s-values and {} v-values",
                fam.fibre_orders().len(),
                fam.g_prime()
            )));
        }
        if self.s.iter().chain(&self.v).chain([&self.h]).any(|&x| x > 1) {
            return Err(Error::InvalidCharacter("values must be 0 or 1".into()));
        }
        fundamental_group(&n.expand()).check_epimorphism(&self.values())
    }
}

impl fmt::Display for Z2Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u8]| xs.iter().map(u8::to_string).collect::<String>();
        if !self.s.is_empty() {
            write!(f, "s={} ", join(&self.s))?;
        }
        if !self.v.is_empty() {
            write!(f, "v={} ", join(&self.v))?;
        }
        write!(f, "h={}", self.h)
    }
}

/// All epimorphisms onto Z2, ordered lexicographically on generator values.
pub fn enumerate_epis(n: &NilManifold) -> Vec<Z2Char> {
    let pres = fundamental_group(&n.expand());
    let k = pres.generators().len();
    let ns = n.family().fibre_orders().len();
    (1u32..1 << k)
        .map(|mask| (0..k).map(|i| mask >> (k - 1 - i) & 1 == 1).collect::<Vec<_>>())
        .filter(|vals| pres.relators().iter().all(|r| !r.parity(vals)))
        .map(|vals| Z2Char::from_values(&vals, ns))
        .collect()
}

/// The five moves producing equivalent epimorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    /// `θ(v_j) = v_j h`; needs `φ(h) = 1`. Toggles `φ(v_j)`.
    FlipV(usize),
    /// `θ(s_i) = s_i s_k s_i⁻¹, θ(s_k) = s_i` for `i < k` with equal fibre
    /// pairs. Swaps `φ(s_i)` and `φ(s_k)`.
    SwapS(usize, usize),
    /// Class T: `θ(v_1, v_2) = (v_1, v_2 v_1)`, so `(1,1) ↔ (1,0)`.
    TorusFirst,
    /// Class T: `θ(v_1, v_2) = (v_1 v_2, v_2)`, so `(1,1) ↔ (0,1)`.
    TorusSecond,
    /// Class K: `θ(v_1, v_2) = (v_1² v_2 v_1⁻², v_1)`, so `(1,0) ↔ (0,1)`.
    KleinSwap,
    /// Class 22 with `φ(s_2) = 1`: `θ(v_1) = s_2 v_1`,
    /// `θ(s_2) = (s_2 v_1) s_2⁻¹ (s_2 v_1)⁻¹`. Toggles `φ(v_1)`.
    Prism,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::FlipV(j) => write!(f, "flip v{}", j + 1),
            Move::SwapS(i, k) => write!(f, "swap s{} s{}", i + 1, k + 1),
            Move::TorusFirst => f.write_str("torus (v1, v2 v1)"),
            Move::TorusSecond => f.write_str("torus (v1 v2, v2)"),
            Move::KleinSwap => f.write_str("klein swap"),
            Move::Prism => f.write_str("prism v1 -> s2 v1"),
        }
    }
}

struct Layout {
    ns: usize,
    ng: usize,
}

impl Layout {
    fn of(n: &NilManifold) -> Self {
        Layout { ns: n.family().fibre_orders().len(), ng: n.family().g_prime() as usize }
    }

    fn s(&self, i: usize) -> usize {
        i
    }

    fn v(&self, j: usize) -> usize {
        self.ns + j
    }

    fn h(&self) -> usize {
        self.ns + self.ng
    }

    fn len(&self) -> usize {
        self.ns + self.ng + 1
    }
}

fn g(i: usize) -> GroupWord {
    GroupWord::power(i, 1)
}

fn words(ws: &[GroupWord]) -> GroupWord {
    ws.iter().fold(GroupWord::identity(), |acc, w| acc.mul(w))
}

/// Images of the canonical generators under the move's automorphism.
pub fn move_automorphism(mv: Move, n: &NilManifold) -> Result<Vec<GroupWord>> {
    let l = Layout::of(n);
    let mut img: Vec<GroupWord> = (0..l.len()).map(g).collect();
    let fam = n.family();
    let bad = |why: &str| Err(Error::MoveNotApplicable(format!("{mv} on {n}: {why}")));
    match mv {
        Move::FlipV(j) => {
            if j >= l.ng {
                return bad("no such v generator");
            }
            img[l.v(j)] = g(l.v(j)).mul(&g(l.h()));
        }
        Move::SwapS(i, k) => {
            let pairs = n.fibre_pairs();
            if !(i < k && k < l.ns) || pairs[i] != pairs[k] {
                return bad("fibres differ");
            }
            img[l.s(i)] = words(&[g(l.s(i)), g(l.s(k)), g(l.s(i)).inverse()]);
            img[l.s(k)] = g(l.s(i));
        }
        Move::TorusFirst | Move::TorusSecond if fam != Family::T => return bad("class T only"),
        Move::TorusFirst => img[l.v(1)] = g(l.v(1)).mul(&g(l.v(0))),
        Move::TorusSecond => img[l.v(0)] = g(l.v(0)).mul(&g(l.v(1))),
        Move::KleinSwap => {
            if fam != Family::K {
                return bad("class K only");
            }
            let v1 = g(l.v(0));
            img[l.v(0)] = words(&[v1.clone(), v1.clone(), g(l.v(1)), v1.inverse(), v1.inverse()]);
            img[l.v(1)] = v1;
        }
        Move::Prism => {
            if fam != Family::S22 {
                return bad("class 22 only");
            }
            let v1p = g(l.s(1)).mul(&g(l.v(0)));
            img[l.s(1)] = words(&[v1p.clone(), g(l.s(1)).inverse(), v1p.inverse()]);
            img[l.v(0)] = v1p;
        }
    }
    Ok(img)
}

fn check_hypotheses(mv: Move, phi: &Z2Char, n: &NilManifold) -> Result<()> {
    let bad = |why: &str| Err(Error::MoveNotApplicable(format!("{mv} on {n}: {why}")));
    match mv {
        Move::FlipV(_) if phi.h != 1 => bad("needs phi(h) = 1"),
        Move::TorusFirst if !matches!(phi.v[..], [1, _]) => bad("needs phi(v) in {(1,1),(1,0)}"),
        Move::TorusSecond if !matches!(phi.v[..], [_, 1]) => bad("needs phi(v) in {(1,1),(0,1)}"),
        Move::KleinSwap if phi.v[0] == phi.v[1] => bad("needs phi(v) in {(1,0),(0,1)}"),
        Move::Prism if phi.s[1] != 1 => bad("needs phi(s2) = 1"),
        _ => Ok(()),
    }
}

/// `φ∘θ` for the move's automorphism `θ`, after checking the move's
/// hypotheses; the result is re-checked against every relator.
pub fn apply_move(phi: &Z2Char, mv: Move, n: &NilManifold) -> Result<Z2Char> {
    phi.validate(n)?;
    let theta = move_automorphism(mv, n)?;
    check_hypotheses(mv, phi, n)?;
    let vals = phi.values();
    let out: Vec<bool> = theta.iter().map(|w| w.parity(&vals)).collect();
    let out = Z2Char::from_values(&out, Layout::of(n).ns);
    out.validate(n)?;
    Ok(out)
}

/// Every move whose hypotheses hold for `(phi, n)`.
pub fn applicable_moves(phi: &Z2Char, n: &NilManifold) -> Vec<Move> {
    let l = Layout::of(n);
    let pairs = n.fibre_pairs();
    let mut cands: Vec<Move> = (0..l.ng).map(Move::FlipV).collect();
    for i in 0..l.ns {
        for k in i + 1..l.ns {
            if pairs[i] == pairs[k] {
                cands.push(Move::SwapS(i, k));
            }
        }
    }
    cands.extend([Move::TorusFirst, Move::TorusSecond, Move::KleinSwap, Move::Prism]);
    cands
        .into_iter()
        .filter(|&mv| move_automorphism(mv, n).is_ok() && check_hypotheses(mv, phi, n).is_ok())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpiClass {
    pub representative: Z2Char,
    pub members: Vec<Z2Char>,
}

/// Orbits of the epimorphisms under the moves, sorted by representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpiClassPartition {
    pub classes: Vec<EpiClass>,
}

impl EpiClassPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members.len()).collect()
    }

    pub fn class_of(&self, phi: &Z2Char) -> Option<&EpiClass> {
        self.classes.iter().find(|c| c.members.contains(phi))
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Z2Char> {
        self.classes.iter().map(|c| &c.representative)
    }
}

pub fn equivalence_classes(n: &NilManifold) -> EpiClassPartition {
    let mut left: BTreeSet<Z2Char> = enumerate_epis(n).into_iter().collect();
    let mut classes = Vec::new();
    while let Some(start) = left.pop_first() {
        let mut orbit = BTreeSet::from([start.clone()]);
        let mut stack = vec![start];
        while let Some(phi) = stack.pop() {
            for mv in applicable_moves(&phi, n) {
                let next = apply_move(&phi, mv, n).expect("applicable move yields an epimorphism");
                if orbit.insert(next.clone()) {
                    left.remove(&next);
                    stack.push(next);
                }
            }
        }
        let members: Vec<Z2Char> = orbit.into_iter().collect();
        classes.push(EpiClass { representative: members[0].clone(), members });
    }
    EpiClassPartition { classes }
}

/// Canonical representative of the class of `phi`.
pub fn canonical_representative(phi: &Z2Char, n: &NilManifold) -> Result<Z2Char> {
    phi.validate(n)?;
    let part = equivalence_classes(n);
    Ok(part.class_of(phi).expect("partition covers every epimorphism").representative.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &[u8], v: &[u8], h: u8) -> Z2Char {
        Z2Char::new(s, v, h)
    }

    #[test]
    fn json_shape() {
        let phi = c(&[], &[0, 0], 1);
        assert_eq!(phi.to_json(), r#"{"s":[],"v":[0,0],"h":1}"#);
        let back: Z2Char = serde_json::from_str(r#"{"v":[0,0],"h":1}"#).unwrap();
        assert_eq!(back, phi);
    }

    #[test]
    fn counts_per_family() {
        assert_eq!(enumerate_epis(&NilManifold::t(3).unwrap()).len(), 3);
        assert_eq!(enumerate_epis(&NilManifold::t(4).unwrap()).len(), 7);
        assert_eq!(enumerate_epis(&NilManifold::k(3).unwrap()).len(), 3);
        assert_eq!(enumerate_epis(&NilManifold::k(4).unwrap()).len(), 7);
        assert_eq!(enumerate_epis(&NilManifold::s22(0).unwrap()).len(), 3);
        assert_eq!(enumerate_epis(&NilManifold::s244(0, 1, 3).unwrap()).len(), 3);
    }

    #[test]
    fn square_pillowcase_epis_kill_h_and_sum() {
        let epis = enumerate_epis(&NilManifold::s2222(1).unwrap());
        assert_eq!(epis.len(), 7);
        for phi in &epis {
            assert_eq!(phi.h, 0);
            assert_eq!(phi.s.iter().sum::<u8>() % 2, 0);
        }
    }

    #[test]
    fn unique_epi_of_236() {
        for (b2, b3) in [(1, 1), (1, 5), (2, 1), (2, 5)] {
            let n = NilManifold::s236(0, b2, b3).unwrap();
            assert_eq!(enumerate_epis(&n), vec![c(&[1, 0, 1], &[], 0)]);
        }
    }

    #[test]
    fn odd_333_has_no_epis() {
        assert!(enumerate_epis(&NilManifold::s333(0, 1, 1, 1).unwrap()).is_empty());
        assert_eq!(enumerate_epis(&NilManifold::s333(1, 1, 1, 1).unwrap()).len(), 1);
    }

    #[test]
    fn lexicographic_order() {
        let epis = enumerate_epis(&NilManifold::t(4).unwrap());
        let mut sorted = epis.clone();
        sorted.sort();
        assert_eq!(epis, sorted);
        assert_eq!(epis[0], c(&[], &[0, 0], 1));
    }

    #[test]
    fn move_examples() {
        let t = NilManifold::t(2).unwrap();
        assert_eq!(apply_move(&c(&[], &[0, 0], 1), Move::FlipV(0), &t).unwrap(), c(&[], &[1, 0], 1));
        assert!(matches!(
            apply_move(&c(&[], &[1, 0], 0), Move::FlipV(0), &t),
            Err(Error::MoveNotApplicable(_))
        ));

        let p = NilManifold::s2222(0).unwrap();
        let phi = c(&[1, 0, 0, 1], &[], 0);
        assert_eq!(apply_move(&phi, Move::SwapS(0, 1), &p).unwrap(), c(&[0, 1, 0, 1], &[], 0));

        let k = NilManifold::k(2).unwrap();
        assert_eq!(apply_move(&c(&[], &[1, 0], 0), Move::KleinSwap, &k).unwrap(), c(&[], &[0, 1], 0));
        assert!(apply_move(&c(&[], &[1, 1], 0), Move::KleinSwap, &k).is_err());
        assert!(apply_move(&c(&[], &[1, 0], 0), Move::Prism, &k).is_err());
    }

    #[test]
    fn swap_needs_equal_fibres() {
        let n = NilManifold::s244(0, 1, 3).unwrap();
        let phi = enumerate_epis(&n)[0].clone();
        assert!(matches!(apply_move(&phi, Move::SwapS(1, 2), &n), Err(Error::MoveNotApplicable(_))));
    }

    fn sizes(n: NilManifold) -> Vec<usize> {
        let mut s = equivalence_classes(&n).sizes();
        s.sort_unstable();
        s
    }

    #[test]
    fn partitions() {
        assert_eq!(sizes(NilManifold::s2222(3).unwrap()), vec![1, 6]);
        assert_eq!(sizes(NilManifold::t(4).unwrap()), vec![3, 4]);
        assert_eq!(sizes(NilManifold::t(3).unwrap()), vec![3]);
        assert_eq!(sizes(NilManifold::k(3).unwrap()), vec![1, 2]);
        assert_eq!(sizes(NilManifold::k(4).unwrap()), vec![1, 2, 4]);
        assert_eq!(sizes(NilManifold::s22(1).unwrap()), vec![1, 2]);
        assert_eq!(sizes(NilManifold::s244(1, 1, 3).unwrap()), vec![1, 1, 1]);
        assert_eq!(sizes(NilManifold::s244(1, 3, 3).unwrap()), vec![1, 2]);
        assert_eq!(sizes(NilManifold::s236(1, 2, 5).unwrap()), vec![1]);
    }

    #[test]
    fn representative_is_smallest_member() {
        for n in [NilManifold::t(6).unwrap(), NilManifold::k(4).unwrap(), NilManifold::s2222(2).unwrap()] {
            let part = equivalence_classes(&n);
            for cl in &part.classes {
                assert_eq!(&cl.representative, cl.members.iter().min().unwrap());
            }
            let total: usize = part.sizes().iter().sum();
            assert_eq!(total, enumerate_epis(&n).len());
        }
    }

    #[test]
    fn validate_rejects_bad_characters() {
        let t = NilManifold::t(3).unwrap();
        assert!(matches!(c(&[], &[0, 0], 0).validate(&t), Err(Error::NotSurjective)));
        assert!(matches!(c(&[], &[0], 0).validate(&t), Err(Error::InvalidCharacter(_))));
        // h has order 3 in H1, so it cannot map onto Z2
        assert!(matches!(c(&[], &[0, 0], 1).validate(&t), Err(Error::NotAHomomorphism(_))));
    }
}
