//! Double covers of Nil manifolds and their inversion.
//!
//! [`double_cover`] is a formula engine over the seven families, keyed on
//! the canonical representative of the character's class. [`verify_cover`]
//! gives independent evidence by rewriting π1 through Reidemeister–Schreier
//! and comparing first homology and Euler numbers.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::bu_index::z2_index;
use crate::epimorphisms::{canonical_representative, equivalence_classes, Z2Char};
use crate::error::{Error, Result};
use crate::homology::{abelianization, h1};
use crate::nil::{Family, NilManifold};
use crate::presentation::{fundamental_group, reidemeister_schreier};
use crate::rational::Rational;

/// A double cover `cover → base` with characteristic class `phi` (the
/// canonical representative) and its Z2-index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CoveringDescriptor {
    #[serde(serialize_with = "display")]
    pub base: NilManifold,
    pub phi: Z2Char,
    #[serde(serialize_with = "display")]
    pub cover: NilManifold,
    pub index: u8,
}

fn display<S: Serializer>(m: &NilManifold, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(m)
}

impl fmt::Display for CoveringDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}  [{}]  index {}", self.cover, self.base, self.phi, self.index)
    }
}

fn half(x: i64, what: &str) -> Result<i64> {
    if x % 2 != 0 {
        return Err(Error::InvalidCharacter(format!("{what} = {x} is odd")));
    }
    Ok(x / 2)
}

fn as_character_error(e: Error) -> Error {
    match e {
        Error::InvalidCharacter(_) | Error::Overflow => e,
        other => Error::InvalidCharacter(other.to_string()),
    }
}

/// The total space of the double cover of `n` with characteristic class
/// `phi`, in canonical form.
pub fn double_cover(n: &NilManifold, phi: &Z2Char) -> Result<NilManifold> {
    let rep = canonical_representative(phi, n).map_err(as_character_error)?;
    let b = n.b();
    let p = n.params();
    let h = rep.h == 1;
    match n.family() {
        Family::T if h => NilManifold::t(half(b, "b")?),
        Family::T => NilManifold::t(2 * b),
        Family::K if h => NilManifold::k(half(b, "b")?),
        Family::K if rep.v == [1, 1] => NilManifold::t(2 * b),
        Family::K => NilManifold::k(2 * b),
        Family::S22 if rep.s[1] == 1 => NilManifold::k(2 * b + 2),
        Family::S22 => NilManifold::s2222(2 * b),
        Family::S2222 if rep.s == [1, 1, 1, 1] => NilManifold::t(2 * b + 4),
        Family::S2222 => NilManifold::s2222(2 * b + 2),
        Family::S236 => {
            let q = (p[1] + 3) / 4;
            NilManifold::s333(2 * b + q, p[0], p[0], q)
        }
        Family::S244 => match rep.s[..] {
            [_, _, 0] => NilManifold::s244(2 * b + (p[0] + 1) / 2, p[1], p[1]),
            [_, 0, _] => NilManifold::s244(2 * b + (p[1] + 1) / 2, p[0], p[0]),
            _ => NilManifold::s2222(2 * b - 1 + (p[0] + p[1]) / 2),
        },
        Family::S333 => {
            let sum: i64 = p.iter().sum();
            NilManifold::s333(half(b + sum - 6, "b + b1 + b2 + b3 - 6")?, 3 - p[2], 3 - p[1], 3 - p[0])
        }
    }
}

/// Checks `claimed` against the kernel of `phi`: first homology via
/// Reidemeister–Schreier, and `e(claimed) = 2e(n)` or `e(n)/2` according to
/// `φ(h)`.
pub fn verify_cover(n: &NilManifold, phi: &Z2Char, claimed: &NilManifold) -> Result<bool> {
    phi.validate(n)?;
    let kernel = reidemeister_schreier(&fundamental_group(&n.expand()), &phi.values())?;
    let got = abelianization(&kernel)?;
    let want = h1(claimed)?;
    let e = n.euler_number()?;
    let expected_e = if phi.h() {
        Rational::new(e.numer(), e.denom().checked_mul(2).ok_or(Error::Overflow)?)?
    } else {
        e.checked_mul(Rational::from_int(2))?
    };
    Ok(got.is_isomorphic(&want) && claimed.euler_number()? == expected_e)
}

/// One descriptor per class of characters of `n`, in representative order.
pub fn covers_of(n: &NilManifold) -> Result<Vec<CoveringDescriptor>> {
    equivalence_classes(n)
        .representatives()
        .map(|rep| {
            Ok(CoveringDescriptor {
                base: n.clone(),
                phi: rep.clone(),
                cover: double_cover(n, rep)?,
                index: z2_index(n, rep)?.index,
            })
        })
        .collect()
}

/// Every `(n, class)` whose double cover is `m`, sorted by base then
/// character.
///
/// A base `n` must have `e(n) = e(m)/2` or `2e(m)`; since `e(n) = b + Σβ/a`
/// that fixes `b` for each family and fibre option.
pub fn quotients_of(m: &NilManifold) -> Result<Vec<CoveringDescriptor>> {
    let e = m.euler_number()?;
    let targets = [
        Rational::new(e.numer(), e.denom().checked_mul(2).ok_or(Error::Overflow)?)?,
        e.checked_mul(Rational::from_int(2))?,
    ];
    let mut out = Vec::new();
    for fam in Family::ALL {
        for opt in fam.fibre_options() {
            let mut shift = Rational::ZERO;
            for pair in fam.fibre_pairs(opt) {
                shift = shift.checked_add(Rational::new(pair.beta, pair.a)?)?;
            }
            for t in &targets {
                let b = t.checked_sub(shift)?;
                if !b.is_integer() {
                    continue;
                }
                let Ok(n) = NilManifold::new(fam, b.numer(), opt) else { continue };
                for d in covers_of(&n)? {
                    if &d.cover == m {
                        out.push(d);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &[u8], v: &[u8], h: u8) -> Z2Char {
        Z2Char::new(s, v, h)
    }

    #[test]
    fn stated_covers() {
        for b in 0..5 {
            let n = NilManifold::s236(b, 1, 1).unwrap();
            assert_eq!(double_cover(&n, &c(&[1, 0, 1], &[], 0)).unwrap(), NilManifold::s333(2 * b + 1, 1, 1, 1).unwrap());
            let n = NilManifold::s244(b, 1, 3).unwrap();
            assert_eq!(double_cover(&n, &c(&[1, 1, 0], &[], 0)).unwrap(), NilManifold::s244(2 * b + 1, 3, 3).unwrap());
        }
        for b in 1..6 {
            let n = NilManifold::k(b).unwrap();
            assert_eq!(double_cover(&n, &c(&[], &[1, 1], 0)).unwrap(), NilManifold::t(2 * b).unwrap());
        }
    }

    #[test]
    fn reordered_236_cover() {
        let n = NilManifold::s236(0, 2, 1).unwrap();
        assert_eq!(double_cover(&n, &c(&[1, 0, 1], &[], 0)).unwrap(), NilManifold::s333(1, 1, 2, 2).unwrap());
    }

    #[test]
    fn rejects_non_characters() {
        let n = NilManifold::t(3).unwrap();
        assert!(matches!(double_cover(&n, &c(&[], &[0, 0], 1)), Err(Error::InvalidCharacter(_))));
        assert!(matches!(double_cover(&n, &c(&[1], &[0, 0], 0)), Err(Error::InvalidCharacter(_))));
    }

    #[test]
    fn verify_examples() {
        let t3 = NilManifold::t(3).unwrap();
        let phi = c(&[], &[1, 0], 0);
        assert!(verify_cover(&t3, &phi, &NilManifold::t(6).unwrap()).unwrap());
        assert!(!verify_cover(&t3, &phi, &NilManifold::t(12).unwrap()).unwrap());
        let p = NilManifold::s2222(0).unwrap();
        assert!(verify_cover(&p, &c(&[1, 1, 1, 1], &[], 0), &NilManifold::t(4).unwrap()).unwrap());
    }

    #[test]
    fn dead_ends() {
        for b in 0..6 {
            assert!(quotients_of(&NilManifold::s236(b, 1, 1).unwrap()).unwrap().is_empty());
            assert!(quotients_of(&NilManifold::s22(b).unwrap()).unwrap().is_empty());
            assert!(quotients_of(&NilManifold::s244(b, 1, 3).unwrap()).unwrap().is_empty());
        }
    }

    #[test]
    fn odd_torus_bundle_has_one_quotient() {
        let q = quotients_of(&NilManifold::t(3).unwrap()).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].base, NilManifold::t(6).unwrap());
        assert_eq!(q[0].index, 3);
    }

    #[test]
    fn even_pillowcase_quotients() {
        let b = 4;
        let q = quotients_of(&NilManifold::s2222(b).unwrap()).unwrap();
        let bases: Vec<_> = q.iter().map(|d| d.base.clone()).collect();
        let mut want = vec![
            NilManifold::s2222(b / 2 - 1).unwrap(),
            NilManifold::s22(b / 2).unwrap(),
            NilManifold::s244(b / 2 - 1, 3, 3).unwrap(),
            NilManifold::s244(b / 2, 1, 1).unwrap(),
        ];
        want.sort();
        assert_eq!(bases, want);
        assert!(q.iter().all(|d| d.index == 2));
    }

    #[test]
    fn descriptor_json() {
        let d = &covers_of(&NilManifold::t(3).unwrap()).unwrap()[0];
        assert_eq!(
            serde_json::to_string(d).unwrap(),
            r#"{"base":"T(3)","phi":{"s":[],"v":[0,1],"h":0},"cover":"T(6)","index":1}"#
        );
    }
}
