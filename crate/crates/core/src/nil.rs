//! The seven families of closed 3-manifolds with Nil geometry.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::seifert::{Epsilon, FibrePair, SeifertInvariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    T,
    K,
    S22,
    S2222,
    S236,
    S244,
    S333,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::T,
        Family::K,
        Family::S22,
        Family::S2222,
        Family::S236,
        Family::S244,
        Family::S333,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::T => "T",
            Family::K => "K",
            Family::S22 => "22",
            Family::S2222 => "2222",
            Family::S236 => "236",
            Family::S244 => "244",
            Family::S333 => "333",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.tag() == tag)
    }

    pub fn epsilon(self) -> Epsilon {
        match self {
            Family::K | Family::S22 => Epsilon::NonOrientable,
            _ => Epsilon::Orientable,
        }
    }

    pub fn g_prime(self) -> u32 {
        match self {
            Family::T | Family::K => 2,
            Family::S22 => 1,
            _ => 0,
        }
    }

    /// Orders of the exceptional fibres, ascending.
    pub fn fibre_orders(self) -> &'static [i64] {
        match self {
            Family::T | Family::K => &[],
            Family::S22 => &[2, 2],
            Family::S2222 => &[2, 2, 2, 2],
            Family::S236 => &[2, 3, 6],
            Family::S244 => &[2, 4, 4],
            Family::S333 => &[3, 3, 3],
        }
    }

    /// Every admissible choice of the free fibre parameters, in canonical form.
    pub fn fibre_options(self) -> &'static [&'static [i64]] {
        match self {
            Family::T | Family::K | Family::S22 | Family::S2222 => &[&[]],
            Family::S236 => &[&[1, 1], &[1, 5], &[2, 1], &[2, 5]],
            Family::S244 => &[&[1, 1], &[1, 3], &[3, 3]],
            Family::S333 => &[&[1, 1, 1], &[1, 1, 2], &[1, 2, 2], &[2, 2, 2]],
        }
    }

    pub(crate) fn fibre_pairs(self, params: &[i64]) -> Vec<FibrePair> {
        match self {
            Family::T | Family::K => vec![],
            Family::S22 => vec![FibrePair::new(2, 1); 2],
            Family::S2222 => vec![FibrePair::new(2, 1); 4],
            Family::S236 => vec![
                FibrePair::new(2, 1),
                FibrePair::new(3, params[0]),
                FibrePair::new(6, params[1]),
            ],
            Family::S244 => vec![
                FibrePair::new(2, 1),
                FibrePair::new(4, params[0]),
                FibrePair::new(4, params[1]),
            ],
            Family::S333 => params.iter().map(|&p| FibrePair::new(3, p)).collect(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A classified Nil manifold: family tag, `b`, and the free fibre
/// parameters (`b_2, b_3` for 236 and 244, `b_1, b_2, b_3` for 333).
///
/// Parameters of families 244 and 333 are kept sorted; manifolds are equal
/// iff their canonical forms are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NilManifold {
    family: Family,
    b: i64,
    params: Vec<i64>,
}

impl NilManifold {
    pub fn new(family: Family, b: i64, params: &[i64]) -> Result<Self> {
        let mut params = params.to_vec();
        if matches!(family, Family::S244 | Family::S333) {
            params.sort_unstable();
        }
        if !family.fibre_options().contains(&params.as_slice()) {
            return Err(Error::InvalidManifold(format!(
                "parameters {params:?} are not allowed for family {family}"
            )));
        }
        let m = NilManifold { family, b, params };
        let b_min = m.b_min()?;
        if b < b_min {
            return Err(Error::InvalidManifold(format!(
                "{m}: b = {b} is below b_min = {b_min}"
            )));
        }
        Ok(m)
    }

    pub fn t(b: i64) -> Result<Self> {
        Self::new(Family::T, b, &[])
    }

    pub fn k(b: i64) -> Result<Self> {
        Self::new(Family::K, b, &[])
    }

    pub fn s22(b: i64) -> Result<Self> {
        Self::new(Family::S22, b, &[])
    }

    pub fn s2222(b: i64) -> Result<Self> {
        Self::new(Family::S2222, b, &[])
    }

    pub fn s236(b: i64, b2: i64, b3: i64) -> Result<Self> {
        Self::new(Family::S236, b, &[b2, b3])
    }

    pub fn s244(b: i64, b2: i64, b3: i64) -> Result<Self> {
        Self::new(Family::S244, b, &[b2, b3])
    }

    pub fn s333(b: i64, b1: i64, b2: i64, b3: i64) -> Result<Self> {
        Self::new(Family::S333, b, &[b1, b2, b3])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn params(&self) -> &[i64] {
        &self.params
    }

    pub fn fibre_pairs(&self) -> Vec<FibrePair> {
        self.family.fibre_pairs(&self.params)
    }

    pub fn b_min(&self) -> Result<i64> {
        crate::seifert::b_min(&self.fibre_pairs())
    }

    /// The Seifert invariant of this manifold.
    pub fn expand(&self) -> SeifertInvariant {
        SeifertInvariant::new(
            self.b,
            self.family.epsilon(),
            self.family.g_prime(),
            self.fibre_pairs(),
        )
        .expect("family parameters are normalized by construction")
    }

    pub fn euler_number(&self) -> Result<Rational> {
        self.expand().euler_number()
    }
}

/// Identifies the Nil family of a normalized invariant with `e > 0`.
pub fn classify(inv: &SeifertInvariant) -> Result<NilManifold> {
    if !inv.is_nil()? {
        return Err(Error::NotNil(format!(
            "{inv} has χ = {} and e = {}",
            inv.orbifold_euler_char()?,
            inv.euler_number()?
        )));
    }
    let e = inv.euler_number()?;
    if e.signum() < 0 {
        return Err(Error::NegativeOrientation { e: e.to_string() });
    }
    let orders: Vec<i64> = inv.pairs().iter().map(|p| p.a).collect();
    let family = Family::ALL
        .into_iter()
        .find(|f| {
            f.epsilon() == inv.epsilon() && f.g_prime() == inv.g_prime() && f.fibre_orders() == orders
        })
        .ok_or_else(|| Error::NotNil(format!("{inv} matches no Nil family")))?;
    let betas: Vec<i64> = inv.pairs().iter().map(|p| p.beta).collect();
    let params = match family {
        Family::S236 | Family::S244 => betas[1..].to_vec(),
        Family::S333 => betas,
        _ => vec![],
    };
    NilManifold::new(family, inv.b(), &params)
}

impl fmt::Display for NilManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}", self.family, self.b)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(i64::to_string).collect();
            write!(f, ";{}", ps.join(","))?;
        }
        f.write_str(")")
    }
}

impl FromStr for NilManifold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (tag, rest) = compact
            .split_once('(')
            .ok_or_else(|| Error::Parse(format!("expected FAMILY(...), got {s:?}")))?;
        let family = Family::from_tag(tag)
            .ok_or_else(|| Error::Parse(format!("unknown family tag {tag:?}")))?;
        let body = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing ')' in {s:?}")))?;
        let (b, params) = match body.split_once(';') {
            Some((b, p)) => (b, p.split(',').collect::<Vec<_>>()),
            None => (body, vec![]),
        };
        let int = |t: &str| -> Result<i64> {
            t.strip_prefix('+')
                .unwrap_or(t)
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in {s:?}")))
        };
        let params = params.into_iter().map(int).collect::<Result<Vec<_>>>()?;
        if params.len() != family.fibre_options()[0].len() {
            return Err(Error::Parse(format!(
                "family {family} takes {} fibre parameters",
                family.fibre_options()[0].len()
            )));
        }
        NilManifold::new(family, int(b)?, &params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(s: &str) -> SeifertInvariant {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&sf("SF(1;-1;2)")).unwrap(), NilManifold::k(1).unwrap());
        assert_eq!(
            classify(&sf("SF(0;+1;0;(2,1)(3,1)(6,5))")).unwrap(),
            NilManifold::s236(0, 1, 5).unwrap()
        );
        assert_eq!(
            classify(&sf("SF(-1;+1;0;(3,1)(3,2)(3,2))")).unwrap(),
            NilManifold::s333(-1, 1, 2, 2).unwrap()
        );
    }

    #[test]
    fn classify_errors() {
        assert!(matches!(classify(&sf("SF(0;+1;2)")), Err(Error::NotNil(_))));
        assert!(matches!(classify(&sf("SF(0;+1;0)")), Err(Error::NotNil(_))));
        let neg = sf("SF(-3;+1;2)");
        assert!(matches!(classify(&neg), Err(Error::NegativeOrientation { .. })));
        assert_eq!(classify(&neg.reverse_orientation().unwrap()).unwrap(), NilManifold::t(3).unwrap());
    }

    #[test]
    fn constructor_enforces_table_ranges() {
        assert!(NilManifold::t(0).is_err());
        assert!(NilManifold::s2222(-2).is_err());
        assert!(NilManifold::s2222(-1).is_ok());
        assert!(NilManifold::s236(-1, 1, 1).is_err());
        assert!(NilManifold::s236(-1, 1, 5).is_ok());
        assert!(NilManifold::s236(0, 3, 1).is_err());
        assert!(NilManifold::s244(0, 2, 1).is_err());
        assert!(NilManifold::s333(0, 1, 3, 1).is_err());
        assert_eq!(NilManifold::s244(0, 3, 1).unwrap().params(), &[1, 3]);
        assert_eq!(NilManifold::s333(0, 2, 1, 2).unwrap().params(), &[1, 2, 2]);
    }

    #[test]
    fn round_trip_over_all_families() {
        for family in Family::ALL {
            for opt in family.fibre_options() {
                let b0 = crate::seifert::b_min(&family.fibre_pairs(opt)).unwrap();
                for b in b0..b0 + 17 {
                    let m = NilManifold::new(family, b, opt).unwrap();
                    let inv = m.expand();
                    assert_eq!(inv.orbifold_euler_char().unwrap(), Rational::ZERO);
                    assert!(inv.euler_number().unwrap() > Rational::ZERO);
                    assert_eq!(classify(&inv).unwrap(), m);
                    assert_eq!(m.to_string().parse::<NilManifold>().unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn text_encoding() {
        assert_eq!(NilManifold::s333(-1, 2, 1, 2).unwrap().to_string(), "333(-1;1,2,2)");
        assert_eq!(" 236 ( 0 ; 1 , 5 )".parse::<NilManifold>().unwrap(), NilManifold::s236(0, 1, 5).unwrap());
        assert_eq!("T(3)".parse::<NilManifold>().unwrap().to_string(), "T(3)");
        assert!("X(3)".parse::<NilManifold>().is_err());
        assert!("T(3;1)".parse::<NilManifold>().is_err());
        assert!("244(0;1)".parse::<NilManifold>().is_err());
    }
}
