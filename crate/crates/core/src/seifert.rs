//! Seifert invariants of closed orientable Seifert fibered 3-manifolds.
//!
//! An invariant is written `(b, ε, g′, (a_1,b_1), …, (a_n,b_n))`. The
//! exceptional fibres form a multiset, so pairs are kept sorted. The text
//! encoding is `SF(b; ε; g′; (a1,b1)(a2,b2)…)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{checked, Error, Result};
use crate::rational::Rational;

/// Orientability of the base surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Epsilon {
    Orientable,
    NonOrientable,
}

impl Epsilon {
    pub fn sign(self) -> i64 {
        match self {
            Epsilon::Orientable => 1,
            Epsilon::NonOrientable => -1,
        }
    }

    pub fn from_sign(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Epsilon::Orientable),
            -1 => Ok(Epsilon::NonOrientable),
            _ => Err(Error::InvalidInvariant(format!("epsilon must be +1 or -1, got {s}"))),
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::Orientable => "+1",
            Epsilon::NonOrientable => "-1",
        })
    }
}

/// An exceptional fibre `(a, β)`. Normalized pairs have `0 < β < a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FibrePair {
    pub a: i64,
    pub beta: i64,
}

impl FibrePair {
    pub const fn new(a: i64, beta: i64) -> Self {
        FibrePair { a, beta }
    }
}

/// Seifert data before normalization: `β` may be any integer coprime to
/// `a`, and pairs with `a = 1` are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSeifert {
    pub b: i64,
    pub epsilon: Epsilon,
    pub g_prime: u32,
    pub pairs: Vec<FibrePair>,
}

/// A normalized Seifert invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeifertInvariant {
    b: i64,
    epsilon: Epsilon,
    g_prime: u32,
    pairs: Vec<FibrePair>,
}

/// The integers `c`, `d` and `a = lcm(a_i)` attached to an invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CdInvariants {
    pub c: i64,
    pub d: usize,
    pub a: i64,
}

fn check_base(epsilon: Epsilon, g_prime: u32) -> Result<()> {
    match epsilon {
        Epsilon::Orientable if !g_prime.is_multiple_of(2) => Err(Error::InvalidInvariant(format!(
            "g' = {g_prime} must be even over an orientable base"
        ))),
        Epsilon::NonOrientable if g_prime == 0 => Err(Error::InvalidInvariant(
            "g' must be at least 1 over a non-orientable base".into(),
        )),
        _ => Ok(()),
    }
}

/// Brings loose Seifert data to normalized form without changing `e`.
pub fn normalize(raw: &RawSeifert) -> Result<SeifertInvariant> {
    check_base(raw.epsilon, raw.g_prime)?;
    let mut b = raw.b;
    let mut pairs = Vec::with_capacity(raw.pairs.len());
    for &FibrePair { a, beta } in &raw.pairs {
        if a <= 0 {
            return Err(Error::InvalidPair { a, beta, reason: "a must be positive" });
        }
        if a.gcd(&beta) != 1 {
            return Err(Error::InvalidPair { a, beta, reason: "a and beta must be coprime" });
        }
        let (q, r) = beta.div_mod_floor(&a);
        b = checked(b.checked_add(q))?;
        if a > 1 {
            pairs.push(FibrePair::new(a, r));
        }
    }
    pairs.sort();
    Ok(SeifertInvariant { b, epsilon: raw.epsilon, g_prime: raw.g_prime, pairs })
}

/// `b_min = −⌈Σ β_i/a_i⌉ + 1`, the least `b` with positive Euler number.
pub fn b_min(pairs: &[FibrePair]) -> Result<i64> {
    let sum = fibre_sum(pairs)?;
    checked(checked(sum.ceil().checked_neg())?.checked_add(1))
}

fn fibre_sum(pairs: &[FibrePair]) -> Result<Rational> {
    pairs.iter().try_fold(Rational::ZERO, |acc, p| acc.checked_add(Rational::new(p.beta, p.a)?))
}

impl SeifertInvariant {
    /// Builds an invariant that must already be normalized (pairs may be in
    /// any order).
    pub fn new(b: i64, epsilon: Epsilon, g_prime: u32, mut pairs: Vec<FibrePair>) -> Result<Self> {
        check_base(epsilon, g_prime)?;
        for &FibrePair { a, beta } in &pairs {
            if !(0 < beta && beta < a) {
                return Err(Error::InvalidPair { a, beta, reason: "need 0 < beta < a" });
            }
            if a.gcd(&beta) != 1 {
                return Err(Error::InvalidPair { a, beta, reason: "a and beta must be coprime" });
            }
        }
        pairs.sort();
        Ok(SeifertInvariant { b, epsilon, g_prime, pairs })
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    pub fn g_prime(&self) -> u32 {
        self.g_prime
    }

    pub fn pairs(&self) -> &[FibrePair] {
        &self.pairs
    }

    pub fn to_raw(&self) -> RawSeifert {
        RawSeifert {
            b: self.b,
            epsilon: self.epsilon,
            g_prime: self.g_prime,
            pairs: self.pairs.clone(),
        }
    }

    /// χ(M) = χ(S) − Σ(1 − 1/a_i), where χ(S) = 2 − g′ for either kind of base.
    pub fn orbifold_euler_char(&self) -> Result<Rational> {
        let mut chi = Rational::from_int(2 - i64::from(self.g_prime));
        for p in &self.pairs {
            chi = chi.checked_sub(Rational::new(p.a - 1, p.a)?)?;
        }
        Ok(chi)
    }

    /// e(M) = b + Σ β_i/a_i.
    pub fn euler_number(&self) -> Result<Rational> {
        Rational::from_int(self.b).checked_add(fibre_sum(&self.pairs)?)
    }

    pub fn cd_invariants(&self) -> Result<CdInvariants> {
        let a = self.pairs.iter().try_fold(1i64, |l, p| {
            let g = l.gcd(&p.a);
            checked((l / g).checked_mul(p.a))
        })?;
        let mut c = checked(self.b.checked_mul(a))?;
        for p in &self.pairs {
            c = checked(c.checked_add(checked(p.beta.checked_mul(a / p.a))?))?;
        }
        let d = self.pairs.iter().filter(|p| p.a % 2 == 0).count();
        Ok(CdInvariants { c, d, a })
    }

    pub fn b_min(&self) -> Result<i64> {
        b_min(&self.pairs)
    }

    /// Nil geometry holds iff χ(M) = 0 and e(M) ≠ 0.
    pub fn is_nil(&self) -> Result<bool> {
        Ok(self.orbifold_euler_char()? == Rational::ZERO && self.euler_number()? != Rational::ZERO)
    }

    /// The invariant of the same manifold with the opposite orientation:
    /// `b ↦ −b − n`, `β_i ↦ a_i − β_i`.
    pub fn reverse_orientation(&self) -> Result<SeifertInvariant> {
        let n = i64::try_from(self.pairs.len()).map_err(|_| Error::Overflow)?;
        let b = checked(checked(self.b.checked_neg())?.checked_sub(n))?;
        let pairs = self.pairs.iter().map(|p| FibrePair::new(p.a, p.a - p.beta)).collect();
        normalize(&RawSeifert { b, epsilon: self.epsilon, g_prime: self.g_prime, pairs })
    }
}

impl fmt::Display for SeifertInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SF({}; {}; {}", self.b, self.epsilon, self.g_prime)?;
        if !self.pairs.is_empty() {
            f.write_str("; ")?;
            for p in &self.pairs {
                write!(f, "({},{})", p.a, p.beta)?;
            }
        }
        f.write_str(")")
    }
}

fn parse_int(s: &str, what: &str) -> Result<i64> {
    let s = s.strip_prefix('+').unwrap_or(s);
    s.parse().map_err(|_| Error::Parse(format!("bad {what}: {s:?}")))
}

impl FromStr for RawSeifert {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("SF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected SF(...), got {s:?}")))?;
        let fields: Vec<&str> = body.split(';').collect();
        if !(3..=4).contains(&fields.len()) {
            return Err(Error::Parse(format!("expected 3 or 4 ';'-separated fields in {s:?}")));
        }
        let b = parse_int(fields[0], "b")?;
        let epsilon = Epsilon::from_sign(parse_int(fields[1], "epsilon")?)
            .map_err(|e| Error::Parse(e.to_string()))?;
        let g_prime = u32::try_from(parse_int(fields[2], "g'")?)
            .map_err(|_| Error::Parse(format!("g' must be non-negative in {s:?}")))?;
        let mut pairs = Vec::new();
        let mut rest = fields.get(3).copied().unwrap_or("");
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("bad fibre list in {s:?}")))?;
            let (pair, tail) = inner;
            let (a, beta) = pair
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad fibre pair ({pair})")))?;
            pairs.push(FibrePair::new(parse_int(a, "a")?, parse_int(beta, "beta")?));
            // tolerate "(2,1),(3,1)"
            rest = tail.strip_prefix(',').unwrap_or(tail);
        }
        Ok(RawSeifert { b, epsilon, g_prime, pairs })
    }
}

impl FromStr for SeifertInvariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        normalize(&s.parse::<RawSeifert>()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sf(s: &str) -> SeifertInvariant {
        s.parse().unwrap()
    }

    fn pairs(v: &[(i64, i64)]) -> Vec<FibrePair> {
        v.iter().map(|&(a, b)| FibrePair::new(a, b)).collect()
    }

    #[test]
    fn normalize_examples() {
        let raw = RawSeifert { b: 1, epsilon: Epsilon::Orientable, g_prime: 2, pairs: vec![] };
        assert_eq!(normalize(&raw).unwrap().to_raw(), raw);

        let raw = RawSeifert {
            b: 0,
            epsilon: Epsilon::Orientable,
            g_prime: 0,
            pairs: pairs(&[(2, 3), (2, 1), (2, 1), (2, 1)]),
        };
        let n = normalize(&raw).unwrap();
        assert_eq!(n.b(), 1);
        assert_eq!(n.pairs(), pairs(&[(2, 1); 4]).as_slice());

        let raw = RawSeifert {
            b: 2,
            epsilon: Epsilon::NonOrientable,
            g_prime: 2,
            pairs: pairs(&[(1, 5)]),
        };
        let n = normalize(&raw).unwrap();
        assert_eq!((n.b(), n.pairs().len()), (7, 0));
    }

    #[test]
    fn normalize_rejects_bad_pairs() {
        let mut raw = RawSeifert {
            b: 0,
            epsilon: Epsilon::Orientable,
            g_prime: 0,
            pairs: pairs(&[(4, 2)]),
        };
        assert!(matches!(normalize(&raw), Err(Error::InvalidPair { .. })));
        raw.pairs = pairs(&[(0, 1)]);
        assert!(matches!(normalize(&raw), Err(Error::InvalidPair { .. })));
        raw.pairs = pairs(&[(-3, 1)]);
        assert!(matches!(normalize(&raw), Err(Error::InvalidPair { .. })));
        raw.pairs.clear();
        raw.g_prime = 1;
        assert!(matches!(normalize(&raw), Err(Error::InvalidInvariant(_))));
        raw.epsilon = Epsilon::NonOrientable;
        raw.g_prime = 0;
        assert!(matches!(normalize(&raw), Err(Error::InvalidInvariant(_))));
    }

    #[test]
    fn negative_beta_reduces_into_range() {
        let n = sf("SF(0; +1; 0; (3,-1)(3,-5)(3,7))");
        assert_eq!(n.b(), -1 - 2 + 2);
        assert_eq!(n.pairs(), pairs(&[(3, 1), (3, 1), (3, 2)]).as_slice());
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(sf("SF(-1;+1;0;(2,1)(2,1)(2,1)(2,1))").orbifold_euler_char().unwrap(), Rational::ZERO);
        assert_eq!(sf("SF(5;+1;2)").orbifold_euler_char().unwrap(), Rational::ZERO);
        assert_eq!(sf("SF(0;+1;0)").orbifold_euler_char().unwrap(), Rational::from_int(2));
        assert_eq!(sf("SF(3;-1;2)").orbifold_euler_char().unwrap(), Rational::ZERO);
        assert_eq!(sf("SF(0;-1;1;(2,1)(2,1))").orbifold_euler_char().unwrap(), Rational::ZERO);
    }

    #[test]
    fn euler_number_and_cd() {
        assert_eq!(sf("SF(4;+1;2)").euler_number().unwrap(), Rational::from_int(4));
        assert_eq!(
            sf("SF(-1;+1;0;(2,1)(2,1)(2,1)(2,1))").euler_number().unwrap(),
            Rational::from_int(1)
        );
        assert_eq!(sf("SF(0;+1;0;(3,1)(3,1)(3,1))").euler_number().unwrap(), Rational::from_int(1));

        let b = 3;
        let m = sf(&format!("SF({b};+1;0;(2,1)(2,1)(2,1)(2,1))"));
        assert_eq!(m.cd_invariants().unwrap(), CdInvariants { c: 2 * b + 4, d: 4, a: 2 });
        let m = sf(&format!("SF({b};+1;0;(2,1)(3,1)(6,5))"));
        assert_eq!(m.cd_invariants().unwrap(), CdInvariants { c: 6 * b + 10, d: 2, a: 6 });
        let m = sf(&format!("SF({b};+1;2)"));
        assert_eq!(m.cd_invariants().unwrap(), CdInvariants { c: b, d: 0, a: 1 });
    }

    #[test]
    fn b_min_examples() {
        assert_eq!(b_min(&pairs(&[(2, 1); 4])).unwrap(), -1);
        assert_eq!(b_min(&pairs(&[(2, 1), (3, 1), (6, 1)])).unwrap(), 0);
        assert_eq!(b_min(&[]).unwrap(), 1);
    }

    #[test]
    fn nil_detection() {
        assert!(sf("SF(3;-1;2)").is_nil().unwrap());
        assert!(!sf("SF(0;+1;2)").is_nil().unwrap());
        assert!(!sf("SF(1;+1;0;(2,1)(2,1)(2,1))").is_nil().unwrap());
    }

    #[test]
    fn reverse_orientation_examples() {
        let t = sf("SF(5;+1;2)");
        assert_eq!(t.reverse_orientation().unwrap(), sf("SF(-5;+1;2)"));
        for b in -1..6 {
            let m = sf(&format!("SF({b};+1;0;(2,1)(2,1)(2,1)(2,1))"));
            let r = m.reverse_orientation().unwrap();
            assert_eq!(r, sf(&format!("SF({};+1;0;(2,1)(2,1)(2,1)(2,1))", -b - 4)));
            assert_eq!(r.euler_number().unwrap(), m.euler_number().unwrap().checked_neg().unwrap());
            assert_eq!(r.reverse_orientation().unwrap(), m);
        }
    }

    #[test]
    fn text_round_trip_and_whitespace() {
        let m = sf("  SF( -1 ;+1; 0 ; (2, 1) (2,1)\n(2,1)(2,1) ) ");
        assert_eq!(m.to_string(), "SF(-1; +1; 0; (2,1)(2,1)(2,1)(2,1))");
        assert_eq!(sf("SF(1; +1; 2; )").to_string(), "SF(1; +1; 2)");
        assert_eq!(sf(&m.to_string()), m);
        assert_eq!(sf("SF(-1;+1;0;(2,1),(2,1),(2,1),(2,1))"), m);
        assert!("SF(1;+2;2)".parse::<SeifertInvariant>().is_err());
        assert!("SF(1;+1)".parse::<SeifertInvariant>().is_err());
        assert!("XF(1;+1;2)".parse::<SeifertInvariant>().is_err());
        assert!("SF(1;+1;0;(2,1)".parse::<SeifertInvariant>().is_err());
    }

    fn arb_raw() -> impl Strategy<Value = RawSeifert> {
        let pair = (1i64..12, -40i64..40)
            .prop_filter("coprime", |(a, b)| a.gcd(b) == 1)
            .prop_map(|(a, beta)| FibrePair::new(a, beta));
        (
            -50i64..50,
            prop::bool::ANY,
            0u32..3,
            prop::collection::vec(pair, 0..6),
        )
            .prop_map(|(b, orientable, g, pairs)| {
                let (epsilon, g_prime) = if orientable {
                    (Epsilon::Orientable, 2 * g)
                } else {
                    (Epsilon::NonOrientable, g + 1)
                };
                RawSeifert { b, epsilon, g_prime, pairs }
            })
    }

    fn raw_euler(raw: &RawSeifert) -> Rational {
        raw.pairs.iter().fold(Rational::from_int(raw.b), |acc, p| {
            acc.checked_add(Rational::new(p.beta, p.a).unwrap()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent_and_preserves_e(raw in arb_raw()) {
            let n = normalize(&raw).unwrap();
            prop_assert_eq!(normalize(&n.to_raw()).unwrap(), n.clone());
            prop_assert_eq!(n.euler_number().unwrap(), raw_euler(&raw));
        }

        #[test]
        fn reverse_orientation_is_an_involution(raw in arb_raw()) {
            let n = normalize(&raw).unwrap();
            let r = n.reverse_orientation().unwrap();
            prop_assert_eq!(r.euler_number().unwrap(), n.euler_number().unwrap().checked_neg().unwrap());
            prop_assert_eq!(r.reverse_orientation().unwrap(), n);
        }

        #[test]
        fn c_equals_e_times_a(raw in arb_raw()) {
            let n = normalize(&raw).unwrap();
            let cd = n.cd_invariants().unwrap();
            prop_assert_eq!(
                Rational::from_int(cd.c),
                n.euler_number().unwrap().checked_mul(Rational::from_int(cd.a)).unwrap()
            );
        }
    }
}
