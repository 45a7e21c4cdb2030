//! Finite presentations, the canonical presentation of π1 of a Seifert
//! manifold, and Reidemeister–Schreier rewriting for index-2 subgroups.

use std::fmt;

use crate::error::{Error, Result};
use crate::seifert::{Epsilon, SeifertInvariant};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A freely reduced word in the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = GroupWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// `gen^exp`.
    pub fn power(gen: usize, exp: i64) -> Self {
        let l = Letter::new(gen, exp < 0);
        GroupWord(vec![l; exp.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter, cancelling against the last one if possible.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inv()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn mul(&self, rhs: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &l in &rhs.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &GroupWord, y: &GroupWord) -> GroupWord {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    /// Exponent sum of every generator.
    pub fn exponent_sums(&self, num_gens: usize) -> Vec<i64> {
        let mut v = vec![0; num_gens];
        for l in &self.0 {
            v[l.gen] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    /// Image under the homomorphism to Z2 given by generator values.
    pub fn parity(&self, values: &[bool]) -> bool {
        self.0.iter().fold(false, |acc, l| acc ^ values[l.gen])
    }

    /// Replaces each generator by a word.
    pub fn substitute(&self, images: &[GroupWord]) -> GroupWord {
        let mut w = GroupWord::identity();
        for l in &self.0 {
            let img = if l.inverse { images[l.gen].inverse() } else { images[l.gen].clone() };
            w = w.mul(&img);
        }
        w
    }

    fn write_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = if l.inverse { -(run as i64) } else { run as i64 };
            if exp == 1 {
                write!(f, "{}", names[l.gen])?;
            } else {
                write!(f, "{}^{}", names[l.gen], exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Named generators and relator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    generators: Vec<String>,
    relators: Vec<GroupWord>,
}

impl FinitePresentation {
    pub fn new(generators: Vec<String>, relators: Vec<GroupWord>) -> Result<Self> {
        for r in &relators {
            if let Some(l) = r.letters().iter().find(|l| l.gen >= generators.len()) {
                return Err(Error::Parse(format!("relator uses undeclared generator {}", l.gen)));
            }
        }
        let relators = relators.into_iter().map(|r| GroupWord::from_letters(r.0)).collect();
        Ok(FinitePresentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Checks that `values` defines an epimorphism onto Z2.
    pub fn check_epimorphism(&self, values: &[bool]) -> Result<()> {
        if values.len() != self.generators.len() {
            return Err(Error::InvalidCharacter(format!(
                "expected {} generator values, got {}",
                self.generators.len(),
                values.len()
            )));
        }
        if let Some(i) = self.relators.iter().position(|r| r.parity(values)) {
            return Err(Error::NotAHomomorphism(i));
        }
        if !values.iter().any(|&v| v) {
            return Err(Error::NotSurjective);
        }
        Ok(())
    }

    pub fn display_word<'a>(&'a self, w: &'a GroupWord) -> impl fmt::Display + 'a {
        WordDisplay { names: &self.generators, word: w }
    }
}

struct WordDisplay<'a> {
    names: &'a [String],
    word: &'a GroupWord,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.write_with(self.names, f)
    }
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.generators.join(","))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            r.write_with(&self.generators, f)?;
        }
        f.write_str(">")
    }
}

/// Generator names in canonical order: `s1..sn, v1..vg', h`.
pub fn canonical_generator_names(n: usize, g_prime: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("s{i}"))
        .chain((1..=g_prime).map(|j| format!("v{j}")))
        .chain(std::iter::once("h".to_string()))
        .collect()
}

/// The standard presentation of π1 of a Seifert manifold:
///
/// ```text
/// < s_i, v_j, h | [s_i,h], s_i^{a_i} h^{b_i}, v_j h v_j^-1 h^-ε, s_1…s_n V h^-b >
/// ```
///
/// with `V = [v1,v2]…[v_{2g-1},v_{2g}]` over an orientable base and
/// `V = v1²…v_g²` otherwise.
pub fn fundamental_group(inv: &SeifertInvariant) -> FinitePresentation {
    let n = inv.pairs().len();
    let g_prime = inv.g_prime() as usize;
    let generators = canonical_generator_names(n, g_prime);
    let s = |i: usize| GroupWord::power(i, 1);
    let v = |j: usize| GroupWord::power(n + j, 1);
    let h_idx = n + g_prime;
    let h = GroupWord::power(h_idx, 1);

    let mut relators = Vec::new();
    for i in 0..n {
        relators.push(GroupWord::commutator(&s(i), &h));
    }
    for (i, p) in inv.pairs().iter().enumerate() {
        relators.push(GroupWord::power(i, p.a).mul(&GroupWord::power(h_idx, p.beta)));
    }
    let eps = inv.epsilon().sign();
    for j in 0..g_prime {
        relators.push(v(j).mul(&h).mul(&v(j).inverse()).mul(&GroupWord::power(h_idx, -eps)));
    }
    let mut long = GroupWord::identity();
    for i in 0..n {
        long = long.mul(&s(i));
    }
    match inv.epsilon() {
        Epsilon::Orientable => {
            for k in 0..g_prime / 2 {
                long = long.mul(&GroupWord::commutator(&v(2 * k), &v(2 * k + 1)));
            }
        }
        Epsilon::NonOrientable => {
            for j in 0..g_prime {
                long = long.mul(&GroupWord::power(n + j, 2));
            }
        }
    }
    long = long.mul(&GroupWord::power(h_idx, -inv.b()));
    relators.push(long);

    FinitePresentation::new(generators, relators).expect("generators are declared")
}

/// Presentation of the kernel of `phi` using the first generator with
/// `phi = 1` as transversal element.
pub fn reidemeister_schreier(pres: &FinitePresentation, phi: &[bool]) -> Result<FinitePresentation> {
    pres.check_epimorphism(phi)?;
    let t = phi.iter().position(|&v| v).expect("surjective");
    reidemeister_schreier_with(pres, phi, t)
}

/// Reidemeister–Schreier for the index-2 subgroup `ker phi`, with Schreier
/// transversal `{1, t}`.
///
/// The Schreier generator for generator `x` at coset `r` is
/// `rep(r) x rep(r·x)⁻¹`; it is named `x` at the trivial coset and `x_t` at
/// the other one. The trivial generator `t·t⁻¹` is dropped, leaving
/// `2·|generators| − 1` generators. Every relator is rewritten at both
/// cosets.
pub fn reidemeister_schreier_with(
    pres: &FinitePresentation,
    phi: &[bool],
    t: usize,
) -> Result<FinitePresentation> {
    pres.check_epimorphism(phi)?;
    if !phi.get(t).copied().unwrap_or(false) {
        return Err(Error::InvalidCharacter(format!(
            "transversal generator {t} is not sent to 1"
        )));
    }
    let ngens = pres.generators.len();
    // Schreier generator index for (coset, generator); None for the trivial one.
    let mut index = vec![[None; 2]; ngens];
    let mut names = Vec::with_capacity(2 * ngens - 1);
    #[allow(clippy::needless_range_loop)]
    for coset in 0..2 {
        for (x, name) in pres.generators.iter().enumerate() {
            if coset == 0 && x == t {
                continue;
            }
            index[x][coset] = Some(names.len());
            names.push(if coset == 0 { name.clone() } else { format!("{name}_t") });
        }
    }

    let rewrite = |w: &GroupWord, start: usize| -> GroupWord {
        let mut coset = start;
        let mut out = GroupWord::identity();
        for l in w.letters() {
            let flip = usize::from(phi[l.gen]);
            if l.inverse {
                coset ^= flip;
                if let Some(g) = index[l.gen][coset] {
                    out.push(Letter::new(g, true));
                }
            } else {
                if let Some(g) = index[l.gen][coset] {
                    out.push(Letter::new(g, false));
                }
                coset ^= flip;
            }
        }
        debug_assert_eq!(coset, start, "relators lie in the kernel");
        out
    };

    let relators = (0..2)
        .flat_map(|coset| pres.relators.iter().map(move |r| (coset, r)))
        .map(|(coset, r)| rewrite(r, coset))
        .collect();
    FinitePresentation::new(names, relators)
}
