//! Double coverings and Borsuk–Ulam Z2-indices of closed 3-manifolds with
//! Nil geometry.
//!
//! The pipeline runs from Seifert invariants ([`seifert`]) through the
//! classification into seven families ([`nil`]), π1 presentations and
//! Reidemeister–Schreier rewriting ([`presentation`]), Smith normal form
//! and first homology ([`snf`], [`homology`]), epimorphisms onto Z2 and
//! their equivalence classes ([`epimorphisms`]), the double covers they
//! define ([`coverings`]) and finally the Z2-index of each free involution
//! ([`bu_index`]).

pub mod bu_index;
pub mod coverings;
pub mod epimorphisms;
pub mod error;
pub mod homology;
pub mod nil;
pub mod presentation;
pub mod rational;
pub mod reference;
pub mod seifert;
pub mod snf;
pub mod sweep;

pub use bu_index::{cup_cube_nonzero, index_is_one, z2_index, Criterion, IndexReport};
pub use coverings::{covers_of, double_cover, quotients_of, verify_cover, CoveringDescriptor};
pub use epimorphisms::{
    apply_move, enumerate_epis, equivalence_classes, EpiClass, EpiClassPartition, Move, Z2Char,
};
pub use error::{Error, Result};
pub use homology::{abelianization, h1, AbelianGroup};
pub use nil::{classify, Family, NilManifold};
pub use presentation::{fundamental_group, reidemeister_schreier, FinitePresentation, GroupWord};
pub use rational::Rational;
pub use seifert::{normalize, Epsilon, FibrePair, RawSeifert, SeifertInvariant};
pub use snf::{smith_normal_form, IntegerMatrix, SmithNormalForm};
