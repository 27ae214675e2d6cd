//! Twisted complexes over a directed category: the model of D^b(A).
//!
//! A component of internal degree d from X[σ] to X'[τ] has total degree
//! d + σ − τ, so δ has degree 1 and `shift(c, 1)` is c[1].

mod category;
mod complex;
mod flatten;
mod iso;
mod mu;
mod ops;

pub use category::TwCategory;
pub use complex::{ext_degree, ext_dim, ext_label, HomLayout, Summand, TwError, TwistedComplex};
pub use flatten::Embedding;
pub use iso::{generator_table, is_isomorphic, IsoOutcome, Verdict, DEFAULT_SEARCH_CAP};
pub use mu::{maurer_cartan_defect, tw_mu};
pub use ops::{
    cone, db_hom, dual_twist, hom_classes, hom_complex, hom_space, identity, is_closed, morphism_degree,
    strip_acyclic, twist,
};
