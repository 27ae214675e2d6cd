//! Directed A∞-categories over GF(2).
//!
//! Objects are `0..m`; hom(i,k) is stored for i < k and identities are
//! implicit strict units. Composition tables list their arguments in path
//! order, so `μ^d(objs, args)` takes `args[j] ∈ hom(objs[j], objs[j+1])`.

mod category;
pub mod compare;
mod functor;
mod minimal;
mod quiver;

pub use category::{
    chains, check_relations, for_each_tuple, relation_defect, AInfty, CategoryError, ChainTable, DirectedCategory,
    Violation,
};
pub use functor::{for_each_composition, AInftyFunctor};
pub use minimal::{minimal_model, transfer, Transfer};
pub use quiver::{from_quiver, Arrow, Path, QuiverError, QuiverPresentation};
