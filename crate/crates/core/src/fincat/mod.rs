//! Finite categories, functors, natural transformations, comma categories,
//! and exhaustive-search (co)limits and adjoints: the computational substrate
//! for the site, sheaf and stack machinery.

pub mod adjoint;
pub mod category;
pub mod colimit;
pub mod comma;
pub mod functor;
pub mod setval;

pub use adjoint::{
    is_equivalence, is_fully_faithful, left_adjoint_of, Adjunction, EquivalenceFailure,
    FullyFaithfulFailure,
};
pub use category::{CategoryViolation, FinCategory, MorId, ObjId, StructuralError};
pub use colimit::{
    all_diagrams, cocones, colimit_in_category, initial_object, is_initial_cocone, mediating,
    sweep_shapes, Cocone,
};
pub use comma::{comma_category, CommaCategory};
pub use functor::{Functor, FunctorViolation, NatTransf, NatTransfViolation};
pub use setval::{colimit_of_sets, limit_of_sets, ColimitOfSets, FinSetDiagram, LimitOfSets};
