//! An executable engine for sheaf and stack theory over finite sites.
//!
//! The crate decides, by bounded exhaustive search: local epimorphisms and
//! Grothendieck topology axioms, separated-presheaf and sheaf conditions,
//! prestack coherence, descent categories, restriction adjoints built as
//! colimits, and the proper-stack axioms together with the stack verdict
//! they imply.

pub mod bounds;
pub mod fincat;
pub mod gallery;
pub mod oracle;
pub mod presheaf;
pub mod prestack;
pub mod proper;
pub mod sheaves;
pub mod site;

pub use bounds::SearchBounds;
pub use fincat::{FinCategory, Functor, MorId, NatTransf, ObjId};
