//! Separated-presheaf and sheaf checkers: the restriction map from sections
//! over an object to compatible families over a covering sieve must be
//! injective (separated) or bijective (sheaf).
//!
//! Quantification over "any local isomorphism" is replaced by quantification
//! over covering sieve inclusions; a cross-validation sweep over other local
//! isomorphisms lives in the test suite.

use serde::Serialize;

use crate::fincat::ObjId;
use crate::presheaf::{extend_presheaf, ExtendedSections, FinPresheaf, PresheafMorphism};
use crate::site::Topology;

/// The canonical map `f(U) → f(A)` for `u : a → yoneda(U)`: a section goes to
/// the family of its restrictions along the classified morphisms.
pub struct RestrictionMap {
    pub sections: ExtendedSections,
    /// `image[s]` indexes the compatible family of section `s` inside
    /// `sections.limit`.
    pub image: Vec<usize>,
}

pub fn restriction_map_of_sets(f: &FinPresheaf, u: &PresheafMorphism, anchor: ObjId) -> RestrictionMap {
    let a = &u.source;
    let sections = extend_presheaf(f, a);
    let base = &f.base;
    let image = (0..f.size(anchor))
        .map(|s| {
            let family: Vec<usize> = sections
                .elements
                .objects
                .iter()
                .map(|&(v, x)| {
                    // the element x of a(v) classifies a morphism v -> anchor
                    let m = base.hom(v, anchor)[u.apply(v, x)];
                    f.restrict(m, s)
                })
                .collect();
            sections
                .limit
                .index_of(&family)
                .expect("restriction family is compatible")
        })
        .collect();
    RestrictionMap { sections, image }
}

/// Two sections with the same image under a covering-sieve restriction map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationFailure {
    pub object: String,
    pub sieve: Vec<String>,
    pub first: String,
    pub second: String,
}

/// Injectivity of the restriction map for every covering sieve inclusion.
pub fn is_separated(t: &Topology, f: &FinPresheaf) -> Result<(), SeparationFailure> {
    let base = &t.base;
    for u in base.objects() {
        for sieve in t.covering_sieves(u) {
            let rm = restriction_map_of_sets(f, &sieve.inclusion(base), u);
            for s1 in 0..f.size(u) {
                for s2 in (s1 + 1)..f.size(u) {
                    if rm.image[s1] == rm.image[s2] {
                        return Err(SeparationFailure {
                            object: base.object_name(u).to_string(),
                            sieve: sieve.describe(base),
                            first: f.element_name(u, s1).to_string(),
                            second: f.element_name(u, s2).to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// A compatible family with zero or at least two preimage sections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SheafFailure {
    NotSeparated(SeparationFailure),
    /// A compatible family over the sieve that no section restricts to.
    NoAmalgamation { object: String, sieve: Vec<String>, family: Vec<String> },
}

/// Bijectivity of the restriction map for every covering sieve inclusion.
pub fn is_sheaf(t: &Topology, f: &FinPresheaf) -> Result<(), SheafFailure> {
    is_separated(t, f).map_err(SheafFailure::NotSeparated)?;
    let base = &t.base;
    for u in base.objects() {
        for sieve in t.covering_sieves(u) {
            let rm = restriction_map_of_sets(f, &sieve.inclusion(base), u);
            // injective already; surjectivity is the counting question
            for fam in 0..rm.sections.limit.len() {
                if !rm.image.contains(&fam) {
                    let family = rm.sections.limit.families[fam]
                        .iter()
                        .zip(&rm.sections.elements.objects)
                        .map(|(&x, &(v, _))| format!("{}={}", base.object_name(v), f.element_name(v, x)))
                        .collect();
                    return Err(SheafFailure::NoAmalgamation {
                        object: base.object_name(u).to_string(),
                        sieve: sieve.describe(base),
                        family,
                    });
                }
            }
        }
    }
    Ok(())
}
