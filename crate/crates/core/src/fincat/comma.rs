//! Comma categories `(f ↓ anchor)`: objects are pairs of a source object and
//! a morphism from its image to the anchor, morphisms are commuting triangles.

use std::sync::Arc;

use super::category::{FinCategory, MorId, ObjId};
use super::functor::Functor;

/// The comma category of a functor over an anchor object of its target,
/// together with the data identifying its objects and morphisms.
#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub cat: Arc<FinCategory>,
    /// Per comma object: `(source object s, morphism f(s) → anchor)`.
    pub objects: Vec<(ObjId, MorId)>,
    /// Per comma morphism: the underlying source-category morphism.
    pub underlying: Vec<MorId>,
    /// Projection functor to the source of `f`.
    pub projection: Functor,
}

/// Build `(f ↓ anchor)`. Objects are ordered by `(source object, morphism)`;
/// morphisms by `(source comma object, target comma object, underlying)`.
pub fn comma_category(f: &Functor, anchor: ObjId) -> CommaCategory {
    let src = &f.source;
    let tgt = &f.target;
    let mut objects: Vec<(ObjId, MorId)> = Vec::new();
    for s in src.objects() {
        for &phi in tgt.hom(f.apply_obj(s), anchor) {
            objects.push((s, phi));
        }
    }
    let mut names = Vec::new();
    for &(s, phi) in &objects {
        names.push(format!("({}|{})", src.object_name(s), tgt.morphism_name(phi)));
    }
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    // (s1, phi1) -> (s2, phi2) given by m: s1 -> s2 with phi2 ∘ f(m) = phi1
    for (i, &(s1, phi1)) in objects.iter().enumerate() {
        for (j, &(s2, phi2)) in objects.iter().enumerate() {
            for &m in src.hom(s1, s2) {
                if tgt.compose_checked(f.apply_mor(m), phi2) == Some(phi1) {
                    morphisms.push((
                        format!("[{}:{}->{}]", src.morphism_name(m), names[i], names[j]),
                        i,
                        j,
                    ));
                    underlying.push(m);
                }
            }
        }
    }
    let identity: Vec<usize> = objects
        .iter()
        .enumerate()
        .map(|(i, &(s, _))| {
            morphisms
                .iter()
                .zip(&underlying)
                .position(|(&(_, a, b), &m)| a == i && b == i && m == src.identity_of(s))
                .expect("identity triangle exists")
        })
        .collect();
    let mut compose = Vec::new();
    for (a, (&(_, a_src, a_tgt), &ma)) in morphisms.iter().zip(&underlying).enumerate() {
        for (b, (&(_, b_src, b_tgt), &mb)) in morphisms.iter().zip(&underlying).enumerate() {
            if a_tgt != b_src {
                continue;
            }
            let m = src.compose(ma, mb);
            let c = morphisms
                .iter()
                .zip(&underlying)
                .position(|(&(_, s, t), &u)| s == a_src && t == b_tgt && u == m)
                .expect("composite triangle exists");
            compose.push(((a, b), c));
        }
    }
    let mor_names: Vec<(String, usize, usize)> = morphisms;
    let cat = FinCategory::from_parts(names, mor_names, identity, compose)
        .expect("comma category is structurally valid")
        .into_arc();
    let projection = Functor::new(
        cat.clone(),
        f.source.clone(),
        objects.iter().map(|&(s, _)| s).collect(),
        underlying.clone(),
    );
    CommaCategory { cat, objects, underlying, projection }
}
