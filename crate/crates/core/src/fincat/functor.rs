//! Functors between finite categories and natural transformations,
//! with exhaustive checks for the laws they must satisfy.

use std::sync::Arc;

use serde::Serialize;

use super::category::{FinCategory, MorId, ObjId};

/// A functor between finite categories, tabulated on objects and morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    object_map: Vec<ObjId>,
    morphism_map: Vec<MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FunctorViolation {
    /// Image of a morphism has endpoints other than the images of its endpoints.
    Endpoints { morphism: String },
    /// `F(id) ≠ id`.
    Identity { object: String },
    /// `F(g ∘ f) ≠ F(g) ∘ F(f)`.
    Composition { f: String, g: String },
}

impl Functor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        object_map: Vec<ObjId>,
        morphism_map: Vec<MorId>,
    ) -> Functor {
        assert_eq!(object_map.len(), source.object_count());
        assert_eq!(morphism_map.len(), source.morphism_count());
        Functor { source, target, object_map, morphism_map }
    }

    pub fn identity(c: &Arc<FinCategory>) -> Functor {
        Functor {
            source: c.clone(),
            target: c.clone(),
            object_map: c.objects().collect(),
            morphism_map: c.morphisms().collect(),
        }
    }

    /// Constant functor at `obj` in `target`.
    pub fn constant(source: Arc<FinCategory>, target: Arc<FinCategory>, obj: ObjId) -> Functor {
        let object_map = vec![obj; source.object_count()];
        let morphism_map = vec![target.identity_of(obj); source.morphism_count()];
        Functor { source, target, object_map, morphism_map }
    }

    pub fn apply_obj(&self, o: ObjId) -> ObjId {
        self.object_map[o.0]
    }

    pub fn apply_mor(&self, m: MorId) -> MorId {
        self.morphism_map[m.0]
    }

    /// `then(g)` is the composite functor `g ∘ self` (apply `self` first).
    pub fn then(&self, g: &Functor) -> Functor {
        assert_eq!(
            self.target.as_ref(),
            g.source.as_ref(),
            "functor composition endpoint mismatch"
        );
        Functor {
            source: self.source.clone(),
            target: g.target.clone(),
            object_map: self.object_map.iter().map(|&o| g.apply_obj(o)).collect(),
            morphism_map: self.morphism_map.iter().map(|&m| g.apply_mor(m)).collect(),
        }
    }

    /// Preservation of endpoints, identities and all binary composites.
    pub fn check(&self) -> Vec<FunctorViolation> {
        let mut out = Vec::new();
        for m in self.source.morphisms() {
            let fm = self.apply_mor(m);
            if self.target.src(fm) != self.apply_obj(self.source.src(m))
                || self.target.tgt(fm) != self.apply_obj(self.source.tgt(m))
            {
                out.push(FunctorViolation::Endpoints {
                    morphism: self.source.morphism_name(m).to_string(),
                });
            }
        }
        for o in self.source.objects() {
            if self.apply_mor(self.source.identity_of(o)) != self.target.identity_of(self.apply_obj(o)) {
                out.push(FunctorViolation::Identity {
                    object: self.source.object_name(o).to_string(),
                });
            }
        }
        for f in self.source.morphisms() {
            for g in self.source.morphisms() {
                let Some(gf) = self.source.compose_checked(f, g) else { continue };
                let image = self.target.compose_checked(self.apply_mor(f), self.apply_mor(g));
                if image != Some(self.apply_mor(gf)) {
                    out.push(FunctorViolation::Composition {
                        f: self.source.morphism_name(f).to_string(),
                        g: self.source.morphism_name(g).to_string(),
                    });
                }
            }
        }
        out
    }
}

/// A natural transformation between parallel functors, tabulated on components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransf {
    pub source: Functor,
    pub target: Functor,
    components: Vec<MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NatTransfViolation {
    ComponentEndpoints { object: String },
    /// Naturality square at a morphism fails to commute.
    Square { morphism: String },
    /// Component is not invertible (only reported by [`NatTransf::check_iso`]).
    NotInvertible { object: String },
}

impl NatTransf {
    pub fn new(source: Functor, target: Functor, components: Vec<MorId>) -> NatTransf {
        assert_eq!(components.len(), source.source.object_count());
        NatTransf { source, target, components }
    }

    pub fn identity(f: &Functor) -> NatTransf {
        let components = f
            .source
            .objects()
            .map(|o| f.target.identity_of(f.apply_obj(o)))
            .collect();
        NatTransf { source: f.clone(), target: f.clone(), components }
    }

    pub fn component(&self, o: ObjId) -> MorId {
        self.components[o.0]
    }

    pub fn check(&self) -> Vec<NatTransfViolation> {
        let mut out = Vec::new();
        let cat = &self.source.target;
        for o in self.source.source.objects() {
            let c = self.component(o);
            if cat.src(c) != self.source.apply_obj(o) || cat.tgt(c) != self.target.apply_obj(o) {
                out.push(NatTransfViolation::ComponentEndpoints {
                    object: self.source.source.object_name(o).to_string(),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for m in self.source.source.morphisms() {
            let (a, b) = (self.source.source.src(m), self.source.source.tgt(m));
            // F(m) then component_b  ==  component_a then G(m)
            let left = cat.compose_checked(self.source.apply_mor(m), self.component(b));
            let right = cat.compose_checked(self.component(a), self.target.apply_mor(m));
            if left.is_none() || left != right {
                out.push(NatTransfViolation::Square {
                    morphism: self.source.source.morphism_name(m).to_string(),
                });
            }
        }
        out
    }

    /// Like [`NatTransf::check`], additionally demanding invertible components.
    pub fn check_iso(&self) -> Vec<NatTransfViolation> {
        let mut out = self.check();
        let cat = &self.source.target;
        for o in self.source.source.objects() {
            if !cat.is_iso(self.component(o)) {
                out.push(NatTransfViolation::NotInvertible {
                    object: self.source.source.object_name(o).to_string(),
                });
            }
        }
        out
    }

    pub fn is_iso(&self) -> bool {
        let cat = &self.source.target;
        self.components.iter().all(|&c| cat.is_iso(c))
    }

    /// Componentwise inverse; callers must know the transformation is iso.
    pub fn inverse(&self) -> NatTransf {
        let cat = &self.source.target;
        NatTransf {
            source: self.target.clone(),
            target: self.source.clone(),
            components: self
                .components
                .iter()
                .map(|&c| cat.inverse_of(c).expect("invertible component"))
                .collect(),
        }
    }

    /// Vertical composition `other ∙ self` (apply `self` first).
    pub fn vertical(&self, other: &NatTransf) -> NatTransf {
        let cat = &self.source.target;
        NatTransf {
            source: self.source.clone(),
            target: other.target.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&a, &b)| cat.compose(a, b))
                .collect(),
        }
    }

    /// Whisker on the left with `h`: components of `self` at `h(o)`.
    /// `h` must land in the source category of the parallel functors.
    pub fn precompose(&self, h: &Functor) -> NatTransf {
        NatTransf {
            source: h.then(&self.source),
            target: h.then(&self.target),
            components: h
                .source
                .objects()
                .map(|o| self.component(h.apply_obj(o)))
                .collect(),
        }
    }

    /// Whisker on the right with `k`: apply `k` to every component.
    pub fn postcompose(&self, k: &Functor) -> NatTransf {
        NatTransf {
            source: self.source.then(k),
            target: self.target.then(k),
            components: self.components.iter().map(|&c| k.apply_mor(c)).collect(),
        }
    }
}
