//! Finite-set-valued presheaves on the site's base category: morphisms,
//! fiber products, sieves, categories of elements, and the extension of a
//! presheaf to arbitrary (finite) presheaf coefficients via a limit over the
//! category of elements.

use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{
    limit_of_sets, FinCategory, FinSetDiagram, Functor, LimitOfSets, MorId, ObjId,
};

/// A contravariant functor from the base into finite sets. Elements are
/// named; `restrictions[f]`, for `f : U → V`, tabulates `values(V) → values(U)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPresheaf {
    pub base: Arc<FinCategory>,
    values: Vec<Vec<String>>,
    restrictions: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PresheafViolation {
    RestrictionShape { morphism: String },
    Identity { object: String },
    /// restriction of a composite differs from the composite of restrictions
    Contravariance { f: String, g: String },
}

impl FinPresheaf {
    pub fn new(base: Arc<FinCategory>, values: Vec<Vec<String>>, restrictions: Vec<Vec<usize>>) -> FinPresheaf {
        assert_eq!(values.len(), base.object_count());
        assert_eq!(restrictions.len(), base.morphism_count());
        FinPresheaf { base, values, restrictions }
    }

    /// The empty presheaf.
    pub fn empty(base: Arc<FinCategory>) -> FinPresheaf {
        let values = vec![Vec::new(); base.object_count()];
        let restrictions = vec![Vec::new(); base.morphism_count()];
        FinPresheaf { base, values, restrictions }
    }

    /// Constant presheaf with `k` points named `c0..`.
    pub fn constant(base: Arc<FinCategory>, k: usize) -> FinPresheaf {
        let values = vec![(0..k).map(|i| format!("c{i}")).collect(); base.object_count()];
        let restrictions = vec![(0..k).collect(); base.morphism_count()];
        FinPresheaf { base, values, restrictions }
    }

    pub fn size(&self, o: ObjId) -> usize {
        self.values[o.0].len()
    }

    pub fn element_name(&self, o: ObjId, x: usize) -> &str {
        &self.values[o.0][x]
    }

    pub fn element_by_name(&self, o: ObjId, name: &str) -> Option<usize> {
        self.values[o.0].iter().position(|n| n == name)
    }

    /// Apply the restriction along `f : U → V` to `x ∈ values(V)`.
    pub fn restrict(&self, f: MorId, x: usize) -> usize {
        self.restrictions[f.0][x]
    }

    pub fn total_size(&self) -> usize {
        self.values.iter().map(Vec::len).sum()
    }

    pub fn check(&self) -> Vec<PresheafViolation> {
        let mut out = Vec::new();
        let base = &self.base;
        for f in base.morphisms() {
            let (u, v) = (base.src(f), base.tgt(f));
            let map = &self.restrictions[f.0];
            if map.len() != self.size(v) || map.iter().any(|&x| x >= self.size(u)) {
                out.push(PresheafViolation::RestrictionShape {
                    morphism: base.morphism_name(f).to_string(),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in base.objects() {
            let id = base.identity_of(o);
            if (0..self.size(o)).any(|x| self.restrict(id, x) != x) {
                out.push(PresheafViolation::Identity { object: base.object_name(o).to_string() });
            }
        }
        for f in base.morphisms() {
            for g in base.morphisms() {
                let Some(gf) = base.compose_checked(f, g) else { continue };
                // f : U -> V, g : V -> W; restricting along g ∘ f must equal
                // restricting along g then along f
                let w = base.tgt(g);
                if (0..self.size(w)).any(|x| self.restrict(gf, x) != self.restrict(f, self.restrict(g, x))) {
                    out.push(PresheafViolation::Contravariance {
                        f: base.morphism_name(f).to_string(),
                        g: base.morphism_name(g).to_string(),
                    });
                }
            }
        }
        out
    }

    /// Disjoint union, with element names prefixed to stay unique.
    pub fn coproduct(&self, other: &FinPresheaf) -> FinPresheaf {
        assert_eq!(self.base.as_ref(), other.base.as_ref());
        let values = self
            .base
            .objects()
            .map(|o| {
                let mut v: Vec<String> =
                    self.values[o.0].iter().map(|n| format!("l.{n}")).collect();
                v.extend(other.values[o.0].iter().map(|n| format!("r.{n}")));
                v
            })
            .collect();
        let restrictions = self
            .base
            .morphisms()
            .map(|f| {
                let mut map: Vec<usize> = self.restrictions[f.0].clone();
                let offset = self.size(self.base.src(f));
                map.extend(other.restrictions[f.0].iter().map(|&x| x + offset));
                map
            })
            .collect();
        FinPresheaf { base: self.base.clone(), values, restrictions }
    }

    /// Left inclusion into `self.coproduct(other)`.
    pub fn coproduct_inclusions(&self, other: &FinPresheaf) -> (PresheafMorphism, PresheafMorphism) {
        let cp = self.coproduct(other);
        let left = PresheafMorphism {
            source: self.clone(),
            target: cp.clone(),
            components: self.base.objects().map(|o| (0..self.size(o)).collect()).collect(),
        };
        let right = PresheafMorphism {
            source: other.clone(),
            target: cp,
            components: self
                .base
                .objects()
                .map(|o| (0..other.size(o)).map(|x| x + self.size(o)).collect())
                .collect(),
        };
        (left, right)
    }
}

/// A natural family of functions between presheaves over the same base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafMorphism {
    pub source: FinPresheaf,
    pub target: FinPresheaf,
    components: Vec<Vec<usize>>,
}

impl PresheafMorphism {
    pub fn new(source: FinPresheaf, target: FinPresheaf, components: Vec<Vec<usize>>) -> PresheafMorphism {
        assert_eq!(components.len(), source.base.object_count());
        PresheafMorphism { source, target, components }
    }

    pub fn identity(p: &FinPresheaf) -> PresheafMorphism {
        let components = p.base.objects().map(|o| (0..p.size(o)).collect()).collect();
        PresheafMorphism { source: p.clone(), target: p.clone(), components }
    }

    pub fn apply(&self, o: ObjId, x: usize) -> usize {
        self.components[o.0][x]
    }

    /// Naturality with every restriction, plus shape checks.
    pub fn check(&self) -> bool {
        let base = &self.source.base;
        if base.as_ref() != self.target.base.as_ref() {
            return false;
        }
        for o in base.objects() {
            if self.components[o.0].len() != self.source.size(o) {
                return false;
            }
            if self.components[o.0].iter().any(|&y| y >= self.target.size(o)) {
                return false;
            }
        }
        base.morphisms().all(|f| {
            let v = base.tgt(f);
            (0..self.source.size(v)).all(|x| {
                self.target.restrict(f, self.apply(v, x))
                    == self.apply(base.src(f), self.source.restrict(f, x))
            })
        })
    }

    /// `second ∘ first` (apply `self` first).
    pub fn then(&self, second: &PresheafMorphism) -> PresheafMorphism {
        assert_eq!(self.target, second.source);
        let components = self
            .source
            .base
            .objects()
            .map(|o| {
                (0..self.source.size(o))
                    .map(|x| second.apply(o, self.apply(o, x)))
                    .collect()
            })
            .collect();
        PresheafMorphism { source: self.source.clone(), target: second.target.clone(), components }
    }

    /// The unique morphism out of the empty presheaf.
    pub fn from_empty(target: &FinPresheaf) -> PresheafMorphism {
        let source = FinPresheaf::empty(target.base.clone());
        let components = vec![Vec::new(); target.base.object_count()];
        PresheafMorphism { source, target: target.clone(), components }
    }

    /// Fold `[self, other] : source ⊔ other.source → target` for morphisms
    /// with a common target.
    pub fn cofold(&self, other: &PresheafMorphism) -> PresheafMorphism {
        assert_eq!(self.target, other.target);
        let source = self.source.coproduct(&other.source);
        let components = self
            .source
            .base
            .objects()
            .map(|o| {
                let mut v: Vec<usize> = (0..self.source.size(o)).map(|x| self.apply(o, x)).collect();
                v.extend((0..other.source.size(o)).map(|x| other.apply(o, x)));
                v
            })
            .collect();
        PresheafMorphism { source, target: self.target.clone(), components }
    }
}

/// The representable presheaf `V ↦ hom(V, u)` with precomposition
/// restrictions.
pub fn yoneda(base: &Arc<FinCategory>, u: ObjId) -> FinPresheaf {
    let values: Vec<Vec<String>> = base
        .objects()
        .map(|v| base.hom(v, u).iter().map(|&m| base.morphism_name(m).to_string()).collect())
        .collect();
    let restrictions = base
        .morphisms()
        .map(|f| {
            // f : A -> B; hom(B, u) -> hom(A, u) by precomposition with f
            let (a, b) = (base.src(f), base.tgt(f));
            base.hom(b, u)
                .iter()
                .map(|&m| {
                    let fm = base.compose(f, m);
                    base.hom(a, u).iter().position(|&k| k == fm).expect("hom is closed")
                })
                .collect()
        })
        .collect();
    FinPresheaf { base: base.clone(), values, restrictions }
}

/// The morphism of representables induced by `f : U → V` under Yoneda.
pub fn yoneda_morphism(base: &Arc<FinCategory>, f: MorId) -> PresheafMorphism {
    let (u, v) = (base.src(f), base.tgt(f));
    let source = yoneda(base, u);
    let target = yoneda(base, v);
    let components = base
        .objects()
        .map(|w| {
            base.hom(w, u)
                .iter()
                .map(|&m| {
                    let mf = base.compose(m, f);
                    base.hom(w, v).iter().position(|&k| k == mf).expect("hom is closed")
                })
                .collect()
        })
        .collect();
    PresheafMorphism { source, target, components }
}

/// The morphism `yoneda(U) → b` classifying `x ∈ b(U)` (Yoneda's lemma).
pub fn element_as_morphism(b: &FinPresheaf, u: ObjId, x: usize) -> PresheafMorphism {
    let base = &b.base;
    let source = yoneda(base, u);
    let components = base
        .objects()
        .map(|v| base.hom(v, u).iter().map(|&f| b.restrict(f, x)).collect())
        .collect();
    PresheafMorphism { source, target: b.clone(), components }
}

/// All natural families `a ⇒ b`, by product enumeration filtered by
/// naturality, in lexicographic order of component choices.
pub fn presheaf_homs(a: &FinPresheaf, b: &FinPresheaf) -> Vec<PresheafMorphism> {
    assert_eq!(a.base.as_ref(), b.base.as_ref());
    let base = &a.base;
    let slots: Vec<(ObjId, usize)> = base
        .objects()
        .flat_map(|o| (0..a.size(o)).map(move |x| (o, x)))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; slots.len()];
    fn rec(
        slots: &[(ObjId, usize)],
        sizes: &[usize],
        i: usize,
        choice: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if i == slots.len() {
            f(choice);
            return;
        }
        if sizes[i] == 0 {
            return;
        }
        for v in 0..sizes[i] {
            choice[i] = v;
            rec(slots, sizes, i + 1, choice, f);
        }
    }
    let slot_sizes: Vec<usize> = slots.iter().map(|&(o, _)| b.size(o)).collect();
    rec(&slots, &slot_sizes, 0, &mut choice, &mut |choice| {
        let mut components: Vec<Vec<usize>> = base.objects().map(|o| vec![0; a.size(o)]).collect();
        for (i, &(o, x)) in slots.iter().enumerate() {
            components[o.0][x] = choice[i];
        }
        let m = PresheafMorphism { source: a.clone(), target: b.clone(), components };
        if m.check() {
            out.push(m);
        }
    });
    out
}

/// Pointwise pullback of `u : a → c` and `v : b → c`, with both projections.
pub struct FiberProduct {
    pub presheaf: FinPresheaf,
    pub to_left: PresheafMorphism,
    pub to_right: PresheafMorphism,
    /// Pairs `(x, y)` per object, aligned with the pullback's element order.
    pub pairs: Vec<Vec<(usize, usize)>>,
}

pub fn fiber_product(u: &PresheafMorphism, v: &PresheafMorphism) -> FiberProduct {
    assert_eq!(u.target, v.target);
    let a = &u.source;
    let b = &v.source;
    let base = &a.base;
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut values = Vec::new();
    for o in base.objects() {
        let mut here = Vec::new();
        let mut names = Vec::new();
        for x in 0..a.size(o) {
            for y in 0..b.size(o) {
                if u.apply(o, x) == v.apply(o, y) {
                    names.push(format!("({},{})", a.element_name(o, x), b.element_name(o, y)));
                    here.push((x, y));
                }
            }
        }
        pairs.push(here);
        values.push(names);
    }
    let restrictions = base
        .morphisms()
        .map(|f| {
            let (s, t) = (base.src(f), base.tgt(f));
            pairs[t.0]
                .iter()
                .map(|&(x, y)| {
                    let rx = a.restrict(f, x);
                    let ry = b.restrict(f, y);
                    pairs[s.0]
                        .iter()
                        .position(|&(px, py)| px == rx && py == ry)
                        .expect("restriction lands in the pullback")
                })
                .collect()
        })
        .collect();
    let presheaf = FinPresheaf { base: base.clone(), values, restrictions };
    let to_left = PresheafMorphism {
        source: presheaf.clone(),
        target: a.clone(),
        components: pairs.iter().map(|p| p.iter().map(|&(x, _)| x).collect()).collect(),
    };
    let to_right = PresheafMorphism {
        source: presheaf.clone(),
        target: b.clone(),
        components: pairs.iter().map(|p| p.iter().map(|&(_, y)| y).collect()).collect(),
    };
    FiberProduct { presheaf, to_left, to_right, pairs }
}

/// The category of elements of `a`: objects are pairs `(U, x ∈ a(U))`, a
/// morphism `(U, x) → (V, y)` is `f : U → V` with `a(f)(y) = x`.
#[derive(Debug, Clone)]
pub struct ElementsCategory {
    pub cat: Arc<FinCategory>,
    /// Per element-object: the base object and the element index.
    pub objects: Vec<(ObjId, usize)>,
    /// Per element-morphism: the underlying base morphism.
    pub underlying: Vec<MorId>,
    /// Projection functor to the base.
    pub projection: Functor,
}

impl ElementsCategory {
    pub fn object_index(&self, u: ObjId, x: usize) -> Option<ObjId> {
        self.objects.iter().position(|&(o, e)| o == u && e == x).map(ObjId)
    }
}

pub fn category_of_elements(a: &FinPresheaf) -> ElementsCategory {
    let base = &a.base;
    let mut objects = Vec::new();
    let mut names = Vec::new();
    for u in base.objects() {
        for x in 0..a.size(u) {
            names.push(format!("({}|{})", base.object_name(u), a.element_name(u, x)));
            objects.push((u, x));
        }
    }
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    for (i, &(u, x)) in objects.iter().enumerate() {
        for (j, &(v, y)) in objects.iter().enumerate() {
            for &f in base.hom(u, v) {
                if a.restrict(f, y) == x {
                    morphisms.push((format!("[{}:{}->{}]", base.morphism_name(f), names[i], names[j]), i, j));
                    underlying.push(f);
                }
            }
        }
    }
    let identity: Vec<usize> = objects
        .iter()
        .enumerate()
        .map(|(i, &(u, _))| {
            morphisms
                .iter()
                .zip(&underlying)
                .position(|(&(_, s, t), &m)| s == i && t == i && m == base.identity_of(u))
                .expect("identity element morphism")
        })
        .collect();
    let mut compose = Vec::new();
    for (p, (&(_, ps, pt), &pm)) in morphisms.iter().zip(&underlying).enumerate() {
        for (q, (&(_, qs, qt), &qm)) in morphisms.iter().zip(&underlying).enumerate() {
            if pt != qs {
                continue;
            }
            let m = base.compose(pm, qm);
            let r = morphisms
                .iter()
                .zip(&underlying)
                .position(|(&(_, s, t), &u2)| s == ps && t == qt && u2 == m)
                .expect("composite element morphism");
            compose.push(((p, q), r));
        }
    }
    let cat = FinCategory::from_parts(names, morphisms, identity, compose)
        .expect("category of elements is structurally valid")
        .into_arc();
    let projection = Functor::new(
        cat.clone(),
        base.clone(),
        objects.iter().map(|&(u, _)| u).collect(),
        underlying.clone(),
    );
    ElementsCategory { cat, objects, underlying, projection }
}

/// Sections of `f` over a general presheaf `a`: the limit of `f` over the
/// category of elements of `a`, together with the diagram it was taken over.
pub struct ExtendedSections {
    pub elements: ElementsCategory,
    pub diagram: FinSetDiagram,
    pub limit: LimitOfSets,
}

/// `F(A) = lim over (U → A) of F(U)`: a covariant diagram on the opposite of
/// the category of elements of `a`, valued at `(U, x) ↦ f(U)`.
pub fn extend_presheaf(f: &FinPresheaf, a: &FinPresheaf) -> ExtendedSections {
    assert_eq!(f.base.as_ref(), a.base.as_ref());
    let elements = category_of_elements(a);
    let shape = elements.cat.opposite().into_arc();
    let sizes: Vec<usize> = elements.objects.iter().map(|&(u, _)| f.size(u)).collect();
    let maps: Vec<Vec<usize>> = shape
        .morphisms()
        .map(|m| {
            // In the opposite shape, m runs (V,y) -> (U,x) for an element
            // morphism (U,x) -> (V,y) over base f0 : U -> V, and acts by the
            // restriction f(V) -> f(U).
            let f0 = elements.underlying[m.0];
            (0..f.size(elements.objects[shape.src(m).0].0))
                .map(|s| f.restrict(f0, s))
                .collect()
        })
        .collect();
    let diagram = FinSetDiagram::new(shape, sizes, maps);
    let limit = limit_of_sets(&diagram);
    ExtendedSections { elements, diagram, limit }
}

/// A sieve on `anchor`: a set of morphisms into `anchor` closed under
/// precomposition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sieve {
    pub anchor: ObjId,
    pub members: std::collections::BTreeSet<MorId>,
}

impl Sieve {
    pub fn empty(anchor: ObjId) -> Sieve {
        Sieve { anchor, members: Default::default() }
    }

    pub fn maximal(base: &FinCategory, anchor: ObjId) -> Sieve {
        Sieve { anchor, members: base.into_object(anchor).into_iter().collect() }
    }

    /// The sieve generated by the given morphisms into `anchor`: close under
    /// precomposition.
    pub fn generated(base: &FinCategory, anchor: ObjId, generators: &[MorId]) -> Sieve {
        let mut members: std::collections::BTreeSet<MorId> = Default::default();
        for &g in generators {
            assert_eq!(base.tgt(g), anchor, "generator must land in the anchor");
            for h in base.morphisms() {
                if base.tgt(h) == base.src(g) {
                    members.insert(base.compose(h, g));
                }
            }
            members.insert(g);
        }
        Sieve { anchor, members }
    }

    pub fn contains(&self, m: MorId) -> bool {
        self.members.contains(&m)
    }

    pub fn is_maximal(&self, base: &FinCategory) -> bool {
        self.members.len() == base.into_object(self.anchor).len()
    }

    /// Closure under precomposition.
    pub fn is_closed(&self, base: &FinCategory) -> bool {
        self.members.iter().all(|&f| {
            base.morphisms()
                .filter(|&g| base.tgt(g) == base.src(f))
                .all(|g| self.members.contains(&base.compose(g, f)))
        })
    }

    /// Pullback along `f : V → anchor`: `{ g : W → V | f ∘ g ∈ S }`.
    pub fn pullback(&self, base: &FinCategory, f: MorId) -> Sieve {
        assert_eq!(base.tgt(f), self.anchor);
        let v = base.src(f);
        let members = base
            .into_object(v)
            .into_iter()
            .filter(|&g| self.members.contains(&base.compose(g, f)))
            .collect();
        Sieve { anchor: v, members }
    }

    /// The sieve as a subpresheaf of the representable at its anchor.
    pub fn to_presheaf(&self, base: &Arc<FinCategory>) -> FinPresheaf {
        let selected: Vec<Vec<MorId>> = base
            .objects()
            .map(|v| {
                base.hom(v, self.anchor)
                    .iter()
                    .copied()
                    .filter(|m| self.members.contains(m))
                    .collect()
            })
            .collect();
        let values: Vec<Vec<String>> = selected
            .iter()
            .map(|ms| ms.iter().map(|&m| base.morphism_name(m).to_string()).collect())
            .collect();
        let restrictions = base
            .morphisms()
            .map(|f| {
                let (s, t) = (base.src(f), base.tgt(f));
                selected[t.0]
                    .iter()
                    .map(|&m| {
                        let fm = base.compose(f, m);
                        selected[s.0].iter().position(|&k| k == fm).expect("sieve is closed")
                    })
                    .collect()
            })
            .collect();
        FinPresheaf { base: base.clone(), values, restrictions }
    }

    /// The inclusion of the sieve into the representable at its anchor.
    pub fn inclusion(&self, base: &Arc<FinCategory>) -> PresheafMorphism {
        let source = self.to_presheaf(base);
        let target = yoneda(base, self.anchor);
        let components = base
            .objects()
            .map(|v| {
                base.hom(v, self.anchor)
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| self.members.contains(m))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        PresheafMorphism { source, target, components }
    }

    /// Names of the members, for witnesses.
    pub fn describe(&self, base: &FinCategory) -> Vec<String> {
        self.members.iter().map(|&m| base.morphism_name(m).to_string()).collect()
    }
}

/// The sieve of morphisms `f : V → anchor` that factor through
/// `u : a → yoneda(anchor)`.
pub fn image_sieve(base: &Arc<FinCategory>, u: &PresheafMorphism, anchor: ObjId) -> Sieve {
    let mut members = std::collections::BTreeSet::new();
    for v in base.objects() {
        let hom = base.hom(v, anchor);
        for x in 0..u.source.size(v) {
            members.insert(hom[u.apply(v, x)]);
        }
    }
    Sieve { anchor, members }
}

/// All sieves on `anchor`, by filtering subsets of the incoming morphisms
/// for closure, in lexicographic membership order.
pub fn all_sieves_on(base: &FinCategory, anchor: ObjId) -> Vec<Sieve> {
    let incoming = base.into_object(anchor);
    let n = incoming.len();
    assert!(n < 20, "sieve enumeration over {n} morphisms is out of bounds");
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        let members: std::collections::BTreeSet<MorId> = incoming
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &m)| m)
            .collect();
        let s = Sieve { anchor, members };
        if s.is_closed(base) {
            out.push(s);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_poset() -> Arc<FinCategory> {
        // a, b < u
        FinCategory::poset(&["a", "b", "u"], &[(0, 2), (1, 2)]).into_arc()
    }

    #[test]
    fn yoneda_on_poset_terminal_object() {
        let c = v_poset();
        let u = c.object_by_name("u").unwrap();
        let y = yoneda(&c, u);
        assert!(y.check().is_empty());
        for o in c.objects() {
            assert_eq!(y.size(o), 1);
        }
        let a = c.object_by_name("a").unwrap();
        let ya = yoneda(&c, a);
        assert_eq!(ya.size(a), 1);
        assert_eq!(ya.size(u), 0);
    }

    #[test]
    fn yoneda_sizes_match_hom_sizes() {
        let c = FinCategory::poset(&["x", "y", "z"], &[(0, 1), (1, 2)]).into_arc();
        for u in c.objects() {
            let y = yoneda(&c, u);
            for v in c.objects() {
                assert_eq!(y.size(v), c.hom(v, u).len());
            }
        }
    }

    #[test]
    fn empty_presheaf_has_exactly_one_morphism_out() {
        let c = v_poset();
        let e = FinPresheaf::empty(c.clone());
        let t = FinPresheaf::constant(c.clone(), 2);
        assert_eq!(presheaf_homs(&e, &t).len(), 1);
    }

    #[test]
    fn terminal_presheaf_has_exactly_one_morphism_in() {
        let c = v_poset();
        let t = FinPresheaf::constant(c.clone(), 1);
        let p = yoneda(&c, c.object_by_name("u").unwrap());
        assert_eq!(presheaf_homs(&p, &t).len(), 1);
    }

    #[test]
    fn yoneda_lemma_for_representable_homs() {
        // morphisms yoneda(U) -> yoneda(V) correspond to hom(U, V)
        let c = FinCategory::poset(&["x", "y", "z"], &[(0, 1), (1, 2)]).into_arc();
        for u in c.objects() {
            for v in c.objects() {
                let homs = presheaf_homs(&yoneda(&c, u), &yoneda(&c, v));
                assert_eq!(homs.len(), c.hom(u, v).len(), "at ({u:?},{v:?})");
            }
        }
    }

    #[test]
    fn fiber_product_with_identity_matches_source() {
        let c = v_poset();
        let u = c.object_by_name("u").unwrap();
        let y = yoneda(&c, u);
        let s = Sieve::generated(&c, u, &[c.hom(c.object_by_name("a").unwrap(), u)[0]]);
        let incl = s.inclusion(&c);
        let idm = PresheafMorphism::identity(&y);
        let fp = fiber_product(&incl, &idm);
        for o in c.objects() {
            assert_eq!(fp.presheaf.size(o), incl.source.size(o));
        }
        assert!(fp.presheaf.check().is_empty());
        assert!(fp.to_left.check());
        assert!(fp.to_right.check());
    }

    #[test]
    fn fiber_product_of_sieves_is_intersection() {
        let c = v_poset();
        let u = c.object_by_name("u").unwrap();
        let a = c.object_by_name("a").unwrap();
        let b = c.object_by_name("b").unwrap();
        let sa = Sieve::generated(&c, u, &[c.hom(a, u)[0]]);
        let sb = Sieve::generated(&c, u, &[c.hom(b, u)[0]]);
        let fp = fiber_product(&sa.inclusion(&c), &sb.inclusion(&c));
        // elementwise intersection oracle
        for o in c.objects() {
            let expected = c
                .hom(o, u)
                .iter()
                .filter(|m| sa.contains(**m) && sb.contains(**m))
                .count();
            assert_eq!(fp.presheaf.size(o), expected);
        }
    }

    #[test]
    fn disjoint_images_give_empty_fiber_product() {
        let c = v_poset();
        let u = c.object_by_name("u").unwrap();
        let a = c.object_by_name("a").unwrap();
        let b = c.object_by_name("b").unwrap();
        let xa = element_as_morphism(&yoneda(&c, u), a, 0);
        let xb = element_as_morphism(&yoneda(&c, u), b, 0);
        let fp = fiber_product(&xa, &xb);
        assert_eq!(fp.presheaf.total_size(), 0);
    }

    #[test]
    fn pullback_universal_property_holds() {
        // against all enumerated cones from small test presheaves
        let c = v_poset();
        let u = c.object_by_name("u").unwrap();
        let a = c.object_by_name("a").unwrap();
        let b = c.object_by_name("b").unwrap();
        let y = yoneda(&c, u);
        let sa = Sieve::generated(&c, u, &[c.hom(a, u)[0]]);
        let sb = Sieve::generated(&c, u, &[c.hom(b, u)[0], c.hom(a, u)[0]]);
        let ui = sa.inclusion(&c);
        let vi = sb.inclusion(&c);
        let fp = fiber_product(&ui, &vi);
        let probe = yoneda(&c, a);
        for p in presheaf_homs(&probe, &ui.source) {
            for q in presheaf_homs(&probe, &vi.source) {
                if p.then(&ui) != q.then(&vi) {
                    continue;
                }
                let mediators: Vec<_> = presheaf_homs(&probe, &fp.presheaf)
                    .into_iter()
                    .filter(|m| m.then(&fp.to_left) == p && m.then(&fp.to_right) == q)
                    .collect();
                assert_eq!(mediators.len(), 1, "unique mediating morphism");
            }
        }
        let _ = y;
    }

    #[test]
    fn elements_of_representable_is_slice_with_terminal() {
        let c = v_poset();
        let u = c.object_by_name("u").unwrap();
        let e = category_of_elements(&yoneda(&c, u));
        assert_eq!(e.cat.object_count(), 3);
        assert!(e.cat.check_axioms().is_empty());
        let terminal = e
            .cat
            .objects()
            .find(|&t| e.cat.objects().all(|s| e.cat.hom(s, t).len() == 1));
        assert!(terminal.is_some());
    }

    #[test]
    fn elements_of_empty_presheaf_is_empty() {
        let c = v_poset();
        let e = category_of_elements(&FinPresheaf::empty(c.clone()));
        assert_eq!(e.cat.object_count(), 0);
    }

    #[test]
    fn elements_of_constant_on_discrete_base_is_disjoint_copies() {
        let c = FinCategory::discrete(&["x", "y"]).into_arc();
        let e = category_of_elements(&FinPresheaf::constant(c.clone(), 2));
        assert_eq!(e.cat.object_count(), 4);
        assert_eq!(e.cat.morphism_count(), 4); // identities only
    }

    #[test]
    fn elements_category_size_is_total_presheaf_size() {
        let c = v_poset();
        let p = yoneda(&c, c.object_by_name("u").unwrap()).coproduct(&FinPresheaf::constant(c.clone(), 2));
        let e = category_of_elements(&p);
        assert_eq!(e.cat.object_count(), p.total_size());
        assert!(e.cat.check_axioms().is_empty());
        assert!(e.projection.check().is_empty());
    }

    #[test]
    fn extension_at_representable_is_bijective_to_value() {
        let c = v_poset();
        let f = FinPresheaf::constant(c.clone(), 3);
        for u in c.objects() {
            let ext = extend_presheaf(&f, &yoneda(&c, u));
            assert_eq!(ext.limit.len(), 3);
        }
    }

    #[test]
    fn extension_at_empty_is_singleton() {
        let c = v_poset();
        let f = FinPresheaf::constant(c.clone(), 2);
        let ext = extend_presheaf(&f, &FinPresheaf::empty(c.clone()));
        assert_eq!(ext.limit.len(), 1);
    }

    #[test]
    fn extension_at_coproduct_of_representables_is_product() {
        let c = v_poset();
        let a = c.object_by_name("a").unwrap();
        let b = c.object_by_name("b").unwrap();
        let f = FinPresheaf::constant(c.clone(), 2);
        let ab = yoneda(&c, a).coproduct(&yoneda(&c, b));
        let ext = extend_presheaf(&f, &ab);
        // compatible-family filter oracle: the two legs are independent
        assert_eq!(ext.limit.len(), 4);
    }

    #[test]
    fn image_sieve_of_identity_is_maximal() {
        let c = v_poset();
        let u = c.object_by_name("u").unwrap();
        let y = yoneda(&c, u);
        let s = image_sieve(&c, &PresheafMorphism::identity(&y), u);
        assert!(s.is_maximal(&c));
    }

    #[test]
    fn image_sieve_of_empty_is_empty() {
        let c = v_poset();
        let u = c.object_by_name("u").unwrap();
        let s = image_sieve(&c, &PresheafMorphism::from_empty(&yoneda(&c, u)), u);
        assert!(s.members.is_empty());
    }

    #[test]
    fn image_sieve_of_representable_morphism_factors_through() {
        let c = v_poset();
        let a = c.object_by_name("a").unwrap();
        let u = c.object_by_name("u").unwrap();
        let f = c.hom(a, u)[0];
        let s = image_sieve(&c, &yoneda_morphism(&c, f), u);
        // factorization-search oracle: morphisms into u factoring through a
        let expected: std::collections::BTreeSet<MorId> = c
            .into_object(u)
            .into_iter()
            .filter(|&m| c.hom(c.src(m), a).iter().any(|&g| c.compose(g, f) == m))
            .collect();
        assert_eq!(s.members, expected);
    }

    #[test]
    fn sieves_are_closed_and_inclusions_natural() {
        let c = v_poset();
        let u = c.object_by_name("u").unwrap();
        for s in all_sieves_on(&c, u) {
            assert!(s.is_closed(&c));
            assert!(s.to_presheaf(&c).check().is_empty());
            assert!(s.inclusion(&c).check());
        }
        // the V poset has sieves {}, {a}, {b}, {a,b}, {a,b,id}
        assert_eq!(all_sieves_on(&c, u).len(), 5);
    }

    #[test]
    fn cofold_of_representables_is_natural() {
        let c = v_poset();
        let u = c.object_by_name("u").unwrap();
        let a = c.object_by_name("a").unwrap();
        let b = c.object_by_name("b").unwrap();
        let fa = yoneda_morphism(&c, c.hom(a, u)[0]);
        let fb = yoneda_morphism(&c, c.hom(b, u)[0]);
        let folded = fa.cofold(&fb);
        assert!(folded.check());
        assert_eq!(folded.source.total_size(), 2);
    }
}
