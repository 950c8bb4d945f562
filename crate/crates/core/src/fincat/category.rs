//! Finite categories as explicit tables: objects, hom-sets, identities and a
//! total composition table on composable pairs.
//!
//! Everything downstream (limits, adjoints, descent) is exhaustive search over
//! these tables, so object and morphism identifiers are *ordered*: every
//! search returns the least candidate in identifier order.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

/// Index of an object inside a [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ObjId(pub usize);

/// Index of a morphism inside a [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MorId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
struct MorData {
    name: String,
    src: ObjId,
    tgt: ObjId,
}

/// A finite category given by explicit tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<MorData>,
    identity: Vec<MorId>,
    /// `compose[f * n + g]` is `g ∘ f` when `tgt(f) = src(g)`.
    compose: Vec<Option<MorId>>,
    homs: BTreeMap<(ObjId, ObjId), Vec<MorId>>,
}

/// Structural problem while assembling a category from raw tables.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructuralError {
    #[error("dangling object identifier {0}")]
    DanglingObject(usize),
    #[error("dangling morphism identifier {0}")]
    DanglingMorphism(usize),
    #[error("object {0} has no identity morphism")]
    MissingIdentity(usize),
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
}

/// A violated category axiom, with the offending identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CategoryViolation {
    /// `tgt(f) = src(g)` but the table has no entry for `g ∘ f`.
    MissingComposite { f: String, g: String },
    /// The tabled composite has the wrong source or target.
    CompositeEndpoints { f: String, g: String, result: String },
    /// `(h ∘ g) ∘ f ≠ h ∘ (g ∘ f)`.
    NonAssociative { f: String, g: String, h: String },
    /// `id ∘ f ≠ f`.
    LeftIdentity { f: String },
    /// `f ∘ id ≠ f`.
    RightIdentity { f: String },
    /// The declared identity of an object has wrong endpoints.
    IdentityEndpoints { object: String },
}

impl FinCategory {
    /// Assemble a category from raw tables, checking only that identifiers
    /// resolve. Axioms are the business of [`FinCategory::check_axioms`].
    ///
    /// `morphisms` lists `(name, src, tgt)`; `identity[o]` names the identity
    /// of object `o`; `compose` holds `((f, g), g_after_f)` entries.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identity: Vec<usize>,
        compose: Vec<((usize, usize), usize)>,
    ) -> Result<Self, StructuralError> {
        let n_obj = objects.len();
        let n_mor = morphisms.len();
        let mut seen = std::collections::BTreeSet::new();
        for name in &objects {
            if !seen.insert(name.clone()) {
                return Err(StructuralError::DuplicateName(name.clone()));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        let mors: Vec<MorData> = morphisms
            .into_iter()
            .map(|(name, s, t)| {
                if s >= n_obj {
                    return Err(StructuralError::DanglingObject(s));
                }
                if t >= n_obj {
                    return Err(StructuralError::DanglingObject(t));
                }
                if !seen.insert(name.clone()) {
                    return Err(StructuralError::DuplicateName(name.clone()));
                }
                Ok(MorData { name, src: ObjId(s), tgt: ObjId(t) })
            })
            .collect::<Result<_, _>>()?;
        if identity.len() != n_obj {
            return Err(StructuralError::MissingIdentity(identity.len()));
        }
        let identity: Vec<MorId> = identity
            .into_iter()
            .map(|m| if m < n_mor { Ok(MorId(m)) } else { Err(StructuralError::DanglingMorphism(m)) })
            .collect::<Result<_, _>>()?;
        let mut table = vec![None; n_mor * n_mor];
        for ((f, g), h) in compose {
            if f >= n_mor {
                return Err(StructuralError::DanglingMorphism(f));
            }
            if g >= n_mor {
                return Err(StructuralError::DanglingMorphism(g));
            }
            if h >= n_mor {
                return Err(StructuralError::DanglingMorphism(h));
            }
            table[f * n_mor + g] = Some(MorId(h));
        }
        let mut homs: BTreeMap<(ObjId, ObjId), Vec<MorId>> = BTreeMap::new();
        for (i, m) in mors.iter().enumerate() {
            homs.entry((m.src, m.tgt)).or_default().push(MorId(i));
        }
        Ok(FinCategory { objects, morphisms: mors, identity, compose: table, homs })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.0]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|n| n == name).map(ObjId)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name).map(MorId)
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].src
    }

    pub fn tgt(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].tgt
    }

    pub fn identity_of(&self, o: ObjId) -> MorId {
        self.identity[o.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity[self.src(m).0] == m
    }

    /// Ordered hom-set `hom(a, b)`.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All morphisms with target `b`, in identifier order.
    pub fn into_object(&self, b: ObjId) -> Vec<MorId> {
        self.morphisms().filter(|&m| self.tgt(m) == b).collect()
    }

    /// `second ∘ first`. Panics if the pair is not composable or the table
    /// entry is missing; use [`FinCategory::compose_checked`] on untrusted data.
    pub fn compose(&self, first: MorId, second: MorId) -> MorId {
        self.compose_checked(first, second)
            .unwrap_or_else(|| panic!("missing composite {} >> {}", self.morphism_name(first), self.morphism_name(second)))
    }

    pub fn compose_checked(&self, first: MorId, second: MorId) -> Option<MorId> {
        if self.tgt(first) != self.src(second) {
            return None;
        }
        self.compose[first.0 * self.morphisms.len() + second.0]
    }

    /// Two-sided inverse of `m`, when one exists.
    pub fn inverse_of(&self, m: MorId) -> Option<MorId> {
        let (s, t) = (self.src(m), self.tgt(m));
        self.hom(t, s)
            .iter()
            .copied()
            .find(|&g| {
                self.compose_checked(m, g) == Some(self.identity_of(s))
                    && self.compose_checked(g, m) == Some(self.identity_of(t))
            })
    }

    pub fn is_iso(&self, m: MorId) -> bool {
        self.inverse_of(m).is_some()
    }

    /// Least isomorphism `a → b` in identifier order, if the objects are
    /// isomorphic.
    pub fn find_iso(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.hom(a, b).iter().copied().find(|&m| self.is_iso(m))
    }

    /// All isomorphisms `a → b`, in identifier order.
    pub fn isos(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.hom(a, b).iter().copied().filter(|&m| self.is_iso(m)).collect()
    }

    /// Every violated associativity or unit instance; empty iff the tables
    /// describe a category.
    pub fn check_axioms(&self) -> Vec<CategoryViolation> {
        let mut out = Vec::new();
        let name = |m: MorId| self.morphism_name(m).to_string();
        for (o, &id) in self.identity.iter().enumerate() {
            let o = ObjId(o);
            if self.src(id) != o || self.tgt(id) != o {
                out.push(CategoryViolation::IdentityEndpoints { object: self.object_name(o).to_string() });
            }
        }
        for f in self.morphisms() {
            let idt = self.identity_of(self.tgt(f));
            match self.compose_checked(f, idt) {
                Some(c) if c == f => {}
                Some(_) | None => out.push(CategoryViolation::LeftIdentity { f: name(f) }),
            }
            let ids = self.identity_of(self.src(f));
            match self.compose_checked(ids, f) {
                Some(c) if c == f => {}
                Some(_) | None => out.push(CategoryViolation::RightIdentity { f: name(f) }),
            }
        }
        for f in self.morphisms() {
            for g in self.into_object(self.src(f)).iter().copied() {
                // g: a -> src(f); composite f ∘ g must exist with the right endpoints.
                match self.compose_checked(g, f) {
                    None => out.push(CategoryViolation::MissingComposite { f: name(g), g: name(f) }),
                    Some(h) => {
                        if self.src(h) != self.src(g) || self.tgt(h) != self.tgt(f) {
                            out.push(CategoryViolation::CompositeEndpoints {
                                f: name(g),
                                g: name(f),
                                result: name(h),
                            });
                        }
                    }
                }
            }
        }
        // Associativity on every composable triple f >> g >> h.
        for f in self.morphisms() {
            for g in self.hom_from(self.tgt(f)) {
                for h in self.hom_from(self.tgt(g)) {
                    let left = self.compose_checked(f, g).and_then(|fg| self.compose_checked(fg, h));
                    let right = self.compose_checked(g, h).and_then(|gh| self.compose_checked(f, gh));
                    match (left, right) {
                        (Some(l), Some(r)) if l == r => {}
                        (None, _) | (_, None) => {} // already reported as missing
                        _ => out.push(CategoryViolation::NonAssociative { f: name(f), g: name(g), h: name(h) }),
                    }
                }
            }
        }
        out
    }

    fn hom_from(&self, a: ObjId) -> Vec<MorId> {
        self.morphisms().filter(|&m| self.src(m) == a).collect()
    }

    /// The opposite category: same names, sources and targets swapped.
    pub fn opposite(&self) -> FinCategory {
        let objects = self.objects.clone();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| (m.name.clone(), m.tgt.0, m.src.0))
            .collect();
        let identity = self.identity.iter().map(|m| m.0).collect();
        let n = self.morphisms.len();
        let mut compose = Vec::new();
        for f in 0..n {
            for g in 0..n {
                if let Some(h) = self.compose[g * n + f] {
                    compose.push(((f, g), h.0));
                }
            }
        }
        FinCategory::from_parts(objects, morphisms, identity, compose).expect("opposite of a valid category")
    }

    /// Product category `self × other`. Object `(a, b)` has index
    /// `a * other.object_count() + b`; morphisms likewise.
    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let mut objects = Vec::new();
        for a in self.objects() {
            for b in other.objects() {
                objects.push(format!("({},{})", self.object_name(a), other.object_name(b)));
            }
        }
        let obj_idx = |a: ObjId, b: ObjId| a.0 * other.object_count() + b.0;
        let nm = other.morphism_count();
        let mut morphisms = Vec::new();
        for f in self.morphisms() {
            for g in other.morphisms() {
                morphisms.push((
                    format!("({},{})", self.morphism_name(f), other.morphism_name(g)),
                    obj_idx(self.src(f), other.src(g)),
                    obj_idx(self.tgt(f), other.tgt(g)),
                ));
            }
        }
        let identity = self
            .objects()
            .flat_map(|a| {
                other
                    .objects()
                    .map(move |b| (a, b))
            })
            .map(|(a, b)| self.identity_of(a).0 * nm + other.identity_of(b).0)
            .collect();
        let mut compose = Vec::new();
        for f1 in self.morphisms() {
            for g1 in other.morphisms() {
                for f2 in self.morphisms() {
                    for g2 in other.morphisms() {
                        if let (Some(fc), Some(gc)) =
                            (self.compose_checked(f1, f2), other.compose_checked(g1, g2))
                        {
                            compose.push(((f1.0 * nm + g1.0, f2.0 * nm + g2.0), fc.0 * nm + gc.0));
                        }
                    }
                }
            }
        }
        FinCategory::from_parts(objects, morphisms, identity, compose).expect("product of valid categories")
    }

    /// True when every hom-set has at most one element and the only
    /// two-sided hom pairs are identities.
    pub fn is_poset(&self) -> bool {
        for a in self.objects() {
            for b in self.objects() {
                if self.hom(a, b).len() > 1 {
                    return false;
                }
                if a != b && !self.hom(a, b).is_empty() && !self.hom(b, a).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// In a poset category: `a ≤ b` iff there is a morphism `a → b`.
    pub fn leq(&self, a: ObjId, b: ObjId) -> bool {
        !self.hom(a, b).is_empty()
    }

    pub fn into_arc(self) -> Arc<FinCategory> {
        Arc::new(self)
    }

    // ---- stock constructors -------------------------------------------------

    /// Discrete category on the given object names.
    pub fn discrete(names: &[&str]) -> FinCategory {
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let morphisms = names
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("id_{s}"), i, i))
            .collect();
        let identity = (0..names.len()).collect();
        let compose = (0..names.len()).map(|i| ((i, i), i)).collect();
        FinCategory::from_parts(objects, morphisms, identity, compose).expect("discrete")
    }

    /// The one-object, one-morphism category.
    pub fn terminal() -> FinCategory {
        FinCategory::discrete(&["*"])
    }

    /// Two objects `a`, `b` with parallel arrows `f, g : a → b`.
    pub fn parallel_pair() -> FinCategory {
        FinCategory::from_parts(
            vec!["a".into(), "b".into()],
            vec![
                ("id_a".into(), 0, 0),
                ("id_b".into(), 1, 1),
                ("f".into(), 0, 1),
                ("g".into(), 0, 1),
            ],
            vec![0, 1],
            vec![
                ((0, 0), 0),
                ((1, 1), 1),
                ((0, 2), 2),
                ((2, 1), 2),
                ((0, 3), 3),
                ((3, 1), 3),
            ],
        )
        .expect("parallel pair")
    }

    /// Poset category from a reflexive-transitive `leq` relation given as
    /// pairs of object indices. The relation is closed reflexively and
    /// transitively here, so callers may pass covering pairs only.
    pub fn poset(names: &[&str], leq_pairs: &[(usize, usize)]) -> FinCategory {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in leq_pairs {
            leq[a * n + b] = true;
        }
        // transitive closure
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    if !leq[a * n + b] {
                        continue;
                    }
                    for c in 0..n {
                        if leq[b * n + c] && !leq[a * n + c] {
                            leq[a * n + c] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut mor_of = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                if leq[a * n + b] {
                    let name = if a == b {
                        format!("id_{}", names[a])
                    } else {
                        format!("{}<={}", names[a], names[b])
                    };
                    mor_of[a * n + b] = Some(morphisms.len());
                    morphisms.push((name, a, b));
                }
            }
        }
        let identity = (0..n).map(|a| mor_of[a * n + a].unwrap()).collect();
        let mut compose = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let Some(f) = mor_of[a * n + b] else { continue };
                for c in 0..n {
                    let Some(g) = mor_of[b * n + c] else { continue };
                    compose.push(((f, g), mor_of[a * n + c].expect("transitively closed")));
                }
            }
        }
        FinCategory::from_parts(objects, morphisms, identity, compose).expect("poset")
    }
}
