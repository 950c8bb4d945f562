//! Grothendieck topologies stored as covering-sieve systems, saturation of
//! user-facing pretopology generators, and the derived decision procedures
//! for local epimorphisms, monomorphisms and isomorphisms.
//!
//! A morphism into a representable is decided locally: it is a local
//! epimorphism iff the image sieve of its pullback to every element is
//! covering. The axiom checker compares that localized criterion against the
//! one-shot image-sieve test, which is exactly where pullback instability
//! shows up.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{FinCategory, MorId, ObjId};
use crate::presheaf::{
    all_sieves_on, element_as_morphism, fiber_product, image_sieve, yoneda, FinPresheaf,
    PresheafMorphism, Sieve,
};

/// User-facing generator data: per object, a list of covering families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pretopology {
    pub base: Arc<FinCategory>,
    /// `families[u]` lists families of morphisms with target `u`.
    pub families: Vec<Vec<Vec<MorId>>>,
}

impl Pretopology {
    pub fn new(base: Arc<FinCategory>, families: Vec<Vec<Vec<MorId>>>) -> Pretopology {
        assert_eq!(families.len(), base.object_count());
        for (u, fams) in families.iter().enumerate() {
            for fam in fams {
                for &m in fam {
                    assert_eq!(base.tgt(m), ObjId(u), "family member must land in its object");
                }
            }
        }
        Pretopology { base, families }
    }

    /// No generators: saturates to the maximal-sieve-only topology.
    pub fn trivial(base: Arc<FinCategory>) -> Pretopology {
        let n = base.object_count();
        Pretopology { base, families: vec![Vec::new(); n] }
    }
}

/// A topology as the full set of covering sieves per object, upward closure
/// maintained eagerly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    pub base: Arc<FinCategory>,
    covering: Vec<BTreeSet<Sieve>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TopologyViolation {
    MaximalMissing { object: String },
    /// `S` covers `U` but `f*S` does not cover the source of `f`.
    PullbackUnstable { object: String, sieve: Vec<String>, along: String },
    /// `T` is locally covering with respect to a covering sieve but is not
    /// itself covering.
    LocalCharacter { object: String, sieve: Vec<String> },
    UpwardClosure { object: String, sieve: Vec<String> },
    NotASieve { object: String, sieve: Vec<String> },
}

impl Topology {
    /// Build from raw covering sets without validation; gallery mutants use
    /// this to express deliberately broken sites.
    pub fn from_raw(base: Arc<FinCategory>, covering: Vec<BTreeSet<Sieve>>) -> Topology {
        assert_eq!(covering.len(), base.object_count());
        Topology { base, covering }
    }

    /// Only maximal sieves cover.
    pub fn maximal_only(base: Arc<FinCategory>) -> Topology {
        let covering = base
            .objects()
            .map(|u| {
                let mut s = BTreeSet::new();
                s.insert(Sieve::maximal(&base, u));
                s
            })
            .collect();
        Topology { base, covering }
    }

    pub fn is_covering(&self, s: &Sieve) -> bool {
        self.covering[s.anchor.0].contains(s)
    }

    pub fn covering_sieves(&self, u: ObjId) -> impl Iterator<Item = &Sieve> {
        self.covering[u.0].iter()
    }

    pub fn covering_count(&self) -> usize {
        self.covering.iter().map(BTreeSet::len).sum()
    }

    /// Read back generator data: every covering sieve as a family.
    pub fn to_pretopology(&self) -> Pretopology {
        let families = self
            .base
            .objects()
            .map(|u| {
                self.covering[u.0]
                    .iter()
                    .map(|s| s.members.iter().copied().collect())
                    .collect()
            })
            .collect();
        Pretopology { base: self.base.clone(), families }
    }

    /// All four covering-sieve axioms, checked exhaustively.
    pub fn violations(&self) -> Vec<TopologyViolation> {
        let base = &self.base;
        let mut out = Vec::new();
        for u in base.objects() {
            if !self.covering[u.0].iter().any(|s| s.is_maximal(base)) {
                out.push(TopologyViolation::MaximalMissing {
                    object: base.object_name(u).to_string(),
                });
            }
            for s in &self.covering[u.0] {
                if !s.is_closed(base) {
                    out.push(TopologyViolation::NotASieve {
                        object: base.object_name(u).to_string(),
                        sieve: s.describe(base),
                    });
                }
            }
        }
        // pullback stability
        for u in base.objects() {
            for s in &self.covering[u.0] {
                for f in base.into_object(u) {
                    let pulled = s.pullback(base, f);
                    if !self.is_covering(&pulled) {
                        out.push(TopologyViolation::PullbackUnstable {
                            object: base.object_name(u).to_string(),
                            sieve: s.describe(base),
                            along: base.morphism_name(f).to_string(),
                        });
                    }
                }
            }
        }
        // local character and upward closure over all sieves
        for u in base.objects() {
            for t in all_sieves_on(base, u) {
                if self.is_covering(&t) {
                    continue;
                }
                let locally = self.covering[u.0].iter().any(|s| {
                    s.members
                        .iter()
                        .all(|&f| self.is_covering(&t.pullback(base, f)))
                });
                if locally {
                    out.push(TopologyViolation::LocalCharacter {
                        object: base.object_name(u).to_string(),
                        sieve: t.describe(base),
                    });
                }
                let dominated = self.covering[u.0].iter().any(|s| s.members.is_subset(&t.members));
                if dominated {
                    out.push(TopologyViolation::UpwardClosure {
                        object: base.object_name(u).to_string(),
                        sieve: t.describe(base),
                    });
                }
            }
        }
        out
    }
}

/// The smallest topology whose covering sieves include the sieves generated
/// by each listed family: fixed-point iteration over the finite sieve
/// lattice, closing under upward closure, pullback stability and local
/// character, with every maximal sieve seeded in.
pub fn saturate(p: &Pretopology) -> Topology {
    let base = &p.base;
    let all: Vec<Vec<Sieve>> = base.objects().map(|u| all_sieves_on(base, u)).collect();
    let mut covering: Vec<BTreeSet<Sieve>> = base
        .objects()
        .map(|u| {
            let mut set = BTreeSet::new();
            set.insert(Sieve::maximal(base, u));
            for fam in &p.families[u.0] {
                set.insert(Sieve::generated(base, u, fam));
            }
            set
        })
        .collect();
    loop {
        let mut changed = false;
        // upward closure
        for u in base.objects() {
            for t in &all[u.0] {
                if covering[u.0].contains(t) {
                    continue;
                }
                if covering[u.0].iter().any(|s| s.members.is_subset(&t.members)) {
                    covering[u.0].insert(t.clone());
                    changed = true;
                }
            }
        }
        // pullback stability
        for u in base.objects() {
            let sieves: Vec<Sieve> = covering[u.0].iter().cloned().collect();
            for s in sieves {
                for f in base.into_object(u) {
                    let pulled = s.pullback(base, f);
                    let v = base.src(f);
                    if !covering[v.0].contains(&pulled) {
                        covering[v.0].insert(pulled);
                        changed = true;
                    }
                }
            }
        }
        // local character
        for u in base.objects() {
            for t in &all[u.0] {
                if covering[u.0].contains(t) {
                    continue;
                }
                let locally = covering[u.0].iter().any(|s| {
                    s.members.iter().all(|&f| {
                        let pulled = t.pullback(base, f);
                        covering[base.src(f).0].contains(&pulled)
                    })
                });
                if locally {
                    covering[u.0].insert(t.clone());
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Topology { base: base.clone(), covering }
}

/// Witness for a failed local-epimorphism test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalEpiFailure {
    /// The object whose element refuses to lift locally.
    pub object: String,
    /// The element of the target presheaf at that object.
    pub element: String,
    /// The non-covering sieve of locally lifting morphisms.
    pub sieve: Vec<String>,
}

/// `u : a → b` is a local epimorphism iff for every object `U` and every
/// `x ∈ b(U)` the sieve of morphisms along which `x` lifts through `u` is
/// covering. The sieve is computed as the image sieve of the projection
/// `a ×_b yoneda(U) → yoneda(U)`.
pub fn is_local_epi(t: &Topology, u: &PresheafMorphism) -> Result<(), LocalEpiFailure> {
    let base = &t.base;
    let b = &u.target;
    for obj in base.objects() {
        for x in 0..b.size(obj) {
            let classify = element_as_morphism(b, obj, x);
            let fp = fiber_product(u, &classify);
            let sieve = image_sieve(base, &fp.to_right, obj);
            if !t.is_covering(&sieve) {
                return Err(LocalEpiFailure {
                    object: base.object_name(obj).to_string(),
                    element: b.element_name(obj, x).to_string(),
                    sieve: sieve.describe(base),
                });
            }
        }
    }
    Ok(())
}

/// `u` is a local monomorphism iff the diagonal `a → a ×_b a` is a local
/// epimorphism.
pub fn is_local_mono(t: &Topology, u: &PresheafMorphism) -> Result<(), LocalEpiFailure> {
    let a = &u.source;
    let fp = fiber_product(u, u);
    let base = &t.base;
    let components = base
        .objects()
        .map(|o| {
            (0..a.size(o))
                .map(|x| {
                    fp.pairs[o.0]
                        .iter()
                        .position(|&(p, q)| p == x && q == x)
                        .expect("diagonal lands in the pullback")
                })
                .collect()
        })
        .collect();
    let diagonal = PresheafMorphism::new(a.clone(), fp.presheaf.clone(), components);
    is_local_epi(t, &diagonal)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LocalIsoFailure {
    NotLocalEpi(LocalEpiFailure),
    NotLocalMono(LocalEpiFailure),
}

pub fn is_local_iso(t: &Topology, u: &PresheafMorphism) -> Result<(), LocalIsoFailure> {
    is_local_epi(t, u).map_err(LocalIsoFailure::NotLocalEpi)?;
    is_local_mono(t, u).map_err(LocalIsoFailure::NotLocalMono)
}

/// One violated axiom instance found by [`verify_le`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LeViolation {
    /// An identity failed to be a local epimorphism.
    Identity { object: String },
    /// Both factors are local epis but the composite is not.
    Composite { first: usize, second: usize, witness: LocalEpiFailure },
    /// The composite is a local epi, the second factor is not.
    SecondFactor { first: usize, second: usize, witness: LocalEpiFailure },
    /// Localized and one-shot criteria disagree on a morphism into a
    /// representable.
    Localization {
        morphism: usize,
        anchor: String,
        one_shot_covering: bool,
        witness: Option<LocalEpiFailure>,
    },
}

/// Verification report for the axioms of a topology over a corpus of
/// presheaf morphisms. Corpus morphisms are referenced by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeReport {
    pub violations: Vec<LeViolation>,
    pub identities_checked: usize,
    pub pairs_checked: usize,
    pub localizations_checked: usize,
}

impl LeReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the local-epimorphism axioms over a finite corpus:
/// identities on all objects; composition and right-cancellation on all
/// composable corpus pairs; and, on corpus morphisms with representable
/// target, agreement of the one-shot image-sieve criterion with the
/// localized one (this is exactly pullback stability of coverage).
pub fn verify_le(t: &Topology, corpus: &[PresheafMorphism]) -> LeReport {
    let base = &t.base;
    let mut violations = Vec::new();
    let mut identities_checked = 0;
    for u in base.objects() {
        identities_checked += 1;
        let y = yoneda(base, u);
        if is_local_epi(t, &PresheafMorphism::identity(&y)).is_err() {
            violations.push(LeViolation::Identity { object: base.object_name(u).to_string() });
        }
    }
    let mut pairs_checked = 0;
    for (i, u) in corpus.iter().enumerate() {
        for (j, v) in corpus.iter().enumerate() {
            if u.target != v.source {
                continue;
            }
            pairs_checked += 1;
            let uv = u.then(v);
            let u_le = is_local_epi(t, u).is_ok();
            let v_le = is_local_epi(t, v).is_ok();
            let uv_le = is_local_epi(t, &uv);
            if u_le && v_le {
                if let Err(w) = uv_le {
                    violations.push(LeViolation::Composite { first: i, second: j, witness: w });
                }
            } else if uv_le.is_ok() {
                if let Err(w) = is_local_epi(t, v) {
                    violations.push(LeViolation::SecondFactor { first: i, second: j, witness: w });
                }
            }
        }
    }
    let mut localizations_checked = 0;
    for (i, u) in corpus.iter().enumerate() {
        let Some(anchor) = representable_anchor(base, &u.target) else { continue };
        localizations_checked += 1;
        let one_shot = t.is_covering(&image_sieve(base, u, anchor));
        let localized = is_local_epi(t, u);
        if one_shot != localized.is_ok() {
            violations.push(LeViolation::Localization {
                morphism: i,
                anchor: base.object_name(anchor).to_string(),
                one_shot_covering: one_shot,
                witness: localized.err(),
            });
        }
    }
    LeReport { violations, identities_checked, pairs_checked, localizations_checked }
}

/// If `p` is (equal to) the representable at some object, return that object.
fn representable_anchor(base: &Arc<FinCategory>, p: &FinPresheaf) -> Option<ObjId> {
    base.objects().find(|&u| &yoneda(base, u) == p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_site() -> (Arc<FinCategory>, Topology) {
        let c = FinCategory::poset(&["a", "b", "u"], &[(0, 2), (1, 2)]).into_arc();
        let u = c.object_by_name("u").unwrap();
        let a = c.object_by_name("a").unwrap();
        let b = c.object_by_name("b").unwrap();
        let fam = vec![c.hom(a, u)[0], c.hom(b, u)[0]];
        let mut families = vec![Vec::new(); 3];
        families[u.0] = vec![fam];
        let p = Pretopology::new(c.clone(), families);
        (c.clone(), saturate(&p))
    }

    #[test]
    fn trivial_pretopology_saturates_to_maximal_only() {
        let c = FinCategory::poset(&["a", "u"], &[(0, 1)]).into_arc();
        let t = saturate(&Pretopology::trivial(c.clone()));
        assert_eq!(t, Topology::maximal_only(c.clone()));
        assert!(t.violations().is_empty());
    }

    #[test]
    fn v_cover_saturation_matches_hand_computation() {
        let (c, t) = v_site();
        let u = c.object_by_name("u").unwrap();
        let a = c.object_by_name("a").unwrap();
        let b = c.object_by_name("b").unwrap();
        // covering sieves on u: {a->u, b->u} and the maximal sieve
        let s_ab = Sieve::generated(&c, u, &[c.hom(a, u)[0], c.hom(b, u)[0]]);
        let expected_u: BTreeSet<Sieve> = [s_ab, Sieve::maximal(&c, u)].into_iter().collect();
        let got_u: BTreeSet<Sieve> = t.covering_sieves(u).cloned().collect();
        assert_eq!(got_u, expected_u);
        // on a and b only the maximal sieve covers
        for o in [a, b] {
            let got: BTreeSet<Sieve> = t.covering_sieves(o).cloned().collect();
            assert_eq!(got.len(), 1);
            assert!(got.iter().next().unwrap().is_maximal(&c));
        }
        assert!(t.violations().is_empty());
    }

    #[test]
    fn family_containing_identity_dominates_to_maximal() {
        let c = FinCategory::poset(&["a", "u"], &[(0, 1)]).into_arc();
        let u = c.object_by_name("u").unwrap();
        let mut families = vec![Vec::new(); 2];
        families[u.0] = vec![vec![c.identity_of(u)]];
        let t = saturate(&Pretopology::new(c.clone(), families));
        assert_eq!(t, Topology::maximal_only(c.clone()));
    }

    #[test]
    fn saturation_is_idempotent() {
        let (_, t) = v_site();
        let again = saturate(&t.to_pretopology());
        assert_eq!(t, again);
    }

    #[test]
    fn empty_family_makes_every_sieve_cover_locally() {
        // an empty covering family on an object forces all sieves on it to cover
        let c = FinCategory::poset(&["a", "u"], &[(0, 1)]).into_arc();
        let u = c.object_by_name("u").unwrap();
        let mut families = vec![Vec::new(); 2];
        families[u.0] = vec![vec![]];
        let t = saturate(&Pretopology::new(c.clone(), families));
        assert!(t.is_covering(&Sieve::empty(u)));
        assert!(t.violations().is_empty());
    }

    #[test]
    fn identity_is_local_epi() {
        let (c, t) = v_site();
        let u = c.object_by_name("u").unwrap();
        let y = yoneda(&c, u);
        assert!(is_local_epi(&t, &PresheafMorphism::identity(&y)).is_ok());
    }

    #[test]
    fn empty_into_inhabited_representable_is_not_local_epi_under_maximal_only() {
        let c = FinCategory::poset(&["a", "u"], &[(0, 1)]).into_arc();
        let t = Topology::maximal_only(c.clone());
        let u = c.object_by_name("u").unwrap();
        let m = PresheafMorphism::from_empty(&yoneda(&c, u));
        let err = is_local_epi(&t, &m).unwrap_err();
        // least witness in sweep order: the element of yoneda(u) at a
        assert_eq!(err.object, "a");
        assert!(err.sieve.is_empty());
    }

    #[test]
    fn covering_family_coproduct_is_local_epi() {
        let (c, t) = v_site();
        let u = c.object_by_name("u").unwrap();
        let a = c.object_by_name("a").unwrap();
        let b = c.object_by_name("b").unwrap();
        let fold = yoneda_morphism_fold(&c, c.hom(a, u)[0], c.hom(b, u)[0]);
        assert!(is_local_epi(&t, &fold).is_ok());
        // and under the maximal-only topology it is not
        let t0 = Topology::maximal_only(c.clone());
        assert!(is_local_epi(&t0, &fold).is_err());
    }

    fn yoneda_morphism_fold(c: &Arc<FinCategory>, f: MorId, g: MorId) -> PresheafMorphism {
        crate::presheaf::yoneda_morphism(c, f).cofold(&crate::presheaf::yoneda_morphism(c, g))
    }

    #[test]
    fn monomorphism_is_local_mono() {
        let (c, t) = v_site();
        let u = c.object_by_name("u").unwrap();
        let a = c.object_by_name("a").unwrap();
        let s = Sieve::generated(&c, u, &[c.hom(a, u)[0]]);
        assert!(is_local_mono(&t, &s.inclusion(&c)).is_ok());
    }

    #[test]
    fn fold_of_duplicate_cover_is_not_local_mono_under_maximal_only() {
        let c = FinCategory::poset(&["a", "u"], &[(0, 1)]).into_arc();
        let t = Topology::maximal_only(c.clone());
        let u = c.object_by_name("u").unwrap();
        let y = yoneda(&c, u);
        let idm = PresheafMorphism::identity(&y);
        let fold = idm.cofold(&idm);
        assert!(is_local_epi(&t, &fold).is_ok());
        let err = is_local_mono(&t, &fold).unwrap_err();
        let _ = err;
    }

    #[test]
    fn covering_sieve_inclusion_is_local_iso() {
        let (c, t) = v_site();
        let u = c.object_by_name("u").unwrap();
        for s in t.covering_sieves(u) {
            assert!(is_local_iso(&t, &s.inclusion(&c)).is_ok());
        }
        // non-covering sieve inclusion fails the epi half
        let a = c.object_by_name("a").unwrap();
        let s = Sieve::generated(&c, u, &[c.hom(a, u)[0]]);
        assert!(!t.is_covering(&s));
        assert!(matches!(
            is_local_iso(&t, &s.inclusion(&c)),
            Err(LocalIsoFailure::NotLocalEpi(_))
        ));
    }

    #[test]
    fn verify_le_passes_on_identity_corpus() {
        let (c, t) = v_site();
        let corpus: Vec<PresheafMorphism> = c
            .objects()
            .map(|u| PresheafMorphism::identity(&yoneda(&c, u)))
            .collect();
        let report = verify_le(&t, &corpus);
        assert!(report.ok(), "{:?}", report.violations);
    }

    #[test]
    fn broken_pullback_stability_is_reported_as_localization_failure() {
        // 3-chain w < v < u; declare {w->u} covering but refuse its pullback
        // {w->v} on v. Upward closure on u is kept so only stability breaks.
        let c = FinCategory::poset(&["w", "v", "u"], &[(0, 1), (1, 2)]).into_arc();
        let w = c.object_by_name("w").unwrap();
        let v = c.object_by_name("v").unwrap();
        let u = c.object_by_name("u").unwrap();
        let t_sieve = Sieve::generated(&c, u, &[c.hom(w, u)[0]]);
        let mut cov: Vec<BTreeSet<Sieve>> = vec![BTreeSet::new(); 3];
        cov[w.0].insert(Sieve::maximal(&c, w));
        cov[v.0].insert(Sieve::maximal(&c, v));
        for s in all_sieves_on(&c, u) {
            if t_sieve.members.is_subset(&s.members) {
                cov[u.0].insert(s);
            }
        }
        let broken = Topology::from_raw(c.clone(), cov);
        assert!(broken
            .violations()
            .iter()
            .any(|x| matches!(x, TopologyViolation::PullbackUnstable { .. })));
        let corpus = vec![t_sieve.inclusion(&c)];
        let report = verify_le(&broken, &corpus);
        assert!(report
            .violations
            .iter()
            .any(|x| matches!(x, LeViolation::Localization { .. })));
    }
}
