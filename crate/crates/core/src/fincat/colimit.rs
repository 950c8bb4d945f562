//! Colimits inside a finite category, by enumerating cocones and testing
//! initiality. Absence of a colimit is a legal result, never an error.

use std::sync::Arc;

use super::category::{FinCategory, MorId, ObjId};
use super::functor::Functor;

/// A cocone under a diagram: apex object plus one leg per shape object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone {
    pub apex: ObjId,
    pub legs: Vec<MorId>,
}

/// Enumerate all cocones under `d` (a functor shape → target), ordered by
/// `(apex, legs)` lexicographically.
pub fn cocones(d: &Functor) -> Vec<Cocone> {
    let cat = &d.target;
    let shape = &d.source;
    let mut out = Vec::new();
    for apex in cat.objects() {
        let choices: Vec<&[MorId]> = shape
            .objects()
            .map(|o| cat.hom(d.apply_obj(o), apex))
            .collect();
        let mut legs = vec![MorId(0); choices.len()];
        enumerate(&choices, 0, &mut legs, &mut |legs| {
            let commutes = shape.morphisms().all(|m| {
                let (s, t) = (shape.src(m), shape.tgt(m));
                cat.compose_checked(d.apply_mor(m), legs[t.0]) == Some(legs[s.0])
            });
            if commutes {
                out.push(Cocone { apex, legs: legs.to_vec() });
            }
        });
    }
    out
}

fn enumerate(choices: &[&[MorId]], i: usize, current: &mut Vec<MorId>, f: &mut impl FnMut(&[MorId])) {
    if i == choices.len() {
        f(current);
        return;
    }
    for &m in choices[i] {
        current[i] = m;
        enumerate(choices, i + 1, current, f);
    }
}

/// Mediating morphisms from one cocone to another: `h : from.apex → to.apex`
/// with `h ∘ leg = leg` for every shape object.
pub fn mediating(cat: &FinCategory, from: &Cocone, to: &Cocone) -> Vec<MorId> {
    cat.hom(from.apex, to.apex)
        .iter()
        .copied()
        .filter(|&h| {
            from.legs
                .iter()
                .zip(&to.legs)
                .all(|(&a, &b)| cat.compose_checked(a, h) == Some(b))
        })
        .collect()
}

/// Whether `candidate` is initial among the given cocones: exactly one
/// mediating morphism to each.
pub fn is_initial_cocone(cat: &FinCategory, candidate: &Cocone, all: &[Cocone]) -> bool {
    all.iter().all(|other| mediating(cat, candidate, other).len() == 1)
}

/// The colimit of `d`, as the least initial cocone in enumeration order,
/// or `None` when no cocone is initial.
pub fn colimit_in_category(d: &Functor) -> Option<Cocone> {
    let all = cocones(d);
    all.iter().find(|c| is_initial_cocone(&d.target, c, &all)).cloned()
}

/// Initial object of a category: least object with exactly one morphism to
/// every object.
pub fn initial_object(cat: &FinCategory) -> Option<ObjId> {
    cat.objects().find(|&x| cat.objects().all(|y| cat.hom(x, y).len() == 1))
}

/// Shapes used by the colimit-completeness and cocontinuity sweeps:
/// discrete shapes up to `max_discrete`, the parallel pair, and the span.
/// Discrete-0 probes initial objects, discrete-2 binary coproducts; for
/// lattice fibers those two generate all finite colimits.
pub fn sweep_shapes(max_discrete: usize) -> Vec<Arc<FinCategory>> {
    let mut shapes = Vec::new();
    for k in 0..=max_discrete {
        let names: Vec<String> = (0..k).map(|i| format!("d{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        shapes.push(FinCategory::discrete(&refs).into_arc());
    }
    shapes.push(FinCategory::parallel_pair().into_arc());
    // span: b <- a -> c
    shapes.push(
        FinCategory::from_parts(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                ("id_a".into(), 0, 0),
                ("id_b".into(), 1, 1),
                ("id_c".into(), 2, 2),
                ("l".into(), 0, 1),
                ("r".into(), 0, 2),
            ],
            vec![0, 1, 2],
            vec![
                ((0, 0), 0),
                ((1, 1), 1),
                ((2, 2), 2),
                ((0, 3), 3),
                ((3, 1), 3),
                ((0, 4), 4),
                ((4, 2), 4),
            ],
        )
        .expect("span shape")
        .into_arc(),
    );
    shapes
}

/// All functors from `shape` into `target`, in lexicographic order of object
/// and morphism choices. Only well-defined functors are yielded.
pub fn all_diagrams(shape: &Arc<FinCategory>, target: &Arc<FinCategory>) -> Vec<Functor> {
    let mut out = Vec::new();
    let objs: Vec<ObjId> = target.objects().collect();
    if objs.is_empty() && shape.object_count() > 0 {
        return out;
    }
    let mut object_map = vec![ObjId(0); shape.object_count()];
    enumerate_objects(&objs, 0, &mut object_map, &mut |omap| {
        // choose images for non-identity morphisms; identities are forced
        let free: Vec<MorId> = shape.morphisms().filter(|&m| !shape.is_identity(m)).collect();
        let choices: Vec<Vec<MorId>> = free
            .iter()
            .map(|&m| {
                target
                    .hom(omap[shape.src(m).0], omap[shape.tgt(m).0])
                    .to_vec()
            })
            .collect();
        let mut pick = vec![MorId(0); free.len()];
        enumerate_mors(&choices, 0, &mut pick, &mut |pick| {
            let mut morphism_map = vec![MorId(0); shape.morphism_count()];
            for o in shape.objects() {
                morphism_map[shape.identity_of(o).0] = target.identity_of(omap[o.0]);
            }
            for (i, &m) in free.iter().enumerate() {
                morphism_map[m.0] = pick[i];
            }
            let f = Functor::new(shape.clone(), target.clone(), omap.to_vec(), morphism_map);
            if f.check().is_empty() {
                out.push(f);
            }
        });
    });
    out
}

fn enumerate_objects(objs: &[ObjId], i: usize, current: &mut Vec<ObjId>, f: &mut impl FnMut(&[ObjId])) {
    if i == current.len() {
        f(current);
        return;
    }
    for &o in objs {
        current[i] = o;
        enumerate_objects(objs, i + 1, current, f);
    }
}

fn enumerate_mors(choices: &[Vec<MorId>], i: usize, current: &mut Vec<MorId>, f: &mut impl FnMut(&[MorId])) {
    if i == choices.len() {
        f(current);
        return;
    }
    for &m in &choices[i] {
        current[i] = m;
        enumerate_mors(choices, i + 1, current, f);
    }
}
