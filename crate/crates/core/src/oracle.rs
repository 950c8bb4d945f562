//! Independent reference implementations used by the test and acceptance
//! suites. Nothing here shares code with the decision procedures it checks:
//! the sheaf oracle glues matching families directly over covering families,
//! and the colimit oracle computes connected components by breadth-first
//! search instead of union-find.

use std::collections::{BTreeSet, VecDeque};

use crate::fincat::{FinSetDiagram, MorId};
use crate::presheaf::FinPresheaf;
use crate::site::Topology;

/// Sheaf verdict by direct gluing: for every covering sieve, read its member
/// family `{f_i : V_i → U}`, enumerate matching families
/// `(s_i ∈ F(V_i))` with `F(g)(s_i) = F(h)(s_j)` whenever `f_i ∘ g = f_j ∘ h`,
/// and demand that restriction is a bijection from `F(U)` onto them.
pub fn sheaf_by_matching_families(t: &Topology, f: &FinPresheaf) -> bool {
    let base = &t.base;
    for u in base.objects() {
        for sieve in t.covering_sieves(u) {
            let members: Vec<MorId> = sieve.members.iter().copied().collect();
            let sizes: Vec<usize> = members.iter().map(|&m| f.size(base.src(m))).collect();
            // enumerate all tuples and filter by the matching condition
            let mut matching: Vec<Vec<usize>> = Vec::new();
            let mut tuple = vec![0usize; members.len()];
            enumerate(&sizes, 0, &mut tuple, &mut |tuple| {
                let ok = (0..members.len()).all(|i| {
                    (0..members.len()).all(|j| {
                        let (fi, fj) = (members[i], members[j]);
                        let (vi, vj) = (base.src(fi), base.src(fj));
                        base.objects().all(|w| {
                            base.hom(w, vi).iter().all(|&g| {
                                base.hom(w, vj).iter().all(|&h| {
                                    base.compose(g, fi) != base.compose(h, fj)
                                        || f.restrict(g, tuple[i]) == f.restrict(h, tuple[j])
                                })
                            })
                        })
                    })
                });
                if ok {
                    matching.push(tuple.to_vec());
                }
            });
            // every matching family must have exactly one amalgamation
            let mut hit = vec![0usize; matching.len()];
            for s in 0..f.size(u) {
                let restricted: Vec<usize> = members.iter().map(|&m| f.restrict(m, s)).collect();
                match matching.iter().position(|mf| *mf == restricted) {
                    Some(i) => hit[i] += 1,
                    None => return false, // restriction not matching: impossible, defensive
                }
            }
            if hit.iter().any(|&h| h != 1) {
                return false;
            }
        }
    }
    true
}

fn enumerate(sizes: &[usize], i: usize, current: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if i == sizes.len() {
        f(current);
        return;
    }
    if sizes[i] == 0 {
        return;
    }
    for v in 0..sizes[i] {
        current[i] = v;
        enumerate(sizes, i + 1, current, f);
    }
}

/// Number of classes of the set-colimit, by BFS over the relation graph on
/// the tagged disjoint union.
pub fn set_colimit_class_count(d: &FinSetDiagram) -> usize {
    let offsets: Vec<usize> = d
        .sizes
        .iter()
        .scan(0usize, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let total: usize = d.sizes.iter().sum();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for m in d.shape.morphisms() {
        let (s, t) = (d.shape.src(m), d.shape.tgt(m));
        for x in 0..d.sizes[s.0] {
            let a = offsets[s.0] + x;
            let b = offsets[t.0] + d.apply(m, x);
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut classes = 0;
    for start in 0..total {
        if seen.contains(&start) {
            continue;
        }
        classes += 1;
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    classes
}
