//! Set-valued diagrams on a finite shape, and their limits and colimits
//! computed by exhaustive enumeration.

use std::sync::Arc;

use serde::Serialize;

use super::category::{FinCategory, MorId, ObjId};

/// A functor from a finite shape into finite sets. Values are `0..sizes[o]`;
/// `maps[m]` tabulates the function attached to shape morphism `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSetDiagram {
    pub shape: Arc<FinCategory>,
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DiagramViolation {
    /// Map for a morphism has the wrong length or an out-of-range value.
    MapShape { morphism: String },
    Identity { object: String },
    Composition { f: String, g: String },
}

impl FinSetDiagram {
    pub fn new(shape: Arc<FinCategory>, sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> FinSetDiagram {
        assert_eq!(sizes.len(), shape.object_count());
        assert_eq!(maps.len(), shape.morphism_count());
        FinSetDiagram { shape, sizes, maps }
    }

    pub fn apply(&self, m: MorId, x: usize) -> usize {
        self.maps[m.0][x]
    }

    /// Functoriality on identities and all composable pairs.
    pub fn check(&self) -> Vec<DiagramViolation> {
        let mut out = Vec::new();
        for m in self.shape.morphisms() {
            let (s, t) = (self.shape.src(m), self.shape.tgt(m));
            let map = &self.maps[m.0];
            if map.len() != self.sizes[s.0] || map.iter().any(|&v| v >= self.sizes[t.0]) {
                out.push(DiagramViolation::MapShape {
                    morphism: self.shape.morphism_name(m).to_string(),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in self.shape.objects() {
            let id = self.shape.identity_of(o);
            if (0..self.sizes[o.0]).any(|x| self.apply(id, x) != x) {
                out.push(DiagramViolation::Identity { object: self.shape.object_name(o).to_string() });
            }
        }
        for f in self.shape.morphisms() {
            for g in self.shape.morphisms() {
                let Some(gf) = self.shape.compose_checked(f, g) else { continue };
                if (0..self.sizes[self.shape.src(f).0])
                    .any(|x| self.apply(g, self.apply(f, x)) != self.apply(gf, x))
                {
                    out.push(DiagramViolation::Composition {
                        f: self.shape.morphism_name(f).to_string(),
                        g: self.shape.morphism_name(g).to_string(),
                    });
                }
            }
        }
        out
    }
}

/// The limit of a set diagram: the set of compatible families, each family a
/// choice per shape object. Projections are tuple components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitOfSets {
    /// Families in lexicographic order; `families[i][o]` is the element chosen
    /// at shape object `o`.
    pub families: Vec<Vec<usize>>,
}

impl LimitOfSets {
    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn project(&self, family: usize, o: ObjId) -> usize {
        self.families[family][o.0]
    }

    pub fn index_of(&self, family: &[usize]) -> Option<usize> {
        self.families.iter().position(|f| f == family)
    }
}

/// Compatible families of the diagram, in lexicographic order.
pub fn limit_of_sets(d: &FinSetDiagram) -> LimitOfSets {
    let n = d.sizes.len();
    let mut families = Vec::new();
    let mut current = vec![0usize; n];
    enumerate_tuples(&d.sizes, 0, &mut current, &mut |tuple| {
        let ok = d.shape.morphisms().all(|m| {
            let (s, t) = (d.shape.src(m), d.shape.tgt(m));
            d.apply(m, tuple[s.0]) == tuple[t.0]
        });
        if ok {
            families.push(tuple.to_vec());
        }
    });
    LimitOfSets { families }
}

fn enumerate_tuples(sizes: &[usize], i: usize, current: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if i == sizes.len() {
        f(current);
        return;
    }
    if sizes[i] == 0 {
        return;
    }
    for v in 0..sizes[i] {
        current[i] = v;
        enumerate_tuples(sizes, i + 1, current, f);
    }
}

/// The colimit of a set diagram: the disjoint union quotiented by the zig-zag
/// closure of `x ~ D(m)(x)`. Classes are numbered by least tagged member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitOfSets {
    pub class_count: usize,
    /// `injections[o][x]` is the class of element `x` of shape object `o`.
    pub injections: Vec<Vec<usize>>,
}

/// Union-find with path compression over the tagged disjoint union.
pub fn colimit_of_sets(d: &FinSetDiagram) -> ColimitOfSets {
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
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for m in d.shape.morphisms() {
        let (s, t) = (d.shape.src(m), d.shape.tgt(m));
        for x in 0..d.sizes[s.0] {
            let a = find(&mut parent, offsets[s.0] + x);
            let b = find(&mut parent, offsets[t.0] + d.apply(m, x));
            // keep the least representative for deterministic class numbering
            if a < b {
                parent[b] = a;
            } else {
                parent[a] = b;
            }
        }
    }
    let mut class_of_root: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    for x in 0..total {
        let r = find(&mut parent, x);
        let next = class_of_root.len();
        class_of_root.entry(r).or_insert(next);
    }
    let injections = d
        .sizes
        .iter()
        .enumerate()
        .map(|(o, &s)| {
            (0..s)
                .map(|x| class_of_root[&find(&mut parent, offsets[o] + x)])
                .collect()
        })
        .collect();
    ColimitOfSets { class_count: class_of_root.len(), injections }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn discrete_diagram(sizes: &[usize]) -> FinSetDiagram {
        let names: Vec<String> = (0..sizes.len()).map(|i| format!("o{i}")).collect();
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let shape = FinCategory::discrete(&name_refs).into_arc();
        let maps = sizes.iter().map(|&s| (0..s).collect()).collect();
        FinSetDiagram::new(shape, sizes.to_vec(), maps)
    }

    #[test]
    fn empty_diagram_limit_is_singleton() {
        let d = discrete_diagram(&[]);
        assert_eq!(limit_of_sets(&d).len(), 1);
        assert_eq!(colimit_of_sets(&d).class_count, 0);
    }

    #[test]
    fn discrete_limit_is_product_colimit_is_coproduct() {
        let d = discrete_diagram(&[2, 3]);
        assert_eq!(limit_of_sets(&d).len(), 6);
        assert_eq!(colimit_of_sets(&d).class_count, 5);
    }

    #[test]
    fn parallel_pair_limit_is_equalizer() {
        let shape = FinCategory::parallel_pair().into_arc();
        let f = shape.morphism_by_name("f").unwrap();
        let g = shape.morphism_by_name("g").unwrap();
        let mut maps = vec![vec![], vec![]];
        maps.resize(shape.morphism_count(), vec![]);
        maps[shape.identity_of(ObjId(0)).0] = vec![0, 1, 2];
        maps[shape.identity_of(ObjId(1)).0] = vec![0, 1];
        maps[f.0] = vec![0, 1, 0];
        maps[g.0] = vec![0, 0, 1];
        let d = FinSetDiagram::new(shape, vec![3, 2], maps);
        assert!(d.check().is_empty());
        let lim = limit_of_sets(&d);
        // brute-force oracle: elements of A where f and g agree
        let expected: Vec<usize> = (0..3).filter(|&a| d.maps[2][a] == d.maps[3][a]).collect();
        assert_eq!(lim.len(), expected.len());
        for fam in &lim.families {
            assert!(expected.contains(&fam[0]));
        }
    }

    #[test]
    fn coequalizer_matches_component_count() {
        // f, g : A(2) -> B(3), f = [0,1], g = [1,2]: everything collapses.
        let shape = FinCategory::parallel_pair().into_arc();
        let f = shape.morphism_by_name("f").unwrap();
        let g = shape.morphism_by_name("g").unwrap();
        let mut maps = vec![vec![]; shape.morphism_count()];
        maps[shape.identity_of(ObjId(0)).0] = vec![0, 1];
        maps[shape.identity_of(ObjId(1)).0] = vec![0, 1, 2];
        maps[f.0] = vec![0, 1];
        maps[g.0] = vec![1, 2];
        let d = FinSetDiagram::new(shape, vec![2, 3], maps);
        assert!(d.check().is_empty());
        let colim = colimit_of_sets(&d);
        assert_eq!(colim.class_count, 1);
    }

    #[test]
    fn functoriality_violation_is_reported() {
        let shape = FinCategory::poset(&["a", "b"], &[(0, 1)]).into_arc();
        let mut maps = vec![vec![]; shape.morphism_count()];
        maps[shape.identity_of(ObjId(0)).0] = vec![1, 0]; // not the identity
        maps[shape.identity_of(ObjId(1)).0] = vec![0];
        let arrow = shape.hom(ObjId(0), ObjId(1))[0];
        maps[arrow.0] = vec![0, 0];
        let d = FinSetDiagram::new(shape, vec![2, 1], maps);
        assert!(d.check().iter().any(|v| matches!(v, DiagramViolation::Identity { .. })));
    }
}
