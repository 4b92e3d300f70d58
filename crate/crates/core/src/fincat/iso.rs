use std::collections::{HashMap, HashSet, VecDeque};

use super::FinCategory;

/// Isomorphism classes of objects, and of morphisms up to pre- and
/// post-composition with isomorphisms.
#[derive(Debug, Clone)]
pub struct IsoClassIndex {
    object_class: Vec<usize>,
    object_classes: Vec<Vec<usize>>,
    morphism_class: Vec<usize>,
    morphism_classes: Vec<Vec<usize>>,
    morphism_reps: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so classes are led by their least member
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(&mut self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.0.len();
        let mut id_of_root = HashMap::new();
        let mut class = vec![0; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            let k = *id_of_root.entry(r).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            class[x] = k;
            classes[k].push(x);
        }
        (class, classes)
    }
}

impl IsoClassIndex {
    pub fn new(cat: &FinCategory) -> Self {
        let n = cat.object_count();
        let m = cat.morphism_count();
        let isos: Vec<usize> = (0..m).filter(|&f| cat.is_iso(f)).collect();

        let mut objects = UnionFind::new(n);
        for &u in &isos {
            objects.union(cat.src(u), cat.tgt(u));
        }
        let (object_class, object_classes) = objects.classes();

        let mut morphisms = UnionFind::new(m);
        for f in 0..m {
            for &u in &isos {
                if cat.tgt(u) == cat.src(f) {
                    morphisms.union(f, cat.compose_known(f, u));
                }
                if cat.src(u) == cat.tgt(f) {
                    morphisms.union(f, cat.compose_known(u, f));
                }
            }
        }
        let (morphism_class, morphism_classes) = morphisms.classes();
        let rep_object = |x: usize| object_classes[object_class[x]][0];
        let morphism_reps = morphism_classes
            .iter()
            .map(|members| {
                *members
                    .iter()
                    .find(|&&f| rep_object(cat.src(f)) == cat.src(f) && rep_object(cat.tgt(f)) == cat.tgt(f))
                    .expect("every class meets the representative objects")
            })
            .collect();
        Self {
            object_class,
            object_classes,
            morphism_class,
            morphism_classes,
            morphism_reps,
        }
    }

    pub fn object_class(&self, x: usize) -> usize {
        self.object_class[x]
    }

    pub fn object_classes(&self) -> &[Vec<usize>] {
        &self.object_classes
    }

    /// The least object of class `k`.
    pub fn object_rep(&self, k: usize) -> usize {
        self.object_classes[k][0]
    }

    pub fn morphism_class(&self, f: usize) -> usize {
        self.morphism_class[f]
    }

    pub fn morphism_classes(&self) -> &[Vec<usize>] {
        &self.morphism_classes
    }

    /// A member of class `k` running between representative objects.
    pub fn morphism_rep(&self, k: usize) -> usize {
        self.morphism_reps[k]
    }
}

/// One orbit of composable tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: Vec<usize>,
    pub size: usize,
}

/// Orbits of composable tuples `(f_1, ..., f_n)` with `f_i : x_{i-1} → x_i`
/// under `Π Aut(x_i)` over the positions where `acting[i]` holds. An
/// automorphism `u` at position `i` sends `f_i ↦ u f_i` and
/// `f_{i+1} ↦ f_{i+1} u⁻¹`.
///
/// `tuples` must be closed under the action.
pub fn action_orbits(
    cat: &FinCategory,
    chain: &[usize],
    acting: &[bool],
    tuples: &[Vec<usize>],
) -> Vec<Orbit> {
    assert_eq!(chain.len(), acting.len());
    let n = chain.len().saturating_sub(1);
    let generators: Vec<(usize, usize)> = chain
        .iter()
        .enumerate()
        .filter(|&(i, _)| acting[i])
        .flat_map(|(i, &x)| cat.automorphisms(x).into_iter().map(move |u| (i, u)))
        .filter(|&(_, u)| !cat.is_identity(u))
        .collect();
    let universe: HashSet<&[usize]> = tuples.iter().map(Vec::as_slice).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for t in tuples {
        if seen.contains(t) {
            continue;
        }
        seen.insert(t.clone());
        let mut size = 1;
        let mut queue = VecDeque::from([t.clone()]);
        while let Some(cur) = queue.pop_front() {
            for &(i, u) in &generators {
                let mut next = cur.clone();
                if i >= 1 {
                    next[i - 1] = cat.compose_known(u, next[i - 1]);
                }
                if i < n {
                    let inv = cat.inverse(u).expect("automorphisms are invertible");
                    next[i] = cat.compose_known(next[i], inv);
                }
                assert!(universe.contains(next.as_slice()), "tuple set is not closed under the action");
                if seen.insert(next.clone()) {
                    size += 1;
                    queue.push_back(next);
                }
            }
        }
        out.push(Orbit {
            representative: t.clone(),
            size,
        });
    }
    out
}
