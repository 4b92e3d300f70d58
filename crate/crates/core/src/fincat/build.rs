//! Generators for the categories used throughout the tests and the CLI.

use std::collections::HashMap;

use super::{FinCatError, FinCategory, Morphism};
use crate::poset::Poset;

const MAX_INJECTIONS: usize = 6;
const MAX_GROUP_ORDER: usize = 720;

impl FinCategory {
    /// One morphism `x → y` for each `x <= y`.
    pub fn from_poset(p: &Poset) -> FinCategory {
        let pairs = p.relation_pairs();
        let index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &xy)| (xy, i)).collect();
        let morphisms = pairs
            .iter()
            .map(|&(x, y)| Morphism {
                id: format!("{}<={}", p.label(x), p.label(y)),
                src: x,
                tgt: y,
            })
            .collect();
        let identities = (0..p.len()).map(|x| index[&(x, x)]).collect();
        FinCategory::from_fn(p.labels().to_vec(), morphisms, identities, |g, f| {
            index[&(pairs[f].0, pairs[g].1)]
        })
    }

    /// A monoid as a one-object category; `mul(a, b)` is `a ∘ b`.
    pub fn from_monoid(
        elements: &[String],
        unit: usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> FinCategory {
        let morphisms = elements
            .iter()
            .map(|e| Morphism {
                id: e.clone(),
                src: 0,
                tgt: 0,
            })
            .collect();
        FinCategory::from_fn(vec!["*".to_string()], morphisms, vec![unit], mul)
    }

    /// `ℤ/n` as a one-object category.
    pub fn cyclic_group(n: usize) -> Result<FinCategory, FinCatError> {
        bound("group order", n, MAX_GROUP_ORDER)?;
        let elements: Vec<String> = (0..n.max(1)).map(|k| format!("r{k}")).collect();
        let n = n.max(1);
        Ok(FinCategory::from_monoid(&elements, 0, |a, b| (a + b) % n))
    }

    /// The symmetric group on `k` letters as a one-object category.
    pub fn symmetric_group(k: usize) -> Result<FinCategory, FinCatError> {
        let perms = permutations(k);
        bound("group order", perms.len(), MAX_GROUP_ORDER)?;
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let elements: Vec<String> = perms.iter().map(|p| fmt_map(p)).collect();
        Ok(FinCategory::from_monoid(&elements, 0, |a, b| {
            index[&compose_maps(&perms[a], &perms[b])]
        }))
    }

    /// `{1, e}` with `e ∘ e = e`.
    pub fn idempotent_monoid() -> FinCategory {
        FinCategory::from_monoid(&["1".to_string(), "e".to_string()], 0, |a, b| a.max(b))
    }

    /// `n` objects and only identities.
    pub fn discrete(n: usize) -> FinCategory {
        let objects: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
        let morphisms = (0..n)
            .map(|i| Morphism {
                id: format!("1_o{i}"),
                src: i,
                tgt: i,
            })
            .collect();
        FinCategory::from_fn(objects, morphisms, (0..n).collect(), |g, _| g)
    }

    pub fn terminal() -> FinCategory {
        FinCategory::discrete(1)
    }

    /// `n` objects with exactly one morphism between any two.
    pub fn contractible_groupoid(n: usize) -> FinCategory {
        let objects: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
        let mut morphisms = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                morphisms.push(Morphism {
                    id: format!("o{x}->o{y}"),
                    src: x,
                    tgt: y,
                });
            }
        }
        let identities = (0..n).map(|x| x * n + x).collect();
        FinCategory::from_fn(objects, morphisms, identities, |g, f| (f / n) * n + g % n)
    }

    /// The action groupoid `X ⋊ G` for a permutation group `G` on `X = {0..size}`.
    /// `group` must contain the identity and be closed under composition.
    pub fn action_groupoid(size: usize, group: &[Vec<usize>]) -> FinCategory {
        let index: HashMap<&[usize], usize> =
            group.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let id: Vec<usize> = (0..size).collect();
        let e = index[id.as_slice()];
        let objects: Vec<String> = (0..size).map(|x| x.to_string()).collect();
        // morphism (g, x) : x → g·x has index g * size + x
        let mut morphisms = Vec::with_capacity(group.len() * size);
        for g in group {
            for x in 0..size {
                morphisms.push(Morphism {
                    id: format!("{}@{x}", fmt_map(g)),
                    src: x,
                    tgt: g[x],
                });
            }
        }
        let identities = (0..size).map(|x| e * size + x).collect();
        FinCategory::from_fn(objects, morphisms, identities, |hm, gm| {
            let (h, g, x) = (hm / size, gm / size, gm % size);
            index[compose_maps(&group[h], &group[g]).as_slice()] * size + x
        })
    }

    /// The category of injections between `{0..n}` for `n <= m`.
    pub fn injections(m: usize) -> Result<FinCategory, FinCatError> {
        bound("injection category", m, MAX_INJECTIONS)?;
        let objects: Vec<String> = (0..=m).map(|n| n.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut maps: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        for n in 0..=m {
            for k in n..=m {
                for f in injective_maps(n, k) {
                    index.insert((k, f.clone()), morphisms.len());
                    morphisms.push(Morphism {
                        id: format!("{n}->{k}:{}", fmt_map(&f)),
                        src: n,
                        tgt: k,
                    });
                    maps.push(f);
                }
            }
        }
        let identities = (0..=m)
            .map(|n| index[&(n, (0..n).collect::<Vec<_>>())])
            .collect();
        let targets: Vec<usize> = morphisms.iter().map(|f| f.tgt).collect();
        Ok(FinCategory::from_fn(objects, morphisms, identities, |g, f| {
            index[&(targets[g], compose_maps(&maps[g], &maps[f]))]
        }))
    }

    /// Free category on a finite acyclic graph: morphisms are directed paths.
    /// Fails if the edges contain a cycle.
    pub fn path_category(objects: Vec<String>, edges: &[(String, usize, usize)]) -> Result<FinCategory, FinCatError> {
        let n = objects.len();
        for (_, s, t) in edges {
            if *s >= n || *t >= n {
                return Err(FinCatError::UnknownObject(s.max(t).to_string()));
            }
        }
        // paths[i] = edge indices; identities are empty paths at each object
        let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|x| (x, x, Vec::new())).collect();
        let mut frontier: Vec<usize> = (0..n).collect();
        while let Some(p) = frontier.pop() {
            let (src, tgt, ref path) = paths[p].clone();
            for (e, (_, s, t)) in edges.iter().enumerate() {
                if *s != tgt {
                    continue;
                }
                if path.len() >= edges.len() {
                    let a = &objects[*s];
                    return Err(FinCatError::NotLocallyFinite(a.clone(), a.clone()));
                }
                let mut longer = path.clone();
                longer.push(e);
                frontier.push(paths.len());
                paths.push((src, *t, longer));
            }
        }
        let index: HashMap<(usize, Vec<usize>), usize> = paths
            .iter()
            .enumerate()
            .map(|(i, (s, _, p))| ((*s, p.clone()), i))
            .collect();
        let morphisms = paths
            .iter()
            .map(|(s, t, p)| Morphism {
                id: if p.is_empty() {
                    format!("1_{}", objects[*s])
                } else {
                    p.iter().map(|&e| edges[e].0.as_str()).collect::<Vec<_>>().join(".")
                },
                src: *s,
                tgt: *t,
            })
            .collect();
        Ok(FinCategory::from_fn(objects, morphisms, (0..n).collect(), |g, f| {
            let mut p = paths[f].2.clone();
            p.extend_from_slice(&paths[g].2);
            index[&(paths[f].0, p)]
        }))
    }

    /// `X_F`: the objects of `p`, with `X_F(x, y) = C(F x, F y)` when `x <= y`
    /// and empty otherwise. `object_map[x]` is `F x`.
    pub fn over_poset(p: &Poset, cat: &FinCategory, object_map: &[usize]) -> Result<FinCategory, FinCatError> {
        if object_map.len() != p.len() {
            return Err(FinCatError::UnknownObject(format!("image of element {}", object_map.len().min(p.len()))));
        }
        if let Some(&bad) = object_map.iter().find(|&&o| o >= cat.object_count()) {
            return Err(FinCatError::UnknownObject(bad.to_string()));
        }
        let mut morphisms = Vec::new();
        let mut base = Vec::new();
        let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for (x, y) in p.relation_pairs() {
            for &f in cat.hom(object_map[x], object_map[y]) {
                index.insert((x, y, f), morphisms.len());
                morphisms.push(Morphism {
                    id: format!("{}<={}:{}", p.label(x), p.label(y), cat.morphism(f).id),
                    src: x,
                    tgt: y,
                });
                base.push(f);
            }
        }
        let identities = (0..p.len())
            .map(|x| index[&(x, x, cat.identity(object_map[x]))])
            .collect();
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
        Ok(FinCategory::from_fn(p.labels().to_vec(), morphisms, identities, |g, f| {
            index[&(ends[f].0, ends[g].1, cat.compose_known(base[g], base[f]))]
        }))
    }

    /// Componentwise product; `(f, g)` has index `f * other.morphism_count() + g`.
    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let (n2, m2) = (other.object_count(), other.morphism_count());
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let morphisms = self
            .morphisms
            .iter()
            .flat_map(|f| {
                other.morphisms.iter().map(move |g| Morphism {
                    id: format!("({},{})", f.id, g.id),
                    src: f.src * n2 + g.src,
                    tgt: f.tgt * n2 + g.tgt,
                })
            })
            .collect();
        let identities = (0..self.object_count())
            .flat_map(|x| (0..n2).map(move |y| (x, y)))
            .map(|(x, y)| self.identities[x] * m2 + other.identities[y])
            .collect();
        FinCategory::from_fn(objects, morphisms, identities, |g, f| {
            let a = self.compose_known(g / m2, f / m2);
            let b = other.compose_known(g % m2, f % m2);
            a * m2 + b
        })
    }

    /// An equivalent category with a fresh object isomorphic to `x`.
    ///
    /// Hom-sets between the enlarged object set are copies of the original
    /// hom-sets, reading the new object as `x`.
    pub fn duplicate_object(&self, x: usize) -> FinCategory {
        let n = self.object_count();
        let base: Vec<usize> = (0..n).chain(std::iter::once(x)).collect();
        let mut objects = self.objects.clone();
        let mut fresh = format!("{}'", self.objects[x]);
        while self.object_index.contains_key(&fresh) {
            fresh.push('\'');
        }
        objects.push(fresh);
        let mut morphisms = Vec::new();
        // (new src, new tgt, original morphism) -> index
        let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
        let mut origin = Vec::new();
        for a in 0..=n {
            for b in 0..=n {
                for &f in self.hom(base[a], base[b]) {
                    let id = if a < n && b < n {
                        self.morphisms[f].id.clone()
                    } else {
                        format!("{}[{}->{}]", self.morphisms[f].id, objects[a], objects[b])
                    };
                    index.insert((a, b, f), morphisms.len());
                    origin.push(f);
                    morphisms.push(Morphism { id, src: a, tgt: b });
                }
            }
        }
        let identities = (0..=n)
            .map(|a| index[&(a, a, self.identities[base[a]])])
            .collect();
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
        FinCategory::from_fn(objects, morphisms, identities, |g, f| {
            let gf = self.compose_known(origin[g], origin[f]);
            index[&(ends[f].0, ends[g].1, gf)]
        })
    }
}

fn bound(what: &'static str, param: usize, max: usize) -> Result<(), FinCatError> {
    if param > max {
        Err(FinCatError::BoundExceeded { what, param, max })
    } else {
        Ok(())
    }
}

/// `(g ∘ f)[i] = g[f[i]]`.
pub(crate) fn compose_maps(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&i| g[i]).collect()
}

fn fmt_map(f: &[usize]) -> String {
    let items: Vec<String> = f.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(","))
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    injective_maps(k, k)
}

/// Injective maps `{0..n} → {0..k}` in lexicographic order.
fn injective_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
