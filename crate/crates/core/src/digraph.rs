//! Reflexive directed graphs and their Möbius functions.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{self, IncidenceElement};
use crate::poset::{IncidenceAlgebra, Poset, PosetError, RelationMode};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("vertex `{0}` has no loop; the graph must be reflexive")]
    MissingLoop(String),
    #[error("graph has a circuit through `{0}`, so it is not locally finite")]
    NotLocallyFinite(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite directed multigraph with at least one loop at every vertex.
#[derive(Debug, Clone)]
pub struct ReflexiveDigraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
}

/// Edges of a walk, by position in [`ReflexiveDigraph::edges`].
pub type Walk = Vec<usize>;

impl ReflexiveDigraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self, DigraphError> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(DigraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut ids = HashSet::new();
        for e in &edges {
            if !ids.insert(e.id.as_str()) {
                return Err(DigraphError::DuplicateEdge(e.id.clone()));
            }
            for v in [e.src, e.tgt] {
                if v >= vertices.len() {
                    return Err(DigraphError::UnknownVertex {
                        edge: e.id.clone(),
                        vertex: v.to_string(),
                    });
                }
            }
        }
        let g = Self {
            vertices,
            index,
            edges,
        };
        if let Some(v) = (0..g.vertices.len()).find(|&v| g.loop_count(v) == 0) {
            return Err(DigraphError::MissingLoop(g.vertices[v].clone()));
        }
        Ok(g)
    }

    /// Builds from labelled edges `(id, source, target)`.
    pub fn from_labels(
        vertices: Vec<String>,
        edges: &[(String, String, String)],
    ) -> Result<Self, DigraphError> {
        let lookup: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let edges = edges
            .iter()
            .map(|(id, s, t)| {
                let find = |v: &String| {
                    lookup.get(v.as_str()).copied().ok_or_else(|| {
                        DigraphError::UnknownVertex {
                            edge: id.clone(),
                            vertex: v.clone(),
                        }
                    })
                };
                Ok(Edge {
                    id: id.clone(),
                    src: find(s)?,
                    tgt: find(t)?,
                })
            })
            .collect::<Result<Vec<_>, DigraphError>>()?;
        Self::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `|E(x, y)|`.
    pub fn edge_count(&self, x: usize, y: usize) -> usize {
        self.edges.iter().filter(|e| e.src == x && e.tgt == y).count()
    }

    pub fn loop_count(&self, x: usize) -> usize {
        self.edge_count(x, x)
    }

    /// Walks from `x` to `y` of length `1..=max_len`. Loops never appear in a walk.
    pub fn enumerate_walks(&self, x: usize, y: usize, max_len: usize) -> Vec<Walk> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Walk)> = vec![(x, Vec::new())];
        while let Some((at, walk)) = stack.pop() {
            if walk.len() == max_len {
                continue;
            }
            for (i, e) in self.edges.iter().enumerate() {
                if e.src != at || e.src == e.tgt {
                    continue;
                }
                let mut next = walk.clone();
                next.push(i);
                if e.tgt == y {
                    out.push(next.clone());
                }
                stack.push((e.tgt, next));
            }
        }
        out.sort();
        out
    }

    /// A vertex on some circuit of non-loop edges, if any.
    pub fn find_circuit(&self) -> Option<usize> {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for e in self.edges.iter().filter(|e| e.src != e.tgt) {
            indegree[e.tgt] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for e in self.edges.iter().filter(|e| e.src == v && e.tgt != v) {
                indegree[e.tgt] -= 1;
                if indegree[e.tgt] == 0 {
                    ready.push(e.tgt);
                }
            }
        }
        if seen == n {
            None
        } else {
            (0..n).find(|&v| indegree[v] > 0)
        }
    }

    pub fn is_locally_finite(&self) -> bool {
        self.find_circuit().is_none()
    }

    fn require_locally_finite(&self) -> Result<(), DigraphError> {
        match self.find_circuit() {
            Some(v) => Err(DigraphError::NotLocallyFinite(self.vertices[v].clone())),
            None => Ok(()),
        }
    }

    /// Reachability order: `x <= y` iff `x = y` or some walk runs from `x` to `y`.
    pub fn induced_poset(&self) -> Result<Poset, DigraphError> {
        self.require_locally_finite()?;
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.src, e.tgt)).collect();
        Ok(Poset::new(self.vertices.clone(), &pairs, RelationMode::Cover)?)
    }

    /// Edge set `E × F` on vertex set `X × Y`; vertex `(a, b)` has index `a * |Y| + b`.
    pub fn product(&self, other: &ReflexiveDigraph) -> ReflexiveDigraph {
        let m = other.vertices.len();
        let vertices = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let edges = self
            .edges
            .iter()
            .flat_map(|e| {
                other.edges.iter().map(move |f| Edge {
                    id: format!("({},{})", e.id, f.id),
                    src: e.src * m + f.src,
                    tgt: e.tgt * m + f.tgt,
                })
            })
            .collect();
        ReflexiveDigraph::new(vertices, edges).expect("product of reflexive graphs is reflexive")
    }
}

/// The incidence algebra of the induced poset together with `ξ(x, y) = |E(x, y)|`.
#[derive(Debug, Clone)]
pub struct GraphIncidence {
    graph: ReflexiveDigraph,
    alg: IncidenceAlgebra,
    xi: IncidenceElement,
}

/// Result of inverting along the edges and back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionReport {
    /// `g(y) = Σ_{e : base ≤ s(e), t(e) = y} f(s(e))`.
    pub g: BTreeMap<usize, Rational>,
    /// `g * μ`, which should give back `f`.
    pub recovered: BTreeMap<usize, Rational>,
    /// The edge sum agrees with `f * ξ`.
    pub edge_sum_is_xi_action: bool,
    pub round_trip: bool,
}

impl GraphIncidence {
    pub fn new(graph: &ReflexiveDigraph) -> Result<Self, DigraphError> {
        let alg = IncidenceAlgebra::new(graph.induced_poset()?);
        let xi = alg.from_fn(|x, y| rational::int(graph.edge_count(x, y) as i64));
        Ok(Self {
            graph: graph.clone(),
            alg,
            xi,
        })
    }

    pub fn algebra(&self) -> &IncidenceAlgebra {
        &self.alg
    }

    pub fn xi(&self) -> &IncidenceElement {
        &self.xi
    }

    pub fn mobius(&self) -> IncidenceElement {
        algebra::invert(&self.xi).expect("every vertex carries a loop")
    }

    /// `μ[x, y] = Σ_walks (-1)^len / Π_{visited v} |E(v, v)|`, with
    /// `μ[x, x] = 1 / |E(x, x)|`.
    pub fn mobius_by_walks(&self) -> IncidenceElement {
        let g = &self.graph;
        let n = g.vertices.len();
        self.alg.from_fn(|x, y| {
            if x == y {
                return rational::ratio(1, g.loop_count(x) as i64);
            }
            let mut total = Rational::zero();
            for walk in g.enumerate_walks(x, y, n) {
                let mut denom = g.loop_count(x) as i64;
                for &e in &walk {
                    denom *= g.loop_count(g.edges[e].tgt) as i64;
                }
                total += rational::sign(walk.len()) / rational::int(denom);
            }
            total
        })
    }

    pub fn inversion_check(
        &self,
        base: usize,
        f: &BTreeMap<usize, Rational>,
    ) -> Result<InversionReport, DigraphError> {
        let p = self.alg.poset();
        let mut g: BTreeMap<usize, Rational> = BTreeMap::new();
        for e in &self.graph.edges {
            if !p.leq(base, e.src) {
                continue;
            }
            if let Some(v) = f.get(&e.src) {
                *g.entry(e.tgt).or_insert_with(Rational::zero) += v;
            }
        }
        g.retain(|_, v| !v.is_zero());
        let via_xi = self.alg.act(base, f, &self.xi)?;
        let recovered = self.alg.act(base, &g, &self.mobius())?;
        let f_clean: BTreeMap<usize, Rational> = f
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(&k, v)| (k, v.clone()))
            .collect();
        Ok(InversionReport {
            edge_sum_is_xi_action: via_xi == g,
            round_trip: recovered == f_clean,
            g,
            recovered,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{family, is_isomorphic, Family};
    use crate::rational::{int, ratio};

    fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> ReflexiveDigraph {
        let vs = vertices.iter().map(|s| s.to_string()).collect();
        let es: Vec<(String, String, String)> = edges
            .iter()
            .enumerate()
            .map(|(i, (s, t))| (format!("e{i}"), s.to_string(), t.to_string()))
            .collect();
        ReflexiveDigraph::from_labels(vs, &es).unwrap()
    }

    #[test]
    fn reflexivity_required() {
        let err = ReflexiveDigraph::from_labels(
            vec!["x".into(), "y".into()],
            &[("l".into(), "x".into(), "x".into())],
        )
        .unwrap_err();
        assert_eq!(err, DigraphError::MissingLoop("y".into()));
    }

    #[test]
    fn walks() {
        let g = graph(&["x"], &[("x", "x")]);
        assert!(g.enumerate_walks(0, 0, 5).is_empty());
        let g = graph(&["x", "y"], &[("x", "x"), ("y", "y"), ("x", "y")]);
        assert_eq!(g.enumerate_walks(0, 1, 2).len(), 1);
        let g = graph(
            &["x", "z", "y"],
            &[("x", "x"), ("y", "y"), ("z", "z"), ("x", "z"), ("z", "y"), ("x", "y")],
        );
        assert_eq!(g.enumerate_walks(0, 2, 3).len(), 2);
    }

    #[test]
    fn local_finiteness() {
        assert!(graph(&["a", "b"], &[("a", "a"), ("b", "b")]).is_locally_finite());
        let cyc = graph(&["x", "y"], &[("x", "x"), ("y", "y"), ("x", "y"), ("y", "x")]);
        assert!(!cyc.is_locally_finite());
        assert!(matches!(
            cyc.induced_poset(),
            Err(DigraphError::NotLocallyFinite(_))
        ));
    }

    #[test]
    fn induced_posets() {
        let p = graph(&["a", "b"], &[("a", "a"), ("b", "b")]).induced_poset().unwrap();
        assert!(is_isomorphic(&p, &family(Family::Antichain(2)).unwrap()));
        let p = graph(
            &["0", "a", "b", "1"],
            &[("0", "0"), ("a", "a"), ("b", "b"), ("1", "1"), ("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .induced_poset()
        .unwrap();
        assert!(is_isomorphic(&p, &family(Family::Diamond).unwrap()));
    }

    #[test]
    fn mobius_examples() {
        let g = graph(&["x"], &[("x", "x"), ("x", "x")]);
        let gi = GraphIncidence::new(&g).unwrap();
        assert_eq!(gi.algebra().value(&gi.mobius(), 0, 0), ratio(1, 2));

        let g = graph(&["x", "y"], &[("x", "x"), ("y", "y"), ("x", "y")]);
        let gi = GraphIncidence::new(&g).unwrap();
        assert_eq!(gi.algebra().value(&gi.mobius(), 0, 1), int(-1));

        let g = graph(&["x", "y"], &[("x", "x"), ("y", "y"), ("y", "y"), ("x", "y")]);
        let gi = GraphIncidence::new(&g).unwrap();
        assert_eq!(gi.algebra().value(&gi.mobius(), 0, 1), ratio(-1, 2));
        assert_eq!(gi.mobius(), gi.mobius_by_walks());
    }

    #[test]
    fn inversion_examples() {
        let g = graph(&["a", "b"], &[("a", "a"), ("a", "a"), ("b", "b")]);
        let gi = GraphIncidence::new(&g).unwrap();
        let f: BTreeMap<usize, Rational> = [(0, int(1))].into();
        let r = gi.inversion_check(0, &f).unwrap();
        assert_eq!(r.g, BTreeMap::from([(0, int(2))]));
        assert!(r.round_trip && r.edge_sum_is_xi_action);
        let r = gi.inversion_check(0, &BTreeMap::new()).unwrap();
        assert!(r.g.is_empty() && r.round_trip);
    }

    #[test]
    fn products() {
        let x = graph(&["x", "y"], &[("x", "x"), ("y", "y"), ("x", "y")]);
        let point = graph(&["p"], &[("p", "p")]);
        let xp = x.product(&point);
        assert_eq!(xp.edges().len(), x.edges().len());
        assert!(is_isomorphic(&xp.induced_poset().unwrap(), &x.induced_poset().unwrap()));

        let sq = x.product(&x);
        let gi = GraphIncidence::new(&sq).unwrap();
        assert_eq!(gi.algebra().value(&gi.mobius(), 0, 3), int(1));

        let two = graph(&["a"], &[("a", "a"), ("a", "a")]);
        let three = graph(&["b"], &[("b", "b"), ("b", "b"), ("b", "b")]);
        assert_eq!(two.product(&three).loop_count(0), 6);
    }
}
