//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use mobius_core::digraph::ReflexiveDigraph;
use mobius_core::fincat::FinCategory;
use mobius_core::poset::{Poset, RelationMode};
use mobius_core::rational::{self, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random order on `n` elements: `i < j` is related with probability
/// `density`, then closed transitively.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    Poset::new(labels, &pairs, RelationMode::Full).expect("index order is acyclic")
}

pub fn poset_from_seed(seed: u64, max_n: usize) -> Poset {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    let density = r.gen_range(0.15..0.7);
    random_poset(&mut r, n, density)
}

/// Acyclic apart from loops, so locally finite: `1..=3` loops per vertex and
/// up to `max_parallel` edges `i -> j` for `i < j`.
pub fn random_digraph(rng: &mut impl Rng, n: usize, max_parallel: usize) -> ReflexiveDigraph {
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for k in 0..rng.gen_range(1..=3) {
            edges.push((format!("l{i}.{k}"), vertices[i].clone(), vertices[i].clone()));
        }
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                for k in 0..rng.gen_range(1..=max_parallel) {
                    edges.push((format!("e{i}.{j}.{k}"), vertices[i].clone(), vertices[j].clone()));
                }
            }
        }
    }
    ReflexiveDigraph::from_labels(vertices, &edges).expect("every vertex has a loop")
}

pub fn digraph_from_seed(seed: u64, max_n: usize) -> ReflexiveDigraph {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    random_digraph(&mut r, n, 3)
}

/// The free category on a random DAG (edges go up in index order, at most
/// two parallel edges).
pub fn random_path_category(rng: &mut impl Rng, n: usize, density: f64) -> FinCategory {
    let objects: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                for k in 0..rng.gen_range(1..=2) {
                    edges.push((format!("e{i}{j}{}", (b'a' + k) as char), i, j));
                }
            }
        }
    }
    FinCategory::path_category(objects, &edges).expect("edges go up in index order")
}

pub fn path_category_from_seed(seed: u64, max_n: usize) -> FinCategory {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    let density = r.gen_range(0.2..0.55);
    random_path_category(&mut r, n, density)
}

/// `X_F` for a random poset mapped into a random path category along a
/// monotone object map.
pub fn graded_category_from_seed(seed: u64) -> FinCategory {
    let mut r = rng(seed);
    let k = r.gen_range(1..=3);
    let base = random_path_category(&mut r, k, 0.6);
    let n = r.gen_range(1..=4);
    let p = random_poset(&mut r, n, 0.5);
    let m = base.object_count();
    // index order extends the order of `p`, so a sorted map is monotone
    let mut map: Vec<usize> = (0..n).map(|_| r.gen_range(0..m)).collect();
    map.sort_unstable();
    FinCategory::over_poset(&p, &base, &map).expect("map lands in the objects")
}

/// A small integer-valued rational, nonzero when `nonzero` is set.
pub fn small_rational(rng: &mut impl Rng, nonzero: bool) -> Rational {
    loop {
        let v = rational::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        if !nonzero || v != rational::zero() {
            return v;
        }
    }
}
