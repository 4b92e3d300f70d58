use std::collections::HashMap;

use super::{IncidenceAlgebra, Poset};
use crate::algebra::{self, Cell, ConvolutionContext, IncidenceElement};

/// Intervals grouped up to order isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalClass {
    pub representative: (usize, usize),
    pub members: Vec<(usize, usize)>,
}

/// The reduced incidence algebra: one cell per isomorphism class of intervals.
#[derive(Debug, Clone)]
pub struct ReducedAlgebra {
    poset: Poset,
    ctx: ConvolutionContext,
    classes: Vec<IntervalClass>,
    class_of: HashMap<(usize, usize), Cell>,
}

pub fn reduced_context(p: &Poset) -> ReducedAlgebra {
    let mut classes: Vec<IntervalClass> = Vec::new();
    let mut reps: Vec<Poset> = Vec::new();
    let mut class_of = HashMap::new();
    let mut buckets: HashMap<Vec<(usize, usize)>, Vec<Cell>> = HashMap::new();
    for (x, y) in p.relation_pairs() {
        let sub = p.induced(&p.interval(x, y));
        let key = signature(&sub);
        let bucket = buckets.entry(key).or_default();
        let found = bucket.iter().copied().find(|&k| is_isomorphic(&reps[k], &sub));
        let k = match found {
            Some(k) => {
                classes[k].members.push((x, y));
                k
            }
            None => {
                let k = classes.len();
                classes.push(IntervalClass {
                    representative: (x, y),
                    members: vec![(x, y)],
                });
                reps.push(sub);
                bucket.push(k);
                k
            }
        };
        class_of.insert((x, y), k);
    }

    let labels = classes
        .iter()
        .map(|c| {
            let (x, y) = c.representative;
            format!("[{},{}]~", p.label(x), p.label(y))
        })
        .collect();
    let splittings = classes
        .iter()
        .map(|c| {
            let (x, z) = c.representative;
            p.interval(x, z)
                .into_iter()
                .map(|y| (class_of[&(x, y)], class_of[&(y, z)]))
                .collect()
        })
        .collect();
    let counit = classes
        .iter()
        .map(|c| c.representative.0 == c.representative.1)
        .collect();
    let ctx = ConvolutionContext::new(labels, splittings, counit)
        .expect("class cells are well formed");
    ReducedAlgebra {
        poset: p.clone(),
        ctx,
        classes,
        class_of,
    }
}

impl ReducedAlgebra {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn context(&self) -> &ConvolutionContext {
        &self.ctx
    }

    pub fn classes(&self) -> &[IntervalClass] {
        &self.classes
    }

    pub fn class_of(&self, x: usize, y: usize) -> Option<Cell> {
        self.class_of.get(&(x, y)).copied()
    }

    pub fn mobius(&self) -> IncidenceElement {
        algebra::invert(&self.ctx.zeta()).expect("zeta is a unit")
    }

    /// Pulls a class function back to an ordinary incidence function.
    pub fn lift(&self, alg: &IncidenceAlgebra, e: &IncidenceElement) -> IncidenceElement {
        alg.from_fn(|x, y| e.get(self.class_of[&(x, y)]))
    }
}

// Per-element (elements below, elements above, lower covers, upper covers), sorted.
fn signature(p: &Poset) -> Vec<(usize, usize)> {
    let mut sig: Vec<(usize, usize)> = element_profiles(p)
        .into_iter()
        .map(|(d, u, _, _)| (d, u))
        .collect();
    sig.sort_unstable();
    sig
}

fn element_profiles(p: &Poset) -> Vec<(usize, usize, usize, usize)> {
    let n = p.len();
    (0..n)
        .map(|x| {
            let down = (0..n).filter(|&y| p.leq(y, x)).count();
            let up = (0..n).filter(|&y| p.leq(x, y)).count();
            let lc = (0..n).filter(|&y| p.covers(y, x)).count();
            let uc = (0..n).filter(|&y| p.covers(x, y)).count();
            (down, up, lc, uc)
        })
        .collect()
}

/// Brute-force order-isomorphism test with profile pruning.
pub fn is_isomorphic(p: &Poset, q: &Poset) -> bool {
    let n = p.len();
    if n != q.len() {
        return false;
    }
    let (pp, qp) = (element_profiles(p), element_profiles(q));
    let mut ps = pp.clone();
    let mut qs = qp.clone();
    ps.sort_unstable();
    qs.sort_unstable();
    if ps != qs {
        return false;
    }
    let order = p.linear_extension();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        i: usize,
        order: &[usize],
        p: &Poset,
        q: &Poset,
        pp: &[(usize, usize, usize, usize)],
        qp: &[(usize, usize, usize, usize)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let x = order[i];
        for y in 0..q.len() {
            if used[y] || pp[x] != qp[y] {
                continue;
            }
            let consistent = order[..i].iter().all(|&w| {
                let v = image[w];
                p.leq(w, x) == q.leq(v, y) && p.leq(x, w) == q.leq(y, v)
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if extend(i + 1, order, p, q, pp, qp, image, used) {
                return true;
            }
            used[y] = false;
        }
        image[x] = usize::MAX;
        false
    }

    extend(0, &order, p, q, &pp, &qp, &mut image, &mut used)
}
