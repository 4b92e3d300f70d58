//! Order complexes of finite posets and their homology over the rationals.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::poset::{IncidenceAlgebra, Poset, PosetError};
use crate::rational::{self, Rational};

/// All strict chains of a poset, grouped by dimension.
///
/// `dim(-1)` holds only the empty chain. Each simplex lists its elements in
/// increasing poset order, and each dimension is sorted lexicographically.
#[derive(Debug, Clone)]
pub struct OrderComplex {
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl OrderComplex {
    pub fn new(p: &Poset) -> Self {
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
        let mut stack: Vec<Vec<usize>> = (0..p.len()).rev().map(|x| vec![x]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("chains on the stack are nonempty");
            for next in (0..p.len()).rev() {
                if p.lt(last, next) {
                    let mut longer = chain.clone();
                    longer.push(next);
                    stack.push(longer);
                }
            }
            let slot = chain.len();
            if simplices.len() <= slot {
                simplices.resize(slot + 1, Vec::new());
            }
            simplices[slot].push(chain);
        }
        for dim in &mut simplices {
            dim.sort();
        }
        let index = simplices
            .iter()
            .map(|dim| dim.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Self { simplices, index }
    }

    /// Highest dimension present, `-1` for the empty poset.
    pub fn top_dim(&self) -> isize {
        self.simplices.len() as isize - 2
    }

    /// Simplices of dimension `n >= -1`.
    pub fn simplices(&self, n: isize) -> &[Vec<usize>] {
        usize::try_from(n + 1)
            .ok()
            .and_then(|i| self.simplices.get(i))
            .map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, n: isize) -> usize {
        self.simplices(n).len()
    }

    /// Matrix of `d_n : C_n → C_{n-1}` with rows indexed by `C_{n-1}`.
    /// `d_0` is the augmentation onto the empty simplex.
    pub fn boundary_matrix(&self, n: isize) -> Vec<Vec<i64>> {
        assert!(n >= 0, "boundary is defined for n >= 0");
        let rows = self.count(n - 1);
        let mut m = vec![vec![0i64; self.count(n)]; rows];
        let faces = &self.index[n as usize];
        for (col, s) in self.simplices(n).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let row = faces[&face];
                m[row][col] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    }

    pub fn homology(&self, reduced: bool) -> Homology {
        let top = self.top_dim();
        let rank_d: Vec<usize> = (0..=top.max(0) + 1)
            .map(|n| {
                if n > top || (n == 0 && !reduced) {
                    0
                } else {
                    integer_rank(&self.boundary_matrix(n))
                }
            })
            .collect();
        let lowest = if reduced { -1 } else { 0 };
        let ranks = (lowest..=top.max(lowest))
            .map(|n| {
                let kernel = self.count(n) - if n >= 0 { rank_d[n as usize] } else { 0 };
                kernel - rank_d[(n + 1) as usize]
            })
            .collect();
        Homology {
            lowest_dim: lowest,
            ranks,
        }
    }

    /// Alternating simplex count; the reduced version includes the empty simplex.
    pub fn euler_char(&self, reduced: bool) -> i64 {
        let start = if reduced { -1 } else { 0 };
        (start..=self.top_dim())
            .map(|n| parity(n) * self.count(n) as i64)
            .sum()
    }

    /// Simplices not contained in any larger simplex.
    pub fn maximal_simplices(&self) -> Vec<&[usize]> {
        let top = self.top_dim();
        let mut out = Vec::new();
        for n in -1..=top {
            for s in self.simplices(n) {
                let extends = self.simplices(n + 1).iter().any(|t| is_subchain(s, t));
                if !extends {
                    out.push(s.as_slice());
                }
            }
        }
        out
    }
}

/// Ranks `H_n` for `n = lowest_dim, lowest_dim + 1, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    pub lowest_dim: isize,
    pub ranks: Vec<usize>,
}

impl Homology {
    pub fn rank(&self, n: isize) -> usize {
        usize::try_from(n - self.lowest_dim)
            .ok()
            .and_then(|i| self.ranks.get(i).copied())
            .unwrap_or(0)
    }

    pub fn euler_char(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                parity(self.lowest_dim + i as isize) * r as i64
            })
            .sum()
    }
}

fn parity(n: isize) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn is_subchain(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.contains(x))
}

/// Rank over the rationals by Bareiss fraction-free elimination.
pub fn integer_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].abs();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// `μ[x, y]` as the reduced Euler characteristic of the open interval.
pub fn hall_mobius(p: &Poset, x: usize, y: usize) -> Result<i64, PosetError> {
    let open = p.open_interval(x, y)?;
    Ok(OrderComplex::new(&open).euler_char(true))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussBonnet {
    pub chi: i64,
    pub chi_reduced: i64,
    pub integral_e: Rational,
    pub integral_e_reduced: Rational,
    pub mobius_sum: Rational,
}

impl GaussBonnet {
    pub fn holds(&self) -> bool {
        rational::int(self.chi) == self.integral_e
            && rational::int(self.chi_reduced) == self.integral_e_reduced
            && rational::int(self.chi) == self.mobius_sum
    }
}

/// Integrates the Euler class over the fundamental class (the sum of maximal
/// chains) and compares with the Euler characteristic and the Möbius sum.
pub fn gauss_bonnet(p: &Poset) -> GaussBonnet {
    let cx = OrderComplex::new(p);
    let maximal = cx.maximal_simplices();
    let containing = |c: &[usize]| {
        let k = maximal.iter().filter(|m| is_subchain(c, m)).count();
        assert!(k >= 1, "every chain lies in a maximal chain");
        k as i64
    };
    let mut integral_e = Rational::zero();
    let mut integral_e_reduced = Rational::zero();
    for m in &maximal {
        for mask in 0u64..(1u64 << m.len()) {
            let c: Vec<usize> = (0..m.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| m[i])
                .collect();
            let term = rational::sign(c.len() + 1) / rational::int(containing(&c));
            if !c.is_empty() {
                integral_e += &term;
            }
            integral_e_reduced += term;
        }
    }
    let alg = IncidenceAlgebra::new(p.clone());
    let mu = alg.mobius();
    let mobius_sum = mu.iter().map(|(_, v)| v.clone()).sum();
    GaussBonnet {
        chi: cx.euler_char(false),
        chi_reduced: cx.euler_char(true),
        integral_e,
        integral_e_reduced,
        mobius_sum,
    }
}
