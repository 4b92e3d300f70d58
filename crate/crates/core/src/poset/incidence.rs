use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Poset, PosetError};
use crate::algebra::{self, Cell, ConvolutionContext, IncidenceElement};
use crate::rational::{self, Rational};

/// Which finite-difference kernel to use.
///
/// `Cover` is `1` on the diagonal and `-1` on covering pairs; its inverse
/// counts maximal chains. `All` is `-1` on every strict pair; its inverse
/// counts all chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaVariant {
    Cover,
    All,
}

/// Direction of the Möbius inversion on the up-set module of a base point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionDirection {
    /// `g = f * ξ`, i.e. `g(y) = Σ_{base ≤ x ≤ y} f(x)`.
    ByXi,
    /// `f = g * μ`.
    ByMu,
}

/// The incidence algebra of a finite poset: one cell per interval `[x, y]`.
#[derive(Debug, Clone)]
pub struct IncidenceAlgebra {
    poset: Poset,
    ctx: ConvolutionContext,
    intervals: Vec<(usize, usize)>,
    cells: HashMap<(usize, usize), Cell>,
}

impl IncidenceAlgebra {
    pub fn new(poset: Poset) -> Self {
        let intervals = poset.relation_pairs();
        let cells: HashMap<(usize, usize), Cell> =
            intervals.iter().enumerate().map(|(c, &xy)| (xy, c)).collect();
        let labels = intervals
            .iter()
            .map(|&(x, y)| format!("[{},{}]", poset.label(x), poset.label(y)))
            .collect();
        let splittings = intervals
            .iter()
            .map(|&(x, z)| {
                (0..poset.len())
                    .filter(|&y| poset.leq(x, y) && poset.leq(y, z))
                    .map(|y| (cells[&(x, y)], cells[&(y, z)]))
                    .collect()
            })
            .collect();
        let counit = intervals.iter().map(|&(x, y)| x == y).collect();
        let ctx = ConvolutionContext::new(labels, splittings, counit)
            .expect("interval cells are well formed");
        Self {
            poset,
            ctx,
            intervals,
            cells,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn context(&self) -> &ConvolutionContext {
        &self.ctx
    }

    pub fn cell(&self, x: usize, y: usize) -> Option<Cell> {
        self.cells.get(&(x, y)).copied()
    }

    pub fn interval(&self, cell: Cell) -> (usize, usize) {
        self.intervals[cell]
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    pub fn from_fn(&self, mut f: impl FnMut(usize, usize) -> Rational) -> IncidenceElement {
        self.ctx.from_fn(|c| {
            let (x, y) = self.intervals[c];
            f(x, y)
        })
    }

    /// `e[x, y]`, taken to be zero when `x` is not below `y`.
    pub fn value(&self, e: &IncidenceElement, x: usize, y: usize) -> Rational {
        self.cell(x, y).map_or_else(Rational::zero, |c| e.get(c))
    }

    pub fn zeta(&self) -> IncidenceElement {
        self.ctx.zeta()
    }

    pub fn unit(&self) -> IncidenceElement {
        self.ctx.unit()
    }

    /// The inverse of ξ, computed by the generic triangular solver.
    pub fn mobius(&self) -> IncidenceElement {
        algebra::invert(&self.zeta()).expect("zeta is a unit on a finite poset")
    }

    pub fn eta(&self, variant: EtaVariant) -> IncidenceElement {
        let p = &self.poset;
        self.from_fn(|x, y| match variant {
            _ if x == y => rational::one(),
            EtaVariant::Cover if p.covers(x, y) => -rational::one(),
            EtaVariant::Cover => rational::zero(),
            EtaVariant::All => -rational::one(),
        })
    }

    /// Right action of the algebra on functions over the up-set of `base`:
    /// `(f * e)(y) = Σ_{base ≤ x ≤ y} f(x) e[x, y]`.
    pub fn act(
        &self,
        base: usize,
        f: &BTreeMap<usize, Rational>,
        e: &IncidenceElement,
    ) -> Result<BTreeMap<usize, Rational>, PosetError> {
        self.check_module(base, f)?;
        let p = &self.poset;
        let mut out = BTreeMap::new();
        for y in p.up_set(base) {
            let mut acc = Rational::zero();
            for (&x, fx) in f {
                if p.leq(x, y) {
                    acc += fx * self.value(e, x, y);
                }
            }
            if !acc.is_zero() {
                out.insert(y, acc);
            }
        }
        Ok(out)
    }

    /// Möbius inversion on the up-set of `base`.
    pub fn module_inversion(
        &self,
        base: usize,
        f: &BTreeMap<usize, Rational>,
        direction: InversionDirection,
    ) -> Result<BTreeMap<usize, Rational>, PosetError> {
        match direction {
            InversionDirection::ByXi => self.act(base, f, &self.zeta()),
            InversionDirection::ByMu => self.act(base, f, &self.mobius()),
        }
    }

    /// `Δf = f * η` on the up-set of `base`.
    pub fn finite_difference(
        &self,
        base: usize,
        f: &BTreeMap<usize, Rational>,
        variant: EtaVariant,
    ) -> Result<BTreeMap<usize, Rational>, PosetError> {
        self.act(base, f, &self.eta(variant))
    }

    fn check_module(&self, base: usize, f: &BTreeMap<usize, Rational>) -> Result<(), PosetError> {
        self.poset.check_index(base)?;
        for &x in f.keys() {
            self.poset.check_index(x)?;
            if !self.poset.leq(base, x) {
                return Err(PosetError::OutsideUpSet(self.poset.label(x).to_string()));
            }
        }
        Ok(())
    }

    /// The inverse of `f` from the closed chain formula
    /// `f⁻¹[x,y] = Σ_n (-1)^n Π f[x_{i-1},x_i] / Π_{i=0..n} f[x_i,x_i]`,
    /// summed by dynamic programming over the interval.
    pub fn chain_sum_inverse(&self, f: &IncidenceElement) -> Result<IncidenceElement, PosetError> {
        let p = &self.poset;
        for x in 0..p.len() {
            if self.value(f, x, x).is_zero() {
                return Err(PosetError::NotInvertible(p.label(x).to_string()));
            }
        }
        let mut out = self.ctx.zero();
        for x in 0..p.len() {
            // w[z] = Σ over chains x = x_0 < ... < x_n = z of the signed weight.
            let mut w: HashMap<usize, Rational> = HashMap::new();
            for &z in p.linear_extension() {
                if !p.leq(x, z) {
                    continue;
                }
                let diag = self.value(f, z, z);
                let val = if z == x {
                    diag.recip()
                } else {
                    let mut acc = Rational::zero();
                    for (&u, wu) in &w {
                        if p.lt(u, z) {
                            acc -= wu * self.value(f, u, z);
                        }
                    }
                    acc / diag
                };
                out.set(self.cells[&(x, z)], val.clone());
                w.insert(z, val);
            }
        }
        Ok(out)
    }

    /// `counts[n]` is the number of strict chains `x = x_0 < ... < x_n = y`.
    pub fn chain_counts(&self, x: usize, y: usize) -> Result<Vec<BigInt>, PosetError> {
        let p = &self.poset;
        p.check_leq(x, y)?;
        let elems = p.interval(x, y);
        let mut poly: HashMap<usize, Vec<BigInt>> = HashMap::new();
        for &z in &elems {
            let mut counts = vec![BigInt::zero()];
            if z == x {
                counts[0] = BigInt::one();
            } else {
                for &w in &elems {
                    if !p.lt(w, z) {
                        continue;
                    }
                    let Some(pw) = poly.get(&w) else { continue };
                    if counts.len() < pw.len() + 1 {
                        counts.resize(pw.len() + 1, BigInt::zero());
                    }
                    for (n, c) in pw.iter().enumerate() {
                        counts[n + 1] += c;
                    }
                }
            }
            poly.insert(z, counts);
        }
        Ok(poly.remove(&y).expect("y lies in its own interval"))
    }

    /// Möbius value from the alternating chain count; independent of [`Self::mobius`].
    pub fn mobius_by_chains(&self, x: usize, y: usize) -> Result<Rational, PosetError> {
        let counts = self.chain_counts(x, y)?;
        let total: BigInt = counts
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 0 { c.clone() } else { -c })
            .sum();
        Ok(rational::big(total))
    }

    /// Evaluates the antipode of `x_{[a,b]}` with every variable set to one.
    pub fn antipode_eval(&self, a: usize, b: usize) -> Result<Rational, PosetError> {
        self.antipode_eval_at(a, b, |_, _| rational::one())
    }

    /// Evaluates `S x_{[a,b]} = Σ_n (-1)^n Σ_chains Π x_{[x_{i-1},x_i]}` at an
    /// arbitrary assignment of the interval variables, enumerating every chain.
    pub fn antipode_eval_at(
        &self,
        a: usize,
        b: usize,
        var: impl Fn(usize, usize) -> Rational,
    ) -> Result<Rational, PosetError> {
        let p = &self.poset;
        p.check_lt(a, b)?;
        let elems = p.interval(a, b);
        let mut total = Rational::zero();
        // Stack of (current element, chain length so far, product so far).
        let mut stack = vec![(a, 0usize, rational::one())];
        while let Some((cur, len, prod)) = stack.pop() {
            for &next in &elems {
                if !p.lt(cur, next) {
                    continue;
                }
                let term = &prod * var(cur, next);
                if next == b {
                    total += rational::sign(len + 1) * &term;
                } else {
                    stack.push((next, len + 1, term));
                }
            }
        }
        Ok(total)
    }
}
