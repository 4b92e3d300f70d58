//! Convolution algebras over a finite decomposition structure.
//!
//! A [`ConvolutionContext`] is a finite coalgebra given on a basis of cells:
//! every cell carries the list of ways it splits into a left and a right
//! cell, and a counit flag. The dual space of functions on cells is an
//! algebra under
//!
//! ```text
//! (f * g)(c) = sum over (a, b) in split(c) of f(a) g(b)
//! ```
//!
//! Interval algebras of posets, adjacency algebras of digraphs, the object
//! algebras of finite categories, reduced incidence algebras and the
//! morphism algebras of Möbius categories are all instances; each of those
//! modules builds a context and hands the arithmetic over to this one.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rational;

/// Index of a cell inside its context.
pub type Cell = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different convolution contexts")]
    ContextMismatch,
    #[error("context declares {labels} labels but {splittings} splitting lists and {counit} counit flags")]
    ShapeMismatch {
        labels: usize,
        splittings: usize,
        counit: usize,
    },
    #[error("splitting list of cell {cell} refers to unknown cell {missing}")]
    UnknownCell { cell: Cell, missing: Cell },
    #[error("element is not invertible: value at diagonal cell {cell} ({label}) is zero")]
    NotInvertible { cell: Cell, label: String },
    #[error("context has no triangular order: cell {cell} ({label}) lies on a cycle of right factors")]
    NotTriangular { cell: Cell, label: String },
}

/// A coassociativity or counit failure found by [`ConvolutionContext::check_coalgebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoalgebraViolation {
    Coassociativity { cell: Cell },
    LeftCounit { cell: Cell },
    RightCounit { cell: Cell },
}

struct ContextData {
    labels: Vec<String>,
    splittings: Vec<Vec<(Cell, Cell)>>,
    counit: Vec<bool>,
    // Cells ordered so that every right factor b != c of a splitting of c
    // comes before c. `Err` holds a cell on a cycle.
    order: Result<Vec<Cell>, Cell>,
}

/// Finite coalgebra on a set of cells. Cheap to clone; clones compare equal
/// under [`ConvolutionContext::same_as`].
#[derive(Clone)]
pub struct ConvolutionContext {
    data: Arc<ContextData>,
}

impl fmt::Debug for ConvolutionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConvolutionContext")
            .field("cells", &self.len())
            .field("splittings", &self.splitting_count())
            .field("triangular", &self.data.order.is_ok())
            .finish()
    }
}

impl ConvolutionContext {
    pub fn new(
        labels: Vec<String>,
        splittings: Vec<Vec<(Cell, Cell)>>,
        counit: Vec<bool>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if splittings.len() != n || counit.len() != n {
            return Err(AlgebraError::ShapeMismatch {
                labels: n,
                splittings: splittings.len(),
                counit: counit.len(),
            });
        }
        for (cell, split) in splittings.iter().enumerate() {
            for &(a, b) in split {
                if a >= n || b >= n {
                    return Err(AlgebraError::UnknownCell {
                        cell,
                        missing: a.max(b),
                    });
                }
            }
        }
        let order = triangular_order(&splittings);
        Ok(Self {
            data: Arc::new(ContextData {
                labels,
                splittings,
                counit,
                order,
            }),
        })
    }

    pub fn len(&self) -> usize {
        self.data.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.labels.is_empty()
    }

    pub fn label(&self, cell: Cell) -> &str {
        &self.data.labels[cell]
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    pub fn splittings(&self, cell: Cell) -> &[(Cell, Cell)] {
        &self.data.splittings[cell]
    }

    pub fn splitting_count(&self) -> usize {
        self.data.splittings.iter().map(Vec::len).sum()
    }

    pub fn is_counit(&self, cell: Cell) -> bool {
        self.data.counit[cell]
    }

    pub fn counit_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.len()).filter(move |&c| self.data.counit[c])
    }

    /// The recursion order used by [`invert`], if one exists.
    pub fn triangular_order(&self) -> Result<&[Cell], AlgebraError> {
        match &self.data.order {
            Ok(order) => Ok(order),
            Err(cell) => Err(AlgebraError::NotTriangular {
                cell: *cell,
                label: self.label(*cell).to_string(),
            }),
        }
    }

    pub fn same_as(&self, other: &ConvolutionContext) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    pub fn zero(&self) -> IncidenceElement {
        IncidenceElement {
            ctx: self.clone(),
            values: BTreeMap::new(),
        }
    }

    /// The counit, which is the two-sided unit of the algebra.
    pub fn unit(&self) -> IncidenceElement {
        self.from_fn(|c| {
            if self.is_counit(c) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// The element that is `1` on every cell.
    pub fn zeta(&self) -> IncidenceElement {
        self.from_fn(|_| Rational::one())
    }

    pub fn from_fn(&self, mut f: impl FnMut(Cell) -> Rational) -> IncidenceElement {
        let mut e = self.zero();
        for c in 0..self.len() {
            e.set(c, f(c));
        }
        e
    }

    pub fn element(&self, values: impl IntoIterator<Item = (Cell, Rational)>) -> IncidenceElement {
        let mut e = self.zero();
        for (c, v) in values {
            assert!(c < self.len(), "cell {c} out of range");
            e.set(c, v);
        }
        e
    }

    /// Checks coassociativity and both counit laws cell by cell.
    pub fn check_coalgebra(&self) -> Result<(), CoalgebraViolation> {
        for c in 0..self.len() {
            let mut left = Vec::new();
            for &(a, x) in self.splittings(c) {
                for &(b, d) in self.splittings(x) {
                    left.push((a, b, d));
                }
            }
            let mut right = Vec::new();
            for &(y, d) in self.splittings(c) {
                for &(a, b) in self.splittings(y) {
                    right.push((a, b, d));
                }
            }
            left.sort_unstable();
            right.sort_unstable();
            if left != right {
                return Err(CoalgebraViolation::Coassociativity { cell: c });
            }

            // (eps (x) 1) Delta c = c and (1 (x) eps) Delta c = c, coefficientwise.
            let mut lhs: BTreeMap<Cell, i64> = BTreeMap::new();
            let mut rhs: BTreeMap<Cell, i64> = BTreeMap::new();
            for &(a, b) in self.splittings(c) {
                if self.is_counit(a) {
                    *lhs.entry(b).or_default() += 1;
                }
                if self.is_counit(b) {
                    *rhs.entry(a).or_default() += 1;
                }
            }
            lhs.retain(|_, v| *v != 0);
            rhs.retain(|_, v| *v != 0);
            let expected: BTreeMap<Cell, i64> = [(c, 1)].into_iter().collect();
            if lhs != expected {
                return Err(CoalgebraViolation::LeftCounit { cell: c });
            }
            if rhs != expected {
                return Err(CoalgebraViolation::RightCounit { cell: c });
            }
        }
        Ok(())
    }
}

fn triangular_order(splittings: &[Vec<(Cell, Cell)>]) -> Result<Vec<Cell>, Cell> {
    let n = splittings.len();
    let mut indegree = vec![0usize; n];
    let mut dependents: Vec<Vec<Cell>> = vec![Vec::new(); n];
    for (c, split) in splittings.iter().enumerate() {
        for &(_, b) in split {
            if b != c {
                dependents[b].push(c);
                indegree[c] += 1;
            }
        }
    }
    let mut queue: VecDeque<Cell> = (0..n).filter(|&c| indegree[c] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(b) = queue.pop_front() {
        order.push(b);
        for &c in &dependents[b] {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).find(|&c| indegree[c] > 0).unwrap())
    }
}

/// A function on the cells of a context. Cells that are absent are zero.
#[derive(Clone)]
pub struct IncidenceElement {
    ctx: ConvolutionContext,
    values: BTreeMap<Cell, Rational>,
}

impl PartialEq for IncidenceElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.values == other.values
    }
}

impl Eq for IncidenceElement {}

impl fmt::Debug for IncidenceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.values
                    .iter()
                    .map(|(c, v)| (self.ctx.label(*c), v.to_string())),
            )
            .finish()
    }
}

impl IncidenceElement {
    pub fn context(&self) -> &ConvolutionContext {
        &self.ctx
    }

    pub fn get(&self, cell: Cell) -> Rational {
        self.values.get(&cell).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, cell: Cell, value: Rational) {
        if value.is_zero() {
            self.values.remove(&cell);
        } else {
            self.values.insert(cell, value);
        }
    }

    /// Nonzero entries in cell order.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, &Rational)> {
        self.values.iter().map(|(c, v)| (*c, v))
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    /// Nonzero entries keyed by cell label, for comparing across contexts.
    pub fn by_label(&self) -> BTreeMap<String, Rational> {
        self.values
            .iter()
            .map(|(c, v)| (self.ctx.label(*c).to_string(), v.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &IncidenceElement) -> Result<IncidenceElement, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (c, v) in other.iter() {
            let sum = out.get(c) + v;
            out.set(c, sum);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> IncidenceElement {
        let mut out = self.ctx.zero();
        for (c, v) in self.iter() {
            out.set(c, v * k);
        }
        out
    }

    fn check_same(&self, other: &IncidenceElement) -> Result<(), AlgebraError> {
        if self.ctx.same_as(&other.ctx) {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    fn dense(&self) -> Vec<Option<&Rational>> {
        let mut d = vec![None; self.ctx.len()];
        for (c, v) in self.iter() {
            d[c] = Some(v);
        }
        d
    }
}

/// `(f * g)(c) = sum over (a, b) in split(c) of f(a) g(b)`.
pub fn convolve(
    f: &IncidenceElement,
    g: &IncidenceElement,
) -> Result<IncidenceElement, AlgebraError> {
    f.check_same(g)?;
    let ctx = f.context();
    let (fd, gd) = (f.dense(), g.dense());
    let mut out = ctx.zero();
    for c in 0..ctx.len() {
        let mut acc = Rational::zero();
        for &(a, b) in ctx.splittings(c) {
            if let (Some(x), Some(y)) = (fd[a], gd[b]) {
                acc += x * y;
            }
        }
        out.set(c, acc);
    }
    Ok(out)
}

/// Over the rationals an element is a unit exactly when it is nonzero on
/// every counit cell.
pub fn is_unit(f: &IncidenceElement) -> bool {
    f.context().counit_cells().all(|c| f.values.contains_key(&c))
}

/// The two-sided inverse of `f`.
///
/// Solves `f * g = eps` one cell at a time in triangular order:
/// `g(c) = (eps(c) - sum_{(a,b), b != c} f(a) g(b)) / sum_{(a,c)} f(a)`.
/// In a finite algebra a right inverse is also a left inverse.
pub fn invert(f: &IncidenceElement) -> Result<IncidenceElement, AlgebraError> {
    let ctx = f.context();
    if let Some(cell) = ctx.counit_cells().find(|c| !f.values.contains_key(c)) {
        return Err(AlgebraError::NotInvertible {
            cell,
            label: ctx.label(cell).to_string(),
        });
    }
    let order = ctx.triangular_order()?;
    let fd = f.dense();
    let mut g: Vec<Rational> = vec![Rational::zero(); ctx.len()];
    for &c in order {
        let mut rest = if ctx.is_counit(c) {
            Rational::one()
        } else {
            Rational::zero()
        };
        let mut diagonal = Rational::zero();
        for &(a, b) in ctx.splittings(c) {
            let Some(fa) = fd[a] else { continue };
            if b == c {
                diagonal += fa;
            } else if !g[b].is_zero() {
                rest -= fa * &g[b];
            }
        }
        if diagonal.is_zero() {
            return Err(AlgebraError::NotInvertible {
                cell: c,
                label: ctx.label(c).to_string(),
            });
        }
        g[c] = rest / diagonal;
    }
    Ok(ctx.element(g.into_iter().enumerate()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    // Intervals of the chain 0 < 1 < 2, cells [0,0],[1,1],[2,2],[0,1],[1,2],[0,2].
    fn chain3() -> ConvolutionContext {
        let labels = ["[0,0]", "[1,1]", "[2,2]", "[0,1]", "[1,2]", "[0,2]"]
            .map(String::from)
            .to_vec();
        let splittings = vec![
            vec![(0, 0)],
            vec![(1, 1)],
            vec![(2, 2)],
            vec![(0, 3), (3, 1)],
            vec![(1, 4), (4, 2)],
            vec![(0, 5), (3, 4), (5, 2)],
        ];
        let counit = vec![true, true, true, false, false, false];
        ConvolutionContext::new(labels, splittings, counit).unwrap()
    }

    #[test]
    fn unit_is_two_sided() {
        let ctx = chain3();
        let f = ctx.from_fn(|c| int(c as i64 - 2));
        let eps = ctx.unit();
        assert_eq!(convolve(&eps, &f).unwrap(), f);
        assert_eq!(convolve(&f, &eps).unwrap(), f);
    }

    #[test]
    fn zeta_squared_counts_splittings() {
        let ctx = chain3();
        let z = ctx.zeta();
        let zz = convolve(&z, &z).unwrap();
        assert_eq!(zz.get(5), int(3));
        assert_eq!(zz.get(3), int(2));
        assert_eq!(zz.get(0), int(1));
    }

    #[test]
    fn chain_mobius() {
        let ctx = chain3();
        let mu = invert(&ctx.zeta()).unwrap();
        assert_eq!(mu.get(0), int(1));
        assert_eq!(mu.get(3), int(-1));
        assert_eq!(mu.get(5), int(0));
        assert_eq!(invert(&ctx.unit()).unwrap(), ctx.unit());
    }

    #[test]
    fn unit_criterion() {
        let ctx = chain3();
        assert!(is_unit(&ctx.zeta()));
        assert!(!is_unit(&ctx.zero()));
        let mut f = ctx.zeta();
        f.set(1, int(0));
        assert!(!is_unit(&f));
        match invert(&f) {
            Err(AlgebraError::NotInvertible { cell, .. }) => assert_eq!(cell, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inverse_with_rational_diagonal() {
        let ctx = chain3();
        let f = ctx.from_fn(|c| if c < 3 { int(2) } else { int(1) });
        let g = invert(&f).unwrap();
        assert_eq!(g.get(0), ratio(1, 2));
        assert_eq!(convolve(&f, &g).unwrap(), ctx.unit());
        assert_eq!(convolve(&g, &f).unwrap(), ctx.unit());
    }

    #[test]
    fn mismatched_contexts_rejected() {
        let (a, b) = (chain3(), chain3());
        assert_eq!(
            convolve(&a.zeta(), &b.zeta()).unwrap_err(),
            AlgebraError::ContextMismatch
        );
    }

    #[test]
    fn coalgebra_laws() {
        assert_eq!(chain3().check_coalgebra(), Ok(()));
        // Drop a splitting so the right counit law breaks at [0,1].
        let broken = ConvolutionContext::new(
            vec!["x".into(), "y".into(), "f".into()],
            vec![vec![(0, 0)], vec![(1, 1)], vec![(0, 2)]],
            vec![true, true, false],
        )
        .unwrap();
        assert_eq!(
            broken.check_coalgebra(),
            Err(CoalgebraViolation::RightCounit { cell: 2 })
        );
    }

    #[test]
    fn cyclic_context_is_not_triangular() {
        // Z/2 as a one-object category: 1 = g.g, so 1 and g depend on each other.
        let ctx = ConvolutionContext::new(
            vec!["1".into(), "g".into()],
            vec![vec![(0, 0), (1, 1)], vec![(0, 1), (1, 0)]],
            vec![true, false],
        )
        .unwrap();
        assert!(ctx.triangular_order().is_err());
        assert!(matches!(
            invert(&ctx.zeta()),
            Err(AlgebraError::NotTriangular { .. })
        ));
        // Convolution still works.
        let z = ctx.zeta();
        assert_eq!(convolve(&z, &z).unwrap().get(0), int(2));
    }

    #[test]
    fn bad_shape() {
        assert!(matches!(
            ConvolutionContext::new(vec!["a".into()], vec![vec![(0, 3)]], vec![true]),
            Err(AlgebraError::UnknownCell { cell: 0, missing: 3 })
        ));
    }
}
