//! Finite posets and everything built directly on their intervals.

mod families;
mod incidence;
mod leinster;
mod reduced;

use std::collections::HashMap;

use thiserror::Error;

pub use families::{family, Family};
pub use incidence::{EtaVariant, IncidenceAlgebra, InversionDirection};
pub use leinster::{embed_to_matrix, invert_matrix, is_transitive, matrix_mul, Matrix};
pub use reduced::{is_isomorphic, reduced_context, IntervalClass, ReducedAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("relation is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    Cycle(String, String),
    #[error("`{0}` is not below `{1}`")]
    NotBelow(String, String),
    #[error("`{0}` is not strictly below `{1}`")]
    NotStrictlyBelow(String, String),
    #[error("{family}({param}) exceeds the supported bound {max}")]
    BoundExceeded {
        family: &'static str,
        param: u64,
        max: u64,
    },
    #[error("element `{0}` is not above the base point")]
    OutsideUpSet(String),
    #[error("element is not invertible: zero at [{0},{0}]")]
    NotInvertible(String),
}

/// How the pairs handed to [`Poset::new`] were meant. Both modes take the
/// reflexive-transitive closure; cover mode just documents that only the
/// covering pairs were listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationMode {
    Full,
    Cover,
}

/// A finite partially ordered set on elements `0..len()`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    // leq[x * n + y] is true iff x <= y
    leq: Vec<bool>,
    extension: Vec<usize>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.labels)
            .field("covers", &self.cover_pairs_labelled())
            .finish()
    }
}

impl Poset {
    pub fn new<S: Into<String>>(
        elements: Vec<S>,
        pairs: &[(usize, usize)],
        _mode: RelationMode,
    ) -> Result<Self, PosetError> {
        let labels: Vec<String> = elements.into_iter().map(Into::into).collect();
        let n = labels.len();
        let index = index_labels(&labels)?;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(PosetError::IndexOutOfRange(a.max(b)));
            }
            leq[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(Self::assemble(labels, index, leq))
    }

    /// Builds a poset from labelled pairs.
    pub fn from_labels(
        elements: Vec<String>,
        pairs: &[(String, String)],
        mode: RelationMode,
    ) -> Result<Self, PosetError> {
        let index = index_labels(&elements)?;
        let lookup = |s: &String| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| PosetError::UnknownElement(s.clone()))
        };
        let pairs = pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, PosetError>>()?;
        Self::new(elements, &pairs, mode)
    }

    /// Trusted constructor for relations known to be partial orders.
    pub(crate) fn from_order_fn(labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let index = index_labels(&labels).expect("family labels are distinct");
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = x == y || le(x, y);
            }
        }
        Self::assemble(labels, index, leq)
    }

    fn assemble(labels: Vec<String>, index: HashMap<String, usize>, leq: Vec<bool>) -> Self {
        let n = labels.len();
        let below: Vec<usize> = (0..n)
            .map(|y| (0..n).filter(|&x| leq[x * n + y]).count())
            .collect();
        let mut extension: Vec<usize> = (0..n).collect();
        extension.sort_by_key(|&x| (below[x], x));
        Self {
            labels,
            index,
            leq,
            extension,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, PosetError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(label.to_string()))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `x` is covered by `y`: `x < y` with nothing strictly between.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && !(0..self.len()).any(|z| self.lt(x, z) && self.lt(z, y))
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.covers(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn cover_pairs_labelled(&self) -> Vec<(&str, &str)> {
        self.cover_pairs()
            .into_iter()
            .map(|(x, y)| (self.label(x), self.label(y)))
            .collect()
    }

    /// All pairs `x <= y`, in index order.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.leq(x, y))
            .collect()
    }

    pub(crate) fn check_leq(&self, x: usize, y: usize) -> Result<(), PosetError> {
        self.check_index(x)?;
        self.check_index(y)?;
        if self.leq(x, y) {
            Ok(())
        } else {
            Err(PosetError::NotBelow(self.labels[x].clone(), self.labels[y].clone()))
        }
    }

    pub(crate) fn check_lt(&self, x: usize, y: usize) -> Result<(), PosetError> {
        self.check_index(x)?;
        self.check_index(y)?;
        if self.lt(x, y) {
            Ok(())
        } else {
            Err(PosetError::NotStrictlyBelow(
                self.labels[x].clone(),
                self.labels[y].clone(),
            ))
        }
    }

    pub(crate) fn check_index(&self, x: usize) -> Result<(), PosetError> {
        if x < self.len() {
            Ok(())
        } else {
            Err(PosetError::IndexOutOfRange(x))
        }
    }

    /// Elements ordered so that `x < y` implies `x` comes first.
    pub fn linear_extension(&self) -> &[usize] {
        &self.extension
    }

    /// Elements of `[x, y]` in a linear extension order (empty if `x` is not below `y`).
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        if !self.leq(x, y) {
            return Vec::new();
        }
        self.extension
            .iter()
            .copied()
            .filter(|&z| self.leq(x, z) && self.leq(z, y))
            .collect()
    }

    pub fn up_set(&self, base: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(base, y)).collect()
    }

    /// The induced order on a subset, keeping labels.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let labels = elements.iter().map(|&x| self.labels[x].clone()).collect();
        Poset::from_order_fn(labels, |i, j| self.leq(elements[i], elements[j]))
    }

    /// The open interval `(x, y)` as an induced subposet.
    pub fn open_interval(&self, x: usize, y: usize) -> Result<Poset, PosetError> {
        self.check_lt(x, y)?;
        let inner: Vec<usize> = self
            .interval(x, y)
            .into_iter()
            .filter(|&z| z != x && z != y)
            .collect();
        Ok(self.induced(&inner))
    }

    /// Adjoins a new minimum and maximum; they get indices `len()` and `len() + 1`.
    pub fn with_bottom_top(&self) -> Poset {
        let fresh = |base: &str| {
            let mut name = base.to_string();
            while self.index.contains_key(&name) {
                name.push('\'');
            }
            name
        };
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(fresh("0^"));
        labels.push(fresh("1^"));
        Poset::from_order_fn(labels, |i, j| match (i, j) {
            _ if i == n || j == n + 1 => true,
            _ if i == n + 1 || j == n => false,
            _ => self.leq(i, j),
        })
    }

    /// Componentwise order on pairs; `(a, b)` has index `a * other.len() + b`.
    pub fn product(&self, other: &Poset) -> Poset {
        let m = other.len();
        let mut labels = Vec::with_capacity(self.len() * m);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("({a},{b})"));
            }
        }
        Poset::from_order_fn(labels, |i, j| {
            self.leq(i / m, j / m) && other.leq(i % m, j % m)
        })
    }

    /// Number of maximal chains of `[x, y]`, i.e. saturated chains from `x` to `y`.
    pub fn maximal_chain_count(&self, x: usize, y: usize) -> Result<u128, PosetError> {
        self.check_leq(x, y)?;
        let elems = self.interval(x, y);
        let mut count: HashMap<usize, u128> = HashMap::new();
        for &z in &elems {
            let c = if z == x {
                1
            } else {
                elems
                    .iter()
                    .filter(|&&w| self.covers(w, z))
                    .map(|w| count.get(w).copied().unwrap_or(0))
                    .sum()
            };
            count.insert(z, c);
        }
        Ok(count[&y])
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>, PosetError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(PosetError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset {
        family(Family::Chain(n)).unwrap()
    }

    #[test]
    fn single_element() {
        let p = Poset::new(vec!["a"], &[], RelationMode::Cover).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.leq(0, 0));
    }

    #[test]
    fn cover_input_is_closed() {
        let p = Poset::new(vec!["0", "1", "2"], &[(0, 1), (1, 2)], RelationMode::Cover).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        assert!(p.covers(0, 1));
        assert!(!p.covers(0, 2));
    }

    #[test]
    fn cycle_rejected() {
        let err = Poset::new(vec!["a", "b"], &[(0, 1), (1, 0)], RelationMode::Full).unwrap_err();
        assert_eq!(err, PosetError::Cycle("a".into(), "b".into()));
    }

    #[test]
    fn duplicate_and_unknown_labels() {
        assert_eq!(
            Poset::new(vec!["a", "a"], &[], RelationMode::Full).unwrap_err(),
            PosetError::DuplicateLabel("a".into())
        );
        assert_eq!(
            Poset::from_labels(
                vec!["a".into()],
                &[("a".into(), "z".into())],
                RelationMode::Full
            )
            .unwrap_err(),
            PosetError::UnknownElement("z".into())
        );
    }

    #[test]
    fn product_with_point_is_isomorphic() {
        let p = family(Family::Diamond).unwrap();
        let point = chain(0);
        assert!(is_isomorphic(&p.product(&point), &p));
    }

    #[test]
    fn divisors_of_six_is_square_of_chain() {
        let d6 = family(Family::Divisors(6)).unwrap();
        let sq = chain(1).product(&chain(1));
        // Explicit map by (2-exponent, 3-exponent).
        let image = |label: &str| {
            let n: u64 = label.parse().unwrap();
            let a = usize::from(n % 2 == 0);
            let b = usize::from(n % 3 == 0);
            a * 2 + b
        };
        for x in 0..d6.len() {
            for y in 0..d6.len() {
                assert_eq!(
                    d6.leq(x, y),
                    sq.leq(image(d6.label(x)), image(d6.label(y)))
                );
            }
        }
    }

    #[test]
    fn open_interval_and_bounds() {
        let b3 = family(Family::Boolean(3)).unwrap();
        let bot = b3.index_of("{}").unwrap();
        let top = b3.index_of("{1,2,3}").unwrap();
        let open = b3.open_interval(bot, top).unwrap();
        assert_eq!(open.len(), 6);
        assert!(b3.open_interval(top, bot).is_err());
        let closed = open.with_bottom_top();
        assert!(is_isomorphic(&closed, &b3));
    }

    #[test]
    fn maximal_chains() {
        let d = family(Family::Diamond).unwrap();
        assert_eq!(d.maximal_chain_count(0, 3).unwrap(), 2);
        assert_eq!(chain(2).maximal_chain_count(0, 2).unwrap(), 1);
        assert_eq!(
            family(Family::Boolean(3)).unwrap().maximal_chain_count(0, 7).unwrap(),
            6
        );
    }
}
