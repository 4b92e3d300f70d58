//! Decompositions of morphisms in finite categories.
//!
//! An `n`-decomposition of `f` is a composable tuple `(f_1, ..., f_n)` with
//! `f_n ∘ ... ∘ f_1 = f`; it is proper when no factor is an identity. The
//! first half of this module works with morphisms themselves (Möbius
//! categories, the morphism convolution algebra, the bar complex). The second
//! half works up to isomorphism: tuples are identified under level-wise
//! vertical isomorphisms, endpoints included, and counted either as classes
//! or by groupoid cardinality.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{self, AlgebraError, ConvolutionContext, IncidenceElement};
use crate::fincat::{action_orbits, essential_mobius, FinCatError, FinCategory, IsoClassIndex};
use crate::poset::{IncidenceAlgebra, Poset};
use crate::rational::{self, Rational};
use crate::topology::integer_rank;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("not a Möbius category: {0}")]
    NotMobius(String),
    #[error("`{0}` is an identity; the bar complex is defined for non-identities")]
    IdentityMorphism(String),
    #[error("not isomorphism filling: {0}")]
    NotFilling(FillingWitness),
    #[error("{what} = {value} is outside {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error(transparent)]
    Category(#[from] FinCatError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub factors: Vec<usize>,
    pub composite: usize,
}

/// Composable tuples `(f_1, ..., f_n)` out of `start` whose factors pass
/// `factor_ok` and whose composite passes `target`. Partial composites are
/// pruned to left factors of some accepted morphism.
fn factor_search(
    cat: &FinCategory,
    start: usize,
    n: usize,
    factor_ok: &dyn Fn(usize) -> bool,
    target: &dyn Fn(usize) -> bool,
) -> Vec<Vec<usize>> {
    let m = cat.morphism_count();
    let mut by_src = vec![Vec::new(); cat.object_count()];
    for f in 0..m {
        if factor_ok(f) {
            by_src[cat.src(f)].push(f);
        }
    }
    let prefix: Vec<bool> = (0..m)
        .map(|g| {
            cat.src(g) == start
                && (0..m).any(|h| cat.src(h) == cat.tgt(g) && target(cat.compose_known(h, g)))
        })
        .collect();
    let mut out = Vec::new();
    if n == 0 {
        if target(cat.identity(start)) {
            out.push(Vec::new());
        }
        return out;
    }
    let mut tuple = Vec::with_capacity(n);
    search(cat, &by_src, &prefix, target, n, cat.identity(start), &mut tuple, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    cat: &FinCategory,
    by_src: &[Vec<usize>],
    prefix: &[bool],
    target: &dyn Fn(usize) -> bool,
    n: usize,
    partial: usize,
    tuple: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let last = tuple.len() + 1 == n;
    for &f in &by_src[cat.tgt(partial)] {
        let next = cat.compose_known(f, partial);
        if (last && target(next)) || (!last && prefix[next]) {
            tuple.push(f);
            if last {
                out.push(tuple.clone());
            } else {
                search(cat, by_src, prefix, target, n, next, tuple, out);
            }
            tuple.pop();
        }
    }
}

fn decompositions(cat: &FinCategory, f: usize, n: usize, proper: bool) -> Vec<Decomposition> {
    let factor_ok = |g: usize| !proper || !cat.is_identity(g);
    factor_search(cat, cat.src(f), n, &factor_ok, &|c| c == f)
        .into_iter()
        .map(|factors| Decomposition { factors, composite: f })
        .collect()
}

/// `D_n f`. For `n = 0` this is the empty tuple when `f` is an identity.
pub fn enumerate_dn(cat: &FinCategory, f: usize, n: usize) -> Vec<Decomposition> {
    decompositions(cat, f, n, false)
}

/// `PD_n f`: decompositions with no identity factor, except that
/// `PD_1 f = D_1 f = {f}` for every `f`.
pub fn enumerate_pdn(cat: &FinCategory, f: usize, n: usize) -> Vec<Decomposition> {
    if n == 1 {
        return vec![Decomposition {
            factors: vec![f],
            composite: f,
        }];
    }
    decompositions(cat, f, n, true)
}

fn binomial(n: usize, k: usize) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Counts behind `|D_n f| = Σ_k C(n,k) |PD_k f|` and its inverse.
///
/// Here `PD_k` is taken literally (no identity factors, for every `k`), so an
/// identity has exactly one proper decomposition, the empty one, and
/// `pd[1] = 0` for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialCheck {
    /// `|D_k f|` for `k = 0..=n`.
    pub d: Vec<usize>,
    /// `|PD_k f|` for `k = 0..=n`.
    pub pd: Vec<usize>,
    pub forward: bool,
    pub inverse: bool,
}

impl BinomialCheck {
    pub fn holds(&self) -> bool {
        self.forward && self.inverse
    }
}

pub fn binomial_transform_check(cat: &FinCategory, f: usize, n: usize) -> BinomialCheck {
    let d: Vec<usize> = (0..=n).map(|k| enumerate_dn(cat, f, k).len()).collect();
    let pd: Vec<usize> = (0..=n).map(|k| decompositions(cat, f, k, true).len()).collect();
    let forward = (0..=n).all(|j| {
        d[j] as i128 == (0..=j).map(|k| binomial(j, k) * pd[k] as i128).sum::<i128>()
    });
    let inverse = (0..=n).all(|j| {
        let alt: i128 = (0..=j)
            .map(|k| {
                let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
                sign * binomial(j, k) * d[k] as i128
            })
            .sum();
        pd[j] as i128 == alt
    });
    BinomialCheck {
        d,
        pd,
        forward,
        inverse,
    }
}

/// Both characterizations of Möbius categories, evaluated on the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LerouxReport {
    /// Non-identities `(a, b)` with `b ∘ a` an identity.
    pub identity_decomposition: Option<(usize, usize)>,
    /// A non-identity `f` and a `g` with `f g = g` or `g f = g`.
    pub fixing: Option<(usize, usize)>,
    pub one_way: bool,
    pub locally_finite: bool,
}

impl LerouxReport {
    pub fn leroux(&self) -> bool {
        self.identity_decomposition.is_none() && self.fixing.is_none()
    }

    pub fn one_way_criterion(&self) -> bool {
        self.one_way && self.locally_finite
    }
}

pub fn leroux_report(cat: &FinCategory) -> LerouxReport {
    let table = cat.table();
    // a proper decomposition of an identity yields one of length two
    let identity_decomposition = table
        .iter()
        .find(|&&(b, a, c)| cat.is_identity(c) && !cat.is_identity(a) && !cat.is_identity(b))
        .map(|&(b, a, _)| (a, b));
    let fixing = table.iter().find_map(|&(g, f, c)| {
        if c == f && !cat.is_identity(g) {
            Some((g, f))
        } else if c == g && !cat.is_identity(f) {
            Some((f, g))
        } else {
            None
        }
    });
    let n = cat.object_count();
    let one_way = (0..n).all(|x| {
        cat.hom(x, x).len() == 1
            && ((x + 1)..n).all(|y| cat.hom(x, y).is_empty() || cat.hom(y, x).is_empty())
    });
    LerouxReport {
        identity_decomposition,
        fixing,
        one_way,
        locally_finite: cat.is_locally_finite(),
    }
}

pub fn is_mobius_category(cat: &FinCategory) -> bool {
    leroux_report(cat).leroux()
}

fn require_mobius(cat: &FinCategory) -> Result<(), DecompError> {
    let r = leroux_report(cat);
    let id = |f: usize| cat.morphism(f).id.as_str();
    if let Some((a, b)) = r.identity_decomposition {
        return Err(DecompError::NotMobius(format!(
            "`{}` ∘ `{}` is an identity",
            id(b),
            id(a)
        )));
    }
    if let Some((f, g)) = r.fixing {
        return Err(DecompError::NotMobius(format!("`{}` fixes `{}`", id(f), id(g))));
    }
    Ok(())
}

/// The convolution algebra on morphisms:
/// `(α ⋆ β)(f) = Σ_{g ∘ h = f} α(h) β(g)`, with unit supported on identities.
#[derive(Debug, Clone)]
pub struct MorphismAlgebra {
    cat: FinCategory,
    ctx: ConvolutionContext,
}

impl MorphismAlgebra {
    pub fn new(cat: &FinCategory) -> Self {
        let m = cat.morphism_count();
        let mut splittings = vec![Vec::new(); m];
        for (g, f, c) in cat.table() {
            splittings[c].push((f, g));
        }
        let labels = cat.morphisms().iter().map(|f| f.id.clone()).collect();
        let counit = (0..m).map(|f| cat.is_identity(f)).collect();
        let ctx = ConvolutionContext::new(labels, splittings, counit)
            .expect("composition table cells are in range");
        Self {
            cat: cat.clone(),
            ctx,
        }
    }

    pub fn category(&self) -> &FinCategory {
        &self.cat
    }

    pub fn context(&self) -> &ConvolutionContext {
        &self.ctx
    }

    pub fn xi(&self) -> IncidenceElement {
        self.ctx.zeta()
    }

    pub fn unit(&self) -> IncidenceElement {
        self.ctx.unit()
    }

    pub fn from_fn(&self, f: impl FnMut(usize) -> Rational) -> IncidenceElement {
        self.ctx.from_fn(f)
    }

    pub fn convolve(&self, a: &IncidenceElement, b: &IncidenceElement) -> Result<IncidenceElement, DecompError> {
        Ok(algebra::convolve(a, b)?)
    }

    pub fn mobius(&self) -> Result<IncidenceElement, DecompError> {
        require_mobius(&self.cat)?;
        Ok(algebra::invert(&self.xi())?)
    }
}

/// `μ = ξ⁻¹` in the morphism algebra of a Möbius category.
pub fn morphism_mobius(cat: &FinCategory) -> Result<IncidenceElement, DecompError> {
    MorphismAlgebra::new(cat).mobius()
}

/// `|PD_n f|` for `n = 1, 2, ...` up to the last nonempty level. In a Möbius
/// category merging two adjacent factors keeps a decomposition proper, so the
/// first empty level ends the sequence; the number of non-identity morphisms
/// bounds the length regardless.
pub fn proper_decomposition_counts(cat: &FinCategory, f: usize) -> Vec<usize> {
    let cap = (cat.morphism_count() - cat.object_count()).max(1);
    let mut counts = Vec::new();
    for n in 1..=cap {
        let c = enumerate_pdn(cat, f, n).len();
        if c == 0 {
            break;
        }
        counts.push(c);
    }
    counts
}

/// `μ f = Σ_n (-1)^n |PD_n f|`, and `μ(1_x) = 1`.
pub fn mobius_by_proper_decompositions(cat: &FinCategory, f: usize) -> Result<i64, DecompError> {
    require_mobius(cat)?;
    if cat.is_identity(f) {
        return Ok(1);
    }
    Ok(alternating(&proper_decomposition_counts(cat, f)))
}

fn alternating(counts_from_one: &[usize]) -> i64 {
    counts_from_one
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { -(c as i64) } else { c as i64 })
        .sum()
}

/// The normalized bar complex of a non-identity `f`: degree `n >= -1` is
/// spanned by `PD_{n+2} f`, and
/// `d[f_1, ..., f_{n+2}] = Σ_{k=1}^{n+1} (-1)^k [f_1, ..., f_{k+1} f_k, ..., f_{n+2}]`.
#[derive(Debug, Clone)]
pub struct BarComplex {
    pub morphism: usize,
    /// `generators[i]` spans degree `i - 1`.
    generators: Vec<Vec<Vec<usize>>>,
    /// `boundaries[i]` maps degree `i` to degree `i - 1`, rows indexed by the target.
    boundaries: Vec<Vec<Vec<i64>>>,
}

impl BarComplex {
    pub fn new(cat: &FinCategory, f: usize) -> Result<Self, DecompError> {
        require_mobius(cat)?;
        if cat.is_identity(f) {
            return Err(DecompError::IdentityMorphism(cat.morphism(f).id.clone()));
        }
        let mut generators: Vec<Vec<Vec<usize>>> = Vec::new();
        for n in 1.. {
            let level: Vec<Vec<usize>> = enumerate_pdn(cat, f, n).into_iter().map(|d| d.factors).collect();
            if level.is_empty() {
                break;
            }
            generators.push(level);
        }
        let mut boundaries = Vec::new();
        for i in 1..generators.len() {
            let index: HashMap<&[usize], usize> = generators[i - 1]
                .iter()
                .enumerate()
                .map(|(j, t)| (t.as_slice(), j))
                .collect();
            let mut d = vec![vec![0i64; generators[i].len()]; generators[i - 1].len()];
            for (col, t) in generators[i].iter().enumerate() {
                for k in 0..t.len() - 1 {
                    let mut face = t[..k].to_vec();
                    face.push(cat.compose_known(t[k + 1], t[k]));
                    face.extend_from_slice(&t[k + 2..]);
                    let row = index[face.as_slice()];
                    d[row][col] += if k % 2 == 0 { -1 } else { 1 };
                }
            }
            boundaries.push(d);
        }
        Ok(Self {
            morphism: f,
            generators,
            boundaries,
        })
    }

    /// Highest nonempty degree.
    pub fn top_degree(&self) -> isize {
        self.generators.len() as isize - 2
    }

    pub fn generators(&self, degree: isize) -> &[Vec<usize>] {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| self.generators.get(i))
            .map_or(&[], Vec::as_slice)
    }

    /// `d : C_n → C_{n-1}` for `n >= 0`, rows indexed by `C_{n-1}`.
    pub fn boundary_matrix(&self, degree: isize) -> &[Vec<i64>] {
        usize::try_from(degree)
            .ok()
            .and_then(|i| self.boundaries.get(i))
            .map_or(&[], Vec::as_slice)
    }

    /// `Σ_n (-1)^n dim C_n`.
    pub fn euler_char(&self) -> i64 {
        alternating(&self.generators.iter().map(Vec::len).collect::<Vec<_>>())
    }

    /// `rank H̃_n` for `n = -1..=top_degree`.
    pub fn homology_ranks(&self) -> Vec<usize> {
        let rank = |degree: isize| {
            let m = self.boundary_matrix(degree);
            if m.is_empty() {
                0
            } else {
                integer_rank(m)
            }
        };
        (-1..=self.top_degree())
            .map(|n| self.generators(n).len() - rank(n) - rank(n + 1))
            .collect()
    }

    pub fn homology_euler_char(&self) -> i64 {
        alternating(&self.homology_ranks())
    }

    /// `d ∘ d = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| {
            let (lower, upper) = (&w[0], &w[1]);
            (0..lower.len()).all(|r| {
                (0..upper.first().map_or(0, Vec::len))
                    .all(|c| (0..upper.len()).map(|k| lower[r][k] * upper[k][c]).sum::<i64>() == 0)
            })
        })
    }
}

/// The Möbius function of one morphism by the three routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusRoutes {
    pub morphism: usize,
    pub by_inverse: Rational,
    pub by_proper_decompositions: i64,
    /// `χ̃` of the bar complex from homology ranks; `None` for identities.
    pub by_bar_complex: Option<i64>,
}

impl MobiusRoutes {
    pub fn agree(&self) -> bool {
        let alt = rational::int(self.by_proper_decompositions);
        self.by_inverse == alt && self.by_bar_complex.map_or(true, |b| rational::int(b) == alt)
    }
}

pub fn morphism_mobius_routes(cat: &FinCategory) -> Result<Vec<MobiusRoutes>, DecompError> {
    let mu = morphism_mobius(cat)?;
    (0..cat.morphism_count())
        .map(|f| {
            let by_bar_complex = if cat.is_identity(f) {
                None
            } else {
                Some(BarComplex::new(cat, f)?.homology_euler_char())
            };
            Ok(MobiusRoutes {
                morphism: f,
                by_inverse: mu.get(f),
                by_proper_decompositions: mobius_by_proper_decompositions(cat, f)?,
                by_bar_complex,
            })
        })
        .collect()
}

/// `g ∘ f = h ∘ f ⇒ g = h`.
pub fn is_right_cancellative(cat: &FinCategory) -> bool {
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    cat.table().into_iter().all(|(_, f, c)| seen.insert((f, c)))
}

/// `f ≤ g` iff `g = h ∘ f` for some `h`, on the morphisms of a Möbius category.
#[derive(Debug, Clone)]
pub struct MorphismOrder {
    pub poset: Poset,
    pub alg: IncidenceAlgebra,
    pub cancellative: bool,
    // (f, h ∘ f) -> h, filled only when the category is right cancellative
    quotient: HashMap<(usize, usize), usize>,
}

pub fn morphism_order(cat: &FinCategory) -> Result<MorphismOrder, DecompError> {
    require_mobius(cat)?;
    let m = cat.morphism_count();
    let mut le = vec![false; m * m];
    let mut quotient = HashMap::new();
    for (h, f, g) in cat.table() {
        le[f * m + g] = true;
        quotient.insert((f, g), h);
    }
    let cancellative = is_right_cancellative(cat);
    if !cancellative {
        quotient.clear();
    }
    let labels = cat.morphisms().iter().map(|f| f.id.clone()).collect();
    let poset = Poset::from_order_fn(labels, |f, g| le[f * m + g]);
    Ok(MorphismOrder {
        alg: IncidenceAlgebra::new(poset.clone()),
        poset,
        cancellative,
        quotient,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingCheck {
    Skipped(String),
    Checked {
        homomorphism: bool,
        unit: bool,
        shift_invariant: bool,
        injective: bool,
    },
}

impl EmbeddingCheck {
    pub fn holds(&self) -> bool {
        matches!(
            self,
            EmbeddingCheck::Checked {
                homomorphism: true,
                unit: true,
                shift_invariant: true,
                injective: true,
            }
        )
    }
}

impl MorphismOrder {
    /// `β̂[f, h f] = β(h)`; `None` unless the category is right cancellative.
    pub fn hat(&self, beta: &IncidenceElement) -> Option<IncidenceElement> {
        if !self.cancellative {
            return None;
        }
        Some(self.alg.from_fn(|f, g| beta.get(self.quotient[&(f, g)])))
    }

    /// Checks that `β ↦ β̂` is a unital, injective algebra map into the
    /// shift-invariant elements, on the given pair.
    pub fn check_embedding(
        &self,
        alg: &MorphismAlgebra,
        a: &IncidenceElement,
        b: &IncidenceElement,
    ) -> Result<EmbeddingCheck, DecompError> {
        if !self.cancellative {
            return Ok(EmbeddingCheck::Skipped(
                "category is not right cancellative; embedding check skipped".into(),
            ));
        }
        let cat = alg.category();
        let hat = |e: &IncidenceElement| self.hat(e).expect("cancellative");
        let (ha, hb) = (hat(a), hat(b));
        let homomorphism = algebra::convolve(&ha, &hb)?.by_label() == hat(&alg.convolve(a, b)?).by_label();
        let unit = hat(&alg.unit()).by_label() == self.alg.unit().by_label();
        let shift_invariant = [&ha, &hb].iter().all(|e| {
            cat.table().into_iter().all(|(g, f, gf)| {
                self.alg.value(e, f, gf) == self.alg.value(e, cat.identity(cat.src(g)), g)
            })
        });
        let injective = [(a, &ha), (b, &hb)].iter().all(|(e, he)| {
            (0..cat.morphism_count()).all(|h| self.alg.value(he, cat.identity(cat.src(h)), h) == e.get(h))
        });
        Ok(EmbeddingCheck::Checked {
            homomorphism,
            unit,
            shift_invariant,
            injective,
        })
    }
}

/// A decomposition of a morphism class: `f_n ∘ ... ∘ f_1 = β⁻¹ ∘ f ∘ α`
/// with `f` the class representative and `α`, `β` automorphisms of its ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoDecomposition {
    pub factors: Vec<usize>,
    pub boundary_isos: (usize, usize),
}

/// Classes of `n`-decompositions of a morphism class under level-wise
/// isomorphisms, with their automorphism counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoDecompositionCensus {
    pub classes: Vec<IsoDecomposition>,
    pub automorphism_counts: Vec<usize>,
    /// `Σ_classes 1 / |Aut|`.
    pub cardinality: Rational,
}

impl IsoDecompositionCensus {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Decompositions of morphism classes in an essentially finite decomposition
/// category (isocyclic and essentially locally finite). Tuples are taken
/// along chains of representative objects, which is a skeleton of the
/// decomposition groupoid.
#[derive(Debug, Clone)]
pub struct ClassDecompositions {
    cat: FinCategory,
    index: IsoClassIndex,
    rep_object: Vec<bool>,
}

impl ClassDecompositions {
    pub fn new(cat: &FinCategory) -> Result<Self, DecompError> {
        cat.require_isocyclic()?;
        cat.require_essentially_locally_finite()?;
        let index = IsoClassIndex::new(cat);
        let mut rep_object = vec![false; cat.object_count()];
        for k in 0..index.object_classes().len() {
            rep_object[index.object_rep(k)] = true;
        }
        Ok(Self {
            cat: cat.clone(),
            index,
            rep_object,
        })
    }

    pub fn category(&self) -> &FinCategory {
        &self.cat
    }

    pub fn index(&self) -> &IsoClassIndex {
        &self.index
    }

    pub fn class_count(&self) -> usize {
        self.index.morphism_classes().len()
    }

    pub fn is_iso_class(&self, class: usize) -> bool {
        self.cat.is_iso(self.index.morphism_rep(class))
    }

    /// `D̄_n f̄` (or `PD̄_n f̄` when `proper`) for `n >= 1`; `PD_1 f̄ = D_1 f̄`.
    pub fn census(&self, class: usize, n: usize, proper: bool) -> IsoDecompositionCensus {
        let cat = &self.cat;
        let rep = self.index.morphism_rep(class);
        let (x, y) = (cat.src(rep), cat.tgt(rep));
        let in_class = |c: usize| self.index.morphism_class(c) == class;
        let tuples = if proper && n == 1 {
            cat.hom(x, y).iter().filter(|&&c| in_class(c)).map(|&c| vec![c]).collect()
        } else {
            let factor_ok = |f: usize| self.rep_object[cat.tgt(f)] && (!proper || !cat.is_iso(f));
            factor_search(cat, x, n, &factor_ok, &|c| in_class(c) && cat.tgt(c) == y)
        };
        let mut by_chain: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
        for t in tuples {
            let mut chain = vec![x];
            chain.extend(t.iter().map(|&f| cat.tgt(f)));
            by_chain.entry(chain).or_default().push(t);
        }
        let mut census = IsoDecompositionCensus {
            classes: Vec::new(),
            automorphism_counts: Vec::new(),
            cardinality: Rational::zero(),
        };
        for (chain, tuples) in by_chain {
            let group: usize = chain.iter().map(|&o| cat.automorphisms(o).len()).product();
            for orbit in action_orbits(cat, &chain, &vec![true; chain.len()], &tuples) {
                census.cardinality += rational::ratio(orbit.size as i64, group as i64);
                census.automorphism_counts.push(group / orbit.size);
                let boundary_isos = self.boundary_isos(rep, &orbit.representative);
                census.classes.push(IsoDecomposition {
                    factors: orbit.representative,
                    boundary_isos,
                });
            }
        }
        census
    }

    fn boundary_isos(&self, rep: usize, factors: &[usize]) -> (usize, usize) {
        let cat = &self.cat;
        let composite = factors[1..].iter().fold(factors[0], |acc, &f| cat.compose_known(f, acc));
        let (x, y) = (cat.src(rep), cat.tgt(rep));
        for &a in &cat.automorphisms(x) {
            let fa = cat.compose_known(rep, a);
            for &b in &cat.automorphisms(y) {
                let inv = cat.inverse(b).expect("automorphism");
                if cat.compose_known(inv, fa) == composite {
                    return (a, b);
                }
            }
        }
        unreachable!("composite lies in the class of the representative")
    }

    /// `|PD_n f̄|_g` for `n = 1, 2, ...` while nonzero. Proper factors are
    /// non-isomorphisms, so in an isocyclic category each one moves strictly
    /// up the quotient poset and the length is bounded by its height.
    pub fn proper_cardinalities(&self, class: usize) -> Vec<Rational> {
        let cap = self.index.object_classes().len().max(1);
        let mut out = Vec::new();
        for n in 1..=cap {
            let c = self.census(class, n, true);
            if c.class_count() == 0 {
                break;
            }
            out.push(c.cardinality);
        }
        out
    }

    /// `χ̃_g D_* f̄ = Σ_n (-1)^n |PD_n f̄|_g`.
    pub fn chi_g(&self, class: usize) -> Rational {
        self.proper_cardinalities(class)
            .into_iter()
            .enumerate()
            .map(|(i, c)| rational::sign(i + 1) * c)
            .sum()
    }

    /// `Σ_n (-1)^n |PD̄_n f̄|` over class counts; `1` on isomorphism classes.
    pub fn alternating_class_count(&self, class: usize) -> i64 {
        if self.is_iso_class(class) {
            return 1;
        }
        let cap = self.index.object_classes().len().max(1);
        let counts: Vec<usize> = (1..=cap)
            .map(|n| self.census(class, n, true).class_count())
            .take_while(|&c| c > 0)
            .collect();
        alternating(&counts)
    }

    /// Class counts behind `|D̄_n f̄| = Σ_k C(n,k) |PD̄_k f̄|`, with the
    /// isomorphism classes given the empty proper decomposition only.
    pub fn binomial_check(&self, class: usize, n: usize) -> BinomialCheck {
        let iso = self.is_iso_class(class);
        let d: Vec<usize> = (0..=n)
            .map(|k| match k {
                0 => usize::from(iso),
                _ => self.census(class, k, false).class_count(),
            })
            .collect();
        let pd: Vec<usize> = (0..=n)
            .map(|k| match (k, iso) {
                (0, _) => usize::from(iso),
                (_, true) => 0,
                _ => self.census(class, k, true).class_count(),
            })
            .collect();
        let forward = (0..=n).all(|j| {
            d[j] as i128 == (0..=j).map(|k| binomial(j, k) * pd[k] as i128).sum::<i128>()
        });
        let inverse = (0..=n).all(|j| {
            let alt: i128 = (0..=j)
                .map(|k| {
                    let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(j, k) * d[k] as i128
                })
                .sum();
            pd[j] as i128 == alt
        });
        BinomialCheck {
            d,
            pd,
            forward,
            inverse,
        }
    }
}

impl ClassDecompositions {
    /// `χ̃_g D_* f̄` summed over the classes `f̄ : x̄ → ȳ`, against
    /// `μ[x̄, ȳ]` of the essential incidence algebra, for every `x̄ < ȳ`.
    pub fn groupoid_euler_check(&self) -> Result<Vec<GroupoidEulerRow>, DecompError> {
        let cat = &self.cat;
        let essential = essential_mobius(cat)?;
        let mu = essential.mobius();
        let p = essential.alg.poset();
        let index = &self.index;
        let mut rows = Vec::new();
        for (a, b) in p.relation_pairs() {
            if a == b {
                continue;
            }
            let (x, y) = (essential.index.object_rep(a), essential.index.object_rep(b));
            let mut sum = Rational::zero();
            for k in 0..index.morphism_classes().len() {
                let r = index.morphism_rep(k);
                if cat.src(r) == x && cat.tgt(r) == y {
                    sum += self.chi_g(k);
                }
            }
            rows.push(GroupoidEulerRow {
                x: a,
                y: b,
                euler_sum: sum,
                mobius: essential.alg.value(&mu, a, b),
            });
        }
        Ok(rows)
    }
}

/// `D̄_n f̄` or `PD̄_n f̄` for the class of `f`.
pub fn enumerate_iso_decompositions(
    cat: &FinCategory,
    f: usize,
    n: usize,
    proper: bool,
) -> Result<IsoDecompositionCensus, DecompError> {
    if n == 0 {
        return Err(DecompError::OutOfRange {
            what: "decomposition length",
            value: n,
            min: 1,
            max: usize::MAX,
        });
    }
    let classes = ClassDecompositions::new(cat)?;
    let class = classes.index().morphism_class(f);
    Ok(classes.census(class, n, proper))
}

/// Two factorizations `g1 ∘ f1 = g2 ∘ f2` through isomorphic objects with no
/// isomorphism `u` between the middles such that `u ∘ f1 = f2`.
///
/// Fillers are only asked to respect the incoming legs. Requiring the
/// outgoing legs as well would exclude finite sets and injections:
/// `∅ → {1} ⇉ {1, 2}` has no such filler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillingWitness {
    pub f1: usize,
    pub g1: usize,
    pub f2: usize,
    pub g2: usize,
    pub ids: [String; 4],
}

impl std::fmt::Display for FillingWitness {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [f1, g1, f2, g2] = &self.ids;
        write!(out, "`{g1}` ∘ `{f1}` = `{g2}` ∘ `{f2}` has no isomorphism filler")
    }
}

pub fn filling_witness(cat: &FinCategory) -> Option<FillingWitness> {
    let mut factorizations: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cat.morphism_count()];
    for (g, f, c) in cat.table() {
        factorizations[c].push((f, g));
    }
    for pairs in &factorizations {
        for (i, &(f1, g1)) in pairs.iter().enumerate() {
            for &(f2, g2) in &pairs[i + 1..] {
                let (z1, z2) = (cat.tgt(f1), cat.tgt(f2));
                if !cat.are_isomorphic(z1, z2) {
                    continue;
                }
                let filled = cat
                    .hom(z1, z2)
                    .iter()
                    .any(|&u| cat.is_iso(u) && cat.compose_known(u, f1) == f2);
                if !filled {
                    let id = |f: usize| cat.morphism(f).id.clone();
                    return Some(FillingWitness {
                        f1,
                        g1,
                        f2,
                        g2,
                        ids: [id(f1), id(g1), id(f2), id(g2)],
                    });
                }
            }
        }
    }
    None
}

pub fn is_isomorphism_filling(cat: &FinCategory) -> bool {
    filling_witness(cat).is_none()
}

/// The convolution algebra on morphism classes,
/// `(α ⋆ β)(f̄) = Σ_{(f_1, f_2) ∈ D̄_2 f̄} α(f̄_1) β(f̄_2)`, and its Möbius function.
#[derive(Debug, Clone)]
pub struct ClassAlgebra {
    pub decompositions: ClassDecompositions,
    pub ctx: ConvolutionContext,
    pub mu: IncidenceElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidEulerRow {
    /// Object classes, as indices of the quotient poset.
    pub x: usize,
    pub y: usize,
    pub euler_sum: Rational,
    pub mobius: Rational,
}

impl GroupoidEulerRow {
    pub fn holds(&self) -> bool {
        self.euler_sum == self.mobius
    }
}

/// Builds the class algebra without requiring isomorphism filling; the
/// result need not be associative.
pub fn class_context(classes: &ClassDecompositions) -> ConvolutionContext {
    let cat = classes.category();
    let index = classes.index();
    let k = classes.class_count();
    let splittings = (0..k)
        .map(|c| {
            classes
                .census(c, 2, false)
                .classes
                .into_iter()
                .map(|d| (index.morphism_class(d.factors[0]), index.morphism_class(d.factors[1])))
                .collect()
        })
        .collect();
    let labels = (0..k).map(|c| format!("[{}]", cat.morphism(index.morphism_rep(c)).id)).collect();
    let counit = (0..k).map(|c| classes.is_iso_class(c)).collect();
    ConvolutionContext::new(labels, splittings, counit).expect("class indices are in range")
}

/// `μ = ξ⁻¹` on morphism classes of an isomorphism filling, essentially
/// finite decomposition category.
pub fn essential_morphism_mobius(cat: &FinCategory) -> Result<ClassAlgebra, DecompError> {
    let decompositions = ClassDecompositions::new(cat)?;
    if let Some(w) = filling_witness(cat) {
        return Err(DecompError::NotFilling(w));
    }
    let ctx = class_context(&decompositions);
    let mu = algebra::invert(&ctx.zeta())?;
    Ok(ClassAlgebra {
        decompositions,
        ctx,
        mu,
    })
}

/// Both sides of `Σ_{k≥2} Σ_{a_1+...+a_k=a} (-1)^k (a; a_1,...,a_k) = (-1)^a + 1`.
pub fn exercise_identity(a: usize) -> Result<(i64, i64), DecompError> {
    if !(2..=12).contains(&a) {
        return Err(DecompError::OutOfRange {
            what: "a",
            value: a,
            min: 2,
            max: 12,
        });
    }
    let fact: Vec<i64> = (0..=a as i64).scan(1i64, |acc, i| {
        if i > 0 {
            *acc *= i;
        }
        Some(*acc)
    }).collect();
    // compositions of a, one per subset of the a-1 cut points
    let mut lhs = 0i64;
    for cuts in 0u32..(1 << (a - 1)) {
        let k = cuts.count_ones() as usize + 1;
        if k < 2 {
            continue;
        }
        let mut term = fact[a];
        let mut run = 1;
        for i in 0..a - 1 {
            if cuts & (1 << i) != 0 {
                term /= fact[run];
                run = 1;
            } else {
                run += 1;
            }
        }
        term /= fact[run];
        lhs += if k % 2 == 0 { term } else { -term };
    }
    let rhs = if a % 2 == 0 { 2 } else { 0 };
    Ok((lhs, rhs))
}
