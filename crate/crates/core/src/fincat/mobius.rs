use num_traits::Zero;

use super::{action_orbits, FinCatError, FinCategory, IsoClassIndex};
use crate::algebra::{self, IncidenceElement};
use crate::poset::{IncidenceAlgebra, Poset, RelationMode};
use crate::rational::{self, Rational};

impl FinCategory {
    /// `x <= y` iff `C(x, y)` is nonempty.
    pub fn object_poset(&self) -> Result<Poset, FinCatError> {
        self.require_locally_finite()?;
        Ok(Poset::new(self.objects.clone(), &self.nonempty_pairs(), RelationMode::Full)?)
    }

    /// The order on isomorphism classes, labelled by their least object.
    pub fn quotient_poset(&self) -> Result<(Poset, IsoClassIndex), FinCatError> {
        self.require_essentially_locally_finite()?;
        let index = IsoClassIndex::new(self);
        let labels = (0..index.object_classes().len())
            .map(|k| self.objects[index.object_rep(k)].clone())
            .collect();
        let pairs: Vec<(usize, usize)> = self
            .nonempty_pairs()
            .into_iter()
            .map(|(x, y)| (index.object_class(x), index.object_class(y)))
            .collect();
        let p = Poset::new(labels, &pairs, RelationMode::Full)?;
        Ok((p, index))
    }

    fn nonempty_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.object_count();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| !self.hom(x, y).is_empty())
            .collect()
    }

    fn hom_size(&self, x: usize, y: usize) -> Rational {
        rational::int(self.hom(x, y).len() as i64)
    }
}

/// `ξ[x, y] = |C(x, y)|` on the object poset of a locally finite category.
#[derive(Debug, Clone)]
pub struct CategoryIncidence {
    pub alg: IncidenceAlgebra,
    pub xi: IncidenceElement,
}

impl CategoryIncidence {
    pub fn mobius(&self) -> IncidenceElement {
        algebra::invert(&self.xi).expect("identities make every diagonal entry nonzero")
    }

    /// `μ[x,y] = Σ_n (-1)^n Σ_chains Π|C(x_{i-1},x_i)| / Π_{i=0..n}|C(x_i,x_i)|`.
    pub fn mobius_closed_form(&self) -> IncidenceElement {
        self.alg
            .chain_sum_inverse(&self.xi)
            .expect("identities make every diagonal entry nonzero")
    }
}

pub fn cat_mobius(cat: &FinCategory) -> Result<CategoryIncidence, FinCatError> {
    let alg = IncidenceAlgebra::new(cat.object_poset()?);
    let xi = alg.from_fn(|x, y| cat.hom_size(x, y));
    Ok(CategoryIncidence { alg, xi })
}

/// `ξ(x̄, ȳ) = |C(x, y)|` on the quotient poset of an essentially locally
/// finite category.
#[derive(Debug, Clone)]
pub struct EssentialIncidence {
    pub index: IsoClassIndex,
    pub alg: IncidenceAlgebra,
    pub xi: IncidenceElement,
}

impl EssentialIncidence {
    pub fn mobius(&self) -> IncidenceElement {
        algebra::invert(&self.xi).expect("identities make every diagonal entry nonzero")
    }
}

/// Fails if `|C(x, y)|` depends on the representatives of the classes.
pub fn essential_mobius(cat: &FinCategory) -> Result<EssentialIncidence, FinCatError> {
    let (p, index) = cat.quotient_poset()?;
    let classes = index.object_classes();
    for (a, xs) in classes.iter().enumerate() {
        for (b, ys) in classes.iter().enumerate() {
            let size = cat.hom(xs[0], ys[0]).len();
            if xs.iter().any(|&x| ys.iter().any(|&y| cat.hom(x, y).len() != size)) {
                return Err(FinCatError::RepresentativeDependence(
                    p.label(a).to_string(),
                    p.label(b).to_string(),
                ));
            }
        }
    }
    let alg = IncidenceAlgebra::new(p);
    let xi = alg.from_fn(|a, b| cat.hom_size(index.object_rep(a), index.object_rep(b)));
    Ok(EssentialIncidence { index, alg, xi })
}

/// `|G|_g = Σ_{classes x̄} 1 / |G(x, x)|`.
pub fn groupoid_cardinality(gpd: &FinCategory) -> Result<Rational, FinCatError> {
    if let Some(f) = (0..gpd.morphism_count()).find(|&f| !gpd.is_iso(f)) {
        return Err(FinCatError::NotGroupoid(gpd.morphism(f).id.clone()));
    }
    let index = IsoClassIndex::new(gpd);
    Ok((0..index.object_classes().len())
        .map(|k| {
            let x = index.object_rep(k);
            rational::ratio(1, gpd.hom(x, x).len() as i64)
        })
        .sum())
}

/// `ξ_g[x̄, ȳ] = |C(x, y)| / (|C(x, x)| |C(y, y)|)` and its inverse `μ_g`.
#[derive(Debug, Clone)]
pub struct GroupoidMobius {
    pub index: IsoClassIndex,
    pub alg: IncidenceAlgebra,
    pub xi_g: IncidenceElement,
    pub mu_g: IncidenceElement,
    cat: FinCategory,
}

impl GroupoidMobius {
    /// `μ_g[x̄, x̄] = |C(x, x)|`, and for `x̄ < ȳ`
    /// `μ_g = Σ_n (-1)^n Σ_chains Π|C(x_{i-1}, x_i)| / Π_{0<i<n} |C(x_i, x_i)|`.
    pub fn mu_g_closed_form(&self) -> IncidenceElement {
        let p = self.alg.poset();
        let rep = |k: usize| self.index.object_rep(k);
        let end = |k: usize| self.cat.hom_size(rep(k), rep(k));
        self.alg.from_fn(|a, b| {
            if a == b {
                return end(a);
            }
            let mut total = Rational::zero();
            for chain in strict_chains(p, a, b) {
                let mut term = rational::sign(chain.len() - 1);
                for w in chain.windows(2) {
                    term *= self.cat.hom_size(rep(w[0]), rep(w[1]));
                }
                for &k in &chain[1..chain.len() - 1] {
                    term /= end(k);
                }
                total += term;
            }
            total
        })
    }
}

pub fn xi_g_mu_g(cat: &FinCategory) -> Result<GroupoidMobius, FinCatError> {
    cat.require_isocyclic()?;
    let (p, index) = cat.quotient_poset()?;
    let alg = IncidenceAlgebra::new(p);
    let rep = |k: usize| index.object_rep(k);
    let xi_g = alg.from_fn(|a, b| {
        let (x, y) = (rep(a), rep(b));
        cat.hom_size(x, y) / (cat.hom_size(x, x) * cat.hom_size(y, y))
    });
    let mu_g = algebra::invert(&xi_g).expect("ξ_g is nonzero on the diagonal");
    Ok(GroupoidMobius {
        index,
        alg,
        xi_g,
        mu_g,
        cat: cat.clone(),
    })
}

/// `χ̃_g C_*(x̄, ȳ)`: the alternating sum, over strict chains of classes, of
/// the groupoid cardinality of composable tuples along the chain modulo the
/// automorphism groups of its objects. Class indices refer to the quotient poset.
pub fn simplicial_euler_chi_g(cat: &FinCategory, x: usize, y: usize) -> Result<Rational, FinCatError> {
    cat.require_isocyclic()?;
    let (p, index) = cat.quotient_poset()?;
    p.check_lt(x, y)?;
    let mut total = Rational::zero();
    for chain in strict_chains(&p, x, y) {
        let reps: Vec<usize> = chain.iter().map(|&k| index.object_rep(k)).collect();
        let tuples = composable_tuples(cat, &reps);
        let group_order: usize = reps.iter().map(|&r| cat.automorphisms(r).len()).product();
        let orbits = action_orbits(cat, &reps, &vec![true; reps.len()], &tuples);
        let cardinality: Rational = orbits
            .iter()
            .map(|o| rational::ratio(o.size as i64, group_order as i64))
            .sum();
        total += rational::sign(chain.len() - 1) * cardinality;
    }
    Ok(total)
}

/// All `x = x_0 < ... < x_n = y` with `n >= 1`, as element lists.
pub(crate) fn strict_chains(p: &Poset, x: usize, y: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![x]];
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("nonempty");
        for z in p.interval(last, y) {
            if z == last {
                continue;
            }
            let mut longer = chain.clone();
            longer.push(z);
            if z == y {
                out.push(longer);
            } else {
                stack.push(longer);
            }
        }
    }
    out
}

/// Every `(f_1, ..., f_n)` with `f_i ∈ C(objs[i-1], objs[i])`.
pub(crate) fn composable_tuples(cat: &FinCategory, objs: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for w in objs.windows(2) {
        let hom = cat.hom(w[0], w[1]);
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                hom.iter().map(move |&f| {
                    let mut t = t.clone();
                    t.push(f);
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build::permutations;
    use crate::poset::{family, is_isomorphic, Family};
    use crate::rational::{int, ratio};

    fn factorial(n: i64) -> i64 {
        (1..=n).product()
    }

    #[test]
    fn local_finiteness_predicates() {
        assert!(FinCategory::from_poset(&family(Family::Diamond).unwrap()).is_locally_finite());
        let two = FinCategory::contractible_groupoid(2);
        assert!(!two.is_locally_finite());
        assert!(two.is_essentially_locally_finite() && two.is_isocyclic());
        assert!(FinCategory::symmetric_group(3).unwrap().is_locally_finite());
        let e = FinCategory::idempotent_monoid();
        assert!(e.is_essentially_locally_finite() && !e.is_isocyclic());
        let inj = FinCategory::injections(3).unwrap();
        assert!(inj.is_essentially_locally_finite() && inj.is_isocyclic());
    }

    #[test]
    fn object_posets() {
        let d = family(Family::Diamond).unwrap();
        assert!(is_isomorphic(&FinCategory::from_poset(&d).object_poset().unwrap(), &d));
        let inj = FinCategory::injections(3).unwrap();
        assert!(is_isomorphic(&inj.object_poset().unwrap(), &family(Family::Chain(3)).unwrap()));
        assert_eq!(FinCategory::cyclic_group(5).unwrap().object_poset().unwrap().len(), 1);
        assert!(FinCategory::contractible_groupoid(2).object_poset().is_err());
    }

    #[test]
    fn category_mobius_examples() {
        let s3 = cat_mobius(&FinCategory::symmetric_group(3).unwrap()).unwrap();
        assert_eq!(s3.mobius().get(0), ratio(1, 6));

        let d = family(Family::Diamond).unwrap();
        let ci = cat_mobius(&FinCategory::from_poset(&d)).unwrap();
        assert_eq!(ci.mobius().by_label(), IncidenceAlgebra::new(d).mobius().by_label());

        // x ⇉ y with trivial endomorphisms
        let c = FinCategory::path_category(
            vec!["x".into(), "y".into()],
            &[("a".into(), 0, 1), ("b".into(), 0, 1)],
        )
        .unwrap();
        let ci = cat_mobius(&c).unwrap();
        assert_eq!(ci.alg.value(&ci.mobius(), 0, 1), int(-2));
        assert_eq!(ci.mobius(), ci.mobius_closed_form());
    }

    #[test]
    fn essential_mobius_of_injections() {
        let inj = FinCategory::injections(3).unwrap();
        let e = essential_mobius(&inj).unwrap();
        let mu = e.mobius();
        for n in 0..=3i64 {
            for m in n..=3i64 {
                let expected = rational::sign((m - n) as usize)
                    / rational::int(factorial(n) * factorial(m - n));
                assert_eq!(e.alg.value(&mu, n as usize, m as usize), expected);
            }
        }
        let two = essential_mobius(&FinCategory::injections(2).unwrap()).unwrap();
        assert_eq!(two.alg.value(&two.mobius(), 0, 2), ratio(1, 2));
        assert_eq!(two.alg.value(&two.mobius(), 0, 1), int(-1));
    }

    #[test]
    fn groupoid_cardinalities() {
        assert_eq!(groupoid_cardinality(&FinCategory::discrete(4)).unwrap(), int(4));
        assert_eq!(
            groupoid_cardinality(&FinCategory::symmetric_group(3).unwrap()).unwrap(),
            ratio(1, 6)
        );
        assert_eq!(
            groupoid_cardinality(&FinCategory::contractible_groupoid(2)).unwrap(),
            int(1)
        );
        assert!(matches!(
            groupoid_cardinality(&FinCategory::idempotent_monoid()),
            Err(FinCatError::NotGroupoid(_))
        ));
        // S_3 acting on 3 points: |X|/|G| = 1/2
        let act = FinCategory::action_groupoid(3, &permutations(3));
        assert_eq!(groupoid_cardinality(&act).unwrap(), ratio(1, 2));
        let g = FinCategory::symmetric_group(3).unwrap();
        assert_eq!(
            groupoid_cardinality(&g.duplicate_object(0)).unwrap(),
            groupoid_cardinality(&g).unwrap()
        );
    }

    #[test]
    fn xi_g_and_mu_g() {
        let inj = FinCategory::injections(1).unwrap();
        let gm = xi_g_mu_g(&inj).unwrap();
        assert_eq!(gm.alg.value(&gm.mu_g, 0, 0), int(1));
        assert_eq!(gm.alg.value(&gm.mu_g, 1, 1), int(1));
        assert_eq!(gm.alg.value(&gm.mu_g, 0, 1), int(-1));

        let inj = FinCategory::injections(4).unwrap();
        let gm = xi_g_mu_g(&inj).unwrap();
        for n in 0..=4i64 {
            for m in n..=4i64 {
                let expected = ratio(1, factorial(n) * factorial(m - n));
                assert_eq!(gm.alg.value(&gm.xi_g, n as usize, m as usize), expected);
            }
        }
        assert_eq!(gm.mu_g, gm.mu_g_closed_form());

        let g = xi_g_mu_g(&FinCategory::symmetric_group(3).unwrap()).unwrap();
        assert_eq!(g.xi_g.get(0), ratio(1, 6));
        assert_eq!(g.mu_g.get(0), int(6));
        assert!(xi_g_mu_g(&FinCategory::idempotent_monoid()).is_err());
    }

    #[test]
    fn simplicial_euler_characteristic() {
        let inj = FinCategory::injections(2).unwrap();
        assert_eq!(simplicial_euler_chi_g(&inj, 0, 2).unwrap(), ratio(1, 2));
        assert_eq!(simplicial_euler_chi_g(&inj, 1, 2).unwrap(), int(-1));
        assert!(simplicial_euler_chi_g(&inj, 2, 2).is_err());

        let inj = FinCategory::injections(4).unwrap();
        let e = essential_mobius(&inj).unwrap();
        let mu = e.mobius();
        for &(a, b) in e.alg.intervals() {
            if a != b {
                assert_eq!(simplicial_euler_chi_g(&inj, a, b).unwrap(), e.alg.value(&mu, a, b));
            }
        }
    }

    #[test]
    fn products_factor() {
        let g = FinCategory::cyclic_group(2).unwrap();
        let h = FinCategory::symmetric_group(3).unwrap();
        let ci = cat_mobius(&g.product(&h)).unwrap();
        assert_eq!(ci.mobius().get(0), ratio(1, 12));
        let d = FinCategory::injections(2).unwrap();
        let t = d.product(&FinCategory::terminal());
        assert_eq!(t.morphism_count(), d.morphism_count());
        assert_eq!(t.table().len(), d.table().len());
    }

    #[test]
    fn duplicated_objects_keep_mobius() {
        let base = essential_mobius(&FinCategory::injections(2).unwrap()).unwrap();
        let dup = essential_mobius(&FinCategory::injections(2).unwrap().duplicate_object(2)).unwrap();
        assert_eq!(base.alg.intervals(), dup.alg.intervals());
        for &(a, b) in base.alg.intervals() {
            assert_eq!(
                base.alg.value(&base.mobius(), a, b),
                dup.alg.value(&dup.mobius(), a, b)
            );
        }
    }
}
