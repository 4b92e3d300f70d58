//! Finite categories given by explicit composition tables.

mod build;
mod iso;
mod mobius;

use std::collections::HashMap;

use thiserror::Error;

use crate::poset::PosetError;

pub use iso::{action_orbits, IsoClassIndex, Orbit};
pub use mobius::{
    cat_mobius, essential_mobius, groupoid_cardinality, simplicial_euler_chi_g, xi_g_mu_g,
    CategoryIncidence, EssentialIncidence, GroupoidMobius,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinCatError {
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism id `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("identity `{morphism}` of `{object}` is not an endomorphism of it")]
    BadIdentity { object: String, morphism: String },
    #[error("`{g}` ∘ `{f}` is listed but the morphisms are not composable")]
    NotComposable { g: String, f: String },
    #[error("composite `{g}` ∘ `{f}` is missing from the table")]
    MissingComposite { g: String, f: String },
    #[error("composite `{g}` ∘ `{f}` is listed twice with different results")]
    ConflictingComposite { g: String, f: String },
    #[error("composite `{g}` ∘ `{f}` = `{gf}` has the wrong source or target")]
    CompositeShape { g: String, f: String, gf: String },
    #[error("category violates its laws: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("objects `{0}` and `{1}` have morphisms both ways, so the category is not locally finite")]
    NotLocallyFinite(String, String),
    #[error("`{0}` and `{1}` have morphisms both ways but are not isomorphic")]
    NotEssentiallyLocallyFinite(String, String),
    #[error("`{0}` and `{1}` form a cycle that is not made of isomorphisms")]
    NotIsocyclic(String, String),
    #[error("morphism `{0}` is not invertible, so this is not a groupoid")]
    NotGroupoid(String),
    #[error("hom-set sizes depend on the chosen representatives of `{0}` and `{1}`")]
    RepresentativeDependence(String, String),
    #[error("{what} bound exceeded: {param} > {max}")]
    BoundExceeded {
        what: &'static str,
        param: usize,
        max: usize,
    },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A failed unit or associativity law, by morphism index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LeftUnit { f: usize },
    RightUnit { f: usize },
    Associativity { h: usize, g: usize, f: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

const NONE: u32 = u32::MAX;

#[derive(Clone)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    // compose[g * m + f] = g ∘ f, or NONE when tgt(f) != src(g)
    compose: Vec<u32>,
    hom: Vec<Vec<usize>>,
    inverse: Vec<Option<usize>>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
}

impl std::fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

impl FinCategory {
    /// Checks shapes and totality of the table; laws are checked by [`Self::validate`].
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: &[(usize, usize, usize)],
    ) -> Result<Self, FinCatError> {
        let mut object_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(FinCatError::DuplicateObject(o.clone()));
            }
        }
        let mut morphism_index = HashMap::new();
        for (i, f) in morphisms.iter().enumerate() {
            if morphism_index.insert(f.id.clone(), i).is_some() {
                return Err(FinCatError::DuplicateMorphism(f.id.clone()));
            }
            for v in [f.src, f.tgt] {
                if v >= objects.len() {
                    return Err(FinCatError::UnknownObject(v.to_string()));
                }
            }
        }
        let m = morphisms.len();
        if identities.len() != objects.len() {
            return Err(FinCatError::UnknownObject(format!(
                "identity list has {} entries for {} objects",
                identities.len(),
                objects.len()
            )));
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= m || morphisms[i].src != x || morphisms[i].tgt != x {
                return Err(FinCatError::BadIdentity {
                    object: objects[x].clone(),
                    morphism: morphisms.get(i).map_or_else(|| i.to_string(), |f| f.id.clone()),
                });
            }
        }
        let name = |i: usize| morphisms[i].id.clone();
        let mut compose = vec![NONE; m * m];
        for &(g, f, gf) in table {
            for k in [g, f, gf] {
                if k >= m {
                    return Err(FinCatError::UnknownMorphism(k.to_string()));
                }
            }
            if morphisms[f].tgt != morphisms[g].src {
                return Err(FinCatError::NotComposable { g: name(g), f: name(f) });
            }
            if morphisms[gf].src != morphisms[f].src || morphisms[gf].tgt != morphisms[g].tgt {
                return Err(FinCatError::CompositeShape {
                    g: name(g),
                    f: name(f),
                    gf: name(gf),
                });
            }
            let slot = &mut compose[g * m + f];
            if *slot != NONE && *slot as usize != gf {
                return Err(FinCatError::ConflictingComposite { g: name(g), f: name(f) });
            }
            *slot = gf as u32;
        }
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].tgt == morphisms[g].src && compose[g * m + f] == NONE {
                    return Err(FinCatError::MissingComposite { g: name(g), f: name(f) });
                }
            }
        }
        Ok(Self::assemble(objects, morphisms, identities, compose, object_index, morphism_index))
    }

    /// [`Self::new`] followed by [`Self::validate`], failing on any violation.
    pub fn checked(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: &[(usize, usize, usize)],
    ) -> Result<Self, FinCatError> {
        let cat = Self::new(objects, morphisms, identities, table)?;
        let violations = cat.validate();
        if violations.is_empty() {
            Ok(cat)
        } else {
            Err(FinCatError::Invalid(violations))
        }
    }

    /// [`Self::checked`] with everything named by label. `identities` pairs
    /// each object with its identity morphism.
    pub fn from_labels(
        objects: Vec<String>,
        morphisms: &[(String, String, String)],
        identities: &[(String, String)],
        compose: &[(String, String, String)],
    ) -> Result<Self, FinCatError> {
        let objs: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let object = |o: &str| objs.get(o).copied().ok_or_else(|| FinCatError::UnknownObject(o.to_string()));
        let mut arrows = Vec::with_capacity(morphisms.len());
        for (id, s, t) in morphisms {
            arrows.push(Morphism {
                id: id.clone(),
                src: object(s)?,
                tgt: object(t)?,
            });
        }
        let ids: HashMap<&str, usize> = arrows.iter().enumerate().map(|(i, f)| (f.id.as_str(), i)).collect();
        let arrow = |f: &str| ids.get(f).copied().ok_or_else(|| FinCatError::UnknownMorphism(f.to_string()));
        let mut identity = vec![None; objects.len()];
        for (o, f) in identities {
            let x = object(o)?;
            if identity[x].replace(arrow(f)?).is_some() {
                return Err(FinCatError::BadIdentity {
                    object: o.clone(),
                    morphism: f.clone(),
                });
            }
        }
        let identity = identity
            .into_iter()
            .enumerate()
            .map(|(x, i)| {
                i.ok_or_else(|| FinCatError::BadIdentity {
                    object: objects[x].clone(),
                    morphism: "<missing>".into(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let table = compose
            .iter()
            .map(|(g, f, gf)| Ok((arrow(g)?, arrow(f)?, arrow(gf)?)))
            .collect::<Result<Vec<_>, FinCatError>>()?;
        Self::checked(objects, arrows, identity, &table)
    }

    /// Builds from a composition function; used by the internal generators.
    pub(crate) fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        comp: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let m = morphisms.len();
        let mut compose = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].tgt == morphisms[g].src {
                    compose[g * m + f] = comp(g, f) as u32;
                }
            }
        }
        let object_index = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let morphism_index = morphisms
            .iter()
            .enumerate()
            .map(|(i, f)| (f.id.clone(), i))
            .collect();
        Self::assemble(objects, morphisms, identities, compose, object_index, morphism_index)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: Vec<u32>,
        object_index: HashMap<String, usize>,
        morphism_index: HashMap<String, usize>,
    ) -> Self {
        let n = objects.len();
        let m = morphisms.len();
        let mut hom = vec![Vec::new(); n * n];
        for (i, f) in morphisms.iter().enumerate() {
            hom[f.src * n + f.tgt].push(i);
        }
        let mut cat = Self {
            objects,
            morphisms,
            identities,
            compose,
            hom,
            inverse: vec![None; m],
            object_index,
            morphism_index,
        };
        cat.inverse = (0..m)
            .map(|f| {
                let (x, y) = (cat.morphisms[f].src, cat.morphisms[f].tgt);
                cat.hom(y, x).iter().copied().find(|&g| {
                    cat.compose(g, f) == Some(cat.identities[x])
                        && cat.compose(f, g) == Some(cat.identities[y])
                })
            })
            .collect();
        cat
    }

    /// All unit and associativity violations; empty means the table is a category.
    pub fn validate(&self) -> Vec<Violation> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for f in 0..m {
            let Morphism { src, tgt, .. } = self.morphisms[f];
            if self.compose(self.identities[tgt], f) != Some(f) {
                out.push(Violation::LeftUnit { f });
            }
            if self.compose(f, self.identities[src]) != Some(f) {
                out.push(Violation::RightUnit { f });
            }
        }
        for f in 0..m {
            let y = self.morphisms[f].tgt;
            for x in 0..self.objects.len() {
                for &g in self.hom(y, x) {
                    let gf = self.compose_known(g, f);
                    for z in 0..self.objects.len() {
                        for &h in self.hom(x, z) {
                            let left = self.compose_known(h, gf);
                            let right = self.compose_known(self.compose_known(h, g), f);
                            if left != right {
                                out.push(Violation::Associativity { h, g, f });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_index(&self, label: &str) -> Result<usize, FinCatError> {
        self.object_index
            .get(label)
            .copied()
            .ok_or_else(|| FinCatError::UnknownObject(label.to_string()))
    }

    pub fn morphism_index(&self, id: &str) -> Result<usize, FinCatError> {
        self.morphism_index
            .get(id)
            .copied()
            .ok_or_else(|| FinCatError::UnknownMorphism(id.to_string()))
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].src] == f
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x * self.objects.len() + y]
    }

    /// `g ∘ f`, if `tgt(f) = src(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let v = self.compose[g * self.morphisms.len() + f];
        (v != NONE).then_some(v as usize)
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn compose_known(&self, g: usize, f: usize) -> usize {
        self.compose(g, f).expect("composable pair")
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverse[f]
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse[f].is_some()
    }

    pub fn automorphisms(&self, x: usize) -> Vec<usize> {
        self.hom(x, x).iter().copied().filter(|&f| self.is_iso(f)).collect()
    }

    pub fn are_isomorphic(&self, x: usize, y: usize) -> bool {
        self.hom(x, y).iter().any(|&f| self.is_iso(f))
    }

    /// No two distinct objects have morphisms in both directions.
    pub fn is_locally_finite(&self) -> bool {
        self.two_way_pair(|_, _| true).is_none()
    }

    /// Objects with morphisms both ways are isomorphic.
    pub fn is_essentially_locally_finite(&self) -> bool {
        self.two_way_pair(|x, y| !self.are_isomorphic(x, y)).is_none()
    }

    /// Every pair `x → y → x` consists of isomorphisms.
    pub fn is_isocyclic(&self) -> bool {
        self.non_iso_cycle().is_none()
    }

    pub(crate) fn require_locally_finite(&self) -> Result<(), FinCatError> {
        match self.two_way_pair(|_, _| true) {
            Some((x, y)) => Err(FinCatError::NotLocallyFinite(
                self.objects[x].clone(),
                self.objects[y].clone(),
            )),
            None => Ok(()),
        }
    }

    pub(crate) fn require_essentially_locally_finite(&self) -> Result<(), FinCatError> {
        match self.two_way_pair(|x, y| !self.are_isomorphic(x, y)) {
            Some((x, y)) => Err(FinCatError::NotEssentiallyLocallyFinite(
                self.objects[x].clone(),
                self.objects[y].clone(),
            )),
            None => Ok(()),
        }
    }

    pub(crate) fn require_isocyclic(&self) -> Result<(), FinCatError> {
        match self.non_iso_cycle() {
            Some((f, g)) => Err(FinCatError::NotIsocyclic(
                self.morphisms[f].id.clone(),
                self.morphisms[g].id.clone(),
            )),
            None => Ok(()),
        }
    }

    fn two_way_pair(&self, bad: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
        let n = self.objects.len();
        (0..n)
            .flat_map(|x| ((x + 1)..n).map(move |y| (x, y)))
            .find(|&(x, y)| !self.hom(x, y).is_empty() && !self.hom(y, x).is_empty() && bad(x, y))
    }

    fn non_iso_cycle(&self) -> Option<(usize, usize)> {
        let n = self.objects.len();
        for x in 0..n {
            for y in x..n {
                for &f in self.hom(x, y) {
                    for &g in self.hom(y, x) {
                        if !self.is_iso(f) || !self.is_iso(g) {
                            return Some((f, g));
                        }
                    }
                }
            }
        }
        None
    }

    /// The composition table as `(g, f, g ∘ f)` triples.
    pub fn table(&self) -> Vec<(usize, usize, usize)> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(gf) = self.compose(g, f) {
                    out.push((g, f, gf));
                }
            }
        }
        out
    }
}
