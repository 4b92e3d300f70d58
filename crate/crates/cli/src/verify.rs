//! Cross-method identities, run per document kind. The harness stops at the
//! first exact mismatch.

use std::collections::BTreeMap;

use mobius_core::algebra::{self, IncidenceElement};
use mobius_core::decomp::{self, ClassDecompositions, EmbeddingCheck, MorphismAlgebra};
use mobius_core::digraph::{GraphIncidence, ReflexiveDigraph};
use mobius_core::fincat::{self, FinCategory};
use mobius_core::poset::{embed_to_matrix, invert_matrix, reduced_context, IncidenceAlgebra, InversionDirection, Poset};
use mobius_core::rational::{self, Rational};
use mobius_core::topology::{gauss_bonnet, hall_mobius, OrderComplex};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::doc::Document;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch(String),
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct Report {
    pub kind: &'static str,
    pub checks: Vec<(String, Status)>,
}

impl Report {
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|(_, s)| matches!(s, Status::Mismatch(_)))
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|(name, status)| match status {
                Status::Ok => json!({"name": name, "status": "ok"}),
                Status::Mismatch(d) => json!({"name": name, "status": "mismatch", "detail": d}),
                Status::Skipped(d) => json!({"name": name, "status": "skipped", "detail": d}),
            })
            .collect();
        json!({
            "kind": self.kind,
            "status": if self.passed() { "ok" } else { "mismatch" },
            "checks": checks,
        })
    }
}

struct Harness {
    report: Report,
}

impl Harness {
    fn new(kind: &'static str) -> Self {
        Self {
            report: Report { kind, checks: Vec::new() },
        }
    }

    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<Status, CliError>) -> Result<(), CliError> {
        if !self.report.passed() {
            return Ok(());
        }
        let status = f()?;
        self.report.checks.push((name.to_string(), status));
        Ok(())
    }
}

fn status(ok: bool, what: &str) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Mismatch(what.to_string())
    }
}

fn first_mismatch<T>(items: impl IntoIterator<Item = T>, bad: impl Fn(&T) -> Option<String>) -> Status {
    for item in items {
        if let Some(detail) = bad(&item) {
            return Status::Mismatch(detail);
        }
    }
    Status::Ok
}

pub fn verify(doc: &Document) -> Result<Report, CliError> {
    match doc {
        Document::Poset(d) => verify_poset(&d.build().map_err(CliError::domain)?),
        Document::Digraph(d) => verify_digraph(&d.build().map_err(CliError::domain)?),
        Document::Category(d) => verify_category(&d.build().map_err(CliError::domain)?),
    }
}

fn ramp(p: &Poset, base: usize) -> BTreeMap<usize, Rational> {
    p.up_set(base)
        .into_iter()
        .map(|x| (x, rational::int(x as i64 + 1)))
        .collect()
}

pub fn verify_poset(p: &Poset) -> Result<Report, CliError> {
    let mut h = Harness::new("poset");
    let alg = IncidenceAlgebra::new(p.clone());
    let mu = alg.mobius();
    let strict: Vec<(usize, usize)> = alg.intervals().iter().copied().filter(|&(x, y)| x != y).collect();
    let name = |x: usize, y: usize| format!("[{},{}]", p.label(x), p.label(y));

    h.check("coalgebra laws", || {
        Ok(match alg.context().check_coalgebra() {
            Ok(()) => Status::Ok,
            Err(v) => Status::Mismatch(format!("{v:?}")),
        })
    })?;
    h.check("mobius: inverse of zeta = chain counts", || {
        let mut out = Status::Ok;
        for &(x, y) in alg.intervals() {
            if alg.mobius_by_chains(x, y).map_err(CliError::domain)? != alg.value(&mu, x, y) {
                out = Status::Mismatch(name(x, y));
                break;
            }
        }
        Ok(out)
    })?;
    h.check("mobius: inverse of zeta = chain-sum closed form", || {
        let closed = alg.chain_sum_inverse(&alg.zeta()).map_err(CliError::domain)?;
        Ok(status(closed.by_label() == mu.by_label(), "closed form"))
    })?;
    h.check("mobius: double inverse", || {
        let back = algebra::invert(&mu).map_err(CliError::domain)?;
        Ok(status(back == alg.zeta(), "double inverse"))
    })?;
    h.check("hall: mobius = reduced euler characteristic of the open interval", || {
        let mut out = Status::Ok;
        for &(x, y) in &strict {
            if rational::int(hall_mobius(p, x, y).map_err(CliError::domain)?) != alg.value(&mu, x, y) {
                out = Status::Mismatch(name(x, y));
                break;
            }
        }
        Ok(out)
    })?;
    h.check("hall: mobius = alternating reduced homology ranks", || {
        let mut out = Status::Ok;
        for &(x, y) in &strict {
            let open = p.open_interval(x, y).map_err(CliError::domain)?;
            let chi = OrderComplex::new(&open).homology(true).euler_char();
            if rational::int(chi) != alg.value(&mu, x, y) {
                out = Status::Mismatch(name(x, y));
                break;
            }
        }
        Ok(out)
    })?;
    h.check("antipode at one = mobius", || {
        let mut out = Status::Ok;
        for &(x, y) in &strict {
            if alg.antipode_eval(x, y).map_err(CliError::domain)? != alg.value(&mu, x, y) {
                out = Status::Mismatch(name(x, y));
                break;
            }
        }
        Ok(out)
    })?;
    h.check("gauss-bonnet", || {
        let gb = gauss_bonnet(p);
        Ok(if gb.holds() { Status::Ok } else { Status::Mismatch(format!("{gb:?}")) })
    })?;
    h.check("reduced algebra lifts to the mobius function", || {
        let r = reduced_context(p);
        let lifted = r.lift(&alg, &r.mobius());
        Ok(status(lifted == mu, "lift"))
    })?;
    h.check("full-matrix inverse of zeta = mobius", || {
        let inv = invert_matrix(&embed_to_matrix(&alg, &alg.zeta()));
        let expected = embed_to_matrix(&alg, &mu);
        Ok(match inv {
            Some(m) if m == expected => Status::Ok,
            Some(_) => Status::Mismatch("matrix inverse differs".into()),
            None => Status::Mismatch("zeta matrix is singular".into()),
        })
    })?;
    h.check("mobius inversion round trip", || {
        let mut out = Status::Ok;
        for base in 0..p.len() {
            let f = ramp(p, base);
            let g = alg.module_inversion(base, &f, InversionDirection::ByXi).map_err(CliError::domain)?;
            let back = alg.module_inversion(base, &g, InversionDirection::ByMu).map_err(CliError::domain)?;
            let mut f = f;
            f.retain(|_, v| !v.is_zero());
            if back != f {
                out = Status::Mismatch(format!("base {}", p.label(base)));
                break;
            }
        }
        Ok(out)
    })?;
    Ok(h.report)
}

pub fn verify_digraph(g: &ReflexiveDigraph) -> Result<Report, CliError> {
    let mut h = Harness::new("digraph");
    let inc = GraphIncidence::new(g).map_err(CliError::domain)?;
    let mu = inc.mobius();
    h.check("coalgebra laws", || {
        Ok(match inc.algebra().context().check_coalgebra() {
            Ok(()) => Status::Ok,
            Err(v) => Status::Mismatch(format!("{v:?}")),
        })
    })?;
    h.check("mobius: inverse of xi = walk sum", || {
        let walks = inc.mobius_by_walks();
        Ok(status(walks.by_label() == mu.by_label(), "walk sum"))
    })?;
    h.check("mobius: double inverse", || {
        let back = algebra::invert(&mu).map_err(CliError::domain)?;
        Ok(status(&back == inc.xi(), "double inverse"))
    })?;
    h.check("graph mobius inversion", || {
        let p = inc.algebra().poset();
        let mut out = Status::Ok;
        for base in 0..p.len() {
            let r = inc.inversion_check(base, &ramp(p, base)).map_err(CliError::domain)?;
            if !(r.round_trip && r.edge_sum_is_xi_action) {
                out = Status::Mismatch(format!("base {}", p.label(base)));
                break;
            }
        }
        Ok(out)
    })?;
    Ok(h.report)
}

fn label_values(e: &IncidenceElement) -> BTreeMap<String, Rational> {
    e.by_label()
}

pub fn verify_category(cat: &FinCategory) -> Result<Report, CliError> {
    let mut h = Harness::new("category");
    h.check("category laws", || {
        let v = cat.validate();
        Ok(if v.is_empty() { Status::Ok } else { Status::Mismatch(format!("{v:?}")) })
    })?;
    let leroux = decomp::leroux_report(cat);
    h.check("leroux conditions = locally finite and one way", || {
        Ok(status(leroux.leroux() == leroux.one_way_criterion(), "criteria"))
    })?;
    if cat.is_locally_finite() {
        h.check("object mobius: inverse = chain formula", || {
            let inc = fincat::cat_mobius(cat).map_err(CliError::domain)?;
            let (a, b) = (inc.mobius(), inc.mobius_closed_form());
            Ok(status(label_values(&a) == label_values(&b), "closed form"))
        })?;
    }
    if cat.is_essentially_locally_finite() && cat.is_isocyclic() {
        let ess = fincat::essential_mobius(cat).map_err(CliError::domain)?;
        let mu = ess.mobius();
        h.check("essential mobius = simplicial groupoid euler characteristic", || {
            let p = ess.alg.poset();
            let mut out = Status::Ok;
            for (x, y) in p.relation_pairs().into_iter().filter(|&(x, y)| x != y) {
                let chi = fincat::simplicial_euler_chi_g(cat, x, y).map_err(CliError::domain)?;
                if chi != ess.alg.value(&mu, x, y) {
                    out = Status::Mismatch(format!("[{},{}]", p.label(x), p.label(y)));
                    break;
                }
            }
            Ok(out)
        })?;
        h.check("mu_g: inverse = chain formula", || {
            let g = fincat::xi_g_mu_g(cat).map_err(CliError::domain)?;
            let closed = g.mu_g_closed_form();
            Ok(status(label_values(&closed) == label_values(&g.mu_g), "mu_g"))
        })?;
    } else {
        h.check("essential mobius", || {
            Ok(Status::Skipped("category is not isocyclic and essentially locally finite".into()))
        })?;
    }
    if leroux.leroux() {
        h.check("morphism mobius: inverse = proper decompositions = bar complex", || {
            let routes = decomp::morphism_mobius_routes(cat).map_err(CliError::domain)?;
            Ok(first_mismatch(routes, |r| (!r.agree()).then(|| cat.morphism(r.morphism).id.clone())))
        })?;
        h.check("binomial transform of decomposition counts", || {
            Ok(first_mismatch(0..cat.morphism_count(), |&f| {
                (!decomp::binomial_transform_check(cat, f, 4).holds()).then(|| cat.morphism(f).id.clone())
            }))
        })?;
        h.check("cancellative embedding is an algebra map", || {
            let order = decomp::morphism_order(cat).map_err(CliError::domain)?;
            let alg = MorphismAlgebra::new(cat);
            let a = alg.xi();
            let b = alg.from_fn(|f| rational::ratio(1, f as i64 + 2));
            Ok(match order.check_embedding(&alg, &a, &b).map_err(CliError::domain)? {
                EmbeddingCheck::Skipped(why) => Status::Skipped(why),
                c if c.holds() => Status::Ok,
                c => Status::Mismatch(format!("{c:?}")),
            })
        })?;
    } else {
        h.check("morphism mobius", || Ok(Status::Skipped("not a Möbius category".into())))?;
    }
    match (ClassDecompositions::new(cat), decomp::filling_witness(cat)) {
        (Ok(_), None) => {
            let class_alg = decomp::essential_morphism_mobius(cat).map_err(CliError::domain)?;
            let classes = &class_alg.decompositions;
            h.check("class coalgebra laws", || {
                Ok(match class_alg.ctx.check_coalgebra() {
                    Ok(()) => Status::Ok,
                    Err(v) => Status::Mismatch(format!("{v:?}")),
                })
            })?;
            h.check("class mobius: inverse = alternating class counts", || {
                Ok(first_mismatch(0..classes.class_count(), |&k| {
                    (class_alg.mu.get(k) != rational::int(classes.alternating_class_count(k)))
                        .then(|| class_alg.ctx.label(k).to_string())
                }))
            })?;
            h.check("class binomial transform", || {
                Ok(first_mismatch(0..classes.class_count(), |&k| {
                    (!classes.binomial_check(k, 3).holds()).then(|| class_alg.ctx.label(k).to_string())
                }))
            })?;
            h.check("essential mobius = sum of decomposition groupoid euler characteristics", || {
                let rows = classes.groupoid_euler_check().map_err(CliError::domain)?;
                Ok(first_mismatch(rows, |r| (!r.holds()).then(|| format!("classes {} < {}", r.x, r.y))))
            })?;
        }
        (Ok(_), Some(w)) => {
            h.check("class mobius", || Ok(Status::Skipped(format!("not isomorphism filling: {w}"))))?;
        }
        (Err(e), _) => {
            h.check("class mobius", || Ok(Status::Skipped(e.to_string())))?;
        }
    }
    Ok(h.report)
}
