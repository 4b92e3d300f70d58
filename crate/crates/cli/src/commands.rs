use std::path::PathBuf;

use mobius_core::arith::{self, TruncatedDirichlet};
use mobius_core::decomp::{self, ClassDecompositions};
use mobius_core::digraph::GraphIncidence;
use mobius_core::fincat::{self, FinCategory, IsoClassIndex};
use mobius_core::poset::{family, reduced_context, Family, IncidenceAlgebra, Poset};
use mobius_core::rational::{self, Rational};
use mobius_core::topology::{gauss_bonnet, OrderComplex};
use mobius_core::algebra::IncidenceElement;
use serde_json::{json, Map, Value};

use crate::doc::{CategoryDoc, Document, PosetDoc};
use crate::{read_document, CliError, Command, GenFamily};

pub(crate) fn q(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

/// `"[x,y]" → value` over every interval of the algebra's poset.
pub(crate) fn interval_map(alg: &IncidenceAlgebra, e: &IncidenceElement) -> Value {
    let p = alg.poset();
    let mut out = Map::new();
    for &(x, y) in alg.intervals() {
        out.insert(format!("[{},{}]", p.label(x), p.label(y)), q(&alg.value(e, x, y)));
    }
    Value::Object(out)
}

/// Returns the report and whether the command succeeded.
pub fn dispatch(command: Command) -> Result<(Value, bool), CliError> {
    match command {
        Command::Poset {
            file,
            mobius,
            homology,
            gauss_bonnet,
            antipode,
            reduced,
            pair,
        } => poset(&file, PosetFlags { mobius, homology, gauss_bonnet, antipode, reduced }, pair).map(ok),
        Command::Digraph { file, mobius, check } => digraph(&file, mobius, check),
        Command::Cat {
            file,
            check,
            mobius,
            mu_g,
            decomp,
            iso_classes,
        } => category(&file, CatFlags { check, mobius, mu_g, iso_classes }, decomp).map(ok),
        Command::Arith { mu, invert, mertens } => arith_command(mu, invert, mertens).map(ok),
        Command::Verify { file } => {
            let report = crate::verify::verify(&read_document(&file)?)?;
            let passed = report.passed();
            Ok((report.to_json(), passed))
        }
        Command::Gen { family, param } => generate(family, param).map(|d| (serde_json::to_value(d).expect("serializes"), true)),
    }
}

fn ok(v: Value) -> (Value, bool) {
    (v, true)
}

fn expect_kind(doc: Document, kind: &'static str) -> Result<Document, CliError> {
    if doc.kind() == kind {
        Ok(doc)
    } else {
        Err(CliError::Usage(format!("expected a {kind} document, found {}", doc.kind())))
    }
}

fn load_poset(file: &PathBuf) -> Result<Poset, CliError> {
    match expect_kind(read_document(file)?, "poset")? {
        Document::Poset(d) => d.build().map_err(CliError::domain),
        _ => unreachable!(),
    }
}

pub(crate) fn load_category(file: &PathBuf) -> Result<FinCategory, CliError> {
    match expect_kind(read_document(file)?, "category")? {
        Document::Category(d) => d.build().map_err(CliError::domain),
        _ => unreachable!(),
    }
}

struct PosetFlags {
    mobius: bool,
    homology: bool,
    gauss_bonnet: bool,
    antipode: bool,
    reduced: bool,
}

fn poset(file: &PathBuf, flags: PosetFlags, pair: Option<Vec<String>>) -> Result<Value, CliError> {
    if !(flags.mobius || flags.homology || flags.gauss_bonnet || flags.antipode || flags.reduced) {
        return Err(CliError::Usage(
            "poset: choose at least one of --mobius, --homology, --gauss-bonnet, --antipode, --reduced".into(),
        ));
    }
    let p = load_poset(file)?;
    let pair = match pair {
        Some(v) => {
            let x = p.index_of(&v[0]).map_err(CliError::domain)?;
            let y = p.index_of(&v[1]).map_err(CliError::domain)?;
            Some((x, y))
        }
        None => None,
    };
    let alg = IncidenceAlgebra::new(p.clone());
    let mut out = Map::new();
    if flags.mobius {
        let mu = alg.mobius();
        match pair {
            Some((x, y)) => {
                if !p.leq(x, y) {
                    return Err(CliError::Domain(format!("`{}` is not below `{}`", p.label(x), p.label(y))));
                }
                out.insert("mu".into(), q(&alg.value(&mu, x, y)));
            }
            None => {
                out.insert("mobius".into(), interval_map(&alg, &mu));
            }
        }
    }
    if flags.homology {
        let (complex, reduced) = match pair {
            Some((x, y)) => (OrderComplex::new(&p.open_interval(x, y).map_err(CliError::domain)?), true),
            None => (OrderComplex::new(&p), true),
        };
        let h = complex.homology(reduced);
        out.insert(
            "homology".into(),
            json!({
                "lowest_dim": h.lowest_dim,
                "ranks": h.ranks,
                "euler_char": h.euler_char(),
            }),
        );
    }
    if flags.gauss_bonnet {
        let gb = gauss_bonnet(&p);
        out.insert(
            "gauss_bonnet".into(),
            json!({
                "chi": gb.chi,
                "chi_reduced": gb.chi_reduced,
                "integral_e": q(&gb.integral_e),
                "integral_e_reduced": q(&gb.integral_e_reduced),
                "mobius_sum": q(&gb.mobius_sum),
                "holds": gb.holds(),
            }),
        );
    }
    if flags.antipode {
        let Some((x, y)) = pair else {
            return Err(CliError::Usage("--antipode needs --pair X Y".into()));
        };
        let s = alg.antipode_eval(x, y).map_err(CliError::domain)?;
        out.insert("antipode".into(), q(&s));
    }
    if flags.reduced {
        let r = reduced_context(&p);
        let mu = r.mobius();
        let classes: Vec<Value> = r
            .classes()
            .iter()
            .enumerate()
            .map(|(c, class)| {
                let (x, y) = class.representative;
                json!({
                    "representative": format!("[{},{}]", p.label(x), p.label(y)),
                    "members": class.members.len(),
                    "mu": q(&mu.get(c)),
                })
            })
            .collect();
        out.insert("reduced".into(), Value::Array(classes));
    }
    Ok(Value::Object(out))
}

fn digraph(file: &PathBuf, mobius: bool, check: bool) -> Result<(Value, bool), CliError> {
    if !(mobius || check) {
        return Err(CliError::Usage("digraph: choose --mobius and/or --check".into()));
    }
    let g = match expect_kind(read_document(file)?, "digraph")? {
        Document::Digraph(d) => d.build().map_err(CliError::domain)?,
        _ => unreachable!(),
    };
    let inc = GraphIncidence::new(&g).map_err(CliError::domain)?;
    let mu = inc.mobius();
    let mut out = Map::new();
    let mut success = true;
    if mobius {
        out.insert("mobius".into(), interval_map(inc.algebra(), &mu));
    }
    if check {
        let agrees = mu.by_label() == inc.mobius_by_walks().by_label();
        success &= agrees;
        out.insert("locally_finite".into(), Value::Bool(g.is_locally_finite()));
        out.insert("mobius_matches_walks".into(), Value::Bool(agrees));
    }
    Ok((Value::Object(out), success))
}

struct CatFlags {
    check: bool,
    mobius: bool,
    mu_g: bool,
    iso_classes: bool,
}

fn category(file: &PathBuf, flags: CatFlags, decomp_id: Option<String>) -> Result<Value, CliError> {
    if !(flags.check || flags.mobius || flags.mu_g || flags.iso_classes || decomp_id.is_some()) {
        return Err(CliError::Usage(
            "cat: choose at least one of --check, --mobius, --mu-g, --decomp, --iso-classes".into(),
        ));
    }
    let cat = load_category(file)?;
    let mut out = Map::new();
    if flags.check {
        let leroux = decomp::leroux_report(&cat);
        out.insert(
            "check".into(),
            json!({
                "valid": true,
                "objects": cat.object_count(),
                "morphisms": cat.morphism_count(),
                "locally_finite": cat.is_locally_finite(),
                "essentially_locally_finite": cat.is_essentially_locally_finite(),
                "isocyclic": cat.is_isocyclic(),
                "mobius_category": leroux.leroux(),
                "one_way": leroux.one_way,
                "isomorphism_filling": decomp::is_isomorphism_filling(&cat),
                "right_cancellative": decomp::is_right_cancellative(&cat),
            }),
        );
    }
    if flags.mobius {
        if cat.is_locally_finite() {
            let inc = fincat::cat_mobius(&cat).map_err(CliError::domain)?;
            out.insert("mobius".into(), interval_map(&inc.alg, &inc.mobius()));
        }
        if cat.is_essentially_locally_finite() {
            let ess = fincat::essential_mobius(&cat).map_err(CliError::domain)?;
            out.insert("essential_mobius".into(), interval_map(&ess.alg, &ess.mobius()));
        }
        if decomp::is_mobius_category(&cat) {
            let mu = decomp::morphism_mobius(&cat).map_err(CliError::domain)?;
            let map: Map<String, Value> = (0..cat.morphism_count())
                .map(|f| (cat.morphism(f).id.clone(), q(&mu.get(f))))
                .collect();
            out.insert("morphism_mobius".into(), Value::Object(map));
        }
        if out.get("mobius").is_none() && out.get("essential_mobius").is_none() && out.get("morphism_mobius").is_none() {
            return Err(CliError::Domain(
                "category is neither essentially locally finite nor a Möbius category".into(),
            ));
        }
    }
    if flags.mu_g {
        let g = fincat::xi_g_mu_g(&cat).map_err(CliError::domain)?;
        out.insert("xi_g".into(), interval_map(&g.alg, &g.xi_g));
        out.insert("mu_g".into(), interval_map(&g.alg, &g.mu_g));
    }
    if let Some(id) = decomp_id {
        let f = cat.morphism_index(&id).map_err(CliError::domain)?;
        out.insert("decomp".into(), decomposition_census(&cat, f)?);
    }
    if flags.iso_classes {
        let index = IsoClassIndex::new(&cat);
        out.insert("object_classes".into(), object_classes(&cat, &index));
        let morphisms: Vec<Vec<&str>> = index
            .morphism_classes()
            .iter()
            .map(|c| c.iter().map(|&f| cat.morphism(f).id.as_str()).collect())
            .collect();
        out.insert("morphism_classes".into(), json!(morphisms));
    }
    Ok(Value::Object(out))
}

fn object_classes(cat: &FinCategory, index: &IsoClassIndex) -> Value {
    let classes: Vec<Vec<&str>> = index
        .object_classes()
        .iter()
        .map(|c| c.iter().map(|&x| cat.objects()[x].as_str()).collect())
        .collect();
    json!(classes)
}

fn decomposition_census(cat: &FinCategory, f: usize) -> Result<Value, CliError> {
    let mut out = Map::new();
    if decomp::is_mobius_category(cat) {
        let pd = decomp::proper_decomposition_counts(cat, f);
        let n = pd.len().max(2);
        let d: Vec<usize> = (1..=n).map(|k| decomp::enumerate_dn(cat, f, k).len()).collect();
        out.insert("d".into(), json!(d));
        out.insert("pd".into(), json!(pd));
        let mu = decomp::mobius_by_proper_decompositions(cat, f).map_err(CliError::domain)?;
        out.insert("mu".into(), Value::String(mu.to_string()));
    }
    if let Ok(classes) = ClassDecompositions::new(cat) {
        let class = classes.index().morphism_class(f);
        let cards = classes.proper_cardinalities(class);
        let counts: Vec<usize> = (1..=cards.len()).map(|n| classes.census(class, n, true).class_count()).collect();
        out.insert("pd_classes".into(), json!(counts));
        out.insert("pd_groupoid".into(), Value::Array(cards.iter().map(q).collect()));
        out.insert("chi_g".into(), q(&classes.chi_g(class)));
    }
    if out.is_empty() {
        return Err(CliError::Domain(
            "decompositions need a Möbius or an essentially finite decomposition category".into(),
        ));
    }
    Ok(Value::Object(out))
}

fn arith_command(mu: Option<u64>, invert: Option<PathBuf>, mertens: Option<u64>) -> Result<Value, CliError> {
    if mu.is_none() && invert.is_none() && mertens.is_none() {
        return Err(CliError::Usage("arith: choose --mu N, --invert FILE or --mertens N".into()));
    }
    let mut out = Map::new();
    if let Some(n) = mu {
        let m = arith::classical_mobius(n).map_err(CliError::domain)?;
        out.insert("mu".into(), Value::String(m.to_string()));
    }
    if let Some(n) = mertens {
        let m = arith::mertens(n).map_err(CliError::domain)?;
        out.insert("mertens".into(), Value::String(m.to_string()));
    }
    if let Some(path) = invert {
        let bytes = std::fs::read(&path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let de = &mut serde_json::Deserializer::from_slice(&bytes);
        let coeffs: Vec<String> = serde_path_to_error::deserialize(de)
            .map_err(|e| CliError::Schema(format!("at `{}`: {}", e.path(), e.inner())))?;
        let coeffs = coeffs
            .iter()
            .map(|s| rational::parse(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Schema(format!("bad rational {:?}", e.0)))?;
        let f = TruncatedDirichlet::from_coefficients(coeffs).map_err(CliError::domain)?;
        let g = arith::dirichlet_invert(&f).map_err(CliError::domain)?;
        out.insert("inverse".into(), Value::Array(g.coefficients().iter().map(q).collect()));
    }
    Ok(Value::Object(out))
}

pub fn generate(kind: GenFamily, param: u64) -> Result<Document, CliError> {
    let k = usize::try_from(param).map_err(|_| CliError::Usage(format!("parameter {param} is too large")))?;
    let poset = |f: Family| family(f).map(|p| Document::Poset(PosetDoc::from_poset(&p))).map_err(CliError::domain);
    match kind {
        GenFamily::Chain => poset(Family::Chain(k)),
        GenFamily::Boolean => poset(Family::Boolean(k)),
        GenFamily::Divisors => poset(Family::Divisors(param)),
        GenFamily::Partitions => poset(Family::Partitions(k)),
        GenFamily::Injections => {
            let cat = FinCategory::injections(k).map_err(CliError::domain)?;
            Ok(Document::Category(CategoryDoc::from_category(&cat)))
        }
    }
}
