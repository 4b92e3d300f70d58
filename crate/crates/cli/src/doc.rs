//! JSON input documents.

use std::collections::BTreeMap;

use mobius_core::digraph::{DigraphError, ReflexiveDigraph};
use mobius_core::fincat::{FinCatError, FinCategory};
use mobius_core::poset::{Poset, PosetError, RelationMode};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Poset(PosetDoc),
    Digraph(DigraphDoc),
    Category(CategoryDoc),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Cover,
    #[default]
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub relations: Vec<(String, String)>,
    #[serde(default)]
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<EdgeDoc>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<(String, String, String)>,
}

impl Document {
    pub fn parse(bytes: &[u8]) -> Result<Self, CliError> {
        // Dispatch on `kind` by hand: serde's internally tagged enums buffer
        // their content and lose the error path.
        let schema = |path: &str, msg: &dyn std::fmt::Display| CliError::Schema(format!("at `{path}`: {msg}"));
        let mut value: serde_json::Value = serde_json::from_slice(bytes).map_err(|e| schema(".", &e))?;
        let obj = value.as_object_mut().ok_or_else(|| schema(".", &"expected an object"))?;
        let kind = match obj.remove("kind") {
            Some(serde_json::Value::String(k)) => k,
            Some(_) => return Err(schema("kind", &"expected a string")),
            None => return Err(schema(".", &"missing field `kind`")),
        };
        fn body<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T, CliError> {
            serde_path_to_error::deserialize(value)
                .map_err(|e| CliError::Schema(format!("at `{}`: {}", e.path(), e.inner())))
        }
        match kind.as_str() {
            "poset" => body(value).map(Document::Poset),
            "digraph" => body(value).map(Document::Digraph),
            "category" => body(value).map(Document::Category),
            other => Err(schema(
                "kind",
                &format!("unknown kind `{other}`, expected one of `poset`, `digraph`, `category`"),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Poset(_) => "poset",
            Document::Digraph(_) => "digraph",
            Document::Category(_) => "category",
        }
    }
}

impl PosetDoc {
    pub fn build(&self) -> Result<Poset, PosetError> {
        let mode = match self.mode {
            Mode::Cover => RelationMode::Cover,
            Mode::Full => RelationMode::Full,
        };
        Poset::from_labels(self.elements.clone(), &self.relations, mode)
    }

    /// The cover relations of `p`.
    pub fn from_poset(p: &Poset) -> Self {
        Self {
            elements: p.labels().to_vec(),
            relations: p
                .cover_pairs()
                .into_iter()
                .map(|(x, y)| (p.label(x).to_string(), p.label(y).to_string()))
                .collect(),
            mode: Mode::Cover,
        }
    }
}

impl DigraphDoc {
    pub fn build(&self) -> Result<ReflexiveDigraph, DigraphError> {
        let edges: Vec<(String, String, String)> = self
            .edges
            .iter()
            .map(|e| (e.id.clone(), e.src.clone(), e.tgt.clone()))
            .collect();
        ReflexiveDigraph::from_labels(self.vertices.clone(), &edges)
    }
}

impl CategoryDoc {
    pub fn build(&self) -> Result<FinCategory, FinCatError> {
        let morphisms: Vec<(String, String, String)> = self
            .morphisms
            .iter()
            .map(|e| (e.id.clone(), e.src.clone(), e.tgt.clone()))
            .collect();
        let identities: Vec<(String, String)> =
            self.identities.iter().map(|(o, f)| (o.clone(), f.clone())).collect();
        FinCategory::from_labels(self.objects.clone(), &morphisms, &identities, &self.compose)
    }

    /// The full composition table of `cat`.
    pub fn from_category(cat: &FinCategory) -> Self {
        let id = |f: usize| cat.morphism(f).id.clone();
        Self {
            objects: cat.objects().to_vec(),
            morphisms: cat
                .morphisms()
                .iter()
                .map(|f| EdgeDoc {
                    id: f.id.clone(),
                    src: cat.objects()[f.src].clone(),
                    tgt: cat.objects()[f.tgt].clone(),
                })
                .collect(),
            identities: (0..cat.object_count())
                .map(|x| (cat.objects()[x].clone(), id(cat.identity(x))))
                .collect(),
            compose: cat.table().into_iter().map(|(g, f, gf)| (id(g), id(f), id(gf))).collect(),
        }
    }
}
