//! JSON file formats for categories and functors.
//!
//! The category format is a fixed contract:
//!
//! ```json
//! {"objects":["a","b"],
//!  "morphisms":[{"id":"f","dom":"a","cod":"b"}],
//!  "identities":{"a":"id_a"},
//!  "compose":[["g","f","gf"]],
//!  "order":[["m1","m2"]]}
//! ```
//!
//! Identities may be omitted per object and are then synthesized with the
//! reserved name `id_<obj>`. `compose` entries read g ∘ f = gf; identity
//! composites may be omitted. `order` lists generator pairs m1 ≤ m2; the
//! validator closes them. Unknown keys are rejected. An optional
//! `provenance` key is tolerated so completion output stays parseable.

use crate::category::{validate_category, FinPosCategory, RawCategory, ValidationError};
use crate::ids::{MorphismId, ObjectId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compose: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub order: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Bad(String),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// Parses and validates a category document.
pub fn category_from_doc(doc: &CategoryDoc) -> Result<FinPosCategory, FormatError> {
    let mut object_names = doc.objects.clone();
    let mut obj_index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, name) in object_names.iter().enumerate() {
        if obj_index.insert(name, i).is_some() {
            return Err(FormatError::Bad(format!("duplicate object {:?}", name)));
        }
    }

    let mut morphism_names: Vec<String> = Vec::new();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    let mut mor_index: BTreeMap<String, usize> = BTreeMap::new();
    let push_mor = |name: String, d: usize, c: usize, dom: &mut Vec<ObjectId>, cod: &mut Vec<ObjectId>, morphism_names: &mut Vec<String>, mor_index: &mut BTreeMap<String, usize>| -> Result<usize, FormatError> {
        if mor_index.contains_key(&name) {
            return Err(FormatError::Bad(format!("duplicate morphism {:?}", name)));
        }
        let id = morphism_names.len();
        mor_index.insert(name.clone(), id);
        morphism_names.push(name);
        dom.push(ObjectId(d as u32));
        cod.push(ObjectId(c as u32));
        Ok(id)
    };

    for m in &doc.morphisms {
        let d = *obj_index
            .get(m.dom.as_str())
            .ok_or_else(|| FormatError::Bad(format!("morphism {:?} has unknown dom {:?}", m.id, m.dom)))?;
        let c = *obj_index
            .get(m.cod.as_str())
            .ok_or_else(|| FormatError::Bad(format!("morphism {:?} has unknown cod {:?}", m.id, m.cod)))?;
        push_mor(m.id.clone(), d, c, &mut dom, &mut cod, &mut morphism_names, &mut mor_index)?;
    }

    // Identities: declared by name, or synthesized as id_<obj>.
    let mut identities: Vec<MorphismId> = Vec::with_capacity(object_names.len());
    for (x, name) in object_names.clone().iter().enumerate() {
        let id_mor = match doc.identities.get(name) {
            Some(id_name) => {
                let &i = mor_index.get(id_name).ok_or_else(|| {
                    FormatError::Bad(format!("identity {:?} of {:?} is not a declared morphism", id_name, name))
                })?;
                i
            }
            None => {
                let synth = format!("id_{}", name);
                match mor_index.get(&synth) {
                    Some(&i) => i,
                    None => push_mor(synth, x, x, &mut dom, &mut cod, &mut morphism_names, &mut mor_index)?,
                }
            }
        };
        identities.push(MorphismId(id_mor as u32));
    }
    for name in doc.identities.keys() {
        if !obj_index.contains_key(name.as_str()) {
            return Err(FormatError::Bad(format!("identities key {:?} is not an object", name)));
        }
    }

    let n_mor = morphism_names.len();
    let mut compose = vec![None; n_mor * n_mor];
    for [g, f, gf] in &doc.compose {
        let lookup = |n: &String| {
            mor_index
                .get(n)
                .copied()
                .ok_or_else(|| FormatError::Bad(format!("compose references unknown morphism {:?}", n)))
        };
        let (g, f, gf) = (lookup(g)?, lookup(f)?, lookup(gf)?);
        if let Some(prev) = compose[g * n_mor + f] {
            if prev != MorphismId(gf as u32) {
                return Err(FormatError::Bad(format!(
                    "conflicting composites for {} ∘ {}",
                    morphism_names[g], morphism_names[f]
                )));
            }
        }
        compose[g * n_mor + f] = Some(MorphismId(gf as u32));
    }
    // Identity composites may be omitted in files; fill them in.
    for f in 0..n_mor {
        let id_dom = identities[dom[f].index()].index();
        let id_cod = identities[cod[f].index()].index();
        compose[f * n_mor + id_dom].get_or_insert(MorphismId(f as u32));
        compose[id_cod * n_mor + f].get_or_insert(MorphismId(f as u32));
    }

    let mut order_pairs = Vec::new();
    for [a, b] in &doc.order {
        let lookup = |n: &String| {
            mor_index
                .get(n)
                .copied()
                .ok_or_else(|| FormatError::Bad(format!("order references unknown morphism {:?}", n)))
        };
        order_pairs.push((MorphismId(lookup(a)? as u32), MorphismId(lookup(b)? as u32)));
    }

    // Keep names user-visible order: objects as given.
    object_names.shrink_to_fit();
    Ok(validate_category(RawCategory {
        object_names,
        morphism_names,
        dom,
        cod,
        identities,
        compose,
        order_pairs,
    })?)
}

pub fn parse_category(json: &str) -> Result<FinPosCategory, FormatError> {
    let doc: CategoryDoc = serde_json::from_str(json)?;
    category_from_doc(&doc)
}

/// Serializes a category in canonical form: everything explicit (identities,
/// all composites, the non-reflexive order closure), fields in fixed order.
/// `parse_category(serialize_category(c))` reproduces `c` exactly.
pub fn category_to_doc(c: &FinPosCategory) -> CategoryDoc {
    let mut identities = BTreeMap::new();
    for x in c.objects() {
        identities.insert(c.object_name(x).to_string(), c.morphism_name(c.identity(x)).to_string());
    }
    let mut compose = Vec::new();
    for g in c.morphisms() {
        for f in c.morphisms() {
            if let Some(gf) = c.compose(g, f) {
                compose.push([
                    c.morphism_name(g).to_string(),
                    c.morphism_name(f).to_string(),
                    c.morphism_name(gf).to_string(),
                ]);
            }
        }
    }
    let mut order = Vec::new();
    for a in c.morphisms() {
        for b in c.morphisms() {
            if a != b && c.le(a, b) {
                order.push([c.morphism_name(a).to_string(), c.morphism_name(b).to_string()]);
            }
        }
    }
    CategoryDoc {
        objects: c.objects().map(|x| c.object_name(x).to_string()).collect(),
        morphisms: c
            .morphisms()
            .map(|f| MorphismDoc {
                id: c.morphism_name(f).to_string(),
                dom: c.object_name(c.dom(f)).to_string(),
                cod: c.object_name(c.cod(f)).to_string(),
            })
            .collect(),
        identities,
        compose,
        order,
        provenance: None,
    }
}

pub fn serialize_category(c: &FinPosCategory) -> String {
    serde_json::to_string_pretty(&category_to_doc(c)).expect("category serializes")
}

/// Functor document: source and target inline or by file path, then the
/// object and morphism maps by name.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub source: CategoryRef,
    pub target: CategoryRef,
    #[serde(rename = "objMap")]
    pub obj_map: BTreeMap<String, String>,
    #[serde(rename = "morMap")]
    pub mor_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(String),
    Inline(Box<CategoryDoc>),
}

impl CategoryRef {
    /// Resolves the reference. Paths support the `builtin:` scheme.
    pub fn load(&self) -> Result<FinPosCategory, FormatError> {
        match self {
            CategoryRef::Inline(doc) => category_from_doc(doc),
            CategoryRef::Path(p) => load_category_path(p),
        }
    }
}

/// Loads a category from a path or a `builtin:NAME` reference.
pub fn load_category_path(path: &str) -> Result<FinPosCategory, FormatError> {
    if let Some(name) = path.strip_prefix("builtin:") {
        return crate::category::builtin(name)
            .ok_or_else(|| FormatError::Bad(format!("unknown builtin {:?}", name)));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| FormatError::Bad(format!("cannot read {:?}: {}", path, e)))?;
    parse_category(&text)
}

/// Resolves a functor document into maps over dense ids, without validating
/// the functor laws (the functor module does that).
pub fn resolve_functor_doc(
    doc: &FunctorDoc,
) -> Result<(FinPosCategory, FinPosCategory, Vec<ObjectId>, Vec<MorphismId>), FormatError> {
    let source = doc.source.load()?;
    let target = doc.target.load()?;
    let mut obj_map = Vec::with_capacity(source.object_count());
    for x in source.objects() {
        let name = source.object_name(x);
        let mapped = doc
            .obj_map
            .get(name)
            .ok_or_else(|| FormatError::Bad(format!("objMap missing {:?}", name)))?;
        let y = target
            .objects()
            .find(|&y| target.object_name(y) == mapped)
            .ok_or_else(|| FormatError::Bad(format!("objMap target {:?} unknown", mapped)))?;
        obj_map.push(y);
    }
    let mut mor_map = Vec::with_capacity(source.morphism_count());
    for f in source.morphisms() {
        let name = source.morphism_name(f);
        let mapped = doc
            .mor_map
            .get(name)
            .ok_or_else(|| FormatError::Bad(format!("morMap missing {:?}", name)))?;
        let g = target
            .morphisms()
            .find(|&g| target.morphism_name(g) == mapped)
            .ok_or_else(|| FormatError::Bad(format!("morMap target {:?} unknown", mapped)))?;
        mor_map.push(g);
    }
    Ok((source, target, obj_map, mor_map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{fixture_arrow, fixture_idem, fixture_one};
    use proptest::prelude::*;

    #[test]
    fn documented_example_parses() {
        let json = r#"{"objects":["a","b"],
            "morphisms":[{"id":"f","dom":"a","cod":"b"}],
            "compose":[],
            "order":[]}"#;
        let c = parse_category(json).unwrap();
        assert_eq!(c.object_count(), 2);
        // f plus two synthesized identities
        assert_eq!(c.morphism_count(), 3);
        assert!(c.isomorphic_to(&fixture_arrow()));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let json = r#"{"objects":["a"],"morphisms":[],"extra":1}"#;
        assert!(matches!(parse_category(json), Err(FormatError::Json(_))));
    }

    #[test]
    fn unknown_references_are_rejected() {
        let json = r#"{"objects":["a"],"morphisms":[{"id":"f","dom":"a","cod":"zz"}]}"#;
        assert!(matches!(parse_category(json), Err(FormatError::Bad(_))));
        let json = r#"{"objects":["a"],"morphisms":[],"order":[["p","q"]]}"#;
        assert!(matches!(parse_category(json), Err(FormatError::Bad(_))));
    }

    #[test]
    fn missing_composite_is_a_validation_error() {
        // e ∘ e is required but absent
        let json = r#"{"objects":["x"],
            "morphisms":[{"id":"e","dom":"x","cod":"x"}]}"#;
        match parse_category(json) {
            Err(FormatError::Invalid(ValidationError::MissingComposite { .. })) => {}
            other => panic!("expected MissingComposite, got {:?}", other),
        }
    }

    #[test]
    fn fixtures_round_trip_bit_exact() {
        for c in [fixture_one(), fixture_arrow(), fixture_idem()] {
            let s = serialize_category(&c);
            let back = parse_category(&s).unwrap();
            assert_eq!(back, c);
            assert_eq!(serialize_category(&back), s);
        }
    }

    #[test]
    fn builtin_scheme_resolves() {
        assert!(load_category_path("builtin:ONE").is_ok());
        assert!(load_category_path("builtin:arrow").is_ok());
        assert!(load_category_path("builtin:NOPE").is_err());
    }

    proptest! {
        #[test]
        fn corpus_round_trips(ix in 0usize..200) {
            let cats = crate::enumerate::enumerate_categories(2, 4).unwrap();
            let c = &cats[ix % cats.len()];
            let s = serialize_category(c);
            let back = parse_category(&s).unwrap();
            prop_assert_eq!(&back, c);
            prop_assert_eq!(serialize_category(&back), s);
        }
    }
}
