//! JSON documents and their conversion to library values.

use std::collections::BTreeMap;

use bfly_core::action::GroupAction;
use bfly_core::cmodule::{CModule, CModuleMorphism};
use bfly_core::group::{build_group_capped, FiniteGroup, GroupHom};
use bfly_core::h2::AbelianExtension;
use bfly_core::h3::{Butterfly, CrossedExtension, Wings, XExtMorphism};
use bfly_core::oracle::cochain::{tuple_at, tuple_count};
use bfly_core::oracle::Cochain;
use bfly_core::xmod::CrossedModule;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error at {pointer:?}: {message}")]
    Schema { pointer: String, message: String },
    #[error("unknown document kind {0:?}")]
    UnknownKind(String),
    #[error("expected a {expected} document, found {found}")]
    WrongKind { expected: &'static str, found: String },
    #[error("unresolved reference {0:?}")]
    Reference(String),
    #[error("manifest hash mismatch for {0}")]
    Manifest(String),
    #[error("{0}")]
    Invalid(String),
}

impl DocError {
    pub fn invalid(e: impl std::fmt::Display) -> Self {
        DocError::Invalid(e.to_string())
    }
}

type Result<T> = std::result::Result<T, DocError>;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub dom: GroupDoc,
    pub cod: GroupDoc,
    pub map: Vec<usize>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub actor: GroupDoc,
    pub object: GroupDoc,
    pub act: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub base: GroupDoc,
    pub coeff: GroupDoc,
    pub act: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModuleMorphismDoc {
    pub dom: ModuleDoc,
    pub cod: ModuleDoc,
    pub hom: Vec<usize>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CrossedModuleDoc {
    pub boundary: HomDoc,
    pub action: ActionDoc,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    pub kernel: HomDoc,
    pub quotient: HomDoc,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CrossedExtensionDoc {
    pub j: HomDoc,
    pub boundary: HomDoc,
    pub action: ActionDoc,
    pub p: HomDoc,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct XExtMorphismDoc {
    pub dom: CrossedExtensionDoc,
    pub cod: CrossedExtensionDoc,
    pub beta: Vec<usize>,
    pub f2: Vec<usize>,
    pub f1: Vec<usize>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ButterflyDoc {
    pub dom: CrossedExtensionDoc,
    pub cod: CrossedExtensionDoc,
    #[serde(rename = "F")]
    pub middle: GroupDoc,
    pub kappa: Vec<usize>,
    pub iota: Vec<usize>,
    pub delta: Vec<usize>,
    pub gamma: Vec<usize>,
}

/// Values keyed by comma-separated tuples; absent tuples are zero.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CochainDoc {
    pub degree: usize,
    pub values: BTreeMap<String, usize>,
}

/// A loaded document, already validated by the library constructors
/// (cochains wait for a module).
#[derive(Clone, Debug)]
pub enum Document {
    Group(FiniteGroup),
    Hom(GroupHom),
    Action(GroupAction),
    Module(CModule),
    ModuleMorphism(CModuleMorphism),
    CrossedModule(CrossedModule),
    Extension(AbelianExtension),
    CrossedExtension(CrossedExtension),
    XExtMorphism(XExtMorphism),
    Butterfly(Butterfly),
    Cochain(CochainDoc),
}

pub const KINDS: [&str; 11] = [
    "group",
    "hom",
    "action",
    "module",
    "module-morphism",
    "crossed-module",
    "extension",
    "crossed-extension",
    "xext-morphism",
    "butterfly",
    "cochain",
];

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::Hom(_) => "hom",
            Document::Action(_) => "action",
            Document::Module(_) => "module",
            Document::ModuleMorphism(_) => "module-morphism",
            Document::CrossedModule(_) => "crossed-module",
            Document::Extension(_) => "extension",
            Document::CrossedExtension(_) => "crossed-extension",
            Document::XExtMorphism(_) => "xext-morphism",
            Document::Butterfly(_) => "butterfly",
            Document::Cochain(_) => "cochain",
        }
    }

    /// The JSON body without the `kind` field.
    pub fn body(&self) -> Value {
        let v = match self {
            Document::Group(g) => serde_json::to_value(group_doc(g)),
            Document::Hom(h) => serde_json::to_value(hom_doc(h)),
            Document::Action(a) => serde_json::to_value(action_doc(a)),
            Document::Module(m) => serde_json::to_value(module_doc(m)),
            Document::ModuleMorphism(b) => serde_json::to_value(module_morphism_doc(b)),
            Document::CrossedModule(x) => serde_json::to_value(crossed_module_doc(x)),
            Document::Extension(e) => serde_json::to_value(extension_doc(e)),
            Document::CrossedExtension(e) => serde_json::to_value(crossed_extension_doc(e)),
            Document::XExtMorphism(m) => serde_json::to_value(xext_morphism_doc(m)),
            Document::Butterfly(b) => serde_json::to_value(butterfly_doc(b)),
            Document::Cochain(c) => serde_json::to_value(c),
        };
        v.expect("documents serialize")
    }

    /// Pretty-printed JSON with `kind` first, ending in a newline.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Envelope<'a> {
            kind: &'a str,
            #[serde(flatten)]
            body: Value,
        }
        let mut s = serde_json::to_string_pretty(&Envelope { kind: self.kind(), body: self.body() }).expect("serializable");
        s.push('\n');
        s
    }
}

/// Deserializes with a JSON-pointer path on failure.
pub fn from_value<T: DeserializeOwned>(v: Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let pointer = json_pointer(e.path());
        DocError::Schema { pointer, message: e.into_inner().to_string() }
    })
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

/// Parses raw text, reporting syntax errors (including truncation) as
/// schema errors at the document root.
pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| DocError::Schema { pointer: String::new(), message: e.to_string() })
}

/// Builds a document from a body whose references are already resolved.
pub fn decode(kind: &str, body: Value, cap: usize) -> Result<Document> {
    Ok(match kind {
        "group" => Document::Group(group(&from_value(body)?, cap)?),
        "hom" => Document::Hom(hom(&from_value(body)?, cap)?),
        "action" => Document::Action(action(&from_value(body)?, cap)?),
        "module" => Document::Module(module(&from_value(body)?, cap)?),
        "module-morphism" => Document::ModuleMorphism(module_morphism(&from_value(body)?, cap)?),
        "crossed-module" => Document::CrossedModule(crossed_module(&from_value(body)?, cap)?),
        "extension" => Document::Extension(extension(&from_value(body)?, cap)?),
        "crossed-extension" => Document::CrossedExtension(crossed_extension(&from_value(body)?, cap)?),
        "xext-morphism" => Document::XExtMorphism(xext_morphism(&from_value(body)?, cap)?),
        "butterfly" => Document::Butterfly(butterfly(&from_value(body)?, cap)?),
        "cochain" => Document::Cochain(from_value(body)?),
        other => return Err(DocError::UnknownKind(other.to_string())),
    })
}

pub fn group_doc(g: &FiniteGroup) -> GroupDoc {
    GroupDoc { order: g.order(), table: g.table_rows() }
}

pub fn group(d: &GroupDoc, cap: usize) -> Result<FiniteGroup> {
    if d.order != d.table.len() {
        return Err(DocError::Invalid(format!("order {} does not match a table with {} rows", d.order, d.table.len())));
    }
    build_group_capped(&d.table, cap).map_err(DocError::invalid)
}

pub fn hom_doc(h: &GroupHom) -> HomDoc {
    HomDoc { dom: group_doc(h.dom()), cod: group_doc(h.cod()), map: h.map().to_vec() }
}

pub fn hom(d: &HomDoc, cap: usize) -> Result<GroupHom> {
    GroupHom::new(&group(&d.dom, cap)?, &group(&d.cod, cap)?, d.map.clone()).map_err(DocError::invalid)
}

fn hom_between(dom: &FiniteGroup, cod: &FiniteGroup, map: &[usize]) -> Result<GroupHom> {
    GroupHom::new(dom, cod, map.to_vec()).map_err(DocError::invalid)
}

pub fn action_doc(a: &GroupAction) -> ActionDoc {
    ActionDoc { actor: group_doc(a.actor()), object: group_doc(a.object()), act: a.rows() }
}

pub fn action(d: &ActionDoc, cap: usize) -> Result<GroupAction> {
    GroupAction::from_rows(&group(&d.actor, cap)?, &group(&d.object, cap)?, &d.act).map_err(DocError::invalid)
}

pub fn module_doc(m: &CModule) -> ModuleDoc {
    ModuleDoc { base: group_doc(m.base()), coeff: group_doc(m.coeff()), act: m.action().rows() }
}

pub fn module(d: &ModuleDoc, cap: usize) -> Result<CModule> {
    CModule::build(&group(&d.base, cap)?, &group(&d.coeff, cap)?, &d.act).map_err(DocError::invalid)
}

pub fn module_morphism_doc(b: &CModuleMorphism) -> ModuleMorphismDoc {
    ModuleMorphismDoc { dom: module_doc(b.dom()), cod: module_doc(b.cod()), hom: b.hom().map().to_vec() }
}

pub fn module_morphism(d: &ModuleMorphismDoc, cap: usize) -> Result<CModuleMorphism> {
    CModuleMorphism::from_map(&module(&d.dom, cap)?, &module(&d.cod, cap)?, d.hom.clone()).map_err(DocError::invalid)
}

pub fn crossed_module_doc(x: &CrossedModule) -> CrossedModuleDoc {
    CrossedModuleDoc { boundary: hom_doc(x.boundary()), action: action_doc(x.action()) }
}

pub fn crossed_module(d: &CrossedModuleDoc, cap: usize) -> Result<CrossedModule> {
    CrossedModule::new(hom(&d.boundary, cap)?, action(&d.action, cap)?).map_err(DocError::invalid)
}

pub fn extension_doc(e: &AbelianExtension) -> ExtensionDoc {
    ExtensionDoc { kernel: hom_doc(e.kappa()), quotient: hom_doc(e.gamma()) }
}

pub fn extension(d: &ExtensionDoc, cap: usize) -> Result<AbelianExtension> {
    AbelianExtension::new(hom(&d.kernel, cap)?, hom(&d.quotient, cap)?).map_err(DocError::invalid)
}

pub fn crossed_extension_doc(e: &CrossedExtension) -> CrossedExtensionDoc {
    CrossedExtensionDoc { j: hom_doc(e.j()), boundary: hom_doc(e.boundary()), action: action_doc(e.xm().action()), p: hom_doc(e.p()) }
}

pub fn crossed_extension(d: &CrossedExtensionDoc, cap: usize) -> Result<CrossedExtension> {
    CrossedExtension::build(hom(&d.j, cap)?, hom(&d.boundary, cap)?, action(&d.action, cap)?, hom(&d.p, cap)?).map_err(DocError::invalid)
}

pub fn xext_morphism_doc(m: &XExtMorphism) -> XExtMorphismDoc {
    XExtMorphismDoc {
        dom: crossed_extension_doc(&m.dom),
        cod: crossed_extension_doc(&m.cod),
        beta: m.beta.hom().map().to_vec(),
        f2: m.f2.map().to_vec(),
        f1: m.f1.map().to_vec(),
    }
}

pub fn xext_morphism(d: &XExtMorphismDoc, cap: usize) -> Result<XExtMorphism> {
    let (dom, cod) = (crossed_extension(&d.dom, cap)?, crossed_extension(&d.cod, cap)?);
    let beta = CModuleMorphism::from_map(dom.module(), cod.module(), d.beta.clone()).map_err(DocError::invalid)?;
    let f2 = hom_between(dom.e2(), cod.e2(), &d.f2)?;
    let f1 = hom_between(dom.e1(), cod.e1(), &d.f1)?;
    XExtMorphism::new(&dom, &cod, &beta, f2, f1).map_err(DocError::invalid)
}

pub fn butterfly_doc(b: &Butterfly) -> ButterflyDoc {
    ButterflyDoc {
        dom: crossed_extension_doc(b.dom()),
        cod: crossed_extension_doc(b.cod()),
        middle: group_doc(b.middle()),
        kappa: b.kappa().map().to_vec(),
        iota: b.iota().map().to_vec(),
        delta: b.delta().map().to_vec(),
        gamma: b.gamma().map().to_vec(),
    }
}

pub fn butterfly(d: &ButterflyDoc, cap: usize) -> Result<Butterfly> {
    let (dom, cod) = (crossed_extension(&d.dom, cap)?, crossed_extension(&d.cod, cap)?);
    let f = group(&d.middle, cap)?;
    let wings = Wings {
        kappa: hom_between(dom.e2(), &f, &d.kappa)?,
        iota: hom_between(cod.e2(), &f, &d.iota)?,
        delta: hom_between(&f, dom.e1(), &d.delta)?,
        gamma: hom_between(&f, cod.e1(), &d.gamma)?,
    };
    Butterfly::new(&dom, &cod, wings).map_err(DocError::invalid)
}

/// Every tuple of nonzero elements with its value, zeros included.
pub fn cochain_doc(f: &Cochain) -> CochainDoc {
    let n = f.module().base().order();
    let values = (0..tuple_count(n, f.degree()))
        .map(|i| {
            let key = tuple_at(n, f.degree(), i).iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            (key, f.values()[i])
        })
        .collect();
    CochainDoc { degree: f.degree(), values }
}

pub fn cochain(d: &CochainDoc, m: &CModule) -> Result<Cochain> {
    let n = m.base().order();
    let mut values = vec![0; tuple_count(n, d.degree)];
    for (key, &v) in &d.values {
        let tuple: Vec<usize> = if key.is_empty() {
            Vec::new()
        } else {
            key.split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| DocError::Schema { pointer: format!("/values/{key}"), message: "tuple keys are comma-separated indices".into() })?
        };
        if tuple.len() != d.degree || tuple.iter().any(|&c| c >= n) {
            return Err(DocError::Schema { pointer: format!("/values/{key}"), message: format!("not a {}-tuple of elements of C", d.degree) });
        }
        match bfly_core::oracle::cochain::tuple_index(n, &tuple) {
            Some(i) => values[i] = v,
            None if v == 0 => {}
            None => return Err(DocError::Invalid(format!("cochain is not normalized at ({key})"))),
        }
    }
    Cochain::from_values(m, d.degree, values).map_err(DocError::invalid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bfly_core::catalog::{standard_catalog, z4_crossed};
    use bfly_core::group::DEFAULT_ORDER_CAP;
    use bfly_core::h3::identity_butterfly;

    fn round_trip(doc: &Document) {
        let text = doc.to_json();
        let v = parse_text(&text).unwrap();
        let Value::Object(mut map) = v else { panic!("object") };
        let kind = map.remove("kind").unwrap();
        let back = decode(kind.as_str().unwrap(), Value::Object(map), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn catalog_round_trips() {
        let cat = standard_catalog().unwrap();
        for m in &cat.modules {
            round_trip(&Document::Module(m.value.clone()));
        }
        for e in &cat.extensions {
            round_trip(&Document::Extension(e.value.clone()));
        }
        for e in cat.crossed.iter().take(30) {
            round_trip(&Document::CrossedExtension(e.value.clone()));
        }
        round_trip(&Document::Butterfly(identity_butterfly(&z4_crossed(true))));
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let v = serde_json::json!({"order": 2, "table": [[0, 1], [1, "x"]]});
        match decode("group", v, DEFAULT_ORDER_CAP) {
            Err(DocError::Schema { pointer, .. }) => assert_eq!(pointer, "/table/1/1"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_text("{\"order\": 2, \"tab"), Err(DocError::Schema { .. })));
        let broken = serde_json::json!({"order": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 1, 0]]});
        assert!(matches!(decode("group", broken, DEFAULT_ORDER_CAP), Err(DocError::Invalid(_))));
    }

    #[test]
    fn cochain_keys() {
        let z2 = FiniteGroup::cyclic(2);
        let m = CModule::trivial(&z2, &z2).unwrap();
        let d = CochainDoc { degree: 2, values: [("1,1".to_string(), 1), ("0,1".to_string(), 0)].into() };
        let f = cochain(&d, &m).unwrap();
        assert_eq!(f.values(), &[1]);
        assert_eq!(cochain_doc(&f).values.len(), 1);
        let bad = CochainDoc { degree: 2, values: [("0,1".to_string(), 1)].into() };
        assert!(cochain(&bad, &m).is_err());
    }
}
