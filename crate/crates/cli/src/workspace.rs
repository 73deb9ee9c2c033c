//! A directory of named documents with a hash manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::doc::{decode, parse_text, DocError, Document};

pub const MANIFEST: &str = "manifest.json";
const MAX_REF_DEPTH: usize = 32;

#[derive(Serialize, Deserialize, Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    pub documents: BTreeMap<String, ManifestEntry>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub kind: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> DocError {
    DocError::Io { path: path.display().to_string(), message: e.to_string() }
}

impl Manifest {
    pub fn read(dir: &Path) -> Result<Option<Manifest>, DocError> {
        let path = dir.join(MANIFEST);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path).map_err(|e| io_error(&path, e))?;
        crate::doc::from_value(parse_text(&text)?).map(Some)
    }

    pub fn write(&self, dir: &Path) -> Result<(), DocError> {
        let mut text = serde_json::to_string_pretty(self).expect("serializable");
        text.push('\n');
        let path = dir.join(MANIFEST);
        fs::write(&path, text).map_err(|e| io_error(&path, e))
    }
}

#[derive(Clone, Debug)]
pub struct Workspace {
    root: Option<PathBuf>,
    cap: usize,
}

impl Workspace {
    pub fn new(root: Option<PathBuf>, cap: usize) -> Self {
        Workspace { root, cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Where new documents go: the workspace, or the current directory.
    pub fn output_dir(&self) -> PathBuf {
        self.root.clone().unwrap_or_else(|| PathBuf::from("."))
    }

    /// A path as given, or a name inside the workspace (`.json` optional).
    pub fn locate(&self, name: &str) -> Result<PathBuf, DocError> {
        let direct = PathBuf::from(name);
        if direct.is_file() {
            return Ok(direct);
        }
        if let Some(root) = &self.root {
            for candidate in [root.join(name), root.join(format!("{name}.json"))] {
                if candidate.is_file() {
                    return Ok(candidate);
                }
            }
        }
        Err(io_error(&direct, "no such document"))
    }

    /// Reads a file, checking it against the manifest of its directory.
    fn read_checked(&self, path: &Path) -> Result<Value, DocError> {
        let bytes = fs::read(path).map_err(|e| io_error(path, e))?;
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if let Some(manifest) = Manifest::read(dir)? {
            let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
            if let Some(entry) = manifest.documents.get(&file) {
                if entry.sha256 != sha256_hex(&bytes) {
                    return Err(DocError::Manifest(file));
                }
            }
        }
        parse_text(&String::from_utf8_lossy(&bytes))
    }

    /// Replaces every `{"$ref": name}` by the named document's body,
    /// looked up next to the referring file.
    fn resolve(&self, v: Value, dir: &Path, depth: usize) -> Result<Value, DocError> {
        match v {
            Value::Object(map) => {
                if let (1, Some(Value::String(name))) = (map.len(), map.get("$ref")) {
                    if depth >= MAX_REF_DEPTH {
                        return Err(DocError::Reference(name.clone()));
                    }
                    let path = [dir.join(name), dir.join(format!("{name}.json"))]
                        .into_iter()
                        .find(|p| p.is_file())
                        .ok_or_else(|| DocError::Reference(name.clone()))?;
                    let Value::Object(mut target) = self.read_checked(&path)? else {
                        return Err(DocError::Reference(name.clone()));
                    };
                    target.remove("kind");
                    return self.resolve(Value::Object(target), dir, depth + 1);
                }
                map.into_iter()
                    .map(|(k, v)| Ok((k, self.resolve(v, dir, depth)?)))
                    .collect::<Result<serde_json::Map<_, _>, _>>()
                    .map(Value::Object)
            }
            Value::Array(items) => items.into_iter().map(|v| self.resolve(v, dir, depth)).collect::<Result<_, _>>().map(Value::Array),
            other => Ok(other),
        }
    }

    pub fn load(&self, name: &str) -> Result<Document, DocError> {
        let path = self.locate(name)?;
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new(".")).to_path_buf();
        let Value::Object(mut map) = self.read_checked(&path)? else {
            return Err(DocError::Schema { pointer: String::new(), message: "a document is a JSON object".into() });
        };
        let kind = match map.remove("kind") {
            Some(Value::String(k)) => k,
            _ => return Err(DocError::Schema { pointer: "/kind".into(), message: "missing document kind".into() }),
        };
        let body = self.resolve(Value::Object(map), &dir, 0)?;
        decode(&kind, body, self.cap)
    }

    /// Writes `<name>.json` into the output directory and records it in the
    /// manifest there.
    pub fn save(&self, name: &str, doc: &Document) -> Result<PathBuf, DocError> {
        let dir = self.output_dir();
        fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
        save_in(&dir, name, doc)
    }
}

pub fn save_in(dir: &Path, name: &str, doc: &Document) -> Result<PathBuf, DocError> {
    let file = if name.ends_with(".json") { name.to_string() } else { format!("{name}.json") };
    let path = dir.join(&file);
    let text = doc.to_json();
    fs::write(&path, &text).map_err(|e| io_error(&path, e))?;
    let mut manifest = Manifest::read(dir)?.unwrap_or_default();
    manifest.documents.insert(file, ManifestEntry { kind: doc.kind().to_string(), sha256: sha256_hex(text.as_bytes()) });
    manifest.write(dir)?;
    Ok(path)
}

macro_rules! typed_loader {
    ($fn:ident, $variant:ident, $ty:ty, $kind:literal) => {
        impl Workspace {
            pub fn $fn(&self, name: &str) -> Result<$ty, DocError> {
                match self.load(name)? {
                    Document::$variant(x) => Ok(x),
                    other => Err(DocError::WrongKind { expected: $kind, found: other.kind().to_string() }),
                }
            }
        }
    };
}

typed_loader!(load_module, Module, bfly_core::cmodule::CModule, "module");
typed_loader!(load_module_morphism, ModuleMorphism, bfly_core::cmodule::CModuleMorphism, "module-morphism");
typed_loader!(load_extension, Extension, bfly_core::h2::AbelianExtension, "extension");
typed_loader!(load_crossed_extension, CrossedExtension, bfly_core::h3::CrossedExtension, "crossed-extension");
typed_loader!(load_xext_morphism, XExtMorphism, bfly_core::h3::XExtMorphism, "xext-morphism");
typed_loader!(load_butterfly, Butterfly, bfly_core::h3::Butterfly, "butterfly");
typed_loader!(load_cochain, Cochain, crate::doc::CochainDoc, "cochain");

#[cfg(test)]
mod tests {
    use super::*;
    use bfly_core::group::{FiniteGroup, DEFAULT_ORDER_CAP};

    #[test]
    fn save_load_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let ws = Workspace::new(Some(dir.path().to_path_buf()), DEFAULT_ORDER_CAP);
        let z4 = Document::Group(FiniteGroup::cyclic(4));
        ws.save("z4", &z4).unwrap();
        let back = ws.load("z4").unwrap();
        assert_eq!(back.to_json(), z4.to_json());
        let manifest = Manifest::read(dir.path()).unwrap().unwrap();
        assert_eq!(manifest.documents["z4.json"].kind, "group");
        // tampering is caught
        let path = dir.path().join("z4.json");
        let text = fs::read_to_string(&path).unwrap().replace("\"order\": 4", "\"order\":4");
        fs::write(&path, text).unwrap();
        assert!(matches!(ws.load("z4"), Err(DocError::Manifest(_))));
    }

    #[test]
    fn references_resolve() {
        let dir = tempfile::tempdir().unwrap();
        let ws = Workspace::new(Some(dir.path().to_path_buf()), DEFAULT_ORDER_CAP);
        ws.save("z2", &Document::Group(FiniteGroup::cyclic(2))).unwrap();
        let hom = r#"{"kind": "hom", "dom": {"$ref": "z2"}, "cod": {"$ref": "z2.json"}, "map": [0, 1]}"#;
        fs::write(dir.path().join("id.json"), hom).unwrap();
        assert!(matches!(ws.load("id").unwrap(), Document::Hom(_)));
        fs::write(dir.path().join("loop.json"), r#"{"kind": "hom", "dom": {"$ref": "loop"}, "cod": {"$ref": "z2"}, "map": [0]}"#).unwrap();
        assert!(ws.load("loop").is_err());
        assert!(matches!(ws.load("missing"), Err(DocError::Io { .. })));
    }
}
