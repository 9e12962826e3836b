//! Embedding specs: builtin tags or a JSON file.

use std::path::Path;
use std::sync::Arc;

use branchlab::{Embedding, Error, Result, RootSystem};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Body of an embedding file.
#[derive(Clone, Debug, Deserialize)]
pub struct EmbeddingFile {
    pub source: String,
    pub target: String,
    pub matrix: Vec<Vec<i64>>,
}

/// Fields in sorted order, so the serialization is canonical.
#[derive(Serialize)]
struct Canonical<'a> {
    matrix: &'a [Vec<i64>],
    source: String,
    target: String,
}

/// A resolved embedding together with its cache fingerprint.
pub struct LoadedEmbedding {
    pub embedding: Embedding,
    pub fingerprint: String,
}

fn simple(ty: &str, tag: &str) -> Result<RootSystem> {
    let rs = RootSystem::build(ty)?;
    if tag == "principal-a1" && !rs.is_simple() {
        return Err(Error::UnsupportedType(format!("{ty} (principal-a1 needs a simple type)")));
    }
    Ok(rs)
}

/// Resolves `diag:TYPE`, `principal-a1:TYPE`, `id:TYPE` or a path to an
/// embedding file.
pub fn load(spec: &str) -> Result<LoadedEmbedding> {
    let embedding = match spec.split_once(':') {
        Some(("diag", ty)) => Embedding::diagonal(&simple(ty, "diag")?)?,
        Some(("principal-a1", ty)) => Embedding::principal_a1(&simple(ty, "principal-a1")?)?,
        Some(("id", ty)) => Embedding::identity(&simple(ty, "id")?)?,
        _ => from_file(Path::new(spec))?,
    };
    let fingerprint = fingerprint(&embedding);
    Ok(LoadedEmbedding { embedding, fingerprint })
}

fn from_file(path: &Path) -> Result<Embedding> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read embedding spec `{}`: {e}", path.display())))?;
    let body: EmbeddingFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("embedding spec `{}`: {e}", path.display())))?;
    let source = Arc::new(RootSystem::build(&body.source)?);
    let target = Arc::new(RootSystem::build(&body.target)?);
    Embedding::new(source, target, body.matrix, None)
}

/// Canonical JSON of the embedding: sorted keys, normalized type strings.
pub fn canonical_json(e: &Embedding) -> String {
    let c = Canonical {
        matrix: e.restriction(),
        source: e.source().type_string(),
        target: e.target().type_string(),
    };
    serde_json::to_string(&c).expect("plain data serializes")
}

/// Hex SHA-256 of the canonical JSON.
pub fn fingerprint(e: &Embedding) -> String {
    let digest = Sha256::digest(canonical_json(e).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
