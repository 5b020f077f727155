//! Built-in examples: group files and their expected reports.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::format::Document;

pub struct CatalogEntry {
    pub id: &'static str,
    pub summary: &'static str,
    /// Group-definition file.
    pub source: &'static str,
    /// Expected output of the full report.
    pub expected: &'static str,
}

macro_rules! entry {
    ($id:literal, $summary:literal) => {
        CatalogEntry {
            id: $id,
            summary: $summary,
            source: include_str!(concat!("../catalog/", $id, ".hopf")),
            expected: include_str!(concat!("../catalog/", $id, ".expected")),
        }
    };
}

pub const CATALOG: &[CatalogEntry] = &[
    entry!("heisenberg3", "Heisenberg group, twist from the normal subgroup {X, V}"),
    entry!("u3", "Heisenberg group, twist from the normal subgroup {Y, V}"),
    entry!("jordan4-abelian", "jordan group, twist from the abelian subgroup {X, V}"),
    entry!("jordan4-minimal", "jordan group, minimal twist for r = a^c + d^b"),
    entry!("u4-ex5", "U(4), twist from T = {F12, F34}"),
    entry!("u4-ex6", "U(4), minimal jordan twist pulled back"),
];

pub fn entry(id: &str) -> Result<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.id == id).ok_or_else(|| {
        let ids: Vec<&str> = CATALOG.iter().map(|e| e.id).collect();
        Error::Input(format!("unknown example {id} (known: {})", ids.join(", ")))
    })
}

/// The parsed document of an example, shared within the process so that
/// cocycles are built once.
pub fn load(id: &str) -> Result<Arc<Document>> {
    static CACHE: OnceLock<Mutex<HashMap<&'static str, Arc<Document>>>> = OnceLock::new();
    let e = entry(id)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap_or_else(|p| p.into_inner()).get(e.id) {
        return Ok(d.clone());
    }
    let d = Arc::new(Document::parse(e.source)?);
    Ok(cache.lock().unwrap_or_else(|p| p.into_inner()).entry(e.id).or_insert(d).clone())
}
