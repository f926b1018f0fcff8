//! The sixteen reflexive polygons, by name.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::polygon::{pt, Polygon};

const CATALOG_JSON: &str = include_str!("../../../polygons.json");

#[derive(Deserialize)]
struct Entry {
    name: String,
    vertices: Vec<[i64; 2]>,
}

/// Named polygons from a JSON list of `{"name", "vertices"}` objects.
pub fn parse(json: &str) -> Result<Vec<(String, Polygon)>> {
    let entries: Vec<Entry> =
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("catalog: {e}")))?;
    entries
        .into_iter()
        .map(|e| Ok((e.name, Polygon::new(e.vertices.iter().map(|v| pt(v[0], v[1])).collect())?)))
        .collect()
}

/// All sixteen polygons in catalog order.
pub fn catalog() -> Vec<(String, Polygon)> {
    parse(CATALOG_JSON).expect("embedded catalog is valid")
}

pub fn names() -> Vec<String> {
    catalog().into_iter().map(|(n, _)| n).collect()
}

pub fn by_name(name: &str) -> Result<Polygon> {
    catalog()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, p)| p)
        .ok_or_else(|| Error::InvalidInput(format!("unknown polygon {name}")))
}

/// Catalog name of the polygon equivalent to `p`, if any.
pub fn identify(p: &Polygon) -> Option<String> {
    let c = p.canonical_form();
    catalog().into_iter().find(|(_, q)| q.canonical_form() == c).map(|(n, _)| n)
}
