//! Browser-facing bindings: exact counts, toroidal catalogs and a rotation
//! explorer, all returned as JSON strings for a plain static page.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use mosaic_core::count::{self, Quantity};
use mosaic_core::{oracle, Limits, Mosaic, Shift, Side, Tile};

/// Catalog sizes are capped so the page never enumerates more than a few
/// thousand mosaics.
const CATALOG_CELL_CAP: usize = 6;

#[derive(Serialize, Deserialize)]
struct MosaicJson {
    rows: usize,
    cols: usize,
    tiles: Vec<Vec<u8>>,
}

impl MosaicJson {
    fn from_mosaic(m: &Mosaic) -> MosaicJson {
        MosaicJson {
            rows: m.rows(),
            cols: m.cols(),
            tiles: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).id()).collect())
                .collect(),
        }
    }

    fn to_mosaic(&self) -> Result<Mosaic, String> {
        let mut tiles = Vec::with_capacity(self.rows * self.cols);
        for row in &self.tiles {
            for &id in row {
                tiles.push(Tile::new(id).map_err(|e| e.to_string())?);
            }
        }
        Mosaic::new(self.rows, self.cols, tiles).map_err(|e| e.to_string())
    }
}

fn count_json(quantity: &str, m: usize, n: usize) -> Result<String, String> {
    let quantity: Quantity = quantity.parse().map_err(|e: mosaic_core::Error| e.to_string())?;
    let limits = Limits::default();
    let result = match quantity {
        Quantity::Knot => count::count_knot(m, n, &limits),
        Quantity::Period => count::count_period(m, n, &limits),
        Quantity::Toroidal => count::count_toroidal(m, n, &limits),
    }
    .map_err(|e| e.to_string())?;
    Ok(serde_json::json!({
        "m": m,
        "n": n,
        "quantity": result.quantity.as_str(),
        "method": result.method.as_str(),
        "value": result.value.to_string(),
    })
    .to_string())
}

fn catalog_json(m: usize, n: usize) -> Result<String, String> {
    if m == 0 || n == 0 || m * n > CATALOG_CELL_CAP {
        return Err(format!("catalog limited to grids of at most {CATALOG_CELL_CAP} cells"));
    }
    let limits = Limits::default();
    let mut reps: Vec<Mosaic> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for mosaic in
        oracle::enumerate(m, n, oracle::Predicate::Period, &limits).map_err(|e| e.to_string())?
    {
        let canon = mosaic.canonical_form();
        if seen.insert(canon.clone()) {
            reps.push(canon);
        }
    }
    reps.sort();
    let entries: Vec<serde_json::Value> = reps
        .iter()
        .map(|mosaic| {
            let (p, q) = mosaic.fundamental_period();
            let orbit = orbit_size(mosaic);
            serde_json::json!({
                "mosaic": MosaicJson::from_mosaic(mosaic),
                "fundamental_period": [p, q],
                "orbit_size": orbit,
            })
        })
        .collect();
    Ok(serde_json::json!({
        "m": m,
        "n": n,
        "classes": reps.len(),
        "representatives": entries,
    })
    .to_string())
}

fn orbit_size(m: &Mosaic) -> usize {
    let mut orbit = std::collections::BTreeSet::new();
    for x in 0..m.rows() {
        for y in 0..m.cols() {
            orbit.insert(m.rotate(Shift::new(x, y)));
        }
    }
    orbit.len()
}

fn rotate_info_json(mosaic_json: &str, x: usize, y: usize) -> Result<String, String> {
    let parsed: MosaicJson = serde_json::from_str(mosaic_json).map_err(|e| e.to_string())?;
    let mosaic = parsed.to_mosaic()?;
    let rotated = mosaic.rotate(Shift::new(x, y));
    let canonical = mosaic.canonical_form();
    let (p, q) = mosaic.fundamental_period();
    let word = |side| mosaic.boundary_word(side).to_string();
    Ok(serde_json::json!({
        "mosaic": MosaicJson::from_mosaic(&mosaic),
        "rotated": MosaicJson::from_mosaic(&rotated),
        "canonical": MosaicJson::from_mosaic(&canonical),
        "same_class": rotated.canonical_form() == canonical,
        "fundamental_period": [p, q],
        "is_period": mosaic.is_period_mosaic(),
        "is_knot": mosaic.is_knot_mosaic(),
        "boundary": {
            "left": word(Side::Left),
            "right": word(Side::Right),
            "top": word(Side::Top),
            "bottom": word(Side::Bottom),
        },
    })
    .to_string())
}

/// Exact count of knot, period or toroidal mosaics; returns a JSON record
/// with the value as a decimal string.
#[wasm_bindgen]
pub fn count(quantity: &str, m: usize, n: usize) -> Result<String, JsValue> {
    count_json(quantity, m, n).map_err(|e| JsValue::from_str(&e))
}

/// Canonical representatives of every toroidal class of the given size,
/// with fundamental periods and orbit sizes.
#[wasm_bindgen]
pub fn toroidal_catalog(m: usize, n: usize) -> Result<String, JsValue> {
    catalog_json(m, n).map_err(|e| JsValue::from_str(&e))
}

/// Rotation explorer: the rotated grid, the canonical form, the fundamental
/// period and the boundary words of a mosaic supplied as JSON.
#[wasm_bindgen]
pub fn rotate_info(mosaic_json: &str, x: usize, y: usize) -> Result<String, JsValue> {
    rotate_info_json(mosaic_json, x, y).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_returns_decimal_string_record() {
        let out: serde_json::Value = serde_json::from_str(&count_json("toroidal", 2, 3).unwrap()).unwrap();
        assert_eq!(out["value"], "954");
        assert_eq!(out["method"], "theorem-coprime");
        assert!(count_json("nonsense", 2, 3).is_err());
    }

    #[test]
    fn catalog_2x2_has_110_classes() {
        let out: serde_json::Value = serde_json::from_str(&catalog_json(2, 2).unwrap()).unwrap();
        assert_eq!(out["classes"], 110);
        assert_eq!(out["representatives"].as_array().unwrap().len(), 110);
        assert!(catalog_json(3, 3).is_err());
    }

    #[test]
    fn rotate_info_tracks_class_membership() {
        let mosaic = r#"{"rows":2,"cols":3,"tiles":[[2,5,1],[3,5,4]]}"#;
        let out: serde_json::Value =
            serde_json::from_str(&rotate_info_json(mosaic, 1, 2).unwrap()).unwrap();
        assert_eq!(out["same_class"], true);
        assert_eq!(out["is_period"], true);
        assert_eq!(out["fundamental_period"][0], 2);
        assert_eq!(out["fundamental_period"][1], 3);
        assert_eq!(out["boundary"]["left"], "xx");
        assert!(rotate_info_json("{bad json", 0, 0).is_err());
    }
}
