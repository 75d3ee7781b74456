//! JSON file formats for chains, maps, nerves and exact-sequence problems.
//!
//! A chain file:
//!
//! ```json
//! { "ambient": 2,
//!   "cells": [ { "weight": 1, "params": ["theta"], "box": [[0, 6.283185307179586]],
//!                "map": ["cos(theta)", "sin(theta)"], "orientation": 1 } ] }
//! ```
//!
//! A `box` entry is either `[a, b]` or a single number for a frozen parameter.
//! `params` defaults to the standard names x, y, z, t, and `weight` and
//! `orientation` default to 1. A cell may instead name a built-in shape:
//! `{ "shape": "torus", "args": [2, 1] }`.
//!
//! A map file: `{ "params": ["x", "y"], "components": ["x^2 - y^2", "2*x*y"] }`.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{ScalarExpr, VarNames};
use crate::integration::{shapes, Cell, Chain, Param};
use crate::map::SmoothMap;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoxEntry {
    Interval([f64; 2]),
    Fixed(f64),
}

fn one() -> i64 {
    1
}

fn is_one(v: &i64) -> bool {
    *v == 1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellFile {
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub weight: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<String>>,
    #[serde(default, rename = "box", skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoxEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub map: Vec<String>,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub orientation: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<usize>,
    pub cells: Vec<CellFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<String>>,
    /// Number of standard variables when `params` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<usize>,
    pub components: Vec<String>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| bad(format!("JSON: {e}")))
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
}

fn names_for(params: &Option<Vec<String>>, count: usize) -> Result<VarNames> {
    match params {
        Some(p) if p.len() != count => Err(Error::DimensionMismatch { expected: count, found: p.len() }),
        Some(p) => Ok(VarNames::custom(p.iter().cloned())),
        None => Ok(VarNames::standard(count)),
    }
}

fn parse_components(components: &[String], names: &VarNames) -> Result<SmoothMap> {
    let comps = components
        .iter()
        .map(|s| ScalarExpr::parse_with_names(s, names))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    SmoothMap::with_names(names.clone(), comps)
}

fn shape_cell(name: &str, args: &[f64]) -> Result<Cell> {
    let want = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(bad(format!("shape {name} takes {n} arguments, got {}", args.len())))
        }
    };
    let cell = match name {
        "interval" => {
            want(2)?;
            if !(args[0] < args[1]) {
                return Err(bad("interval needs a < b"));
            }
            shapes::interval(args[0], args[1])
        }
        "unit_square" => want(0).map(|_| shapes::unit_square())?,
        "unit_circle" => want(0).map(|_| shapes::unit_circle())?,
        "circle" => {
            want(1)?;
            shapes::circle(args[0])
        }
        "unit_disk" => want(0).map(|_| shapes::unit_disk())?,
        "unit_sphere" => want(0).map(|_| shapes::unit_sphere())?,
        "upper_hemisphere" => want(0).map(|_| shapes::upper_hemisphere())?,
        "equatorial_disk" => want(0).map(|_| shapes::equatorial_disk())?,
        "half_ball" => want(0).map(|_| shapes::half_ball())?,
        "torus" => {
            want(2)?;
            shapes::torus(args[0], args[1])
        }
        "ellipsoid" => {
            want(3)?;
            shapes::ellipsoid(args[0], args[1], args[2])
        }
        other => return Err(bad(format!("unknown shape {other:?}"))),
    };
    Ok(cell)
}

pub fn cell_from_file(file: &CellFile) -> Result<Cell> {
    let orientation = i8::try_from(file.orientation).map_err(|_| bad("orientation must be ±1"))?;
    if let Some(name) = &file.shape {
        if !file.bounds.is_empty() || !file.map.is_empty() || file.params.is_some() {
            return Err(bad("a shape cell takes no box, map or params"));
        }
        let cell = shape_cell(name, &file.args)?;
        return match orientation {
            1 => Ok(cell),
            -1 => Ok(cell.reversed()),
            _ => Err(bad("orientation must be ±1")),
        };
    }
    if !file.args.is_empty() {
        return Err(bad("args are only meaningful with a shape"));
    }
    if file.bounds.is_empty() {
        return Err(bad("a cell needs a box or a shape"));
    }
    let names = names_for(&file.params, file.bounds.len())?;
    let map = parse_components(&file.map, &names)?;
    let params = file
        .bounds
        .iter()
        .map(|b| match *b {
            BoxEntry::Interval([a, b]) => Param::Interval(a, b),
            BoxEntry::Fixed(v) => Param::Fixed(v),
        })
        .collect();
    Cell::with_params(params, map, orientation)
}

pub fn chain_from_file(file: &ChainFile) -> Result<Chain> {
    let mut chain = Chain::new();
    for c in &file.cells {
        chain.push(c.weight, cell_from_file(c)?)?;
    }
    if let (Some(want), Some(got)) = (file.ambient, chain.ambient()) {
        if want != got {
            return Err(Error::DimensionMismatch { expected: want, found: got });
        }
    }
    if chain.is_empty() {
        return Err(bad("chain has no cells"));
    }
    Ok(chain)
}

pub fn chain_to_file(chain: &Chain) -> ChainFile {
    let cells = chain
        .cells()
        .iter()
        .map(|(w, c)| {
            let names = c.map().names();
            CellFile {
                weight: *w,
                shape: None,
                args: Vec::new(),
                params: Some((0..c.params().len()).map(|i| names.name(i)).collect()),
                bounds: c
                    .params()
                    .iter()
                    .map(|p| match *p {
                        Param::Interval(a, b) => BoxEntry::Interval([a, b]),
                        Param::Fixed(v) => BoxEntry::Fixed(v),
                    })
                    .collect(),
                map: c.map().components().iter().map(|e| e.display_with(names)).collect(),
                orientation: c.orientation() as i64,
            }
        })
        .collect();
    ChainFile { ambient: chain.ambient(), cells }
}

pub fn parse_chain_json(text: &str) -> Result<Chain> {
    chain_from_file(&from_json(text)?)
}

pub fn chain_to_json(chain: &Chain) -> String {
    serde_json::to_string_pretty(&chain_to_file(chain)).expect("chain files serialize")
}

pub fn map_from_file(file: &MapFile) -> Result<SmoothMap> {
    let count = match (&file.params, file.domain) {
        (Some(p), Some(d)) if p.len() != d => return Err(Error::DimensionMismatch { expected: d, found: p.len() }),
        (Some(p), _) => p.len(),
        (None, Some(d)) => d,
        (None, None) => return Err(bad("a map file needs params or domain")),
    };
    parse_components(&file.components, &names_for(&file.params, count)?)
}

pub fn map_to_file(map: &SmoothMap) -> MapFile {
    let names = map.names();
    MapFile {
        params: Some((0..map.domain_dim()).map(|i| names.name(i)).collect()),
        domain: None,
        components: map.components().iter().map(|e| e.display_with(names)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::DifferentialForm;
    use crate::integration::QuadratureSpec;
    use std::f64::consts::PI;

    #[test]
    fn circle_file() {
        let text = r#"{ "ambient": 2, "cells": [ { "params": ["theta"], "box": [[0, 6.283185307179586]],
                        "map": ["cos(theta)", "sin(theta)"] } ] }"#;
        let c = parse_chain_json(text).unwrap();
        let w = DifferentialForm::parse("x*dy - y*dx", 2).unwrap();
        assert!((c.integrate(&w, QuadratureSpec::default()).unwrap() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn round_trip() {
        let chain = Chain::from_cells([(1, shapes::unit_disk()), (-2, shapes::unit_disk().reversed())]).unwrap();
        let back = parse_chain_json(&chain_to_json(&chain)).unwrap();
        assert_eq!(back, chain);
        let faces = chain.boundary().unwrap();
        assert_eq!(parse_chain_json(&chain_to_json(&faces)).unwrap(), faces);
    }

    #[test]
    fn shapes_by_name() {
        let c = parse_chain_json(r#"{"cells": [{"shape": "torus", "args": [2, 1], "orientation": -1}]}"#).unwrap();
        assert_eq!(c.cells()[0].1, shapes::torus(2.0, 1.0).reversed());
        assert!(parse_chain_json(r#"{"cells": [{"shape": "torus"}]}"#).is_err());
        assert!(parse_chain_json(r#"{"cells": [{"shape": "unit_sphere", "args": [1]}]}"#).is_err());
        assert!(parse_chain_json(r#"{"cells": [{"shape": "klein"}]}"#).is_err());
    }

    #[test]
    fn malformed_files() {
        for text in [
            "{}",
            r#"{"cells": []}"#,
            r#"{"cells": [{"box": [[0, 1]], "map": ["x"], "colour": 3}]}"#,
            r#"{"cells": [{"box": [[1, 0]], "map": ["x"]}]}"#,
            r#"{"cells": [{"box": [[0, 1]], "map": ["q"]}]}"#,
            r#"{"ambient": 3, "cells": [{"box": [[0, 1]], "map": ["x"]}]}"#,
            r#"{"cells": [{"box": [[0, 1]], "map": ["x"], "orientation": 2}]}"#,
        ] {
            assert!(parse_chain_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn frozen_parameters() {
        let c = parse_chain_json(r#"{"cells": [{"box": [0.5, [0, 1]], "map": ["x", "y"]}]}"#).unwrap();
        assert_eq!(c.dim(), Some(1));
    }

    #[test]
    fn map_files() {
        let f: MapFile = from_json(r#"{"params": ["u", "v"], "components": ["u^2 - v^2", "2*u*v"]}"#).unwrap();
        let m = map_from_file(&f).unwrap();
        assert_eq!(m.evaluate(&[1.0, 2.0]).unwrap(), vec![-3.0, 4.0]);
        assert_eq!(map_from_file(&map_to_file(&m)).unwrap(), m);
        let f: MapFile = from_json(r#"{"domain": 3, "components": ["-x", "-y", "-z"]}"#).unwrap();
        assert_eq!(map_from_file(&f).unwrap().domain_dim(), 3);
        let f: MapFile = from_json(r#"{"components": ["x"]}"#).unwrap();
        assert!(map_from_file(&f).is_err());
    }
}
