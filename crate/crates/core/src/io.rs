//! Instance files and shape specifications.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geom::{ConvexShape, Point};
use crate::visibility::Instance;

/// A named shape or a polygon file.
#[derive(Debug, Clone, PartialEq)]
pub enum ShapeSpec {
    Square,
    Rect { l: f64, s: f64 },
    Equilateral,
    Ngon(usize),
    Polygon(PathBuf),
}

impl ShapeSpec {
    pub fn build(&self) -> Result<Arc<ConvexShape>> {
        let shape = match self {
            ShapeSpec::Square => ConvexShape::square(),
            ShapeSpec::Rect { l, s } => ConvexShape::rectangle(*l, *s)?,
            ShapeSpec::Equilateral => ConvexShape::equilateral_triangle(),
            ShapeSpec::Ngon(k) => ConvexShape::regular_ngon(*k)?,
            ShapeSpec::Polygon(path) => load_polygon(path)?,
        };
        Ok(Arc::new(shape))
    }

    /// Side lengths when the shape is an axis-aligned rectangle centred on its origin.
    pub fn rect_dims(&self) -> Option<(f64, f64)> {
        match *self {
            ShapeSpec::Square => Some((1.0, 1.0)),
            ShapeSpec::Rect { l, s } => Some((l, s)),
            _ => None,
        }
    }
}

impl FromStr for ShapeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown shape `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["square"] => Ok(ShapeSpec::Square),
            ["equilateral"] => Ok(ShapeSpec::Equilateral),
            ["rect", l, w] => {
                let l: f64 = l.parse().map_err(|_| bad())?;
                let w: f64 = w.parse().map_err(|_| bad())?;
                if !(l > 0.0 && w > 0.0 && l.is_finite() && w.is_finite()) {
                    return Err(Error::Parse(format!(
                        "rectangle sides must be positive in `{s}`"
                    )));
                }
                Ok(ShapeSpec::Rect { l, s: w })
            }
            ["ngon", k] => Ok(ShapeSpec::Ngon(k.parse().map_err(|_| bad())?)),
            _ if s.ends_with(".json") => Ok(ShapeSpec::Polygon(PathBuf::from(s))),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ShapeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeSpec::Square => write!(f, "square"),
            ShapeSpec::Rect { l, s } => write!(f, "rect:{l}:{s}"),
            ShapeSpec::Equilateral => write!(f, "equilateral"),
            ShapeSpec::Ngon(k) => write!(f, "ngon:{k}"),
            ShapeSpec::Polygon(p) => write!(f, "{}", p.display()),
        }
    }
}

#[derive(Deserialize)]
struct RawPolygon {
    vertices: Vec<[f64; 2]>,
    origin: [f64; 2],
}

pub fn parse_polygon(text: &str) -> Result<ConvexShape> {
    let raw: RawPolygon = serde_json::from_str(text)?;
    ConvexShape::new(
        raw.vertices.into_iter().map(Point::from).collect(),
        raw.origin.into(),
    )
}

pub fn load_polygon(path: &Path) -> Result<ConvexShape> {
    parse_polygon(&read(path)?)
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    Instance::from_json_str(&read(path)?)
}

pub fn save_instance(inst: &Instance, path: &Path) -> Result<()> {
    write(path, &(inst.to_json_string() + "\n"))
}

pub(crate) fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub(crate) fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_specs_round_trip() {
        for s in [
            "square",
            "rect:2:1",
            "equilateral",
            "ngon:16",
            "shapes/kite.json",
        ] {
            let spec: ShapeSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "rect:4:1".parse::<ShapeSpec>().unwrap().rect_dims(),
            Some((4.0, 1.0))
        );
    }

    #[test]
    fn bad_shape_specs() {
        for s in ["circle", "rect:2", "rect:-1:1", "ngon:x", ""] {
            assert!(
                matches!(s.parse::<ShapeSpec>(), Err(Error::Parse(_))),
                "{s}"
            );
        }
        assert!(ShapeSpec::Ngon(2).build().is_err());
    }

    #[test]
    fn polygon_file_format() {
        let shape =
            parse_polygon(r#"{"vertices": [[0,0],[2,0],[0,2]], "origin": [0.5,0.5]}"#).unwrap();
        assert_eq!(shape.len(), 3);
        assert!(
            parse_polygon(r#"{"vertices": [[0,0],[0,2],[2,0]], "origin": [0.5,0.5]}"#).is_err()
        );
        assert!(matches!(parse_polygon("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn instance_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("i.json");
        let inst = Instance::new(
            vec![Point::new(0.1, 0.2), Point::new(1.0 / 3.0, 0.7)],
            vec![[0, 1]],
        )
        .unwrap();
        save_instance(&inst, &path).unwrap();
        assert_eq!(load_instance(&path).unwrap(), inst);
        assert!(matches!(
            load_instance(&dir.path().join("missing.json")),
            Err(Error::Io(_))
        ));
    }
}
