//! The JSON IFS document: parsing, validation and serialization.
//!
//! ```json
//! {"dimension": 2, "maps": [{"p": [0, 0], "phi": [0.5, 0]},
//!                           {"p": [1, 0], "lambda": 0.5, "theta": 0}]}
//! {"dimension": 3, "maps": [{"p": [0, 0, 0], "lambda": 0.5,
//!                            "axis": [0, 0, 1], "angle": 0}]}
//! ```
//!
//! Angles are in radians. Map indices in messages are zero-based.

use ifsbound::{Error, Ifs2, Ifs3, IfsSystem, Point3, Similitude, Similitude2, Similitude3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::DocumentError;

/// A parsed and validated system of either dimension.
#[derive(Clone, Debug, PartialEq)]
pub enum IfsDocument {
    Planar(Ifs2),
    Spatial(Ifs3),
}

impl IfsDocument {
    pub fn dimension(&self) -> usize {
        match self {
            IfsDocument::Planar(_) => 2,
            IfsDocument::Spatial(_) => 3,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            IfsDocument::Planar(ifs) => ifs.len(),
            IfsDocument::Spatial(ifs) => ifs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    dimension: u64,
    maps: Vec<RawMap>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    p: Vec<f64>,
    phi: Option<Vec<f64>>,
    lambda: Option<f64>,
    theta: Option<f64>,
    axis: Option<Vec<f64>>,
    angle: Option<f64>,
}

#[derive(Serialize)]
struct OutDocument {
    dimension: u64,
    maps: Vec<OutMap>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum OutMap {
    Planar {
        p: [f64; 2],
        phi: [f64; 2],
    },
    Spatial {
        p: [f64; 3],
        lambda: f64,
        axis: [f64; 3],
        angle: f64,
    },
}

fn map_error(index: usize, message: impl Into<String>) -> DocumentError {
    DocumentError::Map {
        index,
        message: message.into(),
    }
}

/// Contraction failures are reported against the map that caused them.
fn with_index(index: usize, e: Error) -> DocumentError {
    match e {
        Error::InvalidMap(reason) => {
            DocumentError::Invalid(Error::NotContraction { index, reason })
        }
        other => map_error(index, other.to_string()),
    }
}

fn coords<const N: usize>(index: usize, field: &str, v: &[f64]) -> Result<[f64; N], DocumentError> {
    v.try_into().map_err(|_| {
        map_error(
            index,
            format!("`{field}` needs {N} coordinates, found {}", v.len()),
        )
    })
}

fn planar_map(index: usize, m: RawMap) -> Result<Similitude2, DocumentError> {
    if m.axis.is_some() || m.angle.is_some() {
        return Err(map_error(index, "`axis` and `angle` belong to 3D maps"));
    }
    let [x, y] = coords(index, "p", &m.p)?;
    let p = Complex64::new(x, y);
    let built = match (m.phi, m.lambda, m.theta) {
        (Some(phi), None, None) => {
            let [re, im] = coords(index, "phi", &phi)?;
            Similitude2::new(p, Complex64::new(re, im))
        }
        (None, Some(lambda), Some(theta)) => Similitude2::from_polar(p, lambda, theta),
        _ => {
            return Err(map_error(
                index,
                "a 2D map needs either `phi` or both `lambda` and `theta`",
            ))
        }
    };
    built.map_err(|e| with_index(index, e))
}

fn spatial_map(index: usize, m: RawMap) -> Result<Similitude3, DocumentError> {
    if m.phi.is_some() || m.theta.is_some() {
        return Err(map_error(index, "`phi` and `theta` belong to 2D maps"));
    }
    let p = Point3::from(coords::<3>(index, "p", &m.p)?);
    let (Some(lambda), Some(axis), Some(angle)) = (m.lambda, m.axis, m.angle) else {
        return Err(map_error(
            index,
            "a 3D map needs `lambda`, `axis` and `angle`",
        ));
    };
    let axis = Point3::from(coords::<3>(index, "axis", &axis)?);
    Similitude3::from_axis_angle(p, lambda, axis, angle).map_err(|e| with_index(index, e))
}

/// Parses and validates a document.
pub fn parse_ifs(text: &str) -> Result<IfsDocument, DocumentError> {
    let raw: RawDocument = serde_json::from_str(text)?;
    let built = match raw.dimension {
        2 => raw
            .maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| planar_map(i, m))
            .collect::<Result<Vec<_>, _>>()
            .map(|maps| IfsSystem::new(maps).map(IfsDocument::Planar)),
        3 => raw
            .maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| spatial_map(i, m))
            .collect::<Result<Vec<_>, _>>()
            .map(|maps| IfsSystem::new(maps).map(IfsDocument::Spatial)),
        d => return Err(DocumentError::Dimension(d)),
    };
    built?.map_err(DocumentError::Invalid)
}

/// Writes planar maps with `phi` and spatial maps in axis-angle form; the
/// identity rotation is written as angle 0 about the z axis.
pub fn serialize_ifs(doc: &IfsDocument) -> String {
    let out = match doc {
        IfsDocument::Planar(ifs) => OutDocument {
            dimension: 2,
            maps: ifs
                .maps()
                .iter()
                .map(|m| {
                    let (p, phi) = (m.fixed_point(), m.phi());
                    OutMap::Planar {
                        p: [p.re, p.im],
                        phi: [phi.re, phi.im],
                    }
                })
                .collect(),
        },
        IfsDocument::Spatial(ifs) => OutDocument {
            dimension: 3,
            maps: ifs
                .maps()
                .iter()
                .map(|m| {
                    let p = m.fixed_point();
                    let (axis, angle) = m.axis_angle().unwrap_or((Point3::z(), 0.0));
                    OutMap::Spatial {
                        p: [p.x, p.y, p.z],
                        lambda: m.lambda(),
                        axis: [axis.x, axis.y, axis.z],
                        angle,
                    }
                })
                .collect(),
        },
    };
    serde_json::to_string_pretty(&out).expect("documents hold only finite numbers")
}

/// Built-in systems selectable by name in place of a file.
pub fn preset(name: &str) -> Option<IfsDocument> {
    let c = Complex64::new;
    let maps: Vec<(Complex64, Complex64)> = match name {
        "cantor" => vec![
            (c(0.0, 0.0), c(1.0 / 3.0, 0.0)),
            (c(1.0, 0.0), c(1.0 / 3.0, 0.0)),
        ],
        "sierpinski" => vec![
            (c(0.0, 0.0), c(0.5, 0.0)),
            (c(1.0, 0.0), c(0.5, 0.0)),
            (c(0.5, 3f64.sqrt() / 2.0), c(0.5, 0.0)),
        ],
        _ => return None,
    };
    let maps = maps
        .into_iter()
        .map(|(p, phi)| Similitude2::new(p, phi).expect("preset maps are contractions"))
        .collect();
    Some(IfsDocument::Planar(
        IfsSystem::new(maps).expect("presets are nonempty"),
    ))
}

pub const PRESETS: [&str; 2] = ["cantor", "sierpinski"];
