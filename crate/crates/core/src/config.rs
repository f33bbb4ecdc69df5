//! Mass configurations and their JSON text format.
//!
//! The on-disk format is a single JSON object:
//!
//! ```json
//! {"masses": [{"x": 1.0, "y": 1.0, "m": 1.0}, {"x": 2.0, "y": 2.0, "m": 1.0}]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec2;

/// Relative cutoff below which an evaluation point is treated as coincident
/// with a mass position.
pub const DEFAULT_SINGULARITY_CUTOFF_FACTOR: f64 = 1e-14;

/// A single anchored point mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassPoint {
    pub x: f64,
    pub y: f64,
    pub m: f64,
}

impl MassPoint {
    pub fn new(x: f64, y: f64, m: f64) -> Self {
        MassPoint { x, y, m }
    }

    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

/// A validated set of point masses defining the potential.
///
/// Invariants: at least one mass, every mass positive and finite, all
/// positions finite and pairwise distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    points: Vec<MassPoint>,
    singularity_cutoff_factor: f64,
}

#[derive(Serialize, Deserialize)]
struct ConfigFile {
    masses: Vec<MassPoint>,
}

impl Configuration {
    pub fn new(points: Vec<MassPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidConfiguration(
                "masses: at least one mass is required".into(),
            ));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(Error::InvalidConfiguration(format!(
                    "masses[{i}]: position must be finite"
                )));
            }
            if !(p.m > 0.0) || !p.m.is_finite() {
                return Err(Error::InvalidConfiguration(format!(
                    "masses[{i}].m: mass must be positive and finite, got {}",
                    p.m
                )));
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i].x == points[j].x && points[i].y == points[j].y {
                    return Err(Error::InvalidConfiguration(format!(
                        "masses[{i}] and masses[{j}] coincide at ({}, {})",
                        points[i].x, points[i].y
                    )));
                }
            }
        }
        Ok(Configuration {
            points,
            singularity_cutoff_factor: DEFAULT_SINGULARITY_CUTOFF_FACTOR,
        })
    }

    /// Overrides the relative singularity cutoff (advanced use).
    pub fn with_singularity_cutoff_factor(mut self, factor: f64) -> Self {
        self.singularity_cutoff_factor = factor;
        self
    }

    /// Parses and validates the JSON configuration format.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: ConfigFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("config JSON: {e}")))?;
        Configuration::new(file.masses)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&ConfigFile {
            masses: self.points.clone(),
        })
        .expect("mass points always serialize")
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[MassPoint] {
        &self.points
    }

    pub fn positions(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.points.iter().map(|p| p.position())
    }

    pub fn total_mass(&self) -> f64 {
        self.points.iter().map(|p| p.m).sum()
    }

    pub fn min_mass(&self) -> f64 {
        self.points.iter().map(|p| p.m).fold(f64::INFINITY, f64::min)
    }

    pub fn max_center_norm(&self) -> f64 {
        self.positions().map(Vec2::norm).fold(0.0, f64::max)
    }

    /// Characteristic length: `max(1, max_i |z_i|)`. Relative tolerances and
    /// cutoffs are expressed against this.
    pub fn scale(&self) -> f64 {
        self.max_center_norm().max(1.0)
    }

    /// Absolute distance below which evaluation raises a singular-evaluation
    /// error.
    pub fn singularity_cutoff(&self) -> f64 {
        self.singularity_cutoff_factor * self.scale()
    }

    /// Minimum pairwise distance between mass positions. `None` when there is
    /// a single mass.
    pub fn min_pairwise_distance(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                let d = self.points[i].position().distance(self.points[j].position());
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best
    }

    /// The same masses rotated counterclockwise by `theta` about the origin.
    pub fn rotated(&self, theta: f64) -> Configuration {
        let points = self
            .points
            .iter()
            .map(|p| {
                let q = p.position().rotated(theta);
                MassPoint::new(q.x, q.y, p.m)
            })
            .collect();
        Configuration {
            points,
            singularity_cutoff_factor: self.singularity_cutoff_factor,
        }
    }
}
