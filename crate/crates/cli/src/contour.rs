//! Potential level-set grids for external plotting.

use anyhow::{bail, Result};
use eqlab_core::config::Configuration;
use eqlab_core::geometry::Vec2;
use eqlab_core::model::potential;

/// Default clamp applied near the singularities.
pub const DEFAULT_CAP: f64 = 50.0;

/// A row-major grid of clamped potential values on a rectangle.
#[derive(Debug, Clone)]
pub struct ContourGrid {
    pub x_min: f64,
    pub x_max: f64,
    #[allow(dead_code)]
    pub y_min: f64,
    #[allow(dead_code)]
    pub y_max: f64,
    pub resolution: usize,
    #[allow(dead_code)]
    pub cap: f64,
    /// `values[j][i]` is the value at `(x_i, y_j)`, `y` increasing with `j`.
    pub values: Vec<Vec<f64>>,
}

impl ContourGrid {
    pub fn compute(
        config: &Configuration,
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        resolution: usize,
        cap: f64,
    ) -> Result<ContourGrid> {
        if !(x_min < x_max) || !(y_min < y_max) {
            bail!("contour bounds must satisfy x_min < x_max and y_min < y_max");
        }
        if resolution < 2 {
            bail!("contour resolution must be at least 2, got {resolution}");
        }
        if !cap.is_finite() {
            bail!("contour cap must be finite");
        }
        let coord = |lo: f64, hi: f64, k: usize| {
            lo + (hi - lo) * k as f64 / (resolution - 1) as f64
        };
        let values = (0..resolution)
            .map(|j| {
                let y = coord(y_min, y_max, j);
                (0..resolution)
                    .map(|i| {
                        let p = Vec2::new(coord(x_min, x_max, i), y);
                        // singular evaluation means we are inside the clamp anyway
                        match potential(config, p) {
                            Ok(v) => v.min(cap),
                            Err(_) => cap,
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(ContourGrid {
            x_min,
            x_max,
            y_min,
            y_max,
            resolution,
            cap,
            values,
        })
    }

    /// CSV rendering: a header row with the x-coordinates, then one value row
    /// per y from `y_min` upward.
    pub fn to_csv(&self) -> String {
        let coord = |lo: f64, hi: f64, k: usize| {
            lo + (hi - lo) * k as f64 / (self.resolution - 1) as f64
        };
        let mut out = String::new();
        let header: Vec<String> = (0..self.resolution)
            .map(|i| coord(self.x_min, self.x_max, i).to_string())
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.values {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}
