//! Ring configurations: `n - 1` equal peripheral masses at the vertices of a
//! regular polygon plus a central mass, and the ray structure that organizes
//! their equilibria.
//!
//! Rays of type A pass through a peripheral mass; rays of type B bisect two
//! adjacent peripheral masses. For a peripheral-to-central mass ratio large
//! enough, each type-A ray carries two equilibria and each type-B ray three,
//! for a total of `5(n - 1)`.

use std::f64::consts::PI;

use crate::config::{Configuration, MassPoint};
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::model::{gradient, search_domain};
use crate::roots::bisect;
use crate::solver::{find_equilibria, Equilibrium, SolveOptions};

/// A ring of `n_total - 1` peripheral masses plus one central mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingConfig {
    pub n_total: usize,
    pub peripheral_mass: f64,
    pub central_mass: f64,
    pub radius: f64,
}

/// Which family of symmetry rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RayKind {
    /// Through a peripheral mass: angles `2 k pi / (n - 1)`.
    TypeA,
    /// Bisecting adjacent peripheral masses: angles `(2k + 1) pi / (n - 1)`.
    TypeB,
}

/// The full set of ray angles of one kind for a given ring.
#[derive(Debug, Clone, PartialEq)]
pub struct RayFamily {
    pub kind: RayKind,
    pub angles: Vec<f64>,
}

impl RayFamily {
    pub fn for_ring(ring: &RingConfig, kind: RayKind) -> RayFamily {
        let spokes = ring.n_total - 1;
        let angles = (0..spokes)
            .map(|k| match kind {
                RayKind::TypeA => 2.0 * k as f64 * PI / spokes as f64,
                RayKind::TypeB => (2.0 * k as f64 + 1.0) * PI / spokes as f64,
            })
            .collect();
        RayFamily { kind, angles }
    }
}

impl RingConfig {
    pub fn new(
        n_total: usize,
        peripheral_mass: f64,
        central_mass: f64,
        radius: f64,
    ) -> Result<Self> {
        if n_total < 2 {
            return Err(Error::InvalidParameter(format!(
                "ring needs n_total >= 2, got {n_total}"
            )));
        }
        if !(peripheral_mass > 0.0) || !(central_mass > 0.0) || !(radius > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "ring masses and radius must be positive, got m = {peripheral_mass}, \
                 c = {central_mass}, radius = {radius}"
            )));
        }
        Ok(RingConfig {
            n_total,
            peripheral_mass,
            central_mass,
            radius,
        })
    }

    /// The ring as a plain configuration: central mass first, then the
    /// peripherals counterclockwise from the positive x-axis.
    pub fn configuration(&self) -> Configuration {
        let spokes = self.n_total - 1;
        let mut points = vec![MassPoint::new(0.0, 0.0, self.central_mass)];
        for k in 0..spokes {
            let theta = 2.0 * k as f64 * PI / spokes as f64;
            points.push(MassPoint::new(
                self.radius * theta.cos(),
                self.radius * theta.sin(),
                self.peripheral_mass,
            ));
        }
        Configuration::new(points).expect("ring positions are distinct by construction")
    }

    /// The ring rotated so that one representative ray of `kind` is the
    /// positive x-axis.
    pub fn aligned_configuration(&self, kind: RayKind) -> Configuration {
        match kind {
            RayKind::TypeA => self.configuration(),
            RayKind::TypeB => {
                let spokes = self.n_total - 1;
                self.configuration().rotated(-PI / spokes as f64)
            }
        }
    }
}

/// Builds the ring configuration. For `n_total = 2` this is a central mass at
/// the origin and a single peripheral at `(radius, 0)`.
pub fn make_ring(
    n_total: usize,
    peripheral_mass: f64,
    central_mass: f64,
    radius: f64,
) -> Result<Configuration> {
    Ok(RingConfig::new(n_total, peripheral_mass, central_mass, radius)?.configuration())
}

/// Radial force `F_x(x, 0)` with a type-A ray oriented along the positive
/// x-axis. Singular at `x = 0` (central mass) and `x = radius` (peripheral).
pub fn radial_force_type_a(ring: &RingConfig, x: f64) -> Result<f64> {
    let config = ring.configuration();
    Ok(gradient(&config, Vec2::new(x, 0.0))?.x)
}

/// The angular sum appearing in the type-B radial force
/// `F_x(x, 0) = x - c/x^2 + m g(x)` (unit radius, central mass `c`):
///
/// `g(x) = sum_k (cos t_k - x) / (x^2 - 2 x cos t_k + 1)^(3/2)`,
/// `t_k = (2k + 1) pi / (n - 1)`.
///
/// Requires `n_total >= 4` and `x >= 0`; the denominator never vanishes for
/// x > 0 because no `t_k` is a multiple of `2 pi`.
pub fn g_func(n_total: usize, x: f64) -> Result<f64> {
    check_g_domain(n_total, x)?;
    let spokes = n_total - 1;
    let mut sum = 0.0;
    for k in 0..spokes {
        let cos_t = ((2.0 * k as f64 + 1.0) * PI / spokes as f64).cos();
        let r2 = x * x - 2.0 * x * cos_t + 1.0;
        sum += (cos_t - x) / (r2 * r2.sqrt());
    }
    Ok(sum)
}

/// Derivative of [`g_func`] in `x`:
/// `g'(x) = sum_k [ 3 (x - cos t_k)^2 / r_k^5 - 1 / r_k^3 ]`.
pub fn g_prime(n_total: usize, x: f64) -> Result<f64> {
    check_g_domain(n_total, x)?;
    let spokes = n_total - 1;
    let mut sum = 0.0;
    for k in 0..spokes {
        let cos_t = ((2.0 * k as f64 + 1.0) * PI / spokes as f64).cos();
        let d = x - cos_t;
        let r2 = x * x - 2.0 * x * cos_t + 1.0;
        sum += 3.0 * d * d / (r2 * r2 * r2.sqrt()) - 1.0 / (r2 * r2.sqrt());
    }
    Ok(sum)
}

fn check_g_domain(n_total: usize, x: f64) -> Result<()> {
    if n_total < 4 {
        return Err(Error::InvalidParameter(format!(
            "g is defined for n_total >= 4, got {n_total}"
        )));
    }
    if !(x >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "g is defined for x >= 0, got {x}"
        )));
    }
    Ok(())
}

/// `sum_{k=0}^{q-1} cos(2 (2k + 1) pi / q)`, which telescopes to zero for
/// every integer `q > 2`.
pub fn trig_lemma_sum(q: usize) -> Result<f64> {
    if q <= 2 {
        return Err(Error::InvalidParameter(format!(
            "trig identity requires q > 2, got {q}"
        )));
    }
    Ok((0..q)
        .map(|k| (2.0 * (2.0 * k as f64 + 1.0) * PI / q as f64).cos())
        .sum())
}

/// Scan controls for [`ray_equilibria`].
#[derive(Debug, Clone, Copy)]
pub struct RayScanOptions {
    /// Scan step as a fraction of the ring radius.
    pub step_factor: f64,
    /// Inner scan cutoff as a fraction of the ring radius.
    pub inner_cutoff_factor: f64,
    /// Absolute bisection tolerance for each bracketed root.
    pub bisect_tol: f64,
}

impl Default for RayScanOptions {
    fn default() -> Self {
        RayScanOptions {
            step_factor: 1e-4,
            inner_cutoff_factor: 1e-6,
            bisect_tol: 1e-12,
        }
    }
}

/// Radii of the roots of the radial force along one representative ray of the
/// given kind, located by dense sign-change scanning over
/// `(cutoff, R]` followed by bisection. Returns however many bracketed roots
/// exist; the count is the datum.
pub fn ray_equilibria(ring: &RingConfig, kind: RayKind, opts: &RayScanOptions) -> Result<Vec<f64>> {
    if kind == RayKind::TypeB && ring.n_total < 4 {
        return Err(Error::InvalidParameter(format!(
            "type-B ray analysis requires n_total >= 4, got {}",
            ring.n_total
        )));
    }
    let config = ring.aligned_configuration(kind);
    let domain = search_domain(&config);
    let force = |x: f64| gradient(&config, Vec2::new(x, 0.0)).map(|g| g.x).ok();

    // masses sitting on the ray are poles of the force, not roots; the scan
    // must never bracket across them
    let mut singular_radii: Vec<f64> = config
        .positions()
        .filter(|z| z.y.abs() <= 1e-9 * ring.radius && z.x > 0.0)
        .map(|z| z.x)
        .collect();
    singular_radii.sort_by(f64::total_cmp);

    let step = opts.step_factor * ring.radius;
    let lo = opts.inner_cutoff_factor * ring.radius;
    let hi = domain.outer_radius;
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    let steps = ((hi - lo) / step).ceil() as usize;
    for i in 0..=steps {
        let x = (lo + i as f64 * step).min(hi);
        let Some(v) = force(x) else {
            prev = None; // stepped onto a singularity; restart the bracket
            continue;
        };
        if let Some((px, pv)) = prev {
            if singular_radii.iter().any(|&s| px < s && s < x) {
                prev = Some((x, v));
                continue;
            }
            if v == 0.0 {
                roots.push(x);
            } else if pv.signum() != v.signum() {
                let r = bisect(
                    |t| force(t).unwrap_or(f64::NAN),
                    px,
                    x,
                    opts.bisect_tol,
                );
                roots.push(r);
            }
        }
        prev = Some((x, v));
    }
    roots.dedup_by(|a, b| (*a - *b).abs() <= 2.0 * opts.bisect_tol);
    Ok(roots)
}

/// Breakdown of a full 2D solve of a ring configuration by ray membership.
#[derive(Debug, Clone)]
pub struct RingCount {
    pub equilibria: Vec<Equilibrium>,
    pub total: usize,
    /// Equilibria lying on some type-A ray (angular tolerance 1e-8).
    pub on_type_a: usize,
    /// Equilibria lying on some type-B ray.
    pub on_type_b: usize,
    pub off_ray: usize,
    /// Roots of the 1D radial force along one type-A ray.
    pub scan_type_a: Vec<f64>,
    /// Roots along one type-B ray; empty when `n_total < 4`.
    pub scan_type_b: Vec<f64>,
}

/// Angular tolerance for assigning an equilibrium to a ray.
pub const RAY_ANGLE_TOLERANCE: f64 = 1e-8;

fn nearest_ray_distance(angle: f64, family: &RayFamily) -> f64 {
    family
        .angles
        .iter()
        .map(|&a| {
            let mut d = (angle - a).rem_euclid(2.0 * PI);
            if d > PI {
                d = 2.0 * PI - d;
            }
            d
        })
        .fold(f64::INFINITY, f64::min)
}

/// Solves the full ring configuration and cross-classifies the equilibria by
/// ray membership, together with the 1D per-ray scans.
pub fn count_ring_equilibria(ring: &RingConfig, opts: &SolveOptions) -> Result<RingCount> {
    let config = ring.configuration();
    let equilibria = find_equilibria(&config, opts)?;
    let family_a = RayFamily::for_ring(ring, RayKind::TypeA);
    let family_b = RayFamily::for_ring(ring, RayKind::TypeB);

    let mut on_a = 0;
    let mut on_b = 0;
    let mut off = 0;
    for eq in &equilibria {
        let angle = eq.location.angle();
        if nearest_ray_distance(angle, &family_a) <= RAY_ANGLE_TOLERANCE {
            on_a += 1;
        } else if nearest_ray_distance(angle, &family_b) <= RAY_ANGLE_TOLERANCE {
            on_b += 1;
        } else {
            off += 1;
        }
    }

    let scan = RayScanOptions::default();
    let scan_type_a = ray_equilibria(ring, RayKind::TypeA, &scan)?;
    let scan_type_b = if ring.n_total >= 4 {
        ray_equilibria(ring, RayKind::TypeB, &scan)?
    } else {
        Vec::new()
    };

    Ok(RingCount {
        total: equilibria.len(),
        equilibria,
        on_type_a: on_a,
        on_type_b: on_b,
        off_ray: off,
        scan_type_a,
        scan_type_b,
    })
}

/// One row of a peripheral/central mass-ratio sweep. `None` entries record a
/// solver failure for that ratio.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub ratio: f64,
    pub count: Option<usize>,
    pub ray_a_count: Option<usize>,
    pub ray_b_count: Option<usize>,
    pub off_ray_count: Option<usize>,
}

/// Result of [`mass_sweep`]: raw per-ratio counts (no monotonicity assumed)
/// and the smallest swept ratio reaching `5 n - 5` equilibria.
#[derive(Debug, Clone)]
pub struct MassSweep {
    pub n_total: usize,
    pub rows: Vec<SweepRow>,
    pub first_attaining: Option<f64>,
}

impl MassSweep {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("ratio,count,ray_a_count,ray_b_count,off_ray_count\n");
        let cell = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.ratio,
                cell(row.count),
                cell(row.ray_a_count),
                cell(row.ray_b_count),
                cell(row.off_ray_count),
            ));
        }
        out
    }
}

/// Counts ring equilibria across peripheral-to-central mass ratios
/// (`c = 1`, `m = ratio`, unit radius).
pub fn mass_sweep(n_total: usize, ratios: &[f64], opts: &SolveOptions) -> Result<MassSweep> {
    if n_total < 4 {
        return Err(Error::InvalidParameter(format!(
            "mass sweep requires n_total >= 4, got {n_total}"
        )));
    }
    if ratios.is_empty() {
        return Err(Error::InvalidParameter("empty ratio list".into()));
    }
    for (i, &r) in ratios.iter().enumerate() {
        if !(r > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "ratios must be positive, got {r} at index {i}"
            )));
        }
        if i > 0 && ratios[i - 1] >= r {
            return Err(Error::InvalidParameter(
                "ratios must be strictly ascending".into(),
            ));
        }
    }

    let target = 5 * n_total - 5;
    let mut rows = Vec::with_capacity(ratios.len());
    let mut first_attaining = None;
    for &ratio in ratios {
        let ring = RingConfig::new(n_total, ratio, 1.0, 1.0)?;
        match count_ring_equilibria(&ring, opts) {
            Ok(count) => {
                if first_attaining.is_none() && count.total >= target {
                    first_attaining = Some(ratio);
                }
                rows.push(SweepRow {
                    ratio,
                    count: Some(count.total),
                    ray_a_count: Some(count.on_type_a),
                    ray_b_count: Some(count.on_type_b),
                    off_ray_count: Some(count.off_ray),
                });
            }
            Err(_) => rows.push(SweepRow {
                ratio,
                count: None,
                ray_a_count: None,
                ray_b_count: None,
                off_ray_count: None,
            }),
        }
    }
    Ok(MassSweep {
        n_total,
        rows,
        first_attaining,
    })
}
