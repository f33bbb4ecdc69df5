//! Global multistart Newton search over the search domain, with Morse
//! classification of every equilibrium found.
//!
//! Pipeline: build the search domain, seed a square lattice plus capture
//! rings around each puncture, run damped Newton from every seed in parallel,
//! deduplicate converged candidates, and sort the survivors canonically. The
//! output is deterministic for fixed inputs and options regardless of seed
//! processing order.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geometry::{SymMat2, Vec2};
use crate::model::{gradient_unchecked, hessian_unchecked, search_domain, SearchDomain};

/// Default cap on the number of lattice seeds.
pub const DEFAULT_SEED_LIMIT: usize = 10_000_000;

/// Number of capture-ring seeds placed around each puncture.
const CAPTURE_RING_POINTS: usize = 32;

/// Maximum step halvings per Newton iteration.
const MAX_HALVINGS: u32 = 20;

/// Extra Newton iterations taken after the tolerance is met. Near-degenerate
/// tangential directions (e.g. the almost-flat valley at radius
/// `(sum m)^(1/3)` of a heavy ring) leave a convergence cloud much wider than
/// the dedup radius at the bare tolerance; polishing to stagnation collapses
/// it so duplicates merge.
const POLISH_ITERS: usize = 20;

/// Tuning knobs for [`find_equilibria`].
///
/// `None` fields resolve to scale- and domain-dependent defaults:
/// `grid_spacing = min(eps, d_min/8, R/100)`, `newton_tolerance = 1e-12 * scale`,
/// `dedup_radius = 1e-6 * scale`, `residual_tolerance = 1e-10 * scale`,
/// where `scale = max(1, max_i |z_i|)`.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub grid_spacing: Option<f64>,
    pub newton_tolerance: Option<f64>,
    pub max_newton_iters: usize,
    pub dedup_radius: Option<f64>,
    pub residual_tolerance: Option<f64>,
    pub degeneracy_threshold: f64,
    pub seed_limit: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            grid_spacing: None,
            newton_tolerance: None,
            max_newton_iters: 50,
            dedup_radius: None,
            residual_tolerance: None,
            degeneracy_threshold: 1e-8,
            seed_limit: DEFAULT_SEED_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct ResolvedOptions {
    grid_spacing: f64,
    newton_tolerance: f64,
    max_newton_iters: usize,
    dedup_radius: f64,
    residual_tolerance: f64,
    degeneracy_threshold: f64,
    seed_limit: usize,
}

impl SolveOptions {
    fn resolve(&self, config: &Configuration, domain: &SearchDomain) -> ResolvedOptions {
        let scale = config.scale();
        let d_min = config
            .min_pairwise_distance()
            .unwrap_or(domain.outer_radius);
        ResolvedOptions {
            grid_spacing: self.grid_spacing.unwrap_or_else(|| {
                domain
                    .puncture_radius
                    .min(d_min / 8.0)
                    .min(domain.outer_radius / 100.0)
            }),
            newton_tolerance: self.newton_tolerance.unwrap_or(1e-12 * scale),
            max_newton_iters: self.max_newton_iters,
            dedup_radius: self.dedup_radius.unwrap_or(1e-6 * scale),
            residual_tolerance: self.residual_tolerance.unwrap_or(1e-10 * scale),
            degeneracy_threshold: self.degeneracy_threshold,
            seed_limit: self.seed_limit,
        }
    }
}

/// A located critical point of the potential.
#[derive(Debug, Clone, Copy)]
pub struct Equilibrium {
    pub location: Vec2,
    /// Gradient norm at `location`.
    pub residual: f64,
    pub hessian: SymMat2,
    /// Number of negative Hessian eigenvalues; `None` when the determinant is
    /// below the degeneracy threshold and no index can be assigned.
    pub morse_index: Option<u8>,
    pub hessian_det: f64,
    /// Distance to the nearest mass position.
    pub min_mass_distance: f64,
}

impl Equilibrium {
    pub fn is_degenerate(&self) -> bool {
        self.morse_index.is_none()
    }
}

/// Index tallies and the Morse-theoretic consistency checks for one solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorseReport {
    /// `(N0, N1, N2)`: minima, saddles, maxima among classified equilibria.
    pub counts: (usize, usize, usize),
    /// `N = N0 + N1 + N2`.
    pub total: usize,
    /// Betti numbers `(B0, B1) = (1, n)` of the punctured disc.
    pub betti: (usize, usize),
    /// `N >= n + 1`.
    pub lower_bound_ok: bool,
    /// `N0 - N1 + N2 = 1 - n`.
    pub euler_ok: bool,
    /// `N0 >= 1` and `N1 >= n`.
    pub weak_morse_ok: bool,
    /// Some survivor could not be classified; the counts above exclude it.
    pub degenerate_found: bool,
}

/// Morse index from determinant and trace signs.
///
/// `det > 0, trace > 0` is a minimum (0); `det > 0, trace < 0` a maximum (2);
/// `det < 0` a saddle (1). Errors when `|det| <= threshold`.
pub fn classify(h: SymMat2, threshold: f64) -> Result<u8> {
    let det = h.det();
    if det.abs() <= threshold || !det.is_finite() {
        return Err(Error::DegenerateHessian { det, threshold });
    }
    if det < 0.0 {
        Ok(1)
    } else if h.trace() > 0.0 {
        Ok(0)
    } else {
        Ok(2)
    }
}

/// Lattice seeds of the given spacing inside the domain, plus a capture ring
/// of 32 points at radius `2 eps` around every puncture.
pub fn seed_grid(domain: &SearchDomain, spacing: f64) -> Result<Vec<Vec2>> {
    seed_grid_with_limit(domain, spacing, DEFAULT_SEED_LIMIT)
}

pub fn seed_grid_with_limit(
    domain: &SearchDomain,
    spacing: f64,
    limit: usize,
) -> Result<Vec<Vec2>> {
    if !(spacing > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "grid spacing must be positive, got {spacing}"
        )));
    }
    let half = (domain.outer_radius / spacing).floor() as i64;
    let side = 2 * half + 1;
    let lattice_candidates = (side as usize).saturating_mul(side as usize);
    if lattice_candidates > limit {
        return Err(Error::SeedCapacity {
            required: lattice_candidates,
            limit,
        });
    }

    let mut seeds = Vec::new();
    for i in -half..=half {
        for j in -half..=half {
            let p = Vec2::new(i as f64 * spacing, j as f64 * spacing);
            if domain.contains(p) {
                seeds.push(p);
            }
        }
    }
    let ring_radius = 2.0 * domain.puncture_radius;
    for center in &domain.centers {
        for k in 0..CAPTURE_RING_POINTS {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / CAPTURE_RING_POINTS as f64;
            let p = *center + Vec2::new(theta.cos(), theta.sin()) * ring_radius;
            if domain.contains(p) {
                seeds.push(p);
            }
        }
    }
    Ok(seeds)
}

fn min_mass_distance(config: &Configuration, p: Vec2) -> f64 {
    config
        .positions()
        .map(|z| z.distance(p))
        .fold(f64::INFINITY, f64::min)
}

fn refine_in_domain(
    config: &Configuration,
    domain: &SearchDomain,
    seed: Vec2,
    opts: &ResolvedOptions,
) -> Option<Equilibrium> {
    let cutoff = config.singularity_cutoff();
    let acceptable = |p: Vec2| domain.contains(p) && min_mass_distance(config, p) > cutoff;
    if !acceptable(seed) {
        return None;
    }
    let mut p = seed;
    let mut g = gradient_unchecked(config, p);
    let mut g_norm = g.norm();
    let mut converged = g_norm <= opts.newton_tolerance;
    let mut iters_left = opts.max_newton_iters;
    let mut polish_left = POLISH_ITERS;
    loop {
        if converged {
            if polish_left == 0 {
                break;
            }
            polish_left -= 1;
        } else {
            if iters_left == 0 {
                return None;
            }
            iters_left -= 1;
        }
        let h = hessian_unchecked(config, p);
        let Some(delta) = h.solve(-g) else {
            if converged {
                break;
            }
            return None;
        };
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let candidate = p + delta * scale;
            if acceptable(candidate) {
                let gc = gradient_unchecked(config, candidate);
                let gc_norm = gc.norm();
                if gc_norm < g_norm {
                    p = candidate;
                    g = gc;
                    g_norm = gc_norm;
                    accepted = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if !accepted {
            if converged {
                break;
            }
            return None;
        }
        if g_norm <= opts.newton_tolerance {
            converged = true;
        }
    }
    Some(make_equilibrium(config, p, g_norm, opts))
}

fn make_equilibrium(
    config: &Configuration,
    p: Vec2,
    residual: f64,
    opts: &ResolvedOptions,
) -> Equilibrium {
    let h = hessian_unchecked(config, p);
    Equilibrium {
        location: p,
        residual,
        hessian: h,
        morse_index: classify(h, opts.degeneracy_threshold).ok(),
        hessian_det: h.det(),
        min_mass_distance: min_mass_distance(config, p),
    }
}

/// Damped Newton iteration on `grad F = 0` from a single seed.
///
/// Steps solve the analytic Hessian system and are halved (up to 20 times)
/// whenever they would leave the search domain, hit the singularity cutoff,
/// or fail to decrease the gradient norm. Returns `None` when the iteration
/// cannot converge within the budget.
pub fn newton_refine(
    config: &Configuration,
    seed: Vec2,
    opts: &SolveOptions,
) -> Option<Equilibrium> {
    let domain = search_domain(config);
    let resolved = opts.resolve(config, &domain);
    refine_in_domain(config, &domain, seed, &resolved)
}

/// Grid-bucket deduplication: candidates sorted by (residual, x, y) are
/// accepted greedily unless within `radius` of an accepted point, so the
/// smallest residual survives in each cluster.
fn dedup_candidates(mut candidates: Vec<Equilibrium>, radius: f64) -> Vec<Equilibrium> {
    candidates.sort_by(|a, b| {
        a.residual
            .total_cmp(&b.residual)
            .then(a.location.x.total_cmp(&b.location.x))
            .then(a.location.y.total_cmp(&b.location.y))
    });
    let cell = |v: f64| (v / radius).floor() as i64;
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let mut accepted: Vec<Equilibrium> = Vec::new();
    'outer: for cand in candidates {
        let (cx, cy) = (cell(cand.location.x), cell(cand.location.y));
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = buckets.get(&(cx + dx, cy + dy)) {
                    for &id in ids {
                        if accepted[id].location.distance(cand.location) <= radius {
                            continue 'outer;
                        }
                    }
                }
            }
        }
        buckets.entry((cx, cy)).or_default().push(accepted.len());
        accepted.push(cand);
    }
    accepted
}

/// Canonical ordering: lexicographic by location rounded to the dedup radius,
/// exact coordinates breaking ties.
fn sort_canonical(equilibria: &mut [Equilibrium], radius: f64) {
    let key = |v: f64| (v / radius).round() as i64;
    equilibria.sort_by(|a, b| {
        key(a.location.x)
            .cmp(&key(b.location.x))
            .then(key(a.location.y).cmp(&key(b.location.y)))
            .then(a.location.x.total_cmp(&b.location.x))
            .then(a.location.y.total_cmp(&b.location.y))
    });
}

/// Finds every isolated equilibrium of the configuration.
///
/// Degenerate survivors (Hessian determinant below the threshold) are kept
/// with `morse_index = None` rather than dropped; [`morse_report`] surfaces
/// them through its `degenerate_found` flag.
pub fn find_equilibria(config: &Configuration, opts: &SolveOptions) -> Result<Vec<Equilibrium>> {
    let domain = search_domain(config);
    let resolved = opts.resolve(config, &domain);
    let seeds = seed_grid_with_limit(&domain, resolved.grid_spacing, resolved.seed_limit)?;
    let candidates: Vec<Equilibrium> = seeds
        .par_iter()
        .filter_map(|&seed| refine_in_domain(config, &domain, seed, &resolved))
        .collect();
    let mut survivors = dedup_candidates(candidates, resolved.dedup_radius);
    survivors.retain(|e| e.residual <= resolved.residual_tolerance);
    sort_canonical(&mut survivors, resolved.dedup_radius);
    Ok(survivors)
}

/// Tallies Morse indices and evaluates the counting identities for an
/// `n`-mass run: the lower bound `N >= n + 1`, the Euler identity
/// `N0 - N1 + N2 = 1 - n`, and the weak inequalities `N0 >= 1`, `N1 >= n`
/// from the Betti numbers `(1, n)` of the punctured disc.
pub fn morse_report(equilibria: &[Equilibrium], n: usize) -> MorseReport {
    let mut counts = (0usize, 0usize, 0usize);
    let mut degenerate_found = false;
    for eq in equilibria {
        match eq.morse_index {
            Some(0) => counts.0 += 1,
            Some(1) => counts.1 += 1,
            Some(2) => counts.2 += 1,
            _ => degenerate_found = true,
        }
    }
    let total = counts.0 + counts.1 + counts.2;
    let euler = counts.0 as i64 - counts.1 as i64 + counts.2 as i64;
    MorseReport {
        counts,
        total,
        betti: (1, n),
        lower_bound_ok: total >= n + 1,
        euler_ok: euler == 1 - n as i64,
        weak_morse_ok: counts.0 >= 1 && counts.1 >= n,
        degenerate_found,
    }
}
