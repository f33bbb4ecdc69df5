//! Test-support oracle: exhaustive sign-change scanning for equilibria, plus
//! deterministic random configuration fixtures.
//!
//! The scan is deliberately independent of the production search path: it
//! evaluates the gradient with its own inline formula, walks every grid cell
//! of the search domain looking for simultaneous sign changes of both
//! gradient components, and refines candidate cells with nested bisection
//! (no Newton steps anywhere).

use eqlab_core::config::{Configuration, MassPoint};
use eqlab_core::geometry::Vec2;
use eqlab_core::model::search_domain;
use rand::Rng;
use rayon::prelude::*;

/// Rows evaluated per parallel band; one extra row is recomputed per band.
const BAND_ROWS: usize = 64;

/// Gradient of the potential, written out directly from the defining system.
fn grad(config: &Configuration, x: f64, y: f64) -> (f64, f64) {
    let mut gx = x;
    let mut gy = y;
    for p in config.points() {
        let dx = x - p.x;
        let dy = y - p.y;
        let r2 = dx * dx + dy * dy;
        let r3 = r2 * r2.sqrt();
        gx -= p.m * dx / r3;
        gy -= p.m * dy / r3;
    }
    (gx, gy)
}

fn inside(config: &Configuration, domain_r: f64, domain_eps: f64, x: f64, y: f64) -> bool {
    if x * x + y * y >= domain_r * domain_r {
        return false;
    }
    config.points().iter().all(|p| {
        let dx = x - p.x;
        let dy = y - p.y;
        dx * dx + dy * dy > domain_eps * domain_eps
    })
}

struct CellGrid {
    x0: f64,
    y0: f64,
    h: f64,
    nx: usize,
    ny: usize,
}

/// Finds every equilibrium by brute force: sign-change scan of both gradient
/// components on a square grid of the given spacing over the search domain,
/// followed by nested bisection inside each candidate cell. Returns locations
/// sorted by `(x, y)`.
pub fn grid_scan_equilibria(config: &Configuration, spacing: f64) -> Vec<Vec2> {
    let domain = search_domain(config);
    let r = domain.outer_radius;
    let eps = domain.puncture_radius;
    let nx = (2.0 * r / spacing).ceil() as usize + 1;
    let grid = CellGrid {
        x0: -r,
        y0: -r,
        h: spacing,
        nx,
        ny: nx,
    };

    let eval_row = |j: usize| -> (Vec<f64>, Vec<f64>) {
        let y = grid.y0 + j as f64 * grid.h;
        let mut fx_row = vec![f64::NAN; grid.nx];
        let mut fy_row = vec![f64::NAN; grid.nx];
        for i in 0..grid.nx {
            let x = grid.x0 + i as f64 * grid.h;
            if inside(config, r, eps, x, y) {
                let (gx, gy) = grad(config, x, y);
                fx_row[i] = gx;
                fy_row[i] = gy;
            }
        }
        (fx_row, fy_row)
    };

    let band_starts: Vec<usize> = (0..grid.ny - 1).step_by(BAND_ROWS).collect();
    let candidates: Vec<(usize, usize)> = band_starts
        .par_iter()
        .flat_map_iter(|&j_start| {
            let j_end = (j_start + BAND_ROWS).min(grid.ny - 1);
            let mut found = Vec::new();
            let mut below = eval_row(j_start);
            for j in j_start..j_end {
                let above = eval_row(j + 1);
                for i in 0..grid.nx - 1 {
                    let fx = [below.0[i], below.0[i + 1], above.0[i], above.0[i + 1]];
                    let fy = [below.1[i], below.1[i + 1], above.1[i], above.1[i + 1]];
                    if fx.iter().chain(&fy).any(|v| v.is_nan()) {
                        continue;
                    }
                    let mixed = |v: &[f64; 4]| {
                        let s = v[0].signum();
                        v.iter().any(|w| w.signum() != s)
                    };
                    if mixed(&fx) && mixed(&fy) {
                        found.push((i, j));
                    }
                }
                below = above;
            }
            found
        })
        .collect();

    let mut roots: Vec<Vec2> = candidates
        .par_iter()
        .filter_map(|&(i, j)| {
            let x_lo = grid.x0 + i as f64 * grid.h;
            let y_lo = grid.y0 + j as f64 * grid.h;
            refine_cell(config, x_lo, x_lo + grid.h, y_lo, y_lo + grid.h, 0)
        })
        .filter(|p| {
            let (gx, gy) = grad(config, p.x, p.y);
            gx.hypot(gy) <= 1e-7
        })
        .collect();

    roots.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    roots.dedup_by(|a, b| a.distance(*b) <= 1e-8);
    roots
}

const BISECT_TOL: f64 = 1e-13;
const MAX_SUBDIVISION_DEPTH: u32 = 12;

fn bisect_scalar<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        if (hi - lo).abs() <= BISECT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// One component solved along vertical segments (`y*(x)`), the other
/// bisected along the curve so obtained.
fn nested_vertical(
    inner: &impl Fn(f64, f64) -> f64,
    outer: &impl Fn(f64, f64) -> f64,
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
) -> Option<Vec2> {
    if inner(x_lo, y_lo).signum() == inner(x_lo, y_hi).signum()
        || inner(x_hi, y_lo).signum() == inner(x_hi, y_hi).signum()
    {
        return None;
    }
    let y_star = |x: f64| bisect_scalar(&|y| inner(x, y), y_lo, y_hi);
    let g = |x: f64| outer(x, y_star(x));
    if g(x_lo).signum() == g(x_hi).signum() {
        return None;
    }
    let x = bisect_scalar(&g, x_lo, x_hi);
    Some(Vec2::new(x, y_star(x)))
}

/// Transposed variant: `x*(y)` along horizontal segments.
fn nested_horizontal(
    inner: &impl Fn(f64, f64) -> f64,
    outer: &impl Fn(f64, f64) -> f64,
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
) -> Option<Vec2> {
    if inner(x_lo, y_lo).signum() == inner(x_hi, y_lo).signum()
        || inner(x_lo, y_hi).signum() == inner(x_hi, y_hi).signum()
    {
        return None;
    }
    let x_star = |y: f64| bisect_scalar(&|x| inner(x, y), x_lo, x_hi);
    let g = |y: f64| outer(x_star(y), y);
    if g(y_lo).signum() == g(y_hi).signum() {
        return None;
    }
    let y = bisect_scalar(&g, y_lo, y_hi);
    Some(Vec2::new(x_star(y), y))
}

/// Nested bisection over all four curve orientations, falling back to 2x2
/// subdivision when no corner sign pattern fits.
fn refine_cell(
    config: &Configuration,
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
    depth: u32,
) -> Option<Vec2> {
    let fx = |x: f64, y: f64| grad(config, x, y).0;
    let fy = |x: f64, y: f64| grad(config, x, y).1;

    if let Some(p) = nested_vertical(&fy, &fx, x_lo, x_hi, y_lo, y_hi)
        .or_else(|| nested_vertical(&fx, &fy, x_lo, x_hi, y_lo, y_hi))
        .or_else(|| nested_horizontal(&fx, &fy, x_lo, x_hi, y_lo, y_hi))
        .or_else(|| nested_horizontal(&fy, &fx, x_lo, x_hi, y_lo, y_hi))
    {
        return Some(p);
    }

    if depth >= MAX_SUBDIVISION_DEPTH {
        return None;
    }
    let x_mid = 0.5 * (x_lo + x_hi);
    let y_mid = 0.5 * (y_lo + y_hi);
    for (xa, xb, ya, yb) in [
        (x_lo, x_mid, y_lo, y_mid),
        (x_mid, x_hi, y_lo, y_mid),
        (x_lo, x_mid, y_mid, y_hi),
        (x_mid, x_hi, y_mid, y_hi),
    ] {
        let fx_c = [fx(xa, ya), fx(xb, ya), fx(xa, yb), fx(xb, yb)];
        let fy_c = [fy(xa, ya), fy(xb, ya), fy(xa, yb), fy(xb, yb)];
        let mixed = |v: &[f64; 4]| {
            let s = v[0].signum();
            v.iter().any(|w| w.signum() != s)
        };
        if mixed(&fx_c) && mixed(&fy_c) {
            if let Some(p) = refine_cell(config, xa, xb, ya, yb, depth + 1) {
                return Some(p);
            }
        }
    }
    None
}

/// Uniform random configuration: `n` positions in the unit disc kept at least
/// `min_separation` apart, masses uniform in `[0.5, 2]`.
pub fn random_configuration<R: Rng>(rng: &mut R, n: usize, min_separation: f64) -> Configuration {
    loop {
        let mut points: Vec<MassPoint> = Vec::with_capacity(n);
        let mut attempts = 0;
        while points.len() < n && attempts < 10_000 {
            attempts += 1;
            let radius = rng.gen::<f64>().sqrt();
            let theta = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
            let (x, y) = (radius * theta.cos(), radius * theta.sin());
            if points
                .iter()
                .all(|p| (Vec2::new(x, y) - p.position()).norm() >= min_separation)
            {
                points.push(MassPoint::new(x, y, rng.gen_range(0.5..=2.0)));
            }
        }
        if points.len() == n {
            if let Ok(config) = Configuration::new(points) {
                return config;
            }
        }
    }
}

/// True when each point of `a` has a partner in `b` within `tol` and vice
/// versa, with equal cardinality.
pub fn same_point_set(a: &[Vec2], b: &[Vec2], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| b.iter().any(|q| p.distance(*q) <= tol))
        && b.iter().all(|p| a.iter().any(|q| p.distance(*q) <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scan_finds_radial_balance_of_offset_mass() {
        // one mass away from the origin: finitely many equilibria, all with
        // |grad| = 0; check the scan finds at least the two diagonal ones.
        let config = Configuration::new(vec![MassPoint::new(0.7, 0.7, 1.0)]).unwrap();
        let roots = grid_scan_equilibria(&config, 5e-3);
        assert!(!roots.is_empty());
        for p in &roots {
            let (gx, gy) = grad(&config, p.x, p.y);
            assert!(gx.hypot(gy) < 1e-8);
        }
        // the configuration is symmetric about the diagonal; so is the root set
        for p in &roots {
            let mirrored = Vec2::new(p.y, p.x);
            assert!(roots.iter().any(|q| q.distance(mirrored) < 1e-6));
        }
    }

    #[test]
    fn random_configurations_are_separated_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_configuration(&mut rng, 4, 0.3);
        assert_eq!(a.n(), 4);
        assert!(a.min_pairwise_distance().unwrap() >= 0.3);
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        let b = random_configuration(&mut rng2, 4, 0.3);
        assert_eq!(a, b);
    }

    #[test]
    fn point_set_comparison() {
        let a = vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)];
        let b = vec![Vec2::new(1e-9, 0.0), Vec2::new(1.0, -1e-9)];
        assert!(same_point_set(&a, &b, 1e-6));
        assert!(!same_point_set(&a, &b[..1], 1e-6));
    }
}
