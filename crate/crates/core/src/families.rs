//! Named example families: the collinear configuration attaining the minimal
//! equilibrium count, the two-body Lagrange configuration, and the equal-mass
//! equilateral triangle.

use crate::config::{Configuration, MassPoint};
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::roots::bisect;

/// Unit masses placed on the diagonal at `(z_i, z_i)` for strictly
/// increasing, strictly positive `z_i`. This family has exactly `n + 1`
/// equilibria, all on the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CollinearConfig {
    positions: Vec<f64>,
}

impl CollinearConfig {
    pub fn new(positions: Vec<f64>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::InvalidParameter(
                "collinear configuration needs at least one position".into(),
            ));
        }
        for (i, &z) in positions.iter().enumerate() {
            if !(z > 0.0) || !z.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "collinear position {i} must be positive and finite, got {z}"
                )));
            }
            if i > 0 && positions[i - 1] >= z {
                return Err(Error::InvalidParameter(format!(
                    "collinear positions must be strictly increasing at index {i}"
                )));
            }
        }
        Ok(CollinearConfig { positions })
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn configuration(&self) -> Configuration {
        Configuration::new(
            self.positions
                .iter()
                .map(|&z| MassPoint::new(z, z, 1.0))
                .collect(),
        )
        .expect("strictly increasing positives are a valid configuration")
    }

    fn cutoff(&self) -> f64 {
        1e-14 * self.positions.last().copied().unwrap_or(1.0).max(1.0)
    }
}

/// The diagonal restriction `f(x) = F_x(x, x)`:
/// `x - sum_i (x - z_i) / (2 (x - z_i)^2)^(3/2)`.
pub fn collinear_f(config: &CollinearConfig, x: f64) -> Result<f64> {
    let cutoff = config.cutoff();
    let mut sum = x;
    for (i, &z) in config.positions.iter().enumerate() {
        let d = x - z;
        if d.abs() < cutoff {
            return Err(Error::SingularEvaluation { index: i, cutoff });
        }
        sum -= d / (2.0 * d * d).powf(1.5);
    }
    Ok(sum)
}

/// `f'(x) = 1 + sum_i 1 / (sqrt(2) |x - z_i|^3)`, strictly positive between
/// singularities.
pub fn collinear_f_prime(config: &CollinearConfig, x: f64) -> Result<f64> {
    let cutoff = config.cutoff();
    let mut sum = 1.0;
    for (i, &z) in config.positions.iter().enumerate() {
        let d = (x - z).abs();
        if d < cutoff {
            return Err(Error::SingularEvaluation { index: i, cutoff });
        }
        sum += 1.0 / (2f64.sqrt() * d * d * d);
    }
    Ok(sum)
}

/// All `n + 1` diagonal equilibria, found by bracketing the unique sign
/// change of `f` on each interval between consecutive singularities (with
/// doubling expansion on the two unbounded ends) and bisecting to 1e-13.
pub fn collinear_equilibria(config: &CollinearConfig) -> Result<Vec<Vec2>> {
    let zs = &config.positions;
    let scale = zs.last().copied().unwrap_or(1.0).max(1.0);
    let tol = 1e-13 * scale;
    let f = |x: f64| collinear_f(config, x).unwrap_or(f64::NAN);

    // f tends to +inf left of each singularity and -inf right of it; shrink
    // toward the singularity until the expected sign shows up.
    let approach = |z: f64, from_left: bool| -> Result<f64> {
        let mut delta = 1e-3 * scale;
        for _ in 0..60 {
            let x = if from_left { z - delta } else { z + delta };
            let v = f(x);
            if v.is_finite() && ((from_left && v > 0.0) || (!from_left && v < 0.0)) {
                return Ok(x);
            }
            delta *= 0.1;
        }
        Err(Error::BracketFailure { lo: z, hi: z })
    };

    let mut roots = Vec::with_capacity(zs.len() + 1);

    // (-inf, z_1)
    {
        let hi = approach(zs[0], true)?;
        let mut lo = zs[0] - scale;
        let mut tries = 0;
        while f(lo) >= 0.0 {
            lo = zs[0] - (zs[0] - lo) * 2.0;
            tries += 1;
            if tries > 100 {
                return Err(Error::BracketFailure { lo, hi });
            }
        }
        roots.push(bisect(f, lo, hi, tol));
    }
    // (z_i, z_{i+1})
    for w in zs.windows(2) {
        let lo = approach(w[0], false)?;
        let hi = approach(w[1], true)?;
        if f(lo).signum() == f(hi).signum() {
            return Err(Error::BracketFailure { lo, hi });
        }
        roots.push(bisect(f, lo, hi, tol));
    }
    // (z_n, inf)
    {
        let z_last = zs[zs.len() - 1];
        let lo = approach(z_last, false)?;
        let mut hi = z_last + scale;
        let mut tries = 0;
        while f(hi) <= 0.0 {
            hi = z_last + (hi - z_last) * 2.0;
            tries += 1;
            if tries > 100 {
                return Err(Error::BracketFailure { lo, hi });
            }
        }
        roots.push(bisect(f, lo, hi, tol));
    }

    Ok(roots.into_iter().map(|x| Vec2::new(x, x)).collect())
}

/// Two-body central configuration scaled to unit angular speed: separation
/// `d = (m1 + m2)^(1/3)` with the center of mass at the origin. Its
/// equilibria are the five Lagrange points.
pub fn lagrange_config(m1: f64, m2: f64) -> Result<Configuration> {
    if !(m1 > 0.0) || !(m2 > 0.0) || !m1.is_finite() || !m2.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "lagrange masses must be positive, got m1 = {m1}, m2 = {m2}"
        )));
    }
    let total = m1 + m2;
    let d = total.cbrt();
    Configuration::new(vec![
        MassPoint::new(-m2 * d / total, 0.0, m1),
        MassPoint::new(m1 * d / total, 0.0, m2),
    ])
}

/// Three equal masses `m` at the vertices of an equilateral triangle with
/// side `s = (3m)^(1/3)` and centroid at the origin (unit-angular-speed
/// central-configuration scaling).
pub fn triangle_config(m: f64) -> Result<Configuration> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "triangle mass must be positive, got {m}"
        )));
    }
    let side = (3.0 * m).cbrt();
    let circumradius = side / 3f64.sqrt();
    let points = (0..3)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            MassPoint::new(circumradius * theta.cos(), circumradius * theta.sin(), m)
        })
        .collect();
    Configuration::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::gradient;

    #[test]
    fn rejects_unordered_or_nonpositive_positions() {
        assert!(CollinearConfig::new(vec![]).is_err());
        assert!(CollinearConfig::new(vec![-1.0, 2.0]).is_err());
        assert!(CollinearConfig::new(vec![2.0, 1.0]).is_err());
        assert!(CollinearConfig::new(vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn f_matches_two_dimensional_gradient_on_diagonal() {
        let cc = CollinearConfig::new(vec![1.0, 2.0]).unwrap();
        let cfg = cc.configuration();
        for &x in &[-0.5, 0.3, 1.5, 3.7] {
            let f = collinear_f(&cc, x).unwrap();
            let g = gradient(&cfg, Vec2::new(x, x)).unwrap();
            assert!((f - g.x).abs() < 1e-12, "x = {x}");
            assert!((g.x - g.y).abs() < 1e-12);
        }
    }

    #[test]
    fn f_prime_positive_and_matches_finite_differences() {
        let cc = CollinearConfig::new(vec![1.0, 2.0, 3.5]).unwrap();
        for k in 0..100 {
            let x = -2.0 + 0.07 * k as f64;
            if cc.positions().iter().any(|&z| (x - z).abs() < 0.02) {
                continue;
            }
            let fp = collinear_f_prime(&cc, x).unwrap();
            assert!(fp > 0.0);
            let h = 1e-6;
            let fd = (collinear_f(&cc, x + h).unwrap() - collinear_f(&cc, x - h).unwrap())
                / (2.0 * h);
            assert!((fp - fd).abs() <= 1e-5 * fp.abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn pair_has_one_sign_change_per_interval() {
        let cc = CollinearConfig::new(vec![1.0, 2.0]).unwrap();
        let roots = collinear_equilibria(&cc).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots[0].x < 1.0);
        assert!(roots[1].x > 1.0 && roots[1].x < 2.0);
        assert!(roots[2].x > 2.0);
        for r in &roots {
            assert_eq!(r.x, r.y);
            assert!(collinear_f(&cc, r.x).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn four_positions_give_five_roots() {
        let cc = CollinearConfig::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(collinear_equilibria(&cc).unwrap().len(), 5);
    }

    #[test]
    fn single_position_gives_two_roots() {
        let cc = CollinearConfig::new(vec![1.0]).unwrap();
        let roots = collinear_equilibria(&cc).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].x < 1.0 && roots[1].x > 1.0);
    }

    #[test]
    fn lagrange_equal_masses_positions() {
        let cfg = lagrange_config(1.0, 1.0).unwrap();
        let half = 2f64.cbrt() / 2.0;
        assert!((cfg.points()[0].x + half).abs() < 1e-15);
        assert!((cfg.points()[1].x - half).abs() < 1e-15);
        assert!(lagrange_config(0.0, 1.0).is_err());
    }

    #[test]
    fn triangle_is_central_configuration() {
        // with s = (3m)^(1/3) each vertex balances: z_i = sum_j m (z_i - z_j)/s^3
        let cfg = triangle_config(1.3).unwrap();
        let side = (3.0 * 1.3f64).cbrt();
        let pts: Vec<Vec2> = cfg.positions().collect();
        for i in 0..3 {
            let mut force = Vec2::ZERO;
            for j in 0..3 {
                if i != j {
                    let d = pts[i] - pts[j];
                    assert!((d.norm() - side).abs() < 1e-12);
                    force = force + d * (1.3 / side.powi(3));
                }
            }
            assert!((force - pts[i]).norm() < 1e-12);
        }
        assert!(triangle_config(-1.0).is_err());
    }
}
