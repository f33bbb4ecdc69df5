//! Exact evaluation of the potential, gradient and Hessian, and construction
//! of a bounded search domain that contains every equilibrium.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geometry::{SymMat2, Vec2};

/// The punctured disc `{ |p| < R } minus union_i { |p - z_i| <= eps }`.
///
/// Constructed so that every critical point of the potential lies strictly
/// inside: the gradient points outward on every boundary circle.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchDomain {
    pub outer_radius: f64,
    pub puncture_radius: f64,
    pub centers: Vec<Vec2>,
}

impl SearchDomain {
    /// Validates `eps < R`, puncture disjointness and containment.
    pub fn new(outer_radius: f64, puncture_radius: f64, centers: Vec<Vec2>) -> Result<Self> {
        if !(puncture_radius > 0.0) || !(outer_radius > puncture_radius) {
            return Err(Error::InvalidParameter(format!(
                "search domain needs 0 < eps < R, got eps = {puncture_radius}, R = {outer_radius}"
            )));
        }
        for (i, c) in centers.iter().enumerate() {
            if c.norm() + puncture_radius >= outer_radius {
                return Err(Error::InvalidParameter(format!(
                    "puncture {i} not contained in the outer disc"
                )));
            }
            for (j, d) in centers.iter().enumerate().skip(i + 1) {
                if c.distance(*d) <= 2.0 * puncture_radius {
                    return Err(Error::InvalidParameter(format!(
                        "punctures {i} and {j} overlap"
                    )));
                }
            }
        }
        Ok(SearchDomain {
            outer_radius,
            puncture_radius,
            centers,
        })
    }

    /// Strict membership: inside the outer disc and outside every puncture.
    pub fn contains(&self, p: Vec2) -> bool {
        p.norm() < self.outer_radius
            && self
                .centers
                .iter()
                .all(|c| c.distance(p) > self.puncture_radius)
    }
}

fn check_regular(config: &Configuration, p: Vec2) -> Result<()> {
    let cutoff = config.singularity_cutoff();
    for (i, z) in config.positions().enumerate() {
        if p.distance(z) < cutoff {
            return Err(Error::SingularEvaluation { index: i, cutoff });
        }
    }
    Ok(())
}

/// Potential value `|p|^2/2 + sum_i m_i / |p - z_i|`.
pub fn potential(config: &Configuration, p: Vec2) -> Result<f64> {
    check_regular(config, p)?;
    let mut sum = 0.5 * p.norm_sq();
    for mp in config.points() {
        sum += mp.m / p.distance(mp.position());
    }
    Ok(sum)
}

/// Gradient `p - sum_i m_i (p - z_i) / |p - z_i|^3`.
pub fn gradient(config: &Configuration, p: Vec2) -> Result<Vec2> {
    check_regular(config, p)?;
    Ok(gradient_unchecked(config, p))
}

pub(crate) fn gradient_unchecked(config: &Configuration, p: Vec2) -> Vec2 {
    let mut g = p;
    for mp in config.points() {
        let d = p - mp.position();
        let r2 = d.norm_sq();
        let inv_r3 = 1.0 / (r2 * r2.sqrt());
        g = g - d * (mp.m * inv_r3);
    }
    g
}

/// Analytic Hessian of the potential:
/// `fxx = 1 + sum m_i (2 dx^2 - dy^2) / r^5`, `fxy = 3 sum m_i dx dy / r^5`,
/// and symmetrically for `fyy`.
pub fn hessian(config: &Configuration, p: Vec2) -> Result<SymMat2> {
    check_regular(config, p)?;
    Ok(hessian_unchecked(config, p))
}

pub(crate) fn hessian_unchecked(config: &Configuration, p: Vec2) -> SymMat2 {
    let mut fxx = 1.0;
    let mut fxy = 0.0;
    let mut fyy = 1.0;
    for mp in config.points() {
        let d = p - mp.position();
        let r2 = d.norm_sq();
        let inv_r5 = 1.0 / (r2 * r2 * r2.sqrt());
        fxx += mp.m * (2.0 * d.x * d.x - d.y * d.y) * inv_r5;
        fyy += mp.m * (2.0 * d.y * d.y - d.x * d.x) * inv_r5;
        fxy += 3.0 * mp.m * d.x * d.y * inv_r5;
    }
    SymMat2::new(fxx, fxy, fyy)
}

/// Builds the search domain with explicit radii:
///
/// - `R = max(2 max_i |z_i|, (8 sum_i m_i)^(1/3), 1)`, which makes the
///   quadratic term dominate on `|p| = R`;
/// - `eps = min(d_min/4, sqrt(m_min / (2B)))` with
///   `B = R + sum_j m_j / (d_min/2)^2`, which makes the singular term dominate
///   on each puncture circle (`d_min` is the minimum pairwise center distance,
///   or `R` for a single mass).
pub fn search_domain(config: &Configuration) -> SearchDomain {
    let r = (2.0 * config.max_center_norm())
        .max((8.0 * config.total_mass()).cbrt())
        .max(1.0);
    let d_min = config.min_pairwise_distance().unwrap_or(r);
    let half = 0.5 * d_min;
    let bound = r + config.total_mass() / (half * half);
    let eps = (0.25 * d_min).min((config.min_mass() / (2.0 * bound)).sqrt());
    SearchDomain {
        outer_radius: r,
        puncture_radius: eps,
        centers: config.positions().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::MassPoint;

    fn single_mass(m: f64) -> Configuration {
        Configuration::new(vec![MassPoint::new(0.0, 0.0, m)]).unwrap()
    }

    #[test]
    fn potential_single_mass_values() {
        let cfg = single_mass(1.0);
        assert!((potential(&cfg, Vec2::new(1.0, 0.0)).unwrap() - 1.5).abs() < 1e-15);
        assert!((potential(&cfg, Vec2::new(2.0, 0.0)).unwrap() - 2.5).abs() < 1e-15);
    }

    #[test]
    fn potential_two_masses_at_origin_point() {
        let cfg = Configuration::new(vec![
            MassPoint::new(1.0, 1.0, 1.0),
            MassPoint::new(2.0, 2.0, 1.0),
        ])
        .unwrap();
        // 1/sqrt(2) + 1/sqrt(8)
        let expected = 0.5f64.sqrt() + 0.125f64.sqrt();
        assert!((potential(&cfg, Vec2::ZERO).unwrap() - expected).abs() < 1e-14);
        assert!(expected - 1.06066 < 1e-5);
    }

    #[test]
    fn potential_rejects_singular_point() {
        let cfg = single_mass(1.0);
        let err = potential(&cfg, Vec2::ZERO).unwrap_err();
        assert!(matches!(err, Error::SingularEvaluation { index: 0, .. }));
    }

    #[test]
    fn gradient_radial_balance() {
        // |z|^3 = m puts the point on the equilibrium circle.
        let cfg = single_mass(1.0);
        assert!(gradient(&cfg, Vec2::new(1.0, 0.0)).unwrap().norm() < 1e-15);
        let cfg8 = single_mass(8.0);
        assert!(gradient(&cfg8, Vec2::new(2.0, 0.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn gradient_direct_value() {
        let cfg = single_mass(1.0);
        let g = gradient(&cfg, Vec2::new(2.0, 0.0)).unwrap();
        assert!((g.x - 1.75).abs() < 1e-15);
        assert_eq!(g.y, 0.0);
    }

    #[test]
    fn hessian_single_mass_unit_circle() {
        let cfg = single_mass(1.0);
        let h = hessian(&cfg, Vec2::new(1.0, 0.0)).unwrap();
        assert!((h.fxx - 3.0).abs() < 1e-15);
        assert!(h.fyy.abs() < 1e-15);
        assert_eq!(h.fxy, 0.0);
    }

    #[test]
    fn hessian_far_field_is_identity() {
        let cfg = Configuration::new(vec![
            MassPoint::new(0.3, -0.2, 1.5),
            MassPoint::new(-0.5, 0.9, 0.7),
        ])
        .unwrap();
        let p = Vec2::new(1e6, 0.5e6);
        let h = hessian(&cfg, p).unwrap();
        assert!((h.fxx - 1.0).abs() < 1e-9);
        assert!((h.fyy - 1.0).abs() < 1e-9);
        assert!(h.fxy.abs() < 1e-9);
    }

    #[test]
    fn hessian_trace_identity() {
        // fxx + fyy = 2 + sum m_i / r_i^3 at any regular point.
        let cfg = Configuration::new(vec![
            MassPoint::new(1.0, 0.0, 2.0),
            MassPoint::new(-0.5, 0.5, 0.3),
        ])
        .unwrap();
        let p = Vec2::new(0.2, -0.7);
        let h = hessian(&cfg, p).unwrap();
        let expected: f64 = 2.0
            + cfg
                .points()
                .iter()
                .map(|mp| mp.m / p.distance(mp.position()).powi(3))
                .sum::<f64>();
        assert!((h.trace() - expected).abs() < 1e-12);
    }

    #[test]
    fn search_domain_single_mass() {
        let cfg = single_mass(1.0);
        let d = search_domain(&cfg);
        assert!((d.outer_radius - 2.0).abs() < 1e-15);
        // the equilibrium circle |z| = 1 is strictly inside
        assert!(d.contains(Vec2::new(1.0, 0.0)));
        assert!(d.puncture_radius < 1.0);
    }

    #[test]
    fn search_domain_two_symmetric_masses() {
        let cfg = Configuration::new(vec![
            MassPoint::new(1.0, 0.0, 1.0),
            MassPoint::new(-1.0, 0.0, 1.0),
        ])
        .unwrap();
        let d = search_domain(&cfg);
        assert!((d.outer_radius - 16f64.cbrt()).abs() < 1e-12);
        assert!(d.puncture_radius <= 0.5);
    }

    #[test]
    fn search_domain_invariants_hold() {
        let cfg = Configuration::new(vec![
            MassPoint::new(0.3, 0.4, 0.5),
            MassPoint::new(-0.2, 0.1, 2.0),
            MassPoint::new(0.9, -0.8, 1.0),
        ])
        .unwrap();
        let d = search_domain(&cfg);
        SearchDomain::new(d.outer_radius, d.puncture_radius, d.centers.clone()).unwrap();
    }

    #[test]
    fn domain_membership_is_strict() {
        let d = SearchDomain::new(2.0, 0.5, vec![Vec2::ZERO]).unwrap();
        assert!(!d.contains(Vec2::new(2.0, 0.0)));
        assert!(!d.contains(Vec2::new(0.5, 0.0)));
        assert!(d.contains(Vec2::new(1.0, 0.0)));
    }
}
