//! Result JSON assembly for the solve-style commands.

use eqlab_core::ring::RingCount;
use eqlab_core::solver::{Equilibrium, MorseReport};
use serde_json::{json, Value};

pub fn result_json(n: usize, equilibria: &[Equilibrium], report: &MorseReport) -> Value {
    json!({
        "n": n,
        "equilibria": equilibria
            .iter()
            .map(|e| {
                json!({
                    "x": e.location.x,
                    "y": e.location.y,
                    "residual": e.residual,
                    "morse_index": e.morse_index,
                    "hessian_det": e.hessian_det,
                })
            })
            .collect::<Vec<_>>(),
        "report": {
            "N0": report.counts.0,
            "N1": report.counts.1,
            "N2": report.counts.2,
            "lower_bound_ok": report.lower_bound_ok,
            "euler_ok": report.euler_ok,
            "degenerate_found": report.degenerate_found,
        }
    })
}

/// Same as [`result_json`] plus the per-ray breakdown of a ring solve.
pub fn ring_json(n: usize, count: &RingCount, report: &MorseReport) -> Value {
    let mut value = result_json(n, &count.equilibria, report);
    value["ring"] = json!({
        "total": count.total,
        "type_a": count.on_type_a,
        "type_b": count.on_type_b,
        "off_ray": count.off_ray,
        "scan_type_a": count.scan_type_a,
        "scan_type_b": count.scan_type_b,
    });
    value
}
