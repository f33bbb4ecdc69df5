//! The `verify` command: counting identities, algebraic bounds, and lift
//! residuals for one configuration.

use anyhow::Result;
use eqlab_core::config::Configuration;
use eqlab_core::polysys::{
    bezout_bound, build_system_ab, build_system_w, lift_and_residual, mv_tilde_formula,
    rational_points_from_json, reference_degrees,
};
use eqlab_core::solver::{find_equilibria, morse_report, SolveOptions};
use num::BigInt;

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

const LIFT_RESIDUAL_LIMIT: f64 = 1e-8;

pub fn run_checks(config_text: &str, opts: &SolveOptions) -> Result<Vec<Check>> {
    let config = Configuration::from_json_str(config_text)?;
    let n = config.n();
    let equilibria = find_equilibria(&config, opts)?;
    let report = morse_report(&equilibria, n);
    let observed = equilibria.len();

    let mut checks = Vec::new();

    checks.push(Check {
        name: "non_degenerate",
        pass: !report.degenerate_found,
        detail: if report.degenerate_found {
            "degenerate Hessian among survivors: possibly a non-isolated family".into()
        } else {
            format!("{observed} isolated equilibria, all classified")
        },
    });

    checks.push(Check {
        name: "lower_bound",
        pass: !report.degenerate_found && report.lower_bound_ok,
        detail: format!("N = {} vs n + 1 = {}", report.total, n + 1),
    });

    let euler = report.counts.0 as i64 - report.counts.1 as i64 + report.counts.2 as i64;
    checks.push(Check {
        name: "euler",
        pass: !report.degenerate_found && report.euler_ok,
        detail: format!(
            "N0 - N1 + N2 = {euler} vs 1 - n = {} (counts {:?})",
            1 - n as i64,
            report.counts
        ),
    });

    let bezout = bezout_bound(n);
    let mv_plus_one = mv_tilde_formula(n) + 1;
    let degree = reference_degrees().lookup(n);
    let observed_big = BigInt::from(observed);
    let within_degree = degree.is_none_or(|d| observed as u64 <= d);
    checks.push(Check {
        name: "count_bounds",
        pass: observed_big <= bezout && observed_big <= mv_plus_one && within_degree,
        detail: format!(
            "N = {observed} vs 4^(n+2) = {bezout}, MV~+1 = {mv_plus_one}, degree = {}",
            degree.map_or("n/a".into(), |d| d.to_string())
        ),
    });

    let points = rational_points_from_json(config_text)?;
    for (name, system) in [
        ("lift_w", build_system_w(&points)),
        ("lift_ab", build_system_ab(&points)),
    ] {
        let worst = equilibria
            .iter()
            .map(|eq| lift_and_residual(&system, &config, eq).unwrap_or(f64::INFINITY))
            .fold(0.0f64, f64::max);
        checks.push(Check {
            name,
            pass: worst <= LIFT_RESIDUAL_LIMIT,
            detail: format!("max residual {worst:.3e} vs {LIFT_RESIDUAL_LIMIT:.0e}"),
        });
    }

    Ok(checks)
}
