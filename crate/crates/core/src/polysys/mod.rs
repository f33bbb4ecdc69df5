//! Polynomial reformulations of the equilibrium system, exact root-count
//! bound formulas, and Newton-polytope support extraction.
//!
//! Two square systems are built with exact rational coefficients:
//!
//! - the `w`-system in variables `(x, y, w_1..w_n)`: the gradient equations
//!   with `w_i = |z - z_i|^(-1)` and the closure equations
//!   `w_i^2 ((x - x_i)^2 + (y - y_i)^2) - 1 = 0` (n + 2 equations of degree 4);
//! - the `ab`-system in variables `(a_1..a_n, b_1..b_n, w_1..w_n)` with
//!   `a_i = x - x_i`, `b_i = y - y_i`, plus difference equations tying the
//!   `a_i`/`b_i` together (3n equations).
//!
//! Root-count bounds: the Bezout product `4^(n+2)`, the mixed-volume
//! sequences `(9n^2 + 3n - 4) 2^(n-1)` and `(9n^2 + n + 2) 2^(n-1)`, and
//! stored symbolic reference degrees for small `n`.

mod poly;

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};
use serde::Deserialize;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::solver::Equilibrium;

pub use poly::{Monomial, Polynomial};

/// Exact rational scalar used throughout this module.
pub type Rational = BigRational;

/// A mass point with exact rational data.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMassPoint {
    pub x: Rational,
    pub y: Rational,
    pub m: Rational,
}

/// Which reformulation a system instance is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    W,
    AB,
}

/// A square polynomial system with named variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSystem {
    pub kind: SystemKind,
    pub variable_names: Vec<String>,
    pub equations: Vec<Polynomial>,
}

/// Per-equation Newton-polytope supports (exponent vectors of the nonzero
/// terms).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    pub per_equation: Vec<Vec<Vec<u32>>>,
}

/// Exponent (and fractional-digit) cap for decimal literals; anything past
/// f64 range plus slack is rejected rather than allocating gigantic integers.
const MAX_DECIMAL_EXPONENT: u64 = 9999;
const MAX_DECIMAL_DIGITS: usize = 9999;

/// Parses a plain decimal literal (optional sign, fraction, exponent) into an
/// exact rational, so `0.01` becomes exactly `1/100`.
pub fn rational_from_decimal(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid decimal literal: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let (mantissa, exp_part) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut numer: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().map_err(|_| bad())?
    };
    let ten = BigInt::from(10);
    for c in frac_part.chars() {
        numer = &numer * &ten + BigInt::from(c.to_digit(10).unwrap());
    }
    if frac_part.len() > MAX_DECIMAL_DIGITS {
        return Err(bad());
    }
    let mut denom = ten.pow(frac_part.len() as u32);
    if let Some(exp_text) = exp_part {
        let exp: i64 = exp_text.parse().map_err(|_| bad())?;
        if exp.unsigned_abs() > MAX_DECIMAL_EXPONENT {
            return Err(bad());
        }
        let shift = ten.pow(exp.unsigned_abs() as u32);
        if exp >= 0 {
            numer *= shift;
        } else {
            denom *= shift;
        }
    }
    Ok(Rational::new(numer * BigInt::from(sign), denom))
}

/// Parses `p/q` (both sides decimal literals) or a single decimal literal.
pub fn parse_rational_str(text: &str) -> Result<Rational> {
    match text.split_once('/') {
        Some((num, den)) => {
            let n = rational_from_decimal(num)?;
            let d = rational_from_decimal(den)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(n / d)
        }
        None => rational_from_decimal(text),
    }
}

/// Exact conversion of the stored double-precision parameters. Every finite
/// f64 is a dyadic rational, so this is lossless with respect to what the
/// configuration actually holds.
pub fn rational_points_from_configuration(config: &Configuration) -> Vec<RationalMassPoint> {
    config
        .points()
        .iter()
        .map(|p| RationalMassPoint {
            x: Rational::from_float(p.x).expect("finite by validation"),
            y: Rational::from_float(p.y).expect("finite by validation"),
            m: Rational::from_float(p.m).expect("finite by validation"),
        })
        .collect()
}

#[derive(Deserialize)]
struct RawConfigFile {
    masses: Vec<RawMassPoint>,
}

#[derive(Deserialize)]
struct RawMassPoint {
    x: serde_json::Number,
    y: serde_json::Number,
    m: serde_json::Number,
}

/// Reads the configuration JSON keeping the decimal literals exact
/// (`0.01` parses to `1/100`, not to its nearest double). The same text must
/// also pass ordinary [`Configuration`] validation.
pub fn rational_points_from_json(text: &str) -> Result<Vec<RationalMassPoint>> {
    Configuration::from_json_str(text)?;
    let raw: RawConfigFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("config JSON: {e}")))?;
    raw.masses
        .iter()
        .map(|p| {
            Ok(RationalMassPoint {
                x: rational_from_decimal(&p.x.to_string())?,
                y: rational_from_decimal(&p.y.to_string())?,
                m: rational_from_decimal(&p.m.to_string())?,
            })
        })
        .collect()
}

/// The `(x, y, w_1..w_n)` system: gradient equations plus the inverse-distance
/// closure equations. `n + 2` equations in `n + 2` variables, total degree 4.
pub fn build_system_w(points: &[RationalMassPoint]) -> PolynomialSystem {
    let n = points.len();
    let n_vars = n + 2;
    let var_x = 0usize;
    let var_y = 1usize;
    let var_w = |i: usize| 2 + i;

    let x = Polynomial::variable(n_vars, var_x);
    let y = Polynomial::variable(n_vars, var_y);

    let mut eq_x = x.clone();
    let mut eq_y = y.clone();
    for (i, p) in points.iter().enumerate() {
        let w3 = Polynomial::variable(n_vars, var_w(i)).pow(3);
        let dx = x.sub(&Polynomial::constant(n_vars, p.x.clone()));
        let dy = y.sub(&Polynomial::constant(n_vars, p.y.clone()));
        eq_x = eq_x.sub(&dx.mul(&w3).scale(&p.m));
        eq_y = eq_y.sub(&dy.mul(&w3).scale(&p.m));
    }

    let mut equations = vec![eq_x, eq_y];
    for (i, p) in points.iter().enumerate() {
        let w2 = Polynomial::variable(n_vars, var_w(i)).pow(2);
        let dx = x.sub(&Polynomial::constant(n_vars, p.x.clone()));
        let dy = y.sub(&Polynomial::constant(n_vars, p.y.clone()));
        let dist2 = dx.mul(&dx).add(&dy.mul(&dy));
        let eq = w2
            .mul(&dist2)
            .sub(&Polynomial::constant(n_vars, Rational::one()));
        equations.push(eq);
    }

    let mut variable_names = vec!["x".to_string(), "y".to_string()];
    variable_names.extend((1..=n).map(|i| format!("w{i}")));
    PolynomialSystem {
        kind: SystemKind::W,
        variable_names,
        equations,
    }
}

/// The difference-variable system `(a_1..a_n, b_1..b_n, w_1..w_n)` with
/// `a_i = x - x_i`, `b_i = y - y_i`: `3n` equations in `3n` variables.
pub fn build_system_ab(points: &[RationalMassPoint]) -> PolynomialSystem {
    let n = points.len();
    let n_vars = 3 * n;
    let var_a = |i: usize| i;
    let var_b = |i: usize| n + i;
    let var_w = |i: usize| 2 * n + i;

    // (a_1 + x_1) - sum_i m_i a_i w_i^3 = 0, and the y-counterpart
    let mut eq_x = Polynomial::variable(n_vars, var_a(0))
        .add(&Polynomial::constant(n_vars, points[0].x.clone()));
    let mut eq_y = Polynomial::variable(n_vars, var_b(0))
        .add(&Polynomial::constant(n_vars, points[0].y.clone()));
    for (i, p) in points.iter().enumerate() {
        let w3 = Polynomial::variable(n_vars, var_w(i)).pow(3);
        eq_x = eq_x.sub(&Polynomial::variable(n_vars, var_a(i)).mul(&w3).scale(&p.m));
        eq_y = eq_y.sub(&Polynomial::variable(n_vars, var_b(i)).mul(&w3).scale(&p.m));
    }

    let mut equations = vec![eq_x, eq_y];
    // w_i^2 (a_i^2 + b_i^2) - 1 = 0
    for i in 0..n {
        let a = Polynomial::variable(n_vars, var_a(i));
        let b = Polynomial::variable(n_vars, var_b(i));
        let w2 = Polynomial::variable(n_vars, var_w(i)).pow(2);
        let eq = w2
            .mul(&a.mul(&a).add(&b.mul(&b)))
            .sub(&Polynomial::constant(n_vars, Rational::one()));
        equations.push(eq);
    }
    // a_i - a_1 - (x_1 - x_i) = 0 and b_i - b_1 - (y_1 - y_i) = 0, i >= 2
    for (i, p) in points.iter().enumerate().skip(1) {
        let eq = Polynomial::variable(n_vars, var_a(i))
            .sub(&Polynomial::variable(n_vars, var_a(0)))
            .sub(&Polynomial::constant(n_vars, &points[0].x - &p.x));
        equations.push(eq);
    }
    for (i, p) in points.iter().enumerate().skip(1) {
        let eq = Polynomial::variable(n_vars, var_b(i))
            .sub(&Polynomial::variable(n_vars, var_b(0)))
            .sub(&Polynomial::constant(n_vars, &points[0].y - &p.y));
        equations.push(eq);
    }

    let mut variable_names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    variable_names.extend((1..=n).map(|i| format!("b{i}")));
    variable_names.extend((1..=n).map(|i| format!("w{i}")));
    PolynomialSystem {
        kind: SystemKind::AB,
        variable_names,
        equations,
    }
}

impl PolynomialSystem {
    pub fn n_vars(&self) -> usize {
        self.variable_names.len()
    }

    /// Human-readable rendering, one `... = 0` line per equation.
    pub fn pretty(&self) -> String {
        self.equations
            .iter()
            .map(|eq| format!("{} = 0", eq.format_with(&self.variable_names)))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn max_total_degree(&self) -> u32 {
        self.equations
            .iter()
            .map(Polynomial::total_degree)
            .max()
            .unwrap_or(0)
    }
}

/// Per-equation exponent supports, for consumption by external
/// polytope/mixed-volume software.
pub fn newton_supports(system: &PolynomialSystem) -> SupportSet {
    SupportSet {
        per_equation: system.equations.iter().map(Polynomial::support).collect(),
    }
}

impl SupportSet {
    /// One equation per line; monomial exponent vectors are comma-lists
    /// separated by semicolons.
    pub fn to_text(&self) -> String {
        self.per_equation
            .iter()
            .map(|eq| {
                eq.iter()
                    .map(|v| {
                        v.iter()
                            .map(|e| e.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Parses the [`SupportSet::to_text`] format back, checking arity
    /// consistency and non-emptiness.
    pub fn parse(text: &str) -> Result<SupportSet> {
        let mut per_equation = Vec::new();
        let mut arity: Option<usize> = None;
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut vectors = Vec::new();
            for chunk in line.split(';') {
                let vector: Vec<u32> = chunk
                    .split(',')
                    .map(|tok| {
                        tok.trim().parse::<u32>().map_err(|_| {
                            Error::Parse(format!(
                                "line {}: invalid exponent {tok:?}",
                                line_no + 1
                            ))
                        })
                    })
                    .collect::<Result<_>>()?;
                match arity {
                    None => arity = Some(vector.len()),
                    Some(a) if a != vector.len() => {
                        return Err(Error::Parse(format!(
                            "line {}: exponent arity {} != {}",
                            line_no + 1,
                            vector.len(),
                            a
                        )));
                    }
                    _ => {}
                }
                vectors.push(vector);
            }
            per_equation.push(vectors);
        }
        if per_equation.is_empty() {
            return Err(Error::Parse("empty support set".into()));
        }
        Ok(SupportSet { per_equation })
    }
}

/// Lifts an equilibrium `(x, y)` into the system's variable space:
/// `w_i = 1/|z - z_i|`, and for the `ab`-system `a_i = x - x_i`,
/// `b_i = y - y_i`.
pub fn lift_point(
    system: &PolynomialSystem,
    config: &Configuration,
    eq: &Equilibrium,
) -> Result<Vec<f64>> {
    let p = eq.location;
    let cutoff = config.singularity_cutoff();
    let mut inv_dist = Vec::with_capacity(config.n());
    for (i, z) in config.positions().enumerate() {
        let d = p.distance(z);
        if d < cutoff {
            return Err(Error::SingularEvaluation { index: i, cutoff });
        }
        inv_dist.push(1.0 / d);
    }
    let values = match system.kind {
        SystemKind::W => {
            let mut v = vec![p.x, p.y];
            v.extend(inv_dist);
            v
        }
        SystemKind::AB => {
            let mut v = Vec::with_capacity(3 * config.n());
            v.extend(config.positions().map(|z| p.x - z.x));
            v.extend(config.positions().map(|z| p.y - z.y));
            v.extend(inv_dist);
            v
        }
    };
    debug_assert_eq!(values.len(), system.n_vars());
    Ok(values)
}

/// Maximum absolute equation residual of the lifted equilibrium. Certified
/// equilibria stay below 1e-8 in both systems.
pub fn lift_and_residual(
    system: &PolynomialSystem,
    config: &Configuration,
    eq: &Equilibrium,
) -> Result<f64> {
    let point = lift_point(system, config, eq)?;
    Ok(system
        .equations
        .iter()
        .map(|e| e.eval_f64(&point).abs())
        .fold(0.0, f64::max))
}

/// `4^(n+2)`: the Bezout bound for the `w`-system.
pub fn bezout_bound(n: usize) -> BigInt {
    BigInt::from(4).pow(n as u32 + 2)
}

/// `(9 n^2 + 3 n - 4) 2^(n-1)`: closed form matching the mixed volumes of the
/// `w`-system supports for `1 <= n <= 50`.
pub fn mv_formula(n: usize) -> BigInt {
    assert!(n >= 1, "mv formula defined for n >= 1");
    let n_big = BigInt::from(n);
    let quadratic = 9 * &n_big * &n_big + 3 * &n_big - 4;
    quadratic * BigInt::from(2).pow(n as u32 - 1)
}

/// `(9 n^2 + n + 2) 2^(n-1)`: closed form matching the mixed volumes of the
/// `ab`-system supports; the conjectured root-count bound is this plus one.
pub fn mv_tilde_formula(n: usize) -> BigInt {
    assert!(n >= 1, "mv formula defined for n >= 1");
    let n_big = BigInt::from(n);
    let quadratic = 9 * &n_big * &n_big + &n_big + 2;
    quadratic * BigInt::from(2).pow(n as u32 - 1)
}

/// Stored symbolic degree bounds: these come from external computer-algebra
/// runs and are reference data, never recomputed here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceDegrees {
    degrees: BTreeMap<usize, u64>,
    /// Sharper bound for two unit masses at `(+-1, 0)`.
    pub n2_symmetric_bound: u64,
}

/// The known degrees of the `w`-system ideal for small `n`; the computation
/// does not terminate beyond `n = 4`.
pub fn reference_degrees() -> ReferenceDegrees {
    ReferenceDegrees {
        degrees: BTreeMap::from([(2, 120), (3, 696), (4, 3544)]),
        n2_symmetric_bound: 52,
    }
}

impl ReferenceDegrees {
    pub fn lookup(&self, n: usize) -> Option<u64> {
        self.degrees.get(&n).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.degrees.iter().map(|(&n, &d)| (n, d))
    }
}
