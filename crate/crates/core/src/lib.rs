//! Equilibrium counting for planar Newtonian point masses with a quadratic
//! confining term.
//!
//! The central object is the effective potential
//!
//! ```text
//! F(z) = |z|^2 / 2 + sum_i m_i / |z - z_i|
//! ```
//!
//! for point masses `m_i > 0` anchored at pairwise-distinct positions `z_i`.
//! This crate evaluates `F`, its gradient and Hessian exactly, encloses every
//! critical point in a computable punctured disc, locates the complete set of
//! isolated equilibria with a multistart damped Newton search, classifies them
//! by Morse index, and cross-checks the counts against Morse-theoretic
//! identities and algebraic root bounds.
//!
//! Modules:
//! - [`config`]: mass configurations and their JSON format.
//! - [`model`]: potential/gradient/Hessian evaluation and the search domain.
//! - [`solver`]: the multistart Newton pipeline and Morse reporting.
//! - [`ring`]: regular-polygon ring configurations and their ray structure.
//! - [`families`]: collinear, Lagrange, and equilateral-triangle families.
//! - [`polysys`]: exact polynomial reformulations and root-count bounds.

pub mod config;
pub mod error;
pub mod families;
pub mod geometry;
pub mod model;
pub mod polysys;
pub mod ring;
mod roots;
pub mod solver;

pub use config::{Configuration, MassPoint};
pub use error::{Error, Result};
pub use geometry::{SymMat2, Vec2};
pub use model::{gradient, hessian, potential, search_domain, SearchDomain};
pub use solver::{
    classify, find_equilibria, morse_report, newton_refine, seed_grid, Equilibrium, MorseReport,
    SolveOptions,
};
