//! Symbolic-numeric calculus of variations.
//!
//! The crate takes a Lagrangian `L(x, y, yp)` as a symbolic expression and
//! derives the Euler-Lagrange equation, detects momentum/energy first
//! integrals, verifies candidate extremals, solves the two-point boundary
//! value problem by shooting, and works the brachistochrone end to end:
//! cycloid constants, closed-form minimal descent time, and descent-time
//! comparison along arbitrary curves through a singularity-robust
//! quadrature.
//!
//! Every major capability has a runnable example:
//!
//! ```text
//! cargo run --example expressions          symbolic trees, derivatives, evaluation
//! cargo run --example euler_lagrange       EL residuals and first integrals
//! cargo run --example verify_extremal      residual checks along candidate curves
//! cargo run --example shooting             boundary value problems via RK4 + shooting
//! cargo run --example brachistochrone      cycloid constants and minimal time
//! cargo run --example descent_times        cycloid vs straight line vs circle arc
//! cargo run --example singular_quadrature  integrating endpoint singularities
//! cargo run --example plots                CSV/SVG artifacts for the comparison
//! ```
//!
//! The same functionality is exposed by the `varcal` binary (`el`,
//! `extremal`, `brach solve`, `brach compare`).

pub mod brach;
pub mod cli;
pub mod expr;
pub mod numerics;
pub mod varcalc;

pub use expr::{parse, Bindings, EvalError, Expr, Func, ParseError};
pub use varcalc::{euler_lagrange, EulerLagrangeResult, FirstIntegral, Lagrangian};
