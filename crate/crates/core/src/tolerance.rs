//! Numerical tolerances shared by all solvers.

/// Feasibility and comparison tolerance.
pub const EPS: f64 = 1e-9;

/// Tolerance used when two objective values are compared.
pub const OBJECTIVE_TOL: f64 = 1e-6;

/// Absolute/relative comparison used for objective values.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}
