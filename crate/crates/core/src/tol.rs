//! Numeric tolerance budget.
//!
//! Three rungs, from a single arithmetic step up to a whole game. Tests and
//! the verification suite import these instead of scattering literals, so
//! the accumulation assumptions stay in one place.

/// Budget for one operation: building a 2×2 gate, applying one player
/// operator, one unitarity check. Pure double-precision arithmetic on unit
/// vectors stays well under this.
pub const TOL_OP: f64 = 1e-12;

/// Budget for comparing the bit-masked fast path against the dense matrix
/// oracle over a single application. The oracle assembles the operator from
/// tensor-product terms, so its rounding profile differs from the fast
/// path's; one extra decade absorbs that.
pub const TOL_ORACLE: f64 = 1e-10;

/// End-to-end budget: norms and distributions after up to ~100 operator
/// applications (25 rounds × 4 players).
pub const TOL_GAME: f64 = 1e-9;

// The ladder must stay strictly ordered for the budgets to mean anything.
const _: () = assert!(TOL_OP < TOL_ORACLE);
const _: () = assert!(TOL_ORACLE < TOL_GAME);
