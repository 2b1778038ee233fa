//! State-vector simulator for sequential quantum roulette games.
//!
//! A game has `n` players, each owning one two-level system (`|1⟩` alive,
//! `|0⟩` dead), and runs for `m` rounds. Within a round the players act in
//! index order; player `i`'s move applies a fixed 2×2 unitary to their own
//! qubit unless every other player is already dead, in which case nothing
//! happens. The move's angle `γ` encodes how loaded the chamber is
//! (`cos²(γ/2)` is the bullet weight: `γ = 0` a certain bullet, `γ = π` an
//! empty chamber) and two phase angles `α`, `β` are free parameters of the
//! referee's preparation.
//!
//! Because rounds are applied without intermediate measurement, amplitudes
//! interfere: a player who is "dead" in one branch can return to play in a
//! later round. The interesting statistics are therefore expectations of
//! outcome probabilities when the free parameters are uniformly random —
//! see [`averaging`] for an exact phase quadrature and a reproducible
//! parallel Monte Carlo. The [`classical`] module runs the corresponding
//! classical roulette exactly, for comparison against the quantum results.

pub mod averaging;
pub mod classical;
pub mod error;
pub mod game;
pub mod operators;
pub mod statevec;
pub mod sum;
pub mod tol;

pub use error::{Error, Result};
pub use game::GameConfig;
pub use statevec::{Outcome, StateVector};
