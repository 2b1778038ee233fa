//! Per-player unitaries: the bit-masked fast path and a dense oracle.
//!
//! A player's move is a single-qubit unitary on that player's bit,
//! conditioned on "somebody else is still alive": configurations where all
//! other players are dead pass through untouched. Consequently the all-dead
//! state and every lone-survivor state are fixed points, which is what ends
//! a game once it is decided.
//!
//! [`apply_player_op`] walks basis-index pairs with bit masks in `O(2^n)`
//! time and never materializes a matrix. [`dense_player_op`] assembles the
//! full `2^n × 2^n` matrix from explicit tensor-product terms instead; it is
//! exponentially more expensive and exists purely so the two constructions
//! can be checked against each other.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::statevec::StateVector;

/// Angles of one move.
///
/// `gamma` sets the bullet weight `cos²(γ/2)` (0 = certain bullet, π = empty
/// chamber); `alpha` and `beta` are free phases of the preparation. All
/// angles are radians, used as-is — the trigonometry needs no range
/// reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateParams {
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl GateParams {
    pub fn new(gamma: f64, alpha: f64, beta: f64) -> Self {
        Self { gamma, alpha, beta }
    }
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy)]
pub struct Gate2x2 {
    pub u00: Complex64,
    pub u01: Complex64,
    pub u10: Complex64,
    pub u11: Complex64,
}

/// Build the single-player move:
///
/// ```text
/// u00 = e^{iα}·sin(γ/2)      u01 = i·e^{iβ}·cos(γ/2)
/// u10 = i·e^{−iβ}·cos(γ/2)   u11 = e^{−iα}·sin(γ/2)
/// ```
///
/// At `γ = 0` this is a bit flip up to phase (the chamber surely fires); at
/// `γ = π` it is diagonal (an empty chamber, phases only).
pub fn single_qubit_u(p: &GateParams) -> Gate2x2 {
    let s = (p.gamma / 2.0).sin();
    let c = (p.gamma / 2.0).cos();
    let ea = Complex64::from_polar(1.0, p.alpha);
    let eb = Complex64::from_polar(1.0, p.beta);
    Gate2x2 {
        u00: ea * s,
        u01: Complex64::I * eb * c,
        u10: Complex64::I * eb.conj() * c,
        u11: ea.conj() * s,
    }
}

/// Apply player `player`'s move (1-based) and return the new state.
///
/// Runs in `O(2^n)`: each basis-index pair differing only in the player's
/// bit is either transformed by the 2×2 move or — when every other bit is
/// zero — left alone. With a single player there are no "others", and the
/// move applies unconditionally (documented boundary decision; real games
/// have at least two players).
pub fn apply_player_op(s: &StateVector, player: usize, p: &GateParams) -> Result<StateVector> {
    let mut out = s.clone();
    apply_player_op_in_place(&mut out, player, p)?;
    Ok(out)
}

pub(crate) fn apply_player_op_in_place(
    s: &mut StateVector,
    player: usize,
    p: &GateParams,
) -> Result<()> {
    let n = s.n();
    if player == 0 || player > n {
        return Err(Error::PlayerIndex { player, n });
    }
    let u = single_qubit_u(p);
    let mask = 1usize << (n - player); // player 1 owns the most-significant bit
    let others = ((1usize << n) - 1) & !mask;
    let amps = s.amps_mut();
    for b0 in 0..amps.len() {
        if b0 & mask != 0 {
            continue; // visit each pair once, from its player-dead half
        }
        if n > 1 && b0 & others == 0 {
            continue; // everyone else dead: identity branch
        }
        let b1 = b0 | mask;
        let (a0, a1) = (amps[b0], amps[b1]);
        amps[b0] = u.u00 * a0 + u.u01 * a1;
        amps[b1] = u.u10 * a0 + u.u11 * a1;
    }
    Ok(())
}

/// Dense square complex matrix, row-major. Verification plumbing.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            m.data[r * dim + r] = Complex64::ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length must match matrix dim");
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
            .collect()
    }

    /// Apply to a state, returning the transformed state.
    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        StateVector::from_amplitudes(s.n(), self.mul_vec(s.amps()))
    }
}

/// Kronecker product of 2×2 factors, first factor most significant.
fn kron_chain(factors: &[[[Complex64; 2]; 2]]) -> DenseMatrix {
    let mut dim = 1;
    let mut data = vec![Complex64::ONE];
    for f in factors {
        let next_dim = dim * 2;
        let mut next = vec![Complex64::ZERO; next_dim * next_dim];
        for r in 0..dim {
            for c in 0..dim {
                let v = data[r * dim + c];
                if v == Complex64::ZERO {
                    continue;
                }
                for (fr, frow) in f.iter().enumerate() {
                    for (fc, &fv) in frow.iter().enumerate() {
                        next[(r * 2 + fr) * next_dim + (c * 2 + fc)] = v * fv;
                    }
                }
            }
        }
        dim = next_dim;
        data = next;
    }
    DenseMatrix { dim, data }
}

/// Assemble player `player`'s move as an explicit matrix.
///
/// Built term-by-term from the operator's definition: identity on the
/// player's qubit tensored with the projector onto "all others dead", plus,
/// for every configuration of the other players with someone alive, the 2×2
/// move tensored with the projector onto that configuration. Cost is
/// `O(2^n)` terms of `O(4^n)` work each, so the player count is capped at 10.
pub fn dense_player_op(n: usize, player: usize, p: &GateParams) -> Result<DenseMatrix> {
    if n == 0 || n > 10 {
        return Err(Error::DenseSize(n));
    }
    if player == 0 || player > n {
        return Err(Error::PlayerIndex { player, n });
    }
    let u = single_qubit_u(p);
    let u_factor = [[u.u00, u.u01], [u.u10, u.u11]];
    let id_factor = [
        [Complex64::ONE, Complex64::ZERO],
        [Complex64::ZERO, Complex64::ONE],
    ];
    let dead = [
        [Complex64::ONE, Complex64::ZERO],
        [Complex64::ZERO, Complex64::ZERO],
    ];
    let alive = [
        [Complex64::ZERO, Complex64::ZERO],
        [Complex64::ZERO, Complex64::ONE],
    ];

    if n == 1 {
        // No other players: the move is the bare 2×2 unitary.
        return Ok(kron_chain(&[u_factor]));
    }

    let mut op = DenseMatrix::zeros(1 << n);
    // `assignment` enumerates the other players' bits, in player order.
    for assignment in 0..1usize << (n - 1) {
        let somebody_else_alive = assignment != 0;
        let mut factors = Vec::with_capacity(n);
        let mut other = 0;
        for position in 1..=n {
            if position == player {
                factors.push(if somebody_else_alive { u_factor } else { id_factor });
            } else {
                let bit = (assignment >> (n - 2 - other)) & 1;
                factors.push(if bit == 1 { alive } else { dead });
                other += 1;
            }
        }
        let term = kron_chain(&factors);
        for (dst, src) in op.data.iter_mut().zip(&term.data) {
            *dst += src;
        }
    }
    Ok(op)
}

/// Max-norm of `M†M − I`: zero for a perfect unitary.
pub fn unitarity_defect(m: &DenseMatrix) -> f64 {
    let dim = m.dim;
    (0..dim)
        .into_par_iter()
        .map(|r| {
            let mut worst = 0.0f64;
            for c in 0..dim {
                // (M†M)[r][c] = Σ_k conj(M[k][r])·M[k][c]
                let mut e = Complex64::ZERO;
                for k in 0..dim {
                    e += m.get(k, r).conj() * m.get(k, c);
                }
                if r == c {
                    e -= Complex64::ONE;
                }
                worst = worst.max(e.norm());
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}
