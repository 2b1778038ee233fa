//! Dense state vectors over the players' alive/dead configurations.
//!
//! Conventions, used everywhere in this crate:
//! - player `i`'s qubit is `|1⟩` when alive and `|0⟩` when dead;
//! - an [`Outcome`] lists the players' bits in player order, player 1 first;
//! - the basis index of an outcome reads the bits as a binary number with
//!   player 1 as the most-significant digit, so `|101⟩` for three players
//!   sits at index 5 and the all-alive state at index `2^n − 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on the player count: 2^22 amplitudes ≈ 64 MiB of doubles.
pub const MAX_PLAYERS: usize = 22;

/// One measurement outcome: which players are alive, in player order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Outcome {
    bits: Vec<bool>,
}

impl Outcome {
    /// Wrap an explicit bit pattern, player 1 first, `true` = alive.
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The outcome encoded by a basis index (player 1 = most-significant bit).
    pub fn from_index(n: usize, index: usize) -> Self {
        let bits = (0..n).map(|j| (index >> (n - 1 - j)) & 1 == 1).collect();
        Self { bits }
    }

    /// Everybody alive.
    pub fn all_alive(n: usize) -> Self {
        Self { bits: vec![true; n] }
    }

    /// Only `player` (1-based) alive.
    pub fn sole_survivor(n: usize, player: usize) -> Self {
        let bits = (1..=n).map(|j| j == player).collect();
        Self { bits }
    }

    /// Parse a bitstring like `"101"`, player 1 leftmost.
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::OutcomeParse(s.to_string())),
            })
            .collect::<Result<Vec<bool>>>()?;
        if bits.is_empty() {
            return Err(Error::OutcomeParse(s.to_string()));
        }
        Ok(Self { bits })
    }

    /// Number of players this outcome describes.
    pub fn n(&self) -> usize {
        self.bits.len()
    }

    /// Basis index under the player-1-most-significant convention.
    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    /// Is `player` (1-based) alive in this outcome?
    pub fn is_alive(&self, player: usize) -> bool {
        self.bits[player - 1]
    }

    /// How many players are alive.
    pub fn alive_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}

/// Dense complex state over all `2^n` alive/dead configurations.
#[derive(Clone, Debug)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The start-of-game state `|1…1⟩`.
    pub fn all_alive(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::PlayerCount(n));
        }
        let mut amps = vec![Complex64::ZERO; 1 << n];
        *amps.last_mut().expect("nonempty") = Complex64::ONE;
        Ok(Self { n, amps })
    }

    /// Build a state from explicit amplitudes (basis order, `2^n` entries).
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::PlayerCount(n));
        }
        if amps.len() != 1 << n {
            return Err(Error::AmplitudeCount {
                got: amps.len(),
                n,
                want: 1 << n,
            });
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Amplitudes in basis order.
    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// Amplitude of one outcome.
    pub fn amplitude(&self, o: &Outcome) -> Result<Complex64> {
        if o.n() != self.n {
            return Err(Error::OutcomeLength {
                got: o.n(),
                want: self.n,
            });
        }
        Ok(self.amps[o.index()])
    }

    /// Probability of one outcome.
    pub fn probability(&self, o: &Outcome) -> Result<f64> {
        Ok(self.amplitude(o)?.norm_sqr())
    }

    /// All outcome probabilities, in basis order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// The measurement distribution as an ordered outcome → probability map.
    pub fn distribution(&self) -> BTreeMap<Outcome, f64> {
        self.amps
            .iter()
            .enumerate()
            .map(|(b, a)| (Outcome::from_index(self.n, b), a.norm_sqr()))
            .collect()
    }

    /// Euclidean norm; 1 for any physical state.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Are the two states equal up to a global phase, within `tol` in the
    /// Euclidean norm?
    ///
    /// The phase is anchored on `self`'s largest-magnitude amplitude: with
    /// `k = argmax |a_k|`, the candidate phase is the unit scalar rotating
    /// `b_k` onto `a_k`, and the comparison is `‖a − c·b‖ ≤ tol`. Anchoring
    /// on the dominant entry keeps the phase estimate numerically stable.
    pub fn global_phase_equal(&self, other: &Self, tol: f64) -> bool {
        if self.n != other.n {
            return false;
        }
        let k = self
            .amps
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| x.norm_sqr().total_cmp(&y.norm_sqr()))
            .map(|(i, _)| i)
            .expect("nonempty");
        let (a_k, b_k) = (self.amps[k], other.amps[k]);
        let c = if a_k.norm() == 0.0 || b_k.norm() == 0.0 {
            Complex64::ONE
        } else {
            let raw = a_k * b_k.conj();
            raw / raw.norm()
        };
        let err_sq: f64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - c * b).norm_sqr())
            .sum();
        err_sq.sqrt() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::TOL_OP;

    #[test]
    fn outcome_index_round_trip() {
        for n in 1..=6 {
            for b in 0..1usize << n {
                let o = Outcome::from_index(n, b);
                assert_eq!(o.index(), b);
                assert_eq!(o.n(), n);
            }
        }
    }

    #[test]
    fn outcome_display_and_parse_agree() {
        let o = Outcome::parse("0110").unwrap();
        assert_eq!(o.to_string(), "0110");
        assert_eq!(o.index(), 6);
        assert!(!o.is_alive(1));
        assert!(o.is_alive(2));
        assert_eq!(o.alive_count(), 2);
    }

    #[test]
    fn outcome_parse_rejects_junk() {
        assert!(Outcome::parse("10x").is_err());
        assert!(Outcome::parse("").is_err());
    }

    #[test]
    fn player_one_is_most_significant() {
        // |101⟩: players 1 and 3 alive → index 5.
        let o = Outcome::new(vec![true, false, true]);
        assert_eq!(o.index(), 5);
        assert_eq!(Outcome::sole_survivor(3, 1).index(), 4);
        assert_eq!(Outcome::sole_survivor(3, 3).index(), 1);
    }

    #[test]
    fn all_alive_puts_unit_amplitude_last() {
        let s = StateVector::all_alive(2).unwrap();
        assert_eq!(s.amps()[3], Complex64::ONE);
        assert_eq!(s.amps()[..3], [Complex64::ZERO; 3]);

        let s1 = StateVector::all_alive(1).unwrap();
        assert_eq!(s1.amps(), [Complex64::ZERO, Complex64::ONE]);

        let s3 = StateVector::all_alive(3).unwrap();
        let top = Outcome::all_alive(3);
        assert_eq!(s3.amplitude(&top).unwrap(), Complex64::ONE);
        assert_eq!(s3.probability(&Outcome::parse("001").unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn all_alive_rejects_out_of_range_counts() {
        assert!(StateVector::all_alive(0).is_err());
        assert!(StateVector::all_alive(MAX_PLAYERS + 1).is_err());
    }

    #[test]
    fn amplitude_rejects_length_mismatch() {
        let s = StateVector::all_alive(3).unwrap();
        assert!(s.amplitude(&Outcome::all_alive(2)).is_err());
    }

    #[test]
    fn distribution_of_equal_superposition_is_uniform() {
        let a = Complex64::new(0.5, 0.0);
        let s = StateVector::from_amplitudes(2, vec![a; 4]).unwrap();
        for (_, p) in s.distribution() {
            assert!((p - 0.25).abs() < TOL_OP);
        }
        assert!((s.norm() - 1.0).abs() < TOL_OP);
    }

    #[test]
    fn global_phase_equal_accepts_any_unit_phase() {
        let s = StateVector::all_alive(2).unwrap();
        let phased = StateVector::from_amplitudes(
            2,
            s.amps()
                .iter()
                .map(|a| a * Complex64::from_polar(1.0, -1.234))
                .collect(),
        )
        .unwrap();
        assert!(s.global_phase_equal(&phased, TOL_OP));
        assert!(s.global_phase_equal(&s.clone(), TOL_OP));
        assert!(phased.global_phase_equal(&s, TOL_OP));
    }

    #[test]
    fn global_phase_equal_rejects_orthogonal_states() {
        let zero = Complex64::ZERO;
        let one = Complex64::ONE;
        let a = StateVector::from_amplitudes(1, vec![zero, one]).unwrap();
        let b = StateVector::from_amplitudes(1, vec![one, zero]).unwrap();
        assert!(!a.global_phase_equal(&b, 1e-6));
    }
}
