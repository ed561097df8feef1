//! Soft-minimum arithmetic and the two-state parity trellis.
//!
//! `min^(κ) z = -(1/κ) log Σ exp(-κ z)` is evaluated with a max-shift so that
//! large inverse temperatures and saturated LLRs do not overflow. The hard
//! limit `κ = ∞` is the ordinary minimum.

use crate::error::DecodeError;

/// Inverse temperature of the soft-min operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Temperature {
    /// Finite `κ > 0`.
    Soft(f64),
    /// The `κ → ∞` limit.
    Hard,
}

impl Temperature {
    pub fn soft(kappa: f64) -> Result<Self, DecodeError> {
        if kappa.is_finite() && kappa > 0.0 {
            Ok(Self::Soft(kappa))
        } else {
            Err(DecodeError::InvalidTemperature(kappa))
        }
    }

    pub fn kappa(self) -> Option<f64> {
        match self {
            Self::Soft(k) => Some(k),
            Self::Hard => None,
        }
    }

    pub fn is_hard(self) -> bool {
        matches!(self, Self::Hard)
    }

    /// Soft-min of two values. `+∞` is an identity element.
    #[inline]
    pub fn min2(self, a: f64, b: f64) -> f64 {
        if a == f64::INFINITY {
            return b;
        }
        if b == f64::INFINITY {
            return a;
        }
        let lo = a.min(b);
        match self {
            Self::Hard => lo,
            Self::Soft(k) => lo - libm::log1p(libm::exp(-k * (a - b).abs())) / k,
        }
    }
}

/// Soft-min of a nonempty slice.
pub fn softmin(values: &[f64], t: Temperature) -> Result<f64, DecodeError> {
    let lo = values
        .iter()
        .copied()
        .reduce(f64::min)
        .ok_or(DecodeError::EmptyInput)?;
    Ok(match t {
        Temperature::Hard => lo,
        Temperature::Soft(k) => {
            if lo == f64::INFINITY {
                return Ok(lo);
            }
            let sum: f64 = values.iter().map(|&z| libm::exp(-k * (z - lo))).sum();
            lo - libm::log(sum) / k
        }
    })
}

/// Soft-min energies of the even- and odd-weight words over a prefix of
/// positions, where setting position `k` to one costs `c_k`.
///
/// Pushing a position is one trellis section; two trellises over disjoint
/// position sets combine with [`join`](Self::join).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityTrellis {
    pub even: f64,
    pub odd: f64,
}

impl ParityTrellis {
    /// Trellis over no positions: only the empty (even) word.
    pub const EMPTY: Self = Self {
        even: 0.0,
        odd: f64::INFINITY,
    };

    #[inline]
    pub fn push(self, cost: f64, t: Temperature) -> Self {
        Self {
            even: t.min2(self.even, self.odd + cost),
            odd: t.min2(self.odd, self.even + cost),
        }
    }

    #[inline]
    pub fn join(self, other: Self, t: Temperature) -> Self {
        Self {
            even: t.min2(self.even + other.even, self.odd + other.odd),
            odd: t.min2(self.even + other.odd, self.odd + other.even),
        }
    }

    pub fn over<I: IntoIterator<Item = f64>>(costs: I, t: Temperature) -> Self {
        costs.into_iter().fold(Self::EMPTY, |tr, c| tr.push(c, t))
    }

    /// `odd - even`: the extra energy of forcing odd parity.
    #[inline]
    pub fn diff(self) -> f64 {
        self.odd - self.even
    }
}

/// Extrinsic parity message from per-position costs of a one.
///
/// In LLR terms this is the check-node rule: the tanh rule for `κ = 1` and
/// sign-product/min-magnitude in the hard limit. Used by both the dual
/// decoders and the message-passing baselines.
pub fn parity_message<I: IntoIterator<Item = f64>>(costs: I, t: Temperature) -> f64 {
    ParityTrellis::over(costs, t).diff()
}
