//! Deformation parameter, series diagnostics and error type.

use thiserror::Error;

/// Errors raised by the q-series kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: (c; q)_k vanishes at k = {0} before the series terminates")]
    Pole(usize),
    #[error("series does not converge after {0} terms")]
    Divergence(usize),
    #[error("cancellation estimate {estimate:e} exceeds the budget at {bits} bits")]
    Precision { estimate: f64, bits: u32 },
    #[error("lattice window [{m_min}, {m_max}] carries endpoint mass {mass:e}; try [{suggest_min}, {suggest_max}]")]
    Window {
        m_min: i64,
        m_max: i64,
        mass: f64,
        suggest_min: i64,
        suggest_max: i64,
    },
}

/// The deformation parameter `0 < q < 1` together with the working precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParameter {
    q: f64,
    precision_bits: u32,
}

impl DeformationParameter {
    pub const DEFAULT_BITS: u32 = 53;

    pub fn new(q: f64) -> Result<Self, QError> {
        Self::with_precision(q, Self::DEFAULT_BITS)
    }

    pub fn with_precision(q: f64, precision_bits: u32) -> Result<Self, QError> {
        if !(q > 0.0 && q < 1.0) {
            return Err(QError::Domain(format!("q = {q} is not in (0, 1)")));
        }
        if precision_bits < 53 {
            return Err(QError::Domain(format!(
                "precision_bits = {precision_bits} is below 53"
            )));
        }
        Ok(Self { q, precision_bits })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Relative stopping threshold `2^-precision_bits`.
    pub fn threshold(&self) -> f64 {
        (-(self.precision_bits as f64)).exp2()
    }
}

/// Value of a q-series with summation diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeriesValue<T> {
    pub value: T,
    /// Largest term magnitude divided by `|value|`.
    pub cancellation_estimate: f64,
    pub terms_used: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_q_outside_unit_interval() {
        assert!(DeformationParameter::new(0.0).is_err());
        assert!(DeformationParameter::new(1.0).is_err());
        assert!(DeformationParameter::new(-0.3).is_err());
        assert!(DeformationParameter::new(f64::NAN).is_err());
        assert!(DeformationParameter::new(0.5).is_ok());
    }

    #[test]
    fn rejects_low_precision() {
        assert!(DeformationParameter::with_precision(0.5, 52).is_err());
        assert_eq!(
            DeformationParameter::with_precision(0.5, 106)
                .unwrap()
                .precision_bits(),
            106
        );
    }
}
