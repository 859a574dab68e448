//! Truncated basis windows.

use crate::RepError;

/// Which Hilbert space the window lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// `l2(Z>=0)` for `SU_q(2)`.
    HalfLine,
    /// `l2(Z)` for `E_q(2)`.
    FullLine,
}

/// Basis vectors `|lo>, ..., |hi>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisWindow {
    pub lo: i64,
    pub hi: i64,
    pub space: Space,
}

impl BasisWindow {
    pub fn new(lo: i64, hi: i64, space: Space) -> Result<Self, RepError> {
        if lo > hi {
            return Err(RepError::Window(format!("empty window [{lo}, {hi}]")));
        }
        if space == Space::HalfLine && lo < 0 {
            return Err(RepError::Window(format!(
                "half-line window starts at {lo} < 0"
            )));
        }
        Ok(Self { lo, hi, space })
    }

    pub fn full(lo: i64, hi: i64) -> Result<Self, RepError> {
        Self::new(lo, hi, Space::FullLine)
    }

    pub fn half(hi: i64) -> Result<Self, RepError> {
        Self::new(0, hi, Space::HalfLine)
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.lo && n <= self.hi
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// Indices not affected by truncating `k` shifts. The lower end of
    /// `l2(Z>=0)` is a true boundary and needs no margin.
    pub fn interior(&self, k: i64) -> (i64, i64) {
        let lo = if self.space == Space::HalfLine && self.lo == 0 {
            0
        } else {
            self.lo + k
        };
        (lo, self.hi - k)
    }
}
