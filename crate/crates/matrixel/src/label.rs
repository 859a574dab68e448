//! Representation labels.

use algebra::Half;
use serde::Serialize;

use crate::MatrixError;

/// `(l, i, j)` with `|i|, |j| <= l` and `l - i`, `l - j` integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CompactLabel {
    #[serde(serialize_with = "half")]
    pub l: Half,
    #[serde(serialize_with = "half")]
    pub i: Half,
    #[serde(serialize_with = "half")]
    pub j: Half,
}

fn half<S: serde::Serializer>(h: &Half, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(h.to_f64())
}

impl CompactLabel {
    pub fn new(l: Half, i: Half, j: Half) -> Result<Self, MatrixError> {
        let ok = l.0 >= 0
            && i.0.abs() <= l.0
            && j.0.abs() <= l.0
            && (l - i).is_integer()
            && (l - j).is_integer();
        if ok {
            Ok(Self { l, i, j })
        } else {
            Err(MatrixError::Label(format!("invalid label l = {l}, i = {i}, j = {j}")))
        }
    }

    /// From doubled values `2l, 2i, 2j`.
    pub fn doubled(l2: i64, i2: i64, j2: i64) -> Result<Self, MatrixError> {
        Self::new(Half(l2), Half(i2), Half(j2))
    }

    /// Whether the label lies in the region `i + j <= 0`, `j <= i` of the
    /// hypergeometric formula.
    pub fn in_formula_region(&self) -> bool {
        (self.i + self.j).0 <= 0 && self.j <= self.i
    }

    /// All labels of spin `l`.
    pub fn all(l: Half) -> Vec<Self> {
        let ms: Vec<Half> = (0..=l.0).map(|k| Half(l.0 - 2 * k)).collect();
        let mut out = Vec::new();
        for &i in &ms {
            for &j in &ms {
                out.push(Self { l, i, j });
            }
        }
        out
    }
}

/// `(p, i, j)` with `p > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EuclidLabel {
    pub p: f64,
    pub i: i64,
    pub j: i64,
}

impl EuclidLabel {
    pub fn new(p: f64, i: i64, j: i64) -> Result<Self, MatrixError> {
        if p > 0.0 && p.is_finite() {
            Ok(Self { p, i, j })
        } else {
            Err(MatrixError::Label(format!("momentum p = {p} must be positive")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_validation() {
        assert!(CompactLabel::doubled(1, -1, -1).is_ok());
        assert!(CompactLabel::doubled(1, 0, 1).is_err());
        assert!(CompactLabel::doubled(2, 4, 0).is_err());
        assert!(EuclidLabel::new(0.0, 0, 0).is_err());
        assert_eq!(CompactLabel::all(Half(3)).len(), 16);
    }

    #[test]
    fn region() {
        assert!(CompactLabel::doubled(1, -1, -1).unwrap().in_formula_region());
        assert!(CompactLabel::doubled(1, 1, -1).unwrap().in_formula_region());
        assert!(!CompactLabel::doubled(1, -1, 1).unwrap().in_formula_region());
        assert!(!CompactLabel::doubled(1, 1, 1).unwrap().in_formula_region());
    }
}
