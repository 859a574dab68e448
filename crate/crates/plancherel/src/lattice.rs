//! The geometric momentum lattice `p_m = anchor * q^m`.

use serde::Serialize;

use crate::PlancherelError;

/// Points `p_m = anchor * q^m` for `m_min <= m <= m_max`.
///
/// The default anchor `1 / (1 - q^2)` puts `p^2 rho^2` on the lattice of the
/// q-Bessel kernel, where the Gram matrices are exactly diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumLattice {
    pub m_min: i64,
    pub m_max: i64,
    pub q: f64,
    pub anchor: f64,
}

impl MomentumLattice {
    pub fn new(m_min: i64, m_max: i64, q: f64) -> Result<Self, PlancherelError> {
        Self::with_anchor(m_min, m_max, q, 1.0 / (1.0 - q * q))
    }

    pub fn with_anchor(m_min: i64, m_max: i64, q: f64, anchor: f64) -> Result<Self, PlancherelError> {
        if !(q > 0.0 && q < 1.0) {
            return Err(PlancherelError::Lattice(format!("q = {q} outside (0, 1)")));
        }
        if m_min > m_max {
            return Err(PlancherelError::Lattice(format!("empty lattice [{m_min}, {m_max}]")));
        }
        if !(anchor.is_finite() && anchor > 0.0) {
            return Err(PlancherelError::Lattice(format!("anchor {anchor} not positive")));
        }
        Ok(Self {
            m_min,
            m_max,
            q,
            anchor,
        })
    }

    pub fn p(&self, m: i64) -> f64 {
        self.anchor * self.q.powi(m as i32)
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.m_min..=self.m_max
    }

    pub fn points(&self) -> Vec<f64> {
        self.indices().map(|m| self.p(m)).collect()
    }

    pub fn len(&self) -> usize {
        (self.m_max - self.m_min + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The lattice with every point multiplied by `q^n`.
    pub fn shifted(&self, n: i64) -> Self {
        Self {
            m_min: self.m_min + n,
            m_max: self.m_max + n,
            ..*self
        }
    }

    /// Jackson weight `(1 - q) p_m` of `dp`; `delta(p - p')` becomes
    /// `delta_mm' / delta_weight(m)`.
    pub fn delta_weight(&self, m: i64) -> f64 {
        (1.0 - self.q) * self.p(m)
    }

    /// Jackson weight `(1 - q) p_m^2` of `p dp`.
    pub fn measure_weight(&self, m: i64) -> f64 {
        (1.0 - self.q) * self.p(m) * self.p(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_geometric() {
        let lat = MomentumLattice::new(-2, 2, 0.5).unwrap();
        let p = lat.points();
        assert_eq!(p.len(), 5);
        for w in p.windows(2) {
            assert!((w[1] / w[0] - 0.5).abs() < 1e-15);
        }
        assert!((lat.p(0) - 1.0 / 0.75).abs() < 1e-15);
        assert_eq!(MomentumLattice::with_anchor(0, 0, 0.5, 1.0).unwrap().p(3), 0.125);
    }

    #[test]
    fn invalid_lattices() {
        assert!(MomentumLattice::new(1, 0, 0.5).is_err());
        assert!(MomentumLattice::new(0, 1, 1.0).is_err());
        assert!(MomentumLattice::with_anchor(0, 1, 0.5, 0.0).is_err());
    }

    #[test]
    fn measure_matches_jackson() {
        let lat = MomentumLattice::new(-3, 4, 0.7).unwrap();
        let g = |p: f64| (-p).exp();
        let direct: f64 = lat.indices().map(|m| lat.measure_weight(m) * g(lat.p(m))).sum();
        let j = qkernel::jackson_integral_halfline_anchored(g, 0.7, lat.anchor, -3, 4);
        assert!((direct - j).abs() < 1e-14);
    }
}
