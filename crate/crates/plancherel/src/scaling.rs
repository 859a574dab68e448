//! The dilation `beta: z -> p0 z` and the scaling of the scalar products.

use algebra::{AutomorphismSpec, EAlgebra};
use matrixel::{eq_matrix_element, EuclidLabel};
use reps::{BasisWindow, Side};
use serde::Serialize;

use crate::gram::gram_matrix;
use crate::lattice::MomentumLattice;
use crate::PlancherelError;

/// Bessel series terms kept for the coefficientwise comparison.
pub const BETA_TERMS: usize = 24;

/// Deviations of the scaling identities for `p0 = q^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub n: i64,
    pub p0: f64,
    /// Largest relative coefficient deviation of `beta(t^p)` from `t^(p p0)`.
    pub coefficient_deviation: f64,
    /// Largest `|G_p[m][m'] - p0^2 G_(p p0)[m][m']|` over the largest diagonal.
    pub inner_product_deviation: f64,
    /// Largest relative deviation of `c(p) = p0 c(p p0)`.
    pub covariance_deviation: f64,
}

impl ScalingReport {
    pub fn max_deviation(&self) -> f64 {
        self.coefficient_deviation
            .max(self.inner_product_deviation)
            .max(self.covariance_deviation)
    }
}

/// Largest relative coefficient deviation between `beta(t^p_ij)` and
/// `t^(p p0)_ij`, both as polynomials truncated to `terms` Bessel terms.
pub fn beta_coefficient_deviation(
    lab: EuclidLabel,
    p0: f64,
    q: f64,
    terms: usize,
) -> Result<f64, PlancherelError> {
    let alg = EAlgebra::new(q)?;
    let t = eq_matrix_element(lab, q).to_element(&alg, terms)?;
    let lhs = alg.apply_automorphism(AutomorphismSpec::Beta(p0), &t);
    let scaled = EuclidLabel::new(lab.p * p0, lab.i, lab.j)?;
    let rhs = eq_matrix_element(scaled, q).to_element(&alg, terms)?;
    let mut dev = 0.0f64;
    for (m, c) in rhs.terms() {
        let a = lhs.coeff(m);
        dev = dev.max((a - c).norm() / c.norm().max(f64::MIN_POSITIVE));
    }
    for (m, c) in lhs.terms() {
        if rhs.coeff(m).norm() == 0.0 && c.norm() != 0.0 {
            dev = f64::INFINITY;
        }
    }
    Ok(dev)
}

/// Checks `beta(t^p) = t^(p p0)` and `(t^p, t^p') = p0^2 (t^(p p0), t^(p' p0))`
/// for `p0 = q^n` on both sides, and `c(p) = p0 c(p p0)` for the per-point
/// constants.
pub fn scaling_identity_check(
    n: i64,
    labels: &[(i64, i64)],
    lat: &MomentumLattice,
    q: f64,
    w: BasisWindow,
) -> Result<ScalingReport, PlancherelError> {
    let p0 = q.powi(n as i32);
    let shifted = lat.shifted(n);
    let mut coefficient_deviation = 0.0f64;
    let mut inner_product_deviation = 0.0f64;
    let mut covariance_deviation = 0.0f64;
    for &(i, j) in labels {
        for m in lat.indices() {
            let lab = EuclidLabel::new(lat.p(m), i, j)?;
            coefficient_deviation =
                coefficient_deviation.max(beta_coefficient_deviation(lab, p0, q, BETA_TERMS)?);
        }
        for side in [Side::Right, Side::Left] {
            let g = gram_matrix((i, j), (i, j), side, lat, q, w, 1e-12)?;
            let gs = gram_matrix((i, j), (i, j), side, &shifted, q, w, 1e-12)?;
            let scale = g.diagonal().into_iter().fold(0.0, f64::max);
            for (a, row) in g.entries.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    let d = (v - gs.entries[a][b] * (p0 * p0)).norm() / scale;
                    inner_product_deviation = inner_product_deviation.max(d);
                }
            }
            for (k, m) in lat.indices().enumerate() {
                let c = g.entries[k][k].re * lat.delta_weight(m);
                let cs = gs.entries[k][k].re * shifted.delta_weight(m + n);
                covariance_deviation = covariance_deviation.max((c / (p0 * cs) - 1.0).abs());
            }
        }
    }
    Ok(ScalingReport {
        n,
        p0,
        coefficient_deviation,
        inner_product_deviation,
        covariance_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::default_window;

    #[test]
    fn unit_dilation_is_exact() {
        let lab = EuclidLabel::new(1.2, 1, 0).unwrap();
        assert_eq!(beta_coefficient_deviation(lab, 1.0, 0.7, 10).unwrap(), 0.0);
    }

    #[test]
    fn dilation_by_q_holds() {
        let lat = MomentumLattice::new(-1, 1, 0.7).unwrap();
        let r = scaling_identity_check(1, &[(0, 0)], &lat, 0.7, default_window()).unwrap();
        assert!(r.coefficient_deviation < 1e-12, "{r:?}");
        assert!(r.inner_product_deviation < 1e-8, "{r:?}");
        assert!(r.covariance_deviation < 1e-6, "{r:?}");
    }
}
