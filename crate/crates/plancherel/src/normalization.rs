//! Normalization constants from the Gram diagonals.
//!
//! On the lattice `delta(p - p')` becomes `delta_mm' / ((1 - q) p_m)`, so the
//! per-point constant is `c(p_m) = G[m][m] (1 - q) p_m` and `a = c(p) p`
//! should not depend on `p`.

use reps::{BasisWindow, Side};
use serde::Serialize;

use crate::gram::{gram_matrix, GramMatrix};
use crate::lattice::MomentumLattice;
use crate::serial::side_name;
use crate::PlancherelError;

/// Residual above which the model is rejected.
pub const MODEL_TOL: f64 = 1e-4;

/// Fitted constant of one label and side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizationEntry {
    #[serde(serialize_with = "side_name")]
    pub side: Side,
    pub i: i64,
    pub j: i64,
    /// Per-point constants `c(p_m)`.
    pub per_point: Vec<f64>,
    /// Mean of `c(p_m) p_m`.
    pub a: f64,
    /// Largest relative spread of `c(p_m) p_m` around `a`.
    pub p_residual: f64,
    /// `c q^(-2j)` (right) or `c q^(2i)` (left).
    pub model: f64,
    /// `|a / model - 1|`.
    pub residual: f64,
}

/// Result of the normalization fit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizationReport {
    pub q: f64,
    pub c: f64,
    pub entries: Vec<NormalizationEntry>,
    /// Largest deviation from `c(p) ∝ 1 / p`.
    pub p_residual: f64,
    /// Largest deviation from the index model.
    pub model_residual: f64,
    /// Largest relative spread of the right constants over `i` at fixed `j`.
    pub right_i_spread: f64,
    /// Largest relative spread of the left constants over `j` at fixed `i`.
    pub left_j_spread: f64,
    /// Least-squares `(s_i, s_j)` in `a^r ∝ q^(s_i i + s_j j)`.
    pub right_exponents: (f64, f64),
    /// Least-squares `(s_i, s_j)` in `a^l ∝ q^(s_i i + s_j j)`.
    pub left_exponents: (f64, f64),
    /// Least-squares `(s_i, s_j)` in `a^l / a^r = q^(s_i i + s_j j)`.
    pub left_right_exponents: (f64, f64),
    /// Whether `left_right_exponents` equals `(2, 2)` within `1e-6`.
    pub left_right_claim_holds: bool,
}

impl NormalizationReport {
    pub fn max_residual(&self) -> f64 {
        self.p_residual.max(self.model_residual)
    }

    pub fn entry(&self, side: Side, i: i64, j: i64) -> Option<&NormalizationEntry> {
        self.entries
            .iter()
            .find(|e| e.side == side && e.i == i && e.j == j)
    }
}

fn rel_spread(values: &[f64]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values
        .iter()
        .map(|v| (v / mean - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Least squares for `y = alpha + s_i i + s_j j`; returns `(s_i, s_j)`.
fn fit_plane(points: &[(f64, f64, f64)]) -> (f64, f64) {
    let mut m = [[0.0f64; 3]; 3];
    let mut r = [0.0f64; 3];
    for &(i, j, y) in points {
        let row = [1.0, i, j];
        for a in 0..3 {
            for b in 0..3 {
                m[a][b] += row[a] * row[b];
            }
            r[a] += row[a] * y;
        }
    }
    // Gaussian elimination with partial pivoting.
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap_or(col);
        m.swap(col, piv);
        r.swap(col, piv);
        if m[col][col] == 0.0 {
            return (f64::NAN, f64::NAN);
        }
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            let pivot = m[col];
            for (k, v) in m[row].iter_mut().enumerate().skip(col) {
                *v -= f * pivot[k];
            }
            r[row] -= f * r[col];
        }
    }
    let mut x = [0.0f64; 3];
    for row in (0..3).rev() {
        let mut s = r[row];
        for k in row + 1..3 {
            s -= m[row][k] * x[k];
        }
        x[row] = s / m[row][row];
    }
    (x[1], x[2])
}

/// Fits the Gram diagonals without rejecting a poor model.
pub fn fit_normalization(grams: &[GramMatrix]) -> Result<NormalizationReport, PlancherelError> {
    let diag: Vec<&GramMatrix> = grams.iter().filter(|g| g.left == g.right).collect();
    let first = diag
        .first()
        .ok_or_else(|| PlancherelError::ModelMismatch("no diagonal Gram matrices".into()))?;
    let q = first.lattice.q;
    let mut entries = Vec::new();
    for g in &diag {
        let lat = g.lattice;
        let per_point: Vec<f64> = lat
            .indices()
            .zip(g.diagonal())
            .map(|(m, d)| d * lat.delta_weight(m))
            .collect();
        let scaled: Vec<f64> = lat
            .indices()
            .zip(&per_point)
            .map(|(m, c)| c * lat.p(m))
            .collect();
        let a = scaled.iter().sum::<f64>() / scaled.len() as f64;
        entries.push(NormalizationEntry {
            side: g.side,
            i: g.left.0,
            j: g.left.1,
            per_point,
            a,
            p_residual: rel_spread(&scaled),
            model: 0.0,
            residual: 0.0,
        });
    }
    let index_factor = |e: &NormalizationEntry| match e.side {
        Side::Right => q.powi(-2 * e.j as i32),
        Side::Left => q.powi(2 * e.i as i32),
    };
    let reduced: Vec<f64> = entries.iter().map(|e| e.a / index_factor(e)).collect();
    let c = reduced.iter().sum::<f64>() / reduced.len() as f64;
    for e in &mut entries {
        e.model = c * index_factor(e);
        e.residual = (e.a / e.model - 1.0).abs();
    }
    let lq = q.ln();
    let plane = |side: Side| {
        let pts: Vec<(f64, f64, f64)> = entries
            .iter()
            .filter(|e| e.side == side)
            .map(|e| (e.i as f64, e.j as f64, e.a.ln() / lq))
            .collect();
        if pts.len() < 3 {
            (f64::NAN, f64::NAN)
        } else {
            fit_plane(&pts)
        }
    };
    let ratio_pts: Vec<(f64, f64, f64)> = entries
        .iter()
        .filter(|e| e.side == Side::Left)
        .filter_map(|l| {
            entries
                .iter()
                .find(|r| r.side == Side::Right && r.i == l.i && r.j == l.j)
                .map(|r| (l.i as f64, l.j as f64, (l.a / r.a).ln() / lq))
        })
        .collect();
    let left_right_exponents = if ratio_pts.len() < 3 {
        (f64::NAN, f64::NAN)
    } else {
        fit_plane(&ratio_pts)
    };
    let spread = |side: Side, by_i: bool| {
        let mut worst = 0.0f64;
        let keys: Vec<i64> = entries
            .iter()
            .filter(|e| e.side == side)
            .map(|e| if by_i { e.j } else { e.i })
            .collect();
        for k in keys {
            let vals: Vec<f64> = entries
                .iter()
                .filter(|e| e.side == side && (if by_i { e.j } else { e.i }) == k)
                .map(|e| e.a)
                .collect();
            worst = worst.max(rel_spread(&vals));
        }
        worst
    };
    let claim = (left_right_exponents.0 - 2.0).abs() < 1e-6 && (left_right_exponents.1 - 2.0).abs() < 1e-6;
    Ok(NormalizationReport {
        q,
        c,
        p_residual: entries.iter().map(|e| e.p_residual).fold(0.0, f64::max),
        model_residual: entries.iter().map(|e| e.residual).fold(0.0, f64::max),
        right_i_spread: spread(Side::Right, true),
        left_j_spread: spread(Side::Left, false),
        right_exponents: plane(Side::Right),
        left_exponents: plane(Side::Left),
        left_right_exponents,
        left_right_claim_holds: claim,
        entries,
    })
}

/// Fits the Gram diagonals and rejects residuals above `1e-4`.
pub fn extract_normalization(grams: &[GramMatrix]) -> Result<NormalizationReport, PlancherelError> {
    let r = fit_normalization(grams)?;
    if r.max_residual() > MODEL_TOL {
        return Err(PlancherelError::ModelMismatch(format!(
            "residual {:e}; fitted right exponents {:?}, left exponents {:?}",
            r.max_residual(),
            r.right_exponents,
            r.left_exponents
        )));
    }
    Ok(r)
}

/// `c` from the right diagonal of `t^p_00` at `p_0`.
pub fn normalization_constant(q: f64, w: BasisWindow) -> Result<f64, PlancherelError> {
    let lat = MomentumLattice::new(0, 0, q)?;
    let g = gram_matrix((0, 0), (0, 0), Side::Right, &lat, q, w, 1e-12)?;
    Ok(g.entries[0][0].re * lat.delta_weight(0) * lat.p(0))
}
