//! Gram matrices of the `t^p_ij` on the momentum lattice.

use algebra::{GradedElement, Half};
use matrixel::{eq_matrix_element, EuclidLabel};
use num_complex::Complex64;
use reps::{component_weight, rho2, BasisWindow, Side};
use serde::Serialize;

use crate::lattice::MomentumLattice;
use crate::serial::{complex_rows, side_name};
use crate::PlancherelError;

/// Basis window used by default: 512 states of `l2(Z)`.
pub fn default_window() -> BasisWindow {
    BasisWindow::full(-256, 255).expect("valid window")
}

/// `G[a][b] = (t^{p_a}_{left}, t^{p_b}_{right})` for lattice points `a`, `b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramMatrix {
    #[serde(serialize_with = "side_name")]
    pub side: Side,
    pub left: (i64, i64),
    pub right: (i64, i64),
    pub lattice: MomentumLattice,
    pub window: (i64, i64),
    #[serde(serialize_with = "complex_rows")]
    pub entries: Vec<Vec<Complex64>>,
    /// Largest share of a Gram entry carried by the window edges.
    pub edge_fraction: f64,
}

impl GramMatrix {
    pub fn get(&self, m: i64, m2: i64) -> Complex64 {
        let a = (m - self.lattice.m_min) as usize;
        let b = (m2 - self.lattice.m_min) as usize;
        self.entries[a][b]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.entries.len()).map(|k| self.entries[k][k].re).collect()
    }

    /// `max |G[a][b]|, a != b` over `min |G[a][a]|`; zero for an empty
    /// diagonal.
    pub fn offdiag_ratio(&self) -> f64 {
        let n = self.entries.len();
        let mut off = 0.0f64;
        let mut diag = f64::INFINITY;
        for a in 0..n {
            diag = diag.min(self.entries[a][a].norm());
            for b in 0..n {
                if a != b {
                    off = off.max(self.entries[a][b].norm());
                }
            }
        }
        if off == 0.0 {
            0.0
        } else {
            off / diag
        }
    }

    /// `max |G[a][b] - conj(G[b][a])|` relative to the largest entry.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.entries.len();
        let scale = self
            .entries
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut dev = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                dev = dev.max((self.entries[a][b] - self.entries[b][a].conj()).norm());
            }
        }
        dev / scale
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|v| *v == Complex64::new(0.0, 0.0))
    }

    /// Long-format CSV: `side,i,j,i2,j2,m,m2,re,im`.
    pub fn to_csv(&self) -> Result<String, PlancherelError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["side", "i", "j", "i2", "j2", "m", "m2", "re", "im"])?;
        let side = if self.side == Side::Left { "L" } else { "R" };
        for m in self.lattice.indices() {
            for m2 in self.lattice.indices() {
                let v = self.get(m, m2);
                w.write_record([
                    side.to_string(),
                    self.left.0.to_string(),
                    self.left.1.to_string(),
                    self.right.0.to_string(),
                    self.right.1.to_string(),
                    m.to_string(),
                    m2.to_string(),
                    format!("{:e}", v.re),
                    format!("{:e}", v.im),
                ])?;
            }
        }
        crate::serial::finish_csv(w)
    }
}

/// Bigrade `(-i, -j)` of `t^p_ij`.
pub fn label_bigrade(i: i64, j: i64) -> (Half, Half) {
    (Half(-2 * i), Half(-2 * j))
}

/// Weights on `|n>` of the bigrade-`b` component of `g` across the window.
pub fn profile(
    g: &GradedElement<f64>,
    b: (Half, Half),
    q: f64,
    w: BasisWindow,
) -> Result<Vec<Complex64>, PlancherelError> {
    w.indices()
        .map(|n| Ok(component_weight(g, b, q, n)?))
        .collect()
}

/// Profile of `t^p_ij`.
pub fn label_profile(p: f64, i: i64, j: i64, q: f64, w: BasisWindow) -> Result<Vec<Complex64>, PlancherelError> {
    let t = eq_matrix_element(EuclidLabel::new(p, i, j)?, q);
    profile(&t, label_bigrade(i, j), q, w)
}

/// Profiles of `t^{p_m}_ij` for every lattice point, computed concurrently.
pub fn lattice_profiles(
    i: i64,
    j: i64,
    lat: &MomentumLattice,
    q: f64,
    w: BasisWindow,
) -> Result<Vec<Vec<Complex64>>, PlancherelError> {
    std::thread::scope(|s| {
        let handles: Vec<_> = lat
            .indices()
            .map(|m| {
                let p = lat.p(m);
                s.spawn(move || label_profile(p, i, j, q, w))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("profile thread"))
            .collect()
    })
}

/// Scalar product of two profiles in the bigrade with shift `sigma = i + j`:
/// `Left` sums `conj(a) b rho^2(n)`, `Right` sums `a conj(b) rho^2(n - sigma)`,
/// both times `1 - q^2`. Also returns the share of the absolute sum carried
/// by the two outermost states at either end.
pub fn pair_sum(
    a: &[Complex64],
    b: &[Complex64],
    side: Side,
    sigma: i64,
    q: f64,
    w: BasisWindow,
) -> (Complex64, f64) {
    let mut acc = qkernel::Accumulator::<Complex64>::new();
    let mut abs = 0.0;
    let mut edge = 0.0f64;
    let len = a.len();
    for (k, n) in w.indices().enumerate() {
        let v = match side {
            Side::Left => a[k].conj() * b[k] * rho2(q, n),
            Side::Right => a[k] * b[k].conj() * rho2(q, n - sigma),
        } * (1.0 - q * q);
        abs += v.norm();
        if k < 2 || k + 2 >= len {
            edge = edge.max(v.norm());
        }
        acc.add(v);
    }
    let frac = if abs == 0.0 { 0.0 } else { edge / abs };
    (acc.value(), frac)
}

/// Gram matrix of `t^{p_m}_ij` against `t^{p_m'}_i2j2` on the lattice.
///
/// Different labels lie in different bigrades, so the matrix is exactly
/// zero. Fails if the window edges carry more than `tol` of any entry.
#[allow(clippy::too_many_arguments)]
pub fn gram_matrix(
    left: (i64, i64),
    right: (i64, i64),
    side: Side,
    lat: &MomentumLattice,
    q: f64,
    w: BasisWindow,
    tol: f64,
) -> Result<GramMatrix, PlancherelError> {
    let n = lat.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut entries = vec![vec![zero; n]; n];
    let mut edge_fraction = 0.0f64;
    if left == right {
        let (i, j) = left;
        let prof = lattice_profiles(i, j, lat, q, w)?;
        let sigma = -(i + j);
        for a in 0..n {
            for b in 0..n {
                let (v, e) = pair_sum(&prof[a], &prof[b], side, sigma, q, w);
                entries[a][b] = v;
                if a == b {
                    edge_fraction = edge_fraction.max(e);
                }
            }
        }
        if edge_fraction > tol {
            return Err(PlancherelError::Window(format!(
                "window [{}, {}] edges carry {edge_fraction:e} of a diagonal entry for ({i}, {j})",
                w.lo, w.hi
            )));
        }
    }
    Ok(GramMatrix {
        side,
        left,
        right,
        lattice: *lat,
        window: (w.lo, w.hi),
        entries,
        edge_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_labels_give_zero() {
        let lat = MomentumLattice::new(-1, 1, 0.7).unwrap();
        let g = gram_matrix((0, 0), (1, 0), Side::Right, &lat, 0.7, default_window(), 1e-12).unwrap();
        assert!(g.is_zero());
        assert_eq!(g.offdiag_ratio(), 0.0);
    }

    #[test]
    fn same_label_is_hermitian_and_diagonal() {
        let q = 0.7;
        let lat = MomentumLattice::new(-2, 2, q).unwrap();
        for side in [Side::Left, Side::Right] {
            let g = gram_matrix((1, -1), (1, -1), side, &lat, q, default_window(), 1e-12).unwrap();
            assert!(g.hermiticity_deviation() < 1e-10);
            assert!(g.offdiag_ratio() < 1e-8, "{}", g.offdiag_ratio());
            assert!(g.diagonal().iter().all(|&d| d > 0.0));
        }
    }

    #[test]
    fn narrow_window_is_rejected() {
        let lat = MomentumLattice::new(0, 0, 0.7).unwrap();
        let w = BasisWindow::full(-5, 5).unwrap();
        let r = gram_matrix((0, 0), (0, 0), Side::Right, &lat, 0.7, w, 1e-12);
        assert!(matches!(r, Err(PlancherelError::Window(_))));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let lat = MomentumLattice::new(0, 1, 0.7).unwrap();
        let g = gram_matrix((0, 0), (0, 0), Side::Right, &lat, 0.7, default_window(), 1e-12).unwrap();
        let csv = g.to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "side,i,j,i2,j2,m,m2,re,im");
        assert_eq!(lines.len(), 5);
    }
}
