//! The transform pair `f^_ij(p) = (f, t^p_ij)_R` and
//! `f = (1 / c) int p dp sum_ij q^(2j) f^_ij(p) t^p_ij` on the lattice.

use std::collections::BTreeMap;

use algebra::{GradedElement, Half, RadialFn};
use matrixel::{eq_matrix_element, EuclidLabel};
use num_complex::Complex64;
use reps::{BasisWindow, Side};
use serde::Serialize;

use crate::gram::{label_profile, pair_sum, profile};
use crate::lattice::MomentumLattice;
use crate::PlancherelError;

/// Range of labels `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexWindow {
    pub i_min: i64,
    pub i_max: i64,
    pub j_min: i64,
    pub j_max: i64,
}

impl Default for IndexWindow {
    fn default() -> Self {
        Self::square(4)
    }
}

impl IndexWindow {
    /// `|i|, |j| <= k`.
    pub fn square(k: i64) -> Self {
        Self {
            i_min: -k,
            i_max: k,
            j_min: -k,
            j_max: k,
        }
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        (self.i_min..=self.i_max).contains(&i) && (self.j_min..=self.j_max).contains(&j)
    }
}

/// One coefficient `f^[m, i, j]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransformEntry {
    pub m: i64,
    pub i: i64,
    pub j: i64,
    #[serde(serialize_with = "crate::serial::complex")]
    pub value: Complex64,
}

/// Coefficients of a forward transform. Labels not listed are exactly zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformTable {
    pub lattice: MomentumLattice,
    pub index_window: IndexWindow,
    pub window: (i64, i64),
    pub entries: Vec<TransformEntry>,
    /// Largest share of the Parseval sum of a label carried by the two
    /// outermost lattice points at either end.
    pub lattice_edge_fraction: f64,
    /// Largest share of a coefficient carried by the basis window edges.
    pub window_edge_fraction: f64,
}

impl TransformTable {
    pub fn get(&self, m: i64, i: i64, j: i64) -> Complex64 {
        self.entries
            .iter()
            .find(|e| e.m == m && e.i == i && e.j == j)
            .map_or(Complex64::new(0.0, 0.0), |e| e.value)
    }

    /// Labels with nonzero support.
    pub fn labels(&self) -> Vec<(i64, i64)> {
        let mut v: Vec<(i64, i64)> = self.entries.iter().map(|e| (e.i, e.j)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// CSV with header `m,i,j,re,im`.
    pub fn to_csv(&self) -> Result<String, PlancherelError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["m", "i", "j", "re", "im"])?;
        for e in &self.entries {
            w.write_record([
                e.m.to_string(),
                e.i.to_string(),
                e.j.to_string(),
                format!("{:e}", e.value.re),
                format!("{:e}", e.value.im),
            ])?;
        }
        crate::serial::finish_csv(w)
    }
}

/// `delta^(h/2) z^(s) w(rho^2)` with `w` a two-point lattice bump at
/// `lambda = q^(2k)`, `q^(2k+2)`.
pub fn bump_element(h: i32, s: i32, k: i64) -> GradedElement<f64> {
    let mut tab = BTreeMap::new();
    tab.insert(k, Complex64::new(1.0, 0.0));
    tab.insert(k + 1, Complex64::new(0.5, -0.25));
    GradedElement::single(h, s, Complex64::new(1.0, 0.0), RadialFn::Lattice(tab))
}

fn bigrades(f: &GradedElement<f64>) -> Vec<(Half, Half)> {
    let mut v: Vec<(Half, Half)> = f.terms.iter().map(|t| t.bigrade()).collect();
    v.sort();
    v.dedup();
    v
}

/// `f^[m, i, j] = (f, t^(p_m)_ij)_R`. The bigrade `(a, b)` of `f` pairs with
/// the label `(-a, -b)`; every other label is zero.
pub fn forward_transform(
    f: &GradedElement<f64>,
    lat: &MomentumLattice,
    index_window: IndexWindow,
    q: f64,
    w: BasisWindow,
) -> Result<TransformTable, PlancherelError> {
    let grades = bigrades(f);
    let mut missing = Vec::new();
    let mut labels = Vec::new();
    for &(a, b) in &grades {
        let (i, j) = (-a.0 / 2, -b.0 / 2);
        if a.0 % 2 != 0 || b.0 % 2 != 0 || !index_window.contains(i, j) {
            missing.push((-a.0, -b.0));
        } else {
            labels.push((i, j, (a, b)));
        }
    }
    if !missing.is_empty() {
        // Reported as doubled values when half-integral.
        let shown = missing
            .into_iter()
            .map(|(a, b)| if a % 2 == 0 && b % 2 == 0 { (a / 2, b / 2) } else { (a, b) })
            .collect();
        return Err(PlancherelError::Coverage(shown));
    }
    let mut entries = Vec::new();
    let mut lattice_edge_fraction = 0.0f64;
    let mut window_edge_fraction = 0.0f64;
    for (i, j, b) in labels {
        let fp = profile(f, b, q, w)?;
        let sigma = -(i + j);
        let column: Vec<Result<(Complex64, f64), PlancherelError>> = std::thread::scope(|s| {
            let handles: Vec<_> = lat
                .indices()
                .map(|m| {
                    let fp = &fp;
                    let p = lat.p(m);
                    s.spawn(move || {
                        let tp = label_profile(p, i, j, q, w)?;
                        Ok(pair_sum(fp, &tp, Side::Right, sigma, q, w))
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("transform thread")).collect()
        });
        let mut energy = Vec::with_capacity(lat.len());
        for (m, r) in lat.indices().zip(column) {
            let (v, edge) = r?;
            if v.norm() > 0.0 {
                window_edge_fraction = window_edge_fraction.max(edge);
            }
            energy.push(lat.measure_weight(m) * q.powi(2 * j as i32) * v.norm_sqr());
            entries.push(TransformEntry { m, i, j, value: v });
        }
        let total: f64 = energy.iter().sum();
        if total > 0.0 {
            let k = energy.len();
            let edge = energy[..2.min(k)]
                .iter()
                .chain(&energy[k.saturating_sub(2)..])
                .fold(0.0f64, |a, &e| a.max(e));
            lattice_edge_fraction = lattice_edge_fraction.max(edge / total);
        }
    }
    entries.sort_by_key(|e| (e.m, e.i, e.j));
    Ok(TransformTable {
        lattice: *lat,
        index_window,
        window: (w.lo, w.hi),
        entries,
        lattice_edge_fraction,
        window_edge_fraction,
    })
}

/// `(1 / c) (1 - q) sum_m p_m^2 sum_ij q^(2j) f^[m, i, j] t^(p_m)_ij`.
pub fn inverse_transform(tab: &TransformTable, c: f64, q: f64) -> Result<GradedElement<f64>, PlancherelError> {
    let mut out = GradedElement::default();
    for e in tab.entries.iter().filter(|e| e.value.norm() > 0.0) {
        let k = e.value * (tab.lattice.measure_weight(e.m) * q.powi(2 * e.j as i32) / c);
        let t = eq_matrix_element(EuclidLabel::new(tab.lattice.p(e.m), e.i, e.j)?, q);
        out = out.plus(&t.scale(k));
    }
    Ok(out)
}

/// Comparison of `f` with its reconstruction, per bigrade.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundtripReport {
    /// `(2a, 2b, deviation)`: largest `|f(n) - f_rec(n)|` over `max |f(n)|`.
    pub bigrades: Vec<(i64, i64, f64)>,
    /// Largest deviation in bigrades where `f` vanishes, over `max |f|`.
    pub leakage: f64,
    pub lattice_edge_fraction: f64,
}

impl RoundtripReport {
    pub fn max_deviation(&self) -> f64 {
        self.bigrades
            .iter()
            .map(|b| b.2)
            .fold(self.leakage, f64::max)
    }
}

/// Forward then inverse transform, compared on the represented profiles
/// over `compare`.
#[allow(clippy::too_many_arguments)]
pub fn roundtrip(
    f: &GradedElement<f64>,
    lat: &MomentumLattice,
    index_window: IndexWindow,
    c: f64,
    q: f64,
    w: BasisWindow,
    compare: BasisWindow,
) -> Result<RoundtripReport, PlancherelError> {
    let tab = forward_transform(f, lat, index_window, q, w)?;
    let rec = inverse_transform(&tab, c, q)?;
    let mut grades = bigrades(f);
    grades.extend(bigrades(&rec));
    grades.sort();
    grades.dedup();
    let fmax = bigrades(f)
        .into_iter()
        .map(|b| profile(f, b, q, compare).map(|v| v.iter().map(|x| x.norm()).fold(0.0, f64::max)))
        .collect::<Result<Vec<f64>, _>>()?
        .into_iter()
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let own = bigrades(f);
    let mut out = Vec::new();
    let mut leakage = 0.0f64;
    for b in grades {
        let a = profile(f, b, q, compare)?;
        let r = profile(&rec, b, q, compare)?;
        let dev = a
            .iter()
            .zip(&r)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
            / fmax;
        if own.contains(&b) {
            out.push((b.0 .0, b.1 .0, dev));
        } else {
            leakage = leakage.max(dev);
        }
    }
    Ok(RoundtripReport {
        bigrades: out,
        leakage,
        lattice_edge_fraction: tab.lattice_edge_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::default_window;

    #[test]
    fn zero_element_gives_empty_table() {
        let lat = MomentumLattice::new(-2, 2, 0.7).unwrap();
        let t = forward_transform(&GradedElement::default(), &lat, IndexWindow::default(), 0.7, default_window())
            .unwrap();
        assert!(t.entries.is_empty());
        assert_eq!(t.get(0, 0, 0), Complex64::new(0.0, 0.0));
        let rec = inverse_transform(&t, 1.0, 0.7).unwrap();
        assert!(rec.terms.is_empty());
    }

    #[test]
    fn support_is_the_opposite_label() {
        let lat = MomentumLattice::new(-2, 2, 0.7).unwrap();
        let f = bump_element(0, 1, 0);
        let t = forward_transform(&f, &lat, IndexWindow::default(), 0.7, default_window()).unwrap();
        assert_eq!(t.labels(), vec![(-1, 0)]);
    }

    #[test]
    fn coverage_error_lists_labels() {
        let lat = MomentumLattice::new(0, 0, 0.7).unwrap();
        let f = bump_element(0, 3, 0);
        let r = forward_transform(&f, &lat, IndexWindow::square(2), 0.7, default_window());
        assert_eq!(r, Err(PlancherelError::Coverage(vec![(-3, 0)])));
    }
}
