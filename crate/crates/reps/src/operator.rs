//! Banded operators on a basis window.

use std::collections::BTreeMap;

use num_complex::Complex;
use qkernel::Real;

use crate::window::BasisWindow;

/// Matrix `<r|A|c>` stored by diagonal offset `r - c`; each band holds one
/// entry per column of the window.
#[derive(Debug, Clone, PartialEq)]
pub struct RepOperator<T: Real> {
    pub window: BasisWindow,
    bands: BTreeMap<i64, Vec<Complex<T>>>,
}

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

impl<T: Real> RepOperator<T> {
    pub fn zero(window: BasisWindow) -> Self {
        Self {
            window,
            bands: BTreeMap::new(),
        }
    }

    pub fn identity(window: BasisWindow) -> Self {
        let mut op = Self::zero(window);
        op.bands
            .insert(0, vec![Complex::new(T::one(), T::zero()); window.len()]);
        op
    }

    /// Diagonal operator with entries `f(n)`.
    pub fn diagonal_from<F: Fn(i64) -> Complex<T>>(window: BasisWindow, f: F) -> Self {
        let mut op = Self::zero(window);
        op.bands.insert(0, window.indices().map(f).collect());
        op
    }

    /// Adds `v` at `<row|A|col>`; entries outside the window are dropped.
    pub fn add_entry(&mut self, row: i64, col: i64, v: Complex<T>) {
        if !self.window.contains(row) || !self.window.contains(col) {
            return;
        }
        let len = self.window.len();
        let band = self.bands.entry(row - col).or_insert_with(|| vec![zero(); len]);
        let k = (col - self.window.lo) as usize;
        band[k] = band[k] + v;
    }

    pub fn get(&self, row: i64, col: i64) -> Complex<T> {
        if !self.window.contains(row) || !self.window.contains(col) {
            return zero();
        }
        self.bands
            .get(&(row - col))
            .map(|b| b[(col - self.window.lo) as usize])
            .unwrap_or_else(zero)
    }

    /// Band offsets `row - col` that carry a nonzero entry.
    pub fn offsets(&self) -> Vec<i64> {
        self.bands
            .iter()
            .filter(|(_, b)| b.iter().any(|v| v.norm() > T::zero()))
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn bands(&self) -> impl Iterator<Item = (&i64, &Vec<Complex<T>>)> {
        self.bands.iter()
    }

    /// Largest `|row - col|` among nonzero bands.
    pub fn bandwidth(&self) -> i64 {
        self.offsets().into_iter().map(i64::abs).max().unwrap_or(0)
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        self.bands
            .get(&0)
            .cloned()
            .unwrap_or_else(|| vec![zero(); self.window.len()])
    }

    pub fn trace(&self) -> Complex<T> {
        self.diagonal().into_iter().fold(zero(), |a, b| a + b)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.window);
        for (&k, band) in &self.bands {
            for (idx, v) in band.iter().enumerate() {
                let col = self.window.lo + idx as i64;
                out.add_entry(col, col + k, v.conj());
            }
        }
        out
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            window: self.window,
            bands: self
                .bands
                .iter()
                .map(|(&k, b)| (k, b.iter().map(|v| *v * c).collect()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, band) in &other.bands {
            for (idx, v) in band.iter().enumerate() {
                let col = self.window.lo + idx as i64;
                out.add_entry(col + k, col, *v);
            }
        }
        out
    }

    /// Product truncated to the window.
    pub fn matmul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.window);
        for (&kb, bb) in &other.bands {
            for (idx, vb) in bb.iter().enumerate() {
                if vb.norm() == T::zero() {
                    continue;
                }
                let col = self.window.lo + idx as i64;
                let mid = col + kb;
                if !self.window.contains(mid) {
                    continue;
                }
                let mi = (mid - self.window.lo) as usize;
                for (&ka, ba) in &self.bands {
                    let va = ba[mi];
                    if va.norm() != T::zero() {
                        out.add_entry(mid + ka, col, va * *vb);
                    }
                }
            }
        }
        out
    }

    /// Largest entry deviation on the index box `[lo, hi]^2`.
    pub fn max_deviation_on(&self, other: &Self, lo: i64, hi: i64) -> T {
        let mut m = T::zero();
        let offs: std::collections::BTreeSet<i64> =
            self.bands.keys().chain(other.bands.keys()).copied().collect();
        for k in offs {
            for col in lo..=hi {
                let row = col + k;
                if row < lo || row > hi {
                    continue;
                }
                m = m.max((self.get(row, col) - other.get(row, col)).norm());
            }
        }
        m
    }

    /// Largest entry deviation on `[lo, hi]^2`, each relative to
    /// `max(1, |other entry|)`.
    pub fn max_relative_deviation_on(&self, other: &Self, lo: i64, hi: i64) -> T {
        let mut m = T::zero();
        let offs: std::collections::BTreeSet<i64> =
            self.bands.keys().chain(other.bands.keys()).copied().collect();
        for k in offs {
            for col in lo..=hi {
                let row = col + k;
                if row < lo || row > hi {
                    continue;
                }
                let o = other.get(row, col);
                m = m.max((self.get(row, col) - o).norm() / o.norm().max(T::one()));
            }
        }
        m
    }

    /// Largest entry modulus on the index box `[lo, hi]^2`.
    pub fn max_norm_on(&self, lo: i64, hi: i64) -> T {
        let z = Self::zero(self.window);
        self.max_deviation_on(&z, lo, hi)
    }

    /// Dense row-major matrix over the window.
    pub fn to_dense(&self) -> Vec<Vec<Complex<T>>> {
        let n = self.window.len();
        let mut m = vec![vec![zero(); n]; n];
        for (&k, band) in &self.bands {
            for (idx, v) in band.iter().enumerate() {
                let r = idx as i64 + k;
                if r >= 0 && (r as usize) < n {
                    m[r as usize][idx] = *v;
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn shift_products() {
        let w = BasisWindow::full(-3, 3).unwrap();
        let mut down = RepOperator::zero(w);
        let mut up = RepOperator::zero(w);
        for n in w.indices() {
            down.add_entry(n - 1, n, c(2.0));
            up.add_entry(n + 1, n, c(0.5));
        }
        let p = down.matmul(&up);
        assert_eq!(p.get(0, 0), c(1.0));
        assert_eq!(p.get(3, 3), c(0.0));
        assert_eq!(down.adjoint().get(1, 0), c(2.0));
        assert_eq!(down.bandwidth(), 1);
        assert_eq!(RepOperator::<f64>::identity(w).trace(), c(7.0));
        let d = down.to_dense();
        assert_eq!(d[0][1], c(2.0));
    }
}
