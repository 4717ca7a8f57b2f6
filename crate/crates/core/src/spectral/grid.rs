use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest number of grid points `N^d` a [`GridSpec`] may describe.
pub const MAX_GRID_POINTS: usize = 1 << 22;

/// Periodic box `[−L/2, L/2)^d` sampled at `N` points per axis.
///
/// Sample `j` sits at `x_j = −L/2 + j·L/N`; the wavenumber lattice is
/// `k = 2π·m/L` for `m ∈ [−N/2, N/2)`, Nyquist mode included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid")]
pub struct GridSpec {
    d: usize,
    n: usize,
    l: f64,
}

#[derive(Deserialize)]
struct RawGrid {
    d: usize,
    n: Option<usize>,
    l: Option<f64>,
}

impl TryFrom<RawGrid> for GridSpec {
    type Error = Error;
    fn try_from(raw: RawGrid) -> Result<Self> {
        let default = GridSpec::default_for(raw.d)?;
        GridSpec::new(raw.d, raw.n.unwrap_or(default.n), raw.l.unwrap_or(default.l))
    }
}

impl GridSpec {
    pub fn new(d: usize, n: usize, l: f64) -> Result<Self> {
        if d == 0 {
            return Err(domain("grid dimension must be ≥ 1"));
        }
        if n < 2 || !n.is_power_of_two() {
            return Err(domain(format!("points per axis must be a power of two ≥ 2, got {n}")));
        }
        if !(l > 0.0) || !l.is_finite() {
            return Err(domain(format!("box length must be positive, got {l}")));
        }
        let total = (0..d).try_fold(1usize, |acc, _| acc.checked_mul(n).filter(|&t| t <= MAX_GRID_POINTS));
        if total.is_none() {
            return Err(Error::Resource(format!("{n}^{d} grid points exceed {MAX_GRID_POINTS}")));
        }
        Ok(GridSpec { d, n, l })
    }

    /// `L = 16, N = 256` (d=1), `L = 16, N = 128` (d=2), `L = 12, N = 64` (d=3).
    pub fn default_for(d: usize) -> Result<Self> {
        match d {
            1 => GridSpec::new(1, 256, 16.0),
            2 => GridSpec::new(2, 128, 16.0),
            3 => GridSpec::new(3, 64, 12.0),
            _ => Err(domain(format!("no default grid for d = {d}; give n and l explicitly"))),
        }
    }

    /// Same box resolution with `N` and `L` both doubled.
    pub fn refined(&self) -> Result<Self> {
        GridSpec::new(self.d, self.n * 2, self.l * 2.0)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn points(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    /// Grid spacing `h = L/N`.
    pub fn spacing(&self) -> f64 {
        self.l / self.n as f64
    }

    /// Volume element `h^d` of the real-space quadrature.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.d as i32)
    }

    /// Volume element `(2π/L)^d` of the wavenumber lattice.
    pub fn dual_cell_volume(&self) -> f64 {
        (2.0 * PI / self.l).powi(self.d as i32)
    }

    pub fn coordinate(&self, j: usize) -> f64 {
        -0.5 * self.l + j as f64 * self.spacing()
    }

    /// Signed mode number `m ∈ [−N/2, N/2)` stored at FFT slot `i`.
    pub fn mode(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    pub fn wavenumber(&self, i: usize) -> f64 {
        2.0 * PI * self.mode(i) as f64 / self.l
    }

    /// Per-axis indices of flat point `p`, axis 0 most significant.
    pub fn unflatten(&self, mut p: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = p % self.n;
            p /= self.n;
        }
    }

    /// Coordinates of flat point `p`.
    pub fn point(&self, p: usize, out: &mut [f64]) {
        let mut idx = vec![0; self.d];
        self.unflatten(p, &mut idx);
        for (o, &j) in out.iter_mut().zip(&idx) {
            *o = self.coordinate(j);
        }
    }

    /// Wavevector at flat spectral slot `p`.
    pub fn wavevector(&self, p: usize, out: &mut [f64]) {
        let mut idx = vec![0; self.d];
        self.unflatten(p, &mut idx);
        for (o, &i) in out.iter_mut().zip(&idx) {
            *o = self.wavenumber(i);
        }
    }

    /// `|k|²` for every spectral slot.
    pub fn k_squared(&self) -> Vec<f64> {
        let mut k = vec![0.0; self.d];
        (0..self.points())
            .map(|p| {
                self.wavevector(p, &mut k);
                k.iter().map(|v| v * v).sum()
            })
            .collect()
    }

    /// `(−1)^{Σ m}` phase from shifting the box origin to `−L/2`.
    pub(crate) fn shift_sign(&self, p: usize) -> f64 {
        let mut idx = vec![0; self.d];
        self.unflatten(p, &mut idx);
        if idx.iter().sum::<usize>() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

fn transform_axis(data: &mut [Complex64], n: usize, d: usize, axis: usize, fft: &Arc<dyn Fft<f64>>) {
    let inner = n.pow((d - 1 - axis) as u32);
    data.par_chunks_mut(n * inner).for_each(|block| {
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for off in 0..inner {
            for (j, v) in line.iter_mut().enumerate() {
                *v = block[j * inner + off];
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for (j, v) in line.iter().enumerate() {
                block[j * inner + off] = *v;
            }
        }
    });
}

/// Unnormalized d-dimensional DFT in place.
pub(crate) fn fft_nd(spec: &GridSpec, data: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse { planner.plan_fft_inverse(spec.n) } else { planner.plan_fft_forward(spec.n) };
    for axis in 0..spec.d {
        transform_axis(data, spec.n, spec.d, axis, &fft);
    }
}
