use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::{fft_nd, GridSpec};
use crate::constants::Exponent;
use crate::error::{domain, Error, Result};
use crate::gmodel::GModel;
use crate::symtensor::{flatten, symmetry_orbits, unflatten, SymTensor, MAX_SYM_ORDER};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest number of stored samples (orbits × points) of a [`TensorField`].
pub const MAX_TENSOR_SAMPLES: usize = 1 << 26;

/// Complex scalar field sampled on a [`GridSpec`].
///
/// The spectrum is the quadrature of the unitary Fourier transform
/// `𝓕f(k) = (2π)^{−d/2} ∫ e^{−ik·x} f(x) dx`, stored in FFT slot order and
/// computed on first use.
#[derive(Debug, Clone)]
pub struct GridField {
    spec: GridSpec,
    values: Vec<Complex64>,
    spectrum: OnceLock<Vec<Complex64>>,
}

fn spectral_scale(spec: &GridSpec) -> f64 {
    spec.cell_volume() / (2.0 * PI).powf(spec.d() as f64 / 2.0)
}

impl GridField {
    pub fn from_values(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.points() {
            return Err(Error::DimensionMismatch { left: values.len(), right: spec.points() });
        }
        Ok(GridField { spec, values, spectrum: OnceLock::new() })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        GridField { spec, values: vec![ZERO; spec.points()], spectrum: OnceLock::new() }
    }

    /// Samples `f(x)` at every grid point.
    pub fn from_fn(spec: GridSpec, f: impl Fn(&[f64]) -> Complex64 + Sync) -> Self {
        let values = (0..spec.points())
            .into_par_iter()
            .map_init(
                || vec![0.0; spec.d()],
                |x, p| {
                    spec.point(p, x);
                    f(x)
                },
            )
            .collect();
        GridField { spec, values, spectrum: OnceLock::new() }
    }

    /// Field whose spectrum (FFT slot order) is `spectrum`.
    pub fn from_spectrum(spec: GridSpec, spectrum: Vec<Complex64>) -> Result<Self> {
        if spectrum.len() != spec.points() {
            return Err(Error::DimensionMismatch { left: spectrum.len(), right: spec.points() });
        }
        let values = inverse_transform(&spec, &spectrum);
        Ok(GridField { spec, values, spectrum: OnceLock::from(spectrum) })
    }

    /// `amplitude · e^{−|x − c|²/2}`.
    pub fn gaussian(spec: GridSpec, amplitude: f64, center: &[f64]) -> Result<Self> {
        if center.len() != spec.d() {
            return Err(Error::DimensionMismatch { left: center.len(), right: spec.d() });
        }
        Ok(GridField::from_fn(spec, |x| {
            let r2: f64 = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
            Complex64::new(amplitude * (-0.5 * r2).exp(), 0.0)
        }))
    }

    /// Bessel kernel with `𝓕f = amplitude · (1 + |k|²)^{−s}`, centred at the origin.
    ///
    /// Built from its spectrum; the values are the real part of the inverse
    /// transform (the discarded imaginary part is round-off).
    pub fn bessel_kernel(spec: GridSpec, s: f64, amplitude: f64) -> Self {
        let spectrum: Vec<Complex64> = spec
            .k_squared()
            .into_iter()
            .map(|k2| Complex64::new(amplitude * (1.0 + k2).powf(-s), 0.0))
            .collect();
        let values = inverse_transform(&spec, &spectrum).into_iter().map(|v| Complex64::new(v.re, 0.0)).collect();
        GridField { spec, values, spectrum: OnceLock::new() }
    }

    /// `e^{i k·x}` with `k = 2π·modes/L`.
    pub fn plane_wave(spec: GridSpec, modes: &[i64]) -> Result<Self> {
        if modes.len() != spec.d() {
            return Err(Error::DimensionMismatch { left: modes.len(), right: spec.d() });
        }
        let k: Vec<f64> = modes.iter().map(|&m| 2.0 * PI * m as f64 / spec.l()).collect();
        Ok(GridField::from_fn(spec, |x| {
            let phase: f64 = x.iter().zip(&k).map(|(a, b)| a * b).sum();
            Complex64::from_polar(1.0, phase)
        }))
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn spectrum(&self) -> &[Complex64] {
        self.spectrum.get_or_init(|| {
            let mut data = self.values.clone();
            fft_nd(&self.spec, &mut data, false);
            let c = spectral_scale(&self.spec);
            for (p, v) in data.iter_mut().enumerate() {
                *v *= c * self.spec.shift_sign(p);
            }
            data
        })
    }

    /// True when every sample has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &GridField) -> Result<GridField> {
        self.same_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        GridField::from_values(self.spec, values)
    }

    pub fn scale(&self, c: f64) -> GridField {
        GridField { spec: self.spec, values: self.values.iter().map(|v| v * c).collect(), spectrum: OnceLock::new() }
    }

    pub fn conj(&self) -> GridField {
        GridField { spec: self.spec, values: self.values.iter().map(|v| v.conj()).collect(), spectrum: OnceLock::new() }
    }

    fn same_grid(&self, other: &GridField) -> Result<()> {
        if self.spec != other.spec {
            return Err(domain("fields live on different grids"));
        }
        Ok(())
    }

    /// `‖f‖_n = ‖(1 + |k|²)^{n/2} 𝓕f‖_{L²}`, quadrature over the wavenumber lattice.
    pub fn sobolev_norm(&self, n: u32) -> f64 {
        let k2 = self.spec.k_squared();
        let sum: f64 = self
            .spectrum()
            .iter()
            .zip(&k2)
            .map(|(v, &k)| (1.0 + k).powi(n as i32) * v.norm_sqr())
            .sum();
        (sum * self.spec.dual_cell_volume()).sqrt()
    }

    /// `‖f‖_n = (Σ_m C(n,m)‖∇^m f‖²_{L²})^{1/2}` with the derivative norms
    /// taken in real space.
    pub fn sobolev_norm_binomial(&self, n: u32) -> Result<f64> {
        let mut sum = 0.0;
        let mut binom = 1.0;
        for m in 0..=n as usize {
            let g = self.grad_m(m)?.lp_norm(Exponent::Finite(2.0))?;
            sum += binom * g * g;
            binom = binom * (n as usize - m) as f64 / (m + 1) as f64;
        }
        Ok(sum.sqrt())
    }

    /// `‖∇^m f‖_{L²} = ‖ |k|^m 𝓕f ‖_{L²}` on the Fourier side.
    pub fn grad_l2_norm(&self, m: usize) -> f64 {
        let k2 = self.spec.k_squared();
        let sum: f64 = self
            .spectrum()
            .iter()
            .zip(&k2)
            .map(|(v, &k)| if m == 0 { v.norm_sqr() } else { k.powi(m as i32) * v.norm_sqr() })
            .sum();
        (sum * self.spec.dual_cell_volume()).sqrt()
    }

    /// `‖f‖_{L^p}` by the rectangle rule; the grid maximum for `p = ∞`.
    pub fn lp_norm(&self, p: Exponent) -> Result<f64> {
        lp_from_abs(&self.spec, self.values.iter().map(|v| v.norm()), p)
    }

    /// All `m`-th partials through the multipliers `(ik)_{λ_1}⋯(ik)_{λ_m}`.
    pub fn grad_m(&self, m: usize) -> Result<TensorField> {
        let layout = OrbitLayout::new(self.spec.d(), m, self.spec.points())?;
        let spectrum = self.spectrum();
        let d = self.spec.d();
        let n = self.spec.n();
        let ik: Vec<Complex64> = (0..n).map(|i| Complex64::new(0.0, self.spec.wavenumber(i))).collect();
        let data = layout
            .reps
            .par_iter()
            .map(|rep| {
                if m == 0 {
                    return self.values.clone();
                }
                let mut idx = vec![0; d];
                let buf: Vec<Complex64> = spectrum
                    .iter()
                    .enumerate()
                    .map(|(p, v)| {
                        self.spec.unflatten(p, &mut idx);
                        rep.iter().fold(*v, |acc, &axis| acc * ik[idx[axis]])
                    })
                    .collect();
                inverse_transform(&self.spec, &buf)
            })
            .collect();
        Ok(TensorField { spec: self.spec, order: m, layout, data })
    }

    /// Pointwise `G(f(x), x)`.
    pub fn compose(&self, model: &GModel) -> Result<GridField> {
        let max = self.max_abs();
        if max >= model.radius() {
            return Err(Error::Range { max, radius: model.radius() });
        }
        let values = (0..self.spec.points())
            .into_par_iter()
            .map_init(
                || vec![0.0; self.spec.d()],
                |x, p| {
                    self.spec.point(p, x);
                    model.evaluate(self.values[p], x)
                },
            )
            .collect::<Result<Vec<_>>>()?;
        GridField::from_values(self.spec, values)
    }
}

fn inverse_transform(spec: &GridSpec, spectrum: &[Complex64]) -> Vec<Complex64> {
    let c = 1.0 / (spectral_scale(spec) * spec.points() as f64);
    let mut data: Vec<Complex64> =
        spectrum.iter().enumerate().map(|(p, v)| v * (c * spec.shift_sign(p))).collect();
    fft_nd(spec, &mut data, true);
    data
}

fn lp_from_abs(spec: &GridSpec, abs: impl Iterator<Item = f64>, p: Exponent) -> Result<f64> {
    match p {
        Exponent::Infinity => Ok(abs.fold(0.0, f64::max)),
        Exponent::Finite(p) if p >= 1.0 => {
            let sum: f64 = abs.map(|a| a.powf(p)).sum();
            Ok((sum * spec.cell_volume()).powf(1.0 / p))
        }
        Exponent::Finite(p) => Err(domain(format!("L^p norm needs p ≥ 1, got {p}"))),
    }
}

/// Storage of a symmetric order-`m` tensor field: one array per permutation
/// orbit of multi-indices.
#[derive(Debug, Clone, PartialEq)]
struct OrbitLayout {
    dim: usize,
    order: usize,
    /// Sorted multi-index of each orbit.
    reps: Vec<Vec<usize>>,
    /// Orbit size.
    mult: Vec<usize>,
    /// Orbit of each flat component.
    orbit_of: Vec<usize>,
}

impl OrbitLayout {
    fn new(dim: usize, order: usize, points: usize) -> Result<Self> {
        if order > MAX_SYM_ORDER {
            return Err(Error::Resource(format!("tensor field order {order} exceeds the cap {MAX_SYM_ORDER}")));
        }
        let orbits = symmetry_orbits(dim, order)?;
        if orbits.len().saturating_mul(points) > MAX_TENSOR_SAMPLES {
            return Err(Error::Resource(format!(
                "{} orbits × {points} points exceed {MAX_TENSOR_SAMPLES} samples",
                orbits.len()
            )));
        }
        let mut orbit_of = vec![0; dim.pow(order as u32)];
        for (o, members) in orbits.iter().enumerate() {
            for &flat in members {
                orbit_of[flat] = o;
            }
        }
        Ok(OrbitLayout {
            dim,
            order,
            reps: orbits.iter().map(|o| unflatten(dim, order, o[0])).collect(),
            mult: orbits.iter().map(Vec::len).collect(),
            orbit_of,
        })
    }

    fn orbit_index(&self, idx: &[usize]) -> usize {
        self.orbit_of[flatten(self.dim, idx)]
    }
}

/// Symmetric tensor field `x ↦ T(x) ∈ ⊗^m C^d` on a grid.
#[derive(Debug, Clone)]
pub struct TensorField {
    spec: GridSpec,
    order: usize,
    layout: OrbitLayout,
    data: Vec<Vec<Complex64>>,
}

impl TensorField {
    /// Order-0 field carrying `f`.
    pub fn from_scalar(f: &GridField) -> TensorField {
        let layout = OrbitLayout::new(f.spec.d(), 0, 0).expect("order 0 always fits");
        TensorField { spec: f.spec, order: 0, layout, data: vec![f.values.clone()] }
    }

    /// Samples a symmetric tensor at each point, given the flat point index
    /// and its coordinates; only one component per permutation orbit is read.
    pub fn from_point_fn(
        spec: GridSpec,
        order: usize,
        f: impl Fn(usize, &[f64]) -> Result<SymTensor> + Sync,
    ) -> Result<TensorField> {
        let layout = OrbitLayout::new(spec.d(), order, spec.points())?;
        let samples = (0..spec.points())
            .into_par_iter()
            .map_init(
                || vec![0.0; spec.d()],
                |x, p| {
                    spec.point(p, x);
                    let t = f(p, x)?;
                    if t.order() != order || t.dim() != spec.d() {
                        return Err(domain("point tensor has the wrong shape"));
                    }
                    Ok(layout.reps.iter().map(|r| *t.get(r)).collect::<Vec<_>>())
                },
            )
            .collect::<Result<Vec<_>>>()?;
        let data = (0..layout.reps.len()).map(|o| samples.iter().map(|s| s[o]).collect()).collect();
        Ok(TensorField { spec, order, layout, data })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Samples of component `λ`.
    pub fn component(&self, idx: &[usize]) -> &[Complex64] {
        &self.data[self.layout.orbit_index(idx)]
    }

    /// The full tensor at flat point `p`.
    pub fn at(&self, p: usize) -> SymTensor {
        SymTensor::from_fn(self.spec.d(), self.order, |idx| self.data[self.layout.orbit_index(idx)][p])
            .expect("shape fixed at construction")
    }

    /// Pointwise Euclidean norm `|T(x)|`.
    pub fn pointwise_norm(&self) -> Vec<f64> {
        (0..self.spec.points())
            .into_par_iter()
            .map(|p| {
                self.data
                    .iter()
                    .zip(&self.layout.mult)
                    .map(|(c, &w)| w as f64 * c[p].norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }

    /// `‖ |T| ‖_{L^p}`.
    pub fn lp_norm(&self, p: Exponent) -> Result<f64> {
        lp_from_abs(&self.spec, self.pointwise_norm().into_iter(), p)
    }

    pub fn conj(&self) -> TensorField {
        let data = self.data.iter().map(|c| c.iter().map(|v| v.conj()).collect()).collect();
        TensorField { data, ..self.clone() }
    }

    fn same_shape(&self, other: &TensorField) -> Result<()> {
        if self.spec != other.spec {
            return Err(domain("tensor fields live on different grids"));
        }
        if self.order != other.order {
            return Err(Error::DimensionMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorField) -> Result<TensorField> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(TensorField { data, ..self.clone() })
    }

    pub fn scale(&self, c: f64) -> TensorField {
        let data = self.data.iter().map(|a| a.iter().map(|v| v * c).collect()).collect();
        TensorField { data, ..self.clone() }
    }

    /// Largest componentwise deviation `max_{x,λ} |T_λ(x) − U_λ(x)|`.
    pub fn max_abs_diff(&self, other: &TensorField) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max))
    }

    /// Largest component modulus over the grid.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Pointwise `T ∨ U`.
    ///
    /// For symmetric factors `(T∨U)_μ` is the mean of `T_{μ_A} U_{μ_B}` over
    /// the ways of splitting the positions of `μ` into `A` (size `ord T`) and
    /// its complement, so each output orbit is a short fixed combination of
    /// input orbits.
    pub fn vee(&self, other: &TensorField) -> Result<TensorField> {
        if self.spec != other.spec {
            return Err(domain("tensor fields live on different grids"));
        }
        let (a, b) = (self.order, other.order);
        let layout = OrbitLayout::new(self.spec.d(), a + b, self.spec.points())?;
        let splits = combinations(a + b, a);
        let weight = 1.0 / splits.len() as f64;
        let plans: Vec<Vec<(usize, usize, f64)>> = layout
            .reps
            .iter()
            .map(|rep| {
                let mut plan: Vec<(usize, usize, f64)> = Vec::new();
                for chosen in &splits {
                    let (mut left, mut right) = (Vec::with_capacity(a), Vec::with_capacity(b));
                    for (pos, &i) in rep.iter().enumerate() {
                        if chosen.contains(&pos) {
                            left.push(i);
                        } else {
                            right.push(i);
                        }
                    }
                    let key = (self.layout.orbit_index(&left), other.layout.orbit_index(&right));
                    match plan.iter_mut().find(|(l, r, _)| (*l, *r) == key) {
                        Some(entry) => entry.2 += weight,
                        None => plan.push((key.0, key.1, weight)),
                    }
                }
                plan
            })
            .collect();
        let data = plans
            .par_iter()
            .map(|plan| {
                (0..self.spec.points())
                    .map(|p| plan.iter().map(|&(l, r, w)| self.data[l][p] * other.data[r][p] * w).sum())
                    .collect()
            })
            .collect();
        Ok(TensorField { spec: self.spec, order: a + b, layout, data })
    }

    /// `∨^q T`; the constant scalar `1` for `q = 0`.
    pub fn vee_power(&self, q: usize) -> Result<TensorField> {
        let one = GridField::from_values(self.spec, vec![Complex64::new(1.0, 0.0); self.spec.points()])?;
        let mut acc = TensorField::from_scalar(&one);
        for _ in 0..q {
            acc = acc.vee(self)?;
        }
        Ok(acc)
    }
}

/// All `k`-subsets of `0..n`, lexicographic.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
