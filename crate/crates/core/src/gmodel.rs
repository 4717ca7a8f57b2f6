//! Composition functions `G(u, x)` (real) or `G(z, x)` (complex) whose
//! suprema `♭_m(G, ρ)`, `σ_{jℓ}(G, ρ)` and `σ_{hkℓ}(G, ρ)` are known in
//! closed form, or, for the Gaussian profile, from a documented radial search.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::symtensor::SymTensor;

/// Which function `G` a model describes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GKind {
    /// `G(u) = u^J`.
    RealMonomial {
        #[serde(rename = "J")]
        j: u32,
    },
    /// `G(z) = z^H z̄^K`.
    ComplexMonomial {
        #[serde(rename = "H")]
        h: u32,
        #[serde(rename = "K")]
        k: u32,
    },
    /// `G(u) = sinh u`.
    Sinh,
    /// `G(u) = Σ_i c_i u^i`.
    RealPolynomial { coeffs: Vec<f64> },
    /// `G(u, x) = u·ψ(x)` with `ψ(x) = e^{−|x|²/2}`.
    SeparableLinear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RawModel {
    #[serde(flatten)]
    kind: GKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radius: Option<f64>,
}

/// A composition function together with the radius `r` of its `u`/`z` domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModel", into = "RawModel")]
pub struct GModel {
    kind: GKind,
    radius: Option<f64>,
}

impl TryFrom<RawModel> for GModel {
    type Error = crate::Error;
    fn try_from(raw: RawModel) -> Result<Self> {
        GModel::new(raw.kind, raw.radius)
    }
}

impl From<GModel> for RawModel {
    fn from(m: GModel) -> Self {
        RawModel { kind: m.kind, radius: m.radius }
    }
}

fn falling(n: u32, k: usize) -> f64 {
    if k as u32 > n {
        return 0.0;
    }
    (0..k).map(|i| (n - i as u32) as f64).product()
}

fn binom(n: usize, k: usize) -> f64 {
    falling(n as u32, k) / falling(k as u32, k)
}

// ρ^e with e ≥ 0, reading 0^0 as 1
fn pow0(rho: f64, e: u32) -> f64 {
    rho.powi(e as i32)
}

/// Probabilists' Hermite polynomial `He_n(t)`.
pub(crate) fn hermite_he(n: usize, t: f64) -> f64 {
    let (mut a, mut b) = (1.0, t);
    if n == 0 {
        return a;
    }
    for k in 1..n {
        let c = t * b - k as f64 * a;
        a = b;
        b = c;
    }
    b
}

// Σ_{|α| = k, α ∈ N^dims} Π He_{α_i}(0)²/α_i!
fn origin_weight(k: usize, dims: usize) -> f64 {
    let he0_sq_over_fact = |a: usize| hermite_he(a, 0.0).powi(2) / falling(a as u32, a);
    let mut w = vec![0.0; k + 1];
    w[0] = 1.0;
    for _ in 0..dims {
        let mut next = vec![0.0; k + 1];
        for (total, slot) in next.iter_mut().enumerate() {
            *slot = (0..=total).map(|a| he0_sq_over_fact(a) * w[total - a]).sum();
        }
        w = next;
    }
    w[k]
}

/// `|∇^ℓ ψ|` at distance `r` from the origin, `ψ = e^{−|x|²/2}` on `R^d`.
pub(crate) fn gaussian_grad_norm_at(l: usize, d: usize, r: f64) -> f64 {
    let weights: Vec<f64> = (0..=l).map(|n| origin_weight(l - n, d - 1)).collect();
    let lf = falling(l as u32, l);
    let s: f64 = (0..=l)
        .map(|n| hermite_he(n, r).powi(2) / falling(n as u32, n) * weights[n])
        .sum();
    ((-r * r).exp() * lf * s).sqrt()
}

/// Radial grid resolution of the Gaussian-profile supremum search.
pub const PROFILE_GRID_POINTS: usize = 1 << 14;
/// Radial extent of the Gaussian-profile supremum search.
pub const PROFILE_GRID_EXTENT: f64 = 12.0;

/// `sup_x |∇^ℓ ψ(x)|` for `ψ = e^{−|x|²/2}` on `R^d`.
///
/// The tensor norm of `∇^ℓψ` is rotation invariant, so the supremum is taken
/// along one axis: first on a uniform grid of [`PROFILE_GRID_POINTS`] radii in
/// `[0, PROFILE_GRID_EXTENT]`, then refined by golden-section search in the
/// two cells around the best grid point. Values are memoized.
pub fn gaussian_profile_sup(l: usize, d: usize) -> f64 {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().expect("cache lock").get(&(l, d)) {
        return v;
    }
    let f = |r: f64| gaussian_grad_norm_at(l, d, r);
    let n = PROFILE_GRID_POINTS;
    let h = PROFILE_GRID_EXTENT / (n - 1) as f64;
    let (best_i, best) = (0..n)
        .map(|i| (i, f(i as f64 * h)))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let (mut a, mut b) = ((best_i as f64 - 1.0).max(0.0) * h, (best_i as f64 + 1.0) * h);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let c = b - g * (b - a);
        let e = a + g * (b - a);
        if f(c) >= f(e) {
            b = e;
        } else {
            a = c;
        }
    }
    let v = best.max(f(0.5 * (a + b)));
    cache.lock().expect("cache lock").insert((l, d), v);
    v
}

/// `∇^ℓ ψ(x)` as an order-ℓ tensor, `ψ = e^{−|x|²/2}`.
pub fn gaussian_profile_grad(l: usize, x: &[f64]) -> Result<SymTensor> {
    let d = x.len();
    let psi = (-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp();
    SymTensor::from_fn(d, l, |idx| {
        let mut counts = vec![0usize; d];
        for &i in idx {
            counts[i] += 1;
        }
        let mut v = psi;
        for (i, &a) in counts.iter().enumerate() {
            let sign = if a % 2 == 1 { -1.0 } else { 1.0 };
            v *= sign * hermite_he(a, x[i]);
        }
        Complex64::new(v, 0.0)
    })
}

impl GModel {
    pub fn new(kind: GKind, radius: Option<f64>) -> Result<Self> {
        match &kind {
            GKind::RealMonomial { j } if *j == 0 => {
                return Err(domain("real monomial needs J ≥ 1 (G(0) = 0)"))
            }
            GKind::ComplexMonomial { h, k } if h + k == 0 => {
                return Err(domain("complex monomial needs H + K ≥ 1 (G(0) = 0)"))
            }
            GKind::RealPolynomial { coeffs } => {
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(domain("polynomial coefficients must be finite"));
                }
            }
            _ => {}
        }
        if let Some(r) = radius {
            if !(r > 0.0) {
                return Err(domain(format!("model radius must be positive, got {r}")));
            }
        }
        Ok(GModel { kind, radius: radius.filter(|r| r.is_finite()) })
    }

    pub fn sinh() -> Self {
        GModel { kind: GKind::Sinh, radius: None }
    }

    pub fn real_monomial(j: u32) -> Result<Self> {
        GModel::new(GKind::RealMonomial { j }, None)
    }

    pub fn complex_monomial(h: u32, k: u32) -> Result<Self> {
        GModel::new(GKind::ComplexMonomial { h, k }, None)
    }

    pub fn real_polynomial(coeffs: Vec<f64>) -> Result<Self> {
        GModel::new(GKind::RealPolynomial { coeffs }, None)
    }

    pub fn separable_linear() -> Self {
        GModel { kind: GKind::SeparableLinear, radius: None }
    }

    pub fn with_radius(self, radius: f64) -> Result<Self> {
        GModel::new(self.kind, Some(radius))
    }

    pub fn kind(&self) -> &GKind {
        &self.kind
    }

    /// `r`, `+∞` when unbounded.
    pub fn radius(&self) -> f64 {
        self.radius.unwrap_or(f64::INFINITY)
    }

    /// True for `z^H z̄^K`; every other kind takes a real argument `u`.
    pub fn is_complex(&self) -> bool {
        matches!(self.kind, GKind::ComplexMonomial { .. })
    }

    pub fn is_x_independent(&self) -> bool {
        !matches!(self.kind, GKind::SeparableLinear)
    }

    /// Short label used in reports.
    pub fn name(&self) -> String {
        match &self.kind {
            GKind::RealMonomial { j } => format!("u^{j}"),
            GKind::ComplexMonomial { h, k } => format!("z^{h}·conj(z)^{k}"),
            GKind::Sinh => "sinh".into(),
            GKind::RealPolynomial { coeffs } => format!("poly{coeffs:?}"),
            GKind::SeparableLinear => "u·psi(x)".into(),
        }
    }

    fn check_rho(&self, rho: f64) -> Result<()> {
        if !(rho >= 0.0) || !rho.is_finite() {
            return Err(domain(format!("ρ must be finite and ≥ 0, got {rho}")));
        }
        if rho >= self.radius() {
            return Err(domain(format!("ρ = {rho} is not below the model radius {}", self.radius())));
        }
        Ok(())
    }

    fn check_value(&self, value: Complex64) -> Result<()> {
        if !self.is_complex() && value.im != 0.0 {
            return Err(domain(format!("{} takes a real argument, got {value}", self.name())));
        }
        if !(value.norm() < self.radius()) {
            return Err(domain(format!("|value| = {} is not below the model radius {}", value.norm(), self.radius())));
        }
        Ok(())
    }

    /// `♭_m(G, ρ)`; at `ρ = 0` the limit value.
    pub fn flat_m(&self, m: usize, rho: f64, d: usize) -> Result<f64> {
        self.check_rho(rho)?;
        if m >= 1 && self.is_x_independent() {
            return Ok(0.0);
        }
        Ok(match &self.kind {
            GKind::RealMonomial { j } => pow0(rho, j - 1),
            GKind::ComplexMonomial { h, k } => pow0(rho, h + k - 1),
            GKind::Sinh => {
                if rho == 0.0 {
                    1.0
                } else {
                    rho.sinh() / rho
                }
            }
            GKind::RealPolynomial { coeffs } => coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.abs() * pow0(rho, i as u32 - 1))
                .sum(),
            GKind::SeparableLinear => gaussian_profile_sup(m, d),
        })
    }

    /// `σ_{jℓ}(G, ρ)`. For the complex kind this is `Σ_h C(j,h)·σ_{h,j−h,ℓ}`.
    pub fn sigma_jl(&self, j: usize, l: usize, rho: f64, d: usize) -> Result<f64> {
        self.check_rho(rho)?;
        if j == 0 {
            return Err(domain("σ_{jℓ} is indexed by j ≥ 1"));
        }
        if self.is_complex() {
            let mut total = 0.0;
            for h in 0..=j {
                total += binom(j, h) * self.sigma_hkl(h, j - h, l, rho, d)?;
            }
            return Ok(total);
        }
        if l >= 1 && self.is_x_independent() {
            return Ok(0.0);
        }
        Ok(match &self.kind {
            GKind::RealMonomial { j: big_j } => falling(*big_j, j) * pow0(rho, big_j.saturating_sub(j as u32)),
            GKind::Sinh => {
                if j % 2 == 1 {
                    rho.cosh()
                } else {
                    rho.sinh()
                }
            }
            GKind::RealPolynomial { coeffs } => coeffs
                .iter()
                .enumerate()
                .skip(j)
                .map(|(i, c)| c.abs() * falling(i as u32, j) * pow0(rho, (i - j) as u32))
                .sum(),
            GKind::SeparableLinear => {
                if j == 1 {
                    gaussian_profile_sup(l, d)
                } else {
                    0.0
                }
            }
            GKind::ComplexMonomial { .. } => unreachable!("handled above"),
        })
    }

    /// `σ_{hkℓ}(G, ρ) = sup_{|z| ≤ ρ, x} |∂^h ∂̄^k ∇^ℓ G|`. For real kinds only
    /// `k = 0` is meaningful and coincides with `σ_{hℓ}`.
    pub fn sigma_hkl(&self, h: usize, k: usize, l: usize, rho: f64, d: usize) -> Result<f64> {
        self.check_rho(rho)?;
        match &self.kind {
            GKind::ComplexMonomial { h: big_h, k: big_k } => {
                if l >= 1 || h as u32 > *big_h || k as u32 > *big_k {
                    return Ok(0.0);
                }
                Ok(falling(*big_h, h) * falling(*big_k, k) * pow0(rho, big_h + big_k - (h + k) as u32))
            }
            _ => {
                if k > 0 {
                    return Err(domain(format!("{} has no ∂̄ derivatives", self.name())));
                }
                if h == 0 {
                    return Err(domain("σ_{hkℓ} of a real kind needs h ≥ 1"));
                }
                self.sigma_jl(h, l, rho, d)
            }
        }
    }

    /// `G(value, x)`; `x` is ignored by the x-independent kinds.
    pub fn evaluate(&self, value: Complex64, x: &[f64]) -> Result<Complex64> {
        self.partial_derivative(0, 0, value, x)
    }

    /// `∂^h ∂̄^k G(value, x)` from closed forms. Real kinds reject `k > 0`.
    pub fn partial_derivative(&self, h: usize, k: usize, value: Complex64, x: &[f64]) -> Result<Complex64> {
        self.check_value(value)?;
        if k > 0 && !self.is_complex() {
            return Err(domain(format!("{} is a function of a real variable; ∂̄ is undefined", self.name())));
        }
        let u = value.re;
        let real = |v: f64| Ok(Complex64::new(v, 0.0));
        match &self.kind {
            GKind::RealMonomial { j } => {
                if h as u32 > *j {
                    return real(0.0);
                }
                real(falling(*j, h) * u.powi((*j - h as u32) as i32))
            }
            GKind::ComplexMonomial { h: big_h, k: big_k } => {
                if h as u32 > *big_h || k as u32 > *big_k {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                let c = falling(*big_h, h) * falling(*big_k, k);
                Ok(value.powu(big_h - h as u32) * value.conj().powu(big_k - k as u32) * c)
            }
            GKind::Sinh => real(if h.is_multiple_of(2) { u.sinh() } else { u.cosh() }),
            GKind::RealPolynomial { coeffs } => real(
                coeffs
                    .iter()
                    .enumerate()
                    .skip(h)
                    .map(|(i, c)| c * falling(i as u32, h) * u.powi((i - h) as i32))
                    .sum(),
            ),
            GKind::SeparableLinear => {
                let psi = (-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp();
                match h {
                    0 => real(u * psi),
                    1 => real(psi),
                    _ => real(0.0),
                }
            }
        }
    }

    /// `∂^h ∂̄^k ∇^ℓ G(value, x)` as an order-ℓ tensor over `d = x.len()`.
    pub fn derivative_tensor(&self, h: usize, k: usize, l: usize, value: Complex64, x: &[f64]) -> Result<SymTensor> {
        let d = x.len();
        if d == 0 {
            return Err(domain("x must have at least one coordinate"));
        }
        if l == 0 {
            return Ok(SymTensor::scalar(d, self.partial_derivative(h, k, value, x)?));
        }
        self.check_value(value)?;
        if k > 0 && !self.is_complex() {
            return Err(domain(format!("{} is a function of a real variable; ∂̄ is undefined", self.name())));
        }
        match &self.kind {
            GKind::SeparableLinear => {
                let grad = gaussian_profile_grad(l, x)?;
                Ok(match h {
                    0 => grad.scale(&Complex64::new(value.re, 0.0)),
                    1 => grad,
                    _ => SymTensor::zeros(d, l)?,
                })
            }
            _ => SymTensor::zeros(d, l),
        }
    }
}

impl fmt::Display for GModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn flat_examples() {
        let s = GModel::sinh();
        assert_relative_eq!(s.flat_m(0, 1.3, 1).unwrap(), 1.3f64.sinh() / 1.3, max_relative = 1e-15);
        assert_eq!(s.flat_m(0, 0.0, 1).unwrap(), 1.0);
        assert_eq!(s.flat_m(2, 0.7, 3).unwrap(), 0.0);
        let c = GModel::complex_monomial(2, 1).unwrap();
        assert_relative_eq!(c.flat_m(0, 1.5, 2).unwrap(), 1.5f64.powi(2), max_relative = 1e-15);
        assert_eq!(GModel::complex_monomial(1, 0).unwrap().flat_m(0, 0.0, 1).unwrap(), 1.0);
        assert_eq!(GModel::real_monomial(3).unwrap().flat_m(0, 0.0, 1).unwrap(), 0.0);
        let lin = GModel::separable_linear();
        assert_eq!(lin.flat_m(0, 0.4, 1).unwrap(), 1.0);
        assert_relative_eq!(lin.flat_m(1, 0.4, 1).unwrap(), (-0.5f64).exp(), max_relative = 1e-12);
    }

    #[test]
    fn sigma_examples() {
        let s = GModel::sinh();
        assert_relative_eq!(s.sigma_jl(1, 0, 0.8, 1).unwrap(), 0.8f64.cosh(), max_relative = 1e-15);
        assert_relative_eq!(s.sigma_jl(2, 0, 0.8, 1).unwrap(), 0.8f64.sinh(), max_relative = 1e-15);
        assert_eq!(s.sigma_jl(1, 1, 0.8, 1).unwrap(), 0.0);
        let c = GModel::complex_monomial(1, 1).unwrap();
        assert_eq!(c.sigma_jl(2, 0, 0.9, 1).unwrap(), 2.0);
        assert_eq!(c.sigma_jl(3, 0, 0.9, 1).unwrap(), 0.0);
        assert_eq!(c.sigma_jl(1, 1, 0.9, 2).unwrap(), 0.0);
        assert_eq!(GModel::real_monomial(3).unwrap().sigma_jl(2, 0, 2.0, 1).unwrap(), 12.0);
        let lin = GModel::separable_linear();
        assert_eq!(lin.sigma_jl(2, 0, 1.0, 1).unwrap(), 0.0);
        assert_eq!(lin.sigma_jl(1, 0, 1.0, 1).unwrap(), 1.0);
    }

    #[test]
    fn complex_sigma_closed_form_matches_binomial_sum() {
        // at ρ = 1 all terms are integers, so float sums are exact
        for big_h in 0..=4u32 {
            for big_k in 0..=4u32 {
                if big_h + big_k == 0 {
                    continue;
                }
                let g = GModel::complex_monomial(big_h, big_k).unwrap();
                let big_j = big_h + big_k;
                for j in 1..=6usize {
                    let closed = falling(big_j, j);
                    assert_eq!(g.sigma_jl(j, 0, 1.0, 1).unwrap(), closed, "H={big_h} K={big_k} j={j}");
                }
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(GModel::sinh().evaluate(z(0.0, 0.0), &[0.3]).unwrap(), z(0.0, 0.0));
        let c = GModel::complex_monomial(2, 1).unwrap();
        let v = c.evaluate(z(1.0, 1.0), &[]).unwrap();
        assert!((v - z(2.0, 2.0)).norm() < 1e-15);
        let lin = GModel::separable_linear();
        let x = [0.5, -1.0];
        assert_relative_eq!(lin.evaluate(z(2.0, 0.0), &x).unwrap().re, 2.0 * (-0.625f64).exp(), max_relative = 1e-15);
        assert!(GModel::sinh().evaluate(z(0.1, 0.2), &[0.0]).is_err());
        let bounded = GModel::sinh().with_radius(1.0).unwrap();
        assert!(bounded.evaluate(z(1.0, 0.0), &[0.0]).is_err());
        assert!(bounded.flat_m(0, 1.0, 1).is_err());
    }

    #[test]
    fn partial_derivative_examples() {
        let c = GModel::complex_monomial(2, 1).unwrap();
        let p = z(0.3, -0.7);
        assert!((c.partial_derivative(2, 0, p, &[]).unwrap() - 2.0 * p.conj()).norm() < 1e-15);
        assert_eq!(c.partial_derivative(3, 0, p, &[]).unwrap(), z(0.0, 0.0));
        assert_eq!(c.partial_derivative(0, 2, p, &[]).unwrap(), z(0.0, 0.0));
        assert_relative_eq!(GModel::sinh().partial_derivative(1, 0, z(0.4, 0.0), &[]).unwrap().re, 0.4f64.cosh());
        assert!(GModel::sinh().partial_derivative(0, 1, z(0.4, 0.0), &[]).is_err());
        let poly = GModel::real_polynomial(vec![0.0, 1.0, 0.0, -2.0]).unwrap();
        assert_eq!(poly.partial_derivative(1, 0, z(1.0, 0.0), &[]).unwrap(), z(-5.0, 0.0));
    }

    #[test]
    fn gaussian_profile_one_dimension() {
        assert_eq!(gaussian_profile_sup(0, 1), 1.0);
        assert_relative_eq!(gaussian_profile_sup(1, 1), (-0.5f64).exp(), max_relative = 1e-12);
        // |ψ''| = |x² − 1|ψ peaks at 0 with value 1
        assert_relative_eq!(gaussian_profile_sup(2, 1), 1.0, max_relative = 1e-12);
        // |∇ψ| in any d is |x|ψ, same sup
        assert_relative_eq!(gaussian_profile_sup(1, 3), (-0.5f64).exp(), max_relative = 1e-12);
        // at the origin |∇²ψ| = |identity| = sqrt(d)
        assert!(gaussian_profile_sup(2, 2) >= 2f64.sqrt() * (1.0 - 1e-15));
    }

    #[test]
    fn radial_formula_matches_tensor_norm() {
        for d in 1..=3 {
            for l in 0..=4 {
                for &r in &[0.0, 0.7, 1.9, 3.2] {
                    let mut x = vec![0.0; d];
                    x[0] = r;
                    let t = gaussian_profile_grad(l, &x).unwrap().norm();
                    assert_relative_eq!(gaussian_grad_norm_at(l, d, r), t, max_relative = 1e-12, epsilon = 1e-300);
                }
                // off-axis point of the same radius
                if d >= 2 {
                    let mut x = vec![0.0; d];
                    x[0] = 0.6;
                    x[1] = -0.8;
                    let t = gaussian_profile_grad(l, &x).unwrap().norm();
                    assert_relative_eq!(gaussian_grad_norm_at(l, d, 1.0), t, max_relative = 1e-12);
                }
            }
        }
    }

    // Dense sampling of |∂^h ∂̄^k ∇^ℓ G| over |z| ≤ ρ and a compact x-box.
    fn sampled_sup(g: &GModel, h: usize, k: usize, l: usize, rho: f64, d: usize) -> f64 {
        let mut best: f64 = 0.0;
        let xs: Vec<Vec<f64>> = match d {
            _ if g.is_x_independent() => vec![vec![0.0; d]],
            1 => (0..=120).map(|i| vec![-4.0 + i as f64 / 15.0]).collect(),
            _ => (0..=40)
                .flat_map(|i| (0..=40).map(move |j| vec![-4.0 + i as f64 * 0.2, -4.0 + j as f64 * 0.2]))
                .collect(),
        };
        let values: Vec<Complex64> = if g.is_complex() {
            (0..=12)
                .flat_map(|a| (0..24).map(move |b| Complex64::from_polar(rho * a as f64 / 12.0, b as f64 * std::f64::consts::TAU / 24.0)))
                .collect()
        } else {
            (0..=48).map(|a| Complex64::new(rho * (-1.0 + a as f64 / 24.0), 0.0)).collect()
        };
        for v in &values {
            for x in &xs {
                let t = g.derivative_tensor(h, k, l, *v, x).unwrap();
                best = best.max(t.norm());
            }
        }
        best
    }

    #[test]
    fn sampled_suprema_within_bounds() {
        let models = vec![
            GModel::sinh(),
            GModel::real_monomial(3).unwrap(),
            GModel::complex_monomial(2, 1).unwrap(),
            GModel::complex_monomial(1, 1).unwrap(),
            GModel::real_polynomial(vec![0.0, 1.0, -0.5, 0.25]).unwrap(),
            GModel::separable_linear(),
        ];
        for g in &models {
            for d in 1..=2 {
                for &rho in &[0.5, 1.0, 2.0] {
                    for j in 1..=4usize {
                        for l in 0..=(4 - j) {
                            if g.is_complex() {
                                for h in 0..=j {
                                    let bound = g.sigma_hkl(h, j - h, l, rho, d).unwrap();
                                    let s = sampled_sup(g, h, j - h, l, rho, d);
                                    assert!(s <= bound * (1.0 + 1e-9) + 1e-300, "{g} h={h} k={} l={l}", j - h);
                                }
                            } else {
                                let bound = g.sigma_jl(j, l, rho, d).unwrap();
                                let s = sampled_sup(g, j, 0, l, rho, d);
                                assert!(s <= bound * (1.0 + 1e-9) + 1e-300, "{g} j={j} l={l} d={d}: {s} > {bound}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn suprema_nondecreasing_in_rho() {
        let models = vec![
            GModel::sinh(),
            GModel::real_monomial(4).unwrap(),
            GModel::complex_monomial(1, 2).unwrap(),
            GModel::real_polynomial(vec![0.0, -1.0, 0.5]).unwrap(),
            GModel::separable_linear(),
        ];
        for g in &models {
            for j in 1..=3 {
                for l in 0..=2 {
                    let mut prev = 0.0;
                    for i in 0..100 {
                        let rho = i as f64 * 0.03;
                        let v = g.sigma_jl(j, l, rho, 2).unwrap();
                        assert!(v >= prev, "{g} σ_{j}{l} at {rho}");
                        prev = v;
                    }
                }
            }
            for m in 0..=3 {
                let mut prev = 0.0;
                for i in 0..100 {
                    let rho = i as f64 * 0.03;
                    let v = g.flat_m(m, rho, 2).unwrap();
                    assert!(v >= prev, "{g} ♭_{m} at {rho}");
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let g: GModel = serde_json::from_str(r#"{"kind":"complex_monomial","H":2,"K":1}"#).unwrap();
        assert_eq!(g, GModel::complex_monomial(2, 1).unwrap());
        let s: GModel = toml::from_str("kind = \"sinh\"\nradius = 3.0").unwrap();
        assert_eq!(s.radius(), 3.0);
        let back: GModel = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<GModel>(r#"{"kind":"complex_monomial","H":0,"K":0}"#).is_err());
        assert!(serde_json::from_str::<GModel>(r#"{"kind":"sinh","radius":-1}"#).is_err());
    }
}
