//! The quantitative tame bound for composition operators.
//!
//! For `ρ = S_ad‖f‖_a` below the model radius,
//!
//! ```text
//! ‖G(f,x) − G(0,x)‖_n ≤ γ_nd(G,ρ)·‖f‖_n + c_nd(G,ρ)·‖f‖_{L²}
//! ‖∇^m G(f,x) − ∇^m G(0,x)‖_{L²} ≤ X_m + Y_m           (0 ≤ m ≤ n)
//! ```
//!
//! with `X_0 = ♭_0‖f‖_{L²}`, `X_m = β_md‖∇^m f‖_{L²}`, `Y_0 = 0` and
//! `Y_m = (b_md + ♭_m)‖f‖_{L²}`.
//!
//! `β_md` and `b_md` substitute `ν_{jℓ} = w_{jℓ}·U_{m−ℓ,jd}·σ_{jℓ}(ρ)/ρ` into
//! `P_m`; the `1/ρ` is cancelled against `ρ^j` before evaluation, which gives
//! the `ρ → 0` limit directly (only `j = 1` terms survive there).

use serde::{Deserialize, Serialize};

use crate::combinatorics::pm_polynomial_shared;
use crate::constants::{adams_frazier_u, embedding_constant, EmbeddingParams};
use crate::error::{domain, Error, Result};
use crate::gmodel::GModel;

/// Knobs shared by every estimate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    /// Replace every `U_{m−ℓ,jd}` by `1`; the bound only gets weaker.
    pub freeze_u: bool,
}

fn u_const(m: usize, j: usize, d: usize, opts: Options) -> Result<f64> {
    if opts.freeze_u {
        Ok(1.0)
    } else {
        adams_frazier_u(m, j, d)
    }
}

// Σ P_{mjℓ}·w(ℓ)·U_{m−ℓ,jd}·σ_{jℓ}(ρ)·ρ^{j−1}
fn substituted(
    model: &GModel,
    m: usize,
    d: usize,
    rho: f64,
    opts: Options,
    weight: impl Fn(usize) -> f64,
) -> Result<f64> {
    if m == 0 {
        return Err(domain("β_md and b_md are indexed by m ≥ 1"));
    }
    let poly = pm_polynomial_shared(m)?;
    let mut nu = std::collections::HashMap::new();
    for (j, l, _) in poly.iter() {
        let w = weight(l);
        let v = if w == 0.0 {
            0.0
        } else {
            w * u_const(m - l, j, d, opts)? * model.sigma_jl(j, l, rho, d)?
        };
        nu.insert((j, l), v);
    }
    Ok(poly.evaluate_over_rho(|j, l| nu[&(j, l)], rho))
}

/// `β_md(G, ρ)`.
pub fn beta_md(model: &GModel, m: usize, d: usize, rho: f64) -> Result<f64> {
    beta_md_with(model, m, d, rho, Options::default())
}

pub fn beta_md_with(model: &GModel, m: usize, d: usize, rho: f64, opts: Options) -> Result<f64> {
    substituted(model, m, d, rho, opts, |l| 1.0 - l as f64 / m as f64)
}

/// `b_md(G, ρ)`; the `ν_{j0}` entries vanish through the weight `ℓ/m`.
pub fn b_md(model: &GModel, m: usize, d: usize, rho: f64) -> Result<f64> {
    b_md_with(model, m, d, rho, Options::default())
}

pub fn b_md_with(model: &GModel, m: usize, d: usize, rho: f64, opts: Options) -> Result<f64> {
    substituted(model, m, d, rho, opts, |l| l as f64 / m as f64)
}

/// `γ_nd = max(♭_0, β_1d, …, β_nd)`; `♭_0` for `n = 0`.
pub fn gamma_nd(model: &GModel, n: usize, d: usize, rho: f64) -> Result<f64> {
    gamma_nd_with(model, n, d, rho, Options::default())
}

pub fn gamma_nd_with(model: &GModel, n: usize, d: usize, rho: f64, opts: Options) -> Result<f64> {
    let mut g = model.flat_m(0, rho, d)?;
    for m in 1..=n {
        g = g.max(beta_md_with(model, m, d, rho, opts)?);
    }
    Ok(g)
}

/// `c_nd = sqrt(Σ_{m=1}^n C(n,m)·(b_md + ♭_m)²)`; `0` for `n = 0`.
pub fn c_nd(model: &GModel, n: usize, d: usize, rho: f64) -> Result<f64> {
    c_nd_with(model, n, d, rho, Options::default())
}

pub fn c_nd_with(model: &GModel, n: usize, d: usize, rho: f64, opts: Options) -> Result<f64> {
    let mut sum = 0.0;
    for m in 1..=n {
        let y = b_md_with(model, m, d, rho, opts)? + model.flat_m(m, rho, d)?;
        sum += binomial_f64(n, m) * y * y;
    }
    Ok(sum.sqrt())
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64).round()
}

/// Norms of a field that enter the bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldNorms {
    /// `‖f‖_a`
    pub norm_a: f64,
    /// `‖f‖_n`
    pub norm_n: f64,
    /// `‖f‖_{L²}`
    pub norm_l2: f64,
    /// `‖∇^m f‖_{L²}` for `m = 0..=n`; may be empty, in which case the
    /// per-order bounds carry coefficients only.
    #[serde(default)]
    pub grad_l2: Vec<f64>,
}

/// Coefficients and values of the order-`m` bound `X_m + Y_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderBound {
    pub m: usize,
    /// `♭_0` for `m = 0`, else `β_md`.
    pub x_coeff: f64,
    /// `0` for `m = 0`, else `b_md + ♭_m`.
    pub y_coeff: f64,
    pub x: Option<f64>,
    pub y: Option<f64>,
}

impl OrderBound {
    /// `X_m + Y_m` when the gradient norm was supplied.
    pub fn rhs(&self) -> Option<f64> {
        Some(self.x? + self.y?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub model: String,
    pub n: usize,
    pub a: u32,
    pub d: u32,
    pub s_ad: f64,
    pub norm_a: f64,
    pub norm_n: f64,
    pub norm_l2: f64,
    /// `ρ = S_ad·‖f‖_a`
    pub rho: f64,
    pub gamma_nd: f64,
    pub c_nd: f64,
    /// `Υ = γ_nd + c_nd`
    pub upsilon: f64,
    /// `γ_nd‖f‖_n + c_nd‖f‖_{L²}`
    pub strong_rhs: f64,
    /// `Υ‖f‖_n`
    pub weak_rhs: f64,
    pub freeze_u: bool,
    pub per_order: Vec<OrderBound>,
}

fn check_norm(name: &str, v: f64) -> Result<()> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(domain(format!("{name} must be finite and ≥ 0, got {v}")));
    }
    Ok(())
}

/// The full tame bound for `f` with the given norms.
pub fn tame_bound(
    model: &GModel,
    n: usize,
    params: EmbeddingParams,
    norms: &FieldNorms,
    opts: Options,
) -> Result<BoundReport> {
    check_norm("‖f‖_a", norms.norm_a)?;
    check_norm("‖f‖_n", norms.norm_n)?;
    check_norm("‖f‖_L²", norms.norm_l2)?;
    for &g in &norms.grad_l2 {
        check_norm("‖∇^m f‖_L²", g)?;
    }
    if !norms.grad_l2.is_empty() && norms.grad_l2.len() != n + 1 {
        return Err(Error::DimensionMismatch { left: norms.grad_l2.len(), right: n + 1 });
    }
    let d = params.d() as usize;
    let s_ad = embedding_constant(params);
    let rho = s_ad * norms.norm_a;
    if rho >= model.radius() {
        return Err(Error::Ball { rho, radius: model.radius() });
    }
    let gamma = gamma_nd_with(model, n, d, rho, opts)?;
    let c = c_nd_with(model, n, d, rho, opts)?;
    let mut per_order = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let (x_coeff, y_coeff) = if m == 0 {
            (model.flat_m(0, rho, d)?, 0.0)
        } else {
            (
                beta_md_with(model, m, d, rho, opts)?,
                b_md_with(model, m, d, rho, opts)? + model.flat_m(m, rho, d)?,
            )
        };
        let grad = norms.grad_l2.get(m).copied();
        per_order.push(OrderBound {
            m,
            x_coeff,
            y_coeff,
            x: grad.map(|g| x_coeff * g),
            y: grad.map(|_| y_coeff * norms.norm_l2),
        });
    }
    Ok(BoundReport {
        model: model.name(),
        n,
        a: params.a(),
        d: params.d(),
        s_ad,
        norm_a: norms.norm_a,
        norm_n: norms.norm_n,
        norm_l2: norms.norm_l2,
        rho,
        gamma_nd: gamma,
        c_nd: c,
        upsilon: gamma + c,
        strong_rhs: gamma * norms.norm_n + c * norms.norm_l2,
        weak_rhs: (gamma + c) * norms.norm_n,
        freeze_u: opts.freeze_u,
        per_order,
    })
}

fn falling(n: usize, k: usize) -> f64 {
    (0..k).map(|i| (n - i) as f64).product()
}

/// `B^J_md = P_m(ν_{j0} = J!/(J−j)!·U_mjd, ν_{jℓ} = 0 for ℓ ≥ 1, ρ = 1)`.
pub fn monomial_b(big_j: usize, m: usize, d: usize) -> Result<f64> {
    monomial_b_with(big_j, m, d, Options::default())
}

pub fn monomial_b_with(big_j: usize, m: usize, d: usize, opts: Options) -> Result<f64> {
    if big_j == 0 || m == 0 {
        return Err(domain(format!("B^J_md needs J ≥ 1 and m ≥ 1, got J={big_j}, m={m}")));
    }
    let poly = pm_polynomial_shared(m)?;
    let mut total = 0.0;
    for j in 1..=m.min(big_j) {
        let p = crate::combinatorics::to_f64(poly.coeff(j, 0).expect("in range"));
        total += p * falling(big_j, j) * u_const(m, j, d, opts)?;
    }
    Ok(total)
}

/// `Γ^J_nd = max(1, B^J_1d, …, B^J_nd)`.
pub fn monomial_gamma(big_j: usize, n: usize, d: usize) -> Result<f64> {
    monomial_gamma_with(big_j, n, d, Options::default())
}

pub fn monomial_gamma_with(big_j: usize, n: usize, d: usize, opts: Options) -> Result<f64> {
    let mut g: f64 = 1.0;
    for m in 1..=n {
        g = g.max(monomial_b_with(big_j, m, d, opts)?);
    }
    Ok(g)
}
