//! Explicit numeric constants: `E(s)`, the sharp embedding constant `S_ad`,
//! the Adams–Frazier constants `U_mjd`, the sharp Hausdorff–Young constant
//! `C_rd` and the Gagliardo-type constant.
//!
//! Products of `E`-ratios are formed in log space.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// `ln E(s) = s ln s`, with the limit value `0` at `s = 0`.
fn ln_e(s: f64) -> f64 {
    if s == 0.0 {
        0.0
    } else {
        s * s.ln()
    }
}

/// `E(s) = s^s` for `s > 0` and `E(0) = 1`.
pub fn func_e(s: f64) -> Result<f64> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(domain(format!("E(s) needs finite s ≥ 0, got {s}")));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    Ok(s.powf(s))
}

/// `ln Γ(n/2)` for a positive integer `n`, summed exactly term by term.
fn ln_gamma_half_integer(n: u64) -> f64 {
    debug_assert!(n >= 1);
    if n % 2 == 0 {
        // Γ(k) = (k − 1)!
        (2..n / 2).map(|t| (t as f64).ln()).sum()
    } else {
        // Γ(k + 1/2) = √π · Π_{t<k} (t + 1/2)
        0.5 * PI.ln() + (0..(n - 1) / 2).map(|t| (t as f64 + 0.5).ln()).sum::<f64>()
    }
}

/// `Γ(x)` for `x > 0`. Integers and half-integers go through the exact
/// product formula; other arguments use a Lanczos approximation.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("Γ(x) is only provided for finite x > 0, got {x}")));
    }
    let twice = 2.0 * x;
    if twice.fract() == 0.0 && twice < 340.0 {
        return Ok(ln_gamma_half_integer(twice as u64).exp());
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// Sobolev order `a` and dimension `d` with `a > d/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingParams {
    a: u32,
    d: u32,
}

impl EmbeddingParams {
    pub fn new(a: u32, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(domain("dimension d must be ≥ 1"));
        }
        if 2 * a <= d {
            return Err(domain(format!(
                "S_ad needs a > d/2 (Γ(a − d/2) diverges otherwise); got a={a}, d={d}"
            )));
        }
        Ok(EmbeddingParams { a, d })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// The smallest integer `a` with `a > d/2`.
    pub fn minimal(d: u32) -> Result<Self> {
        EmbeddingParams::new(d / 2 + 1, d)
    }
}

/// `S_ad = (4π)^{−d/4}·sqrt(Γ(a − d/2)/Γ(a))`, the sharp constant in
/// `‖f‖_{L^∞} ≤ S_ad ‖f‖_a`.
pub fn embedding_constant(params: EmbeddingParams) -> f64 {
    let (a, d) = (params.a as u64, params.d as u64);
    let ln_ratio = ln_gamma_half_integer(2 * a - d) - ln_gamma_half_integer(2 * a);
    (-(d as f64) / 4.0 * (4.0 * PI).ln() + 0.5 * ln_ratio).exp()
}

/// `U_mjd = (E(1/2 − t)/E(1/2 + t))^{d/2} · (E(1/(2m))/E(1 − 1/(2m)))^{(j−1)d/2}`
/// with `t = (j − 1)/(2m)`; always in `(0, 1]`.
pub fn adams_frazier_u(m: usize, j: usize, d: usize) -> Result<f64> {
    if j == 0 || j > m {
        return Err(domain(format!("U_mjd needs 1 ≤ j ≤ m, got m={m}, j={j}")));
    }
    if d == 0 {
        return Err(domain("dimension d must be ≥ 1"));
    }
    let (mf, jf, df) = (m as f64, j as f64, d as f64);
    let t = (jf - 1.0) / (2.0 * mf);
    let first = ln_e(0.5 - t) - ln_e(0.5 + t);
    let s = 1.0 / (2.0 * mf);
    let second = ln_e(s) - ln_e(1.0 - s);
    Ok((df / 2.0 * first + (jf - 1.0) * df / 2.0 * second).exp())
}

/// A Lebesgue exponent in `[1, ∞]`, with `∞` as its own variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// `1/r`, which is `0` for `r = ∞`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(r) => 1.0 / r,
            Exponent::Infinity => 0.0,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(r) => write!(f, "{r}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => other
                .parse::<f64>()
                .map(Exponent::Finite)
                .map_err(|_| domain(format!("not an exponent: {other:?}"))),
        }
    }
}

/// `C_rd = (2π)^{−(d/2 − d/r)}·(E(1/r)/E(1 − 1/r))^{d/2}`, the sharp constant in
/// `‖F^{−1}T‖_{L^r} ≤ C_rd ‖T‖_{L^p}`, `1/p + 1/r = 1`.
pub fn hausdorff_young_c(r: Exponent, d: usize) -> Result<f64> {
    if let Exponent::Finite(v) = r {
        if !(v >= 2.0) || !v.is_finite() {
            return Err(domain(format!("C_rd needs r ∈ [2, ∞], got {v}")));
        }
    }
    if d == 0 {
        return Err(domain("dimension d must be ≥ 1"));
    }
    let inv = r.reciprocal();
    let df = d as f64;
    let ln = -(df / 2.0 - df * inv) * (2.0 * PI).ln() + df / 2.0 * (ln_e(inv) - ln_e(1.0 - inv));
    Ok(ln.exp())
}

/// `(E(ℓ/(2m))/E(1 − ℓ/(2m)))^{d/2}`, the constant of the Gagliardo-type bound
/// on `‖∇^ℓ f‖_{L^{2m/ℓ}}`. For `ℓ = m = 0` the ratio is read as `ℓ/m = 1`.
pub fn gagliardo_constant(l: usize, m: usize, d: usize) -> Result<f64> {
    if l > m {
        return Err(domain(format!("Gagliardo constant needs ℓ ≤ m, got ℓ={l}, m={m}")));
    }
    let s = if m == 0 { 0.5 } else { l as f64 / (2.0 * m as f64) };
    Ok((d as f64 / 2.0 * (ln_e(s) - ln_e(1.0 - s))).exp())
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn s(a: u32, d: u32) -> f64 {
        embedding_constant(EmbeddingParams::new(a, d).unwrap())
    }

    #[test]
    fn e_examples() {
        assert_eq!(func_e(0.0).unwrap(), 1.0);
        assert_eq!(func_e(1.0).unwrap(), 1.0);
        assert_relative_eq!(func_e(0.5).unwrap(), 0.7071067811865476, max_relative = 1e-15);
        assert!(func_e(-0.1).is_err());
        assert!(func_e(f64::NAN).is_err());
    }

    #[test]
    fn gamma_exact_and_lanczos() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_relative_eq!(gamma(5.0).unwrap(), 24.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(0.5).unwrap(), PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma(2.5).unwrap(), 0.75 * PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma(1.3).unwrap(), 0.8974706963062772, max_relative = 1e-13);
        assert!(gamma(0.0).is_err());
    }

    #[test]
    fn embedding_examples() {
        assert_relative_eq!(s(1, 1), 0.7071067811865476, max_relative = 1e-14);
        assert_relative_eq!(s(2, 1), 0.5, max_relative = 1e-14);
        assert_relative_eq!(s(2, 2), 0.28209479177387814, max_relative = 1e-14);
        assert_relative_eq!(s(2, 3), 0.19947114020071635, max_relative = 1e-14);
        assert_relative_eq!(s(5, 4), 0.022972037309241335, max_relative = 1e-13);
        assert!(EmbeddingParams::new(1, 2).is_err());
        assert!(EmbeddingParams::new(0, 1).is_err());
        assert_eq!(EmbeddingParams::minimal(2).unwrap().a(), 2);
        assert_eq!(EmbeddingParams::minimal(3).unwrap().a(), 2);
    }

    #[test]
    fn embedding_decreases_in_a() {
        for d in 1..=4u32 {
            let mut prev = f64::INFINITY;
            for a in (d / 2 + 1)..=12 {
                let v = s(a, d);
                assert!(v < prev, "a={a} d={d}");
                prev = v;
            }
        }
    }

    // ((2π)^{−d}∫(1+|k|²)^{−a}dk)^{1/2} by Simpson's rule in k = tan θ.
    fn quadrature_s(a: u32, d: u32) -> f64 {
        let sphere = match d {
            1 => 2.0,
            2 => 2.0 * PI,
            3 => 4.0 * PI,
            4 => 2.0 * PI * PI,
            _ => unreachable!(),
        };
        let n = 4000;
        let h = (PI / 2.0) / n as f64;
        let f = |t: f64| t.sin().powi(d as i32 - 1) * t.cos().powi((2 * a - d - 1) as i32);
        let mut acc = f(0.0) + f(PI / 2.0);
        for i in 1..n {
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        let integral = sphere * acc * h / 3.0;
        (integral / (2.0 * PI).powi(d as i32)).sqrt()
    }

    #[test]
    fn embedding_matches_fourier_quadrature() {
        for d in 1..=4u32 {
            for a in (d / 2 + 1)..=8 {
                assert_relative_eq!(s(a, d), quadrature_s(a, d), max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn u_examples() {
        for m in 1..=6 {
            for d in 1..=4 {
                assert_eq!(adams_frazier_u(m, 1, d).unwrap(), 1.0);
            }
        }
        assert_relative_eq!(adams_frazier_u(2, 2, 1).unwrap(), 0.8773826753016616, max_relative = 1e-14);
        assert_relative_eq!(adams_frazier_u(2, 2, 2).unwrap(), 0.769800358919501, max_relative = 1e-14);
        assert_relative_eq!(adams_frazier_u(3, 3, 1).unwrap(), 0.8024883659717064, max_relative = 1e-14);
        assert_relative_eq!(adams_frazier_u(3, 2, 1).unwrap(), 0.8857744022080895, max_relative = 1e-14);
        assert_relative_eq!(adams_frazier_u(4, 3, 2).unwrap(), 0.6590258729872307, max_relative = 1e-14);
        assert!(adams_frazier_u(2, 3, 1).is_err());
        assert!(adams_frazier_u(2, 0, 1).is_err());
    }

    #[test]
    fn u_in_unit_interval() {
        for m in 1..=10 {
            for j in 1..=m {
                for d in 1..=5 {
                    let u = adams_frazier_u(m, j, d).unwrap();
                    assert!(u > 0.0 && u <= 1.0, "m={m} j={j} d={d}: {u}");
                }
            }
        }
    }

    #[test]
    fn hausdorff_young_examples() {
        for d in 1..=4 {
            assert_relative_eq!(hausdorff_young_c(Exponent::Finite(2.0), d).unwrap(), 1.0, max_relative = 1e-15);
        }
        assert_relative_eq!(
            hausdorff_young_c(Exponent::Infinity, 1).unwrap(),
            0.3989422804014327,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            hausdorff_young_c(Exponent::Finite(4.0), 1).unwrap(),
            0.5916291450474314,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            hausdorff_young_c(Exponent::Finite(3.0), 2).unwrap(),
            0.49237251092134827,
            max_relative = 1e-14
        );
        assert!(hausdorff_young_c(Exponent::Finite(1.5), 1).is_err());
    }

    #[test]
    fn hausdorff_young_at_most_one() {
        for d in 1..=5 {
            for i in 0..=200 {
                let r = 2.0 + i as f64 * 0.25;
                assert!(hausdorff_young_c(Exponent::Finite(r), d).unwrap() <= 1.0 + 1e-15);
            }
            assert!(hausdorff_young_c(Exponent::Infinity, d).unwrap() <= 1.0);
        }
    }

    #[test]
    fn gagliardo_edges() {
        assert_eq!(gagliardo_constant(0, 3, 2).unwrap(), 1.0);
        assert_relative_eq!(gagliardo_constant(2, 2, 3).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            gagliardo_constant(1, 2, 1).unwrap(),
            adams_frazier_u(2, 2, 1).unwrap().sqrt(),
            max_relative = 1e-14
        );
        assert!(gagliardo_constant(3, 2, 1).is_err());
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("4".parse::<Exponent>().unwrap(), Exponent::Finite(4.0));
        assert!("four".parse::<Exponent>().is_err());
    }
}
