use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{GridField, TensorField};
use super::grid::GridSpec;
use crate::combinatorics::{fdb_terms_complex, fdb_terms_real, to_f64, PartitionSeq};
use crate::constants::{adams_frazier_u, embedding_constant, gagliardo_constant, EmbeddingParams, Exponent};
use crate::error::{domain, Error, Result};
use crate::estimates::{tame_bound, BoundReport, FieldNorms, Options};
use crate::gmodel::GModel;

/// Default relative slack of every certification.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Relative agreement required between the two sides of the spectral
/// Faà di Bruno check.
pub const FDB_SPECTRAL_TOLERANCE: f64 = 1e-8;

/// One certified inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs/rhs`; `0` when both vanish, `+∞` when only `rhs` does.
    pub ratio: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// Passes iff `lhs ≤ rhs·(1 + tol)`.
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let ratio = if lhs == 0.0 && rhs == 0.0 {
            0.0
        } else if rhs == 0.0 {
            f64::INFINITY
        } else {
            lhs / rhs
        };
        CheckRecord { name: name.into(), lhs, rhs, ratio, pass: lhs <= rhs * (1.0 + tol) }
    }

    pub fn with_prefix(mut self, prefix: &str) -> Self {
        self.name = format!("{prefix}/{}", self.name);
        self
    }
}

// 0^t := 0 for every t, including t = 0.
fn pow0(x: f64, t: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.powf(t)
    }
}

/// Lazily computed derivative fields and norms of one field.
pub struct FieldDerivatives<'a> {
    field: &'a GridField,
    grads: Vec<OnceLock<Result<TensorField>>>,
}

impl<'a> FieldDerivatives<'a> {
    pub fn new(field: &'a GridField, max_order: usize) -> Self {
        FieldDerivatives { field, grads: (0..=max_order).map(|_| OnceLock::new()).collect() }
    }

    pub fn field(&self) -> &GridField {
        self.field
    }

    pub fn grad(&self, m: usize) -> Result<&TensorField> {
        let slot = self
            .grads
            .get(m)
            .ok_or_else(|| Error::Resource(format!("derivative order {m} beyond the prepared range")))?;
        slot.get_or_init(|| self.field.grad_m(m)).as_ref().map_err(Clone::clone)
    }

    /// `‖∇^m f‖_{L²}` on the Fourier side.
    pub fn grad_l2(&self, m: usize) -> f64 {
        self.field.grad_l2_norm(m)
    }
}

fn embedding(d: usize, a: u32) -> Result<EmbeddingParams> {
    EmbeddingParams::new(a, d as u32)
}

/// `‖f‖_{L^∞} ≤ S_ad‖f‖_a`.
pub fn verify_embedding(f: &GridField, a: u32, tol: f64) -> Result<CheckRecord> {
    let s = embedding_constant(embedding(f.spec().d(), a)?);
    let lhs = f.lp_norm(Exponent::Infinity)?;
    Ok(CheckRecord::new(format!("embedding(a={a})"), lhs, s * f.sobolev_norm(a), tol))
}

/// Both forms of `‖∇^ℓ f‖ ≤ ‖f‖^{1−ℓ/m}‖∇^m f‖^{ℓ/m} ≤ (1−ℓ/m)‖f‖ + (ℓ/m)‖∇^m f‖`.
pub fn verify_interpolation(f: &GridField, l: usize, m: usize, tol: f64) -> Result<[CheckRecord; 2]> {
    interpolation(&FieldDerivatives::new(f, 0), l, m, tol)
}

fn interpolation(fd: &FieldDerivatives, l: usize, m: usize, tol: f64) -> Result<[CheckRecord; 2]> {
    if l > m {
        return Err(domain(format!("interpolation needs ℓ ≤ m, got ℓ={l}, m={m}")));
    }
    let t = if m == 0 { 1.0 } else { l as f64 / m as f64 };
    let (g0, gl, gm) = (fd.grad_l2(0), fd.grad_l2(l), fd.grad_l2(m));
    let product = pow0(g0, 1.0 - t) * pow0(gm, t);
    let mean = (1.0 - t) * g0 + t * gm;
    Ok([
        CheckRecord::new(format!("interpolation(l={l},m={m})/product"), gl, product, tol),
        CheckRecord::new(format!("interpolation(l={l},m={m})/mean"), product, mean, tol),
    ])
}

/// `‖∇^ℓ f‖_{L^{2m/ℓ}} ≤ (E(ℓ/2m)/E(1−ℓ/2m))^{d/2} (S_ad‖f‖_a)^{1−ℓ/m} ‖∇^m f‖^{ℓ/m}_{L²}`.
pub fn verify_gagliardo(f: &GridField, l: usize, m: usize, a: u32, tol: f64) -> Result<CheckRecord> {
    gagliardo(&FieldDerivatives::new(f, l), l, m, a, tol)
}

fn gagliardo(fd: &FieldDerivatives, l: usize, m: usize, a: u32, tol: f64) -> Result<CheckRecord> {
    if m == 0 || l > m {
        return Err(domain(format!("Gagliardo bound needs 0 ≤ ℓ ≤ m, m ≥ 1; got ℓ={l}, m={m}")));
    }
    let f = fd.field();
    let d = f.spec().d();
    let s = embedding_constant(embedding(d, a)?);
    let p = if l == 0 { Exponent::Infinity } else { Exponent::Finite(2.0 * m as f64 / l as f64) };
    let lhs = fd.grad(l)?.lp_norm(p)?;
    let t = l as f64 / m as f64;
    let rhs = gagliardo_constant(l, m, d)? * pow0(s * f.sobolev_norm(a), 1.0 - t) * pow0(fd.grad_l2(m), t);
    Ok(CheckRecord::new(format!("gagliardo(l={l},m={m},a={a})"), lhs, rhs, tol))
}

/// `‖∇^{i_1}f ∨ … ∨ ∇^{i_h}f ∨ ∇^{g_1}f̄ ∨ … ∨ ∇^{g_k}f̄‖_{L²}
/// ≤ U_{m,h+k,d} (S_ad‖f‖_a)^{h+k−1} ‖∇^m f‖_{L²}` with `m = Σi + Σg`.
pub fn verify_adams_frazier(f: &GridField, orders: &[usize], conj_orders: &[usize], a: u32, tol: f64) -> Result<CheckRecord> {
    let top = orders.iter().chain(conj_orders).copied().max().unwrap_or(0);
    adams_frazier(&FieldDerivatives::new(f, top), orders, conj_orders, a, tol)
}

fn adams_frazier(fd: &FieldDerivatives, orders: &[usize], conj_orders: &[usize], a: u32, tol: f64) -> Result<CheckRecord> {
    let count = orders.len() + conj_orders.len();
    if count == 0 || orders.iter().chain(conj_orders).any(|&o| o == 0) {
        return Err(domain("Adams–Frazier products need at least one factor, all of order ≥ 1"));
    }
    let f = fd.field();
    let d = f.spec().d();
    let m: usize = orders.iter().chain(conj_orders).sum();
    let mut product: Option<TensorField> = None;
    for (&o, conj) in orders.iter().map(|o| (o, false)).chain(conj_orders.iter().map(|o| (o, true))) {
        let g = fd.grad(o)?;
        let factor = if conj { g.conj() } else { g.clone() };
        product = Some(match product {
            None => factor,
            Some(p) => p.vee(&factor)?,
        });
    }
    let lhs = product.expect("at least one factor").lp_norm(Exponent::Finite(2.0))?;
    let s = embedding_constant(embedding(d, a)?);
    let rhs = adams_frazier_u(m, count, d)? * pow0(s * f.sobolev_norm(a), (count - 1) as f64) * fd.grad_l2(m);
    let rhs = if count == 1 { fd.grad_l2(m) } else { rhs };
    Ok(CheckRecord::new(
        format!("adams_frazier(orders={orders:?},conj={conj_orders:?},a={a})"),
        lhs,
        rhs,
        tol,
    ))
}

/// Outcome of [`verify_tame`].
#[derive(Debug, Clone, Serialize)]
pub struct TameCertification {
    pub bound: BoundReport,
    /// `‖G(f,x) − G(0,x)‖_n`.
    pub lhs: f64,
    /// Strong form, weak form, then one record per order `m = 0..=n`.
    pub records: Vec<CheckRecord>,
}

impl TameCertification {
    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }
}

/// Norms of `f` entering the tame bound, all computed on the grid.
pub fn field_norms(f: &GridField, n: usize, a: u32) -> FieldNorms {
    FieldNorms {
        norm_a: f.sobolev_norm(a),
        norm_n: f.sobolev_norm(n as u32),
        norm_l2: f.sobolev_norm(0),
        grad_l2: (0..=n).map(|m| f.grad_l2_norm(m)).collect(),
    }
}

/// Certifies the tame bound and each per-order bound for `G` and `f`.
pub fn verify_tame(model: &GModel, f: &GridField, n: usize, a: u32, opts: Options, tol: f64) -> Result<TameCertification> {
    let params = embedding(f.spec().d(), a)?;
    let norms = field_norms(f, n, a);
    let bound = tame_bound(model, n, params, &norms, opts)?;
    let diff = f.compose(model)?.sub(&GridField::zeros(*f.spec()).compose(model)?)?;
    let lhs = diff.sobolev_norm(n as u32);
    let mut records = vec![
        CheckRecord::new(format!("tame(n={n},a={a})/strong"), lhs, bound.strong_rhs, tol),
        CheckRecord::new(format!("tame(n={n},a={a})/weak"), lhs, bound.weak_rhs, tol),
    ];
    for order in &bound.per_order {
        let rhs = order.rhs().expect("gradient norms supplied");
        records.push(CheckRecord::new(
            format!("tame(n={n},a={a})/order(m={})", order.m),
            diff.grad_l2_norm(order.m),
            rhs,
            tol,
        ));
    }
    Ok(TameCertification { bound, lhs, records })
}

// ∨ of ∇^s f over a partition, cached by (s, count).
struct FieldPowers<'a> {
    grads: &'a FieldDerivatives<'a>,
    conj: bool,
    cache: std::collections::BTreeMap<(usize, u32), TensorField>,
}

impl<'a> FieldPowers<'a> {
    fn product(&mut self, p: &PartitionSeq, unit: &TensorField) -> Result<TensorField> {
        let mut acc = unit.clone();
        for (s, c) in p.parts() {
            if !self.cache.contains_key(&(s, c)) {
                let g = self.grads.grad(s)?;
                let g = if self.conj { g.conj() } else { g.clone() };
                self.cache.insert((s, c), g.vee_power(c as usize)?);
            }
            acc = acc.vee(&self.cache[&(s, c)])?;
        }
        Ok(acc)
    }
}

fn model_tensor_field(model: &GModel, f: &GridField, h: usize, k: usize, l: usize) -> Result<TensorField> {
    let spec = *f.spec();
    let values = f.values();
    TensorField::from_point_fn(spec, l, |p, x| model.derivative_tensor(h, k, l, values[p], x))
}

/// Spectral cross-check of the Faà di Bruno expansion: `∇^m` of the
/// composed field against the partition sum assembled from derivative
/// fields of `f` and closed-form derivatives of `G`.
pub fn verify_faadibruno(model: &GModel, f: &GridField, m: usize) -> Result<CheckRecord> {
    if m == 0 {
        return Err(domain("the expansion is indexed by m ≥ 1"));
    }
    let direct = f.compose(model)?.grad_m(m)?;
    let fd = FieldDerivatives::new(f, m);
    let one = GridField::from_values(*f.spec(), vec![Complex64::new(1.0, 0.0); f.spec().points()])?;
    let unit = TensorField::from_scalar(&one);
    let mut plain = FieldPowers { grads: &fd, conj: false, cache: Default::default() };
    let mut barred = FieldPowers { grads: &fd, conj: true, cache: Default::default() };
    let mut expansion = model_tensor_field(model, f, 0, 0, m)?;
    if model.is_complex() {
        for term in fdb_terms_complex(m)? {
            let g = model_tensor_field(model, f, term.h, term.k, term.l)?;
            let t = g.vee(&plain.product(&term.pair.p, &unit)?)?.vee(&barred.product(&term.pair.q, &unit)?)?;
            expansion = expansion.add(&t.scale(to_f64(&term.coeff)))?;
        }
    } else {
        if !f.is_real() {
            return Err(domain(format!("{} needs a real field", model.name())));
        }
        for term in fdb_terms_real(m)? {
            let g = model_tensor_field(model, f, term.j, 0, term.l)?;
            let t = g.vee(&plain.product(&term.p, &unit)?)?;
            expansion = expansion.add(&t.scale(to_f64(&term.coeff)))?;
        }
    }
    let lhs = direct.max_abs_diff(&expansion)?;
    let rhs = FDB_SPECTRAL_TOLERANCE * direct.max_abs().max(expansion.max_abs());
    Ok(CheckRecord::new(format!("faa_di_bruno(m={m})"), lhs, rhs, 0.0))
}

/// Ways of writing `m` as a sum of `h` plain and `k` conjugated derivative
/// orders, each list non-increasing (∨ is commutative).
pub fn adams_frazier_splits(m: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn parts(m: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=m.min(max)).rev() {
            cur.push(p);
            parts(m - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for w in 0..=m {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        parts(w, w, &mut Vec::new(), &mut left);
        parts(m - w, m - w, &mut Vec::new(), &mut right);
        for a in &left {
            for b in &right {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Field families available to scenarios and batteries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    /// `amplitude · e^{−|x − center|²/2}`.
    Gaussian {
        amplitude: f64,
        #[serde(default)]
        center: Option<Vec<f64>>,
    },
    /// `𝓕f = amplitude · (1 + |k|²)^{−s}`.
    Bessel {
        s: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
    Zero,
}

fn one() -> f64 {
    1.0
}

impl FieldSpec {
    pub fn build(&self, grid: GridSpec) -> Result<GridField> {
        match self {
            FieldSpec::Gaussian { amplitude, center } => {
                let c = center.clone().unwrap_or_else(|| vec![0.0; grid.d()]);
                GridField::gaussian(grid, *amplitude, &c)
            }
            FieldSpec::Bessel { s, amplitude } => {
                if !(*s > 0.0) {
                    return Err(domain(format!("Bessel exponent must be positive, got {s}")));
                }
                Ok(GridField::bessel_kernel(grid, *s, *amplitude))
            }
            FieldSpec::Zero => Ok(GridField::zeros(grid)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            FieldSpec::Gaussian { amplitude, .. } => format!("gaussian(A={amplitude})"),
            FieldSpec::Bessel { s, .. } => format!("bessel(s={s})"),
            FieldSpec::Zero => "zero".into(),
        }
    }
}

/// Gaussian amplitudes of the standard battery.
pub const BATTERY_AMPLITUDES: [f64; 3] = [0.1, 0.5, 1.0];
/// Bessel exponent of the battery field used for the inequality checks.
pub const BATTERY_BESSEL_S: f64 = 3.0;

/// Gaussians at the battery amplitudes and a Bessel kernel with `s = 3`.
pub fn standard_battery() -> Vec<FieldSpec> {
    let mut out: Vec<FieldSpec> =
        BATTERY_AMPLITUDES.iter().map(|&amplitude| FieldSpec::Gaussian { amplitude, center: None }).collect();
    out.push(FieldSpec::Bessel { s: BATTERY_BESSEL_S, amplitude: 1.0 });
    out
}

/// Embedding, interpolation, Gagliardo and Adams–Frazier checks on one
/// field for all orders `m ≤ max_m`.
pub fn inequality_battery(f: &GridField, a: u32, max_m: usize, tol: f64) -> Result<Vec<CheckRecord>> {
    let fd = FieldDerivatives::new(f, max_m);
    let mut out = vec![verify_embedding(f, a, tol)?];
    for m in 1..=max_m {
        for l in 0..=m {
            out.extend(interpolation(&fd, l, m, tol)?);
            out.push(gagliardo(&fd, l, m, a, tol)?);
        }
    }
    for m in 1..=max_m {
        for l in 0..=m {
            fd.grad(l)?;
        }
    }
    let splits: Vec<_> = (1..=max_m).flat_map(adams_frazier_splits).collect();
    let af = splits
        .par_iter()
        .map(|(p, q)| adams_frazier(&fd, p, q, a, tol))
        .collect::<Result<Vec<_>>>()?;
    out.extend(af);
    Ok(out)
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn grid(d: usize) -> GridSpec {
        GridSpec::default_for(d).unwrap()
    }

    fn gauss(d: usize, amp: f64) -> GridField {
        GridField::gaussian(grid(d), amp, &vec![0.0; d]).unwrap()
    }

    #[test]
    fn record_semantics() {
        assert!(CheckRecord::new("x", 0.0, 0.0, 0.0).pass);
        assert_eq!(CheckRecord::new("x", 0.0, 0.0, 0.0).ratio, 0.0);
        let r = CheckRecord::new("x", 1.0, 0.0, 1e-6);
        assert!(!r.pass && r.ratio.is_infinite());
        assert!(CheckRecord::new("x", 1.0 + 1e-7, 1.0, 1e-6).pass);
        assert!(!CheckRecord::new("x", 1.0 + 1e-5, 1.0, 1e-6).pass);
    }

    #[test]
    fn embedding_examples() {
        let r = verify_embedding(&gauss(1, 1.0), 1, DEFAULT_TOLERANCE).unwrap();
        assert!(r.pass);
        assert_relative_eq!(r.ratio, 1.0 / (0.7071067811865476 * 1.6305461589167827), max_relative = 1e-10);
        let probe = GridField::bessel_kernel(grid(1), 1.0, 1.0);
        let r = verify_embedding(&probe, 1, DEFAULT_TOLERANCE).unwrap();
        assert!(r.ratio >= 0.99 && r.ratio <= 1.0, "{}", r.ratio);
        let r = verify_embedding(&GridField::zeros(grid(1)), 1, DEFAULT_TOLERANCE).unwrap();
        assert!(r.pass && r.lhs == 0.0 && r.rhs == 0.0);
        assert!(verify_embedding(&gauss(2, 1.0), 1, DEFAULT_TOLERANCE).is_err());
    }

    #[test]
    fn interpolation_examples() {
        let f = gauss(1, 1.0);
        let [first, _] = verify_interpolation(&f, 0, 3, DEFAULT_TOLERANCE).unwrap();
        assert_relative_eq!(first.ratio, 1.0, max_relative = 1e-14);
        let [first, second] = verify_interpolation(&f, 2, 2, DEFAULT_TOLERANCE).unwrap();
        assert_relative_eq!(first.ratio, 1.0, max_relative = 1e-14);
        assert_relative_eq!(second.ratio, 1.0, max_relative = 1e-14);
        let [first, second] = verify_interpolation(&f, 1, 2, DEFAULT_TOLERANCE).unwrap();
        assert!(first.pass && first.ratio < 1.0 && second.pass && second.ratio < 1.0);
        assert!(verify_interpolation(&f, 3, 2, DEFAULT_TOLERANCE).is_err());
        for r in verify_interpolation(&GridField::zeros(grid(1)), 1, 2, 0.0).unwrap() {
            assert!(r.pass);
        }
    }

    #[test]
    fn gagliardo_examples() {
        let f = gauss(1, 1.0);
        let r = verify_gagliardo(&f, 2, 2, 1, DEFAULT_TOLERANCE).unwrap();
        assert_relative_eq!(r.ratio, 1.0, max_relative = 1e-10);
        let r = verify_gagliardo(&f, 1, 2, 1, DEFAULT_TOLERANCE).unwrap();
        assert!(r.pass && r.ratio < 1.0);
        let r = verify_gagliardo(&gauss(2, 1.0), 1, 3, 2, DEFAULT_TOLERANCE).unwrap();
        assert!(r.pass && r.ratio < 1.0);
        assert!(verify_gagliardo(&f, 0, 0, 1, DEFAULT_TOLERANCE).is_err());
    }

    #[test]
    fn adams_frazier_examples() {
        let f = gauss(1, 1.0);
        let r = verify_adams_frazier(&f, &[3], &[], 1, DEFAULT_TOLERANCE).unwrap();
        assert_relative_eq!(r.ratio, 1.0, max_relative = 1e-10);
        let r = verify_adams_frazier(&f, &[], &[2], 1, DEFAULT_TOLERANCE).unwrap();
        assert_relative_eq!(r.ratio, 1.0, max_relative = 1e-10);
        assert!(verify_adams_frazier(&f, &[1, 1], &[], 1, DEFAULT_TOLERANCE).unwrap().pass);
        assert!(verify_adams_frazier(&gauss(2, 1.0), &[1], &[2], 2, DEFAULT_TOLERANCE).unwrap().pass);
        assert!(verify_adams_frazier(&f, &[1, 0], &[], 1, DEFAULT_TOLERANCE).is_err());
        assert!(verify_adams_frazier(&f, &[], &[], 1, DEFAULT_TOLERANCE).is_err());
    }

    #[test]
    fn splits_enumerate_all_orders() {
        let s = adams_frazier_splits(2);
        assert_eq!(s.len(), 5);
        assert!(s.contains(&(vec![1], vec![1])));
        assert!(s.contains(&(vec![], vec![2])));
        // Σ_{w} p(w)·p(m−w)
        assert_eq!(adams_frazier_splits(4).len(), 5 + 3 + 2 * 2 + 3 + 5);
    }

    #[test]
    fn tame_examples() {
        let f = gauss(1, 0.5);
        let c = verify_tame(&GModel::sinh(), &f, 2, 1, Options::default(), DEFAULT_TOLERANCE).unwrap();
        assert!(c.pass());
        assert!(c.records[0].ratio < 1.0);
        assert_eq!(c.records.len(), 2 + 3);
        let zero = GridField::zeros(grid(1));
        for g in [GModel::sinh(), GModel::separable_linear(), GModel::complex_monomial(2, 1).unwrap()] {
            let c = verify_tame(&g, &zero, 2, 1, Options::default(), 0.0).unwrap();
            assert!(c.pass());
            assert_eq!(c.lhs, 0.0);
        }
        let bounded = GModel::sinh().with_radius(0.1).unwrap();
        assert!(matches!(verify_tame(&bounded, &f, 1, 1, Options::default(), 0.0), Err(Error::Ball { .. })));
    }

    #[test]
    fn tame_sweep_is_monotone() {
        let g = GModel::complex_monomial(1, 1).unwrap();
        let mut prev = (0.0, 0.0);
        for amp in BATTERY_AMPLITUDES {
            let c = verify_tame(&g, &gauss(1, amp), 2, 1, Options::default(), DEFAULT_TOLERANCE).unwrap();
            assert!(c.pass());
            assert!(c.lhs > prev.0 && c.bound.strong_rhs > prev.1);
            assert!(c.records.iter().all(|r| r.ratio <= 1.0));
            prev = (c.lhs, c.bound.strong_rhs);
        }
    }

    #[test]
    fn faa_di_bruno_spectral() {
        let spec = GridSpec::new(1, 128, 16.0).unwrap();
        let f = GridField::gaussian(spec, 0.6, &[0.4]).unwrap();
        for g in [
            GModel::complex_monomial(2, 1).unwrap(),
            GModel::sinh(),
            GModel::separable_linear(),
            GModel::real_polynomial(vec![0.0, 1.0, -0.5, 0.25]).unwrap(),
        ] {
            for m in 1..=4 {
                let r = verify_faadibruno(&g, &f, m).unwrap();
                assert!(r.pass, "{g} m={m}: {r:?}");
            }
        }
        let spec2 = GridSpec::new(2, 64, 16.0).unwrap();
        let f2 = GridField::gaussian(spec2, 0.8, &[0.3, -0.2]).unwrap();
        for m in 1..=3 {
            assert!(verify_faadibruno(&GModel::complex_monomial(1, 2).unwrap(), &f2, m).unwrap().pass);
            assert!(verify_faadibruno(&GModel::separable_linear(), &f2, m).unwrap().pass);
        }
    }

    #[test]
    fn field_spec_parsing() {
        let f: FieldSpec = toml::from_str("family = \"gaussian\"\namplitude = 0.5").unwrap();
        assert_eq!(f, FieldSpec::Gaussian { amplitude: 0.5, center: None });
        let b: FieldSpec = serde_json::from_str(r#"{"family":"bessel","s":2.0}"#).unwrap();
        assert_eq!(b, FieldSpec::Bessel { s: 2.0, amplitude: 1.0 });
        assert!(serde_json::from_str::<FieldSpec>(r#"{"family":"sine"}"#).is_err());
        assert!(FieldSpec::Gaussian { amplitude: 1.0, center: Some(vec![0.0]) }.build(grid(2)).is_err());
    }
}
