//! Exact polynomial fields with complex-rational coefficients.
//!
//! Used to check the tensor Faà di Bruno expansion and the symmetrized
//! Leibnitz rule without any discretization: composites are formed
//! symbolically, differentiated symbolically and evaluated at rational points.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::combinatorics::{fdb_terms_complex, fdb_terms_real, PartitionSeq};
use crate::error::{domain, Error, Result};
use crate::symtensor::{symmetry_orbits, unflatten, ExactTensor, Scalar, Tensor};

pub type Coef = Complex<BigRational>;

/// Tensor field with polynomial components.
pub type PolyTensor = Tensor<Poly>;

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn coef(re: BigRational) -> Coef {
    Complex::new(re, BigRational::zero())
}

/// Sparse multivariate polynomial. Exponent vectors carry no trailing
/// zeros, so the number of variables is implicit.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<u16>, Coef>,
}

fn trim(mut e: Vec<u16>) -> Vec<u16> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl Poly {
    pub fn constant(c: Coef) -> Poly {
        Poly::monomial(vec![], c)
    }

    pub fn monomial(exponents: Vec<u16>, c: Coef) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exponents), c);
        }
        Poly { terms }
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Poly {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Poly::monomial(e, Coef::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Coef)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&v| v as usize).sum()).max().unwrap_or(0)
    }

    /// Number of variables actually present.
    pub fn arity(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u16>, c: Coef) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let entry = self.terms.entry(e.clone()).or_insert_with(Coef::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Coef) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let Some(&p) = e.get(i) else { continue };
            if p == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * coef(BigRational::from_integer(BigInt::from(p))));
        }
        out
    }

    /// Repeated partial derivative along each variable of `vars`.
    pub fn derivatives(&self, vars: impl IntoIterator<Item = usize>) -> Poly {
        vars.into_iter().fold(self.clone(), |p, i| p.derivative(i))
    }

    /// Coefficientwise conjugate: the pointwise conjugate for real arguments.
    pub fn conj(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect() }
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    pub fn pow(&self, k: u16) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc * self.clone())
    }

    /// Value at `point`; variables beyond its length must be absent.
    pub fn evaluate(&self, point: &[Coef]) -> Result<Coef> {
        if self.arity() > point.len() {
            return Err(Error::DimensionMismatch { left: point.len(), right: self.arity() });
        }
        let mut total = Coef::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &p) in point.iter().zip(e) {
                for _ in 0..p {
                    t = t * v.clone();
                }
            }
            total = total + t;
        }
        Ok(total)
    }

    /// `p(q_0, q_1, …)`: variable `i` replaced by `subs[i]`.
    pub fn substitute(&self, subs: &[Poly]) -> Result<Poly> {
        if self.arity() > subs.len() {
            return Err(Error::DimensionMismatch { left: subs.len(), right: self.arity() });
        }
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one()]; subs.len()];
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &p) in e.iter().enumerate() {
                while powers[i].len() <= p as usize {
                    let next = powers[i].last().expect("nonempty").clone() * subs[i].clone();
                    powers[i].push(next);
                }
                t = t * powers[i][p as usize].clone();
            }
            out = out + t;
        }
        Ok(out)
    }

    /// Random polynomial in `nvars` variables with at most `nterms` terms
    /// of total degree `≤ max_degree` and small rational coefficients.
    pub fn random(rng: &mut impl Rng, nvars: usize, max_degree: usize, nterms: usize, real: bool) -> Poly {
        let mut p = Poly::zero();
        for _ in 0..nterms {
            let mut e = vec![0u16; nvars];
            let deg = rng.gen_range(0..=max_degree);
            for _ in 0..deg {
                if nvars > 0 {
                    e[rng.gen_range(0..nvars)] += 1;
                }
            }
            p.add_term(e, random_coef(rng, real));
        }
        p
    }
}

fn random_rational(rng: &mut impl Rng) -> BigRational {
    rational(rng.gen_range(-6..=6), rng.gen_range(1..=5))
}

pub fn random_coef(rng: &mut impl Rng, real: bool) -> Coef {
    let im = if real { BigRational::zero() } else { random_rational(rng) };
    Complex::new(random_rational(rng), im)
}

/// Random real rational point in `R^d`.
pub fn random_point(rng: &mut impl Rng, d: usize) -> Vec<Coef> {
    (0..d).map(|_| coef(random_rational(rng))).collect()
}

impl Zero for Poly {
    fn zero() -> Poly {
        Poly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Poly {
        Poly::constant(Coef::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let n = ea.len().max(eb.len());
                let e = (0..n)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Scalar for Poly {
    fn conj(&self) -> Poly {
        Poly::conj(self)
    }
    fn div_count(&self, n: u64) -> Poly {
        self.scale(&coef(BigRational::new(BigInt::one(), BigInt::from(n))))
    }
}

/// `∇^order p` at `point`, differentiating the variables `offset..offset+d`.
/// `eval` is the full argument vector of `p`.
fn grad_at(p: &Poly, d: usize, order: usize, offset: usize, eval: &[Coef]) -> Result<ExactTensor> {
    let orbits = symmetry_orbits(d, order)?;
    let mut data = vec![Coef::zero(); d.pow(order as u32)];
    for orbit in orbits {
        let rep = unflatten(d, order, orbit[0]);
        let v = p.derivatives(rep.iter().map(|&i| i + offset)).evaluate(eval)?;
        for flat in orbit {
            data[flat] = v.clone();
        }
    }
    ExactTensor::new(d, order, data)
}

fn biguint_coef(v: &BigUint) -> Coef {
    coef(BigRational::from_integer(BigInt::from(v.clone())))
}

/// Outcome of one exact Faà di Bruno comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactFdbCheck {
    pub m: usize,
    /// `∇^m(G(f, x))` from the symbolic composite.
    pub direct: ExactTensor,
    /// The partition-sum expansion.
    pub expansion: ExactTensor,
}

impl ExactFdbCheck {
    pub fn agrees(&self) -> bool {
        self.direct == self.expansion
    }
}

fn check_inputs(f: &Poly, d: usize, m: usize, point: &[Coef]) -> Result<()> {
    if m == 0 {
        return Err(domain("the expansion is indexed by m ≥ 1"));
    }
    if point.len() != d {
        return Err(Error::DimensionMismatch { left: point.len(), right: d });
    }
    if point.iter().any(|c| !c.im.is_zero()) {
        return Err(domain("evaluation points must be real"));
    }
    if f.arity() > d {
        return Err(domain(format!("f uses {} variables but d = {d}", f.arity())));
    }
    Ok(())
}

// Cached ∨-powers of ∇^s f (or of its conjugate) at one point.
struct PowerCache {
    grads: Vec<ExactTensor>,
    powers: BTreeMap<(usize, u32), ExactTensor>,
}

impl PowerCache {
    fn new(f: &Poly, d: usize, m: usize, point: &[Coef]) -> Result<Self> {
        let grads = (0..=m).map(|s| grad_at(f, d, s, 0, point)).collect::<Result<_>>()?;
        Ok(PowerCache { grads, powers: BTreeMap::new() })
    }

    fn product(&mut self, p: &PartitionSeq) -> Result<ExactTensor> {
        let d = self.grads[0].dim();
        let mut acc = ExactTensor::scalar(d, Coef::one());
        for (s, c) in p.parts() {
            if !self.powers.contains_key(&(s, c)) {
                let t = self.grads[s].vee_power(c as usize)?;
                self.powers.insert((s, c), t);
            }
            acc = acc.vee(&self.powers[&(s, c)])?;
        }
        Ok(acc)
    }
}

/// Complex expansion of `∇^m(G(f, f̄, x))` against symbolic differentiation.
///
/// `g` is a polynomial in `(z, z̄, x_1, …, x_d)` (variables `0`, `1`,
/// `2..2+d`), `f` a polynomial in `x_1..x_d`, `point` a real rational point.
pub fn faa_di_bruno_exact_complex(g: &Poly, f: &Poly, d: usize, m: usize, point: &[Coef]) -> Result<ExactFdbCheck> {
    check_inputs(f, d, m, point)?;
    if g.arity() > d + 2 {
        return Err(domain(format!("G uses {} variables but only z, z̄ and {d} coordinates exist", g.arity())));
    }
    let fbar = f.conj();
    let mut subs = vec![f.clone(), fbar.clone()];
    subs.extend((0..d).map(Poly::var));
    let composite = g.substitute(&subs)?;
    let direct = grad_at(&composite, d, m, 0, point)?;

    let mut eval = vec![f.evaluate(point)?, fbar.evaluate(point)?];
    eval.extend(point.iter().cloned());
    let mut plain = PowerCache::new(f, d, m, point)?;
    let mut barred = PowerCache::new(&fbar, d, m, point)?;
    let mut expansion = grad_at(g, d, m, 2, &eval)?;
    for term in fdb_terms_complex(m)? {
        let dg = g.derivatives(std::iter::repeat_n(0, term.h).chain(std::iter::repeat_n(1, term.k)));
        if dg.is_zero() {
            continue;
        }
        let t = grad_at(&dg, d, term.l, 2, &eval)?
            .vee(&plain.product(&term.pair.p)?)?
            .vee(&barred.product(&term.pair.q)?)?;
        expansion = expansion.add(&t.scale(&biguint_coef(&term.coeff)))?;
    }
    Ok(ExactFdbCheck { m, direct, expansion })
}

/// Real expansion of `∇^m(G(f, x))`; `g` is a polynomial in `(u, x_1, …, x_d)`
/// and `f` must have real coefficients.
pub fn faa_di_bruno_exact_real(g: &Poly, f: &Poly, d: usize, m: usize, point: &[Coef]) -> Result<ExactFdbCheck> {
    check_inputs(f, d, m, point)?;
    if !f.has_real_coefficients() || !g.has_real_coefficients() {
        return Err(domain("the real expansion needs real coefficients"));
    }
    if g.arity() > d + 1 {
        return Err(domain(format!("G uses {} variables but only u and {d} coordinates exist", g.arity())));
    }
    let mut subs = vec![f.clone()];
    subs.extend((0..d).map(Poly::var));
    let composite = g.substitute(&subs)?;
    let direct = grad_at(&composite, d, m, 0, point)?;

    let mut eval = vec![f.evaluate(point)?];
    eval.extend(point.iter().cloned());
    let mut cache = PowerCache::new(f, d, m, point)?;
    let mut expansion = grad_at(g, d, m, 1, &eval)?;
    for term in fdb_terms_real(m)? {
        let dg = g.derivatives(std::iter::repeat_n(0, term.j));
        if dg.is_zero() {
            continue;
        }
        let t = grad_at(&dg, d, term.l, 1, &eval)?.vee(&cache.product(&term.p)?)?;
        expansion = expansion.add(&t.scale(&biguint_coef(&term.coeff)))?;
    }
    Ok(ExactFdbCheck { m, direct, expansion })
}

/// `∇T` with the new index last: `(∇T)_{λ_1…λ_ℓ μ} = ∂_μ T_{λ_1…λ_ℓ}`.
pub fn grad_poly_tensor(t: &PolyTensor) -> Result<PolyTensor> {
    let (d, l) = (t.dim(), t.order());
    PolyTensor::from_fn(d, l + 1, |idx| t.get(&idx[..l]).derivative(idx[l]))
}

/// `∇_S T = S(∇T)`.
pub fn sym_grad_poly_tensor(t: &PolyTensor) -> Result<PolyTensor> {
    grad_poly_tensor(t)?.symmetrize()
}

/// Random polynomial tensor field (not necessarily symmetric).
pub fn random_poly_tensor(rng: &mut impl Rng, d: usize, order: usize, max_degree: usize, nterms: usize) -> Result<PolyTensor> {
    PolyTensor::from_fn(d, order, |_| Poly::random(rng, d, max_degree, nterms, false))
}

/// Both sides of `∇_S(T ∨ U) = (∇_S T) ∨ U + T ∨ (∇_S U)`.
pub fn leibnitz_sides(t: &PolyTensor, u: &PolyTensor) -> Result<(PolyTensor, PolyTensor)> {
    let lhs = sym_grad_poly_tensor(&t.vee(u)?)?;
    let rhs = sym_grad_poly_tensor(t)?.vee(u)?.add(&t.vee(&sym_grad_poly_tensor(u)?)?)?;
    Ok((lhs, rhs))
}

/// Polynomial `z^H z̄^K` in the `(z, z̄, x)` layout.
pub fn complex_monomial_poly(h: u16, k: u16) -> Poly {
    Poly::monomial(vec![h, k], Coef::one())
}
