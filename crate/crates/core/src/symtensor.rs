//! Dense tensors in `⊗^m C^d`: tensor product, index permutations,
//! symmetrization, the symmetrized product `∨`, conjugation and the
//! Euclidean norm.
//!
//! Components are stored row-major in the multi-index `λ = (λ_1, …, λ_m)`,
//! `λ_1` most significant, with indices running over `0..d`. [`Tensor`] is
//! generic over the scalar so the same code runs in floating point
//! ([`SymTensor`]) and in exact rational arithmetic.

use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest order accepted by [`Tensor::symmetrize`] and the operations built on it.
pub const MAX_SYM_ORDER: usize = 6;
/// Largest component count `d^m` of a dense tensor.
pub const MAX_COMPONENTS: usize = 1_000_000;

/// Scalars a tensor can carry.
pub trait Scalar:
    Clone + Debug + PartialEq + Send + Sync + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn conj(&self) -> Self;
    /// `self / n`.
    fn div_count(&self, n: u64) -> Self;
}

impl Scalar for Complex64 {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn div_count(&self, n: u64) -> Self {
        self / n as f64
    }
}

impl Scalar for Complex<BigRational> {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn div_count(&self, n: u64) -> Self {
        let q = BigRational::from_integer(BigInt::from(n));
        Complex::new(&self.re / &q, &self.im / &q)
    }
}

/// Floating-point complex tensor.
pub type SymTensor = Tensor<Complex64>;
/// Exact complex-rational tensor.
pub type ExactTensor = Tensor<Complex<BigRational>>;

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<S> {
    dim: usize,
    order: usize,
    data: Vec<S>,
}

pub(crate) fn component_count(dim: usize, order: usize) -> Result<usize> {
    let mut n: usize = 1;
    for _ in 0..order {
        n = n
            .checked_mul(dim)
            .filter(|&v| v <= MAX_COMPONENTS)
            .ok_or_else(|| {
                Error::Resource(format!("d^m = {dim}^{order} exceeds {MAX_COMPONENTS} components"))
            })?;
    }
    Ok(n)
}

/// Multi-index of a flat position.
pub fn unflatten(dim: usize, order: usize, mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0; order];
    for slot in idx.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
    idx
}

/// Flat position of a multi-index.
pub fn flatten(dim: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}

/// Partition of `0..d^m` into permutation orbits: two flat positions share
/// an orbit iff their multi-indices are rearrangements of each other.
/// Orbits are keyed and ordered by their sorted (smallest) representative.
pub fn symmetry_orbits(dim: usize, order: usize) -> Result<Vec<Vec<usize>>> {
    let n = component_count(dim, order)?;
    let mut key_of = vec![0usize; n];
    for (flat, key) in key_of.iter_mut().enumerate() {
        let mut idx = unflatten(dim, order, flat);
        idx.sort_unstable();
        *key = flatten(dim, &idx);
    }
    let mut slot = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for flat in 0..n {
        let k = key_of[flat];
        if slot[k] == usize::MAX {
            slot[k] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[k]].push(flat);
    }
    Ok(orbits)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

fn check_sym_order(order: usize) -> Result<()> {
    if order > MAX_SYM_ORDER {
        return Err(Error::Resource(format!(
            "symmetrization of order {order} exceeds the cap {MAX_SYM_ORDER}"
        )));
    }
    Ok(())
}

impl<S: Scalar> Tensor<S> {
    pub fn new(dim: usize, order: usize, data: Vec<S>) -> Result<Self> {
        if dim == 0 {
            return Err(crate::error::domain("tensor dimension must be ≥ 1"));
        }
        let n = component_count(dim, order)?;
        if data.len() != n {
            return Err(Error::DimensionMismatch { left: data.len(), right: n });
        }
        Ok(Tensor { dim, order, data })
    }

    pub fn zeros(dim: usize, order: usize) -> Result<Self> {
        let n = component_count(dim, order)?;
        Tensor::new(dim, order, vec![S::zero(); n])
    }

    pub fn scalar(dim: usize, value: S) -> Self {
        Tensor { dim, order: 0, data: vec![value] }
    }

    pub fn vector(values: Vec<S>) -> Result<Self> {
        Tensor::new(values.len(), 1, values)
    }

    pub fn from_fn(dim: usize, order: usize, mut f: impl FnMut(&[usize]) -> S) -> Result<Self> {
        let n = component_count(dim, order)?;
        let data = (0..n).map(|flat| f(&unflatten(dim, order, flat))).collect();
        Tensor::new(dim, order, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn components(&self) -> &[S] {
        &self.data
    }

    pub fn into_components(self) -> Vec<S> {
        self.data
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        assert_eq!(idx.len(), self.order, "multi-index length must equal the order");
        &self.data[flatten(self.dim, idx)]
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        self.same_dim(other)?;
        if self.order != other.order {
            return Err(Error::DimensionMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    /// `(T ⊗ U)_{λμ} = T_λ U_μ`; an order-0 factor multiplies.
    pub fn tensor_product(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        component_count(self.dim, self.order + other.order)?;
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for t in &self.data {
            for u in &other.data {
                data.push(t.clone() * u.clone());
            }
        }
        Ok(Tensor { dim: self.dim, order: self.order + other.order, data })
    }

    /// `(P_σ T)_{λ_1…λ_ℓ} = T_{λ_σ(1)…λ_σ(ℓ)}`, with `σ` given as a
    /// permutation of `0..ℓ`.
    pub fn permute(&self, sigma: &[usize]) -> Result<Self> {
        let l = self.order;
        let mut seen = vec![false; l];
        if sigma.len() != l || !sigma.iter().all(|&s| s < l && !std::mem::replace(&mut seen[s], true)) {
            return Err(crate::error::domain(format!("{sigma:?} is not a permutation of 0..{l}")));
        }
        let mut src = vec![0usize; l];
        let data = (0..self.data.len())
            .map(|flat| {
                let idx = unflatten(self.dim, l, flat);
                for (slot, &s) in src.iter_mut().zip(sigma) {
                    *slot = idx[s];
                }
                self.data[flatten(self.dim, &src)].clone()
            })
            .collect();
        Ok(Tensor { dim: self.dim, order: l, data })
    }

    /// `S T = (1/ℓ!) Σ_σ P_σ T`, computed as the mean over each permutation orbit.
    pub fn symmetrize(&self) -> Result<Self> {
        check_sym_order(self.order)?;
        if self.order <= 1 {
            return Ok(self.clone());
        }
        let mut data = vec![S::zero(); self.data.len()];
        for orbit in symmetry_orbits(self.dim, self.order)? {
            let sum = orbit.iter().fold(S::zero(), |acc, &i| acc + self.data[i].clone());
            let mean = sum.div_count(orbit.len() as u64);
            for &i in &orbit {
                data[i] = mean.clone();
            }
        }
        Ok(Tensor { dim: self.dim, order: self.order, data })
    }

    /// Reference symmetrizer summing all `ℓ!` permutation operators.
    pub fn symmetrize_by_permutations(&self) -> Result<Self> {
        check_sym_order(self.order)?;
        let perms = permutations(self.order);
        let mut acc = Tensor::zeros(self.dim, self.order)?;
        for sigma in &perms {
            acc = acc.add(&self.permute(sigma)?)?;
        }
        let n = perms.len() as u64;
        Ok(acc.map(|c| c.div_count(n)))
    }

    /// `T ∨ U = S(T ⊗ U)`.
    pub fn vee(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        check_sym_order(self.order + other.order)?;
        self.tensor_product(other)?.symmetrize()
    }

    /// `∨^q T`; the scalar `1` for `q = 0`.
    pub fn vee_power(&self, q: usize) -> Result<Self> {
        check_sym_order(self.order.saturating_mul(q))?;
        let mut acc = Tensor::scalar(self.dim, S::one());
        for _ in 0..q {
            acc = acc.vee(self)?;
        }
        Ok(acc)
    }

    pub fn conjugate(&self) -> Self {
        self.map(|c| c.conj())
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Tensor { dim: self.dim, order: self.order, data: self.data.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Tensor { dim: self.dim, order: self.order, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Tensor { dim: self.dim, order: self.order, data })
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| c.clone() * v.clone())
    }

    /// True when components agree exactly across every permutation orbit.
    pub fn is_symmetric_exact(&self) -> bool {
        symmetry_orbits(self.dim, self.order)
            .map(|orbits| orbits.iter().all(|o| o.iter().all(|&i| self.data[i] == self.data[o[0]])))
            .unwrap_or(false)
    }
}

#[derive(Serialize)]
struct TensorJson {
    dim: usize,
    order: usize,
    components: Vec<[f64; 2]>,
}

impl Tensor<Complex64> {
    /// `|T| = sqrt(Σ_λ |T_λ|²)`.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|T − U| ≤ tol·max(|T|, |U|)`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match self.sub(other) {
            Ok(diff) => diff.norm() <= tol * self.norm().max(other.norm()),
            Err(_) => false,
        }
    }

    pub fn from_real(dim: usize, order: usize, values: &[f64]) -> Result<Self> {
        Tensor::new(dim, order, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Debug JSON: `{"dim", "order", "components": [[re, im], …]}`.
    pub fn to_json(&self) -> String {
        let doc = TensorJson {
            dim: self.dim,
            order: self.order,
            components: self.data.iter().map(|c| [c.re, c.im]).collect(),
        };
        serde_json::to_string(&doc).expect("finite floats serialize")
    }
}

impl Tensor<Complex<BigRational>> {
    /// `|T|²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        self.data
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + &c.re * &c.re + &c.im * &c.im)
    }

    pub fn to_float(&self) -> SymTensor {
        use num_traits::ToPrimitive;
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        Tensor {
            dim: self.dim,
            order: self.order,
            data: self.data.iter().map(|c| Complex64::new(f(&c.re), f(&c.im))).collect(),
        }
    }
}
