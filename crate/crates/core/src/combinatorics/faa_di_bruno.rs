use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::partition::djw_all;
use super::pm::{pm_table_recursive, StirlingTable};
use super::{binomial, enumerate_dhkw, factorial, PartitionPair, PartitionSeq};
use crate::error::{domain, Result};

// Π_s (s!)^{p_s} p_s!
fn partition_denominator(p: &PartitionSeq) -> BigUint {
    p.parts().fold(BigUint::one(), |acc, (s, c)| {
        acc * factorial(s as u64).pow(c) * factorial(c as u64)
    })
}

fn exact_div(num: BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "Faà di Bruno coefficient is not an integer: implementation bug");
    q
}

fn falling(m: usize, w: usize) -> BigUint {
    exact_div(factorial(m as u64), &factorial((m - w) as u64))
}

/// `P_{m|p} = m!/(m − w(p))! · 1/Π_s (s!)^{p_s} p_s!`.
pub fn fdb_coeff_real(m: usize, p: &PartitionSeq) -> Result<BigUint> {
    let w = p.weight();
    if w == 0 || w > m {
        return Err(domain(format!("P_{{m|p}} needs 1 ≤ w(p) ≤ m; got m={m}, p={p}")));
    }
    Ok(exact_div(falling(m, w), &partition_denominator(p)))
}

/// `P_{m|pq}`: as [`fdb_coeff_real`] with the denominators of `p` and `q`
/// multiplied and `w = w(p) + w(q)`.
pub fn fdb_coeff_complex(m: usize, pair: &PartitionPair) -> Result<BigUint> {
    let w = pair.weight();
    if w == 0 || w > m {
        return Err(domain(format!("P_{{m|pq}} needs 1 ≤ w(p)+w(q) ≤ m; got m={m}, pair={pair}")));
    }
    let den = partition_denominator(&pair.p) * partition_denominator(&pair.q);
    Ok(exact_div(falling(m, w), &den))
}

/// One term `P_{m|p} · ∂^j ∇^ℓ G(f, x) ∨ (∨^{p_1}∇f) ∨ (∨^{p_2}∇²f) ∨ …` of the
/// real expansion of `∇^m(G(f, x))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FdbTerm {
    pub j: usize,
    pub l: usize,
    pub p: PartitionSeq,
    #[serde(serialize_with = "super::serialize_decimal")]
    pub coeff: BigUint,
}

/// Complex analogue of [`FdbTerm`] carrying `∂^h ∂̄^k ∇^ℓ G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexFdbTerm {
    pub h: usize,
    pub k: usize,
    pub l: usize,
    pub pair: PartitionPair,
    #[serde(serialize_with = "super::serialize_decimal")]
    pub coeff: BigUint,
}

/// Every term of the real expansion except the bare `∇^m G(f, x)`,
/// ordered by `(j, ℓ)` then lexicographically in `p`.
pub fn fdb_terms_real(m: usize) -> Result<Vec<FdbTerm>> {
    if m == 0 {
        return Err(domain("the expansion is indexed by m ≥ 1"));
    }
    let mut out = Vec::new();
    for j in 1..=m {
        for l in 0..=m - j {
            for p in djw_all(j, m - l) {
                let coeff = fdb_coeff_real(m, &p)?;
                out.push(FdbTerm { j, l, p, coeff });
            }
        }
    }
    Ok(out)
}

/// Every term of the complex expansion except the bare `∇^m G(f, x)`,
/// ordered by `(h, k, ℓ)` then lexicographically in `(p, q)`.
pub fn fdb_terms_complex(m: usize) -> Result<Vec<ComplexFdbTerm>> {
    if m == 0 {
        return Err(domain("the expansion is indexed by m ≥ 1"));
    }
    let mut out = Vec::new();
    for h in 0..=m {
        for k in 0..=(m - h) {
            if h + k == 0 {
                continue;
            }
            for l in 0..=(m - h - k) {
                for pair in enumerate_dhkw(h, k, m - l)? {
                    let coeff = fdb_coeff_complex(m, &pair)?;
                    out.push(ComplexFdbTerm { h, k, l, pair, coeff });
                }
            }
        }
    }
    Ok(out)
}

/// Which partition-sum identity a check refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Identity {
    /// `Σ_{p ∈ D_{j,m−ℓ}} P_{m|p} = P_{mjℓ}`
    Real { j: usize, l: usize },
    /// `Σ_{(p,q) ∈ D̂_{hk,m−ℓ}} P_{m|pq} = C(h+k, h)·P_{m,h+k,ℓ}`
    Complex { h: usize, k: usize, l: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: Identity,
    #[serde(serialize_with = "super::serialize_decimal")]
    pub lhs: BigUint,
    #[serde(serialize_with = "super::serialize_decimal")]
    pub rhs: BigUint,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumIdentityReport {
    pub m: usize,
    pub checks: Vec<IdentityCheck>,
}

impl SumIdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Checks both partition-sum identities over the full admissible index range for `m`.
pub fn check_sum_identities(m: usize) -> SumIdentityReport {
    let mut checks = Vec::new();
    if m == 0 {
        return SumIdentityReport { m, checks };
    }
    let table = pm_table_recursive(m).pop().expect("m ≥ 1");
    let mut push = |identity, lhs: BigUint, rhs: BigUint| {
        let pass = lhs == rhs;
        checks.push(IdentityCheck { identity, lhs, rhs, pass });
    };
    for j in 1..=m {
        for l in 0..=m - j {
            let lhs = djw_all(j, m - l)
                .iter()
                .map(|p| fdb_coeff_real(m, p).expect("p ∈ D_m"))
                .sum();
            push(Identity::Real { j, l }, lhs, table[&(j, l)].clone());
        }
    }
    for h in 0..=m {
        for k in 0..=(m - h) {
            if h + k == 0 {
                continue;
            }
            for l in 0..=(m - h - k) {
                let lhs = enumerate_dhkw(h, k, m - l)
                    .expect("admissible")
                    .iter()
                    .map(|pq| fdb_coeff_complex(m, pq).expect("pair ∈ D̂_m"))
                    .sum();
                let rhs = binomial((h + k) as u64, h as u64) * &table[&(h + k, l)];
                push(Identity::Complex { h, k, l }, lhs, rhs);
            }
        }
    }
    SumIdentityReport { m, checks }
}

/// Complete Bell polynomial `Y_w(t_1, …, t_w)` as a partition sum.
pub fn bell_polynomial_value(w: usize, t: &[f64]) -> Result<f64> {
    if w == 0 {
        return Err(domain("Y_w needs w ≥ 1"));
    }
    if t.len() < w {
        return Err(domain(format!("Y_{w} needs {w} arguments, got {}", t.len())));
    }
    let wf = factorial(w as u64);
    let mut total = 0.0;
    for j in 1..=w {
        for p in djw_all(j, w) {
            let c = exact_div(wf.clone(), &partition_denominator(&p));
            let mono: f64 = p.parts().map(|(s, e)| t[s - 1].powi(e as i32)).product();
            total += super::pm::to_f64(&c) * mono;
        }
    }
    Ok(total)
}

/// Bell number `B_n = Σ_j S^j_n`, with `B_0 = 1`.
pub fn bell_number(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let table = StirlingTable::new(n);
    (1..=n).map(|j| table.get(j, n).expect("in range").clone()).sum()
}
