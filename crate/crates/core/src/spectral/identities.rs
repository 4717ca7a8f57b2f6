//! Randomized trials of the tensor algebra identities: commutativity and
//! associativity of `∨`, `|T⊗U| = |T||U|`, `|T∨U| ≤ |T||U|`, absorption
//! `S P_σ = S`, and the symmetrized Leibnitz rule on polynomial fields.
//!
//! Floating-point trials use a relative tolerance; rational and polynomial
//! trials must hold exactly. Trial `i` is seeded with `seed + i`, so a tally
//! does not depend on thread scheduling.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::exact::{leibnitz_sides, random_coef, random_poly_tensor};
use crate::error::Result;
use crate::symtensor::{ExactTensor, SymTensor};

/// Relative tolerance of the floating-point trials.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// Largest dimension and factor order sampled by the trials.
pub const MAX_DIM: usize = 4;
pub const MAX_FACTOR_ORDER: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityTally {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    /// Largest relative defect seen (`0` for exact identities that held).
    pub worst: f64,
    pub exact: bool,
}

impl IdentityTally {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

fn random_float(rng: &mut impl Rng, d: usize, order: usize) -> SymTensor {
    SymTensor::from_fn(d, order, |_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .expect("small tensor")
}

fn random_exact(rng: &mut impl Rng, d: usize, order: usize) -> ExactTensor {
    ExactTensor::from_fn(d, order, |_| random_coef(rng, false)).expect("small tensor")
}

fn rel_defect(a: &SymTensor, b: &SymTensor) -> f64 {
    let diff = a.sub(b).expect("same shape").norm();
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

// (dimension, orders) with the product order within the symmetrizer cap
fn shape(rng: &mut impl Rng, factors: usize, cap: usize) -> (usize, Vec<usize>) {
    let d = rng.gen_range(1..=MAX_DIM);
    loop {
        let orders: Vec<usize> = (0..factors).map(|_| rng.gen_range(0..=MAX_FACTOR_ORDER)).collect();
        if orders.iter().sum::<usize>() <= cap {
            return (d, orders);
        }
    }
}

type Trial = fn(&mut ChaCha8Rng) -> Result<f64>;

fn vee_commutative(rng: &mut ChaCha8Rng) -> Result<f64> {
    let (d, o) = shape(rng, 2, 6);
    let (t, u) = (random_float(rng, d, o[0]), random_float(rng, d, o[1]));
    Ok(rel_defect(&t.vee(&u)?, &u.vee(&t)?))
}

fn vee_associative(rng: &mut ChaCha8Rng) -> Result<f64> {
    let (d, o) = shape(rng, 3, 6);
    let (t, u, v) = (random_float(rng, d, o[0]), random_float(rng, d, o[1]), random_float(rng, d, o[2]));
    Ok(rel_defect(&t.vee(&u)?.vee(&v)?, &t.vee(&u.vee(&v)?)?))
}

fn product_norm(rng: &mut ChaCha8Rng) -> Result<f64> {
    let (d, o) = shape(rng, 2, 6);
    let (t, u) = (random_float(rng, d, o[0]), random_float(rng, d, o[1]));
    let lhs = t.tensor_product(&u)?.norm();
    let rhs = t.norm() * u.norm();
    Ok((lhs - rhs).abs() / rhs)
}

fn vee_submultiplicative(rng: &mut ChaCha8Rng) -> Result<f64> {
    let (d, o) = shape(rng, 2, 6);
    let (t, u) = (random_float(rng, d, o[0]), random_float(rng, d, o[1]));
    let lhs = t.vee(&u)?.norm();
    let rhs = t.norm() * u.norm();
    Ok(((lhs - rhs) / rhs).max(0.0))
}

fn random_sigma(rng: &mut impl Rng, order: usize) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..order).collect();
    sigma.shuffle(rng);
    sigma
}

fn absorption(rng: &mut ChaCha8Rng) -> Result<f64> {
    let (d, o) = shape(rng, 1, 6);
    let t = random_float(rng, d, o[0]);
    let sigma = random_sigma(rng, o[0]);
    Ok(rel_defect(&t.permute(&sigma)?.symmetrize()?, &t.symmetrize()?))
}

fn exact_flag(holds: bool) -> f64 {
    if holds {
        0.0
    } else {
        1.0
    }
}

fn exact_commutative(rng: &mut ChaCha8Rng) -> Result<f64> {
    let (d, o) = shape(rng, 2, 6);
    let (t, u) = (random_exact(rng, d, o[0]), random_exact(rng, d, o[1]));
    Ok(exact_flag(t.vee(&u)? == u.vee(&t)?))
}

fn exact_associative(rng: &mut ChaCha8Rng) -> Result<f64> {
    let (d, o) = shape(rng, 3, 6);
    let (t, u, v) = (random_exact(rng, d, o[0]), random_exact(rng, d, o[1]), random_exact(rng, d, o[2]));
    Ok(exact_flag(t.vee(&u)?.vee(&v)? == t.vee(&u.vee(&v)?)?))
}

fn exact_absorption(rng: &mut ChaCha8Rng) -> Result<f64> {
    let (d, o) = shape(rng, 1, 6);
    let t = random_exact(rng, d, o[0]);
    let sigma = random_sigma(rng, o[0]);
    let sym = t.symmetrize()?;
    // S P_σ = S, and the orbit-mean symmetrizer equals (1/ℓ!) Σ_σ P_σ
    let by_perms = if o[0] <= 4 { t.symmetrize_by_permutations()? == sym } else { true };
    Ok(exact_flag(t.permute(&sigma)?.symmetrize()? == sym && by_perms))
}

fn exact_product_norm(rng: &mut ChaCha8Rng) -> Result<f64> {
    let (d, o) = shape(rng, 2, 6);
    let (t, u) = (random_exact(rng, d, o[0]), random_exact(rng, d, o[1]));
    Ok(exact_flag(t.tensor_product(&u)?.norm_sqr() == t.norm_sqr() * u.norm_sqr()))
}

fn leibnitz(rng: &mut ChaCha8Rng) -> Result<f64> {
    // T ∨ U has order ≤ 5 so that ∇_S(T ∨ U) stays within the cap
    let (d, o) = shape(rng, 2, 5);
    let d = d.min(3);
    let t = random_poly_tensor(rng, d, o[0], 2, 2)?;
    let u = random_poly_tensor(rng, d, o[1], 2, 2)?;
    let (lhs, rhs) = leibnitz_sides(&t, &u)?;
    Ok(exact_flag(lhs == rhs))
}

const TRIALS: [(&str, Trial, bool); 10] = [
    ("vee_commutative", vee_commutative, false),
    ("vee_associative", vee_associative, false),
    ("product_norm", product_norm, false),
    ("vee_submultiplicative", vee_submultiplicative, false),
    ("symmetrizer_absorption", absorption, false),
    ("vee_commutative_exact", exact_commutative, true),
    ("vee_associative_exact", exact_associative, true),
    ("product_norm_exact", exact_product_norm, true),
    ("symmetrizer_absorption_exact", exact_absorption, true),
    ("symmetrized_leibnitz_exact", leibnitz, true),
];

/// Names of the identities, in tally order.
pub fn identity_names() -> Vec<&'static str> {
    TRIALS.iter().map(|t| t.0).collect()
}

/// Runs `trials` randomized instances of every identity.
pub fn run_identity_battery(trials: usize, seed: u64) -> Result<Vec<IdentityTally>> {
    TRIALS
        .iter()
        .enumerate()
        .map(|(k, &(name, trial, exact))| {
            let defects = (0..trials)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add((k as u64) << 32).wrapping_add(i as u64));
                    trial(&mut rng)
                })
                .collect::<Result<Vec<f64>>>()?;
            let limit = if exact { 0.0 } else { FLOAT_TOLERANCE };
            Ok(IdentityTally {
                name,
                trials,
                failures: defects.iter().filter(|&&e| !(e <= limit)).count(),
                worst: defects.iter().copied().fold(0.0, f64::max),
                exact,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symtensor::permutations;

    #[test]
    fn small_battery_passes() {
        let tallies = run_identity_battery(30, 7).unwrap();
        assert_eq!(tallies.len(), TRIALS.len());
        for t in &tallies {
            assert!(t.pass(), "{t:?}");
            assert_eq!(t.trials, 30);
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_identity_battery(5, 1).unwrap(), run_identity_battery(5, 1).unwrap());
    }

    #[test]
    fn permutations_cover_the_symmetric_group() {
        assert_eq!(permutations(4).len(), 24);
    }
}
