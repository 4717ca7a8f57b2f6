//! Exact integer combinatorics behind the composition bounds.
//!
//! Everything here is arbitrary precision: Stirling numbers of the second
//! kind, the coefficients `P_{mjℓ}` of the universal polynomials (three
//! independent routes), the partition index sets `D_{jw}` / `D̂_{hkw}` and the
//! real/complex tensor Faà di Bruno coefficients.

mod faa_di_bruno;
mod partition;
mod pm;

use num_bigint::BigUint;
use num_traits::One;

pub use faa_di_bruno::{
    bell_number, bell_polynomial_value, check_sum_identities, fdb_coeff_complex, fdb_coeff_real,
    fdb_terms_complex, fdb_terms_real, ComplexFdbTerm, FdbTerm, Identity, IdentityCheck,
    SumIdentityReport,
};
pub(crate) use pm::to_f64;
pub use partition::{enumerate_dhkw, enumerate_djw, PartitionPair, PartitionSeq};
pub use pm::{
    pm_coeff_explicit, pm_coeff_recursive, pm_coeff_stirling, pm_evaluate, pm_polynomial,
    pm_polynomial_shared,
    pm_table_recursive, stirling2, PmPolynomial, PolyFormat, StirlingTable,
};

pub(crate) fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Big integers serialize as decimal strings so JSON consumers never overflow.
pub(crate) fn serialize_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
