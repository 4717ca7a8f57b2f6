//! Explicit, quantitative functional calculus in the Sobolev spaces `H^n(R^d)`.
//!
//! The crate computes the universal polynomials `P_m`, the Faà di Bruno
//! coefficients of the tensor chain rule, the embedding / Hausdorff–Young /
//! Adams–Frazier constants, and the fully explicit tame bound
//!
//! ```text
//! ‖G(f, x) − G(0, x)‖_n ≤ γ_nd(G, S_ad‖f‖_a)·‖f‖_n + c_nd(G, S_ad‖f‖_a)·‖f‖_{L²}
//! ```
//!
//! for composition (Nemytskij) operators. The [`spectral`] module samples
//! fields on periodic boxes and certifies every inequality numerically.
//!
//! Module map:
//!
//! - [`combinatorics`]: Stirling numbers, `P_{mjℓ}`, partition index sets,
//!   Faà di Bruno coefficients (exact big integers).
//! - [`constants`]: `E(s)`, `S_ad`, `U_mjd`, `C_rd`.
//! - [`symtensor`]: dense tensors with `⊗`, symmetrization and `∨`.
//! - [`gmodel`]: composition functions with analytically known suprema.
//! - [`estimates`]: `β_md`, `b_md`, `γ_nd`, `c_nd` and the tame bound.
//! - [`spectral`]: grid fields, spectral norms and the verification harness.
//! - [`cli`]: the command implementations behind the `tamecalc` binary.

pub mod cli;
pub mod combinatorics;
pub mod constants;
mod error;
pub mod estimates;
pub mod gmodel;
pub mod spectral;
pub mod symtensor;

pub use error::{Error, Result};
