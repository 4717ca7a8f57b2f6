//! Tame bound for `sinh(f)` with a Gaussian `f` on the line, and how its
//! coefficients grow with `ρ = S_ad‖f‖_a`.
//!
//! ```bash
//! cargo run --example nemytskij_bound
//! ```

use tamecalc::constants::EmbeddingParams;
use tamecalc::estimates::{c_nd, gamma_nd, monomial_gamma, tame_bound, Options};
use tamecalc::gmodel::GModel;
use tamecalc::spectral::{field_norms, GridField, GridSpec};

fn main() -> tamecalc::Result<()> {
    let g = GModel::sinh();
    let (n, a) = (3, 1);

    println!("ρ      γ_3,1      c_3,1");
    for rho in [0.0, 0.25, 0.5, 1.0, 2.0] {
        println!("{rho:<5}  {:<9.4}  {:.4}", gamma_nd(&g, n, 1, rho)?, c_nd(&g, n, 1, rho)?);
    }

    let grid = GridSpec::default_for(1)?;
    let f = GridField::gaussian(grid, 0.5, &[0.0])?;
    let norms = field_norms(&f, n, a);
    let report = tame_bound(&g, n, EmbeddingParams::new(a, 1)?, &norms, Options::default())?;

    let lhs = f.compose(&g)?.sobolev_norm(n as u32);
    println!("\n‖sinh(f)‖_3        = {lhs:.6}");
    println!("strong bound       = {:.6}", report.strong_rhs);
    println!("weak bound         = {:.6}", report.weak_rhs);
    for o in &report.per_order {
        println!("  order {}: X {:.4} Y {:.4}", o.m, o.x_coeff, o.y_coeff);
    }

    println!("\nmonomial Γ^J for n = 4, d = 2:");
    for j in 1..=5 {
        println!("  J={j}  {:.4}", monomial_gamma(j, 4, 2)?);
    }
    Ok(())
}
