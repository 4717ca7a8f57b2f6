//! Print `P_1..P_6` and cross-check the three coefficient formulas.
//!
//! ```bash
//! cargo run --example universal_polynomials
//! ```

use std::collections::BTreeMap;

use tamecalc::combinatorics::{
    pm_coeff_explicit, pm_coeff_recursive, pm_coeff_stirling, pm_evaluate, pm_polynomial, PolyFormat,
};

fn main() -> tamecalc::Result<()> {
    for m in 1..=6 {
        let p = pm_polynomial(m)?;
        println!("P_{m} = {}", p.render(PolyFormat::Text));
        for (j, l, c) in p.iter() {
            assert_eq!(*c, pm_coeff_recursive(m, j, l)?);
            assert_eq!(*c, pm_coeff_explicit(m, j, l)?);
            assert_eq!(*c, pm_coeff_stirling(m, j, l)?);
        }
    }

    // every ν = 1 collapses P_m to a polynomial in ρ alone
    let p4 = pm_polynomial(4)?;
    let ones: BTreeMap<_, _> = p4.iter().map(|(j, l, _)| ((j, l), 1.0)).collect();
    for rho in [0.1, 0.5, 1.0] {
        println!("P_4(ν ≡ 1, ρ = {rho}) = {}", pm_evaluate(&p4, &ones, rho)?);
    }

    println!("\nLaTeX:\n{}", pm_polynomial(3)?.render(PolyFormat::Latex));
    Ok(())
}
