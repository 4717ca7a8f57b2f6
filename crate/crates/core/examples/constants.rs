//! The scalar constants behind the tame bound.
//!
//! ```bash
//! cargo run --example constants
//! ```

use tamecalc::constants::{
    adams_frazier_u, embedding_constant, func_e, gagliardo_constant, hausdorff_young_c, EmbeddingParams, Exponent,
};

fn main() -> tamecalc::Result<()> {
    println!("E(1/2) = {}", func_e(0.5)?);

    println!("\nS_ad:");
    for d in 1..=4u32 {
        let row: Vec<String> = (d / 2 + 1..=d / 2 + 3)
            .map(|a| EmbeddingParams::new(a, d).map(|p| format!("a={a}: {:.6}", embedding_constant(p))))
            .collect::<tamecalc::Result<_>>()?;
        println!("  d={d}  {}", row.join("  "));
    }

    println!("\nC_rd:");
    for r in ["2", "4", "8", "inf"] {
        let e: Exponent = r.parse()?;
        println!("  r={r:>3}  d=1: {:.6}  d=3: {:.6}", hausdorff_young_c(e, 1)?, hausdorff_young_c(e, 3)?);
    }

    println!("\nU_mjd (d = 2):");
    for m in 1..=5 {
        let row: Vec<String> = (1..=m)
            .map(|j| adams_frazier_u(m, j, 2).map(|u| format!("{u:.5}")))
            .collect::<tamecalc::Result<_>>()?;
        println!("  m={m}  {}", row.join(" "));
    }

    println!("\nGagliardo constant, m = 4, d = 3:");
    for l in 0..=4 {
        println!("  l={l}  {:.6}", gagliardo_constant(l, 4, 3)?);
    }
    Ok(())
}
