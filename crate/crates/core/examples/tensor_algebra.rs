//! Symmetric tensor products on small random tensors.
//!
//! ```bash
//! cargo run --example tensor_algebra
//! ```

use num_complex::Complex64;
use tamecalc::spectral::identities::run_identity_battery;
use tamecalc::symtensor::SymTensor;

fn main() -> tamecalc::Result<()> {
    let u = SymTensor::vector(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)])?;
    let v = SymTensor::vector(vec![Complex64::new(3.0, 0.0), Complex64::new(-1.0, 0.0)])?;

    let uv = u.vee(&v)?;
    println!("u ∨ v = {}", uv.to_json());
    println!("|u ⊗ v| = {:.6}, |u||v| = {:.6}", u.tensor_product(&v)?.norm(), u.norm() * v.norm());
    println!("|u ∨ v| = {:.6}", uv.norm());
    println!("u ∨ v symmetric: {}", uv.is_symmetric_exact());
    println!("u ∨ v == v ∨ u: {}", uv.approx_eq(&v.vee(&u)?, 1e-15));

    let cube = u.vee_power(3)?;
    println!("∨³u has {} components, norm {:.6}", cube.components().len(), cube.norm());

    println!("\nrandomized identity battery (200 trials each):");
    for t in run_identity_battery(200, 11)? {
        println!("  {:<30} failures {:>2}  worst {:.2e}", t.name, t.failures, t.worst);
    }
    Ok(())
}
