//! Tensor chain rule: partition coefficients, their sum identities, and an
//! exact check of the expansion against symbolic differentiation.
//!
//! ```bash
//! cargo run --example faa_di_bruno
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tamecalc::combinatorics::{check_sum_identities, enumerate_djw, fdb_coeff_real, fdb_terms_real};
use tamecalc::spectral::exact::{complex_monomial_poly, faa_di_bruno_exact_complex, random_point, Poly};

fn main() -> tamecalc::Result<()> {
    println!("D_{{2,4}} and P_{{4|p}}:");
    for p in enumerate_djw(2, 4)? {
        println!("  p = {p}  P = {}", fdb_coeff_real(4, &p)?);
    }

    println!("\nreal expansion of ∇³(G(f, x)):");
    for t in fdb_terms_real(3)? {
        println!("  {} · ∂^{} ∇^{} G  with p = {}", t.coeff, t.j, t.l, t.p);
    }

    for m in 1..=8 {
        let report = check_sum_identities(m);
        println!("m = {m}: {} sum identities, all hold: {}", report.checks.len(), report.all_pass());
    }

    // G = z² z̄ composed with a random complex polynomial on R²
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = complex_monomial_poly(2, 1);
    let f = Poly::random(&mut rng, 2, 3, 4, false);
    let point = random_point(&mut rng, 2);
    for m in 1..=4 {
        let check = faa_di_bruno_exact_complex(&g, &f, 2, m, &point)?;
        println!("exact ∇^{m}(z² z̄ ∘ f) matches expansion: {}", check.agrees());
    }
    Ok(())
}
