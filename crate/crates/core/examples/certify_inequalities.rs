//! Sample fields on a periodic box and certify every inequality feeding
//! the bound, then the bound itself.
//!
//! ```bash
//! cargo run --release --example certify_inequalities
//! ```

use tamecalc::estimates::Options;
use tamecalc::gmodel::GModel;
use tamecalc::spectral::{inequality_battery, standard_battery, verify_tame, GridSpec, DEFAULT_TOLERANCE};

fn main() -> tamecalc::Result<()> {
    let grid = GridSpec::default_for(2)?;
    let a = 2;
    let model = GModel::complex_monomial(2, 1)?;
    let mut worst = 0.0f64;
    let mut failures = 0;

    for spec in standard_battery() {
        let f = spec.build(grid)?;
        let mut records = inequality_battery(&f, a, 3, DEFAULT_TOLERANCE)?;
        records.extend(verify_tame(&model, &f, 3, a, Options::default(), DEFAULT_TOLERANCE)?.records);
        let max = records.iter().map(|r| r.ratio).fold(0.0, f64::max);
        let bad = records.iter().filter(|r| !r.pass).count();
        println!("{:<28} {:>4} checks  max lhs/rhs {max:.4}  failures {bad}", spec.label(), records.len());
        worst = worst.max(max);
        failures += bad;
    }
    println!("\nlargest ratio {worst:.6}, {failures} failures");
    Ok(())
}
