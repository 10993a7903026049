//! Vanishing polynomials of a planted set over a composite modulus.

use znfal::poly::{vanishing_space, MultivariatePoly, VanishingConfig};
use znfal::{factorize, PointSet};

fn main() -> znfal::Result<()> {
    // Points on the conic x^2 + y^2 = 1 in Z_12^2.
    let n = 12;
    let pts: Vec<Vec<u64>> = (0..n)
        .flat_map(|x| (0..n).map(move |y| vec![x, y]))
        .filter(|p| (p[0] * p[0] + p[1] * p[1]) % n == 1)
        .collect();
    let set = PointSet::from_rows(factorize(n)?, 2, pts)?;
    let basis = vanishing_space(&set, 2, &VanishingConfig::default())?;
    println!(
        "|E| = {}, kernel orders {:?}",
        set.len(),
        basis.kernel_log_orders()
    );
    for w in &basis.warnings {
        println!("warning: {w}");
    }
    for g in &basis.generators {
        println!("  {g}");
    }
    let conic =
        MultivariatePoly::from_terms(n, 2, [(vec![2, 0], 1), (vec![0, 2], 1), (vec![0, 0], -1)])?;
    println!("x1^2 + x2^2 - 1 in the space: {}", basis.contains(&conic));
    Ok(())
}
