//! Product sets across the CRT components: energy factorisation and the
//! pigeonhole bound on local ratios.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use znfal::crt::{local_energy_ratios, product_set, verify_product_energy};
use znfal::factorize;
use znfal::verify::random_locals;

fn main() -> znfal::Result<()> {
    let m = factorize(30)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..5 {
        let locals = random_locals(&m, 2, 6, &mut rng)?;
        let sizes: Vec<usize> = locals.iter().map(|l| l.len()).collect();
        let check = verify_product_energy(&m, &locals)?;
        let ratios = local_energy_ratios(&product_set(&m, &locals)?);
        println!(
            "sizes {sizes:?}: energy {} = {} ({}), global ratio {}, max local {}, pigeonhole {}",
            check.lhs,
            check.rhs,
            check.equal,
            ratios.global,
            ratios.max_local(),
            ratios.pigeonhole_holds(&ratios.global)
        );
    }
    Ok(())
}
