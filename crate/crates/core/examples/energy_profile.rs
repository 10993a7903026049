//! Distance multiplicities, incidence energy, scale shells and the
//! near-extremality flags of a random set.

use num_bigint::BigUint;
use znfal::constructions::random_set;
use znfal::energy::{
    cauchy_schwarz_holds, distance_profile, energy_shells, near_extremality_report,
    ExtremalityThresholds,
};
use znfal::factorize;

fn main() -> znfal::Result<()> {
    let set = random_set(&factorize(30)?, 2, 60, 7)?;
    let profile = distance_profile(&set);
    println!(
        "|E| = {}, |Δ(E)| = {}, energy = {}",
        set.len(),
        profile.distance_count(),
        profile.energy()
    );
    println!("Cauchy-Schwarz: {}", cauchy_schwarz_holds(&profile));

    let dec = energy_shells(&set);
    for (k, e) in &dec.shells {
        if *e > BigUint::ZERO {
            println!("  shell k = {k:>2}: {e}");
        }
    }
    println!(
        "  mixed: {}  (consistent: {})",
        dec.mixed,
        dec.is_consistent()
    );

    let ne = near_extremality_report(&set, &ExtremalityThresholds::default());
    println!(
        "ratio {}  density {}  size regime {}  near-extremal {}",
        ne.energy_ratio, ne.distance_density, ne.size_regime, ne.near_extremal
    );
    Ok(())
}
