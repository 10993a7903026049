//! The skew lift E = {x + pAx} in Z_{p^2}^d: identity checks, its distance
//! set, and the absence of low-degree vanishing polynomials.

use znfal::constructions::{appendix_b_set, SkewMatrix};
use znfal::energy::distance_profile;
use znfal::poly::{
    b_construction_identity_checks, residue_product_identity, vanishing_space, BCheckConfig,
    VanishingConfig,
};

fn main() -> znfal::Result<()> {
    for (p, d) in [(3, 2), (3, 3), (5, 2)] {
        let a = SkewMatrix::standard(p, d)?;
        let e = appendix_b_set(&a)?;
        let checks = b_construction_identity_checks(p, a.entries(), &BCheckConfig::default())?;
        println!(
            "p = {p}, d = {d}: |E| = {}, identities {}, Δ(E) = {:?}",
            e.len(),
            checks.all_pass(),
            distance_profile(&e).distance_set()
        );
        for deg in 0..p as u32 {
            let basis = vanishing_space(&e, deg, &VanishingConfig::default())?;
            println!(
                "  degree <= {deg}: {} vanishing generators",
                basis.generators.len()
            );
        }
    }
    for p in [3, 5, 7] {
        println!(
            "p = {p}: p * prod(T - a) vanishes on Z_{}: {}",
            p * p,
            residue_product_identity(p)?
        );
    }
    Ok(())
}
