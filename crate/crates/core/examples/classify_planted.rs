//! Plant a coset of Ann(K)^d among random points, classify, check the
//! certificate, then peel the remaining structure. The winning coset may
//! be coarser than the plant: a coarser coset containing it never has
//! smaller alpha.

use znfal::constructions::{random_set, submodule_coset};
use znfal::structure::{classify, classify_peel, ClassifyConfig};
use znfal::{factorize, PointSet};

fn main() -> znfal::Result<()> {
    let m = factorize(30)?;
    let coset = submodule_coset(&m, 2, 5, &[4, 9])?;
    let noise = random_set(&m, 2, 8, 11)?;
    let mut points = coset.points().to_vec();
    points.extend(
        noise
            .points()
            .iter()
            .filter(|p| !coset.contains(p))
            .cloned(),
    );
    let set = PointSet::new(m, 2, points)?;

    let cfg = ClassifyConfig::default();
    let class = classify(&set, &cfg);
    let cert = class.certificate().expect("planted coset dominates");
    println!(
        "K = {}, m = {}, v = {}, alpha = {} ({} of {}), isotropy k = {:?}",
        cert.divisor,
        cert.generator,
        cert.representative,
        cert.alpha,
        cert.support,
        cert.size,
        cert.isotropy_divisor
    );
    println!("verify: {:?}", cert.verify(&set));
    let recovered = cert.coset()?.sorted_points();
    println!(
        "plant inside recovered coset: {}",
        coset.points().iter().all(|p| recovered.contains(p))
    );

    let loose = ClassifyConfig {
        alpha_min: num_rational::BigRational::new(1.into(), 10.into()),
        ..cfg
    };
    for (i, c) in classify_peel(&set, &loose, 4).iter().enumerate() {
        println!(
            "peel {i}: K = {}, v = {}, support {}",
            c.divisor, c.representative, c.support
        );
    }
    Ok(())
}
