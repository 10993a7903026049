//! The four-point set in Z_6^2: projections, fibers, local distance sets
//! and its structure certificate.

use znfal::constructions::example_2_3;
use znfal::crt::{fiber_stats, project_all};
use znfal::energy::distance_profile;
use znfal::structure::{classify, ClassifyConfig};

fn main() {
    let e = example_2_3();
    println!("Δ(E) = {:?}", distance_profile(&e).distance_set());
    for local in project_all(&e) {
        let pts: Vec<String> = local.set.points().iter().map(|p| p.to_string()).collect();
        let fibers = fiber_stats(&e, local.q()).expect("own component");
        println!(
            "E_{} = {{{}}}  Δ = {:?}  max fiber {}",
            local.q(),
            pts.join(", "),
            distance_profile(&local.set).distance_set(),
            fibers.max_multiplicity
        );
    }
    let class = classify(&e, &ClassifyConfig::default());
    if let Some(c) = class.certificate() {
        println!(
            "K = {}, v = {}, alpha = {}, isotropy k = {:?}",
            c.divisor, c.representative, c.alpha, c.isotropy_divisor
        );
        for s in c.local_summaries.iter().filter_map(|s| s.summary()) {
            println!(
                "  q = {}: affine dim {} covers {}",
                s.q, s.subspace_dim, s.fraction
            );
        }
    }
}
