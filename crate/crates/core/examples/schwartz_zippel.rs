//! Sampled zero fractions of polynomials over F_p against the D/p bound.

use znfal::poly::{schwartz_zippel_report, MultivariatePoly};

fn main() -> znfal::Result<()> {
    let p = 5;
    let polys = [
        (
            "x1 + 2*x2 + 3",
            MultivariatePoly::from_terms(
                p,
                2,
                [(vec![1, 0], 1), (vec![0, 1], 2), (vec![0, 0], 3)],
            )?,
        ),
        (
            "x1*x2",
            MultivariatePoly::from_terms(p, 2, [(vec![1, 1], 1)])?,
        ),
        (
            "x1^2 - x2^2",
            MultivariatePoly::from_terms(p, 2, [(vec![2, 0], 1), (vec![0, 2], -1)])?,
        ),
        ("0", MultivariatePoly::zero(p, 2)),
    ];
    for (name, f) in &polys {
        let r = schwartz_zippel_report(f, p, 10_000, 1)?;
        println!(
            "{name:<14} bound {:<4} sampled {:<10} exact {:?} within slack {:?}",
            r.bound.to_string(),
            r.observed.to_string(),
            r.exact.map(|e| e.to_string()),
            r.within_slack
        );
    }
    Ok(())
}
