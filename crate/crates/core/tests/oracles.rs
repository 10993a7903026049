mod common;

use common::*;
use znfal::constructions::{appendix_b_set, example_2_3, submodule_coset, SkewMatrix};
use znfal::crt::{fiber_stats, holder_check, local_energy_ratios, project, project_all};
use znfal::energy::{distance_profile, energy_shells, incidence_energy};
use znfal::factorize;

#[test]
fn energy_matches_quadruple_count() {
    for set in corpus() {
        let pts = rows(&set);
        let oracle = quadruple_energy(&pts, set.n());
        assert_eq!(incidence_energy(&set), oracle.into(), "{set:?}");
    }
}

#[test]
fn distance_profile_matches_table() {
    for set in corpus() {
        let pts = rows(&set);
        let profile = distance_profile(&set);
        let table = nu(&pts, set.n());
        for (t, &c) in profile.nu.iter().enumerate() {
            assert_eq!(c, table.get(&(t as u64)).copied().unwrap_or(0));
        }
        let expected: Vec<u64> = distance_set(&pts, set.n()).into_iter().collect();
        assert_eq!(profile.distance_set(), expected);
    }
}

#[test]
fn shells_match_scale_restricted_counts() {
    for set in corpus().into_iter().step_by(3) {
        let pts = rows(&set);
        let n = set.n();
        let dec = energy_shells(&set);
        for k in divisors(n) {
            assert_eq!(
                dec.shells[&k],
                quadruple_shell(&pts, n, k).into(),
                "n = {n}, k = {k}"
            );
        }
        assert!(dec.is_consistent());
    }
}

#[test]
fn projections_match_coordinate_reduction() {
    for set in corpus() {
        let pts = rows(&set);
        for l in project_all(&set) {
            let got: std::collections::BTreeSet<Vec<u64>> =
                l.set.points().iter().map(|p| p.0.clone()).collect();
            assert_eq!(got, reduce_points(&pts, l.q()));
        }
    }
}

#[test]
fn fiber_sizes_match_grouping() {
    for set in corpus().into_iter().step_by(5) {
        let pts = rows(&set);
        for q in set.modulus().components() {
            let mut groups = std::collections::BTreeMap::<Vec<u64>, usize>::new();
            for p in &pts {
                *groups.entry(p.iter().map(|c| c % q).collect()).or_default() += 1;
            }
            let max = groups.values().copied().max().unwrap();
            assert_eq!(fiber_stats(&set, q).unwrap().max_multiplicity, max);
        }
        assert!(holder_check(&set).holds);
    }
}

#[test]
fn example_2_3_values() {
    let e = example_2_3();
    let pts = rows(&e);
    assert_eq!(quadruple_energy(&pts, 6), 56);
    let e3: Vec<Vec<u64>> = reduce_points(&pts, 3).into_iter().collect();
    assert_eq!(
        distance_set(&e3, 3).into_iter().collect::<Vec<_>>(),
        vec![0, 1, 2]
    );
    let l3 = project(&e, 3).unwrap();
    assert_eq!(distance_profile(&l3.set).distance_set(), vec![0, 1, 2]);
}

#[test]
fn appendix_b_distance_sets_by_enumeration() {
    for (p, d) in [(3u64, 2usize), (3, 3), (5, 2)] {
        let e = appendix_b_set(&SkewMatrix::standard(p, d).unwrap()).unwrap();
        let pts = rows(&e);
        let oracle: Vec<u64> = distance_set(&pts, p * p).into_iter().collect();
        assert_eq!(distance_profile(&e).distance_set(), oracle);
        assert_eq!(reduce_points(&pts, p).len(), pts.len());
    }
}

#[test]
fn coset_ratio_against_table() {
    // The full coset Ann(2)^2 in Z_6^2 has all distances in {0, 3}.
    let c = submodule_coset(&factorize(6).unwrap(), 2, 2, &[1, 2]).unwrap();
    let pts = rows(&c);
    assert_eq!(
        distance_set(&pts, 6).into_iter().collect::<Vec<_>>(),
        vec![0, 3]
    );
    let r = local_energy_ratios(&c);
    assert_eq!(
        r.global,
        num_rational::BigRational::new((quadruple_energy(&pts, 6) * 6).into(), 256.into(),)
    );
}
