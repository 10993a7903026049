//! Squared distances, multiplicity profiles and incidence energy.
//!
//! Everything here is driven by one O(|E|²) pass over ordered pairs. The
//! energy is read off the profile as `Σ_t ν(t)²`; the quadruple count it
//! replaces is only ever evaluated by test oracles.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ring::{divisors, Modulus, Vector};

/// A nonempty, duplicate-free set of reduced vectors in `Z_n^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    modulus: Modulus,
    dim: usize,
    points: Vec<Vector>,
}

impl PointSet {
    pub fn new(modulus: Modulus, dim: usize, points: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension { min: 1, found: 0 });
        }
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let n = modulus.n();
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if let Some(&value) = p.iter().find(|&&x| x >= n) {
                return Err(Error::UnreducedCoordinate { value, n });
            }
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(p.0.clone()));
            }
        }
        Ok(PointSet {
            modulus,
            dim,
            points,
        })
    }

    pub fn from_rows(modulus: Modulus, dim: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        Self::new(modulus, dim, rows.into_iter().map(Vector).collect())
    }

    /// Reduces arbitrary integers into `[0, n)` first.
    pub fn from_integers(modulus: Modulus, dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let points = rows
            .iter()
            .map(|r| Vector(r.iter().map(|&x| modulus.reduce(x)).collect()))
            .collect();
        Self::new(modulus, dim, points)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn n(&self) -> u64 {
        self.modulus.n()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.points.iter().any(|p| p.0 == v)
    }

    /// Translate every point by `w` (mod n).
    pub fn translate(&self, w: &[u64]) -> Result<PointSet> {
        check_dim(self.dim, w.len())?;
        let m = &self.modulus;
        let points = self
            .points
            .iter()
            .map(|p| {
                Vector(
                    p.iter()
                        .zip(w)
                        .map(|(&a, &b)| m.add(a, b % m.n()))
                        .collect(),
                )
            })
            .collect();
        PointSet::new(self.modulus.clone(), self.dim, points)
    }

    /// Points as a sorted set, for set-wise comparisons.
    pub fn sorted_points(&self) -> BTreeSet<Vector> {
        self.points.iter().cloned().collect()
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `‖x − y‖² mod n`.
pub fn squared_distance(x: &[u64], y: &[u64], m: &Modulus) -> Result<u64> {
    check_dim(x.len(), y.len())?;
    Ok(sq_dist(x, y, m.n()))
}

#[inline]
pub(crate) fn sq_dist(x: &[u64], y: &[u64], n: u64) -> u64 {
    let n = n as u128;
    let mut acc = 0u128;
    for (&a, &b) in x.iter().zip(y) {
        let diff = (a as u128 + n - b as u128) % n;
        acc = (acc + diff * diff) % n;
    }
    acc as u64
}

/// `gcd(n, x_1 − y_1, …, x_d − y_d)`: the largest `k | n` with `x ≡ y (mod k)`
/// in every coordinate. Equal points sit at scale `n`.
pub fn pair_scale(x: &[u64], y: &[u64], m: &Modulus) -> Result<u64> {
    check_dim(x.len(), y.len())?;
    Ok(scale_of(x, y, m.n()))
}

#[inline]
pub(crate) fn scale_of(x: &[u64], y: &[u64], n: u64) -> u64 {
    x.iter().zip(y).fold(n, |g, (&a, &b)| {
        let diff = (a + n - b) % n;
        g.gcd(&diff)
    })
}

/// Runs `visit` over all ordered pairs, splitting the outer index across
/// `threads` workers and merging their accumulators in worker order.
pub(crate) fn fold_pairs<T, I, V, M>(
    points: &[Vector],
    threads: usize,
    init: I,
    visit: V,
    merge: M,
) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, &Vector, &Vector) + Sync,
    M: Fn(&mut T, T),
{
    let threads = threads.max(1).min(points.len().max(1));
    if threads == 1 {
        let mut acc = init();
        for x in points {
            for y in points {
                visit(&mut acc, x, y);
            }
        }
        return acc;
    }
    let chunk = points.len().div_ceil(threads);
    let partials: Vec<T> = std::thread::scope(|scope| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .map(|rows| {
                let (init, visit) = (&init, &visit);
                scope.spawn(move || {
                    let mut acc = init();
                    for x in rows {
                        for y in points {
                            visit(&mut acc, x, y);
                        }
                    }
                    acc
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("pair worker panicked"))
            .collect()
    });
    let mut iter = partials.into_iter();
    let mut acc = iter.next().unwrap_or_else(&init);
    for part in iter {
        merge(&mut acc, part);
    }
    acc
}

/// The multiplicity function `ν_E` over `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    pub nu: Vec<u64>,
    pub size: usize,
}

impl DistanceProfile {
    pub fn distance_set(&self) -> Vec<u64> {
        self.nu
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(t, _)| t as u64)
            .collect()
    }

    pub fn distance_count(&self) -> usize {
        self.nu.iter().filter(|&&c| c > 0).count()
    }

    /// `Σ_t ν(t)²`.
    pub fn energy(&self) -> BigUint {
        let s: u128 = self.nu.iter().map(|&c| c as u128 * c as u128).sum();
        BigUint::from(s)
    }
}

pub fn distance_profile(set: &PointSet) -> DistanceProfile {
    distance_profile_threaded(set, 1)
}

pub fn distance_profile_threaded(set: &PointSet, threads: usize) -> DistanceProfile {
    let n = set.n();
    let nu = fold_pairs(
        set.points(),
        threads,
        || vec![0u64; n as usize],
        |acc, x, y| acc[sq_dist(x, y, n) as usize] += 1,
        |acc, part| acc.iter_mut().zip(part).for_each(|(a, b)| *a += b),
    );
    DistanceProfile {
        nu,
        size: set.len(),
    }
}

/// `Δ(E)`, ascending.
pub fn distance_set(set: &PointSet) -> Vec<u64> {
    distance_profile(set).distance_set()
}

pub fn incidence_energy(set: &PointSet) -> BigUint {
    distance_profile(set).energy()
}

/// Per-scale multiplicities `ν^(k)(t)`: scale → (distance → count).
pub type ScaleProfile = BTreeMap<u64, BTreeMap<u64, u64>>;

pub fn scale_profile(set: &PointSet, threads: usize) -> ScaleProfile {
    let n = set.n();
    let mut profile = fold_pairs(
        set.points(),
        threads,
        ScaleProfile::new,
        |acc, x, y| {
            *acc.entry(scale_of(x, y, n))
                .or_default()
                .entry(sq_dist(x, y, n))
                .or_default() += 1;
        },
        |acc, part| {
            for (k, row) in part {
                let dst = acc.entry(k).or_default();
                for (t, c) in row {
                    *dst.entry(t).or_default() += c;
                }
            }
        },
    );
    for k in divisors(set.modulus()) {
        profile.entry(k).or_default();
    }
    profile
}

/// Total energy split into divisor shells plus the cross-scale remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyDecomposition {
    pub total: BigUint,
    pub shells: BTreeMap<u64, BigUint>,
    pub mixed: BigUint,
}

impl EnergyDecomposition {
    pub fn shell_sum(&self) -> BigUint {
        self.shells.values().sum()
    }

    pub fn is_consistent(&self) -> bool {
        self.shell_sum() + &self.mixed == self.total
    }
}

pub fn energy_shells(set: &PointSet) -> EnergyDecomposition {
    energy_shells_threaded(set, 1)
}

pub fn energy_shells_threaded(set: &PointSet, threads: usize) -> EnergyDecomposition {
    let total = distance_profile_threaded(set, threads).energy();
    shells_from_profile(&scale_profile(set, threads), total)
}

pub(crate) fn shells_from_profile(profile: &ScaleProfile, total: BigUint) -> EnergyDecomposition {
    let shells: BTreeMap<u64, BigUint> = profile
        .iter()
        .map(|(&k, row)| {
            let s: u128 = row.values().map(|&c| c as u128 * c as u128).sum();
            (k, BigUint::from(s))
        })
        .collect();
    let shell_sum: BigUint = shells.values().sum();
    let mixed = &total - shell_sum;
    EnergyDecomposition {
        total,
        shells,
        mixed,
    }
}

/// `Σ_t Σ_{k ≠ k'} ν^(k)(t) ν^(k')(t)`, evaluated term by term.
pub fn mixed_cross_terms(profile: &ScaleProfile) -> BigUint {
    let mut acc = 0u128;
    for (k, row) in profile {
        for (k2, row2) in profile {
            if k == k2 {
                continue;
            }
            for (t, &c) in row {
                if let Some(&c2) = row2.get(t) {
                    acc += c as u128 * c2 as u128;
                }
            }
        }
    }
    BigUint::from(acc)
}

/// Thresholds for the near-extremal regime: `ρ ≥ K` and `|Δ(E)|/n ≤ C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalityThresholds {
    pub energy_ratio: BigRational,
    pub distance_density: BigRational,
}

impl Default for ExtremalityThresholds {
    fn default() -> Self {
        ExtremalityThresholds {
            energy_ratio: BigRational::from_integer(2.into()),
            distance_density: BigRational::new(1.into(), 10.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearExtremality {
    /// `𝓔_n(E) · n / |E|⁴`.
    pub energy_ratio: BigRational,
    /// `|Δ(E)| / n`.
    pub distance_density: BigRational,
    /// `|E|² / n^{d+1}`; of order one when `|E| ≍ n^{(d+1)/2}`.
    pub size_regime: BigRational,
    pub high_energy: bool,
    pub few_distances: bool,
    pub near_extremal: bool,
}

/// `𝓔 · q / |E|⁴` as an exact rational.
pub fn energy_ratio(energy: &BigUint, modulus: u64, size: usize) -> BigRational {
    let size4 = BigUint::from(size).pow(4);
    BigRational::new((energy * BigUint::from(modulus)).into(), size4.into())
}

pub fn near_extremality_report(
    set: &PointSet,
    thresholds: &ExtremalityThresholds,
) -> NearExtremality {
    near_extremality_from_profile(set, &distance_profile(set), thresholds)
}

pub fn near_extremality_from_profile(
    set: &PointSet,
    profile: &DistanceProfile,
    thresholds: &ExtremalityThresholds,
) -> NearExtremality {
    let n = set.n();
    let energy_ratio = energy_ratio(&profile.energy(), n, set.len());
    let distance_density = BigRational::new(profile.distance_count().into(), n.into());
    let size = BigUint::from(set.len());
    let size_regime = BigRational::new(
        (&size * &size).into(),
        BigUint::from(n).pow(set.dim() as u32 + 1).into(),
    );
    let high_energy = energy_ratio >= thresholds.energy_ratio;
    let few_distances = distance_density <= thresholds.distance_density;
    NearExtremality {
        energy_ratio,
        distance_density,
        size_regime,
        high_energy,
        few_distances,
        near_extremal: high_energy && few_distances,
    }
}

/// `𝓔_n(E) · |Δ(E)| ≥ |E|⁴`, checked exactly.
pub fn cauchy_schwarz_holds(profile: &DistanceProfile) -> bool {
    let lhs = profile.energy() * BigUint::from(profile.distance_count());
    lhs >= BigUint::from(profile.size).pow(4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::factorize;

    fn set(n: u64, d: usize, rows: &[&[u64]]) -> PointSet {
        PointSet::from_rows(
            factorize(n).unwrap(),
            d,
            rows.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn squared_distance_examples() {
        let m6 = factorize(6).unwrap();
        let m9 = factorize(9).unwrap();
        assert_eq!(squared_distance(&[0, 0], &[0, 0], &m6).unwrap(), 0);
        assert_eq!(squared_distance(&[0, 0], &[3, 0], &m6).unwrap(), 3);
        assert_eq!(squared_distance(&[1, 0], &[0, 2], &m9).unwrap(), 5);
        assert_eq!(
            squared_distance(&[1], &[0, 2], &m9),
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn point_set_validation() {
        let m = factorize(6).unwrap();
        assert_eq!(PointSet::new(m.clone(), 2, vec![]), Err(Error::EmptySet));
        assert_eq!(
            PointSet::from_rows(m.clone(), 1, vec![vec![1], vec![1]]),
            Err(Error::DuplicatePoint(vec![1]))
        );
        assert_eq!(
            PointSet::from_rows(m.clone(), 1, vec![vec![6]]),
            Err(Error::UnreducedCoordinate { value: 6, n: 6 })
        );
        let s = PointSet::from_integers(m, 2, &[vec![-1, 7]]).unwrap();
        assert_eq!(s.points()[0].0, vec![5, 1]);
    }

    #[test]
    fn profile_examples() {
        let single = set(6, 2, &[&[1, 4]]);
        let prof = distance_profile(&single);
        assert_eq!(prof.nu, vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(distance_set(&single), vec![0]);

        let pair = set(2, 1, &[&[0], &[1]]);
        assert_eq!(distance_profile(&pair).nu, vec![2, 2]);

        let grid = set(6, 2, &[&[0, 0], &[0, 3], &[3, 0], &[3, 3]]);
        assert_eq!(distance_set(&grid), vec![0, 3]);
    }

    #[test]
    fn energy_examples() {
        assert_eq!(incidence_energy(&set(7, 3, &[&[1, 2, 3]])), big(1));
        assert_eq!(incidence_energy(&set(2, 1, &[&[0], &[1]])), big(8));
    }

    #[test]
    fn pair_scale_examples() {
        let m6 = factorize(6).unwrap();
        assert_eq!(pair_scale(&[3, 0], &[0, 0], &m6).unwrap(), 3);
        assert_eq!(pair_scale(&[2, 3], &[0, 0], &m6).unwrap(), 1);
        assert_eq!(pair_scale(&[4, 5], &[4, 5], &m6).unwrap(), 6);
    }

    #[test]
    fn shell_examples() {
        let single = energy_shells(&set(6, 1, &[&[2]]));
        assert_eq!(single.total, big(1));
        assert_eq!(single.shells[&6], big(1));
        assert_eq!(single.mixed, big(0));
        assert_eq!(single.shells.len(), 4);

        let z2 = energy_shells(&set(2, 1, &[&[0], &[1]]));
        assert_eq!(z2.shells[&2], big(4));
        assert_eq!(z2.shells[&1], big(4));
        assert_eq!(z2.mixed, big(0));

        let z6 = energy_shells(&set(6, 1, &[&[0], &[3]]));
        assert_eq!(z6.shells[&6], big(4));
        assert_eq!(z6.shells[&3], big(4));
        assert_eq!(z6.shells[&2], big(0));
        assert_eq!(z6.mixed, big(0));
        assert!(z6.is_consistent());
    }

    #[test]
    fn mixed_term_nonzero_case() {
        // {0, 1, 3} in Z_4: the scale-2 pairs (1,3), (3,1) have distance 0,
        // the same value as the three scale-4 diagonal pairs. Mixed = 2·2·3.
        let s = set(4, 1, &[&[0], &[1], &[3]]);
        let dec = energy_shells(&s);
        let prof = scale_profile(&s, 1);
        assert_eq!(dec.mixed, big(12));
        assert_eq!(dec.mixed, mixed_cross_terms(&prof));
    }

    #[test]
    fn singleton_near_extremality() {
        let r = near_extremality_report(&set(6, 2, &[&[0, 0]]), &ExtremalityThresholds::default());
        assert_eq!(r.energy_ratio, BigRational::from_integer(6.into()));
        assert_eq!(r.distance_density, BigRational::new(1.into(), 6.into()));
        assert!(r.high_energy);
        assert!(!r.few_distances);
    }

    #[test]
    fn full_space_reports_are_exact() {
        // Z_5^1 and Z_6^1 by direct enumeration of pair distances.
        let full5 = set(5, 1, &[&[0], &[1], &[2], &[3], &[4]]);
        assert_eq!(distance_set(&full5), vec![0, 1, 4]);
        let full6 = set(6, 1, &[&[0], &[1], &[2], &[3], &[4], &[5]]);
        assert_eq!(distance_set(&full6), vec![0, 1, 3, 4]);
        let r = near_extremality_report(&full6, &ExtremalityThresholds::default());
        assert_eq!(r.distance_density, BigRational::new(4.into(), 6.into()));
    }

    #[test]
    fn threaded_profile_matches_sequential() {
        let rows: Vec<Vec<u64>> = (0..30u64).map(|i| vec![i % 30, (i * 7) % 30]).collect();
        let s = PointSet::from_rows(factorize(30).unwrap(), 2, rows).unwrap();
        let seq = distance_profile(&s);
        for t in [2, 3, 8, 64] {
            assert_eq!(distance_profile_threaded(&s, t), seq);
            assert_eq!(energy_shells_threaded(&s, t), energy_shells(&s));
        }
    }
}
