//! Structure certificates: concentration of a point set on a coset
//! `v + Ann(K)^d`, isotropy of that coset modulo a proper divisor, and
//! exhaustive affine-subspace concentration of the local projections.

use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::crt::{project_all, LocalSet};
use crate::energy::{sq_dist, PointSet};
use crate::error::{Error, Result};
use crate::ring::{annihilator_submodule, divisors, Modulus, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetConcentration {
    pub divisor: u64,
    /// `m = n / K`, the generator of `Ann(K)`.
    pub generator: u64,
    /// Representative of the most populated class, reduced mod `m`.
    pub representative: Vector,
    pub support: usize,
    pub alpha: BigRational,
}

/// Best class of `E` modulo `m = n/K`; ties go to the lexicographically
/// smallest representative.
pub fn coset_concentration(set: &PointSet, divisor: u64) -> Result<CosetConcentration> {
    let n = set.n();
    let ann = annihilator_submodule(divisor, set.modulus())?;
    if divisor == 1 {
        return Err(Error::TrivialDivisor {
            divisor,
            n,
            reason: "Ann(1) is the zero submodule",
        });
    }
    let m = ann.generator;
    let mut classes: BTreeMap<Vector, usize> = BTreeMap::new();
    for p in set.points() {
        *classes.entry(p.reduced(m)).or_default() += 1;
    }
    let (representative, support) = classes
        .into_iter()
        .fold(None::<(Vector, usize)>, |best, (v, c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((v, c)),
        })
        .expect("nonempty set");
    Ok(CosetConcentration {
        divisor,
        generator: m,
        representative,
        support,
        alpha: BigRational::new(support.into(), set.len().into()),
    })
}

/// Points of `set` lying in `v + Ann(K)^d`, i.e. congruent to `v` mod `m`.
pub fn coset_members(set: &PointSet, generator: u64, representative: &[u64]) -> Vec<Vector> {
    set.points()
        .iter()
        .filter(|p| {
            p.iter()
                .zip(representative)
                .all(|(&x, &v)| x % generator == v % generator)
        })
        .cloned()
        .collect()
}

fn check_proper_divisor(m: &Modulus, k: u64) -> Result<()> {
    if !m.divides(k) {
        return Err(Error::InvalidDivisor {
            divisor: k,
            n: m.n(),
        });
    }
    if k == 1 || k == m.n() {
        return Err(Error::TrivialDivisor {
            divisor: k,
            n: m.n(),
            reason: "isotropy needs 1 < k < n",
        });
    }
    Ok(())
}

/// Every ordered pair of `points` has `‖x − y‖² ≡ 0 (mod k)`.
pub fn isotropy_check_points(m: &Modulus, points: &[Vector], k: u64) -> Result<bool> {
    check_proper_divisor(m, k)?;
    let n = m.n();
    Ok(points
        .iter()
        .all(|x| points.iter().all(|y| sq_dist(x, y, n).is_multiple_of(k))))
}

pub fn isotropy_check(set: &PointSet, k: u64) -> Result<bool> {
    isotropy_check_points(set.modulus(), set.points(), k)
}

/// Largest `k` with `1 < k < n` for which `points` is isotropic mod `k`.
pub fn largest_isotropy_divisor(m: &Modulus, points: &[Vector]) -> Option<u64> {
    let n = m.n();
    let mut g = n;
    for x in points {
        for y in points {
            g = g.gcd(&sq_dist(x, y, n));
        }
    }
    divisors(m)
        .into_iter()
        .rev()
        .filter(|&k| k > 1 && k < n && g.is_multiple_of(k))
        .find(|&k| isotropy_check_points(m, points, k).unwrap_or(false))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineConfig {
    /// Highest subspace dimension searched; `None` means `d − 1`.
    pub max_dim: Option<usize>,
    /// Lowest dimension whose best fraction reaches this is reported.
    pub threshold: BigRational,
    /// Cap on `p^{d·(dim+1)}` per searched dimension.
    pub budget: u128,
}

impl Default for AffineConfig {
    fn default() -> Self {
        AffineConfig {
            max_dim: None,
            threshold: BigRational::one(),
            budget: 100_000_000,
        }
    }
}

/// Best affine subspace `offset + span(basis)` of `F_p^d` found for one
/// local set. The basis is in reduced row echelon form and the offset has
/// zeros at the pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSummary {
    pub q: u64,
    pub prime: u64,
    pub subspace_dim: usize,
    pub basis: Vec<Vec<u64>>,
    pub offset: Vec<u64>,
    pub covered: usize,
    /// Size of the local set after reduction mod `p`.
    pub total: usize,
    pub fraction: BigRational,
}

impl AffineSummary {
    /// Does `x` (reduced mod p) lie on the subspace?
    pub fn contains(&self, x: &[u64]) -> bool {
        canonical_rep(x, &self.basis, self.prime) == self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineSearch {
    Complete(AffineSummary),
    /// The budget stopped the search before `max_dim`; `best` covers the
    /// dimensions below `stopped_at` only.
    Truncated {
        best: Option<AffineSummary>,
        stopped_at: usize,
        required: u128,
        budget: u128,
    },
}

impl AffineSearch {
    pub fn summary(&self) -> Option<&AffineSummary> {
        match self {
            AffineSearch::Complete(s) => Some(s),
            AffineSearch::Truncated { best, .. } => best.as_ref(),
        }
    }

    pub fn is_truncated(&self) -> bool {
        matches!(self, AffineSearch::Truncated { .. })
    }
}

fn canonical_rep(x: &[u64], basis: &[Vec<u64>], p: u64) -> Vec<u64> {
    let mut rep: Vec<u64> = x.iter().map(|&c| c % p).collect();
    for row in basis {
        let pivot = row.iter().position(|&c| c != 0).expect("nonzero basis row");
        let coef = rep[pivot];
        if coef != 0 {
            for (r, &b) in rep.iter_mut().zip(row) {
                *r = (*r + p - (coef * b) % p) % p;
            }
        }
    }
    rep
}

// All k×d matrices over F_p in reduced row echelon form with k pivots.
fn rref_bases(p: u64, d: usize, k: usize) -> Vec<Vec<Vec<u64>>> {
    fn pivot_sets(
        d: usize,
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..d {
            cur.push(c);
            pivot_sets(d, k, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    pivot_sets(d, k, 0, &mut Vec::new(), &mut sets);

    let mut out = Vec::new();
    for pivots in sets {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &pc)| {
                let pivots = &pivots;
                (pc + 1..d)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (row, c))
            })
            .collect();
        let total = (p as u128).pow(free.len() as u32);
        for code in 0..total {
            let mut basis = vec![vec![0u64; d]; k];
            for (row, &pc) in pivots.iter().enumerate() {
                basis[row][pc] = 1;
            }
            let mut c = code;
            for &(row, col) in &free {
                basis[row][col] = (c % p as u128) as u64;
                c /= p as u128;
            }
            out.push(basis);
        }
    }
    out
}

/// Exhaustive search for the affine subspace of `F_p^d` holding the largest
/// share of the local set (reduced mod `p` when `q = p^a`).
pub fn affine_concentration(local: &LocalSet, config: &AffineConfig) -> AffineSearch {
    let p = local.prime();
    let d = local.dim();
    let max_dim = config.max_dim.unwrap_or(d.saturating_sub(1)).min(d);
    let mut seen = HashSet::new();
    let pts: Vec<Vec<u64>> = local
        .set
        .points()
        .iter()
        .map(|x| x.iter().map(|&c| c % p).collect::<Vec<u64>>())
        .filter(|x| seen.insert(x.clone()))
        .collect();
    let total = pts.len();

    let mut per_dim: Vec<AffineSummary> = Vec::new();
    let mut truncated = None;
    for k in 0..=max_dim {
        let required = (p as u128)
            .checked_pow((d * (k + 1)) as u32)
            .unwrap_or(u128::MAX);
        if required > config.budget {
            truncated = Some((k, required));
            break;
        }
        let mut best: Option<AffineSummary> = None;
        for basis in rref_bases(p, d, k) {
            let mut counts: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
            for x in &pts {
                *counts.entry(canonical_rep(x, &basis, p)).or_default() += 1;
            }
            let (offset, covered) = counts
                .into_iter()
                .fold(None::<(Vec<u64>, usize)>, |acc, (rep, c)| match acc {
                    Some((_, bc)) if bc >= c => acc,
                    _ => Some((rep, c)),
                })
                .expect("nonempty local set");
            if best.as_ref().is_none_or(|b| covered > b.covered) {
                best = Some(AffineSummary {
                    q: local.q(),
                    prime: p,
                    subspace_dim: k,
                    basis,
                    offset,
                    covered,
                    total,
                    fraction: BigRational::new(covered.into(), total.into()),
                });
            }
        }
        per_dim.push(best.expect("at least one subspace per dimension"));
    }

    let chosen = per_dim
        .iter()
        .find(|s| s.fraction >= config.threshold)
        .or_else(|| {
            per_dim
                .iter()
                .fold(None, |acc: Option<&AffineSummary>, s| match acc {
                    Some(b) if b.covered >= s.covered => acc,
                    _ => Some(s),
                })
        })
        .cloned();

    match truncated {
        None => AffineSearch::Complete(chosen.expect("dimension 0 always searched")),
        Some((stopped_at, required)) => AffineSearch::Truncated {
            best: chosen,
            stopped_at,
            required,
            budget: config.budget,
        },
    }
}

/// Affine summaries for every component projection of `set`.
pub fn local_summaries(set: &PointSet, config: &AffineConfig) -> Vec<AffineSearch> {
    project_all(set)
        .iter()
        .map(|l| affine_concentration(l, config))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub alpha_min: BigRational,
    pub require_isotropy: bool,
    pub affine: AffineConfig,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            alpha_min: BigRational::new(1.into(), 2.into()),
            require_isotropy: true,
            affine: AffineConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCertificate {
    pub n: u64,
    pub dim: usize,
    pub divisor: u64,
    pub generator: u64,
    pub representative: Vector,
    pub support: usize,
    pub size: usize,
    pub alpha: BigRational,
    pub isotropy_divisor: Option<u64>,
    pub local_summaries: Vec<AffineSearch>,
}

impl StructureCertificate {
    /// Members of `set` inside the certified coset.
    pub fn members(&self, set: &PointSet) -> Vec<Vector> {
        coset_members(set, self.generator, &self.representative)
    }

    /// The full coset `v + Ann(K)^d` as a point set.
    pub fn coset(&self) -> Result<PointSet> {
        crate::constructions::submodule_coset(
            &Modulus::new(self.n)?,
            self.dim,
            self.divisor,
            &self.representative,
        )
    }

    /// Recomputes α from `(K, v)` and re-runs the isotropy check.
    pub fn verify(&self, set: &PointSet) -> std::result::Result<(), String> {
        if set.n() != self.n || set.dim() != self.dim {
            return Err("certificate does not match the ambient space".into());
        }
        if self.divisor <= 1
            || !self.n.is_multiple_of(self.divisor)
            || self.divisor * self.generator != self.n
        {
            return Err(format!(
                "bad divisor K = {} for n = {}",
                self.divisor, self.n
            ));
        }
        if self.representative.iter().any(|&x| x >= self.generator) {
            return Err("representative is not reduced mod m".into());
        }
        let members = self.members(set);
        let alpha = BigRational::new(members.len().into(), set.len().into());
        if members.len() != self.support || alpha != self.alpha {
            return Err(format!(
                "alpha mismatch: stated {}, recomputed {}",
                self.alpha, alpha
            ));
        }
        if let Some(k) = self.isotropy_divisor {
            match isotropy_check_points(set.modulus(), &members, k) {
                Ok(true) => {}
                Ok(false) => return Err(format!("coset is not isotropic mod {k}")),
                Err(e) => return Err(e.to_string()),
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Structured(Box<StructureCertificate>),
    Unstructured,
}

impl Classification {
    pub fn certificate(&self) -> Option<&StructureCertificate> {
        match self {
            Classification::Structured(c) => Some(c),
            Classification::Unstructured => None,
        }
    }
}

/// Scans `1 < K < n`, keeps candidates with `α ≥ α_min`, and picks the
/// largest α (ties: smallest K, then smallest v).
pub fn classify(set: &PointSet, config: &ClassifyConfig) -> Classification {
    let n = set.n();
    let mut best: Option<(CosetConcentration, Option<u64>)> = None;
    for k in divisors(set.modulus())
        .into_iter()
        .filter(|&k| k > 1 && k < n)
    {
        let cand = coset_concentration(set, k).expect("proper divisor");
        if cand.alpha < config.alpha_min {
            continue;
        }
        if best.as_ref().is_some_and(|(b, _)| b.alpha >= cand.alpha) {
            continue;
        }
        let members = coset_members(set, cand.generator, &cand.representative);
        let iso = largest_isotropy_divisor(set.modulus(), &members);
        if config.require_isotropy && iso.is_none() {
            continue;
        }
        best = Some((cand, iso));
    }
    match best {
        None => Classification::Unstructured,
        Some((c, iso)) => Classification::Structured(Box::new(StructureCertificate {
            n,
            dim: set.dim(),
            divisor: c.divisor,
            generator: c.generator,
            representative: c.representative,
            support: c.support,
            size: set.len(),
            alpha: c.alpha,
            isotropy_divisor: iso,
            local_summaries: local_summaries(set, &config.affine),
        })),
    }
}

/// Greedy peel: certify, drop the certified members, repeat on the rest.
pub fn classify_peel(
    set: &PointSet,
    config: &ClassifyConfig,
    max_rounds: usize,
) -> Vec<StructureCertificate> {
    let mut out = Vec::new();
    let mut rest = set.clone();
    for _ in 0..max_rounds {
        let Classification::Structured(cert) = classify(&rest, config) else {
            break;
        };
        let members: HashSet<Vector> = cert.members(&rest).into_iter().collect();
        let remaining: Vec<Vector> = rest
            .points()
            .iter()
            .filter(|p| !members.contains(*p))
            .cloned()
            .collect();
        out.push(*cert);
        if remaining.is_empty() {
            break;
        }
        rest = PointSet::new(set.modulus().clone(), set.dim(), remaining)
            .expect("subset of a valid set");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::factorize;

    fn set(n: u64, d: usize, rows: Vec<Vec<u64>>) -> PointSet {
        PointSet::from_rows(factorize(n).unwrap(), d, rows).unwrap()
    }

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn grid3() -> PointSet {
        set(6, 2, vec![vec![0, 0], vec![0, 3], vec![3, 0], vec![3, 3]])
    }

    #[test]
    fn coset_concentration_examples() {
        let c = coset_concentration(&grid3(), 2).unwrap();
        assert_eq!(c.generator, 3);
        assert_eq!(c.representative, Vector(vec![0, 0]));
        assert_eq!(c.alpha, ratio(1, 1));

        let single = set(30, 2, vec![vec![7, 19]]);
        for k in [2, 3, 5, 6, 10, 15, 30] {
            assert_eq!(coset_concentration(&single, k).unwrap().alpha, ratio(1, 1));
        }

        let full = set(6, 1, (0..6).map(|x| vec![x]).collect());
        let c = coset_concentration(&full, 2).unwrap();
        assert_eq!(c.alpha, ratio(1, 3));
        assert_eq!(c.representative, Vector(vec![0]));

        assert!(matches!(
            coset_concentration(&full, 1),
            Err(Error::TrivialDivisor { .. })
        ));
        assert!(matches!(
            coset_concentration(&full, 4),
            Err(Error::InvalidDivisor { .. })
        ));
    }

    #[test]
    fn isotropy_examples() {
        assert!(isotropy_check(&grid3(), 3).unwrap());
        assert!(!isotropy_check(&grid3(), 2).unwrap());
        let single = set(6, 2, vec![vec![1, 1]]);
        assert!(isotropy_check(&single, 2).unwrap());
        let m6 = factorize(6).unwrap();
        assert!(isotropy_check_points(&m6, &[], 3).unwrap());
        assert!(isotropy_check(&grid3(), 6).is_err());
        assert!(isotropy_check(&grid3(), 1).is_err());
        assert!(isotropy_check(&grid3(), 4).is_err());
    }

    #[test]
    fn largest_isotropy_divisor_examples() {
        let m6 = factorize(6).unwrap();
        assert_eq!(largest_isotropy_divisor(&m6, grid3().points()), Some(3));
        let m30 = factorize(30).unwrap();
        let pts = vec![Vector(vec![0]), Vector(vec![1])];
        assert_eq!(largest_isotropy_divisor(&m30, &pts), None);
    }

    #[test]
    fn affine_examples() {
        let e2 = LocalSet::from_rows(2, 1, 2, vec![vec![0, 0], vec![1, 0]]).unwrap();
        let s = affine_concentration(&e2, &AffineConfig::default());
        let s = s.summary().unwrap();
        assert_eq!(s.subspace_dim, 1);
        assert_eq!(s.fraction, ratio(1, 1));
        assert!(s.contains(&[0, 0]) && s.contains(&[1, 0]) && !s.contains(&[0, 1]));

        let single = LocalSet::from_rows(5, 1, 3, vec![vec![1, 2, 3]]).unwrap();
        let s = affine_concentration(&single, &AffineConfig::default());
        assert_eq!(s.summary().unwrap().subspace_dim, 0);
        assert_eq!(s.summary().unwrap().fraction, ratio(1, 1));

        let plane =
            LocalSet::from_rows(3, 1, 2, (0..9).map(|i| vec![i / 3, i % 3]).collect()).unwrap();
        let s = affine_concentration(&plane, &AffineConfig::default());
        let s = s.summary().unwrap();
        assert_eq!(s.subspace_dim, 1);
        assert_eq!(s.fraction, ratio(1, 3));
    }

    #[test]
    fn rref_enumeration_counts_subspaces() {
        // Gaussian binomials: [2 choose 1]_3 = 4, [3 choose 1]_2 = 7, [3 choose 2]_2 = 7.
        assert_eq!(rref_bases(3, 2, 1).len(), 4);
        assert_eq!(rref_bases(2, 3, 1).len(), 7);
        assert_eq!(rref_bases(2, 3, 2).len(), 7);
        assert_eq!(rref_bases(5, 2, 0).len(), 1);
    }

    #[test]
    fn affine_budget_truncates_explicitly() {
        let l = LocalSet::from_rows(7, 1, 3, vec![vec![0, 0, 0], vec![1, 2, 3]]).unwrap();
        let search = affine_concentration(
            &l,
            &AffineConfig {
                budget: 1000,
                ..AffineConfig::default()
            },
        );
        match search {
            AffineSearch::Truncated {
                stopped_at, best, ..
            } => {
                assert_eq!(stopped_at, 1);
                assert_eq!(best.unwrap().subspace_dim, 0);
            }
            other => panic!("expected truncation, got {other:?}"),
        }
    }

    #[test]
    fn classify_planted_coset() {
        let e = set(6, 2, vec![vec![1, 1], vec![1, 4], vec![4, 1], vec![4, 4]]);
        let cert = classify(&e, &ClassifyConfig::default());
        let cert = cert.certificate().unwrap();
        assert_eq!(cert.divisor, 2);
        assert_eq!(cert.representative, Vector(vec![1, 1]));
        assert_eq!(cert.alpha, ratio(1, 1));
        assert_eq!(cert.isotropy_divisor, Some(3));
        assert_eq!(cert.verify(&e), Ok(()));
        assert_eq!(cert.coset().unwrap().sorted_points(), e.sorted_points());
    }

    #[test]
    fn classify_example_set() {
        let e = set(6, 2, vec![vec![0, 0], vec![2, 0], vec![3, 0], vec![0, 2]]);
        let cls = classify(&e, &ClassifyConfig::default());
        let cert = cls.certificate().unwrap();
        assert_eq!(cert.divisor, 3);
        assert_eq!(cert.alpha, ratio(3, 4));
        assert_eq!(cert.isotropy_divisor, Some(2));
        let q2 = cert.local_summaries[0].summary().unwrap();
        assert_eq!((q2.q, q2.subspace_dim), (2, 1));
        assert_eq!(q2.fraction, ratio(1, 1));
        assert_eq!(cert.verify(&e), Ok(()));
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let e = grid3();
        let mut cert = classify(&e, &ClassifyConfig::default())
            .certificate()
            .unwrap()
            .clone();
        cert.isotropy_divisor = Some(2);
        assert!(cert.verify(&e).is_err());
        let mut cert2 = classify(&e, &ClassifyConfig::default())
            .certificate()
            .unwrap()
            .clone();
        cert2.alpha = ratio(1, 2);
        assert!(cert2.verify(&e).is_err());
    }

    #[test]
    fn peel_recovers_two_cosets() {
        let mut rows = vec![vec![0, 0], vec![0, 3], vec![3, 0], vec![3, 3]];
        rows.extend([vec![1, 2], vec![1, 5], vec![4, 2]]);
        let e = set(6, 2, rows);
        let config = ClassifyConfig {
            alpha_min: ratio(1, 2),
            ..ClassifyConfig::default()
        };
        let certs = classify_peel(&e, &config, 4);
        assert_eq!(certs.len(), 2);
        assert_eq!(certs[0].representative, Vector(vec![0, 0]));
        assert_eq!(certs[0].support, 4);
        assert_eq!(certs[1].representative, Vector(vec![1, 2]));
        assert_eq!(certs[1].support, 3);
    }
}
