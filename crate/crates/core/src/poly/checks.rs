use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::multivariate::MultivariatePoly;
use super::univariate::annihilator_poly;
use crate::constructions::{check_odd_prime, is_skew_symmetric, lift_point, residue_cube};
use crate::energy::{distance_set, sq_dist, PointSet};
use crate::error::{Error, Result};
use crate::ring::{is_prime, mul_mod};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiCheck {
    pub holds: bool,
    pub distance_set: Vec<u64>,
    /// `deg Q = |Δ(E)|`.
    pub degree: usize,
}

/// Evaluates `Q(‖x − y‖²)` with `Q = ∏_{s ∈ Δ(E)} (T − s)` on every
/// ordered pair. Always true; a false result means the polynomial or
/// distance code is broken.
pub fn psi_vanishing_check(set: &PointSet) -> PsiCheck {
    let n = set.n();
    let delta = distance_set(set);
    let q = annihilator_poly(&delta, n).expect("Δ(E) contains 0");
    let holds = set
        .points()
        .iter()
        .all(|x| set.points().iter().all(|y| q.eval(sq_dist(x, y, n)) == 0));
    PsiCheck {
        holds,
        degree: q.degree().unwrap_or(0),
        distance_set: delta,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchwartzZippelReport {
    pub p: u64,
    pub degree: Option<u32>,
    pub zero_polynomial: bool,
    /// `D / p`.
    pub bound: BigRational,
    pub samples: usize,
    pub seed: u64,
    pub zeros: usize,
    pub observed: BigRational,
    /// Exact vanishing fraction over all of `F_p^arity`, when enumerable.
    pub exact: Option<BigRational>,
    /// `observed ≤ bound + 3σ` with `σ² = b(1 − b)/samples`; `None` for
    /// the zero polynomial, where the bound does not apply.
    pub within_slack: Option<bool>,
}

const EXHAUSTIVE_LIMIT: u128 = 1_000_000;

fn ratio(a: u128, b: u128) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn schwartz_zippel_report(
    f: &MultivariatePoly,
    p: u64,
    samples: usize,
    seed: u64,
) -> Result<SchwartzZippelReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f.modulus() != p {
        return Err(Error::ModulusMismatch {
            expected: p,
            found: f.modulus(),
        });
    }
    let arity = f.arity();
    let degree = f.total_degree();
    let bound = ratio(degree.unwrap_or(0) as u128, p as u128);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zeros = 0usize;
    let mut x = vec![0u64; arity];
    for _ in 0..samples {
        for xi in x.iter_mut() {
            *xi = rng.gen_range(0..p);
        }
        zeros += (f.eval(&x) == 0) as usize;
    }
    let observed = ratio(zeros as u128, samples.max(1) as u128);

    let exact = (p as u128)
        .checked_pow(arity as u32)
        .filter(|&total| total <= EXHAUSTIVE_LIMIT)
        .map(|total| {
            let z = residue_cube(p, arity).filter(|x| f.eval(x) == 0).count();
            ratio(z as u128, total)
        });

    let one = ratio(1, 1);
    let within_slack = (!f.is_zero()).then(|| {
        observed <= bound || bound >= one || {
            let excess = &observed - &bound;
            let var = &bound * (&one - &bound) / ratio(samples.max(1) as u128, 1);
            &excess * &excess <= ratio(9, 1) * var
        }
    });

    Ok(SchwartzZippelReport {
        p,
        degree,
        zero_polynomial: f.is_zero(),
        bound,
        samples,
        seed,
        zeros,
        observed,
        exact,
        within_slack,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive { count: u128 },
    Sampled { count: u128, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BCheckConfig {
    /// Enumerate vectors (resp. pairs) exhaustively when there are at most
    /// this many.
    pub exhaustive_limit: u128,
    pub samples: usize,
    pub seed: u64,
}

impl Default for BCheckConfig {
    fn default() -> Self {
        BCheckConfig {
            exhaustive_limit: 1_000_000,
            samples: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BIdentityChecks {
    pub p: u64,
    pub dim: usize,
    pub skew_symmetric: bool,
    /// `⟨v, Av⟩ ≡ 0 (mod p)`.
    pub quadratic_form_vanishes: bool,
    pub quadratic_coverage: Coverage,
    /// `‖X − Y‖² ≡ ‖x − y‖² (mod p²)` for `X = x + pAx`.
    pub distance_preserved: bool,
    pub pair_coverage: Coverage,
}

impl BIdentityChecks {
    pub fn all_pass(&self) -> bool {
        self.skew_symmetric && self.quadratic_form_vanishes && self.distance_preserved
    }
}

fn quadratic(a: &[Vec<u64>], v: &[u64], p: u64) -> u64 {
    a.iter().zip(v).fold(0, |acc, (row, &vi)| {
        let av = row
            .iter()
            .zip(v)
            .fold(0, |s, (&aij, &vj)| (s + aij * vj) % p);
        (acc + mul_mod(vi, av, p)) % p
    })
}

fn preserved(a: &[Vec<u64>], x: &[u64], y: &[u64], p: u64) -> bool {
    let q = p * p;
    sq_dist(&lift_point(x, a, p), &lift_point(y, a, p), q) == sq_dist(x, y, q)
}

/// Checks the three identities behind the skew-lift construction for a raw
/// `d × d` matrix over `F_p`. Skew symmetry is reported, not required.
pub fn b_construction_identity_checks(
    p: u64,
    a: &[Vec<u64>],
    config: &BCheckConfig,
) -> Result<BIdentityChecks> {
    check_odd_prime(p)?;
    let d = a.len();
    if d == 0 {
        return Err(Error::InvalidDimension { min: 1, found: 0 });
    }
    if let Some(row) = a.iter().find(|r| r.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: row.len(),
        });
    }
    let a: Vec<Vec<u64>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x % p).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<u64> { (0..d).map(|_| rng.gen_range(0..p)).collect() };

    let vectors = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let (quadratic_form_vanishes, quadratic_coverage) = if vectors <= config.exhaustive_limit {
        (
            residue_cube(p, d).all(|v| quadratic(&a, &v, p) == 0),
            Coverage::Exhaustive { count: vectors },
        )
    } else {
        let ok = (0..config.samples).all(|_| quadratic(&a, &draw(&mut rng), p) == 0);
        (
            ok,
            Coverage::Sampled {
                count: config.samples as u128,
                seed: config.seed,
            },
        )
    };

    let pairs = vectors.saturating_mul(vectors);
    let (distance_preserved, pair_coverage) = if pairs <= config.exhaustive_limit {
        let all: Vec<Vec<u64>> = residue_cube(p, d).collect();
        (
            all.iter()
                .all(|x| all.iter().all(|y| preserved(&a, x, y, p))),
            Coverage::Exhaustive { count: pairs },
        )
    } else {
        let ok = (0..config.samples).all(|_| {
            let x = draw(&mut rng);
            let y = draw(&mut rng);
            preserved(&a, &x, &y, p)
        });
        (
            ok,
            Coverage::Sampled {
                count: config.samples as u128,
                seed: config.seed,
            },
        )
    };

    Ok(BIdentityChecks {
        p,
        dim: d,
        skew_symmetric: is_skew_symmetric(&a, p),
        quadratic_form_vanishes,
        quadratic_coverage,
        distance_preserved,
        pair_coverage,
    })
}

/// Whether `p·Q(t) ≡ 0 (mod p²)` for every `t ∈ Z_{p²}`, where
/// `Q = ∏_{a ∈ F_p} (T − a)`.
pub fn residue_product_identity(p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = p * p;
    let values: Vec<u64> = (0..p).collect();
    let pq = annihilator_poly(&values, q)?.scale(p);
    Ok((0..q).all(|t| pq.eval(t) == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{example_2_3, SkewMatrix};
    use crate::ring::factorize;

    #[test]
    fn psi_examples() {
        let c = psi_vanishing_check(&example_2_3());
        assert!(c.holds);
        assert_eq!(c.degree, c.distance_set.len());
        let e = PointSet::from_rows(factorize(10).unwrap(), 1, vec![vec![3]]).unwrap();
        let c = psi_vanishing_check(&e);
        assert!(c.holds);
        assert_eq!(c.distance_set, vec![0]);
    }

    #[test]
    fn sz_linear_is_exactly_one_over_p() {
        let f =
            MultivariatePoly::from_terms(7, 2, [(vec![1, 0], 1), (vec![0, 1], 3), (vec![0, 0], 2)])
                .unwrap();
        let r = schwartz_zippel_report(&f, 7, 2000, 5).unwrap();
        assert_eq!(r.exact, Some(ratio(1, 7)));
        assert_eq!(r.bound, ratio(1, 7));
        assert_eq!(r.within_slack, Some(true));
    }

    #[test]
    fn sz_zero_polynomial() {
        let r = schwartz_zippel_report(&MultivariatePoly::zero(5, 2), 5, 100, 1).unwrap();
        assert!(r.zero_polynomial);
        assert_eq!(r.observed, ratio(1, 1));
        assert_eq!(r.within_slack, None);
        assert!(schwartz_zippel_report(&MultivariatePoly::zero(6, 1), 6, 1, 1).is_err());
        assert!(schwartz_zippel_report(&MultivariatePoly::zero(5, 1), 7, 1, 1).is_err());
    }

    #[test]
    fn b_checks_examples() {
        let cfg = BCheckConfig::default();
        let r = b_construction_identity_checks(3, &[vec![0, 1], vec![2, 0]], &cfg).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.quadratic_coverage, Coverage::Exhaustive { count: 9 });
        assert_eq!(r.pair_coverage, Coverage::Exhaustive { count: 81 });
        let z = SkewMatrix::zero(5, 3).unwrap();
        assert!(b_construction_identity_checks(5, z.entries(), &cfg)
            .unwrap()
            .all_pass());
        let id = b_construction_identity_checks(3, &[vec![1, 0], vec![0, 1]], &cfg).unwrap();
        assert!(!id.skew_symmetric);
        assert!(!id.quadratic_form_vanishes);
        assert!(b_construction_identity_checks(2, &[vec![0, 1], vec![1, 0]], &cfg).is_err());
    }

    #[test]
    fn b_checks_sampled() {
        let cfg = BCheckConfig {
            exhaustive_limit: 0,
            samples: 500,
            seed: 3,
        };
        let a = SkewMatrix::standard(5, 2).unwrap();
        let r = b_construction_identity_checks(5, a.entries(), &cfg).unwrap();
        assert!(r.all_pass());
        assert_eq!(
            r.pair_coverage,
            Coverage::Sampled {
                count: 500,
                seed: 3
            }
        );
    }

    #[test]
    fn residue_product() {
        for p in [2, 3, 5, 7, 11] {
            assert!(residue_product_identity(p).unwrap());
        }
    }
}
