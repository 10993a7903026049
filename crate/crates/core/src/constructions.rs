//! Deterministic generators for the named point sets and seeded random
//! baselines.
//!
//! Random sets use ChaCha8 seeded with `seed_from_u64(seed)` and draw
//! coordinates one at a time with `gen_range(0..n)`, rejecting points
//! already drawn. The output order is the draw order.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crt::LocalSet;
use crate::energy::PointSet;
use crate::error::{Error, Result};
use crate::ring::{annihilator_submodule, factorize, is_prime, Modulus, Vector};

/// The four-point set `{(0,0), (2,0), (3,0), (0,2)} ⊂ Z_6²`.
pub fn example_2_3() -> PointSet {
    PointSet::from_rows(
        factorize(6).expect("6 is a valid modulus"),
        2,
        vec![vec![0, 0], vec![2, 0], vec![3, 0], vec![0, 2]],
    )
    .expect("fixed valid set")
}

/// `A ∈ M_d(F_p)` with `Aᵀ = −A` and zero diagonal, `p` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMatrix {
    p: u64,
    entries: Vec<Vec<u64>>,
}

impl SkewMatrix {
    pub fn new(p: u64, entries: Vec<Vec<u64>>) -> Result<Self> {
        check_odd_prime(p)?;
        let d = entries.len();
        if d == 0 {
            return Err(Error::InvalidDimension { min: 1, found: 0 });
        }
        if let Some(row) = entries.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: row.len(),
            });
        }
        let entries: Vec<Vec<u64>> = entries
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % p).collect())
            .collect();
        if !is_skew_symmetric(&entries, p) {
            return Err(Error::NotSkewSymmetric(p));
        }
        Ok(SkewMatrix { p, entries })
    }

    pub fn zero(p: u64, d: usize) -> Result<Self> {
        Self::new(p, vec![vec![0; d]; d])
    }

    /// `1` above the diagonal and `p − 1` below; for `d = 2` this is
    /// `[[0, 1], [p−1, 0]]`.
    pub fn standard(p: u64, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension { min: 2, found: d });
        }
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Less => 1,
                        std::cmp::Ordering::Greater => p - 1,
                        std::cmp::Ordering::Equal => 0,
                    })
                    .collect()
            })
            .collect();
        Self::new(p, entries)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&x| x == 0)
    }
}

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

pub(crate) fn is_skew_symmetric(a: &[Vec<u64>], p: u64) -> bool {
    let d = a.len();
    (0..d).all(|i| (0..d).all(|j| (a[i][j] % p + a[j][i] % p).is_multiple_of(p)))
}

/// `x + p·(A x mod p)` in `Z_{p²}^d` for `x` with coordinates in `{0, …, p−1}`.
pub fn lift_point(x: &[u64], a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let q = p * p;
    a.iter()
        .zip(x)
        .map(|(row, &xi)| {
            let ax = row
                .iter()
                .zip(x)
                .fold(0u64, |acc, (&aij, &xj)| (acc + aij * xj) % p);
            (xi + p * ax) % q
        })
        .collect()
}

/// Every vector of `{0, …, p−1}^d`, lexicographic.
pub(crate) fn residue_cube(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(d as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0u64; d];
        for slot in v.iter_mut().rev() {
            *slot = code % p;
            code /= p;
        }
        v
    })
}

/// `{ x + pAx : x ∈ F_p^d } ⊂ Z_{p²}^d`, canonical representatives
/// `{0, …, p−1}`.
pub fn appendix_b_set(a: &SkewMatrix) -> Result<PointSet> {
    let p = a.prime();
    let d = a.dim();
    let points = residue_cube(p, d)
        .map(|x| Vector(lift_point(&x, a.entries(), p)))
        .collect();
    PointSet::new(factorize(p * p)?, d, points)
}

/// The full coset `v + Ann(K)^d`, enumerated lexicographically in the
/// `Ann(K)` offsets.
pub fn submodule_coset(m: &Modulus, d: usize, divisor: u64, v: &[u64]) -> Result<PointSet> {
    let ann = annihilator_submodule(divisor, m)?;
    if divisor == 1 {
        return Err(Error::TrivialDivisor {
            divisor,
            n: m.n(),
            reason: "Ann(1) is the zero submodule",
        });
    }
    if v.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: v.len(),
        });
    }
    let points = residue_cube(divisor, d)
        .map(|offs| {
            Vector(
                offs.iter()
                    .zip(v)
                    .map(|(&o, &vi)| m.add(vi % m.n(), o * ann.generator))
                    .collect(),
            )
        })
        .collect();
    PointSet::new(m.clone(), d, points)
}

/// Seeded uniform sample of `size` distinct points of `Z_n^d`.
pub fn random_set(m: &Modulus, d: usize, size: usize, seed: u64) -> Result<PointSet> {
    if size == 0 {
        return Err(Error::EmptySet);
    }
    if d == 0 {
        return Err(Error::InvalidDimension { min: 1, found: 0 });
    }
    let available = (m.n() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if size as u128 > available {
        return Err(Error::SizeTooLarge {
            requested: size as u128,
            available,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(size);
    let mut points = Vec::with_capacity(size);
    while points.len() < size {
        let v = Vector((0..d).map(|_| rng.gen_range(0..m.n())).collect());
        if seen.insert(v.clone()) {
            points.push(v);
        }
    }
    PointSet::new(m.clone(), d, points)
}

/// Seeded local set of the given size in `Z_q^d` for a prime power `q = p^a`.
pub fn random_local_set(
    prime: u64,
    exponent: u32,
    d: usize,
    size: usize,
    seed: u64,
) -> Result<LocalSet> {
    let set = random_set(&factorize(prime.pow(exponent))?, d, size, seed)?;
    LocalSet::new(prime, exponent, d, set.points().to_vec())
}

/// Uniform nonzero skew matrix: strictly-upper entries drawn uniformly from
/// `F_p` (redrawn if all zero) and mirrored with a sign change.
#[allow(clippy::needless_range_loop)]
pub fn random_skew_matrix(p: u64, d: usize, seed: u64) -> Result<SkewMatrix> {
    check_odd_prime(p)?;
    if d < 2 {
        return Err(Error::InvalidDimension { min: 2, found: d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut a = vec![vec![0u64; d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let x = rng.gen_range(0..p);
                a[i][j] = x;
                a[j][i] = (p - x) % p;
            }
        }
        if a.iter().flatten().any(|&x| x != 0) {
            return SkewMatrix::new(p, a);
        }
    }
}
