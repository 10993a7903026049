//! Exact arithmetic in `Z_n`: factorization, the divisor lattice, CRT
//! transport between `Z_n` and its prime-power components, and the
//! annihilator submodules `Ann(K) = (n/K) Z_n`.

use std::fmt;
use std::ops::Deref;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One factor `p^a` of a modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    /// The component modulus `p^a`.
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// A modulus `n >= 2` together with its factorization.
///
/// Components are kept as `Z_{p^a}`; they are never split below the
/// prime-power level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    n: u64,
    factors: Vec<PrimePower>,
    // CRT idempotents: e_i ≡ 1 mod q_i, ≡ 0 mod q_j (j != i).
    idempotents: Vec<u64>,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        factorize(n)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Prime-power component moduli `q_i = p_i^{a_i}` in increasing prime order.
    pub fn components(&self) -> Vec<u64> {
        self.factors.iter().map(PrimePower::value).collect()
    }

    pub fn primes(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.prime).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.exponent == 1)
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].exponent == 1
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.n as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.n as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + self.n as u128 - (b % self.n) as u128) % self.n as u128) as u64
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.n)
    }

    pub fn divides(&self, k: u64) -> bool {
        k != 0 && self.n.is_multiple_of(k)
    }

    /// Index of the component `q` when `q` is an exact prime-power divisor.
    pub fn component_index(&self, q: u64) -> Result<usize> {
        self.factors
            .iter()
            .position(|f| f.value() == q)
            .ok_or(Error::NotPrimePowerComponent { q, n: self.n })
    }

    pub(crate) fn idempotents(&self) -> &[u64] {
        &self.idempotents
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.n)?;
        for (i, pp) in self.factors.iter().enumerate() {
            let sep = if i == 0 { " " } else { " * " };
            if pp.exponent == 1 {
                write!(f, "{sep}{}", pp.prime)?;
            } else {
                write!(f, "{sep}{}^{}", pp.prime, pp.exponent)?;
            }
        }
        Ok(())
    }
}

/// Factor `n` by trial division.
pub fn factorize(n: u64) -> Result<Modulus> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut exponent = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                exponent += 1;
            }
            factors.push(PrimePower { prime: p, exponent });
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push(PrimePower {
            prime: rest,
            exponent: 1,
        });
    }

    let idempotents = factors
        .iter()
        .map(|f| {
            let q = f.value();
            let cofactor = n / q;
            let inv = inv_mod(cofactor % q, q).expect("coprime CRT components");
            mul_mod(cofactor, inv, n)
        })
        .collect();

    Ok(Modulus {
        n,
        factors,
        idempotents,
    })
}

/// All divisors of `n`, ascending.
pub fn divisors(m: &Modulus) -> Vec<u64> {
    let mut out = vec![1u64];
    for f in m.factors() {
        let before = out.len();
        let mut power = 1u64;
        for _ in 0..f.exponent {
            power *= f.prime;
            for i in 0..before {
                out.push(out[i] * power);
            }
        }
    }
    out.sort_unstable();
    out
}

/// `x mod p_i^{a_i}` for every component.
pub fn crt_split(x: u64, m: &Modulus) -> Vec<u64> {
    m.factors().iter().map(|f| x % f.value()).collect()
}

/// Inverse of [`crt_split`].
pub fn crt_combine(residues: &[u64], m: &Modulus) -> u64 {
    debug_assert_eq!(residues.len(), m.factors().len());
    residues
        .iter()
        .zip(m.idempotents())
        .fold(0u64, |acc, (&r, &e)| m.add(acc, m.mul(r, e)))
}

/// `Ann(K) = { x in Z_n : K x ≡ 0 }`, generated by `n / K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubmoduleSpec {
    pub n: u64,
    pub divisor: u64,
    pub generator: u64,
}

impl SubmoduleSpec {
    /// Number of elements of `Ann(K)` in one coordinate; equals `K`.
    pub fn order(&self) -> u64 {
        self.divisor
    }

    pub fn contains(&self, x: u64) -> bool {
        x.is_multiple_of(self.generator)
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        v.iter().all(|&x| self.contains(x))
    }

    /// The elements of `Ann(K)` in one coordinate, ascending.
    pub fn elements(&self) -> Vec<u64> {
        (0..self.divisor).map(|i| i * self.generator).collect()
    }
}

pub fn annihilator_submodule(divisor: u64, m: &Modulus) -> Result<SubmoduleSpec> {
    if !m.divides(divisor) {
        return Err(Error::InvalidDivisor { divisor, n: m.n() });
    }
    Ok(SubmoduleSpec {
        n: m.n(),
        divisor,
        generator: m.n() / divisor,
    })
}

/// A vector of residues in `Z_n^d`. Coordinates are reduced by whoever
/// builds it; [`crate::energy::PointSet`] enforces that.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vector(pub Vec<u64>);

impl Vector {
    pub fn new(coords: Vec<u64>) -> Self {
        Vector(coords)
    }

    pub fn zero(d: usize) -> Self {
        Vector(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn reduced(&self, modulus: u64) -> Vector {
        Vector(self.0.iter().map(|&x| x % modulus).collect())
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }
}

impl Deref for Vector {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for Vector {
    fn from(v: Vec<u64>) -> Self {
        Vector(v)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `n`, if `gcd(a, n) = 1`.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(n as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(prime: u64, exponent: u32) -> PrimePower {
        PrimePower { prime, exponent }
    }

    #[test]
    fn factorize_small_moduli() {
        let m6 = factorize(6).unwrap();
        assert_eq!(m6.factors(), &[pp(2, 1), pp(3, 1)]);
        assert!(m6.is_squarefree());

        let m9 = factorize(9).unwrap();
        assert_eq!(m9.factors(), &[pp(3, 2)]);
        assert!(!m9.is_squarefree());

        let m30 = factorize(30).unwrap();
        assert_eq!(m30.factors(), &[pp(2, 1), pp(3, 1), pp(5, 1)]);
    }

    #[test]
    fn factorize_rejects_tiny() {
        assert_eq!(factorize(0), Err(Error::InvalidModulus(0)));
        assert_eq!(factorize(1), Err(Error::InvalidModulus(1)));
        assert!(factorize(2).unwrap().is_prime());
    }

    #[test]
    fn factorize_large_prime_and_prime_power() {
        let m = factorize(999_983).unwrap();
        assert!(m.is_prime());
        let m = factorize(1 << 20).unwrap();
        assert_eq!(m.factors(), &[pp(2, 20)]);
    }

    #[test]
    fn divisor_lists() {
        let d = |n| divisors(&factorize(n).unwrap());
        assert_eq!(d(6), vec![1, 2, 3, 6]);
        assert_eq!(d(9), vec![1, 3, 9]);
        assert_eq!(d(30), vec![1, 2, 3, 5, 6, 10, 15, 30]);
    }

    #[test]
    fn divisor_count_matches_exponents() {
        for n in 2..=500u64 {
            let m = factorize(n).unwrap();
            let expected: usize = m
                .factors()
                .iter()
                .map(|f| f.exponent as usize + 1)
                .product();
            let ds = divisors(&m);
            assert_eq!(ds.len(), expected, "n = {n}");
            assert!(ds.iter().all(|k| n % k == 0));
            let product: u64 = m.factors().iter().map(PrimePower::value).product();
            assert_eq!(product, n);
        }
    }

    #[test]
    fn crt_examples() {
        let m6 = factorize(6).unwrap();
        assert_eq!(crt_split(5, &m6), vec![1, 2]);
        assert_eq!(crt_split(0, &m6), vec![0, 0]);
        assert_eq!(crt_combine(&[1, 2], &m6), 5);
        assert_eq!(crt_combine(&[0, 0], &m6), 0);

        let m15 = factorize(15).unwrap();
        assert_eq!(crt_split(7, &m15), vec![1, 2]);
        assert_eq!(crt_combine(&[1, 2], &m15), 7);
    }

    #[test]
    fn crt_roundtrip_exhaustive() {
        for n in 2..=300u64 {
            let m = factorize(n).unwrap();
            for x in 0..n {
                assert_eq!(crt_combine(&crt_split(x, &m), &m), x, "n = {n}");
            }
        }
    }

    #[test]
    fn annihilator_examples() {
        let m6 = factorize(6).unwrap();
        let ann = annihilator_submodule(2, &m6).unwrap();
        assert_eq!(ann.generator, 3);
        assert_eq!(ann.elements(), vec![0, 3]);
        let ann = annihilator_submodule(6, &m6).unwrap();
        assert_eq!(ann.generator, 1);
        assert_eq!(ann.elements(), (0..6).collect::<Vec<_>>());

        let m9 = factorize(9).unwrap();
        assert_eq!(
            annihilator_submodule(3, &m9).unwrap().elements(),
            vec![0, 3, 6]
        );

        assert_eq!(
            annihilator_submodule(4, &m6),
            Err(Error::InvalidDivisor { divisor: 4, n: 6 })
        );
    }

    #[test]
    fn annihilator_membership_matches_definition() {
        for n in 2..=100u64 {
            let m = factorize(n).unwrap();
            for k in divisors(&m) {
                let ann = annihilator_submodule(k, &m).unwrap();
                for x in 0..n {
                    assert_eq!(ann.contains(x), mul_mod(k, x, n) == 0, "n={n} K={k} x={x}");
                }
                assert_eq!(ann.divisor * ann.generator, n);
            }
        }
    }

    #[test]
    fn inverse_and_primality() {
        assert_eq!(inv_mod(2, 9), Some(5));
        assert_eq!(inv_mod(3, 9), None);
        assert!(is_prime(7));
        assert!(!is_prime(9));
        assert_eq!(pow_mod(3, 4, 7), 81 % 7);
    }
}
