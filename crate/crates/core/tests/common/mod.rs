//! Brute-force oracles and the seeded corpus shared by the integration
//! tests. Nothing here calls library arithmetic; the oracles work on raw
//! coordinate vectors.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use znfal::constructions::random_set;
use znfal::{factorize, PointSet};

pub const CORPUS_MODULI: [u64; 4] = [6, 9, 15, 30];
pub const CORPUS_SIZE: usize = 200;

pub fn rows(set: &PointSet) -> Vec<Vec<u64>> {
    set.points().iter().map(|p| p.0.clone()).collect()
}

pub fn dist(x: &[u64], y: &[u64], n: u64) -> u64 {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| {
            let d = (a as i128 - b as i128).rem_euclid(n as i128);
            (d * d) as u64 % n
        })
        .sum::<u64>()
        % n
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn scale(x: &[u64], y: &[u64], n: u64) -> u64 {
    x.iter()
        .zip(y)
        .fold(n, |g, (&a, &b)| gcd(g, (a + n - b) % n))
}

/// `#{(x, y, x', y') ∈ E⁴ : ‖x − y‖² = ‖x' − y'‖²}` by four nested loops.
pub fn quadruple_energy(pts: &[Vec<u64>], n: u64) -> u128 {
    let mut count = 0u128;
    for x in pts {
        for y in pts {
            let t = dist(x, y, n);
            for x2 in pts {
                for y2 in pts {
                    count += (dist(x2, y2, n) == t) as u128;
                }
            }
        }
    }
    count
}

/// Quadruples whose two pairs both sit at scale exactly `k`.
pub fn quadruple_shell(pts: &[Vec<u64>], n: u64, k: u64) -> u128 {
    let pairs: Vec<u64> = pts
        .iter()
        .flat_map(|x| pts.iter().map(move |y| (x, y)))
        .filter(|(x, y)| scale(x, y, n) == k)
        .map(|(x, y)| dist(x, y, n))
        .collect();
    let mut count = 0u128;
    for a in &pairs {
        for b in &pairs {
            count += (a == b) as u128;
        }
    }
    count
}

pub fn distance_set(pts: &[Vec<u64>], n: u64) -> BTreeSet<u64> {
    pts.iter()
        .flat_map(|x| pts.iter().map(move |y| dist(x, y, n)))
        .collect()
}

pub fn reduce_points(pts: &[Vec<u64>], q: u64) -> BTreeSet<Vec<u64>> {
    pts.iter()
        .map(|x| x.iter().map(|c| c % q).collect())
        .collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

/// Every vector of `{0, …, m−1}^d`.
pub fn cube(m: u64, d: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Multiplicity table `t → ν(t)`.
pub fn nu(pts: &[Vec<u64>], n: u64) -> BTreeMap<u64, u64> {
    let mut m = BTreeMap::new();
    for x in pts {
        for y in pts {
            *m.entry(dist(x, y, n)).or_insert(0) += 1;
        }
    }
    m
}

/// 200 seeded sets: `n` cycles through 6, 9, 15, 30, `d` through 1, 2,
/// and `|E|` through 1..=12 capped at `n^d`. Set `i` uses seed `i`.
pub fn corpus() -> Vec<PointSet> {
    (0..CORPUS_SIZE)
        .map(|i| {
            let n = CORPUS_MODULI[i % 4];
            let d = 1 + (i / 4) % 2;
            let cap = (n as usize).pow(d as u32).min(12);
            let size = 1 + (i * 7 + i / 8) % cap;
            random_set(&factorize(n).unwrap(), d, size, i as u64).unwrap()
        })
        .collect()
}
