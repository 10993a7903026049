use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{mul_mod, pow_mod};

/// An exponent vector, ordered graded-lexicographically (total degree
/// first, then lex with `x_1 > x_2 > …`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn eval(&self, x: &[u64], n: u64) -> u64 {
        self.0.iter().zip(x).fold(1 % n, |acc, (&e, &xi)| {
            mul_mod(acc, pow_mod(xi, e as u64, n), n)
        })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `arity` variables of total degree at most `degree`,
/// ascending in graded-lex order.
pub fn monomials_up_to(arity: usize, degree: u32) -> Vec<Monomial> {
    fn fill(arity: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == arity - 1 {
            cur.push(left);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            fill(arity, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if arity == 0 {
        out.push(Monomial(vec![]));
        return out;
    }
    for deg in 0..=degree {
        let mut layer = Vec::new();
        fill(arity, deg, &mut Vec::new(), &mut layer);
        layer.sort();
        out.extend(layer);
    }
    out
}

/// `C(arity + degree, degree)` without enumerating, saturating.
pub fn monomial_count(arity: usize, degree: u32) -> u128 {
    let mut c: u128 = 1;
    for i in 1..=degree as u128 {
        c = c.saturating_mul(arity as u128 + i) / i;
    }
    c
}

/// A sparse polynomial over `Z_n`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivariatePoly {
    n: u64,
    arity: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl MultivariatePoly {
    pub fn zero(n: u64, arity: usize) -> Self {
        MultivariatePoly {
            n,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: u64, arity: usize, c: u64) -> Self {
        let mut p = Self::zero(n, arity);
        p.add_term(Monomial::one(arity), c);
        p
    }

    pub fn var(n: u64, arity: usize, i: usize) -> Self {
        let mut p = Self::zero(n, arity);
        p.add_term(Monomial::var(arity, i), 1);
        p
    }

    pub fn from_terms<I>(n: u64, arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, i64)>,
    {
        let mut p = Self::zero(n, arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::DimensionMismatch {
                    expected: arity,
                    found: e.len(),
                });
            }
            p.add_term(Monomial(e), c.rem_euclid(n as i64) as u64);
        }
        Ok(p)
    }

    /// Coefficients against an explicit monomial list.
    pub fn from_coefficients(n: u64, arity: usize, monomials: &[Monomial], coeffs: &[u64]) -> Self {
        let mut p = Self::zero(n, arity);
        for (m, &c) in monomials.iter().zip(coeffs) {
            p.add_term(m.clone(), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: u64) {
        let n = self.n;
        let entry = self.terms.entry(m.clone()).or_insert(0);
        *entry = (*entry + c % n) % n;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &u64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        self.terms.iter().fold(0u64, |acc, (m, &c)| {
            (acc + mul_mod(c, m.eval(x, self.n), self.n)) % self.n
        })
    }

    pub fn add(&self, other: &MultivariatePoly) -> MultivariatePoly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: u64) -> MultivariatePoly {
        let mut out = Self::zero(self.n, self.arity);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), mul_mod(c, k, self.n));
        }
        out
    }

    pub fn mul(&self, other: &MultivariatePoly) -> MultivariatePoly {
        let mut out = Self::zero(self.n, self.arity);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), mul_mod(c1, c2, self.n));
            }
        }
        out
    }

    /// Same coefficients read in `Z_q` for `q | n`.
    pub fn reduce_mod(&self, q: u64) -> MultivariatePoly {
        let mut out = Self::zero(q, self.arity);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), c % q);
        }
        out
    }

    /// `(exponent vector, coefficient)` pairs in graded-lex order.
    pub fn to_pairs(&self) -> Vec<(Vec<u32>, u64)> {
        self.terms.iter().map(|(m, &c)| (m.0.clone(), c)).collect()
    }
}

impl fmt::Display for MultivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| {
                        if e == 1 {
                            format!("x{}", j + 1)
                        } else {
                            format!("x{}^{}", j + 1, e)
                        }
                    })
                    .collect();
            match (vars.is_empty(), *c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{}", vars.join("*"))?,
                (false, c) => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}
