use crate::error::{Error, Result};
use crate::ring::mul_mod;

/// A polynomial in one variable over `Z_n`, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePoly {
    n: u64,
    coeffs: Vec<u64>,
}

impl UnivariatePoly {
    pub fn new(n: u64, coeffs: Vec<u64>) -> Self {
        let mut p = UnivariatePoly {
            n,
            coeffs: coeffs.into_iter().map(|c| c % n).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&(1 % self.n))
    }

    pub fn eval(&self, t: u64) -> u64 {
        let t = t % self.n;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (mul_mod(acc, t, self.n) + c) % self.n)
    }

    pub fn scale(&self, k: u64) -> UnivariatePoly {
        UnivariatePoly::new(
            self.n,
            self.coeffs.iter().map(|&c| mul_mod(c, k, self.n)).collect(),
        )
    }

    // self · (T − s)
    fn mul_linear(&self, s: u64) -> UnivariatePoly {
        let n = self.n;
        let neg_s = (n - s % n) % n;
        let mut out = vec![0u64; self.coeffs.len() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] = (out[i + 1] + c) % n;
            out[i] = (out[i] + mul_mod(c, neg_s, n)) % n;
        }
        UnivariatePoly::new(n, out)
    }
}

/// `Q(T) = ∏_{s ∈ S} (T − s)` over `Z_n`. Repeated values in `values`
/// are counted once.
pub fn annihilator_poly(values: &[u64], n: u64) -> Result<UnivariatePoly> {
    let mut set: Vec<u64> = values.iter().map(|&s| s % n).collect();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(set
        .into_iter()
        .fold(UnivariatePoly::new(n, vec![1]), |q, s| q.mul_linear(s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annihilator_examples() {
        assert_eq!(annihilator_poly(&[0], 6).unwrap().coeffs(), &[0, 1]);
        let q = annihilator_poly(&[0, 3], 6).unwrap();
        assert_eq!(q.coeffs(), &[0, 3, 1]);
        assert_eq!(q.eval(0), 0);
        assert_eq!(q.eval(3), 0);
        assert_eq!(annihilator_poly(&[], 6), Err(Error::EmptySet));
    }

    #[test]
    fn residue_field_product_over_z9() {
        let q = annihilator_poly(&[0, 1, 2], 9).unwrap();
        // T(T−1)(T−2) = T³ − 3T² + 2T.
        assert_eq!(q.coeffs(), &[0, 2, 6, 1]);
        for t in 0..9 {
            assert_eq!(q.eval(t) % 3, 0);
            assert_eq!(q.scale(3).eval(t), 0);
        }
        assert!(!q.scale(3).is_zero());
    }

    #[test]
    fn annihilator_is_monic_and_vanishes() {
        for n in [6u64, 9, 10, 30, 49] {
            for mask in 1u64..64 {
                let s: Vec<u64> = (0..6)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| (b * 7 + 1) % n)
                    .collect();
                let mut distinct = s.clone();
                distinct.sort_unstable();
                distinct.dedup();
                let q = annihilator_poly(&s, n).unwrap();
                assert!(q.is_monic());
                assert_eq!(q.degree(), Some(distinct.len()));
                assert!(s.iter().all(|&x| q.eval(x) == 0));
            }
        }
    }
}
