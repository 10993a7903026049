//! Polynomials of bounded total degree vanishing on a point set.
//!
//! Each prime-power component `q = p^a` of `n` is solved separately: the
//! kernel of the monomial-evaluation matrix of `E mod q` is found by
//! mod-`p` descent, then lifted back to `Z_n` through the CRT idempotent
//! of that component. Polynomials that vanish on all of `Z_q^d` (such as
//! `x^p − x` over `F_p`) are split off as trivial when `q^d` is small
//! enough to enumerate.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::linalg::{kernel_prime_power, HowellForm};
use super::multivariate::{monomial_count, monomials_up_to, Monomial, MultivariatePoly};
use crate::constructions::residue_cube;
use crate::energy::PointSet;
use crate::error::{Error, Result};
use crate::ring::{mul_mod, PrimePower};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingConfig {
    pub monomial_budget: u128,
    /// Largest `q^d` for which the trivially-vanishing part is computed.
    pub trivial_budget: u128,
}

impl Default for VanishingConfig {
    fn default() -> Self {
        VanishingConfig {
            monomial_budget: 5000,
            trivial_budget: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentKernel {
    pub component: PrimePower,
    /// Everything of degree `≤ D` vanishing on `E mod q`.
    pub kernel: HowellForm,
    /// The part vanishing on all of `Z_q^d`; `None` when not computed.
    pub trivial: Option<HowellForm>,
    /// `|E_p|² > D·p` with `E_p` the image of `E` in `F_p^d`.
    pub local_threshold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingBasis {
    pub n: u64,
    pub arity: usize,
    pub degree_bound: u32,
    pub monomials: Vec<Monomial>,
    /// Kernel generators not already vanishing on the whole space, each
    /// supported on one CRT component.
    pub generators: Vec<MultivariatePoly>,
    pub components: Vec<ComponentKernel>,
    pub complete: bool,
    pub warnings: Vec<String>,
    /// `|E| > D^d`.
    pub exceeds_degree_power: bool,
}

impl VanishingBasis {
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether `f` lies in the module of degree-`≤ D` polynomials vanishing
    /// on `E`, decided by Howell reduction in every component.
    pub fn contains(&self, f: &MultivariatePoly) -> bool {
        if f.modulus() != self.n || f.arity() != self.arity {
            return false;
        }
        if f.total_degree().is_some_and(|deg| deg > self.degree_bound) {
            return false;
        }
        self.components.iter().all(|c| {
            let q = c.component.value();
            let coeffs: Vec<u64> = self
                .monomials
                .iter()
                .map(|m| f.coefficient(m) % q)
                .collect();
            c.kernel.contains(&coeffs)
        })
    }

    pub fn kernel_log_orders(&self) -> Vec<(u64, u32)> {
        self.components
            .iter()
            .map(|c| (c.component.value(), c.kernel.log_order()))
            .collect()
    }
}

fn evaluation_rows(points: &BTreeSet<Vec<u64>>, monomials: &[Monomial], q: u64) -> Vec<Vec<u64>> {
    points
        .iter()
        .map(|x| monomials.iter().map(|m| m.eval(x, q)).collect())
        .collect()
}

pub fn vanishing_space(
    set: &PointSet,
    degree: u32,
    config: &VanishingConfig,
) -> Result<VanishingBasis> {
    let d = set.dim();
    let m = set.modulus();
    let count = monomial_count(d, degree);
    if count > config.monomial_budget {
        return Err(Error::BudgetExceeded {
            what: "monomial count",
            required: count,
            limit: config.monomial_budget,
        });
    }
    let monomials = monomials_up_to(d, degree);
    let ncols = monomials.len();
    let n = m.n();

    let mut components = Vec::new();
    let mut generators = Vec::new();
    let mut warnings = Vec::new();
    for (pp, &e) in m.factors().iter().zip(m.idempotents()) {
        let (p, a, q) = (pp.prime, pp.exponent, pp.value());
        if degree as u64 >= p {
            warnings.push(format!(
                "degree bound {degree} >= p = {p}: degree-<p uniqueness over Z_{q} does not apply"
            ));
        }
        let local: BTreeSet<Vec<u64>> = set.points().iter().map(|x| x.reduced(q).0).collect();
        let kernel = kernel_prime_power(&evaluation_rows(&local, &monomials, q), ncols, p, a);

        let space = (q as u128).checked_pow(d as u32);
        let trivial = match space {
            Some(s) if s <= config.trivial_budget => {
                let all: BTreeSet<Vec<u64>> = residue_cube(q, d).collect();
                Some(kernel_prime_power(
                    &evaluation_rows(&all, &monomials, q),
                    ncols,
                    p,
                    a,
                ))
            }
            _ => None,
        };

        for row in kernel.rows() {
            if trivial.as_ref().is_some_and(|t| t.contains(row)) {
                continue;
            }
            let lifted: Vec<u64> = row.iter().map(|&c| mul_mod(c, e, n)).collect();
            generators.push(MultivariatePoly::from_coefficients(
                n, d, &monomials, &lifted,
            ));
        }

        let residues: BTreeSet<Vec<u64>> = set.points().iter().map(|x| x.reduced(p).0).collect();
        let ep = residues.len() as u128;
        components.push(ComponentKernel {
            component: *pp,
            kernel,
            trivial,
            local_threshold: ep * ep > degree as u128 * p as u128,
        });
    }

    let bound = BigUint::from(degree).pow(d as u32);
    Ok(VanishingBasis {
        n,
        arity: d,
        degree_bound: degree,
        monomials,
        generators,
        components,
        complete: true,
        warnings,
        exceeds_degree_power: BigUint::from(set.len()) > bound,
    })
}
