//! CRT projections of point sets onto prime-power components, product
//! sets and their energy factorization, fiber statistics, local energy
//! ratios and the lifting of consistency packets.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::energy::{distance_profile, energy_ratio, incidence_energy, PointSet};
use crate::error::{Error, Result};
use crate::ring::{crt_combine, factorize, is_prime, Modulus, PrimePower, Vector};

/// A projected set `E_q ⊂ Z_q^d` for one component `q = p^a` of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSet {
    pub component: PrimePower,
    pub set: PointSet,
}

impl LocalSet {
    pub fn new(prime: u64, exponent: u32, dim: usize, points: Vec<Vector>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        let component = PrimePower { prime, exponent };
        let set = PointSet::new(factorize(component.value())?, dim, points)?;
        Ok(LocalSet { component, set })
    }

    pub fn from_rows(prime: u64, exponent: u32, dim: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        Self::new(prime, exponent, dim, rows.into_iter().map(Vector).collect())
    }

    /// `q = p^a`.
    pub fn q(&self) -> u64 {
        self.component.value()
    }

    pub fn prime(&self) -> u64 {
        self.component.prime
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }
}

/// Reduction mod `q`, deduplicated, keeping first-occurrence order.
pub fn project(set: &PointSet, q: u64) -> Result<LocalSet> {
    let idx = set.modulus().component_index(q)?;
    let component = set.modulus().factors()[idx];
    let mut seen = std::collections::HashSet::new();
    let points: Vec<Vector> = set
        .points()
        .iter()
        .map(|p| p.reduced(q))
        .filter(|p| seen.insert(p.clone()))
        .collect();
    Ok(LocalSet {
        component,
        set: PointSet::new(factorize(q)?, set.dim(), points)?,
    })
}

/// Projections onto every component, in prime order.
pub fn project_all(set: &PointSet) -> Vec<LocalSet> {
    set.modulus()
        .components()
        .into_iter()
        .map(|q| project(set, q).expect("component of own modulus"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberStats {
    /// Largest fiber `max_v |{x ∈ E : π(x) = v}|`.
    pub max_multiplicity: usize,
    /// fiber size → number of fibers of that size.
    pub histogram: BTreeMap<usize, usize>,
    /// Largest share of `E` lying in fibers whose sizes are within a
    /// factor 2 of each other.
    pub uniform_core_fraction: BigRational,
}

pub fn fiber_stats(set: &PointSet, q: u64) -> Result<FiberStats> {
    set.modulus().component_index(q)?;
    let mut fibers: HashMap<Vector, usize> = HashMap::new();
    for p in set.points() {
        *fibers.entry(p.reduced(q)).or_default() += 1;
    }
    let mut histogram = BTreeMap::new();
    for &size in fibers.values() {
        *histogram.entry(size).or_default() += 1;
    }
    let max_multiplicity = *histogram.keys().next_back().expect("nonempty set");
    let core = histogram
        .keys()
        .map(|&low| {
            histogram
                .range(low..=2 * low)
                .map(|(&size, &count)| size * count)
                .sum::<usize>()
        })
        .max()
        .unwrap_or(0);
    Ok(FiberStats {
        max_multiplicity,
        histogram,
        uniform_core_fraction: BigRational::new(core.into(), set.len().into()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRatios {
    /// `q → 𝓔_q(E_q) · q / |E_q|⁴`.
    pub local: BTreeMap<u64, BigRational>,
    pub global: BigRational,
}

impl LocalRatios {
    pub fn max_local(&self) -> &BigRational {
        self.local.values().max().expect("at least one component")
    }

    pub fn product(&self) -> BigRational {
        self.local
            .values()
            .fold(BigRational::one(), |acc, r| acc * r)
    }

    /// `max_q ρ_q ≥ K^{1/k}` with `k` the number of components, checked
    /// as `(max_q ρ_q)^k ≥ K`.
    pub fn pigeonhole_holds(&self, threshold: &BigRational) -> bool {
        let k = self.local.len() as u32;
        Pow::pow(self.max_local(), k) >= *threshold
    }
}

pub fn local_energy_ratios(set: &PointSet) -> LocalRatios {
    let local = project_all(set)
        .into_iter()
        .map(|l| {
            let e = incidence_energy(&l.set);
            (l.q(), energy_ratio(&e, l.q(), l.len()))
        })
        .collect();
    let global = energy_ratio(&incidence_energy(set), set.n(), set.len());
    LocalRatios { local, global }
}

fn check_components(m: &Modulus, locals: &[LocalSet]) -> Result<usize> {
    if locals.len() != m.factors().len() {
        return Err(Error::ComponentMismatch {
            expected: m.factors().len(),
            found: locals.len(),
        });
    }
    let dim = locals[0].dim();
    for (l, f) in locals.iter().zip(m.factors()) {
        if l.component != *f {
            return Err(Error::NotPrimePowerComponent { q: l.q(), n: m.n() });
        }
        if l.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: l.dim(),
            });
        }
    }
    Ok(dim)
}

/// The CRT image of `A_1 × … × A_r`, enumerated with the last component
/// varying fastest.
pub fn product_set(m: &Modulus, locals: &[LocalSet]) -> Result<PointSet> {
    if locals.is_empty() {
        return Err(Error::ComponentMismatch {
            expected: m.factors().len(),
            found: 0,
        });
    }
    let dim = check_components(m, locals)?;
    let mut points = Vec::with_capacity(locals.iter().map(LocalSet::len).product());
    let mut index = vec![0usize; locals.len()];
    let mut residues = vec![0u64; locals.len()];
    'outer: loop {
        let coords = (0..dim)
            .map(|c| {
                for (slot, (l, &i)) in residues.iter_mut().zip(locals.iter().zip(&index)) {
                    *slot = l.set.points()[i][c];
                }
                crt_combine(&residues, m)
            })
            .collect();
        points.push(Vector(coords));
        for pos in (0..locals.len()).rev() {
            index[pos] += 1;
            if index[pos] < locals[pos].len() {
                continue 'outer;
            }
            index[pos] = 0;
        }
        break;
    }
    PointSet::new(m.clone(), dim, points)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductEnergyCheck {
    /// `𝓔_n` of the product set.
    pub lhs: BigUint,
    /// `∏ 𝓔_{p_i}(A_i)`.
    pub rhs: BigUint,
    pub equal: bool,
}

/// Compares the energy of the product set with the product of local energies.
pub fn verify_product_energy(m: &Modulus, locals: &[LocalSet]) -> Result<ProductEnergyCheck> {
    if !m.is_squarefree() {
        return Err(Error::NotSquareFree(m.n()));
    }
    let product = product_set(m, locals)?;
    let lhs = incidence_energy(&product);
    let rhs: BigUint = locals.iter().map(|l| incidence_energy(&l.set)).product();
    Ok(ProductEnergyCheck {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Per-prime constraint sets `V_p ⊂ F_p^d`, one per prime factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyPacket {
    pub constraints: Vec<LocalSet>,
    pub degree_hint: Option<u32>,
}

/// `𝓛(𝒱) = { x ∈ Z_n^d : π_p(x) ∈ V_p for all p }`.
pub fn lift_packet(packet: &ConsistencyPacket, m: &Modulus, dim: usize) -> Result<PointSet> {
    if !m.is_squarefree() {
        return Err(Error::NotSquareFree(m.n()));
    }
    if let Some(bad) = packet.constraints.iter().find(|l| l.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    product_set(m, &packet.constraints)
}

/// The packet formed by the projections of `set` itself.
pub fn packet_of(set: &PointSet) -> ConsistencyPacket {
    ConsistencyPacket {
        constraints: project_all(set),
        degree_hint: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalDistance {
    pub q: u64,
    pub distance_count: usize,
    /// `|Δ(E_q)| / q`.
    pub density: BigRational,
    pub heavy: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalDistanceDiagnostics {
    pub components: Vec<LocalDistance>,
    pub global_count: usize,
    /// `∏_{heavy q} |Δ(E_q)|`, to be read against `|Δ(E)|²` (the square of
    /// the sumset-growth lower bound); reported, never asserted.
    pub heavy_product: BigUint,
    pub global_count_squared: BigUint,
}

/// Local distance-set sizes; a component is heavy when its density is at
/// most `heavy_density`.
pub fn local_distance_diagnostics(
    set: &PointSet,
    heavy_density: &BigRational,
) -> LocalDistanceDiagnostics {
    let components: Vec<LocalDistance> = project_all(set)
        .into_iter()
        .map(|l| {
            let count = distance_profile(&l.set).distance_count();
            let density = BigRational::new(count.into(), l.q().into());
            LocalDistance {
                q: l.q(),
                distance_count: count,
                heavy: density <= *heavy_density,
                density,
            }
        })
        .collect();
    let heavy_product = components
        .iter()
        .filter(|c| c.heavy)
        .map(|c| BigUint::from(c.distance_count))
        .product();
    let global_count = distance_profile(set).distance_count();
    LocalDistanceDiagnostics {
        components,
        global_count,
        heavy_product,
        global_count_squared: BigUint::from(global_count).pow(2u32),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolderCheck {
    pub energy: BigUint,
    pub max_fiber: usize,
    /// `M⁴ ∏_q 𝓔_q(E_q)`.
    pub bound: BigUint,
    pub holds: bool,
}

/// `𝓔_n(E) ≤ M⁴ ∏_q 𝓔_q(E_q)`, with `M` the largest fiber over any
/// single component.
pub fn holder_check(set: &PointSet) -> HolderCheck {
    let max_fiber = set
        .modulus()
        .components()
        .into_iter()
        .map(|q| fiber_stats(set, q).expect("own component").max_multiplicity)
        .max()
        .unwrap_or(1);
    let local: BigUint = project_all(set)
        .iter()
        .map(|l| incidence_energy(&l.set))
        .product();
    let bound = BigUint::from(max_fiber).pow(4u32) * local;
    let energy = incidence_energy(set);
    HolderCheck {
        holds: energy <= bound,
        energy,
        max_fiber,
        bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::squared_distance;
    use crate::ring::crt_split;

    fn example_set() -> PointSet {
        PointSet::from_rows(
            factorize(6).unwrap(),
            2,
            vec![vec![0, 0], vec![2, 0], vec![3, 0], vec![0, 2]],
        )
        .unwrap()
    }

    fn rows(l: &LocalSet) -> Vec<Vec<u64>> {
        l.set.points().iter().map(|p| p.0.clone()).collect()
    }

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn projections_of_example() {
        let e = example_set();
        assert_eq!(rows(&project(&e, 2).unwrap()), vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(
            rows(&project(&e, 3).unwrap()),
            vec![vec![0, 0], vec![2, 0], vec![0, 2]]
        );
        assert_eq!(
            project(&e, 4),
            Err(Error::NotPrimePowerComponent { q: 4, n: 6 })
        );
    }

    #[test]
    fn project_prime_power_component() {
        let s = PointSet::from_rows(factorize(18).unwrap(), 1, vec![vec![1], vec![10], vec![11]])
            .unwrap();
        assert_eq!(rows(&project(&s, 9).unwrap()), vec![vec![1], vec![2]]);
        assert!(project(&s, 3).is_err());
    }

    #[test]
    fn fibers() {
        let stats = fiber_stats(&example_set(), 2).unwrap();
        assert_eq!(stats.max_multiplicity, 3);
        assert_eq!(stats.histogram, BTreeMap::from([(1, 1), (3, 1)]));

        let full = PointSet::from_rows(factorize(6).unwrap(), 1, (0..6).map(|x| vec![x]).collect())
            .unwrap();
        let stats = fiber_stats(&full, 2).unwrap();
        assert_eq!(stats.max_multiplicity, 3);
        assert_eq!(stats.uniform_core_fraction, int(1));

        let single = PointSet::from_rows(factorize(6).unwrap(), 1, vec![vec![4]]).unwrap();
        assert_eq!(fiber_stats(&single, 3).unwrap().max_multiplicity, 1);
    }

    #[test]
    fn singleton_ratios() {
        let single = PointSet::from_rows(factorize(30).unwrap(), 2, vec![vec![7, 11]]).unwrap();
        let r = local_energy_ratios(&single);
        assert_eq!(r.local[&2], int(2));
        assert_eq!(r.local[&3], int(3));
        assert_eq!(r.local[&5], int(5));
        assert_eq!(r.global, int(30));
    }

    #[test]
    fn product_set_examples() {
        let m6 = factorize(6).unwrap();
        let a = LocalSet::from_rows(2, 1, 1, vec![vec![0], vec![1]]).unwrap();
        let b = LocalSet::from_rows(3, 1, 1, vec![vec![0]]).unwrap();
        let e = product_set(&m6, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(e.points(), &[Vector(vec![0]), Vector(vec![3])]);

        let check = verify_product_energy(&m6, &[a.clone(), b]).unwrap();
        assert_eq!(check.lhs, BigUint::from(8u32));
        assert_eq!(check.rhs, BigUint::from(8u32));
        assert!(check.equal);

        let full2 = LocalSet::from_rows(2, 1, 1, vec![vec![0], vec![1]]).unwrap();
        let full3 = LocalSet::from_rows(3, 1, 1, vec![vec![0], vec![1], vec![2]]).unwrap();
        let e = product_set(&m6, &[full2, full3]).unwrap();
        assert_eq!(e.len(), 6);

        assert_eq!(
            product_set(&m6, &[a]),
            Err(Error::ComponentMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn product_energy_refuses_non_squarefree() {
        let m9 = factorize(9).unwrap();
        let a = LocalSet::from_rows(3, 2, 1, vec![vec![0]]).unwrap();
        assert_eq!(
            verify_product_energy(&m9, &[a]),
            Err(Error::NotSquareFree(9))
        );
    }

    #[test]
    fn lifting_example_packet() {
        let e = example_set();
        let lifted = lift_packet(&packet_of(&e), e.modulus(), 2).unwrap();
        assert_eq!(lifted.len(), 6);
        for p in e.points() {
            assert!(lifted.contains(p));
        }
        let (e2, e3) = (project(&e, 2).unwrap(), project(&e, 3).unwrap());
        for p in lifted.points() {
            let split: Vec<Vec<u64>> = p.iter().map(|&x| crt_split(x, e.modulus())).collect();
            let at2: Vec<u64> = split.iter().map(|s| s[0]).collect();
            let at3: Vec<u64> = split.iter().map(|s| s[1]).collect();
            assert!(e2.set.contains(&at2) && e3.set.contains(&at3));
        }
    }

    #[test]
    fn lifting_trivial_packets() {
        let m = factorize(15).unwrap();
        let all = |p: u64| {
            LocalSet::from_rows(p, 1, 2, (0..p * p).map(|i| vec![i / p, i % p]).collect()).unwrap()
        };
        let lifted = lift_packet(
            &ConsistencyPacket {
                constraints: vec![all(3), all(5)],
                degree_hint: Some(1),
            },
            &m,
            2,
        )
        .unwrap();
        assert_eq!(lifted.len(), 225);

        let pt = lift_packet(
            &ConsistencyPacket {
                constraints: vec![
                    LocalSet::from_rows(3, 1, 2, vec![vec![1, 2]]).unwrap(),
                    LocalSet::from_rows(5, 1, 2, vec![vec![2, 3]]).unwrap(),
                ],
                degree_hint: None,
            },
            &m,
            2,
        )
        .unwrap();
        assert_eq!(pt.points(), &[Vector(vec![7, 8])]);
    }

    #[test]
    fn projection_compatibility_exhaustive() {
        for n in [6u64, 12, 18, 30] {
            let m = factorize(n).unwrap();
            for q in m.components() {
                let mq = factorize(q).unwrap();
                for a in 0..n {
                    for b in 0..n {
                        let x = [a, b];
                        let y = [b, (a * 5) % n];
                        let global = squared_distance(&x, &y, &m).unwrap();
                        let local =
                            squared_distance(&[a % q, b % q], &[y[0] % q, y[1] % q], &mq).unwrap();
                        assert_eq!(global % q, local);
                    }
                }
            }
        }
    }

    #[test]
    fn local_diagnostics_of_example() {
        let diag =
            local_distance_diagnostics(&example_set(), &BigRational::new(1.into(), 10.into()));
        assert_eq!(diag.components[0].distance_count, 2);
        assert_eq!(diag.components[1].distance_count, 3);
        assert_eq!(diag.global_count, 5);
        assert_eq!(diag.global_count_squared, BigUint::from(25u32));
    }

    #[test]
    fn holder_bound_on_example() {
        let h = holder_check(&example_set());
        assert!(h.holds);
        assert_eq!(h.max_fiber, 3);
    }
}
