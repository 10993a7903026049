//! Linear algebra over `F_p` and `Z_{p^a}`.
//!
//! Kernels over `Z_{p^a}` are computed by descent: take the kernel mod
//! `p`, then repeatedly split off the next `p`-adic digit of `M·g` and
//! solve for it mod `p`. Generating sets are canonicalised with a Howell
//! form, which also gives an exact membership test.

use crate::ring::{inv_mod, mul_mod};

/// Basis of `{ c : M c ≡ 0 (mod p) }` for a matrix given by rows.
pub fn kernel_mod_prime(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x % p).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(sel) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, sel);
        let inv = inv_mod(a[rank][col], p).expect("nonzero mod prime");
        for x in a[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][free]) % p;
            }
            v
        })
        .collect()
}

fn valuation(x: u64, p: u64, a: u32) -> u32 {
    if x == 0 {
        return a;
    }
    let mut v = 0;
    let mut y = x;
    while y.is_multiple_of(p) {
        y /= p;
        v += 1;
    }
    v
}

fn axpy(dst: &mut [u64], f: u64, src: &[u64], q: u64) {
    // dst -= f * src (mod q)
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = (*d + q - mul_mod(f, s, q)) % q;
    }
}

/// Howell form of a submodule of `Z_{p^a}^ncols`: rows sorted by pivot
/// column, pivots normalised to `p^v`, entries above each pivot reduced
/// below it. Two generating sets span the same submodule iff their Howell
/// forms are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowellForm {
    p: u64,
    a: u32,
    q: u64,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<(usize, u64)>,
}

impl HowellForm {
    pub fn new(generators: &[Vec<u64>], ncols: usize, p: u64, a: u32) -> Self {
        let q = p.pow(a);
        let mut pending: Vec<Vec<u64>> = generators
            .iter()
            .map(|g| g.iter().map(|&x| x % q).collect::<Vec<u64>>())
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..ncols {
            let Some(sel) = (0..pending.len())
                .filter(|&i| pending[i][col] != 0)
                .min_by_key(|&i| (valuation(pending[i][col], p, a), i))
            else {
                continue;
            };
            let mut pivot = pending.swap_remove(sel);
            let v = valuation(pivot[col], p, a);
            let pv = p.pow(v);
            let unit = pivot[col] / pv;
            let uinv = inv_mod(unit % q, q).expect("unit part is invertible");
            for x in pivot.iter_mut() {
                *x = mul_mod(*x, uinv, q);
            }
            for r in pending.iter_mut() {
                if r[col] != 0 {
                    let f = r[col] / pv;
                    axpy(r, f, &pivot, q);
                }
            }
            if v > 0 {
                let sat: Vec<u64> = pivot.iter().map(|&x| mul_mod(x, p.pow(a - v), q)).collect();
                if sat.iter().any(|&x| x != 0) {
                    pending.push(sat);
                }
            }
            for r in rows.iter_mut() {
                let f = r[col] / pv;
                if f != 0 {
                    axpy(r, f, &pivot, q);
                }
            }
            pending.retain(|r| r.iter().any(|&x| x != 0));
            rows.push(pivot);
            pivots.push((col, pv));
        }
        debug_assert!(pending.is_empty());
        HowellForm {
            p,
            a,
            q,
            ncols,
            rows,
            pivots,
        }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<u64>> {
        self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Number of elements of the submodule, as `log_p |N|`.
    pub fn log_order(&self) -> u32 {
        // Rows whose pivot is p^v contribute p^{a-v} multiples each; the
        // saturation property makes these counts independent.
        self.pivots
            .iter()
            .map(|&(_, pv)| self.a - valuation(pv, self.p, self.a))
            .sum()
    }

    pub fn contains(&self, target: &[u64]) -> bool {
        if target.len() != self.ncols {
            return false;
        }
        let q = self.q;
        let mut t: Vec<u64> = target.iter().map(|&x| x % q).collect();
        let mut next = 0;
        for (row, &(col, pv)) in self.rows.iter().zip(&self.pivots) {
            if t[next..col].iter().any(|&x| x != 0) {
                return false;
            }
            if !t[col].is_multiple_of(pv) {
                return false;
            }
            let f = t[col] / pv;
            axpy(&mut t, f, row, q);
            next = col + 1;
        }
        t.iter().all(|&x| x == 0)
    }
}

/// Generators of `{ c ∈ Z_{p^a}^ncols : M c ≡ 0 (mod p^a) }` by mod-`p`
/// descent, returned in Howell form.
pub fn kernel_prime_power(rows: &[Vec<u64>], ncols: usize, p: u64, a: u32) -> HowellForm {
    let q = p.pow(a);
    let mut gens = kernel_mod_prime(rows, ncols, p);
    if a > 1 {
        gens.extend((0..ncols).map(|i| {
            let mut e = vec![0u64; ncols];
            e[i] = p;
            e
        }));
    }
    for j in 1..a {
        let pj = p.pow(j);
        // Next p-adic digit of M·g for every generator g: column g of H.
        let digits: Vec<Vec<u64>> = gens
            .iter()
            .map(|g| {
                rows.iter()
                    .map(|r| {
                        let s = r
                            .iter()
                            .zip(g)
                            .fold(0u64, |acc, (&m, &c)| (acc + mul_mod(m, c, q)) % q);
                        debug_assert_eq!(s % pj, 0);
                        (s / pj) % p
                    })
                    .collect()
            })
            .collect();
        let h: Vec<Vec<u64>> = (0..rows.len())
            .map(|r| digits.iter().map(|col| col[r]).collect())
            .collect();
        let lambdas = kernel_mod_prime(&h, gens.len(), p);
        let mut next: Vec<Vec<u64>> = lambdas
            .iter()
            .map(|lambda| {
                let mut v = vec![0u64; ncols];
                for (&l, g) in lambda.iter().zip(&gens) {
                    if l != 0 {
                        for (x, &y) in v.iter_mut().zip(g) {
                            *x = (*x + mul_mod(l, y, q)) % q;
                        }
                    }
                }
                v
            })
            .collect();
        next.extend(
            gens.iter()
                .map(|g| g.iter().map(|&x| mul_mod(x, p, q)).collect()),
        );
        gens = HowellForm::new(&next, ncols, p, a).into_rows();
    }
    HowellForm::new(&gens, ncols, p, a)
}
