//! Randomised trials for the exact identities and inequalities.
//!
//! Trial `i` of a run with seed `s` draws its instance from ChaCha8
//! seeded with `s + i`, so a failing trial can be replayed on its own.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{random_local_set, random_set};
use crate::crt::{local_energy_ratios, product_set, verify_product_energy, LocalSet};
use crate::energy::{
    cauchy_schwarz_holds, distance_profile, energy_shells, mixed_cross_terms, scale_profile,
    PointSet,
};
use crate::error::{Error, Result};
use crate::format::point_set_json;
use crate::ring::{factorize, Modulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma {
    ProductEnergy,
    Pigeonhole,
    CsBound,
    ShellSum,
}

impl Lemma {
    pub const ALL: [Lemma; 4] = [
        Lemma::ProductEnergy,
        Lemma::Pigeonhole,
        Lemma::CsBound,
        Lemma::ShellSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::ProductEnergy => "product-energy",
            Lemma::Pigeonhole => "pigeonhole",
            Lemma::CsBound => "cs-bound",
            Lemma::ShellSum => "shell-sum",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown lemma {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub lemma: Lemma,
    pub trials: usize,
    pub passed: usize,
    /// First failing instance, as point-set JSON plus the violated relation.
    pub counterexample: Option<String>,
}

impl TrialOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

/// Random local sets for every component of a square-free `n`, each of
/// size at most `max_size`.
pub fn random_locals(
    m: &Modulus,
    d: usize,
    max_size: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<LocalSet>> {
    m.factors()
        .iter()
        .map(|pp| {
            let cap = (pp.value() as usize).pow(d as u32).min(max_size);
            let size = rng.gen_range(1..=cap);
            random_local_set(pp.prime, pp.exponent, d, size, rng.gen())
        })
        .collect()
}

fn general_instance(rng: &mut ChaCha8Rng) -> Result<PointSet> {
    let n = rng.gen_range(2..=60);
    let d = rng.gen_range(1..=3usize);
    let m = factorize(n)?;
    let cap = (n as usize).saturating_pow(d as u32).min(30);
    let size = rng.gen_range(1..=cap);
    random_set(&m, d, size, rng.gen())
}

fn counterexample(tag: &str, set: &PointSet) -> String {
    format!("{tag}: {}", point_set_json(set).trim_end())
}

/// Runs one trial; `Ok(None)` on success, `Ok(Some(description))` on a
/// violation.
pub fn run_trial(lemma: Lemma, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    match lemma {
        Lemma::ProductEnergy => {
            let n = [6u64, 15, 30][rng.gen_range(0..3)];
            let d = rng.gen_range(1..=2usize);
            let m = factorize(n)?;
            let locals = random_locals(&m, d, 6, rng)?;
            let check = verify_product_energy(&m, &locals)?;
            Ok((!check.equal).then(|| {
                let set = product_set(&m, &locals).expect("valid locals");
                counterexample(
                    &format!("energy {} != product {}", check.lhs, check.rhs),
                    &set,
                )
            }))
        }
        Lemma::Pigeonhole => {
            let m = factorize(30)?;
            let d = rng.gen_range(1..=2usize);
            let locals = random_locals(&m, d, 6, rng)?;
            let set = product_set(&m, &locals)?;
            let ratios = local_energy_ratios(&set);
            // K = ρ is the sharpest threshold with ρ ≥ K.
            let threshold = ratios.global.clone();
            Ok((!ratios.pigeonhole_holds(&threshold)).then(|| {
                counterexample(
                    &format!(
                        "max local ratio {} below K^(1/3) for K = {}",
                        ratios.max_local(),
                        threshold
                    ),
                    &set,
                )
            }))
        }
        Lemma::CsBound => {
            let set = general_instance(rng)?;
            let profile = distance_profile(&set);
            Ok((!cauchy_schwarz_holds(&profile)).then(|| {
                counterexample(
                    &format!(
                        "energy {} * |Δ| {} < |E|^4",
                        profile.energy(),
                        profile.distance_count()
                    ),
                    &set,
                )
            }))
        }
        Lemma::ShellSum => {
            let set = general_instance(rng)?;
            let dec = energy_shells(&set);
            let direct = mixed_cross_terms(&scale_profile(&set, 1));
            Ok((!dec.is_consistent() || direct != dec.mixed).then(|| {
                counterexample(
                    &format!(
                        "total {} vs shells {} + mixed {} (direct {})",
                        dec.total,
                        dec.shell_sum(),
                        dec.mixed,
                        direct
                    ),
                    &set,
                )
            }))
        }
    }
}

/// Runs `trials` trials, stopping early when `keep_going` returns false.
pub fn run_trials(
    lemma: Lemma,
    trials: usize,
    seed: u64,
    mut keep_going: impl FnMut() -> bool,
) -> Result<TrialOutcome> {
    let mut passed = 0;
    let mut counterexample = None;
    let mut done = 0;
    for i in 0..trials {
        if !keep_going() {
            break;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        match run_trial(lemma, &mut rng)? {
            None => passed += 1,
            Some(c) => {
                counterexample.get_or_insert(format!("trial {i}: {c}"));
            }
        }
        done += 1;
    }
    Ok(TrialOutcome {
        lemma,
        trials: done,
        passed,
        counterexample,
    })
}
