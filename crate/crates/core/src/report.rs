//! JSON report types. Every integer and rational is a decimal string
//! (`"num/den"` for rationals) so energies survive JSON consumers that
//! read numbers as doubles.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::crt::{HolderCheck, LocalDistanceDiagnostics, LocalRatios};
use crate::energy::{EnergyDecomposition, NearExtremality};
use crate::format::rational_string;
use crate::poly::VanishingBasis;
use crate::structure::{AffineSearch, AffineSummary, StructureCertificate};

pub const ANALYSIS_SCHEMA: &str = "znfal.analysis/1";
pub const CLASSIFY_SCHEMA: &str = "znfal.classify/1";
pub const PIT_SCHEMA: &str = "znfal.pit/1";
pub const VERIFY_SCHEMA: &str = "znfal.verify/1";

pub type Flags = BTreeMap<String, String>;

fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub input_digest: String,
    pub flags: Flags,
    pub partial: bool,
    pub n: String,
    pub d: String,
    pub size: String,
    pub distance_count: String,
    pub distance_set: Vec<String>,
    pub energy: String,
    pub energy_ratio: String,
    pub cauchy_schwarz: bool,
    pub near_extremality: Option<NearExtremalityJson>,
    pub shells: Option<Vec<ShellJson>>,
    pub mixed: Option<String>,
    pub local: Option<LocalJson>,
    pub certificate: Option<CertificateJson>,
    pub vanishing: Option<VanishingJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearExtremalityJson {
    pub energy_ratio: String,
    pub distance_density: String,
    pub size_regime: String,
    pub high_energy: bool,
    pub few_distances: bool,
    pub near_extremal: bool,
}

impl From<&NearExtremality> for NearExtremalityJson {
    fn from(x: &NearExtremality) -> Self {
        NearExtremalityJson {
            energy_ratio: rational_string(&x.energy_ratio),
            distance_density: rational_string(&x.distance_density),
            size_regime: rational_string(&x.size_regime),
            high_energy: x.high_energy,
            few_distances: x.few_distances,
            near_extremal: x.near_extremal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellJson {
    pub divisor: String,
    pub energy: String,
}

pub fn shells_json(dec: &EnergyDecomposition) -> Vec<ShellJson> {
    dec.shells
        .iter()
        .map(|(k, e)| ShellJson {
            divisor: s(k),
            energy: s(e),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalComponentJson {
    pub q: String,
    pub size: String,
    pub distance_count: String,
    pub density: String,
    pub heavy: bool,
    pub energy_ratio: String,
    pub max_fiber: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalJson {
    pub components: Vec<LocalComponentJson>,
    pub global_ratio: String,
    pub max_local_ratio: String,
    pub local_ratio_product: String,
    pub heavy_product: String,
    pub global_count_squared: String,
    pub holder_bound: String,
    pub holder_holds: bool,
}

pub fn local_json(
    diag: &LocalDistanceDiagnostics,
    ratios: &LocalRatios,
    sizes: &[usize],
    fibers: &[usize],
    holder: &HolderCheck,
) -> LocalJson {
    let components = diag
        .components
        .iter()
        .zip(sizes)
        .zip(fibers)
        .map(|((c, size), fiber)| LocalComponentJson {
            q: s(c.q),
            size: s(size),
            distance_count: s(c.distance_count),
            density: rational_string(&c.density),
            heavy: c.heavy,
            energy_ratio: rational_string(&ratios.local[&c.q]),
            max_fiber: s(fiber),
        })
        .collect();
    LocalJson {
        components,
        global_ratio: rational_string(&ratios.global),
        max_local_ratio: rational_string(ratios.max_local()),
        local_ratio_product: rational_string(&ratios.product()),
        heavy_product: s(&diag.heavy_product),
        global_count_squared: s(&diag.global_count_squared),
        holder_bound: s(&holder.bound),
        holder_holds: holder.holds,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineJson {
    pub q: String,
    pub p: String,
    pub status: String,
    pub dim: Option<String>,
    pub basis: Option<Vec<Vec<String>>>,
    pub offset: Option<Vec<String>>,
    pub covered: Option<String>,
    pub total: Option<String>,
    pub fraction: Option<String>,
    pub stopped_at: Option<String>,
    pub required: Option<String>,
    pub budget: Option<String>,
}

fn summary_fields(mut j: AffineJson, sm: &AffineSummary) -> AffineJson {
    j.dim = Some(s(sm.subspace_dim));
    j.basis = Some(sm.basis.iter().map(|r| strings(r)).collect());
    j.offset = Some(strings(&sm.offset));
    j.covered = Some(s(sm.covered));
    j.total = Some(s(sm.total));
    j.fraction = Some(rational_string(&sm.fraction));
    j
}

pub fn affine_json(search: &AffineSearch, q: u64, p: u64) -> AffineJson {
    let base = AffineJson {
        q: s(q),
        p: s(p),
        status: String::new(),
        dim: None,
        basis: None,
        offset: None,
        covered: None,
        total: None,
        fraction: None,
        stopped_at: None,
        required: None,
        budget: None,
    };
    match search {
        AffineSearch::Complete(sm) => summary_fields(
            AffineJson {
                status: "complete".into(),
                ..base
            },
            sm,
        ),
        AffineSearch::Truncated {
            best,
            stopped_at,
            required,
            budget,
        } => {
            let mut j = AffineJson {
                status: "truncated".into(),
                stopped_at: Some(s(stopped_at)),
                required: Some(s(required)),
                budget: Some(s(budget)),
                ..base
            };
            if let Some(sm) = best {
                j = summary_fields(j, sm);
            }
            j
        }
    }
}

pub fn affine_list_json(searches: &[AffineSearch], components: &[(u64, u64)]) -> Vec<AffineJson> {
    searches
        .iter()
        .zip(components)
        .map(|(a, &(q, p))| affine_json(a, q, p))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub n: String,
    pub d: String,
    #[serde(rename = "K")]
    pub divisor: String,
    pub m: String,
    pub v: Vec<String>,
    pub support: String,
    pub size: String,
    pub alpha: String,
    pub isotropy_k: Option<String>,
    pub local_summaries: Vec<AffineJson>,
}

pub fn certificate_json(c: &StructureCertificate, components: &[(u64, u64)]) -> CertificateJson {
    CertificateJson {
        n: s(c.n),
        d: s(c.dim),
        divisor: s(c.divisor),
        m: s(c.generator),
        v: strings(&c.representative),
        support: s(c.support),
        size: s(c.size),
        alpha: rational_string(&c.alpha),
        isotropy_k: c.isotropy_divisor.map(s),
        local_summaries: affine_list_json(&c.local_summaries, components),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponents: Vec<String>,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingComponentJson {
    pub q: String,
    pub kernel_log_order: String,
    pub trivial_log_order: Option<String>,
    pub local_threshold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingJson {
    pub degree_bound: String,
    pub monomial_count: String,
    pub complete: bool,
    pub exceeds_degree_power: bool,
    pub warnings: Vec<String>,
    pub components: Vec<VanishingComponentJson>,
    pub generators: Vec<Vec<Term>>,
}

pub fn vanishing_json(b: &VanishingBasis) -> VanishingJson {
    VanishingJson {
        degree_bound: s(b.degree_bound),
        monomial_count: s(b.monomials.len()),
        complete: b.complete,
        exceeds_degree_power: b.exceeds_degree_power,
        warnings: b.warnings.clone(),
        components: b
            .components
            .iter()
            .map(|c| VanishingComponentJson {
                q: s(c.component.value()),
                kernel_log_order: s(c.kernel.log_order()),
                trivial_log_order: c.trivial.as_ref().map(|t| s(t.log_order())),
                local_threshold: c.local_threshold,
            })
            .collect(),
        generators: b
            .generators
            .iter()
            .map(|g| {
                g.to_pairs()
                    .into_iter()
                    .map(|(e, c)| Term {
                        exponents: strings(&e),
                        coefficient: s(c),
                    })
                    .collect()
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub schema: String,
    pub input_digest: String,
    pub flags: Flags,
    pub result: String,
    pub certificates: Vec<CertificateJson>,
    pub verified: bool,
    pub local_summaries: Option<Vec<AffineJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PitReport {
    pub schema: String,
    pub check: String,
    pub input_digest: Option<String>,
    pub flags: Flags,
    pub passed: bool,
    pub details: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub lemma: String,
    pub trials: String,
    pub seed: String,
    pub passed: String,
    pub failed: String,
    pub counterexample: Option<String>,
    pub partial: bool,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report serializes");
    out.push('\n');
    out
}
