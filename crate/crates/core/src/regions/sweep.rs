//! Unions of per-distribution regions.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::RateRegion;
use crate::info::DmcChannel;
use crate::markov::MarkovSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionKind {
    SecretKey,
    Combined,
    WeakEav,
    Superposition,
    Marton,
    Mixed,
    JointSuperposition,
    JointMarton,
    DeterministicZ,
    SplitSuperposition,
    FmOracle { step: f64 },
}

impl RegionKind {
    pub const NAMES: [&'static str; 11] = [
        "secret-key",
        "combined",
        "weak-eav",
        "superposition",
        "marton",
        "mixed",
        "joint-superposition",
        "joint-marton",
        "deterministic-z",
        "split-superposition",
        "fm-oracle",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RegionKind::SecretKey => "secret-key",
            RegionKind::Combined => "combined",
            RegionKind::WeakEav => "weak-eav",
            RegionKind::Superposition => "superposition",
            RegionKind::Marton => "marton",
            RegionKind::Mixed => "mixed",
            RegionKind::JointSuperposition => "joint-superposition",
            RegionKind::JointMarton => "joint-marton",
            RegionKind::DeterministicZ => "deterministic-z",
            RegionKind::SplitSuperposition => "split-superposition",
            RegionKind::FmOracle { .. } => "fm-oracle",
        }
    }

    /// Whether the region depends on the distribution only through its input law.
    pub fn input_only(&self) -> bool {
        matches!(
            self,
            RegionKind::SecretKey | RegionKind::Combined | RegionKind::WeakEav | RegionKind::DeterministicZ
        )
    }

    /// Region of one spec.
    pub fn evaluate(&self, ch: &DmcChannel, spec: &MarkovSpec) -> Result<RateRegion> {
        use super::*;
        match *self {
            RegionKind::SecretKey => secret_key_region(ch, &spec.x_marginal()),
            RegionKind::Combined => combined_region(ch, &spec.x_marginal()),
            RegionKind::WeakEav => weak_eav_capacity(ch, &spec.x_marginal()),
            RegionKind::DeterministicZ => deterministic_z_region(ch, &spec.x_marginal()),
            RegionKind::Superposition => superposition_region(ch, spec),
            RegionKind::Marton => marton_region(ch, spec),
            RegionKind::Mixed => mixed_case_region(ch, spec),
            RegionKind::JointSuperposition => joint_superposition_region(ch, spec),
            RegionKind::JointMarton => joint_marton_region(ch, spec),
            RegionKind::SplitSuperposition => split_superposition_region(ch, spec),
            RegionKind::FmOracle { step } => {
                marton_check(ch, spec)?;
                fm_projection_oracle(ch, spec, step)
            }
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "secret-key" => RegionKind::SecretKey,
            "combined" => RegionKind::Combined,
            "weak-eav" => RegionKind::WeakEav,
            "superposition" => RegionKind::Superposition,
            "marton" => RegionKind::Marton,
            "mixed" => RegionKind::Mixed,
            "joint-superposition" => RegionKind::JointSuperposition,
            "joint-marton" => RegionKind::JointMarton,
            "deterministic-z" => RegionKind::DeterministicZ,
            "split-superposition" => RegionKind::SplitSuperposition,
            "fm-oracle" => RegionKind::FmOracle { step: 0.02 },
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown region '{s}' (expected one of {})",
                    RegionKind::NAMES.join(", ")
                )))
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    /// Convex hull of all admissible per-spec regions.
    pub hull: RateRegion,
    /// Per-spec regions in input order (`None` where inadmissible).
    pub per_spec: Vec<Option<RateRegion>>,
    /// Diagnostics of the skipped specs.
    pub skipped: Vec<String>,
}

impl SweepResult {
    pub fn admitted(&self) -> usize {
        self.per_spec.iter().filter(|r| r.is_some()).count()
    }
}

/// Hull of the union of `kind`'s regions over `specs`, evaluating at most
/// `budget` specs. Inadmissible specs are skipped and reported; any other
/// error aborts the sweep.
pub fn region_sweep(
    ch: &DmcChannel,
    kind: RegionKind,
    specs: &[MarkovSpec],
    budget: usize,
) -> Result<SweepResult> {
    let take = specs.len().min(budget);
    let results: Vec<Result<RateRegion>> = specs[..take]
        .par_iter()
        .map(|s| kind.evaluate(ch, s))
        .collect();
    let mut per_spec = Vec::with_capacity(take);
    let mut skipped = Vec::new();
    for r in results {
        match r {
            Ok(reg) => per_spec.push(Some(reg)),
            Err(Error::Inadmissible(m)) => {
                skipped.push(m);
                per_spec.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    let hull = RateRegion::hull_union(per_spec.iter().flatten());
    Ok(SweepResult {
        hull,
        per_spec,
        skipped,
    })
}
