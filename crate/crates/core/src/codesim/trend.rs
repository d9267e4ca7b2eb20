//! Metrics of a scheme across blocklengths and seeds.

use serde::Serialize;

use super::{
    build_combined_code, build_secret_key_code, build_superposition_code, exact_error_prob, exact_leakage,
    Codebook, SplitMessage,
};
use crate::error::{Error, Result};
use crate::geometry::sig12 as fmt;
use crate::info::{DmcChannel, Pmf};
use crate::markov::MarkovSpec;
use crate::regions::RateSplitVector;

#[derive(Debug, Clone)]
pub enum Scheme {
    /// Key rate `splits.rk`.
    SecretKey { splits: RateSplitVector, px: Pmf },
    Combined { splits: RateSplitVector, px: Pmf },
    Superposition { splits: RateSplitVector, spec: MarkovSpec },
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::SecretKey { .. } => "secret-key",
            Scheme::Combined { .. } => "combined",
            Scheme::Superposition { .. } => "superposition",
        }
    }

    pub fn build(&self, ch: &DmcChannel, n: usize, seed: u64) -> Result<Codebook> {
        match self {
            Scheme::SecretKey { splits, px } => build_secret_key_code(ch, n, splits.rk, px, seed),
            Scheme::Combined { splits, px } => build_combined_code(ch, n, splits, px, seed),
            Scheme::Superposition { splits, spec } => build_superposition_code(ch, n, splits, spec, seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendRow {
    pub n: usize,
    /// `None` for the seed-averaged row.
    pub seed: Option<u64>,
    /// Bit widths actually used at this blocklength.
    pub split: Option<SplitMessage>,
    pub pe1: f64,
    pub pe2: f64,
    pub leak1: f64,
    pub leak2: f64,
    pub leak_joint: f64,
    /// Set when the entry exceeded the enumeration budget; metrics are NaN.
    pub skipped: bool,
}

impl TrendRow {
    pub fn leak1_per_symbol(&self) -> f64 {
        self.leak1 / self.n as f64
    }

    pub fn leak2_per_symbol(&self) -> f64 {
        self.leak2 / self.n as f64
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct TrendTable {
    pub scheme: String,
    pub per_seed: Vec<TrendRow>,
    pub averaged: Vec<TrendRow>,
}

impl TrendTable {
    pub const CSV_HEADER: &'static str = "n,seed,m1_bits,m2_bits,rand_bits,pe1,pe2,leak1,leak2,leak_joint,leak1_per_n,leak2_per_n,skipped";

    pub fn to_csv(&self) -> String {
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for r in self.per_seed.iter().chain(&self.averaged) {
            let seed = r.seed.map_or("mean".to_string(), |v| v.to_string());
            let (b1, b2, br) = r
                .split
                .map_or((String::new(), String::new(), String::new()), |s| {
                    (s.m1_bits().to_string(), s.m2_bits().to_string(), s.rand.to_string())
                });
            s.push_str(&format!(
                "{},{seed},{b1},{b2},{br},{},{},{},{},{},{},{},{}\n",
                r.n,
                fmt(r.pe1),
                fmt(r.pe2),
                fmt(r.leak1),
                fmt(r.leak2),
                fmt(r.leak_joint),
                fmt(r.leak1_per_symbol()),
                fmt(r.leak2_per_symbol()),
                r.skipped
            ));
        }
        s
    }
}

/// Exact metrics of `scheme` for every `n` and seed. Entries over budget
/// are kept with `skipped` set; averages use the remaining seeds.
pub fn trend_experiment(
    scheme: &Scheme,
    ch: &DmcChannel,
    n_list: &[usize],
    seeds: &[u64],
    budget: u64,
) -> Result<TrendTable> {
    let mut table = TrendTable {
        scheme: scheme.name().to_string(),
        ..Default::default()
    };
    for &n in n_list {
        let mut rows = Vec::new();
        for &seed in seeds {
            let row = match run_one(scheme, ch, n, seed, budget) {
                Ok(r) => r,
                Err(Error::BudgetExceeded { .. }) => TrendRow {
                    n,
                    seed: Some(seed),
                    split: None,
                    pe1: f64::NAN,
                    pe2: f64::NAN,
                    leak1: f64::NAN,
                    leak2: f64::NAN,
                    leak_joint: f64::NAN,
                    skipped: true,
                },
                Err(e) => return Err(e),
            };
            rows.push(row);
        }
        let ok: Vec<&TrendRow> = rows.iter().filter(|r| !r.skipped).collect();
        let k = ok.len() as f64;
        let mean = |f: fn(&TrendRow) -> f64| {
            if ok.is_empty() {
                f64::NAN
            } else {
                ok.iter().map(|r| f(r)).sum::<f64>() / k
            }
        };
        table.averaged.push(TrendRow {
            n,
            seed: None,
            split: ok.first().and_then(|r| r.split),
            pe1: mean(|r| r.pe1),
            pe2: mean(|r| r.pe2),
            leak1: mean(|r| r.leak1),
            leak2: mean(|r| r.leak2),
            leak_joint: mean(|r| r.leak_joint),
            skipped: ok.is_empty(),
        });
        table.per_seed.extend(rows);
    }
    Ok(table)
}

fn run_one(scheme: &Scheme, ch: &DmcChannel, n: usize, seed: u64, budget: u64) -> Result<TrendRow> {
    let code = scheme.build(ch, n, seed)?;
    let (pe1, pe2) = exact_error_prob(&code, ch, budget)?;
    let l = exact_leakage(&code, ch, budget)?;
    Ok(TrendRow {
        n,
        seed: Some(seed),
        split: code.split(),
        pe1,
        pe2,
        leak1: l.m1,
        leak2: l.m2,
        leak_joint: l.joint,
        skipped: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::bsc;

    fn ch() -> DmcChannel {
        DmcChannel::from_components(&bsc(0.1), &bsc(0.15), &bsc(0.3)).unwrap()
    }

    #[test]
    fn secret_key_never_leaks() {
        let s = Scheme::SecretKey {
            splits: RateSplitVector {
                rk: 0.5,
                ..Default::default()
            },
            px: Pmf::uniform(2).unwrap(),
        };
        let t = trend_experiment(&s, &ch(), &[2, 4, 6], &[1, 2], 1 << 26).unwrap();
        assert_eq!(t.per_seed.len(), 6);
        for r in t.per_seed.iter().chain(&t.averaged) {
            assert!(r.leak1.abs() < 1e-12 && r.leak2.abs() < 1e-12);
        }
    }

    #[test]
    fn empty_list() {
        let s = Scheme::SecretKey {
            splits: RateSplitVector::default(),
            px: Pmf::uniform(2).unwrap(),
        };
        let t = trend_experiment(&s, &ch(), &[], &[1], 1 << 26).unwrap();
        assert!(t.per_seed.is_empty() && t.averaged.is_empty());
        assert_eq!(t.to_csv().lines().count(), 1);
    }

    #[test]
    fn over_budget_flagged() {
        let s = Scheme::SecretKey {
            splits: RateSplitVector {
                rk: 1.0,
                ..Default::default()
            },
            px: Pmf::uniform(2).unwrap(),
        };
        let t = trend_experiment(&s, &ch(), &[2, 8], &[1], 1 << 12).unwrap();
        assert!(!t.per_seed[0].skipped);
        assert!(t.per_seed[1].skipped);
        assert!(t.to_csv().contains("nan"));
    }
}
