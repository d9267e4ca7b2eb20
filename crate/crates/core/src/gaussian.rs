//! Gaussian broadcast channel with side information and an eavesdropper:
//! `Y_i = X + N_i`, `Z = X + N_e`, power constraint `P`.
//!
//! Receivers are labelled so that `s1sq <= s2sq`. In the mixed ordering
//! (`s1sq < sesq < s2sq`) inner and outer bounds are unions over a power
//! split `alpha` and a cloud fraction `gamma`; they meet at high and low
//! SNR.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{RatePair, RateRegion};
use crate::regions::coupled_region;

/// `0.5 * log2(1 + x)`.
pub fn cap(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!("capacity argument {x} is negative")));
    }
    Ok(0.5 * x.ln_1p() / std::f64::consts::LN_2)
}

fn c(x: f64) -> f64 {
    0.5 * x.max(0.0).ln_1p() / std::f64::consts::LN_2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianConfig {
    pub p: f64,
    pub s1sq: f64,
    pub s2sq: f64,
    pub sesq: f64,
}

impl GaussianConfig {
    pub fn new(p: f64, s1sq: f64, s2sq: f64, sesq: f64) -> Result<Self> {
        if !(p >= 0.0 && p.is_finite()) {
            return Err(Error::InvalidArgument(format!("power {p} must be finite and >= 0")));
        }
        for (v, n) in [(s1sq, "s1sq"), (s2sq, "s2sq"), (sesq, "sesq")] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!("{n} = {v} must be positive")));
            }
        }
        Ok(GaussianConfig { p, s1sq, s2sq, sesq })
    }

    /// Relabels the receivers so that `s1sq <= s2sq`; reports whether a
    /// swap happened.
    pub fn ordered(self) -> (Self, bool) {
        if self.s1sq <= self.s2sq {
            (self, false)
        } else {
            (
                GaussianConfig {
                    s1sq: self.s2sq,
                    s2sq: self.s1sq,
                    ..self
                },
                true,
            )
        }
    }
}

/// Power split parameters. `beta` only appears in the converse argument
/// and is carried for completeness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianParams {
    pub alpha: f64,
    pub gamma: f64,
    pub beta: Option<f64>,
}

impl GaussianParams {
    pub fn new(alpha: f64, gamma: f64, beta: Option<f64>) -> Result<Self> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if !unit(alpha) || !unit(gamma) || beta.is_some_and(|b| !unit(b)) {
            return Err(Error::InvalidArgument("parameters must lie in [0, 1]".into()));
        }
        if let Some(b) = beta {
            if gamma * alpha > b + 1e-12 {
                return Err(Error::InvalidArgument("gamma * alpha must not exceed beta".into()));
            }
        }
        Ok(GaussianParams { alpha, gamma, beta })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    EveWeakest,
    EveStrongest,
    Mixed,
}

impl Scenario {
    pub fn tag(&self) -> &'static str {
        match self {
            Scenario::EveWeakest => "eve_weakest",
            Scenario::EveStrongest => "eve_strongest",
            Scenario::Mixed => "mixed",
        }
    }
}

/// Ordering of the eavesdropper's noise against the receivers'. Ties go to
/// the branch with the weaker eavesdropper.
pub fn scenario(cfg: &GaussianConfig) -> Result<Scenario> {
    if cfg.s1sq > cfg.s2sq {
        return Err(Error::InvalidArgument(
            "receiver 1 must be the stronger one (s1sq <= s2sq); use GaussianConfig::ordered".into(),
        ));
    }
    Ok(if cfg.sesq >= cfg.s2sq {
        Scenario::EveWeakest
    } else if cfg.sesq < cfg.s1sq {
        Scenario::EveStrongest
    } else {
        Scenario::Mixed
    })
}

fn require_mixed(cfg: &GaussianConfig) -> Result<()> {
    match scenario(cfg)? {
        Scenario::Mixed => Ok(()),
        s => Err(Error::InvalidArgument(format!(
            "bound applies to the mixed ordering, configuration is {}",
            s.tag()
        ))),
    }
}

/// One slice: `R2 <= a`, `R2 <= R1 <= R2 + b`.
fn slice(a: f64, b: f64) -> [RatePair; 4] {
    let (a, b) = (a.max(0.0), b.max(0.0));
    [
        RatePair::new(0.0, 0.0),
        RatePair::new(b, 0.0),
        RatePair::new(a + b, a),
        RatePair::new(a, a),
    ]
}

/// Outer-bound slice at `(alpha, gamma)`.
pub fn outer_slice(cfg: &GaussianConfig, alpha: f64, gamma: f64) -> RateRegion {
    let t = gamma * alpha;
    let a = c((1.0 - t) * cfg.p / (t * cfg.p + cfg.s2sq));
    let b = c(alpha * cfg.p / cfg.s1sq) - c(alpha * cfg.p / cfg.sesq);
    RateRegion::hull_of(&slice(a, b))
}

/// Inner-bound slice at `(alpha, gamma)`.
pub fn inner_slice(cfg: &GaussianConfig, alpha: f64, gamma: f64) -> RateRegion {
    let t = gamma * alpha;
    let a = c((1.0 - t) * cfg.p / (t * cfg.p + cfg.s2sq));
    let b = c(t * cfg.p / cfg.s1sq) - c(t * cfg.p / cfg.sesq);
    RateRegion::hull_of(&slice(a, b))
}

fn unit_grid(samples: usize) -> Vec<f64> {
    if samples <= 1 {
        return vec![1.0];
    }
    (0..samples).map(|k| k as f64 / (samples - 1) as f64).collect()
}

fn sweep(
    cfg: &GaussianConfig,
    samples: usize,
    f: fn(&GaussianConfig, f64, f64) -> RateRegion,
) -> Result<RateRegion> {
    require_mixed(cfg)?;
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample per axis".into()));
    }
    let g = unit_grid(samples);
    let pts: Vec<RatePair> = g
        .par_iter()
        .flat_map_iter(|&alpha| {
            let g = &g;
            g.iter()
                .flat_map(move |&gamma| f(cfg, alpha, gamma).vertices().to_vec())
        })
        .collect();
    Ok(RateRegion::hull_of(&pts))
}

/// Union of outer slices over a `samples x samples` grid on `[0,1]^2`.
pub fn outer_bound(cfg: &GaussianConfig, samples: usize) -> Result<RateRegion> {
    sweep(cfg, samples, outer_slice)
}

/// Union of inner slices over a `samples x samples` grid on `[0,1]^2`.
pub fn inner_bound(cfg: &GaussianConfig, samples: usize) -> Result<RateRegion> {
    sweep(cfg, samples, inner_slice)
}

/// Difference between the outer and inner secrecy margins at
/// `(alpha, gamma)`:
/// `0.5 log2[(aP + s1)(gaP + se) / ((aP + se)(gaP + s1))]`.
pub fn gap(cfg: &GaussianConfig, alpha: f64, gamma: f64) -> Result<f64> {
    require_mixed(cfg)?;
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidArgument("alpha and gamma must lie in [0, 1]".into()));
    }
    let ap = alpha * cfg.p;
    let gp = gamma * ap;
    // each factor as log1p of a small relative difference keeps precision
    let num = (ap + cfg.s1sq).ln() - (ap + cfg.sesq).ln();
    let den = (gp + cfg.s1sq).ln() - (gp + cfg.sesq).ln();
    Ok(0.5 * (num - den) / std::f64::consts::LN_2)
}

/// SNR multipliers beyond which the mixed-case bounds are treated as equal.
pub const HIGH_SNR: f64 = 1e5;
pub const LOW_SNR: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianCapacity {
    pub scenario: Scenario,
    /// Whether `region` is the capacity region (as opposed to an inner
    /// bound paired with `outer`).
    pub exact: bool,
    pub region: RateRegion,
    pub outer: Option<RateRegion>,
    /// Hausdorff distance between inner and outer bound when both are
    /// reported.
    pub discrepancy: Option<f64>,
}

/// Capacity region, or an inner/outer pair where the two are not known to
/// meet. Uses `samples` per axis for the mixed case.
pub fn capacity_region(cfg: &GaussianConfig, samples: usize) -> Result<GaussianCapacity> {
    let sc = scenario(cfg)?;
    let p = cfg.p;
    Ok(match sc {
        Scenario::EveStrongest => {
            let m = c(p / cfg.s2sq);
            GaussianCapacity {
                scenario: sc,
                exact: true,
                region: RateRegion::hull_of(&[RatePair::new(0.0, 0.0), RatePair::new(m, m)]),
                outer: None,
                discrepancy: None,
            }
        }
        Scenario::EveWeakest => {
            let (c1, c2, ce) = (c(p / cfg.s1sq), c(p / cfg.s2sq), c(p / cfg.sesq));
            GaussianCapacity {
                scenario: sc,
                exact: true,
                region: coupled_region(c1, c1 - ce, c2, c2 - ce),
                outer: None,
                discrepancy: None,
            }
        }
        Scenario::Mixed => {
            let inner = inner_bound(cfg, samples)?;
            let exact = p >= HIGH_SNR * cfg.s2sq || p <= LOW_SNR * cfg.s1sq;
            if exact {
                GaussianCapacity {
                    scenario: sc,
                    exact,
                    region: inner,
                    outer: None,
                    discrepancy: None,
                }
            } else {
                let outer = outer_bound(cfg, samples)?;
                let d = inner.hausdorff(&outer);
                GaussianCapacity {
                    scenario: sc,
                    exact,
                    region: inner,
                    outer: Some(outer),
                    discrepancy: Some(d),
                }
            }
        }
    })
}

/// Largest gap over a `samples x samples` grid on `[lo, 1]^2`.
pub fn max_gap(cfg: &GaussianConfig, lo: f64, samples: usize) -> Result<f64> {
    let n = samples.max(2);
    let g: Vec<f64> = (0..n).map(|k| lo + (1.0 - lo) * k as f64 / (n - 1) as f64).collect();
    let mut m = f64::NEG_INFINITY;
    for &a in &g {
        for &gm in &g {
            m = m.max(gap(cfg, a, gm)?);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: f64, s1: f64, s2: f64, se: f64) -> GaussianConfig {
        GaussianConfig::new(p, s1, s2, se).unwrap()
    }

    #[test]
    fn cap_values() {
        assert_eq!(cap(0.0).unwrap(), 0.0);
        assert!((cap(1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((cap(3.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(cap(-1e-3).is_err());
    }

    #[test]
    fn scenarios() {
        assert_eq!(scenario(&cfg(1., 1., 2., 4.)).unwrap(), Scenario::EveWeakest);
        assert_eq!(scenario(&cfg(1., 1., 2., 0.5)).unwrap(), Scenario::EveStrongest);
        assert_eq!(scenario(&cfg(1., 1., 4., 2.)).unwrap(), Scenario::Mixed);
        assert_eq!(scenario(&cfg(1., 1., 2., 2.)).unwrap(), Scenario::EveWeakest);
        assert_eq!(scenario(&cfg(1., 1., 2., 1.)).unwrap(), Scenario::Mixed);
        assert!(scenario(&cfg(1., 2., 1., 4.)).is_err());
        let (o, swapped) = cfg(1., 2., 1., 4.).ordered();
        assert!(swapped);
        assert_eq!(scenario(&o).unwrap(), Scenario::EveWeakest);
    }

    #[test]
    fn gap_example_and_limits() {
        let g = cfg(1e6, 1.0, 8.0, 4.0);
        // independent evaluation through the capacity function
        let (ap, gp) = (1e5, 1e4);
        let via_cap = c(ap / 1.0) - c(ap / 4.0) - c(gp / 1.0) + c(gp / 4.0);
        let v = gap(&g, 0.1, 0.1).unwrap();
        assert!((v - via_cap).abs() < 1e-12);
        assert!((v - 1.947e-4).abs() < 1e-6, "{v}");
        assert_eq!(gap(&g, 0.37, 1.0).unwrap(), 0.0);
        let zero = gap(&g, 0.5, 0.0).unwrap();
        assert!((zero - (c(0.5e6) - c(0.5e6 / 4.0))).abs() < 1e-12);
    }

    #[test]
    fn strongest_eavesdropper_segment() {
        let r = capacity_region(&cfg(3.0, 0.5, 1.0, 0.25), 10).unwrap();
        assert!(r.exact);
        assert_eq!(r.region.vertices().len(), 2);
        assert!(r.region.vertices()[1].dist(RatePair::new(1.0, 1.0)) < 1e-12);
    }

    #[test]
    fn very_weak_eavesdropper_nearly_rectangle() {
        let g = cfg(3.0, 1.0, 3.0, 1e9);
        let r = capacity_region(&g, 10).unwrap().region;
        let rect = RateRegion::hull_of(&[
            RatePair::new(0., 0.),
            RatePair::new(1., 0.),
            RatePair::new(1., 0.5),
            RatePair::new(0., 0.5),
        ]);
        assert!(r.hausdorff(&rect) < 1e-8);
    }

    #[test]
    fn slices_at_edges() {
        let g = cfg(10.0, 1.0, 4.0, 2.0);
        // alpha = 0: diagonal up to C(P / s2sq)
        let s = outer_slice(&g, 0.0, 0.3);
        assert_eq!(s.vertices().len(), 2);
        assert!((s.max_r2() - c(10.0 / 4.0)).abs() < 1e-12);
        // gamma = 1: inner and outer coincide
        assert!(inner_slice(&g, 0.6, 1.0).hausdorff(&outer_slice(&g, 0.6, 1.0)) < 1e-15);
        // gamma = 0: inner slice is the diagonal R1 = R2 <= C(P / s2sq)
        let s = inner_slice(&g, 0.6, 0.0);
        assert_eq!(s.vertices().len(), 2);
    }

    #[test]
    fn vanishing_power_collapses() {
        let r = outer_bound(&cfg(1e-9, 1.0, 4.0, 2.0), 20).unwrap();
        assert!(r.max_r1() < 1e-9);
    }

    #[test]
    fn moderate_power_reports_pair() {
        let r = capacity_region(&cfg(10.0, 1.0, 4.0, 2.0), 40).unwrap();
        assert!(!r.exact);
        let outer = r.outer.unwrap();
        assert!(r.region.subset_of(&outer));
        assert!(r.discrepancy.unwrap() > 0.0);
    }
}
