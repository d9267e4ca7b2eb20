//! Closed-form achievable and capacity regions.
//!
//! Most regions share one "coupled" shape: each user's rate is capped by
//! a channel term `A_i` and by the other user's rate plus a secrecy
//! margin `B_i`, because the other user's message doubles as a key.
//! Per-distribution evaluators return [`Error::Inadmissible`] naming the
//! violated condition when a distribution does not satisfy a region's
//! side conditions.

mod fm;
mod sweep;

pub use fm::{fm_projection_oracle, FmTerms};
pub use sweep::{region_sweep, RegionKind, SweepResult};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{HalfPlane, RatePair, RateRegion};
use crate::info::{DmcChannel, InfoCache, Output, Pmf};
use crate::markov::{axis::*, MarkovSpec};
use crate::TOL;

/// Rate split of the superposition and Marton schemes. Unused parts are 0.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct RateSplitVector {
    /// Key part XORed between the two messages.
    pub rk: f64,
    /// Second-layer key part.
    pub rsk: f64,
    pub r1s: f64,
    pub r2s: f64,
    pub r1sm: f64,
    pub r2sm: f64,
    /// Encoder randomness.
    pub rr: f64,
    pub r1r: f64,
    pub r2r: f64,
    pub r1c: f64,
    pub r2c: f64,
}

impl RateSplitVector {
    pub fn validate(&self) -> Result<()> {
        let parts = [
            self.rk, self.rsk, self.r1s, self.r2s, self.r1sm, self.r2sm, self.rr, self.r1r,
            self.r2r, self.r1c, self.r2c,
        ];
        if parts.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidArgument("rate parts must be finite and non-negative".into()));
        }
        Ok(())
    }

    pub fn r1(&self) -> f64 {
        self.rk + self.rsk + self.r1s + self.r1sm
    }

    pub fn r2(&self) -> f64 {
        self.rk + self.rsk + self.r2s + self.r2sm
    }
}

/// `R1 <= min{A1, B1 + R2}`, `R2 <= min{A2, B2 + R1}`, `R1, R2 >= 0`.
///
/// If the constraints leave nothing (e.g. `B1 + B2 < 0`), the result is
/// the origin, which is always achievable by sending nothing.
pub fn coupled_region(a1: f64, b1: f64, a2: f64, b2: f64) -> RateRegion {
    let r = RateRegion::from_half_planes(&[
        HalfPlane::new(1.0, 0.0, a1),
        HalfPlane::new(1.0, -1.0, b1),
        HalfPlane::new(0.0, 1.0, a2),
        HalfPlane::new(-1.0, 1.0, b2),
    ]);
    if r.is_empty() {
        RateRegion::point(RatePair::new(0.0, 0.0))
    } else {
        r
    }
}

/// Collects violated side conditions `lhs >= rhs` (within tolerance).
#[derive(Default)]
struct Conditions(Vec<String>);

impl Conditions {
    fn require(&mut self, lhs: f64, rhs: f64, text: &str) {
        if lhs < rhs - TOL {
            self.0.push(format!("{text} ({lhs:.6} vs {rhs:.6})"));
        }
    }

    fn finish(self) -> Result<()> {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(Error::Inadmissible(self.0.join("; ")))
        }
    }
}

fn input_terms(ch: &DmcChannel, px: &Pmf) -> Result<(Pmf, [usize; 4])> {
    Ok((ch.joint(px)?, [0, 1, 2, 3]))
}

/// Segment `R1 = R2 <= min{I(X;Y1), I(X;Y2)}`: send `x(m1 xor m2)`.
pub fn secret_key_region(ch: &DmcChannel, px: &Pmf) -> Result<RateRegion> {
    let (i1, i2, _) = ch.informations(px)?;
    let m = i1.min(i2);
    Ok(RateRegion::hull_of(&[RatePair::new(0.0, 0.0), RatePair::new(m, m)]))
}

/// Rectangle `[I(X;Z), I(X;Y1)] x [I(X;Z), I(X;Y2)]` of the combined
/// key-plus-binning scheme.
pub fn combined_region(ch: &DmcChannel, px: &Pmf) -> Result<RateRegion> {
    let (i1, i2, iz) = ch.informations(px)?;
    let mut c = Conditions::default();
    c.require(i1, iz, "I(X;Y1) < I(X;Z)");
    c.require(i2, iz, "I(X;Y2) < I(X;Z)");
    c.finish()?;
    let (i1, i2) = (i1.max(iz), i2.max(iz));
    Ok(RateRegion::hull_of(&[
        RatePair::new(iz, iz),
        RatePair::new(i1, iz),
        RatePair::new(i1, i2),
        RatePair::new(iz, i2),
    ]))
}

/// Capacity region when the eavesdropper is degraded with respect to both
/// receivers: `coupled(I(X;Y1), I(X;Y1)-I(X;Z), I(X;Y2), I(X;Y2)-I(X;Z))`.
pub fn weak_eav_capacity(ch: &DmcChannel, px: &Pmf) -> Result<RateRegion> {
    let (i1, i2, iz) = ch.informations(px)?;
    Ok(coupled_region(i1, i1 - iz, i2, i2 - iz))
}

/// Two-layer superposition region for `U -> V -> X`, with `V` read from the
/// spec's `V0` axis: `A_i = I(V;Yi)`, `B_i = I(V;Yi|U) - I(V;Z|U)`.
///
/// A receiver with a single-symbol output carries no message; its rate is
/// pinned to zero and its secrecy condition is dropped, which leaves the
/// other receiver with the wiretap secrecy rate `I(V;Y|U) - I(V;Z|U)`.
pub fn superposition_region(ch: &DmcChannel, spec: &MarkovSpec) -> Result<RateRegion> {
    let j = spec.extend(ch)?;
    superposition_on(&InfoCache::new(&j), ch, U, V0)
}

fn superposition_on(c: &InfoCache, ch: &DmcChannel, u: usize, v: usize) -> Result<RateRegion> {
    let mut a = [0.0; 2];
    let mut b = [0.0; 2];
    let mut conds = Conditions::default();
    let present = [ch.y1_size > 1, ch.y2_size > 1];
    for (i, y) in [Y1, Y2].into_iter().enumerate() {
        a[i] = c.mi(&[v], &[y])?;
        let (s, z) = (c.cmi(&[v], &[y], &[u])?, c.cmi(&[v], &[Z], &[u])?);
        b[i] = s - z;
        if present[i] {
            conds.require(s, z, &format!("I(V;Y{0}|U) < I(V;Z|U)", i + 1));
        }
    }
    conds.finish()?;
    Ok(match present {
        [true, true] => coupled_region(a[0], b[0], a[1], b[1]),
        [true, false] => segment_on_axis(a[0].min(b[0]), true),
        [false, true] => segment_on_axis(a[1].min(b[1]), false),
        [false, false] => RateRegion::point(RatePair::new(0.0, 0.0)),
    })
}

fn segment_on_axis(len: f64, first: bool) -> RateRegion {
    let end = if first {
        RatePair::new(len.max(0.0), 0.0)
    } else {
        RatePair::new(0.0, len.max(0.0))
    };
    RateRegion::hull_of(&[RatePair::new(0.0, 0.0), end])
}

/// Marton-based region with a shared cloud:
///
/// `R1 <= I(V0,V1;Y1|U) - I(V0,V1;Z|U) + min{R2, I(U;Y1) + I(V0;Z|U)}`
/// and symmetrically, i.e. `coupled(a1 + c1, a1, a2 + c2, a2)`.
pub fn marton_region(ch: &DmcChannel, spec: &MarkovSpec) -> Result<RateRegion> {
    let j = spec.extend(ch)?;
    let c = InfoCache::new(&j);
    marton_admissible(&c)?;
    let t = MartonTerms::new(&c)?;
    Ok(coupled_region(t.a[0] + t.c[0], t.a[0], t.a[1] + t.c[1], t.a[1]))
}

struct MartonTerms {
    a: [f64; 2],
    c: [f64; 2],
}

impl MartonTerms {
    fn new(c: &InfoCache) -> Result<Self> {
        let mut a = [0.0; 2];
        let mut cc = [0.0; 2];
        for (i, (vi, y)) in [(V1, Y1), (V2, Y2)].into_iter().enumerate() {
            a[i] = c.cmi(&[V0, vi], &[y], &[U])? - c.cmi(&[V0, vi], &[Z], &[U])?;
            cc[i] = c.mi(&[U], &[y])? + c.cmi(&[V0], &[Z], &[U])?;
        }
        Ok(MartonTerms { a, c: cc })
    }
}

fn marton_admissible(c: &InfoCache) -> Result<()> {
    let mut conds = Conditions::default();
    let cover = c.cmi(&[V1], &[V2], &[V0])?;
    let room = c.cmi(&[V1], &[Z], &[V0])? + c.cmi(&[V2], &[Z], &[V0])?
        - c.cmi(&[V1, V2], &[Z], &[V0])?;
    conds.require(
        room,
        cover,
        "I(V1;V2|V0) > I(V1;Z|V0) + I(V2;Z|V0) - I(V1,V2;Z|V0)",
    );
    for (i, (vi, y)) in [(V1, Y1), (V2, Y2)].into_iter().enumerate() {
        let k = i + 1;
        conds.require(
            c.cmi(&[vi], &[y], &[V0])?,
            c.cmi(&[vi], &[Z], &[V0])?,
            &format!("I(V{k};Y{k}|V0) < I(V{k};Z|V0)"),
        );
        conds.require(
            c.cmi(&[V0, vi], &[y], &[U])?,
            c.cmi(&[V0, vi], &[Z], &[U])?,
            &format!("I(V0,V{k};Y{k}|U) < I(V0,V{k};Z|U)"),
        );
    }
    conds.finish()
}

/// Admissibility of a spec for [`marton_region`], without evaluating it.
pub fn marton_check(ch: &DmcChannel, spec: &MarkovSpec) -> Result<()> {
    let j = spec.extend(ch)?;
    marton_admissible(&InfoCache::new(&j))
}

/// Region for the case where the eavesdropper dominates receiver 2 only:
/// `R1 <= I(V1;Y1|U) - I(V1;Z|U) + R2`, `R2 <= min{I(U;Y2), R1}`.
/// The ordering itself is the caller's responsibility.
pub fn mixed_case_region(ch: &DmcChannel, spec: &MarkovSpec) -> Result<RateRegion> {
    let j = spec.extend(ch)?;
    let c = InfoCache::new(&j);
    let g = c.cmi(&[V1], &[Y1], &[U])? - c.cmi(&[V1], &[Z], &[U])?;
    let a = c.mi(&[U], &[Y2])?;
    let mut conds = Conditions::default();
    conds.require(g, 0.0, "I(V1;Y1|U) < I(V1;Z|U)");
    conds.finish()?;
    Ok(RateRegion::from_half_planes(&[
        HalfPlane::new(1.0, -1.0, g),
        HalfPlane::new(0.0, 1.0, a),
        HalfPlane::new(-1.0, 1.0, 0.0),
    ]))
}

/// Joint-secrecy superposition rectangle `R_i <= I(V;Yi|Q) - I(V;Z|Q)`
/// with `V` on the `V0` axis. `Q` is time sharing; for constant `Q` this is
/// the plain `I(V;Yi) - I(V;Z)` rectangle.
pub fn joint_superposition_region(ch: &DmcChannel, spec: &MarkovSpec) -> Result<RateRegion> {
    let j = spec.extend(ch)?;
    let c = InfoCache::new(&j);
    let mut r = [0.0; 2];
    let mut conds = Conditions::default();
    for (i, y) in [Y1, Y2].into_iter().enumerate() {
        let (s, z) = (c.cmi(&[V0], &[y], &[Q])?, c.cmi(&[V0], &[Z], &[Q])?);
        conds.require(s, z, &format!("I(V;Y{}|Q) < I(V;Z|Q)", i + 1));
        r[i] = (s - z).max(0.0);
    }
    conds.finish()?;
    Ok(RateRegion::hull_of(&[
        RatePair::new(0.0, 0.0),
        RatePair::new(r[0], 0.0),
        RatePair::new(r[0], r[1]),
        RatePair::new(0.0, r[1]),
    ]))
}

/// Joint-secrecy Marton pentagon:
/// `R_i <= I(V0,Vi;Yi|Q) - I(V0,Vi;Z|Q)` and
/// `R1 + R2 <= I(V0,V1;Y1|Q) + I(V0,V2;Y2|Q) - 2 I(V0;Z|Q) - I(V1;V2|V0,Q)`.
pub fn joint_marton_region(ch: &DmcChannel, spec: &MarkovSpec) -> Result<RateRegion> {
    let j = spec.extend(ch)?;
    let c = InfoCache::new(&j);
    let mut conds = Conditions::default();
    let lhs = c.cmi(&[V1, V2], &[Z], &[V0])?;
    let rhs = c.cmi(&[V1], &[Z], &[V0])? + c.cmi(&[V2], &[Z], &[V0])? - c.cmi(&[V1], &[V2], &[V0])?;
    conds.require(rhs, lhs, "I(V1,V2;Z|V0) > I(V1;Z|V0) + I(V2;Z|V0) - I(V1;V2|V0)");
    let mut r = [0.0; 2];
    let mut dec = [0.0; 2];
    for (i, (vi, y)) in [(V1, Y1), (V2, Y2)].into_iter().enumerate() {
        let k = i + 1;
        conds.require(
            c.cmi(&[vi], &[y], &[V0])?,
            c.cmi(&[vi], &[Z], &[V0])?,
            &format!("I(V{k};Z|V0) > I(V{k};Y{k}|V0)"),
        );
        dec[i] = c.cmi(&[V0, vi], &[y], &[Q])?;
        let leak = c.cmi(&[V0, vi], &[Z], &[Q])?;
        conds.require(dec[i], leak, &format!("I(V0,V{k};Y{k}|Q) < I(V0,V{k};Z|Q)"));
        r[i] = dec[i] - leak;
    }
    let sum = dec[0] + dec[1] - 2.0 * c.cmi(&[V0], &[Z], &[Q])? - c.cmi(&[V1], &[V2], &[V0, Q])?;
    conds.require(sum, 0.0, "sum-rate bound is negative");
    conds.finish()?;
    let r = RateRegion::from_half_planes(&[
        HalfPlane::new(1.0, 0.0, r[0].max(0.0)),
        HalfPlane::new(0.0, 1.0, r[1].max(0.0)),
        HalfPlane::new(1.0, 1.0, sum.max(0.0)),
    ]);
    Ok(r)
}

/// Capacity region when `Z` is a deterministic function of `X`:
/// `coupled(I(X;Y1), I(X;Y1|Z), I(X;Y2), I(X;Y2|Z))`.
pub fn deterministic_z_region(ch: &DmcChannel, px: &Pmf) -> Result<RateRegion> {
    let wz = ch.marginal(Output::Z);
    for (x, row) in wz.iter().enumerate() {
        if row.iter().all(|&p| p < 1.0 - TOL) {
            return Err(Error::InvalidChannel(format!(
                "eavesdropper output is not a function of the input (x={x})"
            )));
        }
    }
    let (j, [x, y1, y2, z]) = input_terms(ch, px)?;
    let c = InfoCache::new(&j);
    Ok(coupled_region(
        c.mi(&[x], &[y1])?,
        c.cmi(&[x], &[y1], &[z])?,
        c.mi(&[x], &[y2])?,
        c.cmi(&[x], &[y2], &[z])?,
    ))
}

/// Three-layer region for `U -> V -> T -> X` (`V` on `V0`, `T` on `V1`):
/// `R1 <= min{I(T;Y1) - I(T;Z|V), I(T;Y1|U) - I(T;Z|U) + R2}` and
/// symmetrically.
pub fn split_superposition_region(ch: &DmcChannel, spec: &MarkovSpec) -> Result<RateRegion> {
    let j = spec.extend(ch)?;
    let c = InfoCache::new(&j);
    let (v, t) = (V0, V1);
    let mut a = [0.0; 2];
    let mut b = [0.0; 2];
    let mut conds = Conditions::default();
    for (i, y) in [Y1, Y2].into_iter().enumerate() {
        let k = i + 1;
        let (tyv, tzv) = (c.cmi(&[t], &[y], &[v])?, c.cmi(&[t], &[Z], &[v])?);
        let (tyu, tzu) = (c.cmi(&[t], &[y], &[U])?, c.cmi(&[t], &[Z], &[U])?);
        conds.require(tyv, tzv, &format!("I(T;Y{k}|V) < I(T;Z|V)"));
        conds.require(tyu, tzu, &format!("I(T;Y{k}|U) < I(T;Z|U)"));
        a[i] = c.mi(&[t], &[y])? - tzv;
        b[i] = tyu - tzu;
    }
    conds.finish()?;
    Ok(coupled_region(a[0], b[0], a[1], b[1]))
}

/// Which legitimate receiver an outer bound constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Receiver {
    One,
    Two,
}

/// Shared-key wiretap bound on `R_i` given the other rate `r_other`:
/// the largest `min{I(V;Yi|U) - I(V;Z|U) + r_other, I(V;Yi)}` over the
/// supplied specs (`V` on `V0`).
pub fn outer_bound_shared_key(
    ch: &DmcChannel,
    who: Receiver,
    r_other: f64,
    specs: &[MarkovSpec],
) -> Result<f64> {
    let y = if who == Receiver::One { Y1 } else { Y2 };
    let mut best = 0.0f64;
    for s in specs {
        let j = s.extend(ch)?;
        let c = InfoCache::new(&j);
        let secret = c.cmi(&[V0], &[y], &[U])? - c.cmi(&[V0], &[Z], &[U])?;
        best = best.max((secret + r_other).min(c.mi(&[V0], &[y])?));
    }
    Ok(best)
}

/// Same bound with `U` constant and `V = X`, maximized over input
/// distributions; tight when the eavesdropper is degraded.
pub fn outer_bound_shared_key_degraded(
    ch: &DmcChannel,
    who: Receiver,
    r_other: f64,
    inputs: &[Pmf],
) -> Result<f64> {
    let mut best = 0.0f64;
    for px in inputs {
        let (i1, i2, iz) = ch.informations(px)?;
        let iy = if who == Receiver::One { i1 } else { i2 };
        best = best.max((iy - iz + r_other).min(iy));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::{bec, bsc, constant, h2, noiseless};
    use crate::markov::{const_kernel, copy_kernel};

    fn pt(a: f64, b: f64) -> RatePair {
        RatePair::new(a, b)
    }

    fn same(r: &RateRegion, want: &[(f64, f64)]) -> bool {
        r.vertices().len() == want.len()
            && r.vertices().iter().zip(want).all(|(v, w)| v.dist(pt(w.0, w.1)) < 1e-9)
    }

    fn uniform() -> Pmf {
        Pmf::uniform(2).unwrap()
    }

    #[test]
    fn coupled_examples() {
        let r = coupled_region(4., 2., 3., 1.);
        assert!(same(&r, &[(0., 0.), (2., 0.), (4., 2.), (4., 3.), (2., 3.), (0., 1.)]));
        assert!(!r.contains(pt(4., 1.)));
        assert!(same(&coupled_region(1.5, 0., 1.5, 0.), &[(0., 0.), (1.5, 1.5)]));
        assert!(same(
            &coupled_region(2., 2., 2., 2.),
            &[(0., 0.), (2., 0.), (2., 2.), (0., 2.)]
        ));
        assert!(same(&coupled_region(1., -2., 1., 1.), &[(0., 0.)]));
    }

    #[test]
    fn coupled_rejects_lone_corner() {
        for (a1, b1) in [(1.0, 0.2), (3.0, 2.9), (0.5, 0.0)] {
            let r = coupled_region(a1, b1, 1.0, 0.5);
            assert!(!r.contains(pt(a1, 0.0)));
            assert!(r.contains(pt(b1, 0.0)));
        }
    }

    #[test]
    fn secret_key_examples() {
        let perfect = DmcChannel::from_components(&noiseless(2), &noiseless(2), &noiseless(2)).unwrap();
        assert!(same(&secret_key_region(&perfect, &uniform()).unwrap(), &[(0., 0.), (1., 1.)]));
        let deaf = DmcChannel::from_components(&noiseless(2), &constant(2), &noiseless(2)).unwrap();
        assert!(same(&secret_key_region(&deaf, &uniform()).unwrap(), &[(0., 0.)]));
        let erasures = DmcChannel::from_components(&bec(0.5), &bec(0.5), &noiseless(2)).unwrap();
        assert!(same(&secret_key_region(&erasures, &uniform()).unwrap(), &[(0., 0.), (0.5, 0.5)]));
    }

    #[test]
    fn combined_examples() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &constant(2)).unwrap();
        let r = combined_region(&ch, &uniform()).unwrap();
        let (i1, i2) = (1.0 - h2(0.1), 1.0 - h2(0.2));
        assert!(same(&r, &[(0., 0.), (i1, 0.), (i1, i2), (0., i2)]));

        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &bsc(0.4)).unwrap();
        let iz = 1.0 - h2(0.4);
        let r = combined_region(&ch, &uniform()).unwrap();
        assert!(same(&r, &[(iz, iz), (i1, iz), (i1, i2), (iz, i2)]));

        let leaky = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &noiseless(2)).unwrap();
        assert!(matches!(combined_region(&leaky, &uniform()), Err(Error::Inadmissible(_))));
        let perfect = DmcChannel::from_components(&noiseless(2), &noiseless(2), &noiseless(2)).unwrap();
        assert!(same(&combined_region(&perfect, &uniform()).unwrap(), &[(1., 1.)]));
    }

    #[test]
    fn weak_eavesdropper_hexagon() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &bsc(0.4)).unwrap();
        let (i1, i2, iz) = (1.0 - h2(0.1), 1.0 - h2(0.2), 1.0 - h2(0.4));
        let r = weak_eav_capacity(&ch, &uniform()).unwrap();
        assert!(same(
            &r,
            &[(0., 0.), (i1 - iz, 0.), (i1, iz), (i1, i2), (iz, i2), (0., i2 - iz)]
        ));
        let blind = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &constant(2)).unwrap();
        let r = weak_eav_capacity(&blind, &uniform()).unwrap();
        assert!(same(&r, &[(0., 0.), (i1, 0.), (i1, i2), (0., i2)]));
    }

    #[test]
    fn superposition_with_trivial_cloud_is_square() {
        let ch = DmcChannel::from_components(&noiseless(2), &noiseless(2), &constant(2)).unwrap();
        let spec = MarkovSpec::two_layer(&[1.0], &vec![vec![0.5, 0.5]], &copy_kernel(2)).unwrap();
        let r = superposition_region(&ch, &spec).unwrap();
        assert!(same(&r, &[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]));
    }

    #[test]
    fn superposition_cloud_equal_to_input_is_secret_key() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &bsc(0.3)).unwrap();
        let spec = MarkovSpec::two_layer(&[0.5, 0.5], &copy_kernel(2), &copy_kernel(2)).unwrap();
        let r = superposition_region(&ch, &spec).unwrap();
        let sk = secret_key_region(&ch, &uniform()).unwrap();
        assert!(r.hausdorff(&sk) < 1e-12);
    }

    #[test]
    fn superposition_without_second_receiver_is_wiretap() {
        let ch = DmcChannel::from_components(&bsc(0.05), &constant(2), &bsc(0.25)).unwrap();
        let spec = MarkovSpec::two_layer(&[1.0], &vec![vec![0.5, 0.5]], &copy_kernel(2)).unwrap();
        let r = superposition_region(&ch, &spec).unwrap();
        let cs = h2(0.25) - h2(0.05);
        assert!(same(&r, &[(0., 0.), (cs, 0.)]));
    }

    #[test]
    fn superposition_reports_violation() {
        let ch = DmcChannel::from_components(&bsc(0.3), &bsc(0.1), &bsc(0.1)).unwrap();
        let spec = MarkovSpec::two_layer(&[1.0], &vec![vec![0.5, 0.5]], &copy_kernel(2)).unwrap();
        match superposition_region(&ch, &spec) {
            Err(Error::Inadmissible(m)) => assert!(m.contains("I(V;Y1|U) < I(V;Z|U)")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn marton_with_constant_auxiliaries_is_origin() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &bsc(0.3)).unwrap();
        let spec = MarkovSpec::two_layer(&[1.0], &vec![vec![1.0]], &vec![vec![0.5, 0.5]]).unwrap();
        assert!(same(&marton_region(&ch, &spec).unwrap(), &[(0., 0.)]));
    }

    #[test]
    fn mixed_case_examples() {
        let ch = DmcChannel::from_components(&bsc(0.05), &bsc(0.3), &bsc(0.2)).unwrap();
        // V1 = U = X: diagonal up to I(X;Y2)
        let diag = MarkovSpec::two_layer(&[0.5, 0.5], &copy_kernel(2), &copy_kernel(2)).unwrap();
        let r = mixed_case_region(&ch, &diag).unwrap();
        let i2 = 1.0 - h2(0.3);
        assert!(same(&r, &[(0., 0.), (i2, i2)]));
        // U constant: I(U;Y2) = 0
        let flat = MarkovSpec::two_layer(&[1.0], &vec![vec![0.5, 0.5]], &copy_kernel(2)).unwrap();
        let g = h2(0.2) - h2(0.05);
        assert!(same(&mixed_case_region(&ch, &flat).unwrap(), &[(0., 0.), (g, 0.)]));
        // cloud is a noisy view of X
        let mid = MarkovSpec::two_layer(&[0.5, 0.5], &bsc(0.1), &copy_kernel(2)).unwrap();
        let r = mixed_case_region(&ch, &mid).unwrap();
        assert_eq!(r.vertices().len(), 4);
        let diag_part = RateRegion::hull_of(&[pt(0., 0.), pt(r.max_r2(), r.max_r2())]);
        assert!(diag_part.subset_of(&r));
        assert!(r.area() > 1e-3);
    }

    #[test]
    fn joint_superposition_equal_outputs_is_origin() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.1), &bsc(0.1)).unwrap();
        let spec = MarkovSpec::input_only(&uniform()).unwrap();
        assert!(same(&joint_superposition_region(&ch, &spec).unwrap(), &[(0., 0.)]));
    }

    #[test]
    fn deterministic_z_examples() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &constant(2)).unwrap();
        let (i1, i2) = (1.0 - h2(0.1), 1.0 - h2(0.2));
        let r = deterministic_z_region(&ch, &uniform()).unwrap();
        assert!(same(&r, &[(0., 0.), (i1, 0.), (i1, i2), (0., i2)]));
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &noiseless(2)).unwrap();
        let r = deterministic_z_region(&ch, &uniform()).unwrap();
        assert!(same(&r, &[(0., 0.), (i2, i2)]));
        let noisy = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &bsc(0.3)).unwrap();
        assert!(deterministic_z_region(&noisy, &uniform()).is_err());
    }

    #[test]
    fn split_with_independent_t_is_origin() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &bsc(0.3)).unwrap();
        let spec = MarkovSpec::three_layer(
            &[0.5, 0.5],
            &copy_kernel(2),
            &const_kernel(2),
            &vec![vec![0.5, 0.5]],
        )
        .unwrap();
        assert!(same(&split_superposition_region(&ch, &spec).unwrap(), &[(0., 0.)]));
    }

    #[test]
    fn shared_key_bound_examples() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.1), &bsc(0.3)).unwrap();
        let grid: Vec<Pmf> = (0..=20)
            .map(|k| Pmf::from_probs(vec![k as f64 / 20.0, 1.0 - k as f64 / 20.0]).unwrap())
            .collect();
        let cs = h2(0.3) - h2(0.1);
        let b0 = outer_bound_shared_key_degraded(&ch, Receiver::One, 0.0, &grid).unwrap();
        assert!((b0 - cs).abs() < 1e-12);
        let big = outer_bound_shared_key_degraded(&ch, Receiver::One, 10.0, &grid).unwrap();
        assert!((big - (1.0 - h2(0.1))).abs() < 1e-12);

        let ch = DmcChannel::from_components(&noiseless(3), &noiseless(3), &constant(3)).unwrap();
        let specs = vec![MarkovSpec::input_only(&Pmf::uniform(3).unwrap()).unwrap()];
        let b = outer_bound_shared_key(&ch, Receiver::One, 0.0, &specs).unwrap();
        assert!((b - 3f64.log2()).abs() < 1e-12);
    }
}
