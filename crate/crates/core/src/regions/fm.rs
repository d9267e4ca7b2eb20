//! Numeric projection of the Marton rate-splitting system onto `(R1, R2)`.
//!
//! The split system has eleven non-negative parts plus the two totals.
//! Rather than eliminating variables symbolically, the projection is
//! traced by linear programs: for each `R1` on a grid the exact range of
//! feasible `R2` is computed (and vice versa), and the hull of those
//! boundary points is returned. This is independent of the closed-form
//! elimination in [`super::marton_region`].

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem, Variable};

use crate::error::{Error, Result};
use crate::geometry::{RatePair, RateRegion};
use crate::info::{DmcChannel, InfoCache};
use crate::markov::{axis::*, MarkovSpec};

/// Slack granted to every constraint; the strict covering inequality is
/// taken in its closure.
const EPS: f64 = 1e-9;
/// Output grid; an order above the slack.
const SNAP: f64 = 1e-8;

/// Information terms appearing on the right-hand sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FmTerms {
    /// `I(V1;V2|V0)`
    pub cover: f64,
    /// `I(V0,Vi;Yi)`
    pub dec_all: [f64; 2],
    /// `I(V0,Vi;Yi|U)`
    pub dec_u: [f64; 2],
    /// `I(Vi;Yi|V0)`
    pub dec_v0: [f64; 2],
    /// `I(V0;Z|U)`
    pub z_cloud: f64,
    /// `I(Vi;Z|V0)`
    pub z_sat: [f64; 2],
    /// `I(V1;Z|V0) + I(V2;Z|V0) - I(V1,V2;Z|V0)`
    pub z_room: f64,
}

impl FmTerms {
    pub fn new(ch: &DmcChannel, spec: &MarkovSpec) -> Result<Self> {
        let j = spec.extend(ch)?;
        let c = InfoCache::new(&j);
        let mut t = FmTerms {
            cover: c.cmi(&[V1], &[V2], &[V0])?,
            dec_all: [0.0; 2],
            dec_u: [0.0; 2],
            dec_v0: [0.0; 2],
            z_cloud: c.cmi(&[V0], &[Z], &[U])?,
            z_sat: [c.cmi(&[V1], &[Z], &[V0])?, c.cmi(&[V2], &[Z], &[V0])?],
            z_room: 0.0,
        };
        t.z_room = t.z_sat[0] + t.z_sat[1] - c.cmi(&[V1, V2], &[Z], &[V0])?;
        for (i, (vi, y)) in [(V1, Y1), (V2, Y2)].into_iter().enumerate() {
            t.dec_all[i] = c.mi(&[V0, vi], &[y])?;
            t.dec_u[i] = c.cmi(&[V0, vi], &[y], &[U])?;
            t.dec_v0[i] = c.cmi(&[vi], &[y], &[V0])?;
        }
        Ok(t)
    }
}

/// Which coordinate is pinned and which is optimized.
#[derive(Clone, Copy)]
enum Probe {
    Free,
    FixR1(f64),
    FixR2(f64),
}

/// Optimum of `obj` over the split system, or `None` if infeasible.
fn solve(t: &FmTerms, probe: Probe, obj: (f64, f64), dir: OptimizationDirection) -> Result<Option<f64>> {
    let mut lp = Problem::new(dir);
    let inf = f64::INFINITY;
    let (b1, b2) = match probe {
        Probe::Free => ((0.0, inf), (0.0, inf)),
        Probe::FixR1(v) => ((v, v), (0.0, inf)),
        Probe::FixR2(v) => ((0.0, inf), (v, v)),
    };
    let r1 = lp.add_var(obj.0, b1);
    let r2 = lp.add_var(obj.1, b2);
    let mut var = || lp.add_var(0.0, (0.0, inf));
    let (rk, rsk, rr) = (var(), var(), var());
    let (r1ss, r1sm, r1r, r1c) = (var(), var(), var(), var());
    let (r2ss, r2sm, r2r, r2c) = (var(), var(), var(), var());

    let mut add = |terms: &[(Variable, f64)], op: ComparisonOp, rhs: f64| {
        let mut e = LinearExpr::empty();
        for &(v, c) in terms {
            e.add(v, c);
        }
        let rhs = match op {
            ComparisonOp::Le => rhs + EPS,
            ComparisonOp::Ge => rhs - EPS,
            ComparisonOp::Eq => rhs,
        };
        lp.add_constraint(e, op, rhs);
    };
    use ComparisonOp::*;
    add(&[(r1, 1.0), (rk, -1.0), (rsk, -1.0), (r1ss, -1.0), (r1sm, -1.0)], Eq, 0.0);
    add(&[(r2, 1.0), (rk, -1.0), (rsk, -1.0), (r2ss, -1.0), (r2sm, -1.0)], Eq, 0.0);
    add(&[(r1c, 1.0), (r2c, 1.0)], Ge, t.cover);
    for (i, (ri, sm, pr, pc)) in [(r1, r1sm, r1r, r1c), (r2, r2sm, r2r, r2c)].into_iter().enumerate() {
        add(&[(ri, 1.0), (rr, 1.0), (pr, 1.0), (pc, 1.0)], Le, t.dec_all[i]);
        add(&[(ri, 1.0), (rk, -1.0), (rr, 1.0), (pr, 1.0), (pc, 1.0)], Le, t.dec_u[i]);
        add(&[(sm, 1.0), (pr, 1.0), (pc, 1.0)], Le, t.dec_v0[i]);
        add(&[(pr, 1.0), (pc, 1.0)], Ge, t.z_sat[i]);
    }
    add(&[(rsk, 1.0), (rr, 1.0)], Ge, t.z_cloud);
    add(&[(r1c, 1.0), (r2c, 1.0)], Le, t.z_room);

    match lp.solve() {
        Ok(s) => Ok(Some(s.objective())),
        Err(minilp::Error::Infeasible) => Ok(None),
        Err(e) => Err(Error::Lp(e.to_string())),
    }
}

/// Grid points `0, step, 2 step, ...` inside `[lo, hi]`, plus both ends.
fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut v = vec![lo];
    let mut k = (lo / step).ceil() as i64;
    loop {
        let x = k as f64 * step;
        if x >= hi {
            break;
        }
        if x > lo {
            v.push(x);
        }
        k += 1;
    }
    v.push(hi);
    v
}

/// Projection of the split system onto `(R1, R2)`, traced on a grid of
/// spacing `step` in each coordinate.
pub fn fm_projection_oracle(ch: &DmcChannel, spec: &MarkovSpec, step: f64) -> Result<RateRegion> {
    if !(step > 0.0) {
        return Err(Error::InvalidArgument("grid step must be positive".into()));
    }
    let t = FmTerms::new(ch, spec)?;
    fm_projection_terms(&t, step)
}

pub fn fm_projection_terms(t: &FmTerms, step: f64) -> Result<RateRegion> {
    use OptimizationDirection::{Maximize, Minimize};
    let Some(r1_hi) = solve(t, Probe::Free, (1.0, 0.0), Maximize)? else {
        return Ok(RateRegion::empty());
    };
    let r1_lo = solve(t, Probe::Free, (1.0, 0.0), Minimize)?.unwrap_or(0.0);
    let r2_hi = solve(t, Probe::Free, (0.0, 1.0), Maximize)?.unwrap_or(0.0);
    let r2_lo = solve(t, Probe::Free, (0.0, 1.0), Minimize)?.unwrap_or(0.0);

    let mut pts = Vec::new();
    for a in grid(r1_lo, r1_hi, step) {
        for dir in [Minimize, Maximize] {
            if let Some(b) = solve(t, Probe::FixR1(a), (0.0, 1.0), dir)? {
                pts.push(RatePair::new(a, b));
            }
        }
    }
    for b in grid(r2_lo, r2_hi, step) {
        for dir in [Minimize, Maximize] {
            if let Some(a) = solve(t, Probe::FixR2(b), (1.0, 0.0), dir)? {
                pts.push(RatePair::new(a, b));
            }
        }
    }
    // snap the closure slack away so exact corners survive
    let snap = |v: f64| ((v / SNAP).round() * SNAP).max(0.0);
    for p in &mut pts {
        p.r1 = snap(p.r1);
        p.r2 = snap(p.r2);
    }
    Ok(RateRegion::hull_of(&pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::bsc;
    use crate::markov::copy_kernel;

    #[test]
    fn constant_auxiliaries_project_to_origin() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &bsc(0.3)).unwrap();
        let spec = MarkovSpec::two_layer(&[1.0], &vec![vec![1.0]], &vec![vec![0.5, 0.5]]).unwrap();
        let r = fm_projection_oracle(&ch, &spec, 0.02).unwrap();
        assert_eq!(r.vertices().len(), 1);
        assert!(r.vertices()[0].dist(RatePair::new(0.0, 0.0)) < 1e-8);
    }

    #[test]
    fn single_layer_matches_superposition() {
        let ch = DmcChannel::from_components(&bsc(0.05), &bsc(0.1), &bsc(0.3)).unwrap();
        let spec = MarkovSpec::two_layer(&[0.5, 0.5], &bsc(0.15), &copy_kernel(2)).unwrap();
        let r = fm_projection_oracle(&ch, &spec, 0.02).unwrap();
        let s = super::super::superposition_region(&ch, &spec).unwrap();
        assert!(r.hausdorff(&s) <= 0.02, "{}", r.hausdorff(&s));
    }

    #[test]
    fn grid_includes_ends() {
        let g = grid(0.0, 0.05, 0.02);
        assert_eq!(g.len(), 4);
        assert_eq!(g[3], 0.05);
    }
}
