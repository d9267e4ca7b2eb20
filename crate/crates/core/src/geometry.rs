//! Convex polygons in the rate plane.
//!
//! Regions are stored as vertex lists in counterclockwise order, starting
//! from the lexicographically smallest vertex (the origin whenever the
//! region contains it). Segments and single points are valid regions; the
//! empty region has no vertices.

use serde::{Deserialize, Serialize};

use crate::TOL;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub const fn new(r1: f64, r2: f64) -> Self {
        RatePair { r1, r2 }
    }

    fn sub(self, o: RatePair) -> RatePair {
        RatePair::new(self.r1 - o.r1, self.r2 - o.r2)
    }

    fn norm(self) -> f64 {
        self.r1.hypot(self.r2)
    }

    pub fn dist(self, o: RatePair) -> f64 {
        self.sub(o).norm()
    }
}

fn cross(o: RatePair, a: RatePair, b: RatePair) -> f64 {
    (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
}

/// Half-plane `a1*R1 + a2*R2 <= b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub a1: f64,
    pub a2: f64,
    pub b: f64,
}

impl HalfPlane {
    pub const fn new(a1: f64, a2: f64, b: f64) -> Self {
        HalfPlane { a1, a2, b }
    }

    fn slack(&self, p: RatePair) -> f64 {
        let n = self.a1.hypot(self.a2).max(1e-300);
        (self.b - self.a1 * p.r1 - self.a2 * p.r2) / n
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RateRegion {
    vertices: Vec<RatePair>,
}

impl RateRegion {
    pub fn empty() -> Self {
        RateRegion { vertices: vec![] }
    }

    pub fn point(p: RatePair) -> Self {
        RateRegion { vertices: vec![p] }
    }

    /// Convex hull of arbitrary points.
    pub fn hull_of(points: &[RatePair]) -> Self {
        RateRegion {
            vertices: convex_hull(points),
        }
    }

    /// Intersection of half-planes. Unbounded intersections are clipped by
    /// the caller's constraints; every region here includes `R1, R2 >= 0`
    /// implicitly.
    pub fn from_half_planes(hp: &[HalfPlane]) -> Self {
        let mut all: Vec<HalfPlane> = hp.to_vec();
        all.push(HalfPlane::new(-1.0, 0.0, 0.0));
        all.push(HalfPlane::new(0.0, -1.0, 0.0));
        let mut pts = Vec::new();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let (p, q) = (all[i], all[j]);
                let det = p.a1 * q.a2 - p.a2 * q.a1;
                if det.abs() < 1e-14 {
                    continue;
                }
                let x = (p.b * q.a2 - p.a2 * q.b) / det;
                let y = (p.a1 * q.b - p.b * q.a1) / det;
                let c = RatePair::new(x, y);
                if all.iter().all(|h| h.slack(c) >= -TOL) {
                    pts.push(c);
                }
            }
        }
        RateRegion::hull_of(&pts)
    }

    pub fn vertices(&self) -> &[RatePair] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn max_r1(&self) -> f64 {
        self.vertices.iter().map(|v| v.r1).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_r2(&self) -> f64 {
        self.vertices.iter().map(|v| v.r2).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest `R2` with `(r1, R2)` in the region, if any.
    pub fn max_r2_at(&self, r1: f64) -> Option<f64> {
        section(&self.vertices, r1, |p| (p.r1, p.r2)).map(|(_, hi)| hi)
    }

    /// Largest `R1` with `(R1, r2)` in the region, if any.
    pub fn max_r1_at(&self, r2: f64) -> Option<f64> {
        section(&self.vertices, r2, |p| (p.r2, p.r1)).map(|(_, hi)| hi)
    }

    /// Membership with tolerance [`TOL`].
    pub fn contains(&self, p: RatePair) -> bool {
        self.contains_tol(p, TOL)
    }

    pub fn contains_tol(&self, p: RatePair, tol: f64) -> bool {
        distance_to(&self.vertices, p).is_some_and(|d| d <= tol)
    }

    /// Whether `self` lies inside `other` (vertex test; both are convex).
    pub fn subset_of(&self, other: &RateRegion) -> bool {
        self.subset_of_tol(other, TOL)
    }

    pub fn subset_of_tol(&self, other: &RateRegion, tol: f64) -> bool {
        self.vertices.iter().all(|&v| other.contains_tol(v, tol))
    }

    /// Distance from `p` to the region (`None` for the empty region).
    pub fn distance(&self, p: RatePair) -> Option<f64> {
        distance_to(&self.vertices, p)
    }

    /// Hausdorff distance. For convex sets the extremes are attained at
    /// vertices, so a vertex scan in both directions suffices.
    pub fn hausdorff(&self, other: &RateRegion) -> f64 {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => return 0.0,
            (true, false) | (false, true) => return f64::INFINITY,
            _ => {}
        }
        let one = |a: &RateRegion, b: &RateRegion| {
            a.vertices
                .iter()
                .map(|&v| b.distance(v).unwrap_or(f64::INFINITY))
                .fold(0.0, f64::max)
        };
        one(self, other).max(one(other, self))
    }

    /// Convex hull of the union.
    pub fn hull_union<'a>(regions: impl IntoIterator<Item = &'a RateRegion>) -> RateRegion {
        let pts: Vec<RatePair> = regions
            .into_iter()
            .flat_map(|r| r.vertices.iter().copied())
            .collect();
        RateRegion::hull_of(&pts)
    }

    /// Vertex list as CSV with an `R1,R2` header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("R1,R2\n");
        for v in &self.vertices {
            s.push_str(&format!("{},{}\n", sig12(v.r1), sig12(v.r2)));
        }
        s
    }

    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        if v.len() < 3 {
            return 0.0;
        }
        let mut a = 0.0;
        for i in 0..v.len() {
            let (p, q) = (v[i], v[(i + 1) % v.len()]);
            a += p.r1 * q.r2 - q.r1 * p.r2;
        }
        a / 2.0
    }
}

/// Twelve significant digits, shortest form; zeros (of either sign) print
/// as `0`.
pub fn sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}").to_lowercase();
    }
    let p: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    format!("{p}")
}

/// Andrew's monotone chain. Collinear and duplicate points are dropped, so
/// a segment comes back as two points and a point as one.
pub fn convex_hull(points: &[RatePair]) -> Vec<RatePair> {
    let mut pts: Vec<RatePair> = points
        .iter()
        .copied()
        .filter(|p| p.r1.is_finite() && p.r2.is_finite())
        .collect();
    pts.sort_by(|a, b| a.r1.total_cmp(&b.r1).then(a.r2.total_cmp(&b.r2)));
    pts.dedup_by(|a, b| a.dist(*b) <= 1e-12);
    if pts.len() <= 2 {
        return pts;
    }
    // collinearity is judged by the turn angle, not the raw cross product,
    // so regions a few micro-bits wide keep their shape
    let turns = |o: RatePair, a: RatePair, b: RatePair| {
        cross(o, a, b) > 1e-12 * o.dist(a) * o.dist(b)
    };
    let mut lower: Vec<RatePair> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && !turns(lower[lower.len() - 2], lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<RatePair> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && !turns(upper[upper.len() - 2], upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // near-duplicates need not be adjacent in sort order; merge them here
    let mut out: Vec<RatePair> = Vec::with_capacity(lower.len());
    for p in lower {
        if out.last().map_or(true, |q| q.dist(p) > 1e-12) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(out[out.len() - 1]) <= 1e-12 {
        out.pop();
    }
    out
}

fn seg_dist(p: RatePair, a: RatePair, b: RatePair) -> f64 {
    let ab = b.sub(a);
    let l2 = ab.r1 * ab.r1 + ab.r2 * ab.r2;
    if l2 == 0.0 {
        return p.dist(a);
    }
    let ap = p.sub(a);
    let t = ((ap.r1 * ab.r1 + ap.r2 * ab.r2) / l2).clamp(0.0, 1.0);
    p.dist(RatePair::new(a.r1 + t * ab.r1, a.r2 + t * ab.r2))
}

fn distance_to(v: &[RatePair], p: RatePair) -> Option<f64> {
    match v.len() {
        0 => None,
        1 => Some(p.dist(v[0])),
        2 => Some(seg_dist(p, v[0], v[1])),
        n => {
            let inside = (0..n).all(|i| cross(v[i], v[(i + 1) % n], p) >= 0.0);
            if inside {
                return Some(0.0);
            }
            Some(
                (0..n)
                    .map(|i| seg_dist(p, v[i], v[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min),
            )
        }
    }
}

/// Range `[lo, hi]` of the second coordinate on the line `first = t`.
fn section(v: &[RatePair], t: f64, key: impl Fn(&RatePair) -> (f64, f64)) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let n = v.len();
    let mut take = |y: f64| {
        lo = lo.min(y);
        hi = hi.max(y);
    };
    for i in 0..n {
        let (ax, ay) = key(&v[i]);
        if (ax - t).abs() <= TOL {
            take(ay);
        }
        if n > 1 {
            let (bx, by) = key(&v[(i + 1) % n]);
            if (ax - t) * (bx - t) < 0.0 {
                take(ay + (t - ax) / (bx - ax) * (by - ay));
            }
        }
    }
    (lo <= hi).then_some((lo, hi))
}

#[cfg(test)]
mod tests {
    #[test]
    fn twelve_digits() {
        use super::sig12;
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(2.0 / 3.0 * 1e3), "666.666666667");
        assert_eq!(sig12(f64::NAN), "nan");
    }

    use super::*;

    fn p(a: f64, b: f64) -> RatePair {
        RatePair::new(a, b)
    }

    #[test]
    fn hull_drops_interior_and_collinear() {
        let pts = [p(0., 0.), p(1., 0.), p(2., 0.), p(2., 2.), p(0., 2.), p(1., 1.), p(0., 1.)];
        let h = convex_hull(&pts);
        assert_eq!(h, vec![p(0., 0.), p(2., 0.), p(2., 2.), p(0., 2.)]);
    }

    #[test]
    fn degenerate_hulls() {
        assert_eq!(convex_hull(&[p(1., 1.), p(1., 1.)]), vec![p(1., 1.)]);
        assert_eq!(
            convex_hull(&[p(0., 0.), p(1., 1.), p(2., 2.)]),
            vec![p(0., 0.), p(2., 2.)]
        );
        assert!(convex_hull(&[]).is_empty());
    }

    #[test]
    fn half_planes_hexagon() {
        // R1 <= 4, R1 - R2 <= 2, R2 <= 3, R2 - R1 <= 1
        let r = RateRegion::from_half_planes(&[
            HalfPlane::new(1., 0., 4.),
            HalfPlane::new(1., -1., 2.),
            HalfPlane::new(0., 1., 3.),
            HalfPlane::new(-1., 1., 1.),
        ]);
        let want = [p(0., 0.), p(2., 0.), p(4., 2.), p(4., 3.), p(2., 3.), p(0., 1.)];
        assert_eq!(r.vertices().len(), 6);
        for (a, b) in r.vertices().iter().zip(want) {
            assert!(a.dist(b) < 1e-12, "{a:?} vs {b:?}");
        }
        assert!((r.area() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_half_planes_are_empty() {
        let r = RateRegion::from_half_planes(&[HalfPlane::new(1., 0., -1.)]);
        assert!(r.is_empty());
    }

    #[test]
    fn membership_and_distance() {
        let sq = RateRegion::hull_of(&[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]);
        assert!(sq.contains(p(0.5, 0.5)));
        assert!(sq.contains(p(1.0, 1.0 + 1e-10)));
        assert!(!sq.contains(p(1.0, 1.0 + 1e-6)));
        assert!((sq.distance(p(2., 0.5)).unwrap() - 1.0).abs() < 1e-15);
        let seg = RateRegion::hull_of(&[p(0., 0.), p(1., 1.)]);
        assert!(seg.contains(p(0.5, 0.5)));
        assert!(!seg.contains(p(0.5, 0.6)));
        assert!(seg.subset_of(&sq));
        assert!(!sq.subset_of(&seg));
    }

    #[test]
    fn hausdorff_of_nested_squares() {
        let a = RateRegion::hull_of(&[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]);
        let b = RateRegion::hull_of(&[p(0., 0.), p(2., 0.), p(2., 2.), p(0., 2.)]);
        assert!((a.hausdorff(&b) - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(a.hausdorff(&a), 0.0);
    }

    #[test]
    fn sections() {
        let r = RateRegion::hull_of(&[p(0., 0.), p(2., 0.), p(4., 2.), p(4., 3.), p(2., 3.), p(0., 1.)]);
        assert!((r.max_r2_at(1.0).unwrap() - 2.0).abs() < 1e-12);
        assert!((r.max_r1_at(0.0).unwrap() - 2.0).abs() < 1e-12);
        assert!((r.max_r2_at(4.0).unwrap() - 3.0).abs() < 1e-12);
        assert!(r.max_r2_at(4.5).is_none());
    }
}
