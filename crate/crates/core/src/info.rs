//! Discrete distributions, channels and information measures.
//!
//! A [`Pmf`] is a dense joint distribution stored row-major over named
//! axes (variables are referred to by axis index). Entropies are in bits,
//! with `0 log 0 = 0`.

use std::cell::RefCell;
use std::collections::HashMap;

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on the total mass of a distribution.
pub const PMF_TOL: f64 = 1e-9;

/// Residual tolerance for the degradedness feasibility check.
pub const DEGRADED_TOL: f64 = 1e-8;

/// Negative information values above `-NEG_CLAMP` are rounding noise.
const NEG_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    dims: Vec<usize>,
    probs: Vec<f64>,
}

impl Pmf {
    /// Builds a joint distribution. Mass must sum to one within [`PMF_TOL`];
    /// the stored vector is renormalized.
    pub fn new(dims: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidPmf("no axes".into()));
        }
        if dims.len() > 64 {
            return Err(Error::InvalidPmf("more than 64 axes".into()));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidPmf("empty alphabet".into()));
        }
        let size: usize = dims.iter().product();
        if size != probs.len() {
            return Err(Error::InvalidPmf(format!(
                "expected {size} entries, got {}",
                probs.len()
            )));
        }
        let mut probs = probs;
        for p in probs.iter_mut() {
            if !p.is_finite() || *p < -PMF_TOL {
                return Err(Error::InvalidPmf(format!("bad probability {p}")));
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let total = exact_sum(probs.iter().copied());
        if (total - 1.0).abs() > PMF_TOL {
            return Err(Error::InvalidPmf(format!("mass sums to {total}")));
        }
        probs.iter_mut().for_each(|p| *p /= total);
        Ok(Pmf { dims, probs })
    }

    /// One-dimensional distribution.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        Pmf::new(vec![probs.len()], probs)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPmf("empty alphabet".into()));
        }
        Pmf::from_probs(vec![1.0 / n as f64; n])
    }

    /// Point mass on `k` out of `n`.
    pub fn point(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::InvalidPmf(format!("symbol {k} out of range {n}")));
        }
        let mut p = vec![0.0; n];
        p[k] = 1.0;
        Pmf::from_probs(p)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    /// Marginal over `vars`, with axes in the order given.
    pub fn marginal(&self, vars: &[usize]) -> Result<Pmf> {
        self.check_vars(&[vars])?;
        let out_dims: Vec<usize> = vars.iter().map(|&v| self.dims[v]).collect();
        let out = self.marginal_raw(vars);
        Ok(Pmf {
            dims: if out_dims.is_empty() { vec![1] } else { out_dims },
            probs: out,
        })
    }

    fn marginal_raw(&self, vars: &[usize]) -> Vec<f64> {
        let nd = self.dims.len();
        // contribution of each source axis to the target flat index
        let mut tstride = vec![0usize; nd];
        let mut s = 1usize;
        for &v in vars.iter().rev() {
            tstride[v] = s;
            s *= self.dims[v];
        }
        // compensated accumulation; marginals of large joints otherwise
        // drift by ~1e-13 relative, which shows up in entropy differences
        let mut out = vec![0.0; s];
        let mut comp = vec![0.0; s];
        let mut idx = vec![0usize; nd];
        let mut t = 0usize;
        for &p in &self.probs {
            let a = out[t];
            let b = a + p;
            comp[t] += if a.abs() >= p.abs() { (a - b) + p } else { (p - b) + a };
            out[t] = b;
            // odometer, last axis fastest
            let mut d = nd;
            while d > 0 {
                d -= 1;
                idx[d] += 1;
                t += tstride[d];
                if idx[d] < self.dims[d] {
                    break;
                }
                t -= tstride[d] * idx[d];
                idx[d] = 0;
            }
        }
        for (o, c) in out.iter_mut().zip(comp) {
            *o += c;
        }
        out
    }

    /// Joint entropy of the variables in `vars` (empty set has entropy 0).
    pub fn entropy_of(&self, vars: &[usize]) -> Result<f64> {
        self.check_vars(&[vars])?;
        if vars.is_empty() {
            return Ok(0.0);
        }
        Ok(entropy_slice(&self.marginal_raw(vars)))
    }

    fn check_vars(&self, groups: &[&[usize]]) -> Result<()> {
        let mut seen = 0u64;
        for g in groups {
            for &v in g.iter() {
                if v >= self.dims.len() {
                    return Err(Error::InvalidArgument(format!(
                        "variable {v} out of range ({} axes)",
                        self.dims.len()
                    )));
                }
                if seen & (1 << v) != 0 {
                    return Err(Error::InvalidArgument(format!(
                        "variable {v} appears twice"
                    )));
                }
                seen |= 1 << v;
            }
        }
        Ok(())
    }
}

/// Compensated (Neumaier) sum. Information terms are differences of
/// entropies of large joints; plain summation loses ~1e-11 there.
pub(crate) fn exact_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for t in xs {
        let s = sum + t;
        comp += if sum.abs() >= t.abs() { (sum - s) + t } else { (t - s) + sum };
        sum = s;
    }
    sum + comp
}

fn entropy_slice(p: &[f64]) -> f64 {
    exact_sum(p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2())).max(0.0)
}

fn clamp_info(v: f64) -> Result<f64> {
    if v >= 0.0 {
        Ok(v)
    } else if v >= -NEG_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NegativeInformation(v))
    }
}

/// Entropy of a distribution over all of its axes.
pub fn entropy(p: &Pmf) -> f64 {
    entropy_slice(&p.probs)
}

/// `I(A;B)` for disjoint variable groups of `joint`.
pub fn mutual_information(joint: &Pmf, a: &[usize], b: &[usize]) -> Result<f64> {
    conditional_mi(joint, a, b, &[])
}

/// `I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)`.
pub fn conditional_mi(joint: &Pmf, a: &[usize], b: &[usize], c: &[usize]) -> Result<f64> {
    joint.check_vars(&[a, b, c])?;
    let ac: Vec<usize> = a.iter().chain(c).copied().collect();
    let bc: Vec<usize> = b.iter().chain(c).copied().collect();
    let abc: Vec<usize> = a.iter().chain(b).chain(c).copied().collect();
    let v = joint.entropy_of(&ac)? + joint.entropy_of(&bc)?
        - joint.entropy_of(&abc)?
        - joint.entropy_of(c)?;
    clamp_info(v)
}

/// Memoizes subset entropies of one joint distribution. Region evaluators
/// query dozens of overlapping terms on the same joint.
pub struct InfoCache<'a> {
    joint: &'a Pmf,
    memo: RefCell<HashMap<u64, f64>>,
}

impl<'a> InfoCache<'a> {
    pub fn new(joint: &'a Pmf) -> Self {
        InfoCache {
            joint,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn joint(&self) -> &Pmf {
        self.joint
    }

    fn h(&self, mask: u64) -> f64 {
        if mask == 0 {
            return 0.0;
        }
        if let Some(&v) = self.memo.borrow().get(&mask) {
            return v;
        }
        let vars: Vec<usize> = (0..64).filter(|i| mask & (1 << i) != 0).collect();
        let v = entropy_slice(&self.joint.marginal_raw(&vars));
        self.memo.borrow_mut().insert(mask, v);
        v
    }

    fn mask(&self, vars: &[usize]) -> Result<u64> {
        let mut m = 0u64;
        for &v in vars {
            if v >= self.joint.ndim() {
                return Err(Error::InvalidArgument(format!("variable {v} out of range")));
            }
            m |= 1 << v;
        }
        Ok(m)
    }

    pub fn entropy(&self, vars: &[usize]) -> Result<f64> {
        Ok(self.h(self.mask(vars)?))
    }

    /// `I(A;B|C)`; groups may overlap (shared variables contribute nothing
    /// beyond conditioning).
    pub fn cmi(&self, a: &[usize], b: &[usize], c: &[usize]) -> Result<f64> {
        let (a, b, c) = (self.mask(a)?, self.mask(b)?, self.mask(c)?);
        let v = self.h(a | c) + self.h(b | c) - self.h(a | b | c) - self.h(c);
        clamp_info(v)
    }

    pub fn mi(&self, a: &[usize], b: &[usize]) -> Result<f64> {
        self.cmi(a, b, &[])
    }
}

/// Channel outputs of a [`DmcChannel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Output {
    Y1,
    Y2,
    Z,
}

/// Memoryless broadcast channel `p(y1, y2, z | x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DmcChannel {
    pub x_size: usize,
    pub y1_size: usize,
    pub y2_size: usize,
    pub z_size: usize,
    /// Flat `[x][y1][y2][z]`.
    p: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ChannelFile {
    x_size: usize,
    y1_size: usize,
    y2_size: usize,
    z_size: usize,
    p: Vec<Vec<Vec<Vec<f64>>>>,
}

/// Outputs given separately, conditionally independent given `X`.
#[derive(Deserialize)]
struct ComponentFile {
    w1: Vec<Vec<f64>>,
    w2: Vec<Vec<f64>>,
    wz: Vec<Vec<f64>>,
}

impl DmcChannel {
    pub fn new(
        x_size: usize,
        y1_size: usize,
        y2_size: usize,
        z_size: usize,
        p: Vec<f64>,
    ) -> Result<Self> {
        let sizes = [x_size, y1_size, y2_size, z_size];
        if sizes.iter().any(|&s| s == 0) {
            return Err(Error::InvalidChannel("empty alphabet".into()));
        }
        let row = y1_size * y2_size * z_size;
        if p.len() != x_size * row {
            return Err(Error::InvalidChannel(format!(
                "expected {} entries, got {}",
                x_size * row,
                p.len()
            )));
        }
        let mut p = p;
        for x in 0..x_size {
            let r = &mut p[x * row..(x + 1) * row];
            if r.iter().any(|v| !v.is_finite() || *v < -PMF_TOL) {
                return Err(Error::InvalidChannel(format!("bad entry in row x={x}")));
            }
            r.iter_mut().for_each(|v| *v = v.max(0.0));
            let s: f64 = r.iter().sum();
            if (s - 1.0).abs() > PMF_TOL {
                return Err(Error::InvalidChannel(format!("row x={x} sums to {s}")));
            }
            r.iter_mut().for_each(|v| *v /= s);
        }
        Ok(DmcChannel {
            x_size,
            y1_size,
            y2_size,
            z_size,
            p,
        })
    }

    /// Channel whose three outputs are conditionally independent given X.
    /// Each argument is a row-stochastic matrix indexed `[x][output]`.
    pub fn from_components(w1: &[Vec<f64>], w2: &[Vec<f64>], wz: &[Vec<f64>]) -> Result<Self> {
        let nx = w1.len();
        if w2.len() != nx || wz.len() != nx || nx == 0 {
            return Err(Error::InvalidChannel("component input sizes differ".into()));
        }
        let (n1, n2, nz) = (w1[0].len(), w2[0].len(), wz[0].len());
        let mut p = Vec::with_capacity(nx * n1 * n2 * nz);
        for x in 0..nx {
            if w1[x].len() != n1 || w2[x].len() != n2 || wz[x].len() != nz {
                return Err(Error::InvalidChannel("ragged component matrix".into()));
            }
            for a in 0..n1 {
                for b in 0..n2 {
                    for c in 0..nz {
                        p.push(w1[x][a] * w2[x][b] * wz[x][c]);
                    }
                }
            }
        }
        DmcChannel::new(nx, n1, n2, nz, p)
    }

    /// Parses either `{x_size, y1_size, y2_size, z_size, p: [x][y1][y2][z]}`
    /// or `{w1, w2, wz}` with one `[x][output]` matrix per output.
    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::InvalidChannel(e.to_string()))?;
        if v.get("p").is_none() {
            let c: ComponentFile =
                serde_json::from_value(v).map_err(|e| Error::InvalidChannel(e.to_string()))?;
            return DmcChannel::from_components(&c.w1, &c.w2, &c.wz);
        }
        let f: ChannelFile =
            serde_json::from_value(v).map_err(|e| Error::InvalidChannel(e.to_string()))?;
        let mut p = Vec::new();
        if f.p.len() != f.x_size {
            return Err(Error::InvalidChannel("p has wrong x dimension".into()));
        }
        for a in &f.p {
            if a.len() != f.y1_size {
                return Err(Error::InvalidChannel("p has wrong y1 dimension".into()));
            }
            for b in a {
                if b.len() != f.y2_size {
                    return Err(Error::InvalidChannel("p has wrong y2 dimension".into()));
                }
                for c in b {
                    if c.len() != f.z_size {
                        return Err(Error::InvalidChannel("p has wrong z dimension".into()));
                    }
                    p.extend_from_slice(c);
                }
            }
        }
        DmcChannel::new(f.x_size, f.y1_size, f.y2_size, f.z_size, p)
    }

    pub fn to_json(&self) -> String {
        let mut nested = Vec::with_capacity(self.x_size);
        for x in 0..self.x_size {
            let mut a = Vec::with_capacity(self.y1_size);
            for y1 in 0..self.y1_size {
                let mut b = Vec::with_capacity(self.y2_size);
                for y2 in 0..self.y2_size {
                    b.push((0..self.z_size).map(|z| self.prob(x, y1, y2, z)).collect());
                }
                a.push(b);
            }
            nested.push(a);
        }
        let f = ChannelFile {
            x_size: self.x_size,
            y1_size: self.y1_size,
            y2_size: self.y2_size,
            z_size: self.z_size,
            p: nested,
        };
        serde_json::to_string_pretty(&f).expect("channel serializes")
    }

    pub fn prob(&self, x: usize, y1: usize, y2: usize, z: usize) -> f64 {
        self.p[((x * self.y1_size + y1) * self.y2_size + y2) * self.z_size + z]
    }

    /// Flat `[x][y1][y2][z]` transition table.
    pub fn table(&self) -> &[f64] {
        &self.p
    }

    pub fn output_size(&self, o: Output) -> usize {
        match o {
            Output::Y1 => self.y1_size,
            Output::Y2 => self.y2_size,
            Output::Z => self.z_size,
        }
    }

    /// Marginal transition matrix `p(o | x)`, indexed `[x][o]`.
    pub fn marginal(&self, o: Output) -> Vec<Vec<f64>> {
        let mut w = vec![vec![0.0; self.output_size(o)]; self.x_size];
        for (x, row) in w.iter_mut().enumerate() {
            for y1 in 0..self.y1_size {
                for y2 in 0..self.y2_size {
                    for z in 0..self.z_size {
                        let k = match o {
                            Output::Y1 => y1,
                            Output::Y2 => y2,
                            Output::Z => z,
                        };
                        row[k] += self.prob(x, y1, y2, z);
                    }
                }
            }
        }
        w
    }

    /// Joint of `(X, Y1, Y2, Z)` under input distribution `px`.
    pub fn joint(&self, px: &Pmf) -> Result<Pmf> {
        if px.ndim() != 1 || px.dims()[0] != self.x_size {
            return Err(Error::InvalidArgument(format!(
                "input distribution must be over {} symbols",
                self.x_size
            )));
        }
        let row = self.y1_size * self.y2_size * self.z_size;
        let mut probs = Vec::with_capacity(self.p.len());
        for x in 0..self.x_size {
            let w = px.probs()[x];
            probs.extend(self.p[x * row..(x + 1) * row].iter().map(|v| v * w));
        }
        Pmf::new(
            vec![self.x_size, self.y1_size, self.y2_size, self.z_size],
            probs,
        )
    }

    /// Channel seen through a front-end `p(x | v)`: the result takes `v` as
    /// input. `front` is indexed `[v][x]`.
    pub fn compose_input(&self, front: &[Vec<f64>]) -> Result<Self> {
        let row = self.y1_size * self.y2_size * self.z_size;
        let mut p = Vec::with_capacity(front.len() * row);
        for f in front {
            if f.len() != self.x_size {
                return Err(Error::InvalidChannel("front-end width mismatch".into()));
            }
            for k in 0..row {
                p.push((0..self.x_size).map(|x| f[x] * self.p[x * row + k]).sum());
            }
        }
        DmcChannel::new(front.len(), self.y1_size, self.y2_size, self.z_size, p)
    }

    /// `(I(X;Y1), I(X;Y2), I(X;Z))` under `px`.
    pub fn informations(&self, px: &Pmf) -> Result<(f64, f64, f64)> {
        let j = self.joint(px)?;
        let c = InfoCache::new(&j);
        Ok((c.mi(&[0], &[1])?, c.mi(&[0], &[2])?, c.mi(&[0], &[3])?))
    }
}

/// Whether the marginal channels form the stochastic chain
/// `X -> order[0] -> order[1] -> ...`: each consecutive pair must be linked
/// by some row-stochastic map. Decided by a linear program minimizing the
/// largest residual; residuals within [`DEGRADED_TOL`] count as degraded.
pub fn is_degraded(ch: &DmcChannel, order: &[Output]) -> Result<bool> {
    if order.len() < 2 {
        return Err(Error::InvalidArgument(
            "degradedness needs at least two outputs".into(),
        ));
    }
    for pair in order.windows(2) {
        let a = ch.marginal(pair[0]);
        let b = ch.marginal(pair[1]);
        if min_link_residual(&a, &b)? > DEGRADED_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest achievable `max |A·W - B|` over row-stochastic `W`.
fn min_link_residual(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<f64> {
    let nx = a.len();
    let na = a[0].len();
    let nb = b[0].len();
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let t = lp.add_var(1.0, (0.0, f64::INFINITY));
    let w: Vec<Vec<_>> = (0..na)
        .map(|_| (0..nb).map(|_| lp.add_var(0.0, (0.0, 1.0))).collect())
        .collect();
    for row in &w {
        let e: Vec<_> = row.iter().map(|&v| (v, 1.0)).collect();
        lp.add_constraint(&e[..], ComparisonOp::Eq, 1.0);
    }
    for x in 0..nx {
        for k in 0..nb {
            let mut e: Vec<_> = (0..na)
                .filter(|&j| a[x][j] != 0.0)
                .map(|j| (w[j][k], a[x][j]))
                .collect();
            e.push((t, -1.0));
            lp.add_constraint(&e[..], ComparisonOp::Le, b[x][k]);
            e.pop();
            e.push((t, 1.0));
            lp.add_constraint(&e[..], ComparisonOp::Ge, b[x][k]);
        }
    }
    let sol = lp.solve().map_err(|e| Error::Lp(e.to_string()))?;
    Ok(sol.objective())
}

/// Binary symmetric channel matrix with crossover `p`.
pub fn bsc(p: f64) -> Vec<Vec<f64>> {
    vec![vec![1.0 - p, p], vec![p, 1.0 - p]]
}

/// Binary erasure channel matrix (outputs 0, 1, erasure).
pub fn bec(e: f64) -> Vec<Vec<f64>> {
    vec![vec![1.0 - e, 0.0, e], vec![0.0, 1.0 - e, e]]
}

/// Identity matrix on `n` symbols.
pub fn noiseless(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// Matrix of a channel whose output is constant.
pub fn constant(nx: usize) -> Vec<Vec<f64>> {
    vec![vec![1.0]; nx]
}

/// Binary entropy function.
pub fn h2(p: f64) -> f64 {
    entropy_slice(&[p, 1.0 - p])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn entropy_of_dyadic_pmf() {
        let p = Pmf::from_probs(vec![0.5, 0.25, 0.25]).unwrap();
        assert!(close(entropy(&p), 1.5));
    }

    #[test]
    fn zero_mass_symbols_contribute_nothing() {
        let p = Pmf::from_probs(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(entropy(&p), 0.0);
    }

    #[test]
    fn rejects_bad_mass() {
        assert!(Pmf::from_probs(vec![0.5, 0.4]).is_err());
        assert!(Pmf::from_probs(vec![1.5, -0.5]).is_err());
        assert!(Pmf::new(vec![2, 2], vec![0.25; 3]).is_err());
    }

    #[test]
    fn marginal_reorders_axes() {
        // p(a, b) with a in {0,1}, b in {0,1,2}
        let p = Pmf::new(vec![2, 3], vec![0.1, 0.2, 0.3, 0.05, 0.15, 0.2]).unwrap();
        let m = p.marginal(&[1, 0]).unwrap();
        assert_eq!(m.dims(), &[3, 2]);
        let want = [0.1, 0.05, 0.2, 0.15, 0.3, 0.2];
        for (x, y) in m.probs().iter().zip(want) {
            assert!(close(*x, y));
        }
        let b = p.marginal(&[1]).unwrap();
        assert!(close(b.probs()[2], 0.5));
    }

    #[test]
    fn mi_of_copy_is_entropy() {
        let p = Pmf::new(vec![2, 2], vec![0.3, 0.0, 0.0, 0.7]).unwrap();
        assert!(close(mutual_information(&p, &[0], &[1]).unwrap(), h2(0.3)));
    }

    #[test]
    fn xor_pair_is_pairwise_independent() {
        // (A, B, A xor B) with A, B fair
        let mut probs = vec![0.0; 8];
        for a in 0..2 {
            for b in 0..2 {
                probs[(a * 2 + b) * 2 + (a ^ b)] = 0.25;
            }
        }
        let p = Pmf::new(vec![2, 2, 2], probs).unwrap();
        assert!(close(mutual_information(&p, &[0], &[2]).unwrap(), 0.0));
        assert!(close(conditional_mi(&p, &[0], &[2], &[1]).unwrap(), 1.0));
        assert!(close(mutual_information(&p, &[0, 1], &[2]).unwrap(), 1.0));
    }

    #[test]
    fn overlapping_groups_rejected() {
        let p = Pmf::new(vec![2, 2], vec![0.25; 4]).unwrap();
        assert!(mutual_information(&p, &[0], &[0]).is_err());
        assert!(mutual_information(&p, &[0], &[2]).is_err());
    }

    #[test]
    fn bsc_capacity_from_joint() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &bsc(0.4)).unwrap();
        let (i1, i2, iz) = ch.informations(&Pmf::uniform(2).unwrap()).unwrap();
        assert!(close(i1, 1.0 - h2(0.1)));
        assert!(close(i2, 1.0 - h2(0.2)));
        assert!(close(iz, 1.0 - h2(0.4)));
    }

    #[test]
    fn json_round_trip() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bec(0.3), &constant(2)).unwrap();
        let back = DmcChannel::from_json(&ch.to_json()).unwrap();
        assert_eq!(back.y2_size, 3);
        for (a, b) in ch.table().iter().zip(back.table()) {
            assert!(close(*a, *b));
        }
        let comp = DmcChannel::from_json(
            r#"{"w1": [[0.9, 0.1], [0.1, 0.9]], "w2": [[0.7, 0, 0.3], [0, 0.7, 0.3]], "wz": [[1], [1]]}"#,
        )
        .unwrap();
        assert_eq!(comp.table(), ch.table());
        assert!(DmcChannel::from_json(r#"{"w1": [[1]]}"#).is_err());
    }

    #[test]
    fn degraded_when_eavesdropper_copies_receiver() {
        // Z is an exact copy of Y1, which is a BSC of X; Y2 is a fair coin
        let mut p = Vec::new();
        for x in 0..2 {
            for y1 in 0..2 {
                for y2 in 0..2 {
                    for z in 0..2 {
                        let w = if y1 == x { 0.9 } else { 0.1 };
                        let _ = y2;
                        p.push(if z == y1 { w * 0.5 } else { 0.0 });
                    }
                }
            }
        }
        let ch = DmcChannel::new(2, 2, 2, 2, p).unwrap();
        assert!(is_degraded(&ch, &[Output::Y1, Output::Z]).unwrap());
    }

    #[test]
    fn degraded_erasure_behind_noiseless() {
        let ch = DmcChannel::from_components(&noiseless(2), &noiseless(2), &bec(0.5)).unwrap();
        assert!(is_degraded(&ch, &[Output::Y1, Output::Z]).unwrap());
        assert!(!is_degraded(&ch, &[Output::Z, Output::Y1]).unwrap());
    }

    #[test]
    fn erasure_and_bsc_incomparable() {
        // BSC(p) is a degraded BEC(e) iff e <= 2p
        let ch = DmcChannel::from_components(&bec(0.5), &bec(0.5), &bsc(0.1)).unwrap();
        assert!(!is_degraded(&ch, &[Output::Y1, Output::Z]).unwrap());
        assert!(!is_degraded(&ch, &[Output::Z, Output::Y1]).unwrap());
        let ch = DmcChannel::from_components(&bec(0.2), &bec(0.2), &bsc(0.1)).unwrap();
        assert!(is_degraded(&ch, &[Output::Y1, Output::Z]).unwrap());
    }

    #[test]
    fn three_stage_chain() {
        let ch = DmcChannel::from_components(&bsc(0.05), &bsc(0.2), &bsc(0.4)).unwrap();
        assert!(is_degraded(&ch, &[Output::Y1, Output::Y2, Output::Z]).unwrap());
        assert!(!is_degraded(&ch, &[Output::Y2, Output::Y1, Output::Z]).unwrap());
    }
}
