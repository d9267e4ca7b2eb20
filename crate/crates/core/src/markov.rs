//! Auxiliary-variable distributions `Q -> U -> V0 -> (V1, V2) -> X`.
//!
//! A spec is stored as its joint over `(Q, U, V0, V1, V2, X)`; extending it
//! with a channel gives the nine-variable joint every region evaluator
//! reads its information terms from. Schemes that need fewer auxiliaries
//! collapse the unused ones (constant `Q`, `V1 = V2 = V0`, ...).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info::{DmcChannel, InfoCache, Pmf};
use crate::TOL;

/// Axis indices of the extended joint.
pub mod axis {
    pub const Q: usize = 0;
    pub const U: usize = 1;
    pub const V0: usize = 2;
    pub const V1: usize = 3;
    pub const V2: usize = 4;
    pub const X: usize = 5;
    pub const Y1: usize = 6;
    pub const Y2: usize = 7;
    pub const Z: usize = 8;
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovSpec {
    joint: Pmf,
}

/// Row-stochastic matrix `p(b | a)` indexed `[a][b]`.
pub type Kernel = Vec<Vec<f64>>;

/// Serialized form: either the factors or the full joint.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecFile {
    Factors {
        p_q: Vec<f64>,
        p_u_given_q: Kernel,
        p_v0_given_u: Kernel,
        /// `[v0][v1][v2]`
        p_v1v2_given_v0: Vec<Vec<Vec<f64>>>,
        /// `[v1][v2][x]`
        p_x_given_v1v2: Vec<Vec<Vec<f64>>>,
    },
    Joint {
        /// Sizes of `(Q, U, V0, V1, V2, X)`.
        dims: Vec<usize>,
        /// Row-major over `dims`.
        joint: Vec<f64>,
    },
}

fn check_kernel(k: &Kernel, rows: usize, what: &str) -> Result<usize> {
    if k.len() != rows || rows == 0 {
        return Err(Error::InvalidPmf(format!("{what}: expected {rows} rows")));
    }
    let cols = k[0].len();
    for (i, r) in k.iter().enumerate() {
        if r.len() != cols || cols == 0 {
            return Err(Error::InvalidPmf(format!("{what}: ragged row {i}")));
        }
        let s: f64 = r.iter().sum();
        if r.iter().any(|v| !v.is_finite() || *v < -TOL) || (s - 1.0).abs() > TOL {
            return Err(Error::InvalidPmf(format!("{what}: row {i} is not a distribution")));
        }
    }
    Ok(cols)
}

/// Identity kernel on `n` symbols.
pub fn copy_kernel(n: usize) -> Kernel {
    crate::info::noiseless(n)
}

/// Kernel to a single constant symbol.
pub fn const_kernel(n: usize) -> Kernel {
    vec![vec![1.0]; n]
}

impl MarkovSpec {
    pub fn from_factors(
        p_q: &[f64],
        p_u_given_q: &Kernel,
        p_v0_given_u: &Kernel,
        p_v1v2_given_v0: &[Vec<Vec<f64>>],
        p_x_given_v1v2: &[Vec<Vec<f64>>],
    ) -> Result<Self> {
        let nq = p_q.len();
        let nu = check_kernel(p_u_given_q, nq, "p(u|q)")?;
        let nv0 = check_kernel(p_v0_given_u, nu, "p(v0|u)")?;
        if p_v1v2_given_v0.len() != nv0 || nv0 == 0 {
            return Err(Error::InvalidPmf("p(v1,v2|v0): wrong row count".into()));
        }
        let nv1 = p_v1v2_given_v0[0].len();
        let nv2 = p_v1v2_given_v0[0].first().map_or(0, |r| r.len());
        let flat12: Kernel = p_v1v2_given_v0
            .iter()
            .map(|m| {
                if m.len() != nv1 || m.iter().any(|r| r.len() != nv2) {
                    Err(Error::InvalidPmf("p(v1,v2|v0): ragged".into()))
                } else {
                    Ok(m.concat())
                }
            })
            .collect::<Result<_>>()?;
        check_kernel(&flat12, nv0, "p(v1,v2|v0)")?;
        if p_x_given_v1v2.len() != nv1 || p_x_given_v1v2.iter().any(|r| r.len() != nv2) {
            return Err(Error::InvalidPmf("p(x|v1,v2): wrong shape".into()));
        }
        let flatx: Kernel = p_x_given_v1v2.concat();
        let nx = check_kernel(&flatx, nv1 * nv2, "p(x|v1,v2)")?;

        let dims = vec![nq, nu, nv0, nv1, nv2, nx];
        let mut probs = Vec::with_capacity(dims.iter().product());
        for q in 0..nq {
            for u in 0..nu {
                let pu = p_q[q] * p_u_given_q[q][u];
                for v0 in 0..nv0 {
                    let pv0 = pu * p_v0_given_u[u][v0];
                    for v1 in 0..nv1 {
                        for v2 in 0..nv2 {
                            let pv = pv0 * p_v1v2_given_v0[v0][v1][v2];
                            for x in 0..nx {
                                probs.push(pv * p_x_given_v1v2[v1][v2][x]);
                            }
                        }
                    }
                }
            }
        }
        Ok(MarkovSpec {
            joint: Pmf::new(dims, probs)?,
        })
    }

    /// Accepts a joint over `(Q, U, V0, V1, V2, X)` whose conditional
    /// independences hold within [`TOL`].
    pub fn from_joint(joint: Pmf) -> Result<Self> {
        if joint.ndim() != 6 {
            return Err(Error::InvalidPmf("spec joint must have six axes".into()));
        }
        use axis::*;
        let c = InfoCache::new(&joint);
        let checks = [
            (c.cmi(&[Q], &[V0, V1, V2, X], &[U])?, "Q - U - (V0,V1,V2,X)"),
            (c.cmi(&[Q, U], &[V1, V2, X], &[V0])?, "(Q,U) - V0 - (V1,V2,X)"),
            (c.cmi(&[Q, U, V0], &[X], &[V1, V2])?, "(Q,U,V0) - (V1,V2) - X"),
        ];
        for (v, name) in checks {
            if v > TOL {
                return Err(Error::InvalidPmf(format!(
                    "joint violates the Markov chain {name} (residual {v:e})"
                )));
            }
        }
        Ok(MarkovSpec { joint })
    }

    pub fn from_file(f: &SpecFile) -> Result<Self> {
        match f {
            SpecFile::Factors {
                p_q,
                p_u_given_q,
                p_v0_given_u,
                p_v1v2_given_v0,
                p_x_given_v1v2,
            } => MarkovSpec::from_factors(p_q, p_u_given_q, p_v0_given_u, p_v1v2_given_v0, p_x_given_v1v2),
            SpecFile::Joint { dims, joint } => {
                MarkovSpec::from_joint(Pmf::new(dims.clone(), joint.clone())?)
            }
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: SpecFile = serde_json::from_str(s).map_err(|e| Error::InvalidPmf(e.to_string()))?;
        MarkovSpec::from_file(&f)
    }

    pub fn to_file(&self) -> SpecFile {
        SpecFile::Joint {
            dims: self.joint.dims().to_vec(),
            joint: self.joint.probs().to_vec(),
        }
    }

    /// Single auxiliary layer: `Q`, `U` constant and `V0 = V1 = V2 = X`
    /// drawn from `px`.
    pub fn input_only(px: &Pmf) -> Result<Self> {
        let nx = px.dims()[0];
        MarkovSpec::two_layer(&[1.0], &vec![px.probs().to_vec()], &copy_kernel(nx))
    }

    /// `U -> V -> X` with `V0 = V1 = V2 = V` and constant `Q`.
    pub fn two_layer(p_u: &[f64], p_v_given_u: &Kernel, p_x_given_v: &Kernel) -> Result<Self> {
        let nv = check_kernel(p_v_given_u, p_u.len(), "p(v|u)")?;
        MarkovSpec::from_factors(
            &[1.0],
            &vec![p_u.to_vec()],
            p_v_given_u,
            &diag_pair(nv),
            &pair_front(p_x_given_v, nv)?,
        )
    }

    /// `U -> V -> T -> X` with `V0 = V`, `V1 = V2 = T` and constant `Q`.
    pub fn three_layer(
        p_u: &[f64],
        p_v_given_u: &Kernel,
        p_t_given_v: &Kernel,
        p_x_given_t: &Kernel,
    ) -> Result<Self> {
        let nv = check_kernel(p_v_given_u, p_u.len(), "p(v|u)")?;
        let nt = check_kernel(p_t_given_v, nv, "p(t|v)")?;
        let v1v2: Vec<Vec<Vec<f64>>> = p_t_given_v
            .iter()
            .map(|row| {
                (0..nt)
                    .map(|a| (0..nt).map(|b| if a == b { row[a] } else { 0.0 }).collect())
                    .collect()
            })
            .collect();
        MarkovSpec::from_factors(
            &[1.0],
            &vec![p_u.to_vec()],
            p_v_given_u,
            &v1v2,
            &pair_front(p_x_given_t, nt)?,
        )
    }

    pub fn joint(&self) -> &Pmf {
        &self.joint
    }

    pub fn sizes(&self) -> [usize; 6] {
        let d = self.joint.dims();
        [d[0], d[1], d[2], d[3], d[4], d[5]]
    }

    pub fn x_marginal(&self) -> Pmf {
        self.joint.marginal(&[axis::X]).expect("axis exists")
    }

    /// Joint over `(Q, U, V0, V1, V2, X, Y1, Y2, Z)`.
    pub fn extend(&self, ch: &DmcChannel) -> Result<Pmf> {
        let nx = self.sizes()[5];
        if nx != ch.x_size {
            return Err(Error::InvalidArgument(format!(
                "spec input alphabet {nx} does not match channel input {}",
                ch.x_size
            )));
        }
        let row = ch.y1_size * ch.y2_size * ch.z_size;
        let t = ch.table();
        let mut probs = Vec::with_capacity(self.joint.probs().len() * row);
        for (i, &p) in self.joint.probs().iter().enumerate() {
            let x = i % nx;
            probs.extend(t[x * row..(x + 1) * row].iter().map(|w| w * p));
        }
        let mut dims = self.joint.dims().to_vec();
        dims.extend([ch.y1_size, ch.y2_size, ch.z_size]);
        Pmf::new(dims, probs)
    }
}

/// `p(v1, v2 | v0)` with `V1 = V2 = V0`.
fn diag_pair(n: usize) -> Vec<Vec<Vec<f64>>> {
    (0..n)
        .map(|v| {
            (0..n)
                .map(|a| (0..n).map(|b| if a == v && b == v { 1.0 } else { 0.0 }).collect())
                .collect()
        })
        .collect()
}

/// `p(x | v1, v2)` that reads only `v1` (the pair is always diagonal in the
/// builders above, so this is `p(x | t)`).
fn pair_front(p_x: &Kernel, n: usize) -> Result<Vec<Vec<Vec<f64>>>> {
    check_kernel(p_x, n, "p(x|v)")?;
    Ok((0..n).map(|a| (0..n).map(|_| p_x[a].clone()).collect()).collect())
}
