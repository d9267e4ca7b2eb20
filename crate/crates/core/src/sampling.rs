//! Seeded generators for random channels and auxiliary distributions.
//!
//! All randomness flows through ChaCha8, so a seed pins every draw on
//! every platform.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::info::{DmcChannel, Pmf};
use crate::markov::{copy_kernel, Kernel, MarkovSpec};
use crate::regions::marton_check;

pub type SimRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Flat Dirichlet draw on `n` symbols.
pub fn random_pmf<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln())
        .collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

pub fn random_kernel<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Kernel {
    (0..rows).map(|_| random_pmf(rng, cols)).collect()
}

/// Channel with an arbitrary (correlated) law `p(y1, y2, z | x)`.
pub fn random_channel<R: Rng>(rng: &mut R, nx: usize, n1: usize, n2: usize, nz: usize) -> DmcChannel {
    let p: Vec<f64> = (0..nx).flat_map(|_| random_pmf(rng, n1 * n2 * nz)).collect();
    DmcChannel::new(nx, n1, n2, nz, p).expect("rows are distributions")
}

/// Channel with conditionally independent outputs.
pub fn random_product_channel<R: Rng>(rng: &mut R, nx: usize, n1: usize, n2: usize, nz: usize) -> DmcChannel {
    let w1 = random_kernel(rng, nx, n1);
    let w2 = random_kernel(rng, nx, n2);
    let wz = random_kernel(rng, nx, nz);
    DmcChannel::from_components(&w1, &w2, &wz).expect("rows are distributions")
}

/// Input distributions on a binary alphabet, `steps + 1` points.
pub fn binary_input_grid(steps: usize) -> Vec<Pmf> {
    (0..=steps)
        .map(|k| {
            let p = k as f64 / steps as f64;
            Pmf::from_probs(vec![p, 1.0 - p]).expect("valid")
        })
        .collect()
}

/// Random `U -> V -> X` (with `V0 = V1 = V2 = V`).
pub fn random_two_layer<R: Rng>(rng: &mut R, nu: usize, nv: usize, nx: usize) -> Result<MarkovSpec> {
    MarkovSpec::two_layer(&random_pmf(rng, nu), &random_kernel(rng, nu, nv), &random_kernel(rng, nv, nx))
}

/// Random `U -> V -> T -> X`.
pub fn random_three_layer<R: Rng>(
    rng: &mut R,
    nu: usize,
    nv: usize,
    nt: usize,
    nx: usize,
) -> Result<MarkovSpec> {
    MarkovSpec::three_layer(
        &random_pmf(rng, nu),
        &random_kernel(rng, nu, nv),
        &random_kernel(rng, nv, nt),
        &random_kernel(rng, nt, nx),
    )
}

/// Random general spec (time sharing `Q` included).
pub fn random_spec<R: Rng>(rng: &mut R, sizes: [usize; 6]) -> Result<MarkovSpec> {
    let [nq, nu, nv0, nv1, nv2, nx] = sizes;
    let v12: Vec<Vec<Vec<f64>>> = (0..nv0)
        .map(|_| {
            let flat = random_pmf(rng, nv1 * nv2);
            flat.chunks(nv2).map(|c| c.to_vec()).collect()
        })
        .collect();
    let px: Vec<Vec<Vec<f64>>> = (0..nv1).map(|_| random_kernel(rng, nv2, nx)).collect();
    MarkovSpec::from_factors(
        &random_pmf(rng, nq),
        &random_kernel(rng, nq, nu),
        &random_kernel(rng, nu, nv0),
        &v12,
        &px,
    )
}

/// Marton spec in which one satellite coincides with the cloud
/// (`V2 = V0` when `first` is true, else `V1 = V0`); the covering
/// condition then holds with equality.
pub fn random_one_sided_marton<R: Rng>(
    rng: &mut R,
    nu: usize,
    nv0: usize,
    nv: usize,
    nx: usize,
    first: bool,
) -> Result<MarkovSpec> {
    let (n1, n2) = if first { (nv, nv0) } else { (nv0, nv) };
    let sat = random_kernel(rng, nv0, nv);
    let v12: Vec<Vec<Vec<f64>>> = (0..nv0)
        .map(|v0| {
            let mut m = vec![vec![0.0; n2]; n1];
            for (v, &p) in sat[v0].iter().enumerate() {
                if first {
                    m[v][v0] = p;
                } else {
                    m[v0][v] = p;
                }
            }
            m
        })
        .collect();
    let front = random_kernel(rng, nv, nx);
    let px: Vec<Vec<Vec<f64>>> = (0..n1)
        .map(|a| (0..n2).map(|b| front[if first { a } else { b }].clone()).collect())
        .collect();
    MarkovSpec::from_factors(
        &[1.0],
        &vec![random_pmf(rng, nu)],
        &random_kernel(rng, nu, nv0),
        &v12,
        &px,
    )
}

/// Spec whose satellites are correlated given the cloud and sent as the
/// pair `x = (v1, v2)` (input alphabet `nv * nv`). Pair it with
/// [`pair_revealing_channel`] so the covering condition can hold.
pub fn random_paired_marton<R: Rng>(rng: &mut R, nu: usize, nv0: usize, nv: usize) -> Result<MarkovSpec> {
    let v12: Vec<Vec<Vec<f64>>> = (0..nv0)
        .map(|_| random_pmf(rng, nv * nv).chunks(nv).map(|c| c.to_vec()).collect())
        .collect();
    let id = copy_kernel(nv * nv);
    let px: Vec<Vec<Vec<f64>>> = (0..nv).map(|a| (0..nv).map(|b| id[a * nv + b].clone()).collect()).collect();
    MarkovSpec::from_factors(
        &[1.0],
        &vec![random_pmf(rng, nu)],
        &random_kernel(rng, nu, nv0),
        &v12,
        &px,
    )
}

/// Channel on pair inputs `x = (v1, v2)`: receiver 1 sees the pair
/// exactly, the eavesdropper sees `v1` exactly, receiver 2 sees `v2`
/// through a random kernel.
pub fn pair_revealing_channel<R: Rng>(rng: &mut R, nv: usize) -> DmcChannel {
    let nx = nv * nv;
    let w1 = copy_kernel(nx);
    let noisy = random_kernel(rng, nv, nv);
    let w2: Kernel = (0..nx).map(|x| noisy[x % nv].clone()).collect();
    let wz: Kernel = (0..nx)
        .map(|x| (0..nv).map(|z| if z == x / nv { 1.0 } else { 0.0 }).collect())
        .collect();
    DmcChannel::from_components(&w1, &w2, &wz).expect("rows are distributions")
}

/// Draws until `make` yields a spec admissible for the Marton region, up
/// to `tries` attempts.
pub fn admissible_marton<R: Rng>(
    rng: &mut R,
    ch: &DmcChannel,
    tries: usize,
    mut make: impl FnMut(&mut R) -> Result<MarkovSpec>,
) -> Result<Option<MarkovSpec>> {
    for _ in 0..tries {
        let s = make(rng)?;
        if marton_check(ch, &s).is_ok() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
