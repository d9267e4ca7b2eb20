//! Finite-blocklength codebooks and their exact performance.
//!
//! Codes are small enough that every message, every encoder random index
//! and every channel output sequence can be enumerated; error probability
//! (ML decoding with side information) and leakage to the eavesdropper are
//! computed from the exact joint law rather than estimated.

mod eval;
mod trend;

pub use eval::{eve_view, exact_error_prob, exact_leakage, Leakage, Message};
pub use trend::{trend_experiment, Scheme, TrendRow, TrendTable};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::info::{DmcChannel, Pmf};
use crate::lindet::{Layout, LinDetConfig};
use crate::markov::{axis, Kernel, MarkovSpec};
use crate::regions::RateSplitVector;

/// Largest word table a builder will generate (`log2` of its size).
pub const MAX_TABLE_BITS: usize = 20;

/// Bit widths of the message parts. Key parts are XORed between users
/// (`m1k ^ m2k`, `m1sk ^ m2sk`) so paired widths must agree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SplitMessage {
    pub m1k: usize,
    pub m1sk: usize,
    pub m1s: usize,
    pub m2k: usize,
    pub m2sk: usize,
    pub m2s: usize,
    /// Encoder randomness.
    pub rand: usize,
}

impl SplitMessage {
    /// Widths from rates at blocklength `n`, rounded down.
    pub fn from_rates(n: usize, s: &RateSplitVector) -> Result<Self> {
        s.validate()?;
        let b = |r: f64| (n as f64 * r + 1e-9).floor() as usize;
        Ok(SplitMessage {
            m1k: b(s.rk),
            m1sk: b(s.rsk),
            m1s: b(s.r1s),
            m2k: b(s.rk),
            m2sk: b(s.rsk),
            m2s: b(s.r2s),
            rand: b(s.rr),
        })
    }

    pub fn m1_bits(&self) -> usize {
        self.m1k + self.m1sk + self.m1s
    }

    pub fn m2_bits(&self) -> usize {
        self.m2k + self.m2sk + self.m2s
    }

    /// Cloud index `m1k ^ m2k`.
    fn key(&self, m1: usize, m2: usize) -> usize {
        (m1 >> (self.m1sk + self.m1s)) ^ (m2 >> (self.m2sk + self.m2s))
    }

    /// Satellite index packing `(m1sk ^ m2sk, m1s, m2s, r)`.
    fn satellite(&self, m1: usize, m2: usize, r: usize) -> usize {
        let mask = |b: usize| (1usize << b) - 1;
        let sk = ((m1 >> self.m1s) & mask(self.m1sk)) ^ ((m2 >> self.m2s) & mask(self.m2sk));
        let s1 = m1 & mask(self.m1s);
        let s2 = m2 & mask(self.m2s);
        (((sk << self.m1s | s1) << self.m2s | s2) << self.rand) | r
    }

    fn satellite_bits(&self) -> usize {
        self.m1sk + self.m1s + self.m2s + self.rand
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Structure {
    /// Word `key * satellites + satellite` per [`SplitMessage`].
    Layered(SplitMessage),
    /// Explicit word index for every `(m1, m2, r)`.
    Table(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Codebook {
    pub scheme: String,
    pub n: usize,
    /// Alphabet of the code symbols (channel inputs, or `V` when `front`
    /// is set).
    pub alphabet: usize,
    /// Per-letter `p(x | v)` applied after the codeword.
    pub front: Option<Kernel>,
    pub m1_count: usize,
    pub m2_count: usize,
    pub rand_count: usize,
    pub structure: Structure,
    pub words: Vec<Vec<u8>>,
    /// Cloud-center words, one per key index (empty for single-layer codes).
    pub clouds: Vec<Vec<u8>>,
    pub seed: Option<u64>,
}

impl Codebook {
    /// Word index sent for `(m1, m2, r)`.
    pub fn word_index(&self, m1: usize, m2: usize, r: usize) -> usize {
        match &self.structure {
            Structure::Layered(s) => (s.key(m1, m2) << s.satellite_bits()) | s.satellite(m1, m2, r),
            Structure::Table(t) => t[(m1 * self.m2_count + m2) * self.rand_count + r] as usize,
        }
    }

    pub fn word(&self, m1: usize, m2: usize, r: usize) -> &[u8] {
        &self.words[self.word_index(m1, m2, r)]
    }

    pub fn split(&self) -> Option<SplitMessage> {
        match self.structure {
            Structure::Layered(s) => Some(s),
            Structure::Table(_) => None,
        }
    }

    /// Channel seen by the code symbols.
    pub fn effective_channel(&self, ch: &DmcChannel) -> Result<DmcChannel> {
        let eff = match &self.front {
            Some(f) => ch.compose_input(f)?,
            None => ch.clone(),
        };
        if eff.x_size != self.alphabet {
            return Err(Error::InvalidArgument(format!(
                "code alphabet {} does not match channel input size {}",
                self.alphabet, eff.x_size
            )));
        }
        Ok(eff)
    }

    /// Wraps an arbitrary encoder `(m1, m2, r) -> word`.
    pub fn from_encoder(
        scheme: &str,
        n: usize,
        alphabet: usize,
        counts: (usize, usize, usize),
        mut enc: impl FnMut(usize, usize, usize) -> Vec<u8>,
    ) -> Result<Self> {
        let (m1_count, m2_count, rand_count) = counts;
        let total = m1_count
            .checked_mul(m2_count)
            .and_then(|v| v.checked_mul(rand_count))
            .unwrap_or(usize::MAX);
        if total == 0 {
            return Err(Error::InvalidArgument("index spaces must be non-empty".into()));
        }
        check_table(total)?;
        let mut words: Vec<Vec<u8>> = Vec::new();
        let mut index = std::collections::HashMap::new();
        let mut table = Vec::with_capacity(total);
        for m1 in 0..m1_count {
            for m2 in 0..m2_count {
                for r in 0..rand_count {
                    let w = enc(m1, m2, r);
                    if w.len() != n || w.iter().any(|&s| s as usize >= alphabet) {
                        return Err(Error::InvalidArgument(format!(
                            "encoder produced an invalid word for ({m1}, {m2}, {r})"
                        )));
                    }
                    let next = words.len() as u32;
                    let id = *index.entry(w.clone()).or_insert_with(|| {
                        words.push(w);
                        next
                    });
                    table.push(id);
                }
            }
        }
        Ok(Codebook {
            scheme: scheme.to_string(),
            n,
            alphabet,
            front: None,
            m1_count,
            m2_count,
            rand_count,
            structure: Structure::Table(table),
            words,
            clouds: Vec::new(),
            seed: None,
        })
    }
}

/// Separate generator streams so cloud draws never shift satellite draws.
const CLOUD_STREAM: u64 = 1;
const WORD_STREAM: u64 = 2;

fn stream(seed: u64, s: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(s);
    r
}

fn draw<R: Rng>(rng: &mut R, row: &[f64]) -> u8 {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last = 0;
    for (k, &p) in row.iter().enumerate() {
        if p > 0.0 {
            last = k;
            acc += p;
            if u < acc {
                return k as u8;
            }
        }
    }
    last as u8
}

fn support(row: &[f64]) -> usize {
    row.iter().filter(|&&p| p > 0.0).count()
}

/// Draws `count` words letter by letter from `rows(i)`, redrawing repeats
/// when the product support is large enough to make all words distinct.
/// `taken` holds words already used by the same group.
fn draw_group<R: Rng>(
    rng: &mut R,
    n: usize,
    count: usize,
    rows: &dyn Fn(usize) -> Vec<f64>,
    taken: &mut std::collections::HashSet<Vec<u8>>,
) -> Vec<Vec<u8>> {
    let rows: Vec<Vec<f64>> = (0..n).map(rows).collect();
    let room = rows
        .iter()
        .map(|r| support(r) as f64)
        .product::<f64>();
    let distinct = room >= (taken.len() + count) as f64;
    let max_tries = 10_000 * count.max(1);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count {
        let w: Vec<u8> = rows.iter().map(|r| draw(rng, r)).collect();
        tries += 1;
        if distinct && tries < max_tries && taken.contains(&w) {
            continue;
        }
        taken.insert(w.clone());
        out.push(w);
    }
    out
}

fn check_table(words: usize) -> Result<()> {
    if words > 1 << MAX_TABLE_BITS {
        return Err(Error::BudgetExceeded {
            needed: words as u64,
            budget: 1 << MAX_TABLE_BITS,
        });
    }
    Ok(())
}

fn input_law(ch: &DmcChannel, px: &Pmf) -> Result<Vec<f64>> {
    if px.ndim() != 1 || px.dims()[0] != ch.x_size {
        return Err(Error::InvalidArgument(format!(
            "input law has {} symbols, channel expects {}",
            px.probs().len(),
            ch.x_size
        )));
    }
    Ok(px.probs().to_vec())
}

fn layered_counts(s: &SplitMessage) -> Result<(usize, usize, usize)> {
    let bits = s.m1_bits() + s.m2_bits() + s.rand;
    if bits > 26 {
        return Err(Error::BudgetExceeded {
            needed: 1u64 << bits.min(63),
            budget: 1 << 26,
        });
    }
    Ok((1 << s.m1_bits(), 1 << s.m2_bits(), 1 << s.rand))
}

fn single_layer(
    scheme: &str,
    ch: &DmcChannel,
    n: usize,
    s: SplitMessage,
    px: &Pmf,
    seed: u64,
) -> Result<Codebook> {
    let row = input_law(ch, px)?;
    let (m1_count, m2_count, rand_count) = layered_counts(&s)?;
    let total = 1usize << (s.m1k + s.satellite_bits());
    check_table(total)?;
    let mut rng = stream(seed, WORD_STREAM);
    let words = draw_group(&mut rng, n, total, &|_| row.clone(), &mut Default::default());
    Ok(Codebook {
        scheme: scheme.to_string(),
        n,
        alphabet: ch.x_size,
        front: None,
        m1_count,
        m2_count,
        rand_count,
        structure: Structure::Layered(s),
        words,
        clouds: Vec::new(),
        seed: Some(seed),
    })
}

/// `2^{floor(n R)}` i.i.d. codewords from `px`, indexed by `m1 ^ m2`.
pub fn build_secret_key_code(ch: &DmcChannel, n: usize, rate: f64, px: &Pmf, seed: u64) -> Result<Codebook> {
    let split = RateSplitVector {
        rk: rate,
        ..Default::default()
    };
    let s = SplitMessage::from_rates(n, &split)?;
    single_layer("secret-key", ch, n, s, px, seed)
}

/// Binned code `x(m1k ^ m2k, m1s, m2s, r)`: the key part and the encoder
/// randomness together randomize the eavesdropper's view of the secured
/// parts. Uses `rk`, `r1s`, `r2s` and `rr` of `splits`.
pub fn build_combined_code(
    ch: &DmcChannel,
    n: usize,
    splits: &RateSplitVector,
    px: &Pmf,
    seed: u64,
) -> Result<Codebook> {
    let only = RateSplitVector {
        rk: splits.rk,
        r1s: splits.r1s,
        r2s: splits.r2s,
        rr: splits.rr,
        ..Default::default()
    };
    let s = SplitMessage::from_rates(n, &only)?;
    single_layer("combined", ch, n, s, px, seed)
}

/// Two-layer code: clouds `u(k)` with `k = m1k ^ m2k` from `p(u)`,
/// satellites `v(k, m1sk ^ m2sk, m1s, m2s, r)` from `p(v | u(k))`, and the
/// input through `p(x | v)` letter by letter. `V` is the `V0` layer of `spec`.
pub fn build_superposition_code(
    ch: &DmcChannel,
    n: usize,
    splits: &RateSplitVector,
    spec: &MarkovSpec,
    seed: u64,
) -> Result<Codebook> {
    let [_, nu, nv, _, _, nx] = spec.sizes();
    if nx != ch.x_size {
        return Err(Error::InvalidArgument(format!(
            "spec input alphabet {nx} does not match channel input size {}",
            ch.x_size
        )));
    }
    let only = RateSplitVector {
        rk: splits.rk,
        rsk: splits.rsk,
        r1s: splits.r1s,
        r2s: splits.r2s,
        rr: splits.rr,
        ..Default::default()
    };
    let s = SplitMessage::from_rates(n, &only)?;
    let (m1_count, m2_count, rand_count) = layered_counts(&s)?;
    let clouds_n = 1usize << s.m1k;
    let sats = 1usize << s.satellite_bits();
    check_table(clouds_n * sats)?;

    let j = spec.joint();
    let pu = j.marginal(&[axis::U])?.probs().to_vec();
    let puv = j.marginal(&[axis::U, axis::V0])?;
    let pvx = j.marginal(&[axis::V0, axis::X])?;
    let conditional = |p: &Pmf, rows: usize, cols: usize| -> Kernel {
        (0..rows)
            .map(|a| {
                let r = &p.probs()[a * cols..(a + 1) * cols];
                let t: f64 = r.iter().sum();
                if t > 0.0 {
                    r.iter().map(|v| v / t).collect()
                } else {
                    // unreachable symbol; any row will do
                    let mut d = vec![0.0; cols];
                    d[0] = 1.0;
                    d
                }
            })
            .collect()
    };
    let pv_u = conditional(&puv, nu, nv);
    let px_v = conditional(&pvx, nv, nx);

    let mut crng = stream(seed, CLOUD_STREAM);
    let clouds = draw_group(&mut crng, n, clouds_n, &|_| pu.clone(), &mut Default::default());
    // satellites are kept distinct among clouds sharing the same word
    let mut rng = stream(seed, WORD_STREAM);
    let mut taken: std::collections::HashMap<Vec<u8>, std::collections::HashSet<Vec<u8>>> = Default::default();
    let mut words = Vec::with_capacity(clouds_n * sats);
    for c in &clouds {
        let set = taken.entry(c.clone()).or_default();
        let rows = |i: usize| pv_u[c[i] as usize].clone();
        words.extend(draw_group(&mut rng, n, sats, &rows, set));
    }
    Ok(Codebook {
        scheme: "superposition".to_string(),
        n,
        alphabet: nv,
        front: Some(px_v),
        m1_count,
        m2_count,
        rand_count,
        structure: Structure::Layered(s),
        words,
        clouds,
        seed: Some(seed),
    })
}

/// Linear deterministic channel as a DMC on `2^q` inputs: each output is
/// the top bits of the input.
pub fn lindet_channel(cfg: &LinDetConfig) -> Result<DmcChannel> {
    let q = cfg.q();
    let top = |n: usize| -> Kernel {
        (0..1usize << q)
            .map(|x| {
                let mut r = vec![0.0; 1 << n];
                r[x >> (q - n)] = 1.0;
                r
            })
            .collect()
    };
    DmcChannel::from_components(&top(cfg.n1), &top(cfg.n2), &top(cfg.ne))
}

/// A bit-level construction as a blocklength-1 codebook over `2^q` symbols.
pub fn lindet_codebook(cfg: &LinDetConfig, l: &Layout) -> Result<Codebook> {
    let counts = (1usize << l.r1, 1usize << l.r2, 1usize << l.rand_bits);
    Codebook::from_encoder("lindet", 1, 1 << cfg.q(), counts, |m1, m2, r| {
        vec![l.encode_bits(m1 as u64, m2 as u64, r as u64) as u8]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::{bsc, noiseless};

    fn ch_bsc() -> DmcChannel {
        DmcChannel::from_components(&bsc(0.1), &bsc(0.1), &bsc(0.3)).unwrap()
    }

    #[test]
    fn secret_key_reproducible() {
        let ch = ch_bsc();
        let px = Pmf::uniform(2).unwrap();
        let a = build_secret_key_code(&ch, 2, 1.0, &px, 9).unwrap();
        let b = build_secret_key_code(&ch, 2, 1.0, &px, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.words.len(), 4);
        let mut w = a.words.clone();
        w.sort();
        w.dedup();
        assert_eq!(w.len(), 4, "distinct when support allows");
    }

    #[test]
    fn combined_without_secured_part_is_secret_key() {
        let ch = ch_bsc();
        let px = Pmf::from_probs(vec![0.3, 0.7]).unwrap();
        let sk = build_secret_key_code(&ch, 4, 0.5, &px, 3).unwrap();
        let s = RateSplitVector {
            rk: 0.5,
            ..Default::default()
        };
        let cb = build_combined_code(&ch, 4, &s, &px, 3).unwrap();
        assert_eq!(sk.words, cb.words);
        assert_eq!(sk.structure, cb.structure);
    }

    #[test]
    fn superposition_collapses() {
        let ch = ch_bsc();
        let spec = MarkovSpec::two_layer(&[0.5, 0.5], &bsc(0.2), &noiseless(2)).unwrap();
        let s = RateSplitVector {
            rk: 0.5,
            ..Default::default()
        };
        let c = build_superposition_code(&ch, 4, &s, &spec, 1).unwrap();
        assert_eq!(c.clouds.len(), 4);
        assert_eq!(c.words.len(), 4, "one satellite per cloud");
        assert_eq!(c.split().unwrap().satellite_bits(), 0);
    }

    #[test]
    fn trivial_cloud_matches_combined() {
        let ch = ch_bsc();
        let px = Pmf::from_probs(vec![0.4, 0.6]).unwrap();
        let spec = MarkovSpec::two_layer(&[1.0], &vec![px.probs().to_vec()], &noiseless(2)).unwrap();
        let s = RateSplitVector {
            rk: 0.25,
            r1s: 0.5,
            rr: 0.25,
            ..Default::default()
        };
        let sp = build_superposition_code(&ch, 4, &s, &spec, 11).unwrap();
        let cb = build_combined_code(&ch, 4, &s, &px, 11).unwrap();
        assert_eq!(sp.words, cb.words);
        assert_eq!(sp.structure, cb.structure);
    }

    #[test]
    fn split_indexing() {
        let s = SplitMessage {
            m1k: 2,
            m1s: 1,
            m2k: 2,
            rand: 1,
            ..Default::default()
        };
        // m1 = (k=10, s=1), m2 = 01, r = 1 -> key 11, satellite (1, 1)
        assert_eq!(s.key(0b101, 0b01), 0b11);
        assert_eq!(s.satellite(0b101, 0b01, 1), 0b11);
    }

    #[test]
    fn oversized_tables_refused() {
        let ch = ch_bsc();
        let px = Pmf::uniform(2).unwrap();
        assert!(matches!(
            build_secret_key_code(&ch, 21, 1.0, &px, 0),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
