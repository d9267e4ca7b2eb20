//! Linear deterministic broadcast model with an eavesdropper.
//!
//! The transmitter sends a `q`-bit word; receiver `i` sees its top `n_i`
//! bits and the eavesdropper its top `ne` bits (bit 1 is the most
//! significant). Each legitimate receiver knows the other receiver's
//! message. Codewords are built per bit from XORs of the two messages,
//! plain message bits and uniform filler bits.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{RatePair, RateRegion};
use crate::info::{mutual_information, Pmf};
use crate::regions::coupled_region;

/// Largest supported word length.
pub const MAX_Q: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LinDetConfig {
    pub n1: usize,
    pub n2: usize,
    pub ne: usize,
}

impl LinDetConfig {
    pub fn new(n1: usize, n2: usize, ne: usize) -> Result<Self> {
        let c = LinDetConfig { n1, n2, ne };
        if c.q() > MAX_Q {
            return Err(Error::InvalidArgument(format!(
                "word length {} exceeds {MAX_Q}",
                c.q()
            )));
        }
        Ok(c)
    }

    pub fn q(&self) -> usize {
        self.n1.max(self.n2).max(self.ne)
    }

    fn swapped(&self) -> Self {
        LinDetConfig {
            n1: self.n2,
            n2: self.n1,
            ne: self.ne,
        }
    }

    /// Integer membership in the capacity region.
    pub fn admits(&self, r1: usize, r2: usize) -> bool {
        let (n1, n2, ne) = (self.n1 as i64, self.n2 as i64, self.ne as i64);
        let (r1, r2) = (r1 as i64, r2 as i64);
        r1 <= n1.min((n1 - ne).max(0) + r2) && r2 <= n2.min((n2 - ne).max(0) + r1)
    }
}

impl fmt::Display for LinDetConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n1={}, n2={}, ne={})", self.n1, self.n2, self.ne)
    }
}

/// `R1 <= min{n1, [n1-ne]+ + R2}`, `R2 <= min{n2, [n2-ne]+ + R1}`.
pub fn capacity_region(cfg: &LinDetConfig) -> RateRegion {
    let (n1, n2, ne) = (cfg.n1 as f64, cfg.n2 as f64, cfg.ne as f64);
    coupled_region(n1, (n1 - ne).max(0.0), n2, (n2 - ne).max(0.0))
}

/// The six codeword constructions, named for the gain ordering (with the
/// stronger legitimate receiver called receiver 1) and rate comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Scenario {
    /// `n1 >= n2 >= ne`, `R1 < R2`, `R1 < ne`.
    WeakEveShortR1,
    /// `n1 >= n2 >= ne`, `R1 < R2`, `ne <= R1`.
    WeakEveLongR1,
    /// `n1 >= n2 >= ne`, `R1 >= R2`, `R2 < ne`.
    WeakEveShortR2,
    /// `n1 >= n2 >= ne`, `R1 >= R2`, `ne <= R2`.
    WeakEveLongR2,
    /// `n1 >= ne >= n2`.
    MiddleEve,
    /// `ne >= n1 >= n2`.
    StrongEve,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::WeakEveShortR1,
        Scenario::WeakEveLongR1,
        Scenario::WeakEveShortR2,
        Scenario::WeakEveLongR2,
        Scenario::MiddleEve,
        Scenario::StrongEve,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Scenario::WeakEveShortR1 => "eve-weakest, r1<r2, r1<ne",
            Scenario::WeakEveLongR1 => "eve-weakest, r1<r2, r1>=ne",
            Scenario::WeakEveShortR2 => "eve-weakest, r1>=r2, r2<ne",
            Scenario::WeakEveLongR2 => "eve-weakest, r1>=r2, r2>=ne",
            Scenario::MiddleEve => "eve-middle",
            Scenario::StrongEve => "eve-strongest",
        }
    }
}

/// Scenario plus whether the receivers were relabelled (`n2 > n1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub scenario: Scenario,
    pub swapped: bool,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.swapped {
            write!(f, "{} (receivers swapped)", self.scenario.tag())
        } else {
            f.write_str(self.scenario.tag())
        }
    }
}

pub fn classify_scenario(cfg: &LinDetConfig, r1: usize, r2: usize) -> Result<Classification> {
    if !cfg.admits(r1, r2) {
        return Err(Error::OutsideRegion { r1, r2 });
    }
    let (c, a, b, swapped) = if cfg.n1 >= cfg.n2 {
        (*cfg, r1, r2, false)
    } else {
        (cfg.swapped(), r2, r1, true)
    };
    let scenario = if c.n2 >= c.ne {
        match (a < b, a < c.ne, b < c.ne) {
            (true, true, _) => Scenario::WeakEveShortR1,
            (true, false, _) => Scenario::WeakEveLongR1,
            (false, _, true) => Scenario::WeakEveShortR2,
            (false, _, false) => Scenario::WeakEveLongR2,
        }
    } else if c.n1 >= c.ne {
        Scenario::MiddleEve
    } else {
        Scenario::StrongEve
    };
    Ok(Classification { scenario, swapped })
}

/// What one transmitted bit carries. Indices are 0-based bit positions
/// within the message or filler word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cell {
    Xor(usize),
    M1(usize),
    M2(usize),
    Rand(usize),
}

/// Per-bit codeword construction for one rate pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Layout {
    pub q: usize,
    pub r1: usize,
    pub r2: usize,
    pub cells: Vec<Cell>,
    pub rand_bits: usize,
}

impl Layout {
    fn build(q: usize, r1: usize, r2: usize, cells: Vec<Cell>) -> Self {
        let mut k = 0;
        let cells = cells
            .into_iter()
            .map(|c| match c {
                Cell::Rand(_) => {
                    k += 1;
                    Cell::Rand(k - 1)
                }
                c => c,
            })
            .collect();
        Layout {
            q,
            r1,
            r2,
            cells,
            rand_bits: k,
        }
    }

    fn swap_roles(mut self) -> Self {
        for c in &mut self.cells {
            *c = match *c {
                Cell::M1(j) => Cell::M2(j),
                Cell::M2(j) => Cell::M1(j),
                c => c,
            };
        }
        std::mem::swap(&mut self.r1, &mut self.r2);
        self
    }

    /// Codeword for messages and filler, all as MSB-first integers.
    pub fn encode_bits(&self, m1: u64, m2: u64, r: u64) -> u64 {
        let bit = |w: u64, len: usize, j: usize| (w >> (len - 1 - j)) & 1;
        let mut x = 0u64;
        for c in &self.cells {
            let b = match *c {
                Cell::Xor(j) => bit(m1, self.r1, j) ^ bit(m2, self.r2, j),
                Cell::M1(j) => bit(m1, self.r1, j),
                Cell::M2(j) => bit(m2, self.r2, j),
                Cell::Rand(j) => bit(r, self.rand_bits, j),
            };
            x = (x << 1) | b;
        }
        x
    }

    /// Recovers the message of `receiver` (1 or 2) from its top `seen` bits
    /// `y` and the other message. `None` if some bit is not visible.
    pub fn decode_bits(&self, receiver: u8, seen: usize, y: u64, side: u64) -> Option<u64> {
        let (len, side_len) = if receiver == 1 {
            (self.r1, self.r2)
        } else {
            (self.r2, self.r1)
        };
        let mut m = 0u64;
        for j in 0..len {
            let mut got = None;
            for (k, c) in self.cells.iter().enumerate().take(seen) {
                let yk = (y >> (seen - 1 - k)) & 1;
                got = match (*c, receiver) {
                    (Cell::M1(i), 1) | (Cell::M2(i), 2) if i == j => Some(yk),
                    (Cell::Xor(i), _) if i == j => Some(yk ^ ((side >> (side_len - 1 - j)) & 1)),
                    _ => None,
                };
                if got.is_some() {
                    break;
                }
            }
            m = (m << 1) | got?;
        }
        Some(m)
    }

    /// Replaces the first XOR cell by the plain bit of message 1 (or, with
    /// no XOR cell, drops the first message-1 bit). Used to exercise the
    /// failure paths of the verifier.
    pub fn corrupted(mut self) -> Self {
        if let Some(c) = self.cells.iter_mut().find(|c| matches!(c, Cell::Xor(_))) {
            if let Cell::Xor(j) = *c {
                *c = Cell::M1(j);
            }
        } else if let Some(c) = self.cells.iter_mut().find(|c| matches!(c, Cell::M1(_))) {
            *c = Cell::Rand(usize::MAX);
            return Layout::build(self.q, self.r1, self.r2, self.cells);
        }
        self
    }

    pub fn describe(&self) -> String {
        self.cells
            .iter()
            .map(|c| match c {
                Cell::Xor(j) => format!("m1[{0}]^m2[{0}]", j + 1),
                Cell::M1(j) => format!("m1[{}]", j + 1),
                Cell::M2(j) => format!("m2[{}]", j + 1),
                Cell::Rand(j) => format!("r[{}]", j + 1),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Construction of `scenario` for `(r1, r2)` with receiver 1 the stronger
/// one, ignoring the scenario's own applicability conditions. Returns
/// `None` when the blocks do not fit in the word.
fn raw_layout(s: Scenario, q: usize, ne: usize, r1: usize, r2: usize) -> Option<Layout> {
    use Cell::*;
    let mut cells = Vec::with_capacity(q);
    let fill = |cells: &mut Vec<Cell>, upto: usize| {
        while cells.len() < upto {
            cells.push(Rand(0));
        }
    };
    match s {
        Scenario::WeakEveShortR1 => {
            if r1 > r2 || r1 > ne || ne + r2 - r1 > q {
                return None;
            }
            cells.extend((0..r1).map(Xor));
            fill(&mut cells, ne);
            cells.extend((r1..r2).map(M2));
        }
        Scenario::WeakEveLongR1 => {
            if r1 > r2 || r2 > q {
                return None;
            }
            cells.extend((0..r1).map(Xor));
            cells.extend((r1..r2).map(M2));
        }
        Scenario::WeakEveShortR2 | Scenario::MiddleEve => {
            if r2 > r1 || r2 > ne || ne + r1 - r2 > q {
                return None;
            }
            cells.extend((0..r2).map(Xor));
            fill(&mut cells, ne);
            cells.extend((r2..r1).map(M1));
        }
        Scenario::WeakEveLongR2 => {
            if r2 > r1 || r1 > q {
                return None;
            }
            cells.extend((0..r2).map(Xor));
            cells.extend((r2..r1).map(M1));
        }
        Scenario::StrongEve => {
            if r1 != r2 || r1 > q {
                return None;
            }
            cells.extend((0..r1).map(Xor));
        }
    }
    fill(&mut cells, q);
    Some(Layout::build(q, r1, r2, cells))
}

/// Construction for an admissible pair.
pub fn layout(cfg: &LinDetConfig, r1: usize, r2: usize) -> Result<Layout> {
    let cl = classify_scenario(cfg, r1, r2)?;
    layout_for(cfg, cl, r1, r2)
        .ok_or_else(|| Error::InvalidArgument(format!("no construction for ({r1}, {r2})")))
}

/// Construction of a given scenario/orientation, regardless of whether the
/// rate pair is admissible; `None` if the blocks do not fit.
pub fn layout_for(cfg: &LinDetConfig, cl: Classification, r1: usize, r2: usize) -> Option<Layout> {
    if cl.swapped {
        raw_layout(cl.scenario, cfg.q(), cfg.ne, r2, r1).map(Layout::swap_roles)
    } else {
        raw_layout(cl.scenario, cfg.q(), cfg.ne, r1, r2)
    }
}

/// Fixed-length bit string, written most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitWord(Vec<u8>);

impl BitWord {
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidArgument("bits must be 0 or 1".into()));
        }
        if bits.len() > 63 {
            return Err(Error::InvalidArgument("bit word longer than 63".into()));
        }
        Ok(BitWord(bits))
    }

    pub fn from_u64(v: u64, len: usize) -> Self {
        BitWord((0..len).map(|k| ((v >> (len - 1 - k)) & 1) as u8).collect())
    }

    pub fn zeros(len: usize) -> Self {
        BitWord(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn to_u64(&self) -> u64 {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidArgument(format!("bad bit '{c}'"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        BitWord::from_bits(bits)
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Codeword for `(m1, m2)` at rates given by their lengths; `filler`
/// supplies the random bits (pass zeros for a deterministic word).
pub fn encode(cfg: &LinDetConfig, m1: &BitWord, m2: &BitWord, filler: &BitWord) -> Result<BitWord> {
    let l = layout(cfg, m1.len(), m2.len())?;
    if filler.len() != l.rand_bits {
        return Err(Error::InvalidArgument(format!(
            "construction needs {} filler bits, got {}",
            l.rand_bits,
            filler.len()
        )));
    }
    let x = l.encode_bits(m1.to_u64(), m2.to_u64(), filler.to_u64());
    Ok(BitWord::from_u64(x, l.q))
}

/// Number of filler bits the construction for `(r1, r2)` consumes.
pub fn filler_len(cfg: &LinDetConfig, r1: usize, r2: usize) -> Result<usize> {
    Ok(layout(cfg, r1, r2)?.rand_bits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Observer {
    Rx1,
    Rx2,
    Eve,
}

/// Top `n_i` bits of a codeword.
pub fn observe(cfg: &LinDetConfig, x: &BitWord, who: Observer) -> Result<BitWord> {
    if x.len() != cfg.q() {
        return Err(Error::InvalidArgument(format!(
            "codeword has {} bits, expected {}",
            x.len(),
            cfg.q()
        )));
    }
    let n = match who {
        Observer::Rx1 => cfg.n1,
        Observer::Rx2 => cfg.n2,
        Observer::Eve => cfg.ne,
    };
    BitWord::from_bits(x.bits()[..n].to_vec())
}

/// Algebraic decoding at receiver 1 or 2 using the other message.
pub fn decode(
    cfg: &LinDetConfig,
    receiver: u8,
    y: &BitWord,
    side: &BitWord,
    r1: usize,
    r2: usize,
) -> Result<BitWord> {
    let l = layout(cfg, r1, r2)?;
    let (seen, len, side_len) = match receiver {
        1 => (cfg.n1, r1, r2),
        2 => (cfg.n2, r2, r1),
        _ => return Err(Error::InvalidArgument("receiver must be 1 or 2".into())),
    };
    if y.len() != seen || side.len() != side_len {
        return Err(Error::InvalidArgument("observation or side information has wrong length".into()));
    }
    l.decode_bits(receiver, seen, y.to_u64(), side.to_u64())
        .map(|m| BitWord::from_u64(m, len))
        .ok_or_else(|| Error::InvalidArgument("message not recoverable from observation".into()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureTuple {
    pub m1: String,
    pub m2: String,
    pub filler: String,
    pub receiver: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub config: LinDetConfig,
    pub r1: usize,
    pub r2: usize,
    pub layout: String,
    pub tuples: u64,
    pub errors_rx1: u64,
    pub errors_rx2: u64,
    pub max_error_count: u64,
    pub leak1_bits: f64,
    pub leak2_bits: f64,
    /// `p(z | m1)` identical for all `m1` (exact integer comparison).
    pub eve_view_invariant_m1: bool,
    pub eve_view_invariant_m2: bool,
    pub first_failure: Option<FailureTuple>,
}

/// Leakage below this counts as zero.
pub const LEAK_TOL: f64 = 1e-12;

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.max_error_count == 0 && self.leak1_bits <= LEAK_TOL && self.leak2_bits <= LEAK_TOL
    }
}

/// Exhaustive check of the construction for an admissible pair.
pub fn verify_exhaustive(cfg: &LinDetConfig, r1: usize, r2: usize) -> Result<VerifyReport> {
    verify_exhaustive_budget(cfg, r1, r2, crate::budget_from_env())
}

pub fn verify_exhaustive_budget(cfg: &LinDetConfig, r1: usize, r2: usize, budget: u64) -> Result<VerifyReport> {
    if !cfg.admits(r1, r2) {
        return Err(Error::OutsideRegion { r1, r2 });
    }
    let l = layout(cfg, r1, r2)?;
    verify_layout(cfg, &l, budget)
}

/// Exhaustive check of an arbitrary construction: every message pair and
/// filler assignment, with uniform weights.
pub fn verify_layout(cfg: &LinDetConfig, l: &Layout, budget: u64) -> Result<VerifyReport> {
    let bits = l.r1 + l.r2 + l.rand_bits;
    let needed = 1u64.checked_shl(bits as u32).unwrap_or(u64::MAX);
    if bits >= 63 || needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let (q, nz) = (cfg.q(), 1usize << cfg.ne);
    let (c1, c2, cr) = (1u64 << l.r1, 1u64 << l.r2, 1u64 << l.rand_bits);

    // counts[m1][m2][z]; filled in parallel over m1
    let per_m1: Vec<(Vec<u64>, u64, u64, Option<FailureTuple>)> = (0..c1)
        .into_par_iter()
        .map(|m1| {
            let mut counts = vec![0u64; c2 as usize * nz];
            let (mut e1, mut e2, mut first) = (0u64, 0u64, None);
            for m2 in 0..c2 {
                for r in 0..cr {
                    let x = l.encode_bits(m1, m2, r);
                    let top = |n: usize| x >> (q - n);
                    counts[m2 as usize * nz + top(cfg.ne) as usize] += 1;
                    let ok1 = l.decode_bits(1, cfg.n1, top(cfg.n1), m2) == Some(m1);
                    let ok2 = l.decode_bits(2, cfg.n2, top(cfg.n2), m1) == Some(m2);
                    if !ok1 {
                        e1 += 1;
                    }
                    if !ok2 {
                        e2 += 1;
                    }
                    if (!ok1 || !ok2) && first.is_none() {
                        first = Some(FailureTuple {
                            m1: BitWord::from_u64(m1, l.r1).to_string(),
                            m2: BitWord::from_u64(m2, l.r2).to_string(),
                            filler: BitWord::from_u64(r, l.rand_bits).to_string(),
                            receiver: if ok1 { 2 } else { 1 },
                        });
                    }
                }
            }
            (counts, e1, e2, first)
        })
        .collect();

    let total = (c1 * c2 * cr) as f64;
    let mut probs = Vec::with_capacity((c1 * c2) as usize * nz);
    let (mut e1, mut e2, mut first) = (0, 0, None);
    for (counts, a, b, f) in &per_m1 {
        probs.extend(counts.iter().map(|&c| c as f64 / total));
        e1 += a;
        e2 += b;
        if first.is_none() {
            first = f.clone();
        }
    }
    let joint = Pmf::new(vec![c1 as usize, c2 as usize, nz], probs)?;
    let leak1 = mutual_information(&joint, &[0], &[2])?;
    let leak2 = mutual_information(&joint, &[1], &[2])?;

    // z-histograms conditioned on each message, compared exactly
    let hist_m1: Vec<Vec<u64>> = per_m1
        .iter()
        .map(|(counts, ..)| {
            (0..nz)
                .map(|z| (0..c2 as usize).map(|m2| counts[m2 * nz + z]).sum())
                .collect()
        })
        .collect();
    let hist_m2: Vec<Vec<u64>> = (0..c2 as usize)
        .map(|m2| {
            (0..nz)
                .map(|z| per_m1.iter().map(|(counts, ..)| counts[m2 * nz + z]).sum())
                .collect()
        })
        .collect();
    let invariant = |h: &[Vec<u64>]| h.windows(2).all(|w| w[0] == w[1]);

    Ok(VerifyReport {
        config: *cfg,
        r1: l.r1,
        r2: l.r2,
        layout: l.describe(),
        tuples: c1 * c2 * cr,
        errors_rx1: e1,
        errors_rx2: e2,
        max_error_count: e1.max(e2),
        leak1_bits: leak1,
        leak2_bits: leak2,
        eve_view_invariant_m1: invariant(&hist_m1),
        eve_view_invariant_m2: invariant(&hist_m2),
        first_failure: first,
    })
}

/// Whether any of the six constructions, in either receiver orientation,
/// yields an error-free zero-leakage code for `(r1, r2)`.
pub fn any_construction_works(cfg: &LinDetConfig, r1: usize, r2: usize, budget: u64) -> Result<bool> {
    for s in Scenario::ALL {
        for swapped in [false, true] {
            let cl = Classification { scenario: s, swapped };
            if let Some(l) = layout_for(cfg, cl, r1, r2) {
                if verify_layout(cfg, &l, budget)?.passed() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Integer rate pairs in `[0, q]^2` that some construction serves.
pub fn verified_pairs(cfg: &LinDetConfig) -> Result<Vec<(usize, usize)>> {
    let q = cfg.q();
    let mut out = Vec::new();
    for r1 in 0..=q {
        for r2 in 0..=q {
            if any_construction_works(cfg, r1, r2, crate::budget_from_env())? {
                out.push((r1, r2));
            }
        }
    }
    Ok(out)
}

/// Hull of integer pairs, as a region.
pub fn integer_hull(pairs: &[(usize, usize)]) -> RateRegion {
    let pts: Vec<RatePair> = pairs
        .iter()
        .map(|&(a, b)| RatePair::new(a as f64, b as f64))
        .collect();
    RateRegion::hull_of(&pts)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XorRingReport {
    pub k: usize,
    pub n: usize,
    /// Row `i` lists the message indices XORed into `x_{i+1}`.
    pub codeword_map: Vec<[usize; 2]>,
    pub rate_per_receiver: f64,
    pub all_decoded: bool,
    /// `H(U_i | X^n)` for each user.
    pub equivocation: Vec<f64>,
    /// `I(U_i; X^n)` for each user.
    pub leakage: Vec<f64>,
    /// `H(U^k | X^n)`.
    pub joint_equivocation: f64,
}

/// `k` users with one bit each over a noiseless binary channel of length
/// `k-1`: `x_i = u_1 xor u_{i+1}`. User `i` knows `u_i` and recovers the rest.
pub fn xor_ring_scheme(k: usize) -> Result<XorRingReport> {
    if k < 2 {
        return Err(Error::InvalidArgument("ring needs at least two users".into()));
    }
    if k > 20 {
        return Err(Error::InvalidArgument("ring limited to 20 users".into()));
    }
    let n = k - 1;
    let bit = |u: usize, i: usize| (u >> (k - 1 - i)) & 1; // u_{i+1}, MSB first
    let enc = |u: usize| (0..n).fold(0usize, |x, i| (x << 1) | (bit(u, 0) ^ bit(u, i + 1)));

    let mut all_decoded = true;
    for u in 0..1usize << k {
        let x = enc(u);
        let xb = |i: usize| (x >> (n - 1 - i)) & 1;
        for me in 0..k {
            let u1 = if me == 0 { bit(u, 0) } else { xb(me - 1) ^ bit(u, me) };
            let rec: Vec<usize> = (0..k)
                .map(|j| match j {
                    0 => u1,
                    j if j == me => bit(u, me),
                    j => xb(j - 1) ^ u1,
                })
                .collect();
            if (0..k).any(|j| rec[j] != bit(u, j)) {
                all_decoded = false;
            }
        }
    }

    // joint of (U_1, ..., U_k, X)
    let nx = 1usize << n;
    let mut probs = vec![0.0; (1 << k) * nx];
    for u in 0..1usize << k {
        probs[u * nx + enc(u)] = 1.0 / (1u64 << k) as f64;
    }
    let mut dims = vec![2; k];
    dims.push(nx);
    let joint = Pmf::new(dims, probs)?;
    let hx = joint.entropy_of(&[k])?;
    let mut equivocation = Vec::with_capacity(k);
    let mut leakage = Vec::with_capacity(k);
    for i in 0..k {
        equivocation.push(joint.entropy_of(&[i, k])? - hx);
        leakage.push(mutual_information(&joint, &[i], &[k])?);
    }
    let all: Vec<usize> = (0..=k).collect();
    let joint_equivocation = joint.entropy_of(&all)? - hx;

    Ok(XorRingReport {
        k,
        n,
        codeword_map: (0..n).map(|i| [1, i + 2]).collect(),
        rate_per_receiver: n as f64 / n as f64,
        all_decoded,
        equivocation,
        leakage,
        joint_equivocation,
    })
}
