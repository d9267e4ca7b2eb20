//! Exact error probability and leakage by enumeration.

use rayon::prelude::*;
use serde::Serialize;

use super::Codebook;
use crate::error::{Error, Result};
use crate::info::{mutual_information, DmcChannel, Output, Pmf};

/// `W^n(. | word)` over all output sequences, first letter most
/// significant.
fn output_law(w: &[Vec<f64>], word: &[u8], out: &mut Vec<f64>) {
    out.clear();
    out.push(1.0);
    let m = w.first().map_or(1, |r| r.len());
    let mut next = Vec::new();
    for &x in word {
        let row = &w[x as usize];
        next.clear();
        next.reserve(out.len() * m);
        for &p in out.iter() {
            next.extend(row.iter().map(|&q| p * q));
        }
        std::mem::swap(out, &mut next);
    }
}

fn outcomes(code: &Codebook, ysize: usize, budget: u64) -> Result<usize> {
    let seqs = (ysize as u64).checked_pow(code.n as u32);
    let needed = seqs.and_then(|s| {
        s.checked_mul(code.m1_count as u64)?
            .checked_mul(code.m2_count as u64)?
            .checked_mul(code.rand_count as u64)
    });
    match needed {
        Some(v) if v <= budget => Ok(seqs.unwrap_or(0) as usize),
        v => Err(Error::BudgetExceeded {
            needed: v.unwrap_or(u64::MAX),
            budget,
        }),
    }
}

/// Which message is the subject of a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Message {
    M1,
    M2,
}

/// Exact average error probabilities `(Pe1, Pe2)` under maximum-likelihood
/// decoding, receiver `i` knowing the other message. Messages and encoder
/// randomness are uniform.
pub fn exact_error_prob(code: &Codebook, ch: &DmcChannel, budget: u64) -> Result<(f64, f64)> {
    let eff = code.effective_channel(ch)?;
    let pe1 = ml_error(code, &eff.marginal(Output::Y1), Message::M1, budget)?;
    let pe2 = ml_error(code, &eff.marginal(Output::Y2), Message::M2, budget)?;
    Ok((pe1, pe2))
}

fn ml_error(code: &Codebook, w: &[Vec<f64>], target: Message, budget: u64) -> Result<f64> {
    let ny = outcomes(code, w[0].len(), budget)?;
    let (own, side) = match target {
        Message::M1 => (code.m1_count, code.m2_count),
        Message::M2 => (code.m2_count, code.m1_count),
    };
    let success: f64 = (0..side)
        .into_par_iter()
        .map(|s| {
            let mut best = vec![0.0f64; ny];
            let mut acc = vec![0.0f64; ny];
            let mut buf = Vec::with_capacity(ny);
            for m in 0..own {
                acc.iter_mut().for_each(|v| *v = 0.0);
                for r in 0..code.rand_count {
                    let (m1, m2) = match target {
                        Message::M1 => (m, s),
                        Message::M2 => (s, m),
                    };
                    output_law(w, code.word(m1, m2, r), &mut buf);
                    for (a, b) in acc.iter_mut().zip(&buf) {
                        *a += b;
                    }
                }
                for (b, a) in best.iter_mut().zip(&acc) {
                    *b = b.max(*a);
                }
            }
            best.iter().sum::<f64>() / code.rand_count as f64
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .sum();
    Ok((1.0 - success / (own * side) as f64).max(0.0))
}

/// Exact leakage to the eavesdropper, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Leakage {
    pub m1: f64,
    pub m2: f64,
    pub joint: f64,
}

/// Joint law of `(M1, M2, Z^n)`, summing contributions in word-index
/// order so that equal multisets of words give bit-identical results.
fn eve_joint(code: &Codebook, ch: &DmcChannel, budget: u64) -> Result<Pmf> {
    let eff = code.effective_channel(ch)?;
    let w = eff.marginal(Output::Z);
    let nz = outcomes(code, w[0].len(), budget)?;
    let norm = 1.0 / (code.m1_count * code.m2_count * code.rand_count) as f64;
    let rows: Vec<Vec<f64>> = (0..code.m1_count * code.m2_count)
        .into_par_iter()
        .map(|i| {
            let (m1, m2) = (i / code.m2_count, i % code.m2_count);
            let mut ids: Vec<usize> = (0..code.rand_count).map(|r| code.word_index(m1, m2, r)).collect();
            ids.sort_unstable();
            let mut acc = vec![0.0; nz];
            let mut buf = Vec::with_capacity(nz);
            for id in ids {
                output_law(&w, &code.words[id], &mut buf);
                for (a, b) in acc.iter_mut().zip(&buf) {
                    *a += b;
                }
            }
            acc.iter_mut().for_each(|v| *v *= norm);
            acc
        })
        .collect();
    Pmf::new(vec![code.m1_count, code.m2_count, nz], rows.concat())
}

/// `I(M1; Z^n)`, `I(M2; Z^n)` and `I(M1, M2; Z^n)`.
pub fn exact_leakage(code: &Codebook, ch: &DmcChannel, budget: u64) -> Result<Leakage> {
    let j = eve_joint(code, ch, budget)?;
    Ok(Leakage {
        m1: mutual_information(&j, &[0], &[2])?,
        m2: mutual_information(&j, &[1], &[2])?,
        joint: mutual_information(&j, &[0, 1], &[2])?,
    })
}

/// `p(z^n | m)` for every value of the chosen message. Contributions are
/// accumulated in word-index order, so codes whose conditional word
/// multisets coincide yield identical rows.
pub fn eve_view(code: &Codebook, ch: &DmcChannel, given: Message, budget: u64) -> Result<Vec<Vec<f64>>> {
    let eff = code.effective_channel(ch)?;
    let w = eff.marginal(Output::Z);
    let nz = outcomes(code, w[0].len(), budget)?;
    let (own, other) = match given {
        Message::M1 => (code.m1_count, code.m2_count),
        Message::M2 => (code.m2_count, code.m1_count),
    };
    let norm = 1.0 / (other * code.rand_count) as f64;
    Ok((0..own)
        .into_par_iter()
        .map(|m| {
            let mut ids = Vec::with_capacity(other * code.rand_count);
            for o in 0..other {
                for r in 0..code.rand_count {
                    ids.push(match given {
                        Message::M1 => code.word_index(m, o, r),
                        Message::M2 => code.word_index(o, m, r),
                    });
                }
            }
            ids.sort_unstable();
            let mut acc = vec![0.0; nz];
            let mut buf = Vec::with_capacity(nz);
            for id in ids {
                output_law(&w, &code.words[id], &mut buf);
                for (a, b) in acc.iter_mut().zip(&buf) {
                    *a += b;
                }
            }
            acc.iter_mut().for_each(|v| *v *= norm);
            acc
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codesim::{build_combined_code, build_secret_key_code, lindet_channel, lindet_codebook};
    use crate::info::{bsc, constant, noiseless};
    use crate::lindet::{layout, verify_exhaustive, LinDetConfig};
    use crate::regions::RateSplitVector;

    const B: u64 = 1 << 26;

    #[test]
    fn output_law_kron() {
        let w = bsc(0.1);
        let mut out = Vec::new();
        output_law(&w, &[0, 1], &mut out);
        let expect = [0.9 * 0.1, 0.9 * 0.9, 0.1 * 0.1, 0.1 * 0.9];
        for (a, b) in out.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn noiseless_injective_is_error_free() {
        let ch = DmcChannel::from_components(&noiseless(2), &noiseless(2), &noiseless(2)).unwrap();
        let px = Pmf::uniform(2).unwrap();
        let c = build_secret_key_code(&ch, 3, 1.0, &px, 5).unwrap();
        assert_eq!(exact_error_prob(&c, &ch, B).unwrap(), (0.0, 0.0));
        let l = exact_leakage(&c, &ch, B).unwrap();
        assert!(l.m1.abs() < 1e-12 && l.m2.abs() < 1e-12);
        assert!((l.joint - 3.0).abs() < 1e-12);
    }

    #[test]
    fn constant_output_guessing() {
        let ch = DmcChannel::from_components(&constant(2), &constant(2), &constant(2)).unwrap();
        let px = Pmf::uniform(2).unwrap();
        let c = build_secret_key_code(&ch, 2, 1.0, &px, 1).unwrap();
        let (p1, p2) = exact_error_prob(&c, &ch, B).unwrap();
        assert!((p1 - 0.75).abs() < 1e-15 && (p2 - 0.75).abs() < 1e-15);
    }

    #[test]
    fn raw_message_leaks_fully() {
        let ch = DmcChannel::from_components(&noiseless(2), &noiseless(2), &noiseless(2)).unwrap();
        let c = Codebook::from_encoder("raw", 3, 2, (8, 1, 1), |m1, _, _| {
            (0..3).map(|i| ((m1 >> (2 - i)) & 1) as u8).collect()
        })
        .unwrap();
        let l = exact_leakage(&c, &ch, B).unwrap();
        assert!((l.m1 - 3.0).abs() < 1e-12);
    }

    #[test]
    fn secret_key_views_identical() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.2), &bsc(0.15)).unwrap();
        let px = Pmf::from_probs(vec![0.3, 0.7]).unwrap();
        let c = build_secret_key_code(&ch, 3, 2.0 / 3.0, &px, 4).unwrap();
        for given in [Message::M1, Message::M2] {
            let v = eve_view(&c, &ch, given, B).unwrap();
            assert!(v.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn combined_secures_key_part() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.1), &bsc(0.3)).unwrap();
        let px = Pmf::uniform(2).unwrap();
        let s = RateSplitVector {
            rk: 0.5,
            r1s: 0.25,
            ..Default::default()
        };
        let c = build_combined_code(&ch, 4, &s, &px, 2).unwrap();
        // M1 = (M1k, M1s); restrict to M1k by merging over M1s
        let j = eve_joint(&c, &ch, B).unwrap();
        let split = c.split().unwrap();
        let mut probs = Vec::new();
        let nz = j.dims()[2];
        let m1k = 1 << split.m1k;
        let per = 1 << split.m1s;
        for k in 0..m1k {
            let mut row = vec![0.0; nz];
            for s in 0..per {
                for m2 in 0..c.m2_count {
                    let base = ((k * per + s) * c.m2_count + m2) * nz;
                    for z in 0..nz {
                        row[z] += j.probs()[base + z];
                    }
                }
            }
            probs.extend(row);
        }
        let pk = Pmf::new(vec![m1k, nz], probs).unwrap();
        assert!(mutual_information(&pk, &[0], &[1]).unwrap() < 1e-12);
        assert!(exact_leakage(&c, &ch, B).unwrap().m2 < 1e-12);
    }

    #[test]
    fn lindet_embedding_agrees() {
        for (n1, n2, ne) in [(4, 3, 2), (3, 2, 0), (2, 2, 3)] {
            let cfg = LinDetConfig::new(n1, n2, ne).unwrap();
            let ch = lindet_channel(&cfg).unwrap();
            let (r1, r2) = (1.min(n1), 1.min(n2));
            let l = layout(&cfg, r1, r2).unwrap();
            let c = lindet_codebook(&cfg, &l).unwrap();
            let rep = verify_exhaustive(&cfg, r1, r2).unwrap();
            let lk = exact_leakage(&c, &ch, B).unwrap();
            assert!((lk.m1 - rep.leak1_bits).abs() < 1e-12);
            assert!((lk.m2 - rep.leak2_bits).abs() < 1e-12);
            assert_eq!(exact_error_prob(&c, &ch, B).unwrap(), (0.0, 0.0));
        }
    }

    #[test]
    fn budget_refuses() {
        let ch = DmcChannel::from_components(&bsc(0.1), &bsc(0.1), &bsc(0.3)).unwrap();
        let px = Pmf::uniform(2).unwrap();
        let c = build_secret_key_code(&ch, 6, 1.0, &px, 0).unwrap();
        assert!(matches!(exact_leakage(&c, &ch, 1000), Err(Error::BudgetExceeded { .. })));
    }
}
