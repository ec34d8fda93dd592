//! Verification of a predicted lattice without full enumeration.
//!
//! Three stages: (a) all predicted members share one measure value `s`;
//! (b) the set is closed under sum, intersection, and centralizer, with
//! the centralizer an involution on it; (c) no sampled subspace has
//! measure above `s`, and any sample attaining `s` is already a member.
//! Samples are the full adversarial neighborhood of every member (all of
//! its codimension-1 subspaces and all of its dimension+1 extensions,
//! which is where competing subgroups appear) plus seeded uniform random
//! subspaces spread over the dimensions. A counterexample in (c) is exactly
//! a witness that the prediction is not the complete answer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CdLattice, EngineError};
use crate::gfplin::{FieldMatrix, Subspace};
use crate::presentation::CentralPresentation;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Number of random samples on top of the adversarial neighborhood.
    pub random_samples: u64,
    pub seed: u64,
    /// 0 = use the global thread pool.
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            random_samples: 100_000,
            seed: 0x0cd1a7,
            jobs: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Pass,
    /// A witness that the predicted set is wrong, with a description of the
    /// failed check.
    Counterexample {
        detail: String,
        witness: Option<Subspace>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyStats {
    pub adversarial_samples: u64,
    pub random_samples: u64,
    pub members_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub outcome: VerifyOutcome,
    pub stats: VerifyStats,
    /// The shared measure exponent of the predicted members.
    pub measure_value: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcome == VerifyOutcome::Pass
    }
}

fn counterexample(detail: impl Into<String>, witness: Option<Subspace>) -> VerifyOutcome {
    VerifyOutcome::Counterexample {
        detail: detail.into(),
        witness,
    }
}

/// All codimension-1 subspaces of `u`: kernels of the projective
/// functionals on its coordinate space, mapped through the basis.
fn hyperplanes_of(u: &Subspace) -> Vec<Subspace> {
    let k = u.dim();
    let p = u.modulus();
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // normalized functionals: first nonzero coefficient is 1
    let mut coeffs = vec![0u64; k];
    loop {
        // advance odometer
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if coeffs[pos] + 1 < p.get() {
                coeffs[pos] += 1;
                break;
            }
            coeffs[pos] = 0;
        }
        if coeffs.iter().find(|&&c| c != 0) != Some(&1) {
            continue; // not normalized
        }
        let phi = FieldMatrix::from_residue_rows(&[coeffs.clone()], k, p);
        let ker = phi.kernel();
        // map kernel coordinates through the basis of u
        let mapped = ker
            .basis()
            .mul(u.basis())
            .expect("compatible dimensions");
        out.push(Subspace::from_spanning(&mapped));
    }
}

/// All extensions of `u` by one dimension, one per coset direction.
fn extensions_of(u: &Subspace, sink: &mut Vec<Subspace>) {
    let d = u.ambient_dim();
    let p = u.modulus();
    if u.dim() == d {
        return;
    }
    let mut seen = std::collections::HashSet::new();
    let mut v = vec![0u64; d];
    loop {
        // advance odometer over all of GF(p)^d
        let mut pos = d;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if v[pos] + 1 < p.get() {
                v[pos] += 1;
                break;
            }
            v[pos] = 0;
        }
        let mut red = u.reduce_vector(&v);
        if red.iter().all(|&x| x == 0) {
            continue;
        }
        // normalize the coset representative projectively
        let lead = *red.iter().find(|&&x| x != 0).unwrap();
        if lead != 1 {
            let inv = p.inv(lead);
            for x in red.iter_mut() {
                *x = p.mul(inv, *x);
            }
        }
        if seen.insert(red.clone()) {
            sink.push(u.extend_by_vector(&red));
        }
    }
}

/// Verifies a predicted member set against the presentation. The members of
/// `predicted` must already be canonical and sorted (any [`CdLattice`] is).
pub fn verify_predicted(
    pres: &CentralPresentation,
    predicted: &CdLattice,
    opts: &VerifyOptions,
) -> Result<VerifyReport, EngineError> {
    let ms = &predicted.members;
    if ms.is_empty() {
        return Err(EngineError::Empty);
    }
    let mut stats = VerifyStats {
        members_checked: ms.len(),
        ..VerifyStats::default()
    };
    let s = pres.measure(&ms[0])?.value();

    // (a) constant measure across members
    for (i, m) in ms.iter().enumerate() {
        let v = pres.measure(m)?.value();
        if v != s {
            return Ok(VerifyReport {
                outcome: counterexample(
                    format!("member {i} has measure exponent {v}, expected {s}"),
                    Some(m.clone()),
                ),
                stats,
                measure_value: s,
            });
        }
    }

    // (b) closure and duality
    let find = |x: &Subspace| ms.binary_search(x).is_ok();
    for (i, u) in ms.iter().enumerate() {
        let c = pres.centralizer(u)?;
        if !find(&c) {
            return Ok(VerifyReport {
                outcome: counterexample(
                    format!("centralizer of member {i} is not in the predicted set"),
                    Some(c),
                ),
                stats,
                measure_value: s,
            });
        }
        let cc = pres.centralizer(&c)?;
        if &cc != u {
            return Ok(VerifyReport {
                outcome: counterexample(format!("duality fails at member {i}"), Some(cc)),
                stats,
                measure_value: s,
            });
        }
    }
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            let sum = ms[i].sum(&ms[j])?;
            if !find(&sum) {
                return Ok(VerifyReport {
                    outcome: counterexample(
                        format!("sum of members {i}, {j} is not in the predicted set"),
                        Some(sum),
                    ),
                    stats,
                    measure_value: s,
                });
            }
            let meet = ms[i].intersect(&ms[j])?;
            if !find(&meet) {
                return Ok(VerifyReport {
                    outcome: counterexample(
                        format!("intersection of members {i}, {j} is not in the predicted set"),
                        Some(meet),
                    ),
                    stats,
                    measure_value: s,
                });
            }
        }
    }

    // (c) adversarial neighborhood, deterministic
    let mut adversarial: Vec<Subspace> = Vec::new();
    for u in ms.iter() {
        adversarial.extend(hyperplanes_of(u));
        extensions_of(u, &mut adversarial);
    }
    adversarial.sort();
    adversarial.dedup();
    stats.adversarial_samples = adversarial.len() as u64;
    let check_sample = |x: &Subspace| -> Result<Option<VerifyOutcome>, EngineError> {
        let v = pres.measure(x)?.value();
        if v > s {
            return Ok(Some(counterexample(
                format!("sampled subspace has measure exponent {v} > {s}"),
                Some(x.clone()),
            )));
        }
        if v == s && !find(x) {
            return Ok(Some(counterexample(
                "sampled subspace attains the maximal measure but is not predicted",
                Some(x.clone()),
            )));
        }
        Ok(None)
    };
    for x in &adversarial {
        if let Some(bad) = check_sample(x)? {
            return Ok(VerifyReport {
                outcome: bad,
                stats,
                measure_value: s,
            });
        }
    }

    // (c) random samples, seeded per fixed-size chunk so the sample set is
    // independent of the worker count
    let d = pres.v_dim();
    let p = pres.modulus();
    stats.random_samples = opts.random_samples;
    if d > 0 && opts.random_samples > 0 {
        const CHUNK: u64 = 8192;
        let chunks: Vec<(u64, u64)> = (0..opts.random_samples.div_ceil(CHUNK))
            .map(|c| {
                let lo = c * CHUNK;
                let hi = (lo + CHUNK).min(opts.random_samples);
                (c, hi - lo)
            })
            .collect();
        let run_chunk = |&(chunk_idx, count): &(u64, u64)| -> Result<Vec<VerifyOutcome>, EngineError> {
            let mut rng =
                ChaCha8Rng::seed_from_u64(opts.seed ^ chunk_idx.wrapping_mul(0x9e3779b97f4a7c15));
            let mut bad = Vec::new();
            for i in 0..count {
                let k = 1 + ((chunk_idx * CHUNK + i) as usize % d.max(1));
                let mut rows = vec![vec![0u64; d]; k];
                // a few attempts at full rank, then take what we got
                let mut sample = None;
                for _ in 0..4 {
                    for row in rows.iter_mut() {
                        for x in row.iter_mut() {
                            *x = rng.gen_range(0..p.get());
                        }
                    }
                    let s = Subspace::from_residue_rows(&rows, d, p);
                    let full_rank = s.dim() == k;
                    sample = Some(s);
                    if full_rank {
                        break;
                    }
                }
                if let Some(x) = sample {
                    if let Some(out) = check_sample(&x)? {
                        bad.push(out);
                    }
                }
            }
            Ok(bad)
        };
        let results: Result<Vec<Vec<VerifyOutcome>>, EngineError> = if opts.jobs == 1 {
            chunks.iter().map(run_chunk).collect()
        } else {
            let work = || chunks.par_iter().map(run_chunk).collect();
            if opts.jobs == 0 {
                work()
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.jobs)
                    .build()
                    .expect("thread pool");
                pool.install(work)
            }
        };
        let mut violations: Vec<VerifyOutcome> = results?.into_iter().flatten().collect();
        if !violations.is_empty() {
            violations.sort_by_key(|v| match v {
                VerifyOutcome::Counterexample { witness, .. } => witness.clone(),
                VerifyOutcome::Pass => None,
            });
            return Ok(VerifyReport {
                outcome: violations.remove(0),
                stats,
                measure_value: s,
            });
        }
    }

    Ok(VerifyReport {
        outcome: VerifyOutcome::Pass,
        stats,
        measure_value: s,
    })
}
