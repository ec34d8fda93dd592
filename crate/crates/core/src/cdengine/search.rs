//! Exhaustive maximal-measure search.
//!
//! Two passes over the subspace stream: the first keeps only the running
//! maximum measure exponent, the second collects the argmax members, so
//! memory stays proportional to the answer. Work is partitioned by pivot
//! pattern; the reduction is associative and the final canonical sort makes
//! the result independent of the partitioning.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{CdLattice, EngineError, LatticeMode};
use crate::gfplin::{
    gaussian_binomial, subspace_partitions, total_subspaces, FieldMatrix, Subspace,
};
use crate::presentation::{CentralPresentation, PerpScratch};

/// Default cap on the number of subspaces a full search may stream.
pub const DEFAULT_BUDGET: u128 = 500_000_000;

/// Bookkeeping from a full search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStats {
    pub scanned: u128,
    pub per_dim: Vec<u128>,
    pub wall: Duration,
    pub partitions: usize,
}

fn install_pool<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    if jobs == 0 {
        f()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(f)
    }
}

/// Computes the full set of maximal-measure subspaces by streaming every
/// subspace of GF(p)^d. `jobs = 0` uses the global thread pool.
pub fn compute_cd_full(
    pres: &CentralPresentation,
    budget: u128,
    jobs: usize,
) -> Result<(CdLattice, SearchStats), EngineError> {
    let start = Instant::now();
    let d = pres.v_dim();
    let p = pres.modulus();
    let total = total_subspaces(d, p.get());
    if total > BigUint::from(budget) {
        return Err(EngineError::BudgetExceeded {
            total: biguint_to_u128_saturating(&total),
            budget,
        });
    }
    let parts = subspace_partitions(d, p, None);
    let base_exp = 2 * pres.w_dim();

    // pass 1: maximal measure exponent
    let max_exp = install_pool(jobs, || {
        parts
            .par_iter()
            .map(|part| {
                let mut scratch = PerpScratch::new(pres);
                let k = part.dim();
                let mut local = 0usize;
                part.visit(|rows| {
                    let perp = scratch.perp_dim(rows, k);
                    let v = base_exp + k + perp;
                    if v > local {
                        local = v;
                    }
                });
                local
            })
            .max()
            .unwrap_or(base_exp + d)
    });

    // pass 2: collect argmax members per partition
    let members: Vec<Subspace> = install_pool(jobs, || {
        parts
            .par_iter()
            .map(|part| {
                let mut scratch = PerpScratch::new(pres);
                let k = part.dim();
                let d = part.ambient_dim();
                let mut found = Vec::new();
                part.visit(|rows| {
                    let perp = scratch.perp_dim(rows, k);
                    if base_exp + k + perp == max_exp {
                        let row_vecs: Vec<Vec<u64>> =
                            (0..k).map(|i| rows[i * d..(i + 1) * d].to_vec()).collect();
                        let m = FieldMatrix::from_residue_rows(&row_vecs, d, p);
                        found.push(Subspace::from_rref_unchecked(m, part.pivots().to_vec()));
                    }
                });
                found
            })
            .reduce(Vec::new, |mut a, mut b| {
                a.append(&mut b);
                a
            })
    });

    let named = members.into_iter().map(|s| (None, s)).collect();
    let lattice = CdLattice::from_members(pres, named, LatticeMode::Full)?;
    if lattice.max_measure.value() != max_exp {
        return Err(EngineError::Invariant(
            "collected members do not attain the scanned maximum".into(),
        ));
    }
    super::check_duality(pres, &lattice)?;

    let per_dim: Vec<u128> = (0..=d)
        .map(|k| biguint_to_u128_saturating(&gaussian_binomial(d, k, p.get()).expect("k <= d")))
        .collect();
    let stats = SearchStats {
        scanned: biguint_to_u128_saturating(&total),
        per_dim,
        wall: start.elapsed(),
        partitions: parts.len(),
    };
    Ok((lattice, stats))
}

fn biguint_to_u128_saturating(v: &BigUint) -> u128 {
    let digits = v.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0] as u128,
        2 => (digits[1] as u128) << 64 | digits[0] as u128,
        _ => u128::MAX,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfplin::Prime;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn trivial_presentation_has_one_member() {
        let t = CentralPresentation::abelian(p(2), 0);
        let (lat, stats) = compute_cd_full(&t, DEFAULT_BUDGET, 1).unwrap();
        assert_eq!(lat.members.len(), 1);
        assert_eq!(stats.scanned, 1);
    }

    #[test]
    fn heisenberg_cd_is_m5() {
        for q in [2u64, 3] {
            let h = CentralPresentation::heisenberg(p(q));
            let (lat, stats) = compute_cd_full(&h, DEFAULT_BUDGET, 1).unwrap();
            // zero, all p+1 lines, full: every subspace attains the max
            assert_eq!(lat.members.len() as u64, q + 3);
            assert_eq!(lat.max_measure.value(), 4);
            assert_eq!(stats.scanned as u64, q + 3);
            let shape = lat.classify().unwrap();
            assert_eq!(shape.summary(), format!("qac({}) idx=p^1", q + 1));
        }
    }

    #[test]
    fn abelian_cd_is_full_space_only() {
        let a = CentralPresentation::abelian(p(2), 3);
        let (lat, _) = compute_cd_full(&a, DEFAULT_BUDGET, 1).unwrap();
        assert_eq!(lat.members.len(), 1);
        assert!(lat.members[0].is_full());
        assert!(!super::super::minimum_is_center(&lat));
    }

    #[test]
    fn budget_rejection() {
        let h = CentralPresentation::heisenberg(p(2));
        let err = compute_cd_full(&h, 3, 1).unwrap_err();
        assert!(matches!(err, EngineError::BudgetExceeded { total: 5, budget: 3 }));
    }

    #[test]
    fn heisenberg_squared_product_law() {
        let h = CentralPresentation::heisenberg(p(2));
        let g = h.direct_product(&h).unwrap();
        let (lat, stats) = compute_cd_full(&g, DEFAULT_BUDGET, 1).unwrap();
        assert_eq!(stats.scanned, 67);
        assert_eq!(lat.members.len(), 25);
        // every member is a direct sum of factor members
        let (hl, _) = compute_cd_full(&h, DEFAULT_BUDGET, 1).unwrap();
        let mut expected = Vec::new();
        for a in &hl.members {
            for b in &hl.members {
                let mut rows: Vec<Vec<u64>> = Vec::new();
                for r in 0..a.dim() {
                    let mut v = a.basis().row(r).to_vec();
                    v.extend_from_slice(&[0, 0]);
                    rows.push(v);
                }
                for r in 0..b.dim() {
                    let mut v = vec![0u64, 0];
                    v.extend_from_slice(b.basis().row(r));
                    rows.push(v);
                }
                expected.push(Subspace::from_residue_rows(&rows, 4, p(2)));
            }
        }
        expected.sort();
        assert_eq!(lat.members, expected);
    }

    #[test]
    fn determinism_across_job_counts() {
        let h = CentralPresentation::heisenberg(p(3));
        let g = h.direct_product(&h).unwrap();
        let (a, _) = compute_cd_full(&g, DEFAULT_BUDGET, 1).unwrap();
        let (b, _) = compute_cd_full(&g, DEFAULT_BUDGET, 4).unwrap();
        assert_eq!(a, b);
    }
}
