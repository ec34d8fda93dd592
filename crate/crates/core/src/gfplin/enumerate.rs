use num_bigint::BigUint;

use super::{FieldMatrix, GfError, Prime, Subspace};

/// Number of k-dimensional subspaces of GF(p)^d, via the additive recurrence
/// `[d k] = [d-1 k-1] + p^k [d-1 k]` (exact, no division).
pub fn gaussian_binomial(d: usize, k: usize, p: u64) -> Result<BigUint, GfError> {
    if k > d {
        return Err(GfError::OutOfRange { k, bound: d });
    }
    let p = BigUint::from(p);
    // table[j] = [i choose j]_p while scanning i = 0..=d
    let mut table: Vec<BigUint> = vec![BigUint::from(0u32); k + 1];
    table[0] = BigUint::from(1u32);
    for _i in 1..=d {
        for j in (1..=k).rev() {
            let t = &table[j] * p.pow(j as u32);
            table[j] = &table[j - 1] + t;
        }
    }
    Ok(table[k].clone())
}

/// Total number of subspaces of GF(p)^d over all dimensions.
pub fn total_subspaces(d: usize, p: u64) -> BigUint {
    (0..=d)
        .map(|k| gaussian_binomial(d, k, p).expect("k <= d"))
        .sum()
}

/// One enumeration cell: all subspaces of a fixed dimension whose reduced
/// echelon basis has a fixed pivot-column pattern. Cells are disjoint, cover
/// everything exactly once, and can be replayed independently, which is what
/// the search engine parallelizes over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSpec {
    p: Prime,
    ambient: usize,
    pivots: Vec<usize>,
    free_positions: Vec<(usize, usize)>,
}

impl PartitionSpec {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of subspaces in this cell: p^(free entry count).
    pub fn size(&self) -> u128 {
        (self.p.get() as u128).pow(self.free_positions.len() as u32)
    }

    /// Visits every subspace of the cell in lexicographic free-entry order.
    /// The callback receives the basis rows as a `dim x ambient` row-major
    /// slice; the buffer is reused between calls.
    pub fn visit<F: FnMut(&[u64])>(&self, mut f: F) {
        let k = self.pivots.len();
        let d = self.ambient;
        let p = self.p.get();
        let mut rows = vec![0u64; k * d];
        for (i, &pc) in self.pivots.iter().enumerate() {
            rows[i * d + pc] = 1;
        }
        let nfree = self.free_positions.len();
        if nfree == 0 {
            f(&rows);
            return;
        }
        let mut assign = vec![0u64; nfree];
        loop {
            f(&rows);
            // odometer increment, last position least significant
            let mut pos = nfree;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                let (r, c) = self.free_positions[pos];
                if assign[pos] + 1 < p {
                    assign[pos] += 1;
                    rows[r * d + c] = assign[pos];
                    break;
                }
                assign[pos] = 0;
                rows[r * d + c] = 0;
            }
        }
    }

    /// Lazy iterator over canonical subspaces of the cell.
    pub fn iter(&self) -> PartitionIter {
        let k = self.pivots.len();
        let d = self.ambient;
        let mut rows = vec![0u64; k * d];
        for (i, &pc) in self.pivots.iter().enumerate() {
            rows[i * d + pc] = 1;
        }
        PartitionIter {
            spec: self.clone(),
            assign: vec![0u64; self.free_positions.len()],
            rows,
            done: false,
        }
    }
}

/// Streaming state for one enumeration cell.
#[derive(Debug, Clone)]
pub struct PartitionIter {
    spec: PartitionSpec,
    assign: Vec<u64>,
    rows: Vec<u64>,
    done: bool,
}

impl Iterator for PartitionIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let k = self.spec.pivots.len();
        let d = self.spec.ambient;
        let row_vecs: Vec<Vec<u64>> = (0..k)
            .map(|i| self.rows[i * d..(i + 1) * d].to_vec())
            .collect();
        let m = FieldMatrix::from_residue_rows(&row_vecs, d, self.spec.p);
        let out = Subspace::from_rref_unchecked(m, self.spec.pivots.clone());
        // advance the odometer, last free position least significant
        let p = self.spec.p.get();
        let mut pos = self.assign.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            let (r, c) = self.spec.free_positions[pos];
            if self.assign[pos] + 1 < p {
                self.assign[pos] += 1;
                self.rows[r * d + c] = self.assign[pos];
                break;
            }
            self.assign[pos] = 0;
            self.rows[r * d + c] = 0;
        }
        Some(out)
    }
}

fn free_positions(pivots: &[usize], d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..d {
            if !pivots.contains(&c) {
                out.push((i, c));
            }
        }
    }
    out
}

fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < d - (k - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All enumeration cells for GF(p)^d, ordered by dimension ascending and
/// pivot pattern lexicographic; restricting to `dim_filter` keeps only one
/// dimension.
pub fn subspace_partitions(d: usize, p: Prime, dim_filter: Option<usize>) -> Vec<PartitionSpec> {
    let mut out = Vec::new();
    for k in 0..=d {
        if let Some(want) = dim_filter {
            if k != want {
                continue;
            }
        }
        for pivots in combinations(d, k) {
            let free = free_positions(&pivots, d);
            out.push(PartitionSpec {
                p,
                ambient: d,
                free_positions: free,
                pivots,
            });
        }
    }
    out
}

/// Streams every subspace of GF(p)^d exactly once, in the deterministic
/// order (dimension, pivot pattern, lexicographic free entries).
pub fn enumerate_subspaces(
    d: usize,
    p: Prime,
    dim_filter: Option<usize>,
) -> impl Iterator<Item = Subspace> {
    subspace_partitions(d, p, dim_filter)
        .into_iter()
        .flat_map(|part| part.iter())
}
