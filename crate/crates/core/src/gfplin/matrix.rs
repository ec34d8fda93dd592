use std::fmt;

use super::{GfError, Prime, Subspace};

/// A dense matrix over GF(p), stored row-major as machine-word residues.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{} mod {}", self.rows, self.cols, self.p.get())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FieldMatrix {
    pub fn zero(rows: usize, cols: usize, p: Prime) -> FieldMatrix {
        FieldMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: Prime) -> FieldMatrix {
        let mut m = FieldMatrix::zero(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize, p: Prime) -> Result<FieldMatrix, GfError> {
        let mut m = FieldMatrix::zero(rows.len(), cols, p);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(GfError::ShapeMismatch {
                    rows: rows.len(),
                    cols,
                    got_rows: r,
                    got_cols: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, p.reduce_i64(v));
            }
        }
        Ok(m)
    }

    /// Builds a matrix from residues already in `[0, p)`.
    pub fn from_residue_rows(rows: &[Vec<u64>], cols: usize, p: Prime) -> FieldMatrix {
        let mut m = FieldMatrix::zero(rows.len(), cols, p);
        for (r, row) in rows.iter().enumerate() {
            debug_assert_eq!(row.len(), cols);
            for (c, &v) in row.iter().enumerate() {
                debug_assert!(v < p.get());
                m.set(r, c, v);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn modulus(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.p.get());
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[r] *= s`
    pub fn scale_row(&mut self, r: usize, s: u64) {
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, self.p.mul(v, s));
        }
    }

    /// `row[dst] += s * row[src]`
    pub fn add_scaled_row(&mut self, dst: usize, src: usize, s: u64) {
        for c in 0..self.cols {
            let v = self.p.add(self.get(dst, c), self.p.mul(self.get(src, c), s));
            self.set(dst, c, v);
        }
    }

    /// Vertical concatenation; both matrices must share column count and modulus.
    pub fn stack(&self, other: &FieldMatrix) -> Result<FieldMatrix, GfError> {
        if self.p != other.p {
            return Err(GfError::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.cols != other.cols {
            return Err(GfError::AmbientMismatch(self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FieldMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zero(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix, GfError> {
        if self.p != other.p {
            return Err(GfError::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.cols != other.rows {
            return Err(GfError::AmbientMismatch(self.cols, other.rows));
        }
        let mut out = FieldMatrix::zero(self.rows, other.cols, self.p);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = self.p.add(out.get(r, c), self.p.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.cols);
        let mut out = vec![0u64; self.rows];
        for r in 0..self.rows {
            let mut acc = 0u64;
            for c in 0..self.cols {
                acc = self.p.add(acc, self.p.mul(self.get(r, c), v[c]));
            }
            out[r] = acc;
        }
        out
    }

    /// Gauss-Jordan elimination. Returns the unique reduced row echelon form
    /// together with the rank and the pivot column indices.
    pub fn rref(&self) -> (FieldMatrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(r) = (pivot_row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(pivot_row, r);
            let lead = m.get(pivot_row, col);
            if lead != 1 {
                m.scale_row(pivot_row, m.p.inv(lead));
            }
            for r2 in 0..m.rows {
                if r2 != pivot_row {
                    let v = m.get(r2, col);
                    if v != 0 {
                        m.add_scaled_row(r2, pivot_row, m.p.neg(v));
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivot_row, pivots)
    }

    /// Right kernel `{v : self * v = 0}` as a canonical subspace of GF(p)^cols.
    pub fn kernel(&self) -> Subspace {
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![0u64; self.cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = self.p.neg(r.get(i, f));
            }
            rows.push(v);
        }
        debug_assert_eq!(free.len(), self.cols - rank);
        Subspace::from_residue_rows(&rows, self.cols, self.p)
    }
}
