use std::cmp::Ordering;
use std::fmt;

use super::{FieldMatrix, GfError, Prime};

/// A subspace of GF(p)^d in canonical form: the basis is the unique reduced
/// row echelon matrix with no zero rows, so structural equality is subspace
/// equality and the derived `Hash`/`Ord` are canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    p: Prime,
    basis: FieldMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of GF({})^{}; rows ",
            self.dim(),
            self.p.get(),
            self.ambient
        )?;
        for r in 0..self.basis.rows() {
            write!(f, "{:?}", self.basis.row(r))?;
        }
        write!(f, ")")
    }
}

impl Subspace {
    pub fn zero(ambient: usize, p: Prime) -> Subspace {
        Subspace {
            ambient,
            p,
            basis: FieldMatrix::zero(0, ambient, p),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize, p: Prime) -> Subspace {
        Subspace {
            ambient,
            p,
            basis: FieldMatrix::identity(ambient, p),
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonicalizes an arbitrary spanning matrix.
    pub fn from_spanning(m: &FieldMatrix) -> Subspace {
        let (r, rank, pivots) = m.rref();
        let mut basis = FieldMatrix::zero(rank, m.cols(), m.modulus());
        for i in 0..rank {
            for c in 0..m.cols() {
                basis.set(i, c, r.get(i, c));
            }
        }
        Subspace {
            ambient: m.cols(),
            p: m.modulus(),
            basis,
            pivots,
        }
    }

    pub fn from_residue_rows(rows: &[Vec<u64>], ambient: usize, p: Prime) -> Subspace {
        Subspace::from_spanning(&FieldMatrix::from_residue_rows(rows, ambient, p))
    }

    pub fn from_int_rows(rows: &[Vec<i64>], ambient: usize, p: Prime) -> Result<Subspace, GfError> {
        Ok(Subspace::from_spanning(&FieldMatrix::from_rows(
            rows, ambient, p,
        )?))
    }

    /// Span of the given standard basis vectors.
    pub fn from_unit_vectors(indices: &[usize], ambient: usize, p: Prime) -> Subspace {
        let mut sorted: Vec<usize> = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut basis = FieldMatrix::zero(sorted.len(), ambient, p);
        for (r, &c) in sorted.iter().enumerate() {
            basis.set(r, c, 1);
        }
        Subspace {
            ambient,
            p,
            basis,
            pivots: sorted,
        }
    }

    /// Wraps rows that are already in reduced echelon form with the given
    /// pivot columns. Used by the enumerator, which generates canonical
    /// matrices directly.
    pub(crate) fn from_rref_unchecked(
        basis: FieldMatrix,
        pivots: Vec<usize>,
    ) -> Subspace {
        debug_assert_eq!(basis.rows(), pivots.len());
        #[cfg(debug_assertions)]
        {
            let (r, rank, piv) = basis.rref();
            debug_assert_eq!(rank, basis.rows());
            debug_assert_eq!(piv, pivots);
            debug_assert_eq!(r.entries(), basis.entries());
        }
        Subspace {
            ambient: basis.cols(),
            p: basis.modulus(),
            pivots,
            basis,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), GfError> {
        if self.p != other.p {
            return Err(GfError::ModulusMismatch(self.p.get(), other.p.get()));
        }
        if self.ambient != other.ambient {
            return Err(GfError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the
    /// subspace.
    pub fn reduce_vector(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c != 0 {
                let s = self.p.neg(c);
                for j in 0..self.ambient {
                    out[j] = self.p.add(out[j], self.p.mul(s, self.basis.get(row, j)));
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        self.reduce_vector(v).iter().all(|&x| x == 0)
    }

    /// True iff `other` is contained in `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, GfError> {
        self.check_compatible(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        for r in 0..other.basis.rows() {
            if !self.contains_vector(other.basis.row(r)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest subspace containing both summands.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, GfError> {
        self.check_compatible(other)?;
        Ok(Subspace::from_spanning(&self.basis.stack(&other.basis)?))
    }

    /// Largest subspace contained in both, by the sum-of-kernels method:
    /// null combinations of the stacked bases project to the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, GfError> {
        self.check_compatible(other)?;
        let stacked = self.basis.stack(&other.basis)?;
        let null = stacked.transpose().kernel();
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(null.dim());
        for r in 0..null.dim() {
            let coeffs = null.basis.row(r);
            let mut v = vec![0u64; self.ambient];
            for (i, &c) in coeffs.iter().take(self.dim()).enumerate() {
                if c != 0 {
                    for j in 0..self.ambient {
                        v[j] = self.p.add(v[j], self.p.mul(c, self.basis.get(i, j)));
                    }
                }
            }
            rows.push(v);
        }
        Ok(Subspace::from_residue_rows(&rows, self.ambient, self.p))
    }

    /// Canonical extension of this subspace by one vector (no-op if the
    /// vector already lies inside).
    pub fn extend_by_vector(&self, v: &[u64]) -> Subspace {
        let mut rows: Vec<Vec<u64>> = (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect();
        rows.push(v.to_vec());
        Subspace::from_residue_rows(&rows, self.ambient, self.p)
    }

    /// Deterministic comparison key: dimension first, then the canonical
    /// basis entries row-major.
    pub fn canonical_key(&self) -> (usize, &[u64]) {
        (self.dim(), self.basis.entries())
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.basis.entries().cmp(other.basis.entries()))
    }
}
