//! Commutator-form model of a finite p-group `P` with `Phi(P) <= Z(P)` and
//! class at most 2.
//!
//! The group is stored as an alternating bilinear map `B: V x V -> W` over
//! GF(p), where `V` has one coordinate per noncentral generator and `W` one
//! per central generator. Subgroups containing the center correspond to
//! subspaces `U <= V`; the centralizer of such a subgroup is the preimage of
//! the orthogonal complement `U^perp = {v : B(u, v) = 0 for all u in U}`,
//! and the Chermak-Delgado measure of the subgroup is the pure exponent
//! `2*dim W + dim U + dim U^perp`. All operations are exact.

mod cgp;

pub use cgp::CgpError;

use thiserror::Error;

use crate::gfplin::{FieldMatrix, Prime, Subspace};

/// Violations reported by [`CentralPresentation::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("diagonal entry comm[{i}][{i}] is nonzero")]
    Diagonal { i: usize },
    #[error("table not alternating at ({i},{j}): comm[{j}][{i}] != -comm[{i}][{j}]")]
    NotAlternating { i: usize, j: usize },
    #[error("duplicate generator label {0:?}")]
    DuplicateLabel(String),
    #[error("label {0:?} contains whitespace or '#'")]
    BadLabel(String),
    #[error("commutator table has wrong shape: expected {expected} entries, got {got}")]
    TableShape { expected: usize, got: usize },
    #[error("entry out of range at ({i},{j}): {value} >= {p}")]
    EntryRange { i: usize, j: usize, value: u64, p: u64 },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("subspace ambient dimension {got} does not match v_dim {want}")]
    AmbientMismatch { got: usize, want: usize },
}

/// Exponent form of a Chermak-Delgado measure: the subgroup corresponding to
/// `U` has measure `p^value` with `value = h_exp + c_exp`, where
/// `h_exp = w_dim + dim U` and `c_exp = w_dim + dim U^perp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasureExponent {
    pub h_exp: usize,
    pub c_exp: usize,
}

impl MeasureExponent {
    pub fn value(&self) -> usize {
        self.h_exp + self.c_exp
    }
}

/// A p-group of class <= 2 with central Frattini subgroup, encoded as its
/// commutator form plus generator labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralPresentation {
    p: Prime,
    v_dim: usize,
    w_dim: usize,
    v_labels: Vec<String>,
    w_labels: Vec<String>,
    /// comm[(i*v_dim + j)*w_dim + t] = t-th W-coordinate of [g_i, g_j]
    comm: Vec<u64>,
}

fn label_ok(s: &str) -> bool {
    !s.is_empty() && !s.contains(char::is_whitespace) && !s.contains('#')
}

impl CentralPresentation {
    /// Builds a presentation from the commutator vectors of generator pairs
    /// `i < j`; the transposed entries are filled in as negations and the
    /// result is validated.
    pub fn new(
        p: Prime,
        v_labels: Vec<String>,
        w_labels: Vec<String>,
        pairs: &[(usize, usize, Vec<u64>)],
    ) -> Result<CentralPresentation, PresentationError> {
        let d = v_labels.len();
        let e = w_labels.len();
        let mut comm = vec![0u64; d * d * e];
        for &(i, j, ref c) in pairs {
            assert!(i < j && j < d, "pair indices must satisfy i < j < v_dim");
            if c.len() != e {
                return Err(PresentationError::TableShape {
                    expected: e,
                    got: c.len(),
                });
            }
            for t in 0..e {
                let v = c[t];
                if v >= p.get() {
                    return Err(PresentationError::EntryRange { i, j, value: v, p: p.get() });
                }
                comm[(i * d + j) * e + t] = v;
                comm[(j * d + i) * e + t] = p.neg(v);
            }
        }
        let pres = CentralPresentation {
            p,
            v_dim: d,
            w_dim: e,
            v_labels,
            w_labels,
            comm,
        };
        pres.validate()?;
        Ok(pres)
    }

    /// Builds a presentation from a full table (used by the parser and by
    /// tests that need to plant invalid tables deliberately). The table is
    /// validated before being accepted.
    pub fn from_full_table(
        p: Prime,
        v_labels: Vec<String>,
        w_labels: Vec<String>,
        comm: Vec<u64>,
    ) -> Result<CentralPresentation, PresentationError> {
        let d = v_labels.len();
        let e = w_labels.len();
        if comm.len() != d * d * e {
            return Err(PresentationError::TableShape {
                expected: d * d * e,
                got: comm.len(),
            });
        }
        let pres = CentralPresentation {
            p,
            v_dim: d,
            w_dim: e,
            v_labels,
            w_labels,
            comm,
        };
        pres.validate()?;
        Ok(pres)
    }

    /// Checks the alternating-table and label invariants, reporting the
    /// first violation found.
    pub fn validate(&self) -> Result<(), PresentationError> {
        let d = self.v_dim;
        let e = self.w_dim;
        for (i, j, v) in
            (0..d).flat_map(|i| (0..d).flat_map(move |j| (0..e).map(move |t| (i, j, t)))).map(
                |(i, j, t)| (i, j, self.comm[(i * d + j) * e + t]),
            )
        {
            if v >= self.p.get() {
                return Err(PresentationError::EntryRange { i, j, value: v, p: self.p.get() });
            }
        }
        // diagonal zero is independent of skew-symmetry at p = 2
        for i in 0..d {
            if (0..e).any(|t| self.comm[(i * d + i) * e + t] != 0) {
                return Err(PresentationError::Diagonal { i });
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                for t in 0..e {
                    let a = self.comm[(i * d + j) * e + t];
                    let b = self.comm[(j * d + i) * e + t];
                    if b != self.p.neg(a) {
                        return Err(PresentationError::NotAlternating { i, j });
                    }
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for l in self.v_labels.iter().chain(self.w_labels.iter()) {
            if !label_ok(l) {
                return Err(PresentationError::BadLabel(l.clone()));
            }
            if !seen.insert(l.as_str()) {
                return Err(PresentationError::DuplicateLabel(l.clone()));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn modulus(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    #[inline]
    pub fn w_dim(&self) -> usize {
        self.w_dim
    }

    pub fn v_labels(&self) -> &[String] {
        &self.v_labels
    }

    pub fn w_labels(&self) -> &[String] {
        &self.w_labels
    }

    pub fn v_index(&self, label: &str) -> Option<usize> {
        self.v_labels.iter().position(|l| l == label)
    }

    /// Commutator `[g_i, g_j]` as a W-coordinate vector.
    #[inline]
    pub fn comm(&self, i: usize, j: usize) -> &[u64] {
        &self.comm[(i * self.v_dim + j) * self.w_dim..(i * self.v_dim + j + 1) * self.w_dim]
    }

    /// `B(x, y)` for arbitrary V-vectors.
    pub fn form(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        debug_assert_eq!(x.len(), self.v_dim);
        debug_assert_eq!(y.len(), self.v_dim);
        let mut out = vec![0u64; self.w_dim];
        for i in 0..self.v_dim {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.v_dim {
                if y[j] == 0 {
                    continue;
                }
                let s = self.p.mul(x[i], y[j]);
                let c = self.comm(i, j);
                for t in 0..self.w_dim {
                    out[t] = self.p.add(out[t], self.p.mul(s, c[t]));
                }
            }
        }
        out
    }

    /// Exponent-space measure of the subgroup corresponding to `u`.
    pub fn measure(&self, u: &Subspace) -> Result<MeasureExponent, PresentationError> {
        self.check_subspace(u)?;
        let mut scratch = PerpScratch::new(self);
        let rows: Vec<u64> = u.basis().entries().to_vec();
        let perp = scratch.perp_dim(&rows, u.dim());
        Ok(MeasureExponent {
            h_exp: self.w_dim + u.dim(),
            c_exp: self.w_dim + perp,
        })
    }

    fn check_subspace(&self, u: &Subspace) -> Result<(), PresentationError> {
        if u.modulus() != self.p {
            return Err(PresentationError::ModulusMismatch(
                u.modulus().get(),
                self.p.get(),
            ));
        }
        if u.ambient_dim() != self.v_dim {
            return Err(PresentationError::AmbientMismatch {
                got: u.ambient_dim(),
                want: self.v_dim,
            });
        }
        Ok(())
    }

    /// `U^perp`: the image in `V` of the centralizer of the subgroup
    /// corresponding to `u`, computed as the kernel of the stacked linear
    /// system `v -> B(u_i, v)` over the basis vectors of `u`.
    pub fn centralizer(&self, u: &Subspace) -> Result<Subspace, PresentationError> {
        self.check_subspace(u)?;
        let k = u.dim();
        let d = self.v_dim;
        let e = self.w_dim;
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(k * e);
        for r in 0..k {
            let basis_row = u.basis().row(r);
            // constraint block: row_t[j] = B(u_r, e_j)[t]
            let mut block = vec![vec![0u64; d]; e];
            for i in 0..d {
                if basis_row[i] == 0 {
                    continue;
                }
                for j in 0..d {
                    let c = self.comm(i, j);
                    for t in 0..e {
                        if c[t] != 0 {
                            block[t][j] =
                                self.p.add(block[t][j], self.p.mul(basis_row[i], c[t]));
                        }
                    }
                }
            }
            rows.extend(block);
        }
        if rows.is_empty() {
            return Ok(Subspace::full(d, self.p));
        }
        let m = FieldMatrix::from_residue_rows(&rows, d, self.p);
        Ok(m.kernel())
    }

    /// Radical of the form, `V^perp`. Zero exactly when the W part is the
    /// full center of the underlying group.
    pub fn radical(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.v_dim, self.p))
            .expect("full space is compatible")
    }

    /// Block-diagonal direct product. Labels are suffixed `_1`/`_2` only
    /// when the two namespaces collide.
    pub fn direct_product(
        &self,
        other: &CentralPresentation,
    ) -> Result<CentralPresentation, PresentationError> {
        if self.p != other.p {
            return Err(PresentationError::ModulusMismatch(
                self.p.get(),
                other.p.get(),
            ));
        }
        let collide = self
            .v_labels
            .iter()
            .chain(self.w_labels.iter())
            .any(|l| other.v_labels.contains(l) || other.w_labels.contains(l));
        let rename = |labels: &[String], suffix: &str| -> Vec<String> {
            labels
                .iter()
                .map(|l| {
                    if collide {
                        format!("{l}_{suffix}")
                    } else {
                        l.clone()
                    }
                })
                .collect()
        };
        let d1 = self.v_dim;
        let e1 = self.w_dim;
        let d = d1 + other.v_dim;
        let e = e1 + other.w_dim;
        let mut v_labels = rename(&self.v_labels, "1");
        v_labels.extend(rename(&other.v_labels, "2"));
        let mut w_labels = rename(&self.w_labels, "1");
        w_labels.extend(rename(&other.w_labels, "2"));
        let mut comm = vec![0u64; d * d * e];
        for i in 0..d1 {
            for j in 0..d1 {
                let c = self.comm(i, j);
                comm[(i * d + j) * e..(i * d + j) * e + e1].copy_from_slice(c);
            }
        }
        for i in 0..other.v_dim {
            for j in 0..other.v_dim {
                let c = other.comm(i, j);
                let base = ((d1 + i) * d + (d1 + j)) * e + e1;
                comm[base..base + other.w_dim].copy_from_slice(c);
            }
        }
        CentralPresentation::from_full_table(self.p, v_labels, w_labels, comm)
    }

    /// Presentation with a zero commutator table on `dims` generators.
    /// As a group this is elementary abelian of rank `dims` (its true
    /// center is everything, so the lattice engine's maximal-measure set
    /// is the full space alone).
    pub fn abelian(p: Prime, dims: usize) -> CentralPresentation {
        let v_labels = (1..=dims).map(|i| format!("x{i}")).collect();
        CentralPresentation::from_full_table(p, v_labels, Vec::new(), Vec::new())
            .expect("zero table is valid")
    }

    /// The extraspecial group of order p^3 and exponent p: `[x, y] = z`.
    pub fn heisenberg(p: Prime) -> CentralPresentation {
        CentralPresentation::new(
            p,
            vec!["x".into(), "y".into()],
            vec!["z".into()],
            &[(0, 1, vec![1])],
        )
        .expect("Heisenberg table is valid")
    }

    /// Parses the CGP v1 text format.
    pub fn parse(text: &str) -> Result<CentralPresentation, CgpError> {
        cgp::parse(text)
    }

    /// Serializes to CGP v1; `parse(serialize(g)) == g` bit-exactly.
    pub fn serialize(&self) -> String {
        cgp::serialize(self)
    }
}

/// Reusable workspace for centralizer-dimension computations on basis rows;
/// the full search holds one per partition task.
pub struct PerpScratch {
    p: Prime,
    d: usize,
    e: usize,
    comm: Vec<u64>,
    /// echelon rows, each of length d
    echelon: Vec<u64>,
    pivot_of_row: Vec<usize>,
    block: Vec<u64>,
}

impl PerpScratch {
    pub fn new(pres: &CentralPresentation) -> PerpScratch {
        PerpScratch {
            p: pres.p,
            d: pres.v_dim,
            e: pres.w_dim,
            comm: pres.comm.clone(),
            echelon: Vec::new(),
            pivot_of_row: Vec::new(),
            block: vec![0; pres.v_dim * pres.w_dim],
        }
    }

    /// `dim U^perp` for the subspace spanned by `k` rows of length `d`
    /// (row-major slice). Rows need not be canonical.
    pub fn perp_dim(&mut self, rows: &[u64], k: usize) -> usize {
        let d = self.d;
        let e = self.e;
        let p = self.p;
        self.echelon.clear();
        self.pivot_of_row.clear();
        let mut rank = 0usize;
        for r in 0..k {
            if rank == d {
                break;
            }
            let u = &rows[r * d..(r + 1) * d];
            // block[j*e + t] = B(u, e_j)[t]
            self.block.iter_mut().for_each(|x| *x = 0);
            for i in 0..d {
                if u[i] == 0 {
                    continue;
                }
                let ui = u[i];
                let crow = &self.comm[i * d * e..(i + 1) * d * e];
                for je in 0..d * e {
                    let c = crow[je];
                    if c != 0 {
                        self.block[je] = p.add(self.block[je], p.mul(ui, c));
                    }
                }
            }
            // insert the e constraint rows (indexed by t) into the echelon
            for t in 0..e {
                if rank == d {
                    break;
                }
                let mut row = vec![0u64; d];
                let mut nonzero = false;
                for j in 0..d {
                    row[j] = self.block[j * e + t];
                    nonzero |= row[j] != 0;
                }
                if !nonzero {
                    continue;
                }
                if self.insert_row(&mut row) {
                    rank += 1;
                }
            }
        }
        d - self.echelon.len() / d.max(1)
    }

    /// Reduce `row` against the echelon; if a new pivot appears, normalize
    /// and store it. Returns true when rank grew.
    fn insert_row(&mut self, row: &mut [u64]) -> bool {
        let d = self.d;
        let p = self.p;
        let nrows = self.echelon.len() / d.max(1);
        for r in 0..nrows {
            let pc = self.pivot_of_row[r];
            if row[pc] != 0 {
                let s = p.neg(row[pc]);
                let er = &self.echelon[r * d..(r + 1) * d];
                for j in 0..d {
                    if er[j] != 0 {
                        row[j] = p.add(row[j], p.mul(s, er[j]));
                    }
                }
            }
        }
        let Some(pc) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        if row[pc] != 1 {
            let inv = p.inv(row[pc]);
            for x in row.iter_mut() {
                *x = p.mul(inv, *x);
            }
        }
        self.echelon.extend_from_slice(row);
        self.pivot_of_row.push(pc);
        true
    }
}
