//! Builders for the three lattice-shaping families and their combinations.
//!
//! Each builder emits a presentation together with the membership list its
//! lattice is expected to have, so the engine can verify the prediction
//! either exhaustively or by sampling:
//!
//! * [`build_double_diamond`] — generators `a_i, b_i` (1 <= i <= 2m) with
//!   cross-parity a-b links and all b-pairs noncommuting; the lattice is a
//!   2-string of 2-diamonds. An optional split `(n1, n2)` replaces the
//!   parity classes by contiguous blocks wired so the two diamond arms get
//!   complementary sizes, making all member orders distinct.
//! * [`extend_diamond`] — wraps a base group in `m*n` new generator pairs
//!   whose block structure puts an m-diamond below and above the base
//!   lattice (a mixed 3-string).
//! * [`extend_qac`] — same skeleton with two glued blocks, producing
//!   quasiantichains of width p+1 instead of diamonds.
//! * [`iterate`], [`direct_power`], and the direct-product helpers chain
//!   these into longer strings.

use thiserror::Error;

use crate::cdengine::{CdLattice, EngineError, LatticeMode};
use crate::gfplin::{Prime, Subspace};
use crate::presentation::{CentralPresentation, PresentationError};
use crate::shapes::{self, ShapeSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("m > 1 required")]
    MTooSmall,
    #[error("m >= 1 and n >= 2 required")]
    BadDiamondParams,
    #[error("n >= 2 required")]
    NTooSmall,
    #[error("l >= 1 required")]
    BadIterations,
    #[error("k >= 1 required")]
    BadPower,
    #[error("split must satisfy n1 + n2 = 2m with n1, n2 >= 2; got ({0}, {1})")]
    BadSplit(usize, usize),
    #[error("base certificate rejected: {0}")]
    Certificate(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("internal: {0}")]
    Internal(String),
}

impl From<EngineError> for ConstructionError {
    fn from(e: EngineError) -> Self {
        ConstructionError::Internal(e.to_string())
    }
}

impl From<crate::gfplin::GfError> for ConstructionError {
    fn from(e: crate::gfplin::GfError) -> Self {
        ConstructionError::Internal(e.to_string())
    }
}

/// Parameter bundle for the command-line surface. The per-construction
/// constraints (m > 1 for the double diamond, m >= 1 and n >= 2 for the
/// diamond extension, n >= 2 for the quasiantichain extension, l >= 1
/// for iteration) are enforced by the builders these methods call.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstructionParams {
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub split: Option<(usize, usize)>,
}

impl ConstructionParams {
    pub fn double_diamond(
        &self,
        p: Prime,
    ) -> Result<(CentralPresentation, ExpectedLattice), ConstructionError> {
        build_double_diamond(p, self.m, self.split)
    }

    /// `l` applications of the m-diamond extension over the base.
    pub fn diamond_extension(
        &self,
        base: &(CentralPresentation, ExpectedLattice),
    ) -> Result<(CentralPresentation, ExpectedLattice), ConstructionError> {
        iterate(Extension::Diamond { m: self.m, n: self.n }, base, self.l)
    }

    /// `l` applications of the quasiantichain extension over the base.
    pub fn qac_extension(
        &self,
        base: &(CentralPresentation, ExpectedLattice),
    ) -> Result<(CentralPresentation, ExpectedLattice), ConstructionError> {
        iterate(Extension::Qac { n: self.n }, base, self.l)
    }
}

/// A predicted lattice member with the construction's name for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSubgroup {
    pub name: String,
    pub space: Subspace,
}

/// The membership list a construction predicts for its lattice, in
/// canonical member order, together with the window that embeds the base
/// lattice and the shape the membership implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedLattice {
    pub members: Vec<NamedSubgroup>,
    /// Indices of the base window endpoints (A-tilde, N-tilde) when the
    /// construction wraps a base.
    pub base_window: Option<(usize, usize)>,
    pub expected_shape: ShapeSpec,
}

impl ExpectedLattice {
    /// Validates the members against the presentation (equal measures,
    /// closure under sum/intersection/centralizer, duality) and freezes
    /// them in canonical order.
    fn from_named(
        pres: &CentralPresentation,
        named: Vec<(String, Subspace)>,
        window: Option<(&Subspace, &Subspace)>,
    ) -> Result<ExpectedLattice, ConstructionError> {
        let mut members: Vec<NamedSubgroup> = Vec::new();
        for (name, space) in named {
            if !members.iter().any(|m| m.space == space) {
                members.push(NamedSubgroup { name, space });
            }
        }
        members.sort_by(|a, b| a.space.cmp(&b.space));
        let s = pres.measure(&members[0].space)?.value();
        for m in &members {
            let v = pres.measure(&m.space)?.value();
            if v != s {
                return Err(ConstructionError::Internal(format!(
                    "predicted member {} has measure exponent {v}, expected {s}",
                    m.name
                )));
            }
        }
        let find = |x: &Subspace| members.binary_search_by(|m| m.space.cmp(x)).is_ok();
        for m in &members {
            let c = pres.centralizer(&m.space)?;
            if !find(&c) {
                return Err(ConstructionError::Internal(format!(
                    "centralizer of predicted member {} is not predicted",
                    m.name
                )));
            }
            let cc = pres.centralizer(&c)?;
            if cc != m.space {
                return Err(ConstructionError::Internal(format!(
                    "duality fails on predicted member {}",
                    m.name
                )));
            }
        }
        for a in &members {
            for b in &members {
                if !find(&a.space.sum(&b.space)?) || !find(&a.space.intersect(&b.space)?) {
                    return Err(ConstructionError::Internal(format!(
                        "predicted members {} and {} are not closed under join/meet",
                        a.name, b.name
                    )));
                }
            }
        }
        let base_window = match window {
            None => None,
            Some((lo, hi)) => {
                let li = members
                    .binary_search_by(|m| m.space.cmp(lo))
                    .map_err(|_| ConstructionError::Internal("window lo missing".into()))?;
                let hi = members
                    .binary_search_by(|m| m.space.cmp(hi))
                    .map_err(|_| ConstructionError::Internal("window hi missing".into()))?;
                Some((li, hi))
            }
        };
        let spaces: Vec<Subspace> = members.iter().map(|m| m.space.clone()).collect();
        let covers = crate::cdengine::covers(&spaces);
        let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        let expected_shape = shapes::classify(&dims, &covers)
            .map_err(|e| ConstructionError::Internal(e.to_string()))?;
        Ok(ExpectedLattice {
            members,
            base_window,
            expected_shape,
        })
    }

    /// Builds a predicted lattice from user-supplied members, running the
    /// same validation the construction builders use.
    pub fn from_member_list(
        pres: &CentralPresentation,
        named: Vec<(String, Subspace)>,
    ) -> Result<ExpectedLattice, ConstructionError> {
        ExpectedLattice::from_named(pres, named, None)
    }

    pub fn spaces(&self) -> Vec<Subspace> {
        self.members.iter().map(|m| m.space.clone()).collect()
    }

    pub fn find(&self, name: &str) -> Option<&NamedSubgroup> {
        self.members.iter().find(|m| m.name == name)
    }

    /// Lattice view (mode `predicted`) with name bindings.
    pub fn to_lattice(&self, pres: &CentralPresentation) -> Result<CdLattice, EngineError> {
        CdLattice::from_members(
            pres,
            self.members
                .iter()
                .map(|m| (Some(m.name.clone()), m.space.clone()))
                .collect(),
            LatticeMode::Predicted,
        )
    }
}

/// Label for a generator with numeric indices: compact digits while all
/// indices are below 10 (`a11`), underscore-separated otherwise (`a_10_1`).
fn gen_label(prefix: &str, indices: &[usize]) -> String {
    if indices.iter().all(|&i| i < 10) {
        let digits: String = indices.iter().map(|i| i.to_string()).collect();
        format!("{prefix}{digits}")
    } else {
        let parts: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
        format!("{prefix}_{}", parts.join("_"))
    }
}

/// Central-generator label: one underscore, then the indices (`z_111`).
fn central_label(prefix: &str, indices: &[usize]) -> String {
    if indices.iter().all(|&i| i < 10) {
        let digits: String = indices.iter().map(|i| i.to_string()).collect();
        format!("{prefix}_{digits}")
    } else {
        let parts: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
        format!("{prefix}_{}", parts.join("_"))
    }
}

/// The trivial group: empty presentation, one-point lattice.
pub fn trivial(p: Prime) -> (CentralPresentation, ExpectedLattice) {
    let pres = CentralPresentation::abelian(p, 0);
    let expected = ExpectedLattice::from_named(
        &pres,
        vec![("P".to_string(), Subspace::zero(0, p))],
        None,
    )
    .expect("trivial lattice is valid");
    (pres, expected)
}

/// The Heisenberg group of order p^3: its lattice is the full subspace
/// poset of GF(p)^2, a quasiantichain of width p+1.
pub fn heisenberg(p: Prime) -> (CentralPresentation, ExpectedLattice) {
    let pres = CentralPresentation::heisenberg(p);
    let mut named = vec![
        ("ZP".to_string(), Subspace::zero(2, p)),
        ("P".to_string(), Subspace::full(2, p)),
    ];
    for k in 0..p.get() {
        named.push((
            format!("L_{k}"),
            Subspace::from_residue_rows(&[vec![1, k]], 2, p),
        ));
    }
    named.push((
        format!("L_{}", p.get()),
        Subspace::from_unit_vectors(&[1], 2, p),
    ));
    let expected = ExpectedLattice::from_named(&pres, named, None)
        .expect("Heisenberg lattice is valid");
    (pres, expected)
}

/// Elementary abelian group: the maximal-measure set is the full space.
pub fn abelian(p: Prime, dims: usize) -> (CentralPresentation, ExpectedLattice) {
    let pres = CentralPresentation::abelian(p, dims);
    let expected = ExpectedLattice::from_named(
        &pres,
        vec![("P".to_string(), Subspace::full(dims, p))],
        None,
    )
    .expect("abelian lattice is valid");
    (pres, expected)
}

/// Generators `a_1..a_2m, b_1..b_2m`; without a split, `[a_i, b_j] != 1`
/// exactly for `i != j (mod 2)` and all b-pairs noncommute, giving
/// `A_1 = <a_odd>`, `A_2 = <a_even>` with centralizers `A B_odd`, `A B_even`.
/// With a split `(n1, n2)` the index set breaks into contiguous blocks,
/// `[a_i, b_j] != 1` exactly within a block, and the centralizer of each
/// `A`-block picks up the complementary `b`-block.
pub fn build_double_diamond(
    p: Prime,
    m: usize,
    split: Option<(usize, usize)>,
) -> Result<(CentralPresentation, ExpectedLattice), ConstructionError> {
    if m <= 1 {
        return Err(ConstructionError::MTooSmall);
    }
    let two_m = 2 * m;
    if let Some((n1, n2)) = split {
        if n1 + n2 != two_m || n1 < 2 || n2 < 2 {
            // blocks of size 1 admit extra self-centralizing members of
            // maximal measure, so the 7-member prediction would be wrong
            return Err(ConstructionError::BadSplit(n1, n2));
        }
    }
    // class(i) = true for the A_1/B_1 side
    let class1: Vec<bool> = match split {
        None => (1..=two_m).map(|i| i % 2 == 1).collect(),
        Some((n1, _)) => (1..=two_m).map(|i| i <= n1).collect(),
    };
    // noncommuting a_i, b_j pairs: cross-parity without a split, same-block
    // with one
    let ab_link = |i: usize, j: usize| -> bool {
        match split {
            None => class1[i] != class1[j],
            Some(_) => class1[i] == class1[j],
        }
    };
    let mut v_labels: Vec<String> = Vec::with_capacity(2 * two_m);
    for i in 1..=two_m {
        v_labels.push(gen_label("a", &[i]));
    }
    for i in 1..=two_m {
        v_labels.push(gen_label("b", &[i]));
    }
    let mut w_labels: Vec<String> = Vec::new();
    let mut pairs: Vec<(usize, usize, Vec<u64>)> = Vec::new();
    let push_central = |w_labels: &mut Vec<String>, label: String| -> usize {
        w_labels.push(label);
        w_labels.len() - 1
    };
    let mut comm_units: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..two_m {
        for j in 0..two_m {
            if ab_link(i, j) {
                let t = push_central(&mut w_labels, central_label("zab", &[i + 1, j + 1]));
                comm_units.push((i, two_m + j, t));
            }
        }
    }
    for i in 0..two_m {
        for j in i + 1..two_m {
            let t = push_central(&mut w_labels, central_label("zbb", &[i + 1, j + 1]));
            comm_units.push((two_m + i, two_m + j, t));
        }
    }
    let e = w_labels.len();
    for (i, j, t) in comm_units {
        let mut c = vec![0u64; e];
        c[t] = 1;
        pairs.push((i, j, c));
    }
    let pres = CentralPresentation::new(p, v_labels, w_labels, &pairs)?;

    let d = 2 * two_m;
    let a_side: Vec<usize> = (0..two_m).collect();
    let a1: Vec<usize> = (0..two_m).filter(|&i| class1[i]).collect();
    let a2: Vec<usize> = (0..two_m).filter(|&i| !class1[i]).collect();
    // the b-part of C(A_k): same class without a split, complementary with one
    let (b1, b2): (Vec<usize>, Vec<usize>) = match split {
        None => (
            (0..two_m).filter(|&i| class1[i]).map(|i| two_m + i).collect(),
            (0..two_m).filter(|&i| !class1[i]).map(|i| two_m + i).collect(),
        ),
        Some(_) => (
            (0..two_m).filter(|&i| !class1[i]).map(|i| two_m + i).collect(),
            (0..two_m).filter(|&i| class1[i]).map(|i| two_m + i).collect(),
        ),
    };
    let unit = |idx: &[usize]| Subspace::from_unit_vectors(idx, d, p);
    let ab = |a: &[usize], b: &[usize]| {
        let mut all = a.to_vec();
        all.extend_from_slice(b);
        Subspace::from_unit_vectors(&all, d, p)
    };
    let named = vec![
        ("ZP".to_string(), Subspace::zero(d, p)),
        ("A_1".to_string(), unit(&a1)),
        ("A_2".to_string(), unit(&a2)),
        ("A".to_string(), unit(&a_side)),
        ("AB_1".to_string(), ab(&a_side, &b1)),
        ("AB_2".to_string(), ab(&a_side, &b2)),
        ("P".to_string(), Subspace::full(d, p)),
    ];
    let expected = ExpectedLattice::from_named(&pres, named, None)?;
    Ok((pres, expected))
}

/// Precondition for wrapping a base: its full space must be a predicted
/// member, all predicted members must share one measure with duality, and
/// the form must have zero radical so the W part is the whole center.
fn check_base_certificate(
    pres: &CentralPresentation,
    expected: &ExpectedLattice,
) -> Result<(), ConstructionError> {
    let full = Subspace::full(pres.v_dim(), pres.modulus());
    if expected.find_space(&full).is_none() {
        return Err(ConstructionError::Certificate(
            "the full space is not a predicted member (N in CD(N) required)".into(),
        ));
    }
    if !pres.radical().is_zero() {
        return Err(ConstructionError::Certificate(
            "the form has a nonzero radical, so the center is larger than the W part".into(),
        ));
    }
    let s = pres.measure(&expected.members[0].space)?.value();
    for m in &expected.members {
        if pres.measure(&m.space)?.value() != s {
            return Err(ConstructionError::Certificate(format!(
                "predicted member {} does not share the maximal measure",
                m.name
            )));
        }
        let c = pres.centralizer(&m.space)?;
        if expected.find_space(&c).is_none() {
            return Err(ConstructionError::Certificate(format!(
                "centralizer of {} is not predicted",
                m.name
            )));
        }
    }
    Ok(())
}

impl ExpectedLattice {
    pub fn find_space(&self, s: &Subspace) -> Option<usize> {
        self.members
            .binary_search_by(|m| m.space.cmp(s))
            .ok()
    }
}

/// Renames the proposed labels until they avoid everything in `taken`, by
/// appending prime marks to the whole new layer.
fn fresh_layer_labels(taken: &[String], mut proposed: Vec<String>) -> Vec<String> {
    loop {
        if proposed.iter().all(|l| !taken.contains(l)) {
            return proposed;
        }
        for l in proposed.iter_mut() {
            l.push('\'');
        }
    }
}

#[derive(Clone, Copy)]
struct LayerIndexing {
    r: usize,
    n: usize,
    mn: usize,
}

impl LayerIndexing {
    fn a(&self, i: usize, j: usize) -> usize {
        self.r + (i - 1) * self.n + (j - 1)
    }
    fn b(&self, i: usize, j: usize) -> usize {
        self.r + self.mn + (i - 1) * self.n + (j - 1)
    }
}

/// Embeds a subspace of the base V into the first r coordinates of the new
/// V and joins it with the given unit coordinates.
fn embed_with_units(
    base_space: &Subspace,
    extra_units: &[usize],
    d: usize,
    p: Prime,
) -> Subspace {
    let r = base_space.ambient_dim();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for row in 0..base_space.dim() {
        let mut v = vec![0u64; d];
        v[..r].copy_from_slice(base_space.basis().row(row));
        rows.push(v);
    }
    for &u in extra_units {
        let mut v = vec![0u64; d];
        v[u] = 1;
        rows.push(v);
    }
    Subspace::from_residue_rows(&rows, d, p)
}

fn delta_name(prefix: &str, delta: &[usize]) -> String {
    let parts: Vec<String> = delta.iter().map(|x| x.to_string()).collect();
    format!("{prefix}_Delta{{{}}}", parts.join(","))
}

/// All subsets of {1..m} ordered by (size, lexicographic).
fn subsets(m: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..(1 << m))
        .map(|mask| (1..=m).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Wraps `base` with `m` blocks of `n` generator pairs: new generators
/// `a_ij, b_ij` with `[x_k, b_ij]`, `[a_ti, b_tj]`, and `[b_u, b_v]` all
/// hitting fresh central generators. The lattice gains an m-diamond below
/// and above the base window.
pub fn extend_diamond(
    base: &(CentralPresentation, ExpectedLattice),
    m: usize,
    n: usize,
) -> Result<(CentralPresentation, ExpectedLattice), ConstructionError> {
    if m < 1 || n < 2 {
        return Err(ConstructionError::BadDiamondParams);
    }
    let (base_pres, base_exp) = base;
    check_base_certificate(base_pres, base_exp)?;
    let p = base_pres.modulus();
    let r = base_pres.v_dim();
    let z = base_pres.w_dim();
    let mn = m * n;
    let d = r + 2 * mn;
    let idx = LayerIndexing { r, n, mn };

    // new noncentral labels
    let mut new_v: Vec<String> = Vec::with_capacity(2 * mn);
    for i in 1..=m {
        for j in 1..=n {
            new_v.push(gen_label("a", &[i, j]));
        }
    }
    for i in 1..=m {
        for j in 1..=n {
            new_v.push(gen_label("b", &[i, j]));
        }
    }
    // new central labels: Z_N block, then Z_A, then Z_B
    let mut new_w: Vec<String> = Vec::new();
    for i in 1..=m {
        for j in 1..=n {
            for k in 1..=r {
                new_w.push(central_label("z", &[i, j, k]));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for t in 1..=m {
                new_w.push(central_label("zt", &[i, j, t]));
            }
        }
    }
    let b_pair_label = |u: (usize, usize), v: (usize, usize)| {
        format!(
            "zB_{}_{}",
            gen_label("", &[u.0, u.1]),
            gen_label("", &[v.0, v.1])
        )
    };
    for u in 0..mn {
        for v in u + 1..mn {
            let ui = (u / n + 1, u % n + 1);
            let vi = (v / n + 1, v % n + 1);
            new_w.push(b_pair_label(ui, vi));
        }
    }
    let taken: Vec<String> = base_pres
        .v_labels()
        .iter()
        .chain(base_pres.w_labels().iter())
        .cloned()
        .collect();
    let mut combined_new = new_v.clone();
    combined_new.extend(new_w.iter().cloned());
    let fresh = fresh_layer_labels(&taken, combined_new);
    let (new_v, new_w) = fresh.split_at(2 * mn);

    let mut v_labels = base_pres.v_labels().to_vec();
    v_labels.extend_from_slice(new_v);
    let mut w_labels = base_pres.w_labels().to_vec();
    w_labels.extend_from_slice(new_w);
    let e = w_labels.len();

    let zn_index = |i: usize, j: usize, k: usize| z + ((i - 1) * n + (j - 1)) * r + (k - 1);
    let za_index = |i: usize, j: usize, t: usize| z + mn * r + ((i - 1) * n + (j - 1)) * m + (t - 1);
    let zb_base = z + mn * r + n * n * m;
    let pair_index = |u: usize, v: usize| {
        // position of (u, v), u < v, in lexicographic pair order over 0..mn
        let before: usize = (0..u).map(|x| mn - 1 - x).sum();
        zb_base + before + (v - u - 1)
    };

    let mut pairs: Vec<(usize, usize, Vec<u64>)> = Vec::new();
    // base commutators, embedded in the first z coordinates
    for i in 0..r {
        for j in i + 1..r {
            let c = base_pres.comm(i, j);
            if c.iter().any(|&x| x != 0) {
                let mut v = vec![0u64; e];
                v[..z].copy_from_slice(c);
                pairs.push((i, j, v));
            }
        }
    }
    // [x_k, b_ij] = z_ijk
    for i in 1..=m {
        for j in 1..=n {
            for k in 1..=r {
                let mut c = vec![0u64; e];
                c[zn_index(i, j, k)] = 1;
                pairs.push((k - 1, idx.b(i, j), c));
            }
        }
    }
    // [a_ti, b_tj] = zt_ijt, blocks independent
    for t in 1..=m {
        for i in 1..=n {
            for j in 1..=n {
                let mut c = vec![0u64; e];
                c[za_index(i, j, t)] = 1;
                pairs.push((idx.a(t, i), idx.b(t, j), c));
            }
        }
    }
    // [b_u, b_v] = zB_u_v
    for u in 0..mn {
        for v in u + 1..mn {
            let mut c = vec![0u64; e];
            c[pair_index(u, v)] = 1;
            pairs.push((r + mn + u, r + mn + v, c));
        }
    }
    let pres = CentralPresentation::new(p, v_labels, w_labels, &pairs)?;

    // expected members
    let all_a: Vec<usize> = (1..=m)
        .flat_map(|i| (1..=n).map(move |j| idx.a(i, j)))
        .collect();
    let ntilde_units: Vec<usize> = (0..r).chain(all_a.iter().copied()).collect();
    let atilde = Subspace::from_unit_vectors(&all_a, d, p);
    let ntilde = Subspace::from_unit_vectors(&ntilde_units, d, p);
    let mut named: Vec<(String, Subspace)> = Vec::new();
    for delta in subsets(m) {
        let units: Vec<usize> = delta
            .iter()
            .flat_map(|&i| (1..=n).map(move |j| idx.a(i, j)))
            .collect();
        let name = if delta.is_empty() {
            "ZP".to_string()
        } else if delta.len() == m {
            "Atilde".to_string()
        } else {
            delta_name("Atilde", &delta)
        };
        named.push((name, Subspace::from_unit_vectors(&units, d, p)));
    }
    for delta in subsets(m) {
        let b_units: Vec<usize> = (1..=m)
            .filter(|i| !delta.contains(i))
            .flat_map(|i| (1..=n).map(move |j| idx.b(i, j)))
            .collect();
        let units: Vec<usize> = ntilde_units.iter().copied().chain(b_units).collect();
        let name = if delta.is_empty() {
            "P".to_string()
        } else if delta.len() == m {
            "Ntilde".to_string()
        } else {
            delta_name("Btilde", &delta)
        };
        named.push((name, Subspace::from_unit_vectors(&units, d, p)));
    }
    for member in &base_exp.members {
        named.push((
            format!("N.{}", member.name),
            embed_with_units(&member.space, &all_a, d, p),
        ));
    }
    let expected = ExpectedLattice::from_named(&pres, named, Some((&atilde, &ntilde)))?;
    Ok((pres, expected))
}

/// Wraps `base` with two glued blocks of `n` generator pairs: the relations
/// `[a_1i, b_1j] = [a_2i, b_2j] = z_ij` share their central generators, so
/// the projective line of slopes through the a-blocks turns both new
/// components into quasiantichains of width p+1.
pub fn extend_qac(
    base: &(CentralPresentation, ExpectedLattice),
    n: usize,
) -> Result<(CentralPresentation, ExpectedLattice), ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::NTooSmall);
    }
    let (base_pres, base_exp) = base;
    check_base_certificate(base_pres, base_exp)?;
    let p = base_pres.modulus();
    let pe = p.get();
    let r = base_pres.v_dim();
    let z = base_pres.w_dim();
    let d = r + 4 * n;
    let idx = LayerIndexing { r, n, mn: 2 * n };

    let mut new_v: Vec<String> = Vec::with_capacity(4 * n);
    for i in 1..=2 {
        for j in 1..=n {
            new_v.push(gen_label("a", &[i, j]));
        }
    }
    for i in 1..=2 {
        for j in 1..=n {
            new_v.push(gen_label("b", &[i, j]));
        }
    }
    let mut new_w: Vec<String> = Vec::new();
    for i in 1..=2 {
        for j in 1..=n {
            for k in 1..=r {
                new_w.push(central_label("z", &[i, j, k]));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            new_w.push(central_label("z", &[i, j]));
        }
    }
    for u in 0..2 * n {
        for v in u + 1..2 * n {
            let ui = (u / n + 1, u % n + 1);
            let vi = (v / n + 1, v % n + 1);
            new_w.push(format!(
                "zB_{}_{}",
                gen_label("", &[ui.0, ui.1]),
                gen_label("", &[vi.0, vi.1])
            ));
        }
    }
    let taken: Vec<String> = base_pres
        .v_labels()
        .iter()
        .chain(base_pres.w_labels().iter())
        .cloned()
        .collect();
    let mut combined_new = new_v.clone();
    combined_new.extend(new_w.iter().cloned());
    let fresh = fresh_layer_labels(&taken, combined_new);
    let (new_v, new_w) = fresh.split_at(4 * n);

    let mut v_labels = base_pres.v_labels().to_vec();
    v_labels.extend_from_slice(new_v);
    let mut w_labels = base_pres.w_labels().to_vec();
    w_labels.extend_from_slice(new_w);
    let e = w_labels.len();

    let zn_index = |i: usize, j: usize, k: usize| z + ((i - 1) * n + (j - 1)) * r + (k - 1);
    let za_index = |i: usize, j: usize| z + 2 * n * r + (i - 1) * n + (j - 1);
    let zb_base = z + 2 * n * r + n * n;
    let two_n = 2 * n;
    let pair_index = |u: usize, v: usize| {
        let before: usize = (0..u).map(|x| two_n - 1 - x).sum();
        zb_base + before + (v - u - 1)
    };

    let mut pairs: Vec<(usize, usize, Vec<u64>)> = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let c = base_pres.comm(i, j);
            if c.iter().any(|&x| x != 0) {
                let mut v = vec![0u64; e];
                v[..z].copy_from_slice(c);
                pairs.push((i, j, v));
            }
        }
    }
    for i in 1..=2 {
        for j in 1..=n {
            for k in 1..=r {
                let mut c = vec![0u64; e];
                c[zn_index(i, j, k)] = 1;
                pairs.push((k - 1, idx.b(i, j), c));
            }
        }
    }
    // glued relations: the same z_ij for t = 1 and t = 2
    for t in 1..=2 {
        for i in 1..=n {
            for j in 1..=n {
                let mut c = vec![0u64; e];
                c[za_index(i, j)] = 1;
                pairs.push((idx.a(t, i), idx.b(t, j), c));
            }
        }
    }
    for u in 0..two_n {
        for v in u + 1..two_n {
            let mut c = vec![0u64; e];
            c[pair_index(u, v)] = 1;
            pairs.push((r + two_n + u, r + two_n + v, c));
        }
    }
    let pres = CentralPresentation::new(p, v_labels, w_labels, &pairs)?;

    // expected members: the slopes A_k, their centralizers, the window
    let all_a: Vec<usize> = (1..=2)
        .flat_map(|i| (1..=n).map(move |j| idx.a(i, j)))
        .collect();
    let ntilde_units: Vec<usize> = (0..r).chain(all_a.iter().copied()).collect();
    let atilde = Subspace::from_unit_vectors(&all_a, d, p);
    let ntilde = Subspace::from_unit_vectors(&ntilde_units, d, p);
    let mut named: Vec<(String, Subspace)> = Vec::new();
    named.push(("ZP".to_string(), Subspace::zero(d, p)));
    // A_k = <a_1j a_2j^k>, A_p = <a_2j>
    for k in 0..pe {
        let rows: Vec<Vec<u64>> = (1..=n)
            .map(|j| {
                let mut v = vec![0u64; d];
                v[idx.a(1, j)] = 1;
                v[idx.a(2, j)] = k;
                v
            })
            .collect();
        named.push((
            format!("A_k={k}"),
            Subspace::from_residue_rows(&rows, d, p),
        ));
    }
    named.push((
        format!("A_k={pe}"),
        Subspace::from_unit_vectors(
            &(1..=n).map(|j| idx.a(2, j)).collect::<Vec<_>>(),
            d,
            p,
        ),
    ));
    named.push(("Atilde".to_string(), atilde.clone()));
    named.push(("P".to_string(), Subspace::full(d, p)));
    named.push(("Ntilde".to_string(), ntilde.clone()));
    // centralizers: C(A_0) = <b_2j> Ntilde, C(A_p) = <b_1j> Ntilde,
    // C(A_k) = <b_1j^k b_2j^-1> Ntilde
    for k in 0..=pe {
        let name = format!("C(A_k={k})");
        let space = if k == 0 {
            embed_with_units(
                &ntilde,
                &(1..=n).map(|j| idx.b(2, j)).collect::<Vec<_>>(),
                d,
                p,
            )
        } else if k == pe {
            embed_with_units(
                &ntilde,
                &(1..=n).map(|j| idx.b(1, j)).collect::<Vec<_>>(),
                d,
                p,
            )
        } else {
            let mut rows: Vec<Vec<u64>> = (0..ntilde.dim())
                .map(|row| ntilde.basis().row(row).to_vec())
                .collect();
            for j in 1..=n {
                let mut v = vec![0u64; d];
                v[idx.b(1, j)] = k;
                v[idx.b(2, j)] = p.neg(1);
                rows.push(v);
            }
            Subspace::from_residue_rows(&rows, d, p)
        };
        named.push((name, space));
    }
    for member in &base_exp.members {
        named.push((
            format!("N.{}", member.name),
            embed_with_units(&member.space, &all_a, d, p),
        ));
    }
    let expected = ExpectedLattice::from_named(&pres, named, Some((&atilde, &ntilde)))?;
    Ok((pres, expected))
}

/// Which extension to iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Diamond { m: usize, n: usize },
    Qac { n: usize },
}

impl Extension {
    fn apply(
        self,
        base: &(CentralPresentation, ExpectedLattice),
    ) -> Result<(CentralPresentation, ExpectedLattice), ConstructionError> {
        match self {
            Extension::Diamond { m, n } => extend_diamond(base, m, n),
            Extension::Qac { n } => extend_qac(base, n),
        }
    }
}

/// Applies the extension `l` times, rethreading each output as the next
/// base. Starting from the trivial group this yields a 2l-string.
pub fn iterate(
    ext: Extension,
    base: &(CentralPresentation, ExpectedLattice),
    l: usize,
) -> Result<(CentralPresentation, ExpectedLattice), ConstructionError> {
    if l < 1 {
        return Err(ConstructionError::BadIterations);
    }
    let mut cur = ext.apply(base)?;
    for _ in 1..l {
        cur = ext.apply(&cur)?;
    }
    Ok(cur)
}

/// k-fold direct power with uniformly suffixed labels.
pub fn direct_power(
    base: &CentralPresentation,
    k: usize,
) -> Result<CentralPresentation, ConstructionError> {
    if k < 1 {
        return Err(ConstructionError::BadPower);
    }
    if k == 1 {
        return Ok(base.clone());
    }
    let suffixed = |labels: &[String], f: usize| -> Vec<String> {
        labels.iter().map(|l| format!("{l}_{f}")).collect()
    };
    let p = base.modulus();
    let r = base.v_dim();
    let z = base.w_dim();
    let d = r * k;
    let e = z * k;
    let mut v_labels = Vec::with_capacity(d);
    let mut w_labels = Vec::with_capacity(e);
    for f in 1..=k {
        v_labels.extend(suffixed(base.v_labels(), f));
    }
    for f in 1..=k {
        w_labels.extend(suffixed(base.w_labels(), f));
    }
    let mut pairs: Vec<(usize, usize, Vec<u64>)> = Vec::new();
    for f in 0..k {
        for i in 0..r {
            for j in i + 1..r {
                let c = base.comm(i, j);
                if c.iter().any(|&x| x != 0) {
                    let mut v = vec![0u64; e];
                    v[f * z..(f + 1) * z].copy_from_slice(c);
                    pairs.push((f * r + i, f * r + j, v));
                }
            }
        }
    }
    Ok(CentralPresentation::new(p, v_labels, w_labels, &pairs)?)
}

/// Predicted lattice of a direct product: the pairwise direct sums of the
/// factor members (the product decomposition law).
pub fn product_expected(
    product: &CentralPresentation,
    a: &(CentralPresentation, ExpectedLattice),
    b: &(CentralPresentation, ExpectedLattice),
) -> Result<ExpectedLattice, ConstructionError> {
    let d1 = a.0.v_dim();
    let d2 = b.0.v_dim();
    let d = d1 + d2;
    let p = product.modulus();
    if d != product.v_dim() {
        return Err(ConstructionError::Internal(
            "product dimensions do not match the factors".into(),
        ));
    }
    let mut named = Vec::new();
    for ma in &a.1.members {
        for mb in &b.1.members {
            let mut rows: Vec<Vec<u64>> = Vec::new();
            for row in 0..ma.space.dim() {
                let mut v = vec![0u64; d];
                v[..d1].copy_from_slice(ma.space.basis().row(row));
                rows.push(v);
            }
            for row in 0..mb.space.dim() {
                let mut v = vec![0u64; d];
                v[d1..].copy_from_slice(mb.space.basis().row(row));
                rows.push(v);
            }
            named.push((
                format!("{}x{}", ma.name, mb.name),
                Subspace::from_residue_rows(&rows, d, p),
            ));
        }
    }
    ExpectedLattice::from_named(product, named, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdengine::{compute_cd_full, DEFAULT_BUDGET};

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn trivial_lattice_is_a_point() {
        let (pres, exp) = trivial(p(2));
        assert_eq!(pres.v_dim(), 0);
        assert_eq!(exp.members.len(), 1);
        assert_eq!(exp.expected_shape.summary(), "point");
    }

    #[test]
    fn heisenberg_expected_matches_full_scan() {
        for q in [2u64, 3] {
            let (pres, exp) = heisenberg(p(q));
            let (lat, _) = compute_cd_full(&pres, DEFAULT_BUDGET, 1).unwrap();
            assert_eq!(lat.members, exp.spaces());
            assert_eq!(
                exp.expected_shape.summary(),
                format!("qac({}) idx=p^1", q + 1)
            );
        }
    }

    #[test]
    fn double_diamond_rejects_small_m() {
        assert_eq!(
            build_double_diamond(p(2), 1, None).unwrap_err(),
            ConstructionError::MTooSmall
        );
        assert_eq!(
            build_double_diamond(p(2), 0, None).unwrap_err(),
            ConstructionError::MTooSmall
        );
    }

    #[test]
    fn double_diamond_rejects_bad_splits() {
        assert_eq!(
            build_double_diamond(p(2), 2, Some((1, 3))).unwrap_err(),
            ConstructionError::BadSplit(1, 3)
        );
        assert_eq!(
            build_double_diamond(p(2), 2, Some((2, 3))).unwrap_err(),
            ConstructionError::BadSplit(2, 3)
        );
    }

    #[test]
    fn double_diamond_dimensions() {
        // w_dim = 4m^2 - m independent of p; |P| exponent = 4m^2 + 3m
        for q in [2u64, 3, 5] {
            for m in [2usize, 3] {
                let (pres, exp) = build_double_diamond(p(q), m, None).unwrap();
                assert_eq!(pres.v_dim(), 4 * m);
                assert_eq!(pres.w_dim(), 4 * m * m - m);
                assert_eq!(pres.v_dim() + pres.w_dim(), 4 * m * m + 3 * m);
                assert_eq!(exp.members.len(), 7);
            }
        }
    }

    #[test]
    fn double_diamond_member_dims() {
        let (_, exp) = build_double_diamond(p(2), 2, None).unwrap();
        let dims: Vec<usize> = exp.members.iter().map(|m| m.space.dim()).collect();
        assert_eq!(dims, vec![0, 2, 2, 4, 6, 6, 8]);
        assert_eq!(exp.find("A").unwrap().space.dim(), 4);
        assert_eq!(exp.find("A_1").unwrap().space.dim(), 2);
        assert_eq!(exp.find("AB_2").unwrap().space.dim(), 6);
    }

    #[test]
    fn double_diamond_centralizer_wiring() {
        // C(A_1) = AB_1 and C(A_2) = AB_2
        for q in [2u64, 3] {
            let (pres, exp) = build_double_diamond(p(q), 2, None).unwrap();
            let a1 = &exp.find("A_1").unwrap().space;
            let ab1 = &exp.find("AB_1").unwrap().space;
            assert_eq!(&pres.centralizer(a1).unwrap(), ab1);
            let a2 = &exp.find("A_2").unwrap().space;
            let ab2 = &exp.find("AB_2").unwrap().space;
            assert_eq!(&pres.centralizer(a2).unwrap(), ab2);
            let a = &exp.find("A").unwrap().space;
            assert_eq!(&pres.centralizer(a).unwrap(), a);
        }
    }

    #[test]
    fn double_diamond_full_scan_matches() {
        let (pres, exp) = build_double_diamond(p(2), 2, None).unwrap();
        let (lat, stats) = compute_cd_full(&pres, DEFAULT_BUDGET, 0).unwrap();
        assert_eq!(stats.scanned, 417_199);
        assert_eq!(lat.members.len(), 7);
        assert_eq!(lat.members, exp.spaces());
        assert_eq!(
            lat.classify().unwrap().summary(),
            "2-string[diamond(2),diamond(2)] uniform idx=p^2"
        );
    }

    #[test]
    fn asymmetric_split_distinct_orders() {
        let (pres, exp) = build_double_diamond(p(2), 3, Some((2, 4))).unwrap();
        assert_eq!(pres.v_dim(), 12);
        // w = n1^2 + n2^2 + C(2m, 2)
        assert_eq!(pres.w_dim(), 4 + 16 + 15);
        let dims: Vec<usize> = exp.members.iter().map(|m| m.space.dim()).collect();
        assert_eq!(dims, vec![0, 2, 4, 6, 8, 10, 12]);
        // complementary wiring: C(A_1) has dimension 2m + n2
        let a1 = &exp.find("A_1").unwrap().space;
        assert_eq!(pres.centralizer(a1).unwrap().dim(), 10);
        assert_eq!(
            exp.expected_shape.summary(),
            "2-string[diamond(2),diamond(2)] uniform idx=irregular"
        );
    }

    #[test]
    fn extend_diamond_dimension_formulas() {
        // v = 2mn + r; w = z + mnr + mn^2 + C(mn,2) = z + mn(2n + 2r + mn - 1)/2
        for q in [2u64, 3, 5] {
            for m in [1usize, 2, 3] {
                for n in [2usize, 3, 4] {
                    for base_kind in [0, 1] {
                        let base = if base_kind == 0 {
                            trivial(p(q))
                        } else {
                            heisenberg(p(q))
                        };
                        let r = base.0.v_dim();
                        let z = base.0.w_dim();
                        let (pres, _) = extend_diamond(&base, m, n).unwrap();
                        assert_eq!(pres.v_dim(), 2 * m * n + r);
                        let mn = m * n;
                        assert_eq!(
                            pres.w_dim(),
                            z + mn * (2 * n + 2 * r + mn - 1) / 2,
                            "q={q} m={m} n={n} r={r}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn extend_diamond_rejects_bad_params() {
        let base = trivial(p(2));
        assert_eq!(
            extend_diamond(&base, 0, 2).unwrap_err(),
            ConstructionError::BadDiamondParams
        );
        assert_eq!(
            extend_diamond(&base, 1, 1).unwrap_err(),
            ConstructionError::BadDiamondParams
        );
    }

    #[test]
    fn extend_diamond_small_full_scan() {
        // trivial base, m = 2, n = 2: a 2-string of 2-diamonds with block
        // wiring; structurally the same shape as the double diamond
        let (pres, exp) = extend_diamond(&trivial(p(2)), 2, 2).unwrap();
        assert_eq!(pres.v_dim(), 8);
        assert_eq!(pres.w_dim(), 14);
        let (lat, _) = compute_cd_full(&pres, DEFAULT_BUDGET, 0).unwrap();
        assert_eq!(lat.members, exp.spaces());
        assert_eq!(lat.members.len(), 7);
        assert_eq!(
            lat.classify().unwrap().summary(),
            "2-string[diamond(2),diamond(2)] uniform idx=p^2"
        );
    }

    #[test]
    fn extend_diamond_over_heisenberg_is_mixed_3_string() {
        let (pres, exp) = extend_diamond(&heisenberg(p(2)), 1, 2).unwrap();
        assert_eq!(pres.v_dim(), 6);
        let (lat, _) = compute_cd_full(&pres, DEFAULT_BUDGET, 0).unwrap();
        assert_eq!(lat.members, exp.spaces());
        let shape = lat.classify().unwrap();
        assert_eq!(
            shape.summary(),
            "3-string[diamond(1),qac(3),diamond(1)] mixed idx=p^2|p^1|p^2"
        );
        // base window embeds the Heisenberg lattice
        let (lo, hi) = exp.base_window.unwrap();
        assert_eq!(exp.members[lo].name, "Atilde");
        assert_eq!(exp.members[hi].name, "Ntilde");
    }

    #[test]
    fn boolean_family_order_isomorphism() {
        // Delta -> Atilde_Delta is an order isomorphism from the subset
        // lattice into the membership list
        let (_, exp) = extend_diamond(&trivial(p(2)), 3, 2).unwrap();
        let deltas = subsets(3);
        let space_of = |delta: &Vec<usize>| -> Subspace {
            let name = if delta.is_empty() {
                "ZP".to_string()
            } else if delta.len() == 3 {
                "Atilde".to_string()
            } else {
                delta_name("Atilde", delta)
            };
            exp.find(&name).unwrap().space.clone()
        };
        for da in &deltas {
            for db in &deltas {
                let sa = space_of(da);
                let sb = space_of(db);
                let subset = da.iter().all(|x| db.contains(x));
                assert_eq!(sb.contains(&sa).unwrap(), subset);
            }
        }
    }

    #[test]
    fn iterate_chain_of_five() {
        let (pres, exp) = iterate(Extension::Diamond { m: 1, n: 2 }, &trivial(p(2)), 2).unwrap();
        assert_eq!(pres.v_dim(), 8);
        assert_eq!(exp.members.len(), 5);
        let dims: Vec<usize> = exp.members.iter().map(|m| m.space.dim()).collect();
        assert_eq!(dims, vec![0, 2, 4, 6, 8]);
        assert_eq!(
            exp.expected_shape.summary(),
            "4-string[diamond(1),diamond(1),diamond(1),diamond(1)] uniform idx=p^2"
        );
    }

    #[test]
    fn extend_qac_dimension_formulas() {
        // v = 4n + r; w = z + 2nr + n^2 + n(2n-1), counted from the
        // construction's central generator lists
        for q in [2u64, 3, 5] {
            for n in [2usize, 3, 4] {
                for base_kind in [0, 1] {
                    let base = if base_kind == 0 {
                        trivial(p(q))
                    } else {
                        heisenberg(p(q))
                    };
                    let r = base.0.v_dim();
                    let z = base.0.w_dim();
                    let (pres, _) = extend_qac(&base, n).unwrap();
                    assert_eq!(pres.v_dim(), 4 * n + r);
                    assert_eq!(pres.w_dim(), z + 2 * n * r + n * n + n * (2 * n - 1));
                }
            }
        }
    }

    #[test]
    fn extend_qac_rejects_small_n() {
        assert_eq!(
            extend_qac(&trivial(p(2)), 1).unwrap_err(),
            ConstructionError::NTooSmall
        );
    }

    #[test]
    fn qac_centralizer_identities() {
        // C(A_k) = <b_1j^k b_2j^-1> Ntilde for 1 <= k <= p-1,
        // C(A_0) = <b_2j> Ntilde, C(A_p) = <b_1j> Ntilde
        for q in [2u64, 3] {
            for n in [2usize, 3] {
                for base_kind in [0, 1] {
                    let base = if base_kind == 0 {
                        trivial(p(q))
                    } else {
                        heisenberg(p(q))
                    };
                    let (pres, exp) = extend_qac(&base, n).unwrap();
                    for k in 0..=q {
                        let ak = &exp.find(&format!("A_k={k}")).unwrap().space;
                        let predicted = &exp.find(&format!("C(A_k={k})")).unwrap().space;
                        assert_eq!(
                            &pres.centralizer(ak).unwrap(),
                            predicted,
                            "q={q} n={n} base={base_kind} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn qac_trivial_base_full_scan() {
        let (pres, exp) = extend_qac(&trivial(p(2)), 2).unwrap();
        assert_eq!(pres.v_dim(), 8);
        assert_eq!(pres.w_dim(), 10);
        assert_eq!(exp.members.len(), 9);
        let (lat, _) = compute_cd_full(&pres, DEFAULT_BUDGET, 0).unwrap();
        assert_eq!(lat.members, exp.spaces());
        assert_eq!(
            lat.classify().unwrap().summary(),
            "2-string[qac(3),qac(3)] uniform idx=p^2"
        );
    }

    #[test]
    fn qac_over_heisenberg_member_count() {
        // mixed 3-string of quasiantichains: (p+3) + (p+3) + |CD(N)| - 2
        let (pres, exp) = extend_qac(&heisenberg(p(2)), 2).unwrap();
        assert_eq!(pres.v_dim(), 10);
        assert_eq!(exp.members.len(), 13);
        assert_eq!(
            exp.expected_shape.summary(),
            "3-string[qac(3),qac(3),qac(3)] uniform idx=p^2|p^1|p^2"
        );
    }

    #[test]
    fn direct_power_identity_and_blocks() {
        let h = CentralPresentation::heisenberg(p(2));
        assert_eq!(direct_power(&h, 1).unwrap(), h);
        let cube = direct_power(&h, 3).unwrap();
        assert_eq!(cube.v_dim(), 6);
        assert_eq!(cube.w_dim(), 3);
        assert_eq!(cube.comm(2, 3), &[0, 1, 0]);
        assert!(direct_power(&h, 0).is_err());
    }

    #[test]
    fn product_expected_25_members() {
        let (hp, hexp) = heisenberg(p(2));
        let prod = hp.direct_product(&hp).unwrap();
        let exp = product_expected(&prod, &(hp.clone(), hexp.clone()), &(hp, hexp)).unwrap();
        assert_eq!(exp.members.len(), 25);
        let (lat, _) = compute_cd_full(&prod, DEFAULT_BUDGET, 1).unwrap();
        assert_eq!(lat.members, exp.spaces());
    }

    #[test]
    fn certificate_rejects_degenerate_base() {
        // elementary abelian with v_dim > 0 has a full radical: the W part
        // is not the center, so the extension hypotheses fail
        let bad = abelian(p(2), 2);
        assert!(matches!(
            extend_diamond(&bad, 1, 2).unwrap_err(),
            ConstructionError::Certificate(_)
        ));
    }

    #[test]
    fn iterated_labels_stay_unique() {
        let (pres, _) = iterate(Extension::Qac { n: 2 }, &trivial(p(2)), 2).unwrap();
        let mut all: Vec<&String> = pres.v_labels().iter().chain(pres.w_labels().iter()).collect();
        let before = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), before);
        assert!(pres.v_labels().contains(&"a11'".to_string()));
    }
}
