//! The lattice engine: exhaustive search for the set of maximal-measure
//! subspaces, verification of predicted lattices by closure checks and
//! adversarial sampling, cover relations, and the structural checks
//! (duality, closure, modularity) that the computed lattices must satisfy.

mod cdl;
mod search;
mod verify;

pub use cdl::{append_shape_block, CdlError};
pub use search::{compute_cd_full, SearchStats, DEFAULT_BUDGET};
pub use verify::{verify_predicted, VerifyOptions, VerifyOutcome, VerifyReport, VerifyStats};

use thiserror::Error;

use crate::gfplin::Subspace;
use crate::presentation::{CentralPresentation, MeasureExponent, PresentationError};
use crate::shapes::{self, ShapeError, ShapeSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("enumeration budget exceeded: {total} subspaces > budget {budget}; use verify mode with a predicted lattice")]
    BudgetExceeded { total: u128, budget: u128 },
    #[error("lattice invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Gf(#[from] crate::gfplin::GfError),
    #[error("lattice is empty")]
    Empty,
}

/// How a lattice was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeMode {
    /// Exhaustive argmax over every subspace.
    Full,
    /// Predicted membership that passed verification.
    VerifiedPredicted,
    /// Predicted membership, not yet verified.
    Predicted,
}

impl LatticeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            LatticeMode::Full => "full",
            LatticeMode::VerifiedPredicted => "verified-predicted",
            LatticeMode::Predicted => "predicted",
        }
    }

    pub fn parse(s: &str) -> Option<LatticeMode> {
        match s {
            "full" => Some(LatticeMode::Full),
            "verified-predicted" => Some(LatticeMode::VerifiedPredicted),
            "predicted" => Some(LatticeMode::Predicted),
            _ => None,
        }
    }
}

/// A set of subspaces of maximal measure with its cover relations.
///
/// Members are deduplicated, canonical, and sorted by (dimension, canonical
/// basis bytes); `covers` holds `(upper, lower)` index pairs forming the
/// transitive reduction of containment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdLattice {
    pub p: u64,
    pub v_dim: usize,
    pub w_dim: usize,
    pub mode: LatticeMode,
    pub max_measure: MeasureExponent,
    pub members: Vec<Subspace>,
    pub names: Vec<Option<String>>,
    pub covers: Vec<(usize, usize)>,
}

impl CdLattice {
    /// Assembles a lattice from (optionally named) member subspaces:
    /// deduplicates, sorts canonically, computes covers and the maximal
    /// member measure.
    pub fn from_members(
        pres: &CentralPresentation,
        members: Vec<(Option<String>, Subspace)>,
        mode: LatticeMode,
    ) -> Result<CdLattice, EngineError> {
        if members.is_empty() {
            return Err(EngineError::Empty);
        }
        let mut pairs: Vec<(Subspace, Option<String>)> = Vec::new();
        for (name, s) in members {
            match pairs.iter_mut().find(|(t, _)| *t == s) {
                Some((_, existing)) => {
                    if existing.is_none() {
                        *existing = name;
                    }
                }
                None => pairs.push((s, name)),
            }
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let members: Vec<Subspace> = pairs.iter().map(|(s, _)| s.clone()).collect();
        let names: Vec<Option<String>> = pairs.into_iter().map(|(_, n)| n).collect();
        let mut max = MeasureExponent { h_exp: 0, c_exp: 0 };
        for m in &members {
            let me = pres.measure(m)?;
            if me.value() > max.value() {
                max = me;
            }
        }
        let covers = covers(&members);
        Ok(CdLattice {
            p: pres.modulus().get(),
            v_dim: pres.v_dim(),
            w_dim: pres.w_dim(),
            mode,
            max_measure: max,
            members,
            names,
            covers,
        })
    }

    pub fn member_index(&self, s: &Subspace) -> Option<usize> {
        self.members.binary_search(s).ok()
    }

    pub fn member_dims(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.dim()).collect()
    }

    /// Shape classification of the cover digraph.
    pub fn classify(&self) -> Result<ShapeSpec, ShapeError> {
        shapes::classify(&self.member_dims(), &self.covers)
    }

    /// Serializes to the cdl v1 text format (deterministic bytes).
    pub fn serialize(&self) -> Result<String, CdlError> {
        cdl::serialize(self)
    }

    pub fn parse(text: &str) -> Result<CdLattice, CdlError> {
        cdl::parse(text)
    }
}

/// Transitive reduction of containment among canonical, distinct, sorted
/// subspaces: `(i, j)` means member i covers member j.
pub fn covers(members: &[Subspace]) -> Vec<(usize, usize)> {
    let n = members.len();
    let mut contains = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && members[i].dim() > members[j].dim() {
                contains[i][j] = members[i].contains(&members[j]).unwrap_or(false);
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if contains[i][j] {
                let between =
                    (0..n).any(|k| k != i && k != j && contains[i][k] && contains[k][j]);
                if !between {
                    out.push((i, j));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Checks the structural laws on a computed or predicted member set:
/// every centralizer is a member and an involution (duality), the set is
/// closed under sum and intersection, measures agree across the duality,
/// and the modular law holds on member triples. Returns the first
/// violation found, described by member indices.
pub fn check_duality(pres: &CentralPresentation, lattice: &CdLattice) -> Result<(), EngineError> {
    let ms = &lattice.members;
    let find = |s: &Subspace| ms.binary_search(s).ok();
    for (i, u) in ms.iter().enumerate() {
        let c = pres.centralizer(u)?;
        let Some(ci) = find(&c) else {
            return Err(EngineError::Invariant(format!(
                "centralizer of member {i} is not a member"
            )));
        };
        let cc = pres.centralizer(&c)?;
        if &cc != u {
            return Err(EngineError::Invariant(format!(
                "duality broken at member {i}: C(C(U)) != U"
            )));
        }
        let mu = pres.measure(u)?;
        let mc = pres.measure(&ms[ci])?;
        if mu.value() != mc.value() {
            return Err(EngineError::Invariant(format!(
                "measure of member {i} differs from its centralizer"
            )));
        }
    }
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            let s = ms[i].sum(&ms[j])?;
            if find(&s).is_none() {
                return Err(EngineError::Invariant(format!(
                    "sum of members {i} and {j} is not a member"
                )));
            }
            let t = ms[i]
                .intersect(&ms[j])
                ?;
            if find(&t).is_none() {
                return Err(EngineError::Invariant(format!(
                    "intersection of members {i} and {j} is not a member"
                )));
            }
        }
    }
    // modular law u <= w  =>  u + (v /\ w) = (u + v) /\ w
    for u in ms {
        for v in ms {
            for w in ms {
                if w.contains(u)? {
                    let lhs = u
                        .sum(&v.intersect(w)?)
                        ?;
                    let rhs = u
                        .sum(v)
                        ?
                        .intersect(w)
                        ?;
                    if lhs != rhs {
                        return Err(EngineError::Invariant(
                            "modular law fails on a member triple".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// True iff the unique minimal member is the zero subspace, i.e. the
/// lattice minimum is exactly the center upstairs.
pub fn minimum_is_center(lattice: &CdLattice) -> bool {
    lattice
        .members
        .iter()
        .filter(|m| {
            lattice
                .members
                .iter()
                .all(|o| o == *m || !m.contains(o).unwrap_or(false))
        })
        .collect::<Vec<_>>()
        == vec![&lattice.members[0]]
        && lattice.members[0].is_zero()
}
