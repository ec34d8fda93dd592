//! Exact computation of Chermak-Delgado lattices for finite p-groups of
//! nilpotence class at most 2 with central Frattini subgroup.
//!
//! Such a group is encoded as an alternating bilinear commutator form
//! `B: V x V -> W` over GF(p), where `V = P/Z(P)` and `W = Z(P)` are
//! elementary abelian. Subgroups containing the center correspond to
//! subspaces of `V`, centralizers to orthogonal complements under `B`,
//! and the Chermak-Delgado measure of a subgroup becomes a pure exponent
//! count. On top of that model the crate provides:
//!
//! * [`gfplin`] — row reduction, kernels, canonical subspaces, and full
//!   subspace enumeration over GF(p);
//! * [`presentation`] — the commutator-form encoding, centralizers,
//!   measures, and the CGP text format;
//! * [`constructions`] — builders for the double-diamond, diamond-extension
//!   and quasiantichain-extension families together with their predicted
//!   lattices;
//! * [`cdengine`] — exhaustive lattice search, predicted-lattice
//!   verification, cover relations, and the cdl file format;
//! * [`shapes`] — classification of finite lattices into strings of
//!   diamonds, quasiantichains, and chains;
//! * [`oracle`] — an independent element-level group model used to
//!   cross-check the subspace machinery.
//!
//! ```
//! use cdlat_core::cdengine::{compute_cd_full, DEFAULT_BUDGET};
//! use cdlat_core::gfplin::Prime;
//! use cdlat_core::presentation::CentralPresentation;
//!
//! // the extraspecial group of order 2^3: [x, y] = z
//! let p = Prime::new(2)?;
//! let heisenberg = CentralPresentation::heisenberg(p);
//! let (lattice, stats) = compute_cd_full(&heisenberg, DEFAULT_BUDGET, 1)?;
//! assert_eq!(stats.scanned, 5);
//! assert_eq!(lattice.members.len(), 5);
//! assert_eq!(lattice.classify()?.summary(), "qac(3) idx=p^1");
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

// matrix kernels index several buffers in lockstep; iterator rewrites of
// those loops obscure the arithmetic
#![allow(clippy::needless_range_loop)]

pub mod cdengine;
pub mod constructions;
pub mod gfplin;
pub mod oracle;
pub mod presentation;
pub mod shapes;

pub use cdengine::{CdLattice, LatticeMode, SearchStats, VerifyOutcome, VerifyReport};
pub use constructions::{ConstructionParams, ExpectedLattice, Extension, NamedSubgroup};
pub use gfplin::{FieldMatrix, FieldScalar, Prime, Subspace};
pub use presentation::{CentralPresentation, MeasureExponent};
pub use shapes::{ComponentKind, ComponentSpec, ShapeSpec};
