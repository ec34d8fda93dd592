//! Shared fixtures for the engine benchmarks.

use cdlat_core::constructions::{self, ExpectedLattice};
use cdlat_core::gfplin::Prime;
use cdlat_core::presentation::CentralPresentation;

pub fn p2() -> Prime {
    Prime::new(2).unwrap()
}

/// d = 6 mixed 3-string: small enough for per-iteration full scans.
pub fn le_over_heisenberg() -> (CentralPresentation, ExpectedLattice) {
    constructions::extend_diamond(&constructions::heisenberg(p2()), 1, 2).unwrap()
}

/// d = 8 double diamond: the criterion-1 workload.
pub fn double_diamond() -> (CentralPresentation, ExpectedLattice) {
    constructions::build_double_diamond(p2(), 2, None).unwrap()
}
