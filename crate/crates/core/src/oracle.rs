//! Independent element-level cross-check for the subspace machinery.
//!
//! A presentation is realized as the set of pairs `(v, w)` in
//! `GF(p)^d x GF(p)^e` with the class-2 product
//!
//! ```text
//! (v1, w1) * (v2, w2) = (v1 + v2, w1 + w2 + beta(v1, v2))
//! ```
//!
//! where `beta(x, y) = sum_{i > j} x[i] y[j] comm[i][j]` is the upper
//! triangular lift of the commutator form, so that the group commutator of
//! two elements is exactly `(0, B(v_g, v_h))`. Centralizers here are found
//! by scanning group elements one by one; none of the subspace code is
//! involved, which is the point.

use thiserror::Error;

use crate::gfplin::{Prime, Subspace};
use crate::presentation::CentralPresentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("element scan budget exceeded: group order p^{exponent} exceeds 2^14")]
    BudgetExceeded { exponent: usize },
    #[error("element belongs to a different presentation shape")]
    ShapeMismatch,
}

/// A group element `(v, w)` with componentwise residues mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub v_part: Vec<u64>,
    pub w_part: Vec<u64>,
}

impl GroupElement {
    pub fn identity(pres: &CentralPresentation) -> GroupElement {
        GroupElement {
            v_part: vec![0; pres.v_dim()],
            w_part: vec![0; pres.w_dim()],
        }
    }

    /// Lift of a V-vector with trivial central part.
    pub fn from_v(pres: &CentralPresentation, v: &[u64]) -> GroupElement {
        assert_eq!(v.len(), pres.v_dim());
        GroupElement {
            v_part: v.to_vec(),
            w_part: vec![0; pres.w_dim()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.v_part.iter().chain(self.w_part.iter()).all(|&x| x == 0)
    }
}

/// Upper triangular bisection of the commutator form:
/// `beta(x, y) = sum_{i > j} x[i] y[j] comm[i][j]`.
fn beta(pres: &CentralPresentation, x: &[u64], y: &[u64]) -> Vec<u64> {
    let p = pres.modulus();
    let d = pres.v_dim();
    let e = pres.w_dim();
    let mut out = vec![0u64; e];
    for i in 0..d {
        if x[i] == 0 {
            continue;
        }
        for j in 0..i {
            if y[j] == 0 {
                continue;
            }
            let s = p.mul(x[i], y[j]);
            let c = pres.comm(i, j);
            for t in 0..e {
                if c[t] != 0 {
                    out[t] = p.add(out[t], p.mul(s, c[t]));
                }
            }
        }
    }
    out
}

pub fn multiply(pres: &CentralPresentation, g: &GroupElement, h: &GroupElement) -> GroupElement {
    let p = pres.modulus();
    let v: Vec<u64> = g
        .v_part
        .iter()
        .zip(&h.v_part)
        .map(|(&a, &b)| p.add(a, b))
        .collect();
    let cocycle = beta(pres, &g.v_part, &h.v_part);
    let w: Vec<u64> = g
        .w_part
        .iter()
        .zip(&h.w_part)
        .zip(&cocycle)
        .map(|((&a, &b), &c)| p.add(p.add(a, b), c))
        .collect();
    GroupElement { v_part: v, w_part: w }
}

pub fn inverse(pres: &CentralPresentation, g: &GroupElement) -> GroupElement {
    let p = pres.modulus();
    let v: Vec<u64> = g.v_part.iter().map(|&a| p.neg(a)).collect();
    // (v, w)(-v, w') = (0, w + w' + beta(v, -v)) so w' = -w - beta(v, -v)
    let b = beta(pres, &g.v_part, &v);
    let w: Vec<u64> = g
        .w_part
        .iter()
        .zip(&b)
        .map(|(&a, &c)| p.neg(p.add(a, c)))
        .collect();
    GroupElement { v_part: v, w_part: w }
}

/// Group commutator `g^-1 h^-1 g h`.
pub fn commutator(
    pres: &CentralPresentation,
    g: &GroupElement,
    h: &GroupElement,
) -> GroupElement {
    let gi = inverse(pres, g);
    let hi = inverse(pres, h);
    multiply(pres, &multiply(pres, &multiply(pres, &gi, &hi), g), h)
}

pub fn power(pres: &CentralPresentation, g: &GroupElement, n: u64) -> GroupElement {
    let mut acc = GroupElement::identity(pres);
    for _ in 0..n {
        acc = multiply(pres, &acc, g);
    }
    acc
}

/// Result of an element-level centralizer scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerScan {
    /// Number of group elements commuting with every given generator.
    pub count: u64,
    /// Image of the centralizer in V, assembled from the surviving
    /// elements' v-parts.
    pub v_projection: Subspace,
}

fn order_exponent(pres: &CentralPresentation) -> usize {
    pres.v_dim() + pres.w_dim()
}

/// Iterates all vectors of GF(p)^n in odometer order.
fn for_each_vector<F: FnMut(&[u64])>(n: usize, p: Prime, mut f: F) {
    let pe = p.get();
    let mut v = vec![0u64; n];
    loop {
        f(&v);
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if v[pos] + 1 < pe {
                v[pos] += 1;
                break;
            }
            v[pos] = 0;
        }
    }
}

/// Scans every element of the group and keeps those commuting with all the
/// given generators. Requires `p^(d+e) <= 2^14`.
pub fn element_centralizer(
    pres: &CentralPresentation,
    generators: &[GroupElement],
) -> Result<CentralizerScan, OracleError> {
    let exp = order_exponent(pres);
    let size = (pres.modulus().get() as f64).powi(exp as i32);
    if size > (1u64 << 14) as f64 {
        return Err(OracleError::BudgetExceeded { exponent: exp });
    }
    for g in generators {
        if g.v_part.len() != pres.v_dim() || g.w_part.len() != pres.w_dim() {
            return Err(OracleError::ShapeMismatch);
        }
    }
    let d = pres.v_dim();
    let e = pres.w_dim();
    let p = pres.modulus();
    let mut count = 0u64;
    let mut v_rows: Vec<Vec<u64>> = Vec::new();
    for_each_vector(d, p, |v| {
        let candidate_v = v.to_vec();
        // commuting depends only on v-parts, but we verify it the honest
        // way: for each central assignment, test gh == hg elementwise
        for_each_vector(e, p, |w| {
            let g = GroupElement {
                v_part: candidate_v.clone(),
                w_part: w.to_vec(),
            };
            let commutes = generators
                .iter()
                .all(|h| multiply(pres, &g, h) == multiply(pres, h, &g));
            if commutes {
                count += 1;
                v_rows.push(g.v_part.clone());
            }
        });
    });
    let v_projection = Subspace::from_residue_rows(&v_rows, d, p);
    Ok(CentralizerScan { count, v_projection })
}
