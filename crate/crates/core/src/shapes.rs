//! Classification of finite lattices into strings of diamonds,
//! quasiantichains, and chains.
//!
//! Input is a pure poset view: one dimension per node (the log_p order of
//! the member, used for cover indices) plus the cover relation. The spine —
//! the nodes comparable to every node — cuts the lattice into consecutive
//! intervals; each interval is classified on cover structure alone, so the
//! result is invariant under relabeling.

use std::collections::HashSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("lattice has no unique minimum")]
    NoUniqueMin,
    #[error("lattice has no unique maximum")]
    NoUniqueMax,
}

/// Shape of one string component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentKind {
    /// A single node.
    Point,
    /// Boolean lattice of an m-element set (an m-dimensional cube).
    Diamond(usize),
    /// Height-2 lattice with w >= 2 pairwise incomparable middle elements.
    Quasiantichain(usize),
    /// Totally ordered, measured in cover steps.
    Chain(usize),
    /// Anything else, keyed by a canonical form of its cover digraph.
    Other(String),
}

impl ComponentKind {
    pub fn label(&self) -> String {
        match self {
            ComponentKind::Point => "point".into(),
            ComponentKind::Diamond(m) => format!("diamond({m})"),
            ComponentKind::Quasiantichain(w) => format!("qac({w})"),
            ComponentKind::Chain(l) => format!("chain({l})"),
            ComponentKind::Other(fp) => {
                let short: String = fp.chars().take(8).collect();
                format!("other({short})")
            }
        }
    }
}

/// One component of a string decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSpec {
    pub kind: ComponentKind,
    pub element_count: usize,
    /// Member indices of the interval endpoints in the input lattice.
    pub lo: usize,
    pub hi: usize,
    /// Sorted multiset of log_p cover indices inside the component.
    pub edge_index_profile: Vec<usize>,
}

/// Full classification result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeSpec {
    /// Components from bottom to top.
    pub components: Vec<ComponentSpec>,
    /// All components pairwise lattice isomorphic (shape only).
    pub uniform: bool,
    /// All cover indices across the lattice agree.
    pub index_uniform: bool,
}

impl ShapeSpec {
    /// One-line summary, e.g. `2-string[diamond(2),diamond(2)] uniform idx=p^2`.
    pub fn summary(&self) -> String {
        let idx_part = |out: &mut String| {
            let mut all: HashSet<usize> = HashSet::new();
            for c in &self.components {
                all.extend(c.edge_index_profile.iter().copied());
            }
            if all.is_empty() {
                return;
            }
            if all.len() == 1 {
                out.push_str(&format!(" idx=p^{}", all.iter().next().unwrap()));
                return;
            }
            // per-component indices when each component is internally uniform
            let per: Vec<Option<usize>> = self
                .components
                .iter()
                .map(|c| {
                    let s: HashSet<usize> = c.edge_index_profile.iter().copied().collect();
                    if s.len() == 1 {
                        Some(*s.iter().next().unwrap())
                    } else {
                        None
                    }
                })
                .collect();
            if per.iter().all(|x| x.is_some()) {
                let parts: Vec<String> =
                    per.iter().map(|x| format!("p^{}", x.unwrap())).collect();
                out.push_str(&format!(" idx={}", parts.join("|")));
            } else {
                out.push_str(" idx=irregular");
            }
        };
        if self.components.len() == 1 {
            let mut s = self.components[0].kind.label();
            idx_part(&mut s);
            return s;
        }
        let kinds: Vec<String> = self.components.iter().map(|c| c.kind.label()).collect();
        let mut s = format!(
            "{}-string[{}] {}",
            self.components.len(),
            kinds.join(","),
            if self.uniform { "uniform" } else { "mixed" }
        );
        idx_part(&mut s);
        s
    }

    pub fn component_kinds(&self) -> Vec<ComponentKind> {
        self.components.iter().map(|c| c.kind.clone()).collect()
    }
}

/// Reachability closure of the cover digraph: `leq[a][b]` iff a <= b.
fn closure(n: usize, covers: &[(usize, usize)]) -> Vec<Vec<bool>> {
    // covers are (upper, lower)
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
    }
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(hi, lo) in covers {
        up[lo].push(hi);
    }
    for start in 0..n {
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &up[x] {
                if !leq[start][y] {
                    leq[start][y] = true;
                    stack.push(y);
                }
            }
        }
    }
    leq
}

/// Nodes comparable to every node, sorted from bottom to top. Errors when
/// the poset lacks a unique minimum or maximum.
pub fn spine(n: usize, covers: &[(usize, usize)]) -> Result<Vec<usize>, ShapeError> {
    if n == 0 {
        return Err(ShapeError::Empty);
    }
    let leq = closure(n, covers);
    let mins: Vec<usize> = (0..n)
        .filter(|&x| (0..n).all(|y| !leq[y][x] || y == x))
        .collect();
    if mins.len() != 1 {
        return Err(ShapeError::NoUniqueMin);
    }
    let maxs: Vec<usize> = (0..n)
        .filter(|&x| (0..n).all(|y| !leq[x][y] || y == x))
        .collect();
    if maxs.len() != 1 {
        return Err(ShapeError::NoUniqueMax);
    }
    let mut spine: Vec<usize> = (0..n)
        .filter(|&x| (0..n).all(|y| leq[x][y] || leq[y][x]))
        .collect();
    // below-count increases strictly along the spine chain
    spine.sort_by_key(|&x| (0..n).filter(|&y| leq[y][x]).count());
    Ok(spine)
}

struct Interval {
    /// node ids (input indexing) of the interval members
    nodes: Vec<usize>,
    /// cover edges within, as positions into `nodes`
    covers: Vec<(usize, usize)>,
    lo_pos: usize,
    hi_pos: usize,
}

fn interval(leq: &[Vec<bool>], covers: &[(usize, usize)], lo: usize, hi: usize) -> Interval {
    let nodes: Vec<usize> = (0..leq.len())
        .filter(|&x| leq[lo][x] && leq[x][hi])
        .collect();
    let pos = |x: usize| nodes.iter().position(|&y| y == x).unwrap();
    let sub_covers: Vec<(usize, usize)> = covers
        .iter()
        .filter(|&&(a, b)| nodes.contains(&a) && nodes.contains(&b))
        .map(|&(a, b)| (pos(a), pos(b)))
        .collect();
    Interval {
        lo_pos: pos(lo),
        hi_pos: pos(hi),
        nodes,
        covers: sub_covers,
    }
}

/// Classifies one interval sublattice given by its cover digraph. The
/// endpoints are part of the component.
fn classify_interval(iv: &Interval, dims: &[usize]) -> ComponentSpec {
    let n = iv.nodes.len();
    let leq = closure(n, &iv.covers);
    let profile = {
        let mut p: Vec<usize> = iv
            .covers
            .iter()
            .map(|&(a, b)| dims[iv.nodes[a]] - dims[iv.nodes[b]])
            .collect();
        p.sort_unstable();
        p
    };
    let spec = |kind: ComponentKind| ComponentSpec {
        kind,
        element_count: n,
        lo: iv.nodes[iv.lo_pos],
        hi: iv.nodes[iv.hi_pos],
        edge_index_profile: profile.clone(),
    };
    if n == 1 {
        return spec(ComponentKind::Point);
    }
    // diamond: the atom-set map is an order isomorphism onto a Boolean lattice
    let atoms: Vec<usize> = iv
        .covers
        .iter()
        .filter(|&&(_, b)| b == iv.lo_pos)
        .map(|&(a, _)| a)
        .collect();
    let m = atoms.len();
    if m <= 20 && n == 1usize << m {
        let mask = |x: usize| -> u32 {
            atoms
                .iter()
                .enumerate()
                .filter(|&(_, &a)| leq[a][x])
                .fold(0u32, |acc, (k, _)| acc | (1 << k))
        };
        let masks: Vec<u32> = (0..n).map(mask).collect();
        let distinct: HashSet<u32> = masks.iter().copied().collect();
        let order_iso = distinct.len() == n
            && (0..n).all(|x| {
                (0..n).all(|y| leq[x][y] == ((masks[x] & !masks[y]) == 0))
            });
        if order_iso {
            return spec(ComponentKind::Diamond(m));
        }
    }
    // quasiantichain: everything strictly between the endpoints is an atom
    // and a coatom, pairwise incomparable
    let middles: Vec<usize> = (0..n)
        .filter(|&x| x != iv.lo_pos && x != iv.hi_pos)
        .collect();
    let w = middles.len();
    if w >= 2 && n == w + 2 {
        let ok = middles.iter().all(|&x| {
            iv.covers.contains(&(x, iv.lo_pos)) && iv.covers.contains(&(iv.hi_pos, x))
        }) && middles
            .iter()
            .all(|&x| middles.iter().all(|&y| x == y || (!leq[x][y] && !leq[y][x])));
        if ok {
            return spec(ComponentKind::Quasiantichain(w));
        }
    }
    // chain: totally ordered
    if (0..n).all(|x| (0..n).all(|y| leq[x][y] || leq[y][x])) {
        return spec(ComponentKind::Chain(n - 1));
    }
    spec(ComponentKind::Other(canonical_fingerprint(n, &leq)))
}

/// Exact canonical form of a small poset: the lexicographically minimal
/// relation matrix over all permutations compatible with an invariant
/// refinement, rendered as hex. Inputs here are string components with at
/// most a few dozen elements.
fn canonical_fingerprint(n: usize, leq: &[Vec<bool>]) -> String {
    // invariant per node: (below count, above count, sorted below-profile of sizes)
    let inv = |x: usize| -> (usize, usize) {
        (
            (0..n).filter(|&y| leq[y][x]).count(),
            (0..n).filter(|&y| leq[x][y]).count(),
        )
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| inv(x));
    // group into classes of equal invariant
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &x in &order {
        match classes.last_mut() {
            Some(c) if inv(c[0]) == inv(x) => c.push(x),
            _ => classes.push(vec![x]),
        }
    }
    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut budget = 1_000_000usize;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        classes: &[Vec<usize>],
        ci: usize,
        used: &mut Vec<bool>,
        perm: &mut Vec<usize>,
        n: usize,
        leq: &[Vec<bool>],
        best: &mut Option<Vec<u8>>,
        budget: &mut usize,
    ) {
        if *budget == 0 {
            return;
        }
        if ci == classes.len() {
            *budget -= 1;
            let mut bytes = Vec::with_capacity(n * n);
            for &x in perm.iter() {
                for &y in perm.iter() {
                    bytes.push(u8::from(leq[x][y]));
                }
            }
            if best.as_ref().is_none_or(|b| bytes < *b) {
                *best = Some(bytes);
            }
            return;
        }
        let class = &classes[ci];
        // permute within the class only
        #[allow(clippy::too_many_arguments)]
        fn class_rec(
            class: &[usize],
            classes: &[Vec<usize>],
            ci: usize,
            used: &mut Vec<bool>,
            perm: &mut Vec<usize>,
            n: usize,
            leq: &[Vec<bool>],
            best: &mut Option<Vec<u8>>,
            budget: &mut usize,
        ) {
            if perm.len() == classes[..=ci].iter().map(|c| c.len()).sum::<usize>() {
                rec(classes, ci + 1, used, perm, n, leq, best, budget);
                return;
            }
            for &x in class {
                if !used[x] {
                    used[x] = true;
                    perm.push(x);
                    class_rec(class, classes, ci, used, perm, n, leq, best, budget);
                    perm.pop();
                    used[x] = false;
                    if *budget == 0 {
                        return;
                    }
                }
            }
        }
        class_rec(class, classes, ci, used, perm, n, leq, best, budget);
    }
    let mut used = vec![false; n];
    rec(&classes, 0, &mut used, &mut perm, n, leq, &mut best, &mut budget);
    let bytes = best.unwrap_or_default();
    let mut hex = String::with_capacity(bytes.len() / 4 + 8);
    hex.push_str(&format!("{n}:"));
    for chunk in bytes.chunks(4) {
        let mut v = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            v |= b << k;
        }
        hex.push_str(&format!("{v:x}"));
    }
    hex
}

/// Classifies the interval `[lo, hi]` of a lattice as one component,
/// endpoints included.
pub fn classify_component(
    dims: &[usize],
    covers: &[(usize, usize)],
    lo: usize,
    hi: usize,
) -> ComponentSpec {
    let leq = closure(dims.len(), covers);
    classify_interval(&interval(&leq, covers, lo, hi), dims)
}

/// Classifies a lattice given member dimensions and cover pairs
/// `(upper, lower)`.
pub fn classify(dims: &[usize], covers: &[(usize, usize)]) -> Result<ShapeSpec, ShapeError> {
    let n = dims.len();
    let sp = spine(n, covers)?;
    let leq = closure(n, covers);
    let mut components = Vec::new();
    if sp.len() == 1 {
        components.push(ComponentSpec {
            kind: ComponentKind::Point,
            element_count: 1,
            lo: sp[0],
            hi: sp[0],
            edge_index_profile: Vec::new(),
        });
    } else {
        for w in sp.windows(2) {
            let iv = interval(&leq, covers, w[0], w[1]);
            components.push(classify_interval(&iv, dims));
        }
    }
    let uniform = components
        .windows(2)
        .all(|w| w[0].kind == w[1].kind);
    let jumps: HashSet<usize> = components
        .iter()
        .flat_map(|c| c.edge_index_profile.iter().copied())
        .collect();
    let index_uniform = jumps.len() <= 1;
    Ok(ShapeSpec {
        components,
        uniform,
        index_uniform,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // covers are (upper, lower)
    fn chain_covers(n: usize) -> Vec<(usize, usize)> {
        (1..n).map(|i| (i, i - 1)).collect()
    }

    #[test]
    fn spine_of_chain_is_everything() {
        let covers = chain_covers(5);
        let dims = vec![0, 1, 2, 3, 4];
        assert_eq!(spine(5, &covers).unwrap(), vec![0, 1, 2, 3, 4]);
        let shape = classify(&dims, &covers).unwrap();
        assert_eq!(shape.components.len(), 4);
        assert!(shape
            .components
            .iter()
            .all(|c| c.kind == ComponentKind::Diamond(1)));
        assert!(shape.uniform);
    }

    #[test]
    fn m5_is_one_qac() {
        // 0 bottom, 1..=3 middles, 4 top
        let covers = vec![(1, 0), (2, 0), (3, 0), (4, 1), (4, 2), (4, 3)];
        let dims = vec![0, 1, 1, 1, 2];
        assert_eq!(spine(5, &covers).unwrap(), vec![0, 4]);
        let shape = classify(&dims, &covers).unwrap();
        assert_eq!(shape.components.len(), 1);
        assert_eq!(shape.components[0].kind, ComponentKind::Quasiantichain(3));
        assert_eq!(shape.summary(), "qac(3) idx=p^1");
    }

    #[test]
    fn two_string_of_two_diamonds() {
        // 0 < {1,2} < 3 < {4,5} < 6
        let covers = vec![
            (1, 0),
            (2, 0),
            (3, 1),
            (3, 2),
            (4, 3),
            (5, 3),
            (6, 4),
            (6, 5),
        ];
        let dims = vec![0, 2, 2, 4, 6, 6, 8];
        assert_eq!(spine(7, &covers).unwrap(), vec![0, 3, 6]);
        let shape = classify(&dims, &covers).unwrap();
        assert_eq!(
            shape.component_kinds(),
            vec![ComponentKind::Diamond(2), ComponentKind::Diamond(2)]
        );
        assert!(shape.uniform);
        assert_eq!(
            shape.summary(),
            "2-string[diamond(2),diamond(2)] uniform idx=p^2"
        );
    }

    #[test]
    fn cube_interval_is_diamond_3() {
        // Boolean lattice on 3 atoms: nodes = subsets of {0,1,2}
        let mut covers = Vec::new();
        for s in 0..8usize {
            for b in 0..3 {
                if s & (1 << b) == 0 {
                    covers.push((s | (1 << b), s));
                }
            }
        }
        let dims: Vec<usize> = (0..8usize).map(|s| s.count_ones() as usize).collect();
        let shape = classify(&dims, &covers).unwrap();
        assert_eq!(shape.components.len(), 1);
        assert_eq!(shape.components[0].kind, ComponentKind::Diamond(3));
        // sub-interval classification: a face of the cube is diamond(2),
        // an edge is diamond(1), a degenerate interval is a point
        assert_eq!(classify_component(&dims, &covers, 0, 3).kind, ComponentKind::Diamond(2));
        assert_eq!(classify_component(&dims, &covers, 0, 4).kind, ComponentKind::Diamond(1));
        assert_eq!(classify_component(&dims, &covers, 5, 5).kind, ComponentKind::Point);
    }

    #[test]
    fn point_lattice() {
        let shape = classify(&[0], &[]).unwrap();
        assert_eq!(shape.summary(), "point");
    }

    #[test]
    fn mixed_string_detected() {
        // 0 < {1,2,3} < 4 < 5 (M_5 then an edge)
        let covers = vec![(1, 0), (2, 0), (3, 0), (4, 1), (4, 2), (4, 3), (5, 4)];
        let dims = vec![0, 1, 1, 1, 2, 4];
        let shape = classify(&dims, &covers).unwrap();
        assert_eq!(
            shape.component_kinds(),
            vec![
                ComponentKind::Quasiantichain(3),
                ComponentKind::Diamond(1)
            ]
        );
        assert!(!shape.uniform);
        assert_eq!(
            shape.summary(),
            "2-string[qac(3),diamond(1)] mixed idx=p^1|p^2"
        );
    }

    #[test]
    fn index_profile_split_out_when_shapes_agree() {
        // two 2-element components with different dimension jumps
        let covers = vec![(1, 0), (2, 1)];
        let dims = vec![0, 2, 3];
        let shape = classify(&dims, &covers).unwrap();
        assert!(shape.uniform);
        assert!(!shape.index_uniform);
        assert_eq!(
            shape.summary(),
            "2-string[diamond(1),diamond(1)] uniform idx=p^2|p^1"
        );
    }

    #[test]
    fn no_unique_min_rejected() {
        // two incomparable bottoms under one top
        let covers = vec![(2, 0), (2, 1)];
        assert_eq!(spine(3, &covers), Err(ShapeError::NoUniqueMin));
    }

    #[test]
    fn classification_invariant_under_relabeling() {
        let covers = vec![
            (1, 0),
            (2, 0),
            (3, 1),
            (3, 2),
            (4, 3),
            (5, 3),
            (6, 4),
            (6, 5),
        ];
        let dims = vec![0usize, 2, 2, 4, 6, 6, 8];
        let base = classify(&dims, &covers).unwrap().summary();
        // apply a permutation to the node ids
        let perm = [3usize, 6, 0, 5, 1, 4, 2];
        let pdims: Vec<usize> = {
            let mut v = vec![0; 7];
            for (old, &new) in perm.iter().enumerate() {
                v[new] = dims[old];
            }
            v
        };
        let pcovers: Vec<(usize, usize)> =
            covers.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        assert_eq!(classify(&pdims, &pcovers).unwrap().summary(), base);
    }

    #[test]
    fn pentagon_is_other_with_stable_fingerprint() {
        // N5: 0 < a < b < 1 and 0 < c < 1, a,b vs c incomparable
        let covers = vec![(1, 0), (2, 1), (4, 2), (3, 0), (4, 3)];
        let dims = vec![0, 1, 2, 1, 3];
        let shape = classify(&dims, &covers).unwrap();
        assert_eq!(shape.components.len(), 1);
        let ComponentKind::Other(fp1) = &shape.components[0].kind else {
            panic!("expected other, got {:?}", shape.components[0].kind);
        };
        // relabeled pentagon has the same fingerprint
        let covers2 = vec![(3, 2), (0, 3), (4, 0), (1, 2), (4, 1)];
        let dims2 = vec![2, 1, 0, 1, 3];
        let shape2 = classify(&dims2, &covers2).unwrap();
        let ComponentKind::Other(fp2) = &shape2.components[0].kind else {
            panic!("expected other");
        };
        assert_eq!(fp1, fp2);
    }
}
