//! cdl v1: line-oriented text format for computed or predicted lattices.
//!
//! ```text
//! cdl 1
//! p 2
//! vdim 2
//! wdim 1
//! mode full
//! measure 4
//! member 0
//! member 1 10
//! cover 1 0
//! name 0 ZP
//! ```
//!
//! Members are listed in canonical order (dimension, then basis bytes);
//! each `member` line carries the dimension followed by one base-p digit
//! string per basis row. `cover i j` means member i covers member j.
//! Optional `name` lines bind labels. A trailing shape block (`shape` and
//! `component` lines, written by classification) is accepted and ignored
//! on parse. Serialization is deterministic byte-for-byte.

use thiserror::Error;

use super::{CdLattice, LatticeMode};
use crate::gfplin::{Prime, Subspace};
use crate::shapes::ShapeSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdlError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("row encoding uses one base-p digit per entry and requires p < 10, got p = {0}")]
    RowEncoding(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

fn syntax(line: usize, msg: impl Into<String>) -> CdlError {
    CdlError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub(super) fn serialize(lat: &CdLattice) -> Result<String, CdlError> {
    if lat.p >= 10 {
        return Err(CdlError::RowEncoding(lat.p));
    }
    let mut out = String::new();
    out.push_str("cdl 1\n");
    out.push_str(&format!("p {}\n", lat.p));
    out.push_str(&format!("vdim {}\n", lat.v_dim));
    out.push_str(&format!("wdim {}\n", lat.w_dim));
    out.push_str(&format!("mode {}\n", lat.mode.as_str()));
    out.push_str(&format!("measure {}\n", lat.max_measure.value()));
    for m in &lat.members {
        out.push_str(&format!("member {}", m.dim()));
        for r in 0..m.dim() {
            out.push(' ');
            for &x in m.basis().row(r) {
                out.push(char::from_digit(x as u32, 10).expect("digit < 10"));
            }
        }
        out.push('\n');
    }
    for &(i, j) in &lat.covers {
        out.push_str(&format!("cover {i} {j}\n"));
    }
    for (i, name) in lat.names.iter().enumerate() {
        if let Some(n) = name {
            out.push_str(&format!("name {i} {n}\n"));
        }
    }
    Ok(out)
}

/// Appends the structured shape block produced by classification.
pub fn append_shape_block(text: &mut String, shape: &ShapeSpec) {
    text.push_str(&format!("shape {}\n", shape.summary()));
    for (i, c) in shape.components.iter().enumerate() {
        let idx: Vec<String> = c.edge_index_profile.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!(
            "component {i} {} lo={} hi={} size={} idx={}\n",
            c.kind.label(),
            c.lo,
            c.hi,
            c.element_count,
            idx.join(",")
        ));
    }
}

pub(super) fn parse(text: &str) -> Result<CdLattice, CdlError> {
    let mut header: Vec<(usize, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let no_comment = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let t = no_comment.trim();
        if !t.is_empty() {
            header.push((idx + 1, t.to_string()));
        }
    }
    let mut it = header.into_iter().peekable();
    let expect_kv = |line: Option<(usize, String)>, key: &str| -> Result<(usize, String), CdlError> {
        let (ln, text) = line.ok_or_else(|| syntax(0, format!("missing `{key}` line")))?;
        text.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .map(|v| (ln, v.trim().to_string()))
            .ok_or_else(|| syntax(ln, format!("expected `{key} ...`, got {text:?}")))
    };

    let (ln, magic) = it.next().ok_or_else(|| syntax(1, "empty document"))?;
    if magic != "cdl 1" {
        return Err(syntax(ln, format!("expected `cdl 1`, got {magic:?}")));
    }
    let (ln, pv) = expect_kv(it.next(), "p")?;
    let p_val: u64 = pv.parse().map_err(|_| syntax(ln, "bad p"))?;
    if p_val >= 10 {
        return Err(CdlError::RowEncoding(p_val));
    }
    let p = Prime::new(p_val).map_err(|_| CdlError::NotPrime(p_val))?;
    let (ln, dv) = expect_kv(it.next(), "vdim")?;
    let v_dim: usize = dv.parse().map_err(|_| syntax(ln, "bad vdim"))?;
    let (ln, wv) = expect_kv(it.next(), "wdim")?;
    let w_dim: usize = wv.parse().map_err(|_| syntax(ln, "bad wdim"))?;
    let (ln, mv) = expect_kv(it.next(), "mode")?;
    let mode = LatticeMode::parse(&mv).ok_or_else(|| syntax(ln, format!("bad mode {mv:?}")))?;
    let (ln, sv) = expect_kv(it.next(), "measure")?;
    let measure: usize = sv.parse().map_err(|_| syntax(ln, "bad measure"))?;

    let mut members: Vec<Subspace> = Vec::new();
    let mut covers: Vec<(usize, usize)> = Vec::new();
    let mut names: Vec<(usize, String)> = Vec::new();
    for (ln, text) in it {
        let mut words = text.split_whitespace();
        match words.next() {
            Some("member") => {
                let dim: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| syntax(ln, "member needs a dimension"))?;
                let mut rows: Vec<Vec<u64>> = Vec::with_capacity(dim);
                for _ in 0..dim {
                    let tok = words
                        .next()
                        .ok_or_else(|| syntax(ln, "member has fewer rows than its dimension"))?;
                    if tok.len() != v_dim {
                        return Err(syntax(
                            ln,
                            format!("row {tok:?} must have {v_dim} digits"),
                        ));
                    }
                    let mut row = Vec::with_capacity(v_dim);
                    for ch in tok.chars() {
                        let digit = ch
                            .to_digit(10)
                            .ok_or_else(|| syntax(ln, format!("bad digit {ch:?}")))?
                            as u64;
                        if digit >= p_val {
                            return Err(syntax(ln, format!("digit {digit} >= p")));
                        }
                        row.push(digit);
                    }
                    rows.push(row);
                }
                if words.next().is_some() {
                    return Err(syntax(ln, "member has more rows than its dimension"));
                }
                let s = Subspace::from_residue_rows(&rows, v_dim, p);
                if s.dim() != dim {
                    return Err(syntax(ln, "member rows are not independent"));
                }
                members.push(s);
            }
            Some("cover") => {
                let i: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| syntax(ln, "cover needs two indices"))?;
                let j: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| syntax(ln, "cover needs two indices"))?;
                covers.push((i, j));
            }
            Some("name") => {
                let i: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| syntax(ln, "name needs an index"))?;
                let label = words.collect::<Vec<_>>().join(" ");
                if label.is_empty() {
                    return Err(syntax(ln, "name needs a label"));
                }
                names.push((i, label));
            }
            // shape blocks are regenerated by classification
            Some("shape") | Some("component") => {}
            other => {
                return Err(syntax(ln, format!("unexpected line starting with {other:?}")));
            }
        }
    }
    if members.is_empty() {
        return Err(syntax(0, "lattice has no members"));
    }
    // downstream lookups binary-search the member list
    if !members.windows(2).all(|w| w[0] < w[1]) {
        return Err(syntax(0, "members are not in strict canonical order"));
    }
    let n = members.len();
    for &(i, j) in &covers {
        if i >= n || j >= n {
            return Err(syntax(0, format!("cover ({i}, {j}) out of range")));
        }
        if members[i].dim() <= members[j].dim() {
            return Err(syntax(0, format!("cover ({i}, {j}) is not order-decreasing")));
        }
    }
    let mut name_vec: Vec<Option<String>> = vec![None; n];
    for (i, label) in names {
        if i >= n {
            return Err(syntax(0, format!("name index {i} out of range")));
        }
        name_vec[i] = Some(label);
    }
    // the h/c split is not stored; reconstruct it from the first (minimal)
    // member the same way the builder records it
    let h_exp = w_dim + members.first().map(|m| m.dim()).unwrap_or(0);
    let max_measure = crate::presentation::MeasureExponent {
        h_exp,
        c_exp: measure.saturating_sub(h_exp),
    };
    Ok(CdLattice {
        p: p_val,
        v_dim,
        w_dim,
        mode,
        max_measure,
        members,
        names: name_vec,
        covers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdengine::{compute_cd_full, DEFAULT_BUDGET};
    use crate::presentation::CentralPresentation;

    #[test]
    fn golden_heisenberg_bytes() {
        let h = CentralPresentation::heisenberg(Prime::new(2).unwrap());
        let (lat, _) = compute_cd_full(&h, DEFAULT_BUDGET, 1).unwrap();
        assert_eq!(
            lat.serialize().unwrap(),
            "cdl 1\n\
             p 2\n\
             vdim 2\n\
             wdim 1\n\
             mode full\n\
             measure 4\n\
             member 0\n\
             member 1 01\n\
             member 1 10\n\
             member 1 11\n\
             member 2 10 01\n\
             cover 1 0\n\
             cover 2 0\n\
             cover 3 0\n\
             cover 4 1\n\
             cover 4 2\n\
             cover 4 3\n"
        );
    }

    #[test]
    fn round_trip_heisenberg() {
        let h = CentralPresentation::heisenberg(Prime::new(2).unwrap());
        let (mut lat, _) = compute_cd_full(&h, DEFAULT_BUDGET, 1).unwrap();
        lat.names[0] = Some("ZP".into());
        let text = lat.serialize().unwrap();
        let back = CdLattice::parse(&text).unwrap();
        assert_eq!(back, lat);
        assert_eq!(back.serialize().unwrap(), text);
    }

    #[test]
    fn shape_block_is_tolerated() {
        let h = CentralPresentation::heisenberg(Prime::new(2).unwrap());
        let (lat, _) = compute_cd_full(&h, DEFAULT_BUDGET, 1).unwrap();
        let mut text = lat.serialize().unwrap();
        append_shape_block(&mut text, &lat.classify().unwrap());
        let back = CdLattice::parse(&text).unwrap();
        assert_eq!(back.members, lat.members);
    }

    #[test]
    fn bad_digit_rejected() {
        let doc = "cdl 1\np 2\nvdim 2\nwdim 1\nmode full\nmeasure 4\nmember 1 12\n";
        assert!(matches!(
            CdLattice::parse(doc),
            Err(CdlError::Syntax { line: 7, .. })
        ));
    }

    #[test]
    fn large_prime_encoding_rejected() {
        let doc = "cdl 1\np 11\nvdim 1\nwdim 0\nmode full\nmeasure 1\nmember 0\n";
        assert_eq!(CdLattice::parse(doc).unwrap_err(), CdlError::RowEncoding(11));
    }

    #[test]
    fn unsorted_members_rejected() {
        let doc = "cdl 1\np 2\nvdim 2\nwdim 1\nmode predicted\nmeasure 4\nmember 1 10\nmember 0\n";
        assert!(matches!(
            CdLattice::parse(doc),
            Err(CdlError::Syntax { .. })
        ));
    }
}
