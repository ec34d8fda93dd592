//! CGP v1: line-oriented UTF-8 text format for central presentations.
//!
//! ```text
//! cgp 1
//! p 2
//! noncentral x y
//! central z
//! comm x y = z
//! ```
//!
//! `#` starts a comment. Generator order on the `noncentral`/`central`
//! lines fixes the V/W coordinates. Each `comm gi gj = term [* term]...`
//! line gives the commutator of a pair listed in `noncentral` order
//! (`gi` strictly before `gj`); a term is `zname` or `zname^exp` with the
//! exponent reduced mod p and defaulting to 1. Pairs without a `comm`
//! line commute. Serialization emits lines in coordinate order and
//! round-trips bit-exactly.

use thiserror::Error;

use super::{CentralPresentation, PresentationError};
use crate::gfplin::Prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CgpError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown generator {name:?}")]
    UnknownGenerator { line: usize, name: String },
    #[error("line {line}: generators out of order: {a:?} must be listed before {b:?}")]
    OrderViolation { line: usize, a: String, b: String },
    #[error("line {line}: duplicate comm line for pair ({a:?}, {b:?})")]
    DuplicatePair { line: usize, a: String, b: String },
    #[error("invalid presentation: {0}")]
    Invalid(#[from] PresentationError),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

fn syntax(line: usize, msg: impl Into<String>) -> CgpError {
    CgpError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub fn parse(text: &str) -> Result<CentralPresentation, CgpError> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let no_comment = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let trimmed = no_comment.trim();
        if !trimmed.is_empty() {
            lines.push((idx + 1, trimmed.to_string()));
        }
    }
    let mut it = lines.into_iter();

    let (ln, header) = it.next().ok_or_else(|| syntax(1, "empty document"))?;
    if header != "cgp 1" {
        return Err(syntax(ln, format!("expected `cgp 1`, got {header:?}")));
    }

    let (ln, pline) = it.next().ok_or_else(|| syntax(ln, "missing `p` line"))?;
    let p_val: u64 = pline
        .strip_prefix("p ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| syntax(ln, "expected `p <prime>`"))?;
    let p = Prime::new(p_val).map_err(|_| CgpError::NotPrime(p_val))?;

    let (ln, vline) = it
        .next()
        .ok_or_else(|| syntax(ln, "missing `noncentral` line"))?;
    let v_labels: Vec<String> = vline
        .strip_prefix("noncentral")
        .ok_or_else(|| syntax(ln, "expected `noncentral ...`"))?
        .split_whitespace()
        .map(String::from)
        .collect();

    let (mut ln, wline) = it.next().ok_or_else(|| syntax(ln, "missing `central` line"))?;
    let w_labels: Vec<String> = wline
        .strip_prefix("central")
        .ok_or_else(|| syntax(ln, "expected `central ...`"))?
        .split_whitespace()
        .map(String::from)
        .collect();

    let v_index = |line: usize, name: &str| -> Result<usize, CgpError> {
        v_labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| CgpError::UnknownGenerator {
                line,
                name: name.to_string(),
            })
    };
    let w_index = |line: usize, name: &str| -> Result<usize, CgpError> {
        w_labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| CgpError::UnknownGenerator {
                line,
                name: name.to_string(),
            })
    };

    let mut pairs: Vec<(usize, usize, Vec<u64>)> = Vec::new();
    for (line, text) in it {
        ln = line;
        let rest = text
            .strip_prefix("comm ")
            .ok_or_else(|| syntax(ln, format!("expected `comm ...`, got {text:?}")))?;
        let (lhs, rhs) = rest
            .split_once('=')
            .ok_or_else(|| syntax(ln, "expected `comm gi gj = ...`"))?;
        let gens: Vec<&str> = lhs.split_whitespace().collect();
        if gens.len() != 2 {
            return Err(syntax(ln, "expected exactly two generators before `=`"));
        }
        let i = v_index(ln, gens[0])?;
        let j = v_index(ln, gens[1])?;
        if i >= j {
            return Err(CgpError::OrderViolation {
                line: ln,
                a: gens[0].to_string(),
                b: gens[1].to_string(),
            });
        }
        if pairs.iter().any(|&(a, b, _)| (a, b) == (i, j)) {
            return Err(CgpError::DuplicatePair {
                line: ln,
                a: gens[0].to_string(),
                b: gens[1].to_string(),
            });
        }
        let mut vec_w = vec![0u64; w_labels.len()];
        for term in rhs.split('*') {
            let term = term.trim();
            if term.is_empty() {
                return Err(syntax(ln, "empty term on right-hand side"));
            }
            let (name, exp) = match term.split_once('^') {
                Some((n, e)) => {
                    let exp: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| syntax(ln, format!("bad exponent {e:?}")))?;
                    (n.trim(), exp)
                }
                None => (term, 1),
            };
            let t = w_index(ln, name)?;
            vec_w[t] = p.add(vec_w[t], p.reduce_i64(exp));
        }
        pairs.push((i, j, vec_w));
    }

    Ok(CentralPresentation::new(p, v_labels, w_labels, &pairs)?)
}

pub fn serialize(pres: &CentralPresentation) -> String {
    let mut out = String::new();
    out.push_str("cgp 1\n");
    out.push_str(&format!("p {}\n", pres.modulus().get()));
    out.push_str("noncentral");
    for l in pres.v_labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    out.push_str("central");
    for l in pres.w_labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    let d = pres.v_dim();
    for i in 0..d {
        for j in i + 1..d {
            let c = pres.comm(i, j);
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            out.push_str(&format!(
                "comm {} {} =",
                pres.v_labels()[i],
                pres.v_labels()[j]
            ));
            let mut first = true;
            for (t, &x) in c.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if first {
                    out.push(' ');
                    first = false;
                } else {
                    out.push_str(" * ");
                }
                out.push_str(&pres.w_labels()[t]);
                if x != 1 {
                    out.push_str(&format!("^{x}"));
                }
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEISENBERG: &str = "cgp 1\np 2\nnoncentral x y\ncentral z\ncomm x y = z\n";

    #[test]
    fn heisenberg_round_trip() {
        let g = parse(HEISENBERG).unwrap();
        assert_eq!(g, CentralPresentation::heisenberg(Prime::new(2).unwrap()));
        assert_eq!(serialize(&g), HEISENBERG);
        assert_eq!(parse(&serialize(&g)).unwrap(), g);
    }

    #[test]
    fn comments_and_defaults() {
        let doc = "# header\ncgp 1\np 3\nnoncentral a b c # three generators\ncentral z1 z2\ncomm a b = z1^2 * z2\n";
        let g = parse(doc).unwrap();
        assert_eq!(g.comm(0, 1), &[2, 1]);
        // omitted pair commutes
        assert_eq!(g.comm(0, 2), &[0, 0]);
        assert_eq!(g.comm(1, 0), &[1, 2]); // negated transpose
    }

    #[test]
    fn unknown_generator_rejected() {
        let doc = "cgp 1\np 2\nnoncentral x y\ncentral z\ncomm x q = z\n";
        assert!(matches!(
            parse(doc),
            Err(CgpError::UnknownGenerator { line: 5, .. })
        ));
    }

    #[test]
    fn order_violation_rejected() {
        let doc = "cgp 1\np 2\nnoncentral x y\ncentral z\ncomm y x = z\n";
        assert!(matches!(parse(doc), Err(CgpError::OrderViolation { .. })));
    }

    #[test]
    fn negative_exponents_reduce() {
        let doc = "cgp 1\np 5\nnoncentral x y\ncentral z\ncomm x y = z^-1\n";
        let g = parse(doc).unwrap();
        assert_eq!(g.comm(0, 1), &[4]);
    }

    #[test]
    fn abelian_document() {
        let doc = "cgp 1\np 2\nnoncentral x1 x2 x3\ncentral\n";
        let g = parse(doc).unwrap();
        assert_eq!(g.v_dim(), 3);
        assert_eq!(g.w_dim(), 0);
        assert_eq!(serialize(&g), doc);
    }

    #[test]
    fn trivial_document() {
        let doc = "cgp 1\np 3\nnoncentral\ncentral\n";
        let g = parse(doc).unwrap();
        assert_eq!(g.v_dim(), 0);
        assert_eq!(parse(&serialize(&g)).unwrap(), g);
    }

    #[test]
    fn syntax_error_carries_line_number() {
        let doc = "cgp 1\np 2\nnoncentral x y\ncentral z\nfoo bar\n";
        match parse(doc) {
            Err(CgpError::Syntax { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
