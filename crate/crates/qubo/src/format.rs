//! Line-oriented text format for QUBO models.
//!
//! ```text
//! # comment
//! n 3
//! lin 0 1.5
//! quad 0 2 -0.25
//! offset 4
//! ```
//!
//! `n` must come first. Pairs are written with `i < j`; on read either order
//! is accepted and repeated entries are summed. `offset` is optional.

use std::fmt::Write as _;

use crate::{QuboError, QuboModel, Result};

pub fn write_model(model: &QuboModel) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", model.n()).unwrap();
    for (i, &a) in model.linear().iter().enumerate() {
        if a != 0.0 {
            writeln!(out, "lin {i} {a}").unwrap();
        }
    }
    for (&(i, j), &b) in model.quadratic() {
        writeln!(out, "quad {i} {j} {b}").unwrap();
    }
    if model.offset() != 0.0 {
        writeln!(out, "offset {}", model.offset()).unwrap();
    }
    out
}

pub fn parse_model(text: &str) -> Result<QuboModel> {
    let mut n: Option<usize> = None;
    let mut linear = Vec::new();
    let mut pairs = Vec::new();
    let mut offset = 0.0;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let err = |msg: String| QuboError::Parse { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let index = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("bad index {s:?}")))
        };
        let real = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| err(format!("bad coefficient {s:?}")))
        };
        match (fields[0], n) {
            ("n", None) if fields.len() == 2 => {
                let dim = index(fields[1])?;
                n = Some(dim);
                linear = vec![0.0; dim];
            }
            ("n", Some(_)) => return Err(err("duplicate header".into())),
            (_, None) => return Err(err("expected `n <dim>` header first".into())),
            ("lin", Some(dim)) if fields.len() == 3 => {
                let i = index(fields[1])?;
                if i >= dim {
                    return Err(err(format!("index {i} out of range for n = {dim}")));
                }
                linear[i] += real(fields[2])?;
            }
            ("quad", Some(_)) if fields.len() == 4 => {
                pairs.push((index(fields[1])?, index(fields[2])?, real(fields[3])?));
            }
            ("offset", Some(_)) if fields.len() == 2 => offset += real(fields[1])?,
            (kw, _) => return Err(err(format!("unrecognized line {kw:?}"))),
        }
    }

    let n = n.ok_or(QuboError::Parse {
        line: 0,
        msg: "missing `n <dim>` header".into(),
    })?;
    debug_assert_eq!(linear.len(), n);
    QuboModel::from_terms(linear, pairs)?.with_offset(offset)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic() {
        let m = parse_model("# demo\nn 3\nlin 0 1\nlin 1 -2\nquad 1 0 3\n\n").unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.linear(), &[1.0, -2.0, 0.0]);
        assert_eq!(m.pair(0, 1), 3.0);
    }

    #[test]
    fn write_orders_pairs() {
        let m = QuboModel::from_terms(vec![0.5, 0.0], [(1, 0, 0.1)]).unwrap();
        assert_eq!(write_model(&m), "n 2\nlin 0 0.5\nquad 0 1 0.1\n");
    }

    #[test]
    fn round_trip_is_exact() {
        let m = QuboModel::random_dense(7, -5.0, 5.0, 11)
            .with_offset(1.0 / 3.0)
            .unwrap();
        assert_eq!(parse_model(&write_model(&m)).unwrap(), m);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_model("lin 0 1"), Err(QuboError::Parse { line: 1, .. })));
        assert!(matches!(parse_model("n 2\nlin 5 1"), Err(QuboError::Parse { line: 2, .. })));
        assert!(matches!(parse_model("n 2\nquad 0 0 1"), Err(QuboError::DiagonalPair(0))));
        assert!(matches!(parse_model("n 2\nfoo"), Err(QuboError::Parse { .. })));
        assert!(matches!(parse_model(""), Err(QuboError::Parse { line: 0, .. })));
    }
}
