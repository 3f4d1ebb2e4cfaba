//! Line-based algebra description files.
//!
//! ```text
//! # comment
//! name   trunc3
//! field  Q
//! basis  1:0 x:0 x^2:0
//! unit   1 0 0
//! mult   x x x^2 1
//! diff   e y 1
//! weights 0 1 2
//! ```
//!
//! A file may instead hold one builder line: `field`, `trunc_poly N`,
//! `matrix N` or `path_algebra V S->T ...`, optionally with `name`.

use crate::algebra::{
    build_field, build_matrix_algebra, build_named_path_algebra, build_truncated_polynomial_algebra, AlgebraError,
    AlgebraTable, DgAlgebra, ValidationReport,
};
use crate::exactlin::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("validation failed: {0}")]
    Validation(ValidationReport),
}

fn parse_err(line: usize, message: impl Into<String>) -> AlgebraFileError {
    AlgebraFileError::Parse { line, message: message.into() }
}

#[derive(Default)]
struct Draft {
    name: Option<String>,
    field_seen: bool,
    labels: Vec<String>,
    degrees: Vec<i32>,
    unit: Option<Vec<Rational>>,
    mult: Vec<(usize, usize, usize, Rational)>,
    diff: Vec<(usize, usize, Rational)>,
    weights: Option<Vec<i32>>,
    builder: Option<(usize, DgAlgebra)>,
}

impl Draft {
    fn index(&self, line: usize, token: &str) -> Result<usize, AlgebraFileError> {
        if let Some(i) = self.labels.iter().position(|l| l == token) {
            return Ok(i);
        }
        match token.parse::<usize>() {
            Ok(i) if i < self.labels.len() => Ok(i),
            _ => Err(parse_err(line, format!("unknown basis element {token:?}"))),
        }
    }
}

fn rational(line: usize, token: &str) -> Result<Rational, AlgebraFileError> {
    token.parse().map_err(|_| parse_err(line, format!("invalid rational {token:?}")))
}

fn integer<T: std::str::FromStr>(line: usize, token: &str) -> Result<T, AlgebraFileError> {
    token.parse().map_err(|_| parse_err(line, format!("invalid integer {token:?}")))
}

fn builder(line: usize, key: &str, args: &[&str]) -> Result<Option<DgAlgebra>, AlgebraFileError> {
    let one_int = |what: &str, min: usize| -> Result<usize, AlgebraFileError> {
        match args {
            [n] => {
                let n: usize = integer(line, n)?;
                if n < min {
                    return Err(parse_err(line, format!("{what} needs n >= {min}")));
                }
                Ok(n)
            }
            _ => Err(parse_err(line, format!("{what} takes one integer"))),
        }
    };
    Ok(Some(match key {
        "field" if args.is_empty() => build_field(),
        "trunc_poly" => build_truncated_polynomial_algebra(one_int("trunc_poly", 2)?),
        "matrix" => build_matrix_algebra(one_int("matrix", 1)?),
        "path_algebra" => {
            let (v, arrows) = args.split_first().ok_or_else(|| parse_err(line, "path_algebra needs a vertex count"))?;
            let v: usize = integer(line, v)?;
            if v == 0 {
                return Err(parse_err(line, "path_algebra needs a vertex"));
            }
            let arrows = arrows
                .iter()
                .map(|a| {
                    let (s, t) = a.split_once("->").ok_or_else(|| parse_err(line, format!("bad arrow {a:?}")))?;
                    Ok((integer(line, s)?, integer(line, t)?))
                })
                .collect::<Result<Vec<(usize, usize)>, AlgebraFileError>>()?;
            build_named_path_algebra("path", v, &arrows, None).map_err(|e| parse_err(line, e.to_string()))?
        }
        _ => return Ok(None),
    }))
}

/// Parse and validate an algebra description.
pub fn parse_algebra_file(text: &str) -> Result<DgAlgebra, AlgebraFileError> {
    let mut d = Draft::default();
    let mut table_line = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let (key, args) = (tokens[0], &tokens[1..]);
        match key {
            "name" => d.name = Some(args.join(" ")),
            "field" if !args.is_empty() => {
                if args != ["Q"] {
                    return Err(parse_err(line, "only the field Q is supported"));
                }
                d.field_seen = true;
            }
            "basis" => {
                table_line.get_or_insert(line);
                for b in args {
                    let (l, deg) = b.rsplit_once(':').unwrap_or((b, "0"));
                    if d.labels.iter().any(|x| x == l) {
                        return Err(parse_err(line, format!("duplicate basis label {l:?}")));
                    }
                    d.labels.push(l.to_string());
                    d.degrees.push(integer(line, deg)?);
                }
            }
            "unit" => {
                if args.len() != d.labels.len() {
                    return Err(parse_err(line, "unit needs one coordinate per basis element"));
                }
                d.unit = Some(args.iter().map(|t| rational(line, t)).collect::<Result<_, _>>()?);
            }
            "mult" => match args {
                [i, j, k, c] => {
                    let e = (d.index(line, i)?, d.index(line, j)?, d.index(line, k)?, rational(line, c)?);
                    d.mult.push(e);
                }
                _ => return Err(parse_err(line, "mult takes i j k coefficient")),
            },
            "diff" => match args {
                [i, k, c] => {
                    let e = (d.index(line, i)?, d.index(line, k)?, rational(line, c)?);
                    d.diff.push(e);
                }
                _ => return Err(parse_err(line, "diff takes i k coefficient")),
            },
            "weights" => {
                d.weights = Some(args.iter().map(|t| integer(line, t)).collect::<Result<_, _>>()?);
            }
            _ => match builder(line, key, args)? {
                Some(a) => {
                    if d.builder.is_some() {
                        return Err(parse_err(line, "more than one builder line"));
                    }
                    d.builder = Some((line, a));
                }
                None => return Err(parse_err(line, format!("unknown directive {key:?}"))),
            },
        }
    }
    if let Some((line, a)) = d.builder {
        if let Some(t) = table_line {
            return Err(parse_err(t.max(line), "builder line cannot be combined with a table"));
        }
        return Ok(match d.name {
            Some(n) => a.with_name(n),
            None => a,
        });
    }
    if d.labels.is_empty() {
        return Err(parse_err(text.lines().count().max(1), "no basis given"));
    }
    let _ = d.field_seen;
    let table = AlgebraTable {
        name: d.name.unwrap_or_else(|| "algebra".into()),
        unit: d.unit.unwrap_or_else(|| vec![Rational::zero(); d.labels.len()]),
        labels: d.labels,
        degrees: d.degrees,
        mult: d.mult,
        diff: d.diff,
    };
    let a = DgAlgebra::from_table(&table).map_err(|e| match e {
        AlgebraError::Invalid(r) => AlgebraFileError::Validation(r),
        other => parse_err(0, other.to_string()),
    })?;
    match d.weights {
        None => Ok(a),
        Some(w) => {
            // Weights are given in file order; the unit moves to position 0.
            let reordered = reorder_like(&table, &a, &w);
            a.with_weights(reordered).ok_or_else(|| {
                AlgebraFileError::Validation(ValidationReport {
                    violations: vec![crate::algebra::Violation {
                        axiom: "weights are multiplicative".into(),
                        witness: w.iter().map(i32::to_string).collect(),
                    }],
                })
            })
        }
    }
}

/// Map per-label data from table order to algebra order.
fn reorder_like(t: &AlgebraTable, a: &DgAlgebra, w: &[i32]) -> Vec<i32> {
    a.labels()
        .iter()
        .enumerate()
        .map(|(i, l)| match t.labels.iter().position(|x| x == l) {
            Some(j) if j < w.len() => w[j],
            _ if i == 0 => 0,
            _ => -1,
        })
        .collect()
}
