//! Parsing of `--group` and `--form` arguments.

use std::collections::HashSet;

use metadual_core::exact::{IntMatrix, QmodZ};
use metadual_core::quad_form::TorsionQuadForm;
use metadual_core::root_datum::{catalog, BasedRootDatum};
use metadual_core::{Error, Result};

use crate::report::{DatumJson, FormJson, Int};

/// Reads `@path` arguments from disk and `-` from stdin; anything else is
/// returned as is.
pub fn resolve(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
            .map_err(|e| Error::MalformedSpec(format!("cannot read stdin: {e}")))?;
        return Ok(buf);
    }
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::MalformedSpec(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn int_rows(rows: &[Vec<Int>], rank: usize, what: &str) -> Result<IntMatrix> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let parsed: Option<Vec<_>> = row.iter().map(Int::to_bigint).collect();
        let parsed = parsed.ok_or_else(|| Error::MalformedSpec(format!("non-integer entry in {what}")))?;
        out.push(parsed);
    }
    IntMatrix::from_rows(rank, out)
}

/// A catalog name, or a JSON object
/// `{"rank": n, "simple_coroots": [[..]], "simple_roots": [[..]]}`.
pub fn parse_group(arg: &str) -> Result<BasedRootDatum> {
    let text = resolve(arg)?;
    let text = text.trim();
    if !text.starts_with('{') {
        return catalog(text);
    }
    let d: DatumJson =
        serde_json::from_str(text).map_err(|e| Error::MalformedSpec(format!("group JSON: {e}")))?;
    if d.simple_coroots.len() != d.simple_roots.len() {
        return Err(Error::MalformedSpec(format!(
            "{} simple coroots but {} simple roots",
            d.simple_coroots.len(),
            d.simple_roots.len()
        )));
    }
    BasedRootDatum::new(
        d.rank,
        int_rows(&d.simple_coroots, d.rank, "simple_coroots")?,
        int_rows(&d.simple_roots, d.rank, "simple_roots")?,
    )
}

/// `{"diag": ["a/b", ..], "offdiag": [{"i": .., "j": .., "value": "a/b"}]}`
/// with `i < j`; omitted entries are zero, and an omitted `diag` means all
/// zero.
pub fn parse_form(arg: &str, rank: usize) -> Result<TorsionQuadForm> {
    let text = resolve(arg)?;
    let f: FormJson =
        serde_json::from_str(text.trim()).map_err(|e| Error::MalformedSpec(format!("form JSON: {e}")))?;
    let diag = if f.diag.is_empty() {
        vec![QmodZ::zero(); rank]
    } else if f.diag.len() != rank {
        return Err(Error::DimensionMismatch {
            expected: rank,
            found: f.diag.len(),
        });
    } else {
        f.diag.iter().map(|s| s.parse()).collect::<Result<Vec<QmodZ>>>()?
    };
    let mut seen = HashSet::new();
    let mut offdiag = Vec::new();
    for e in &f.offdiag {
        if e.i >= e.j {
            return Err(Error::MalformedSpec(format!("offdiag entry ({}, {}) needs i < j", e.i, e.j)));
        }
        if e.j >= rank {
            return Err(Error::IndexOutOfRange { index: e.j, len: rank });
        }
        if !seen.insert((e.i, e.j)) {
            return Err(Error::MalformedSpec(format!("duplicate offdiag entry ({}, {})", e.i, e.j)));
        }
        offdiag.push((e.i, e.j, e.value.parse()?));
    }
    TorsionQuadForm::new(diag, &offdiag)
}

/// `"0,2"` → `[0, 2]`; the empty string is the empty subset.
pub fn parse_subset(arg: &str) -> Result<Vec<usize>> {
    let arg = arg.trim();
    if arg.is_empty() {
        return Ok(Vec::new());
    }
    arg.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::MalformedSpec(format!("bad subset index `{s}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        assert_eq!(parse_group("SL2").unwrap(), catalog("SL2").unwrap());
        let rd = parse_group(r#"{"rank": 1, "simple_coroots": [[1]], "simple_roots": [[2]]}"#).unwrap();
        assert_eq!(rd, catalog("SL2").unwrap());
        let big = parse_group(r#"{"rank": 1, "simple_coroots": [["1"]], "simple_roots": [[2]]}"#).unwrap();
        assert_eq!(big, rd);
        for bad in [
            r#"{"rank": 1, "simple_coroots": [[1]]}"#,
            r#"{"rank": 1, "simple_coroots": [[1]], "simple_roots": [[2]], "x": 1}"#,
            r#"{"rank": 2, "simple_coroots": [[1]], "simple_roots": [[2]]}"#,
            r#"{"rank": 1, "simple_coroots": [[1.5]], "simple_roots": [[2]]}"#,
            r#"{"rank": 1, "simple_coroots": [], "simple_roots": [[2]]}"#,
            "{",
            "E8",
        ] {
            assert!(parse_group(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn forms() {
        let q = parse_form(r#"{"diag": ["1/4", "0"], "offdiag": [{"i": 0, "j": 1, "value": "1/3"}]}"#, 2).unwrap();
        assert_eq!(q.diag(), &[QmodZ::frac(1, 4), QmodZ::zero()]);
        assert_eq!(q.basis_pairing(0, 1), QmodZ::frac(1, 3));
        assert!(parse_form("{}", 3).unwrap().is_zero());
        for bad in [
            r#"{"diag": ["1/2"]}"#,
            r#"{"diag": ["1/0", "0"]}"#,
            r#"{"diag": ["x", "0"]}"#,
            r#"{"offdiag": [{"i": 1, "j": 0, "value": "1/2"}]}"#,
            r#"{"offdiag": [{"i": 0, "j": 2, "value": "1/2"}]}"#,
            r#"{"offdiag": [{"i": 0, "j": 1, "value": "1/2"}, {"i": 0, "j": 1, "value": "0"}]}"#,
            r#"{"diag": [0.5, 0]}"#,
            r#"{"dg": []}"#,
        ] {
            assert!(parse_form(bad, 2).is_err(), "{bad}");
        }
    }

    #[test]
    fn subsets() {
        assert_eq!(parse_subset("0,2").unwrap(), vec![0, 2]);
        assert_eq!(parse_subset(" 1 , 0 ").unwrap(), vec![1, 0]);
        assert!(parse_subset("").unwrap().is_empty());
        assert!(parse_subset("0,,1").is_err());
        assert!(parse_subset("-1").is_err());
    }
}
