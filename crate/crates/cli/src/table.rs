//! Algebra selectors and the CSV dump of structure tables.

use std::fmt::Write;

use anyhow::{bail, Context, Result};
use cdtorus::cayley_dickson::{base_real, complex, octonions, quaternions};
use cdtorus::tensor::TensorAlgebra;
use cdtorus::{AlgebraTable, ResourceGuard};

/// Parses `R`, `C`, `H`, `O` or `B(p,q)`.
pub fn parse_algebra(selector: &str, guard: &ResourceGuard) -> Result<AlgebraTable> {
    let compact: String = selector.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "R" => return Ok(base_real()),
        "C" => return Ok(complex()),
        "H" => return Ok(quaternions()),
        "O" => return Ok(octonions()),
        _ => {}
    }
    let Some(args) = compact.strip_prefix("B(").and_then(|s| s.strip_suffix(')')) else {
        bail!("unknown algebra {selector:?}; expected R, C, H, O or B(p,q)");
    };
    let Some((p, q)) = args.split_once(',') else {
        bail!("expected B(p,q), got {selector:?}");
    };
    let p = p
        .parse()
        .with_context(|| format!("bad p in {selector:?}"))?;
    let q = q
        .parse()
        .with_context(|| format!("bad q in {selector:?}"))?;
    Ok(TensorAlgebra::build(p, q, guard)?.table().clone())
}

/// Header `j,0,1,..`; row `j` lists `e_j e_k` as `+l` or `-l`.
pub fn table_csv(t: &AlgebraTable) -> String {
    let n = t.dim();
    let mut out = String::from("j");
    for k in 0..n {
        write!(out, ",{k}").unwrap();
    }
    out.push('\n');
    for j in 0..n {
        write!(out, "{j}").unwrap();
        for k in 0..n {
            let (s, l) = t.product(j, k);
            write!(out, ",{s}{l}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_table() {
        let csv = table_csv(&parse_algebra("C", &ResourceGuard::default()).unwrap());
        assert_eq!(csv, "j,0,1\n0,+0,+1\n1,+1,-0\n");
    }

    #[test]
    fn quaternion_row_e1() {
        // e1 e0 = e1, e1 e1 = -e0, e1 e2 = e3, e1 e3 = -e2
        let csv = table_csv(&parse_algebra("H", &ResourceGuard::default()).unwrap());
        assert_eq!(csv.lines().nth(2), Some("1,+1,-0,+3,-2"));
    }

    #[test]
    fn parses_tensor_selector() {
        let t = parse_algebra("B( 0 , 1 )", &ResourceGuard::default()).unwrap();
        assert_eq!(t.dim(), 16);
        assert!(parse_algebra("S", &ResourceGuard::default()).is_err());
        assert!(parse_algebra("B(1)", &ResourceGuard::default()).is_err());
        assert!(parse_algebra("B(0,3)", &ResourceGuard::default()).is_err());
    }
}
