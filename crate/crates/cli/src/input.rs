//! Parsers for graph shorthands, exact shifts and branch lists.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use equilap::graph::Graph;

use crate::CliError;

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    Graph::parse_edge_list(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// `path:k`, `cycle:k`, `star:k` (all on `k` vertices) or `file:PATH`.
pub fn graph_shorthand(s: &str) -> Result<Graph, CliError> {
    let (kind, arg) = s
        .split_once(':')
        .ok_or_else(|| CliError::Input(format!("graph `{s}`: expected KIND:ARG")))?;
    if kind == "file" {
        return read_graph(Path::new(arg));
    }
    let k: usize = arg
        .parse()
        .map_err(|_| CliError::Input(format!("graph `{s}`: `{arg}` is not a vertex count")))?;
    let g = match kind {
        "path" => Graph::path(k),
        "cycle" => Graph::cycle(k),
        "star" if k >= 1 => Graph::star(k - 1),
        "star" => Graph::path(0),
        _ => return Err(CliError::Input(format!("graph `{s}`: unknown kind `{kind}`"))),
    };
    g.map_err(|e| CliError::Input(format!("graph `{s}`: {e}")))
}

/// `p/q`, an integer, or a finite decimal read exactly (`1.8` is `9/5`).
pub fn exact_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Input(format!("`{s}` is not an exact rational"));
    let s = s.trim();
    if s.contains('/') {
        let r = BigRational::from_str(s).map_err(|_| bad())?;
        return Ok(r);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let denom = BigInt::from(10).pow(frac.len() as u32);
    let r = BigRational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

pub fn usize_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::Input(format!("`{p}` in `{s}` is not a nonnegative integer")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(exact_rational("1.8").unwrap(), rat(9, 5));
        assert_eq!(exact_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(exact_rational("3").unwrap(), rat(3, 1));
        assert_eq!(exact_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(exact_rational("7/3").unwrap(), rat(7, 3));
        for bad in ["", ".", "1e3", "abc", "1/0x", "0.1.2"] {
            assert!(exact_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn shorthands() {
        assert_eq!(graph_shorthand("path:3").unwrap(), Graph::path(3).unwrap());
        assert_eq!(graph_shorthand("cycle:5").unwrap().size(), 5);
        let s = graph_shorthand("star:4").unwrap();
        assert_eq!((s.order(), s.degree(1)), (4, 3));
        assert!(graph_shorthand("cycle:2").is_err());
        assert!(graph_shorthand("wheel:5").is_err());
        assert!(graph_shorthand("path").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(usize_list("2, 2,1").unwrap(), vec![2, 2, 1]);
        assert!(usize_list("2,x").is_err());
    }
}
