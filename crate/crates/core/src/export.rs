//! Plain-text matrix files.
//!
//! Each matrix is a header line `d p` followed by `d` rows of `d` residues
//! separated by single spaces. Consecutive matrices are separated by one
//! blank line. Markings are written in tuple order.

use std::fmt::Write as _;

use crate::algebra::MatFp;
use crate::error::{Error, Result};

pub fn write_matrix(m: &MatFp, out: &mut String) {
    let d = m.dim();
    let _ = writeln!(out, "{} {}", d, m.modulus());
    for i in 0..d {
        let row: Vec<String> = (0..d).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

pub fn write_matrices(ms: &[MatFp]) -> String {
    let mut out = String::new();
    for (k, m) in ms.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        write_matrix(m, &mut out);
    }
    out
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("matrix file line {line}: {msg}"))
}

pub fn parse_matrices(text: &str) -> Result<Vec<MatFp>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut out = Vec::new();
    while let Some((ln, header)) = lines.next() {
        if header.is_empty() {
            continue;
        }
        let nums: Vec<&str> = header.split_whitespace().collect();
        let [d, p] = nums[..] else {
            return Err(parse_err(ln, "expected header `d p`"));
        };
        let d: usize = d.parse().map_err(|e| parse_err(ln, e))?;
        let p: u32 = p.parse().map_err(|e| parse_err(ln, e))?;
        let mut entries = Vec::with_capacity(d * d);
        for _ in 0..d {
            let (ln, row) = lines.next().ok_or_else(|| parse_err(ln, "truncated matrix"))?;
            let vals: Vec<u32> = row
                .split_whitespace()
                .map(|x| x.parse::<u32>().map_err(|e| parse_err(ln, e)))
                .collect::<Result<_>>()?;
            if vals.len() != d {
                return Err(parse_err(ln, format!("expected {d} entries, got {}", vals.len())));
            }
            if let Some(&v) = vals.iter().find(|&&v| v >= p) {
                return Err(parse_err(ln, format!("entry {v} is not a residue mod {p}")));
            }
            entries.extend(vals);
        }
        out.push(MatFp::new(d, p, entries)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::amenable_two_marking;

    #[test]
    fn identity_pattern() {
        let text = write_matrices(&[MatFp::identity(3, 5)]);
        assert_eq!(text, "3 5\n1 0 0\n0 1 0\n0 0 1\n");
    }

    #[test]
    fn round_trip() {
        let b = amenable_two_marking(7, 3).unwrap();
        let text = write_matrices(&b.elements);
        assert_eq!(text.matches("\n\n").count(), 1);
        assert_eq!(parse_matrices(&text).unwrap(), b.elements);
    }

    #[test]
    fn malformed_input() {
        assert!(parse_matrices("2 3\n1 0\n").is_err());
        assert!(parse_matrices("2 3\n1 0\n0 3\n").is_err());
        assert!(parse_matrices("2\n").is_err());
        assert!(parse_matrices("").unwrap().is_empty());
    }
}
