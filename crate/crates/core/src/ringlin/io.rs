use std::fmt::Write as _;

use super::SparseMat;
use crate::{Error, Result};

/// Parse the triples format: a header `rows cols q` followed by `r c v` lines.
/// Blank lines and lines starting with `#` are ignored.
pub fn read_triples(text: &str) -> Result<SparseMat> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
    let head = numbers::<3>(header, 0)?;
    let mut entries = Vec::new();
    for (i, line) in lines {
        let [r, c, v] = numbers::<3>(line, i)?;
        entries.push((r as usize, c as usize, v));
    }
    SparseMat::from_entries(head[0] as usize, head[1] as usize, head[2], entries)
}

fn numbers<const N: usize>(line: &str, lineno: usize) -> Result<[u64; N]> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != N {
        return Err(Error::Parse(format!(
            "line {}: expected {N} fields, found {}",
            lineno + 1,
            parts.len()
        )));
    }
    let mut out = [0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: `{p}`: {e}", lineno + 1)))?;
    }
    Ok(out)
}

pub fn write_triples(m: &SparseMat) -> String {
    let mut s = format!("{} {} {}\n", m.rows(), m.cols(), m.modulus());
    for (r, c, v) in m.triples() {
        let _ = writeln!(s, "{r} {c} {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = SparseMat::from_triples(3, 4, 5, [(0, 1, 3), (2, 3, 4), (1, 0, 1)]).unwrap();
        let text = write_triples(&m);
        assert_eq!(read_triples(&text).unwrap(), m);
        assert!(read_triples("2 2 2\n0 0 1\n0 0 1\n").is_err());
        assert!(read_triples("2 2\n").is_err());
        assert!(read_triples("# comment\n1 1 3\n\n0 0 2\n").is_ok());
    }
}
