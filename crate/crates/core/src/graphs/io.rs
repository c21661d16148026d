use std::fmt::Write as _;

use super::Graph;
use crate::ringlin::SparseMat;
use crate::{Error, Result};

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)))
}

fn parse_usize((line, tok): (usize, &str)) -> Result<usize> {
    tok.parse()
        .map_err(|e| Error::Parse(format!("line {line}: `{tok}`: {e}")))
}

/// Edge-list format: `N` on the first line, then one `u v` pair per line,
/// 0-indexed.
pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut it = tokens(text);
    let n = parse_usize(it.next().ok_or_else(|| Error::Parse("empty edge list".into()))?)?;
    let nums: Vec<usize> = it.map(parse_usize).collect::<Result<_>>()?;
    if nums.len() % 2 == 1 {
        return Err(Error::Parse("odd number of vertex indices".into()));
    }
    Graph::new(n, nums.chunks(2).map(|c| (c[0], c[1])))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Standard alist layout of a binary matrix: columns are variable nodes and
/// rows are checks; indices are 1-based with zero padding allowed.
pub fn write_alist(m: &SparseMat) -> String {
    let mt = m.transpose();
    let col_deg: Vec<usize> = (0..m.cols()).map(|c| mt.row(c).len()).collect();
    let row_deg: Vec<usize> = (0..m.rows()).map(|r| m.row(r).len()).collect();
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", m.cols(), m.rows());
    let _ = writeln!(
        s,
        "{} {}",
        col_deg.iter().max().copied().unwrap_or(0),
        row_deg.iter().max().copied().unwrap_or(0)
    );
    let _ = writeln!(s, "{}", join(&col_deg));
    let _ = writeln!(s, "{}", join(&row_deg));
    for c in 0..m.cols() {
        let idx: Vec<usize> = mt.row(c).iter().map(|e| e.0 + 1).collect();
        let _ = writeln!(s, "{}", join(&idx));
    }
    for r in 0..m.rows() {
        let idx: Vec<usize> = m.row(r).iter().map(|e| e.0 + 1).collect();
        let _ = writeln!(s, "{}", join(&idx));
    }
    s
}

/// Read an alist file into a binary matrix. The row lists must agree with the
/// column lists.
pub fn read_alist(text: &str) -> Result<SparseMat> {
    let nums: Vec<usize> = tokens(text).map(parse_usize).collect::<Result<_>>()?;
    let mut it = nums.into_iter();
    let mut next = || it.next().ok_or_else(|| Error::Parse("alist ended early".into()));
    let (cols, rows) = (next()?, next()?);
    let (max_c, max_r) = (next()?, next()?);
    let col_deg: Vec<usize> = (0..cols).map(|_| next()).collect::<Result<_>>()?;
    let row_deg: Vec<usize> = (0..rows).map(|_| next()).collect::<Result<_>>()?;
    let read_lists = |n: usize, deg: &[usize], max: usize, next: &mut dyn FnMut() -> Result<usize>| -> Result<Vec<Vec<usize>>> {
        (0..n)
            .map(|i| {
                let mut list = Vec::new();
                let mut k = 0;
                while list.len() < deg[i] {
                    let v = next()?;
                    k += 1;
                    if v != 0 {
                        list.push(v - 1);
                    } else if k > max {
                        return Err(Error::Parse("alist list shorter than its degree".into()));
                    }
                }
                Ok(list)
            })
            .collect()
    };
    let col_lists = read_lists(cols, &col_deg, max_c, &mut next)?;
    let row_lists = read_lists(rows, &row_deg, max_r, &mut next)?;
    let mut from_cols: Vec<(usize, usize)> = col_lists
        .iter()
        .enumerate()
        .flat_map(|(c, l)| l.iter().map(move |&r| (r, c)))
        .collect();
    let mut from_rows: Vec<(usize, usize)> = row_lists
        .iter()
        .enumerate()
        .flat_map(|(r, l)| l.iter().map(move |&c| (r, c)))
        .collect();
    from_cols.sort_unstable();
    from_rows.sort_unstable();
    if from_cols != from_rows {
        return Err(Error::Parse("alist row and column lists disagree".into()));
    }
    SparseMat::from_entries(rows, cols, 2, from_rows.into_iter().map(|(r, c)| (r, c, 1)))
}

impl Graph {
    /// Biadjacency matrix over `Z_q`: rows are right vertices, columns left.
    pub fn biadjacency(&self, q: u64) -> Result<SparseMat> {
        let nl = self
            .n_left()
            .ok_or_else(|| Error::Precondition("graph has no bipartition".into()))?;
        SparseMat::from_triples(
            self.n() - nl,
            nl,
            q,
            self.edges().iter().map(|&(u, v)| (v - nl, u, 1)),
        )
    }

    /// Bipartite graph whose biadjacency is the support of `m`.
    pub fn from_biadjacency(m: &SparseMat) -> Result<Graph> {
        let nl = m.cols();
        Graph::bipartite(nl, m.rows(), m.triples().map(|(r, c, _)| (c, nl + r)))
    }
}
