//! Simple undirected graphs: named instances, random regular and biregular
//! generators, girth, distances and edge expansion.
//!
//! Edges are stored as `(u, v)` with `u < v`, sorted lexicographically; an
//! edge's id is its position in that list. Bipartite graphs keep their left
//! side as the vertices `0..n_left`.

mod expansion;
mod io;
mod random;

pub use expansion::{edge_expansion, edge_expansion_exact, edge_expansion_spectral, Expansion, ExpansionMode, EXACT_EXPANSION_LIMIT};
pub use io::{read_alist, read_edge_list, write_alist, write_edge_list};
pub use random::{random_biregular, random_regular, MAX_RETRIES};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_left: Option<usize>,
}

impl Graph {
    /// Build a simple graph; rejects loops, repeated edges and bad indices.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut es: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) outside {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at {u}")));
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort_unstable();
        if let Some(w) = es.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("repeated edge {:?}", w[0])));
        }
        Ok(Self { n, edges: es, n_left: None })
    }

    /// Bipartite graph with left side `0..n_left`; every edge must cross.
    pub fn bipartite(
        n_left: usize,
        n_right: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = Self::new(n_left + n_right, edges)?;
        if let Some(&(u, v)) = g.edges.iter().find(|&&(u, v)| (u < n_left) == (v < n_left)) {
            return Err(Error::InvalidInput(format!("edge ({u}, {v}) does not cross the bipartition")));
        }
        g.n_left = Some(n_left);
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn n_left(&self) -> Option<usize> {
        self.n_left
    }

    pub fn is_bipartite_marked(&self) -> bool {
        self.n_left.is_some()
    }

    /// Sorted neighbor lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        adj
    }

    /// For each vertex, the ids of its incident edges in increasing order.
    pub fn incident_edges(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(id);
            inc[v].push(id);
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        let first = *d.first()?;
        d.iter().all(|&x| x == first).then_some(first)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || bfs(&self.adjacency(), 0).iter().all(Option::is_some)
    }

    pub fn num_components(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            for (v, d) in bfs(&adj, s).into_iter().enumerate() {
                if d.is_some() {
                    seen[v] = true;
                }
            }
        }
        count
    }

    /// All-pairs shortest path lengths; `None` between components.
    pub fn distances(&self) -> Vec<Vec<Option<usize>>> {
        let adj = self.adjacency();
        (0..self.n).map(|s| bfs(&adj, s)).collect()
    }
}

/// Breadth-first distances from `src`.
pub fn bfs(adj: &[Vec<usize>], src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap_or(0);
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let adj = g.adjacency();
    let mut best: Option<usize> = None;
    for root in 0..g.n {
        let mut dist = vec![usize::MAX; g.n];
        let mut parent = vec![usize::MAX; g.n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Build one of the named graphs:
///
/// * `k4`: vertices `0..4`, all six edges.
/// * `petersen`: outer cycle `0..5`, spokes `i - i+5`, inner pentagram
///   `5+i - 5+(i+2)%5`.
/// * `heawood`: cycle `0..14` plus `i - i+5 (mod 14)` for even `i`.
/// * `cycle(n)`, `n >= 3`: edges `i - i+1 (mod n)`.
/// * `path(n)`, `n >= 1`: edges `i - i+1`.
/// * `complete(n)`.
/// * `complete_bipartite(a,b)`: left `0..a`, right `a..a+b`.
/// * `grid_torus(L)`, `L >= 3`: vertex `(x, y)` is `x*L + y`, joined to
///   `(x+1, y)` and `(x, y+1)` mod `L`.
pub fn named_graph(name: &str) -> Result<Graph> {
    let name = name.trim().to_ascii_lowercase();
    let unknown = || Error::UnknownGraph(name.clone());
    let (base, args) = match name.find('(') {
        Some(i) if name.ends_with(')') => {
            let args: Vec<usize> = name[i + 1..name.len() - 1]
                .split(',')
                .map(|a| a.trim().parse().map_err(|_| unknown()))
                .collect::<Result<_>>()?;
            (&name[..i], args)
        }
        Some(_) => return Err(unknown()),
        None => (name.as_str(), Vec::new()),
    };
    match (base, args.as_slice()) {
        ("k4", []) => complete(4),
        ("petersen", []) => {
            let mut e = Vec::new();
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, i + 5));
                e.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::new(10, e)
        }
        ("heawood", []) => {
            let mut e: Vec<(usize, usize)> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
            e.extend((0..14).step_by(2).map(|i| (i, (i + 5) % 14)));
            Graph::new(14, e)
        }
        ("cycle", &[n]) if n >= 3 => Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))),
        ("path", &[n]) if n >= 1 => Graph::new(n, (1..n).map(|i| (i - 1, i))),
        ("complete", &[n]) => complete(n),
        ("complete_bipartite", &[a, b]) => {
            Graph::bipartite(a, b, (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))))
        }
        ("grid_torus", &[l]) if l >= 3 => {
            let mut e = Vec::new();
            for x in 0..l {
                for y in 0..l {
                    e.push((x * l + y, ((x + 1) % l) * l + y));
                    e.push((x * l + y, x * l + (y + 1) % l));
                }
            }
            Graph::new(l * l, e)
        }
        _ => Err(unknown()),
    }
}

fn complete(n: usize) -> Result<Graph> {
    Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        let p = named_graph("petersen").unwrap();
        assert_eq!((p.n(), p.num_edges(), p.regular_degree()), (10, 15, Some(3)));
        let c = named_graph("cycle(4)").unwrap();
        assert_eq!((c.n(), c.num_edges(), c.regular_degree()), (4, 4, Some(2)));
        let k = named_graph("k4").unwrap();
        assert_eq!((k.n(), k.num_edges(), k.regular_degree()), (4, 6, Some(3)));
        let h = named_graph("heawood").unwrap();
        assert_eq!((h.n(), h.num_edges(), h.regular_degree()), (14, 21, Some(3)));
        let t = named_graph("grid_torus(4)").unwrap();
        assert_eq!((t.n(), t.num_edges(), t.regular_degree()), (16, 32, Some(4)));
        let b = named_graph("complete_bipartite(2, 3)").unwrap();
        assert_eq!((b.n(), b.num_edges(), b.n_left()), (5, 6, Some(2)));
        assert!(matches!(named_graph("dodecahedron"), Err(Error::UnknownGraph(_))));
        assert!(named_graph("cycle(2)").is_err());
        assert!(named_graph("cycle(x)").is_err());
    }

    #[test]
    fn girths() {
        assert_eq!(girth(&named_graph("petersen").unwrap()), Some(5));
        assert_eq!(girth(&named_graph("k4").unwrap()), Some(3));
        assert_eq!(girth(&named_graph("heawood").unwrap()), Some(6));
        assert_eq!(girth(&named_graph("cycle(7)").unwrap()), Some(7));
        assert_eq!(girth(&named_graph("grid_torus(5)").unwrap()), Some(4));
        assert_eq!(girth(&named_graph("path(6)").unwrap()), None);
        let star = Graph::new(5, (1..5).map(|i| (0, i))).unwrap();
        assert_eq!(girth(&star), None);
    }

    #[test]
    fn simple_graph_checks() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::bipartite(2, 2, [(0, 1)]).is_err());
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.num_components(), 2);
        assert!(!g.is_connected());
        assert_eq!(g.distances()[0][3], None);
        assert_eq!(g.edge_id(1, 0), Some(0));
    }
}
