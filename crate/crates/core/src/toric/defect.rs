use std::collections::VecDeque;

use serde::Serialize;

use super::{plaquette_operator, product, vertex_operator, PauliOp};
use crate::chain::{cell_distance, CellLabel, ChainComplex, Factor, FactorCell};
use crate::graphs::{girth, Graph};
use crate::{Error, Result};

/// The defect operators `D` and `C` attached to a plaquette `p = (a, b)` of
/// `G x G`, with the sets they are built from.
///
/// `i` is the lower endpoint of `b` and `j` the lower endpoint of `a`, so the
/// chosen 1-cells of `p` are `(a, i)` and `(j, b)`. `R` is the ball of radius
/// `floor(g/2)` around `i` in `G - b` and `T` the ball around `j` in `G - a`;
/// both contain their centres.
#[derive(Clone, Debug, Serialize)]
pub struct DefectOps {
    pub p: CellLabel,
    pub a: usize,
    pub b: usize,
    pub i: usize,
    pub j: usize,
    pub radius: usize,
    pub r: Vec<usize>,
    pub t: Vec<usize>,
    pub boundary_r: Vec<usize>,
    pub boundary_t: Vec<usize>,
    pub d: PauliOp,
    pub c: PauliOp,
    /// 0-cells `T x R` with `C D = prod A_s`.
    pub sites: Vec<CellLabel>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectCheck {
    pub product_matches: bool,
    pub patterns_match: bool,
    pub p_anticommutes: bool,
    pub anticommuting: Vec<CellLabel>,
    pub min_other_distance: Option<usize>,
    pub max_support_distance: usize,
    pub holds: bool,
}

fn square_factors(c: &ChainComplex) -> Result<(&Graph, &Graph)> {
    match c.factors() {
        Some([Factor::Graph { graph: g }, Factor::Graph { graph: h }]) => Ok((g, h)),
        _ => Err(Error::Precondition("defect operators need a product of two graphs".into())),
    }
}

fn ball_avoiding(g: &Graph, start: usize, avoid: usize, radius: usize) -> Vec<usize> {
    let adj = g.adjacency();
    let (au, av) = g.edge(avoid);
    let mut dist = vec![usize::MAX; g.n()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if dist[u] == radius {
            continue;
        }
        for &w in &adj[u] {
            if (u.min(w), u.max(w)) == (au, av) || dist[w] != usize::MAX {
                continue;
            }
            dist[w] = dist[u] + 1;
            queue.push_back(w);
        }
    }
    (0..g.n()).filter(|&v| dist[v] != usize::MAX).collect()
}

fn edge_boundary(g: &Graph, set: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    g.edges().iter().enumerate().filter(|(_, &(u, v))| inside[u] != inside[v]).map(|(e, _)| e).collect()
}

fn label(x: FactorCell, y: FactorCell) -> CellLabel {
    CellLabel(vec![x, y])
}

fn index(c: &ChainComplex, l: &CellLabel) -> Result<usize> {
    c.find(l).map(|(_, i)| i).ok_or_else(|| Error::InvalidInput(format!("cell {l} not in complex")))
}

fn x_on(c: &ChainComplex, cells: &[CellLabel]) -> Result<PauliOp> {
    let mut x = vec![0; c.dim(1)];
    for l in cells {
        x[index(c, l)?] ^= 1;
    }
    PauliOp::x_type(2, x)
}

/// Build `D^x(p)` and `C^x(p)` for the plaquette `p` of a binary graph square.
pub fn defect_ops(c: &ChainComplex, p: &CellLabel) -> Result<DefectOps> {
    if c.modulus() != 2 {
        return Err(Error::Precondition("defect operators are built over q = 2".into()));
    }
    let (g, h) = square_factors(c)?;
    if p.0.len() != 2 || p.0.iter().any(|f| f.dim != 1) || c.find(p).is_none() {
        return Err(Error::InvalidInput(format!("{p} is not a plaquette of the complex")));
    }
    let gmin = match (girth(g), girth(h)) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => 2 * g.n().max(h.n()),
    };
    let radius = gmin / 2;
    if radius < 1 {
        return Err(Error::Precondition(format!("girth {gmin} too small to separate supports")));
    }
    let (a, b) = (p.0[0].id as usize, p.0[1].id as usize);
    let i = h.edge(b).0;
    let j = g.edge(a).0;
    let r = ball_avoiding(h, i, b, radius);
    let t = ball_avoiding(g, j, a, radius);
    let boundary_r = edge_boundary(h, &r);
    let boundary_t = edge_boundary(g, &t);

    let (e, v) = (FactorCell::edge, FactorCell::vertex);
    let d_cells: Vec<_> = r.iter().map(|&k| label(e(a), v(k))).collect();
    let mut c_cells: Vec<_> = t.iter().map(|&k| label(v(k), e(b))).collect();
    for &cc in boundary_t.iter().filter(|&&cc| cc != a) {
        c_cells.extend(r.iter().map(|&k| label(e(cc), v(k))));
    }
    for &cc in boundary_r.iter().filter(|&&cc| cc != b) {
        c_cells.extend(t.iter().map(|&k| label(v(k), e(cc))));
    }
    let sites = t.iter().flat_map(|&x| r.iter().map(move |&y| label(v(x), v(y)))).collect();
    Ok(DefectOps {
        p: p.clone(),
        a,
        b,
        i,
        j,
        radius,
        d: x_on(c, &d_cells)?,
        c: x_on(c, &c_cells)?,
        r,
        t,
        boundary_r,
        boundary_t,
        sites,
    })
}

/// Check the algebra of a defect pair against the complex: `C D = prod A_s`,
/// equal commutation with every `B`, and the distance of the anticommuting
/// plaquettes from `p`.
pub fn verify_defect(c: &ChainComplex, ops: &DefectOps) -> Result<DefectCheck> {
    let n = c.dim(1);
    let a_s = ops
        .sites
        .iter()
        .map(|s| vertex_operator(c, index(c, s)?))
        .collect::<Result<Vec<_>>>()?;
    let product_matches = ops.c.mul(&ops.d)? == product(n, 2, &a_s)?;

    let mut patterns_match = true;
    let mut anticommuting = Vec::new();
    for (k, l) in c.labels(2).iter().enumerate() {
        let bp = plaquette_operator(c, k)?;
        let cc = ops.c.commutes(&bp)?;
        if cc != ops.d.commutes(&bp)? {
            patterns_match = false;
        }
        if !cc {
            anticommuting.push(l.clone());
        }
    }
    let p_anticommutes = anticommuting.contains(&ops.p);
    let mut min_other_distance = None::<usize>;
    for l in anticommuting.iter().filter(|l| **l != ops.p) {
        let d = cell_distance(c, &ops.p, l)?;
        min_other_distance = Some(min_other_distance.map_or(d, |m| m.min(d)));
    }
    let mut max_support_distance = 0;
    for op in [&ops.c, &ops.d] {
        for k in op.support() {
            max_support_distance = max_support_distance.max(cell_distance(c, &ops.p, &c.labels(1)[k])?);
        }
    }
    let holds = product_matches
        && patterns_match
        && p_anticommutes
        && min_other_distance.is_none_or(|m| m >= ops.radius)
        && max_support_distance <= ops.radius + 1;
    Ok(DefectCheck {
        product_matches,
        patterns_match,
        p_anticommutes,
        anticommuting,
        min_other_distance,
        max_support_distance,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::square;
    use super::*;

    #[test]
    fn petersen_square_defects() {
        let c = square("petersen", 2);
        let p = c.labels(2)[0].clone();
        let ops = defect_ops(&c, &p).unwrap();
        assert_eq!(ops.radius, 2);
        // centre plus (d-1) + (d-1)^2 vertices
        assert_eq!(ops.r.len(), 7);
        assert_eq!(ops.t.len(), 7);
        assert_eq!(ops.d.weight(), 7);
        assert_eq!(ops.sites.len(), 49);
        let check = verify_defect(&c, &ops).unwrap();
        assert!(check.holds, "{check:?}");
        assert_eq!(check.min_other_distance, Some(2));
    }

    #[test]
    fn petersen_ball_matches_hand_count() {
        let g = crate::graphs::named_graph("petersen").unwrap();
        let b = g.edge_id(0, 1).unwrap();
        assert_eq!(ball_avoiding(&g, 0, b, 2), vec![0, 3, 4, 5, 7, 8, 9]);
    }

    #[test]
    fn every_plaquette_of_small_squares() {
        for name in ["petersen", "cycle(5)", "k4"] {
            let c = square(name, 2);
            for p in c.labels(2) {
                let ops = defect_ops(&c, p).unwrap();
                let check = verify_defect(&c, &ops).unwrap();
                assert!(check.holds, "{name} {p}: {check:?}");
            }
        }
    }

    #[test]
    fn rejects_non_squares() {
        let g = crate::graphs::named_graph("k4").unwrap();
        let c = crate::chain::graph_complex(&g, 2).unwrap();
        let p = CellLabel(vec![FactorCell::edge(0)]);
        assert!(defect_ops(&c, &p).is_err());
        let c3 = square("k4", 3);
        assert!(defect_ops(&c3, &c3.labels(2)[0].clone()).is_err());
    }
}
