//! Chain complexes over `Z_q` with labelled cells.
//!
//! A complex of length `L` stores `D_0..D_L` and the boundaries
//! `d_i : C_i -> C_{i-1}` for `i = 1..=L`. Cells carry a [`CellLabel`], one
//! factor cell per tensor factor, which is what products, deletions and the
//! metric operate on.

mod delete;
mod json;
mod metric;
mod product;

pub use delete::{deletion_b2_bound_check, deletion_closure, delete_cells, MvReport};
pub use json::ComplexJson;
pub use metric::cell_distance;
pub use product::{kunneth_prediction, power, tensor_product};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graphs::Graph;
use crate::modular::{self, check_modulus, check_prime};
use crate::ringlin::{self, rank_mod_p, Lift, SparseMat};
use crate::{Error, Result};

/// One cell of one factor: a vertex (`dim = 0`) or an edge (`dim = 1`) id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u8, u32)", into = "(u8, u32)")]
pub struct FactorCell {
    pub dim: u8,
    pub id: u32,
}

impl From<(u8, u32)> for FactorCell {
    fn from((dim, id): (u8, u32)) -> Self {
        Self { dim, id }
    }
}

impl From<FactorCell> for (u8, u32) {
    fn from(c: FactorCell) -> Self {
        (c.dim, c.id)
    }
}

impl FactorCell {
    pub fn vertex(id: usize) -> Self {
        Self { dim: 0, id: id as u32 }
    }

    pub fn edge(id: usize) -> Self {
        Self { dim: 1, id: id as u32 }
    }
}

/// Tuple of factor cells; its degree is the sum of their dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellLabel(pub Vec<FactorCell>);

impl CellLabel {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|c| c.dim as usize).sum()
    }

    pub fn concat(&self, other: &CellLabel) -> CellLabel {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        CellLabel(v)
    }
}

/// Written as `(e3,v5)`: `v` for vertices, `e` for edges.
impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            match c.dim {
                0 => write!(f, "v{}", c.id)?,
                1 => write!(f, "e{}", c.id)?,
                d => write!(f, "c{d}:{}", c.id)?,
            }
        }
        f.write_str(")")
    }
}

impl FromStr for CellLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad cell label `{s}`"));
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|t| {
                let t = t.trim();
                let (dim, id) = match t.as_bytes().first() {
                    Some(b'v') => (0, &t[1..]),
                    Some(b'e') => (1, &t[1..]),
                    _ => return Err(bad()),
                };
                Ok(FactorCell { dim, id: id.parse().map_err(|_| bad())? })
            })
            .collect::<Result<Vec<_>>>()
            .map(CellLabel)
    }
}

/// The space a factor of a product was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factor {
    /// Cells are the vertices and edges of the graph.
    Graph { graph: Graph },
    /// 1-cells are the left vertices, 0-cells the right vertices.
    Hypergraph { graph: Graph },
}

#[derive(Clone)]
pub struct ChainComplex {
    q: u64,
    dims: Vec<usize>,
    boundaries: Vec<SparseMat>,
    labels: Vec<Vec<CellLabel>>,
    factors: Option<Vec<Factor>>,
    index: OnceLock<Vec<HashMap<CellLabel, usize>>>,
    distances: OnceLock<Vec<Vec<Vec<Option<usize>>>>>,
}

impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
            && self.dims == other.dims
            && self.boundaries == other.boundaries
            && self.labels == other.labels
            && self.factors == other.factors
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainComplex")
            .field("q", &self.q)
            .field("dims", &self.dims)
            .field("factors", &self.factors.as_ref().map(Vec::len))
            .finish()
    }
}

impl ChainComplex {
    /// Assemble and validate a complex. `boundaries[i - 1]` is `d_i`.
    pub fn new(
        q: u64,
        dims: Vec<usize>,
        boundaries: Vec<SparseMat>,
        labels: Vec<Vec<CellLabel>>,
        factors: Option<Vec<Factor>>,
    ) -> Result<Self> {
        let c = Self::new_unchecked(q, dims, boundaries, labels, factors);
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(
        q: u64,
        dims: Vec<usize>,
        boundaries: Vec<SparseMat>,
        labels: Vec<Vec<CellLabel>>,
        factors: Option<Vec<Factor>>,
    ) -> Self {
        Self {
            q,
            dims,
            boundaries,
            labels,
            factors,
            index: OnceLock::new(),
            distances: OnceLock::new(),
        }
    }

    /// Shapes, label uniqueness and `d_{i-1} d_i = 0`.
    pub fn validate(&self) -> Result<()> {
        check_modulus(self.q)?;
        if self.dims.is_empty() {
            return Err(Error::InvalidInput("a complex needs at least C_0".into()));
        }
        if self.boundaries.len() + 1 != self.dims.len() || self.labels.len() != self.dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} dims, {} boundaries, {} label lists",
                self.dims.len(),
                self.boundaries.len(),
                self.labels.len()
            )));
        }
        for (i, b) in self.boundaries.iter().enumerate() {
            if b.rows() != self.dims[i] || b.cols() != self.dims[i + 1] || b.modulus() != self.q {
                return Err(Error::DimensionMismatch(format!(
                    "d_{} is {}x{} mod {}, expected {}x{} mod {}",
                    i + 1,
                    b.rows(),
                    b.cols(),
                    b.modulus(),
                    self.dims[i],
                    self.dims[i + 1],
                    self.q
                )));
            }
        }
        for (i, ls) in self.labels.iter().enumerate() {
            if ls.len() != self.dims[i] {
                return Err(Error::DimensionMismatch(format!("{} labels for D_{i} = {}", ls.len(), self.dims[i])));
            }
            let mut sorted: Vec<&CellLabel> = ls.iter().collect();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("label {} repeated in degree {i}", w[0])));
            }
            if let Some(l) = ls.iter().find(|l| l.degree() != i) {
                return Err(Error::InvalidInput(format!("label {l} has degree {} in C_{i}", l.degree())));
            }
        }
        self.check_chain_condition()
    }

    pub fn check_chain_condition(&self) -> Result<()> {
        let bad = self.boundaries.par_windows(2).enumerate().find_map_first(|(i, w)| {
            match w[0].matmul(&w[1]) {
                Ok(m) if m.is_zero() => None,
                Ok(_) => Some(Error::NotAComplex(format!("d_{} d_{} != 0 mod {}", i + 1, i + 2, self.q))),
                Err(e) => Some(e),
            }
        });
        bad.map_or(Ok(()), Err)
    }

    /// The complex with a single 0-cell, the unit of the tensor product.
    pub fn point(q: u64) -> Result<Self> {
        Self::new(q, vec![1], Vec::new(), vec![vec![CellLabel(Vec::new())]], Some(Vec::new()))
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Top degree `L`.
    pub fn length(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    /// `d_i : C_i -> C_{i-1}` for `1 <= i <= L`.
    pub fn boundary(&self, i: usize) -> Option<&SparseMat> {
        i.checked_sub(1).and_then(|k| self.boundaries.get(k))
    }

    pub fn boundaries(&self) -> &[SparseMat] {
        &self.boundaries
    }

    pub fn labels(&self, i: usize) -> &[CellLabel] {
        self.labels.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn factors(&self) -> Option<&[Factor]> {
        self.factors.as_deref()
    }

    /// Position of a labelled cell within its degree.
    pub fn find(&self, label: &CellLabel) -> Option<(usize, usize)> {
        let index = self.index.get_or_init(|| {
            self.labels
                .iter()
                .map(|ls| ls.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect())
                .collect()
        });
        let d = label.degree();
        index.get(d)?.get(label).map(|&i| (d, i))
    }

    pub(crate) fn factor_distances(&self) -> Option<&Vec<Vec<Vec<Option<usize>>>>> {
        let factors = self.factors.as_ref()?;
        if factors.iter().any(|f| !matches!(f, Factor::Graph { .. })) {
            return None;
        }
        Some(self.distances.get_or_init(|| {
            factors
                .iter()
                .map(|f| match f {
                    Factor::Graph { graph } | Factor::Hypergraph { graph } => graph.distances(),
                })
                .collect()
        }))
    }

    /// Read the same integer complex modulo another `q`, lifting entries to
    /// `(-q/2, q/2]`. Fails when the lift is not a complex over the integers
    /// (reducing mod a divisor of `q` never needs the lift).
    pub fn change_modulus(&self, q2: u64) -> Result<ChainComplex> {
        check_modulus(q2)?;
        if q2 == self.q {
            return Ok(self.clone());
        }
        let boundaries = if self.q.is_multiple_of(q2) {
            self.boundaries.iter().map(|b| b.with_modulus(q2)).collect::<Result<Vec<_>>>()?
        } else {
            let lifted = self.integral_lift()?;
            lifted.iter().map(|b| b.reduce(q2)).collect::<Result<Vec<_>>>()?
        };
        Ok(Self::new_unchecked(q2, self.dims.clone(), boundaries, self.labels.clone(), self.factors.clone()))
    }

    /// Symmetric integer lift of every boundary, checked to square to zero.
    pub fn integral_lift(&self) -> Result<Vec<ringlin::IntMat>> {
        let lifted: Vec<ringlin::IntMat> = self.boundaries.iter().map(|b| b.lift(Lift::Symmetric)).collect();
        for (i, w) in lifted.windows(2).enumerate() {
            if !w[0].matmul(&w[1])?.is_zero() {
                return Err(Error::Precondition(format!(
                    "the signed lift of this mod-{} complex is not a complex over Z (d_{} d_{} != 0)",
                    self.q,
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(lifted)
    }
}

/// 1-complex of a graph: `d(e) = v - u` for the edge `e = (u, v)`, `u < v`.
pub fn graph_complex(g: &Graph, q: u64) -> Result<ChainComplex> {
    check_modulus(q)?;
    let d1 = SparseMat::from_triples(
        g.n(),
        g.num_edges(),
        q,
        g.edges().iter().enumerate().flat_map(|(e, &(u, v))| [(u, e, -1), (v, e, 1)]),
    )?;
    let labels = vec![
        (0..g.n()).map(|v| CellLabel(vec![FactorCell::vertex(v)])).collect(),
        (0..g.num_edges()).map(|e| CellLabel(vec![FactorCell::edge(e)])).collect(),
    ];
    ChainComplex::new(q, vec![g.n(), g.num_edges()], vec![d1], labels, Some(vec![Factor::Graph { graph: g.clone() }]))
}

/// 1-complex of a bipartite graph: `C_1` is the left side, `C_0` the right
/// side and `d_1` the biadjacency matrix.
pub fn hypergraph_complex(b: &Graph, q: u64) -> Result<ChainComplex> {
    let nl = b
        .n_left()
        .ok_or_else(|| Error::Precondition("hypergraph complex needs a bipartite graph".into()))?;
    let d1 = b.biadjacency(q)?;
    let nr = b.n() - nl;
    let labels = vec![
        (0..nr).map(|v| CellLabel(vec![FactorCell::vertex(v)])).collect(),
        (0..nl).map(|e| CellLabel(vec![FactorCell::edge(e)])).collect(),
    ];
    ChainComplex::new(q, vec![nr, nl], vec![d1], labels, Some(vec![Factor::Hypergraph { graph: b.clone() }]))
}

/// Betti numbers over `F_p`.
///
/// When `p` divides `q` the boundaries are reduced along `Z_q -> Z_p`;
/// otherwise the complex is read through its signed integer lift.
pub fn betti(c: &ChainComplex, p: u64) -> Result<Vec<usize>> {
    check_prime(p)?;
    let mats: Vec<SparseMat> = if c.q.is_multiple_of(p) {
        c.boundaries.iter().map(|b| b.with_modulus(p)).collect::<Result<_>>()?
    } else {
        c.integral_lift()?.iter().map(|b| b.reduce(p)).collect::<Result<_>>()?
    };
    let ranks: Vec<usize> = mats.par_iter().map(|m| rank_mod_p(m, p)).collect::<Result<_>>()?;
    Ok(betti_from_ranks(&c.dims, &ranks))
}

/// Betti numbers over `Q` of the signed integer lift.
pub fn betti_rational(c: &ChainComplex) -> Result<Vec<usize>> {
    let lifted = c.integral_lift()?;
    let ranks: Vec<usize> = lifted.par_iter().map(ringlin::rational_rank).collect::<Result<_>>()?;
    Ok(betti_from_ranks(&c.dims, &ranks))
}

/// Betti numbers over the field `Z_q` itself, for prime `q`; for composite
/// `q`, over its smallest prime factor.
pub fn betti_native(c: &ChainComplex) -> Result<Vec<usize>> {
    betti(c, modular::smallest_prime_factor(c.q))
}

/// `b_i = D_i - rank d_i - rank d_{i+1}`, `ranks[i - 1] = rank d_i`.
pub fn betti_from_ranks(dims: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..dims.len())
        .map(|i| {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            let above = ranks.get(i).copied().unwrap_or(0);
            dims[i] - below - above
        })
        .collect()
}
