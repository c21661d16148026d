use serde::Serialize;

use crate::chain::{cell_distance, ChainComplex};
use crate::toric::PauliOp;
use crate::{Error, Result};

/// Clifford gates on qudits.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Gate {
    /// `exp(pi/4 Q)` for a Pauli product `Q` with `Q^2 = -1`.
    PauliExp { q: PauliOp },
    /// Controlled-X, or the SUM gate `|a,b> -> |a,a+b>` for `q > 2`.
    Cx { control: usize, target: usize },
    /// Hadamard, or the Fourier gate `X -> Z, Z -> X^-1` for `q > 2`.
    H { qubit: usize },
}

impl Gate {
    pub fn support(&self) -> Vec<usize> {
        match self {
            Gate::PauliExp { q } => q.support(),
            Gate::Cx { control, target } => {
                let mut v = vec![*control, *target];
                v.sort_unstable();
                v
            }
            Gate::H { qubit } => vec![*qubit],
        }
    }

    /// The inverse gate.
    pub fn inverse(&self) -> Gate {
        match self {
            Gate::PauliExp { q } => Gate::PauliExp { q: q.clone().negate() },
            g => g.clone(),
        }
    }
}

fn check_site(p: &PauliOp, k: usize) -> Result<()> {
    if k >= p.n() {
        return Err(Error::InvalidInput(format!("gate acts on qudit {k} of {}", p.n())));
    }
    Ok(())
}

/// `U P U^dagger`.
pub fn conjugate(gate: &Gate, p: &PauliOp) -> Result<PauliOp> {
    let n = p.n();
    let q = p.modulus();
    // images of X_k and Z_k
    let images: Box<dyn Fn(usize) -> (PauliOp, PauliOp)> = match *gate {
        Gate::PauliExp { q: ref op } => {
            if q != 2 {
                return Err(Error::Precondition("Pauli exponentials are only defined for qubits".into()));
            }
            if op.n() != n || op.mul(op)? != PauliOp::identity(n, 2).negate() {
                return Err(Error::InvalidInput(format!("{op:?} does not square to -1 on {n} qubits")));
            }
            return if op.commutes(p)? { Ok(p.clone()) } else { op.mul(p) };
        }
        Gate::H { qubit } => {
            check_site(p, qubit)?;
            Box::new(move |k| {
                if k == qubit {
                    (PauliOp::single(n, q, k, 0, 1), PauliOp::single(n, q, k, q - 1, 0))
                } else {
                    (PauliOp::single(n, q, k, 1, 0), PauliOp::single(n, q, k, 0, 1))
                }
            })
        }
        Gate::Cx { control, target } => {
            check_site(p, control)?;
            check_site(p, target)?;
            if control == target {
                return Err(Error::InvalidInput("CX control equals target".into()));
            }
            Box::new(move |k| {
                let x = PauliOp::single(n, q, k, 1, 0);
                let z = PauliOp::single(n, q, k, 0, 1);
                if k == control {
                    (x.mul(&PauliOp::single(n, q, target, 1, 0)).expect("same space"), z)
                } else if k == target {
                    (x, PauliOp::single(n, q, control, 0, q - 1).mul(&z).expect("same space"))
                } else {
                    (x, z)
                }
            })
        }
    };
    let mut out = PauliOp::identity(n, q).with_phase(p.phase());
    for k in 0..n {
        let (ix, _) = images(k);
        for _ in 0..p.x()[k] {
            out = out.mul(&ix)?;
        }
    }
    for k in 0..n {
        let (_, iz) = images(k);
        for _ in 0..p.z()[k] {
            out = out.mul(&iz)?;
        }
    }
    Ok(out)
}

/// Rounds of gate blocks; the blocks of one round act on disjoint qudits.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CliffordCircuit {
    pub n: usize,
    pub rounds: Vec<Vec<Vec<Gate>>>,
}

impl CliffordCircuit {
    pub fn new(n: usize) -> Self {
        Self { n, rounds: Vec::new() }
    }

    pub fn depth(&self) -> usize {
        self.rounds.len()
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.rounds.iter().flatten().flatten()
    }

    pub fn block_support(block: &[Gate]) -> Vec<usize> {
        let mut s: Vec<usize> = block.iter().flat_map(Gate::support).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Whether every round has pairwise disjoint block supports.
    pub fn rounds_disjoint(&self) -> bool {
        self.rounds.iter().all(|round| {
            let mut seen = vec![false; self.n];
            round.iter().all(|block| {
                Self::block_support(block).into_iter().all(|k| !std::mem::replace(&mut seen[k], true))
            })
        })
    }

    /// Largest distance between two qudits of one block, with the qudits read
    /// as the 1-cells of `c`.
    pub fn max_block_diameter(&self, c: &ChainComplex) -> Result<usize> {
        let cells = c.labels(1);
        let mut best = 0;
        for block in self.rounds.iter().flatten() {
            let s = Self::block_support(block);
            for (a, &x) in s.iter().enumerate() {
                for &y in &s[a + 1..] {
                    best = best.max(cell_distance(c, &cells[x], &cells[y])?);
                }
            }
        }
        Ok(best)
    }

    /// Depth times the largest block diameter.
    pub fn range(&self, c: &ChainComplex) -> Result<usize> {
        Ok(self.depth() * self.max_block_diameter(c)?)
    }

    pub fn conjugate(&self, p: &PauliOp) -> Result<PauliOp> {
        self.gates().try_fold(p.clone(), |acc, g| conjugate(g, &acc))
    }

    /// `U^dagger P U`.
    pub fn conjugate_inverse(&self, p: &PauliOp) -> Result<PauliOp> {
        let gates: Vec<&Gate> = self.gates().collect();
        gates.into_iter().rev().try_fold(p.clone(), |acc, g| conjugate(&g.inverse(), &acc))
    }
}
