//! `cellcode`: build chain complexes from graphs, extract their codes and
//! run the checks of the library from the command line.
//!
//! Complexes and graphs travel as JSON on standard streams, so commands
//! compose: `cellcode complex build --graph petersen --power 2 | cellcode complex betti`.

mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use cellcode::bits::BitVec;
use cellcode::chain::{
    betti, betti_native, betti_rational, deletion_b2_bound_check, delete_cells, graph_complex, hypergraph_complex, power,
    tensor_product, ChainComplex, ComplexJson, Factor,
};
use cellcode::codes::{
    code_params, distance_brute, entropy_bound, extract_code, syndrome_census, syndrome_gap, CssCode, GapMode, Side,
};
use cellcode::graphs::{edge_expansion, girth, random_biregular, random_regular, write_alist, ExpansionMode, Graph};
use cellcode::stabsim::{canonical_form, dense, disentangle_circuit, expectation, ground_stabilizers, verify_canonical};
use cellcode::statmech::{
    checkerboard_monte_carlo, checkerboard_state, dense_spectrum, gibbs_energy, thermal_energy_exact, verify_m2_bound,
    SweepMode,
};
use cellcode::toric::{
    coboundary_inverse_ratio, cycle_basis, defect_ops, plaquette_operators, verify_defect, vertex_operators,
    wilson_distance, wilson_vector, PauliOp, RatioMode,
};
use cellcode::{verify, Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use input::Inputs;
use report::{digest, render, to_value, write_atomic, Format, Outcome, RunManifest, Timings};

/// Worker threads for parallel sweeps; defaults to all cores.
const THREADS_ENV: &str = "CELLCODE_THREADS";

#[derive(Parser)]
#[command(name = "cellcode", version, about = "Chain complexes over Z_q, their codes, and checks on them")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Write the report here (atomically) instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Generate and measure graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Build and analyze chain complexes.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// CSS codes carried by a complex.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Toric-code operators on product complexes.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Stabilizer circuits and states.
    #[command(subcommand)]
    Sim(SimCmd),
    /// Ising and thermal calculations.
    #[command(subcommand)]
    Stat(StatCmd),
    /// The acceptance suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Serialize, Clone)]
struct GraphSource {
    /// Named graph: k4, petersen, heawood, cycle(n), path(n), complete(n),
    /// complete_bipartite(a,b), grid_torus(L).
    #[arg(long, conflicts_with = "graph_file")]
    graph: Option<String>,
    /// Graph JSON (as written by `graph gen`) or an edge list; standard input
    /// when neither this nor --graph is given.
    #[arg(long)]
    graph_file: Option<PathBuf>,
}

#[derive(Args, Serialize, Clone)]
struct ComplexIn {
    /// Complex JSON; standard input when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args, Serialize, Clone)]
struct CodeIn {
    #[command(flatten)]
    complex: ComplexIn,
    /// Degree of the qudits.
    #[arg(long, default_value_t = 1)]
    degree: usize,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum GraphCmd {
    /// A named, random regular or random biregular graph.
    Gen {
        #[arg(long, conflicts_with_all = ["regular", "biregular"])]
        name: Option<String>,
        /// Random d-regular graph: N D MIN_GIRTH.
        #[arg(long, num_args = 3, value_names = ["N", "D", "MIN_GIRTH"], conflicts_with = "biregular")]
        regular: Option<Vec<usize>>,
        /// Random biregular bipartite graph: N_LEFT N_RIGHT D_LEFT D_RIGHT.
        #[arg(long, num_args = 4, value_names = ["NL", "NR", "DL", "DR"])]
        biregular: Option<Vec<usize>>,
    },
    Girth {
        #[command(flatten)]
        source: GraphSource,
    },
    Expansion {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value_t = ExpansionArg::Exact)]
        mode: ExpansionArg,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ExpansionArg {
    Exact,
    Spectral,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ComplexCmd {
    /// Complex of a graph (or of a hypergraph given as a bipartite graph).
    Build {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u64,
        /// Read the graph as a hypergraph: left vertices are 1-cells.
        #[arg(long)]
        hypergraph: bool,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    Product {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    Power {
        #[command(flatten)]
        complex: ComplexIn,
        #[arg(long)]
        k: usize,
    },
    Betti {
        #[command(flatten)]
        complex: ComplexIn,
        /// Compute over F_p instead of the native modulus.
        #[arg(long, conflicts_with = "rational")]
        prime: Option<u64>,
        /// Compute over the rationals from the integral lift.
        #[arg(long)]
        rational: bool,
    },
    /// Remove cells of one degree and everything above them.
    Delete {
        #[command(flatten)]
        complex: ComplexIn,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        cells: Vec<usize>,
    },
    /// Delete 2-cells one at a time and check that b_2 drops by at most one.
    MvCheck {
        #[command(flatten)]
        complex: ComplexIn,
        #[arg(long, value_delimiter = ',', conflicts_with = "random")]
        cells: Option<Vec<usize>>,
        /// Delete this many seeded random 2-cells.
        #[arg(long)]
        random: Option<usize>,
    },
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CodeCmd {
    /// Check matrices in alist format.
    Extract {
        #[command(flatten)]
        code: CodeIn,
    },
    Params {
        #[command(flatten)]
        code: CodeIn,
    },
    Distance {
        #[command(flatten)]
        code: CodeIn,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        /// Largest kernel to enumerate.
        #[arg(long, default_value_t = 1 << 24)]
        budget: u128,
    },
    Census {
        #[command(flatten)]
        code: CodeIn,
    },
    Gap {
        #[command(flatten)]
        code: CodeIn,
        #[arg(long, value_enum, default_value_t = GapArg::Exact)]
        mode: GapArg,
    },
    EntropyBound {
        #[arg(long)]
        n_p: u64,
        #[arg(long)]
        b2: u64,
        #[arg(long)]
        eps: f64,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SideArg {
    X,
    Z,
    Both,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum GapArg {
    Exact,
    Search,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ToricCmd {
    Defect {
        #[command(flatten)]
        complex: ComplexIn,
        /// Plaquette index; seeded random when absent.
        #[arg(long)]
        plaquette: Option<usize>,
    },
    Wilson {
        #[command(flatten)]
        complex: ComplexIn,
        /// Vertex of the first factor.
        #[arg(long, default_value_t = 0)]
        vertex: usize,
        /// 1-cells in the support of the chain.
        #[arg(long, value_delimiter = ',')]
        x: Vec<usize>,
        /// A second chain to measure the Wilson distance against.
        #[arg(long, value_delimiter = ',')]
        against: Option<Vec<usize>>,
    },
    Ratio {
        #[command(flatten)]
        complex: ComplexIn,
        /// 1-cells in the support of x; seeded random chains when absent.
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = RatioArg::Exact)]
        mode: RatioArg,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum RatioArg {
    Exact,
    Anneal,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SimCmd {
    Disentangle {
        #[command(flatten)]
        complex: ComplexIn,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<usize>,
    },
    /// Canonical form of a code without relations among its checks.
    Canon {
        #[command(flatten)]
        code: CodeIn,
    },
    /// Vertex and plaquette expectations in the prepared ground state.
    Expect {
        #[command(flatten)]
        complex: ComplexIn,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<usize>,
        /// Also evaluate a Pauli operator given as JSON.
        #[arg(long)]
        op: Option<PathBuf>,
        /// Cross-check against the statevector.
        #[arg(long)]
        dense: bool,
    },
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum StatCmd {
    IsingVerify {
        #[command(flatten)]
        source: GraphSource,
        /// Sample this many configurations instead of enumerating all.
        #[arg(long)]
        samples: Option<usize>,
    },
    Checkerboard {
        #[arg(long)]
        side: usize,
        #[arg(long)]
        block: usize,
        /// Monte Carlo samples for comparison with the closed forms.
        #[arg(long)]
        samples: Option<usize>,
    },
    Thermal {
        #[command(flatten)]
        code: CodeIn,
        #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,2,5")]
        betas: Vec<f64>,
        /// Compare with the dense spectrum.
        #[arg(long)]
        dense: bool,
    },
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum VerifyCmd {
    All {
        #[arg(long, value_enum, default_value_t = Size::Desk)]
        size: Size,
    },
    Run {
        #[arg(long)]
        id: u8,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Size {
    Desk,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let outcome = match execute(&cli.command, cli.seed, &mut inputs) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let manifest = RunManifest {
        command: command_name(&cli.command),
        params: params(&cli.command),
        seed: cli.seed,
        inputs: inputs.digests,
        version: env!("CARGO_PKG_VERSION"),
        report_digest: digest(&outcome.result, outcome.passed),
        timings: Timings { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 },
    };
    let text = render(&outcome, &manifest, cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(if outcome.passed { 0 } else { 1 })
}

fn command_name(c: &Command) -> String {
    let v = to_value(c);
    let outer = v.as_object().and_then(|m| m.keys().next().cloned()).unwrap_or_default();
    let inner = v[&outer].as_object().and_then(|m| m.keys().next().cloned()).unwrap_or_default();
    format!("{outer} {inner}")
}

fn params(c: &Command) -> Value {
    let v = to_value(c);
    let outer = v.as_object().and_then(|m| m.values().next().cloned()).unwrap_or(Value::Null);
    outer.as_object().and_then(|m| m.values().next().cloned()).unwrap_or(Value::Null)
}

fn execute(cmd: &Command, seed: u64, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        Command::Graph(c) => graph_cmd(c, seed, inputs),
        Command::Complex(c) => complex_cmd(c, seed, inputs),
        Command::Code(c) => code_cmd(c, seed, inputs),
        Command::Toric(c) => toric_cmd(c, seed, inputs),
        Command::Sim(c) => sim_cmd(c, inputs),
        Command::Stat(c) => stat_cmd(c, seed, inputs),
        Command::Verify(c) => verify_cmd(c),
    }
}

fn load_graph(src: &GraphSource, inputs: &mut Inputs) -> Result<Graph> {
    inputs.graph(src.graph.as_deref(), src.graph_file.as_ref())
}

fn graph_cmd(cmd: &GraphCmd, seed: u64, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        GraphCmd::Gen { name, regular, biregular } => {
            let g = match (name, regular, biregular) {
                (Some(n), _, _) => cellcode::graphs::named_graph(n)?,
                (_, Some(r), _) => random_regular(r[0], r[1], r[2], seed)?,
                (_, _, Some(b)) => random_biregular(b[0], b[1], b[2], b[3], seed)?,
                _ => return Err(Error::InvalidInput("give --name, --regular or --biregular".into())),
            };
            let rows = g.edges().iter().map(|&(u, v)| json!({"u": u, "v": v})).collect();
            Ok(Outcome::payload(&g).rows(rows))
        }
        GraphCmd::Girth { source } => {
            let g = load_graph(source, inputs)?;
            Ok(Outcome::report(json!({"n": g.n(), "edges": g.num_edges(), "girth": girth(&g)})))
        }
        GraphCmd::Expansion { source, mode } => {
            let g = load_graph(source, inputs)?;
            let mode = match mode {
                ExpansionArg::Exact => ExpansionMode::Exact,
                ExpansionArg::Spectral => ExpansionMode::Spectral,
            };
            let e = edge_expansion(&g, mode)?;
            let mut v = to_value(&e);
            v["value"] = json!(e.as_f64());
            Ok(Outcome::report(v))
        }
    }
}

fn complex_payload(c: &ChainComplex) -> Outcome {
    let rows = c
        .boundaries()
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.triples().map(move |(r, col, v)| json!({"degree": i + 1, "row": r, "col": col, "value": v})))
        .collect();
    Outcome::payload(ComplexJson::from(c)).rows(rows)
}

fn complex_cmd(cmd: &ComplexCmd, seed: u64, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        ComplexCmd::Build { source, modulus, hypergraph, power: k } => {
            let g = load_graph(source, inputs)?;
            let base = if *hypergraph { hypergraph_complex(&g, *modulus)? } else { graph_complex(&g, *modulus)? };
            Ok(complex_payload(&power(&base, *k)?))
        }
        ComplexCmd::Product { left, right } => {
            let a = inputs.complex(Some(left))?;
            let b = inputs.complex(Some(right))?;
            Ok(complex_payload(&tensor_product(&a, &b)?))
        }
        ComplexCmd::Power { complex, k } => {
            let c = inputs.complex(complex.input.as_ref())?;
            Ok(complex_payload(&power(&c, *k)?))
        }
        ComplexCmd::Betti { complex, prime, rational } => {
            let c = inputs.complex(complex.input.as_ref())?;
            let (field, b) = if *rational {
                ("Q".to_string(), betti_rational(&c)?)
            } else if let Some(p) = prime {
                (format!("F_{p}"), betti(&c, *p)?)
            } else {
                (format!("Z_{}", c.modulus()), betti_native(&c)?)
            };
            let rows = b.iter().enumerate().map(|(i, v)| json!({"degree": i, "dim": c.dim(i), "betti": v})).collect();
            Ok(Outcome::report(json!({"q": c.modulus(), "field": field, "dims": c.dims(), "betti": b})).rows(rows))
        }
        ComplexCmd::Delete { complex, degree, cells } => {
            let c = inputs.complex(complex.input.as_ref())?;
            let labels = labels_at(&c, *degree, cells)?;
            Ok(complex_payload(&delete_cells(&c, &labels)?))
        }
        ComplexCmd::MvCheck { complex, cells, random } => {
            let c = inputs.complex(complex.input.as_ref())?;
            let chosen = match (cells, random) {
                (Some(cells), _) => cells.clone(),
                (None, count) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut order: Vec<usize> = (0..c.dim(2)).collect();
                    for i in (1..order.len()).rev() {
                        order.swap(i, rng.random_range(0..=i));
                    }
                    order.truncate(count.unwrap_or(order.len()));
                    order
                }
            };
            let labels = labels_at(&c, 2, &chosen)?;
            let r = deletion_b2_bound_check(&c, &labels)?;
            let holds = r.holds;
            let rows = r.steps.iter().enumerate().map(|(i, b)| json!({"step": i + 1, "cell": chosen[i], "b2": b})).collect();
            Ok(Outcome::report(json!({"cells": chosen, "report": r})).rows(rows).check(holds))
        }
    }
}

fn labels_at(c: &ChainComplex, degree: usize, cells: &[usize]) -> Result<Vec<cellcode::chain::CellLabel>> {
    if degree > c.length() {
        return Err(Error::InvalidInput(format!("no cells of degree {degree}")));
    }
    cells
        .iter()
        .map(|&k| {
            c.labels(degree)
                .get(k)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("cell {k} out of range for degree {degree}")))
        })
        .collect()
}

fn load_code(code: &CodeIn, inputs: &mut Inputs) -> Result<CssCode> {
    extract_code(&inputs.complex(code.complex.input.as_ref())?, code.degree)
}

fn code_cmd(cmd: &CodeCmd, seed: u64, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        CodeCmd::Extract { code } => {
            let c = load_code(code, inputs)?;
            Ok(Outcome::report(json!({
                "q": c.q, "degree": c.degree, "n": c.n,
                "hx": write_alist(&c.hx), "hz": write_alist(&c.hz),
            })))
        }
        CodeCmd::Params { code } => Ok(Outcome::report(code_params(&load_code(code, inputs)?)?)),
        CodeCmd::Distance { code, side, budget } => {
            let c = load_code(code, inputs)?;
            let dx = matches!(side, SideArg::X | SideArg::Both).then(|| distance_brute(&c, Side::X, *budget)).transpose()?;
            let dz = matches!(side, SideArg::Z | SideArg::Both).then(|| distance_brute(&c, Side::Z, *budget)).transpose()?;
            let d = dx.into_iter().chain(dz).min();
            Ok(Outcome::report(json!({"n": c.n, "d_x": dx, "d_z": dz, "d": d})))
        }
        CodeCmd::Census { code } => Ok(Outcome::report(syndrome_census(&load_code(code, inputs)?)?)),
        CodeCmd::Gap { code, mode } => {
            let mode = match mode {
                GapArg::Exact => GapMode::Exact,
                GapArg::Search => GapMode::Search,
            };
            Ok(Outcome::report(syndrome_gap(&load_code(code, inputs)?, mode, seed)?))
        }
        CodeCmd::EntropyBound { n_p, b2, eps } => Ok(Outcome::report(entropy_bound(*n_p, *b2, *eps)?)),
    }
}

fn chain_from(c: &ChainComplex, ones: &[usize]) -> Result<BitVec> {
    if let Some(&k) = ones.iter().find(|&&k| k >= c.dim(1)) {
        return Err(Error::InvalidInput(format!("1-cell {k} out of range")));
    }
    Ok(BitVec::from_indices(c.dim(1), ones.iter().copied()))
}

fn toric_cmd(cmd: &ToricCmd, seed: u64, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        ToricCmd::Defect { complex, plaquette } => {
            let c = inputs.complex(complex.input.as_ref())?;
            if c.length() < 2 || c.dim(2) == 0 {
                return Err(Error::InvalidInput("complex has no 2-cells".into()));
            }
            let p = plaquette.unwrap_or_else(|| ChaCha8Rng::seed_from_u64(seed).random_range(0..c.dim(2)));
            let label = labels_at(&c, 2, &[p])?.remove(0);
            let ops = defect_ops(&c, &label)?;
            let check = verify_defect(&c, &ops)?;
            let holds = check.holds;
            Ok(Outcome::report(json!({"plaquette": p, "label": label.to_string(), "ops": ops, "check": check})).check(holds))
        }
        ToricCmd::Wilson { complex, vertex, x, against } => {
            let c = inputs.complex(complex.input.as_ref())?;
            let Some([Factor::Graph { .. }, Factor::Graph { graph: h }]) = c.factors() else {
                return Err(Error::Precondition("Wilson vectors need a product of two graphs".into()));
            };
            let basis = cycle_basis(h)?;
            let s = wilson_vector(&c, &chain_from(&c, x)?, *vertex, &basis)?;
            let mut out = json!({"vertex": vertex, "cycles": basis.len(), "signs": s});
            if let Some(y) = against {
                let s2 = wilson_vector(&c, &chain_from(&c, y)?, *vertex, &basis)?;
                out["against_signs"] = json!(s2);
                out["distance"] = json!(wilson_distance(&s, &s2, h)?);
            }
            Ok(Outcome::report(out))
        }
        ToricCmd::Ratio { complex, x, samples, mode } => {
            let c = inputs.complex(complex.input.as_ref())?;
            let mode = match mode {
                RatioArg::Exact => RatioMode::Exact,
                RatioArg::Anneal => RatioMode::Anneal,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let chains: Vec<BitVec> = match x {
                Some(ones) => vec![chain_from(&c, ones)?],
                None => (0..*samples)
                    .map(|_| BitVec::from_bools(&(0..c.dim(1)).map(|_| rng.random::<bool>()).collect::<Vec<_>>()))
                    .collect(),
            };
            let mut rows = Vec::new();
            for (i, ch) in chains.iter().enumerate() {
                let r = coboundary_inverse_ratio(&c, ch, mode, seed.wrapping_add(i as u64))?;
                let mut v = to_value(&r);
                v["x"] = json!(ch.ones().collect::<Vec<_>>());
                rows.push(v);
            }
            let min = rows.iter().filter_map(|r| r["ratio"].as_f64()).fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.min(v))));
            let csv_rows = rows
                .iter()
                .map(|r| json!({"ratio": r["ratio"], "delta_weight": r["delta_weight"], "min_weight": r["min_weight"], "exact": r["exact"]}))
                .collect();
            Ok(Outcome::report(json!({"min_ratio": min, "samples": rows})).rows(csv_rows))
        }
    }
}

fn sim_cmd(cmd: &SimCmd, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        SimCmd::Disentangle { complex, seeds } => {
            let c = inputs.complex(complex.input.as_ref())?;
            let d = disentangle_circuit(&c, seeds)?;
            let diagonal = d.final_terms.iter().all(PauliOp::is_z_type);
            let rounds: Vec<Value> = d
                .circuit
                .rounds
                .iter()
                .map(|round| {
                    round
                        .iter()
                        .flatten()
                        .map(|g| {
                            let mut params = to_value(g);
                            let kind = params.as_object_mut().and_then(|m| m.remove("kind"));
                            json!({"kind": kind, "support": g.support(), "parameters": params})
                        })
                        .collect()
                })
                .collect();
            Ok(Outcome::report(json!({
                "qudits": c.dim(1),
                "depth": d.circuit.depth(),
                "gates": d.circuit.gates().count(),
                "range": d.circuit.range(&c)?,
                "rounds_used": d.rounds_used,
                "colors": d.colors,
                "max_seed_distance": d.max_seed_distance,
                "disjoint_rounds": d.circuit.rounds_disjoint(),
                "final_diagonal": diagonal,
                "rounds": rounds,
                "final_terms": d.final_terms,
            }))
            .check(diagonal && d.circuit.rounds_disjoint()))
        }
        SimCmd::Canon { code } => {
            let c = load_code(code, inputs)?;
            let form = canonical_form(&c)?;
            let ok = verify_canonical(&c, &form);
            Ok(Outcome::report(json!({"n": c.n, "q": c.q, "verified": ok, "form": form})).check(ok))
        }
        SimCmd::Expect { complex, seeds, op, dense: with_dense } => {
            let c = inputs.complex(complex.input.as_ref())?;
            let g = ground_stabilizers(&c, seeds)?;
            let mut terms: Vec<(&str, usize, PauliOp)> = Vec::new();
            terms.extend(vertex_operators(&c)?.into_iter().enumerate().map(|(i, p)| ("A", i, p)));
            terms.extend(plaquette_operators(&c)?.into_iter().enumerate().map(|(i, p)| ("B", i, p)));
            if let Some(path) = op {
                let p: PauliOp = serde_json::from_str(&inputs.read(Some(path))?)?;
                terms.push(("op", 0, p));
            }
            let psi = if *with_dense {
                Some(dense::apply_circuit_inverse(&disentangle_circuit(&c, seeds)?.circuit, &dense::basis_state(c.dim(1), 0)?)?)
            } else {
                None
            };
            let mut rows = Vec::new();
            let mut agree = true;
            let (mut a_sum, mut b_sum) = (0i64, 0i64);
            for (kind, i, p) in &terms {
                let e = expectation(&g, p)?;
                match *kind {
                    "A" => a_sum += e as i64,
                    "B" => b_sum += e as i64,
                    _ => {}
                }
                let mut row = json!({"kind": kind, "index": i, "value": e});
                if let Some(psi) = &psi {
                    let d = dense::expectation(psi, p)?;
                    agree &= (d - e as f64).abs() < 1e-9;
                    row["dense"] = json!(d);
                }
                rows.push(row);
            }
            Ok(Outcome::report(json!({
                "seeds": seeds,
                "energy_a": -a_sum,
                "energy_b": -b_sum,
                "dense_checked": psi.is_some(),
                "terms": rows,
            }))
            .rows(rows)
            .check(agree))
        }
    }
}

fn stat_cmd(cmd: &StatCmd, seed: u64, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        StatCmd::IsingVerify { source, samples } => {
            let g = load_graph(source, inputs)?;
            let mode = samples.map_or(SweepMode::Exhaustive, |samples| SweepMode::Sample { samples });
            let r = verify_m2_bound(&g, mode, seed)?;
            let ok = r.violations == 0;
            Ok(Outcome::report(r).check(ok))
        }
        StatCmd::Checkerboard { side, block, samples } => {
            let cb = checkerboard_state(*side, *block)?;
            let mut out = json!({"closed_form": cb});
            if let Some(n) = samples {
                out["monte_carlo"] = to_value(checkerboard_monte_carlo(*side, *block, *n, seed)?);
            }
            Ok(Outcome::report(out))
        }
        StatCmd::Thermal { code, betas, dense: with_dense } => {
            let c = load_code(code, inputs)?;
            let spectrum = if *with_dense { Some(dense_spectrum(&c)?) } else { None };
            let mut rows = Vec::new();
            let mut agree = true;
            for &beta in betas {
                let r = thermal_energy_exact(&c, beta)?;
                let mut row = json!({"beta": beta, "energy": r.energy, "per_term": r.per_term, "terms": r.x_terms + r.z_terms});
                if let Some(s) = &spectrum {
                    let e = gibbs_energy(s, beta);
                    agree &= (e - r.energy).abs() <= 1e-9;
                    row["dense_energy"] = json!(e);
                }
                rows.push(row);
            }
            Ok(Outcome::report(json!({"q": c.q, "n": c.n, "curve": rows})).rows(rows).check(agree))
        }
    }
}

fn verify_cmd(cmd: &VerifyCmd) -> Result<Outcome> {
    let outcomes = match cmd {
        VerifyCmd::All { size: Size::Desk } => verify::run_all(),
        VerifyCmd::Run { id } => {
            if !verify::CRITERIA.iter().any(|c| c.0 == *id) {
                return Err(Error::InvalidInput(format!("no criterion {id}")));
            }
            vec![verify::run(*id)]
        }
    };
    for o in &outcomes {
        eprintln!("{o}");
    }
    let passed = outcomes.iter().all(|o| o.passed);
    let rows = outcomes.iter().map(to_value).collect();
    Ok(Outcome::report(json!({"criteria": outcomes, "passed": outcomes.iter().filter(|o| o.passed).count()})).rows(rows).check(passed))
}
