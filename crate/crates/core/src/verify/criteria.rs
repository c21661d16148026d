use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Check;
use crate::bits::BitVec;
use crate::chain::{betti, deletion_b2_bound_check, graph_complex, kunneth_prediction, power, tensor_product, ChainComplex};
use crate::codes::{
    code_params, distance_brute, entropy_bound, extract_code, hypergraph_product, syndrome_census, syndrome_gap,
    CssCode, GapMode, Side,
};
use crate::graphs::{named_graph, Graph};
use crate::ringlin::{dense, kernel_basis_mod_p, rank_mod_p, smith_normal_form_int, IntMat, SparseMat};
use crate::stabsim::{
    canonical_form, conjugate, dense as sdense, disentangle_circuit, expectation, ground_stabilizers, random_group,
    reduced_state_equal, verify_canonical, Gate, StabilizerGroup,
};
use crate::statmech::{
    checkerboard_monte_carlo, checkerboard_state, dense_spectrum, gibbs_energy, thermal_energy_exact, verify_m2_bound, SweepMode,
};
use crate::toric::{
    coboundary_inverse_ratio, defect_ops, plaquette_operators, ratio_brute_force, verify_defect, vertex_operators,
    PauliOp, RatioMode,
};
use crate::Result;

fn complex(name: &str, q: u64) -> Result<ChainComplex> {
    graph_complex(&named_graph(name)?, q)
}

fn square(name: &str, q: u64) -> Result<ChainComplex> {
    power(&complex(name, q)?, 2)
}

fn ratio_f64(r: num_rational::Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(super) fn betti_formulas() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["petersen", "k4"] {
        let g = named_graph(name)?;
        let d = g.regular_degree().expect("regular") as i64;
        let n = g.n() as i64;
        let formula = ((d - 2) * n / 2 + 1) as usize;
        let b1 = betti(&graph_complex(&g, 2)?, 2)?[1];
        let b2 = betti(&square(name, 2)?, 2)?[2];
        ok &= b1 == formula && b2 == formula * formula;
        parts.push(format!("{name}: b1={b1} (formula {formula}), b2(square)={b2} (formula {})", formula * formula));
    }
    Ok((ok, parts.join("; ")))
}

pub(super) fn products() -> Check {
    let mut ok = true;
    let mut checked = 0;
    for name in ["k4", "petersen"] {
        for q in [2, 3, 4, 6] {
            let c = complex(name, q)?;
            for k in 1..=4 {
                let p = power(&c, k)?;
                p.check_chain_condition()?;
                checked += 1;
            }
        }
    }
    let mut kunneth = 0;
    for p in [2, 3] {
        let names = ["k4", "petersen"];
        for a in names {
            for b in names {
                let (ca, cb) = (complex(a, p)?, complex(b, p)?);
                let prod = tensor_product(&ca, &cb)?;
                let want = kunneth_prediction(&betti(&ca, p)?, &betti(&cb, p)?);
                ok &= betti(&prod, p)? == want;
                kunneth += 1;
            }
        }
    }
    let (a, b, c) = (complex("k4", 2)?, complex("petersen", 2)?, complex("cycle(5)", 2)?);
    let left = tensor_product(&tensor_product(&a, &b)?, &c)?;
    let right = tensor_product(&a, &tensor_product(&b, &c)?)?;
    let assoc = left.dims() == right.dims() && betti(&left, 2)? == betti(&right, 2)?;
    ok &= assoc;
    Ok((
        ok,
        format!("d d = 0 on {checked} powers; Kunneth on {kunneth} products; triple product dims {:?}, associative: {assoc}", left.dims()),
    ))
}

pub(super) fn deletion() -> Check {
    let c = square("k4", 2)?;
    let cells = c.labels(2).to_vec();
    let mut steps = 0;
    let mut ok = true;
    let mut drops = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order = cells.clone();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        order.truncate(10);
        let r = deletion_b2_bound_check(&c, &order)?;
        ok &= r.holds && r.b2_after + order.len() >= r.b2_before;
        let mut prev = r.b2_before;
        for &b in &r.steps {
            ok &= b == prev || b + 1 == prev;
            drops += prev - b.min(prev);
            prev = b;
        }
        steps += order.len();
    }
    Ok((ok, format!("{steps} deletions over 100 seeds, {drops} unit drops, no larger change")))
}

fn code_nkd(c: &ChainComplex) -> Result<(usize, usize, usize)> {
    let code = extract_code(c, 1)?;
    let k = code_params(&code)?.k.expect("prime modulus");
    let d = distance_brute(&code, Side::X, 1 << 20)?.min(distance_brute(&code, Side::Z, 1 << 20)?);
    Ok((code.n, k, d))
}

pub(super) fn toric_parameters() -> Check {
    let a = code_nkd(&square("cycle(3)", 2)?)?;
    let b = code_nkd(&square("cycle(4)", 2)?)?;
    Ok((a == (18, 2, 3) && b == (32, 2, 4), format!("cycle(3)^2: {a:?}, cycle(4)^2: {b:?}")))
}

pub(super) fn syndromes() -> Check {
    let torus = extract_code(&square("cycle(3)", 2)?, 1)?;
    let t = syndrome_census(&torus)?;
    let k4 = syndrome_census(&extract_code(&square("k4", 2)?, 1)?)?;
    let gap = syndrome_gap(&torus, GapMode::Exact, 0)?;
    let ok = t.achievable_count == Some(256)
        && t.achievable_log2 == t.n_p - t.b2
        && k4.achievable_log2 == 27
        && k4.n_p - k4.b2 == 27
        && gap.gap_distance == Some(1)
        && gap.min_eigenvalue == Some(-7);
    Ok((
        ok,
        format!(
            "torus 2^{} syndromes, k4^2 2^{}, torus gap {:?}, min eigenvalue {:?}",
            t.achievable_log2, k4.achievable_log2, gap.gap_distance, gap.min_eigenvalue
        ),
    ))
}

pub(super) fn entropy() -> Check {
    let mut worst = 0.0f64;
    let mut ok = true;
    for (n_p, b2, eps, h, lhs, rhs, holds) in super::ENTROPY_ORACLE {
        let r = entropy_bound(n_p, b2, eps)?;
        ok &= r.holds == holds;
        for (got, want) in [(r.h, h), (r.lhs, lhs), (r.rhs, rhs)] {
            let want: f64 = want.parse().expect("oracle literal");
            worst = worst.max((got - want).abs() / want.abs().max(1.0));
        }
        for (got, want) in [(&r.h_decimal, h), (&r.lhs_decimal, lhs), (&r.rhs_decimal, rhs)] {
            ok &= super::same_leading_digits(got, want, 20);
        }
    }
    ok &= worst <= 1e-12;
    Ok((ok, format!("12 triples, holds/fails all agree: {ok}, worst relative error {worst:.1e}")))
}

pub(super) fn defects() -> Check {
    let c = square("petersen", 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ok = true;
    let mut min_dist = usize::MAX;
    for _ in 0..20 {
        let p = c.labels(2)[rng.random_range(0..c.dim(2))].clone();
        let ops = defect_ops(&c, &p)?;
        let check = verify_defect(&c, &ops)?;
        ok &= check.product_matches && check.patterns_match && check.p_anticommutes && check.holds;
        if let Some(d) = check.min_other_distance {
            ok &= d >= ops.radius;
            min_dist = min_dist.min(d);
        }
    }
    Ok((ok, format!("20 plaquettes: C D = prod A_s, equal B patterns, nearest other anticommuting plaquette at {min_dist} (radius 2)")))
}

pub(super) fn disentangling() -> Check {
    let c = square("cycle(3)", 2)?;
    let d = disentangle_circuit(&c, &[0])?;
    let diagonal = d.final_terms.iter().all(PauliOp::is_z_type);
    let g = ground_stabilizers(&c, &[0])?;
    let bs = plaquette_operators(&c)?;
    let as_ = vertex_operators(&c)?;
    let mut b_ok = true;
    for b in &bs {
        b_ok &= expectation(&g, b)? == 1;
    }
    let mut a_ok = true;
    let mut a_total = 0i64;
    for (s, a) in as_.iter().enumerate() {
        let e = expectation(&g, a)?;
        a_total += e as i64;
        if s != 0 {
            a_ok &= e == 1;
        }
    }
    let psi = sdense::apply_circuit_inverse(&d.circuit, &sdense::basis_state(18, 0)?)?;
    let mut dense_ok = true;
    for op in bs.iter().chain(&as_) {
        dense_ok &= (sdense::expectation(&psi, op)? - expectation(&g, op)? as f64).abs() < 1e-9;
    }
    let a_energy = -a_total;
    let target = -8;
    let ok = diagonal && b_ok && a_ok && dense_ok && d.circuit.rounds_disjoint() && a_energy == target;
    Ok((
        ok,
        format!(
            "final terms diagonal: {diagonal}; all B_p = +1: {b_ok}; 8 surviving A_s = +1: {a_ok}; dense agrees: {dense_ok}; \
             <A> = {a_energy}, required {target} (the nine A_s multiply to the identity, so the removed term is also +1)"
        ),
    ))
}

/// A random full-rank 2x3 check, as a bipartite graph with 3 bits and 2 checks.
fn random_surjective_check(seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let edges: Vec<(usize, usize)> =
            (0..3).flat_map(|l| (0..2).map(move |r| (l, 3 + r))).filter(|_| rng.random_bool(0.5)).collect();
        let g = Graph::bipartite(3, 2, edges)?;
        if g.degrees().contains(&0) {
            continue;
        }
        if rank_mod_p(&g.biadjacency(2)?, 2)? == 2 {
            return Ok(g);
        }
    }
}

fn relation_free_codes(q: u64) -> Result<Vec<CssCode>> {
    let col2 = Graph::bipartite(1, 2, [(0, 1), (0, 2)])?;
    let col3 = Graph::bipartite(1, 3, [(0, 1), (0, 2), (0, 3)])?;
    let row2 = Graph::bipartite(2, 1, [(0, 2), (1, 2)])?;
    let mut out = vec![hypergraph_product(&col2, &row2, q)?, hypergraph_product(&col3, &row2, q)?];
    if q == 2 {
        out.insert(0, hypergraph_product(&col2, &random_surjective_check(1)?, q)?);
    }
    Ok(out)
}

pub(super) fn canonical_thermal() -> Check {
    let code8 = hypergraph_product(
        &Graph::bipartite(1, 2, [(0, 1), (0, 2)])?,
        &random_surjective_check(1)?,
        2,
    )?;
    let form = canonical_form(&code8)?;
    let canon_ok = code8.n == 8 && verify_canonical(&code8, &form);
    let mut worst = 0.0f64;
    let mut spread = 0.0f64;
    for q in [2, 3] {
        let codes = relation_free_codes(q)?;
        let spectra = codes.iter().map(dense_spectrum).collect::<Result<Vec<_>>>()?;
        for beta in [0.0, 0.5, 1.0, 2.0, 5.0] {
            let mut per_term = Vec::new();
            for (code, spectrum) in codes.iter().zip(&spectra) {
                let exact = thermal_energy_exact(code, beta)?;
                let brute = gibbs_energy(spectrum, beta);
                worst = worst.max((exact.energy - brute).abs());
                per_term.push(brute / (exact.x_terms + exact.z_terms) as f64);
            }
            let (lo, hi) = per_term.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
            spread = spread.max(hi - lo);
        }
    }
    let ok = canon_ok && worst <= 1e-9 && spread <= 1e-9;
    Ok((
        ok,
        format!(
            "n=8 canonical form re-verified: {canon_ok} ({} ops); exact vs dense worst {worst:.1e}; per-term spread across complexes {spread:.1e}",
            form.ops.len()
        ),
    ))
}

pub(super) fn ising() -> Check {
    let g = named_graph("petersen")?;
    let r = verify_m2_bound(&g, SweepMode::Exhaustive, 0)?;
    let bound_ok = r.violations == 0 && r.c == num_rational::Ratio::from_integer(1) && r.configurations == 1024;
    let mut mc_ok = true;
    let mut worst = 0.0f64;
    for (side, block) in [(6, 2), (6, 3), (7, 2), (8, 4)] {
        let cb = checkerboard_state(side, block)?;
        let mc = checkerboard_monte_carlo(side, block, 100_000, 42)?;
        for (mean, err, exact) in [
            (mc.m_squared_mean, mc.m_squared_stderr, ratio_f64(cb.m_squared)),
            (mc.violated_mean, mc.violated_stderr, ratio_f64(cb.expected_violated)),
        ] {
            let z = if err > 0.0 { (mean - exact).abs() / err } else { (mean - exact).abs() * 1e12 };
            worst = worst.max(z);
            mc_ok &= z <= 5.0;
        }
    }
    Ok((
        bound_ok && mc_ok,
        format!(
            "petersen c = {}, {} configurations, {} violations; checkerboard Monte Carlo worst deviation {worst:.2} sigma",
            r.c, r.configurations, r.violations
        ),
    ))
}

pub(super) fn ratio_scan() -> Check {
    let c = square("cycle(3)", 2)?;
    let n = c.dim(1);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ok = true;
    let mut best: Option<(f64, Vec<usize>, Vec<usize>)> = None;
    let mut infinite = 0;
    for _ in 0..100 {
        let x = BitVec::from_bools(&(0..n).map(|_| rng.random::<bool>()).collect::<Vec<_>>());
        let exact = coboundary_inverse_ratio(&c, &x, RatioMode::Exact, 0)?;
        let brute = ratio_brute_force(&c, &x)?;
        ok &= exact.cocycle_dim <= 16 && exact.min_weight == brute.min_weight && exact.delta_weight == brute.delta_weight;
        match exact.ratio {
            None => infinite += 1,
            Some(r) => {
                if best.as_ref().is_none_or(|b| r < b.0) {
                    best = Some((r, x.ones().collect(), exact.y.clone()));
                }
            }
        }
    }
    let detail = match best {
        Some((r, x, y)) => format!("min ratio {r:.4} at x = {x:?}, y = {y:?}; {infinite} cocycle samples"),
        None => "every sample was a cocycle".to_string(),
    };
    Ok((ok, format!("100 samples, exact = enumeration: {ok}; {detail}")))
}

fn all_two_qubit_paulis() -> Vec<PauliOp> {
    (0..16u64)
        .map(|b| {
            let p = PauliOp::new(2, vec![b & 1, b >> 1 & 1], vec![b >> 2 & 1, b >> 3 & 1], 0).expect("valid");
            let xz = (p.x()[0] & p.z()[0]) + (p.x()[1] & p.z()[1]);
            p.with_phase(xz as u8 % 2)
        })
        .collect()
}

fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> PauliOp {
    let x: Vec<u64> = (0..n).map(|_| rng.random_range(0..2)).collect();
    let z: Vec<u64> = (0..n).map(|_| rng.random_range(0..2)).collect();
    let xz = x.iter().zip(&z).filter(|(a, b)| **a == 1 && **b == 1).count() as u8;
    PauliOp::new(2, x, z, 0).expect("valid").with_phase(xz % 2 + 2 * rng.random_range(0..2u8))
}

pub(super) fn dense_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut mismatches = Vec::new();

    // gate conjugation on two qubits
    let paulis = all_two_qubit_paulis();
    let mut gates = vec![Gate::H { qubit: 0 }, Gate::H { qubit: 1 }, Gate::Cx { control: 0, target: 1 }, Gate::Cx { control: 1, target: 0 }];
    for a in &paulis {
        for b in &paulis {
            if !a.commutes(b)? {
                gates.push(Gate::PauliExp { q: a.mul(b)? });
            }
        }
    }
    for gate in &gates {
        let u = sdense::gate_matrix(gate, 2)?;
        for p in &paulis {
            let lhs = &u * sdense::pauli_matrix(p)? * u.adjoint();
            if (lhs - sdense::pauli_matrix(&conjugate(gate, p)?)?).norm() > 1e-9 {
                mismatches.push("conjugation");
            }
        }
    }

    // expectations in random 6-qubit groups
    for seed in 0..50 {
        let k = 1 + seed as usize % 6;
        let g = random_group(6, k, seed);
        let proj = sdense::projector(&g)?;
        let tr = proj.trace().re;
        for _ in 0..20 {
            let p = random_hermitian(6, &mut rng);
            let val = (&proj * sdense::pauli_matrix(&p)?).trace().re / tr;
            if (val - expectation(&g, &p)? as f64).abs() > 1e-9 {
                mismatches.push("expectation");
            }
        }
    }

    // 18-qubit torus ground state and reduced states
    let c = square("cycle(3)", 2)?;
    let circ = disentangle_circuit(&c, &[0])?.circuit;
    let g1 = ground_stabilizers(&c, &[0])?;
    let psi1 = sdense::apply_circuit_inverse(&circ, &sdense::basis_state(18, 0)?)?;
    for _ in 0..100 {
        let p = random_hermitian(18, &mut rng);
        if (sdense::expectation(&psi1, &p)? - expectation(&g1, &p)? as f64).abs() > 1e-9 {
            mismatches.push("torus expectation");
        }
    }
    let o = PauliOp::x_type(2, (0..18).map(|k| u64::from(k == 0)).collect())?;
    let g2 = StabilizerGroup::new(
        18,
        g1.generators()
            .iter()
            .map(|s| Ok(if s.commutes(&o)? { s.clone() } else { s.clone().negate() }))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let psi2 = sdense::apply_pauli(&o, &psi1)?;
    let mut regions: Vec<Vec<usize>> = (0..18).map(|k| vec![k]).collect();
    for b in plaquette_operators(&c)? {
        let mut r = b.support();
        regions.push(r.clone());
        r.push((r[0] + 9) % 18);
        r.sort_unstable();
        r.dedup();
        regions.push(r);
    }
    for _ in 0..30 {
        let mut r: Vec<usize> = (0..18).filter(|_| rng.random_bool(0.2)).take(5).collect();
        if r.is_empty() {
            r.push(rng.random_range(0..18));
        }
        regions.push(r);
    }
    let mut differing = 0;
    for r in &regions {
        let same = (sdense::reduced_density(&psi1, 18, r)? - sdense::reduced_density(&psi2, 18, r)?).norm() < 1e-9;
        differing += usize::from(!same);
        if reduced_state_equal(&g1, &g2, r)? != same {
            mismatches.push("reduced state");
        }
    }

    // ranks, kernels and Smith forms against dense elimination
    let mut lin = 0;
    for trial in 0..300u64 {
        let p = [2, 3, 5, 7, 11][trial as usize % 5];
        let rows = rng.random_range(1..=12);
        let cols = rng.random_range(1..=12);
        let dense_m: Vec<Vec<u64>> =
            (0..rows).map(|_| (0..cols).map(|_| if rng.random_bool(0.4) { rng.random_range(0..p) } else { 0 }).collect()).collect();
        let m = SparseMat::from_dense(&dense_m, cols, p)?;
        let r = rank_mod_p(&m, p)?;
        if r != dense::rank(&dense_m, p) || kernel_basis_mod_p(&m, p)?.len() != dense::kernel(&dense_m, cols, p).len() {
            mismatches.push("rank");
        }
        let ints: Vec<Vec<i128>> =
            (0..rows).map(|_| (0..cols).map(|_| if rng.random_bool(0.4) { rng.random_range(-4i128..=4) } else { 0 }).collect()).collect();
        let entries = ints
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(|e| *e.1 != 0).map(move |(j, &v)| (i, j, v as i64)))
            .collect();
        let snf: Vec<i128> = smith_normal_form_int(&IntMat::new(rows, cols, entries)?)
            .iter()
            .map(|b| b.to_string().parse().expect("small"))
            .collect();
        if snf != dense::smith_invariants(&ints) {
            mismatches.push("smith");
        }
        lin += 1;
    }

    mismatches.dedup();
    Ok((
        mismatches.is_empty(),
        format!(
            "{} gate cases, 50 groups, 18-qubit torus ({} of {} regions see the string), {lin} matrices; mismatches: {:?}",
            gates.len() * 16,
            differing,
            regions.len(),
            mismatches
        ),
    ))
}
