//! The verification suites behind `quatcs --suite`.

use std::time::Instant;

use quatcs::antiregular::AntiRegularPoly;
use quatcs::coherent::{cs_eigen_check, cs_from_exponential, cs_vector, overlap, poisson_tail};
use quatcs::hermite::{
    hermite_cs_and_quantize, hermite_n, hermite_n_recurrence, hermite_nm, hermite_orthogonality_s,
    two_index_kernel_partial, HermiteFamily, HermiteFamilyS,
};
use quatcs::linalg::{adjoint_defect, RqOperator, RqVector};
use quatcs::observables::{
    classical_hamiltonian_witness, differential_model_check, expectation, find_adjoint_witness, lower_symbol,
    naive_momentum, number_operator, oscillator_algebra_check, position_operator,
};
use quatcs::quantize::{
    analytic_aq, analytic_aqbar, commutator_check, moment_check, quantize, Certificate, GridOrders,
    QuadratureGrid, Symbol,
};
use quatcs::quaternion::{exp_pair, ImaginaryUnit, Quaternion};
use quatcs::slice::{canonical_commutation_check, classical_slice_hamiltonian, slice_operators, slice_resolution_check};
use quatcs::QuatError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Config, SUITE_SYMBOL_DEGREE};
use crate::report::{CheckRecord, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    CoreAlgebra,
    HilbertAxioms,
    Cs,
    QuantizeCanonical,
    Observables,
    Slice,
    HermiteOne,
    HermiteTwo,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::CoreAlgebra,
        Suite::HilbertAxioms,
        Suite::Cs,
        Suite::QuantizeCanonical,
        Suite::Observables,
        Suite::Slice,
        Suite::HermiteOne,
        Suite::HermiteTwo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CoreAlgebra => "core-algebra",
            Suite::HilbertAxioms => "hilbert-axioms",
            Suite::Cs => "cs",
            Suite::QuantizeCanonical => "quantize-canonical",
            Suite::Observables => "observables",
            Suite::Slice => "slice",
            Suite::HermiteOne => "hermite-one",
            Suite::HermiteTwo => "hermite-two",
            Suite::All => "all",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|s| s.name() == name)
    }

    fn index(self) -> u64 {
        Self::EACH.iter().position(|s| *s == self).unwrap_or(8) as u64
    }
}

/// Collects records for one suite, applying the tolerance override.
struct Checks<'a> {
    suite: &'static str,
    cfg: &'a Config,
    out: Vec<CheckRecord>,
}

impl<'a> Checks<'a> {
    fn new(suite: Suite, cfg: &'a Config) -> Self {
        Self { suite: suite.name(), cfg, out: Vec::new() }
    }

    fn add(&mut self, id: &str, anchor: &str, err: f64, tol: f64) -> &mut CheckRecord {
        let tol = self.cfg.tolerance.unwrap_or(tol);
        self.out.push(CheckRecord::new(self.suite, id, anchor, err, tol));
        self.out.last_mut().expect("just pushed")
    }

    fn add_values(&mut self, id: &str, anchor: &str, err: f64, tol: f64, values: Vec<Quaternion>) {
        self.add(id, anchor, err, tol).values = values;
    }
}

fn rng_for(cfg: &Config, suite: Suite) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ (suite.index() << 56))
}

fn ball_point(rng: &mut impl Rng, radius: f64) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.random_range(-radius..radius),
            rng.random_range(-radius..radius),
            rng.random_range(-radius..radius),
            rng.random_range(-radius..radius),
        );
        if q.norm() <= radius {
            return q;
        }
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    // NaN poisons the maximum so that it cannot pass
    it.into_iter()
        .fold(0.0, |a: f64, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

fn found(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Run one suite (or all of them) and assemble the report.
pub fn run_suite(suite: Suite, cfg: &Config) -> Result<SuiteReport, QuatError> {
    let start = Instant::now();
    let checks = if suite == Suite::All {
        let parts: Vec<Result<Vec<CheckRecord>, QuatError>> =
            Suite::EACH.par_iter().map(|&s| run_checks(s, cfg)).collect();
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        all
    } else {
        run_checks(suite, cfg)?
    };
    let wall_ms = start.elapsed().as_millis() as u64;
    Ok(SuiteReport::new(suite.name(), cfg.clone(), checks, wall_ms))
}

fn run_checks(suite: Suite, cfg: &Config) -> Result<Vec<CheckRecord>, QuatError> {
    let mut c = Checks::new(suite, cfg);
    match suite {
        Suite::CoreAlgebra => core_algebra(&mut c)?,
        Suite::HilbertAxioms => hilbert_axioms(&mut c)?,
        Suite::Cs => coherent_states(&mut c)?,
        Suite::QuantizeCanonical => quantize_canonical(&mut c)?,
        Suite::Observables => observables(&mut c)?,
        Suite::Slice => slice(&mut c)?,
        Suite::HermiteOne => hermite_one(&mut c)?,
        Suite::HermiteTwo => hermite_two(&mut c)?,
        Suite::All => unreachable!("expanded by run_suite"),
    }
    Ok(c.out)
}

const SAMPLES: usize = 64;

fn core_algebra(c: &mut Checks) -> Result<(), QuatError> {
    let mut rng = rng_for(c.cfg, Suite::CoreAlgebra);
    let pairs: Vec<(Quaternion, Quaternion)> = (0..SAMPLES)
        .map(|_| (ball_point(&mut rng, 2.0), ball_point(&mut rng, 2.0)))
        .collect();
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    let minus_one = Quaternion::real(-1.0);
    let relations = [i * i, j * j, k * k, i * j * k]
        .into_iter()
        .map(|x| x.dist(minus_one))
        .chain([(i * j).dist(k), (j * i).dist(-k)]);
    c.add("defining-relations", "i² = j² = k² = ijk = −1", max_of(relations), 0.0);
    c.add(
        "matrix-homomorphism",
        "ρ(pq) = ρ(p)ρ(q), ρ(q̄) = ρ(q)†",
        max_of(pairs.iter().map(|&(p, q)| {
            let prod = (p * q).to_matrix().max_diff(&p.to_matrix().matmul(&q.to_matrix()));
            prod.max(p.conj().to_matrix().max_diff(&p.to_matrix().adjoint()))
        })),
        1e-12,
    );
    c.add(
        "determinant-is-norm",
        "det ρ(q) = |q|²",
        max_of(pairs.iter().map(|&(p, _)| (p.to_matrix().det().re - p.norm_sqr()).abs())),
        1e-12,
    );
    c.add(
        "norm-multiplicative",
        "|pq| = |p||q|",
        max_of(pairs.iter().map(|&(p, q)| ((p * q).norm() - p.norm() * q.norm()).abs())),
        1e-12,
    );
    c.add(
        "polar-round-trip",
        "q = r e^{I(n̂)θ}",
        max_of(pairs.iter().map(|&(p, _)| {
            let pf = p.to_polar();
            let range = if pf.in_canonical_range() { 0.0 } else { f64::INFINITY };
            Quaternion::from_polar(pf).dist(p).max(pf.to_matrix().max_diff(&p.to_matrix())).max(range)
        })),
        1e-12,
    );
    c.add(
        "slice-decomposition",
        "q = x + yI, y ≥ 0",
        max_of(pairs.iter().map(|&(p, _)| {
            let s = p.slice_decompose();
            s.embed().dist(p) + found(s.y >= 0.0)
        })),
        1e-12,
    );
    c.add(
        "exp-pair-on-slice",
        "E(1, q) = e^q",
        max_of(pairs.iter().map(|&(p, _)| {
            let e = p.exp();
            exp_pair(Quaternion::ONE, p, 1e-17).dist(e) / e.norm().max(1.0)
        })),
        1e-12,
    );
    Ok(())
}

fn hilbert_axioms(c: &mut Checks) -> Result<(), QuatError> {
    let n = c.cfg.trunc_dim;
    let mut rng = rng_for(c.cfg, Suite::HilbertAxioms);
    let vec_of = |rng: &mut ChaCha8Rng| RqVector::new((0..n).map(|_| ball_point(rng, 1.0)).collect());
    let mut conj_sym = 0.0f64;
    let mut right_lin = 0.0f64;
    let mut cs = 0.0f64;
    let mut adj = 0.0f64;
    let mut embed = 0.0f64;
    for _ in 0..16 {
        let u = vec_of(&mut rng);
        let v = vec_of(&mut rng);
        let a = ball_point(&mut rng, 2.0);
        let op = RqOperator::from_fn(n, |_, _| ball_point(&mut rng, 1.0));
        let op2 = RqOperator::from_fn(n, |_, _| ball_point(&mut rng, 1.0));
        let scale = u.norm() * v.norm();
        let uv = u.inner(&v)?;
        conj_sym = conj_sym.max(uv.conj().dist(v.inner(&u)?) / scale);
        right_lin = right_lin.max(u.inner(&v.right_mul(a))?.dist(uv * a) / (scale * a.norm()));
        cs = cs.max(((uv.norm() - scale) / scale).max(0.0));
        let lhs = u.inner(&op.apply(&v)?)?;
        let rhs = op.adjoint().apply(&u)?.inner(&v)?;
        adj = adj.max(lhs.dist(rhs) / scale);
        let via = RqOperator::from_complex_embedding(&(&op.complex_embedding() * &op2.complex_embedding()), 1e-9)?;
        embed = embed.max(via.max_diff(&op.matmul(&op2)?));
    }
    c.add("conjugate-symmetry", "⟨u|v⟩ = conj⟨v|u⟩", conj_sym, 1e-12);
    c.add("right-linearity", "⟨u|v·a⟩ = ⟨u|v⟩a", right_lin, 1e-12);
    c.add("cauchy-schwarz", "|⟨u|v⟩| ≤ ‖u‖‖v‖", cs, 1e-12);
    c.add("adjoint-relation", "⟨u|Av⟩ = ⟨A†u|v⟩", adj, 1e-12);
    c.add("complex-embedding", "χ(AB) = χ(A)χ(B)", embed, 1e-11);

    let alpha = Quaternion::new(0.0, 1.0, 2.0, 0.0);
    let (lhs, rhs) = adjoint_defect(
        alpha,
        &RqOperator::identity(1),
        &RqVector::new(vec![Quaternion::K]),
        &RqVector::new(vec![Quaternion::J]),
    )?;
    let exact = lhs == Quaternion::new(1.0, 0.0, 0.0, -2.0) && rhs == Quaternion::new(1.0, 0.0, 0.0, 2.0);
    c.add_values(
        "adjoint-counterexample",
        "α = i+2j, u = k, v = j gives (1−2k, 1+2k)",
        found(exact),
        0.0,
        vec![lhs, rhs],
    );
    Ok(())
}

fn coherent_states(c: &mut Checks) -> Result<(), QuatError> {
    let dim = c.cfg.cs_dim;
    let mut rng = rng_for(c.cfg, Suite::Cs);
    let mut norm_excess = 0.0f64;
    let mut overlap_excess = 0.0f64;
    let mut self_overlap = 0.0f64;
    let mut eigen = 0.0f64;
    let mut generation = 0.0f64;
    for _ in 0..SAMPLES {
        let p = ball_point(&mut rng, 1.5);
        let q = ball_point(&mut rng, 1.5);
        let gp = cs_vector(p, dim)?;
        let gq = cs_vector(q, dim)?;
        norm_excess = norm_excess.max((gp.normalization_defect() - gp.tail_bound).max(0.0));
        // the truncated inner product misses at most √(tail_p tail_q)
        let direct = gq.vector.inner(&gp.vector)?;
        let slack = (gp.tail_bound * gq.tail_bound).sqrt();
        overlap_excess = overlap_excess.max((overlap(p, q, 1e-17).dist(direct) - slack).max(0.0));
        self_overlap = self_overlap.max(overlap(p, p, 1e-17).dist(Quaternion::ONE));
        let small = p * (1.0 / 1.5);
        eigen = eigen.max(cs_eigen_check(small, dim)?.safe_defect);
        generation = generation.max(cs_from_exponential(p, dim)?.max_diff(&gp.vector));
    }
    c.add("normalization", "‖γ_q‖² = 1 − tail", norm_excess, 1e-14);
    c.add("overlap-formula", "⟨γ_q|γ_p⟩ = e^{−(|q|²+|p|²)/2} E(q̄, p)", overlap_excess, 1e-10);
    c.add("overlap-diagonal", "⟨γ_q|γ_q⟩ = 1", self_overlap, 1e-13);
    c.add("eigen-relation", "A_q γ_q = γ_q q on safe components", eigen, 1e-12);
    c.add("exponential-generation", "γ_q = e^{−|q|²/2} e^{q̄ A_q̄} e_0", generation, 1e-12);
    Ok(())
}

fn quantize_canonical(c: &mut Checks) -> Result<(), QuatError> {
    let n = c.cfg.trunc_dim;
    let grid = QuadratureGrid::new(c.cfg.grid_orders())?;
    let cert = grid.certificate();
    c.add(
        "grid-certificate",
        "grid exact for degree-2 symbols",
        found(cert.covers(&Certificate::required(n, SUITE_SYMBOL_DEGREE))),
        0.0,
    );
    let id = RqOperator::identity(n);
    let a1 = quantize(&Symbol::one(), &grid, n)?.operator;
    c.add("unit-symbol", "A_1 = 𝕀", a1.max_diff(&id), 1e-12);
    let aq = quantize(&Symbol::q(), &grid, n)?;
    c.add("ladder-aq", "A_q e_k = e_{k−1}√k", aq.operator.max_diff(&analytic_aq(n)?), 1e-12);
    let aqb = quantize(&Symbol::qbar(), &grid, n)?.operator;
    c.add("ladder-aqbar", "A_q̄ e_k = e_{k+1}√(k+1)", aqb.max_diff(&analytic_aqbar(n)?), 1e-12);
    let h = quantize(&Symbol::norm_sqr(), &grid, n)?.operator;
    let target = number_operator(n)?.add(&id)?;
    c.add("oscillator-hamiltonian", "A_{|q|²} = N + 𝕀", h.max_diff_leading(&target, n - 1), 1e-10);
    let mixed = quantize(&Symbol::monomial(1, Quaternion::new(0.3, -0.2, 1.0, 0.4), 1), &grid, n)?;
    c.add(
        "angular-selection",
        "q c q̄ vanishes off the diagonal",
        mixed.off_pattern_residual.unwrap_or(f64::NAN),
        1e-12,
    );
    let comm = commutator_check(n)?;
    c.add("commutator", "[A_q, A_q̄] = 𝕀 below the cut", comm.safe_defect, 1e-13);
    c.add_values(
        "commutator-corner",
        "[A_q, A_q̄]_{N−1,N−1} = 1 − N",
        comm.corner_defect(),
        1e-13,
        vec![comm.corner],
    );
    let top = cert.radial_degree.min(20);
    let mut fact = 1.0f64;
    let mut worst = 0.0f64;
    for m in 0..=top {
        if m > 0 {
            fact *= m as f64;
        }
        worst = worst.max((moment_check(&grid, m)? - fact).abs() / fact);
    }
    c.add("moment-problem", "∫ r^{2m} 2r e^{−r²} dr = m!", worst, 1e-12);
    let over = moment_check(&grid, cert.radial_degree + 1);
    c.add(
        "moment-beyond-certificate",
        "orders past the certificate are refused",
        found(matches!(over, Err(QuatError::BeyondCertificate { .. }))),
        0.0,
    );
    Ok(())
}

fn observables(c: &mut Checks) -> Result<(), QuatError> {
    let n = c.cfg.trunc_dim;
    let mut rng = rng_for(c.cfg, Suite::Observables);
    let osc = oscillator_algebra_check(n)?;
    c.add("number-factorization", "N = A_q̄ A_q", osc.factorization_defect, 1e-13);
    c.add("weyl-heisenberg-lowering", "[N, A_q] = −A_q", osc.lowering_defect, 1e-13);
    c.add("weyl-heisenberg-raising", "[N, A_q̄] = A_q̄", osc.raising_defect, 1e-13);
    c.add("number-self-commutator", "[N, N] = 0", osc.self_commutator, 0.0);

    let nop = number_operator(n)?;
    let mut excess = 0.0f64;
    for _ in 0..100 {
        let p = ball_point(&mut rng, 1.5);
        let r2 = p.norm_sqr();
        // the truncated expectation is |p|²(1 − tail_{N−1})
        let slack = r2 * poisson_tail(r2, n - 1);
        excess = excess.max((expectation(&nop, p)?.dist(Quaternion::real(r2)) - slack).max(0.0));
    }
    c.add("lower-symbol-number", "⟨γ_p|N|γ_p⟩ = |p|²", excess, 1e-8);

    let fine = QuadratureGrid::new(GridOrders { radial: 40, theta: 64, phi: 4, psi: 6 })?;
    let mut dual = 0.0f64;
    for _ in 0..3 {
        let p = ball_point(&mut rng, 1.0);
        let r = lower_symbol(&Symbol::q(), p, &fine, n)?;
        let slack = p.norm() * poisson_tail(p.norm_sqr(), n - 1);
        dual = dual.max((r.discrepancy - slack).max(0.0));
    }
    c.add("lower-symbol-dual-path", "⟨γ_p|A_q|γ_p⟩ = ∫ Φ(p, q) q", dual, 1e-8);

    let q = position_operator(n)?;
    c.add("position-self-adjoint", "Q = Q†", q.max_diff(&q.adjoint()), 0.0);
    let p = naive_momentum(n)?;
    let witness = find_adjoint_witness(&p, 1e-12)?;
    let values = witness.as_ref().map(|w| vec![w.lhs, w.rhs]).unwrap_or_default();
    c.add_values(
        "naive-momentum-witness",
        "⟨u|Pv⟩ ≠ ⟨P̃u|v⟩ for some basis pair",
        found(witness.is_some()),
        0.0,
        values,
    );
    let classical = classical_hamiltonian_witness(&mut rng, 1e-6, 1000);
    let values = classical.map(|w| vec![w.q, w.half_sum]).unwrap_or_default();
    c.add_values(
        "classical-hamiltonian-witness",
        "½(𝔮² + 𝔭²) ≠ |q|² off the complex slice",
        found(classical.is_some()),
        0.0,
        values,
    );
    let d = differential_model_check(n)?;
    c.add("cullen-annihilation", "A_q ↔ ∂/∂q̄", d.annihilation_defect, 1e-13);
    c.add("cullen-creation", "A_q̄ ↔ q̄·", d.creation_defect, 1e-13);
    c.add("cullen-number", "N ↔ q̄ ∂/∂q̄", d.number_defect, 1e-13);
    let phi1 = AntiRegularPoly::basis(1).cullen_derivative();
    c.add("cullen-phi1", "∂φ_1/∂q̄ = φ_0", phi1.max_diff(&AntiRegularPoly::basis(0)), 0.0);
    Ok(())
}

fn slice_units() -> [(&'static str, ImaginaryUnit); 3] {
    [
        ("i", ImaginaryUnit::I),
        ("j", ImaginaryUnit::J),
        ("diag", ImaginaryUnit::from_direction([1.0, 1.0, 1.0]).expect("nonzero")),
    ]
}

fn slice(c: &mut Checks) -> Result<(), QuatError> {
    let n = c.cfg.trunc_dim;
    let mut rng = rng_for(c.cfg, Suite::Slice);
    let radial = n / 2 + 1;
    let theta = 2 * n;
    let mut resolutions = Vec::new();
    for (name, unit) in slice_units() {
        let r = canonical_commutation_check(unit, n)?;
        c.add(&format!("commutator-{name}"), "[Q_I, P_I] = I·𝕀", r.commutator_defect, 1e-13);
        c.add(&format!("hamiltonian-{name}"), "Ĥ_I = N_I + ½𝕀", r.hamiltonian_defect, 1e-13);
        let ops = slice_operators(unit, n)?;
        c.add(
            &format!("self-adjoint-{name}"),
            "Q_I = Q_I†, P_I = P_I†",
            ops.position.self_adjoint_defect().max(ops.momentum.self_adjoint_defect()),
            0.0,
        );
        let res = slice_resolution_check(unit, n, radial, theta)?;
        resolutions.push(res);
        c.add(&format!("resolution-{name}"), "∫ |γ⟩⟨γ| dμ_I = 𝕀", res, 1e-12);
        let classical = max_of((0..SAMPLES).map(|_| {
            let (x, y) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            classical_slice_hamiltonian(unit, x, y).dist(Quaternion::real(x * x + y * y))
        }));
        c.add(&format!("classical-{name}"), "½(𝔮_I² + 𝔭_I²) = |q|²", classical, 1e-13);
    }
    c.add(
        "unit-independence",
        "resolution defect independent of I",
        (resolutions[0] - resolutions[2]).abs(),
        1e-13,
    );
    Ok(())
}

fn hermite_one(c: &mut Checks) -> Result<(), QuatError> {
    let n = c.cfg.trunc_dim;
    let mut rng = rng_for(c.cfg, Suite::HermiteOne);
    let fam = HermiteFamilyS::new(c.cfg.hermite_s)?;
    let gram = hermite_orthogonality_s(fam, 6, None)?;
    c.add("gram", "⟨h_m, h_n⟩ = δ_{mn}", gram.max_defect, 1e-8);
    let ratio = max_of((0..20).map(|k| {
        let r = fam.b(k + 1) / fam.b(k);
        (r - fam.b_ratio(k)).abs() / r
    }));
    c.add("b-ratio", "b_{n+1}/b_n = 2(1+s)(n+1)/(1−s)", ratio, 1e-13);
    let mut paths = 0.0f64;
    let mut kernel = 0.0f64;
    for _ in 0..SAMPLES {
        let q = ball_point(&mut rng, 2.0);
        for k in 0..=12 {
            let b = hermite_n_recurrence(k, q);
            paths = paths.max(hermite_n(k, q).dist(b) / b.norm().max(1.0));
        }
        let q = ball_point(&mut rng, 0.6);
        let series: f64 = (0..150).map(|k| fam.h(k, q).norm_sqr()).sum();
        kernel = kernel.max((series - fam.kernel(q)).abs() / fam.kernel(q));
    }
    c.add("sum-vs-recurrence", "explicit sum = three-term recurrence", paths, 1e-12);
    c.add("kernel", "Σ |h_n|² = K_s", kernel, 1e-10);
    let labels = [Quaternion::ZERO, Quaternion::new(0.2, 0.1, -0.1, 0.05)];
    let r = hermite_cs_and_quantize(HermiteFamily::OneIndex(fam), None, n, &labels)?;
    c.add("resolution", "A_1 = 𝕀", r.resolution_defect, 1e-10);
    c.add("adjoint", "A_q† = A_q̄", r.adjoint_defect, 1e-10);
    c.add("band", "A_q tridiagonal with zero diagonal", r.band_residual, 1e-10);
    c.add(
        "cs-mass",
        "‖η_q‖² ≤ 1",
        max_of(r.cs_missing_mass.iter().map(|&(_, m)| (-m).max(0.0))),
        1e-12,
    );
    Ok(())
}

fn hermite_two(c: &mut Checks) -> Result<(), QuatError> {
    let n = c.cfg.trunc_dim;
    let mut rng = rng_for(c.cfg, Suite::HermiteTwo);
    let mut h11 = 0.0f64;
    let mut sym = 0.0f64;
    let mut kernel = 0.0f64;
    for _ in 0..SAMPLES {
        let q = ball_point(&mut rng, 2.0);
        h11 = h11.max(hermite_nm(1, 1, q).dist(Quaternion::real(q.norm_sqr() - 1.0)));
        for a in 0..=4 {
            for b in 0..=4 {
                let x = hermite_nm(b, a, q);
                sym = sym.max(hermite_nm(a, b, q).conj().dist(x) / x.norm().max(1.0));
            }
        }
        let e = q.norm_sqr().exp();
        kernel = kernel.max((two_index_kernel_partial(0, q, 60) - e).abs() / e);
    }
    c.add("h11", "H_{1,1} = |q|² − 1", h11, 1e-12);
    c.add("conjugate-symmetry", "conj H_{n,m} = H_{m,n}", sym, 1e-12);
    c.add("kernel", "Σ_m |h_{0,m}|² = e^{|q|²}", kernel, 1e-8);
    let canon = hermite_cs_and_quantize(HermiteFamily::TwoIndex { n: 0 }, None, n, &[])?;
    let ladders = canon
        .aq
        .max_diff(&analytic_aq(n)?)
        .max(canon.aqbar.max_diff(&analytic_aqbar(n)?));
    c.add("n0-reduction", "n = 0 family gives the canonical ladders", ladders, 1e-10);
    let labels = [Quaternion::new(0.3, -0.2, 0.1, 0.2)];
    let r = hermite_cs_and_quantize(HermiteFamily::TwoIndex { n: 2 }, None, n, &labels)?;
    c.add("n2-resolution", "A_1 = 𝕀", r.resolution_defect, 1e-10);
    c.add("n2-adjoint", "A_q† = A_q̄", r.adjoint_defect, 1e-10);
    c.add("n2-band", "A_q superdiagonal", r.band_residual, 1e-10);
    Ok(())
}
