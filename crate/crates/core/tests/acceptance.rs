//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use quatcs::coherent::{cs_eigen_check, cs_vector, overlap};
use quatcs::hermite::{
    hermite_cs_and_quantize, hermite_nm, hermite_orthogonality_s, two_index_kernel_partial, HermiteFamily,
    HermiteFamilyS,
};
use quatcs::linalg::{adjoint_defect, RqOperator, RqVector};
use quatcs::observables::{differential_model_check, expectation, number_operator, oscillator_algebra_check};
use quatcs::quantize::{
    analytic_aq, analytic_aqbar, build_grid, commutator_check, moment_check, quantize, GridOrders, QuadratureGrid,
    Symbol,
};
use quatcs::quaternion::{ImaginaryUnit, Quaternion};
use quatcs::slice::canonical_commutation_check;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: usize = 16;
const SEED: u64 = 0x5eed_0001;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    error: f64,
    tolerance: f64,
    note: String,
}

impl Outcome {
    fn new(error: f64, tolerance: f64) -> Self {
        Self { error, tolerance, note: String::new() }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    fn passed(&self) -> bool {
        self.error.is_finite() && self.error <= self.tolerance
    }
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

fn ladder_reproduction() -> Outcome {
    let grid = build_grid(N, 1).unwrap();
    let aq = quantize(&Symbol::q(), &grid, N).unwrap().operator;
    let aqb = quantize(&Symbol::qbar(), &grid, N).unwrap().operator;
    let err = aq
        .max_diff(&analytic_aq(N).unwrap())
        .max(aqb.max_diff(&analytic_aqbar(N).unwrap()));
    Outcome::new(err, 1e-12)
}

fn unit_symbol() -> Outcome {
    let grid = build_grid(N, 0).unwrap();
    let a1 = quantize(&Symbol::one(), &grid, N).unwrap().operator;
    Outcome::new(a1.max_diff(&RqOperator::identity(N)), 1e-12)
}

fn oscillator_hamiltonian() -> Outcome {
    let grid = build_grid(N, 2).unwrap();
    let h = quantize(&Symbol::norm_sqr(), &grid, N).unwrap().operator;
    let target = number_operator(N).unwrap().add(&RqOperator::identity(N)).unwrap();
    Outcome::new(h.max_diff_leading(&target, N - 1), 1e-10)
}

fn commutator() -> Outcome {
    let r = commutator_check(N).unwrap();
    Outcome::new(r.safe_defect.max(r.corner_defect()), 1e-13)
        .with_note(format!("corner = {}", r.corner.x0))
}

fn weyl_heisenberg() -> Outcome {
    let r = oscillator_algebra_check(N).unwrap();
    Outcome::new(r.lowering_defect.max(r.raising_defect), 1e-13)
}

fn counterexample() -> Outcome {
    let alpha = Quaternion::new(0.0, 1.0, 2.0, 0.0);
    let u = RqVector::new(vec![Quaternion::K]);
    let v = RqVector::new(vec![Quaternion::J]);
    let (lhs, rhs) = adjoint_defect(alpha, &RqOperator::identity(1), &u, &v).unwrap();
    let exact = lhs == Quaternion::new(1.0, 0.0, 0.0, -2.0) && rhs == Quaternion::new(1.0, 0.0, 0.0, 2.0);
    Outcome::new(if exact { 0.0 } else { f64::INFINITY }, 0.0)
        .with_note(format!("({lhs}, {rhs})"))
}

fn lower_symbol_of_number() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let n = number_operator(32).unwrap();
    let err = (0..100)
        .map(|_| {
            let p = ball_point(&mut rng, 1.5);
            expectation(&n, p).unwrap().dist(Quaternion::real(p.norm_sqr()))
        })
        .fold(0.0, f64::max);
    Outcome::new(err, 1e-8)
}

fn overlap_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let err = (0..100)
        .map(|_| {
            let p = ball_point(&mut rng, 1.5);
            let q = ball_point(&mut rng, 1.5);
            let direct = cs_vector(q, 32)
                .unwrap()
                .vector
                .inner(&cs_vector(p, 32).unwrap().vector)
                .unwrap();
            overlap(p, q, 1e-17).dist(direct)
        })
        .fold(0.0, f64::max);
    Outcome::new(err, 1e-10)
}

fn slice_qm() -> Outcome {
    let units = [
        ImaginaryUnit::I,
        ImaginaryUnit::J,
        ImaginaryUnit::from_direction([1.0, 1.0, 1.0]).unwrap(),
    ];
    let err = units
        .iter()
        .map(|&u| {
            let r = canonical_commutation_check(u, N).unwrap();
            r.commutator_defect.max(r.hamiltonian_defect)
        })
        .fold(0.0, f64::max);
    Outcome::new(err, 1e-13)
}

fn cullen_model() -> Outcome {
    Outcome::new(differential_model_check(N).unwrap().max_defect(), 1e-13)
}

fn moment_problem() -> Outcome {
    let grid = QuadratureGrid::new(GridOrders { radial: 11, theta: 2, phi: 1, psi: 1 }).unwrap();
    let mut fact = 1.0f64;
    let mut worst = 0.0f64;
    for m in 0..=20 {
        if m > 0 {
            fact *= m as f64;
        }
        let got = moment_check(&grid, m).unwrap();
        worst = worst.max((got - fact).abs() / fact);
    }
    Outcome::new(worst, 1e-12)
}

fn hermite_one() -> Outcome {
    let fam = HermiteFamilyS::new(0.5).unwrap();
    let gram = hermite_orthogonality_s(fam, 6, None).unwrap();
    let ratio = (0..20)
        .map(|n| {
            let r = fam.b(n + 1) / fam.b(n);
            (r - fam.b_ratio(n)).abs() / r
        })
        .fold(0.0, f64::max);
    let scaled = (gram.max_defect / 1e-8).max(ratio / 1e-13);
    Outcome::new(scaled, 1.0).with_note(format!(
        "Gram {:.1e} (tol 1e-8), b ratio {ratio:.1e} (tol 1e-13)",
        gram.max_defect
    ))
}

fn hermite_two() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut h11 = 0.0f64;
    let mut kernel = 0.0f64;
    for _ in 0..50 {
        let q = ball_point(&mut rng, 2.0);
        h11 = h11.max(hermite_nm(1, 1, q).dist(Quaternion::real(q.norm_sqr() - 1.0)));
        let e = q.norm_sqr().exp();
        kernel = kernel.max((two_index_kernel_partial(0, q, 60) - e).abs() / e);
    }
    let r = hermite_cs_and_quantize(HermiteFamily::TwoIndex { n: 0 }, None, N, &[]).unwrap();
    let ladder = r
        .aq
        .max_diff(&analytic_aq(N).unwrap())
        .max(r.aqbar.max_diff(&analytic_aqbar(N).unwrap()));
    // each part divided by its own tolerance
    let scaled = (h11 / 1e-12).max(kernel / 1e-8).max(ladder / 1e-10);
    Outcome::new(scaled, 1.0).with_note(format!(
        "H11 {h11:.1e} (tol 1e-12), kernel {kernel:.1e} (tol 1e-8), n=0 ladders {ladder:.1e} (tol 1e-10)"
    ))
}

fn cs_eigen_relation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let err = (0..100)
        .map(|_| cs_eigen_check(ball_point(&mut rng, 1.0), 32).unwrap().safe_defect)
        .fold(0.0, f64::max);
    Outcome::new(err, 1e-12)
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("ladder reproduction", ladder_reproduction),
        ("unit symbol", unit_symbol),
        ("oscillator Hamiltonian", oscillator_hamiltonian),
        ("commutator and truncation corner", commutator),
        ("Weyl-Heisenberg relations", weyl_heisenberg),
        ("adjoint counterexample", counterexample),
        ("lower symbol of N", lower_symbol_of_number),
        ("overlap kernel", overlap_formula),
        ("slice canonical quantization", slice_qm),
        ("Cullen derivative model", cullen_model),
        ("moment problem", moment_problem),
        ("Hermite one-index", hermite_one),
        ("Hermite two-index", hermite_two),
        ("coherent-state eigen-relation", cs_eigen_relation),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.passed() { "PASS" } else { "FAIL" };
        failures += usize::from(!o.passed());
        let note = if o.note.is_empty() { String::new() } else { format!("  [{}]", o.note) };
        println!(
            "{tag} {:>2} {name:<34} error {:.3e}  tol {:.0e}{note}",
            k + 1,
            o.error,
            o.tolerance
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
