//! Number operator, position and momentum, the oscillator algebra, lower
//! symbols and the realization of the ladder operators on anti-regular
//! polynomials.

use rand::Rng;

use crate::antiregular::AntiRegularPoly;
use crate::coherent::cs_vector;
use crate::error::{QuatError, Result};
use crate::linalg::{adjoint_defect, RqOperator, RqVector, ScaledOperator};
use crate::quantize::{analytic_aq, analytic_aqbar, commutator_check, quantize, CommutatorReport, QuadratureGrid, Symbol};
use crate::quaternion::{exp_pair, Quaternion};

const SERIES_TOL: f64 = 1e-17;

/// `N_op = A_q̄ A_q`, diagonal `0, 1, …, N−1`.
pub fn number_operator(dim: usize) -> Result<RqOperator> {
    if dim == 0 {
        return Err(QuatError::DimensionTooSmall { min: 1, found: 0 });
    }
    let diag: Vec<f64> = (0..dim).map(|k| k as f64).collect();
    Ok(RqOperator::diagonal(&diag))
}

/// `H_h = N_op + 𝕀`.
pub fn oscillator_hamiltonian(dim: usize) -> Result<RqOperator> {
    number_operator(dim)?.add(&RqOperator::identity(dim))
}

/// `⟨γ_p|A_f|γ_p⟩` computed twice: from the truncated matrix and from the
/// integral of `Φ(p, q) = e^{-(|q|²+|p|²)} E(p̄, q) f(q) E(q̄, p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowerSymbolReport {
    pub label: Quaternion,
    pub via_matrix: Quaternion,
    pub via_integral: Quaternion,
    pub discrepancy: f64,
    /// Norm mass of `γ_p` beyond the truncation.
    pub tail_bound: f64,
}

pub fn lower_symbol(f: &Symbol, p: Quaternion, grid: &QuadratureGrid, dim: usize) -> Result<LowerSymbolReport> {
    let op = quantize(f, grid, dim)?.operator;
    let gamma = cs_vector(p, dim)?;
    let via_matrix = gamma.vector.inner(&op.apply(&gamma.vector)?)?;
    let pb = p.conj();
    let scale = (-p.norm_sqr()).exp();
    // the grid already carries e^{-|q|²}
    let via_integral = grid.integrate(|q| {
        exp_pair(pb, q, SERIES_TOL) * f.eval(q) * exp_pair(q.conj(), p, SERIES_TOL) * scale
    });
    Ok(LowerSymbolReport {
        label: p,
        via_matrix,
        via_integral,
        discrepancy: via_matrix.dist(via_integral),
        tail_bound: gamma.tail_bound,
    })
}

/// Alias of [`lower_symbol`]; only pointwise values are offered.
pub fn berezin(f: &Symbol, p: Quaternion, grid: &QuadratureGrid, dim: usize) -> Result<LowerSymbolReport> {
    lower_symbol(f, p, grid, dim)
}

/// `⟨γ_p|O|γ_p⟩` for a matrix operator.
pub fn expectation(op: &RqOperator, p: Quaternion) -> Result<Quaternion> {
    let gamma = cs_vector(p, op.dim())?;
    gamma.vector.inner(&op.apply(&gamma.vector)?)
}

/// `Q = (A_q + A_q̄)/√2`.
pub fn position_operator(dim: usize) -> Result<RqOperator> {
    Ok(analytic_aq(dim)?
        .add(&analytic_aqbar(dim)?)?
        .scale_real(std::f64::consts::FRAC_1_SQRT_2))
}

/// `P = (−i/√2)(A_q − A_q̄)` as a scaled composite.
pub fn naive_momentum(dim: usize) -> Result<ScaledOperator> {
    let base = analytic_aq(dim)?.sub(&analytic_aqbar(dim)?)?;
    Ok(ScaledOperator::new(
        Quaternion::new(0.0, -std::f64::consts::FRAC_1_SQRT_2, 0.0, 0.0),
        base,
    ))
}

/// A pair `(u, v)` with `⟨u|P v⟩ ≠ ⟨P̃ u|v⟩` where `P̃ = (ᾱ)·O†` is the naive
/// adjoint.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumWitness {
    pub u: RqVector,
    pub v: RqVector,
    pub lhs: Quaternion,
    pub rhs: Quaternion,
}

impl MomentumWitness {
    pub fn gap(&self) -> f64 {
        self.lhs.dist(self.rhs)
    }
}

/// First witness among basis vectors scaled by `1, i, j, k`, scanning `u`
/// then `v` in index order.
pub fn find_adjoint_witness(op: &ScaledOperator, tol: f64) -> Result<Option<MomentumWitness>> {
    let dim = op.base.dim();
    let units = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let candidates: Vec<RqVector> = (0..dim)
        .flat_map(|m| units.iter().map(move |&s| RqVector::basis_scaled(dim, m, s)))
        .collect();
    for u in &candidates {
        for v in &candidates {
            let (lhs, rhs) = adjoint_defect(op.alpha, &op.base, u, v)?;
            if lhs.dist(rhs) > tol {
                return Ok(Some(MomentumWitness {
                    u: u.clone(),
                    v: v.clone(),
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

/// A point where `½(𝔮² + 𝔭²) ≠ |q|²` with `𝔮 = (q+q̄)/√2`,
/// `𝔭 = −i(q−q̄)/√2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalWitness {
    pub q: Quaternion,
    pub half_sum: Quaternion,
    pub norm_sqr: f64,
}

impl ClassicalWitness {
    pub fn gap(&self) -> f64 {
        self.half_sum.dist(Quaternion::real(self.norm_sqr))
    }
}

pub fn classical_half_sum(q: Quaternion) -> Quaternion {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let pos = (q + q.conj()) * s;
    let mom = Quaternion::I * (q - q.conj()) * (-s);
    (pos * pos + mom * mom) * 0.5
}

/// Samples `q` uniformly in the box `[-1, 1]⁴` until the classical identity
/// fails by more than `tol`.
pub fn classical_hamiltonian_witness<R: Rng + ?Sized>(
    rng: &mut R,
    tol: f64,
    attempts: usize,
) -> Option<ClassicalWitness> {
    (0..attempts).find_map(|_| {
        let q = Quaternion::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let w = ClassicalWitness {
            q,
            half_sum: classical_half_sum(q),
            norm_sqr: q.norm_sqr(),
        };
        (w.gap() > tol).then_some(w)
    })
}

/// Weyl–Heisenberg relations on a truncated space.
#[derive(Clone, Debug, PartialEq)]
pub struct OscillatorReport {
    pub dim: usize,
    /// `max |[N, A_q] + A_q|` over entries not touching index `N−1`.
    pub lowering_defect: f64,
    /// `max |[N, A_q̄] − A_q̄|` over the same entries.
    pub raising_defect: f64,
    /// `max |[N, N]|`.
    pub self_commutator: f64,
    /// `max |N − A_q̄ A_q|` over all entries.
    pub factorization_defect: f64,
    pub commutator: CommutatorReport,
}

pub fn oscillator_algebra_check(dim: usize) -> Result<OscillatorReport> {
    if dim < 3 {
        return Err(QuatError::DimensionTooSmall { min: 3, found: dim });
    }
    let n = number_operator(dim)?;
    let a = analytic_aq(dim)?;
    let ad = analytic_aqbar(dim)?;
    let safe = dim - 1;
    let lowering_defect = n
        .commutator(&a)?
        .add(&a)?
        .max_diff_leading(&RqOperator::zeros(dim), safe);
    let raising_defect = n
        .commutator(&ad)?
        .sub(&ad)?
        .max_diff_leading(&RqOperator::zeros(dim), safe);
    let self_commutator = n.commutator(&n)?.max_diff(&RqOperator::zeros(dim));
    let factorization_defect = ad.matmul(&a)?.max_diff(&n);
    Ok(OscillatorReport {
        dim,
        lowering_defect,
        raising_defect,
        self_commutator,
        factorization_defect,
        commutator: commutator_check(dim)?,
    })
}

/// Ladder matrices against the Cullen derivative and multiplication by `q̄`
/// under `e_m ↔ φ_m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DifferentialModelReport {
    pub dim: usize,
    /// `A_q` vs `∂/∂q̄`, degrees `0..N`.
    pub annihilation_defect: f64,
    /// `A_q̄` vs `q̄·`, degrees `0..N−1` (the top degree leaves the space).
    pub creation_defect: f64,
    /// `N_op` vs `q̄ ∂/∂q̄`, degrees `0..N`.
    pub number_defect: f64,
}

impl DifferentialModelReport {
    pub fn max_defect(&self) -> f64 {
        self.annihilation_defect
            .max(self.creation_defect)
            .max(self.number_defect)
    }
}

pub fn differential_model_check(dim: usize) -> Result<DifferentialModelReport> {
    if dim < 2 {
        return Err(QuatError::DimensionTooSmall { min: 2, found: dim });
    }
    let a = analytic_aq(dim)?;
    let ad = analytic_aqbar(dim)?;
    let n = number_operator(dim)?;
    let coords = |v: &RqVector| AntiRegularPoly::from_phi_coordinates(v.components());
    let mut report = DifferentialModelReport {
        dim,
        annihilation_defect: 0.0,
        creation_defect: 0.0,
        number_defect: 0.0,
    };
    // basis vectors with a non-real right coefficient, so the right action is exercised
    let c = Quaternion::new(0.5, -1.0, 0.25, 2.0);
    for m in 0..dim {
        let e = RqVector::basis_scaled(dim, m, c);
        let phi = coords(&e);
        let d = phi.cullen_derivative();
        report.annihilation_defect = report
            .annihilation_defect
            .max(coords(&a.apply(&e)?).max_diff(&d));
        report.number_defect = report
            .number_defect
            .max(coords(&n.apply(&e)?).max_diff(&d.multiply_by_conjugate_var()));
        if m + 1 < dim {
            report.creation_defect = report
                .creation_defect
                .max(coords(&ad.apply(&e)?).max_diff(&phi.multiply_by_conjugate_var()));
        }
    }
    Ok(report)
}
