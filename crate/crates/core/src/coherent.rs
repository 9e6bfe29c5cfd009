//! Canonical right quaternionic coherent states on a truncated Fock basis,
//!
//! ```text
//! |γ_q⟩ = e^{-|q|²/2} Σ_m |e_m⟩ q^m / √m!
//! ```
//!
//! together with the overlap kernel, the eigen-relation `A_q|γ_q⟩ = |γ_q⟩q`
//! and generation from the vacuum by the creation operator.

use std::fmt;

use crate::error::{QuatError, Result};
use crate::linalg::{RqVector, ScaledOperator};
use crate::quantize::{analytic_aq, analytic_aqbar};
use crate::quaternion::{exp_pair, Quaternion};

/// Truncated canonical coherent state with its analytic tail bound.
#[derive(Clone, Debug, PartialEq)]
pub struct CsVector {
    pub label: Quaternion,
    pub vector: RqVector,
    /// `e^{-|q|²} Σ_{m ≥ N} |q|^{2m}/m!`, the norm mass lost to truncation.
    pub tail_bound: f64,
}

/// Raised when the truncation tail exceeds the requested tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationWarning {
    pub tail_bound: f64,
    pub tolerance: f64,
}

impl fmt::Display for TruncationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coherent-state truncation tail {:e} exceeds tolerance {:e}",
            self.tail_bound, self.tolerance
        )
    }
}

impl CsVector {
    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    pub fn truncation_warning(&self, tolerance: f64) -> Option<TruncationWarning> {
        (self.tail_bound > tolerance).then_some(TruncationWarning {
            tail_bound: self.tail_bound,
            tolerance,
        })
    }

    /// `|⟨γ_q|γ_q⟩ − 1|`.
    pub fn normalization_defect(&self) -> f64 {
        (self.vector.norm_sqr() - 1.0).abs()
    }
}

/// `|γ_q⟩` on the first `dim` basis vectors.
pub fn cs_vector(q: Quaternion, dim: usize) -> Result<CsVector> {
    if dim == 0 {
        return Err(QuatError::DimensionTooSmall { min: 1, found: 0 });
    }
    let r2 = q.norm_sqr();
    let mut comps = Vec::with_capacity(dim);
    let mut term = Quaternion::real((-0.5 * r2).exp());
    for m in 0..dim {
        if m > 0 {
            term = term * q / (m as f64).sqrt();
        }
        comps.push(term);
    }
    Ok(CsVector {
        label: q,
        vector: RqVector::new(comps),
        tail_bound: poisson_tail(r2, dim),
    })
}

/// `e^{-x} Σ_{m ≥ n} x^m/m!`, summed directly so that small tails keep their
/// relative accuracy.
pub fn poisson_tail(x: f64, n: usize) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    // log of the first term e^{-x} x^n / n!
    let log_first = -x + n as f64 * x.ln() - ln_factorial(n);
    let mut term = log_first.exp();
    let mut sum = 0.0;
    let mut m = n;
    while term > 0.0 && term > sum * 1e-18 {
        sum += term;
        m += 1;
        term *= x / m as f64;
        if m > n + 10_000 {
            break;
        }
    }
    sum.min(1.0)
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `⟨γ_q|γ_p⟩ = e^{-(|q|²+|p|²)/2} E(q̄, p)`.
pub fn overlap(p: Quaternion, q: Quaternion, tol: f64) -> Quaternion {
    exp_pair(q.conj(), p, tol) * (-0.5 * (q.norm_sqr() + p.norm_sqr())).exp()
}

/// Residual of `A_q|γ_q⟩ = |γ_q⟩q` on a truncated space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenCheck {
    /// Norm of the residual over components `0..N−1`.
    pub safe_defect: f64,
    /// Residual in component `N−1`, where the truncated `A_q` has no row
    /// partner.
    pub edge_defect: f64,
    pub tail_bound: f64,
}

pub fn cs_eigen_check(q: Quaternion, dim: usize) -> Result<EigenCheck> {
    if dim < 2 {
        return Err(QuatError::DimensionTooSmall { min: 2, found: dim });
    }
    let cs = cs_vector(q, dim)?;
    let lhs = analytic_aq(dim)?.apply(&cs.vector)?;
    let rhs = cs.vector.right_mul(q);
    let residual = lhs.sub(&rhs)?;
    let safe_defect = residual.components()[..dim - 1]
        .iter()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(EigenCheck {
        safe_defect,
        edge_defect: residual[dim - 1].norm(),
        tail_bound: cs.tail_bound,
    })
}

/// `e^{-|q|²/2} Σ_{m<N} (q̄·A_q̄)^m |e_0⟩ / m!`, with each power of the scaled
/// creation operator applied through its right-conjugate action.
pub fn cs_from_exponential(q: Quaternion, dim: usize) -> Result<RqVector> {
    if dim == 0 {
        return Err(QuatError::DimensionTooSmall { min: 1, found: 0 });
    }
    let vacuum_weight = Quaternion::real((-0.5 * q.norm_sqr()).exp());
    if dim == 1 {
        return Ok(RqVector::basis_scaled(1, 0, vacuum_weight));
    }
    let creation = ScaledOperator::new(q.conj(), analytic_aqbar(dim)?);
    let mut term = RqVector::basis(dim, 0);
    let mut acc = term.clone();
    for m in 1..dim {
        term = creation.apply(&term)?;
        term = term.right_mul(Quaternion::real(1.0 / m as f64));
        acc = acc.add(&term)?;
    }
    Ok(acc.right_mul(vacuum_weight))
}

/// Domain of a coherent-state family `Σ r^{2m}/ρ(m)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CsDomain {
    /// Normalization finite for every `q` (the canonical `ρ(m) = m!`).
    Whole,
    /// Normalization finite only for `|q| < radius`.
    Disc { radius: f64 },
}

impl CsDomain {
    /// Domain for a family whose ratios `ρ(m+1)/ρ(m)` tend to `limit`
    /// (`None` for unbounded ratios).
    pub fn from_ratio_limit(limit: Option<f64>) -> Self {
        match limit {
            Some(l) => Self::Disc { radius: l.sqrt() },
            None => Self::Whole,
        }
    }

    pub fn contains(&self, q: Quaternion) -> bool {
        match *self {
            Self::Whole => true,
            Self::Disc { radius } => q.norm() < radius,
        }
    }
}

/// Ratio-test finiteness predicate for `Σ_m r^{2m}/ρ(m)` on a supplied
/// prefix of a positive `ρ`: the last available term ratio must be below one.
pub fn normalization_is_finite(rho: &[f64], r: f64) -> bool {
    match rho {
        [.., a, b] if *a > 0.0 && *b > 0.0 => r * r * a / b < 1.0,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::ImaginaryUnit;

    #[test]
    fn vacuum_label_gives_e0() {
        let cs = cs_vector(Quaternion::ZERO, 6).unwrap();
        assert_eq!(cs.vector, RqVector::basis(6, 0));
        assert_eq!(cs.tail_bound, 0.0);
        assert_eq!(cs_from_exponential(Quaternion::ZERO, 6).unwrap(), RqVector::basis(6, 0));
        let e = cs_eigen_check(Quaternion::ZERO, 5).unwrap();
        assert_eq!((e.safe_defect, e.edge_defect), (0.0, 0.0));
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(cs_vector(Quaternion::ONE, 0).is_err());
        assert!(cs_eigen_check(Quaternion::ONE, 1).is_err());
    }

    #[test]
    fn normalized_within_tail_bound() {
        for q in [
            Quaternion::new(0.5, 0.2, -0.1, 0.3),
            Quaternion::new(1.0, -1.0, 0.5, 0.5),
            Quaternion::new(0.0, 0.0, 2.0, 0.0),
            Quaternion::new(1.2, 0.4, -0.8, 1.1),
        ] {
            let cs = cs_vector(q, 32).unwrap();
            assert!(q.norm() <= 2.0);
            assert!(cs.normalization_defect() <= cs.tail_bound + 1e-14);
        }
    }

    #[test]
    fn tail_bound_matches_norm_deficit_for_small_truncation() {
        let q = Quaternion::new(1.0, 0.5, 0.0, -0.5);
        let cs = cs_vector(q, 3).unwrap();
        assert!((cs.normalization_defect() - cs.tail_bound).abs() < 1e-14);
        assert!(cs.truncation_warning(1e-3).is_some());
        assert!(cs_vector(q, 40).unwrap().truncation_warning(1e-12).is_none());
    }

    #[test]
    fn component_ratio_on_slice() {
        let unit = ImaginaryUnit::from_direction([0.3, -1.0, 0.6]).unwrap();
        let q = unit.embed(0.7, 1.1);
        let cs = cs_vector(q, 10).unwrap();
        for m in 0..9 {
            let ratio = cs.vector[m].inverse().unwrap() * cs.vector[m + 1];
            assert!(ratio.dist(q / ((m + 1) as f64).sqrt()) < 1e-13);
            let (_, _, off) = unit.project(cs.vector[m]);
            assert!(off < 1e-14);
        }
    }

    #[test]
    fn overlap_self_is_one_and_hermitian() {
        let p = Quaternion::new(0.3, -0.7, 0.2, 0.5);
        let q = Quaternion::new(-0.4, 0.1, 0.9, -0.3);
        assert!(overlap(q, q, 1e-16).dist(Quaternion::ONE) < 1e-14);
        assert!(overlap(p, q, 1e-16).conj().dist(overlap(q, p, 1e-16)) < 1e-14);
        assert!(overlap(p, q, 1e-16).norm() <= 1.0);
    }

    #[test]
    fn exponential_terms_are_scaled_basis_vectors() {
        let q = Quaternion::new(0.2, 0.5, -0.4, 0.1);
        let creation = ScaledOperator::new(q.conj(), analytic_aqbar(6).unwrap());
        let mut v = RqVector::basis(6, 0);
        for m in 1..6 {
            v = creation.apply(&v).unwrap();
            let fact: f64 = (1..=m).map(|k| k as f64).product();
            let expected = RqVector::basis_scaled(6, m, q.powi(m as u32) * fact.sqrt());
            assert!(v.max_diff(&expected) < 1e-14, "m = {m}");
        }
    }

    #[test]
    fn domain_predicates() {
        let factorials: Vec<f64> = (0..20).scan(1.0, |acc, m| {
            if m > 0 {
                *acc *= m as f64;
            }
            Some(*acc)
        }).collect();
        assert!(normalization_is_finite(&factorials, 3.0));
        let geometric: Vec<f64> = (0..20).map(|m| 4f64.powi(m)).collect();
        assert!(normalization_is_finite(&geometric, 1.9));
        assert!(!normalization_is_finite(&geometric, 2.1));
        assert!(!normalization_is_finite(&[1.0], 0.1));
        let d = CsDomain::from_ratio_limit(Some(4.0));
        assert!(d.contains(Quaternion::new(1.0, 1.0, 0.0, 0.0)));
        assert!(!d.contains(Quaternion::new(2.0, 0.0, 0.0, 0.1)));
        assert!(CsDomain::from_ratio_limit(None).contains(Quaternion::real(1e6)));
    }
}
