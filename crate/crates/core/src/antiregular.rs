//! Polynomials `Σ_m q̄^m c_m` with right quaternion coefficients and their
//! right Cullen derivative.

use crate::quaternion::Quaternion;

/// `f(q) = Σ_m q̄^m c_m`. Coefficients sit on the right of the powers.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AntiRegularPoly {
    coeffs: Vec<Quaternion>,
}

impl AntiRegularPoly {
    pub fn new(coeffs: Vec<Quaternion>) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The normalized monomial `φ_m(q) = q̄^m / √m!`.
    pub fn basis(m: usize) -> Self {
        let mut coeffs = vec![Quaternion::ZERO; m + 1];
        coeffs[m] = Quaternion::real(1.0 / factorial_sqrt(m));
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    /// Index of the last nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != Quaternion::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Coefficient `m`, zero past the stored length.
    pub fn coeff(&self, m: usize) -> Quaternion {
        self.coeffs.get(m).copied().unwrap_or_default()
    }

    /// Horner evaluation `c_0 + q̄(c_1 + q̄(c_2 + …))`.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        let qb = q.conj();
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &c| qb * acc + c)
    }

    /// Right Cullen derivative `∂/∂q̄ Σ q̄^m c_m = Σ m q̄^{m-1} c_m`.
    pub fn cullen_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, &c)| c * m as f64)
            .collect();
        Self { coeffs }
    }

    /// Multiplication by `q̄` on the left, which shifts every power up by one.
    pub fn multiply_by_conjugate_var(&self) -> Self {
        if self.coeffs.is_empty() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Quaternion::ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Right scalar action `f·a`.
    pub fn right_scale(&self, a: Quaternion) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * a).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|m| self.coeff(m) + other.coeff(m)).collect(),
        }
    }

    /// Coordinates in the `φ_m` basis: `a_m = √m! c_m`.
    pub fn phi_coordinates(&self, len: usize) -> Vec<Quaternion> {
        (0..len)
            .map(|m| self.coeff(m) * factorial_sqrt(m))
            .collect()
    }

    /// Inverse of [`AntiRegularPoly::phi_coordinates`].
    pub fn from_phi_coordinates(a: &[Quaternion]) -> Self {
        Self {
            coeffs: a
                .iter()
                .enumerate()
                .map(|(m, &x)| x / factorial_sqrt(m))
                .collect(),
        }
    }

    /// Largest coefficient difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|m| self.coeff(m).dist(other.coeff(m)))
            .fold(0.0, f64::max)
    }
}

/// `√m!`, accumulated as a product of square roots.
pub(crate) fn factorial_sqrt(m: usize) -> f64 {
    (1..=m).map(|k| (k as f64).sqrt()).product()
}
