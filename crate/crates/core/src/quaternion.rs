//! Quaternion arithmetic, the 2×2 complex matrix picture, polar and slice
//! decompositions, and the two-argument exponential series `E(p, q)`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{QuatError, Result};

/// A real quaternion `x0 + x1 i + x2 j + x3 k`.
///
/// The four real components are the source of truth; the matrix form is
/// derived on demand through [`Quaternion::to_matrix`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x1, x2, x3 }
    }

    #[inline]
    pub const fn real(x: f64) -> Self {
        Self::new(x, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Imaginary part `x1 i + x2 j + x3 k`.
    #[inline]
    pub fn imag(self) -> Self {
        Self::new(0.0, self.x1, self.x2, self.x3)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.x0, -self.x1, -self.x2, -self.x3)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Length of the imaginary part.
    #[inline]
    pub fn imag_norm(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn is_real(self) -> bool {
        self.x1 == 0.0 && self.x2 == 0.0 && self.x3 == 0.0
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sqr();
        (n > 0.0).then(|| self.conj() / n)
    }

    /// Integer power by repeated multiplication (exponents here stay small).
    pub fn powi(self, n: u32) -> Self {
        let mut acc = Self::ONE;
        for _ in 0..n {
            acc *= self;
        }
        acc
    }

    /// Quaternion exponential `e^q = e^{x0} (cos|v| + v/|v| sin|v|)`.
    pub fn exp(self) -> Self {
        let v = self.imag_norm();
        let scale = self.x0.exp();
        let sinc = if v == 0.0 { 1.0 } else { v.sin() / v };
        Self::new(
            scale * v.cos(),
            scale * sinc * self.x1,
            scale * sinc * self.x2,
            scale * sinc * self.x3,
        )
    }

    /// Largest componentwise deviation, measured as the quaternion norm of the
    /// difference.
    #[inline]
    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// `true` when `self` and `other` commute to within `tol`.
    pub fn commutes_with(self, other: Self, tol: f64) -> bool {
        (self * other - other * self).norm() <= tol
    }

    /// The 2×2 complex matrix `[[x0+ix3, -x2+ix1], [x2+ix1, x0-ix3]]`.
    pub fn to_matrix(self) -> MatrixRep {
        MatrixRep([
            [
                Complex64::new(self.x0, self.x3),
                Complex64::new(-self.x2, self.x1),
            ],
            [
                Complex64::new(self.x2, self.x1),
                Complex64::new(self.x0, -self.x3),
            ],
        ])
    }

    /// Inverse of [`Quaternion::to_matrix`]. Fails when the matrix does not
    /// carry the quaternionic pattern to within `tol`.
    pub fn from_matrix(m: &MatrixRep, tol: f64) -> Result<Self> {
        let deviation = m.structure_deviation();
        if deviation > tol {
            return Err(QuatError::MatrixStructure { deviation, tol });
        }
        let [[a, b], [c, d]] = m.0;
        Ok(Self::new(
            0.5 * (a.re + d.re),
            0.5 * (b.im + c.im),
            0.5 * (c.re - b.re),
            0.5 * (a.im - d.im),
        ))
    }

    /// Polar coordinates `(r, θ, φ, ψ)` with
    /// `x0 = r cosθ`, `x1 = r sinθ sinφ cosψ`, `x2 = r sinθ sinφ sinψ`,
    /// `x3 = r sinθ cosφ`.
    ///
    /// θ is taken in `[0, π]` so that `n̂` is the direction of the imaginary
    /// part. Degenerate strata are canonicalized: `r = 0` gives all angles 0,
    /// `sinθ = 0` gives `φ = ψ = 0`, `sinφ = 0` gives `ψ = 0`.
    pub fn to_polar(self) -> PolarForm {
        let r = self.norm();
        if r == 0.0 {
            return PolarForm::default();
        }
        let v = self.imag_norm();
        let theta = v.atan2(self.x0);
        if v == 0.0 {
            return PolarForm { r, theta, phi: 0.0, psi: 0.0 };
        }
        let rho = self.x1.hypot(self.x2);
        let phi = rho.atan2(self.x3);
        let psi = if rho == 0.0 {
            0.0
        } else {
            let a = self.x2.atan2(self.x1);
            if a < 0.0 {
                a + TAU
            } else {
                a
            }
        };
        PolarForm { r, theta, phi, psi }
    }

    pub fn from_polar(p: PolarForm) -> Self {
        let (st, ct) = p.theta.sin_cos();
        let n = unit_direction(p.phi, p.psi);
        Self::new(p.r * ct, p.r * st * n[0], p.r * st * n[1], p.r * st * n[2])
    }

    /// Unique `q = x + yI` with `y > 0`, `I` a unit pure quaternion.
    ///
    /// Real input has no unique slice; it returns `y = 0`, `I = i` and sets
    /// the `degenerate` flag.
    pub fn slice_decompose(self) -> SlicePoint {
        let y = self.imag_norm();
        if y == 0.0 {
            return SlicePoint {
                x: self.x0,
                y: 0.0,
                unit: ImaginaryUnit::I,
                degenerate: true,
            };
        }
        let im = self.imag() / y;
        SlicePoint {
            x: self.x0,
            y,
            unit: ImaginaryUnit(im),
            degenerate: false,
        }
    }
}

/// Unit vector `(sinφ cosψ, sinφ sinψ, cosφ)`.
#[inline]
pub fn unit_direction(phi: f64, psi: f64) -> [f64; 3] {
    let (sp, cp) = phi.sin_cos();
    let (ss, cs) = psi.sin_cos();
    [sp * cs, sp * ss, cp]
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:+}i {:+}j {:+}k",
            self.x0, self.x1, self.x2, self.x3
        )
    }
}

impl From<f64> for Quaternion {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    /// Hamilton product: `ij = k`, `jk = i`, `ki = j`.
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.x0 * o.x0 - self.x1 * o.x1 - self.x2 * o.x2 - self.x3 * o.x3,
            self.x0 * o.x1 + self.x1 * o.x0 + self.x2 * o.x3 - self.x3 * o.x2,
            self.x0 * o.x2 - self.x1 * o.x3 + self.x2 * o.x0 + self.x3 * o.x1,
            self.x0 * o.x3 + self.x1 * o.x2 - self.x2 * o.x1 + self.x3 * o.x0,
        )
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.x0 / s, self.x1 / s, self.x2 / s, self.x3 / s)
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

/// 2×2 complex matrix image of a quaternion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixRep(pub [[Complex64; 2]; 2]);

impl MatrixRep {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self([[one, zero], [zero, one]])
    }

    pub fn det(&self) -> Complex64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Self([[a.conj(), c.conj()], [b.conj(), d.conj()]])
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Self(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.0;
        out.iter_mut().flatten().for_each(|z| *z *= s);
        Self(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.0;
        for (z, w) in out.iter_mut().flatten().zip(o.0.iter().flatten()) {
            *z += w;
        }
        Self(out)
    }

    /// Max entrywise modulus of the difference.
    pub fn max_diff(&self, o: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(o.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// How far the matrix is from the quaternionic pattern
    /// `d = conj(a)`, `c = -conj(b)`.
    pub fn structure_deviation(&self) -> f64 {
        let [[a, b], [c, d]] = self.0;
        (d - a.conj()).norm().max((c + b.conj()).norm())
    }

    /// The pair `A(r) = r σ0` and `σ(n̂)` of the polar factorization.
    pub fn sigma_n(phi: f64, psi: f64) -> Self {
        let (sp, cp) = phi.sin_cos();
        let e = Complex64::from_polar(sp, psi);
        Self([
            [Complex64::new(cp, 0.0), e],
            [e.conj(), Complex64::new(-cp, 0.0)],
        ])
    }

    /// Closed form of `exp(iθ σ(n̂)) = cosθ σ0 + i sinθ σ(n̂)`, valid because
    /// `σ(n̂)² = σ0`.
    pub fn exp_i_theta_sigma(theta: f64, phi: f64, psi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        Self::identity()
            .scale(Complex64::new(ct, 0.0))
            .add(&Self::sigma_n(phi, psi).scale(Complex64::new(0.0, st)))
    }
}

/// Polar coordinates of a quaternion, `q = r e^{iθσ(n̂)}`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PolarForm {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub psi: f64,
}

impl PolarForm {
    /// Matrix reconstruction `A(r) exp(iθσ(n̂))`.
    pub fn to_matrix(&self) -> MatrixRep {
        MatrixRep::exp_i_theta_sigma(self.theta, self.phi, self.psi)
            .scale(Complex64::new(self.r, 0.0))
    }

    /// True when the angles sit in `[0,2π) × [0,π] × [0,2π)`.
    pub fn in_canonical_range(&self) -> bool {
        self.r >= 0.0
            && (0.0..TAU).contains(&self.theta)
            && (0.0..=PI).contains(&self.phi)
            && (0.0..TAU).contains(&self.psi)
    }
}

/// A unit pure quaternion, the imaginary unit of a slice `L_I = ℝ + Iℝ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImaginaryUnit(Quaternion);

impl ImaginaryUnit {
    pub const I: Self = Self(Quaternion::I);
    pub const J: Self = Self(Quaternion::J);
    pub const K: Self = Self(Quaternion::K);

    /// Validates `Re I = 0` and `|I| = 1` to within `tol`.
    pub fn new(q: Quaternion, tol: f64) -> Result<Self> {
        let norm_defect = (q.norm() - 1.0).abs();
        if q.x0.abs() > tol || norm_defect > tol {
            return Err(QuatError::NotImaginaryUnit {
                real: q.x0,
                norm: q.norm(),
            });
        }
        Ok(Self(q))
    }

    /// Normalizes the imaginary part of `q`. Fails for real `q`.
    pub fn from_direction(v: [f64; 3]) -> Result<Self> {
        let q = Quaternion::new(0.0, v[0], v[1], v[2]);
        let n = q.norm();
        if n == 0.0 {
            return Err(QuatError::NotImaginaryUnit { real: 0.0, norm: 0.0 });
        }
        Ok(Self(q / n))
    }

    #[inline]
    pub fn get(self) -> Quaternion {
        self.0
    }

    /// `x + yI`.
    #[inline]
    pub fn embed(self, x: f64, y: f64) -> Quaternion {
        Quaternion::real(x) + self.0 * y
    }

    /// Coordinates `(x, y)` of `q` in the slice plus the distance of `q` from
    /// the slice.
    pub fn project(self, q: Quaternion) -> (f64, f64, f64) {
        let u = self.0;
        let y = q.x1 * u.x1 + q.x2 * u.x2 + q.x3 * u.x3;
        let off = (q - self.embed(q.x0, y)).norm();
        (q.x0, y, off)
    }
}

/// Slice decomposition `q = x + yI`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlicePoint {
    pub x: f64,
    pub y: f64,
    pub unit: ImaginaryUnit,
    /// Set for real input, where the slice is not unique.
    pub degenerate: bool,
}

impl SlicePoint {
    pub fn embed(&self) -> Quaternion {
        self.unit.embed(self.x, self.y)
    }
}

/// Partial sum of `E(p, q) = Σ p^m q^m / m!` with its truncation data.
#[derive(Clone, Copy, Debug)]
pub struct ExpPairSum {
    pub value: Quaternion,
    /// Number of terms kept (`m = 0..terms`).
    pub terms: usize,
    /// Majorant bound on the discarded tail, `Σ_{m ≥ terms} (|p||q|)^m/m!`.
    pub tail_bound: f64,
}

/// `E(p, q) = Σ_m p^m q^m / m!`, truncated once the majorant tail of
/// `e^{|p||q|}` drops below `tol`.
///
/// # Panics
///
/// Panics if `tol` is not positive.
pub fn exp_pair(p: Quaternion, q: Quaternion, tol: f64) -> Quaternion {
    exp_pair_sum(p, q, tol).value
}

/// Same as [`exp_pair`] but also returns the term count and tail bound.
pub fn exp_pair_sum(p: Quaternion, q: Quaternion, tol: f64) -> ExpPairSum {
    assert!(tol > 0.0, "exp_pair tolerance must be positive");
    let x = p.norm() * q.norm();
    let mut pm = Quaternion::ONE;
    let mut qm = Quaternion::ONE;
    let mut value = Quaternion::ONE;
    // majorant term x^m/m! for the next index
    let mut term = 1.0;
    let mut m = 0usize;
    loop {
        m += 1;
        term *= x / m as f64;
        let tail = majorant_tail(x, m, term);
        if tail < tol {
            return ExpPairSum {
                value,
                terms: m,
                tail_bound: tail,
            };
        }
        pm *= p;
        qm *= q;
        // 1/m! folded into pm keeps the partial powers bounded
        pm = pm / m as f64;
        value += pm * qm;
    }
}

/// Bound on `Σ_{k ≥ m} x^k/k!` given `first = x^m/m!`.
fn majorant_tail(x: f64, m: usize, first: f64) -> f64 {
    let ratio = x / (m as f64 + 1.0);
    if ratio < 1.0 {
        first / (1.0 - ratio)
    } else {
        f64::INFINITY
    }
}
