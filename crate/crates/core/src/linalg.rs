//! Finite right quaternionic Hilbert space: vectors with scalars acting on the
//! right, quaternion matrices acting on the left, adjoints, and the
//! non-right-linear scalar multiple `(αO)|f⟩ = (O|f⟩) ᾱ`.

use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{QuatError, Result};
use crate::quaternion::Quaternion;

/// Column of quaternion components `f = Σ_m e_m f_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct RqVector(Vec<Quaternion>);

impl RqVector {
    pub fn new(components: Vec<Quaternion>) -> Self {
        Self(components)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Quaternion::ZERO; dim])
    }

    /// Basis vector `e_m` scaled on the right by `a`.
    pub fn basis_scaled(dim: usize, m: usize, a: Quaternion) -> Self {
        let mut v = Self::zeros(dim);
        v.0[m] = a;
        v
    }

    pub fn basis(dim: usize, m: usize) -> Self {
        Self::basis_scaled(dim, m, Quaternion::ONE)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Quaternion] {
        &self.0
    }

    pub fn into_components(self) -> Vec<Quaternion> {
        self.0
    }

    /// Right scalar action `(f·q)_m = f_m q`.
    pub fn right_mul(&self, q: Quaternion) -> Self {
        Self(self.0.iter().map(|&f| f * q).collect())
    }

    /// Basis-dependent left action `(q·f)_m = q f_m`.
    pub fn left_mul(&self, q: Quaternion) -> Self {
        Self(self.0.iter().map(|&f| q * f).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect()))
    }

    /// `⟨self|other⟩ = Σ conj(self_m) other_m`.
    pub fn inner(&self, other: &Self) -> Result<Quaternion> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.0.iter().zip(&other.0).map(|(&u, &v)| u.conj() * v).sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest componentwise quaternion distance.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.dist(*b))
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for RqVector {
    type Output = Quaternion;
    fn index(&self, m: usize) -> &Quaternion {
        &self.0[m]
    }
}

impl IndexMut<usize> for RqVector {
    fn index_mut(&mut self, m: usize) -> &mut Quaternion {
        &mut self.0[m]
    }
}

/// `⟨u|v⟩`, see [`RqVector::inner`].
pub fn inner(u: &RqVector, v: &RqVector) -> Result<Quaternion> {
    u.inner(v)
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(QuatError::DimensionMismatch { expected, found })
    }
}

/// Square quaternion matrix acting on the left, `(Af)_m = Σ_l A_{ml} f_l`.
/// Stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RqOperator {
    dim: usize,
    entries: Vec<Quaternion>,
}

impl RqOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Quaternion::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for m in 0..dim {
            out[(m, m)] = Quaternion::ONE;
        }
        out
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for m in 0..dim {
            for l in 0..dim {
                entries.push(f(m, l));
            }
        }
        Self { dim, entries }
    }

    pub fn from_real_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Self::from_fn(dim, |m, l| Quaternion::real(f(m, l)))
    }

    /// Row-major entries; fails unless `entries.len() == dim²`.
    pub fn from_entries(dim: usize, entries: Vec<Quaternion>) -> Result<Self> {
        check_dim(dim * dim, entries.len())?;
        Ok(Self { dim, entries })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut out = Self::zeros(values.len());
        for (m, &v) in values.iter().enumerate() {
            out[(m, m)] = Quaternion::real(v);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn get(&self, m: usize, l: usize) -> Quaternion {
        self.entries[m * self.dim + l]
    }

    pub fn apply(&self, f: &RqVector) -> Result<RqVector> {
        check_dim(self.dim, f.dim())?;
        let out = (0..self.dim)
            .map(|m| {
                self.row(m)
                    .iter()
                    .zip(f.components())
                    .map(|(&a, &x)| a * x)
                    .sum()
            })
            .collect();
        Ok(RqVector::new(out))
    }

    fn row(&self, m: usize) -> &[Quaternion] {
        &self.entries[m * self.dim..(m + 1) * self.dim]
    }

    /// `(A†)_{ml} = conj(A_{lm})`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |m, l| self.get(l, m).conj())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for m in 0..n {
            for k in 0..n {
                let a = self.get(m, k);
                if a == Quaternion::ZERO {
                    continue;
                }
                for l in 0..n {
                    out.entries[m * n + l] += a * other.get(k, l);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Self {
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Entrywise real scaling. Real scalars commute with everything, so this
    /// is the only scalar multiple that stays a plain matrix.
    pub fn scale_real(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&a| a * s).collect(),
        }
    }

    /// Entrywise left product `c·A_{ml}`, i.e. the operator `f ↦ c(Af)` under
    /// the basis-dependent left action.
    pub fn left_mul_entries(&self, c: Quaternion) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&a| c * a).collect(),
        }
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// Max entrywise quaternion distance.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.dist(*b))
            .fold(0.0, f64::max)
    }

    /// Max entrywise distance restricted to `m, l < limit`.
    pub fn max_diff_leading(&self, other: &Self, limit: usize) -> f64 {
        let mut worst = 0.0f64;
        for m in 0..limit.min(self.dim) {
            for l in 0..limit.min(self.dim) {
                worst = worst.max(self.get(m, l).dist(other.get(m, l)));
            }
        }
        worst
    }

    /// Equality under max entrywise distance `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_diff(other) <= tol
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }

    pub fn diagonal_values(&self) -> Vec<Quaternion> {
        (0..self.dim).map(|m| self.get(m, m)).collect()
    }

    /// The 2N×2N complex matrix obtained by replacing every entry by its
    /// 2×2 matrix image. Products of embeddings equal embeddings of products,
    /// which makes this an independent check on [`RqOperator::matmul`].
    pub fn complex_embedding(&self) -> DMatrix<Complex64> {
        let n = self.dim;
        DMatrix::from_fn(2 * n, 2 * n, |r, c| {
            self.get(r / 2, c / 2).to_matrix().0[r % 2][c % 2]
        })
    }

    /// Inverse of [`RqOperator::complex_embedding`], blockwise.
    pub fn from_complex_embedding(m: &DMatrix<Complex64>, tol: f64) -> Result<Self> {
        if m.nrows() != m.ncols() || !m.nrows().is_multiple_of(2) {
            return Err(QuatError::DimensionMismatch {
                expected: m.nrows() + m.nrows() % 2,
                found: m.ncols(),
            });
        }
        let n = m.nrows() / 2;
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let block = crate::quaternion::MatrixRep([
                    [m[(2 * a, 2 * b)], m[(2 * a, 2 * b + 1)]],
                    [m[(2 * a + 1, 2 * b)], m[(2 * a + 1, 2 * b + 1)]],
                ]);
                entries.push(Quaternion::from_matrix(&block, tol)?);
            }
        }
        Ok(Self { dim: n, entries })
    }
}

impl Index<(usize, usize)> for RqOperator {
    type Output = Quaternion;
    fn index(&self, (m, l): (usize, usize)) -> &Quaternion {
        &self.entries[m * self.dim + l]
    }
}

impl IndexMut<(usize, usize)> for RqOperator {
    fn index_mut(&mut self, (m, l): (usize, usize)) -> &mut Quaternion {
        &mut self.entries[m * self.dim + l]
    }
}

/// `α·O` acting by `(αO)|f⟩ = (O|f⟩) ᾱ`.
///
/// Kept as a composite on purpose: for non-real α this action is not right
/// linear, so it has no quaternion matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledOperator {
    pub alpha: Quaternion,
    pub base: RqOperator,
}

impl ScaledOperator {
    pub fn new(alpha: Quaternion, base: RqOperator) -> Self {
        Self { alpha, base }
    }

    pub fn apply(&self, f: &RqVector) -> Result<RqVector> {
        Ok(self.base.apply(f)?.right_mul(self.alpha.conj()))
    }

    /// Matrix form, available only for real α.
    pub fn as_matrix(&self) -> Option<RqOperator> {
        self.alpha.is_real().then(|| self.base.scale_real(self.alpha.x0))
    }

    /// `‖(αO)(f·q) − ((αO)f)·q‖`, the right-linearity defect on one input.
    pub fn right_linearity_defect(&self, f: &RqVector, q: Quaternion) -> Result<f64> {
        let lhs = self.apply(&f.right_mul(q))?;
        let rhs = self.apply(f)?.right_mul(q);
        Ok(lhs.sub(&rhs)?.norm())
    }
}

/// See [`ScaledOperator::apply`].
pub fn scaled_apply(s: &ScaledOperator, f: &RqVector) -> Result<RqVector> {
    s.apply(f)
}

/// The pair `(⟨u|(αO)v⟩, ⟨(ᾱO†)u|v⟩)`.
///
/// Equal pairs for every `u, v` would mean `(αO)† = ᾱO†`; for non-real α the
/// two generally differ.
pub fn adjoint_defect(
    alpha: Quaternion,
    op: &RqOperator,
    u: &RqVector,
    v: &RqVector,
) -> Result<(Quaternion, Quaternion)> {
    let lhs = u.inner(&ScaledOperator::new(alpha, op.clone()).apply(v)?)?;
    let naive = ScaledOperator::new(alpha.conj(), op.adjoint());
    let rhs = naive.apply(u)?.inner(v)?;
    Ok((lhs, rhs))
}
