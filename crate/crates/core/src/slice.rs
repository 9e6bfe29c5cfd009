//! Quantum mechanics on a single slice `L_I = ℝ + Iℝ`.
//!
//! Slice scalars `x + yI` are stored as `Complex64 { re: x, im: y }` and the
//! unit `I` is carried once per operator. Arithmetic inside `L_I` is then
//! ordinary complex arithmetic.

use num_complex::Complex64;

use crate::antiregular::factorial_sqrt;
use crate::error::{QuatError, Result};
use crate::linalg::RqOperator;
use crate::quadrature::{gauss_laguerre, uniform_periodic};
use crate::quaternion::{ImaginaryUnit, Quaternion};

/// `N × N` matrix with entries in `L_I`.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceOperator {
    unit: ImaginaryUnit,
    dim: usize,
    entries: Vec<Complex64>,
}

impl SliceOperator {
    pub fn from_fn(unit: ImaginaryUnit, dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self { unit, dim, entries }
    }

    pub fn zeros(unit: ImaginaryUnit, dim: usize) -> Self {
        Self::from_fn(unit, dim, |_, _| Complex64::new(0.0, 0.0))
    }

    pub fn identity(unit: ImaginaryUnit, dim: usize) -> Self {
        Self::from_fn(unit, dim, |m, l| Complex64::new(if m == l { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn unit(&self) -> ImaginaryUnit {
        self.unit
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, m: usize, l: usize) -> Complex64 {
        self.entries[m * self.dim + l]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(QuatError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.unit != other.unit {
            return Err(QuatError::SliceMismatch);
        }
        Ok(())
    }

    /// Conjugate transpose within `L_I`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.unit, self.dim, |m, l| self.get(l, m).conj())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_fn(self.unit, self.dim, |m, l| {
            (0..self.dim).map(|k| self.get(m, k) * other.get(k, l)).sum()
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_fn(self.unit, self.dim, |m, l| self.get(m, l) + other.get(m, l)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_fn(self.unit, self.dim, |m, l| self.get(m, l) - other.get(m, l)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_fn(self.unit, self.dim, |m, l| c * self.get(m, l))
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.max_diff_leading(other, self.dim)
    }

    /// Max entry difference over indices `0..limit`.
    pub fn max_diff_leading(&self, other: &Self, limit: usize) -> f64 {
        let limit = limit.min(self.dim).min(other.dim);
        let mut worst = 0.0f64;
        for m in 0..limit {
            for l in 0..limit {
                worst = worst.max((self.get(m, l) - other.get(m, l)).norm());
            }
        }
        worst
    }

    pub fn self_adjoint_defect(&self) -> f64 {
        self.max_diff(&self.adjoint())
    }

    /// The same matrix with every entry embedded as `x + yI ∈ ℍ`.
    pub fn to_rq_operator(&self) -> RqOperator {
        RqOperator::from_fn(self.dim, |m, l| {
            let z = self.get(m, l);
            self.unit.embed(z.re, z.im)
        })
    }
}

/// `(Q_I, P_I, N_I)` on a slice.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceOperators {
    pub position: SliceOperator,
    pub momentum: SliceOperator,
    pub number: SliceOperator,
    pub annihilation: SliceOperator,
}

pub fn slice_operators(unit: ImaginaryUnit, dim: usize) -> Result<SliceOperators> {
    if dim < 2 {
        return Err(QuatError::DimensionTooSmall { min: 2, found: dim });
    }
    let a = SliceOperator::from_fn(unit, dim, |k, l| {
        Complex64::new(if l == k + 1 { (l as f64).sqrt() } else { 0.0 }, 0.0)
    });
    let ad = a.adjoint();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(SliceOperators {
        position: a.add(&ad)?.scale(Complex64::new(s, 0.0)),
        momentum: a.sub(&ad)?.scale(Complex64::new(0.0, -s)),
        number: ad.matmul(&a)?,
        annihilation: a,
    })
}

/// `[Q_I, P_I] = I·𝕀` and `Ĥ_I = N_I + ½𝕀`, both on indices `0..N−1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalReport {
    pub dim: usize,
    pub commutator_defect: f64,
    pub hamiltonian_defect: f64,
    /// Diagonal of `Ĥ_I`, real parts.
    pub hamiltonian_diagonal: Vec<f64>,
    pub self_adjoint_defect: f64,
}

pub fn canonical_commutation_check(unit: ImaginaryUnit, dim: usize) -> Result<CanonicalReport> {
    if dim < 3 {
        return Err(QuatError::DimensionTooSmall { min: 3, found: dim });
    }
    let ops = slice_operators(unit, dim)?;
    let (q, p) = (&ops.position, &ops.momentum);
    let safe = dim - 1;
    let i_id = SliceOperator::identity(unit, dim).scale(Complex64::new(0.0, 1.0));
    let commutator_defect = q.commutator(p)?.max_diff_leading(&i_id, safe);
    let h = q
        .matmul(q)?
        .add(&p.matmul(p)?)?
        .scale(Complex64::new(0.5, 0.0));
    let target = ops
        .number
        .add(&SliceOperator::identity(unit, dim).scale(Complex64::new(0.5, 0.0)))?;
    Ok(CanonicalReport {
        dim,
        commutator_defect,
        hamiltonian_defect: h.max_diff_leading(&target, safe),
        hamiltonian_diagonal: (0..dim).map(|k| h.get(k, k).re).collect(),
        self_adjoint_defect: q.self_adjoint_defect().max(p.self_adjoint_defect()),
    })
}

/// `½(𝔮_I² + 𝔭_I²)` at `q = x + yI`, in quaternion arithmetic.
pub fn classical_slice_hamiltonian(unit: ImaginaryUnit, x: f64, y: f64) -> Quaternion {
    let q = unit.embed(x, y);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let pos = (q + q.conj()) * s;
    let mom = unit.get() * (q - q.conj()) * (-s);
    (pos * pos + mom * mom) * 0.5
}

/// Max deviation from `𝕀` of `∫ |γ_q⟩⟨γ_q| (1/π) r dr dθ` over `q ∈ L_I`,
/// with normalized states. Computed in quaternion arithmetic on the embedded
/// points; any component leaving `L_I` counts towards the deviation.
pub fn slice_resolution_check(
    unit: ImaginaryUnit,
    dim: usize,
    radial_order: usize,
    theta_nodes: usize,
) -> Result<f64> {
    if dim == 0 {
        return Err(QuatError::DimensionTooSmall { min: 1, found: 0 });
    }
    if 2 * radial_order < dim || theta_nodes < 2 * dim - 1 {
        return Err(QuatError::QuadratureOrder(format!(
            "slice grid ({radial_order}, {theta_nodes}) does not cover dimension {dim}"
        )));
    }
    // t = r² gives e^{-t} dt · dθ/2π
    let radial = gauss_laguerre(radial_order)?;
    let theta = uniform_periodic(theta_nodes)?;
    let tw = 1.0 / theta_nodes as f64;
    let inv_sf: Vec<f64> = (0..dim).map(|m| 1.0 / factorial_sqrt(m)).collect();
    let mut acc = vec![Quaternion::ZERO; dim * dim];
    let mut comps = vec![Quaternion::ZERO; dim];
    for (t, wt) in radial.iter() {
        let r = t.sqrt();
        for (th, _) in theta.iter() {
            let q = unit.embed(r * th.cos(), r * th.sin());
            let mut p = Quaternion::ONE;
            for (m, c) in comps.iter_mut().enumerate() {
                *c = p * inv_sf[m];
                p *= q;
            }
            let w = wt * tw;
            for m in 0..dim {
                for l in 0..dim {
                    acc[m * dim + l] += comps[m] * comps[l].conj() * w;
                }
            }
        }
    }
    let mut worst = 0.0f64;
    for m in 0..dim {
        for l in 0..dim {
            let (x, y, off) = unit.project(acc[m * dim + l]);
            let target = if m == l { 1.0 } else { 0.0 };
            worst = worst.max(Complex64::new(x - target, y).norm()).max(off);
        }
    }
    Ok(worst)
}
