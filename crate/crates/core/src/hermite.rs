//! Quaternionic Hermite polynomials.
//!
//! One index: `H_n(q)` with real coefficients, orthogonal for the Gaussian
//! weight `dν_s = exp[-(1-s)x² - (1/s-1)y²] dx dy` where `q = x + yI`.
//!
//! Two indices: `H_{n,m}(q, q̄) = Σ_k (-1)^k k! C(n,k) C(m,k) q^{m-k} q̄^{n-k}`,
//! orthogonal for `(1/π) e^{-|q|²} dx dy`.
//!
//! Both families are integrated on `(x, y, n̂)` with `y ∈ ℝ` and `n̂` on the
//! unit sphere, the sphere average carried by the `(cos φ, ψ)` chart.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::antiregular::factorial_sqrt;
use crate::error::{QuatError, Result};
use crate::linalg::{RqOperator, RqVector};
use crate::quadrature::{gauss_hermite, gauss_legendre, uniform_periodic, Rule};
use crate::quantize::{pairwise_sum, Symbol};
use crate::quaternion::{unit_direction, MatrixRep, Quaternion};

pub const S_MIN: f64 = 0.01;
pub const S_MAX: f64 = 0.99;

/// `H_n(q)` from the explicit sum `n! Σ_m (-1)^m (2q)^{n-2m} / (m!(n-2m)!)`.
pub fn hermite_n(n: usize, q: Quaternion) -> Quaternion {
    let two_q = q * 2.0;
    let mut total = Quaternion::ZERO;
    for m in 0..=n / 2 {
        let k = n - 2 * m;
        // n! / (m! k!) as a running product keeps it in floating range
        let coeff = ((k + 1)..=n).map(|v| v as f64).product::<f64>()
            / (1..=m).map(|v| v as f64).product::<f64>();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        total += two_q.powi(k as u32) * (sign * coeff);
    }
    total
}

/// `H_n(q)` from `H_{n+1} = 2q H_n − 2n H_{n−1}`.
pub fn hermite_n_recurrence(n: usize, q: Quaternion) -> Quaternion {
    let mut prev = Quaternion::ZERO;
    let mut cur = Quaternion::ONE;
    for k in 0..n {
        let next = q * cur * 2.0 - prev * (2.0 * k as f64);
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_{n,m}(q, q̄)` by `H_{0,m} = q^m`, `H_{k+1,m} = q̄ H_{k,m} − m H_{k,m−1}`.
///
/// `q` and `q̄` commute, so the order of the factors is immaterial.
pub fn hermite_nm(n: usize, m: usize, q: Quaternion) -> Quaternion {
    let qb = q.conj();
    // row[j] holds H_{k,j} for the current k
    let mut row: Vec<Quaternion> = std::iter::successors(Some(Quaternion::ONE), |p| Some(*p * q))
        .take(m + 1)
        .collect();
    for _ in 0..n {
        let next: Vec<Quaternion> = (0..=m)
            .map(|j| {
                let lower = if j == 0 { Quaternion::ZERO } else { row[j - 1] * j as f64 };
                qb * row[j] - lower
            })
            .collect();
        row = next;
    }
    row[m]
}

/// `h_{n,m} = H_{n,m} / √(n! m!)`.
pub fn hermite_nm_normalized(n: usize, m: usize, q: Quaternion) -> Quaternion {
    hermite_nm(n, m, q) / (factorial_sqrt(n) * factorial_sqrt(m))
}

/// `Σ_{m<terms} |h_{n,m}(q)|²`, converging to `e^{|q|²}`.
pub fn two_index_kernel_partial(n: usize, q: Quaternion, terms: usize) -> f64 {
    two_index_row(n, q, terms).iter().map(|h| h.norm_sqr()).sum()
}

/// `h_{n,0}, …, h_{n,len−1}` in one sweep.
fn two_index_row(n: usize, q: Quaternion, len: usize) -> Vec<Quaternion> {
    let qb = q.conj();
    if len == 0 {
        return Vec::new();
    }
    let mut row: Vec<Quaternion> = std::iter::successors(Some(Quaternion::ONE), |p| Some(*p * q))
        .take(len)
        .collect();
    for _ in 0..n {
        row = (0..len)
            .map(|j| {
                let lower = if j == 0 { Quaternion::ZERO } else { row[j - 1] * j as f64 };
                qb * row[j] - lower
            })
            .collect();
    }
    let nf = factorial_sqrt(n);
    row.iter()
        .enumerate()
        .map(|(m, h)| *h / (nf * factorial_sqrt(m)))
        .collect()
}

/// The one-index family for a fixed `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermiteFamilyS {
    s: f64,
}

impl HermiteFamilyS {
    pub fn new(s: f64) -> Result<Self> {
        if !(S_MIN..=S_MAX).contains(&s) {
            return Err(QuatError::HermiteParameter(s));
        }
        Ok(Self { s })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// `b_n(s) = π√s/(1−s) · (2(1+s)/(1−s))^n · n!`.
    pub fn b(&self, n: usize) -> f64 {
        let s = self.s;
        let step = 2.0 * (1.0 + s) / (1.0 - s);
        (0..n).fold(PI * s.sqrt() / (1.0 - s), |acc, k| acc * step * (k + 1) as f64)
    }

    /// `b_{n+1}/b_n = 2(1+s)/(1−s) · (n+1)`.
    pub fn b_ratio(&self, n: usize) -> f64 {
        2.0 * (1.0 + self.s) / (1.0 - self.s) * (n + 1) as f64
    }

    /// Gaussian exponents `(1−s, 1/s−1)` of `dν_s`.
    pub fn exponents(&self) -> (f64, f64) {
        (1.0 - self.s, 1.0 / self.s - 1.0)
    }

    /// `h_{n,s}(q) = H_n(q)/√b_n(s)`.
    pub fn h(&self, n: usize, q: Quaternion) -> Quaternion {
        hermite_n_recurrence(n, q) / self.b(n).sqrt()
    }

    fn h_row(&self, q: Quaternion, len: usize) -> Vec<Quaternion> {
        let mut out = Vec::with_capacity(len);
        let mut prev = Quaternion::ZERO;
        let mut cur = Quaternion::ONE;
        let mut b = self.b(0);
        for k in 0..len {
            out.push(cur / b.sqrt());
            let next = q * cur * 2.0 - prev * (2.0 * k as f64);
            prev = cur;
            cur = next;
            b *= self.b_ratio(k);
        }
        out
    }

    /// `K_s = Σ_n |h_{n,s}(q)|² = (1−s²)/(2πs) · exp[(1−s)x² + (1/s−1)y²]`
    /// with `x = Re q`, `y = |Im q|`. Scalar on every slice.
    pub fn kernel(&self, q: Quaternion) -> f64 {
        let (a, b) = self.exponents();
        let (x, y) = (q.x0, q.imag_norm());
        (1.0 - self.s * self.s) / (2.0 * PI * self.s) * (a * x * x + b * y * y).exp()
    }
}

/// `q = u diag(z, z̄) u†` in the 2×2 picture, with `u ∈ SU(2)` fixed by the
/// axis angles `(φ, ψ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointDecomposition {
    pub z: Complex64,
    pub phi: f64,
    pub psi: f64,
}

impl PointDecomposition {
    pub fn new(q: Quaternion) -> Self {
        let p = q.to_polar();
        Self {
            z: Complex64::from_polar(p.r, p.theta),
            phi: p.phi,
            psi: p.psi,
        }
    }

    /// Columns are the `±1` eigenvectors of `σ(n̂)`.
    pub fn unitary(&self) -> MatrixRep {
        let (s, c) = (0.5 * self.phi).sin_cos();
        let e = Complex64::from_polar(1.0, self.psi);
        MatrixRep([
            [Complex64::new(c, 0.0), -e * s],
            [e.conj() * s, Complex64::new(c, 0.0)],
        ])
    }

    pub fn reconstruct(&self) -> MatrixRep {
        let zero = Complex64::new(0.0, 0.0);
        let d = MatrixRep([[self.z, zero], [zero, self.z.conj()]]);
        let u = self.unitary();
        u.matmul(&d).matmul(&u.adjoint())
    }
}

/// Which Hermite coherent-state family to build.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HermiteFamily {
    /// `|η_{q,s}⟩ ∝ Σ_m |e_m⟩ h_{m,s}(q)`.
    OneIndex(HermiteFamilyS),
    /// `|η_{q,n}⟩ ∝ Σ_m |e_m⟩ h_{n,m}(q, q̄)`; `n = 0` is the canonical family.
    TwoIndex { n: usize },
}

impl HermiteFamily {
    /// First `dim` unnormalized components.
    pub fn components(&self, q: Quaternion, dim: usize) -> Vec<Quaternion> {
        match *self {
            Self::OneIndex(f) => f.h_row(q, dim),
            Self::TwoIndex { n } => two_index_row(n, q, dim),
        }
    }

    /// Closed-form `Σ_m |component_m|²` over all `m`.
    pub fn normalization(&self, q: Quaternion) -> f64 {
        match *self {
            Self::OneIndex(f) => f.kernel(q),
            Self::TwoIndex { .. } => q.norm_sqr().exp(),
        }
    }

    /// `(a, b, c)` with measure `c · e^{-a x² - b y²} dx dy dΩ`.
    fn gaussian(&self) -> (f64, f64, f64) {
        match *self {
            Self::OneIndex(f) => {
                let (a, b) = f.exponents();
                (a, b, 1.0)
            }
            Self::TwoIndex { .. } => (1.0, 1.0, 1.0 / PI),
        }
    }

    /// Largest power of `x` (and of `y`) in `c_m f c̄_l` for a symbol of
    /// degree `d`.
    fn integrand_degree(&self, dim: usize, symbol_degree: usize) -> usize {
        let top = dim.saturating_sub(1);
        match *self {
            Self::OneIndex(_) => 2 * top + symbol_degree,
            Self::TwoIndex { n } => 2 * (n + top) + symbol_degree,
        }
    }

    /// Band pattern of `A_q`: `|m − l| = 1` for one index, `l = m + 1` for two.
    pub fn aq_allows(&self, m: usize, l: usize) -> bool {
        match self {
            Self::OneIndex(_) => m.abs_diff(l) == 1,
            Self::TwoIndex { .. } => l == m + 1,
        }
    }
}

/// Node counts for a Hermite grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HermiteGridOrders {
    pub x: usize,
    pub y: usize,
    pub phi: usize,
    pub psi: usize,
}

impl HermiteGridOrders {
    pub fn for_problem(family: &HermiteFamily, dim: usize, max_symbol_degree: usize) -> Self {
        let deg = family.integrand_degree(dim, max_symbol_degree);
        let n = deg / 2 + 1;
        Self {
            x: n,
            y: n,
            phi: max_symbol_degree / 2 + 2,
            psi: max_symbol_degree + 3,
        }
    }

    /// Whether the rules integrate degree `deg` in `x`, `y` and the quadratic
    /// axis dependence exactly.
    pub fn covers(&self, deg: usize) -> bool {
        2 * self.x > deg && 2 * self.y > deg && 2 * self.phi > 2 && self.psi > 2
    }
}

/// Tensor grid for `c · e^{-a x² - b y²} dx dy dΩ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteGrid {
    orders: HermiteGridOrders,
    x: Rule,
    y: Rule,
    angular: Vec<([f64; 3], f64)>,
}

impl HermiteGrid {
    pub fn new(family: &HermiteFamily, orders: HermiteGridOrders) -> Result<Self> {
        let (a, b, c) = family.gaussian();
        let x = scaled_hermite(orders.x, a)?.reweighted(c);
        let y = scaled_hermite(orders.y, b)?;
        let u = gauss_legendre(orders.phi)?;
        let psi = uniform_periodic(orders.psi)?;
        let pw = 1.0 / orders.psi as f64;
        let mut angular = Vec::with_capacity(u.len() * psi.len());
        for (uu, wu) in u.iter() {
            let phi = uu.clamp(-1.0, 1.0).acos();
            for (ps, _) in psi.iter() {
                angular.push((unit_direction(phi, ps), 0.5 * wu * pw));
            }
        }
        Ok(Self { orders, x, y, angular })
    }

    pub fn orders(&self) -> HermiteGridOrders {
        self.orders
    }

    /// Nodes `(q, w)` for one value of `x`.
    fn column(&self, x: f64, wx: f64) -> impl Iterator<Item = (Quaternion, f64)> + '_ {
        self.y.iter().flat_map(move |(y, wy)| {
            self.angular.iter().map(move |&(n, wa)| {
                (Quaternion::new(x, y * n[0], y * n[1], y * n[2]), wx * wy * wa)
            })
        })
    }

    /// `Σ w g(q)`.
    pub fn integrate(&self, g: impl Fn(Quaternion) -> Quaternion + Sync) -> Quaternion {
        let parts: Vec<Quaternion> = self
            .x
            .nodes
            .par_iter()
            .zip(self.x.weights.par_iter())
            .map(|(&x, &wx)| self.column(x, wx).map(|(q, w)| g(q) * w).sum())
            .collect();
        pairwise_sum(&parts, Quaternion::ZERO, |a, b| *a + *b)
    }
}

/// Gauss–Hermite rule for `∫ e^{-a x²} g(x) dx`.
fn scaled_hermite(n: usize, a: f64) -> Result<Rule> {
    let k = 1.0 / a.sqrt();
    Ok(gauss_hermite(n)?.scaled(k))
}

/// Quaternion-valued Gram matrix `⟨h_{m,s}, h_{n,s}⟩ = ∫ conj(h_m) h_n dν_s dΩ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramReport {
    pub gram: Vec<Vec<Quaternion>>,
    /// `max |G_{mn} − δ_{mn}|`.
    pub max_defect: f64,
    /// Set when the grid does not integrate degree `2 n_max` exactly.
    pub exactness_warning: bool,
}

pub fn hermite_orthogonality_s(
    family: HermiteFamilyS,
    n_max: usize,
    orders: Option<HermiteGridOrders>,
) -> Result<GramReport> {
    let fam = HermiteFamily::OneIndex(family);
    let dim = n_max + 1;
    let orders = orders.unwrap_or_else(|| HermiteGridOrders::for_problem(&fam, dim, 0));
    let grid = HermiteGrid::new(&fam, orders)?;
    let parts: Vec<Vec<Quaternion>> = grid
        .x
        .nodes
        .par_iter()
        .zip(grid.x.weights.par_iter())
        .map(|(&x, &wx)| {
            let mut acc = vec![Quaternion::ZERO; dim * dim];
            for (q, w) in grid.column(x, wx) {
                let h = family.h_row(q, dim);
                for m in 0..dim {
                    let hm = h[m].conj() * w;
                    for n in 0..dim {
                        acc[m * dim + n] += hm * h[n];
                    }
                }
            }
            acc
        })
        .collect();
    let flat = pairwise_sum(&parts, vec![Quaternion::ZERO; dim * dim], |a, b| add_flat(a, b));
    let gram: Vec<Vec<Quaternion>> = flat.chunks(dim).map(|r| r.to_vec()).collect();
    let mut max_defect = 0.0f64;
    for (m, row) in gram.iter().enumerate() {
        for (n, g) in row.iter().enumerate() {
            let target = if m == n { Quaternion::ONE } else { Quaternion::ZERO };
            max_defect = max_defect.max(g.dist(target));
        }
    }
    Ok(GramReport {
        gram,
        max_defect,
        exactness_warning: !orders.covers(2 * n_max),
    })
}

fn add_flat(a: &[Quaternion], b: &[Quaternion]) -> Vec<Quaternion> {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

/// A truncated Hermite coherent state.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteCs {
    pub label: Quaternion,
    /// Components divided by `√𝒩(q)`.
    pub vector: RqVector,
    /// Closed-form `𝒩(q)`.
    pub normalization: f64,
}

impl HermiteCs {
    /// `1 − ‖η‖²`, the mass beyond the truncation.
    pub fn missing_mass(&self) -> f64 {
        1.0 - self.vector.norm_sqr()
    }
}

pub fn hermite_cs(family: &HermiteFamily, q: Quaternion, dim: usize) -> Result<HermiteCs> {
    if dim == 0 {
        return Err(QuatError::DimensionTooSmall { min: 1, found: 0 });
    }
    let normalization = family.normalization(q);
    if !normalization.is_finite() || normalization <= 0.0 {
        return Err(QuatError::QuadratureOrder(format!(
            "kernel value {normalization:e} at {q} is not usable"
        )));
    }
    let k = 1.0 / normalization.sqrt();
    let comps = family.components(q, dim).into_iter().map(|c| c * k).collect();
    Ok(HermiteCs {
        label: q,
        vector: RqVector::new(comps),
        normalization,
    })
}

/// `(A_f)_{ml} = ∫ c_m(q) f(q) conj(c_l(q)) dμ` for a Hermite family.
pub fn hermite_quantize(family: &HermiteFamily, grid: &HermiteGrid, f: &Symbol, dim: usize) -> Result<RqOperator> {
    if dim == 0 {
        return Err(QuatError::DimensionTooSmall { min: 1, found: 0 });
    }
    let parts: Vec<Vec<Quaternion>> = grid
        .x
        .nodes
        .par_iter()
        .zip(grid.x.weights.par_iter())
        .map(|(&x, &wx)| {
            let mut acc = vec![Quaternion::ZERO; dim * dim];
            for (q, w) in grid.column(x, wx) {
                let c = family.components(q, dim);
                let fq = f.eval(q) * w;
                for m in 0..dim {
                    let left = c[m] * fq;
                    for l in 0..dim {
                        acc[m * dim + l] += left * c[l].conj();
                    }
                }
            }
            acc
        })
        .collect();
    let flat = pairwise_sum(&parts, vec![Quaternion::ZERO; dim * dim], |a, b| add_flat(a, b));
    if flat.iter().any(|e| !e.to_array().iter().all(|v| v.is_finite())) {
        return Err(QuatError::QuadratureOrder("non-finite quadrature sum".into()));
    }
    RqOperator::from_entries(dim, flat)
}

/// Coherent states and quantization for one Hermite family.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteQuantization {
    pub family: HermiteFamily,
    pub dim: usize,
    pub orders: HermiteGridOrders,
    /// Grid integrates degree-1 symbols exactly.
    pub certified: bool,
    /// `max |A_1 − 𝕀|`.
    pub resolution_defect: f64,
    /// Missing mass `1 − ‖η_q‖²` at each requested label.
    pub cs_missing_mass: Vec<(Quaternion, f64)>,
    pub aq: RqOperator,
    pub aqbar: RqOperator,
    pub commutator: RqOperator,
    /// `max |A_q† − A_q̄|`.
    pub adjoint_defect: f64,
    /// Largest entry of `A_q` outside the family's band.
    pub band_residual: f64,
}

pub fn hermite_cs_and_quantize(
    family: HermiteFamily,
    orders: Option<HermiteGridOrders>,
    dim: usize,
    labels: &[Quaternion],
) -> Result<HermiteQuantization> {
    let orders = orders.unwrap_or_else(|| HermiteGridOrders::for_problem(&family, dim, 1));
    let grid = HermiteGrid::new(&family, orders)?;
    let a1 = hermite_quantize(&family, &grid, &Symbol::one(), dim)?;
    let aq = hermite_quantize(&family, &grid, &Symbol::q(), dim)?;
    let aqbar = hermite_quantize(&family, &grid, &Symbol::qbar(), dim)?;
    let commutator = aq.commutator(&aqbar)?;
    let cs_missing_mass = labels
        .iter()
        .map(|&q| Ok((q, hermite_cs(&family, q, dim)?.missing_mass())))
        .collect::<Result<Vec<_>>>()?;
    let mut band_residual = 0.0f64;
    for m in 0..dim {
        for l in 0..dim {
            if !family.aq_allows(m, l) {
                band_residual = band_residual.max(aq.get(m, l).norm());
            }
        }
    }
    Ok(HermiteQuantization {
        family,
        dim,
        orders,
        certified: orders.covers(family.integrand_degree(dim, 1)),
        resolution_defect: a1.max_diff(&RqOperator::identity(dim)),
        cs_missing_mass,
        adjoint_defect: aq.adjoint().max_diff(&aqbar),
        aq,
        aqbar,
        commutator,
        band_residual,
    })
}
