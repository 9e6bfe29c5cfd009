//! Coherent-state quantization `f ↦ A_f = ∫ |γ_q⟩ f(q, q̄) ⟨γ_q| dς`.
//!
//! Matrix elements are
//!
//! ```text
//! (A_f)_{ml} = ∫ e^{-|q|²} q^m f(q, q̄) q̄^l / √(m! l!) dς
//! ```
//!
//! evaluated on a tensor grid in `(t = r², θ, u = cos φ, ψ)`. With the radial
//! density `2r e^{-r²}` the substitution `t = r²` turns the radial integral
//! into a Gauss–Laguerre integral, so polynomial symbols are integrated
//! exactly up to the degrees recorded in the grid [`Certificate`].

use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use rayon::prelude::*;

use crate::antiregular::factorial_sqrt;
use crate::error::{QuatError, Result};
use crate::linalg::RqOperator;
use crate::quadrature::{gauss_laguerre, gauss_legendre, uniform_periodic, Rule};
use crate::quaternion::{unit_direction, Quaternion};

/// Node counts of the four one-dimensional rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridOrders {
    /// Gauss–Laguerre nodes in `t = r²`.
    pub radial: usize,
    /// Uniform nodes in θ; rounded up to an even count.
    pub theta: usize,
    /// Gauss–Legendre nodes in `u = cos φ`.
    pub phi: usize,
    /// Uniform nodes in ψ.
    pub psi: usize,
}

impl GridOrders {
    /// Smallest orders whose certificate covers radial degree `N + d` and θ
    /// frequency `2N + d` for symbols of total degree `d`.
    pub fn for_problem(dim: usize, max_symbol_degree: usize) -> Self {
        let d = max_symbol_degree;
        Self {
            radial: (dim + d) / 2 + 1,
            theta: even_at_least(2 * dim + d + 1),
            phi: d / 2 + 2,
            psi: d + 3,
        }
    }
}

fn even_at_least(n: usize) -> usize {
    n + n % 2
}

/// Polynomial degrees integrated exactly by a grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Largest power of `t = r²` integrated exactly.
    pub radial_degree: usize,
    /// Largest |frequency| in θ integrated exactly.
    pub theta_degree: usize,
    /// Largest power of `cos φ` integrated exactly.
    pub phi_degree: usize,
    /// Largest |frequency| in ψ integrated exactly.
    pub psi_degree: usize,
}

impl Certificate {
    /// Degrees that `quantize` needs for a polynomial symbol of total degree
    /// `d` on an `N`-dimensional truncation.
    ///
    /// After the θ average only terms with equal powers survive, leaving
    /// `t^{m+a}` with `m + a ≤ N − 1 + d`. The θ frequencies reach
    /// `2(N − 1) + d`. The dependence on the axis `n̂` is at most quadratic,
    /// whatever the symbol.
    pub fn required(dim: usize, symbol_degree: usize) -> Self {
        let top = dim.saturating_sub(1);
        Self {
            radial_degree: top + symbol_degree,
            theta_degree: 2 * top + symbol_degree,
            phi_degree: 2,
            psi_degree: 2,
        }
    }

    pub fn covers(&self, need: &Self) -> bool {
        self.radial_degree >= need.radial_degree
            && self.theta_degree >= need.theta_degree
            && self.phi_degree >= need.phi_degree
            && self.psi_degree >= need.psi_degree
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct AngularNode {
    cos_theta: f64,
    sin_theta: f64,
    axis: [f64; 3],
    weight: f64,
}

/// Tensor grid for the measure `dς` with the coherent-state weight folded in:
/// `Σ_nodes w g(q) ≈ ∫ g(q) e^{-r²} dς`, a probability measure.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureGrid {
    orders: GridOrders,
    radial: Rule,
    angular: Vec<AngularNode>,
    certificate: Certificate,
}

impl QuadratureGrid {
    pub fn new(orders: GridOrders) -> Result<Self> {
        let theta_n = even_at_least(orders.theta);
        let radial = gauss_laguerre(orders.radial)?;
        let u_rule = gauss_legendre(orders.phi)?;
        let psi_rule = uniform_periodic(orders.psi)?;
        if theta_n == 0 {
            return Err(QuatError::QuadratureOrder("θ rule needs nodes".into()));
        }
        let theta = theta_angles(theta_n);
        let theta_w = 1.0 / theta_n as f64;
        let psi_w = 1.0 / orders.psi as f64;
        let mut angular = Vec::with_capacity(theta_n * orders.phi * orders.psi);
        for &(cos_theta, sin_theta) in &theta {
            for (u, wu) in u_rule.iter() {
                let phi = u.clamp(-1.0, 1.0).acos();
                for (psi, _) in psi_rule.iter() {
                    angular.push(AngularNode {
                        cos_theta,
                        sin_theta,
                        axis: unit_direction(phi, psi),
                        weight: theta_w * 0.5 * wu * psi_w,
                    });
                }
            }
        }
        let certificate = Certificate {
            radial_degree: 2 * orders.radial - 1,
            theta_degree: theta_n - 1,
            phi_degree: 2 * orders.phi - 1,
            psi_degree: orders.psi - 1,
        };
        Ok(Self {
            orders: GridOrders {
                theta: theta_n,
                ..orders
            },
            radial,
            angular,
            certificate,
        })
    }

    pub fn orders(&self) -> GridOrders {
        self.orders
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn node_count(&self) -> usize {
        self.radial.len() * self.angular.len()
    }

    /// Radial rule in `t = r²` (weight `e^{-t}`).
    pub fn radial_rule(&self) -> &Rule {
        &self.radial
    }

    /// All nodes `(q, weight)` in deterministic order: radial outermost, then
    /// θ, `cos φ`, ψ.
    pub fn nodes(&self) -> impl Iterator<Item = (Quaternion, f64)> + '_ {
        self.radial
            .iter()
            .flat_map(move |(t, wt)| self.radial_slab(t, wt))
    }

    fn radial_slab(&self, t: f64, wt: f64) -> impl Iterator<Item = (Quaternion, f64)> + '_ {
        let r = t.sqrt();
        self.angular.iter().map(move |a| {
            let s = r * a.sin_theta;
            let q = Quaternion::new(r * a.cos_theta, s * a.axis[0], s * a.axis[1], s * a.axis[2]);
            (q, wt * a.weight)
        })
    }

    /// `Σ w g(q)` over the grid, summed per radial node and then pairwise.
    pub fn integrate(&self, g: impl Fn(Quaternion) -> Quaternion + Sync) -> Quaternion {
        let partials: Vec<Quaternion> = self
            .radial
            .nodes
            .par_iter()
            .zip(self.radial.weights.par_iter())
            .map(|(&t, &wt)| self.radial_slab(t, wt).map(|(q, w)| g(q) * w).sum())
            .collect();
        pairwise_sum(&partials, Quaternion::ZERO, |a, b| *a + *b)
    }
}

/// θ angles in pairs `θ` and `θ + π` whose trigonometric values are exact
/// negatives, so odd integrands cancel node by node.
fn theta_angles(n: usize) -> Vec<(f64, f64)> {
    let half = n / 2;
    let h = std::f64::consts::TAU / n as f64;
    let first: Vec<(f64, f64)> = (0..half)
        .map(|k| {
            let (s, c) = (k as f64 * h).sin_cos();
            (c, s)
        })
        .collect();
    first
        .iter()
        .copied()
        .chain(first.iter().map(|&(c, s)| (-c, -s)))
        .collect()
}

/// Deterministic pairwise reduction.
pub(crate) fn pairwise_sum<T: Clone>(items: &[T], zero: T, add: impl Fn(&T, &T) -> T + Copy) -> T {
    match items.len() {
        0 => zero,
        1 => items[0].clone(),
        n => {
            let (a, b) = items.split_at(n / 2);
            add(&pairwise_sum(a, zero.clone(), add), &pairwise_sum(b, zero, add))
        }
    }
}

/// Grid sized for an `N`-dimensional truncation and symbols up to total
/// degree `max_symbol_degree`.
pub fn build_grid(dim: usize, max_symbol_degree: usize) -> Result<QuadratureGrid> {
    if dim == 0 {
        return Err(QuatError::DimensionTooSmall { min: 1, found: 0 });
    }
    QuadratureGrid::new(GridOrders::for_problem(dim, max_symbol_degree))
}

/// `∫_0^∞ r^{2m} 2r e^{-r²} dr` on the grid's radial rule; equals `m!` when
/// `m` is within the certificate.
pub fn moment_check(grid: &QuadratureGrid, m: usize) -> Result<f64> {
    let certified = grid.certificate.radial_degree;
    if m > certified {
        return Err(QuatError::BeyondCertificate { order: m, certified });
    }
    Ok(grid.radial.integrate(|t| t.powi(m as i32)))
}

/// One ordered monomial `q^a · c · q̄^b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Monomial {
    pub q_power: u32,
    pub coeff: Quaternion,
    pub conj_power: u32,
}

impl Monomial {
    pub fn new(q_power: u32, coeff: Quaternion, conj_power: u32) -> Self {
        Self { q_power, coeff, conj_power }
    }

    pub fn degree(&self) -> u32 {
        self.q_power + self.conj_power
    }

    pub fn eval(&self, q: Quaternion) -> Quaternion {
        q.powi(self.q_power) * self.coeff * q.conj().powi(self.conj_power)
    }

    /// Pointwise conjugate: `conj(q^a c q̄^b) = q^b c̄ q̄^a`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.conj_power, self.coeff.conj(), self.q_power)
    }
}

/// A classical observable `f(q, q̄)`: either a finite sum of ordered
/// monomials or an opaque pointwise function.
#[derive(Clone)]
pub enum Symbol {
    Polynomial(Vec<Monomial>),
    Function(Arc<dyn Fn(Quaternion) -> Quaternion + Send + Sync>),
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Polynomial(m) => f.debug_tuple("Polynomial").field(m).finish(),
            Self::Function(_) => f.write_str("Function(..)"),
        }
    }
}

impl Symbol {
    pub fn constant(c: Quaternion) -> Self {
        Self::Polynomial(vec![Monomial::new(0, c, 0)])
    }

    pub fn one() -> Self {
        Self::constant(Quaternion::ONE)
    }

    pub fn q() -> Self {
        Self::monomial(1, Quaternion::ONE, 0)
    }

    pub fn qbar() -> Self {
        Self::monomial(0, Quaternion::ONE, 1)
    }

    /// `|q|² = q q̄`.
    pub fn norm_sqr() -> Self {
        Self::monomial(1, Quaternion::ONE, 1)
    }

    pub fn monomial(q_power: u32, coeff: Quaternion, conj_power: u32) -> Self {
        Self::Polynomial(vec![Monomial::new(q_power, coeff, conj_power)])
    }

    pub fn function(f: impl Fn(Quaternion) -> Quaternion + Send + Sync + 'static) -> Self {
        Self::Function(Arc::new(f))
    }

    pub fn eval(&self, q: Quaternion) -> Quaternion {
        match self {
            Self::Polynomial(ms) => ms.iter().map(|m| m.eval(q)).sum(),
            Self::Function(f) => f(q),
        }
    }

    /// Total degree; `None` for opaque functions.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Self::Polynomial(ms) => Some(ms.iter().map(|m| m.degree() as usize).max().unwrap_or(0)),
            Self::Function(_) => None,
        }
    }

    /// The pointwise conjugate symbol `conj(f(q, q̄))`.
    pub fn conjugate(&self) -> Self {
        match self {
            Self::Polynomial(ms) => Self::Polynomial(ms.iter().map(Monomial::conjugate).collect()),
            Self::Function(f) => {
                let f = Arc::clone(f);
                Self::function(move |q| f(q).conj())
            }
        }
    }

    /// Whether `(m, l)` can be nonzero in `A_f`: some monomial must satisfy
    /// `m + a = l + b` (angular orthogonality in θ).
    pub fn allows_entry(&self, m: usize, l: usize) -> bool {
        match self {
            Self::Polynomial(ms) => ms
                .iter()
                .any(|mo| m + mo.q_power as usize == l + mo.conj_power as usize),
            Self::Function(_) => true,
        }
    }
}

impl Add for Symbol {
    type Output = Symbol;
    fn add(self, rhs: Symbol) -> Symbol {
        match (self, rhs) {
            (Symbol::Polynomial(mut a), Symbol::Polynomial(b)) => {
                a.extend(b);
                Symbol::Polynomial(a)
            }
            (a, b) => Symbol::function(move |q| a.eval(q) + b.eval(q)),
        }
    }
}

/// Raised when the grid does not certify the symbol's integrals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CertificateWarning {
    /// Polynomial symbol beyond the certified degrees.
    Exceeded { needed: Certificate, have: Certificate },
    /// Opaque symbol; no exactness claim is possible.
    Uncertified,
}

/// Outcome of [`quantize`].
#[derive(Clone, Debug, PartialEq)]
pub struct QuantizationResult {
    pub operator: RqOperator,
    pub certificate: Certificate,
    /// Largest entry where angular orthogonality forces a zero; `None` for
    /// opaque symbols.
    pub off_pattern_residual: Option<f64>,
    pub warning: Option<CertificateWarning>,
}

/// Quantize `f` on the first `dim` Fock states.
///
/// Contributions are accumulated per radial node (in parallel) and reduced
/// pairwise in node order, so the result does not depend on thread count.
pub fn quantize(f: &Symbol, grid: &QuadratureGrid, dim: usize) -> Result<QuantizationResult> {
    if dim == 0 {
        return Err(QuatError::DimensionTooSmall { min: 1, found: 0 });
    }
    let warning = match f.degree() {
        Some(d) => {
            let needed = Certificate::required(dim, d);
            (!grid.certificate.covers(&needed)).then_some(CertificateWarning::Exceeded {
                needed,
                have: grid.certificate,
            })
        }
        None => Some(CertificateWarning::Uncertified),
    };

    let inv_sqrt_fact: Vec<f64> = (0..dim).map(|m| 1.0 / factorial_sqrt(m)).collect();
    let partials: Vec<Vec<Quaternion>> = grid
        .radial
        .nodes
        .par_iter()
        .zip(grid.radial.weights.par_iter())
        .map(|(&t, &wt)| {
            let mut acc = vec![Quaternion::ZERO; dim * dim];
            let mut powers = vec![Quaternion::ZERO; dim];
            let mut left = vec![Quaternion::ZERO; dim];
            for (q, w) in grid.radial_slab(t, wt) {
                // q^m, then q^m f / √m! and q̄^l / √l!
                let mut p = Quaternion::ONE;
                for slot in powers.iter_mut() {
                    *slot = p;
                    p *= q;
                }
                let fq = f.eval(q) * w;
                for m in 0..dim {
                    left[m] = powers[m] * fq * inv_sqrt_fact[m];
                }
                for m in 0..dim {
                    let lm = left[m];
                    let row = &mut acc[m * dim..(m + 1) * dim];
                    for (l, cell) in row.iter_mut().enumerate() {
                        *cell += lm * (powers[l].conj() * inv_sqrt_fact[l]);
                    }
                }
            }
            acc
        })
        .collect();
    let zero = vec![Quaternion::ZERO; dim * dim];
    let total = pairwise_sum(&partials, zero, |a, b| {
        a.iter().zip(b).map(|(&x, &y)| x + y).collect()
    });
    let operator = RqOperator::from_entries(dim, total)?;

    let off_pattern_residual = matches!(f, Symbol::Polynomial(_)).then(|| {
        let mut worst = 0.0f64;
        for m in 0..dim {
            for l in 0..dim {
                if !f.allows_entry(m, l) {
                    worst = worst.max(operator.get(m, l).norm());
                }
            }
        }
        worst
    });

    Ok(QuantizationResult {
        operator,
        certificate: grid.certificate,
        off_pattern_residual,
        warning,
    })
}

fn check_ladder_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        Err(QuatError::DimensionTooSmall { min: 2, found: dim })
    } else {
        Ok(())
    }
}

/// Annihilation operator: `√(k+1)` at `(k, k+1)`.
pub fn analytic_aq(dim: usize) -> Result<RqOperator> {
    check_ladder_dim(dim)?;
    Ok(RqOperator::from_real_fn(dim, |k, l| {
        if l == k + 1 {
            (l as f64).sqrt()
        } else {
            0.0
        }
    }))
}

/// Creation operator: `√(k+1)` at `(k+1, k)`.
pub fn analytic_aqbar(dim: usize) -> Result<RqOperator> {
    Ok(analytic_aq(dim)?.adjoint())
}

/// Max deviation of `A_1` from the identity.
pub fn resolution_identity_check(grid: &QuadratureGrid, dim: usize) -> Result<f64> {
    let a1 = quantize(&Symbol::one(), grid, dim)?;
    Ok(a1.operator.max_diff(&RqOperator::identity(dim)))
}

/// `[A_q, A_q̄]` on a truncated space.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorReport {
    pub dim: usize,
    pub commutator: RqOperator,
    /// Max deviation from the identity over indices `0..N−1`.
    pub safe_defect: f64,
    /// Value at `(N−1, N−1)`; trace zero forces `1 − N`.
    pub corner: Quaternion,
    /// `max_m |(A_q A_q̄)_{mm} − (m+1)|` over `m ≤ N − 2`.
    pub annihilate_create_defect: f64,
    /// `max_m |(A_q̄ A_q)_{mm} − m|` over all `m`.
    pub create_annihilate_defect: f64,
}

impl CommutatorReport {
    pub fn corner_defect(&self) -> f64 {
        self.corner.dist(Quaternion::real(1.0 - self.dim as f64))
    }
}

pub fn commutator_check(dim: usize) -> Result<CommutatorReport> {
    let a = analytic_aq(dim)?;
    let ad = analytic_aqbar(dim)?;
    let aad = a.matmul(&ad)?;
    let ada = ad.matmul(&a)?;
    let commutator = aad.sub(&ada)?;
    let safe_defect = commutator.max_diff_leading(&RqOperator::identity(dim), dim - 1);
    let annihilate_create_defect = (0..dim - 1)
        .map(|m| aad.get(m, m).dist(Quaternion::real(m as f64 + 1.0)))
        .fold(0.0, f64::max);
    let create_annihilate_defect = (0..dim)
        .map(|m| ada.get(m, m).dist(Quaternion::real(m as f64)))
        .fold(0.0, f64::max);
    Ok(CommutatorReport {
        dim,
        corner: commutator.get(dim - 1, dim - 1),
        commutator,
        safe_defect,
        annihilate_create_defect,
        create_annihilate_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_grid_sizes() {
        let g = build_grid(8, 2).unwrap();
        assert!(g.orders().radial >= 6);
        assert!(g.certificate().radial_degree >= 10);
        assert!(g.certificate().theta_degree >= 18);
        assert_eq!(g.orders().theta % 2, 0);
        assert!(build_grid(0, 2).is_err());
    }

    #[test]
    fn grid_is_a_probability_measure() {
        let g = build_grid(4, 2).unwrap();
        let total = g.integrate(|_| Quaternion::ONE);
        assert!(total.dist(Quaternion::ONE) < 1e-14);
        // E|q|² = ∫ t e^{-t} dt = 1
        let m2 = g.integrate(|q| Quaternion::real(q.norm_sqr()));
        assert!((m2.x0 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn moments() {
        let g = build_grid(8, 2).unwrap();
        assert!((moment_check(&g, 0).unwrap() - 1.0).abs() < 1e-14);
        assert!((moment_check(&g, 3).unwrap() - 6.0).abs() < 1e-12 * 6.0);
        assert!((moment_check(&g, 5).unwrap() - 120.0).abs() < 1e-12 * 120.0);
        let too_high = g.certificate().radial_degree + 1;
        assert_eq!(
            moment_check(&g, too_high),
            Err(QuatError::BeyondCertificate {
                order: too_high,
                certified: g.certificate().radial_degree
            })
        );
    }

    #[test]
    fn unit_symbol_is_identity() {
        let g = build_grid(6, 0).unwrap();
        let r = quantize(&Symbol::one(), &g, 6).unwrap();
        assert!(r.warning.is_none());
        assert!(r.operator.max_diff(&RqOperator::identity(6)) < 1e-13);
        let g1 = build_grid(1, 0).unwrap();
        let r1 = quantize(&Symbol::one(), &g1, 1).unwrap();
        assert!(r1.operator.get(0, 0).dist(Quaternion::ONE) < 1e-15);
    }

    #[test]
    fn ladder_symbols() {
        let g = build_grid(8, 1).unwrap();
        let aq = quantize(&Symbol::q(), &g, 8).unwrap();
        assert!(aq.operator.max_diff(&analytic_aq(8).unwrap()) < 1e-12);
        assert!(aq.off_pattern_residual.unwrap() < 1e-13);
        let aqb = quantize(&Symbol::qbar(), &g, 8).unwrap();
        assert!(aqb.operator.max_diff(&analytic_aqbar(8).unwrap()) < 1e-12);
    }

    #[test]
    fn analytic_ladders() {
        let a = analytic_aq(6).unwrap();
        assert_eq!(a.get(0, 1), Quaternion::ONE);
        assert_eq!(a.get(3, 4), Quaternion::real(2.0));
        let e0 = crate::linalg::RqVector::basis(6, 0);
        assert_eq!(a.apply(&e0).unwrap(), crate::linalg::RqVector::zeros(6));
        assert_eq!(a.adjoint(), analytic_aqbar(6).unwrap());
        assert!(analytic_aq(1).is_err());
    }

    #[test]
    fn commutator_truncation_artifact() {
        for n in [2usize, 5, 16] {
            let r = commutator_check(n).unwrap();
            assert!(r.safe_defect < 1e-14);
            assert!(r.corner_defect() < 1e-14, "corner {:?}", r.corner);
            assert!(r.annihilate_create_defect < 1e-14);
            assert!(r.create_annihilate_defect < 1e-14);
        }
    }

    #[test]
    fn exceeded_certificate_warns() {
        let g = QuadratureGrid::new(GridOrders { radial: 2, theta: 4, phi: 2, psi: 3 }).unwrap();
        let r = quantize(&Symbol::norm_sqr(), &g, 6).unwrap();
        assert!(matches!(r.warning, Some(CertificateWarning::Exceeded { .. })));
        let r = quantize(&Symbol::function(|q| q), &g, 2).unwrap();
        assert_eq!(r.warning, Some(CertificateWarning::Uncertified));
        assert_eq!(r.off_pattern_residual, None);
    }

    #[test]
    fn symbol_evaluation_paths_agree() {
        let c = Quaternion::new(0.2, -1.0, 0.4, 0.3);
        let s = Symbol::monomial(2, c, 1) + Symbol::qbar();
        let q = Quaternion::new(0.5, 0.1, -0.7, 0.2);
        let direct = q * q * c * q.conj() + q.conj();
        assert!(s.eval(q).dist(direct) < 1e-15);
        assert_eq!(s.degree(), Some(3));
        assert!(s.conjugate().eval(q).dist(direct.conj()) < 1e-15);
    }

    #[test]
    fn theta_pairs_are_exact_negatives() {
        let a = theta_angles(10);
        for k in 0..5 {
            assert_eq!(a[k].0, -a[k + 5].0);
            assert_eq!(a[k].1, -a[k + 5].1);
        }
    }
}
