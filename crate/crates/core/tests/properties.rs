//! Property tests for the algebraic identities the numerics rely on.

use proptest::prelude::*;
use quatcs::antiregular::AntiRegularPoly;
use quatcs::coherent::{cs_vector, overlap};
use quatcs::hermite::{hermite_n, hermite_n_recurrence, hermite_nm, HermiteFamilyS};
use quatcs::linalg::{RqOperator, RqVector, ScaledOperator};
use quatcs::quaternion::{exp_pair, ImaginaryUnit, MatrixRep, PolarForm, Quaternion};
use quatcs::slice::SliceOperator;

fn coord(r: f64) -> impl Strategy<Value = f64> {
    -r..r
}

fn quat(r: f64) -> impl Strategy<Value = Quaternion> {
    (coord(r), coord(r), coord(r), coord(r)).prop_map(|(a, b, c, d)| Quaternion::new(a, b, c, d))
}

fn vector(dim: usize) -> impl Strategy<Value = RqVector> {
    prop::collection::vec(quat(2.0), dim).prop_map(RqVector::new)
}

fn operator(dim: usize) -> impl Strategy<Value = RqOperator> {
    prop::collection::vec(quat(2.0), dim * dim).prop_map(move |e| RqOperator::from_entries(dim, e).unwrap())
}

fn unit() -> impl Strategy<Value = ImaginaryUnit> {
    (coord(1.0), coord(1.0), coord(1.0))
        .prop_filter("nonzero direction", |(a, b, c)| a * a + b * b + c * c > 1e-4)
        .prop_map(|(a, b, c)| ImaginaryUnit::from_direction([a, b, c]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matrix_rep_is_a_homomorphism(p in quat(3.0), q in quat(3.0)) {
        let lhs = (p * q).to_matrix();
        let rhs = p.to_matrix().matmul(&q.to_matrix());
        prop_assert!(lhs.max_diff(&rhs) < 1e-12);
        prop_assert!(p.conj().to_matrix().max_diff(&p.to_matrix().adjoint()) < 1e-15);
        prop_assert!((p.to_matrix().det().re - p.norm_sqr()).abs() < 1e-12);
        prop_assert_eq!(Quaternion::from_matrix(&p.to_matrix(), 1e-12).unwrap(), p);
    }

    #[test]
    fn norm_is_multiplicative(p in quat(3.0), q in quat(3.0)) {
        prop_assert!(((p * q).norm() - p.norm() * q.norm()).abs() < 1e-12);
        prop_assert!(((p * q).conj().dist(q.conj() * p.conj())) < 1e-12);
    }

    #[test]
    fn product_is_associative(p in quat(2.0), q in quat(2.0), r in quat(2.0)) {
        prop_assert!(((p * q) * r).dist(p * (q * r)) < 1e-12);
    }

    #[test]
    fn inverse_is_two_sided(q in quat(3.0).prop_filter("invertible", |q| q.norm() > 1e-3)) {
        let inv = q.inverse().unwrap();
        prop_assert!((q * inv).dist(Quaternion::ONE) < 1e-10);
        prop_assert!((inv * q).dist(Quaternion::ONE) < 1e-10);
    }

    #[test]
    fn polar_round_trip(q in quat(3.0)) {
        let p = q.to_polar();
        prop_assert!(p.in_canonical_range());
        prop_assert!(p.theta <= std::f64::consts::PI);
        prop_assert!(Quaternion::from_polar(p).dist(q) < 1e-12);
        prop_assert!(p.to_matrix().max_diff(&q.to_matrix()) < 1e-12);
    }

    #[test]
    fn polar_angles_give_sigma_square_identity(phi in 0.0..std::f64::consts::PI, psi in 0.0..std::f64::consts::TAU) {
        let s = MatrixRep::sigma_n(phi, psi);
        prop_assert!(s.matmul(&s).max_diff(&MatrixRep::identity()) < 1e-14);
        prop_assert!(s.max_diff(&s.adjoint()) < 1e-15);
        let p = PolarForm { r: 1.0, theta: 0.7, phi, psi };
        prop_assert!(p.to_matrix().structure_deviation() < 1e-14);
    }

    #[test]
    fn slice_decomposition_reconstructs(q in quat(3.0)) {
        let s = q.slice_decompose();
        prop_assert!(s.embed().dist(q) < 1e-12);
        prop_assert!(s.y >= 0.0);
        prop_assert!(s.unit.get().x0 == 0.0);
    }

    #[test]
    fn inner_product_axioms(u in vector(4), v in vector(4), w in vector(4), a in quat(2.0)) {
        let uv = u.inner(&v).unwrap();
        // conjugate symmetry
        prop_assert!(uv.conj().dist(v.inner(&u).unwrap()) < 1e-12);
        // right linearity in the second slot, conjugate-left in the first
        prop_assert!(u.inner(&v.right_mul(a)).unwrap().dist(uv * a) < 1e-11);
        prop_assert!(u.right_mul(a).inner(&v).unwrap().dist(a.conj() * uv) < 1e-11);
        let sum = u.inner(&v.add(&w).unwrap()).unwrap();
        prop_assert!(sum.dist(uv + u.inner(&w).unwrap()) < 1e-11);
        // positivity
        let uu = u.inner(&u).unwrap();
        prop_assert!(uu.imag().norm() < 1e-12 && uu.x0 >= 0.0);
    }

    #[test]
    fn cauchy_schwarz(u in vector(5), v in vector(5)) {
        let ip = u.inner(&v).unwrap().norm();
        prop_assert!(ip <= u.norm() * v.norm() * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn operators_are_right_linear(a in operator(3), v in vector(3), c in quat(2.0)) {
        let lhs = a.apply(&v.right_mul(c)).unwrap();
        let rhs = a.apply(&v).unwrap().right_mul(c);
        prop_assert!(lhs.max_diff(&rhs) < 1e-11);
    }

    #[test]
    fn adjoint_relation(a in operator(3), u in vector(3), v in vector(3)) {
        let lhs = u.inner(&a.apply(&v).unwrap()).unwrap();
        let rhs = a.adjoint().apply(&u).unwrap().inner(&v).unwrap();
        prop_assert!(lhs.dist(rhs) < 1e-10);
    }

    #[test]
    fn complex_embedding_matches_products(a in operator(3), b in operator(3)) {
        let direct = a.matmul(&b).unwrap();
        let via = &a.complex_embedding() * &b.complex_embedding();
        let back = RqOperator::from_complex_embedding(&via, 1e-10).unwrap();
        prop_assert!(back.max_diff(&direct) < 1e-11);
    }

    #[test]
    fn real_scaling_is_linear(a in operator(3), x in -3.0..3.0f64, v in vector(3), c in quat(2.0)) {
        let s = ScaledOperator::new(Quaternion::real(x), a);
        prop_assert!(s.right_linearity_defect(&v, c).unwrap() < 1e-10);
    }

    #[test]
    fn exp_pair_commuting_reduces_to_exp(x in -2.0..2.0f64, y in -2.0..2.0f64, u in unit()) {
        let q = u.embed(x, y);
        let e = exp_pair(Quaternion::ONE, q, 1e-17);
        prop_assert!(e.dist(q.exp()) < 1e-12 * q.exp().norm().max(1.0));
    }

    #[test]
    fn overlap_hermitian_and_bounded(p in quat(0.75), q in quat(0.75)) {
        let a = overlap(p, q, 1e-17);
        prop_assert!(a.conj().dist(overlap(q, p, 1e-17)) < 1e-13);
        prop_assert!(a.norm() <= 1.0 + 1e-13);
    }

    #[test]
    fn cs_normalized_within_tail(q in quat(1.0)) {
        let cs = cs_vector(q, 24).unwrap();
        prop_assert!(cs.normalization_defect() <= cs.tail_bound + 1e-14);
    }

    #[test]
    fn slice_products_commute(x1 in -2.0..2.0f64, y1 in -2.0..2.0f64, x2 in -2.0..2.0f64, y2 in -2.0..2.0f64, u in unit()) {
        let p = u.embed(x1, y1);
        let q = u.embed(x2, y2);
        prop_assert!((p * q).dist(q * p) < 1e-12);
        let (x, y, off) = u.project(p * q);
        prop_assert!(off < 1e-12);
        prop_assert!((x - (x1 * x2 - y1 * y2)).abs() < 1e-12);
        prop_assert!((y - (x1 * y2 + y1 * x2)).abs() < 1e-12);
    }

    #[test]
    fn slice_embedding_is_multiplicative(
        e in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 18),
        u in unit(),
    ) {
        let a = SliceOperator::from_fn(u, 3, |m, l| num_complex::Complex64::new(e[m * 3 + l].0, e[m * 3 + l].1));
        let b = SliceOperator::from_fn(u, 3, |m, l| num_complex::Complex64::new(e[9 + m * 3 + l].0, e[9 + m * 3 + l].1));
        let ab = a.matmul(&b).unwrap().to_rq_operator();
        let direct = a.to_rq_operator().matmul(&b.to_rq_operator()).unwrap();
        prop_assert!(ab.max_diff(&direct) < 1e-12);
        prop_assert!(a.adjoint().to_rq_operator().max_diff(&a.to_rq_operator().adjoint()) < 1e-15);
    }

    #[test]
    fn cullen_derivative_is_right_linear(c in prop::collection::vec(quat(1.0), 6), a in quat(2.0)) {
        let p = AntiRegularPoly::new(c);
        let lhs = p.right_scale(a).cullen_derivative();
        let rhs = p.cullen_derivative().right_scale(a);
        prop_assert!(lhs.max_diff(&rhs) < 1e-12);
    }

    #[test]
    fn hermite_paths_agree(q in quat(1.0), n in 0usize..12) {
        let a = hermite_n(n, q);
        let b = hermite_n_recurrence(n, q);
        prop_assert!(a.dist(b) <= 1e-12 * b.norm().max(1.0));
    }

    #[test]
    fn hermite_real_argument_stays_real(x in -2.0..2.0f64, n in 0usize..10) {
        prop_assert!(hermite_n(n, Quaternion::real(x)).imag().norm() == 0.0);
    }

    #[test]
    fn two_index_conjugate_symmetry(q in quat(1.0), n in 0usize..5, m in 0usize..5) {
        let a = hermite_nm(n, m, q).conj();
        let b = hermite_nm(m, n, q);
        prop_assert!(a.dist(b) <= 1e-12 * b.norm().max(1.0));
    }

    #[test]
    fn b_ratio_identity(s in 0.01..0.99f64, n in 0usize..15) {
        let f = HermiteFamilyS::new(s).unwrap();
        prop_assert!(f.b(n) > 0.0);
        let r = f.b(n + 1) / f.b(n);
        prop_assert!((r - f.b_ratio(n)).abs() <= 1e-13 * r);
    }
}
