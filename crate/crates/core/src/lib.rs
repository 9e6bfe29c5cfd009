pub mod antiregular;
pub mod coherent;
pub mod error;
pub mod hermite;
pub mod linalg;
pub mod observables;
pub mod quadrature;
pub mod quantize;
pub mod quaternion;
pub mod slice;

pub use antiregular::AntiRegularPoly;
pub use error::{QuatError, Result};
pub use linalg::{adjoint_defect, inner, scaled_apply, RqOperator, RqVector, ScaledOperator};
pub use quaternion::{
    exp_pair, exp_pair_sum, ExpPairSum, ImaginaryUnit, MatrixRep, PolarForm, Quaternion, SlicePoint,
};
pub use coherent::{cs_eigen_check, cs_from_exponential, cs_vector, overlap, CsDomain, CsVector};
pub use hermite::{
    hermite_cs, hermite_cs_and_quantize, hermite_n, hermite_nm, hermite_orthogonality_s, HermiteFamily,
    HermiteFamilyS, HermiteGridOrders, PointDecomposition,
};
pub use observables::{
    differential_model_check, lower_symbol, naive_momentum, number_operator, oscillator_algebra_check,
    position_operator, LowerSymbolReport,
};
pub use quantize::{
    analytic_aq, analytic_aqbar, build_grid, commutator_check, moment_check, quantize, Certificate, GridOrders,
    Monomial, QuadratureGrid, QuantizationResult, Symbol,
};
pub use slice::{canonical_commutation_check, slice_operators, slice_resolution_check, SliceOperator};
