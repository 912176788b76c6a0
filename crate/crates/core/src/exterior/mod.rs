//! Exterior and multivector calculus with polynomial coefficients.

pub mod alt;
pub mod forms;
pub mod koszul;
pub mod multivector;
pub mod polymat;

pub use alt::{Alt, FormKind, Kind, NKind, Trunc, VecKind};
pub use forms::{
    bivector_matrix, d, del, delbar, euler_homotopy, form_matrix, interior, lie_derivative, project_type, sharp,
    MixedForm, Multivector,
};
pub use koszul::{delta_sigma, koszul_bracket, mc_residual_dgla, mc_residual_koszul};
pub use multivector::{d_sigma, delbar_n, dgla_bracket, pi_star, schouten, MVElement};
