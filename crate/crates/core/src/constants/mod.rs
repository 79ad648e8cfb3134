//! High-precision evaluation of every leading constant in the counting
//! formulas, plus the special functions they require. Each value carries an
//! explicit absolute error bound; see [`precision::PrecisionValue`].

pub mod characters;
pub mod precision;
pub mod products;
pub mod special;

pub use characters::{l_one, l_one_dirichlet_series, mult_order, primitive_root, DirichletCharacter};
pub use precision::{ComplexPrecision, PrecisionValue};
pub use products::{artin_xi, b_q, constant_a, k_constant, WirsingOdoniConstant};
pub use special::{digamma, gamma_real, h_gamma, ln_gamma};
