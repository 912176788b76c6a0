pub mod error;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub mod poly;
pub use poly::{Monomial, Poly};
pub mod model;
pub use model::{Model, Point};
pub mod exterior;
pub mod random;
pub mod ring;
pub mod linalg;
pub mod dirac;
pub mod hitchin;
pub mod poisson;
pub mod hyperkahler;
pub mod genkahler;
pub mod cli;
