//! Dirac structures as frames of generalized vector fields.

pub mod frame;
pub mod gvfield;
pub mod point;

pub use frame::{DiracFrame, FrameComparison, InvolutivityReport};
pub use gvfield::{courant_bracket, GVField};
pub use point::PointDirac;
