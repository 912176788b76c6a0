pub mod graph;
pub mod psi;
pub mod deformed;
pub mod hamfam;
pub mod solver;
pub mod twistor;
pub mod mc;

pub use graph::{verify_graph_identity, verify_graph_identity_exact, GraphIdentityReport};
pub use psi::formality_psi;
pub use solver::{certify, mc_component_check, solve_hitchin, DeformSeries, MCElement, SolveMode};
pub use deformed::{deformed_structures, DeformedReport, DeformedStructures};
pub use hamfam::{complex_family_report, ComplexFamilyReport, RealFamily, RealFamilyReport};
pub use twistor::{twistor_demo, TwistorReport};
pub use mc::{random_mc_instance, MCInstanceReport};
