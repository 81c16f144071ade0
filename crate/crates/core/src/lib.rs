//! Spherical orders on finite groups: deciding orderability, building
//! witness orders and non-orderability certificates, and checking them
//! against the order axioms.

pub mod cli;
pub mod error;
pub mod group;
pub mod oracle;
pub mod order;
pub mod solver;
pub mod spectrum;
pub mod tuples;

pub use error::{GroupError, OracleError, OrderError, SolverError, TupleError};
pub use group::{make_group, Element, FiniteGroup, Side};
pub use order::{trivial_order, verify_order, AxiomReport, SphericalOrder};
pub use solver::{decide, Certificate, Verdict};
