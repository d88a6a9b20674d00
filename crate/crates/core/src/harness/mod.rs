//! Enumeration oracle and theorem verification engine.

mod enumerate;
mod verify;

pub use enumerate::{
    enumerate_oriented, orientation, orientations_of, random_orientation, underlying_graphs,
    Connectivity, EnumFilter, GraphClass, OrientationPolicy, EXHAUSTIVE_MAX_ORDER,
    SPARSE_EXHAUSTIVE_MAX_ORDER,
};
pub use verify::{
    shrink, verify, verify_graph, verify_graphs, Domain, TheoremId, VerifyReport, Violation,
    FAMILY_MAX_ORDER, MAX_STORED_VIOLATIONS,
};
