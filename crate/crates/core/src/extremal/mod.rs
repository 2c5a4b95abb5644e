//! Structural checks forced by a large `λ` and the exact extremal function
//! `φ(t)` at small budgets.

pub mod canon;
pub mod checks;
pub mod search;

pub use canon::{canonical_key, CanonKey};
pub use checks::{
    check_counting, check_overlap, check_rigidity, forbidden_interval, guarded_ceil, h_lower_bound,
    lambda_staircase, vertex_window_check, CountingCertificate, ForbiddenInterval, OverlapCertificate,
    RigidityVerdict, WindowVerdict,
};
pub use search::{enumerate_connected_families, phi_exact, phi_table, search_connected, PhiEntry, PhiTable, SearchConfig};
