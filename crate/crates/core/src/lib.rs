pub mod cube;
pub mod error;
pub mod homology;
pub mod invariants;
pub mod laurent;
pub mod matrix;
pub mod multigraph;
pub mod par;
pub mod verify;

pub use error::{Error, Result};
pub use laurent::{geometric_sum, BivariateLaurent};
pub use multigraph::{EdgeKind, Multigraph, Reduction, StateStats, StateSubset};

/// `(t-degree, w-degree)` of a homogeneous element.
pub type Bidegree = (i64, i64);
