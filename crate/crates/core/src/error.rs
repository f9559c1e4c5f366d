use thiserror::Error;

use crate::Bidegree;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count must be nonnegative, got {0}")]
    NegativeVertexCount(i64),
    #[error("edge {edge} has endpoint {endpoint} outside 0..{vertex_count}")]
    EndpointOutOfRange {
        edge: usize,
        endpoint: i64,
        vertex_count: usize,
    },
    #[error("edge index {index} out of range for a graph with {edge_count} edges")]
    EdgeIndexOutOfRange { index: usize, edge_count: usize },
    #[error("state has width {state} but the graph has {graph} edges")]
    StateWidthMismatch { state: usize, graph: usize },
    #[error("state mask {mask:#b} has bits beyond width {width}")]
    StateMaskOverflow { mask: u64, width: usize },
    #[error("graphs with more than 63 edges cannot be indexed by a state bitmask")]
    TooManyEdgesForMask,
    #[error("cannot contract loop edge {0}")]
    ContractLoop(usize),
    #[error("edge {0} already belongs to the state")]
    EdgeInState(usize),
    #[error("invalid edge permutation: {0}")]
    InvalidPermutation(String),
    #[error("edge subset is not contained in the graph: {0}")]
    NotASubgraph(String),

    #[error("negative power of a non-unit polynomial")]
    NonUnitPower,
    #[error("substitution requires nonnegative exponents, found x^{0} y^{1}")]
    NegativeExponent(i64, i64),
    #[error("evaluation at zero with a negative exponent")]
    EvaluateAtZero,
    #[error("coefficient C must be a unit (a signed monomial)")]
    NonUnitC,
    #[error("unknown specialization '{0}'")]
    UnknownSpecialization(String),
    #[error("Negami parameter t must be nonzero")]
    NegamiZeroT,
    #[error("brute-force coloring limited to {max} colors and {max} vertices")]
    ColoringTooLarge { max: usize },

    #[error("invalid algebra descriptor: {0}")]
    InvalidAlgebra(String),
    #[error("algebra has no counit")]
    MissingCounit,
    #[error("cube label must contain exactly one '*', found {0}")]
    BadCubeLabel(usize),
    #[error("graph has {edges} edges, above the limit of {limit}")]
    SizeLimit { edges: usize, limit: usize },
    #[error("differential does not preserve bidegree at height {height}: {from:?} -> {to:?}")]
    BidegreeViolation {
        height: usize,
        from: Bidegree,
        to: Bidegree,
    },
    #[error("d^{} d^{height} is nonzero in bidegree {bidegree:?}", height + 1)]
    DifferentialSquareNonzero { height: usize, bidegree: Bidegree },
    #[error("integer overflow while assembling differential entries")]
    Overflow,
    #[error("complexes are incompatible: {0}")]
    IncompatibleComplexes(String),
    #[error("map is not a chain map: {0}")]
    NotChainMap(String),

    #[error("graph JSON: {0}")]
    GraphJson(String),
}
