//! Combinatorics of finite CAT(0) cube complexes through their 1-skeleta.
//!
//! Median graphs stand in for cube complexes, edge parallelism classes for
//! hyperplanes. Poc-sets give complexes back through the dual construction,
//! and [`WindowedShiftComplex`] looks at a `Z`-action through a finite window.

mod graph;
mod hyperplane;
mod pocset;
mod window;

pub use graph::{
    cube_graph, cycle_graph, is_median, path_graph, spider, tripod, Graph, MedianGraph,
    MedianVerdict,
};
pub use hyperplane::{crosses, facing_triples, hyperplanes, relation, Hyperplane, Relation, Sign};
pub use pocset::{complement, dual_cube_complex, DualComplex, PocSet, MAX_DUAL_WALLS};
pub use window::{
    ladder_window, line_window, staircase_window, SkewerVerdict, SymmetricDifference, Transfer,
    WindowedShiftComplex,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CubeError {
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("not a median graph: triple {triple:?} has {medians} medians")]
    NotMedian { triple: [usize; 3], medians: usize },
    #[error("hyperplanes {0} and {1} are the same hyperplane")]
    SameHyperplane(usize, usize),
    #[error("poc-set axiom violated: {0}")]
    PocSetAxiom(String),
    #[error("{walls} walls exceed the dual enumeration bound of {max}")]
    TooManyWalls { walls: usize, max: usize },
    #[error("json: {0}")]
    Json(String),
    #[error("shift map has {got} entries, graph has {expected} vertices")]
    SigmaLength { got: usize, expected: usize },
    #[error("shift map hits vertex {0} twice")]
    ShiftNotInjective(usize),
    #[error("shift map does not carry edge ({0}, {1}) to an edge")]
    ShiftBreaksAdjacency(usize, usize),
    #[error("shift map sends the edges of hyperplane {0} to different hyperplanes")]
    ShiftSplitsHyperplane(usize),
    #[error("no hyperplane {0}")]
    UnknownHyperplane(usize),
    #[error("no edge {0}")]
    UnknownEdge(String),
    #[error("hyperplane {0} is not inside the window interior")]
    NotResolved(usize),
    #[error("image of hyperplane {hyperplane} under sigma^{power} leaves the window")]
    ImageOutsideWindow { hyperplane: usize, power: i64 },
    #[error("the power bound must be at least 1")]
    ZeroPower,
}
