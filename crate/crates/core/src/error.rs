use crate::graph::{Edge, Triangle};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {0} is not an edge of the graph")]
    EdgeNotInGraph(Edge),
    #[error("vertex index {0} is out of range (vertex count {1})")]
    VertexOutOfRange(u32, u32),
    #[error("{0} is not a triangle of the graph")]
    NotATriangle(Triangle),
    #[error("edge set is not a spanning tree: {0}")]
    NotASpanningTree(String),
    #[error("subgraphs belong to different host graphs")]
    InconsistentHosts,
    #[error("overlap map is not injective")]
    OverlapNotInjective,
    #[error("replacement word contains the generator being eliminated")]
    SelfReferencingSubstitution,
    #[error("triangle {0} is favourable; nothing to peel")]
    FavourableTriangle(Triangle),
    #[error("triangle {0} is unfavourable with respect to the given tree")]
    UnfavourableTriangle(Triangle),
    #[error("triangle {0} meets its edge-set complement in {1}, not in one edge")]
    BadPeelIntersection(Triangle, String),
    #[error("restricted tree does not span the edge-set complement of {0}")]
    RestrictedTreeNotSpanning(Triangle),
    #[error("graph is not in the decomposable family: {0}")]
    NotInFamily(String),
    #[error("graph is favourable; it has a direct RAAG witness instead of a decomposition")]
    FavourableInput,
    #[error("simple-connectivity verdict is unknown: {0}")]
    VerdictUnknown(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
