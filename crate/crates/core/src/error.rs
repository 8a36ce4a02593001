use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroVector: the zero vector has no primitive representative")]
    ZeroVector,
    #[error("NotSquare: expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("Singular: matrix has zero determinant")]
    Singular,
    #[error("RankDeficient: matrix does not have full column rank")]
    RankDeficient,
    #[error("NotFullRank: rows span a subspace of dimension {rank} < {dim}")]
    NotFullRank { rank: usize, dim: usize },
    #[error("NotProper: {0}")]
    NotProper(String),
    #[error("NotAVertex: point is not a vertex of the polyhedron")]
    NotAVertex,
    #[error("ZeroDenominator: continued fraction tail evaluates to zero")]
    ZeroDenominator,
    #[error("DimensionMismatch: expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
