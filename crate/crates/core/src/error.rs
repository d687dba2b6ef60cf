use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator {index} is not primitive")]
    NonPrimitive { index: usize },
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    Empty,
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("origin is not contained in the polytope")]
    OriginNotContained,
    #[error("point {0:?} is not contained in the polytope")]
    PointNotContained(Vec<i64>),
    #[error("fan is not complete")]
    IncompleteFan,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("polytope has non-lattice vertices")]
    NonLattice,
    #[error("ray {0:?} is already a ray of the fan")]
    ExistingRay(Vec<i64>),
    #[error("scaffolding does not define a polytope: {0}")]
    NotAPolytope(String),
    #[error("basis condition fails: add struts (0, b) for a basis b of N_U")]
    BasisCondition,
    #[error("factor is not contained in the annihilator of w")]
    FactorNotOrthogonal,
    #[error("shape is not a product of projective spaces")]
    NotProductShape,
    #[error("bounding region too large: {points} lattice points (limit {limit})")]
    TooLarge { points: usize, limit: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown shape label {0:?}")]
    UnknownShape(String),
    #[error("id {0} out of range")]
    IdOutOfRange(usize),
    #[error("inconsistency: {0}")]
    Defect(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
