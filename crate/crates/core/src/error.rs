use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field characteristic {0} is too small (need p >= 5)")]
    CharacteristicTooSmall(u64),
    #[error("{n} does not divide p - 1 = {}", p - 1)]
    NotADivisor { p: u32, n: usize },
    #[error("the zero vector is not a projective point or line")]
    ZeroVector,
    #[error("the two arguments coincide")]
    CoincidentArguments,
    #[error("the four points are not in general position")]
    DegenerateFrame,
    #[error("the matrix is singular")]
    SingularMatrix,
    #[error("the zero polynomial does not define a curve")]
    ZeroPolynomial,

    #[error("point {0:?} is not on the curve")]
    PointNotOnCurve([u32; 3]),
    #[error("point {0:?} is a singular point of the curve")]
    SingularPointInvolved([u32; 3]),
    #[error("the line through the given points is a component of the curve")]
    LineComponent,
    #[error("the curve is cuspidal; its group is the additive group of the field")]
    CuspidalUnsupported,
    #[error("the curve is not irreducible")]
    NotIrreducible,
    #[error("point {0:?} is not an inflection point of the curve")]
    NotAnInflection([u32; 3]),

    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a latin square: {0}")]
    NotALatinSquare(String),
    #[error("the given elements do not form a subgroup")]
    NotASubgroup,
    #[error("the subgroup is not normal")]
    NotNormal,
    #[error("the given elements do not form a coset of the subgroup")]
    NotACoset,

    #[error("components have different sizes or are empty")]
    SizeMismatch,
    #[error("components share the point {0:?}")]
    ComponentsOverlap([u32; 3]),
    #[error("component {component} contains the point {point:?} twice")]
    DuplicatePoint { component: usize, point: [u32; 3] },
    #[error("not a dual 3-net: {0}")]
    NotANet(String),
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),
    #[error("the net carries no group labeling")]
    MissingLabeling,

    #[error("the cosets uH and vH coincide")]
    CosetClash,
    #[error("the cosets T+g1, T+g2, T+g3 are not pairwise disjoint")]
    CosetsOverlap,
    #[error("no subgroup matching the request: {0}")]
    NoSuchSubgroup(String),
    #[error("degenerate projection: {0}")]
    DegenerateProjection(String),

    #[error("the net is not triangular in the fundamental frame")]
    NotTriangular,
    #[error("the center lies on the axis")]
    CenterOnAxis,

    #[error("p = {p} must exceed the group order {n}")]
    FieldTooSmall { p: u32, n: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
