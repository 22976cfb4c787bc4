use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{degree} exceeds the ambient cap of 2^{cap_bits} elements")]
    AmbientTooLarge { p: u64, degree: u32, cap_bits: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{sub} does not divide the ambient degree {ambient}")]
    InvalidSubfieldDegree { sub: u32, ambient: u32 },
    #[error("element is not in the subfield of order {order}")]
    NotInSubfield { order: u64 },
    #[error("order {d} does not divide {group} = |F*|")]
    OrderMismatch { d: u64, group: u64 },
    #[error("characters of different orders cannot share one sum")]
    MixedOrders,
    #[error("points {0} and {1} are Galois conjugates over the base field")]
    ConjugatePair(usize, usize),
    #[error("point {0} lies in the base field")]
    VInBaseField(usize),
    #[error("reduction modulo the zero polynomial")]
    ZeroModulus,
    #[error("field tower incompatible with the ambient field: {0}")]
    FieldTowersIncompatible(String),
    #[error("factors {0} and {1} are Galois conjugates over the base field")]
    ConjugateFactors(usize, usize),
    #[error("factors do not form a single conjugate orbit: {0}")]
    NotConjugateGroup(String),
    #[error("element is not a vertex of this graph")]
    NotAVertex,
    #[error("{vertices} vertices exceed the exhaustive limit of {limit}")]
    TooLargeForExhaustive { vertices: u64, limit: u64 },
    #[error("rad({m}) does not divide rad({d})")]
    RadicalMismatch { m: u64, d: u64 },
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
