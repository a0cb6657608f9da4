use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation pair ({0}, {1}) references an element outside 0..{2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("not a partial order: {0} and {1} lie on a cycle")]
    NotAPartialOrder(usize, usize),
    #[error("not a lattice: elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("structure has no elements")]
    Empty,
    #[error("{what} has {size} elements, bound is {bound}")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("not a frame: {0}")]
    NotAFrame(String),
    #[error("not distributive: a={0}, b={1}, c={2} violate a∧(b∨c) = (a∧b)∨(a∧c)")]
    NotDistributive(usize, usize, usize),
    #[error("not Boolean: element {0} has no complement")]
    NotBoolean(usize),
    #[error("not a filter: {0}")]
    NotAFilter(String),
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("space is not sober: {0}")]
    NotSober(String),
    #[error("map is not monotone: {0} ≤ {1} but images are not ordered")]
    NotMonotone(usize, usize),
    #[error("map is not a frame homomorphism: {0}")]
    NotAFrameHom(String),
    #[error("map is not a perfect frame homomorphism: {0}")]
    NotPerfectFrameHom(String),
    #[error("map is not a perfect onto frame homomorphism: {0}")]
    NotPerfectOnto(String),
    #[error("map is not a point (frame homomorphism into 2): {0}")]
    NotAPoint(String),
    #[error("source/target mismatch: {0}")]
    SourceTargetMismatch(String),
    #[error("property ({which}) fails: {witness}")]
    PropertyFails { which: u8, witness: String },
    #[error("proximity axioms fail: {0}")]
    AxiomsFail(String),
    #[error("not a sublocale: {0}")]
    NotASublocale(String),
    #[error("no isomorphism: {0}")]
    NotIsomorphic(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
