use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("differential squares to a nonzero map at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("subcomplex is not closed under the differential")]
    NotClosed,
    #[error("no simplex lies in the top filtration level (empty regular part)")]
    EmptyRegularPart,
    #[error("vertex '{vertex}' has level {level} outside 0..={formal_dimension}")]
    BadLevel { vertex: String, level: i64, formal_dimension: usize },
    #[error("duplicate vertex id '{0}'")]
    DuplicateVertex(String),
    #[error("unknown vertex id '{0}'")]
    UnknownVertex(String),
    #[error("empty or degenerate simplex in input")]
    EmptySimplex,
    #[error("regular part is not orientable")]
    NonOrientable,
    #[error("pseudomanifold precondition failed: {0}")]
    NotPseudomanifold(String),
    #[error("perversity sequence does not cover codimension {0}")]
    MissingCodim(usize),
    #[error("not a GM perversity: {0}")]
    NotGoreskyMacPherson(String),
    #[error("perversities live on different complexes")]
    ComplexMismatch,
    #[error("target is not the image of the named construction: {0}")]
    NotAConstructorImage(String),
    #[error("simplex {0} is not regular")]
    NotRegular(String),
    #[error("{0} is not a face of the given simplex")]
    NotAFace(String),
    #[error("operation requires field coefficients")]
    NotAField,
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("unknown stratum '{0}'")]
    UnknownStratum(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Errors caused by malformed input, as opposed to a mathematical
    /// precondition failing on well-formed input.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::NonOrientable
                | Error::NotPseudomanifold(_)
                | Error::NotAField
                | Error::NotAComplex { .. }
                | Error::NotClosed
                | Error::NotRegular(_)
                | Error::NotAFace(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
