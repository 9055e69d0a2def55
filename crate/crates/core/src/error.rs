use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("invalid rational literal `{0}`")]
    Rational(String),
    #[error("unknown backend `{0}` (expected float or exact)")]
    Backend(String),
    #[error("invalid theta `{0}`")]
    Theta(String),
    #[error("unknown theorem `{0}` (expected fricke, involution, r0, two-to-one, bielliptic or words)")]
    Theorem(String),
    #[error("unknown generator `{0}`")]
    Generator(String),
    #[error("word mixes letters of the orbifold group and the twice-punctured torus group")]
    MixedAlphabet,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Sl2Error {
    #[error("singular matrix (det = 0)")]
    Singular,
    #[error("matrix is not unimodular: |det - 1| = {0:e}")]
    NotUnimodular(f64),
    #[error("pair generates a reducible group (trace of commutator = 2)")]
    Reducible,
    #[error("product AB = ±I has no usable eigenbasis")]
    ScalarProduct,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
    #[error("representation violates its defining relations: {0}")]
    Invalid(String),
    #[error("operation requires theta = 1/2, got {0}")]
    ThetaNotHalf(String),
    #[error("sampler gave up after {0} attempts")]
    SamplerExhausted(usize),
    #[error("degenerate representation: {0}")]
    Degenerate(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
    #[error("local monodromy {0} is ±I")]
    ScalarLocalMonodromy(&'static str),
    #[error("no matrix conjugates (A1, B1) to (A2, B2)")]
    NoConjugator,
    #[error("conjugator exists but does not square to -I")]
    ConjugatorNotInvolutive,
    #[error("internal invariant broken: {what} (residual {residual:e})")]
    InternalInvariant { what: &'static str, residual: f64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("assignment has no matrix for generator `{0}`")]
    MissingGenerator(String),
    #[error("word is not in the twice-punctured torus group")]
    WrongGroup,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("malformed branching profile: {0}")]
    MalformedProfile(String),
}
