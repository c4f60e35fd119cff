use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("galois substitution requires gcd(a, m) = 1, got a = {a}, m = {m}")]
    NotCoprime { a: i64, m: u64 },
    #[error("degenerate quadratic module: {0}")]
    DegenerateModule(String),
    #[error("cocycle is not {{+1, -1}}-valued; the Weil representation is only projective")]
    NotProper,
    #[error("candidate order basis is not multiplicatively closed")]
    RingClosureFailure,
    #[error("no element c0 with n(c0)/n(I) = 1 (mod l) found within enumeration bound")]
    NoC0Found,
    #[error("span rank differs between truncation {n0} and {n1}: {r0} vs {r1}")]
    UnstableRank { n0: usize, n1: usize, r0: usize, r1: usize },
    #[error("cusp condition system has no nonzero solution")]
    NoSolution,
    #[error("cusp condition solution space has dimension {0}, expected 1")]
    SolutionSpaceTooBig(usize),
    #[error("cannot normalize the zero series")]
    ZeroSeries,
    #[error("component-to-h congruence does not produce a bijection: {0}")]
    IndexMismatch(String),
    #[error("lattice sum changed under bound enlargement; truncation unstable")]
    TruncationUnstable,
    #[error("model {0} is not supported by the Lie-side formulas: {1}")]
    ModelNotSupported(String, String),
    #[error("unknown model name: {0}")]
    UnknownModel(String),
}
