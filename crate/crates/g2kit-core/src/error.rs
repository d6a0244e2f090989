//! Error type shared by the whole crate.

use thiserror::Error;

/// Everything that can go wrong when constructing or verifying algebra data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("doubling parameters must be nonzero")]
    ZeroParameter,
    #[error("values belong to different algebra contexts")]
    ContextMismatch,
    #[error("division by a norm-zero element")]
    DivisionByZero,
    #[error("closure is not a composition subalgebra (degenerate norm or bad dimension {0})")]
    NotComposition(usize),
    #[error("element is not orthogonal to the subalgebra")]
    NotOrthogonal,
    #[error("element has zero norm")]
    NormZero,
    #[error("element must have norm 1")]
    NormNotOne,
    #[error("doubling would exceed dimension 8")]
    DimensionOverflow,
    #[error("element does not lie in the host subalgebra")]
    NotInHost,
    #[error("matrix is not an automorphism: fails on basis pair ({i}, {j})")]
    NotAutomorphism { i: usize, j: usize },
    #[error("matrix does not satisfy the Leibniz rule")]
    NotDerivation,
    #[error("matrix must be {expected}x{expected}, got {rows}x{cols}")]
    BadShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("eigenvalue solver failed to converge")]
    SolverFailure,
    #[error("certification residual {residual:e} exceeds tolerance")]
    CertificationFailure { residual: f64 },
    #[error("hermitian form is degenerate on the chosen basis")]
    DegenerateForm,
    #[error("basis vectors are not positioned for doubling")]
    BadBasisPosition,
    #[error("vector does not lie in the orthogonal complement of L")]
    NotInComplement,
    #[error("automorphism does not fix the quadratic subalgebra pointwise")]
    NotFixingL,
    #[error("matrix is not special unitary for the hermitian form")]
    NotSpecialUnitary,
    #[error("no complement vector of matching norm is representable over the exact backend")]
    NormNotRepresented,
    #[error("map is not a subalgebra isomorphism")]
    InvalidIso,
    #[error("subalgebras are not isomorphic over this backend")]
    NotIsomorphic,
    #[error("spectrum lies in the ambiguity band around a classification boundary")]
    AmbiguousSpectrum,
    #[error("spectrum multiset is inconsistent with a special unitary matrix")]
    SpectrumInconsistent,
    #[error("commutation and membership tests disagree on trial {trial}")]
    Disagreement { trial: usize },
    #[error("intertwiner construction requires the identity Gram matrix")]
    NonUnitGram,
}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
