use thiserror::Error;

use crate::perm::Perm;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("images do not form a bijection of 1..={0}")]
    NotABijection(usize),
    #[error("window mismatch: {0} vs {1}")]
    WindowMismatch(usize, usize),
    #[error("index {index} out of range for window {window}")]
    IndexOutOfRange { index: usize, window: usize },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("window {0} is not even")]
    WindowNotEven(usize),
    #[error("window {window} exceeds the enumeration cap {cap}")]
    WindowCapExceeded { window: usize, cap: usize },
    #[error("{0} is not a twisted involution")]
    NotTwistedInvolution(Perm),
    #[error("{0} is not a twisted identity")]
    NotTwistedIdentity(Perm),
    #[error("{0} is not a fixed-point-free involution")]
    NotFixedPointFree(Perm),
    #[error("{0} dominates the middle generator and lies outside the S_n-like subset")]
    NotInSigmaSubset(Perm),
    #[error("{lower} is not below {upper} in the Bruhat order")]
    NotComparable { lower: Perm, upper: Perm },
    #[error("{element} does not belong to the interval [{lower}, {upper}]")]
    NotInInterval {
        element: Perm,
        lower: Perm,
        upper: Perm,
    },
    #[error("generator {0} is not a right descent of {1}")]
    NotADescent(usize, Perm),
    #[error("matching has {got} entries but the poset has {expected} elements")]
    MatchingSizeMismatch { got: usize, expected: usize },
    #[error("matching is not involutive at index {0}")]
    MatchingNotInvolutive(usize),
    #[error("matching image {image} out of range for poset of size {size}")]
    MatchingImageOutOfRange { image: usize, size: usize },
    #[error("mapping does not satisfy the special partial matching axioms: {0}")]
    NotAnSpm(String),
    #[error("expected a lower interval of twisted identities with bottom e")]
    NotALowerIotaInterval,
    #[error("the matching is a conjugation matching; a non-conjugation one is required")]
    ConjugationSpmGiven,
    #[error("search exceeded the cap of {0} results")]
    SearchCapExceeded(usize),
    #[error("a statement the computation relies on failed: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
