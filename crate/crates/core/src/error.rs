use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the aggregation library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A top choice or restriction was requested on the empty set.
    EmptyContestSet,
    /// A candidate sequence is not a permutation of `0..m`.
    NotAPermutation,
    /// Candidate id outside `0..m`.
    CandidateOutOfRange { candidate: usize, m: usize },
    /// Two objects disagree on the number of candidates.
    DimensionMismatch { expected: usize, found: usize },
    /// More candidates than an operation supports.
    TooManyCandidates { m: usize, max: usize },
    /// A profile needs at least one voter group.
    EmptyProfile,
    /// Voter groups must have a positive multiplicity.
    ZeroCount,
    /// `k` must satisfy `2 <= k <= m`.
    InvalidK { k: usize, m: usize },
    /// A binomial table built for another `(m, k)` was supplied.
    WrongTable { m: usize, k: usize, table_m: usize, table_k: usize },
    /// The candidate is not a member of the contest set.
    CandidateNotInSet { candidate: usize },
    /// A pair operation received the same candidate twice.
    IdenticalPair { candidate: usize },
    /// Exhaustive enumeration would exceed its guard.
    EnumerationBudget { what: &'static str, size: usize, bound: usize },
    /// Digraph construction for `k >= 4` is NP-hard and must be requested explicitly.
    ExponentialDigraph { k: usize },
    /// A component of the SCC order is too large for the subset DP.
    ComponentTooLarge { size: usize, max: usize },
    /// A component order that does not partition the candidates.
    InvalidOrder,
    /// Invalid Mallows dispersion.
    InvalidDispersion,
    /// Position weights must have length `m`, start with 1 and be non-negative.
    InvalidWeights,
    /// A forced-in and a forced-out constraint overlap, or exclude the pair itself.
    ConflictingConstraints,
    /// 64-bit disagreement counts would overflow.
    Overflow,
    /// The caller's interrupt hook asked the solver to stop.
    Interrupted,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyContestSet => write!(f, "empty contest set"),
            Error::NotAPermutation => write!(f, "ranking is not a permutation of the candidates"),
            Error::CandidateOutOfRange { candidate, m } => {
                write!(f, "candidate {candidate} out of range for {m} candidates")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected} candidates, found {found}")
            }
            Error::TooManyCandidates { m, max } => {
                write!(f, "{m} candidates exceeds the limit of {max}")
            }
            Error::EmptyProfile => write!(f, "profile has no voters"),
            Error::ZeroCount => write!(f, "voter group with zero multiplicity"),
            Error::InvalidK { k, m } => write!(f, "k = {k} outside 2..={m}"),
            Error::WrongTable { m, k, table_m, table_k } => write!(
                f,
                "binomial table built for m = {table_m}, k = {table_k} but used with m = {m}, k = {k}"
            ),
            Error::CandidateNotInSet { candidate } => {
                write!(f, "candidate {candidate} is not in the contest set")
            }
            Error::IdenticalPair { candidate } => {
                write!(f, "pair operation needs two distinct candidates, got {candidate} twice")
            }
            Error::EnumerationBudget { what, size, bound } => {
                write!(f, "{what}: size {size} exceeds the enumeration bound {bound}")
            }
            Error::ExponentialDigraph { k } => write!(
                f,
                "building the {k}-wise majority digraph is NP-hard for k >= 4; exponential construction must be forced"
            ),
            Error::ComponentTooLarge { size, max } => {
                write!(f, "component of {size} candidates exceeds the DP limit of {max}")
            }
            Error::InvalidOrder => write!(f, "component order does not partition the candidates"),
            Error::InvalidDispersion => write!(f, "dispersion must lie in (0, 1]"),
            Error::InvalidWeights => {
                write!(f, "position weights must have length m, w1 = 1 and be non-negative")
            }
            Error::ConflictingConstraints => write!(f, "conflicting inclusion/exclusion constraints"),
            Error::Overflow => write!(f, "disagreement count overflows 64 bits"),
            Error::Interrupted => write!(f, "interrupted"),
        }
    }
}

impl core::error::Error for Error {}
