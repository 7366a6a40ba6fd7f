use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    BadRational(String),
    UnknownLine(String),
    InvalidUniverse(String),
    InvalidSegment(String),
    NotALadder,
    NotLeftAligned,
    NotRightAligned,
    /// Input violates a documented precondition.
    Precondition(String),
    SizeMismatch { expected: u64, found: u64 },
    MissingPole(String),
    OddDegree(u64),
    /// The closed-form criteria do not settle this instance.
    Undecided(String),
    NotAnOrbit,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadRational(s) => write!(f, "malformed rational `{s}`"),
            Error::UnknownLine(s) => write!(f, "unknown cuspidal line `{s}`"),
            Error::InvalidUniverse(s) => write!(f, "invalid universe: {s}"),
            Error::InvalidSegment(s) => write!(f, "invalid segment: {s}"),
            Error::NotALadder => write!(f, "not a ladder"),
            Error::NotLeftAligned => write!(f, "ladder is not left aligned"),
            Error::NotRightAligned => write!(f, "ladder is not right aligned"),
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected degree {expected}, found {found}")
            }
            Error::MissingPole(s) => write!(f, "self-dual line `{s}` has no pole type"),
            Error::OddDegree(n) => write!(f, "total degree {n} is odd"),
            Error::Undecided(s) => write!(f, "undecided: {s}"),
            Error::NotAnOrbit => write!(f, "(r,s) is not an orbit for the given (k,p,q)"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
