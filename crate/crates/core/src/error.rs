use thiserror::Error;

/// Everything that can go wrong while building or computing with a GBS group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: edge `{edge}` has a zero label")]
    LabelZero { line: usize, edge: String },
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: duplicate name `{name}`")]
    DuplicateName { line: usize, name: String },
    #[error("graph is disconnected: vertex `{unreachable}` is not reachable from the base")]
    Disconnected { unreachable: String },
    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("token {position}: unknown generator `{token}`")]
    UnknownGenerator { position: usize, token: String },
    #[error("token {position}: malformed token `{token}`")]
    BadToken { position: usize, token: String },
    #[error("token {position}: `{edge}` is a spanning-tree edge and is not a generator")]
    TreeEdgeLetterUsed { position: usize, edge: String },
    #[error("token {position}: `{token}` does not continue the path (current vertex `{at}`)")]
    InvalidPath { position: usize, token: String, at: String },

    #[error("exponent exceeds the cap of {max_digits} decimal digits")]
    ExponentOverflow { max_digits: usize },
    #[error("conjugator ball of {size} words exceeds the enumeration cap of {cap}")]
    RadiusTooLarge { size: String, cap: usize },

    #[error("missing image for generator `{generator}`")]
    MissingImage { generator: String },
    #[error("relator `{relator}` is not mapped to the identity")]
    RelatorNotPreserved { relator: String },
    #[error("inverse check failed on generator `{generator}`")]
    InverseCheckFailed { generator: String },
    #[error("line {line}: automorphism file: {message}")]
    AutomorphismSyntax { line: usize, message: String },
    #[error("automorphism does not preserve the modular homomorphism")]
    DeltaNotRespected,

    #[error("free quotient needs one vertex with every loop labeled (1, 1): {reason}")]
    NotUnimodularProduct { reason: String },
    #[error("automorphism does not preserve the central kernel: image of `{generator}` is `{image}`")]
    KernelNotPreserved { generator: String, image: String },
}

/// Coarse grouping used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Automorphism,
    Precondition,
    Cap,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            Syntax { .. }
            | LabelZero { .. }
            | UnknownVertex { .. }
            | DuplicateName { .. }
            | Disconnected { .. }
            | EmptyGraph
            | UnknownGenerator { .. }
            | BadToken { .. }
            | TreeEdgeLetterUsed { .. }
            | InvalidPath { .. } => ErrorClass::Input,
            MissingImage { .. }
            | RelatorNotPreserved { .. }
            | InverseCheckFailed { .. }
            | AutomorphismSyntax { .. } => ErrorClass::Automorphism,
            DeltaNotRespected | NotUnimodularProduct { .. } | KernelNotPreserved { .. } => {
                ErrorClass::Precondition
            }
            ExponentOverflow { .. } | RadiusTooLarge { .. } => ErrorClass::Cap,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
