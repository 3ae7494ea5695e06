use hilblat::LatticeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed workspace, unknown name, or bad argument.
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        use LatticeError::*;
        match self {
            CliError::Input(_) => 2,
            CliError::Lattice(e) => match e {
                DimensionMismatch { .. }
                | NotSymmetric { .. }
                | DependentBasis
                | ZeroScale
                | InvalidOrder(_)
                | InvalidMarking(_)
                | ForeignIsometry
                | InvalidArgument(_) => 2,
                NotIsometry(_)
                | NotUnimodular(_)
                | IsotropicReflection
                | NonIntegralReflection { .. }
                | NotNatural
                | ConePrecondition(_)
                | GroupTooLarge { .. }
                | DegenerateLattice
                | NotStable
                | UnknownNsType(_) => 3,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
