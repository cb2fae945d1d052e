use diagcat::decat::DecatError;
use diagcat::diagram::dsl::ParseError;
use diagcat::diagram::DiagramError;
use diagcat::evalmodel::EvalError;
use diagcat::normalform::NormalizeError;
use diagcat::presentation::{FrobeniusError, PresentationError};

/// A failure with a stable machine-readable code.
#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub usage: bool,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: "usage",
            message: message.into(),
            usage: true,
        }
    }

    pub fn domain(code: &'static str, message: impl ToString) -> CliError {
        CliError {
            code,
            message: message.to_string(),
            usage: false,
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.usage {
            2
        } else {
            1
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        let code = match e {
            ParseError::Syntax { .. } => "syntax",
            ParseError::UnknownGenerator { .. } => "unknown-generator",
            ParseError::Type { .. } => "type",
            ParseError::Scalar(_) => "scalar",
        };
        CliError::domain(code, e)
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> CliError {
        match e {
            PresentationError::UnknownPreset(_) => CliError::usage(e.to_string()),
            PresentationError::MissingOrder(_) => CliError::usage(e.to_string()),
            PresentationError::NoAlgebra(_) => CliError::usage(e.to_string()),
            PresentationError::Frobenius(f) => f.into(),
            _ => CliError::domain("presentation", e),
        }
    }
}

impl From<FrobeniusError> for CliError {
    fn from(e: FrobeniusError) -> CliError {
        CliError::domain("frobenius", e)
    }
}

impl From<NormalizeError> for CliError {
    fn from(e: NormalizeError) -> CliError {
        let code = match e {
            NormalizeError::Unsupported { .. } | NormalizeError::UnsupportedGenerator { .. } | NormalizeError::NoBasis(_) => {
                "unsupported"
            }
            _ => "normalize",
        };
        CliError::domain(code, e)
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> CliError {
        CliError::domain("eval", e)
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> CliError {
        CliError::domain("type", e)
    }
}

impl From<DecatError> for CliError {
    fn from(e: DecatError) -> CliError {
        match e {
            DecatError::NotIdempotent => CliError::domain("not-idempotent", e),
            DecatError::InvalidPartition(_) | DecatError::InvalidTableau(_) => CliError::domain("young", e),
            DecatError::Normalize(n) => n.into(),
            _ => CliError::domain("decat", e),
        }
    }
}
