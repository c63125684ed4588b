/// One validation or execution problem, located by a JSON-pointer-like path
/// into the request document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: String,
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: &str, path: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            code: code.into(),
            path: path.into(),
            message: message.into(),
        }
    }

    /// The `code|path|message` line format used on stderr.
    pub fn line(&self) -> String {
        format!("{}|{}|{}", self.code, self.path, self.message)
    }
}

/// Map a domain error from the core calculus onto a stable diagnostic code.
pub fn domain_diagnostic(err: &eqtorsion::Error) -> Diagnostic {
    use eqtorsion::Error::*;
    let code = match err {
        DimensionMismatch { .. } => "dimension-mismatch",
        GroupMismatch { .. } => "group-mismatch",
        NonPrimitiveVector => "non-primitive-vector",
        MultivariateInput { .. } => "multivariate-input",
        VarsMismatch { .. } => "vars-mismatch",
        OrderMismatch { .. } => "order-mismatch",
        InvalidZetaArgument { .. } => "invalid-zeta-argument",
        PieceOutOfRange { .. } => "piece-out-of-range",
        TooManyPieces { .. } => "too-many-pieces",
        GlueIncompatible(_) => "glue-incompatibility",
        InsufficientTruncation { .. } => "insufficient-truncation",
        InconsistentSeries(_) | ZeroWeight(_) => "inconsistent-series",
        InvalidConstruction(_) => "invalid-construction",
    };
    Diagnostic::new(code, "", err.to_string())
}
