use std::fmt;

use phkit::{Error, RealSquare};

/// Ordered `key: value` lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.lines.push((key.to_string(), value.to_string()));
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// A square decomposition without blanks, e.g. `(3*t^2+3)^2`.
pub fn compact(s: &RealSquare) -> String {
    s.to_string().chars().filter(|c| !c.is_whitespace()).collect()
}

/// Stable short code for each library error.
pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::Scalar(_) => "scalar",
        Error::ZeroPolynomial => "zero-polynomial",
        Error::UnknownVariable(_) => "unknown-variable",
        Error::NotUnivariate(_) => "not-univariate",
        Error::NotGenericallySquare => "not-generically-square",
        Error::UnknownName(_) => "unknown-name",
        Error::RankDeficient => "rank-deficient",
        Error::PoleOnCurve => "pole-on-curve",
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::NotPositiveDefinite => "not-positive-definite",
        Error::NotSymmetric => "not-symmetric",
        Error::DependentSpan => "dependent-span",
        Error::NonzeroResidue(_) => "nonzero-residue",
        Error::HigherOrderPole(_) => "higher-order-pole",
        Error::NoSuchPole(_) => "no-such-pole",
        Error::SingularSystem => "singular-system",
        Error::DuplicatePole => "duplicate-pole",
        Error::InvalidMoebius(_) => "invalid-moebius",
        Error::PoleCollapse => "pole-collapse",
        Error::NotConformal => "not-conformal",
        Error::Syntax { .. } => "syntax",
        Error::UndeclaredVariable(_) => "undeclared-variable",
        Error::ImaginaryInRealContext => "imaginary-in-real-context",
        Error::Format(_) => "format",
        Error::EmptyPlot => "empty-plot",
        Error::InvalidPlot(_) => "invalid-plot",
    }
}

/// Why a command stopped without a verdict.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit 2.
    Input { code: &'static str, message: String },
    /// Anything else: exit 1.
    Internal(anyhow::Error),
}

impl Failure {
    pub fn input(code: &'static str, message: impl Into<String>) -> Self {
        Failure::Input { code, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input { .. } => 2,
            Failure::Internal(_) => 1,
        }
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        match self {
            Failure::Input { code, message } => r.push("error", code).push("message", message),
            Failure::Internal(e) => r.push("error", "internal").push("message", format!("{e:#}")),
        };
        r
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input { code: error_code(&e), message: e.to_string() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

pub type Outcome = Result<Report, Failure>;
