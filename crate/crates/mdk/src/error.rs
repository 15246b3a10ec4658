//! Errors with stable categories and source locations.
//!
//! Every report renders as `file:line:col: CATEGORY: message`; the category
//! tokens are part of the tool's scripting surface and never change.

use std::fmt;

/// A position in a source file, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loc {
    pub file: String,
    pub line: u32,
    pub col: u32,
}

impl Loc {
    pub fn new(file: impl Into<String>, line: u32, col: u32) -> Self {
        Loc { file: file.into(), line, col }
    }
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.col)
    }
}

/// Stable error categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    LexicalError,
    SyntaxError,
    UnboundName,
    NotAFunction,
    CannotInfer,
    TypeMismatch,
    FuelExhausted,
    RedeclaredName,
    RewriteOnStaticConstant,
    NonLinearPattern,
    UnboundPatternVariable,
    IllFormedPattern,
    UnknownName,
    UnionElaborationFailed,
}

impl Category {
    pub fn token(self) -> &'static str {
        match self {
            Category::LexicalError => "LexicalError",
            Category::SyntaxError => "SyntaxError",
            Category::UnboundName => "UnboundName",
            Category::NotAFunction => "NotAFunction",
            Category::CannotInfer => "CannotInfer",
            Category::TypeMismatch => "TypeMismatch",
            Category::FuelExhausted => "FuelExhausted",
            Category::RedeclaredName => "RedeclaredName",
            Category::RewriteOnStaticConstant => "RewriteOnStaticConstant",
            Category::NonLinearPattern => "NonLinearPattern",
            Category::UnboundPatternVariable => "UnboundPatternVariable",
            Category::IllFormedPattern => "IllFormedPattern",
            Category::UnknownName => "UnknownName",
            Category::UnionElaborationFailed => "UnionElaborationFailed",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// An error report: category, message, optional location, and for fuel
/// exhaustion the number of reduction steps taken before giving up.
#[derive(Clone, Debug)]
pub struct Error {
    pub category: Category,
    pub message: String,
    pub loc: Option<Loc>,
    pub steps: Option<u64>,
}

impl Error {
    pub fn new(category: Category, message: impl Into<String>) -> Self {
        Error { category, message: message.into(), loc: None, steps: None }
    }

    pub fn at(mut self, loc: Loc) -> Self {
        self.loc = Some(loc);
        self
    }

    /// Attaches a location only if the error does not already carry one,
    /// so the innermost (most precise) location wins.
    pub fn or_at(mut self, loc: &Loc) -> Self {
        if self.loc.is_none() {
            self.loc = Some(loc.clone());
        }
        self
    }

    pub fn fuel_exhausted(steps: u64) -> Self {
        Error {
            category: Category::FuelExhausted,
            message: format!("no normal form within the step budget ({steps} steps taken)"),
            loc: None,
            steps: Some(steps),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.loc {
            Some(loc) => write!(f, "{loc}: {}: {}", self.category, self.message),
            None => write!(f, "{}: {}", self.category, self.message),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
