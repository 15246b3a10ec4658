//! A type checker for the lambda-Pi-calculus modulo rewriting.
//!
//! A theory is a signature: an ordered sequence of constant declarations,
//! definitions and rewrite rules. The checker validates dependently-typed
//! terms against such a signature, identifying types up to beta-reduction
//! plus the signature's rules. The same kernel therefore checks proofs of
//! any theory that can be presented by rewrite rules: the theory is an
//! input, not a property of the checker.
//!
//! The crate is organized around that pipeline:
//!
//! * [`term`] — the term language, de Bruijn binding, substitution;
//! * [`syntax`] — the `.mdk` file format, parser and printer;
//! * [`rewrite`] — pattern matching and normalization (weak-head and strong);
//! * [`typing`] — bidirectional checking and signature elaboration;
//! * [`theories`] — the bundled example theories;
//! * [`analysis`] — dependency extraction and theory comparison.
//!
//! The `book/` directory of the repository walks through the concepts; its
//! code snippets are compiled as doc-tests from [`guide`].

pub mod error;
pub mod pattern;
pub mod rewrite;
pub mod sig;
pub mod syntax;
pub mod term;
pub mod typing;

pub use error::{Category, Error, Loc, Result};
pub use rewrite::{head_rewrite, snf, whnf, Limits, Trace};
pub use sig::{SigEntry, Signature};
pub use syntax::{parse_file, parse_term, print_term, SourceFile};
pub use term::{Context, Name, Term, TermRef};
pub use typing::{check, conv, elaborate, infer, Elaboration, Notice};

/// Default reduction step budget for every operation that normalizes.
pub const DEFAULT_FUEL: u64 = 100_000;
