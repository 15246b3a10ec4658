//! Surface syntax: lexer, parser and printer for `.mdk` theory files.
//!
//! The grammar, in EBNF:
//!
//! ```text
//! file      ::= { entry }
//! entry     ::= ident ":" term "."
//!             | "def" ident ":" term "."
//!             | "def" ident [":" term] ":=" term "."
//!             | "[" [binding {"," binding}] "]" term "-->" term "."
//!             | "#EVAL" term "."
//!             | "#CHECK" term ":" term "."
//! binding   ::= ident ":" term
//! term      ::= lamterm
//! lamterm   ::= ident [":" appterm] "=>" lamterm | piterm
//! piterm    ::= "(" ident ":" term ")" "->" piterm | appterm ["->" piterm]
//! appterm   ::= atom { atom }
//! atom      ::= "Type" | ident | "(" term ")"
//! ```
//!
//! Comments are `(;` ... `;)` and nest. Identifiers are made of letters,
//! digits, `_` and `'`; a name may not mix a leading digit with other
//! characters, but pure numerals such as `0` are ordinary identifiers.
//! Application binds left; `->` and `=>` associate right; `(x : A) -> B`
//! binds `x` in `B` only.
//!
//! The parser resolves binders to de Bruijn indices. Identifiers that are
//! not lexically bound are kept as constants for the elaborator to
//! validate, which is also how rewrite-rule pattern variables travel from
//! the parser to the elaborator.

mod lex;
mod parse;
mod print;

pub use parse::{parse_file, parse_term};
pub use print::{print_entry, print_file, print_term};

use crate::error::Loc;
use crate::term::{Name, TermRef};

/// A parsed theory file; entry order is exactly the written order.
#[derive(Clone, Debug)]
pub struct SourceFile {
    /// Label used in error reports, normally the path.
    pub file: String,
    pub entries: Vec<Entry>,
}

/// One top-level entry with its source location.
#[derive(Clone, Debug)]
pub struct Entry {
    pub loc: Loc,
    pub kind: EntryKind,
}

#[derive(Clone, Debug)]
pub enum EntryKind {
    /// `c : T.` — a constant that may not head rewrite rules.
    StaticDecl { name: Name, ty: TermRef },
    /// `def c : T.` — a constant that may head rewrite rules.
    DefinableDecl { name: Name, ty: TermRef },
    /// `def c [: T] := t.` — a definition, unfolded during reduction.
    Definition { name: Name, ty: Option<TermRef>, body: TermRef },
    /// `[x : A, ...] lhs --> rhs.` — a rewrite rule with its typed
    /// pattern-variable context. Pattern variables occur as constants in
    /// `lhs`/`rhs` until elaboration.
    Rule { ctx: Vec<(Name, TermRef)>, lhs: TermRef, rhs: TermRef },
    /// `#EVAL t.` — normalize and report.
    Eval { term: TermRef },
    /// `#CHECK t : T.` — check and report.
    Check { term: TermRef, ty: TermRef },
}

impl EntryKind {
    /// The declared name, when the entry introduces one.
    pub fn name(&self) -> Option<&Name> {
        match self {
            EntryKind::StaticDecl { name, .. }
            | EntryKind::DefinableDecl { name, .. }
            | EntryKind::Definition { name, .. } => Some(name),
            _ => None,
        }
    }
}
