//! Recursive-descent parser producing de Bruijn terms.

use super::lex::{tokenize, Tok, Token};
use super::{Entry, EntryKind, SourceFile};
use crate::error::{Category, Error, Loc, Result};
use crate::term::{Name, Term, TermRef};

/// Parses a whole theory file. Stops at the first error.
pub fn parse_file(text: &str, file: &str) -> Result<SourceFile> {
    let tokens = tokenize(text, file)?;
    let mut parser = Parser::new(tokens, file);
    let mut entries = Vec::new();
    while !parser.at_end() {
        entries.push(parser.entry()?);
    }
    Ok(SourceFile { file: file.to_string(), entries })
}

/// Parses a single closed term, e.g. from a `--term` argument. The whole
/// input must be consumed; no trailing `.` is expected.
pub fn parse_term(text: &str, label: &str) -> Result<TermRef> {
    let tokens = tokenize(text, label)?;
    let mut parser = Parser::new(tokens, label);
    let term = parser.term()?;
    if let Some(tok) = parser.peek_token() {
        return Err(parser.unexpected(tok.clone(), "end of input"));
    }
    Ok(term)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    file: &'a str,
    /// Innermost binder last. Anonymous arrow binders push a marker that
    /// cannot be referenced from source.
    binders: Vec<String>,
}

const ANON: &str = "\u{0}";

impl<'a> Parser<'a> {
    fn new(tokens: Vec<Token>, file: &'a str) -> Self {
        Parser { tokens, pos: 0, file, binders: Vec::new() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek_token(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + offset).map(|t| &t.tok)
    }

    fn end_loc(&self) -> Loc {
        self.tokens.last().map(|t| t.loc.clone()).unwrap_or_else(|| Loc::new(self.file, 1, 1))
    }

    fn bump(&mut self) -> Result<Token> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.eof("another token"))?;
        self.pos += 1;
        Ok(tok)
    }

    fn eof(&self, wanted: &str) -> Error {
        Error::new(Category::SyntaxError, format!("unexpected end of input, expected {wanted}"))
            .at(self.end_loc())
    }

    fn unexpected(&self, tok: Token, wanted: &str) -> Error {
        Error::new(
            Category::SyntaxError,
            format!("expected {wanted}, found {}", tok.tok.describe()),
        )
        .at(tok.loc)
    }

    fn expect(&mut self, wanted: &Tok, what: &str) -> Result<Token> {
        match self.peek() {
            Some(t) if t == wanted => self.bump(),
            Some(_) => {
                let tok = self.peek_token().unwrap().clone();
                Err(self.unexpected(tok, what))
            }
            None => Err(self.eof(what)),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(Name, Loc)> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let tok = self.bump()?;
                match tok.tok {
                    Tok::Ident(name) => Ok((name, tok.loc)),
                    _ => unreachable!(),
                }
            }
            Some(_) => {
                let tok = self.peek_token().unwrap().clone();
                Err(self.unexpected(tok, what))
            }
            None => Err(self.eof(what)),
        }
    }

    fn entry(&mut self) -> Result<Entry> {
        let start = self.peek_token().expect("entry() called at end").loc.clone();
        let kind = match self.peek() {
            Some(Tok::KwDef) => {
                self.bump()?;
                let (name, _) = self.ident("a name after `def`")?;
                match self.peek() {
                    Some(Tok::Colon) => {
                        self.bump()?;
                        let ty = self.term()?;
                        match self.peek() {
                            Some(Tok::ColonEq) => {
                                self.bump()?;
                                let body = self.term()?;
                                EntryKind::Definition { name, ty: Some(ty), body }
                            }
                            _ => EntryKind::DefinableDecl { name, ty },
                        }
                    }
                    Some(Tok::ColonEq) => {
                        self.bump()?;
                        let body = self.term()?;
                        EntryKind::Definition { name, ty: None, body }
                    }
                    _ => {
                        return Err(match self.peek_token() {
                            Some(t) => {
                                let t = t.clone();
                                self.unexpected(t, "`:` or `:=`")
                            }
                            None => self.eof("`:` or `:=`"),
                        })
                    }
                }
            }
            Some(Tok::LBracket) => {
                self.bump()?;
                let mut ctx = Vec::new();
                if self.peek() != Some(&Tok::RBracket) {
                    loop {
                        let (name, _) = self.ident("a pattern variable name")?;
                        self.expect(&Tok::Colon, "`:` in rule context")?;
                        let ty = self.term()?;
                        ctx.push((name, ty));
                        match self.peek() {
                            Some(Tok::Comma) => {
                                self.bump()?;
                            }
                            _ => break,
                        }
                    }
                }
                self.expect(&Tok::RBracket, "`]` closing the rule context")?;
                let lhs = self.term()?;
                self.expect(&Tok::RewriteArrow, "`-->`")?;
                let rhs = self.term()?;
                EntryKind::Rule { ctx, lhs, rhs }
            }
            Some(Tok::Eval) => {
                self.bump()?;
                let term = self.term()?;
                EntryKind::Eval { term }
            }
            Some(Tok::Check) => {
                self.bump()?;
                let term = self.term()?;
                self.expect(&Tok::Colon, "`:` in `#CHECK`")?;
                let ty = self.term()?;
                EntryKind::Check { term, ty }
            }
            Some(Tok::Ident(_)) => {
                let (name, _) = self.ident("a name")?;
                self.expect(&Tok::Colon, "`:` after the declared name")?;
                let ty = self.term()?;
                EntryKind::StaticDecl { name, ty }
            }
            Some(_) => {
                let tok = self.peek_token().unwrap().clone();
                return Err(self.unexpected(tok, "a declaration, rule or command"));
            }
            None => return Err(self.eof("an entry")),
        };
        self.expect(&Tok::Dot, "`.` ending the entry")?;
        Ok(Entry { loc: start, kind })
    }

    /// term ::= lamterm
    fn term(&mut self) -> Result<TermRef> {
        // `x => body` and `x : A => body` need lookahead past the optional
        // annotation; on failure we fall back to piterm.
        if let Some(Tok::Ident(_)) = self.peek() {
            match self.peek_at(1) {
                Some(Tok::FatArrow) => {
                    let (name, _) = self.ident("binder")?;
                    self.bump()?; // =>
                    self.binders.push(name.clone());
                    let body = self.term();
                    self.binders.pop();
                    return Ok(Term::lam(name, None, body?));
                }
                Some(Tok::Colon) => {
                    let snapshot = self.pos;
                    let (name, _) = self.ident("binder")?;
                    self.bump()?; // :
                    // Annotation is an appterm; if it is not followed by
                    // `=>`, this was not a lambda after all.
                    if let Ok(annot) = self.appterm() {
                        if self.peek() == Some(&Tok::FatArrow) {
                            self.bump()?;
                            self.binders.push(name.clone());
                            let body = self.term();
                            self.binders.pop();
                            return Ok(Term::lam(name, Some(annot), body?));
                        }
                    }
                    self.pos = snapshot;
                }
                _ => {}
            }
        }
        self.piterm()
    }

    /// piterm ::= "(" ident ":" term ")" "->" piterm | appterm ["->" piterm]
    fn piterm(&mut self) -> Result<TermRef> {
        if self.peek() == Some(&Tok::LParen) {
            if let (Some(Tok::Ident(_)), Some(Tok::Colon)) = (self.peek_at(1), self.peek_at(2)) {
                // Try the dependent product reading; `(x : A)` not followed
                // by `->` rolls back to the atom reading.
                let snapshot = self.pos;
                self.bump()?; // (
                let (name, _) = self.ident("binder")?;
                self.bump()?; // :
                if let Ok(dom) = self.term() {
                    if self.peek() == Some(&Tok::RParen)
                        && self.peek_at(1) == Some(&Tok::Arrow)
                    {
                        self.bump()?; // )
                        self.bump()?; // ->
                        self.binders.push(name.clone());
                        let cod = self.piterm();
                        self.binders.pop();
                        return Ok(Term::pi(name, dom, cod?));
                    }
                }
                self.pos = snapshot;
            }
        }
        let lhs = self.appterm()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump()?;
            // The codomain of a non-dependent arrow still sits under a
            // binder; the marker cannot be referenced from source.
            self.binders.push(ANON.to_string());
            let cod = self.piterm();
            self.binders.pop();
            return Ok(Term::pi("_", lhs, cod?));
        }
        Ok(lhs)
    }

    /// appterm ::= atom { atom }
    fn appterm(&mut self) -> Result<TermRef> {
        let mut head = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            head = Term::app(head, arg);
        }
        Ok(head)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::KwType) | Some(Tok::Ident(_)) | Some(Tok::LParen))
    }

    /// atom ::= "Type" | ident | "(" term ")"
    fn atom(&mut self) -> Result<TermRef> {
        match self.peek() {
            Some(Tok::KwType) => {
                self.bump()?;
                Ok(Term::sort_type())
            }
            Some(Tok::Ident(_)) => {
                let (name, _) = self.ident("a term")?;
                Ok(self.resolve(name))
            }
            Some(Tok::LParen) => {
                self.bump()?;
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(_) => {
                let tok = self.peek_token().unwrap().clone();
                Err(self.unexpected(tok, "a term"))
            }
            None => Err(self.eof("a term")),
        }
    }

    /// Innermost matching binder wins; everything else is a constant.
    fn resolve(&self, name: Name) -> TermRef {
        match self.binders.iter().rposition(|b| *b == name) {
            Some(pos) => Term::bvar(self.binders.len() - 1 - pos),
            None => Term::constant(name),
        }
    }
}
