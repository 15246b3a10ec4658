//! Tokenizer for the theory file format.

use crate::error::{Category, Error, Loc, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    KwDef,
    KwType,
    Colon,
    ColonEq,
    Arrow,        // ->
    FatArrow,     // =>
    RewriteArrow, // -->
    Dot,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Eval,  // #EVAL
    Check, // #CHECK
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::KwDef => "`def`".into(),
            Tok::KwType => "`Type`".into(),
            Tok::Colon => "`:`".into(),
            Tok::ColonEq => "`:=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::RewriteArrow => "`-->`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eval => "`#EVAL`".into(),
            Tok::Check => "`#CHECK`".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub loc: Loc,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    file: &'a str,
    line: u32,
    col: u32,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() && c.is_ascii() || c == '_' || c == '\''
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, file: &'a str) -> Self {
        Lexer { chars: text.chars().peekable(), file, line: 1, col: 1 }
    }

    fn loc(&self) -> Loc {
        Loc::new(self.file, self.line, self.col)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn err(&self, loc: Loc, msg: impl Into<String>) -> Error {
        Error::new(Category::LexicalError, msg).at(loc)
    }

    /// Skips a `(;` ... `;)` comment; nesting is supported. The leading
    /// `(;` has already been consumed.
    fn skip_comment(&mut self, open: Loc) -> Result<()> {
        let mut depth = 1usize;
        while depth > 0 {
            match self.bump() {
                None => return Err(self.err(open, "unterminated comment")),
                Some('(') if self.peek() == Some(';') => {
                    self.bump();
                    depth += 1;
                }
                Some(';') if self.peek() == Some(')') => {
                    self.bump();
                    depth -= 1;
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    fn ident(&mut self, first: char, loc: Loc) -> Result<Token> {
        let mut s = String::new();
        s.push(first);
        while let Some(c) = self.peek() {
            if is_ident_char(c) {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        // Pure numerals are legal names (unary arithmetic uses `0`); a
        // digit followed by other identifier characters is not.
        if s.starts_with(|c: char| c.is_ascii_digit()) && !s.chars().all(|c| c.is_ascii_digit()) {
            return Err(self.err(loc, format!("identifier may not start with a digit: `{s}`")));
        }
        let tok = match s.as_str() {
            "def" => Tok::KwDef,
            "Type" => Tok::KwType,
            _ => Tok::Ident(s),
        };
        Ok(Token { tok, loc })
    }

    fn next_token(&mut self) -> Result<Option<Token>> {
        loop {
            let loc = self.loc();
            let c = match self.bump() {
                None => return Ok(None),
                Some(c) => c,
            };
            let tok = match c {
                c if c.is_whitespace() => continue,
                '(' => {
                    if self.peek() == Some(';') {
                        self.bump();
                        self.skip_comment(loc)?;
                        continue;
                    }
                    Tok::LParen
                }
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                ':' => {
                    if self.peek() == Some('=') {
                        self.bump();
                        Tok::ColonEq
                    } else {
                        Tok::Colon
                    }
                }
                '=' => {
                    if self.peek() == Some('>') {
                        self.bump();
                        Tok::FatArrow
                    } else {
                        return Err(self.err(loc, "expected `=>`"));
                    }
                }
                '-' => match self.bump() {
                    Some('>') => Tok::Arrow,
                    Some('-') => {
                        if self.bump() == Some('>') {
                            Tok::RewriteArrow
                        } else {
                            return Err(self.err(loc, "expected `-->`"));
                        }
                    }
                    _ => return Err(self.err(loc, "expected `->` or `-->`")),
                },
                '#' => {
                    let mut word = String::new();
                    while let Some(c) = self.peek() {
                        if c.is_ascii_alphabetic() {
                            word.push(c);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    match word.as_str() {
                        "EVAL" => Tok::Eval,
                        "CHECK" => Tok::Check,
                        _ => return Err(self.err(loc, format!("unknown directive `#{word}`"))),
                    }
                }
                c if is_ident_char(c) => return self.ident(c, loc).map(Some),
                c => return Err(self.err(loc, format!("unexpected character `{c}`"))),
            };
            return Ok(Some(Token { tok, loc }));
        }
    }
}

/// Tokenizes a whole file, stopping at the first lexical error.
pub fn tokenize(text: &str, file: &str) -> Result<Vec<Token>> {
    let mut lexer = Lexer::new(text, file);
    let mut tokens = Vec::new();
    while let Some(tok) = lexer.next_token()? {
        tokens.push(tok);
    }
    Ok(tokens)
}
