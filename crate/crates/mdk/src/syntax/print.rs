//! Pretty-printer. The output of [`print_term`] reparses to an
//! alpha-equal term; binder names are freshened so they never capture a
//! constant or an enclosing binder that is still referenced.

use std::collections::BTreeSet;

use super::{Entry, EntryKind, SourceFile};
use crate::term::{Context, Term, TermRef};

/// Precedence levels, loosest first: lambda, arrow/product, application,
/// atom. An operand is parenthesized when its own level is below the level
/// its position requires.
const LVL_TERM: u8 = 0;
const LVL_ARROW: u8 = 1;
const LVL_APP: u8 = 2;
const LVL_ATOM: u8 = 3;

/// Renders `t` in the scope described by `ctx` (used for the names of free
/// de Bruijn variables).
pub fn print_term(t: &TermRef, ctx: &Context) -> String {
    let mut taken: BTreeSet<String> = ctx.names().map(str::to_owned).collect();
    let mut consts = BTreeSet::new();
    t.constants(&mut consts);
    taken.extend(consts);
    let mut printer = Printer {
        stack: ctx.names().map(str::to_owned).collect(),
        taken,
    };
    let mut out = String::new();
    printer.term(&mut out, t, LVL_TERM);
    out
}

/// Renders a whole file; `parse_file(print_file(f))` is entry-wise
/// alpha-equal to `f`.
pub fn print_file(file: &SourceFile) -> String {
    let mut out = String::new();
    for entry in &file.entries {
        out.push_str(&print_entry(entry));
        out.push('\n');
    }
    out
}

pub fn print_entry(entry: &Entry) -> String {
    let empty = Context::new();
    let p = |t: &TermRef| print_term(t, &empty);
    match &entry.kind {
        EntryKind::StaticDecl { name, ty } => format!("{name} : {}.", p(ty)),
        EntryKind::DefinableDecl { name, ty } => format!("def {name} : {}.", p(ty)),
        EntryKind::Definition { name, ty: Some(ty), body } => {
            format!("def {name} : {} := {}.", p(ty), p(body))
        }
        EntryKind::Definition { name, ty: None, body } => {
            format!("def {name} := {}.", p(body))
        }
        EntryKind::Rule { ctx, lhs, rhs } => {
            let bindings = ctx
                .iter()
                .map(|(n, t)| format!("{n} : {}", p(t)))
                .collect::<Vec<_>>()
                .join(", ");
            format!("[{bindings}] {} --> {}.", p(lhs), p(rhs))
        }
        EntryKind::Eval { term } => format!("#EVAL {}.", p(term)),
        EntryKind::Check { term, ty } => format!("#CHECK {} : {}.", p(term), p(ty)),
    }
}

struct Printer {
    /// Display names of enclosing binders, outermost first.
    stack: Vec<String>,
    /// Names that a fresh binder must avoid: every constant in the printed
    /// term and every context name. Enclosing binders are checked against
    /// the stack itself.
    taken: BTreeSet<String>,
}

impl Printer {
    fn fresh(&self, base: &str) -> String {
        let base = if base.is_empty() || base == "_" || base.contains('\u{0}') {
            "x"
        } else {
            base
        };
        if !self.taken.contains(base) && !self.stack.iter().any(|n| n == base) {
            return base.to_string();
        }
        for k in 1u32.. {
            let candidate = format!("{base}{k}");
            if !self.taken.contains(&candidate) && !self.stack.iter().any(|n| *n == candidate) {
                return candidate;
            }
        }
        unreachable!()
    }

    fn bvar_name(&self, index: usize) -> String {
        match self.stack.len().checked_sub(index + 1).and_then(|i| self.stack.get(i)) {
            Some(name) => name.clone(),
            // Out of scope: diagnostics rendering only; does not reparse.
            None => format!("?{index}"),
        }
    }

    fn term(&mut self, out: &mut String, t: &TermRef, min: u8) {
        let level = match &**t {
            Term::Type | Term::Kind | Term::Const(_) | Term::BVar(_) => LVL_ATOM,
            Term::App(..) => LVL_APP,
            Term::Pi(..) => LVL_ARROW,
            Term::Lam(..) => LVL_TERM,
        };
        let parens = level < min;
        if parens {
            out.push('(');
        }
        match &**t {
            Term::Type => out.push_str("Type"),
            Term::Kind => out.push_str("Kind"),
            Term::Const(c) => out.push_str(c),
            Term::BVar(i) => out.push_str(&self.bvar_name(*i)),
            Term::App(f, a) => {
                self.term(out, f, LVL_APP);
                out.push(' ');
                self.term(out, a, LVL_ATOM);
            }
            Term::Lam(name, annot, body) => {
                let fresh = self.fresh(name);
                out.push_str(&fresh);
                if let Some(annot) = annot {
                    out.push_str(" : ");
                    self.term(out, annot, LVL_APP);
                }
                out.push_str(" => ");
                self.stack.push(fresh);
                self.term(out, body, LVL_TERM);
                self.stack.pop();
            }
            Term::Pi(name, dom, cod) => {
                if cod.occurs(0) {
                    let fresh = self.fresh(name);
                    out.push('(');
                    out.push_str(&fresh);
                    out.push_str(" : ");
                    self.term(out, dom, LVL_TERM);
                    out.push_str(") -> ");
                    self.stack.push(fresh);
                    self.term(out, cod, LVL_ARROW);
                    self.stack.pop();
                } else {
                    self.term(out, dom, LVL_APP);
                    out.push_str(" -> ");
                    // The binder is unused but still occupies an index.
                    self.stack.push(ANON_SLOT.to_string());
                    self.term(out, cod, LVL_ARROW);
                    self.stack.pop();
                }
            }
        }
        if parens {
            out.push(')');
        }
    }
}

/// Placeholder for the unused arrow binder; unreferencable from source and
/// never printed (the codomain does not mention index 0).
const ANON_SLOT: &str = "\u{0}";
