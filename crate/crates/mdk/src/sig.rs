//! Elaborated theories: ordered constant declarations, definitions and
//! rewrite rules.

use std::collections::HashMap;

use crate::error::Loc;
use crate::pattern::RewriteRule;
use crate::syntax::Entry;
use crate::term::{Name, TermRef};

/// What a signature knows about one constant.
#[derive(Clone, Debug)]
pub enum SigEntry {
    /// Declared with `c : T.`; may never head a rewrite rule.
    Static { ty: TermRef },
    /// Declared with `def c : T.`; rewrite rules may attach to it.
    Definable { ty: TermRef },
    /// Declared with `def c := t.`; behaves as the single rewrite rule
    /// `c --> t`, unfolded by the engine like any other rule.
    Definition { ty: TermRef, body: TermRef },
}

impl SigEntry {
    pub fn ty(&self) -> &TermRef {
        match self {
            SigEntry::Static { ty }
            | SigEntry::Definable { ty }
            | SigEntry::Definition { ty, .. } => ty,
        }
    }

    pub fn is_static(&self) -> bool {
        matches!(self, SigEntry::Static { .. })
    }
}

#[derive(Clone, Debug)]
struct Decl {
    name: Name,
    entry: SigEntry,
    loc: Loc,
}

/// An elaborated theory. Order-sensitive: every entry is well-typed
/// relative to the prefix that precedes it. Immutable once elaborated, so
/// any number of concurrent checks may share it.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    decls: Vec<Decl>,
    index: HashMap<Name, usize>,
    rules: HashMap<Name, Vec<RewriteRule>>,
    /// The source entries this signature was elaborated from, in order.
    /// Kept for re-elaboration (dependency trimming, theory unions).
    source: Vec<Entry>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn get(&self, name: &str) -> Option<&SigEntry> {
        self.index.get(name).map(|&i| &self.decls[i].entry)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Position of the declaration in the signature, if any.
    pub fn ordinal(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn loc(&self, name: &str) -> Option<&Loc> {
        self.index.get(name).map(|&i| &self.decls[i].loc)
    }

    /// Rules attached to a definable constant, in declaration order.
    pub fn rules(&self, name: &str) -> &[RewriteRule] {
        self.rules.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Declared names in declaration order.
    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.decls.iter().map(|d| &d.name)
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn source_entries(&self) -> &[Entry] {
        &self.source
    }

    pub(crate) fn insert(&mut self, name: Name, entry: SigEntry, loc: Loc) {
        debug_assert!(!self.index.contains_key(&name), "redeclaration of {name}");
        self.index.insert(name.clone(), self.decls.len());
        self.decls.push(Decl { name, entry, loc });
    }

    pub(crate) fn attach_rule(&mut self, rule: RewriteRule) {
        self.rules.entry(rule.head.clone()).or_default().push(rule);
    }

    pub(crate) fn record_source(&mut self, entry: Entry) {
        self.source.push(entry);
    }
}
