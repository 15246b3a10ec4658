//! Core term language: sorts, constants, de Bruijn variables, application,
//! abstraction and dependent products.
//!
//! Terms are immutable; every operation returns a fresh term. Sharing is
//! through [`TermRef`] (an `Arc`), so terms can cross threads freely.

use std::fmt;
use std::sync::Arc;

/// Global constant names. One file is one theory, so a plain string suffices.
pub type Name = String;

/// Shared, immutable term.
pub type TermRef = Arc<Term>;

/// A term of the lambda-Pi-calculus.
///
/// Bound variables are de Bruijn indices (0 = innermost binder). Binder
/// display names are carried for printing only and never affect equality
/// or matching.
#[derive(Clone, Debug)]
pub enum Term {
    /// The sort of types.
    Type,
    /// The sort of `Type`. Produced only by the checker; not writable.
    Kind,
    /// A signature constant.
    Const(Name),
    /// A bound variable, de Bruijn index.
    BVar(usize),
    /// Application.
    App(TermRef, TermRef),
    /// Abstraction; the annotation is optional in the surface language.
    Lam(String, Option<TermRef>, TermRef),
    /// Dependent product. The domain is always present.
    Pi(String, TermRef, TermRef),
}

impl Term {
    pub fn sort_type() -> TermRef {
        Arc::new(Term::Type)
    }

    pub fn sort_kind() -> TermRef {
        Arc::new(Term::Kind)
    }

    pub fn constant(name: impl Into<Name>) -> TermRef {
        Arc::new(Term::Const(name.into()))
    }

    pub fn bvar(index: usize) -> TermRef {
        Arc::new(Term::BVar(index))
    }

    pub fn app(head: TermRef, arg: TermRef) -> TermRef {
        Arc::new(Term::App(head, arg))
    }

    /// `head a1 .. an`, left-associated.
    pub fn apps(head: TermRef, args: impl IntoIterator<Item = TermRef>) -> TermRef {
        args.into_iter().fold(head, Term::app)
    }

    pub fn lam(name: impl Into<String>, annot: Option<TermRef>, body: TermRef) -> TermRef {
        Arc::new(Term::Lam(name.into(), annot, body))
    }

    pub fn pi(name: impl Into<String>, domain: TermRef, codomain: TermRef) -> TermRef {
        Arc::new(Term::Pi(name.into(), domain, codomain))
    }

    /// Non-dependent function space `a -> b`. The codomain is shifted
    /// under the anonymous binder it does not use.
    pub fn arrow(domain: TermRef, codomain: TermRef) -> TermRef {
        Term::pi("_", domain, shift(&codomain, 1, 0))
    }

    /// True if the bound variable `index` occurs free in the term.
    pub fn occurs(&self, index: usize) -> bool {
        match self {
            Term::Type | Term::Kind | Term::Const(_) => false,
            Term::BVar(i) => *i == index,
            Term::App(f, a) => f.occurs(index) || a.occurs(index),
            Term::Lam(_, annot, body) => {
                annot.as_ref().is_some_and(|t| t.occurs(index)) || body.occurs(index + 1)
            }
            Term::Pi(_, dom, cod) => dom.occurs(index) || cod.occurs(index + 1),
        }
    }

    /// Collects every constant name occurring in the term.
    pub fn constants(&self, acc: &mut std::collections::BTreeSet<Name>) {
        match self {
            Term::Type | Term::Kind | Term::BVar(_) => {}
            Term::Const(c) => {
                acc.insert(c.clone());
            }
            Term::App(f, a) => {
                f.constants(acc);
                a.constants(acc);
            }
            Term::Lam(_, annot, body) => {
                if let Some(t) = annot {
                    t.constants(acc);
                }
                body.constants(acc);
            }
            Term::Pi(_, dom, cod) => {
                dom.constants(acc);
                cod.constants(acc);
            }
        }
    }

    /// Alpha-equality: structural identity up to binder display names.
    /// Annotation presence must agree; present annotations are compared.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        match (self, other) {
            (Term::Type, Term::Type) | (Term::Kind, Term::Kind) => true,
            (Term::Const(a), Term::Const(b)) => a == b,
            (Term::BVar(i), Term::BVar(j)) => i == j,
            (Term::App(f, a), Term::App(g, b)) => f.alpha_eq(g) && a.alpha_eq(b),
            (Term::Lam(_, an1, b1), Term::Lam(_, an2, b2)) => {
                let annots = match (an1, an2) {
                    (None, None) => true,
                    (Some(t), Some(u)) => t.alpha_eq(u),
                    _ => false,
                };
                annots && b1.alpha_eq(b2)
            }
            (Term::Pi(_, d1, c1), Term::Pi(_, d2, c2)) => d1.alpha_eq(d2) && c1.alpha_eq(c2),
            _ => false,
        }
    }
}

/// Equality on terms is alpha-equality. Display names do not participate.
impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for Term {}

/// Splits an application spine: `f a b c` becomes `(f, [a, b, c])`.
pub fn spine(t: &TermRef) -> (TermRef, Vec<TermRef>) {
    let mut args = Vec::new();
    let mut head = t.clone();
    while let Term::App(f, a) = &*head {
        args.push(a.clone());
        let f = f.clone();
        head = f;
    }
    args.reverse();
    (head, args)
}

/// Displaces every `BVar` with index >= `cutoff` by `by`.
///
/// The shift amount may be negative (used when substitution removes a
/// binder); a well-scoped caller never drives an index below zero.
pub fn shift(t: &TermRef, by: isize, cutoff: usize) -> TermRef {
    if by == 0 {
        return t.clone();
    }
    match &**t {
        Term::Type | Term::Kind | Term::Const(_) => t.clone(),
        Term::BVar(i) => {
            if *i >= cutoff {
                let shifted = *i as isize + by;
                debug_assert!(shifted >= 0, "shift produced a negative index");
                Term::bvar(shifted as usize)
            } else {
                t.clone()
            }
        }
        Term::App(f, a) => Term::app(shift(f, by, cutoff), shift(a, by, cutoff)),
        Term::Lam(n, annot, body) => Term::lam(
            n.clone(),
            annot.as_ref().map(|a| shift(a, by, cutoff)),
            shift(body, by, cutoff + 1),
        ),
        Term::Pi(n, dom, cod) => {
            Term::pi(n.clone(), shift(dom, by, cutoff), shift(cod, by, cutoff + 1))
        }
    }
}

/// Substitutes `u` for `BVar 0` in `t`, decrementing the remaining indices.
pub fn subst(t: &TermRef, u: &TermRef) -> TermRef {
    subst_at(t, u, 0)
}

/// Substitutes `u` for `BVar depth` in `t`. Indices above `depth` drop by
/// one; `u` is lifted past the binders it is pushed under.
pub fn subst_at(t: &TermRef, u: &TermRef, depth: usize) -> TermRef {
    match &**t {
        Term::Type | Term::Kind | Term::Const(_) => t.clone(),
        Term::BVar(i) => {
            if *i == depth {
                shift(u, depth as isize, 0)
            } else if *i > depth {
                Term::bvar(i - 1)
            } else {
                t.clone()
            }
        }
        Term::App(f, a) => Term::app(subst_at(f, u, depth), subst_at(a, u, depth)),
        Term::Lam(n, annot, body) => Term::lam(
            n.clone(),
            annot.as_ref().map(|a| subst_at(a, u, depth)),
            subst_at(body, u, depth + 1),
        ),
        Term::Pi(n, dom, cod) => Term::pi(
            n.clone(),
            subst_at(dom, u, depth),
            subst_at(cod, u, depth + 1),
        ),
    }
}

/// A telescope of typed bound variables, outermost first. Entry `i`'s type
/// is scoped over entries `0..i` only.
#[derive(Clone, Debug, Default)]
pub struct Context {
    entries: Vec<(String, TermRef)>,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, name: impl Into<String>, ty: TermRef) {
        self.entries.push((name.into(), ty));
    }

    pub fn pop(&mut self) {
        self.entries.pop();
    }

    /// Display name of the binder for de Bruijn index `index`.
    pub fn name(&self, index: usize) -> Option<&str> {
        self.entries
            .get(self.entries.len().checked_sub(index + 1)?)
            .map(|(n, _)| n.as_str())
    }

    /// Type of the variable `BVar index`, lifted into the current scope.
    pub fn ty(&self, index: usize) -> Option<TermRef> {
        let pos = self.entries.len().checked_sub(index + 1)?;
        let (_, ty) = self.entries.get(pos)?;
        Some(shift(ty, index as isize + 1, 0))
    }

    /// Binder names, outermost first.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }
}

impl fmt::Display for Term {
    /// Debug-oriented rendering; the surface printer in [`crate::syntax`]
    /// is the one whose output reparses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Type => write!(f, "Type"),
            Term::Kind => write!(f, "Kind"),
            Term::Const(c) => write!(f, "{c}"),
            Term::BVar(i) => write!(f, "#{i}"),
            Term::App(g, a) => write!(f, "({g} {a})"),
            Term::Lam(n, Some(t), b) => write!(f, "({n} : {t} => {b})"),
            Term::Lam(n, None, b) => write!(f, "({n} => {b})"),
            Term::Pi(n, d, c) => write!(f, "(({n} : {d}) -> {c})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> TermRef {
        Term::constant(n)
    }

    #[test]
    fn shift_lifts_free_variable() {
        let t = shift(&Term::bvar(0), 1, 0);
        assert!(t.alpha_eq(&Term::bvar(1)));
    }

    #[test]
    fn shift_cutoff_increments_under_binder() {
        let t = Term::lam("x", Some(c("A")), Term::bvar(0));
        let shifted = shift(&t, 1, 0);
        let expected = Term::lam("x", Some(shift(&c("A"), 1, 0)), Term::bvar(0));
        assert!(shifted.alpha_eq(&expected));
    }

    #[test]
    fn shift_mixed_indices_against_oracle() {
        // shift(App(BVar 0, BVar 2), 3, 1): expected value derived with the
        // named-variable oracle below and frozen here.
        let t = Term::app(Term::bvar(0), Term::bvar(2));
        let got = shift(&t, 3, 1);
        let frozen = Term::app(Term::bvar(0), Term::bvar(5));
        assert!(got.alpha_eq(&frozen));
        assert!(oracle::shift_oracle(&t, 3, 1).alpha_eq(&frozen));
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let t = Term::lam("x", None, Term::app(Term::bvar(0), Term::bvar(3)));
        for cutoff in 0..4 {
            assert!(shift(&t, 0, cutoff).alpha_eq(&t));
        }
    }

    #[test]
    fn subst_hits_and_decrements() {
        assert!(subst(&Term::bvar(0), &c("c")).alpha_eq(&c("c")));
        assert!(subst(&Term::bvar(1), &c("c")).alpha_eq(&Term::bvar(0)));
    }

    #[test]
    fn subst_under_binder() {
        // subst(Lam(x, A, App(BVar 0, BVar 1)), c) replaces the outer
        // variable and keeps the bound one.
        let t = Term::lam("x", Some(Term::bvar(0)), Term::app(Term::bvar(0), Term::bvar(1)));
        let got = subst(&t, &c("c"));
        let expected = Term::lam("x", Some(c("c")), Term::app(Term::bvar(0), c("c")));
        assert!(got.alpha_eq(&expected));
    }

    #[test]
    fn alpha_eq_ignores_binder_names() {
        let a = Term::lam("x", Some(c("A")), Term::bvar(0));
        let b = Term::lam("y", Some(c("A")), Term::bvar(0));
        assert!(a.alpha_eq(&b));
        assert_eq!(a, b);
    }

    #[test]
    fn alpha_eq_distinguishes_structure() {
        assert!(!Term::bvar(0).alpha_eq(&Term::bvar(1)));
        let pi = Term::pi("x", c("A"), Term::bvar(0));
        let lam = Term::lam("x", Some(c("A")), Term::bvar(0));
        assert!(!pi.alpha_eq(&lam));
        // Annotation presence matters.
        let bare = Term::lam("x", None, Term::bvar(0));
        assert!(!lam.alpha_eq(&bare));
    }

    #[test]
    fn shift_then_subst_cancels() {
        for t in oracle::sample_terms(40) {
            let lifted = shift(&t, 1, 0);
            let back = subst(&lifted, &c("u"));
            assert!(back.alpha_eq(&t), "failed on {t}");
        }
    }

    #[test]
    fn alpha_eq_is_an_equivalence() {
        let terms = oracle::sample_terms(25);
        for t in &terms {
            assert!(t.alpha_eq(t));
        }
        for t in &terms {
            for u in &terms {
                assert_eq!(t.alpha_eq(u), u.alpha_eq(t));
                if t.alpha_eq(u) {
                    for v in &terms {
                        if u.alpha_eq(v) {
                            assert!(t.alpha_eq(v));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subst_agrees_with_named_oracle() {
        // Random small terms under one binder, substituted with a closed
        // term, checked against the capture-avoiding named implementation.
        let mut rng = oracle::Rng::new(0x5eed);
        for _ in 0..20 {
            let body = oracle::random_term(&mut rng, 1, 3);
            let arg = oracle::random_term(&mut rng, 0, 2);
            let ours = subst(&body, &arg);
            let named = oracle::subst_oracle(&body, &arg);
            assert!(
                ours.alpha_eq(&named),
                "mismatch for {body} [0 := {arg}]: {ours} vs {named}"
            );
        }
    }

    /// Independent named-variable implementation used as an oracle for the
    /// de Bruijn operations. Kept deliberately naive.
    mod oracle {
        use super::super::*;

        #[derive(Clone, Debug)]
        pub enum Named {
            Sort(bool),
            Const(String),
            Var(String),
            App(Box<Named>, Box<Named>),
            Lam(String, Option<Box<Named>>, Box<Named>),
            Pi(String, Box<Named>, Box<Named>),
        }

        pub struct Rng(u64);

        impl Rng {
            pub fn new(seed: u64) -> Self {
                Rng(seed.max(1))
            }
            pub fn next(&mut self) -> u64 {
                let mut x = self.0;
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                self.0 = x;
                x
            }
            pub fn below(&mut self, n: usize) -> usize {
                (self.next() % n as u64) as usize
            }
        }

        /// Free de Bruijn index `i` is named `f{i}` relative to `depth`.
        fn free_name(level: usize) -> String {
            format!("f{level}")
        }

        fn bound_name(depth: usize) -> String {
            format!("b{depth}")
        }

        /// De Bruijn term to named term; binders get canonical fresh names.
        pub fn to_named(t: &TermRef, depth: usize) -> Named {
            match &**t {
                Term::Type => Named::Sort(false),
                Term::Kind => Named::Sort(true),
                Term::Const(c) => Named::Const(c.clone()),
                Term::BVar(i) => {
                    if *i < depth {
                        Named::Var(bound_name(depth - 1 - i))
                    } else {
                        Named::Var(free_name(i - depth))
                    }
                }
                Term::App(f, a) => Named::App(
                    Box::new(to_named(f, depth)),
                    Box::new(to_named(a, depth)),
                ),
                Term::Lam(_, annot, body) => Named::Lam(
                    bound_name(depth),
                    annot.as_ref().map(|a| Box::new(to_named(a, depth))),
                    Box::new(to_named(body, depth + 1)),
                ),
                Term::Pi(_, dom, cod) => Named::Pi(
                    bound_name(depth),
                    Box::new(to_named(dom, depth)),
                    Box::new(to_named(cod, depth + 1)),
                ),
            }
        }

        fn rename_free(t: &Named, by: isize, cutoff: usize) -> Named {
            match t {
                Named::Sort(_) | Named::Const(_) => t.clone(),
                Named::Var(n) => match n.strip_prefix('f').and_then(|s| s.parse::<usize>().ok()) {
                    Some(level) if level >= cutoff => {
                        Named::Var(free_name((level as isize + by) as usize))
                    }
                    _ => t.clone(),
                },
                Named::App(f, a) => Named::App(
                    Box::new(rename_free(f, by, cutoff)),
                    Box::new(rename_free(a, by, cutoff)),
                ),
                Named::Lam(n, annot, b) => Named::Lam(
                    n.clone(),
                    annot.as_ref().map(|a| Box::new(rename_free(a, by, cutoff))),
                    Box::new(rename_free(b, by, cutoff)),
                ),
                Named::Pi(n, d, c) => Named::Pi(
                    n.clone(),
                    Box::new(rename_free(d, by, cutoff)),
                    Box::new(rename_free(c, by, cutoff)),
                ),
            }
        }

        fn from_named(t: &Named, stack: &mut Vec<String>) -> TermRef {
            match t {
                Named::Sort(false) => Term::sort_type(),
                Named::Sort(true) => Term::sort_kind(),
                Named::Const(c) => Term::constant(c.clone()),
                Named::Var(n) => {
                    if let Some(pos) = stack.iter().rposition(|s| s == n) {
                        Term::bvar(stack.len() - 1 - pos)
                    } else {
                        let level: usize = n.strip_prefix('f').unwrap().parse().unwrap();
                        Term::bvar(stack.len() + level)
                    }
                }
                Named::App(f, a) => Term::app(from_named(f, stack), from_named(a, stack)),
                Named::Lam(n, annot, b) => {
                    let annot = annot.as_ref().map(|a| from_named(a, stack));
                    stack.push(n.clone());
                    let body = from_named(b, stack);
                    stack.pop();
                    Term::lam(n.clone(), annot, body)
                }
                Named::Pi(n, d, c) => {
                    let dom = from_named(d, stack);
                    stack.push(n.clone());
                    let cod = from_named(c, stack);
                    stack.pop();
                    Term::pi(n.clone(), dom, cod)
                }
            }
        }

        /// Shifting is renaming of free variables in the named world.
        pub fn shift_oracle(t: &TermRef, by: isize, cutoff: usize) -> TermRef {
            // Under `cutoff` enclosing binders, indices below the cutoff are
            // bound; the rest are free and get renamed.
            let named = to_named(t, cutoff);
            let renamed = rename_free(&named, by, 0);
            let mut stack: Vec<String> = (0..cutoff).map(bound_name).collect();
            from_named(&renamed, &mut stack)
        }

        /// Capture-avoiding substitution on named terms.
        fn subst_named(t: &Named, var: &str, image: &Named) -> Named {
            match t {
                Named::Sort(_) | Named::Const(_) => t.clone(),
                Named::Var(n) => {
                    if n == var {
                        image.clone()
                    } else {
                        t.clone()
                    }
                }
                Named::App(f, a) => Named::App(
                    Box::new(subst_named(f, var, image)),
                    Box::new(subst_named(a, var, image)),
                ),
                // Canonical binder names never clash with the substituted
                // free variable, so no renaming is needed here.
                Named::Lam(n, annot, b) => Named::Lam(
                    n.clone(),
                    annot.as_ref().map(|a| Box::new(subst_named(a, var, image))),
                    Box::new(subst_named(b, var, image)),
                ),
                Named::Pi(n, d, c) => Named::Pi(
                    n.clone(),
                    Box::new(subst_named(d, var, image)),
                    Box::new(subst_named(c, var, image)),
                ),
            }
        }

        /// subst(t, u) in the named world: name the hole `f0`, substitute,
        /// then shift the remaining free names down by one.
        pub fn subst_oracle(t: &TermRef, u: &TermRef) -> TermRef {
            let named_t = to_named(t, 1); // BVar 0 becomes bound_name(0)
            // Re-expose the substitution target as a free variable.
            let opened = rename_bound0_to_marker(&named_t);
            let named_u = to_named(u, 0);
            let substituted = subst_named(&opened, "$hole", &named_u);
            let mut stack = Vec::new();
            from_named(&substituted, &mut stack)
        }

        fn rename_bound0_to_marker(t: &Named) -> Named {
            match t {
                Named::Var(n) if n == "b0" => Named::Var("$hole".into()),
                Named::Sort(_) | Named::Const(_) | Named::Var(_) => t.clone(),
                Named::App(f, a) => Named::App(
                    Box::new(rename_bound0_to_marker(f)),
                    Box::new(rename_bound0_to_marker(a)),
                ),
                Named::Lam(n, annot, b) => Named::Lam(
                    n.clone(),
                    annot.as_ref().map(|a| Box::new(rename_bound0_to_marker(a))),
                    Box::new(rename_bound0_to_marker(b)),
                ),
                Named::Pi(n, d, c) => Named::Pi(
                    n.clone(),
                    Box::new(rename_bound0_to_marker(d)),
                    Box::new(rename_bound0_to_marker(c)),
                ),
            }
        }

        /// Random well-scoped term with `free` permitted free indices.
        pub fn random_term(rng: &mut Rng, free: usize, depth: usize) -> TermRef {
            let choices = if depth == 0 { 2 } else { 5 };
            match rng.below(choices) {
                0 => Term::constant(["A", "B", "g"][rng.below(3)]),
                1 => {
                    if free == 0 {
                        Term::constant("k")
                    } else {
                        Term::bvar(rng.below(free))
                    }
                }
                2 => Term::app(
                    random_term(rng, free, depth - 1),
                    random_term(rng, free, depth - 1),
                ),
                3 => {
                    let annot = if rng.below(2) == 0 {
                        Some(random_term(rng, free, depth - 1))
                    } else {
                        None
                    };
                    Term::lam("x", annot, random_term(rng, free + 1, depth - 1))
                }
                _ => Term::pi(
                    "x",
                    random_term(rng, free, depth - 1),
                    random_term(rng, free + 1, depth - 1),
                ),
            }
        }

        pub fn sample_terms(count: usize) -> Vec<TermRef> {
            let mut rng = Rng::new(0xabcdef);
            (0..count).map(|_| random_term(&mut rng, 0, 3)).collect()
        }
    }
}
