//! Bidirectional type checking with conversion modulo the signature's
//! rewrite rules, and order-sensitive signature elaboration.
//!
//! The sort discipline is the lambda-Pi-calculus's: two sorts `Type` and
//! `Kind`, products over `Type`-sorted domains with `Type`- or
//! `Kind`-sorted codomains. Conversion is directed by weak-head forms
//! rather than full normalization, so large irrelevant subterms are never
//! normalized; rules are free to rewrite `Type`-sorted and `Kind`-sorted
//! terms alike, which is what lets a rule decode a proposition into a
//! type.

use crate::error::{Category, Error, Loc, Result};
use crate::pattern::{pattern_of_lhs, RewriteRule};
use crate::rewrite::{Engine, Limits};
use crate::sig::{SigEntry, Signature};
use crate::syntax::{print_term, EntryKind, SourceFile};
use crate::term::{spine, subst, Context, Name, Term, TermRef};

/// `true` iff the two terms are joinable by weak-head normalization and
/// structural descent. Both terms must be well-typed in the same context.
pub fn conv(sig: &Signature, t: &TermRef, u: &TermRef, limits: Limits) -> Result<bool> {
    let mut checker = Checker::new(sig, limits);
    checker.conv(t, u)
}

/// Infers the type of `t` in `ctx`. Unannotated abstractions are rejected
/// here: they can only be checked against an expected product.
pub fn infer(sig: &Signature, ctx: &Context, t: &TermRef, limits: Limits) -> Result<TermRef> {
    let mut checker = Checker::new(sig, limits);
    let mut ctx = ctx.clone();
    checker.infer(&mut ctx, t)
}

/// Checks `t` against `expected` (a well-formed type) in `ctx`.
pub fn check(
    sig: &Signature,
    ctx: &Context,
    t: &TermRef,
    expected: &TermRef,
    limits: Limits,
) -> Result<()> {
    let mut checker = Checker::new(sig, limits);
    let mut ctx = ctx.clone();
    checker.check(&mut ctx, t, expected)
}

/// Result of elaborating a file: the signature plus the reportable
/// outcomes of its `#EVAL` and `#CHECK` commands, in file order.
#[derive(Clone, Debug)]
pub struct Elaboration {
    pub signature: Signature,
    pub notices: Vec<Notice>,
}

/// A reportable command outcome.
#[derive(Clone, Debug)]
pub enum Notice {
    Eval { input: TermRef, normal_form: TermRef },
    CheckPassed { subject: TermRef, ty: TermRef },
}

impl Notice {
    pub fn render(&self) -> String {
        let ctx = Context::new();
        match self {
            Notice::Eval { input, normal_form } => {
                format!("#EVAL {} = {}", print_term(input, &ctx), print_term(normal_form, &ctx))
            }
            Notice::CheckPassed { subject, ty } => {
                format!("#CHECK {} : {}", print_term(subject, &ctx), print_term(ty, &ctx))
            }
        }
    }
}

/// Elaborates a parsed file into a signature, processing entries in
/// order. Each entry gets a fresh fuel budget of `limits.fuel`.
///
/// Declarations are checked to be types (of sort `Type` or `Kind`);
/// definition bodies are checked against their declared or inferred type;
/// rules are validated (constant-headed, Miller, left-linear, definable
/// head) and type-checked by inferring the left-hand side with pattern
/// variables as fresh constants of their context types, then checking the
/// right-hand side against that type. Commands are executed and their
/// outcomes reported.
pub fn elaborate(file: &SourceFile, limits: Limits) -> Result<Elaboration> {
    let mut sig = Signature::new();
    let mut notices = Vec::new();
    for entry in &file.entries {
        let loc = &entry.loc;
        let declare = |sig: &Signature, name: &Name| -> Result<()> {
            if sig.contains(name) {
                return Err(Error::new(
                    Category::RedeclaredName,
                    format!("`{name}` is already declared"),
                )
                .at(loc.clone()));
            }
            Ok(())
        };
        match &entry.kind {
            EntryKind::StaticDecl { name, ty } => {
                declare(&sig, name)?;
                let mut checker = Checker::new(&sig, limits).with_loc(loc);
                checker.expect_type_or_kind(ty)?;
                sig.insert(name.clone(), SigEntry::Static { ty: ty.clone() }, loc.clone());
            }
            EntryKind::DefinableDecl { name, ty } => {
                declare(&sig, name)?;
                let mut checker = Checker::new(&sig, limits).with_loc(loc);
                checker.expect_type_or_kind(ty)?;
                sig.insert(name.clone(), SigEntry::Definable { ty: ty.clone() }, loc.clone());
            }
            EntryKind::Definition { name, ty, body } => {
                declare(&sig, name)?;
                let mut checker = Checker::new(&sig, limits).with_loc(loc);
                let ty = match ty {
                    Some(ty) => {
                        checker.expect_type_or_kind(ty)?;
                        let mut ctx = Context::new();
                        checker.check(&mut ctx, body, ty)?;
                        ty.clone()
                    }
                    None => {
                        let mut ctx = Context::new();
                        checker.infer(&mut ctx, body)?
                    }
                };
                sig.insert(
                    name.clone(),
                    SigEntry::Definition { ty, body: body.clone() },
                    loc.clone(),
                );
            }
            EntryKind::Rule { ctx, lhs, rhs } => {
                let rule = elaborate_rule(&sig, ctx, lhs, rhs, loc, limits)?;
                sig.attach_rule(rule);
            }
            EntryKind::Eval { term } => {
                let mut checker = Checker::new(&sig, limits).with_loc(loc);
                let mut tctx = Context::new();
                checker.infer(&mut tctx, term)?;
                let normal_form = checker.engine.snf(term).map_err(|e| e.or_at(loc))?;
                notices.push(Notice::Eval { input: term.clone(), normal_form });
            }
            EntryKind::Check { term, ty } => {
                let mut checker = Checker::new(&sig, limits).with_loc(loc);
                checker.expect_type_or_kind(ty)?;
                let mut tctx = Context::new();
                checker.check(&mut tctx, term, ty)?;
                notices.push(Notice::CheckPassed { subject: term.clone(), ty: ty.clone() });
            }
        }
        sig.record_source(entry.clone());
    }
    Ok(Elaboration { signature: sig, notices })
}

fn elaborate_rule(
    sig: &Signature,
    rule_ctx: &[(Name, TermRef)],
    lhs: &TermRef,
    rhs: &TermRef,
    loc: &Loc,
    limits: Limits,
) -> Result<RewriteRule> {
    // Context names must be fresh: duplicates and shadowing of signature
    // constants would make occurrences ambiguous.
    for (i, (name, _)) in rule_ctx.iter().enumerate() {
        if rule_ctx[..i].iter().any(|(n, _)| n == name) {
            return Err(Error::new(
                Category::RedeclaredName,
                format!("pattern variable `{name}` is declared twice in the rule context"),
            )
            .at(loc.clone()));
        }
        if sig.contains(name) {
            return Err(Error::new(
                Category::RedeclaredName,
                format!("pattern variable `{name}` shadows a signature constant"),
            )
            .at(loc.clone()));
        }
    }
    let names: Vec<Name> = rule_ctx.iter().map(|(n, _)| n.clone()).collect();

    // Context types are checked left to right; later types may mention
    // earlier pattern variables.
    let mut checker = Checker::new(sig, limits).with_loc(loc);
    for (name, ty) in rule_ctx {
        checker.expect_type_or_kind(ty)?;
        checker.locals.push((name.clone(), ty.clone()));
    }

    let (head, args) = pattern_of_lhs(lhs, &names).map_err(|e| e.or_at(loc))?;
    match sig.get(&head) {
        None => {
            return Err(Error::new(
                Category::UnboundName,
                format!("rule head `{head}` is not declared"),
            )
            .at(loc.clone()))
        }
        Some(SigEntry::Definable { .. }) => {}
        Some(SigEntry::Static { .. }) => {
            return Err(Error::new(
                Category::RewriteOnStaticConstant,
                format!("`{head}` is static; only `def` constants may head rewrite rules"),
            )
            .at(loc.clone()))
        }
        Some(SigEntry::Definition { .. }) => {
            return Err(Error::new(
                Category::RewriteOnStaticConstant,
                format!("`{head}` is a definition; rules may attach only to `def` declarations"),
            )
            .at(loc.clone()))
        }
    }

    // Every pattern variable used on the right must be bound on the left.
    let rule = RewriteRule { ctx: rule_ctx.to_vec(), head, args, rhs: rhs.clone() };
    let mut lhs_vars = Vec::new();
    collect_pattern_vars(&rule.args, &mut lhs_vars);
    let mut rhs_consts = std::collections::BTreeSet::new();
    rhs.constants(&mut rhs_consts);
    for name in &names {
        if rhs_consts.contains(name) && !lhs_vars.contains(name) {
            return Err(Error::new(
                Category::UnboundPatternVariable,
                format!("pattern variable `{name}` occurs on the right-hand side but not on the left"),
            )
            .at(loc.clone()));
        }
    }

    // Type the rule: infer the lhs with pattern variables as fresh
    // constants, then check the rhs against that type.
    let mut ctx = Context::new();
    let lhs_ty = checker.infer(&mut ctx, lhs)?;
    checker.check(&mut ctx, rhs, &lhs_ty)?;
    Ok(rule)
}

fn collect_pattern_vars(args: &[crate::pattern::Pattern], acc: &mut Vec<Name>) {
    use crate::pattern::Pattern;
    fn go(p: &Pattern, acc: &mut Vec<Name>) {
        match p {
            Pattern::Var(n, _) => acc.push(n.clone()),
            Pattern::Const(_) => {}
            Pattern::App(f, a) => {
                go(f, acc);
                go(a, acc);
            }
            Pattern::Lam(_, b) => go(b, acc),
        }
    }
    for p in args {
        go(p, acc);
    }
}

/// Checking state: the signature, rule-local constants, one engine (whose
/// fuel the whole operation shares) and a location for error reports.
struct Checker<'s> {
    engine: Engine<'s>,
    /// Pattern variables of the rule being checked, visible as constants.
    locals: Vec<(Name, TermRef)>,
    loc: Option<Loc>,
}

impl<'s> Checker<'s> {
    fn new(sig: &'s Signature, limits: Limits) -> Self {
        Checker { engine: Engine::new(sig, limits), locals: Vec::new(), loc: None }
    }

    fn with_loc(mut self, loc: &Loc) -> Self {
        self.loc = Some(loc.clone());
        self
    }

    fn err(&self, category: Category, message: String) -> Error {
        let e = Error::new(category, message);
        match &self.loc {
            Some(loc) => e.at(loc.clone()),
            None => e,
        }
    }

    fn located(&self, e: Error) -> Error {
        match &self.loc {
            Some(loc) => e.or_at(loc),
            None => e,
        }
    }

    fn lookup_const(&self, name: &str) -> Option<TermRef> {
        if let Some((_, ty)) = self.locals.iter().rev().find(|(n, _)| n == name) {
            return Some(ty.clone());
        }
        self.engine.signature().get(name).map(|e| e.ty().clone())
    }

    fn whnf(&mut self, t: &TermRef) -> Result<TermRef> {
        let loc = self.loc.clone();
        self.engine.whnf(t).map_err(|e| match &loc {
            Some(l) => e.or_at(l),
            None => e,
        })
    }

    /// Conversion: compare weak-head forms, recursing structurally and
    /// normalizing subterms only on demand.
    fn conv(&mut self, t: &TermRef, u: &TermRef) -> Result<bool> {
        if t.alpha_eq(u) {
            return Ok(true);
        }
        let t = self.whnf(t)?;
        let u = self.whnf(u)?;
        match (&*t, &*u) {
            (Term::Type, Term::Type) | (Term::Kind, Term::Kind) => Ok(true),
            (Term::Lam(_, a1, b1), Term::Lam(_, a2, b2)) => {
                let annots = match (a1, a2) {
                    (None, None) => true,
                    (Some(x), Some(y)) => self.conv(x, y)?,
                    _ => false,
                };
                Ok(annots && self.conv(b1, b2)?)
            }
            (Term::Pi(_, d1, c1), Term::Pi(_, d2, c2)) => {
                Ok(self.conv(d1, d2)? && self.conv(c1, c2)?)
            }
            (Term::Const(_) | Term::BVar(_) | Term::App(..), _) => {
                let (h1, args1) = spine(&t);
                let (h2, args2) = spine(&u);
                let heads = match (&*h1, &*h2) {
                    (Term::Const(c), Term::Const(d)) => c == d,
                    (Term::BVar(i), Term::BVar(j)) => i == j,
                    _ => false,
                };
                if !heads || args1.len() != args2.len() {
                    return Ok(false);
                }
                for (a, b) in args1.iter().zip(&args2) {
                    if !self.conv(a, b)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    /// The sort a declared type must have: `Type` or `Kind`.
    fn expect_type_or_kind(&mut self, ty: &TermRef) -> Result<()> {
        let mut ctx = Context::new();
        let sort = self.infer(&mut ctx, ty)?;
        let sort = self.whnf(&sort)?;
        match &*sort {
            Term::Type | Term::Kind => Ok(()),
            _ => Err(self.err(
                Category::TypeMismatch,
                format!(
                    "`{}` is not a type: its type is `{}`, not a sort",
                    print_term(ty, &ctx),
                    print_term(&sort, &ctx)
                ),
            )),
        }
    }

    fn infer(&mut self, ctx: &mut Context, t: &TermRef) -> Result<TermRef> {
        match &**t {
            Term::Type => Ok(Term::sort_kind()),
            Term::Kind => Err(self.err(
                Category::CannotInfer,
                "the sort Kind has no type".to_string(),
            )),
            Term::Const(c) => self.lookup_const(c).ok_or_else(|| {
                self.err(Category::UnboundName, format!("unknown name `{c}`"))
            }),
            Term::BVar(i) => ctx.ty(*i).ok_or_else(|| {
                self.err(Category::UnboundName, format!("variable index {i} escapes its scope"))
            }),
            Term::App(f, a) => {
                let f_ty = self.infer(ctx, f)?;
                let f_ty = self.whnf(&f_ty)?;
                match &*f_ty {
                    Term::Pi(_, dom, cod) => {
                        self.check(ctx, a, dom)?;
                        Ok(subst(cod, a))
                    }
                    _ => Err(self.err(
                        Category::NotAFunction,
                        format!(
                            "cannot apply `{}`: its type `{}` is not a product",
                            print_term(f, ctx),
                            print_term(&f_ty, ctx)
                        ),
                    )),
                }
            }
            Term::Lam(_, None, _) => Err(self.err(
                Category::CannotInfer,
                format!(
                    "cannot infer the type of the unannotated abstraction `{}`",
                    print_term(t, ctx)
                ),
            )),
            Term::Lam(name, Some(annot), body) => {
                self.expect_small_type(ctx, annot)?;
                ctx.push(name.clone(), annot.clone());
                let body_ty = self.infer(ctx, body);
                ctx.pop();
                let body_ty = body_ty?;
                if matches!(&*body_ty, Term::Kind) {
                    return Err(self.err(
                        Category::TypeMismatch,
                        "the body of this abstraction is a sort; no product classifies it"
                            .to_string(),
                    ));
                }
                Ok(Term::pi(name.clone(), annot.clone(), body_ty))
            }
            Term::Pi(name, dom, cod) => {
                self.expect_small_type(ctx, dom)?;
                ctx.push(name.clone(), dom.clone());
                let cod_sort = self.infer(ctx, cod);
                ctx.pop();
                let cod_sort = self.whnf(&cod_sort?)?;
                match &*cod_sort {
                    Term::Type | Term::Kind => Ok(cod_sort),
                    _ => Err(self.err(
                        Category::TypeMismatch,
                        format!(
                            "the codomain of this product is not a type or kind: `{}`",
                            print_term(cod, ctx)
                        ),
                    )),
                }
            }
        }
    }

    /// Products and abstractions bind `Type`-sorted domains only.
    fn expect_small_type(&mut self, ctx: &mut Context, dom: &TermRef) -> Result<()> {
        let sort = self.infer(ctx, dom)?;
        let sort = self.whnf(&sort)?;
        match &*sort {
            Term::Type => Ok(()),
            _ => Err(self.err(
                Category::TypeMismatch,
                format!(
                    "a binder's domain must be a type of sort Type; `{}` has sort `{}`",
                    print_term(dom, ctx),
                    print_term(&sort, ctx)
                ),
            )),
        }
    }

    fn check(&mut self, ctx: &mut Context, t: &TermRef, expected: &TermRef) -> Result<()> {
        if let Term::Lam(name, annot, body) = &**t {
            let expected_whnf = self.whnf(expected)?;
            return match &*expected_whnf {
                Term::Pi(_, dom, cod) => {
                    let pushed = match annot {
                        // An annotated abstraction keeps its own domain,
                        // after checking it matches the product's.
                        Some(annot) => {
                            self.expect_small_type(ctx, annot)?;
                            if !self.conv(annot, dom)? {
                                return Err(self.err(
                                    Category::TypeMismatch,
                                    format!(
                                        "the annotation `{}` does not match the expected domain `{}`",
                                        print_term(annot, ctx),
                                        print_term(dom, ctx)
                                    ),
                                ));
                            }
                            annot.clone()
                        }
                        None => dom.clone(),
                    };
                    ctx.push(name.clone(), pushed);
                    let res = self.check(ctx, body, cod);
                    ctx.pop();
                    res
                }
                _ => Err(self.err(
                    Category::TypeMismatch,
                    format!(
                        "an abstraction was checked against `{}`, which is not a product",
                        print_term(&expected_whnf, ctx)
                    ),
                )),
            };
        }
        let actual = self.infer(ctx, t)?;
        if self.conv(&actual, expected)? {
            Ok(())
        } else {
            Err(self.err(
                Category::TypeMismatch,
                format!(
                    "`{}` has type `{}` but `{}` was expected",
                    print_term(t, ctx),
                    print_term(&actual, ctx),
                    print_term(expected, ctx)
                ),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_file;

    fn elab(src: &str) -> Result<Elaboration> {
        let file = parse_file(src, "test.mdk")?;
        elaborate(&file, Limits::default())
    }

    fn sig_of(src: &str) -> Signature {
        elab(src).unwrap().signature
    }

    const MODULO: &str = "
        prop : Type.
        def eps : prop -> Type.
        imp : prop -> prop -> prop.
        [a : prop, b : prop] eps (imp a b) --> eps a -> eps b.
        A : prop.
        B : prop.
    ";

    fn t(sig: &Signature, src: &str) -> TermRef {
        let _ = sig;
        crate::syntax::parse_term(src, "term").unwrap()
    }

    #[test]
    fn identity_infers_a_product() {
        let sig = sig_of("A : Type.");
        let id = t(&sig, "x : A => x");
        let ty = infer(&sig, &Context::new(), &id, Limits::default()).unwrap();
        let expected = t(&sig, "(x : A) -> A");
        assert!(ty.alpha_eq(&expected), "got {ty}");
    }

    #[test]
    fn type_has_kind() {
        let sig = Signature::new();
        let ty = infer(&sig, &Context::new(), &Term::sort_type(), Limits::default()).unwrap();
        assert!(matches!(&*ty, Term::Kind));
    }

    #[test]
    fn conversion_through_the_morphism_rule() {
        let sig = sig_of(MODULO);
        let lhs = t(&sig, "eps (imp A B)");
        let rhs = t(&sig, "eps A -> eps B");
        assert!(conv(&sig, &lhs, &rhs, Limits::default()).unwrap());
        assert!(conv(&sig, &lhs, &lhs, Limits::default()).unwrap());
        let wrong = t(&sig, "eps B -> eps A");
        assert!(!conv(&sig, &lhs, &wrong, Limits::default()).unwrap());
    }

    #[test]
    fn paper_proof_term_checks() {
        // f => x => f x x against eps (imp (imp A (imp A B)) (imp A B)),
        // with conversion applying the morphism rule as needed.
        let sig = sig_of(MODULO);
        let proof = t(&sig, "f : eps (imp A (imp A B)) => x : eps A => f x x");
        let goal = t(&sig, "eps (imp (imp A (imp A B)) (imp A B))");
        check(&sig, &Context::new(), &proof, &goal, Limits::default()).unwrap();
        // and the unannotated version too, by pushing domains inward
        let bare = t(&sig, "f => x => f x x");
        check(&sig, &Context::new(), &bare, &goal, Limits::default()).unwrap();
    }

    #[test]
    fn paper_proof_infers_through_rules() {
        let sig = sig_of(MODULO);
        let proof = t(&sig, "f : eps (imp A (imp A B)) => x : eps A => f x x");
        let ty = infer(&sig, &Context::new(), &proof, Limits::default()).unwrap();
        let goal = t(&sig, "eps (imp (imp A (imp A B)) (imp A B))");
        assert!(conv(&sig, &ty, &goal, Limits::default()).unwrap());
    }

    #[test]
    fn lambda_against_non_product_is_a_mismatch() {
        let sig = sig_of("A : Type.");
        let lam = t(&sig, "x : A => x");
        let err =
            check(&sig, &Context::new(), &lam, &t(&sig, "A"), Limits::default()).unwrap_err();
        assert_eq!(err.category, Category::TypeMismatch);
    }

    #[test]
    fn unannotated_lambda_cannot_be_inferred() {
        let sig = sig_of("A : Type.");
        let lam = t(&sig, "x => x");
        let err = infer(&sig, &Context::new(), &lam, Limits::default()).unwrap_err();
        assert_eq!(err.category, Category::CannotInfer);
    }

    #[test]
    fn unbound_name_is_reported() {
        let err = elab("A : Type. b : missing.").unwrap_err();
        assert_eq!(err.category, Category::UnboundName);
        assert_eq!(err.loc.unwrap().line, 1);
    }

    #[test]
    fn redeclaration_is_reported() {
        let err = elab("A : Type. A : Type.").unwrap_err();
        assert_eq!(err.category, Category::RedeclaredName);
    }

    #[test]
    fn rules_on_static_constants_are_rejected() {
        let err = elab("nat : Type. z : nat. [x : nat] z --> x.").unwrap_err();
        // z is static; also the rhs-only variable would be caught later
        assert_eq!(err.category, Category::RewriteOnStaticConstant);
    }

    #[test]
    fn variable_headed_rules_are_rejected() {
        let err = elab("A : Type. [x : A] x --> x.").unwrap_err();
        assert_eq!(err.category, Category::IllFormedPattern);
    }

    #[test]
    fn non_linear_rules_are_rejected() {
        let err = elab(
            "nat : Type. def eq : nat -> nat -> nat. [x : nat] eq x x --> x.",
        )
        .unwrap_err();
        assert_eq!(err.category, Category::NonLinearPattern);
    }

    #[test]
    fn rhs_only_pattern_variables_are_rejected() {
        let err = elab(
            "nat : Type. def f : nat -> nat. [x : nat, y : nat] f x --> y.",
        )
        .unwrap_err();
        assert_eq!(err.category, Category::UnboundPatternVariable);
    }

    #[test]
    fn rule_sides_must_agree_in_type() {
        let err = elab(
            "nat : Type. bool : Type. tt : bool. def f : nat -> nat. [x : nat] f x --> tt.",
        )
        .unwrap_err();
        assert_eq!(err.category, Category::TypeMismatch);
    }

    #[test]
    fn definitions_check_against_declared_types() {
        let sig = sig_of("A : Type. a : A. def b : A := a.");
        assert!(sig.contains("b"));
        let err = elab("A : Type. a : A. def b : Type := a.").unwrap_err();
        assert_eq!(err.category, Category::TypeMismatch);
    }

    #[test]
    fn check_command_failure_aborts() {
        let err = elab("A : Type. a : A. #CHECK a : Type.").unwrap_err();
        assert_eq!(err.category, Category::TypeMismatch);
    }

    #[test]
    fn eval_command_normalizes() {
        let out = elab(
            "nat : Type. 0 : nat. S : nat -> nat. def plus : nat -> nat -> nat.
             [y : nat] plus 0 y --> y.
             [x : nat, y : nat] plus (S x) y --> S (plus x y).
             #EVAL plus (S 0) (S 0).",
        )
        .unwrap();
        assert_eq!(out.notices.len(), 1);
        match &out.notices[0] {
            Notice::Eval { normal_form, .. } => {
                let two = crate::syntax::parse_term("S (S 0)", "t").unwrap();
                assert!(normal_form.alpha_eq(&two));
            }
            other => panic!("unexpected notice {other:?}"),
        }
    }

    #[test]
    fn conversion_inside_dependent_types() {
        // vec (plus 0 n) and vec n are identified by conversion.
        let src = "
            nat : Type.
            0 : nat.
            S : nat -> nat.
            def plus : nat -> nat -> nat.
            [y : nat] plus 0 y --> y.
            [x : nat, y : nat] plus (S x) y --> S (plus x y).
            n : nat.
            vec : nat -> Type.
            mk : (m : nat) -> vec m.
            def v : vec (plus 0 n) := mk n.
        ";
        let sig = sig_of(src);
        assert!(sig.contains("v"));
    }

    #[test]
    fn sort_policy_rejects_type_domains() {
        // Quantification over Type is outside the calculus.
        let err = elab("def id : (a : Type) -> a -> a := a : Type => x : a => x.").unwrap_err();
        assert_eq!(err.category, Category::TypeMismatch);
    }

    #[test]
    fn kinded_declarations_are_accepted() {
        let sig = sig_of("prop : Type. def eps : prop -> Type.");
        assert!(sig.contains("eps"));
    }

    #[test]
    fn rule_context_shadowing_signature_is_rejected() {
        let err = elab(
            "nat : Type. x : nat. def f : nat -> nat. [x : nat] f x --> x.",
        )
        .unwrap_err();
        assert_eq!(err.category, Category::RedeclaredName);
    }

    #[test]
    fn dependent_rule_contexts_are_supported() {
        // a later context entry's type mentions an earlier variable
        let src = "
            type : Type.
            def el : type -> Type.
            iota : type.
            c : (a : type) -> el a -> el a.
            def f : (a : type) -> el a -> el a.
            [a : type, x : el a] f a x --> c a x.
        ";
        let sig = sig_of(src);
        assert_eq!(sig.rules("f").len(), 1);
    }

    #[test]
    fn agreement_infer_then_check() {
        let sig = sig_of(MODULO);
        for src in [
            "A",
            "imp A B",
            "eps (imp A B)",
            "f : eps (imp A B) => f",
            "f : eps (imp A (imp A B)) => x : eps A => f x x",
        ] {
            let term = t(&sig, src);
            let ty = infer(&sig, &Context::new(), &term, Limits::default()).unwrap();
            check(&sig, &Context::new(), &term, &ty, Limits::default()).unwrap();
        }
    }
}
