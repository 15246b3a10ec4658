//! Rewrite patterns and rule instantiation.
//!
//! Left-hand sides live in the Miller fragment: a pattern variable may only
//! be applied to pairwise-distinct locally bound variables, which keeps
//! matching syntactic and deterministic. Left-hand sides are additionally
//! constant-headed and left-linear; elaboration enforces all three.

use std::collections::HashMap;

use crate::error::{Category, Error, Result};
use crate::term::{shift, spine, subst, Name, Term, TermRef};

/// A left-hand-side pattern.
#[derive(Clone, Debug)]
pub enum Pattern {
    /// A pattern variable applied to distinct locally bound variables
    /// (indices relative to the binders crossed inside the pattern).
    Var(Name, Vec<usize>),
    /// A constant, matched after weak-head normalization.
    Const(Name),
    /// An application.
    App(Box<Pattern>, Box<Pattern>),
    /// An abstraction; matches any lambda, annotated or not.
    Lam(String, Box<Pattern>),
}

impl Pattern {
    /// The pattern as a term: pattern variables become constants applied
    /// to the bound variables they capture.
    pub fn to_term(&self) -> TermRef {
        match self {
            Pattern::Var(name, args) => Term::apps(
                Term::constant(name.clone()),
                args.iter().map(|&i| Term::bvar(i)),
            ),
            Pattern::Const(name) => Term::constant(name.clone()),
            Pattern::App(f, a) => Term::app(f.to_term(), a.to_term()),
            Pattern::Lam(name, body) => Term::lam(name.clone(), None, body.to_term()),
        }
    }

    fn collect_vars<'a>(&'a self, acc: &mut Vec<&'a Name>) {
        match self {
            Pattern::Var(name, _) => acc.push(name),
            Pattern::Const(_) => {}
            Pattern::App(f, a) => {
                f.collect_vars(acc);
                a.collect_vars(acc);
            }
            Pattern::Lam(_, body) => body.collect_vars(acc),
        }
    }

    /// Constant names mentioned by the pattern (pattern variables are not
    /// constants and are excluded).
    pub fn constants(&self, acc: &mut std::collections::BTreeSet<Name>) {
        match self {
            Pattern::Var(..) => {}
            Pattern::Const(c) => {
                acc.insert(c.clone());
            }
            Pattern::App(f, a) => {
                f.constants(acc);
                a.constants(acc);
            }
            Pattern::Lam(_, body) => body.constants(acc),
        }
    }

    /// Structural equality with pattern-variable names translated through
    /// `lvars`/`rvars` (context position stands for identity), so renaming
    /// a rule's context does not distinguish rules.
    pub fn eq_modulo(&self, other: &Pattern, lvars: &[Name], rvars: &[Name]) -> bool {
        match (self, other) {
            (Pattern::Var(n1, a1), Pattern::Var(n2, a2)) => {
                lvars.iter().position(|v| v == n1) == rvars.iter().position(|v| v == n2)
                    && a1 == a2
            }
            (Pattern::Const(c1), Pattern::Const(c2)) => c1 == c2,
            (Pattern::App(f1, a1), Pattern::App(f2, a2)) => {
                f1.eq_modulo(f2, lvars, rvars) && a1.eq_modulo(a2, lvars, rvars)
            }
            (Pattern::Lam(_, b1), Pattern::Lam(_, b2)) => b1.eq_modulo(b2, lvars, rvars),
            _ => false,
        }
    }
}

/// A typed rewrite rule `[ctx] head args --> rhs`.
///
/// Pattern variables occur in `rhs` as constants named by the context;
/// instantiation replaces them with matched terms.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    /// Typed pattern-variable context, in declaration order.
    pub ctx: Vec<(Name, TermRef)>,
    /// Head constant of the left-hand side.
    pub head: Name,
    /// Argument patterns of the left-hand side.
    pub args: Vec<Pattern>,
    /// Right-hand side.
    pub rhs: TermRef,
}

impl RewriteRule {
    pub fn arity(&self) -> usize {
        self.args.len()
    }

    /// The full left-hand side as a pattern tree.
    pub fn lhs(&self) -> Pattern {
        self.args.iter().fold(Pattern::Const(self.head.clone()), |acc, a| {
            Pattern::App(Box::new(acc), Box::new(a.clone()))
        })
    }
}

/// Converts a parsed left-hand side into a pattern.
///
/// `pvars` are the rule-context names; they appear in the term as
/// constants. Returns the head constant and its argument patterns.
/// Rejects: a pattern-variable head, an applied pattern variable whose
/// arguments are not distinct locally bound variables, annotated or
/// product subterms, sorts, and non-left-linear variable use.
pub fn pattern_of_lhs(lhs: &TermRef, pvars: &[Name]) -> Result<(Name, Vec<Pattern>)> {
    let (head, args) = spine(lhs);
    let head_name = match &*head {
        Term::Const(c) if !pvars.contains(c) => c.clone(),
        Term::Const(c) => {
            return Err(Error::new(
                Category::IllFormedPattern,
                format!("left-hand side is headed by the pattern variable `{c}`, not a constant"),
            ))
        }
        _ => {
            return Err(Error::new(
                Category::IllFormedPattern,
                "left-hand side must be headed by a constant",
            ))
        }
    };
    let args = args
        .iter()
        .map(|arg| pattern_of_subterm(arg, pvars, 0))
        .collect::<Result<Vec<_>>>()?;
    // Left-linearity: each pattern variable at most once across the side.
    let mut seen = Vec::new();
    for arg in &args {
        arg.collect_vars(&mut seen);
    }
    let mut sorted = seen.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != seen.len() {
        let dup = seen
            .iter()
            .find(|n| seen.iter().filter(|m| m == n).count() > 1)
            .unwrap();
        return Err(Error::new(
            Category::NonLinearPattern,
            format!("pattern variable `{dup}` occurs more than once in the left-hand side"),
        ));
    }
    Ok((head_name, args))
}

fn pattern_of_subterm(t: &TermRef, pvars: &[Name], depth: usize) -> Result<Pattern> {
    let (head, args) = spine(t);
    match &*head {
        Term::Const(c) if pvars.contains(c) => {
            // Miller discipline: distinct locally bound variables only.
            let mut indices = Vec::with_capacity(args.len());
            for arg in &args {
                match &**arg {
                    Term::BVar(i) if *i < depth => {
                        if indices.contains(i) {
                            return Err(Error::new(
                                Category::IllFormedPattern,
                                format!(
                                    "pattern variable `{c}` is applied twice to the same bound variable"
                                ),
                            ));
                        }
                        indices.push(*i);
                    }
                    _ => {
                        return Err(Error::new(
                            Category::IllFormedPattern,
                            format!(
                                "pattern variable `{c}` may only be applied to distinct bound variables"
                            ),
                        ))
                    }
                }
            }
            Ok(Pattern::Var(c.clone(), indices))
        }
        Term::Const(c) => {
            let args = args
                .iter()
                .map(|a| pattern_of_subterm(a, pvars, depth))
                .collect::<Result<Vec<_>>>()?;
            Ok(args.into_iter().fold(Pattern::Const(c.clone()), |acc, a| {
                Pattern::App(Box::new(acc), Box::new(a))
            }))
        }
        Term::BVar(_) => Err(Error::new(
            Category::IllFormedPattern,
            "a bound variable may appear in a pattern only as the argument of a pattern variable",
        )),
        Term::Lam(name, annot, body) => {
            if annot.is_some() {
                return Err(Error::new(
                    Category::IllFormedPattern,
                    "abstractions in patterns may not carry type annotations",
                ));
            }
            if !args.is_empty() {
                return Err(Error::new(
                    Category::IllFormedPattern,
                    "a beta-redex may not appear inside a pattern",
                ));
            }
            let body = pattern_of_subterm(body, pvars, depth + 1)?;
            Ok(Pattern::Lam(name.clone(), Box::new(body)))
        }
        Term::Pi(..) => Err(Error::new(
            Category::IllFormedPattern,
            "products may not appear inside a pattern",
        )),
        Term::Type | Term::Kind => Err(Error::new(
            Category::IllFormedPattern,
            "sorts may not appear inside a pattern",
        )),
        Term::App(..) => unreachable!("spine heads are never applications"),
    }
}

/// A matching substitution: pattern-variable name to the (locally closed)
/// solution term. Solutions for applied pattern variables are abstractions
/// over the captured bound variables.
pub type Subst = HashMap<Name, TermRef>;

/// Instantiates a right-hand side: replaces each pattern-variable constant
/// with its solution, lifting it under the binders crossed, and
/// beta-reduces the applications this creates.
pub fn instantiate(rhs: &TermRef, subst_map: &Subst) -> TermRef {
    inst(rhs, subst_map, 0)
}

fn inst(t: &TermRef, sm: &Subst, depth: usize) -> TermRef {
    match &**t {
        Term::Type | Term::Kind | Term::BVar(_) => t.clone(),
        Term::Const(c) => match sm.get(c) {
            Some(solution) => shift(solution, depth as isize, 0),
            None => t.clone(),
        },
        Term::App(f, a) => {
            let f = inst(f, sm, depth);
            let a = inst(a, sm, depth);
            // Applications of substituted solutions reduce on the spot.
            match &*f {
                Term::Lam(_, _, body) => subst(body, &a),
                _ => Term::app(f, a),
            }
        }
        Term::Lam(n, annot, body) => Term::lam(
            n.clone(),
            annot.as_ref().map(|a| inst(a, sm, depth)),
            inst(body, sm, depth + 1),
        ),
        Term::Pi(n, dom, cod) => {
            Term::pi(n.clone(), inst(dom, sm, depth), inst(cod, sm, depth + 1))
        }
    }
}

/// Builds the solution for a pattern variable applied to `captured` bound
/// variables, matched against `t` under `local_depth` binders crossed since
/// the rewrite position.
///
/// The solution abstracts the captured variables; any other local variable
/// occurring free in `t` makes the match fail (`None`). Ambient variables
/// (bound outside the rewrite position) are re-indexed to the position the
/// solution will be placed at.
pub fn abstract_solution(t: &TermRef, captured: &[usize], local_depth: usize) -> Option<TermRef> {
    let n = captured.len();
    let body = reindex(t, captured, local_depth, n, 0)?;
    let mut solution = body;
    for k in (0..n).rev() {
        solution = Term::lam(format!("v{k}"), None, solution);
    }
    Some(solution)
}

fn reindex(
    t: &TermRef,
    captured: &[usize],
    local_depth: usize,
    n: usize,
    inner: usize,
) -> Option<TermRef> {
    match &**t {
        Term::Type | Term::Kind | Term::Const(_) => Some(t.clone()),
        Term::BVar(i) => {
            let i = *i;
            if i < inner {
                Some(t.clone()) // bound within the matched subterm
            } else if i - inner < local_depth {
                let local = i - inner;
                let pos = captured.iter().position(|&c| c == local)?;
                // captured[pos] becomes the pos-th abstraction, counted
                // from the outside in.
                Some(Term::bvar(inner + n - 1 - pos))
            } else {
                // Ambient variable: remove the local binders, add ours.
                Some(Term::bvar(i - local_depth + n))
            }
        }
        Term::App(f, a) => Some(Term::app(
            reindex(f, captured, local_depth, n, inner)?,
            reindex(a, captured, local_depth, n, inner)?,
        )),
        Term::Lam(name, annot, body) => {
            let annot = match annot {
                Some(a) => Some(reindex(a, captured, local_depth, n, inner)?),
                None => None,
            };
            Some(Term::lam(
                name.clone(),
                annot,
                reindex(body, captured, local_depth, n, inner + 1)?,
            ))
        }
        Term::Pi(name, dom, cod) => Some(Term::pi(
            name.clone(),
            reindex(dom, captured, local_depth, n, inner)?,
            reindex(cod, captured, local_depth, n, inner + 1)?,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Term;

    fn c(n: &str) -> TermRef {
        Term::constant(n)
    }

    #[test]
    fn simple_first_order_pattern() {
        // plus 0 y with pattern variable y
        let lhs = Term::apps(c("plus"), [c("0"), c("y")]);
        let (head, args) = pattern_of_lhs(&lhs, &["y".into()]).unwrap();
        assert_eq!(head, "plus");
        assert_eq!(args.len(), 2);
        assert!(matches!(&args[0], Pattern::Const(z) if z == "0"));
        assert!(matches!(&args[1], Pattern::Var(y, ix) if y == "y" && ix.is_empty()));
    }

    #[test]
    fn variable_headed_lhs_is_rejected() {
        let lhs = c("x");
        let err = pattern_of_lhs(&lhs, &["x".into()]).unwrap_err();
        assert_eq!(err.category, Category::IllFormedPattern);
    }

    #[test]
    fn non_linear_lhs_is_rejected() {
        let lhs = Term::apps(c("eq"), [c("x"), c("x")]);
        let err = pattern_of_lhs(&lhs, &["x".into()]).unwrap_err();
        assert_eq!(err.category, Category::NonLinearPattern);
    }

    #[test]
    fn miller_pattern_under_binder() {
        // forall a (x => p x)
        let lhs = Term::apps(
            c("forall"),
            [c("a"), Term::lam("x", None, Term::app(c("p"), Term::bvar(0)))],
        );
        let (head, args) = pattern_of_lhs(&lhs, &["a".into(), "p".into()]).unwrap();
        assert_eq!(head, "forall");
        match &args[1] {
            Pattern::Lam(_, body) => match &**body {
                Pattern::Var(p, ix) => {
                    assert_eq!(p, "p");
                    assert_eq!(ix, &[0]);
                }
                other => panic!("unexpected body {other:?}"),
            },
            other => panic!("unexpected arg {other:?}"),
        }
    }

    #[test]
    fn pattern_variable_applied_to_non_variable_is_rejected() {
        let lhs = Term::app(c("f"), Term::app(c("p"), c("0")));
        let err = pattern_of_lhs(&lhs, &["p".into()]).unwrap_err();
        assert_eq!(err.category, Category::IllFormedPattern);
    }

    #[test]
    fn pattern_variable_applied_twice_to_same_binder_is_rejected() {
        let body = Term::apps(c("p"), [Term::bvar(0), Term::bvar(0)]);
        let lhs = Term::app(c("f"), Term::lam("x", None, body));
        let err = pattern_of_lhs(&lhs, &["p".into()]).unwrap_err();
        assert_eq!(err.category, Category::IllFormedPattern);
    }

    #[test]
    fn instantiate_beta_reduces_solution_applications() {
        // rhs = (x : A) -> eps (p x), p := v0 => imp (R v0) (R v0)
        let rhs = Term::pi(
            "x",
            c("A"),
            Term::app(c("eps"), Term::app(c("p"), Term::bvar(0))),
        );
        let mut sm = Subst::new();
        let sol = Term::lam(
            "v0",
            None,
            Term::apps(c("imp"), [Term::app(c("R"), Term::bvar(0)), Term::app(c("R"), Term::bvar(0))]),
        );
        sm.insert("p".into(), sol);
        let out = instantiate(&rhs, &sm);
        let expected = Term::pi(
            "x",
            c("A"),
            Term::app(
                c("eps"),
                Term::apps(
                    c("imp"),
                    [Term::app(c("R"), Term::bvar(0)), Term::app(c("R"), Term::bvar(0))],
                ),
            ),
        );
        assert!(out.alpha_eq(&expected), "got {out}");
    }

    #[test]
    fn abstract_solution_captures_and_reindexes() {
        // Matching F[x] (captured = [0]) against g x under one binder:
        // solution is v0 => g v0.
        let t = Term::app(c("g"), Term::bvar(0));
        let sol = abstract_solution(&t, &[0], 1).unwrap();
        let expected = Term::lam("v0", None, Term::app(c("g"), Term::bvar(0)));
        assert!(sol.alpha_eq(&expected));
    }

    #[test]
    fn abstract_solution_rejects_escaping_locals() {
        // The matched term uses a local binder the pattern did not capture.
        let t = Term::app(c("g"), Term::bvar(1));
        assert!(abstract_solution(&t, &[0], 2).is_none());
    }

    #[test]
    fn abstract_solution_keeps_ambient_variables() {
        // Under 1 local binder, BVar 1 is ambient; with one captured
        // variable the solution still refers to it (now at index 1).
        let t = Term::apps(c("g"), [Term::bvar(0), Term::bvar(1)]);
        let sol = abstract_solution(&t, &[0], 1).unwrap();
        let expected = Term::lam("v0", None, Term::apps(c("g"), [Term::bvar(0), Term::bvar(1)]));
        assert!(sol.alpha_eq(&expected));
    }
}
