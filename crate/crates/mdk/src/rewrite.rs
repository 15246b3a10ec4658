//! Reduction: beta steps plus the signature's rewrite rules.
//!
//! The strategy is leftmost-outermost: [`Engine::whnf`] exposes the head,
//! normalizing arguments only as far as rule matching demands, and
//! [`Engine::snf`] recurses from there. Rules attached to one constant are
//! tried in declaration order; the first match wins, so reduction is a
//! deterministic function of the signature.
//!
//! Termination of user rule systems is not checked. Every step draws from
//! a fuel budget; running out raises `FuelExhausted`, which signals
//! possible divergence, never a wrong answer.

use crate::error::{Error, Result};
use crate::pattern::{abstract_solution, instantiate, Pattern, Subst};
use crate::sig::{SigEntry, Signature};
use crate::term::{spine, subst, Context, Name, Term, TermRef};

/// Step budget and diagnostics for one reduction-using operation.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Maximum number of beta/rewrite steps.
    pub fuel: u64,
    /// Whether each step is reported on the diagnostic stream.
    pub trace: Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trace {
    Off,
    /// Print `STEP <k>: <rule-head or beta> : <term after step>` to stderr.
    Steps,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { fuel: crate::DEFAULT_FUEL, trace: Trace::Off }
    }
}

impl Limits {
    pub fn with_fuel(fuel: u64) -> Self {
        Limits { fuel, ..Limits::default() }
    }
}

/// Weak-head normal form: no beta- or rewrite-redex at the head.
pub fn whnf(sig: &Signature, t: &TermRef, limits: Limits) -> Result<TermRef> {
    Engine::new(sig, limits).whnf(t)
}

/// Strong normal form: no redex anywhere. Fuel is shared across the whole
/// traversal.
pub fn snf(sig: &Signature, t: &TermRef, limits: Limits) -> Result<TermRef> {
    Engine::new(sig, limits).snf(t)
}

/// A single head rewrite step (rule application or definition unfolding),
/// or `None` when no rule matches. Beta redexes are not contracted.
pub fn head_rewrite(sig: &Signature, t: &TermRef, limits: Limits) -> Result<Option<TermRef>> {
    Engine::new(sig, limits).head_rewrite(t)
}

/// Matches a pattern against a term, weak-head normalizing subterms as the
/// pattern demands. Failure is a normal outcome; `Err` is fuel exhaustion.
pub fn match_pattern(
    sig: &Signature,
    pattern: &Pattern,
    t: &TermRef,
    limits: Limits,
) -> Result<Option<Subst>> {
    let mut engine = Engine::new(sig, limits);
    let mut solution = Subst::new();
    if engine.match_at_head(pattern, t, &mut solution)? {
        Ok(Some(solution))
    } else {
        Ok(None)
    }
}

enum StepKind<'a> {
    Beta,
    Rule(&'a Name),
}

/// A reduction machine over an immutable signature. Cheap to create; fuel
/// is consumed across every operation performed on the same engine.
pub struct Engine<'s> {
    sig: &'s Signature,
    remaining: u64,
    used: u64,
    trace: Trace,
    /// Binder names crossed so far, for rendering traced open terms.
    binders: Vec<String>,
}

impl<'s> Engine<'s> {
    pub fn new(sig: &'s Signature, limits: Limits) -> Self {
        Engine {
            sig,
            remaining: limits.fuel,
            used: 0,
            trace: limits.trace,
            binders: Vec::new(),
        }
    }

    /// Steps consumed so far.
    pub fn steps_used(&self) -> u64 {
        self.used
    }

    pub fn signature(&self) -> &'s Signature {
        self.sig
    }

    fn tick(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::fuel_exhausted(self.used));
        }
        self.remaining -= 1;
        self.used += 1;
        Ok(())
    }

    fn trace_step(&self, kind: StepKind, head: &TermRef, args: &[TermRef]) {
        if self.trace == Trace::Off {
            return;
        }
        let term = Term::apps(head.clone(), args.iter().cloned());
        let mut ctx = Context::new();
        for name in &self.binders {
            ctx.push(name.clone(), Term::sort_type());
        }
        let cause = match kind {
            StepKind::Beta => "beta",
            StepKind::Rule(name) => name.as_str(),
        };
        eprintln!(
            "STEP {}: {} : {}",
            self.used,
            cause,
            crate::syntax::print_term(&term, &ctx)
        );
    }

    /// Reduces until the head is neither a beta-redex nor a rewrite-redex.
    /// Spine arguments are untouched except where matching forced them.
    pub fn whnf(&mut self, t: &TermRef) -> Result<TermRef> {
        let sig = self.sig;
        let (mut head, mut args) = spine(t);
        let mut consumed = 0usize; // args[..consumed] have been used up
        loop {
            // A contractum can itself be an application spine; flatten it
            // before looking at the head again.
            if matches!(&*head, Term::App(..)) {
                let (h, mut more) = spine(&head);
                more.extend_from_slice(&args[consumed..]);
                head = h;
                args = more;
                consumed = 0;
            }
            let current = head.clone();
            match &*current {
                Term::Lam(_, _, body) if consumed < args.len() => {
                    self.tick()?;
                    head = subst(body, &args[consumed]);
                    consumed += 1;
                    self.trace_step(StepKind::Beta, &head, &args[consumed..]);
                }
                Term::Const(c) => match sig.get(c) {
                    Some(SigEntry::Definition { body, .. }) => {
                        self.tick()?;
                        head = body.clone();
                        self.trace_step(StepKind::Rule(c), &head, &args[consumed..]);
                    }
                    Some(SigEntry::Definable { .. }) => {
                        match self.try_rules(c, &args[consumed..])? {
                            Some((new_head, used_args)) => {
                                self.tick()?;
                                head = new_head;
                                consumed += used_args;
                                self.trace_step(StepKind::Rule(c), &head, &args[consumed..]);
                            }
                            None => break,
                        }
                    }
                    _ => break,
                },
                _ => break,
            }
        }
        Ok(Term::apps(head, args[consumed..].iter().cloned()))
    }

    /// First matching rule of `c` against a prefix of `args`, in
    /// declaration order; returns the instantiated right-hand side and how
    /// many arguments the rule consumed.
    fn try_rules(&mut self, c: &str, args: &[TermRef]) -> Result<Option<(TermRef, usize)>> {
        let sig = self.sig;
        let rules = sig.rules(c);
        'rules: for rule in rules {
            if rule.arity() > args.len() {
                continue; // arity mismatch fails fast, before matching
            }
            let mut solution = Subst::new();
            let mut forced = Vec::with_capacity(rule.arity());
            for (pattern, arg) in rule.args.iter().zip(args) {
                match self.match_one(pattern, arg, 0, &mut solution)? {
                    Some(f) => forced.push(f),
                    None => continue 'rules,
                }
            }
            if cfg!(debug_assertions) {
                // Soundness of match: instantiating the pattern with the
                // solution reproduces the matched (forced) arguments.
                for (pattern, f) in rule.args.iter().zip(&forced) {
                    let inst = instantiate(&pattern.to_term(), &solution);
                    debug_assert!(
                        inst.alpha_eq(f),
                        "match unsound for `{c}`: {inst} vs {f}"
                    );
                }
            }
            let rhs = instantiate(&rule.rhs, &solution);
            return Ok(Some((rhs, rule.arity())));
        }
        Ok(None)
    }

    /// One head rewrite step: a rule application or definition unfolding.
    pub fn head_rewrite(&mut self, t: &TermRef) -> Result<Option<TermRef>> {
        let sig = self.sig;
        let (head, args) = spine(t);
        let c = match &*head {
            Term::Const(c) => c,
            _ => return Ok(None),
        };
        match sig.get(c) {
            Some(SigEntry::Definition { body, .. }) => {
                self.tick()?;
                Ok(Some(Term::apps(body.clone(), args)))
            }
            Some(SigEntry::Definable { .. }) => match self.try_rules(c, &args)? {
                Some((rhs, used)) => {
                    self.tick()?;
                    Ok(Some(Term::apps(rhs, args[used..].iter().cloned())))
                }
                None => Ok(None),
            },
            _ => Ok(None),
        }
    }

    /// Strong normalization; no beta- or rewrite-redex remains anywhere in
    /// the result.
    pub fn snf(&mut self, t: &TermRef) -> Result<TermRef> {
        let t = self.whnf(t)?;
        match &*t {
            Term::Type | Term::Kind | Term::Const(_) | Term::BVar(_) => Ok(t),
            Term::App(..) => {
                let (head, args) = spine(&t);
                let head = match &*head {
                    // Stuck spine heads are constants or variables; a
                    // product head (ill-typed but representable) still gets
                    // its components normalized.
                    Term::Pi(..) | Term::Lam(..) => self.snf(&head)?,
                    _ => head,
                };
                let args = args
                    .iter()
                    .map(|a| self.snf(a))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Term::apps(head, args))
            }
            Term::Lam(n, annot, body) => {
                let annot = annot.as_ref().map(|a| self.snf(a)).transpose()?;
                self.binders.push(n.clone());
                let body = self.snf(body);
                self.binders.pop();
                Ok(Term::lam(n.clone(), annot, body?))
            }
            Term::Pi(n, dom, cod) => {
                let dom = self.snf(dom)?;
                self.binders.push(n.clone());
                let cod = self.snf(cod);
                self.binders.pop();
                Ok(Term::pi(n.clone(), dom, cod?))
            }
        }
    }

    /// Matches a whole left-hand side against a term whose head spine the
    /// caller has already exposed. The spine of the redex itself is
    /// compared structurally — normalizing it would contract the very
    /// redex being inspected — while arguments go through the on-demand
    /// machinery.
    fn match_at_head(
        &mut self,
        pattern: &Pattern,
        t: &TermRef,
        solution: &mut Subst,
    ) -> Result<bool> {
        match pattern {
            Pattern::App(pf, pa) => match &**t {
                Term::App(f, a) => Ok(self.match_at_head(pf, f, solution)?
                    && self.match_one(pa, a, 0, solution)?.is_some()),
                _ => Ok(false),
            },
            Pattern::Const(c) => Ok(matches!(&**t, Term::Const(d) if d == c)),
            _ => Ok(self.match_one(pattern, t, 0, solution)?.is_some()),
        }
    }

    /// Matches one pattern against one term at the given local binder
    /// depth. On success the substitution is extended and the "forced"
    /// form of the term (with the weak-head normalizations matching
    /// performed) is returned.
    fn match_one(
        &mut self,
        pattern: &Pattern,
        t: &TermRef,
        depth: usize,
        solution: &mut Subst,
    ) -> Result<Option<TermRef>> {
        match pattern {
            Pattern::Var(name, captured) => {
                match abstract_solution(t, captured, depth) {
                    Some(sol) => {
                        debug_assert!(
                            !solution.contains_key(name),
                            "left-linearity violated for `{name}`"
                        );
                        solution.insert(name.clone(), sol);
                        Ok(Some(t.clone()))
                    }
                    None => Ok(None), // an uncaptured local variable escapes
                }
            }
            Pattern::Const(c) => {
                let t = self.whnf(t)?;
                match &*t {
                    Term::Const(d) if d == c => Ok(Some(t.clone())),
                    _ => Ok(None),
                }
            }
            Pattern::App(pf, pa) => {
                let t = self.whnf(t)?;
                match &*t {
                    Term::App(f, a) => {
                        let ff = match self.match_one(pf, f, depth, solution)? {
                            Some(ff) => ff,
                            None => return Ok(None),
                        };
                        let fa = match self.match_one(pa, a, depth, solution)? {
                            Some(fa) => fa,
                            None => return Ok(None),
                        };
                        Ok(Some(Term::app(ff, fa)))
                    }
                    _ => Ok(None),
                }
            }
            Pattern::Lam(_, pbody) => {
                let t = self.whnf(t)?;
                match &*t {
                    Term::Lam(n, _, body) => {
                        self.binders.push(n.clone());
                        let res = self.match_one(pbody, body, depth + 1, solution);
                        self.binders.pop();
                        match res? {
                            // Annotations are not observed by patterns.
                            Some(fb) => Ok(Some(Term::lam(n.clone(), None, fb))),
                            None => Ok(None),
                        }
                    }
                    _ => Ok(None),
                }
            }
        }
    }
}
