//! P-formulas: Lukasiewicz combinations of graded atoms `P(Phi)` over MEL
//! formulas, plus rational truth constants.
//!
//! `B(phi)` abbreviates `P([](phi))` and evaluates to the belief degree of
//! `phi`. Atoms evaluate through the mass function, truth constants to their
//! own value, and connectives through the Lukasiewicz truth functions; every
//! value is an exact rational in [0,1].

use crate::belief::{mu_of_mel, MassFunction};
use crate::mel::MelFormula;
use crate::propcore::{PropFormula, Vocabulary};
use crate::rat::{fmt_rat, in_unit, Rat};
use crate::syntax;
use num::{One, Signed, Zero};
use std::fmt;

/// The Lukasiewicz connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LukConn {
    /// `1 - x`
    Not,
    /// `min(1, 1 - x + y)`
    Implies,
    /// strong conjunction, `max(0, x + y - 1)`
    StrongAnd,
    /// strong disjunction, `min(1, x + y)`
    StrongOr,
    /// difference, `max(0, x - y)`
    Diff,
    /// equivalence, `1 - |x - y|`
    Iff,
    /// weak conjunction, `min(x, y)`
    WeakAnd,
    /// weak disjunction, `max(x, y)`
    WeakOr,
}

/// Applies a connective's truth function to arguments in [0,1].
pub fn luk_apply(conn: LukConn, args: &[Rat]) -> Rat {
    debug_assert!(args.iter().all(in_unit));
    let one = Rat::one;
    let zero = Rat::zero;
    match conn {
        LukConn::Not => one() - &args[0],
        LukConn::Implies => (one() - &args[0] + &args[1]).min(one()),
        LukConn::StrongAnd => (&args[0] + &args[1] - one()).max(zero()),
        LukConn::StrongOr => (&args[0] + &args[1]).min(one()),
        LukConn::Diff => (&args[0] - &args[1]).max(zero()),
        LukConn::Iff => one() - (&args[0] - &args[1]).abs(),
        LukConn::WeakAnd => args[0].clone().min(args[1].clone()),
        LukConn::WeakOr => args[0].clone().max(args[1].clone()),
    }
}

/// A P-formula. The tree keeps the connective as written; evaluation applies
/// the truth functions directly, and [`PFormula::to_primitive`] rewrites into
/// the primitive base (implication and truth constants).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PFormula {
    /// `P(Phi)` for a MEL formula `Phi`.
    Atom(MelFormula),
    /// Rational truth constant in [0,1].
    Const(Rat),
    Not(Box<PFormula>),
    Implies(Box<PFormula>, Box<PFormula>),
    StrongAnd(Box<PFormula>, Box<PFormula>),
    StrongOr(Box<PFormula>, Box<PFormula>),
    Diff(Box<PFormula>, Box<PFormula>),
    Iff(Box<PFormula>, Box<PFormula>),
    WeakAnd(Box<PFormula>, Box<PFormula>),
    WeakOr(Box<PFormula>, Box<PFormula>),
}

impl PFormula {
    /// `B(phi)`, shorthand for `P([](phi))`.
    pub fn belief(phi: PropFormula) -> Self {
        PFormula::Atom(MelFormula::Box(phi))
    }

    pub fn constant(r: Rat) -> Self {
        assert!(in_unit(&r), "truth constants live in [0,1]");
        PFormula::Const(r)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: PFormula) -> Self {
        PFormula::Not(Box::new(a))
    }

    pub fn implies(a: PFormula, b: PFormula) -> Self {
        PFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn strong_and(a: PFormula, b: PFormula) -> Self {
        PFormula::StrongAnd(Box::new(a), Box::new(b))
    }

    pub fn strong_or(a: PFormula, b: PFormula) -> Self {
        PFormula::StrongOr(Box::new(a), Box::new(b))
    }

    pub fn diff(a: PFormula, b: PFormula) -> Self {
        PFormula::Diff(Box::new(a), Box::new(b))
    }

    pub fn iff(a: PFormula, b: PFormula) -> Self {
        PFormula::Iff(Box::new(a), Box::new(b))
    }

    pub fn weak_and(a: PFormula, b: PFormula) -> Self {
        PFormula::WeakAnd(Box::new(a), Box::new(b))
    }

    pub fn weak_or(a: PFormula, b: PFormula) -> Self {
        PFormula::WeakOr(Box::new(a), Box::new(b))
    }

    /// Rewrites every derived connective into the primitive base
    /// `{->, constants}` following the defining equations: `!a = a -> 0`,
    /// `a (+) b = !a -> b`, `a && b = !(!a (+) !b)`, `a (-) b = a && !b`,
    /// `a <-> b = (a -> b) && (b -> a)`, `a /\ b = a && (a -> b)`,
    /// `a \/ b = !(!a /\ !b)`.
    pub fn to_primitive(&self) -> PFormula {
        fn neg(a: PFormula) -> PFormula {
            PFormula::implies(a, PFormula::Const(Rat::zero()))
        }
        fn oplus(a: PFormula, b: PFormula) -> PFormula {
            PFormula::implies(neg(a), b)
        }
        fn sand(a: PFormula, b: PFormula) -> PFormula {
            neg(oplus(neg(a), neg(b)))
        }
        fn wand(a: PFormula, b: PFormula) -> PFormula {
            sand(a.clone(), PFormula::implies(a, b))
        }
        match self {
            PFormula::Atom(_) | PFormula::Const(_) => self.clone(),
            PFormula::Not(a) => neg(a.to_primitive()),
            PFormula::Implies(a, b) => PFormula::implies(a.to_primitive(), b.to_primitive()),
            PFormula::StrongOr(a, b) => oplus(a.to_primitive(), b.to_primitive()),
            PFormula::StrongAnd(a, b) => sand(a.to_primitive(), b.to_primitive()),
            PFormula::Diff(a, b) => sand(a.to_primitive(), neg(b.to_primitive())),
            PFormula::Iff(a, b) => {
                let a = a.to_primitive();
                let b = b.to_primitive();
                sand(
                    PFormula::implies(a.clone(), b.clone()),
                    PFormula::implies(b, a),
                )
            }
            PFormula::WeakAnd(a, b) => wand(a.to_primitive(), b.to_primitive()),
            PFormula::WeakOr(a, b) => neg(wand(neg(a.to_primitive()), neg(b.to_primitive()))),
        }
    }

    /// All `P`-atoms of the formula, left to right.
    pub fn atoms(&self) -> Vec<&MelFormula> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a MelFormula>) {
        match self {
            PFormula::Atom(phi) => out.push(phi),
            PFormula::Const(_) => {}
            PFormula::Not(a) => a.collect_atoms(out),
            PFormula::Implies(a, b)
            | PFormula::StrongAnd(a, b)
            | PFormula::StrongOr(a, b)
            | PFormula::Diff(a, b)
            | PFormula::Iff(a, b)
            | PFormula::WeakAnd(a, b)
            | PFormula::WeakOr(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> PDisplay<'a> {
        PDisplay { f: self, vocab }
    }
}

/// Evaluates a P-formula to its exact truth degree under a mass-function
/// model: atoms via the probability of their MEL formula, constants to their
/// value, connectives via the truth functions.
pub fn p_eval(vocab: &Vocabulary, m: &MassFunction, f: &PFormula) -> Rat {
    match f {
        PFormula::Atom(phi) => mu_of_mel(vocab, m, phi),
        PFormula::Const(r) => r.clone(),
        PFormula::Not(a) => luk_apply(LukConn::Not, &[p_eval(vocab, m, a)]),
        PFormula::Implies(a, b) => luk_apply(
            LukConn::Implies,
            &[p_eval(vocab, m, a), p_eval(vocab, m, b)],
        ),
        PFormula::StrongAnd(a, b) => luk_apply(
            LukConn::StrongAnd,
            &[p_eval(vocab, m, a), p_eval(vocab, m, b)],
        ),
        PFormula::StrongOr(a, b) => luk_apply(
            LukConn::StrongOr,
            &[p_eval(vocab, m, a), p_eval(vocab, m, b)],
        ),
        PFormula::Diff(a, b) => {
            luk_apply(LukConn::Diff, &[p_eval(vocab, m, a), p_eval(vocab, m, b)])
        }
        PFormula::Iff(a, b) => luk_apply(LukConn::Iff, &[p_eval(vocab, m, a), p_eval(vocab, m, b)]),
        PFormula::WeakAnd(a, b) => luk_apply(
            LukConn::WeakAnd,
            &[p_eval(vocab, m, a), p_eval(vocab, m, b)],
        ),
        PFormula::WeakOr(a, b) => {
            luk_apply(LukConn::WeakOr, &[p_eval(vocab, m, a), p_eval(vocab, m, b)])
        }
    }
}

/// Parses the P-formula grammar
/// `pf := RAT | "P" "(" mel ")" | "B" "(" prop ")" | "!" pf |
/// pf ("&&"|"(+)"|"(-)"|"->"|"<->"|"/\"|"\/") pf | "(" pf ")"`.
pub fn parse_p(text: &str, vocab: &Vocabulary) -> Result<PFormula, syntax::ParseError> {
    syntax::parse_p(text, vocab)
}

/// One evaluated axiom instance: passes iff the value is exactly 1.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: String,
    pub value: Rat,
    pub pass: bool,
}

/// Result of evaluating the probabilistic axiom schemata under one mass
/// function.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn prop_pool(vocab: &Vocabulary) -> Vec<PropFormula> {
    use crate::propcore::VarId;
    let p = PropFormula::var(VarId(0));
    let mut pool = vec![
        p.clone(),
        PropFormula::not(p.clone()),
        PropFormula::or(p.clone(), PropFormula::not(p.clone())),
        PropFormula::and(p.clone(), PropFormula::not(p.clone())),
    ];
    if vocab.n_vars() >= 2 {
        let q = PropFormula::var(VarId(1));
        pool.push(q.clone());
        pool.push(PropFormula::and(p.clone(), q.clone()));
        pool.push(PropFormula::or(p.clone(), q.clone()));
        pool.push(PropFormula::implies(p, q));
    }
    pool
}

fn mel_pool(vocab: &Vocabulary) -> Vec<MelFormula> {
    let props = prop_pool(vocab);
    let mut pool: Vec<MelFormula> = props.iter().cloned().map(MelFormula::Box).collect();
    pool.push(MelFormula::diamond(props[0].clone()));
    if props.len() >= 6 {
        pool.push(MelFormula::or(
            MelFormula::Box(props[0].clone()),
            MelFormula::Box(props[4].clone()),
        ));
        pool.push(MelFormula::not(MelFormula::Box(props[4].clone())));
    }
    pool
}

/// Instances of the MEL axioms K, D and Nec over the formula pool; all are
/// validities, so they feed the FP0 checks.
fn mel_validity_pool(vocab: &Vocabulary) -> Vec<(String, MelFormula)> {
    let props = prop_pool(vocab);
    let mut out = Vec::new();
    for (i, a) in props.iter().enumerate() {
        for (j, b) in props.iter().enumerate() {
            out.push((
                format!("K[{i},{j}]"),
                MelFormula::implies(
                    MelFormula::Box(PropFormula::implies(a.clone(), b.clone())),
                    MelFormula::implies(MelFormula::Box(a.clone()), MelFormula::Box(b.clone())),
                ),
            ));
        }
        out.push((
            format!("D[{i}]"),
            MelFormula::implies(MelFormula::Box(a.clone()), MelFormula::diamond(a.clone())),
        ));
        if a.is_tautology(vocab) {
            out.push((format!("Nec[{i}]"), MelFormula::Box(a.clone())));
        }
    }
    out
}

/// Evaluates every generated instance of the probabilistic axioms FP0-FP3
/// (with the additivity variant of FP3) and the box-disjunction theorem
/// under the given mass function. Every value must be exactly 1.
pub fn axiom_suite(vocab: &Vocabulary, m: &MassFunction) -> AxiomReport {
    let mut checks = Vec::new();
    let mut push = |name: String, value: Rat| {
        let pass = value.is_one();
        checks.push(AxiomCheck { name, value, pass });
    };

    for (name, validity) in mel_validity_pool(vocab) {
        let f = PFormula::Atom(validity);
        push(format!("FP0/{name}"), p_eval(vocab, m, &f));
    }

    let pool = mel_pool(vocab);
    for (i, phi) in pool.iter().enumerate() {
        let p_phi = PFormula::Atom(phi.clone());
        // FP2: P(!Phi) <-> !P(Phi)
        let fp2 = PFormula::iff(
            PFormula::Atom(MelFormula::not(phi.clone())),
            PFormula::not(p_phi.clone()),
        );
        push(format!("FP2[{i}]"), p_eval(vocab, m, &fp2));

        for (j, psi) in pool.iter().enumerate() {
            let p_psi = PFormula::Atom(psi.clone());
            // FP1: P(Phi -> Psi) -> (P Phi -> P Psi)
            let fp1 = PFormula::implies(
                PFormula::Atom(MelFormula::implies(phi.clone(), psi.clone())),
                PFormula::implies(p_phi.clone(), p_psi.clone()),
            );
            push(format!("FP1[{i},{j}]"), p_eval(vocab, m, &fp1));

            // FP3: P(Phi | Psi) <-> ((P Phi -> P(Phi & Psi)) -> P Psi)
            let p_or = PFormula::Atom(MelFormula::or(phi.clone(), psi.clone()));
            let p_and = PFormula::Atom(MelFormula::and(phi.clone(), psi.clone()));
            let fp3 = PFormula::iff(
                p_or.clone(),
                PFormula::implies(
                    PFormula::implies(p_phi.clone(), p_and.clone()),
                    p_psi.clone(),
                ),
            );
            push(format!("FP3[{i},{j}]"), p_eval(vocab, m, &fp3));

            // Additivity variant: P(Phi | Psi) <-> P Phi (+) (P Psi (-) P(Phi & Psi))
            let fp3_add = PFormula::iff(
                p_or,
                PFormula::strong_or(p_phi.clone(), PFormula::diff(p_psi, p_and)),
            );
            push(format!("FP3+[{i},{j}]"), p_eval(vocab, m, &fp3_add));
        }
    }

    // P(OR of boxes) -> P(box of OR), at widths 2 and 3.
    let props = prop_pool(vocab);
    for (i, a) in props.iter().enumerate() {
        for (j, b) in props.iter().enumerate() {
            let boxes = MelFormula::or(MelFormula::Box(a.clone()), MelFormula::Box(b.clone()));
            let joined = MelFormula::Box(PropFormula::or(a.clone(), b.clone()));
            let thm = PFormula::implies(PFormula::Atom(boxes), PFormula::Atom(joined));
            push(format!("BoxOr2[{i},{j}]"), p_eval(vocab, m, &thm));
        }
    }
    if props.len() >= 3 {
        let (a, b, c) = (&props[0], &props[1], &props[2]);
        let boxes = MelFormula::or(
            MelFormula::or(MelFormula::Box(a.clone()), MelFormula::Box(b.clone())),
            MelFormula::Box(c.clone()),
        );
        let joined = MelFormula::Box(PropFormula::or(
            PropFormula::or(a.clone(), b.clone()),
            c.clone(),
        ));
        let thm = PFormula::implies(PFormula::Atom(boxes), PFormula::Atom(joined));
        push("BoxOr3".to_string(), p_eval(vocab, m, &thm));
    }

    AxiomReport { checks }
}

pub struct PDisplay<'a> {
    f: &'a PFormula,
    vocab: &'a Vocabulary,
}

// Precedence bands: atoms 4, ! 3, multiplicative 2, additive 1, ->/<-> 0.
fn p_prec(f: &PFormula) -> u8 {
    match f {
        PFormula::Atom(_) | PFormula::Const(_) => 4,
        PFormula::Not(_) => 3,
        PFormula::StrongAnd(..) | PFormula::WeakAnd(..) => 2,
        PFormula::StrongOr(..) | PFormula::Diff(..) | PFormula::WeakOr(..) => 1,
        PFormula::Implies(..) | PFormula::Iff(..) => 0,
    }
}

fn fmt_p(
    f: &PFormula,
    vocab: &Vocabulary,
    out: &mut fmt::Formatter<'_>,
    min_prec: u8,
) -> fmt::Result {
    let prec = p_prec(f);
    let needs_parens = prec < min_prec;
    if needs_parens {
        write!(out, "(")?;
    }
    let binary = |out: &mut fmt::Formatter<'_>,
                  a: &PFormula,
                  op: &str,
                  b: &PFormula,
                  level: u8|
     -> fmt::Result {
        fmt_p(a, vocab, out, level)?;
        write!(out, " {op} ")?;
        fmt_p(b, vocab, out, level + 1)
    };
    match f {
        PFormula::Atom(MelFormula::Box(g)) => write!(out, "B({})", g.display(vocab))?,
        PFormula::Atom(phi) => write!(out, "P({})", phi.display(vocab))?,
        PFormula::Const(r) => write!(out, "{}", fmt_rat(r))?,
        PFormula::Not(a) => {
            write!(out, "!")?;
            fmt_p(a, vocab, out, 3)?;
        }
        PFormula::StrongAnd(a, b) => binary(out, a, "&&", b, 2)?,
        PFormula::WeakAnd(a, b) => binary(out, a, "/\\", b, 2)?,
        PFormula::StrongOr(a, b) => binary(out, a, "(+)", b, 1)?,
        PFormula::Diff(a, b) => binary(out, a, "(-)", b, 1)?,
        PFormula::WeakOr(a, b) => binary(out, a, "\\/", b, 1)?,
        PFormula::Implies(a, b) => {
            fmt_p(a, vocab, out, 1)?;
            write!(out, " -> ")?;
            if matches!(**b, PFormula::Iff(..)) {
                write!(out, "(")?;
                fmt_p(b, vocab, out, 0)?;
                write!(out, ")")?;
            } else {
                fmt_p(b, vocab, out, 0)?;
            }
        }
        PFormula::Iff(a, b) => {
            fmt_p(a, vocab, out, 1)?;
            write!(out, " <-> ")?;
            if matches!(**b, PFormula::Implies(..)) {
                write!(out, "(")?;
                fmt_p(b, vocab, out, 0)?;
                write!(out, ")")?;
            } else {
                fmt_p(b, vocab, out, 0)?;
            }
        }
    }
    if needs_parens {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for PDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_p(self.f, self.vocab, out, 0)
    }
}
