//! Modal-depth-1 epistemic layer: Boolean combinations of boxed classical
//! formulas, evaluated on epistemic models (non-empty world sets).
//!
//! `E |= [](phi)` holds iff `E` is contained in `Mod(phi)`. Validity and
//! consequence are decided by enumerating all non-empty subsets of the world
//! set, which the soundness/completeness of the axiomatisation (K, D, Nec)
//! makes equivalent to derivability for finite premise sets.

use crate::propcore::{formula_of_set, minterm, PropFormula, Vocabulary, WorldSet};
use crate::syntax;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MelError {
    #[error("epistemic models must be non-empty world sets")]
    EmptyModel,
}

/// MEL formula: atoms are exactly boxed propositional formulas, so nested
/// modalities and bare propositional atoms are unrepresentable. `<>(phi)` is
/// parsed away as `![](!phi)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MelFormula {
    Box(PropFormula),
    Not(std::boxed::Box<MelFormula>),
    And(std::boxed::Box<MelFormula>, std::boxed::Box<MelFormula>),
    Or(std::boxed::Box<MelFormula>, std::boxed::Box<MelFormula>),
    Implies(std::boxed::Box<MelFormula>, std::boxed::Box<MelFormula>),
    Iff(std::boxed::Box<MelFormula>, std::boxed::Box<MelFormula>),
}

impl MelFormula {
    pub fn boxed(f: PropFormula) -> Self {
        MelFormula::Box(f)
    }

    /// `<>phi` as the defined connective `![](!phi)`.
    pub fn diamond(f: PropFormula) -> Self {
        MelFormula::not(MelFormula::Box(PropFormula::not(f)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: MelFormula) -> Self {
        MelFormula::Not(Box::new(f))
    }

    pub fn and(a: MelFormula, b: MelFormula) -> Self {
        MelFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: MelFormula, b: MelFormula) -> Self {
        MelFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: MelFormula, b: MelFormula) -> Self {
        MelFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: MelFormula, b: MelFormula) -> Self {
        MelFormula::Iff(Box::new(a), Box::new(b))
    }

    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> MelDisplay<'a> {
        MelDisplay { f: self, vocab }
    }
}

/// A consistent epistemic state: a non-empty set of worlds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpistemicModel(WorldSet);

impl EpistemicModel {
    pub fn new(worlds: WorldSet) -> Result<Self, MelError> {
        if worlds.is_empty() {
            Err(MelError::EmptyModel)
        } else {
            Ok(EpistemicModel(worlds))
        }
    }

    pub fn worlds(self) -> WorldSet {
        self.0
    }
}

/// Truth of a MEL formula in an epistemic model.
pub fn mel_sat(vocab: &Vocabulary, model: EpistemicModel, phi: &MelFormula) -> bool {
    compile(vocab, phi).sat(model)
}

/// A MEL formula with the model set of every boxed atom precomputed, so that
/// repeated evaluation over many epistemic models is cheap.
#[derive(Debug, Clone)]
pub enum CompiledMel {
    Box(WorldSet),
    Not(std::boxed::Box<CompiledMel>),
    And(std::boxed::Box<CompiledMel>, std::boxed::Box<CompiledMel>),
    Or(std::boxed::Box<CompiledMel>, std::boxed::Box<CompiledMel>),
    Implies(std::boxed::Box<CompiledMel>, std::boxed::Box<CompiledMel>),
    Iff(std::boxed::Box<CompiledMel>, std::boxed::Box<CompiledMel>),
}

impl CompiledMel {
    pub fn sat(&self, model: EpistemicModel) -> bool {
        match self {
            CompiledMel::Box(mods) => model.worlds().is_subset(*mods),
            CompiledMel::Not(f) => !f.sat(model),
            CompiledMel::And(a, b) => a.sat(model) && b.sat(model),
            CompiledMel::Or(a, b) => a.sat(model) || b.sat(model),
            CompiledMel::Implies(a, b) => !a.sat(model) || b.sat(model),
            CompiledMel::Iff(a, b) => a.sat(model) == b.sat(model),
        }
    }
}

pub fn compile(vocab: &Vocabulary, phi: &MelFormula) -> CompiledMel {
    match phi {
        MelFormula::Box(f) => CompiledMel::Box(f.mod_set(vocab)),
        MelFormula::Not(f) => CompiledMel::Not(Box::new(compile(vocab, f))),
        MelFormula::And(a, b) => {
            CompiledMel::And(Box::new(compile(vocab, a)), Box::new(compile(vocab, b)))
        }
        MelFormula::Or(a, b) => {
            CompiledMel::Or(Box::new(compile(vocab, a)), Box::new(compile(vocab, b)))
        }
        MelFormula::Implies(a, b) => {
            CompiledMel::Implies(Box::new(compile(vocab, a)), Box::new(compile(vocab, b)))
        }
        MelFormula::Iff(a, b) => {
            CompiledMel::Iff(Box::new(compile(vocab, a)), Box::new(compile(vocab, b)))
        }
    }
}

/// All epistemic models of a formula, in increasing bitmask order.
pub fn models(vocab: &Vocabulary, phi: &MelFormula) -> Vec<EpistemicModel> {
    let compiled = compile(vocab, phi);
    vocab
        .nonempty_sets()
        .map(EpistemicModel)
        .filter(|e| compiled.sat(*e))
        .collect()
}

/// Validity by exhaustive enumeration of the `2^|Omega| - 1` models.
pub fn mel_valid(vocab: &Vocabulary, phi: &MelFormula) -> bool {
    let compiled = compile(vocab, phi);
    vocab
        .nonempty_sets()
        .all(|s| compiled.sat(EpistemicModel(s)))
}

/// Outcome of a consequence check; a failed check carries the first
/// countermodel in subset enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MelConsequence {
    pub holds: bool,
    pub countermodel: Option<EpistemicModel>,
}

/// Semantic consequence: every model of all premises is a model of the
/// conclusion.
pub fn mel_consequence(
    vocab: &Vocabulary,
    premises: &[MelFormula],
    conclusion: &MelFormula,
) -> MelConsequence {
    let compiled_premises: Vec<CompiledMel> = premises.iter().map(|p| compile(vocab, p)).collect();
    let compiled_conclusion = compile(vocab, conclusion);
    for s in vocab.nonempty_sets() {
        let e = EpistemicModel(s);
        if compiled_premises.iter().all(|p| p.sat(e)) && !compiled_conclusion.sat(e) {
            return MelConsequence {
                holds: false,
                countermodel: Some(e),
            };
        }
    }
    MelConsequence {
        holds: true,
        countermodel: None,
    }
}

/// The characteristic formula `Sigma_E = [](phi_E) /\ Delta(phi_E)` with
/// `Delta(phi_E) = AND_{w in E} ![]( phi_E & !sigma_w )`; its unique
/// epistemic model is `E` itself.
pub fn characteristic_formula(vocab: &Vocabulary, e: EpistemicModel) -> MelFormula {
    let phi_e = formula_of_set(vocab, e.worlds());
    let mut result = MelFormula::Box(phi_e.clone());
    for w in e.worlds().worlds() {
        let gap = PropFormula::and(phi_e.clone(), PropFormula::not(minterm(vocab, w)));
        result = MelFormula::and(result, MelFormula::not(MelFormula::Box(gap)));
    }
    result
}

/// Parses the MEL grammar
/// `mel := "[]" "(" prop ")" | "<>" "(" prop ")" | "!" mel |
/// mel ("&"|"|"|"->"|"<->") mel | "(" mel ")"`.
pub fn parse_mel(text: &str, vocab: &Vocabulary) -> Result<MelFormula, syntax::ParseError> {
    syntax::parse_mel(text, vocab)
}

pub struct MelDisplay<'a> {
    f: &'a MelFormula,
    vocab: &'a Vocabulary,
}

fn mel_prec(f: &MelFormula) -> u8 {
    match f {
        MelFormula::Box(_) => 4,
        MelFormula::Not(_) => 3,
        MelFormula::And(..) => 2,
        MelFormula::Or(..) => 1,
        MelFormula::Implies(..) | MelFormula::Iff(..) => 0,
    }
}

fn fmt_mel(
    f: &MelFormula,
    vocab: &Vocabulary,
    out: &mut fmt::Formatter<'_>,
    min_prec: u8,
) -> fmt::Result {
    let prec = mel_prec(f);
    let needs_parens = prec < min_prec;
    if needs_parens {
        write!(out, "(")?;
    }
    match f {
        MelFormula::Box(g) => write!(out, "[]({})", g.display(vocab))?,
        MelFormula::Not(g) => {
            write!(out, "!")?;
            fmt_mel(g, vocab, out, 3)?;
        }
        MelFormula::And(a, b) => {
            fmt_mel(a, vocab, out, 2)?;
            write!(out, " & ")?;
            fmt_mel(b, vocab, out, 3)?;
        }
        MelFormula::Or(a, b) => {
            fmt_mel(a, vocab, out, 1)?;
            write!(out, " | ")?;
            fmt_mel(b, vocab, out, 2)?;
        }
        MelFormula::Implies(a, b) => {
            fmt_mel(a, vocab, out, 1)?;
            write!(out, " -> ")?;
            if matches!(**b, MelFormula::Iff(..)) {
                write!(out, "(")?;
                fmt_mel(b, vocab, out, 0)?;
                write!(out, ")")?;
            } else {
                fmt_mel(b, vocab, out, 0)?;
            }
        }
        MelFormula::Iff(a, b) => {
            fmt_mel(a, vocab, out, 1)?;
            write!(out, " <-> ")?;
            if matches!(**b, MelFormula::Implies(..)) {
                write!(out, "(")?;
                fmt_mel(b, vocab, out, 0)?;
                write!(out, ")")?;
            } else {
                fmt_mel(b, vocab, out, 0)?;
            }
        }
    }
    if needs_parens {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for MelDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_mel(self.f, self.vocab, out, 0)
    }
}
