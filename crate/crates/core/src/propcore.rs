//! Classical propositional layer over a small finite vocabulary.
//!
//! Worlds are truth assignments encoded as bit patterns (bit `i` holds the
//! value of variable `i`), and model sets are bitmasks over world indices.
//! All downstream semantics enumerate subsets of the world set, so the
//! variable count is capped (default 4, i.e. at most 16 worlds).

use crate::syntax;
use std::fmt;
use thiserror::Error;

/// Default hard cap on the number of propositional variables.
pub const DEFAULT_MAX_VARS: usize = 4;

/// Absolute ceiling: world sets are 16-bit masks, so at most 16 worlds.
pub const ABSOLUTE_MAX_VARS: usize = 4;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum VocabError {
    #[error("vocabulary must declare at least one variable")]
    Empty,
    #[error("vocabulary has {0} variables, cap is {1}")]
    TooLarge(usize, usize),
    #[error("duplicate variable `{0}`")]
    Duplicate(String),
    #[error("variable names must be identifiers, got `{0}`")]
    BadName(String),
}

/// Ordered set of propositional variable names, fixed for a session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    names: Vec<String>,
}

impl Vocabulary {
    /// Builds a vocabulary under the default cap of [`DEFAULT_MAX_VARS`].
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, VocabError> {
        Self::with_cap(names, DEFAULT_MAX_VARS)
    }

    /// Builds a vocabulary under an explicit cap; the cap itself is limited
    /// by [`ABSOLUTE_MAX_VARS`] because world sets are 16-bit masks.
    pub fn with_cap<S: AsRef<str>>(names: &[S], cap: usize) -> Result<Self, VocabError> {
        let cap = cap.min(ABSOLUTE_MAX_VARS);
        if names.is_empty() {
            return Err(VocabError::Empty);
        }
        if names.len() > cap {
            return Err(VocabError::TooLarge(names.len(), cap));
        }
        let mut out = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            let mut chars = name.chars();
            let head_ok = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_');
            if !head_ok || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(VocabError::BadName(name.to_string()));
            }
            if out.iter().any(|n| n == name) {
                return Err(VocabError::Duplicate(name.to_string()));
            }
            out.push(name.to_string());
        }
        Ok(Vocabulary { names: out })
    }

    pub fn n_vars(&self) -> usize {
        self.names.len()
    }

    /// Number of worlds, `2^n`.
    pub fn n_worlds(&self) -> usize {
        1 << self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: VarId) -> &str {
        &self.names[var.0 as usize]
    }

    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| VarId(i as u8))
    }

    /// The full world set (all `2^n` worlds).
    pub fn full_set(&self) -> WorldSet {
        WorldSet::full(self.n_worlds())
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> {
        (0..self.n_worlds()).map(|i| World(i as u8))
    }

    /// All non-empty world sets, in increasing bitmask order.
    pub fn nonempty_sets(&self) -> impl Iterator<Item = WorldSet> {
        (1..=self.full_set().bits()).map(WorldSet::from_bits)
    }

    /// All world sets including the empty one, in increasing bitmask order.
    pub fn all_sets(&self) -> impl Iterator<Item = WorldSet> {
        (0..=self.full_set().bits()).map(WorldSet::from_bits)
    }
}

/// Index of a propositional variable within its vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u8);

/// A propositional interpretation: bit `i` is the value of variable `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World(pub u8);

impl World {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn value(self, var: VarId) -> bool {
        (self.0 >> var.0) & 1 == 1
    }

    /// Renders the assignment as `p=1,q=0`, in vocabulary order.
    pub fn describe(self, vocab: &Vocabulary) -> String {
        (0..vocab.n_vars() as u8)
            .map(|i| {
                let v = VarId(i);
                format!("{}={}", vocab.name(v), u8::from(self.value(v)))
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A subset of the worlds, as a bitmask over world indices.
///
/// Doubles as a model set `Mod(phi)` and as an epistemic state. 16 bits
/// cover the default cap of 4 variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WorldSet(u16);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn from_bits(bits: u16) -> Self {
        WorldSet(bits)
    }

    pub fn full(n_worlds: usize) -> Self {
        debug_assert!(n_worlds <= 16);
        if n_worlds == 16 {
            WorldSet(u16::MAX)
        } else {
            WorldSet((1u16 << n_worlds) - 1)
        }
    }

    pub fn singleton(w: World) -> Self {
        WorldSet(1 << w.0)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, w: World) -> bool {
        (self.0 >> w.0) & 1 == 1
    }

    pub fn union(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 | other.0)
    }

    pub fn intersect(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & other.0)
    }

    pub fn difference(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & !other.0)
    }

    pub fn complement_in(self, universe: WorldSet) -> WorldSet {
        universe.difference(self)
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn worlds(self) -> impl Iterator<Item = World> {
        (0..16u8).filter(move |i| (self.0 >> i) & 1 == 1).map(World)
    }

    /// Renders the set as `{p=1,q=0 ; p=0,q=0}`.
    pub fn describe(self, vocab: &Vocabulary) -> String {
        let inner = self
            .worlds()
            .map(|w| w.describe(vocab))
            .collect::<Vec<_>>()
            .join(" ; ");
        format!("{{{inner}}}")
    }
}

/// Classical propositional formula over a vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PropFormula {
    False,
    True,
    Var(VarId),
    Not(Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    Implies(Box<PropFormula>, Box<PropFormula>),
    Iff(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn var(id: VarId) -> Self {
        PropFormula::Var(id)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: PropFormula) -> Self {
        PropFormula::Not(Box::new(f))
    }

    pub fn and(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Iff(Box::new(a), Box::new(b))
    }

    /// Truth value under one interpretation.
    pub fn eval(&self, w: World) -> bool {
        match self {
            PropFormula::False => false,
            PropFormula::True => true,
            PropFormula::Var(v) => w.value(*v),
            PropFormula::Not(f) => !f.eval(w),
            PropFormula::And(a, b) => a.eval(w) && b.eval(w),
            PropFormula::Or(a, b) => a.eval(w) || b.eval(w),
            PropFormula::Implies(a, b) => !a.eval(w) || b.eval(w),
            PropFormula::Iff(a, b) => a.eval(w) == b.eval(w),
        }
    }

    /// `Mod(phi)`: the set of worlds satisfying the formula, by exhaustive
    /// evaluation.
    pub fn mod_set(&self, vocab: &Vocabulary) -> WorldSet {
        let mut bits = 0u16;
        for w in vocab.worlds() {
            if self.eval(w) {
                bits |= 1 << w.0;
            }
        }
        WorldSet(bits)
    }

    pub fn is_tautology(&self, vocab: &Vocabulary) -> bool {
        self.mod_set(vocab) == vocab.full_set()
    }

    /// Display with variable names resolved against the vocabulary.
    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> PropDisplay<'a> {
        PropDisplay { f: self, vocab }
    }
}

/// The min-term `sigma_w`: conjunction of all literals fixed by `w`.
/// Its model set is exactly `{w}`.
pub fn minterm(vocab: &Vocabulary, w: World) -> PropFormula {
    let mut acc: Option<PropFormula> = None;
    for i in 0..vocab.n_vars() as u8 {
        let v = VarId(i);
        let lit = if w.value(v) {
            PropFormula::var(v)
        } else {
            PropFormula::not(PropFormula::var(v))
        };
        acc = Some(match acc {
            None => lit,
            Some(f) => PropFormula::and(f, lit),
        });
    }
    acc.expect("vocabulary is non-empty")
}

/// `phi_E`: disjunction of the min-terms of the worlds in `E`.
/// The empty set yields falsum.
pub fn formula_of_set(vocab: &Vocabulary, set: WorldSet) -> PropFormula {
    let mut acc: Option<PropFormula> = None;
    for w in set.worlds() {
        let mt = minterm(vocab, w);
        acc = Some(match acc {
            None => mt,
            Some(f) => PropFormula::or(f, mt),
        });
    }
    acc.unwrap_or(PropFormula::False)
}

/// Parses the propositional grammar
/// `prop := "0" | "1" | IDENT | "!" prop | prop "&" prop | prop "|" prop |
/// prop "->" prop | prop "<->" prop | "(" prop ")"`
/// with precedence `! > & > | > (->, <-> right-associative)`.
pub fn parse_prop(text: &str, vocab: &Vocabulary) -> Result<PropFormula, syntax::ParseError> {
    syntax::parse_prop(text, vocab)
}

pub struct PropDisplay<'a> {
    f: &'a PropFormula,
    vocab: &'a Vocabulary,
}

// Precedence bands used by the printer: atoms 4, ! 3, & 2, | 1, ->/<-> 0.
fn prop_prec(f: &PropFormula) -> u8 {
    match f {
        PropFormula::False | PropFormula::True | PropFormula::Var(_) => 4,
        PropFormula::Not(_) => 3,
        PropFormula::And(..) => 2,
        PropFormula::Or(..) => 1,
        PropFormula::Implies(..) | PropFormula::Iff(..) => 0,
    }
}

fn fmt_prop(
    f: &PropFormula,
    vocab: &Vocabulary,
    out: &mut fmt::Formatter<'_>,
    min_prec: u8,
) -> fmt::Result {
    let prec = prop_prec(f);
    let needs_parens = prec < min_prec;
    if needs_parens {
        write!(out, "(")?;
    }
    match f {
        PropFormula::False => write!(out, "0")?,
        PropFormula::True => write!(out, "1")?,
        PropFormula::Var(v) => write!(out, "{}", vocab.name(*v))?,
        PropFormula::Not(g) => {
            write!(out, "!")?;
            fmt_prop(g, vocab, out, 3)?;
        }
        PropFormula::And(a, b) => {
            fmt_prop(a, vocab, out, 2)?;
            write!(out, " & ")?;
            fmt_prop(b, vocab, out, 3)?;
        }
        PropFormula::Or(a, b) => {
            fmt_prop(a, vocab, out, 1)?;
            write!(out, " | ")?;
            fmt_prop(b, vocab, out, 2)?;
        }
        PropFormula::Implies(a, b) => {
            fmt_prop(a, vocab, out, 1)?;
            write!(out, " -> ")?;
            // Right-associative: a bare right child is re-parsed the same
            // way, but a mixed ->/<-> chain gets explicit parentheses.
            if matches!(**b, PropFormula::Iff(..)) {
                write!(out, "(")?;
                fmt_prop(b, vocab, out, 0)?;
                write!(out, ")")?;
            } else {
                fmt_prop(b, vocab, out, 0)?;
            }
        }
        PropFormula::Iff(a, b) => {
            fmt_prop(a, vocab, out, 1)?;
            write!(out, " <-> ")?;
            if matches!(**b, PropFormula::Implies(..)) {
                write!(out, "(")?;
                fmt_prop(b, vocab, out, 0)?;
                write!(out, ")")?;
            } else {
                fmt_prop(b, vocab, out, 0)?;
            }
        }
    }
    if needs_parens {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for PropDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prop(self.f, self.vocab, out, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vocab_pq() -> Vocabulary {
        Vocabulary::new(&["p", "q"]).unwrap()
    }

    #[test]
    fn vocab_caps_and_duplicates() {
        assert_eq!(
            Vocabulary::new(&["p", "q", "r", "s", "t"]).unwrap_err(),
            VocabError::TooLarge(5, 4)
        );
        assert_eq!(
            Vocabulary::new(&["p", "p"]).unwrap_err(),
            VocabError::Duplicate("p".into())
        );
        // The absolute ceiling holds even when the requested cap is larger.
        assert_eq!(
            Vocabulary::with_cap(&["a", "b", "c", "d", "e"], 5).unwrap_err(),
            VocabError::TooLarge(5, 4)
        );
        assert!(Vocabulary::with_cap(&["a", "b"], 2).is_ok());
        assert_eq!(
            Vocabulary::with_cap(&["a", "b", "c"], 2).unwrap_err(),
            VocabError::TooLarge(3, 2)
        );
        assert_eq!(
            Vocabulary::new(&["2x"]).unwrap_err(),
            VocabError::BadName("2x".into())
        );
    }

    #[test]
    fn parse_basic() {
        let v = vocab_pq();
        let f = parse_prop("p | q", &v).unwrap();
        assert_eq!(
            f,
            PropFormula::or(PropFormula::var(VarId(0)), PropFormula::var(VarId(1)))
        );
    }

    #[test]
    fn parse_precedence() {
        let v = Vocabulary::new(&["p", "q", "r"]).unwrap();
        let f = parse_prop("!(p & q) -> r", &v).unwrap();
        assert_eq!(
            f,
            PropFormula::implies(
                PropFormula::not(PropFormula::and(
                    PropFormula::var(VarId(0)),
                    PropFormula::var(VarId(1))
                )),
                PropFormula::var(VarId(2))
            )
        );
        // ! binds tighter than &, & tighter than |, | tighter than ->.
        let g = parse_prop("!p & q | r -> p", &v).unwrap();
        assert_eq!(
            g,
            PropFormula::implies(
                PropFormula::or(
                    PropFormula::and(
                        PropFormula::not(PropFormula::var(VarId(0))),
                        PropFormula::var(VarId(1))
                    ),
                    PropFormula::var(VarId(2))
                ),
                PropFormula::var(VarId(0))
            )
        );
    }

    #[test]
    fn parse_unknown_variable() {
        let v = vocab_pq();
        let err = parse_prop("p <-> s", &v).unwrap_err();
        assert!(err.to_string().contains("unknown variable"), "{err}");
    }

    #[test]
    fn mod_set_truth_table() {
        let v = vocab_pq();
        let f = parse_prop("p | q", &v).unwrap();
        // Worlds 01 (p), 10 (q), 11 (p and q): bits 1, 2, 3.
        assert_eq!(f.mod_set(&v).bits(), 0b1110);
        assert_eq!(
            parse_prop("p & !p", &v).unwrap().mod_set(&v),
            WorldSet::EMPTY
        );
        assert_eq!(parse_prop("p -> p", &v).unwrap().mod_set(&v), v.full_set());
    }

    #[test]
    fn minterm_examples() {
        let v = vocab_pq();
        let w11 = World(0b11);
        assert_eq!(
            minterm(&v, w11),
            PropFormula::and(PropFormula::var(VarId(0)), PropFormula::var(VarId(1)))
        );
        let w00 = World(0b00);
        assert_eq!(
            minterm(&v, w00),
            PropFormula::and(
                PropFormula::not(PropFormula::var(VarId(0))),
                PropFormula::not(PropFormula::var(VarId(1)))
            )
        );
        for w in v.worlds() {
            assert_eq!(minterm(&v, w).mod_set(&v), WorldSet::singleton(w));
        }
    }

    #[test]
    fn formula_of_set_round_trip() {
        let v = vocab_pq();
        assert_eq!(
            formula_of_set(&v, WorldSet::from_bits(0b1000)).mod_set(&v),
            WorldSet::from_bits(0b1000)
        );
        assert!(formula_of_set(&v, v.full_set()).is_tautology(&v));
        assert_eq!(formula_of_set(&v, WorldSet::EMPTY), PropFormula::False);
        // Exhaustive over every subset at n = 3.
        let v3 = Vocabulary::new(&["a", "b", "c"]).unwrap();
        for set in v3.all_sets() {
            assert_eq!(formula_of_set(&v3, set).mod_set(&v3), set);
        }
    }

    fn arb_prop(n_vars: u8) -> impl Strategy<Value = PropFormula> {
        let leaf = prop_oneof![
            Just(PropFormula::False),
            Just(PropFormula::True),
            (0..n_vars).prop_map(|i| PropFormula::var(VarId(i))),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(PropFormula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| PropFormula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| PropFormula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| PropFormula::implies(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| PropFormula::iff(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn mod_set_homomorphism(f in arb_prop(3), g in arb_prop(3)) {
            let v = Vocabulary::new(&["a", "b", "c"]).unwrap();
            let full = v.full_set();
            prop_assert_eq!(
                PropFormula::not(f.clone()).mod_set(&v),
                f.mod_set(&v).complement_in(full)
            );
            prop_assert_eq!(
                PropFormula::and(f.clone(), g.clone()).mod_set(&v),
                f.mod_set(&v).intersect(g.mod_set(&v))
            );
            prop_assert_eq!(
                PropFormula::or(f.clone(), g.clone()).mod_set(&v),
                f.mod_set(&v).union(g.mod_set(&v))
            );
        }

        #[test]
        fn print_parse_round_trip(f in arb_prop(3)) {
            let v = Vocabulary::new(&["a", "b", "c"]).unwrap();
            let printed = f.display(&v).to_string();
            let reparsed = parse_prop(&printed, &v).unwrap();
            prop_assert_eq!(f, reparsed, "printed as {}", printed);
        }
    }
}
