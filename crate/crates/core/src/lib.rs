//! Reasoning engine for graded belief over finitely many propositional
//! worlds.
//!
//! Three syntactic layers sit on top of each other:
//!
//! 1. classical propositional formulas over a small vocabulary
//!    ([`propcore`]),
//! 2. modal-depth-1 epistemic formulas `[](phi)` evaluated on non-empty
//!    world sets ([`mel`]),
//! 3. Lukasiewicz combinations of graded atoms `P(Phi)` with rational truth
//!    constants ([`pformula`]).
//!
//! The semantic objects are exact-rational mass functions on non-empty world
//! sets ([`belief`]); a P-formula evaluates to the probability mass of the
//! epistemic models satisfying its atoms, combined through the Lukasiewicz
//! truth functions. Entailment and exact truth degrees are decided by
//! mixed-integer programming over the mass simplex ([`entail`], [`lpcore`]),
//! and comparative belief orders are checked and realised by linear
//! programming ([`comparative`]).

pub mod belief;
pub mod comparative;
pub mod entail;
pub mod lpcore;
pub mod massfmt;
pub mod mel;
pub mod pformula;
pub mod propcore;
pub mod rat;
pub mod syntax;

pub use belief::{bel, belief_table, mass_from_mu, mobius, mu_of_mel, pl};
pub use belief::{BeliefTable, MassFunction, ModelClass};
pub use entail::{entails, truth_degree, EntailmentVerdict, Theory};
pub use mel::{mel_consequence, mel_sat, mel_valid, EpistemicModel, MelFormula};
pub use pformula::{luk_apply, p_eval, LukConn, PFormula};
pub use propcore::{PropFormula, Vocabulary, World, WorldSet};
pub use rat::Rat;
