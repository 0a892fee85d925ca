//! Entailment and exact truth degrees for P-formulas over belief-function
//! models, by mixed-integer programming over the mass simplex.
//!
//! The encoding introduces one variable `m_E` per non-empty world set with
//! `sum m_E = 1`; each P-atom becomes a linear aggregate of the `m_E`
//! satisfying it, and each compound subformula a variable tied to its truth
//! function with one binary per truncation (big-M constants are all 1,
//! since truth values live in [0,1] and sums in [0,2]). Theory roots are
//! pinned to 1 and the query root is minimized, so the infimum over models
//! is attained at an exact rational vertex and the minimizing masses form a
//! countermodel.
//!
//! Model classes restrict the admissible masses: probabilities fix
//! `m_E = 0` for non-singletons, and necessity measures get one indicator
//! binary per set with mutual exclusion on inclusion-incomparable pairs,
//! forcing the focal sets onto a chain.

use crate::belief::{MassFunction, ModelClass};
use crate::lpcore::{
    solve_milp, LinearExpr, LpError, LpVar, RationalMilp, Relation, Sense, SolveResult,
    SolverConfig,
};
use crate::mel::{self, EpistemicModel};
use crate::pformula::PFormula;
use crate::propcore::{PropFormula, Vocabulary, WorldSet};
use crate::rat::Rat;
use num::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EntailError {
    #[error("theory has no belief-function model in the requested class")]
    InconsistentTheory,
    #[error(transparent)]
    Solver(#[from] LpError),
}

/// A finite set of asserted P-formulas plus the class of admissible models.
#[derive(Debug, Clone, Default)]
pub struct Theory {
    pub formulas: Vec<PFormula>,
    pub model_class: ModelClass,
}

impl Theory {
    pub fn new(formulas: Vec<PFormula>, model_class: ModelClass) -> Self {
        Theory {
            formulas,
            model_class,
        }
    }

    pub fn general(formulas: Vec<PFormula>) -> Self {
        Theory::new(formulas, ModelClass::GeneralBelief)
    }
}

/// Outcome of an entailment query. `valid` iff the truth degree is exactly
/// 1; otherwise the minimizing mass function witnesses the failure. An
/// inconsistent theory entails everything vacuously and is flagged.
#[derive(Debug, Clone)]
pub struct EntailmentVerdict {
    pub valid: bool,
    pub truth_degree: Rat,
    pub countermodel: Option<MassFunction>,
    pub inconsistent_theory: bool,
}

/// Truth degree together with a witnessing mass function attaining it.
#[derive(Debug, Clone)]
pub struct DegreeResult {
    pub degree: Rat,
    pub witness: MassFunction,
}

/// The MILP realization of a theory/query pair.
pub struct Encoding {
    pub milp: RationalMilp,
    pub mass_vars: Vec<(WorldSet, LpVar)>,
    pub query_root: LinearExpr,
    n_worlds: usize,
}

impl Encoding {
    /// Reads the mass variables of a solved assignment back into a mass
    /// function; the simplex row guarantees they sum to one.
    pub fn extract_mass(&self, assignment: &[Rat]) -> MassFunction {
        let entries = self
            .mass_vars
            .iter()
            .map(|(set, var)| (*set, assignment[var.0].clone()));
        MassFunction::new(self.n_worlds, entries).expect("solver masses form a distribution")
    }
}

struct Encoder<'a> {
    vocab: &'a Vocabulary,
    milp: RationalMilp,
    mass_vars: Vec<(WorldSet, LpVar)>,
    atom_cache: BTreeMap<Vec<u16>, LpVar>,
    next_aux: usize,
}

impl<'a> Encoder<'a> {
    fn new(vocab: &'a Vocabulary, class: ModelClass) -> Self {
        let mut milp = RationalMilp::new(Sense::Minimize);
        let mut mass_vars = Vec::new();
        let mut total = LinearExpr::zero();
        for set in vocab.nonempty_sets() {
            let hi = if class == ModelClass::Probability && set.len() > 1 {
                Rat::zero()
            } else {
                Rat::one()
            };
            let v = milp.add_var(format!("m_{}", set.bits()), Rat::zero(), hi);
            total.add_term(v, Rat::one());
            mass_vars.push((set, v));
        }
        milp.add_constraint(total, Relation::Eq, Rat::one());

        if class == ModelClass::Necessity {
            // One indicator per set, exclusion on incomparable pairs: any
            // feasible support extends to a chain.
            let indicators: Vec<(WorldSet, LpVar)> = mass_vars
                .iter()
                .map(|(set, m)| {
                    let y = milp.add_binary(format!("y_{}", set.bits()));
                    let expr = LinearExpr::var(*m).minus(&LinearExpr::var(y));
                    milp.add_constraint(expr, Relation::Le, Rat::zero());
                    (*set, y)
                })
                .collect();
            for (i, (a, ya)) in indicators.iter().enumerate() {
                for (b, yb) in &indicators[i + 1..] {
                    if !a.is_subset(*b) && !b.is_subset(*a) {
                        let expr = LinearExpr::var(*ya).plus(&LinearExpr::var(*yb));
                        milp.add_constraint(expr, Relation::Le, Rat::one());
                    }
                }
            }
        }

        Encoder {
            vocab,
            milp,
            mass_vars,
            atom_cache: BTreeMap::new(),
            next_aux: 0,
        }
    }

    fn fresh(&mut self, prefix: &str, lo: Rat, hi: Rat) -> LpVar {
        let v = self
            .milp
            .add_var(format!("{prefix}{}", self.next_aux), lo, hi);
        self.next_aux += 1;
        v
    }

    fn fresh_binary(&mut self) -> LpVar {
        let v = self.milp.add_binary(format!("b{}", self.next_aux));
        self.next_aux += 1;
        v
    }

    /// Variable carrying the probability of a MEL formula: the sum of the
    /// masses of its epistemic models. Atoms with the same model set share
    /// a variable.
    fn atom_var(&mut self, phi: &crate::mel::MelFormula) -> LpVar {
        let compiled = mel::compile(self.vocab, phi);
        let sat: Vec<u16> = self
            .mass_vars
            .iter()
            .filter(|(set, _)| {
                compiled.sat(EpistemicModel::new(*set).expect("mass sets are non-empty"))
            })
            .map(|(set, _)| set.bits())
            .collect();
        if let Some(v) = self.atom_cache.get(&sat) {
            return *v;
        }
        let a = self.fresh("a", Rat::zero(), Rat::one());
        let mut expr = LinearExpr::var(a);
        for (set, m) in &self.mass_vars {
            if sat.binary_search(&set.bits()).is_ok() {
                expr.add_term(*m, -Rat::one());
            }
        }
        self.milp.add_constraint(expr, Relation::Eq, Rat::zero());
        self.atom_cache.insert(sat, a);
        a
    }

    /// `t = min(1, s)` where `s` ranges over [0,2]: the sum variable keeps
    /// the widened bounds so the truth variable stays in [0,1].
    fn min_one(&mut self, s_expr: LinearExpr) -> LinearExpr {
        let s = self.fresh("s", Rat::zero(), Rat::one() + Rat::one());
        self.milp
            .add_constraint(LinearExpr::var(s).minus(&s_expr), Relation::Eq, Rat::zero());
        let t = self.fresh("t", Rat::zero(), Rat::one());
        let b = self.fresh_binary();
        // t <= s; t >= s - b; t >= b. Together with t <= 1 (bound), any
        // feasible point has t = min(1, s) exactly.
        self.milp.add_constraint(
            LinearExpr::var(t).minus(&LinearExpr::var(s)),
            Relation::Le,
            Rat::zero(),
        );
        self.milp.add_constraint(
            LinearExpr::var(t)
                .minus(&LinearExpr::var(s))
                .plus(&LinearExpr::var(b)),
            Relation::Ge,
            Rat::zero(),
        );
        self.milp.add_constraint(
            LinearExpr::var(t).minus(&LinearExpr::var(b)),
            Relation::Ge,
            Rat::zero(),
        );
        LinearExpr::var(t)
    }

    /// `t = max(0, s)` where `s` ranges over [-1,1].
    fn max_zero(&mut self, s_expr: LinearExpr) -> LinearExpr {
        let s = self.fresh("s", -Rat::one(), Rat::one());
        self.milp
            .add_constraint(LinearExpr::var(s).minus(&s_expr), Relation::Eq, Rat::zero());
        let t = self.fresh("t", Rat::zero(), Rat::one());
        let b = self.fresh_binary();
        // t >= s; t <= s + b; t <= 1 - b. Together with t >= 0 (bound),
        // any feasible point has t = max(0, s) exactly.
        self.milp.add_constraint(
            LinearExpr::var(t).minus(&LinearExpr::var(s)),
            Relation::Ge,
            Rat::zero(),
        );
        self.milp.add_constraint(
            LinearExpr::var(t)
                .minus(&LinearExpr::var(s))
                .minus(&LinearExpr::var(b)),
            Relation::Le,
            Rat::zero(),
        );
        self.milp.add_constraint(
            LinearExpr::var(t).plus(&LinearExpr::var(b)),
            Relation::Le,
            Rat::one(),
        );
        LinearExpr::var(t)
    }

    /// Lukasiewicz implication: `min(1, 1 - x + y)`.
    fn implies(&mut self, x: LinearExpr, y: LinearExpr) -> LinearExpr {
        let s = LinearExpr::constant(Rat::one()).minus(&x).plus(&y);
        self.min_one(s)
    }

    fn encode_pf(&mut self, f: &PFormula) -> LinearExpr {
        match f {
            PFormula::Const(r) => LinearExpr::constant(r.clone()),
            PFormula::Atom(phi) => LinearExpr::var(self.atom_var(phi)),
            PFormula::Not(a) => {
                let x = self.encode_pf(a);
                let t = self.fresh("t", Rat::zero(), Rat::one());
                // t = 1 - x.
                self.milp
                    .add_constraint(LinearExpr::var(t).plus(&x), Relation::Eq, Rat::one());
                LinearExpr::var(t)
            }
            PFormula::Implies(a, b) => {
                let x = self.encode_pf(a);
                let y = self.encode_pf(b);
                self.implies(x, y)
            }
            PFormula::StrongOr(a, b) => {
                let x = self.encode_pf(a);
                let y = self.encode_pf(b);
                self.min_one(x.plus(&y))
            }
            PFormula::StrongAnd(a, b) => {
                let x = self.encode_pf(a);
                let y = self.encode_pf(b);
                self.max_zero(x.plus(&y).minus(&LinearExpr::constant(Rat::one())))
            }
            PFormula::Diff(a, b) => {
                let x = self.encode_pf(a);
                let y = self.encode_pf(b);
                self.max_zero(x.minus(&y))
            }
            PFormula::Iff(a, b) => {
                // (a -> b) & (b -> a), keeping every big-M constant at 1.
                let x = self.encode_pf(a);
                let y = self.encode_pf(b);
                let fwd = self.implies(x.clone(), y.clone());
                let back = self.implies(y, x);
                self.max_zero(fwd.plus(&back).minus(&LinearExpr::constant(Rat::one())))
            }
            PFormula::WeakAnd(a, b) => {
                let x = self.encode_pf(a);
                let y = self.encode_pf(b);
                let t = self.fresh("t", Rat::zero(), Rat::one());
                let b = self.fresh_binary();
                // t <= x; t <= y; t >= x - b; t >= y - (1 - b).
                self.milp
                    .add_constraint(LinearExpr::var(t).minus(&x), Relation::Le, Rat::zero());
                self.milp
                    .add_constraint(LinearExpr::var(t).minus(&y), Relation::Le, Rat::zero());
                self.milp.add_constraint(
                    LinearExpr::var(t).minus(&x).plus(&LinearExpr::var(b)),
                    Relation::Ge,
                    Rat::zero(),
                );
                self.milp.add_constraint(
                    LinearExpr::var(t).minus(&y).minus(&LinearExpr::var(b)),
                    Relation::Ge,
                    -Rat::one(),
                );
                LinearExpr::var(t)
            }
            PFormula::WeakOr(a, b) => {
                let x = self.encode_pf(a);
                let y = self.encode_pf(b);
                let t = self.fresh("t", Rat::zero(), Rat::one());
                let b = self.fresh_binary();
                // t >= x; t >= y; t <= x + b; t <= y + (1 - b).
                self.milp
                    .add_constraint(LinearExpr::var(t).minus(&x), Relation::Ge, Rat::zero());
                self.milp
                    .add_constraint(LinearExpr::var(t).minus(&y), Relation::Ge, Rat::zero());
                self.milp.add_constraint(
                    LinearExpr::var(t).minus(&x).minus(&LinearExpr::var(b)),
                    Relation::Le,
                    Rat::zero(),
                );
                self.milp.add_constraint(
                    LinearExpr::var(t).minus(&y).plus(&LinearExpr::var(b)),
                    Relation::Le,
                    Rat::one(),
                );
                LinearExpr::var(t)
            }
        }
    }
}

/// Builds the MILP for a theory and query: mass simplex, atom aggregates,
/// truth-function gadgets, theory roots pinned to 1, query root as the
/// minimization objective.
pub fn encode(vocab: &Vocabulary, theory: &Theory, query: &PFormula) -> Encoding {
    let mut enc = Encoder::new(vocab, theory.model_class);
    for formula in &theory.formulas {
        let root = enc.encode_pf(formula);
        enc.milp.add_constraint(root, Relation::Eq, Rat::one());
    }
    let query_root = enc.encode_pf(query);
    enc.milp.set_objective(query_root.clone());
    Encoding {
        milp: enc.milp,
        mass_vars: enc.mass_vars,
        query_root,
        n_worlds: vocab.n_worlds(),
    }
}

/// Decides whether the theory entails the query: the query's minimal truth
/// degree over all class-conforming models of the theory must be exactly 1.
pub fn entails(
    vocab: &Vocabulary,
    theory: &Theory,
    query: &PFormula,
    config: &SolverConfig,
) -> Result<EntailmentVerdict, EntailError> {
    let enc = encode(vocab, theory, query);
    match solve_milp(&enc.milp, config)? {
        SolveResult::Infeasible => Ok(EntailmentVerdict {
            valid: true,
            truth_degree: Rat::one(),
            countermodel: None,
            inconsistent_theory: true,
        }),
        SolveResult::Unbounded => unreachable!("objective is bounded in [0,1]"),
        SolveResult::Optimal {
            objective,
            assignment,
        } => {
            let valid = objective.is_one();
            let countermodel = if valid {
                None
            } else {
                Some(enc.extract_mass(&assignment))
            };
            Ok(EntailmentVerdict {
                valid,
                truth_degree: objective,
                countermodel,
                inconsistent_theory: false,
            })
        }
    }
}

/// The exact minimal truth degree of the query over all class-conforming
/// models of the theory, with a witnessing mass function. Errors out on
/// inconsistent theories, where the infimum over no models is vacuous.
pub fn truth_degree(
    vocab: &Vocabulary,
    theory: &Theory,
    query: &PFormula,
    config: &SolverConfig,
) -> Result<DegreeResult, EntailError> {
    let enc = encode(vocab, theory, query);
    match solve_milp(&enc.milp, config)? {
        SolveResult::Infeasible => Err(EntailError::InconsistentTheory),
        SolveResult::Unbounded => unreachable!("objective is bounded in [0,1]"),
        SolveResult::Optimal {
            objective,
            assignment,
        } => Ok(DegreeResult {
            degree: objective,
            witness: enc.extract_mass(&assignment),
        }),
    }
}

/// Graded modus ponens report: from `bel(phi) >= r` and
/// `bel(phi -> psi) >= s`, the Lukasiewicz bound `max(r+s-1, 0)` on
/// `bel(psi)` is sound for general belief functions, and the possibilistic
/// bound `min(r, s)` for necessity measures.
#[derive(Debug, Clone)]
pub struct GradedMpReport {
    pub class: ModelClass,
    pub luk_bound: Rat,
    pub luk_valid: bool,
    pub min_bound: Rat,
    pub min_valid: bool,
    pub min_countermodel: Option<MassFunction>,
    /// Exact truth degree of `B(psi)` under the theory; `None` when the
    /// premises are inconsistent.
    pub degree: Option<Rat>,
    pub luk_tight: bool,
    pub min_tight: bool,
    pub inconsistent_theory: bool,
}

/// Runs the graded modus ponens entailments at both bounds and measures the
/// exact degree of the conclusion for tightness.
pub fn check_graded_mp(
    vocab: &Vocabulary,
    r: &Rat,
    s: &Rat,
    phi: &PropFormula,
    psi: &PropFormula,
    class: ModelClass,
    config: &SolverConfig,
) -> Result<GradedMpReport, EntailError> {
    let premises = vec![
        PFormula::implies(PFormula::Const(r.clone()), PFormula::belief(phi.clone())),
        PFormula::implies(
            PFormula::Const(s.clone()),
            PFormula::belief(PropFormula::implies(phi.clone(), psi.clone())),
        ),
    ];
    let theory = Theory::new(premises, class);
    let luk_bound = (r + s - Rat::one()).max(Rat::zero());
    let min_bound = r.clone().min(s.clone());

    let conclusion = |bound: &Rat| {
        PFormula::implies(
            PFormula::Const(bound.clone()),
            PFormula::belief(psi.clone()),
        )
    };
    let luk = entails(vocab, &theory, &conclusion(&luk_bound), config)?;
    let min = entails(vocab, &theory, &conclusion(&min_bound), config)?;
    let degree = match truth_degree(vocab, &theory, &PFormula::belief(psi.clone()), config) {
        Ok(result) => Some(result.degree),
        Err(EntailError::InconsistentTheory) => None,
        Err(other) => return Err(other),
    };
    Ok(GradedMpReport {
        class,
        luk_valid: luk.valid,
        min_valid: min.valid,
        min_countermodel: min.countermodel,
        luk_tight: degree.as_ref() == Some(&luk_bound),
        min_tight: degree.as_ref() == Some(&min_bound),
        luk_bound,
        min_bound,
        degree,
        inconsistent_theory: luk.inconsistent_theory,
    })
}
