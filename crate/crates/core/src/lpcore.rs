//! Exact-rational linear programming and branch-and-bound MILP.
//!
//! The simplex works on bounded variables (two-phase, Bland's rule for
//! cycle-freedom) with every pivot carried out in exact rational arithmetic,
//! so optima and vertex assignments are exact and deterministic. Binary
//! variables are handled by depth-first branch and bound on the LP
//! relaxation: lowest-index fractional binary first, 0-branch before
//! 1-branch.
//!
//! Problem sizes here are small (a few hundred variables), which is why a
//! dense tableau is acceptable.

use crate::rat::{fmt_rat, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Handle to a problem variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LpVar(pub usize);

/// Canonical linear expression: no zero coefficients, plus a constant.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearExpr {
    terms: BTreeMap<LpVar, Rat>,
    constant: Rat,
}

impl LinearExpr {
    pub fn zero() -> Self {
        LinearExpr::default()
    }

    pub fn constant(value: Rat) -> Self {
        LinearExpr {
            terms: BTreeMap::new(),
            constant: value,
        }
    }

    pub fn var(v: LpVar) -> Self {
        let mut e = LinearExpr::zero();
        e.add_term(v, Rat::one());
        e
    }

    pub fn add_term(&mut self, v: LpVar, coef: Rat) {
        let entry = self.terms.entry(v).or_insert_with(Rat::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn add_constant(&mut self, value: Rat) {
        self.constant += value;
    }

    pub fn add_scaled(&mut self, other: &LinearExpr, scale: &Rat) {
        for (v, c) in &other.terms {
            self.add_term(*v, c * scale);
        }
        self.constant += &other.constant * scale;
    }

    pub fn plus(mut self, other: &LinearExpr) -> Self {
        self.add_scaled(other, &Rat::one());
        self
    }

    pub fn minus(mut self, other: &LinearExpr) -> Self {
        self.add_scaled(other, &-Rat::one());
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (LpVar, &Rat)> {
        self.terms.iter().map(|(v, c)| (*v, c))
    }

    pub fn constant_part(&self) -> &Rat {
        &self.constant
    }

    pub fn eval(&self, assignment: &[Rat]) -> Rat {
        let mut out = self.constant.clone();
        for (v, c) in &self.terms {
            out += c * &assignment[v.0];
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone)]
struct VarInfo {
    name: String,
    lo: Rat,
    hi: Rat,
    binary: bool,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub expr: LinearExpr,
    pub rel: Relation,
    pub rhs: Rat,
}

/// An exact-rational linear program with optional binary variables.
#[derive(Debug, Clone)]
pub struct RationalMilp {
    vars: Vec<VarInfo>,
    constraints: Vec<Constraint>,
    objective: LinearExpr,
    sense: Sense,
}

impl RationalMilp {
    pub fn new(sense: Sense) -> Self {
        RationalMilp {
            vars: Vec::new(),
            constraints: Vec::new(),
            objective: LinearExpr::zero(),
            sense,
        }
    }

    /// Adds a continuous variable with finite bounds.
    pub fn add_var(&mut self, name: impl Into<String>, lo: Rat, hi: Rat) -> LpVar {
        let v = LpVar(self.vars.len());
        self.vars.push(VarInfo {
            name: name.into(),
            lo,
            hi,
            binary: false,
        });
        v
    }

    pub fn add_binary(&mut self, name: impl Into<String>) -> LpVar {
        let v = LpVar(self.vars.len());
        self.vars.push(VarInfo {
            name: name.into(),
            lo: Rat::zero(),
            hi: Rat::one(),
            binary: true,
        });
        v
    }

    pub fn add_constraint(&mut self, expr: LinearExpr, rel: Relation, rhs: Rat) {
        self.constraints.push(Constraint { expr, rel, rhs });
    }

    pub fn set_objective(&mut self, expr: LinearExpr) {
        self.objective = expr;
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn n_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn binaries(&self) -> impl Iterator<Item = LpVar> + '_ {
        self.vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.binary)
            .map(|(i, _)| LpVar(i))
    }

    pub fn var_name(&self, v: LpVar) -> &str {
        &self.vars[v.0].name
    }

    /// LP-format-like dump for external cross-checking.
    pub fn dump_lp(&self) -> String {
        let fmt_expr = |e: &LinearExpr| {
            let mut s = String::new();
            for (v, c) in e.terms() {
                if !s.is_empty() {
                    s.push_str(" + ");
                }
                s.push_str(&format!("{} {}", fmt_rat(c), self.vars[v.0].name));
            }
            if !e.constant_part().is_zero() || s.is_empty() {
                if !s.is_empty() {
                    s.push_str(" + ");
                }
                s.push_str(&fmt_rat(e.constant_part()));
            }
            s
        };
        let mut out = String::new();
        let sense = match self.sense {
            Sense::Minimize => "min",
            Sense::Maximize => "max",
        };
        out.push_str(&format!("{sense}: {};\n", fmt_expr(&self.objective)));
        for (i, c) in self.constraints.iter().enumerate() {
            out.push_str(&format!(
                "c{i}: {} {} {};\n",
                fmt_expr(&c.expr),
                c.rel,
                fmt_rat(&c.rhs)
            ));
        }
        for v in &self.vars {
            if v.binary {
                out.push_str(&format!("bin {};\n", v.name));
            } else {
                out.push_str(&format!(
                    "{} <= {} <= {};\n",
                    fmt_rat(&v.lo),
                    v.name,
                    fmt_rat(&v.hi)
                ));
            }
        }
        out
    }
}

/// Exact outcome of a solve. On `Optimal`, the assignment satisfies every
/// constraint with exact rational arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Optimal {
        objective: Rat,
        assignment: Vec<Rat>,
    },
    Infeasible,
    Unbounded,
}

impl SolveResult {
    pub fn optimum(&self) -> Option<&Rat> {
        match self {
            SolveResult::Optimal { objective, .. } => Some(objective),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("branch-and-bound node budget of {0} exhausted")]
    NodeBudgetExceeded(usize),
    #[error("{count} binary variables exceed the configured cap of {cap}")]
    BinaryCapExceeded { count: usize, cap: usize },
    #[error("simplex pivot safety limit reached")]
    PivotLimit,
}

/// Solver knobs; both are configuration rather than constants because larger
/// vocabularies legitimately need more room.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub node_budget: usize,
    pub max_binaries: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_budget: 1_000_000,
            max_binaries: 64,
        }
    }
}

/// Solves a pure LP (no binaries allowed).
pub fn solve_lp(p: &RationalMilp) -> SolveResult {
    assert_eq!(
        p.binaries().count(),
        0,
        "solve_lp requires a binary-free program; use solve_milp"
    );
    let result = simplex(p, &BTreeMap::new()).expect("pivot limit is unreachable for sane inputs");
    denormalize(p.sense, result)
}

/// Undoes the internal minimize normalization of the objective value.
fn denormalize(sense: Sense, result: SolveResult) -> SolveResult {
    match (sense, result) {
        (
            Sense::Maximize,
            SolveResult::Optimal {
                objective,
                assignment,
            },
        ) => SolveResult::Optimal {
            objective: -objective,
            assignment,
        },
        (_, other) => other,
    }
}

/// Solves a MILP by deterministic branch and bound over the binaries.
pub fn solve_milp(p: &RationalMilp, config: &SolverConfig) -> Result<SolveResult, LpError> {
    let binaries: Vec<LpVar> = p.binaries().collect();
    if binaries.len() > config.max_binaries {
        return Err(LpError::BinaryCapExceeded {
            count: binaries.len(),
            cap: config.max_binaries,
        });
    }
    let negate = p.sense == Sense::Maximize;
    let mut search = Search {
        problem: p,
        binaries: &binaries,
        config,
        nodes: 0,
        incumbent: None,
    };
    let mut fixings = BTreeMap::new();
    search.explore(&mut fixings)?;
    Ok(match search.incumbent {
        Some((objective, assignment)) => SolveResult::Optimal {
            objective: if negate { -objective } else { objective },
            assignment,
        },
        None => SolveResult::Infeasible,
    })
}

struct Search<'a> {
    problem: &'a RationalMilp,
    binaries: &'a [LpVar],
    config: &'a SolverConfig,
    nodes: usize,
    /// Best integral solution so far, in minimize-normalized form.
    incumbent: Option<(Rat, Vec<Rat>)>,
}

impl Search<'_> {
    fn explore(&mut self, fixings: &mut BTreeMap<LpVar, Rat>) -> Result<(), LpError> {
        self.nodes += 1;
        if self.nodes > self.config.node_budget {
            return Err(LpError::NodeBudgetExceeded(self.config.node_budget));
        }
        let (objective, assignment) = match simplex(self.problem, fixings)? {
            SolveResult::Infeasible => return Ok(()),
            // Finite bounds on every variable rule this out.
            SolveResult::Unbounded => unreachable!("bounded relaxations cannot be unbounded"),
            SolveResult::Optimal {
                objective,
                assignment,
            } => (objective, assignment),
        };
        if let Some((incumbent, _)) = &self.incumbent {
            if objective >= *incumbent {
                return Ok(());
            }
        }
        let fractional = self
            .binaries
            .iter()
            .find(|v| !assignment[v.0].is_zero() && !assignment[v.0].is_one());
        match fractional {
            None => {
                // All binaries integral, and strictly better than the
                // incumbent by the bound test above.
                self.incumbent = Some((objective, assignment));
                Ok(())
            }
            Some(&v) => {
                for value in [Rat::zero(), Rat::one()] {
                    fixings.insert(v, value);
                    self.explore(fixings)?;
                    fixings.remove(&v);
                }
                Ok(())
            }
        }
    }
}

const PIVOT_LIMIT: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarState {
    Basic(usize),
    AtLower,
    AtUpper,
}

/// Bounded-variable two-phase simplex over a dense exact-rational tableau.
/// All variables are shifted to lower bound zero; `span[j] = None` means
/// unbounded above (slacks and artificials only).
struct Tableau {
    /// rows[r][j]: coefficient of variable j in basis row r.
    rows: Vec<Vec<Rat>>,
    /// Current value of the basic variable of each row (shifted space).
    basic_values: Vec<Rat>,
    basis: Vec<usize>,
    state: Vec<VarState>,
    span: Vec<Option<Rat>>,
    /// Artificial variables may never re-enter the basis.
    banned: Vec<bool>,
    /// Maintained reduced-cost row for the current phase objective.
    zrow: Vec<Rat>,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, pivot_row: usize, entering: usize) {
        let pivot_coef = self.rows[pivot_row][entering].clone();
        debug_assert!(!pivot_coef.is_zero());
        let inv = Rat::one() / pivot_coef;
        for c in self.rows[pivot_row].iter_mut() {
            if !c.is_zero() {
                *c *= &inv;
            }
        }
        let prow = std::mem::take(&mut self.rows[pivot_row]);
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == pivot_row {
                continue;
            }
            let factor = row[entering].clone();
            if factor.is_zero() {
                continue;
            }
            for (c, pc) in row.iter_mut().zip(&prow) {
                if !pc.is_zero() {
                    *c -= &factor * pc;
                }
            }
        }
        let zfactor = self.zrow[entering].clone();
        if !zfactor.is_zero() {
            for (c, pc) in self.zrow.iter_mut().zip(&prow) {
                if !pc.is_zero() {
                    *c -= &zfactor * pc;
                }
            }
        }
        self.rows[pivot_row] = prow;
    }

    /// Rebuilds the reduced-cost row for a new cost vector.
    fn rebuild_zrow(&mut self, costs: &[Rat]) {
        let n = self.zrow.len();
        for j in 0..n {
            let mut z = costs[j].clone();
            for (r, row) in self.rows.iter().enumerate() {
                let cb = &costs[self.basis[r]];
                if !cb.is_zero() && !row[j].is_zero() {
                    z -= cb * &row[j];
                }
            }
            self.zrow[j] = z;
        }
    }

    /// Runs Bland-rule iterations until optimal for the current zrow.
    /// Returns false if the objective is unbounded below in this phase.
    fn optimize(&mut self) -> Result<bool, LpError> {
        let n = self.zrow.len();
        loop {
            // Entering: smallest-index eligible variable (Bland).
            let mut entering = None;
            for j in 0..n {
                if self.banned[j] || matches!(self.state[j], VarState::Basic(_)) {
                    continue;
                }
                if self.span[j].as_ref().is_some_and(|s| s.is_zero()) {
                    continue;
                }
                let z = &self.zrow[j];
                let eligible = match self.state[j] {
                    VarState::AtLower => z.is_negative(),
                    VarState::AtUpper => z.is_positive(),
                    VarState::Basic(_) => false,
                };
                if eligible {
                    entering = Some(j);
                    break;
                }
            }
            let Some(entering) = entering else {
                return Ok(true);
            };
            self.pivots += 1;
            if self.pivots > PIVOT_LIMIT {
                return Err(LpError::PivotLimit);
            }

            // Direction: rising from the lower bound or falling from the
            // upper one.
            let rising = self.state[entering] == VarState::AtLower;

            // Ratio test: largest step keeping every basic variable in
            // range; ties resolved by smallest basic variable index (Bland).
            let mut best: Option<(Rat, usize)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                let d = &row[entering];
                if d.is_zero() {
                    continue;
                }
                // Rate of change of this basic value per unit step.
                let delta = if rising { -d.clone() } else { d.clone() };
                let limit = if delta.is_positive() {
                    match &self.span[self.basis[r]] {
                        Some(span) => (span - &self.basic_values[r]) / &delta,
                        None => continue,
                    }
                } else {
                    -(&self.basic_values[r] / &delta)
                };
                debug_assert!(!limit.is_negative());
                let better = match &best {
                    None => true,
                    Some((t, row_idx)) => {
                        limit < *t || (limit == *t && self.basis[r] < self.basis[*row_idx])
                    }
                };
                if better {
                    best = Some((limit, r));
                }
            }

            let own_span = self.span[entering].clone();
            let bound_flip = match (&own_span, &best) {
                (Some(span), Some((t, _))) => span <= t,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                // Unlimited improvement.
                (None, None) => return Ok(false),
            };

            if bound_flip {
                let step = own_span.expect("flip requires a finite span");
                for (r, row) in self.rows.iter().enumerate() {
                    let d = &row[entering];
                    if d.is_zero() {
                        continue;
                    }
                    let delta = if rising { -d.clone() } else { d.clone() };
                    self.basic_values[r] += delta * &step;
                }
                self.state[entering] = if rising {
                    VarState::AtUpper
                } else {
                    VarState::AtLower
                };
                continue;
            }

            let (step, leaving_row) = best.expect("pivot requires a blocking row");
            for (r, row) in self.rows.iter().enumerate() {
                if r == leaving_row {
                    continue;
                }
                let d = &row[entering];
                if d.is_zero() {
                    continue;
                }
                let delta = if rising { -d.clone() } else { d.clone() };
                self.basic_values[r] += delta * &step;
            }
            // The leaving variable lands on whichever bound blocked it.
            let leaving = self.basis[leaving_row];
            let d = &self.rows[leaving_row][entering];
            let leaving_hit_upper = if rising {
                d.is_negative()
            } else {
                d.is_positive()
            };
            self.state[leaving] = if leaving_hit_upper {
                VarState::AtUpper
            } else {
                VarState::AtLower
            };
            let entering_value = if rising {
                step
            } else {
                self.span[entering]
                    .clone()
                    .expect("falling variables have finite spans")
                    - step
            };
            self.pivot(leaving_row, entering);
            self.basis[leaving_row] = entering;
            self.state[entering] = VarState::Basic(leaving_row);
            self.basic_values[leaving_row] = entering_value;
        }
    }

    fn value_of(&self, j: usize) -> Rat {
        match self.state[j] {
            VarState::Basic(r) => self.basic_values[r].clone(),
            VarState::AtLower => Rat::zero(),
            VarState::AtUpper => self.span[j].clone().expect("AtUpper needs a finite span"),
        }
    }
}

/// Core solve: shifts variables to [0, span], builds slack/artificial rows,
/// runs phase 1 then phase 2, and reports the optimum in original
/// coordinates (minimize-normalized; the public entry points undo the sense
/// flip). `fixings` temporarily overrides variable bounds for branching.
fn simplex(p: &RationalMilp, fixings: &BTreeMap<LpVar, Rat>) -> Result<SolveResult, LpError> {
    let n_structural = p.vars.len();
    let mut lo = Vec::with_capacity(n_structural);
    let mut span: Vec<Option<Rat>> = Vec::with_capacity(n_structural);
    for (i, v) in p.vars.iter().enumerate() {
        let (l, h) = match fixings.get(&LpVar(i)) {
            Some(value) => (value.clone(), value.clone()),
            None => (v.lo.clone(), v.hi.clone()),
        };
        if l > h {
            return Ok(SolveResult::Infeasible);
        }
        span.push(Some(&h - &l));
        lo.push(l);
    }

    // Rows in shifted coordinates, right-hand sides made nonnegative.
    struct Row {
        coefs: Vec<Rat>,
        rel: Relation,
        rhs: Rat,
    }
    let mut rows = Vec::with_capacity(p.constraints.len());
    for c in &p.constraints {
        let mut coefs = vec![Rat::zero(); n_structural];
        let mut rhs = &c.rhs - c.expr.constant_part();
        for (v, coef) in c.expr.terms() {
            rhs -= coef * &lo[v.0];
            coefs[v.0] = coef.clone();
        }
        let mut rel = c.rel;
        if rhs.is_negative() {
            for coef in coefs.iter_mut() {
                if !coef.is_zero() {
                    *coef = -coef.clone();
                }
            }
            rhs = -rhs;
            rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        rows.push(Row { coefs, rel, rhs });
    }

    let m = rows.len();
    // Column layout: structural | slacks | artificials. Le rows start with
    // their slack basic; Ge and Eq rows need an artificial.
    let n_slacks = rows.iter().filter(|r| r.rel != Relation::Eq).count();
    let n_artificial = rows.iter().filter(|r| r.rel != Relation::Le).count();
    let n_total = n_structural + n_slacks + n_artificial;

    let mut tableau_rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut basic_values = Vec::with_capacity(m);
    let mut state = vec![VarState::AtLower; n_total];
    let mut full_span = span;
    full_span.extend(std::iter::repeat_with(|| None).take(n_slacks + n_artificial));
    let mut banned = vec![false; n_total];
    let mut phase1_costs = vec![Rat::zero(); n_total];

    let mut next_slack = n_structural;
    let mut next_artificial = n_structural + n_slacks;
    for (r, row) in rows.iter().enumerate() {
        let mut coefs = vec![Rat::zero(); n_total];
        coefs[..n_structural].clone_from_slice(&row.coefs);
        match row.rel {
            Relation::Le => {
                coefs[next_slack] = Rat::one();
                basis.push(next_slack);
                state[next_slack] = VarState::Basic(r);
                next_slack += 1;
            }
            Relation::Ge => {
                coefs[next_slack] = -Rat::one();
                next_slack += 1;
                coefs[next_artificial] = Rat::one();
                phase1_costs[next_artificial] = Rat::one();
                banned[next_artificial] = true;
                basis.push(next_artificial);
                state[next_artificial] = VarState::Basic(r);
                next_artificial += 1;
            }
            Relation::Eq => {
                coefs[next_artificial] = Rat::one();
                phase1_costs[next_artificial] = Rat::one();
                banned[next_artificial] = true;
                basis.push(next_artificial);
                state[next_artificial] = VarState::Basic(r);
                next_artificial += 1;
            }
        }
        basic_values.push(row.rhs.clone());
        tableau_rows.push(coefs);
    }

    let mut t = Tableau {
        rows: tableau_rows,
        basic_values,
        basis,
        state,
        span: full_span,
        banned,
        zrow: vec![Rat::zero(); n_total],
        pivots: 0,
    };

    // Phase 1: drive the artificial sum to zero. The ban on artificials
    // only blocks the entering scan; they start basic regardless.
    if n_artificial > 0 {
        t.rebuild_zrow(&phase1_costs);
        let bounded = t.optimize()?;
        debug_assert!(bounded, "phase-1 objective is bounded below by zero");
        let infeasibility: Rat = (n_structural + n_slacks..n_total)
            .map(|j| t.value_of(j))
            .sum();
        if !infeasibility.is_zero() {
            return Ok(SolveResult::Infeasible);
        }
        // Pivot basic artificials out on any nonzero non-artificial column;
        // a row without one is redundant and keeps its zero artificial.
        for r in 0..m {
            if t.basis[r] < n_structural + n_slacks {
                continue;
            }
            let entering = (0..n_structural + n_slacks)
                .find(|&j| !t.rows[r][j].is_zero() && !matches!(t.state[j], VarState::Basic(_)));
            if let Some(entering) = entering {
                debug_assert!(t.basic_values[r].is_zero());
                let entering_value = match t.state[entering] {
                    VarState::AtUpper => {
                        t.span[entering].clone().expect("upper state needs a span")
                    }
                    _ => Rat::zero(),
                };
                let leaving = t.basis[r];
                t.pivot(r, entering);
                t.basis[r] = entering;
                t.state[leaving] = VarState::AtLower;
                t.basic_values[r] = entering_value;
                t.state[entering] = VarState::Basic(r);
            }
        }
    }

    // Phase 2: the real objective, minimize-normalized.
    let mut costs = vec![Rat::zero(); n_total];
    let negate = p.sense == Sense::Maximize;
    for (v, coef) in p.objective.terms() {
        costs[v.0] = if negate { -coef.clone() } else { coef.clone() };
    }
    t.rebuild_zrow(&costs);
    if !t.optimize()? {
        return Ok(SolveResult::Unbounded);
    }

    let mut assignment = Vec::with_capacity(n_structural);
    for (j, shift) in lo.iter().enumerate() {
        assignment.push(t.value_of(j) + shift);
    }
    let mut objective = p.objective.eval(&assignment);
    if negate {
        objective = -objective;
    }
    Ok(SolveResult::Optimal {
        objective,
        assignment,
    })
}

/// Exact check that an assignment satisfies every constraint and bound.
pub fn check_assignment(p: &RationalMilp, assignment: &[Rat]) -> bool {
    assert_eq!(assignment.len(), p.vars.len());
    for (i, v) in p.vars.iter().enumerate() {
        if assignment[i] < v.lo || assignment[i] > v.hi {
            return false;
        }
        if v.binary && !assignment[i].is_zero() && !assignment[i].is_one() {
            return false;
        }
    }
    p.constraints.iter().all(|c| {
        let lhs = c.expr.eval(assignment);
        match c.rel {
            Relation::Le => lhs <= c.rhs,
            Relation::Eq => lhs == c.rhs,
            Relation::Ge => lhs >= c.rhs,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};
    use proptest::prelude::*;

    fn le(p: &mut RationalMilp, terms: &[(LpVar, Rat)], rhs: Rat) {
        let mut e = LinearExpr::zero();
        for (v, c) in terms {
            e.add_term(*v, c.clone());
        }
        p.add_constraint(e, Relation::Le, rhs);
    }

    fn ge(p: &mut RationalMilp, terms: &[(LpVar, Rat)], rhs: Rat) {
        let mut e = LinearExpr::zero();
        for (v, c) in terms {
            e.add_term(*v, c.clone());
        }
        p.add_constraint(e, Relation::Ge, rhs);
    }

    #[test]
    fn max_with_upper_bound() {
        let mut p = RationalMilp::new(Sense::Maximize);
        let x = p.add_var("x", rat_int(0), rat_int(10));
        le(&mut p, &[(x, rat_int(1))], rat(2, 3));
        p.set_objective(LinearExpr::var(x));
        match solve_lp(&p) {
            SolveResult::Optimal {
                objective,
                assignment,
            } => {
                assert_eq!(objective, rat(2, 3));
                assert_eq!(assignment[x.0], rat(2, 3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn min_sum_with_lower_bound() {
        let mut p = RationalMilp::new(Sense::Minimize);
        let x = p.add_var("x", rat_int(0), rat_int(1));
        let y = p.add_var("y", rat_int(0), rat_int(1));
        ge(&mut p, &[(x, rat_int(1)), (y, rat_int(1))], rat_int(1));
        p.set_objective(LinearExpr::var(x).plus(&LinearExpr::var(y)));
        match solve_lp(&p) {
            SolveResult::Optimal { objective, .. } => assert_eq!(objective, rat_int(1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn contradictory_constraints_infeasible() {
        let mut p = RationalMilp::new(Sense::Minimize);
        let x = p.add_var("x", rat_int(0), rat_int(5));
        ge(&mut p, &[(x, rat_int(1))], rat_int(2));
        le(&mut p, &[(x, rat_int(1))], rat_int(1));
        p.set_objective(LinearExpr::var(x));
        assert_eq!(solve_lp(&p), SolveResult::Infeasible);
    }

    #[test]
    fn equality_rows() {
        let mut p = RationalMilp::new(Sense::Minimize);
        let x = p.add_var("x", rat_int(0), rat_int(1));
        let y = p.add_var("y", rat_int(0), rat_int(1));
        let sum = LinearExpr::var(x).plus(&LinearExpr::var(y));
        p.add_constraint(sum, Relation::Eq, rat(1, 2));
        p.set_objective(LinearExpr::var(y).minus(&LinearExpr::var(x)));
        match solve_lp(&p) {
            SolveResult::Optimal {
                objective,
                assignment,
            } => {
                assert_eq!(objective, rat(-1, 2));
                assert_eq!(assignment[x.0], rat(1, 2));
                assert_eq!(assignment[y.0], rat_int(0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_lower_bounds() {
        let mut p = RationalMilp::new(Sense::Minimize);
        let s = p.add_var("s", rat_int(-1), rat_int(1));
        let t = p.add_var("t", rat_int(0), rat_int(1));
        // t >= s with s pinned at -1/3; the minimum of t is 0.
        p.add_constraint(LinearExpr::var(s), Relation::Eq, rat(-1, 3));
        ge(&mut p, &[(t, rat_int(1)), (s, rat_int(-1))], rat_int(0));
        p.set_objective(LinearExpr::var(t));
        match solve_lp(&p) {
            SolveResult::Optimal { objective, .. } => assert_eq!(objective, rat_int(0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    /// The strong-disjunction gadget from the entailment encoding:
    /// t = min(1, x + y) at x = y = 3/5 forces t = 1.
    #[test]
    fn milp_oplus_gadget() {
        let mut p = RationalMilp::new(Sense::Minimize);
        let x = p.add_var("x", rat_int(0), rat_int(1));
        let y = p.add_var("y", rat_int(0), rat_int(1));
        let t = p.add_var("t", rat_int(0), rat_int(1));
        let b = p.add_binary("b");
        p.add_constraint(LinearExpr::var(x), Relation::Eq, rat(3, 5));
        p.add_constraint(LinearExpr::var(y), Relation::Eq, rat(3, 5));
        let sum = LinearExpr::var(x).plus(&LinearExpr::var(y));
        // t <= x + y; t <= 1; t >= x + y - b; t >= b.
        p.add_constraint(LinearExpr::var(t).minus(&sum), Relation::Le, rat_int(0));
        p.add_constraint(LinearExpr::var(t), Relation::Le, rat_int(1));
        p.add_constraint(
            LinearExpr::var(t).minus(&sum).plus(&LinearExpr::var(b)),
            Relation::Ge,
            rat_int(0),
        );
        p.add_constraint(
            LinearExpr::var(t).minus(&LinearExpr::var(b)),
            Relation::Ge,
            rat_int(0),
        );
        p.set_objective(LinearExpr::var(t));
        match solve_milp(&p, &SolverConfig::default()).unwrap() {
            SolveResult::Optimal {
                objective,
                assignment,
            } => {
                assert_eq!(objective, rat_int(1));
                assert!(check_assignment(&p, &assignment));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn milp_on_pure_lp_matches_solve_lp() {
        let mut p = RationalMilp::new(Sense::Maximize);
        let x = p.add_var("x", rat_int(0), rat_int(4));
        let y = p.add_var("y", rat_int(0), rat_int(4));
        le(&mut p, &[(x, rat_int(2)), (y, rat_int(1))], rat_int(5));
        le(&mut p, &[(x, rat_int(1)), (y, rat_int(3))], rat_int(6));
        p.set_objective(LinearExpr::var(x).plus(&LinearExpr::var(y)));
        let lp = solve_lp(&p);
        let milp = solve_milp(&p, &SolverConfig::default()).unwrap();
        assert_eq!(lp, milp);
    }

    #[test]
    fn infeasible_binary_system() {
        let mut p = RationalMilp::new(Sense::Minimize);
        let b1 = p.add_binary("b1");
        let b2 = p.add_binary("b2");
        le(&mut p, &[(b1, rat_int(1)), (b2, rat_int(1))], rat_int(0));
        ge(&mut p, &[(b1, rat_int(1))], rat_int(1));
        p.set_objective(LinearExpr::var(b1));
        assert_eq!(
            solve_milp(&p, &SolverConfig::default()).unwrap(),
            SolveResult::Infeasible
        );
    }

    #[test]
    fn binary_cap_is_enforced() {
        let mut p = RationalMilp::new(Sense::Minimize);
        for i in 0..4 {
            p.add_binary(format!("b{i}"));
        }
        let config = SolverConfig {
            max_binaries: 3,
            ..SolverConfig::default()
        };
        assert_eq!(
            solve_milp(&p, &config).unwrap_err(),
            LpError::BinaryCapExceeded { count: 4, cap: 3 }
        );
    }

    #[test]
    fn milp_determinism() {
        let mut p = RationalMilp::new(Sense::Minimize);
        let x = p.add_var("x", rat_int(0), rat_int(1));
        let y = p.add_var("y", rat_int(0), rat_int(1));
        let b = p.add_binary("b");
        ge(
            &mut p,
            &[(x, rat_int(1)), (y, rat_int(1)), (b, rat_int(1))],
            rat(3, 2),
        );
        p.set_objective(LinearExpr::var(x).plus(&LinearExpr::var(y)));
        let first = solve_milp(&p, &SolverConfig::default()).unwrap();
        let second = solve_milp(&p, &SolverConfig::default()).unwrap();
        assert_eq!(first, second);
    }

    /// Random primal/dual pairs in the classic inequality form
    /// `min c.x st Ax >= b, x >= 0` vs `max b.y st A^T y <= c, y >= 0`.
    /// Entries are chosen so both sides are feasible and bounded and the
    /// box bounds never bind, making strong duality an exact equality test.
    fn duality_case(a: Vec<Vec<i64>>, b: Vec<i64>, c: Vec<i64>) -> (Rat, Rat) {
        let m = a.len();
        let n = a[0].len();
        let big = rat_int(1_000_000);

        let mut primal = RationalMilp::new(Sense::Minimize);
        let xs: Vec<LpVar> = (0..n)
            .map(|j| primal.add_var(format!("x{j}"), rat_int(0), big.clone()))
            .collect();
        for i in 0..m {
            let mut e = LinearExpr::zero();
            for j in 0..n {
                e.add_term(xs[j], rat_int(a[i][j]));
            }
            primal.add_constraint(e, Relation::Ge, rat_int(b[i]));
        }
        let mut obj = LinearExpr::zero();
        for j in 0..n {
            obj.add_term(xs[j], rat_int(c[j]));
        }
        primal.set_objective(obj);

        let mut dual = RationalMilp::new(Sense::Maximize);
        let ys: Vec<LpVar> = (0..m)
            .map(|i| dual.add_var(format!("y{i}"), rat_int(0), big.clone()))
            .collect();
        for j in 0..n {
            let mut e = LinearExpr::zero();
            for i in 0..m {
                e.add_term(ys[i], rat_int(a[i][j]));
            }
            dual.add_constraint(e, Relation::Le, rat_int(c[j]));
        }
        let mut obj = LinearExpr::zero();
        for i in 0..m {
            obj.add_term(ys[i], rat_int(b[i]));
        }
        dual.set_objective(obj);

        let p_opt = match solve_lp(&primal) {
            SolveResult::Optimal {
                objective,
                assignment,
            } => {
                assert!(check_assignment(&primal, &assignment));
                assert!(assignment.iter().all(|v| *v < big));
                objective
            }
            other => panic!("primal not optimal: {other:?}"),
        };
        let d_opt = match solve_lp(&dual) {
            SolveResult::Optimal {
                objective,
                assignment,
            } => {
                assert!(check_assignment(&dual, &assignment));
                assert!(assignment.iter().all(|v| *v < big));
                objective
            }
            other => panic!("dual not optimal: {other:?}"),
        };
        (p_opt, d_opt)
    }

    proptest! {
        #[test]
        fn lp_duality_spot_check(
            rows in prop::collection::vec(prop::collection::vec(0i64..5, 3), 1..4),
            b in prop::collection::vec(0i64..9, 4),
            c in prop::collection::vec(1i64..9, 3),
        ) {
            // Every row needs a positive entry for primal feasibility.
            let rows: Vec<Vec<i64>> = rows
                .into_iter()
                .map(|mut r| {
                    if r.iter().all(|v| *v == 0) {
                        r[0] = 1;
                    }
                    r
                })
                .collect();
            let b = b[..rows.len()].to_vec();
            let (p, d) = duality_case(rows, b, c);
            prop_assert_eq!(p, d);
        }

        #[test]
        fn optimal_assignments_resubstitute(
            bound_num in 1i64..10,
            coefs in prop::collection::vec((-4i64..5, -4i64..5), 1..5),
            rhs in prop::collection::vec(-6i64..7, 4),
        ) {
            let mut p = RationalMilp::new(Sense::Minimize);
            let x = p.add_var("x", rat_int(0), rat(bound_num, 2));
            let y = p.add_var("y", rat_int(-1), rat(bound_num, 3));
            for (i, (cx, cy)) in coefs.iter().enumerate() {
                let mut e = LinearExpr::zero();
                e.add_term(x, rat_int(*cx));
                e.add_term(y, rat_int(*cy));
                let rel = match i % 3 {
                    0 => Relation::Le,
                    1 => Relation::Ge,
                    _ => Relation::Eq,
                };
                p.add_constraint(e, rel, rat(rhs[i % rhs.len()], 2));
            }
            p.set_objective(LinearExpr::var(x).plus(&LinearExpr::var(y)));
            if let SolveResult::Optimal { objective, assignment } = solve_lp(&p) {
                prop_assert!(check_assignment(&p, &assignment));
                prop_assert_eq!(objective, LinearExpr::var(x).plus(&LinearExpr::var(y)).eval(&assignment));
            }
        }
    }
}
