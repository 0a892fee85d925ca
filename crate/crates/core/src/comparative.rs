//! Comparative belief: total preorders on the power set of a finite ground
//! set, the BW postulates, and the decision whether a preorder is induced
//! by some belief function.
//!
//! A relation `A >= B` holds in a belief model when `Bel(A) >= Bel(B)`.
//! The representability check turns this into a linear program over mass
//! variables with a maximized strictness gap: equivalent sets get equal
//! beliefs, strictly ranked sets get beliefs separated by `eps`, and the
//! preorder is realizable exactly when the optimal `eps` is positive.
//!
//! Note on direction: at the formula level, "phi is at least as believed
//! as psi" is the statement `bel(phi) >= bel(psi)`, which is 1-true exactly
//! for the implication `B(psi) -> B(phi)` (the antecedent is the *less*
//! believed side). [`compare_query`] follows that reading.

use crate::belief::{belief_table, MassFunction};
use crate::entail::{entails, EntailError, EntailmentVerdict, Theory};
use crate::lpcore::{solve_lp, LinearExpr, RationalMilp, Relation, Sense, SolveResult};
use crate::pformula::PFormula;
use crate::propcore::{PropFormula, Vocabulary, WorldSet};
use crate::rat::Rat;
use num::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComparativeError {
    #[error("relation is not a total preorder: {0}")]
    NotATotalPreorder(String),
    #[error("rank list: {0}")]
    BadRankList(String),
}

/// A reflexive comparison matrix over all subsets of a ground set of
/// `n_elements` items; entry `(a, b)` states `A >= B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparativeRelation {
    n_elements: usize,
    ge: Vec<Vec<bool>>,
}

impl ComparativeRelation {
    pub fn new(n_elements: usize, ge: Vec<Vec<bool>>) -> Self {
        let size = 1usize << n_elements;
        assert_eq!(ge.len(), size);
        assert!(ge.iter().all(|row| row.len() == size));
        ComparativeRelation { n_elements, ge }
    }

    /// Relation ranked by a rank vector over all subsets: lower rank means
    /// strictly more believed.
    pub fn from_ranks(n_elements: usize, ranks: &[usize]) -> Self {
        let size = 1usize << n_elements;
        assert_eq!(ranks.len(), size);
        let ge = (0..size)
            .map(|a| (0..size).map(|b| ranks[a] <= ranks[b]).collect())
            .collect();
        ComparativeRelation { n_elements, ge }
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn n_subsets(&self) -> usize {
        1 << self.n_elements
    }

    pub fn ge(&self, a: WorldSet, b: WorldSet) -> bool {
        self.ge[a.bits() as usize][b.bits() as usize]
    }

    pub fn strictly(&self, a: WorldSet, b: WorldSet) -> bool {
        self.ge(a, b) && !self.ge(b, a)
    }

    pub fn equivalent(&self, a: WorldSet, b: WorldSet) -> bool {
        self.ge(a, b) && self.ge(b, a)
    }

    fn subsets(&self) -> impl Iterator<Item = WorldSet> {
        (0..self.n_subsets() as u16).map(WorldSet::from_bits)
    }

    fn total_preorder_defect(&self) -> Option<String> {
        for a in self.subsets() {
            if !self.ge(a, a) {
                return Some(format!("not reflexive at {:?}", a));
            }
            for b in self.subsets() {
                if !self.ge(a, b) && !self.ge(b, a) {
                    return Some(format!("{:?} and {:?} are incomparable", a, b));
                }
                for c in self.subsets() {
                    if self.ge(a, b) && self.ge(b, c) && !self.ge(a, c) {
                        return Some(format!("transitivity fails on {:?}, {:?}, {:?}", a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// The relation `A >= B iff Bel(A) >= Bel(B)` induced by a mass function.
pub fn induced_relation(m: &MassFunction) -> ComparativeRelation {
    let table = belief_table(m);
    let size = 1usize << m.n_worlds();
    let ge = (0..size)
        .map(|a| {
            (0..size)
                .map(|b| {
                    table.value(WorldSet::from_bits(a as u16))
                        >= table.value(WorldSet::from_bits(b as u16))
                })
                .collect()
        })
        .collect();
    ComparativeRelation::new(m.n_worlds(), ge)
}

/// Violations of the BW postulates, every witnessing tuple listed.
#[derive(Debug, Clone, Default)]
pub struct BwReport {
    pub bw1_reflexivity: Vec<WorldSet>,
    pub bw1_transitivity: Vec<(WorldSet, WorldSet, WorldSet)>,
    pub bw1_totality: Vec<(WorldSet, WorldSet)>,
    /// Pairs with `A` containing `B` but not `A >= B`.
    pub bw2: Vec<(WorldSet, WorldSet)>,
    /// Triples `(a, b, c)` with `A` containing `B`, `A` disjoint from `C`,
    /// `B u C >= A u C` and yet not `B >= A`.
    pub bw3: Vec<(WorldSet, WorldSet, WorldSet)>,
    /// The empty set ranked at least as high as the full set.
    pub bw4_violated: bool,
}

impl BwReport {
    pub fn passes(&self) -> bool {
        self.bw1_reflexivity.is_empty()
            && self.bw1_transitivity.is_empty()
            && self.bw1_totality.is_empty()
            && self.bw2.is_empty()
            && self.bw3.is_empty()
            && !self.bw4_violated
    }
}

/// Checks the four postulates characterising belief-representable orders.
pub fn check_bw(rel: &ComparativeRelation) -> BwReport {
    let mut report = BwReport::default();
    let full = WorldSet::full(rel.n_elements());
    for a in rel.subsets() {
        if !rel.ge(a, a) {
            report.bw1_reflexivity.push(a);
        }
        for b in rel.subsets() {
            if !rel.ge(a, b) && !rel.ge(b, a) && a.bits() < b.bits() {
                report.bw1_totality.push((a, b));
            }
            for c in rel.subsets() {
                if rel.ge(a, b) && rel.ge(b, c) && !rel.ge(a, c) {
                    report.bw1_transitivity.push((a, b, c));
                }
            }
        }
    }
    for a in rel.subsets() {
        for b in rel.subsets() {
            if b.is_subset(a) && !rel.ge(a, b) {
                report.bw2.push((a, b));
            }
        }
    }
    for a in rel.subsets() {
        for b in rel.subsets() {
            if !b.is_subset(a) {
                continue;
            }
            for c in rel.subsets() {
                if !a.intersect(c).is_empty() {
                    continue;
                }
                if rel.ge(b.union(c), a.union(c)) && !rel.ge(b, a) {
                    report.bw3.push((a, b, c));
                }
            }
        }
    }
    report.bw4_violated = rel.ge(WorldSet::EMPTY, full);
    report
}

/// Decides whether some belief function induces exactly this relation; on
/// success returns a witnessing mass function.
///
/// The LP maximises the smallest strict gap `eps`: `Bel(A) = Bel(B)` on
/// equivalent pairs, `Bel(A) >= Bel(B) + eps` on strict ones. Strictness by
/// maximised gap avoids picking an arbitrary threshold, and feasibility of
/// a positive gap is exactly representability.
pub fn representable(rel: &ComparativeRelation) -> Result<Option<MassFunction>, ComparativeError> {
    if let Some(defect) = rel.total_preorder_defect() {
        return Err(ComparativeError::NotATotalPreorder(defect));
    }
    let n = rel.n_elements();
    let mut lp = RationalMilp::new(Sense::Maximize);
    let mass_vars: Vec<(WorldSet, _)> = (1..rel.n_subsets() as u16)
        .map(|bits| {
            let set = WorldSet::from_bits(bits);
            (
                set,
                lp.add_var(format!("m_{bits}"), Rat::zero(), Rat::one()),
            )
        })
        .collect();
    let mut total = LinearExpr::zero();
    for (_, v) in &mass_vars {
        total.add_term(*v, Rat::one());
    }
    lp.add_constraint(total, Relation::Eq, Rat::one());
    let eps = lp.add_var("eps", Rat::zero(), Rat::one());

    let bel_expr = |set: WorldSet| {
        let mut e = LinearExpr::zero();
        for (focal, v) in &mass_vars {
            if focal.is_subset(set) {
                e.add_term(*v, Rat::one());
            }
        }
        e
    };
    for a in rel.subsets() {
        for b in rel.subsets() {
            if a.bits() >= b.bits() {
                continue;
            }
            let gap = bel_expr(a).minus(&bel_expr(b));
            if rel.equivalent(a, b) {
                lp.add_constraint(gap, Relation::Eq, Rat::zero());
            } else if rel.strictly(a, b) {
                lp.add_constraint(gap.minus(&LinearExpr::var(eps)), Relation::Ge, Rat::zero());
            } else {
                // b strictly above a.
                let gap = bel_expr(b).minus(&bel_expr(a));
                lp.add_constraint(gap.minus(&LinearExpr::var(eps)), Relation::Ge, Rat::zero());
            }
        }
    }
    lp.set_objective(LinearExpr::var(eps));

    match solve_lp(&lp) {
        SolveResult::Infeasible => Ok(None),
        SolveResult::Unbounded => unreachable!("eps is bounded by 1"),
        SolveResult::Optimal {
            objective,
            assignment,
        } => {
            if objective.is_positive() {
                let entries = mass_vars
                    .iter()
                    .map(|(set, v)| (*set, assignment[v.0].clone()));
                Ok(Some(
                    MassFunction::new(n, entries).expect("the LP keeps masses normalized"),
                ))
            } else {
                Ok(None)
            }
        }
    }
}

/// Decides "`phi` is at least as believed as `psi` in every model of the
/// theory", i.e. entailment of `B(psi) -> B(phi)`.
pub fn compare_query(
    vocab: &Vocabulary,
    theory: &Theory,
    phi: &PropFormula,
    psi: &PropFormula,
    config: &crate::lpcore::SolverConfig,
) -> Result<EntailmentVerdict, EntailError> {
    compare_query_scaled(vocab, theory, phi, psi, 1, config)
}

/// The quantitative comparison "`phi` is at least `factor` times as
/// believed as `psi`": entailment of `B(psi) (+) ... (+) B(psi) -> B(phi)`,
/// which is 1-true iff `bel(phi) >= min(factor * bel(psi), 1)`.
pub fn compare_query_scaled(
    vocab: &Vocabulary,
    theory: &Theory,
    phi: &PropFormula,
    psi: &PropFormula,
    factor: u32,
    config: &crate::lpcore::SolverConfig,
) -> Result<EntailmentVerdict, EntailError> {
    assert!(factor >= 1, "the comparison needs at least one copy");
    let b_psi = PFormula::belief(psi.clone());
    let mut lhs = b_psi.clone();
    for _ in 1..factor {
        lhs = PFormula::strong_or(lhs, b_psi.clone());
    }
    let query = PFormula::implies(lhs, PFormula::belief(phi.clone()));
    entails(vocab, theory, &query, config)
}

/// Enumerates all total preorders on `k` items as rank vectors (rank 0 is
/// the top class): ordered set partitions, built by peeling off the top
/// equivalence class at each level, so every weak order appears exactly
/// once.
pub fn total_preorders(k: usize) -> Vec<Vec<usize>> {
    assert!(k <= 16, "ordered Bell numbers explode");
    let mut out = Vec::new();
    let mut ranks = vec![0usize; k];
    let all: u32 = if k == 32 { u32::MAX } else { (1 << k) - 1 };
    fn recurse(remaining: u32, rank: usize, ranks: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(ranks.clone());
            return;
        }
        // Every non-empty subset of the remaining items can be the next
        // equivalence class; iterating submasks covers each exactly once.
        let mut class = remaining;
        while class != 0 {
            for (i, slot) in ranks.iter_mut().enumerate() {
                if class >> i & 1 == 1 {
                    *slot = rank;
                }
            }
            recurse(remaining & !class, rank + 1, ranks, out);
            class = (class - 1) & remaining;
        }
    }
    recurse(all, 0, &mut ranks, &mut out);
    out
}

/// Parses the ranked-list relation format, e.g.
/// `rank 1: {p,q}; rank 2: {p} {q}; rank 3: {}`.
/// Equal rank means equivalence, earlier rank strictly greater. Every
/// subset of the inferred ground set must appear exactly once.
pub fn parse_relation(text: &str) -> Result<(Vec<String>, ComparativeRelation), ComparativeError> {
    let bad = |msg: String| ComparativeError::BadRankList(msg);
    let cleaned: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");

    // First pass: collect element names in order of first appearance.
    let mut names: Vec<String> = Vec::new();
    let mut statements = Vec::new();
    for stmt in cleaned.split(';') {
        let stmt = stmt.trim();
        if stmt.is_empty() {
            continue;
        }
        let rest = stmt
            .strip_prefix("rank")
            .ok_or_else(|| bad(format!("expected `rank N: ...`, got `{stmt}`")))?;
        let (label, sets_text) = rest
            .split_once(':')
            .ok_or_else(|| bad(format!("missing `:` in `{stmt}`")))?;
        let label: usize = label
            .trim()
            .parse()
            .map_err(|_| bad(format!("rank label `{}` is not a number", label.trim())))?;
        let mut sets = Vec::new();
        let mut rest = sets_text.trim();
        while !rest.is_empty() {
            let inner_end = rest
                .find('}')
                .ok_or_else(|| bad(format!("unterminated set in `{sets_text}`")))?;
            let inner = rest
                .strip_prefix('{')
                .ok_or_else(|| bad(format!("expected `{{` in `{sets_text}`")))?;
            let inner = &inner[..inner_end - 1];
            let mut elements = Vec::new();
            for element in inner.split(',') {
                let element = element.trim();
                if element.is_empty() {
                    continue;
                }
                if !names.iter().any(|n| n == element) {
                    names.push(element.to_string());
                }
                elements.push(element.to_string());
            }
            sets.push(elements);
            rest = rest[inner_end + 1..].trim_start();
        }
        statements.push((label, sets));
    }
    if names.len() > 4 {
        return Err(bad(format!(
            "ground set has {} elements; the cap is 4",
            names.len()
        )));
    }
    if statements.is_empty() {
        return Err(bad("no rank statements".to_string()));
    }

    let n = names.len();
    let size = 1usize << n;
    let mut ranks = vec![usize::MAX; size];
    for (idx, (label, sets)) in statements.into_iter().enumerate() {
        let expected = idx + 1;
        if label != expected {
            return Err(bad(format!(
                "rank labels must increase from 1; expected {expected}, got {label}"
            )));
        }
        for elements in sets {
            let mut bits = 0u16;
            for element in elements {
                let idx = names.iter().position(|n| *n == element).expect("collected");
                bits |= 1 << idx;
            }
            let idx = bits as usize;
            if ranks[idx] != usize::MAX {
                return Err(bad(format!(
                    "subset {{{}}} ranked twice",
                    names
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| bits >> i & 1 == 1)
                        .map(|(_, n)| n.as_str())
                        .collect::<Vec<_>>()
                        .join(",")
                )));
            }
            ranks[idx] = label - 1;
        }
    }
    if let Some(missing) = ranks.iter().position(|r| *r == usize::MAX) {
        return Err(bad(format!(
            "subset with bitmask {missing:#b} of the ground set {{{}}} is unranked",
            names.join(",")
        )));
    }
    Ok((names, ComparativeRelation::from_ranks(n, &ranks)))
}
