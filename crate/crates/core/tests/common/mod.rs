//! Shared test-side machinery: an exhaustive grid oracle for truth degrees
//! that never touches the MILP path, plus deterministic generators.

use belfl_core::belief::MassFunction;
use belfl_core::pformula::{p_eval, PFormula};
use belfl_core::propcore::{Vocabulary, WorldSet};
use belfl_core::rat::Rat;
use belfl_core::Theory;
use num::{One, Zero};

/// Enumerates every mass function over `vocab` whose focal count is at most
/// `max_focal` and whose masses are multiples of `1/denom`.
pub fn grid_masses(vocab: &Vocabulary, max_focal: usize, denom: u32) -> Vec<MassFunction> {
    let sets: Vec<WorldSet> = vocab.nonempty_sets().collect();
    let mut out = Vec::new();
    let mut chosen: Vec<WorldSet> = Vec::new();

    fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 1..=(total - parts as u32 + 1) {
            prefix.push(first);
            compositions(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }

    fn recurse(
        sets: &[WorldSet],
        start: usize,
        left: usize,
        denom: u32,
        chosen: &mut Vec<WorldSet>,
        out: &mut Vec<MassFunction>,
        n_worlds: usize,
    ) {
        if !chosen.is_empty() {
            let mut splits = Vec::new();
            compositions(denom, chosen.len(), &mut Vec::new(), &mut splits);
            for split in splits {
                let entries = chosen
                    .iter()
                    .zip(&split)
                    .map(|(set, units)| (*set, Rat::new((*units).into(), denom.into())));
                out.push(MassFunction::new(n_worlds, entries).expect("grid masses normalize"));
            }
        }
        if left == 0 {
            return;
        }
        for i in start..sets.len() {
            chosen.push(sets[i]);
            recurse(sets, i + 1, left - 1, denom, chosen, out, n_worlds);
            chosen.pop();
        }
    }

    recurse(
        &sets,
        0,
        max_focal,
        denom,
        &mut chosen,
        &mut out,
        vocab.n_worlds(),
    );
    out
}

/// Truth degree by brute force over the grid: the minimum of the query over
/// every grid mass that models the theory exactly. Returns `None` when no
/// grid mass satisfies the theory.
pub fn grid_truth_degree(
    vocab: &Vocabulary,
    theory: &Theory,
    query: &PFormula,
    grid: &[MassFunction],
) -> Option<Rat> {
    let mut best: Option<Rat> = None;
    for m in grid {
        if !theory.model_class.admits(m) {
            continue;
        }
        if !theory.formulas.iter().all(|f| p_eval(vocab, m, f).is_one()) {
            continue;
        }
        let value = p_eval(vocab, m, query);
        best = Some(match best {
            None => value,
            Some(b) => b.min(value),
        });
        if best.as_ref().is_some_and(|b| b.is_zero()) {
            break;
        }
    }
    best
}
