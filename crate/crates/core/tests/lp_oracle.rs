//! Independent cross-check of the simplex on two-variable programs: with
//! finite box bounds the feasible set is a compact polygon, so the optimum
//! sits on an intersection of two boundary lines. Enumerating all such
//! intersections and filtering by feasibility gives an oracle that shares
//! no code with the solver.

use belfl_core::lpcore::{
    solve_lp, LinearExpr, LpVar, RationalMilp, Relation, Sense, SolveResult,
};
use belfl_core::rat::{rat, rat_int, Rat};
use num::Zero;
use proptest::prelude::*;

#[derive(Clone, Debug)]
struct Line {
    // a x + b y = c
    a: Rat,
    b: Rat,
    c: Rat,
}

#[derive(Clone, Debug)]
struct TwoVarLp {
    bounds: [(Rat, Rat); 2],
    constraints: Vec<(Rat, Rat, Relation, Rat)>,
    objective: (Rat, Rat),
}

impl TwoVarLp {
    fn feasible(&self, x: &Rat, y: &Rat) -> bool {
        if *x < self.bounds[0].0 || *x > self.bounds[0].1 {
            return false;
        }
        if *y < self.bounds[1].0 || *y > self.bounds[1].1 {
            return false;
        }
        self.constraints.iter().all(|(a, b, rel, c)| {
            let lhs = a * x + b * y;
            match rel {
                Relation::Le => lhs <= *c,
                Relation::Eq => lhs == *c,
                Relation::Ge => lhs >= *c,
            }
        })
    }

    fn boundary_lines(&self) -> Vec<Line> {
        let mut lines: Vec<Line> = self
            .constraints
            .iter()
            .map(|(a, b, _, c)| Line {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
            })
            .collect();
        lines.push(Line {
            a: rat_int(1),
            b: rat_int(0),
            c: self.bounds[0].0.clone(),
        });
        lines.push(Line {
            a: rat_int(1),
            b: rat_int(0),
            c: self.bounds[0].1.clone(),
        });
        lines.push(Line {
            a: rat_int(0),
            b: rat_int(1),
            c: self.bounds[1].0.clone(),
        });
        lines.push(Line {
            a: rat_int(0),
            b: rat_int(1),
            c: self.bounds[1].1.clone(),
        });
        lines
    }

    /// Minimum of the objective over all feasible pairwise line
    /// intersections; `None` means infeasible.
    fn oracle_minimum(&self) -> Option<Rat> {
        let lines = self.boundary_lines();
        let mut best: Option<Rat> = None;
        for (i, l1) in lines.iter().enumerate() {
            for l2 in &lines[i + 1..] {
                let det = &l1.a * &l2.b - &l2.a * &l1.b;
                if det.is_zero() {
                    continue;
                }
                let x = (&l1.c * &l2.b - &l2.c * &l1.b) / &det;
                let y = (&l1.a * &l2.c - &l2.a * &l1.c) / &det;
                if !self.feasible(&x, &y) {
                    continue;
                }
                let value = &self.objective.0 * &x + &self.objective.1 * &y;
                best = Some(match best {
                    None => value,
                    Some(b) => b.min(value),
                });
            }
        }
        best
    }

    fn to_milp(&self) -> (RationalMilp, LpVar, LpVar) {
        let mut p = RationalMilp::new(Sense::Minimize);
        let x = p.add_var("x", self.bounds[0].0.clone(), self.bounds[0].1.clone());
        let y = p.add_var("y", self.bounds[1].0.clone(), self.bounds[1].1.clone());
        for (a, b, rel, c) in &self.constraints {
            let mut e = LinearExpr::zero();
            e.add_term(x, a.clone());
            e.add_term(y, b.clone());
            p.add_constraint(e, *rel, c.clone());
        }
        let mut obj = LinearExpr::zero();
        obj.add_term(x, self.objective.0.clone());
        obj.add_term(y, self.objective.1.clone());
        p.set_objective(obj);
        (p, x, y)
    }
}

fn check_against_oracle(lp: &TwoVarLp) {
    let (milp, _, _) = lp.to_milp();
    match (solve_lp(&milp), lp.oracle_minimum()) {
        (
            SolveResult::Optimal {
                objective,
                assignment,
            },
            Some(oracle),
        ) => {
            assert_eq!(objective, oracle, "{lp:?}");
            assert!(lp.feasible(&assignment[0], &assignment[1]), "{lp:?}");
        }
        (SolveResult::Infeasible, None) => {}
        (solver, oracle) => panic!("solver {solver:?} vs oracle {oracle:?} on {lp:?}"),
    }
}

#[test]
fn known_instances() {
    // A plain bounded polygon.
    let lp = TwoVarLp {
        bounds: [(rat_int(0), rat_int(4)), (rat_int(0), rat_int(4))],
        constraints: vec![
            (rat_int(1), rat_int(1), Relation::Ge, rat_int(2)),
            (rat_int(2), rat_int(1), Relation::Le, rat_int(6)),
        ],
        objective: (rat_int(1), rat(-1, 2)),
    };
    check_against_oracle(&lp);

    // Feasible set is a single point (two equalities).
    let lp = TwoVarLp {
        bounds: [(rat_int(-1), rat_int(1)), (rat_int(-1), rat_int(1))],
        constraints: vec![
            (rat_int(1), rat_int(1), Relation::Eq, rat(1, 2)),
            (rat_int(1), rat_int(-1), Relation::Eq, rat(1, 6)),
        ],
        objective: (rat_int(3), rat_int(7)),
    };
    check_against_oracle(&lp);

    // Infeasible.
    let lp = TwoVarLp {
        bounds: [(rat_int(0), rat_int(1)), (rat_int(0), rat_int(1))],
        constraints: vec![(rat_int(1), rat_int(1), Relation::Ge, rat_int(3))],
        objective: (rat_int(1), rat_int(0)),
    };
    check_against_oracle(&lp);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn simplex_matches_vertex_enumeration(
        lo_x in -3i64..1, hi_x in 1i64..5,
        lo_y in -3i64..1, hi_y in 1i64..5,
        rows in prop::collection::vec(
            (-3i64..4, -3i64..4, 0usize..3, -4i64..5),
            0..5,
        ),
        px in -3i64..4, py in -3i64..4,
    ) {
        let lp = TwoVarLp {
            bounds: [
                (rat(lo_x, 2), rat(hi_x, 2)),
                (rat(lo_y, 2), rat(hi_y, 2)),
            ],
            constraints: rows
                .into_iter()
                .map(|(a, b, rel, c)| {
                    let rel = match rel {
                        0 => Relation::Le,
                        1 => Relation::Ge,
                        _ => Relation::Eq,
                    };
                    (rat(a, 2), rat(b, 2), rel, rat(c, 3))
                })
                .collect(),
            objective: (rat_int(px), rat_int(py)),
        };
        check_against_oracle(&lp);
    }
}
