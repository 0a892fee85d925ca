//! Mass functions, belief and plausibility, and the Moebius transform.
//!
//! A mass function is an exact-rational probability distribution over the
//! non-empty subsets of the world set; its support elements are the focal
//! sets. Belief on a formula sums the masses of the focal sets contained in
//! its model set, and probabilities on modal formulas sum the masses of the
//! epistemic models satisfying them. All arithmetic is exact.

use crate::mel::{self, characteristic_formula, EpistemicModel, MelFormula};
use crate::propcore::{PropFormula, Vocabulary, WorldSet};
use crate::rat::{fmt_rat, in_unit, Rat};
use num::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BeliefError {
    #[error("mass assigned to the empty set")]
    MassOnEmptySet,
    #[error("focal set {0:?} lies outside the {1}-world universe")]
    FocalSetOutOfRange(WorldSet, usize),
    #[error("focal set listed twice")]
    DuplicateFocalSet,
    #[error("mass {0} outside [0,1]")]
    MassOutOfRange(String),
    #[error("masses sum to {0}, not 1")]
    MassesDoNotSumToOne(String),
    #[error("not a belief function: recovered mass {mass} on set {set:?} is negative")]
    NotABeliefFunction { set: WorldSet, mass: String },
    #[error("not a probability on modal formulas: {0}")]
    NotAProbability(String),
    #[error("belief table must map the empty set to 0")]
    TableEmptySetNonZero,
    #[error("belief table must map the full set to 1")]
    TableFullSetNotOne,
    #[error("belief table value {0} outside [0,1]")]
    TableValueOutOfRange(String),
    #[error("belief table not monotone: {0:?} above one of its supersets")]
    TableNotMonotone(WorldSet),
}

/// Basic probability assignment: exact-rational masses on non-empty world
/// sets summing to one. Zero entries are dropped, so the keys are exactly
/// the focal sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassFunction {
    n_worlds: usize,
    masses: BTreeMap<WorldSet, Rat>,
}

impl MassFunction {
    pub fn new(
        n_worlds: usize,
        entries: impl IntoIterator<Item = (WorldSet, Rat)>,
    ) -> Result<Self, BeliefError> {
        let universe = WorldSet::full(n_worlds);
        let mut masses = BTreeMap::new();
        let mut total = Rat::zero();
        for (set, value) in entries {
            if set.is_empty() {
                if value.is_zero() {
                    continue;
                }
                return Err(BeliefError::MassOnEmptySet);
            }
            if !set.is_subset(universe) {
                return Err(BeliefError::FocalSetOutOfRange(set, n_worlds));
            }
            if !in_unit(&value) {
                return Err(BeliefError::MassOutOfRange(fmt_rat(&value)));
            }
            if value.is_zero() {
                continue;
            }
            total += &value;
            if masses.insert(set, value).is_some() {
                return Err(BeliefError::DuplicateFocalSet);
            }
        }
        if !total.is_one() {
            return Err(BeliefError::MassesDoNotSumToOne(fmt_rat(&total)));
        }
        Ok(MassFunction { n_worlds, masses })
    }

    /// Total ignorance: all mass on the full world set.
    pub fn vacuous(n_worlds: usize) -> Self {
        let mut masses = BTreeMap::new();
        masses.insert(WorldSet::full(n_worlds), Rat::one());
        MassFunction { n_worlds, masses }
    }

    pub fn n_worlds(&self) -> usize {
        self.n_worlds
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = (WorldSet, &Rat)> {
        self.masses.iter().map(|(s, v)| (*s, v))
    }

    pub fn mass(&self, set: WorldSet) -> Rat {
        self.masses.get(&set).cloned().unwrap_or_else(Rat::zero)
    }

    /// `Bel(A)`: total mass of the focal sets contained in `A`.
    pub fn bel_set(&self, set: WorldSet) -> Rat {
        self.masses
            .iter()
            .filter(|(focal, _)| focal.is_subset(set))
            .map(|(_, v)| v)
            .sum()
    }

    /// `Pl(A)`: total mass of the focal sets intersecting `A`.
    pub fn pl_set(&self, set: WorldSet) -> Rat {
        self.masses
            .iter()
            .filter(|(focal, _)| !focal.intersect(set).is_empty())
            .map(|(_, v)| v)
            .sum()
    }

    /// Focal sets form a chain under inclusion.
    pub fn is_consonant(&self) -> bool {
        let sets: Vec<WorldSet> = self.masses.keys().copied().collect();
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                if !a.is_subset(*b) && !b.is_subset(*a) {
                    return false;
                }
            }
        }
        true
    }

    /// All focal sets are singletons.
    pub fn is_probability(&self) -> bool {
        self.masses.keys().all(|s| s.len() == 1)
    }
}

/// Restriction on the class of admissible belief-function models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModelClass {
    #[default]
    GeneralBelief,
    /// Focal sets are singletons: belief is a probability measure.
    Probability,
    /// Focal sets are nested: belief is a necessity measure.
    Necessity,
}

impl ModelClass {
    pub fn admits(self, m: &MassFunction) -> bool {
        match self {
            ModelClass::GeneralBelief => true,
            ModelClass::Probability => m.is_probability(),
            ModelClass::Necessity => m.is_consonant(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelClass::GeneralBelief => "general",
            ModelClass::Probability => "probability",
            ModelClass::Necessity => "necessity",
        }
    }
}

impl std::str::FromStr for ModelClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general" | "belief" => Ok(ModelClass::GeneralBelief),
            "probability" | "prob" => Ok(ModelClass::Probability),
            "necessity" | "nec" => Ok(ModelClass::Necessity),
            other => Err(format!(
                "unknown model class `{other}` (expected general, probability or necessity)"
            )),
        }
    }
}

/// `bel(phi) = Bel(Mod(phi))`.
pub fn bel(vocab: &Vocabulary, m: &MassFunction, phi: &PropFormula) -> Rat {
    m.bel_set(phi.mod_set(vocab))
}

/// `pl(phi) = Pl(Mod(phi))`, the dual of belief: equals `1 - bel(!phi)`.
pub fn pl(vocab: &Vocabulary, m: &MassFunction, phi: &PropFormula) -> Rat {
    m.pl_set(phi.mod_set(vocab))
}

/// Belief tabulated on every subset of the world set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefTable {
    n_worlds: usize,
    values: Vec<Rat>,
}

impl BeliefTable {
    /// Validates the defining invariants: empty set at 0, full set at 1,
    /// values in [0,1] and monotone under inclusion.
    pub fn new(n_worlds: usize, values: Vec<Rat>) -> Result<Self, BeliefError> {
        let size = 1usize << n_worlds;
        assert_eq!(values.len(), size, "table must cover all {size} subsets");
        if !values[0].is_zero() {
            return Err(BeliefError::TableEmptySetNonZero);
        }
        if !values[size - 1].is_one() {
            return Err(BeliefError::TableFullSetNotOne);
        }
        for v in &values {
            if !in_unit(v) {
                return Err(BeliefError::TableValueOutOfRange(fmt_rat(v)));
            }
        }
        // Single-bit supersets suffice for monotonicity, by transitivity.
        for bits in 0..size {
            for w in 0..n_worlds {
                if bits & (1 << w) == 0 && values[bits] > values[bits | (1 << w)] {
                    return Err(BeliefError::TableNotMonotone(WorldSet::from_bits(
                        bits as u16,
                    )));
                }
            }
        }
        Ok(BeliefTable { n_worlds, values })
    }

    pub fn n_worlds(&self) -> usize {
        self.n_worlds
    }

    pub fn value(&self, set: WorldSet) -> &Rat {
        &self.values[set.bits() as usize]
    }

    /// Checks the inclusion-exclusion inequality at order `k` (2 or 3) on
    /// every tuple of subsets, returning the violating tuples.
    pub fn k_monotone_violations(&self, k: usize) -> Vec<Vec<WorldSet>> {
        assert!(k == 2 || k == 3, "checked at orders 2 and 3 only");
        let size = 1usize << self.n_worlds;
        let mut out = Vec::new();
        for a in 0..size {
            for b in a..size {
                if k == 2 {
                    let lhs = &self.values[a | b];
                    let rhs = &self.values[a] + &self.values[b] - &self.values[a & b];
                    if *lhs < rhs {
                        out.push(vec![
                            WorldSet::from_bits(a as u16),
                            WorldSet::from_bits(b as u16),
                        ]);
                    }
                    continue;
                }
                for c in b..size {
                    let lhs = &self.values[a | b | c];
                    let rhs = &self.values[a] + &self.values[b] + &self.values[c]
                        - &self.values[a & b]
                        - &self.values[a & c]
                        - &self.values[b & c]
                        + &self.values[a & b & c];
                    if *lhs < rhs {
                        out.push(vec![
                            WorldSet::from_bits(a as u16),
                            WorldSet::from_bits(b as u16),
                            WorldSet::from_bits(c as u16),
                        ]);
                    }
                }
            }
        }
        out
    }
}

/// Tabulates `Bel` on all subsets by the subset-sum zeta transform.
pub fn belief_table(m: &MassFunction) -> BeliefTable {
    let n = m.n_worlds();
    let size = 1usize << n;
    let mut values = vec![Rat::zero(); size];
    for (set, v) in m.focal_sets() {
        values[set.bits() as usize] += v;
    }
    for w in 0..n {
        for bits in 0..size {
            if bits & (1 << w) != 0 {
                let below = values[bits ^ (1 << w)].clone();
                values[bits] += below;
            }
        }
    }
    BeliefTable {
        n_worlds: n,
        values,
    }
}

/// Recovers the unique mass function with `Bel(E) = sum of m(F) over F
/// contained in E`, by the inverse zeta (Moebius) transform over the subset
/// lattice. Rejects tables whose recovered masses go negative.
pub fn mobius(table: &BeliefTable) -> Result<MassFunction, BeliefError> {
    let n = table.n_worlds;
    let size = 1usize << n;
    let mut values = table.values.clone();
    for w in 0..n {
        for bits in 0..size {
            if bits & (1 << w) != 0 {
                let below = values[bits ^ (1 << w)].clone();
                values[bits] -= below;
            }
        }
    }
    let mut entries = Vec::new();
    for (bits, v) in values.into_iter().enumerate() {
        if v.is_negative() {
            return Err(BeliefError::NotABeliefFunction {
                set: WorldSet::from_bits(bits as u16),
                mass: fmt_rat(&v),
            });
        }
        if !v.is_zero() {
            if bits == 0 {
                return Err(BeliefError::MassOnEmptySet);
            }
            entries.push((WorldSet::from_bits(bits as u16), v));
        }
    }
    MassFunction::new(n, entries)
}

/// `mu(Phi)`: total mass of the epistemic models satisfying `Phi`.
pub fn mu_of_mel(vocab: &Vocabulary, m: &MassFunction, phi: &MelFormula) -> Rat {
    let compiled = mel::compile(vocab, phi);
    m.focal_sets()
        .filter(|(set, _)| {
            compiled.sat(EpistemicModel::new(*set).expect("focal sets are non-empty"))
        })
        .map(|(_, v)| v)
        .sum()
}

/// Reconstructs the mass function behind a probability on modal formulas by
/// probing it on the characteristic formulas: `m(E) = mu(Sigma_E)`.
pub fn mass_from_mu<F>(vocab: &Vocabulary, mut mu: F) -> Result<MassFunction, BeliefError>
where
    F: FnMut(&MelFormula) -> Rat,
{
    let mut entries = Vec::new();
    let mut total = Rat::zero();
    for set in vocab.nonempty_sets() {
        let e = EpistemicModel::new(set).expect("sets are non-empty");
        let sigma = characteristic_formula(vocab, e);
        let value = mu(&sigma);
        if value.is_negative() {
            return Err(BeliefError::NotAProbability(format!(
                "value {} on a characteristic formula is negative",
                fmt_rat(&value)
            )));
        }
        total += &value;
        if !value.is_zero() {
            entries.push((set, value));
        }
    }
    if !total.is_one() {
        return Err(BeliefError::NotAProbability(format!(
            "characteristic-formula values sum to {}, not 1",
            fmt_rat(&total)
        )));
    }
    MassFunction::new(vocab.n_worlds(), entries)
}

/// Pseudo-random mass function: up to `max_focal` focal sets with masses of
/// denominator at most `max_denominator`.
pub fn random_mass<R: Rng>(
    rng: &mut R,
    n_worlds: usize,
    max_focal: usize,
    max_denominator: u32,
) -> MassFunction {
    let n_sets = (1usize << n_worlds) - 1;
    let k = rng.gen_range(1..=max_focal.min(n_sets));
    let mut all: Vec<u16> = (1..=n_sets as u16).collect();
    all.shuffle(rng);
    let chosen = &all[..k];

    let denom = rng.gen_range(k as u32..=max_denominator.max(k as u32));
    // A composition of `denom` into k positive parts via k-1 distinct cuts.
    let mut cuts: Vec<u32> = (1..denom).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<u32> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(denom);

    let entries = chosen.iter().enumerate().map(|(i, bits)| {
        let part = cuts[i + 1] - cuts[i];
        (
            WorldSet::from_bits(*bits),
            Rat::new(part.into(), denom.into()),
        )
    });
    MassFunction::new(n_worlds, entries).expect("composition sums to one")
}

/// Random mass restricted to a class: rejection sampling for consonance,
/// direct construction for probabilities.
pub fn random_mass_in_class<R: Rng>(
    rng: &mut R,
    n_worlds: usize,
    max_focal: usize,
    max_denominator: u32,
    class: ModelClass,
) -> MassFunction {
    match class {
        ModelClass::GeneralBelief => random_mass(rng, n_worlds, max_focal, max_denominator),
        ModelClass::Probability => loop {
            let m = random_mass(rng, n_worlds, max_focal.min(n_worlds), max_denominator);
            let singletons: Result<MassFunction, _> = MassFunction::new(
                n_worlds,
                m.focal_sets().map(|(s, v)| {
                    let w = s.worlds().next().expect("non-empty");
                    (WorldSet::singleton(w), v.clone())
                }),
            );
            // Collapsing sets to representatives may merge keys; retry then.
            if let Ok(p) = singletons {
                return p;
            }
        },
        ModelClass::Necessity => loop {
            let m = random_mass(rng, n_worlds, max_focal, max_denominator);
            if m.is_consonant() {
                return m;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propcore::parse_prop;
    use crate::rat::{rat, rat_int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vocab_p() -> Vocabulary {
        Vocabulary::new(&["p"]).unwrap()
    }

    fn vocab_pq() -> Vocabulary {
        Vocabulary::new(&["p", "q"]).unwrap()
    }

    /// m({w_p}) = 1/3, m(Omega) = 2/3 over the single variable p.
    fn third_mass(vocab: &Vocabulary) -> MassFunction {
        let p_world = parse_prop("p", vocab).unwrap().mod_set(vocab);
        MassFunction::new(
            vocab.n_worlds(),
            vec![(p_world, rat(1, 3)), (vocab.full_set(), rat(2, 3))],
        )
        .unwrap()
    }

    #[test]
    fn constructor_rejects_bad_input() {
        let err = MassFunction::new(2, vec![(WorldSet::EMPTY, rat(1, 2))]).unwrap_err();
        assert_eq!(err, BeliefError::MassOnEmptySet);
        let err = MassFunction::new(2, vec![(WorldSet::from_bits(1), rat(1, 2))]).unwrap_err();
        assert!(matches!(err, BeliefError::MassesDoNotSumToOne(_)));
        let err = MassFunction::new(
            2,
            vec![
                (WorldSet::from_bits(1), rat(1, 2)),
                (WorldSet::from_bits(1), rat(1, 2)),
            ],
        )
        .unwrap_err();
        assert_eq!(err, BeliefError::DuplicateFocalSet);
    }

    #[test]
    fn bel_examples() {
        let v = vocab_pq();
        let vacuous = MassFunction::vacuous(v.n_worlds());
        assert_eq!(
            bel(&v, &vacuous, &parse_prop("p|q", &v).unwrap()),
            rat_int(0)
        );
        assert_eq!(
            bel(&v, &vacuous, &parse_prop("p|!p", &v).unwrap()),
            rat_int(1)
        );

        let v1 = vocab_p();
        let m = third_mass(&v1);
        assert_eq!(bel(&v1, &m, &parse_prop("p", &v1).unwrap()), rat(1, 3));
        assert_eq!(bel(&v1, &m, &parse_prop("!p", &v1).unwrap()), rat_int(0));
        assert_eq!(bel(&v1, &m, &parse_prop("p|!p", &v1).unwrap()), rat_int(1));

        // Uniform probability on the 4 worlds of {p,q}.
        let uniform = MassFunction::new(
            v.n_worlds(),
            v.worlds().map(|w| (WorldSet::singleton(w), rat(1, 4))),
        )
        .unwrap();
        assert_eq!(bel(&v, &uniform, &parse_prop("p", &v).unwrap()), rat(1, 2));
    }

    #[test]
    fn pl_examples() {
        let v1 = vocab_p();
        let vacuous = MassFunction::vacuous(v1.n_worlds());
        assert_eq!(
            pl(&v1, &vacuous, &parse_prop("p", &v1).unwrap()),
            rat_int(1)
        );

        let m = third_mass(&v1);
        assert_eq!(pl(&v1, &m, &parse_prop("!p", &v1).unwrap()), rat(2, 3));
        assert_eq!(pl(&v1, &m, &parse_prop("p & !p", &v1).unwrap()), rat_int(0));
    }

    #[test]
    fn belief_table_examples() {
        // m({w1}) = 3/10, m(Omega) = 7/10 on one variable.
        let m = MassFunction::new(
            2,
            vec![
                (WorldSet::from_bits(0b01), rat(3, 10)),
                (WorldSet::from_bits(0b11), rat(7, 10)),
            ],
        )
        .unwrap();
        let t = belief_table(&m);
        assert_eq!(*t.value(WorldSet::EMPTY), rat_int(0));
        assert_eq!(*t.value(WorldSet::from_bits(0b01)), rat(3, 10));
        assert_eq!(*t.value(WorldSet::from_bits(0b10)), rat_int(0));
        assert_eq!(*t.value(WorldSet::from_bits(0b11)), rat_int(1));

        let vacuous = MassFunction::vacuous(2);
        let t = belief_table(&vacuous);
        assert_eq!(*t.value(WorldSet::from_bits(0b01)), rat_int(0));
        assert_eq!(*t.value(WorldSet::from_bits(0b11)), rat_int(1));
    }

    #[test]
    fn mobius_round_trip_and_rejection() {
        let m = MassFunction::new(
            2,
            vec![
                (WorldSet::from_bits(0b01), rat(3, 10)),
                (WorldSet::from_bits(0b11), rat(7, 10)),
            ],
        )
        .unwrap();
        assert_eq!(mobius(&belief_table(&m)).unwrap(), m);

        // Uniform probability Bel(E) = |E| / |Omega| recovers singleton masses.
        let uniform =
            BeliefTable::new(2, vec![rat_int(0), rat(1, 2), rat(1, 2), rat_int(1)]).unwrap();
        let m = mobius(&uniform).unwrap();
        assert_eq!(m.mass(WorldSet::from_bits(0b01)), rat(1, 2));
        assert_eq!(m.mass(WorldSet::from_bits(0b10)), rat(1, 2));
        assert_eq!(m.mass(WorldSet::from_bits(0b11)), rat_int(0));

        // Bel({w1}) = Bel({w2}) = 6/10 forces m(Omega) = -1/5: rejected.
        let bad = BeliefTable::new(2, vec![rat_int(0), rat(3, 5), rat(3, 5), rat_int(1)]).unwrap();
        match mobius(&bad).unwrap_err() {
            BeliefError::NotABeliefFunction { set, mass } => {
                assert_eq!(set, WorldSet::from_bits(0b11));
                assert_eq!(mass, "-1/5");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn mu_of_mel_examples() {
        let v = vocab_p();
        let m = third_mass(&v);
        // mu([](phi)) coincides with bel(phi).
        for phi in ["p", "!p", "p|!p", "p&!p"] {
            let f = parse_prop(phi, &v).unwrap();
            assert_eq!(
                mu_of_mel(&v, &m, &MelFormula::Box(f.clone())),
                bel(&v, &m, &f),
                "{phi}"
            );
        }
        // A MEL validity gets probability 1 under any mass.
        let d_axiom = mel::parse_mel("[](p) -> <>(p)", &v).unwrap();
        assert_eq!(mu_of_mel(&v, &m, &d_axiom), rat_int(1));
        // Ignorance formula under the vacuous mass.
        let vac = MassFunction::vacuous(v.n_worlds());
        let unknown = mel::parse_mel("<>(p) & <>(!p)", &v).unwrap();
        assert_eq!(mu_of_mel(&v, &vac, &unknown), rat_int(1));
    }

    #[test]
    fn mass_from_mu_round_trip() {
        let v = vocab_pq();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let m = random_mass(&mut rng, v.n_worlds(), 5, 30);
            let recovered = mass_from_mu(&v, |phi| mu_of_mel(&v, &m, phi)).unwrap();
            assert_eq!(recovered, m);
        }
    }

    #[test]
    fn mass_from_mu_vacuous_and_rejection() {
        let v = vocab_p();
        let sigma_omega = characteristic_formula(&v, EpistemicModel::new(v.full_set()).unwrap());
        let vac = mass_from_mu(&v, |phi| {
            if *phi == sigma_omega {
                rat_int(1)
            } else {
                rat_int(0)
            }
        })
        .unwrap();
        assert_eq!(vac, MassFunction::vacuous(v.n_worlds()));

        let err = mass_from_mu(&v, |phi| {
            if *phi == sigma_omega {
                rat(9, 10)
            } else {
                rat_int(0)
            }
        })
        .unwrap_err();
        assert!(matches!(err, BeliefError::NotAProbability(_)));
    }

    #[test]
    fn duality_and_b_axioms_on_random_masses() {
        let v = vocab_pq();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let formulas = ["p", "q", "p & q", "p | q", "p -> q", "!p", "p <-> q"];
        for _ in 0..25 {
            let m = random_mass(&mut rng, v.n_worlds(), 6, 40);
            for text in formulas {
                let f = parse_prop(text, &v).unwrap();
                let not_f = PropFormula::not(f.clone());
                // pl = 1 - bel of the negation, exactly.
                assert_eq!(pl(&v, &m, &f), rat_int(1) - bel(&v, &m, &not_f));
            }
            // B1 and B3.
            assert_eq!(bel(&v, &m, &parse_prop("p | !p", &v).unwrap()), rat_int(1));
            assert_eq!(bel(&v, &m, &parse_prop("p & !p", &v).unwrap()), rat_int(0));
            assert_eq!(
                bel(&v, &m, &parse_prop("p -> q", &v).unwrap()),
                bel(&v, &m, &parse_prop("!p | q", &v).unwrap())
            );
            // B2 at order 2 via the tabulated check.
            assert!(belief_table(&m).k_monotone_violations(2).is_empty());
        }
    }

    #[test]
    fn consonant_mass_is_min_decomposable() {
        let v = vocab_pq();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let formulas = ["p", "q", "p | q", "p -> q", "!q"];
        for _ in 0..20 {
            let m = random_mass_in_class(&mut rng, v.n_worlds(), 4, 30, ModelClass::Necessity);
            assert!(m.is_consonant());
            for a in formulas {
                for b in formulas {
                    let fa = parse_prop(a, &v).unwrap();
                    let fb = parse_prop(b, &v).unwrap();
                    let conj = PropFormula::and(fa.clone(), fb.clone());
                    let lhs = bel(&v, &m, &conj);
                    let rhs = bel(&v, &m, &fa).min(bel(&v, &m, &fb));
                    assert_eq!(lhs, rhs, "{a} /\\ {b}");
                }
            }
        }
    }

    #[test]
    fn probability_mass_is_additive() {
        let v = vocab_pq();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let m = random_mass_in_class(&mut rng, v.n_worlds(), 4, 30, ModelClass::Probability);
            assert!(m.is_probability());
            let p = parse_prop("p & q", &v).unwrap();
            let q = parse_prop("!p & q", &v).unwrap();
            let disj = PropFormula::or(p.clone(), q.clone());
            assert_eq!(bel(&v, &m, &disj), bel(&v, &m, &p) + bel(&v, &m, &q));
            assert_eq!(bel(&v, &m, &p), pl(&v, &m, &p));
        }
    }

    #[test]
    fn random_mass_respects_denominator_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let m = random_mass(&mut rng, 8, 8, 60);
            let total: Rat = m.focal_sets().map(|(_, v)| v).sum();
            assert_eq!(total, rat_int(1));
            for (_, v) in m.focal_sets() {
                assert!(*v.denom() <= 60.into());
            }
        }
    }
}
