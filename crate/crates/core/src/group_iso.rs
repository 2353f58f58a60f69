//! Group isomorphism by generator enumeration, plain and bidirectional.
//!
//! The bidirectional decider splits the generator tree at depth
//! `d = max(1, ⌊½·log_p n⌋)`. Alice takes every depth-`d` prefix of `G` and
//! completes it greedily; Bob fixes one greedy depth-`d` prefix of `H` and
//! takes every completion. If `φ: G → H` is an isomorphism, Bob's prefix is
//! the image of one of Alice's, so some pair of full sequences is carried onto
//! each other by `φ`. Such pairs are found by comparing canonical
//! fingerprints with [`detect_common`].
//!
//! Everything here is generic over [`Structure`], so rings reuse the same
//! search over their additive group.

use std::collections::VecDeque;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{floor_log, smallest_prime_divisor, AlgebraError, CayleyTable};
use crate::collision::{self, detect_common, ChunkPlan, Fingerprint, Recompute};
use crate::generators::{
    count_irredundant_chains, extend_greedily, greedy_prefix, path_sequence, GeneratorSequence,
    GeneratorTree,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A bijection between the element indices of two structures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IsoWitness {
    pub map: Vec<usize>,
}

impl IsoWitness {
    pub fn identity(n: usize) -> Self {
        IsoWitness { map: (0..n).collect() }
    }

    pub fn is_bijection(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        self.map.len() == n
            && self.map.iter().all(|&y| y < n && !std::mem::replace(&mut seen[y], true))
    }

    /// Exhaustive check that the map is a group isomorphism.
    pub fn verify(&self, g: &CayleyTable, h: &CayleyTable) -> bool {
        g.order() == h.order()
            && self.is_bijection(g.order())
            && g.elements().all(|a| {
                g.elements()
                    .all(|b| self.map[g.mul(a, b)] == h.mul(self.map[a], self.map[b]))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Fix one generating sequence of `G`, try every image in `H`.
    Genenum,
    /// Meet-in-the-middle split of the generator tree.
    Bidi,
    /// Composition-series collision for p-groups.
    Series,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Genenum => "genenum",
            Algorithm::Bidi => "bidi",
            Algorithm::Series => "series",
        }
    }
}

/// How a decision was reached and what it cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub algorithm: Algorithm,
    pub p: Option<usize>,
    pub d: Option<usize>,
    pub delta: Option<usize>,
    pub a_count: usize,
    pub b_count: usize,
    /// Candidate images tried by generator enumeration.
    pub candidates: usize,
    pub chunk_pairs: usize,
    pub peak_fingerprints: usize,
    pub millis: u128,
    /// Set when the bidirectional decider took a shortcut instead of splitting.
    pub shortcut: Option<Shortcut>,
}

impl SearchStats {
    pub fn new(algorithm: Algorithm) -> Self {
        SearchStats {
            algorithm,
            p: None,
            d: None,
            delta: None,
            a_count: 0,
            b_count: 0,
            candidates: 0,
            chunk_pairs: 0,
            peak_fingerprints: 0,
            millis: 0,
            shortcut: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shortcut {
    /// Orders differ, or both structures are trivial.
    Order,
    /// `G` has a generating sequence of length ≤ d; fell back to generator enumeration.
    SmallGeneratingSetG,
    /// Only `H` has a generating sequence of length ≤ d.
    SmallGeneratingSetH,
    /// A cheap invariant differs.
    Invariant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoDecision {
    pub isomorphic: bool,
    pub witness: Option<IsoWitness>,
    pub stats: SearchStats,
}

impl IsoDecision {
    pub(crate) fn no(stats: SearchStats) -> Self {
        IsoDecision { isomorphic: false, witness: None, stats }
    }

    pub(crate) fn yes(witness: IsoWitness, stats: SearchStats) -> Self {
        IsoDecision { isomorphic: true, witness: Some(witness), stats }
    }
}

/// A finite structure searched through generating sequences of one of its groups.
pub trait Structure: Sync {
    /// The group whose generating sequences drive the search.
    fn group(&self) -> &CayleyTable;

    /// Canonical bytes of the structure relabeled along `gens`.
    fn fingerprint(&self, gens: &[usize]) -> Result<Fingerprint, AlgebraError>;

    /// The isomorphism extending `gens ↦ other_gens`, if there is one.
    fn induced(&self, gens: &[usize], other: &Self, other_gens: &[usize]) -> Option<IsoWitness>;

    fn order(&self) -> usize {
        self.group().order()
    }
}

impl Structure for CayleyTable {
    fn group(&self) -> &CayleyTable {
        self
    }

    fn fingerprint(&self, gens: &[usize]) -> Result<Fingerprint, AlgebraError> {
        canonical_fingerprint(self, gens)
    }

    fn induced(&self, gens: &[usize], other: &Self, other_gens: &[usize]) -> Option<IsoWitness> {
        induced_isomorphism(self, gens, other, other_gens)
    }
}

/// Elements of `group` in generator-word order: identity first, then each
/// discovered element multiplied on the right by each generator in turn.
///
/// Returns `(order, label)` with `order[label[x]] == x`, or `None` if `gens`
/// does not generate.
pub(crate) fn word_order(group: &CayleyTable, gens: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = group.order();
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    label[group.identity()] = 0;
    order.push(group.identity());
    let mut next = 0;
    while next < order.len() {
        let x = order[next];
        next += 1;
        for &g in gens {
            let y = group.mul(x, g);
            if label[y] == usize::MAX {
                label[y] = order.len();
                order.push(y);
            }
        }
    }
    (order.len() == n).then_some((order, label))
}

/// Writes `v` in a width fixed by `n`.
pub(crate) fn push_index(out: &mut Vec<u8>, v: usize, n: usize) {
    if n <= 1 << 8 {
        out.push(v as u8);
    } else if n <= 1 << 16 {
        out.extend_from_slice(&(v as u16).to_le_bytes());
    } else {
        out.extend_from_slice(&(v as u32).to_le_bytes());
    }
}

/// Relabels `group` by generator-word order from `gens` and emits the
/// relabeled table and generator labels.
///
/// Two (group, sequence) pairs have equal fingerprints exactly when some
/// isomorphism carries one sequence onto the other.
pub fn canonical_fingerprint(group: &CayleyTable, gens: &[usize]) -> Result<Fingerprint, AlgebraError> {
    let n = group.order();
    let (order, label) = word_order(group, gens).ok_or(AlgebraError::NotGenerating)?;
    let mut out = Vec::with_capacity(9 + gens.len() + n * n);
    out.push(b'G');
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out.extend_from_slice(&(gens.len() as u32).to_le_bytes());
    for &g in gens {
        push_index(&mut out, label[g], n);
    }
    for &a in &order {
        for &b in &order {
            push_index(&mut out, label[group.mul(a, b)], n);
        }
    }
    Ok(Fingerprint(out))
}

/// The homomorphism determined by `gens_g ↦ gens_h`, if it is well defined and
/// bijective.
///
/// Walks `G` in generator-word order and maps `x·g_i ↦ φ(x)·h_i`, failing on
/// the first inconsistency or collision.
pub fn induced_isomorphism(
    g: &CayleyTable,
    gens_g: &[usize],
    h: &CayleyTable,
    gens_h: &[usize],
) -> Option<IsoWitness> {
    let n = g.order();
    if h.order() != n || gens_g.len() != gens_h.len() {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut work = VecDeque::from([g.identity()]);
    while let Some(x) = work.pop_front() {
        for (&gi, &hi) in gens_g.iter().zip(gens_h) {
            let y = g.mul(x, gi);
            let image = h.mul(map[x], hi);
            if map[y] == usize::MAX {
                if used[image] {
                    return None;
                }
                map[y] = image;
                used[image] = true;
                work.push_back(y);
            } else if map[y] != image {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    let witness = IsoWitness { map };
    debug_assert!(witness.verify(g, h));
    Some(witness)
}

/// `max(1, ⌊½·log_p n⌋)`
pub fn split_depth(n: usize, p: usize) -> usize {
    (floor_log(p, n) / 2).max(1)
}

/// Generator enumeration: fix the greedy generating sequence of `G` and try
/// every irredundant chain of the same length in `H` as its image.
pub fn generator_enumeration<S: Structure>(g: &S, h: &S) -> IsoDecision {
    let start = Instant::now();
    let mut stats = SearchStats::new(Algorithm::Genenum);
    let decision = generator_enumeration_inner(g, h, &mut stats);
    stats.millis = start.elapsed().as_millis();
    IsoDecision { stats, ..decision }
}

fn generator_enumeration_inner<S: Structure>(g: &S, h: &S, stats: &mut SearchStats) -> IsoDecision {
    if g.order() != h.order() {
        stats.shortcut = Some(Shortcut::Order);
        return IsoDecision::no(stats.clone());
    }
    let fixed = extend_greedily(g.group(), &GeneratorSequence::empty());
    let k = fixed.len();
    let tree = GeneratorTree::new(h.group());
    for path in collision::prefix_paths(&tree, k) {
        if path.len() != k {
            continue;
        }
        stats.candidates += 1;
        let image = path_sequence(&path);
        if let Some(w) = g.induced(&fixed, h, &image) {
            return IsoDecision::yes(w, stats.clone());
        }
    }
    IsoDecision::no(stats.clone())
}

/// Number of images generator enumeration may try: irredundant chains in `H`
/// of the length of `G`'s greedy generating sequence.
pub fn baseline_candidate_count(g: &CayleyTable, h: &CayleyTable) -> usize {
    let k = extend_greedily(g, &GeneratorSequence::empty()).len();
    count_irredundant_chains(h, k)
}

/// Alice's and Bob's candidate sets, enumerated lazily.
pub struct SplitSets<'s, S> {
    pub p: usize,
    pub d: usize,
    g: &'s S,
    h: &'s S,
    bob_prefix: GeneratorSequence,
}

impl<'s, S: Structure> SplitSets<'s, S> {
    /// Every depth-`d` irredundant prefix of `G`, each completed greedily.
    pub fn alice(&self) -> impl Iterator<Item = GeneratorSequence> + 's {
        let tree = GeneratorTree::new(self.g.group());
        let d = self.d;
        let group = self.g.group();
        collision::prefix_paths(tree, d)
            .map(move |prefix| extend_greedily(group, &path_sequence(&prefix)))
    }

    /// Every completion of Bob's fixed prefix.
    pub fn bob(&self) -> impl Iterator<Item = GeneratorSequence> + 's {
        let tree = GeneratorTree::new(self.h.group());
        let prefix = tree.path_of(&self.bob_prefix).expect("greedy prefix is irredundant");
        collision::suffix_paths(tree, prefix).map(|p| path_sequence(&p))
    }

    pub fn bob_prefix(&self) -> &GeneratorSequence {
        &self.bob_prefix
    }

    /// Compares fingerprints of both sides under `plan` and rebuilds the
    /// witness from the least matching pair.
    pub fn collide(&self, plan: &ChunkPlan, stats: &mut SearchStats) -> IsoDecision {
        let a_stream = Recompute::new(
            || self.alice(),
            |seq: &GeneratorSequence| self.g.fingerprint(seq).expect("alice sequences generate"),
        );
        let b_stream = Recompute::new(
            || self.bob(),
            |seq: &GeneratorSequence| self.h.fingerprint(seq).expect("bob sequences generate"),
        );
        let hit = detect_common(&a_stream, &b_stream, plan);
        stats.chunk_pairs = hit.chunk_pairs;
        stats.peak_fingerprints = hit.peak_resident;
        match hit.found {
            Some((i, j)) => {
                let gs = self.alice().nth(i).expect("index from stream");
                let hs = self.bob().nth(j).expect("index from stream");
                let w = self
                    .g
                    .induced(&gs, self.h, &hs)
                    .expect("equal fingerprints always induce an isomorphism");
                IsoDecision::yes(w, stats.clone())
            }
            None => IsoDecision::no(stats.clone()),
        }
    }
}

/// Either decides directly or returns the split candidate sets.
pub enum BidiOutcome<'s, S> {
    Decided(IsoDecision),
    Split(SplitSets<'s, S>),
}

/// Computes `p` and `d`, handles structures with a generating sequence of
/// length ≤ `d`, and otherwise sets up Alice's and Bob's sides.
pub fn bidirectional_generator_enumeration<'s, S: Structure>(
    g: &'s S,
    h: &'s S,
) -> Result<BidiOutcome<'s, S>, IsoError> {
    let n = g.order();
    if h.order() != n {
        return Err(IsoError::OrderMismatch(n, h.order()));
    }
    let p = smallest_prime_divisor(n)?;
    let d = split_depth(n, p);
    let mut stats = SearchStats::new(Algorithm::Bidi);
    stats.p = Some(p);
    stats.d = Some(d);
    if g.group().has_generating_sequence_of_size(d).is_some() {
        let fallback = generator_enumeration(g, h);
        stats.candidates = fallback.stats.candidates;
        stats.shortcut = Some(Shortcut::SmallGeneratingSetG);
        return Ok(BidiOutcome::Decided(IsoDecision { stats, ..fallback }));
    }
    if h.group().has_generating_sequence_of_size(d).is_some() {
        stats.shortcut = Some(Shortcut::SmallGeneratingSetH);
        return Ok(BidiOutcome::Decided(IsoDecision::no(stats)));
    }
    let bob_prefix = greedy_prefix(h.group(), d);
    Ok(BidiOutcome::Split(SplitSets { p, d, g, h, bob_prefix }))
}

/// Bidirectional isomorphism test for any [`Structure`].
pub fn is_isomorphic<S: Structure>(g: &S, h: &S, plan: &ChunkPlan) -> IsoDecision {
    let start = Instant::now();
    let mut decision = decide(g, h, plan);
    decision.stats.delta = Some(plan.delta());
    decision.stats.millis = start.elapsed().as_millis();
    decision
}

fn decide<S: Structure>(g: &S, h: &S, plan: &ChunkPlan) -> IsoDecision {
    let mut stats = SearchStats::new(Algorithm::Bidi);
    if g.order() != h.order() {
        stats.shortcut = Some(Shortcut::Order);
        return IsoDecision::no(stats);
    }
    if g.order() == 1 {
        stats.shortcut = Some(Shortcut::Order);
        return match g.induced(&[], h, &[]) {
            Some(w) => IsoDecision::yes(w, stats),
            None => IsoDecision::no(stats),
        };
    }
    match bidirectional_generator_enumeration(g, h).expect("orders checked above") {
        BidiOutcome::Decided(d) => d,
        BidiOutcome::Split(split) => {
            stats.p = Some(split.p);
            stats.d = Some(split.d);
            stats.a_count = split.alice().count();
            stats.b_count = split.bob().count();
            split.collide(plan, &mut stats)
        }
    }
}

/// Bidirectional group isomorphism test. Groups of different orders are
/// reported non-isomorphic.
pub fn is_isomorphic_groups(g: &CayleyTable, h: &CayleyTable, plan: &ChunkPlan) -> IsoDecision {
    is_isomorphic(g, h, plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic, dihedral, direct_product, elementary_abelian, quaternion8, symmetric};

    #[test]
    fn depth_formula() {
        assert_eq!(split_depth(16, 2), 2);
        assert_eq!(split_depth(8, 2), 1);
        assert_eq!(split_depth(4, 2), 1);
        assert_eq!(split_depth(81, 3), 2);
        assert_eq!(split_depth(256, 2), 4);
    }

    #[test]
    fn fingerprints_of_z4_generators() {
        let z4 = cyclic(4);
        assert_eq!(canonical_fingerprint(&z4, &[1]), canonical_fingerprint(&z4, &[3]));
        assert_eq!(canonical_fingerprint(&z4, &[2]), Err(AlgebraError::NotGenerating));
        let v4 = elementary_abelian(2, 2);
        assert_ne!(canonical_fingerprint(&z4, &[1]).unwrap(), canonical_fingerprint(&v4, &[1, 2]).unwrap());
        assert_eq!(canonical_fingerprint(&v4, &[1, 2]), canonical_fingerprint(&v4, &[1, 2]));
    }

    #[test]
    fn induced_maps() {
        let z4 = cyclic(4);
        assert!(induced_isomorphism(&z4, &[1], &z4, &[2]).is_none());
        assert_eq!(induced_isomorphism(&z4, &[1], &z4, &[1]), Some(IsoWitness::identity(4)));
        let z6 = cyclic(6);
        let w = induced_isomorphism(&z6, &[1], &z6, &[5]).unwrap();
        assert_eq!(w.map, (0..6).map(|x| 5 * x % 6).collect::<Vec<_>>());
        assert!(w.verify(&z6, &z6));
    }

    #[test]
    fn generator_enumeration_examples() {
        assert!(!generator_enumeration(&cyclic(4), &elementary_abelian(2, 2)).isomorphic);
        assert!(!generator_enumeration(&cyclic(6), &symmetric(3).unwrap()).isomorphic);
        assert!(!generator_enumeration(&dihedral(4).unwrap(), &quaternion8()).isomorphic);
        let d = generator_enumeration(&cyclic(6), &direct_product(&cyclic(2), &cyclic(3)));
        assert!(d.isomorphic);
        assert!(d.witness.unwrap().verify(&cyclic(6), &direct_product(&cyclic(2), &cyclic(3))));
    }

    #[test]
    fn cyclic_takes_the_fallback_branch() {
        let z4 = cyclic(4);
        match bidirectional_generator_enumeration(&z4, &z4).unwrap() {
            BidiOutcome::Decided(d) => {
                assert!(d.isomorphic);
                assert_eq!(d.stats.shortcut, Some(Shortcut::SmallGeneratingSetG));
            }
            BidiOutcome::Split(_) => panic!("Z4 is cyclic"),
        }
        let e = elementary_abelian(2, 2);
        assert!(matches!(
            bidirectional_generator_enumeration(&e, &cyclic(8)),
            Err(IsoError::OrderMismatch(4, 8))
        ));
    }

    #[test]
    fn elementary_sixteen_split_sizes() {
        let g = elementary_abelian(2, 4);
        let BidiOutcome::Split(split) = bidirectional_generator_enumeration(&g, &g).unwrap() else {
            panic!("Z2^4 needs four generators");
        };
        assert_eq!(split.d, 2);
        assert_eq!(split.alice().count(), 15 * 14);
        let prefix = split.bob_prefix().clone();
        assert_eq!(prefix.len(), 2);
        assert!(split.bob().all(|s| s.starts_with(&prefix)));
        for s in split.alice().chain(split.bob()) {
            assert!(GeneratorSequence::new(&g, s.as_slice().to_vec()).is_some());
            assert!(s.generates(&g));
        }
    }

    #[test]
    fn small_decisions() {
        let plan = ChunkPlan::new(4);
        let e16 = elementary_abelian(2, 4);
        let d = is_isomorphic_groups(&e16, &e16, &plan);
        assert!(d.isomorphic);
        assert!(d.witness.unwrap().verify(&e16, &e16));
        assert!(d.stats.peak_fingerprints <= 8);

        let z2z4 = direct_product(&cyclic(2), &cyclic(4));
        assert!(!is_isomorphic_groups(&cyclic(8), &z2z4, &plan).isomorphic);
        assert!(!is_isomorphic_groups(&cyclic(8), &cyclic(4), &plan).isomorphic);
        assert!(is_isomorphic_groups(&cyclic(1), &cyclic(1), &plan).isomorphic);
    }
}
