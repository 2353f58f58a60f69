//! Composition series built from simple minimal normal subgroups, and the
//! p-group isomorphism test that collides Alice's and Bob's series sets.
//!
//! A series is grown socle by socle: inside `F_0 = G` pick simple minimal
//! normal subgroups one at a time until their product is `soc(F_0)`, then
//! continue in `F_1 = F_0/soc(F_0)`, and so on. Every choice is numbered
//! `1, 2, …` across all levels. A window `[a, b]` marks the choices that
//! branch; everything else takes the first option.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use num_bigint::BigUint;
use thiserror::Error;

use crate::algebra::{AlgebraError, CayleyTable};
use crate::elements::ElementSet;
use crate::group_iso::{Algorithm, IsoDecision, IsoWitness, SearchStats, Shortcut};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("group of order {0} is not a p-group")]
    NotAPGroup(usize),
    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("choice {index} requested from {options} options")]
    ChoiceOutOfRange { index: usize, options: usize },
    #[error("chains have lengths {0} and {1}")]
    ChainLengthMismatch(usize, usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Sorts subgroups by their ascending member lists.
fn sort_by_members(sets: &mut [ElementSet]) {
    sets.sort_by_cached_key(|s| s.to_vec());
}

/// Inclusion-minimal nontrivial normal subgroups, found among the normal
/// closures of single elements.
pub fn minimal_normal_subgroups(g: &CayleyTable) -> Vec<ElementSet> {
    let mut closures: Vec<ElementSet> = g
        .elements()
        .filter(|&x| x != g.identity())
        .map(|x| g.normal_closure(x))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    closures.sort_by_key(|s| s.len());
    let mut minimal: Vec<ElementSet> = Vec::new();
    for c in closures {
        if !minimal.iter().any(|m| m.is_subset(&c)) {
            minimal.push(c);
        }
    }
    sort_by_members(&mut minimal);
    minimal
}

/// Minimal normal subgroups of `n` (as a group in its own right) that are
/// simple, expressed in the indices of `g`.
pub fn simple_minimal_subgroups(g: &CayleyTable, n: &ElementSet) -> Result<Vec<ElementSet>, AlgebraError> {
    let (sub, embedding) = g.subgroup_table(n)?;
    let mut out: Vec<ElementSet> = minimal_normal_subgroups(&sub)
        .into_iter()
        .filter(|m| sub.subgroup_table(m).map(|(t, _)| t.is_simple()).unwrap_or(false))
        .map(|m| ElementSet::from_elements(g.order(), m.iter().map(|i| embedding[i])))
        .collect();
    sort_by_members(&mut out);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleData {
    pub minimal_normals: Vec<ElementSet>,
    pub socle: ElementSet,
    /// Union of the simple minimal normal subgroups of each minimal normal subgroup.
    pub simple_pool: Vec<ElementSet>,
}

pub fn socle(g: &CayleyTable) -> Result<SocleData, AlgebraError> {
    let minimal_normals = minimal_normal_subgroups(g);
    let mut union = g.trivial_subgroup();
    for m in &minimal_normals {
        union = union.union(m);
    }
    let socle = g.closure(&union);
    let mut pool = BTreeSet::new();
    for m in &minimal_normals {
        pool.extend(simple_minimal_subgroups(g, m)?);
    }
    let mut simple_pool: Vec<ElementSet> = pool.into_iter().collect();
    sort_by_members(&mut simple_pool);
    Ok(SocleData { minimal_normals, socle, simple_pool })
}

/// `K × L` for normal subgroups `K`, `L`.
fn product(g: &CayleyTable, k: &ElementSet, l: &ElementSet) -> ElementSet {
    g.closure(&k.union(l))
}

/// Keeps, in order, each `L` meeting `K` trivially whose product with `K`
/// differs from that of every `L` kept before it.
pub fn prune_pool(g: &CayleyTable, k: &ElementSet, pool: &[ElementSet]) -> Vec<ElementSet> {
    let mut kept = Vec::new();
    let mut products: Vec<ElementSet> = Vec::new();
    for l in pool {
        if k.intersection(l).len() != 1 {
            continue;
        }
        let kl = product(g, k, l);
        if !products.contains(&kl) {
            products.push(kl);
            kept.push(l.clone());
        }
    }
    kept
}

/// Supplies the branch taken at each nondeterministic choice.
pub trait Chooser {
    /// Index into the current options, `0..options`.
    fn choose(&mut self, options: usize) -> usize;
}

/// Always the first option.
#[derive(Debug, Clone, Copy, Default)]
pub struct FirstChoice;

impl Chooser for FirstChoice {
    fn choose(&mut self, _options: usize) -> usize {
        0
    }
}

/// Replays a fixed script, then takes the first option. Records how many
/// options each choice offered.
#[derive(Debug, Clone, Default)]
pub struct Scripted {
    pub script: Vec<usize>,
    pub widths: Vec<usize>,
}

impl Scripted {
    pub fn new(script: Vec<usize>) -> Self {
        Scripted { script, widths: Vec::new() }
    }
}

impl Chooser for Scripted {
    fn choose(&mut self, options: usize) -> usize {
        let pos = self.widths.len();
        self.widths.push(options);
        if pos == self.script.len() {
            self.script.push(0);
        }
        self.script[pos]
    }
}

/// An ascending chain from the trivial subgroup to `G`, with the positions of
/// the socle preimages marked.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositionSeriesRec {
    pub chain: Vec<ElementSet>,
    pub socle_marks: Vec<usize>,
}

impl CompositionSeriesRec {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Number of composition factors.
    pub fn length(&self) -> usize {
        self.chain.len().saturating_sub(1)
    }

    /// Strict ascent from 1 to `G`, each member normal in the next with a
    /// simple factor, first mark on `soc(G)`.
    pub fn is_valid(&self, g: &CayleyTable) -> bool {
        let (Some(first), Some(last)) = (self.chain.first(), self.chain.last()) else {
            return false;
        };
        if *first != g.trivial_subgroup() || !last.is_full() {
            return false;
        }
        for pair in self.chain.windows(2) {
            let (lo, hi) = (&pair[0], &pair[1]);
            if !lo.is_subset(hi) || lo.len() == hi.len() || !g.is_subgroup(hi) {
                return false;
            }
            let Ok((sub, embedding)) = g.subgroup_table(hi) else { return false };
            let inner = ElementSet::from_elements(
                sub.order(),
                embedding.iter().enumerate().filter(|(_, &x)| lo.contains(x)).map(|(i, _)| i),
            );
            match sub.quotient(&inner) {
                Ok(q) if q.quotient.is_simple() => {}
                _ => return false,
            }
        }
        let marks_ok = self.socle_marks.windows(2).all(|w| w[0] < w[1])
            && self.socle_marks.iter().all(|&m| m < self.chain.len());
        let first_mark_ok = match self.socle_marks.first() {
            Some(&m) => socle(g).is_ok_and(|soc| soc.socle == self.chain[m]),
            None => g.order() == 1,
        };
        marks_ok && first_mark_ok
    }

    /// Image of every chain member under an element map.
    pub fn map(&self, phi: &[usize]) -> Vec<ElementSet> {
        self.chain
            .iter()
            .map(|s| ElementSet::from_elements(phi.len(), s.iter().map(|x| phi[x])))
            .collect()
    }
}

/// One socle level `F_i` of the tower.
#[derive(Debug, Clone)]
pub struct Level {
    pub group: CayleyTable,
    /// `G → F_i`
    pub projection: Vec<usize>,
    pub socle: SocleData,
}

/// The socle tower `F_0 = G, F_{i+1} = F_i/soc(F_i)`, down to the trivial
/// group. It does not depend on any choice, so it is computed once and shared
/// by every branch.
#[derive(Debug, Clone)]
pub struct SeriesTower<'g> {
    g: &'g CayleyTable,
    levels: Vec<Level>,
}

impl<'g> SeriesTower<'g> {
    pub fn new(g: &'g CayleyTable) -> Result<Self, AlgebraError> {
        let mut levels = Vec::new();
        let mut current = g.clone();
        let mut projection: Vec<usize> = g.elements().collect();
        while current.order() > 1 {
            let data = socle(&current)?;
            let next = if data.socle.is_full() { None } else { Some(current.quotient(&data.socle)?) };
            levels.push(Level { group: current, projection: projection.clone(), socle: data });
            match next {
                None => break,
                Some(q) => {
                    projection = projection.iter().map(|&x| q.projection[x]).collect();
                    current = q.quotient;
                }
            }
        }
        Ok(SeriesTower { g, levels })
    }

    pub fn group(&self) -> &'g CayleyTable {
        self.g
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    fn preimage(&self, level: &Level, set: &ElementSet) -> ElementSet {
        ElementSet::from_elements(self.g.order(), self.g.elements().filter(|&x| set.contains(level.projection[x])))
    }

    /// One composition series. Choice number `i = j + 1` (counting from one)
    /// branches through `chooser` when `a ≤ i ≤ b`, `b = None` meaning no
    /// upper end; other choices take the first option.
    pub fn run(
        &self,
        a: usize,
        b: Option<usize>,
        mut j: usize,
        chooser: &mut dyn Chooser,
    ) -> Result<CompositionSeriesRec, SeriesError> {
        let mut chain = vec![self.g.trivial_subgroup()];
        let mut socle_marks = Vec::new();
        for level in &self.levels {
            let f = &level.group;
            let mut k = f.trivial_subgroup();
            let mut pool = level.socle.simple_pool.clone();
            while k != level.socle.socle {
                let i = j + 1;
                let branching = a <= i && b.is_none_or(|b| i <= b);
                let index = if branching { chooser.choose(pool.len()) } else { 0 };
                let l = pool
                    .get(index)
                    .ok_or(SeriesError::ChoiceOutOfRange { index, options: pool.len() })?;
                k = product(f, &k, l);
                chain.push(self.preimage(level, &k));
                j += 1;
                pool = prune_pool(f, &k, &pool);
            }
            socle_marks.push(chain.len() - 1);
        }
        Ok(CompositionSeriesRec { chain, socle_marks })
    }

    /// Every output reachable by some choice sequence, deduplicated and
    /// sorted, with the size of the branching tree that produced them.
    pub fn all_choices(&self, a: usize, b: Option<usize>) -> Result<ChoiceCensus, SeriesError> {
        let mut found = BTreeSet::new();
        let mut script = Vec::new();
        let (mut runs, mut nodes) = (0, 1);
        let mut fixed = 0;
        loop {
            let mut chooser = Scripted::new(script);
            found.insert(self.run(a, b, 0, &mut chooser)?);
            runs += 1;
            nodes += chooser.widths.len() - fixed;
            script = chooser.script;
            let widths = chooser.widths;
            let Some(k) = (0..widths.len()).rev().find(|&k| script[k] + 1 < widths[k]) else {
                break;
            };
            script.truncate(k + 1);
            script[k] += 1;
            fixed = k;
        }
        Ok(ChoiceCensus { series: found.into_iter().collect(), runs, nodes })
    }
}

/// Output of an ALL-CHOICES run.
#[derive(Debug, Clone)]
pub struct ChoiceCensus {
    pub series: Vec<CompositionSeriesRec>,
    /// Leaves of the branching tree.
    pub runs: usize,
    /// Nodes of the branching tree, root included.
    pub nodes: usize,
}

/// Runs the series construction on `g` with branching window `[a, b]`.
pub fn composition_series(
    g: &CayleyTable,
    a: usize,
    b: Option<usize>,
    j: usize,
    chooser: &mut dyn Chooser,
) -> Result<CompositionSeriesRec, SeriesError> {
    SeriesTower::new(g)?.run(a, b, j, chooser)
}

/// All series whose first `t` choices branch and the rest take the first option.
pub fn composition_series_alice(g: &CayleyTable, t: usize) -> Result<Vec<CompositionSeriesRec>, SeriesError> {
    Ok(SeriesTower::new(g)?.all_choices(1, Some(t))?.series)
}

/// All series whose first `t` choices take the first option and the rest branch.
pub fn composition_series_bob(h: &CayleyTable, t: usize) -> Result<Vec<CompositionSeriesRec>, SeriesError> {
    Ok(SeriesTower::new(h)?.all_choices(t + 1, None)?.series)
}

/// The split point between Alice's and Bob's choices and how it was derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TParams {
    pub p: usize,
    /// Number of socle levels.
    pub ell: usize,
    /// Composition length of each socle.
    pub m: Vec<usize>,
    /// Order of each socle.
    pub s: Vec<usize>,
    /// `N_i = ∏_{j<m_i} s_i/p^j`
    pub n_i: Vec<BigUint>,
    pub n: BigUint,
    /// One-based level where the split falls.
    pub r: usize,
    pub u: usize,
    pub t: usize,
}

/// `∏_{j<u} s/p^j`
fn level_product(s: usize, p: usize, u: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    let mut q = s;
    for _ in 0..u {
        acc *= BigUint::from(q);
        q /= p;
    }
    acc
}

/// Places the split so that the choices before it number about `√N`.
pub fn compute_t(g: &CayleyTable) -> Result<TParams, SeriesError> {
    let p = g.p_group_prime().ok_or(SeriesError::NotAPGroup(g.order()))?;
    let arbitrary = SeriesTower::new(g)?.run(1, Some(0), 0, &mut FirstChoice)?;
    let mut m = Vec::new();
    let mut s = Vec::new();
    let mut prev = 0;
    for &mark in &arbitrary.socle_marks {
        m.push(mark - prev);
        s.push(arbitrary.chain[mark].len() / arbitrary.chain[prev].len());
        prev = mark;
    }
    let ell = m.len();
    let n_i: Vec<BigUint> = (0..ell).map(|i| level_product(s[i], p, m[i])).collect();
    let n: BigUint = n_i.iter().product();
    let fits = |x: &BigUint| x * x <= n;

    let mut r = 1;
    let mut before = BigUint::from(1u32);
    while r < ell && fits(&(&before * &n_i[r - 1])) {
        before *= &n_i[r - 1];
        r += 1;
    }
    let mut u = 0;
    while u < m[r - 1] && fits(&(&before * level_product(s[r - 1], p, u + 1))) {
        u += 1;
    }
    let t = m[..r - 1].iter().sum::<usize>() + u;
    Ok(TParams { p, ell, m, s, n_i, n, r, u, t })
}

/// Element-order counts of each chain member; equal for chains carried onto
/// each other by an isomorphism.
fn chain_signature(orders: &[usize], s: &CompositionSeriesRec) -> Vec<Vec<(usize, usize)>> {
    s.chain
        .iter()
        .map(|member| {
            let mut counts: Vec<(usize, usize)> = Vec::new();
            let mut sorted: Vec<usize> = member.iter().map(|x| orders[x]).collect();
            sorted.sort_unstable();
            for o in sorted {
                match counts.last_mut() {
                    Some((last, c)) if *last == o => *c += 1,
                    _ => counts.push((o, 1)),
                }
            }
            counts
        })
        .collect()
}

/// Elements chosen level by level so that the first few generate each chain
/// member in turn, with the chain position each one first enters.
fn adapted_generators(g: &CayleyTable, s: &CompositionSeriesRec) -> Vec<(usize, usize)> {
    let mut gens: Vec<(usize, usize)> = Vec::new();
    let mut span = g.trivial_subgroup();
    for (pos, member) in s.chain.iter().enumerate().skip(1) {
        while span != *member {
            let x = member.difference(&span).first().expect("chain ascends");
            let prefix: Vec<usize> = gens.iter().map(|&(y, _)| y).collect();
            span = g.closure_with(&span, &prefix, x);
            gens.push((x, pos));
        }
    }
    gens
}

/// The map on `⟨gens⟩` sending each generator to its image, if it is well
/// defined and injective. Undefined points hold `usize::MAX`.
fn partial_map(g: &CayleyTable, gens: &[usize], h: &CayleyTable, images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = ElementSet::empty(h.order());
    map[g.identity()] = h.identity();
    used.insert(h.identity());
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&gi, &hi) in gens.iter().zip(images) {
            let y = g.mul(x, gi);
            let image = h.mul(map[x], hi);
            if map[y] == usize::MAX {
                if !used.insert(image) {
                    return None;
                }
                map[y] = image;
                queue.push(y);
            } else if map[y] != image {
                return None;
            }
        }
    }
    Some(map)
}

/// An isomorphism `φ: G → H` with `φ[S_i] = S'_i` at every position, by
/// backtracking over images of a chain-adapted generating sequence.
pub fn series_isomorphic(
    g: &CayleyTable,
    s: &CompositionSeriesRec,
    h: &CayleyTable,
    s2: &CompositionSeriesRec,
) -> Result<Option<IsoWitness>, SeriesError> {
    if g.order() != h.order() {
        return Err(SeriesError::OrderMismatch(g.order(), h.order()));
    }
    if s.len() != s2.len() {
        return Err(SeriesError::ChainLengthMismatch(s.len(), s2.len()));
    }
    if s.chain.iter().zip(&s2.chain).any(|(a, b)| a.len() != b.len()) {
        return Ok(None);
    }
    let g_orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let h_orders: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
    if chain_signature(&g_orders, s) != chain_signature(&h_orders, s2) {
        return Ok(None);
    }
    let gens = adapted_generators(g, s);
    let xs: Vec<usize> = gens.iter().map(|&(x, _)| x).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&(x, pos)| {
            s2.chain[pos]
                .difference(&s2.chain[pos - 1])
                .iter()
                .filter(|&y| h_orders[y] == g_orders[x])
                .collect()
        })
        .collect();

    let mut images = Vec::with_capacity(xs.len());
    let found = search_images(g, h, &xs, &candidates, &mut images);
    Ok(found
        .map(|map| IsoWitness { map })
        .filter(|w| s.map(&w.map) == s2.chain && w.verify(g, h)))
}

fn search_images(
    g: &CayleyTable,
    h: &CayleyTable,
    xs: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == xs.len() {
        return partial_map(g, xs, h, images).filter(|m| !m.contains(&usize::MAX));
    }
    for &y in &candidates[depth] {
        images.push(y);
        if partial_map(g, &xs[..=depth], h, images).is_some() {
            if let Some(found) = search_images(g, h, xs, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// p-group isomorphism: compare `t`, then look for a pair of series, one
/// from each side, that some isomorphism carries onto each other.
pub fn p_group_iso_via_series(g: &CayleyTable, h: &CayleyTable) -> Result<IsoDecision, SeriesError> {
    let start = Instant::now();
    if g.order() != h.order() {
        return Err(SeriesError::OrderMismatch(g.order(), h.order()));
    }
    let tg = compute_t(g)?;
    let th = compute_t(h)?;
    let mut stats = SearchStats::new(Algorithm::Series);
    stats.p = Some(tg.p);
    stats.d = Some(tg.t);
    if tg.t != th.t || th.p != tg.p {
        stats.shortcut = Some(Shortcut::Invariant);
        stats.millis = start.elapsed().as_millis();
        return Ok(IsoDecision { isomorphic: false, witness: None, stats });
    }
    let alice = composition_series_alice(g, tg.t)?;
    let bob = composition_series_bob(h, tg.t)?;
    stats.a_count = alice.len();
    stats.b_count = bob.len();

    let g_orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let h_orders: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
    let mut by_signature: HashMap<_, Vec<&CompositionSeriesRec>> = HashMap::new();
    for s2 in &bob {
        by_signature.entry(chain_signature(&h_orders, s2)).or_default().push(s2);
    }
    let mut witness = None;
    'outer: for s in &alice {
        let Some(matches) = by_signature.get(&chain_signature(&g_orders, s)) else { continue };
        for s2 in matches {
            stats.candidates += 1;
            match series_isomorphic(g, s, h, s2) {
                Ok(Some(w)) => {
                    witness = Some(w);
                    break 'outer;
                }
                Ok(None) | Err(SeriesError::ChainLengthMismatch(..)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    stats.millis = start.elapsed().as_millis();
    Ok(IsoDecision { isomorphic: witness.is_some(), witness, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic, dihedral, direct_product, elementary_abelian, quaternion8, symmetric};

    fn set(n: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(n, xs.iter().copied())
    }

    #[test]
    fn minimal_normals_of_small_groups() {
        assert_eq!(minimal_normal_subgroups(&elementary_abelian(2, 2)).len(), 3);
        assert_eq!(minimal_normal_subgroups(&cyclic(4)), vec![set(4, &[0, 2])]);
        let q = quaternion8();
        let mins = minimal_normal_subgroups(&q);
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].len(), 2);
    }

    #[test]
    fn socles() {
        assert_eq!(socle(&cyclic(4)).unwrap().socle, set(4, &[0, 2]));
        assert!(socle(&elementary_abelian(2, 2)).unwrap().socle.is_full());
        let d4 = dihedral(4).unwrap();
        let soc = socle(&d4).unwrap();
        assert_eq!(soc.socle.len(), 2);
        assert_eq!(soc.simple_pool, soc.minimal_normals);
    }

    #[test]
    fn simple_subgroups() {
        let v4 = elementary_abelian(2, 2);
        assert_eq!(simple_minimal_subgroups(&v4, &v4.whole()).unwrap().len(), 3);
        let z5 = cyclic(5);
        assert_eq!(simple_minimal_subgroups(&z5, &z5.whole()).unwrap(), vec![z5.whole()]);
        let s3 = symmetric(3).unwrap();
        let a3 = minimal_normal_subgroups(&s3).pop().unwrap();
        assert_eq!(a3.len(), 3);
        assert_eq!(simple_minimal_subgroups(&s3, &a3).unwrap(), vec![a3]);
    }

    #[test]
    fn z4_series_is_unique() {
        let g = cyclic(4);
        let s = composition_series(&g, 1, None, 0, &mut FirstChoice).unwrap();
        assert_eq!(s.chain, vec![set(4, &[0]), set(4, &[0, 2]), g.whole()]);
        assert_eq!(s.socle_marks, vec![1, 2]);
        assert!(s.is_valid(&g));
        assert_eq!(composition_series_alice(&g, 5).unwrap().len(), 1);
    }

    #[test]
    fn prime_cyclic_series() {
        let g = cyclic(7);
        let s = composition_series(&g, 1, None, 0, &mut FirstChoice).unwrap();
        assert_eq!(s.chain, vec![g.trivial_subgroup(), g.whole()]);
        assert_eq!(composition_series_alice(&g, 3).unwrap(), vec![s.clone()]);
        assert_eq!(composition_series_bob(&g, 0).unwrap(), vec![s]);
    }

    #[test]
    fn klein_four_branches() {
        let g = elementary_abelian(2, 2);
        assert_eq!(composition_series_alice(&g, 1).unwrap().len(), 3);
        assert_eq!(composition_series_alice(&g, 0).unwrap().len(), 1);
        assert_eq!(composition_series_bob(&g, 1).unwrap().len(), 1);
        assert_eq!(composition_series_bob(&g, 10).unwrap().len(), 1);
        for s in composition_series_alice(&g, 2).unwrap() {
            assert!(s.is_valid(&g));
        }
    }

    #[test]
    fn malformed_chooser() {
        struct Wild;
        impl Chooser for Wild {
            fn choose(&mut self, options: usize) -> usize {
                options
            }
        }
        let g = elementary_abelian(2, 2);
        assert_eq!(
            composition_series(&g, 1, None, 0, &mut Wild),
            Err(SeriesError::ChoiceOutOfRange { index: 3, options: 3 })
        );
    }

    #[test]
    fn t_values() {
        let t = compute_t(&elementary_abelian(2, 3)).unwrap();
        assert_eq!((t.ell, t.m.clone(), t.s.clone()), (1, vec![3], vec![8]));
        assert_eq!(t.n, BigUint::from(64u32));
        assert_eq!((t.r, t.u, t.t), (1, 1, 1));
        for p in [2, 3, 5, 7] {
            let t = compute_t(&cyclic(p)).unwrap();
            assert_eq!((t.ell, t.m.clone(), t.r, t.u, t.t), (1, vec![1], 1, 0, 0));
        }
        let t = compute_t(&cyclic(4)).unwrap();
        assert_eq!((t.ell, t.n.clone(), t.r, t.u, t.t), (2, BigUint::from(4u32), 2, 0, 1));
        assert_eq!(compute_t(&cyclic(6)), Err(SeriesError::NotAPGroup(6)));
    }

    #[test]
    fn pruning_keeps_every_product() {
        let g = elementary_abelian(2, 4);
        let pool = socle(&g).unwrap().simple_pool;
        let k = product(&g, &pool[0], &pool[1]);
        let pruned = prune_pool(&g, &k, &pool);
        let all: BTreeSet<_> =
            pool.iter().filter(|l| k.intersection(l).len() == 1).map(|l| product(&g, &k, l)).collect();
        let kept: BTreeSet<_> = pruned.iter().map(|l| product(&g, &k, l)).collect();
        assert_eq!(all, kept);
        assert_eq!(pruned.len(), kept.len());
    }

    #[test]
    fn series_isomorphism_examples() {
        let g = elementary_abelian(2, 2);
        let all = composition_series_alice(&g, 2).unwrap();
        let w = series_isomorphic(&g, &all[0], &g, &all[0]).unwrap().unwrap();
        assert!(w.verify(&g, &g));
        let w = series_isomorphic(&g, &all[0], &g, &all[1]).unwrap().unwrap();
        assert_eq!(all[0].map(&w.map), all[1].chain);

        let z4 = cyclic(4);
        let z4s = composition_series(&z4, 1, None, 0, &mut FirstChoice).unwrap();
        let z8 = cyclic(8);
        let z8s = composition_series(&z8, 1, None, 0, &mut FirstChoice).unwrap();
        assert!(matches!(series_isomorphic(&z4, &z4s, &z4, &z8s), Err(SeriesError::ChainLengthMismatch(3, 4))));
    }

    #[test]
    fn pipeline_decisions() {
        let z8 = cyclic(8);
        let z2z4 = direct_product(&cyclic(2), &cyclic(4));
        assert!(!p_group_iso_via_series(&z8, &z2z4).unwrap().isomorphic);
        let e = elementary_abelian(2, 3);
        let d = p_group_iso_via_series(&e, &e).unwrap();
        assert!(d.isomorphic && d.witness.unwrap().verify(&e, &e));
        assert!(!p_group_iso_via_series(&dihedral(4).unwrap(), &quaternion8()).unwrap().isomorphic);
        assert!(p_group_iso_via_series(&dihedral(4).unwrap(), &dihedral(4).unwrap()).unwrap().isomorphic);
    }
}
