//! Finite groups given by explicit multiplication tables.
//!
//! Every other module consumes [`CayleyTable`]. Element indices are the
//! identity of elements; nothing here relabels them except [`CayleyTable::relabel`],
//! which builds a new table.

use std::collections::VecDeque;

use thiserror::Error;

use crate::elements::ElementSet;
use crate::generators::GeneratorSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("order must be at least 1, got {0}")]
    InvalidOrder(usize),
    #[error("row {row} has {len} entries, expected {expected}")]
    ShapeMismatch { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is outside 0..{n}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("subset is not closed under multiplication")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("the supplied elements do not generate the group")]
    NotGenerating,
}

/// A validated finite group: `mul(a, b)` is the index of `a·b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    n: usize,
    identity: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl CayleyTable {
    /// Validates an `n`×`n` table against the group axioms.
    ///
    /// The identity is located rather than assumed to be index 0. Errors name
    /// the first violation found scanning in row-major order.
    pub fn new(n: usize, raw: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidOrder(0));
        }
        if raw.len() != n {
            return Err(AlgebraError::ShapeMismatch { row: raw.len().min(n), len: 0, expected: n });
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in raw.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::ShapeMismatch { row: r, len: row.len(), expected: n });
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(n, table)
    }

    /// Validates a row-major flat table of length `n*n`.
    pub fn from_flat(n: usize, table: Vec<usize>) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidOrder(0));
        }
        if table.len() != n * n {
            return Err(AlgebraError::ShapeMismatch { row: 0, len: table.len(), expected: n * n });
        }
        if let Some(pos) = table.iter().position(|&v| v >= n) {
            return Err(AlgebraError::EntryOutOfRange {
                row: pos / n,
                col: pos % n,
                value: table[pos],
                n,
            });
        }
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(AlgebraError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let mut right = (0..n).filter(|&y| at(x, y) == identity);
            match (right.next(), right.next()) {
                (Some(y), None) if at(y, x) == identity => inverse.push(y),
                _ => return Err(AlgebraError::MissingInverse(x)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(AlgebraError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(CayleyTable { n, identity, table, inverse })
    }

    /// Builds a table already known to satisfy the axioms (quotients, subgroups).
    fn trusted(n: usize, identity: usize, table: Vec<usize>) -> Self {
        let mut inverse = vec![0; n];
        for x in 0..n {
            for y in 0..n {
                if table[x * n + y] == identity {
                    inverse[x] = y;
                    break;
                }
            }
        }
        let g = CayleyTable { n, identity, table, inverse };
        debug_assert!(CayleyTable::from_flat(n, g.table.clone()).is_ok());
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// `g·x·g⁻¹`
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn whole(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn trivial_subgroup(&self) -> ElementSet {
        ElementSet::from_elements(self.n, [self.identity])
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The prime `p` if the order is a power of `p` (trivial group excluded).
    pub fn p_group_prime(&self) -> Option<usize> {
        let p = smallest_prime_divisor(self.n).ok()?;
        let mut m = self.n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        (m == 1).then_some(p)
    }

    /// The same group with element `x` renamed to `perm[x]`.
    ///
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> CayleyTable {
        assert_eq!(perm.len(), self.n);
        let mut seen = ElementSet::empty(self.n);
        assert!(perm.iter().all(|&p| seen.insert(p)), "relabel needs a permutation");
        let mut table = vec![0; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                table[perm[a] * self.n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        CayleyTable::trusted(self.n, perm[self.identity], table)
    }

    /// Subgroup generated by `seed`: worklist BFS multiplying by the seed elements.
    pub fn closure(&self, seed: &ElementSet) -> ElementSet {
        let gens: Vec<usize> = seed.iter().collect();
        self.closure_of(&gens)
    }

    /// Subgroup generated by a list of elements.
    pub fn closure_of(&self, gens: &[usize]) -> ElementSet {
        let mut members = ElementSet::empty(self.n);
        members.insert(self.identity);
        self.extend_closure(members, gens)
    }

    /// `⟨base_gens, extra⟩`, given that `base = ⟨base_gens⟩` is already known.
    pub fn closure_with(&self, base: &ElementSet, base_gens: &[usize], extra: usize) -> ElementSet {
        if base.contains(extra) {
            return base.clone();
        }
        let mut gens = base_gens.to_vec();
        gens.push(extra);
        let mut members = base.clone();
        let mut work: VecDeque<usize> = base.iter().collect();
        while let Some(x) = work.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    work.push_back(y);
                }
            }
        }
        members
    }

    fn extend_closure(&self, mut members: ElementSet, gens: &[usize]) -> ElementSet {
        let mut work: VecDeque<usize> = members.iter().collect();
        for &g in gens {
            if members.insert(g) {
                work.push_back(g);
            }
        }
        while let Some(x) = work.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    work.push_back(y);
                }
            }
        }
        members
    }

    /// Least `k ≥ 1` with `x^k = 1`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Some irredundant generating sequence of length at most `d`, if one exists.
    ///
    /// Searches only irredundant prefixes, ascending element index at each level.
    pub fn has_generating_sequence_of_size(&self, d: usize) -> Option<GeneratorSequence> {
        let mut stack = Vec::new();
        let start = self.trivial_subgroup();
        if start.is_full() {
            return Some(GeneratorSequence::empty());
        }
        self.search_generating(&start, d, &mut stack)
            .then(|| GeneratorSequence::from_vec_unchecked(stack))
    }

    fn search_generating(&self, current: &ElementSet, budget: usize, stack: &mut Vec<usize>) -> bool {
        if current.is_full() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        for x in self.elements() {
            if current.contains(x) {
                continue;
            }
            let next = self.closure_with(current, stack, x);
            stack.push(x);
            if self.search_generating(&next, budget - 1, stack) {
                return true;
            }
            stack.pop();
        }
        false
    }

    /// Smallest normal subgroup containing `x`: the closure of its conjugacy class.
    pub fn normal_closure(&self, x: usize) -> ElementSet {
        let class = ElementSet::from_elements(self.n, self.elements().map(|g| self.conjugate(x, g)));
        self.closure(&class)
    }

    /// Normal closure of an arbitrary subset.
    pub fn normal_closure_of(&self, set: &ElementSet) -> ElementSet {
        let mut conj = ElementSet::empty(self.n);
        for x in set {
            for g in self.elements() {
                conj.insert(self.conjugate(x, g));
            }
        }
        self.closure(&conj)
    }

    pub fn is_subgroup(&self, s: &ElementSet) -> bool {
        s.universe() == self.n
            && s.contains(self.identity)
            && s.iter().all(|a| s.iter().all(|b| s.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, s: &ElementSet) -> Result<bool, AlgebraError> {
        if !self.is_subgroup(s) {
            return Err(AlgebraError::NotASubgroup);
        }
        Ok(self.is_normal_unchecked(s))
    }

    fn is_normal_unchecked(&self, s: &ElementSet) -> bool {
        s.iter().all(|x| self.elements().all(|g| s.contains(self.conjugate(x, g))))
    }

    /// True iff the group is nontrivial and every nonidentity element has the
    /// whole group as its normal closure.
    pub fn is_simple(&self) -> bool {
        self.n > 1
            && self
                .elements()
                .filter(|&x| x != self.identity)
                .all(|x| self.normal_closure(x).is_full())
    }

    /// The factor group by a normal subgroup, with the canonical projection.
    pub fn quotient(&self, normal: &ElementSet) -> Result<QuotientResult, AlgebraError> {
        if !self.is_subgroup(normal) {
            return Err(AlgebraError::NotASubgroup);
        }
        if !self.is_normal_unchecked(normal) {
            return Err(AlgebraError::NotNormal);
        }
        let mut projection = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        let mut cosets = Vec::new();
        for x in self.elements() {
            if projection[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            let mut coset = ElementSet::empty(self.n);
            for m in normal {
                let y = self.mul(x, m);
                projection[y] = idx;
                coset.insert(y);
            }
            reps.push(x);
            cosets.push(coset);
        }
        let q = reps.len();
        let mut table = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                table.push(projection[self.mul(a, b)]);
            }
        }
        let quotient = CayleyTable::trusted(q, projection[self.identity], table);
        Ok(QuotientResult { quotient, projection, cosets })
    }

    /// The subgroup `s` as a group in its own right.
    ///
    /// Returns the re-indexed table and `embedding`, where `embedding[i]` is
    /// the original index of new element `i` (ascending order).
    pub fn subgroup_table(&self, s: &ElementSet) -> Result<(CayleyTable, Vec<usize>), AlgebraError> {
        if !self.is_subgroup(s) {
            return Err(AlgebraError::NotASubgroup);
        }
        let embedding = s.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &x) in embedding.iter().enumerate() {
            index[x] = i;
        }
        let m = embedding.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &embedding {
            for &b in &embedding {
                table.push(index[self.mul(a, b)]);
            }
        }
        Ok((CayleyTable::trusted(m, index[self.identity], table), embedding))
    }

    /// Elements sorted by nothing in particular, bucketed by order: `profile[k]`
    /// counts elements of order `k`. An isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut profile = vec![0; self.n + 1];
        for x in self.elements() {
            profile[self.element_order(x)] += 1;
        }
        profile
    }
}

/// `G/N` together with the canonical map `G → G/N`.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: CayleyTable,
    /// `projection[g]` is the coset index of `g`.
    pub projection: Vec<usize>,
    /// `cosets[i]` is the preimage of quotient element `i`.
    pub cosets: Vec<ElementSet>,
}

impl QuotientResult {
    /// Preimage of a set of quotient elements.
    pub fn preimage(&self, set: &ElementSet) -> ElementSet {
        let universe = self.projection.len();
        ElementSet::from_elements(universe, (0..universe).filter(|&g| set.contains(self.projection[g])))
    }
}

/// Least prime dividing `n`.
pub fn smallest_prime_divisor(n: usize) -> Result<usize, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::InvalidOrder(n));
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return Ok(p);
        }
        p += 1;
    }
    Ok(n)
}

/// `⌊log_p n⌋` by repeated multiplication.
pub fn floor_log(p: usize, n: usize) -> usize {
    assert!(p >= 2 && n >= 1);
    let mut k = 0;
    let mut power = p;
    while power <= n {
        k += 1;
        power = match power.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
    }
    k
}
