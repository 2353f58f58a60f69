//! Irredundant generating sequences and the tree they form.

use std::ops::Deref;

use serde::Serialize;

use crate::algebra::CayleyTable;
use crate::collision::{self, ChoiceTree, Path};
use crate::elements::ElementSet;

/// Ordered elements of one group, each outside the subgroup generated by the
/// ones before it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GeneratorSequence(Vec<usize>);

impl GeneratorSequence {
    pub fn empty() -> Self {
        GeneratorSequence(Vec::new())
    }

    /// Checks the irredundant-chain property against `group`.
    pub fn new(group: &CayleyTable, elems: Vec<usize>) -> Option<Self> {
        let mut closure = group.trivial_subgroup();
        for (k, &x) in elems.iter().enumerate() {
            if x >= group.order() || closure.contains(x) {
                return None;
            }
            closure = group.closure_with(&closure, &elems[..k], x);
        }
        Some(GeneratorSequence(elems))
    }

    pub(crate) fn from_vec_unchecked(elems: Vec<usize>) -> Self {
        GeneratorSequence(elems)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// `⟨self⟩ = group`
    pub fn generates(&self, group: &CayleyTable) -> bool {
        group.closure_of(&self.0).is_full()
    }

    /// Image of the sequence under an element map.
    pub fn map(&self, f: &[usize]) -> Vec<usize> {
        self.0.iter().map(|&x| f[x]).collect()
    }
}

impl Deref for GeneratorSequence {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

/// A node of the generator tree: a sequence and the subgroup it generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenNode {
    pub seq: Vec<usize>,
    pub closure: ElementSet,
}

/// Children of `(x_1..x_j)` are `(x_1..x_j, y)` for every `y` outside
/// `⟨x_1..x_j⟩`, ascending in `y`. Leaves generate the whole group.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorTree<'g> {
    group: &'g CayleyTable,
}

impl<'g> GeneratorTree<'g> {
    pub fn new(group: &'g CayleyTable) -> Self {
        GeneratorTree { group }
    }

    pub fn group(&self) -> &'g CayleyTable {
        self.group
    }

    /// The path of nodes spelling out `seq`, or `None` if `seq` is not an
    /// irredundant chain.
    pub fn path_of(&self, seq: &[usize]) -> Option<Path<GenNode>> {
        let mut path = Vec::with_capacity(seq.len());
        let mut node = self.root();
        for &x in seq {
            if x >= self.group.order() || node.closure.contains(x) {
                return None;
            }
            node = self.child(&node, x);
            path.push(node.clone());
        }
        Some(path)
    }

    fn child(&self, node: &GenNode, x: usize) -> GenNode {
        let closure = self.group.closure_with(&node.closure, &node.seq, x);
        let mut seq = node.seq.clone();
        seq.push(x);
        GenNode { seq, closure }
    }
}

impl ChoiceTree for GeneratorTree<'_> {
    type Label = GenNode;

    fn root(&self) -> GenNode {
        GenNode { seq: Vec::new(), closure: self.group.trivial_subgroup() }
    }

    fn children(&self, node: &GenNode) -> Vec<GenNode> {
        node.closure
            .complement()
            .iter()
            .map(|x| self.child(node, x))
            .collect()
    }

    fn is_leaf(&self, node: &GenNode) -> bool {
        node.closure.is_full()
    }
}

/// The sequence spelled by a path of the generator tree.
pub fn path_sequence(path: &Path<GenNode>) -> GeneratorSequence {
    GeneratorSequence(path.last().map(|n| n.seq.clone()).unwrap_or_default())
}

/// Appends every extension of `prefix` by at most `limit - appended` elements,
/// each outside the closure of everything before it, stopping early once the
/// closure is the whole group.
///
/// `limit = None` means no budget. Delivery order is ascending element index
/// at each level.
pub fn insert_extensions(
    prefix: &GeneratorSequence,
    group: &CayleyTable,
    sink: &mut Vec<GeneratorSequence>,
    appended: usize,
    limit: Option<usize>,
) {
    let closure = group.closure_of(prefix);
    insert_extensions_from(prefix.0.clone(), &closure, group, sink, appended, limit);
}

fn insert_extensions_from(
    prefix: Vec<usize>,
    closure: &ElementSet,
    group: &CayleyTable,
    sink: &mut Vec<GeneratorSequence>,
    appended: usize,
    limit: Option<usize>,
) {
    let within_budget = limit.is_none_or(|m| appended < m);
    if !closure.is_full() && within_budget {
        for g in closure.complement().iter() {
            let next = group.closure_with(closure, &prefix, g);
            let mut seq = prefix.clone();
            seq.push(g);
            insert_extensions_from(seq, &next, group, sink, appended + 1, limit);
        }
    } else {
        sink.push(GeneratorSequence(prefix));
    }
}

/// First irredundant generating sequence extending `prefix`: repeatedly append
/// the least element outside the current closure.
pub fn extend_greedily(group: &CayleyTable, prefix: &GeneratorSequence) -> GeneratorSequence {
    let tree = GeneratorTree::new(group);
    let path = tree.path_of(prefix).expect("prefix is not an irredundant chain");
    path_sequence(&collision::extend_arbitrarily(&tree, path))
}

/// The first `d` elements chosen greedily (fewer if the group is generated sooner).
pub fn greedy_prefix(group: &CayleyTable, d: usize) -> GeneratorSequence {
    let tree = GeneratorTree::new(group);
    let mut node = tree.root();
    for _ in 0..d {
        if tree.is_leaf(&node) {
            break;
        }
        let x = node.closure.complement().first().expect("proper subgroup has a complement");
        node = tree.child(&node, x);
    }
    GeneratorSequence(node.seq)
}

/// Number of irredundant chains of length exactly `k` in `group`.
pub fn count_irredundant_chains(group: &CayleyTable, k: usize) -> usize {
    let tree = GeneratorTree::new(group);
    collision::prefix_paths(&tree, k).filter(|p| p.len() == k).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collision::{prefix_paths, suffix_paths};
    use crate::corpus::{cyclic, elementary_abelian, symmetric};

    fn seqs(v: &[GeneratorSequence]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.as_slice().to_vec()).collect()
    }

    #[test]
    fn extensions_of_klein_four_with_budget_one() {
        let g = elementary_abelian(2, 2);
        let mut sink = Vec::new();
        insert_extensions(&GeneratorSequence::empty(), &g, &mut sink, 0, Some(1));
        assert_eq!(seqs(&sink), vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn extensions_of_z2_unbounded() {
        let mut sink = Vec::new();
        insert_extensions(&GeneratorSequence::empty(), &cyclic(2), &mut sink, 0, None);
        assert_eq!(seqs(&sink), vec![vec![1]]);
    }

    #[test]
    fn generating_prefix_is_its_own_extension() {
        let g = cyclic(6);
        let prefix = GeneratorSequence::new(&g, vec![1]).unwrap();
        let mut sink = Vec::new();
        insert_extensions(&prefix, &g, &mut sink, 0, None);
        assert_eq!(seqs(&sink), vec![vec![1]]);
    }

    #[test]
    fn extensions_satisfy_chain_property_and_match_tree() {
        let g = symmetric(3).unwrap();
        let mut sink = Vec::new();
        insert_extensions(&GeneratorSequence::empty(), &g, &mut sink, 0, None);
        for s in &sink {
            assert!(GeneratorSequence::new(&g, s.as_slice().to_vec()).is_some());
            assert!(s.generates(&g));
        }
        let tree = GeneratorTree::new(&g);
        let via_tree: Vec<_> = suffix_paths(&tree, Vec::new()).map(|p| path_sequence(&p)).collect();
        assert_eq!(via_tree, sink);
    }

    #[test]
    fn klein_four_prefix_paths_depth_one() {
        let g = elementary_abelian(2, 2);
        let tree = GeneratorTree::new(&g);
        assert_eq!(prefix_paths(&tree, 1).count(), 3);
    }

    #[test]
    fn greedy_extension_in_z2_cubed() {
        let g = elementary_abelian(2, 3);
        let full = extend_greedily(&g, &GeneratorSequence::new(&g, vec![5]).unwrap());
        assert_eq!(full.len(), 3);
        assert_eq!(full[0], 5);
        assert!(full.generates(&g));
        // loop order: least element outside the closure each time
        assert_eq!(full.as_slice(), &[5, 1, 2]);
    }

    #[test]
    fn bob_completions_share_prefix() {
        let g = elementary_abelian(2, 4);
        let tree = GeneratorTree::new(&g);
        let h1 = greedy_prefix(&g, 2);
        let completions: Vec<_> = suffix_paths(&tree, tree.path_of(&h1).unwrap())
            .map(|p| path_sequence(&p))
            .collect();
        // exhaustive cross-check: every irredundant 4-tuple with this prefix
        let brute = (0..16)
            .flat_map(|a| (0..16).map(move |b| (a, b)))
            .filter(|&(a, b)| GeneratorSequence::new(&g, vec![h1[0], h1[1], a, b]).is_some())
            .count();
        assert_eq!(completions.len(), brute);
        assert_eq!(brute, (16 - 4) * (16 - 8));
        assert!(completions.iter().all(|s| s.starts_with(&h1) && s.generates(&g)));
        assert!(completions.len() <= 16usize.pow(2));
    }

    #[test]
    fn chain_counts() {
        let g = elementary_abelian(2, 4);
        assert_eq!(count_irredundant_chains(&g, 2), 15 * 14);
        assert_eq!(count_irredundant_chains(&g, 4), 15 * 14 * 12 * 8);
        assert_eq!(count_irredundant_chains(&cyclic(4), 2), 2);
        assert_eq!(count_irredundant_chains(&cyclic(3), 2), 0);
    }

    #[test]
    fn rejects_redundant_sequences() {
        let g = cyclic(6);
        assert!(GeneratorSequence::new(&g, vec![2, 4]).is_none());
        assert!(GeneratorSequence::new(&g, vec![0]).is_none());
        assert!(GeneratorSequence::new(&g, vec![2, 3]).is_some());
    }
}
