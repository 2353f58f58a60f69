//! Brute-force reference implementations. Nothing here calls the search code
//! under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

use iso_core::corpus::{make_group, make_ring};
use iso_core::{CayleyTable, ElementSet, RingTable};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn group(spec: &str) -> CayleyTable {
    make_group(spec, 256).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

pub fn ring(spec: &str) -> RingTable {
    make_ring(spec, 256).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

pub fn relabel_ring(r: &RingTable, perm: &[usize]) -> RingTable {
    let n = r.order();
    let mut inv = vec![0; n];
    for (x, &y) in perm.iter().enumerate() {
        inv[y] = x;
    }
    let add: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| perm[r.add(inv[a], inv[b])]).collect()).collect();
    let mul: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| perm[r.mul(inv[a], inv[b])]).collect()).collect();
    RingTable::new(n, &add, &mul).unwrap()
}

fn orders(n: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    (0..n)
        .map(|x| {
            let (mut y, mut k) = (x, 1);
            while y != identity {
                y = mul(y, x);
                k += 1;
            }
            k
        })
        .collect()
}

/// Backtracking over bijections, assigning elements in index order. A
/// candidate image must have the same element order and agree with every
/// product of already-assigned elements. `preserve` lists the binary
/// operations to respect on each side.
struct Search<'a> {
    n: usize,
    ops_g: Vec<&'a dyn Fn(usize, usize) -> usize>,
    ops_h: Vec<&'a dyn Fn(usize, usize) -> usize>,
    ord_g: Vec<usize>,
    ord_h: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

impl Search<'_> {
    fn consistent(&self, x: usize) -> bool {
        for a in 0..self.n {
            if self.map[a] == usize::MAX {
                continue;
            }
            for (og, oh) in self.ops_g.iter().zip(&self.ops_h) {
                for (l, r) in [(a, x), (x, a)] {
                    let prod = og(l, r);
                    let want = oh(self.map[l], self.map[r]);
                    if self.map[prod] != usize::MAX && self.map[prod] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(&mut self, x: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if x == self.n {
            self.found.push(self.map.clone());
            return;
        }
        if self.map[x] != usize::MAX {
            return self.go(x + 1);
        }
        for y in 0..self.n {
            if self.used[y] || self.ord_h[y] != self.ord_g[x] {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            if self.consistent(x) {
                self.go(x + 1);
            }
            self.map[x] = usize::MAX;
            self.used[y] = false;
        }
    }
}

fn profile(ord: &[usize]) -> Vec<usize> {
    let mut v = ord.to_vec();
    v.sort_unstable();
    v
}

/// Every isomorphism `G → H`, up to `limit` of them.
pub fn group_isomorphisms(g: &CayleyTable, h: &CayleyTable, limit: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    if h.order() != n {
        return Vec::new();
    }
    let mg = |a: usize, b: usize| g.mul(a, b);
    let mh = |a: usize, b: usize| h.mul(a, b);
    let ord_g = orders(n, g.identity(), mg);
    let ord_h = orders(n, h.identity(), mh);
    if profile(&ord_g) != profile(&ord_h) {
        return Vec::new();
    }
    let mut s = Search {
        n,
        ops_g: vec![&mg],
        ops_h: vec![&mh],
        ord_g,
        ord_h,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        limit,
    };
    s.map[g.identity()] = h.identity();
    s.used[h.identity()] = true;
    s.go(0);
    s.found
}

pub fn groups_isomorphic(g: &CayleyTable, h: &CayleyTable) -> bool {
    !group_isomorphisms(g, h, 1).is_empty()
}

/// Every ring isomorphism `R → S`, up to `limit`.
pub fn ring_isomorphisms(r: &RingTable, s: &RingTable, limit: usize) -> Vec<Vec<usize>> {
    let n = r.order();
    if s.order() != n {
        return Vec::new();
    }
    let ar = |a: usize, b: usize| r.add(a, b);
    let as_ = |a: usize, b: usize| s.add(a, b);
    let mr = |a: usize, b: usize| r.mul(a, b);
    let ms = |a: usize, b: usize| s.mul(a, b);
    let ord_r = orders(n, r.zero(), ar);
    let ord_s = orders(n, s.zero(), as_);
    if profile(&ord_r) != profile(&ord_s) {
        return Vec::new();
    }
    let mut search = Search {
        n,
        ops_g: vec![&ar, &mr],
        ops_h: vec![&as_, &ms],
        ord_g: ord_r,
        ord_h: ord_s,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        limit,
    };
    search.map[r.zero()] = s.zero();
    search.used[s.zero()] = true;
    search.go(0);
    search.found
}

pub fn rings_isomorphic(r: &RingTable, s: &RingTable) -> bool {
    !ring_isomorphisms(r, s, 1).is_empty()
}

fn closed(g: &CayleyTable, s: &ElementSet) -> bool {
    s.iter().all(|a| s.iter().all(|b| s.contains(g.mul(a, b))))
}

/// Smallest multiplicatively closed superset of `seed ∪ {1}`, by repeated squaring of the set.
fn naive_closure(g: &CayleyTable, seed: &ElementSet) -> ElementSet {
    let mut s = seed.clone();
    s.insert(g.identity());
    loop {
        let mut next = s.clone();
        for a in s.iter() {
            for b in s.iter() {
                next.insert(g.mul(a, b));
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// Every subgroup, grown one element at a time from the trivial subgroup.
pub fn all_subgroups(g: &CayleyTable) -> Vec<ElementSet> {
    let n = g.order();
    let trivial = ElementSet::from_elements(n, [g.identity()]);
    let mut seen: BTreeSet<ElementSet> = BTreeSet::from([trivial.clone()]);
    let mut frontier = vec![trivial];
    while let Some(s) = frontier.pop() {
        for x in 0..n {
            if s.contains(x) {
                continue;
            }
            let mut seed = s.clone();
            seed.insert(x);
            let t = naive_closure(g, &seed);
            if seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn normal_in(g: &CayleyTable, s: &ElementSet, within: &ElementSet) -> bool {
    within.iter().all(|x| {
        let xi = (0..g.order()).find(|&y| g.mul(x, y) == g.identity()).unwrap();
        s.iter().all(|a| s.contains(g.mul(g.mul(x, a), xi)))
    })
}

pub fn normal_subgroups(g: &CayleyTable) -> Vec<ElementSet> {
    let whole = ElementSet::full(g.order());
    all_subgroups(g).into_iter().filter(|s| normal_in(g, s, &whole)).collect()
}

/// Composition-series check from first principles: strict ascent, each
/// member a subgroup normal in the next, and no normal subgroup of the next
/// member strictly between the two (so the factor is simple).
pub fn brute_composition_series_ok(g: &CayleyTable, subgroups: &[ElementSet], chain: &[ElementSet]) -> bool {
    let n = g.order();
    if chain.first().map(|s| s.len()) != Some(1) || chain.last().map(|s| s.len()) != Some(n) {
        return false;
    }
    chain.windows(2).all(|w| {
        let (lo, hi) = (&w[0], &w[1]);
        lo.is_subset(hi)
            && lo.len() < hi.len()
            && closed(g, hi)
            && normal_in(g, lo, hi)
            && !subgroups.iter().any(|m| {
                lo.is_subset(m) && m.is_subset(hi) && lo.len() < m.len() && m.len() < hi.len() && normal_in(g, m, hi)
            })
    })
}

/// Subgroup generated by all inclusion-minimal nontrivial normal subgroups.
pub fn brute_socle(g: &CayleyTable) -> ElementSet {
    let normals: Vec<ElementSet> = normal_subgroups(g).into_iter().filter(|s| s.len() > 1).collect();
    let mut union = ElementSet::from_elements(g.order(), [g.identity()]);
    for m in normals.iter().filter(|m| !normals.iter().any(|o| o != *m && o.is_subset(m))) {
        union = union.union(m);
    }
    naive_closure(g, &union)
}

/// Whether `gens` generates all of `g`.
pub fn generates(g: &CayleyTable, gens: &[usize]) -> bool {
    naive_closure(g, &ElementSet::from_elements(g.order(), gens.iter().copied())).len() == g.order()
}
