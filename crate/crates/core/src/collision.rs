//! Bidirectional collision detection over choice trees.
//!
//! One side enumerates every path of bounded depth and extends each one to a
//! leaf by always taking the first child; the other side fixes one bounded
//! prefix and enumerates every leaf below it. If both sides walk the same
//! labeled tree, some pair of their paths coincide. [`detect_common`] finds
//! such a pair among the two resulting fingerprint streams while holding at
//! most `Δ` fingerprints per side in memory.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// A rooted tree whose nodes are materialized on demand.
///
/// Children of a node come back in a fixed order; a non-leaf always has at
/// least one child.
pub trait ChoiceTree {
    type Label: Clone;

    fn root(&self) -> Self::Label;
    fn children(&self, node: &Self::Label) -> Vec<Self::Label>;
    fn is_leaf(&self, node: &Self::Label) -> bool;
}

impl<T: ChoiceTree + ?Sized> ChoiceTree for &T {
    type Label = T::Label;

    fn root(&self) -> T::Label {
        (**self).root()
    }

    fn children(&self, node: &T::Label) -> Vec<T::Label> {
        (**self).children(node)
    }

    fn is_leaf(&self, node: &T::Label) -> bool {
        (**self).is_leaf(node)
    }
}

/// Opaque canonical byte string. Equality is byte equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint(pub Vec<u8>);

impl Fingerprint {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Chunk size for [`detect_common`]: the number of fingerprints held per side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChunkPlan {
    delta: usize,
    threads: usize,
}

impl ChunkPlan {
    /// Panics if `delta` is zero.
    pub fn new(delta: usize) -> Self {
        assert!(delta >= 1, "chunk size must be at least 1");
        ChunkPlan { delta, threads: 1 }
    }

    /// A single chunk per side: plain set intersection.
    pub fn unbounded() -> Self {
        ChunkPlan { delta: usize::MAX, threads: 1 }
    }

    /// Number of B-side chunks evaluated concurrently. Each worker holds its
    /// own chunk, so residency grows to `Δ·(1 + threads)`.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    pub fn is_unbounded(&self) -> bool {
        self.delta == usize::MAX
    }
}

impl Default for ChunkPlan {
    fn default() -> Self {
        ChunkPlan::unbounded()
    }
}

/// Paths are the node labels below the root, in order; the root itself is implicit.
pub type Path<L> = Vec<L>;

/// Depth-first enumeration of maximal paths below a fixed prefix.
///
/// A path is emitted when it reaches a leaf or the depth limit.
pub struct PathIter<T: ChoiceTree> {
    tree: T,
    limit: Option<usize>,
    base_len: usize,
    path: Vec<T::Label>,
    frames: Vec<std::vec::IntoIter<T::Label>>,
    started: bool,
}

impl<T: ChoiceTree> PathIter<T> {
    fn new(tree: T, prefix: Path<T::Label>, limit: Option<usize>) -> Self {
        PathIter {
            tree,
            limit,
            base_len: prefix.len(),
            path: prefix,
            frames: Vec::new(),
            started: false,
        }
    }

    fn current(&self) -> T::Label {
        match self.path.last() {
            Some(label) => label.clone(),
            None => self.tree.root(),
        }
    }

    fn is_terminal(&self) -> bool {
        self.limit == Some(self.path.len()) || self.tree.is_leaf(&self.current())
    }
}

impl<T: ChoiceTree> Iterator for PathIter<T> {
    type Item = Path<T::Label>;

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            if self.is_terminal() {
                return Some(self.path.clone());
            }
            let kids = self.tree.children(&self.current());
            self.frames.push(kids.into_iter());
        }
        loop {
            let depth = self.frames.len();
            let top = self.frames.last_mut()?;
            match top.next() {
                Some(child) => {
                    self.path.truncate(self.base_len + depth - 1);
                    self.path.push(child);
                    if self.is_terminal() {
                        return Some(self.path.clone());
                    }
                    let kids = self.tree.children(&self.current());
                    self.frames.push(kids.into_iter());
                }
                None => {
                    self.frames.pop();
                }
            }
        }
    }
}

/// Every root path of length exactly `d`, plus the shorter ones that end at a leaf.
pub fn prefix_paths<T: ChoiceTree>(tree: T, d: usize) -> PathIter<T> {
    PathIter::new(tree, Vec::new(), Some(d))
}

/// Every root-to-leaf path beginning with `prefix`.
pub fn suffix_paths<T: ChoiceTree>(tree: T, prefix: Path<T::Label>) -> PathIter<T> {
    PathIter::new(tree, prefix, None)
}

/// Extends `path` to a leaf, always descending into the first child.
pub fn extend_arbitrarily<T: ChoiceTree>(tree: &T, mut path: Path<T::Label>) -> Path<T::Label> {
    loop {
        let node = match path.last() {
            Some(label) => label.clone(),
            None => tree.root(),
        };
        if tree.is_leaf(&node) {
            return path;
        }
        let first = tree
            .children(&node)
            .into_iter()
            .next()
            .expect("non-leaf node without children");
        path.push(first);
    }
}

/// A sequence that can be re-enumerated from any position.
pub trait FingerprintStream {
    type Key: Ord;

    /// Items at positions `start..start + len`; shorter at the end of the stream.
    fn window(&self, start: usize, len: usize) -> Vec<Self::Key>;
}

impl<K: Ord + Clone> FingerprintStream for [K] {
    type Key = K;

    fn window(&self, start: usize, len: usize) -> Vec<K> {
        let start = start.min(self.len());
        let end = start.saturating_add(len).min(self.len());
        self[start..end].to_vec()
    }
}

impl<K: Ord + Clone> FingerprintStream for Vec<K> {
    type Key = K;

    fn window(&self, start: usize, len: usize) -> Vec<K> {
        self.as_slice().window(start, len)
    }
}

/// A stream backed by a pure enumerator and a key function. Keys are only
/// computed for the items inside the requested window.
///
/// The stream keeps one live enumerator as a cursor, so consecutive windows
/// continue where the previous one stopped; a window behind the cursor
/// restarts the enumeration from the beginning. No keys are retained.
pub struct Recompute<E, F, I> {
    enumerate: E,
    key: F,
    cursor: Mutex<Option<(usize, I)>>,
}

impl<E, F, I> Recompute<E, F, I>
where
    E: Fn() -> I,
{
    pub fn new(enumerate: E, key: F) -> Self {
        Recompute { enumerate, key, cursor: Mutex::new(None) }
    }
}

impl<E, F, I, C, K> FingerprintStream for Recompute<E, F, I>
where
    E: Fn() -> I,
    I: Iterator<Item = C>,
    F: Fn(&C) -> K,
    K: Ord,
{
    type Key = K;

    fn window(&self, start: usize, len: usize) -> Vec<K> {
        let mut guard = self.cursor.lock().unwrap_or_else(|e| e.into_inner());
        let (pos, iter) = match guard.take() {
            Some((pos, iter)) if pos <= start => (pos, iter),
            _ => (0, (self.enumerate)()),
        };
        let mut iter = iter;
        if start > pos && iter.nth(start - pos - 1).is_none() {
            return Vec::new();
        }
        let out: Vec<K> = iter.by_ref().take(len).map(|c| (self.key)(&c)).collect();
        let end = start + out.len();
        *guard = Some((end, iter));
        out
    }
}

/// Outcome of [`detect_common`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Detection {
    /// Lexicographically least `(a_index, b_index)` with equal keys.
    pub found: Option<(usize, usize)>,
    /// Chunk pairs actually compared.
    pub chunk_pairs: usize,
    /// Largest number of keys resident at once, both sides together.
    pub peak_resident: usize,
}

/// Worst-case cost of a chunked comparison of streams of sizes `f` and `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TradeoffStats {
    pub chunk_pairs: usize,
    pub peak_space_units: usize,
}

pub fn tradeoff_stats(f: usize, g: usize, plan: &ChunkPlan) -> TradeoffStats {
    let delta = plan.delta();
    TradeoffStats {
        chunk_pairs: f.div_ceil(delta) * g.div_ceil(delta),
        peak_space_units: delta.saturating_mul(2),
    }
}

struct Residency {
    current: AtomicUsize,
    peak: AtomicUsize,
}

impl Residency {
    fn load(&self, k: usize) {
        let now = self.current.fetch_add(k, Ordering::SeqCst) + k;
        self.peak.fetch_max(now, Ordering::SeqCst);
    }

    fn release(&self, k: usize) {
        self.current.fetch_sub(k, Ordering::SeqCst);
    }
}

/// Least `(i, j)` with `a[i] == b[j]`, comparing the streams chunk by chunk.
///
/// Each A-chunk is compared against every B-chunk; both sides are
/// re-enumerated for every chunk rather than cached. Matches inside a chunk
/// pair are found by sorting, so the result is independent of `Δ`.
pub fn detect_common<A, B>(a: &A, b: &B, plan: &ChunkPlan) -> Detection
where
    A: FingerprintStream + ?Sized,
    B: FingerprintStream<Key = A::Key> + Sync + ?Sized,
    A::Key: Sync,
{
    let delta = plan.delta();
    let residency = Residency { current: AtomicUsize::new(0), peak: AtomicUsize::new(0) };
    let pairs = AtomicUsize::new(0);
    let mut a_start = 0usize;

    loop {
        let a_chunk = a.window(a_start, delta);
        if a_chunk.is_empty() {
            break;
        }
        residency.load(a_chunk.len());
        let mut a_sorted: Vec<(&A::Key, usize)> =
            a_chunk.iter().enumerate().map(|(i, k)| (k, a_start + i)).collect();
        a_sorted.sort();

        let best = Mutex::new(None::<(usize, usize)>);
        let scan_b = |worker: usize, stride: usize| {
            let mut chunk_index = worker;
            loop {
                let b_start = chunk_index.saturating_mul(delta);
                let b_chunk = b.window(b_start, delta);
                if b_chunk.is_empty() {
                    break;
                }
                residency.load(b_chunk.len());
                pairs.fetch_add(1, Ordering::Relaxed);
                let mut b_sorted: Vec<(&A::Key, usize)> =
                    b_chunk.iter().enumerate().map(|(j, k)| (k, b_start + j)).collect();
                b_sorted.sort();
                if let Some(hit) = least_match(&a_sorted, &b_sorted) {
                    let mut guard = best.lock().unwrap();
                    if guard.is_none_or(|cur| hit < cur) {
                        *guard = Some(hit);
                    }
                }
                let short = b_chunk.len() < delta;
                residency.release(b_chunk.len());
                if short {
                    break;
                }
                chunk_index += stride;
            }
        };

        let threads = plan.threads();
        if threads <= 1 || plan.is_unbounded() {
            scan_b(0, 1);
        } else {
            std::thread::scope(|scope| {
                for w in 0..threads {
                    let scan = &scan_b;
                    scope.spawn(move || scan(w, threads));
                }
            });
        }

        residency.release(a_chunk.len());
        let best = best.into_inner().unwrap();
        if best.is_some() {
            return Detection {
                found: best,
                chunk_pairs: pairs.into_inner(),
                peak_resident: residency.peak.into_inner(),
            };
        }
        if a_chunk.len() < delta {
            break;
        }
        a_start += a_chunk.len();
    }
    Detection {
        found: None,
        chunk_pairs: pairs.into_inner(),
        peak_resident: residency.peak.into_inner(),
    }
}

/// Merge-join of two `(key, index)` lists sorted by key then index.
fn least_match<K: Ord>(a: &[(&K, usize)], b: &[(&K, usize)]) -> Option<(usize, usize)> {
    let (mut i, mut j) = (0, 0);
    let mut best: Option<(usize, usize)> = None;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                // first entry of each run carries the least index for this key
                let hit = (a[i].1, b[j].1);
                if best.is_none_or(|cur| hit < cur) {
                    best = Some(hit);
                }
                let key = a[i].0;
                while i < a.len() && a[i].0 == key {
                    i += 1;
                }
                while j < b.len() && b[j].0 == key {
                    j += 1;
                }
            }
        }
    }
    best
}
