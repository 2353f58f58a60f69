//! Finite rings (associative, not necessarily unital or commutative) and
//! their isomorphism test.
//!
//! A ring isomorphism is in particular an isomorphism of additive groups, so
//! the search runs over generating sequences of `(R, +)` and the fingerprint
//! records both tables relabeled along the sequence.

use thiserror::Error;

use crate::algebra::{AlgebraError, CayleyTable};
use crate::collision::{ChunkPlan, Fingerprint};
use crate::group_iso::{
    generator_enumeration, induced_isomorphism, is_isomorphic, push_index, word_order, IsoDecision,
    IsoWitness, Structure,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("addition is not a group: {0}")]
    AddNotGroup(AlgebraError),
    #[error("addition is not commutative: {0} + {1}")]
    AddNotAbelian(usize, usize),
    #[error("multiplication row {row} has {len} entries, expected {expected}")]
    MulShape { row: usize, len: usize, expected: usize },
    #[error("multiplication entry ({row}, {col}) = {value} is outside 0..{n}")]
    MulEntryOutOfRange { row: usize, col: usize, value: usize, n: usize },
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    MulNotAssociative(usize, usize, usize),
    #[error("distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingTable {
    add: CayleyTable,
    mul: Vec<usize>,
}

impl RingTable {
    /// Validates the ring axioms. Checks run in order: additive group,
    /// commutativity, multiplication shape and range, associativity,
    /// distributivity on both sides.
    pub fn new(n: usize, add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<Self, RingError> {
        let add = CayleyTable::new(n, add).map_err(RingError::AddNotGroup)?;
        if mul.len() != n {
            return Err(RingError::MulShape { row: mul.len(), len: 0, expected: n });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in mul.iter().enumerate() {
            if entries.len() != n {
                return Err(RingError::MulShape { row, len: entries.len(), expected: n });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(RingError::MulEntryOutOfRange { row, col, value, n });
                }
                flat.push(value);
            }
        }
        let ring = RingTable { add, mul: flat };
        ring.validate()?;
        Ok(ring)
    }

    fn validate(&self) -> Result<(), RingError> {
        let n = self.order();
        for a in 0..n {
            for b in a + 1..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(RingError::AddNotAbelian(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(RingError::MulNotAssociative(a, b, c));
                    }
                    let left = self.mul(a, self.add(b, c)) != self.add(ab, self.mul(a, c));
                    let right = self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c));
                    if left || right {
                        return Err(RingError::NotDistributive(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn zero(&self) -> usize {
        self.add.identity()
    }

    pub fn additive_group(&self) -> &CayleyTable {
        &self.add
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.mul(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        self.add.rows()
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    /// The multiplicative identity, if any.
    pub fn unit(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&e| (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Exhaustive check that `w` preserves both operations.
pub fn verify_ring_isomorphism(w: &IsoWitness, r: &RingTable, s: &RingTable) -> bool {
    w.verify(r.additive_group(), s.additive_group())
        && (0..r.order())
            .all(|a| (0..r.order()).all(|b| w.map[r.mul(a, b)] == s.mul(w.map[a], w.map[b])))
}

/// Both tables relabeled along the additive generating sequence `gens`.
pub fn ring_fingerprint(ring: &RingTable, gens: &[usize]) -> Result<Fingerprint, AlgebraError> {
    let n = ring.order();
    let (order, label) = word_order(&ring.add, gens).ok_or(AlgebraError::NotGenerating)?;
    let mut out = Vec::with_capacity(9 + gens.len() + 2 * n * n);
    out.push(b'R');
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out.extend_from_slice(&(gens.len() as u32).to_le_bytes());
    for &g in gens {
        push_index(&mut out, label[g], n);
    }
    for op in [RingTable::add, RingTable::mul] {
        for &a in &order {
            for &b in &order {
                push_index(&mut out, label[op(ring, a, b)], n);
            }
        }
    }
    Ok(Fingerprint(out))
}

/// The additive isomorphism determined by `gens_r ↦ gens_s`, kept only if it
/// also preserves multiplication.
pub fn induced_ring_isomorphism(
    r: &RingTable,
    gens_r: &[usize],
    s: &RingTable,
    gens_s: &[usize],
) -> Option<IsoWitness> {
    let w = induced_isomorphism(&r.add, gens_r, &s.add, gens_s)?;
    let n = r.order();
    (0..n)
        .all(|a| (0..n).all(|b| w.map[r.mul(a, b)] == s.mul(w.map[a], w.map[b])))
        .then_some(w)
}

impl Structure for RingTable {
    fn group(&self) -> &CayleyTable {
        &self.add
    }

    fn fingerprint(&self, gens: &[usize]) -> Result<Fingerprint, AlgebraError> {
        ring_fingerprint(self, gens)
    }

    fn induced(&self, gens: &[usize], other: &Self, other_gens: &[usize]) -> Option<IsoWitness> {
        induced_ring_isomorphism(self, gens, other, other_gens)
    }
}

/// Bidirectional ring isomorphism test. Rings of different orders are
/// reported non-isomorphic.
pub fn is_isomorphic_rings(r: &RingTable, s: &RingTable, plan: &ChunkPlan) -> IsoDecision {
    is_isomorphic(r, s, plan)
}

/// Generator enumeration over additive generating sequences.
pub fn ring_generator_enumeration(r: &RingTable, s: &RingTable) -> IsoDecision {
    generator_enumeration(r, s)
}
