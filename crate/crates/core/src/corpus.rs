//! Constructors for the test corpus and the `gen` subcommand.
//!
//! Group specs:
//!
//! ```text
//! cyclic k | elementary p k | dihedral k | quaternion8 | dicyclic k
//! symmetric k | alternating k | heisenberg p | semidirect m k r | pauli
//! order16 i | product(SPEC, SPEC)
//! ```
//!
//! Ring specs:
//!
//! ```text
//! zn k | gf p k | truncated p k | null k | upper2 p | product(SPEC, SPEC)
//! ```

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, CayleyTable};
use crate::ring::{RingError, RingTable};

pub const DEFAULT_MAX_ORDER: usize = 256;

/// `ISO_MAX_ORDER` if set and parseable, else [`DEFAULT_MAX_ORDER`].
pub fn max_order_from_env() -> usize {
    std::env::var("ISO_MAX_ORDER")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown constructor: {0}")]
    UnknownSpec(String),
    #[error("order {order} exceeds the cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A parsed group constructor expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Elementary(usize, usize),
    Dihedral(usize),
    Quaternion8,
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Heisenberg(usize),
    Semidirect(usize, usize, usize),
    Pauli,
    Order16(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self, CorpusError> {
        let text = text.trim();
        if let Some((left, right)) = parse_product(text)? {
            return Ok(GroupSpec::Product(Box::new(Self::parse(left)?), Box::new(Self::parse(right)?)));
        }
        let (name, args) = split_words(text)?;
        let spec = match (name, args.as_slice()) {
            ("cyclic", &[k]) => GroupSpec::Cyclic(k),
            ("elementary", &[p, k]) => GroupSpec::Elementary(p, k),
            ("dihedral", &[k]) => GroupSpec::Dihedral(k),
            ("quaternion8", &[]) => GroupSpec::Quaternion8,
            ("dicyclic", &[k]) => GroupSpec::Dicyclic(k),
            ("symmetric", &[k]) => GroupSpec::Symmetric(k),
            ("alternating", &[k]) => GroupSpec::Alternating(k),
            ("heisenberg", &[p]) => GroupSpec::Heisenberg(p),
            ("semidirect", &[m, k, r]) => GroupSpec::Semidirect(m, k, r),
            ("pauli", &[]) => GroupSpec::Pauli,
            ("order16", &[i]) => GroupSpec::Order16(i),
            _ => return Err(CorpusError::UnknownSpec(text.to_string())),
        };
        Ok(spec)
    }

    /// Order of the group the spec describes, without building it.
    pub fn order(&self) -> Result<usize, CorpusError> {
        let overflow = || CorpusError::BadParameters(format!("order of {self} overflows"));
        Ok(match *self {
            GroupSpec::Cyclic(k) => k,
            GroupSpec::Elementary(p, k) => p.checked_pow(k as u32).ok_or_else(overflow)?,
            GroupSpec::Dihedral(k) => k.checked_mul(2).ok_or_else(overflow)?,
            GroupSpec::Quaternion8 | GroupSpec::Pauli | GroupSpec::Order16(_) => {
                if matches!(self, GroupSpec::Quaternion8) { 8 } else { 16 }
            }
            GroupSpec::Dicyclic(k) => k.checked_mul(4).ok_or_else(overflow)?,
            GroupSpec::Symmetric(k) => (1..=k.min(20)).product(),
            GroupSpec::Alternating(k) => ((1..=k.min(20)).product::<usize>() / 2).max(1),
            GroupSpec::Heisenberg(p) => p.checked_pow(3).ok_or_else(overflow)?,
            GroupSpec::Semidirect(m, k, _) => m.checked_mul(k).ok_or_else(overflow)?,
            GroupSpec::Product(ref a, ref b) => a.order()?.checked_mul(b.order()?).ok_or_else(overflow)?,
        })
    }

    /// Builds the table, refusing anything above `cap` elements.
    pub fn build(&self, cap: usize) -> Result<CayleyTable, CorpusError> {
        let order = self.order()?;
        if order > cap {
            return Err(CorpusError::TooLarge { order, cap });
        }
        let bad = |msg: &str| CorpusError::BadParameters(format!("{self}: {msg}"));
        let g = match *self {
            GroupSpec::Cyclic(k) if k >= 1 => cyclic(k),
            GroupSpec::Elementary(p, k) if is_prime(p) => elementary_abelian(p, k),
            GroupSpec::Dihedral(k) => dihedral(k)?,
            GroupSpec::Quaternion8 => quaternion8(),
            GroupSpec::Dicyclic(k) => dicyclic(k)?,
            GroupSpec::Symmetric(k) => symmetric(k)?,
            GroupSpec::Alternating(k) => alternating(k)?,
            GroupSpec::Heisenberg(p) if is_prime(p) => heisenberg(p),
            GroupSpec::Semidirect(m, k, r) => semidirect_cyclic(m, k, r)?,
            GroupSpec::Pauli => pauli(),
            GroupSpec::Order16(i) => order16(i)?,
            GroupSpec::Product(ref a, ref b) => direct_product(&a.build(cap)?, &b.build(cap)?),
            GroupSpec::Cyclic(_) => return Err(bad("order must be positive")),
            GroupSpec::Elementary(..) | GroupSpec::Heisenberg(_) => return Err(bad("p must be prime")),
        };
        Ok(g)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "cyclic {k}"),
            GroupSpec::Elementary(p, k) => write!(f, "elementary {p} {k}"),
            GroupSpec::Dihedral(k) => write!(f, "dihedral {k}"),
            GroupSpec::Quaternion8 => write!(f, "quaternion8"),
            GroupSpec::Dicyclic(k) => write!(f, "dicyclic {k}"),
            GroupSpec::Symmetric(k) => write!(f, "symmetric {k}"),
            GroupSpec::Alternating(k) => write!(f, "alternating {k}"),
            GroupSpec::Heisenberg(p) => write!(f, "heisenberg {p}"),
            GroupSpec::Semidirect(m, k, r) => write!(f, "semidirect {m} {k} {r}"),
            GroupSpec::Pauli => write!(f, "pauli"),
            GroupSpec::Order16(i) => write!(f, "order16 {i}"),
            GroupSpec::Product(a, b) => write!(f, "product({a}, {b})"),
        }
    }
}

/// Parses and builds a group spec under `cap`.
pub fn make_group(spec: &str, cap: usize) -> Result<CayleyTable, CorpusError> {
    GroupSpec::parse(spec)?.build(cap)
}

/// A parsed ring constructor expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Zn(usize),
    Gf(usize, usize),
    Truncated(usize, usize),
    Null(usize),
    Upper2(usize),
    Product(Box<RingSpec>, Box<RingSpec>),
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<Self, CorpusError> {
        let text = text.trim();
        if let Some((left, right)) = parse_product(text)? {
            return Ok(RingSpec::Product(Box::new(Self::parse(left)?), Box::new(Self::parse(right)?)));
        }
        let (name, args) = split_words(text)?;
        Ok(match (name, args.as_slice()) {
            ("zn", &[k]) => RingSpec::Zn(k),
            ("gf", &[p, k]) => RingSpec::Gf(p, k),
            ("truncated", &[p, k]) => RingSpec::Truncated(p, k),
            ("null", &[k]) => RingSpec::Null(k),
            ("upper2", &[p]) => RingSpec::Upper2(p),
            _ => return Err(CorpusError::UnknownSpec(text.to_string())),
        })
    }

    pub fn order(&self) -> Result<usize, CorpusError> {
        let overflow = || CorpusError::BadParameters(format!("order of {self} overflows"));
        Ok(match *self {
            RingSpec::Zn(k) | RingSpec::Null(k) => k,
            RingSpec::Gf(p, k) | RingSpec::Truncated(p, k) => p.checked_pow(k as u32).ok_or_else(overflow)?,
            RingSpec::Upper2(p) => p.checked_pow(3).ok_or_else(overflow)?,
            RingSpec::Product(ref a, ref b) => a.order()?.checked_mul(b.order()?).ok_or_else(overflow)?,
        })
    }

    pub fn build(&self, cap: usize) -> Result<RingTable, CorpusError> {
        let order = self.order()?;
        if order > cap {
            return Err(CorpusError::TooLarge { order, cap });
        }
        let bad = |msg: &str| CorpusError::BadParameters(format!("{self}: {msg}"));
        match *self {
            RingSpec::Zn(k) if k >= 1 => Ok(zn_ring(k)),
            RingSpec::Null(k) if k >= 1 => Ok(null_ring(k)),
            RingSpec::Gf(p, k) if is_prime(p) && k >= 1 => Ok(galois_field(p, k)),
            RingSpec::Truncated(p, k) if is_prime(p) && k >= 1 => Ok(truncated_polynomials(p, k)),
            RingSpec::Upper2(p) if is_prime(p) => Ok(upper_triangular2(p)),
            RingSpec::Product(ref a, ref b) => Ok(product_ring(&a.build(cap)?, &b.build(cap)?)),
            _ => Err(bad("unsupported parameters")),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zn(k) => write!(f, "zn {k}"),
            RingSpec::Gf(p, k) => write!(f, "gf {p} {k}"),
            RingSpec::Truncated(p, k) => write!(f, "truncated {p} {k}"),
            RingSpec::Null(k) => write!(f, "null {k}"),
            RingSpec::Upper2(p) => write!(f, "upper2 {p}"),
            RingSpec::Product(a, b) => write!(f, "product({a}, {b})"),
        }
    }
}

pub fn make_ring(spec: &str, cap: usize) -> Result<RingTable, CorpusError> {
    RingSpec::parse(spec)?.build(cap)
}

/// Splits `product(A, B)` at its top-level comma.
fn parse_product(text: &str) -> Result<Option<(&str, &str)>, CorpusError> {
    let Some(inner) = text.strip_prefix("product") else {
        return Ok(None);
    };
    let inner = inner.trim_start();
    let inner = inner
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| CorpusError::UnknownSpec(text.to_string()))?;
    let mut depth = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or_else(|| CorpusError::UnknownSpec(text.to_string()))?,
            ',' if depth == 0 => return Ok(Some((&inner[..i], &inner[i + 1..]))),
            _ => {}
        }
    }
    Err(CorpusError::UnknownSpec(text.to_string()))
}

fn split_words(text: &str) -> Result<(&str, Vec<usize>), CorpusError> {
    let mut words = text.split_whitespace();
    let name = words.next().ok_or_else(|| CorpusError::UnknownSpec(text.to_string()))?;
    let args = words
        .map(|w| w.parse::<usize>().map_err(|_| CorpusError::UnknownSpec(text.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((name, args))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> CayleyTable {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(mul(a, b));
        }
    }
    CayleyTable::from_flat(n, table).expect("constructor produced a group")
}

/// `Z_k` under addition.
pub fn cyclic(k: usize) -> CayleyTable {
    from_fn(k, |a, b| (a + b) % k)
}

/// `(Z_p)^k`; element index is the base-`p` digit vector, least digit first.
pub fn elementary_abelian(p: usize, k: usize) -> CayleyTable {
    let n = p.pow(k as u32);
    from_fn(n, |a, b| {
        let (mut x, mut y, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..k {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    })
}

/// `A × B`; element `(a, b)` has index `a·|B| + b`.
pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> CayleyTable {
    let m = b.order();
    from_fn(a.order() * m, |x, y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))
}

/// Symmetries of a `k`-gon, order `2k`. `r^i s^j` has index `i + k·j`.
pub fn dihedral(k: usize) -> Result<CayleyTable, CorpusError> {
    if k == 0 {
        return Err(CorpusError::BadParameters("dihedral needs k >= 1".into()));
    }
    Ok(from_fn(2 * k, |x, y| {
        let (i, a) = (x % k, x / k);
        let (j, b) = (y % k, y / k);
        let rot = if a == 0 { (i + j) % k } else { (i + k - j) % k };
        rot + k * ((a + b) % 2)
    }))
}

/// Dicyclic group of order `4k`: `⟨a, x | a^{2k}, x² = a^k, x a x⁻¹ = a⁻¹⟩`.
/// `a^i x^j` has index `i + 2k·j`.
pub fn dicyclic(k: usize) -> Result<CayleyTable, CorpusError> {
    if k < 1 {
        return Err(CorpusError::BadParameters("dicyclic needs k >= 1".into()));
    }
    let m = 2 * k;
    Ok(from_fn(2 * m, |x, y| {
        let (i, a) = (x % m, x / m);
        let (j, b) = (y % m, y / m);
        match (a, b) {
            (0, _) => (i + j) % m + m * b,
            (_, 0) => (i + m - j) % m + m,
            _ => (i + m - j + k) % m,
        }
    }))
}

pub fn quaternion8() -> CayleyTable {
    dicyclic(2).expect("k = 2 is valid")
}

/// Permutations of `0..k` ranked lexicographically, composed as `(p·q)(x) = p(q(x))`.
pub fn symmetric(k: usize) -> Result<CayleyTable, CorpusError> {
    if !(1..=5).contains(&k) {
        return Err(CorpusError::BadParameters("symmetric needs 1 <= k <= 5".into()));
    }
    let perms = permutations(k);
    Ok(permutation_group(&perms))
}

/// Even permutations of `0..k`.
pub fn alternating(k: usize) -> Result<CayleyTable, CorpusError> {
    if !(1..=5).contains(&k) {
        return Err(CorpusError::BadParameters("alternating needs 1 <= k <= 5".into()));
    }
    let perms: Vec<Vec<usize>> = permutations(k).into_iter().filter(|p| is_even(p)).collect();
    Ok(permutation_group(&perms))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for x in 0..k {
            if !prefix.contains(&x) {
                prefix.push(x);
                go(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), k, &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// Table of a list of permutations closed under composition.
fn permutation_group(perms: &[Vec<usize>]) -> CayleyTable {
    let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
    from_fn(perms.len(), |a, b| {
        let composed: Vec<usize> = (0..perms[a].len()).map(|x| perms[a][perms[b][x]]).collect();
        index(&composed)
    })
}

/// Upper unitriangular 3×3 matrices over `Z_p`; `(a, b, c)` is
/// `[[1, a, c], [0, 1, b], [0, 0, 1]]` with index `a + p·b + p²·c`.
pub fn heisenberg(p: usize) -> CayleyTable {
    let decode = |x: usize| (x % p, (x / p) % p, x / (p * p));
    from_fn(p * p * p, |x, y| {
        let (a, b, c) = decode(x);
        let (a2, b2, c2) = decode(y);
        let na = (a + a2) % p;
        let nb = (b + b2) % p;
        let nc = (c + c2 + a * b2) % p;
        na + p * nb + p * p * nc
    })
}

/// `N ⋊ Z_k` where the generator of `Z_k` acts by the automorphism `aut` of `N`.
/// `(x, i)` has index `x + |N|·i`.
fn semidirect_by(n: &CayleyTable, k: usize, aut: &[usize]) -> Result<CayleyTable, CorpusError> {
    let m = n.order();
    let is_hom = n.elements().all(|a| n.elements().all(|b| aut[n.mul(a, b)] == n.mul(aut[a], aut[b])));
    let mut power = (0..m).collect::<Vec<_>>();
    let mut powers = Vec::with_capacity(k);
    for _ in 0..k {
        powers.push(power.clone());
        power = power.iter().map(|&x| aut[x]).collect();
    }
    let order_divides = power.iter().enumerate().all(|(x, &y)| x == y);
    if !is_hom || !order_divides {
        return Err(CorpusError::BadParameters("action is not an automorphism of order dividing k".into()));
    }
    Ok(from_fn(m * k, |x, y| {
        let (a, i) = (x % m, x / m);
        let (b, j) = (y % m, y / m);
        n.mul(a, powers[i][b]) + m * ((i + j) % k)
    }))
}

/// `Z_m ⋊ Z_k` with the generator acting as `x ↦ r·x`.
pub fn semidirect_cyclic(m: usize, k: usize, r: usize) -> Result<CayleyTable, CorpusError> {
    if m == 0 || k == 0 {
        return Err(CorpusError::BadParameters("semidirect needs m, k >= 1".into()));
    }
    let aut: Vec<usize> = (0..m).map(|x| x * r % m).collect();
    let mut seen = vec![false; m];
    if !aut.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
        return Err(CorpusError::BadParameters(format!("{r} is not a unit mod {m}")));
    }
    semidirect_by(&cyclic(m), k, &aut)
}

/// The single-qubit Pauli group `⟨X, Z, iI⟩`, order 16. `i^c X^x Z^z` has
/// index `c + 4x + 8z`.
pub fn pauli() -> CayleyTable {
    from_fn(16, |u, v| {
        let (c1, x1, z1) = (u % 4, (u / 4) % 2, u / 8);
        let (c2, x2, z2) = (v % 4, (v / 4) % 2, v / 8);
        let c = (c1 + c2 + 2 * z1 * x2) % 4;
        c + 4 * ((x1 + x2) % 2) + 8 * ((z1 + z2) % 2)
    })
}

/// The fourteen groups of order 16, numbered as in the standard small-group library.
pub fn order16(i: usize) -> Result<CayleyTable, CorpusError> {
    let c = cyclic;
    Ok(match i {
        1 => c(16),
        2 => direct_product(&c(4), &c(4)),
        3 => {
            // (Z4 × Z2) ⋊ Z2, acting by (x, y) ↦ (x, y + x mod 2)
            let base = direct_product(&c(4), &c(2));
            let aut: Vec<usize> = (0..8).map(|e| (e / 2) * 2 + ((e % 2) + (e / 2)) % 2).collect();
            semidirect_by(&base, 2, &aut)?
        }
        4 => semidirect_cyclic(4, 4, 3)?,
        5 => direct_product(&c(8), &c(2)),
        6 => semidirect_cyclic(8, 2, 5)?,
        7 => dihedral(8)?,
        8 => semidirect_cyclic(8, 2, 3)?,
        9 => dicyclic(4)?,
        10 => direct_product(&direct_product(&c(4), &c(2)), &c(2)),
        11 => direct_product(&dihedral(4)?, &c(2)),
        12 => direct_product(&quaternion8(), &c(2)),
        13 => pauli(),
        14 => elementary_abelian(2, 4),
        _ => return Err(CorpusError::BadParameters(format!("order16 index {i} not in 1..=14"))),
    })
}

fn ring_from_fns(
    n: usize,
    add: impl Fn(usize, usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
) -> RingTable {
    let add_rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| add(a, b)).collect()).collect();
    let mul_rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    RingTable::new(n, &add_rows, &mul_rows).expect("constructor produced a ring")
}

/// Integers mod `k`.
pub fn zn_ring(k: usize) -> RingTable {
    ring_from_fns(k, |a, b| (a + b) % k, |a, b| a * b % k)
}

/// `Z_k` with every product zero; has no unit for `k > 1`.
pub fn null_ring(k: usize) -> RingTable {
    ring_from_fns(k, |a, b| (a + b) % k, |_, _| 0)
}

/// Polynomials over `Z_p` of degree `< k`, coefficients as base-`p` digits.
fn poly_add(p: usize, k: usize, a: usize, b: usize) -> usize {
    let (mut x, mut y, mut out, mut place) = (a, b, 0, 1);
    for _ in 0..k {
        out += ((x % p + y % p) % p) * place;
        x /= p;
        y /= p;
        place *= p;
    }
    out
}

fn digits(p: usize, k: usize, mut a: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(p: usize, ds: &[usize]) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of polynomials of degree `< k`, reduced by the monic `modulus`
/// (coefficients of `x^0..x^{k-1}` of `x^k - modulus`... i.e. `x^k = Σ modulus[i] x^i`).
fn poly_mul(p: usize, k: usize, a: usize, b: usize, reduce: &[usize]) -> usize {
    let (da, db) = (digits(p, k, a), digits(p, k, b));
    let mut prod = vec![0; 2 * k];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &r) in reduce.iter().enumerate() {
            prod[deg - k + i] = (prod[deg - k + i] + c * r) % p;
        }
    }
    undigits(p, &prod[..k])
}

/// `Z_p[x]/(x^k)`; `truncated 2 2` is `Z2[x]/(x²)`.
pub fn truncated_polynomials(p: usize, k: usize) -> RingTable {
    let reduce = vec![0; k];
    ring_from_fns(p.pow(k as u32), |a, b| poly_add(p, k, a, b), |a, b| poly_mul(p, k, a, b, &reduce))
}

/// The field with `p^k` elements, `Z_p[x]` modulo the first irreducible
/// monic polynomial of degree `k` in base-`p` order.
pub fn galois_field(p: usize, k: usize) -> RingTable {
    let n = p.pow(k as u32);
    let reduce = (0..n)
        .map(|c| {
            // x^k = -(c_0 + c_1 x + ...) : store the negated coefficients
            digits(p, k, c).iter().map(|&d| (p - d) % p).collect::<Vec<_>>()
        })
        .find(|reduce| {
            // irreducible iff the quotient ring has no zero divisors
            (1..n).all(|a| (1..n).all(|b| poly_mul(p, k, a, b, reduce) != 0))
        })
        .expect("an irreducible polynomial exists for every degree");
    ring_from_fns(n, |a, b| poly_add(p, k, a, b), |a, b| poly_mul(p, k, a, b, &reduce))
}

/// Upper triangular 2×2 matrices over `Z_p`; `[[a, b], [0, c]]` has index
/// `a + p·b + p²·c`. Not commutative.
pub fn upper_triangular2(p: usize) -> RingTable {
    let decode = |x: usize| (x % p, (x / p) % p, x / (p * p));
    let encode = |a: usize, b: usize, c: usize| a + p * b + p * p * c;
    ring_from_fns(
        p * p * p,
        |x, y| {
            let (a, b, c) = decode(x);
            let (a2, b2, c2) = decode(y);
            encode((a + a2) % p, (b + b2) % p, (c + c2) % p)
        },
        |x, y| {
            let (a, b, c) = decode(x);
            let (a2, b2, c2) = decode(y);
            encode(a * a2 % p, (a * b2 + b * c2) % p, c * c2 % p)
        },
    )
}

/// `R × S` with componentwise operations; `(r, s)` has index `r·|S| + s`.
pub fn product_ring(r: &RingTable, s: &RingTable) -> RingTable {
    let m = s.order();
    ring_from_fns(
        r.order() * m,
        |x, y| r.add(x / m, y / m) * m + s.add(x % m, y % m),
        |x, y| r.mul(x / m, y / m) * m + s.mul(x % m, y % m),
    )
}

/// Named group specs used by tests and benchmarks, all of order ≤ 24.
pub fn small_group_specs() -> Vec<&'static str> {
    vec![
        "cyclic 1",
        "cyclic 2",
        "cyclic 3",
        "cyclic 4",
        "elementary 2 2",
        "cyclic 5",
        "cyclic 6",
        "symmetric 3",
        "cyclic 7",
        "cyclic 8",
        "product(cyclic 2, cyclic 4)",
        "elementary 2 3",
        "dihedral 4",
        "quaternion8",
        "cyclic 9",
        "elementary 3 2",
        "cyclic 10",
        "dihedral 5",
        "cyclic 12",
        "product(cyclic 2, cyclic 6)",
        "dihedral 6",
        "alternating 4",
        "dicyclic 3",
        "order16 1",
        "order16 2",
        "order16 3",
        "order16 4",
        "order16 5",
        "order16 6",
        "order16 7",
        "order16 8",
        "order16 9",
        "order16 10",
        "order16 11",
        "order16 12",
        "order16 13",
        "order16 14",
        "semidirect 9 2 8",
        "product(cyclic 3, symmetric 3)",
        "product(cyclic 2, elementary 3 2)",
        "cyclic 20",
        "dihedral 10",
        "semidirect 5 4 2",
        "symmetric 4",
        "product(cyclic 2, alternating 4)",
        "dihedral 12",
        "product(cyclic 2, elementary 2 2)",
        "product(cyclic 4, symmetric 3)",
        "product(elementary 2 2, cyclic 6)",
    ]
}

/// p-groups of order ≤ 32 for the series tests.
pub fn p_group_specs() -> Vec<&'static str> {
    vec![
        "cyclic 2",
        "cyclic 3",
        "cyclic 4",
        "elementary 2 2",
        "cyclic 8",
        "product(cyclic 2, cyclic 4)",
        "elementary 2 3",
        "dihedral 4",
        "quaternion8",
        "cyclic 9",
        "elementary 3 2",
        "order16 1",
        "order16 2",
        "order16 3",
        "order16 4",
        "order16 5",
        "order16 6",
        "order16 7",
        "order16 8",
        "order16 9",
        "order16 10",
        "order16 11",
        "order16 12",
        "order16 13",
        "order16 14",
        "heisenberg 3",
        "elementary 3 3",
        "cyclic 27",
        "product(cyclic 3, cyclic 9)",
        "cyclic 32",
        "elementary 2 5",
        "product(dihedral 4, elementary 2 2)",
        "product(quaternion8, cyclic 4)",
        "product(cyclic 8, cyclic 4)",
        "dihedral 16",
    ]
}

/// Named ring specs of order ≤ 16.
pub fn small_ring_specs() -> Vec<&'static str> {
    vec![
        "zn 2",
        "null 2",
        "zn 3",
        "zn 4",
        "gf 2 2",
        "truncated 2 2",
        "product(zn 2, zn 2)",
        "null 4",
        "zn 6",
        "product(zn 2, zn 3)",
        "zn 8",
        "gf 2 3",
        "truncated 2 3",
        "upper2 2",
        "product(zn 2, gf 2 2)",
        "product(zn 2, zn 4)",
        "gf 3 2",
        "zn 9",
        "truncated 3 2",
        "product(zn 3, zn 3)",
        "product(gf 2 2, gf 2 2)",
        "gf 2 4",
        "zn 16",
        "product(truncated 2 2, truncated 2 2)",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!(GroupSpec::parse("cyclic 4").unwrap(), GroupSpec::Cyclic(4));
        let p = GroupSpec::parse("product(cyclic 2, product(cyclic 3, quaternion8))").unwrap();
        assert_eq!(p.order().unwrap(), 48);
        assert_eq!(GroupSpec::parse(&p.to_string()).unwrap(), p);
        assert!(matches!(GroupSpec::parse("klein"), Err(CorpusError::UnknownSpec(_))));
        assert!(matches!(GroupSpec::parse("product(cyclic 2)"), Err(CorpusError::UnknownSpec(_))));
        assert!(matches!(make_group("cyclic 300", 256), Err(CorpusError::TooLarge { order: 300, cap: 256 })));
        assert!(matches!(make_group("heisenberg 7", 256), Err(CorpusError::TooLarge { .. })));
        assert!(matches!(make_group("symmetric 6", 10_000), Err(CorpusError::BadParameters(_))));
        assert!(matches!(make_group("semidirect 8 2 2", 256), Err(CorpusError::BadParameters(_))));
    }

    #[test]
    fn constructed_orders() {
        for spec in small_group_specs().into_iter().chain(p_group_specs()) {
            let parsed = GroupSpec::parse(spec).unwrap();
            let g = parsed.build(256).unwrap();
            assert_eq!(g.order(), parsed.order().unwrap(), "{spec}");
        }
        for spec in small_ring_specs() {
            let parsed = RingSpec::parse(spec).unwrap();
            assert_eq!(parsed.build(256).unwrap().order(), parsed.order().unwrap(), "{spec}");
        }
    }

    #[test]
    fn heisenberg_is_nonabelian_exponent_p() {
        let h = make_group("heisenberg 3", 256).unwrap();
        assert_eq!(h.order(), 27);
        assert!(!h.is_abelian());
        assert!(h.elements().all(|x| 3 % h.element_order(x) == 0));
        assert!(CayleyTable::new(27, &h.rows()).is_ok());
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion8();
        assert_eq!(q.order_profile()[2], 1);
        assert_eq!(q.order_profile()[4], 6);
    }

    #[test]
    fn fields_have_no_zero_divisors() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            let f = galois_field(p, k);
            let zero = f.zero();
            for a in 0..f.order() {
                for b in 0..f.order() {
                    if a != zero && b != zero {
                        assert_ne!(f.mul(a, b), zero);
                    }
                }
            }
        }
    }

    #[test]
    fn upper_triangular_is_noncommutative() {
        let r = upper_triangular2(2);
        assert!((0..8).any(|a| (0..8).any(|b| r.mul(a, b) != r.mul(b, a))));
    }
}
