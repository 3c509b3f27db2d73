//! Compositions, subsets of `[n-1]`, permutations and descent sets.
//!
//! Conventions:
//! - permutations are stored in one-line notation with values `1..=n`;
//! - the product `u.compose(v)` is the map `i -> u(v(i))`;
//! - subsets of `[n-1]` are bit-sets, bit `i` standing for the element `i`.
//!
//! Enumeration orders are fixed: compositions come from a binary counter on
//! their cut-sets (`gaps` of the subsets `0, 1, 2, ...` read as bit masks),
//! permutations in lexicographic order of their one-line notation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `n` accepted anywhere in the crate.
pub const MAX_N: usize = 16;

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        Err(Error::TooLarge { n, max: MAX_N })
    } else {
        Ok(())
    }
}

/// A composition of `n`: an ordered tuple of positive integers summing to `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!(
                "{parts:?} has a zero part"
            )));
        }
        check_n(parts.iter().sum())?;
        Ok(Composition { parts })
    }

    /// The one-part composition `(n)` (empty for `n = 0`).
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Composition { parts: vec![] }
        } else {
            Composition { parts: vec![n] }
        }
    }

    /// `(1, 1, ..., 1)` with `n` parts.
    pub fn ones(n: usize) -> Self {
        Composition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn rev(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    /// Partial sums `a1, a1+a2, ...` excluding `n`.
    pub fn gaps_inv(&self) -> IndexSet {
        let n = self.n();
        let mut bits = 0u32;
        let mut acc = 0;
        for &p in &self.parts[..self.parts.len().saturating_sub(1)] {
            acc += p;
            bits |= 1 << acc;
        }
        IndexSet { n, bits }
    }

    /// Parts sorted in decreasing order (the underlying partition).
    pub fn sorted_desc(&self) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses "a1,a2,...,ak"; the empty string is the empty composition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Composition { parts: vec![] });
        }
        let parts = t
            .split(',')
            .map(|x| {
                x.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidComposition(format!("cannot parse part {x:?} in {s:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// A subset of `[n-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    n: usize,
    bits: u32,
}

impl IndexSet {
    pub fn empty(n: usize) -> Self {
        IndexSet { n, bits: 0 }
    }

    /// All of `[n-1]`.
    pub fn full(n: usize) -> Self {
        let bits = if n <= 1 { 0 } else { ((1u32 << n) - 1) & !1 };
        IndexSet { n, bits }
    }

    pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
        check_n(n)?;
        let mut bits = 0u32;
        for &m in members {
            if m == 0 || m >= n {
                return Err(Error::InvalidSubset(format!(
                    "{m} is not in [1, {}]",
                    n.saturating_sub(1)
                )));
            }
            bits |= 1 << m;
        }
        Ok(IndexSet { n, bits })
    }

    /// The subset whose members are the set bits of `mask` shifted by one
    /// (bit 0 of `mask` stands for the element 1).
    pub fn from_mask(n: usize, mask: u32) -> Self {
        IndexSet {
            n,
            bits: (mask << 1) & Self::full(n).bits,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 32 && self.bits & (1 << i) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn members(&self) -> Vec<usize> {
        (1..self.n).filter(|&i| self.contains(i)).collect()
    }

    /// The composition of `n` given by the distances between consecutive
    /// elements of `{0} ∪ J ∪ {n}`.
    pub fn gaps(&self) -> Composition {
        if self.n == 0 {
            return Composition { parts: vec![] };
        }
        let mut parts = Vec::with_capacity(self.len() + 1);
        let mut last = 0;
        for j in self.members() {
            parts.push(j - last);
            last = j;
        }
        parts.push(self.n - last);
        Composition { parts }
    }

    /// Reflection `{n - j : j ∈ J}`.
    pub fn sub(&self) -> IndexSet {
        let mut bits = 0u32;
        for j in self.members() {
            bits |= 1 << (self.n - j);
        }
        IndexSet { n: self.n, bits }
    }

    /// All subsets of `J` (including `∅` and `J`).
    pub fn subsets(&self) -> impl Iterator<Item = IndexSet> + '_ {
        let full = self.bits;
        let n = self.n;
        // standard submask walk, emitted in increasing mask order
        let mut subs = Vec::with_capacity(1 << self.len());
        let mut s = full;
        loop {
            subs.push(IndexSet { n, bits: s });
            if s == 0 {
                break;
            }
            s = (s - 1) & full;
        }
        subs.reverse();
        subs.into_iter()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.members().iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

impl IndexSet {
    /// Parses "{1,3}" (or "1,3") as a subset of `[n-1]`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}');
        if t.trim().is_empty() {
            return Ok(IndexSet::empty(n));
        }
        let members = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidSubset(format!("cannot parse {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IndexSet::from_members(n, &members)
    }
}

/// `gaps(J)`.
pub fn gaps(j: &IndexSet) -> Composition {
    j.gaps()
}

/// `gaps^{-1}(alpha)`.
pub fn gaps_inv(alpha: &Composition) -> IndexSet {
    alpha.gaps_inv()
}

/// `rev(alpha)`.
pub fn rev(alpha: &Composition) -> Composition {
    alpha.rev()
}

/// `sub(J) = n - J`.
pub fn sub(j: &IndexSet) -> IndexSet {
    j.sub()
}

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        check_n(n)?;
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    /// `w0 = (n, n-1, ..., 1)`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).rev().collect(),
        }
    }

    /// The cycle `k1 -> k2 -> ... -> km -> k1` in `S_n`.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        for (i, &k) in cycle.iter().enumerate() {
            if k == 0 || k > n {
                return Err(Error::InvalidPermutation(format!(
                    "cycle entry {k} outside [1, {n}]"
                )));
            }
            images[k - 1] = cycle[(i + 1) % cycle.len()];
        }
        Permutation::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for `i` in `1..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.n(),
            other.n(),
            "composing permutations of different degree"
        );
        Permutation {
            images: other
                .images
                .iter()
                .map(|&j| self.images[j as usize - 1])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation { images: inv }
    }

    /// `{i ∈ [n-1] : w(i) > w(i+1)}`.
    pub fn descent_set(&self) -> IndexSet {
        let mut bits = 0u32;
        for i in 1..self.n() {
            if self.images[i - 1] > self.images[i] {
                bits |= 1 << i;
            }
        }
        IndexSet { n: self.n(), bits }
    }

    /// Image of a bit-set of elements of `[n]` (bit `i-1` for element `i`).
    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0u32;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out |= 1 << (self.images[i] - 1);
            m &= m - 1;
        }
        out
    }

    /// Lexicographic rank among all permutations of `[n]`.
    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0usize;
        let mut used = 0u32;
        for i in 0..n {
            let v = self.images[i] as u32 - 1;
            let smaller_unused = (v - (used & ((1 << v) - 1)).count_ones()) as usize;
            rank = rank * (n - i) + smaller_unused;
            used |= 1 << v;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: usize) -> Permutation {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut avail: Vec<u8> = (1..=n as u8).collect();
        let images = digits.into_iter().map(|d| avail.remove(d)).collect();
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses one-line notation "[2,1,3]" (brackets optional).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        if t.trim().is_empty() {
            return Ok(Permutation::identity(0));
        }
        let images = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("cannot parse {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

/// `w0` of `S_n`.
pub fn longest_word(n: usize) -> Permutation {
    Permutation::longest(n)
}

pub fn compose(u: &Permutation, v: &Permutation) -> Permutation {
    u.compose(v)
}

pub fn inverse(w: &Permutation) -> Permutation {
    w.inverse()
}

pub fn descent_set(w: &Permutation) -> IndexSet {
    w.descent_set()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All permutations of `[n]` in lexicographic order of one-line notation.
pub fn enumerate_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next = Some(Permutation::identity(n));
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut a = cur.images.clone();
        // next lexicographic permutation
        if let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) {
            let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
            a.swap(i - 1, j);
            a[i..].reverse();
            next = Some(Permutation { images: a });
        }
        Some(cur)
    })
}

/// All `2^{n-1}` compositions of `n` (one for `n = 0`), as `gaps` of the
/// subsets of `[n-1]` in increasing bit-mask order.
pub fn enumerate_compositions(n: usize) -> impl Iterator<Item = Composition> {
    let count: u32 = if n == 0 { 1 } else { 1 << (n - 1) };
    (0..count).map(move |mask| IndexSet::from_mask(n, mask).gaps())
}

/// All subsets of `[n-1]` in increasing bit-mask order.
pub fn enumerate_subsets(n: usize) -> impl Iterator<Item = IndexSet> {
    let count: u32 = if n == 0 { 1 } else { 1 << (n - 1) };
    (0..count).map(move |mask| IndexSet::from_mask(n, mask))
}

/// Number of integer partitions of `n`.
pub fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}
