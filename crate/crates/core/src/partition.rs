//! Integer partitions: addition as multiset union, scaling by repetition,
//! divisibility, conjugation, dominance order, almost-rectangularity,
//! almost-rectangular refinements, and the part-size invariant.
//!
//! The scaling `t * lambda` is the multiset union of t copies of lambda:
//! every part keeps its size and its multiplicity is multiplied by t.
//! Accordingly lambda is t-divisible when every part multiplicity is a
//! multiple of t. (Scaling part sizes instead is a different operation that
//! is *not* the one the commuting theory needs; see the tests pinning this.)

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A weakly decreasing list of positive integers; may be empty (the
/// partition of 0, used only as an additive identity).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

macro_rules! fmt_impl {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "(")?;
            for (i, p) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")
        }
    };
}

impl fmt::Debug for Partition {
    fmt_impl!();
}

impl fmt::Display for Partition {
    fmt_impl!();
}

impl Partition {
    /// Build from parts, which must be positive and weakly decreasing.
    pub fn new(parts: &[u32]) -> Result<Partition> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::Parse("parts must be weakly decreasing".into()));
            }
        }
        if parts.contains(&0) {
            return Err(Error::Parse("parts must be positive".into()));
        }
        Ok(Partition(parts.to_vec()))
    }

    /// Build from arbitrary positive parts, sorting them.
    pub fn from_unsorted(parts: &[u32]) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::Parse("parts must be positive".into()));
        }
        let mut v = parts.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(v))
    }

    pub fn empty() -> Partition {
        Partition(vec![])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |lambda|: the sum of the parts.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Multiplicity of the part size j.
    pub fn multiplicity(&self, j: u32) -> u32 {
        self.0.iter().filter(|&&p| p == j).count() as u32
    }

    /// Multiset union.
    pub fn add(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// t copies of every part.
    pub fn scale(&self, t: u32) -> Partition {
        let mut v = Vec::with_capacity(self.0.len() * t as usize);
        for &p in &self.0 {
            for _ in 0..t {
                v.push(p);
            }
        }
        Partition(v)
    }

    pub fn is_divisible(&self, t: u32) -> bool {
        if t == 0 {
            return false;
        }
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i];
            let mut count = 0;
            while i < self.0.len() && self.0[i] == j {
                count += 1;
                i += 1;
            }
            if count % t != 0 {
                return false;
            }
        }
        true
    }

    /// Exact inverse of `scale`.
    pub fn divide(&self, t: u32) -> Result<Partition> {
        if !self.is_divisible(t) {
            return Err(Error::NotDivisible);
        }
        let mut v = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i];
            let mut count = 0;
            while i < self.0.len() && self.0[i] == j {
                count += 1;
                i += 1;
            }
            for _ in 0..(count / t) {
                v.push(j);
            }
        }
        Ok(Partition(v))
    }

    /// Column counts of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let max = self.0[0];
        let v = (1..=max)
            .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition(v)
    }

    /// Dominance order: every prefix sum of self is >= that of other.
    /// Defined only between partitions of equal size.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch);
        }
        let n = self.0.len().max(other.0.len());
        let mut sa = 0u64;
        let mut sb = 0u64;
        for i in 0..n {
            sa += *self.0.get(i).unwrap_or(&0) as u64;
            sb += *other.0.get(i).unwrap_or(&0) as u64;
            if sa < sb {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest and smallest parts differ by at most 1.
    pub fn is_almost_rectangular(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&a), Some(&b)) => a - b <= 1,
            _ => false,
        }
    }

    /// Parse the textual syntax `(7,5)`.
    pub fn parse(text: &str) -> Result<Partition> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse("partition must be parenthesized".into()))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in inner.split(',') {
            let p: u32 = piece
                .trim()
                .parse()
                .map_err(|_| Error::Parse(alloc::format!("bad part `{piece}`")))?;
            parts.push(p);
        }
        Partition::new(&parts)
    }

    pub fn format(&self) -> String {
        alloc::format!("{self}")
    }
}

/// All partitions of n, in descending lexicographic order (a linear
/// extension of dominance: (n) first, (1,...,1) last).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let hi = max.min(remaining);
        for next in (1..=hi).rev() {
            cur.push(next);
            rec(remaining - next, next, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// The highest common factor of all parts across the given partitions.
pub fn part_size_invariant(partitions: &[Partition]) -> Result<u32> {
    let mut h = 0u32;
    for lam in partitions {
        for &p in lam.parts() {
            h = crate::gf::gcd_u64(h as u64, p as u64) as u32;
        }
    }
    if h == 0 {
        Err(Error::EmptyInput)
    } else {
        Ok(h)
    }
}

/// Can mu be split into almost-rectangular subpartitions whose sizes are the
/// parts of nu? Backtracking over runs of at-most-two adjacent part values.
fn ar_decomposes_into(mu_counts: &mut Vec<(u32, u32)>, nu: &[u32], idx: usize) -> bool {
    if idx == nu.len() {
        return mu_counts.iter().all(|&(_, c)| c == 0);
    }
    let target = nu[idx];
    // An almost-rectangular subpartition uses parts of value v and v+1 only:
    // j parts of size v+1 and k parts of size v with (v+1)j + vk = target.
    let values: Vec<u32> = mu_counts.iter().map(|&(v, _)| v).collect();
    for &v in &values {
        let avail_v = mu_counts.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, c)| c);
        let avail_v1 = mu_counts
            .iter()
            .find(|&&(w, _)| w == v + 1)
            .map_or(0, |&(_, c)| c);
        let mut j = 0u32;
        while (v + 1) * j <= target && j <= avail_v1 {
            let rest = target - (v + 1) * j;
            if rest.is_multiple_of(v) {
                let k = rest / v;
                if k <= avail_v && j + k >= 1 {
                    // Apply and recurse.
                    for e in mu_counts.iter_mut() {
                        if e.0 == v {
                            e.1 -= k;
                        }
                        if e.0 == v + 1 {
                            e.1 -= j;
                        }
                    }
                    let ok = ar_decomposes_into(mu_counts, nu, idx + 1);
                    for e in mu_counts.iter_mut() {
                        if e.0 == v {
                            e.1 += k;
                        }
                        if e.0 == v + 1 {
                            e.1 += j;
                        }
                    }
                    if ok {
                        return true;
                    }
                }
            }
            j += 1;
        }
    }
    false
}

fn counts_of(p: &Partition) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &part in p.parts() {
        if let Some(e) = out.iter_mut().find(|e| e.0 == part) {
            e.1 += 1;
        } else {
            out.push((part, 1));
        }
    }
    out
}

/// Does mu refine nu almost-rectangularly (split into AR subpartitions
/// summing to the parts of nu)?
pub fn is_ar_refinement(mu: &Partition, nu: &Partition) -> bool {
    if mu.size() != nu.size() {
        return false;
    }
    let mut counts = counts_of(mu);
    ar_decomposes_into(&mut counts, nu.parts(), 0)
}

fn ar_split_rec(
    mu_counts: &mut Vec<(u32, u32)>,
    nu: &[u32],
    idx: usize,
    acc: &mut Vec<Partition>,
) -> bool {
    if idx == nu.len() {
        return mu_counts.iter().all(|&(_, c)| c == 0);
    }
    let target = nu[idx];
    let values: Vec<u32> = mu_counts.iter().map(|&(v, _)| v).collect();
    for &v in &values {
        let avail_v = mu_counts.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, c)| c);
        let avail_v1 = mu_counts
            .iter()
            .find(|&&(w, _)| w == v + 1)
            .map_or(0, |&(_, c)| c);
        let mut j = 0u32;
        while (v + 1) * j <= target && j <= avail_v1 {
            let rest = target - (v + 1) * j;
            if rest.is_multiple_of(v) {
                let k = rest / v;
                if k <= avail_v && j + k >= 1 {
                    for e in mu_counts.iter_mut() {
                        if e.0 == v {
                            e.1 -= k;
                        }
                        if e.0 == v + 1 {
                            e.1 -= j;
                        }
                    }
                    let mut group = Vec::new();
                    for _ in 0..j {
                        group.push(v + 1);
                    }
                    for _ in 0..k {
                        group.push(v);
                    }
                    acc.push(Partition::from_unsorted(&group).unwrap());
                    let ok = ar_split_rec(mu_counts, nu, idx + 1, acc);
                    if ok {
                        return true;
                    }
                    acc.pop();
                    for e in mu_counts.iter_mut() {
                        if e.0 == v {
                            e.1 += k;
                        }
                        if e.0 == v + 1 {
                            e.1 += j;
                        }
                    }
                }
            }
            j += 1;
        }
    }
    false
}

/// A witnessing split for `is_ar_refinement(mu, nu)`: one almost-rectangular
/// subpartition of mu per part of nu, in nu's part order. None if mu does not
/// refine nu almost-rectangularly.
pub fn ar_refinement_split(mu: &Partition, nu: &Partition) -> Option<Vec<Partition>> {
    if mu.size() != nu.size() {
        return None;
    }
    let mut counts = counts_of(mu);
    let mut acc = Vec::new();
    if ar_split_rec(&mut counts, nu.parts(), 0, &mut acc) {
        Some(acc)
    } else {
        None
    }
}

/// Search for a partition nu having both inputs as almost-rectangular
/// refinements. Candidates are enumerated in descending lexicographic order
/// (a linear extension of decreasing dominance); the first hit is returned.
pub fn common_ar_source(mu1: &Partition, mu2: &Partition) -> Result<Option<Partition>> {
    if mu1.size() != mu2.size() {
        return Err(Error::SizeMismatch);
    }
    if mu1.is_empty() {
        return Ok(Some(Partition::empty()));
    }
    for nu in partitions_of(mu1.size()) {
        if is_ar_refinement(mu1, &nu) && is_ar_refinement(mu2, &nu) {
            return Ok(Some(nu));
        }
    }
    Ok(None)
}
