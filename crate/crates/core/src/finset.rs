//! Non-empty finite sets of integers under set addition.
//!
//! [`FinSet`] is the element type of the sumset monoid: a sorted, strictly
//! increasing, non-empty sequence of `i64`. The neutral element is `{0}` and
//! the operation is `X + Y = {x + y : x ∈ X, y ∈ Y}`.
//!
//! Every element-level arithmetic step is checked: operations report
//! [`SetError::Overflow`] instead of wrapping, since a silently wrapped sum
//! would poison every identity the oracle suites rely on.

use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use crate::parse::{Cursor, ParseError};

/// Span threshold below which `sumset` switches to the dense bitset kernel.
pub const DENSE_SPAN_THRESHOLD: i128 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetError {
    /// The empty set is not an element of the monoid.
    #[error("the empty set is not a valid finite set")]
    EmptySet,
    /// 64-bit element arithmetic left the representable range.
    #[error("integer overflow in set arithmetic")]
    Overflow,
    /// `interval(a, b)` requires `a <= b`.
    #[error("invalid interval: lower bound exceeds upper bound")]
    InvalidInterval,
}

/// A non-empty finite set of integers, stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSet {
    elems: Vec<i64>,
}

impl FinSet {
    /// Builds a set from arbitrary values: sorts, deduplicates, rejects empty
    /// input.
    pub fn new(values: impl IntoIterator<Item = i64>) -> Result<Self, SetError> {
        let mut elems: Vec<i64> = values.into_iter().collect();
        if elems.is_empty() {
            return Err(SetError::EmptySet);
        }
        elems.sort_unstable();
        elems.dedup();
        Ok(FinSet { elems })
    }

    pub fn singleton(value: i64) -> Self {
        FinSet { elems: vec![value] }
    }

    /// The neutral element `{0}`.
    pub fn zero() -> Self {
        FinSet::singleton(0)
    }

    /// The discrete interval `{a, a+1, ..., b}`.
    pub fn interval(a: i64, b: i64) -> Result<Self, SetError> {
        if a > b {
            return Err(SetError::InvalidInterval);
        }
        let len = (b as i128 - a as i128) + 1;
        let len: usize = len.try_into().map_err(|_| SetError::Overflow)?;
        let mut elems = Vec::with_capacity(len);
        let mut v = a;
        loop {
            elems.push(v);
            if v == b {
                break;
            }
            v += 1;
        }
        Ok(FinSet { elems })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_singleton(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn min(&self) -> i64 {
        self.elems[0]
    }

    pub fn max(&self) -> i64 {
        *self.elems.last().unwrap()
    }

    pub fn contains(&self, value: i64) -> bool {
        self.elems.binary_search(&value).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.elems.iter().copied()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.elems
    }

    /// `δ⁻(X) = min X − max X`. Always `<= 0`; widened so it is total.
    pub fn delta_minus(&self) -> i128 {
        self.min() as i128 - self.max() as i128
    }

    /// `δ⁺(X) = min X + max X`; widened so it is total.
    pub fn delta_plus(&self) -> i128 {
        self.min() as i128 + self.max() as i128
    }

    /// Sumset `{x + y : x ∈ X, y ∈ Y}` with the default dense-path threshold.
    pub fn sumset(&self, other: &FinSet) -> Result<FinSet, SetError> {
        self.sumset_with_threshold(other, DENSE_SPAN_THRESHOLD)
    }

    /// Sumset with an explicit span threshold for the dense kernel.
    ///
    /// A threshold of `0` forces the merge kernel. Both kernels are
    /// observationally identical; the oracle suites cross-check them.
    pub fn sumset_with_threshold(
        &self,
        other: &FinSet,
        dense_span_threshold: i128,
    ) -> Result<FinSet, SetError> {
        let lo = checked(self.min().checked_add(other.min()))?;
        let hi = checked(self.max().checked_add(other.max()))?;
        let span = hi as i128 - lo as i128;
        // the dense kernel allocates span/64 words; spans beyond 2^32 always
        // go through the merge kernel regardless of the threshold
        if span < dense_span_threshold && span <= 1 << 32 {
            self.sumset_dense(other, lo, span as usize)
        } else {
            self.sumset_merge(other)
        }
    }

    /// Dense kernel: mark each pairwise sum in a bitset indexed from
    /// `min X + min Y`, then collect the set bits in order.
    ///
    /// The extreme sums were checked by the caller; every interior sum lies
    /// between them, so the per-pair additions cannot leave the 64-bit range.
    fn sumset_dense(&self, other: &FinSet, lo: i64, span: usize) -> Result<FinSet, SetError> {
        let mut words = vec![0u64; span / 64 + 1];
        for &x in &self.elems {
            for &y in &other.elems {
                let idx = (x + y - lo) as usize;
                words[idx / 64] |= 1 << (idx % 64);
            }
        }
        let mut elems = Vec::new();
        for (w, &word) in words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                elems.push(lo + (w * 64 + b) as i64);
                bits &= bits - 1;
            }
        }
        Ok(FinSet { elems })
    }

    /// Merge kernel: k-way heap merge of the |X| translated copies of Y,
    /// dropping duplicates as they surface.
    fn sumset_merge(&self, other: &FinSet) -> Result<FinSet, SetError> {
        // Heap of (next value, copy index, position in Y), min-first.
        let mut heap: BinaryHeap<std::cmp::Reverse<(i64, usize, usize)>> =
            BinaryHeap::with_capacity(self.elems.len());
        for (i, &x) in self.elems.iter().enumerate() {
            let v = checked(x.checked_add(other.elems[0]))?;
            heap.push(std::cmp::Reverse((v, i, 0)));
        }
        let mut elems: Vec<i64> = Vec::new();
        while let Some(std::cmp::Reverse((v, i, j))) = heap.pop() {
            if elems.last() != Some(&v) {
                elems.push(v);
            }
            if j + 1 < other.elems.len() {
                let next = checked(self.elems[i].checked_add(other.elems[j + 1]))?;
                heap.push(std::cmp::Reverse((next, i, j + 1)));
            }
        }
        Ok(FinSet { elems })
    }

    /// The k-fold sumset `X + X + ... + X`; `k = 0` yields `{0}`.
    pub fn k_fold(&self, k: u32) -> Result<FinSet, SetError> {
        let mut acc = FinSet::zero();
        for _ in 0..k {
            acc = acc.sumset(self)?;
        }
        Ok(acc)
    }

    /// Elementwise negation `−X`.
    pub fn negate(&self) -> Result<FinSet, SetError> {
        let mut elems = Vec::with_capacity(self.elems.len());
        for &x in self.elems.iter().rev() {
            elems.push(checked(x.checked_neg())?);
        }
        Ok(FinSet { elems })
    }

    /// Elementwise translation `X + k`.
    pub fn translate(&self, k: i64) -> Result<FinSet, SetError> {
        let mut elems = Vec::with_capacity(self.elems.len());
        for &x in &self.elems {
            elems.push(checked(x.checked_add(k))?);
        }
        Ok(FinSet { elems })
    }

    /// Translation by a widened amount, reporting overflow if the shift or
    /// any shifted element leaves the 64-bit range.
    pub(crate) fn translate_wide(&self, k: i128) -> Result<FinSet, SetError> {
        let k: i64 = k.try_into().map_err(|_| SetError::Overflow)?;
        self.translate(k)
    }

    /// The canonical representative `X − min X` of the translation class of
    /// `X`: contains 0, all elements non-negative.
    pub fn reduce(&self) -> Result<FinSet, SetError> {
        let m = self.min();
        let mut elems = Vec::with_capacity(self.elems.len());
        for &x in &self.elems {
            elems.push(checked(x.checked_sub(m))?);
        }
        Ok(FinSet { elems })
    }

    /// Whether the set is a reduced representative (`0 = min X`).
    pub fn is_reduced(&self) -> bool {
        self.min() == 0
    }

    /// The reversal `max X − X`. Always reduced; an involution on reduced
    /// sets.
    pub fn rev(&self) -> Result<FinSet, SetError> {
        let m = self.max();
        let mut elems = Vec::with_capacity(self.elems.len());
        for &x in self.elems.iter().rev() {
            elems.push(checked(m.checked_sub(x))?);
        }
        Ok(FinSet { elems })
    }

    /// The consecutive gaps of the sorted elements.
    pub fn gaps(&self) -> Vec<i64> {
        self.elems.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

fn checked(v: Option<i64>) -> Result<i64, SetError> {
    v.ok_or(SetError::Overflow)
}

/// Every non-empty subset of `{lo, ..., hi}` with at most `max_size`
/// elements, ordered by size and then lexicographically.
pub(crate) fn subsets_in_window(lo: i64, hi: i64, max_size: usize) -> Vec<FinSet> {
    let window: Vec<i64> = (lo..=hi).collect();
    let n = window.len();
    let mut out = Vec::new();
    for k in 1..=max_size.min(n) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(FinSet {
                elems: idx.iter().map(|&i| window[i]).collect(),
            });
            // Rightmost index that can still advance; none means this was
            // the last k-combination.
            let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSet{self}")
    }
}

impl FromStr for FinSet {
    type Err = ParseError;

    /// Parses the set literal format `{a,b,c}` with optional whitespace.
    /// Empty braces are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        c.skip_ws();
        c.expect('{')?;
        c.skip_ws();
        if c.peek() == Some('}') {
            return Err(ParseError::new(c.pos(), "empty set literal"));
        }
        let mut values = Vec::new();
        loop {
            c.skip_ws();
            values.push(c.integer()?);
            c.skip_ws();
            if c.eat(',') {
                continue;
            }
            c.expect('}')?;
            break;
        }
        c.expect_end()?;
        FinSet::new(values).map_err(|_| ParseError::new(0, "empty set literal"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn fs(values: &[i64]) -> FinSet {
        FinSet::new(values.iter().copied()).unwrap()
    }

    /// Independent sumset oracle: enumerate every pairwise sum.
    fn naive_sumset(x: &FinSet, y: &FinSet) -> FinSet {
        let mut out = BTreeSet::new();
        for a in x.iter() {
            for b in y.iter() {
                out.insert(a.checked_add(b).unwrap());
            }
        }
        FinSet::new(out).unwrap()
    }

    #[test]
    fn make_sorts_and_dedups() {
        assert_eq!(fs(&[3, 0, 3]), fs(&[0, 3]));
        assert_eq!(fs(&[5]).as_slice(), &[5]);
        assert_eq!(FinSet::new([]), Err(SetError::EmptySet));
    }

    #[test]
    fn sumset_matches_enumeration() {
        assert_eq!(fs(&[0, 1]).sumset(&fs(&[0, 1])).unwrap(), fs(&[0, 1, 2]));
        assert_eq!(fs(&[-3, 5]).sumset(&fs(&[0])).unwrap(), fs(&[-3, 5]));
        // 2{-1,0} + 1{0,1} = {-2,-1,0} + {0,1} = [-2,1]
        let lhs = fs(&[-1, 0])
            .k_fold(2)
            .unwrap()
            .sumset(&fs(&[0, 1]).k_fold(1).unwrap())
            .unwrap();
        assert_eq!(lhs, FinSet::interval(-2, 1).unwrap());
        for x in [fs(&[0, 1, 3]), fs(&[-4, 2]), fs(&[7])] {
            for y in [fs(&[-1, 0, 1]), fs(&[2, 5]), fs(&[0])] {
                assert_eq!(x.sumset(&y).unwrap(), naive_sumset(&x, &y));
            }
        }
    }

    #[test]
    fn sumset_extremes() {
        let x = fs(&[-3, 1, 4]);
        let y = fs(&[2, 9]);
        let s = x.sumset(&y).unwrap();
        assert_eq!(s.min(), x.min() + y.min());
        assert_eq!(s.max(), x.max() + y.max());
    }

    #[test]
    fn dense_and_merge_paths_agree() {
        let sets = [fs(&[-3, 0, 2]), fs(&[1, 4, 9]), fs(&[-7]), fs(&[0, 1])];
        for x in &sets {
            for y in &sets {
                let merge = x.sumset_with_threshold(y, 0).unwrap();
                let dense = x.sumset_with_threshold(y, i128::MAX).unwrap();
                assert_eq!(merge, dense);
            }
        }
    }

    #[test]
    fn sumset_overflow_is_reported() {
        let big = FinSet::singleton(i64::MAX);
        assert_eq!(big.sumset(&FinSet::singleton(1)), Err(SetError::Overflow));
    }

    #[test]
    fn k_fold_cases() {
        assert_eq!(fs(&[2, 5]).k_fold(0).unwrap(), FinSet::zero());
        assert_eq!(fs(&[2, 5]).k_fold(1).unwrap(), fs(&[2, 5]));
        // all 2-sums of {0,1,3}: 0,1,2,3,4,6
        assert_eq!(fs(&[0, 1, 3]).k_fold(2).unwrap(), fs(&[0, 1, 2, 3, 4, 6]));
    }

    #[test]
    fn negate_is_involution() {
        assert_eq!(fs(&[-1, 0, 2]).negate().unwrap(), fs(&[-2, 0, 1]));
        assert_eq!(FinSet::zero().negate().unwrap(), FinSet::zero());
        let x = fs(&[4, 7]);
        assert_eq!(x.negate().unwrap().negate().unwrap(), x);
        assert_eq!(
            FinSet::singleton(i64::MIN).negate(),
            Err(SetError::Overflow)
        );
    }

    #[test]
    fn translate_shifts_delta_plus_only() {
        assert_eq!(fs(&[0, 1]).translate(3).unwrap(), fs(&[3, 4]));
        assert_eq!(fs(&[-2, 5]).translate(0).unwrap(), fs(&[-2, 5]));
        let x = fs(&[0, 1]);
        let t = x.translate(3).unwrap();
        assert_eq!(t.delta_minus(), x.delta_minus());
        assert_eq!(t.delta_plus(), x.delta_plus() + 6);
        assert_eq!(t.delta_plus(), 7);
    }

    #[test]
    fn interval_cases() {
        assert_eq!(FinSet::interval(-2, 1).unwrap(), fs(&[-2, -1, 0, 1]));
        assert_eq!(FinSet::interval(3, 3).unwrap(), fs(&[3]));
        assert_eq!(FinSet::interval(4, 3), Err(SetError::InvalidInterval));
        // [-m,n] + X = [-m+min X, n+max X] for m=n=2, X={0,1}
        let x = fs(&[0, 1]);
        let lhs = FinSet::interval(-2, 2).unwrap().sumset(&x).unwrap();
        assert_eq!(lhs, FinSet::interval(-2, 3).unwrap());
    }

    #[test]
    fn delta_statistics() {
        assert_eq!(fs(&[0, 1, 3]).delta_minus(), -3);
        assert_eq!(fs(&[0, 1, 3]).delta_plus(), 3);
        assert_eq!(FinSet::singleton(5).delta_minus(), 0);
        assert_eq!(FinSet::singleton(5).delta_plus(), 10);
        let x = fs(&[0, 2]);
        assert_eq!(x.negate().unwrap().delta_minus(), x.delta_minus());
        assert_eq!(x.negate().unwrap().delta_minus(), -2);
    }

    #[test]
    fn delta_total_at_extremes() {
        let x = fs(&[i64::MIN, i64::MAX]);
        assert_eq!(x.delta_minus(), i64::MIN as i128 - i64::MAX as i128);
        assert_eq!(x.delta_plus(), -1);
    }

    #[test]
    fn reduce_cases() {
        assert_eq!(fs(&[3, 5, 8]).reduce().unwrap(), fs(&[0, 2, 5]));
        assert_eq!(fs(&[0, 4]).reduce().unwrap(), fs(&[0, 4]));
        assert_eq!(FinSet::singleton(-7).reduce().unwrap(), FinSet::zero());
        let x = fs(&[-2, 1, 9]);
        assert!(x.reduce().unwrap().is_reduced());
        assert_eq!(x.reduce().unwrap().reduce().unwrap(), x.reduce().unwrap());
        assert!(x.reduce().unwrap().contains(0));
    }

    #[test]
    fn rev_cases() {
        assert_eq!(fs(&[0, 2, 3]).rev().unwrap(), fs(&[0, 1, 3]));
        assert_eq!(FinSet::zero().rev().unwrap(), FinSet::zero());
        // rev ignores translation
        assert_eq!(fs(&[1, 3, 4]).rev().unwrap(), fs(&[0, 2, 3]).rev().unwrap());
        // rev ∘ rev = reduce
        let x = fs(&[-5, -2, 0, 1]);
        assert_eq!(x.rev().unwrap().rev().unwrap(), x.reduce().unwrap());
    }

    #[test]
    fn units_are_singletons() {
        let sets = subsets_in_window(-2, 2, 3);
        for x in &sets {
            for y in &sets {
                let s = x.sumset(y).unwrap();
                assert_eq!(s.is_singleton(), x.is_singleton() && y.is_singleton());
            }
        }
    }

    #[test]
    fn subsets_enumeration_order_and_count() {
        let sets = subsets_in_window(0, 1, 2);
        let rendered: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
        assert_eq!(rendered, ["{0}", "{1}", "{0,1}"]);
        assert_eq!(subsets_in_window(-1, 1, 1).len(), 3);
        assert_eq!(subsets_in_window(0, 3, 2).len(), 10);
        // by size, then lexicographic within size
        let sets = subsets_in_window(-1, 1, 3);
        let rendered: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            rendered,
            [
                "{-1}",
                "{0}",
                "{1}",
                "{-1,0}",
                "{-1,1}",
                "{0,1}",
                "{-1,0,1}"
            ]
        );
    }

    #[test]
    fn display_and_parse_round_trip() {
        let x = fs(&[-3, 0, 5]);
        assert_eq!(x.to_string(), "{-3,0,5}");
        assert_eq!("{-3,0,5}".parse::<FinSet>().unwrap(), x);
        assert_eq!("{ -3 , 0 , 5 }".parse::<FinSet>().unwrap(), x);
        assert_eq!(" {5} ".parse::<FinSet>().unwrap(), FinSet::singleton(5));
    }

    #[test]
    fn parse_rejects_bad_literals() {
        assert!("{}".parse::<FinSet>().is_err());
        assert!("{1,}".parse::<FinSet>().is_err());
        assert!("1,2".parse::<FinSet>().is_err());
        assert!("{1 2}".parse::<FinSet>().is_err());
        assert!("{1}x".parse::<FinSet>().is_err());
        let err = "{a}".parse::<FinSet>().unwrap_err();
        assert_eq!(err.pos, 1);
    }
}
