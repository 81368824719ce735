//! Supports of power series: finite sets of nonnegative exponents, and
//! tuples of them for several unknowns.

use std::fmt;

use crate::semiring::{ExtInt, Finite, Infinity};

/// A finite set of nonnegative integers, stored strictly increasing.
///
/// This is the support of a univariate power series; `val` is the order of
/// its i-th derivative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Support {
    elems: Vec<i64>,
}

impl Support {
    /// Builds a support from arbitrary nonnegative exponents, sorting and
    /// deduplicating.
    pub fn new(mut elems: Vec<i64>) -> Self {
        assert!(
            elems.iter().all(|&e| e >= 0),
            "support exponents must be nonnegative"
        );
        elems.sort_unstable();
        elems.dedup();
        Support { elems }
    }

    pub fn empty() -> Self {
        Support { elems: Vec::new() }
    }

    pub fn singleton(e: i64) -> Self {
        Support::new(vec![e])
    }

    pub fn elems(&self) -> &[i64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: i64) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    /// val_S(i) = min { s − i : s ∈ S, s ≥ i }, or ∞ when no element of S
    /// is ≥ i. Equals the order of the i-fold shift-down of S.
    pub fn val(&self, i: i64) -> ExtInt {
        match self.elems.iter().find(|&&s| s >= i) {
            Some(&s) => Finite(s - i),
            None => Infinity,
        }
    }

    /// The smallest element realizing `val(i)`, if any.
    pub fn val_witness(&self, i: i64) -> Option<i64> {
        self.elems.iter().copied().find(|&s| s >= i)
    }

    /// ord(S): the minimum of S, ∞ for the empty support.
    pub fn ord(&self) -> ExtInt {
        match self.elems.first() {
            Some(&s) => Finite(s),
            None => Infinity,
        }
    }

    pub fn max(&self) -> Option<i64> {
        self.elems.last().copied()
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.elems.iter().all(|e| other.contains(*e))
    }

    pub fn union(&self, other: &Support) -> Support {
        let mut elems = self.elems.clone();
        elems.extend_from_slice(&other.elems);
        Support::new(elems)
    }

    /// Adds `i` to every exponent. Empty supports stay empty.
    pub fn shift(&self, i: i64) -> Support {
        Support::new(self.elems.iter().map(|&e| e + i).collect())
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.elems.iter().map(|e| format!("t^{e}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// An n-tuple of supports: a candidate solution of a TLDE in n unknowns.
///
/// The partial order is componentwise inclusion; the zero element is the
/// all-empty tuple. The derived `Ord` (parts compared lexicographically)
/// is the canonical emission order used throughout.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiSupport {
    parts: Vec<Support>,
}

impl MultiSupport {
    pub fn new(parts: Vec<Support>) -> Self {
        assert!(!parts.is_empty(), "a multi-support needs at least one part");
        MultiSupport { parts }
    }

    pub fn zero(n: usize) -> Self {
        MultiSupport::new(vec![Support::empty(); n])
    }

    /// A single monomial t_j^e in an n-unknown context.
    pub fn monomial(n: usize, j: usize, e: i64) -> Self {
        let mut parts = vec![Support::empty(); n];
        parts[j] = Support::singleton(e);
        MultiSupport::new(parts)
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Support] {
        &self.parts
    }

    pub fn part(&self, j: usize) -> &Support {
        &self.parts[j]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Support::is_empty)
    }

    /// Componentwise inclusion.
    pub fn le(&self, other: &MultiSupport) -> bool {
        assert_eq!(self.n(), other.n(), "arity mismatch");
        self.parts
            .iter()
            .zip(&other.parts)
            .all(|(a, b)| a.is_subset(b))
    }

    pub fn lt(&self, other: &MultiSupport) -> bool {
        self.le(other) && self != other
    }

    pub fn union(&self, other: &MultiSupport) -> MultiSupport {
        assert_eq!(self.n(), other.n(), "arity mismatch");
        MultiSupport::new(
            self.parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.union(b))
                .collect(),
        )
    }

    /// The shift action: adds `i` to every exponent of every nonempty part.
    pub fn shift(&self, i: i64) -> MultiSupport {
        MultiSupport::new(self.parts.iter().map(|p| p.shift(i)).collect())
    }

    /// Shift by a possibly negative amount; None when an exponent would
    /// leave ℤ≥0.
    pub fn shift_signed(&self, i: i64) -> Option<MultiSupport> {
        if i < 0 {
            let min = self
                .parts
                .iter()
                .filter_map(|p| p.elems().first().copied())
                .min()?;
            if min + i < 0 {
                return None;
            }
        }
        Some(self.shift(i))
    }

    /// Total number of exponents across all parts.
    pub fn total_len(&self) -> usize {
        self.parts.iter().map(Support::len).sum()
    }

    /// Indices of nonempty parts.
    pub fn nonempty_parts(&self) -> Vec<usize> {
        (0..self.n()).filter(|&j| !self.parts[j].is_empty()).collect()
    }

    /// ord applied componentwise.
    pub fn ord_vec(&self) -> Vec<ExtInt> {
        self.parts.iter().map(Support::ord).collect()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.parts.iter().filter_map(Support::max).max()
    }
}

impl fmt::Display for MultiSupport {
    /// Multiplicative notation: parts joined by " + ", terms `t^a` when
    /// n = 1 and `t{j}^a` (1-based j) otherwise; the zero tuple is "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (j, part) in self.parts.iter().enumerate() {
            for e in part.elems() {
                if self.n() == 1 {
                    terms.push(format!("t^{e}"));
                } else {
                    terms.push(format!("t{}^{e}", j + 1));
                }
            }
        }
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn val_examples() {
        assert_eq!(Support::singleton(3).val(1), Finite(2));
        assert_eq!(Support::empty().val(0), Infinity);
        assert_eq!(Support::new(vec![0, 5]).val(2), Finite(3));
    }

    #[test]
    fn val_monotone_under_inclusion() {
        // S ⊆ T ⇒ val(T, i) ≤ val(S, i), exhaustively on subsets of {0..5}
        let universe: Vec<i64> = (0..6).collect();
        for s_mask in 0u32..64 {
            for t_mask in 0u32..64 {
                if s_mask & t_mask != s_mask {
                    continue;
                }
                let pick = |mask: u32| {
                    Support::new(
                        universe
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &e)| e)
                            .collect(),
                    )
                };
                let s = pick(s_mask);
                let t = pick(t_mask);
                for i in 0..8 {
                    assert!(t.val(i) <= s.val(i));
                }
            }
        }
    }

    #[test]
    fn display_follows_convention() {
        let s = MultiSupport::new(vec![Support::new(vec![0, 3])]);
        assert_eq!(s.to_string(), "t^0 + t^3");
        let m = MultiSupport::new(vec![Support::singleton(1), Support::singleton(2)]);
        assert_eq!(m.to_string(), "t1^1 + t2^2");
        assert_eq!(MultiSupport::zero(2).to_string(), "0");
    }

    #[test]
    fn shift_moves_every_exponent() {
        let m = MultiSupport::new(vec![Support::new(vec![1, 2]), Support::empty()]);
        let shifted = m.shift(3);
        assert_eq!(shifted.part(0).elems(), &[4, 5]);
        assert!(shifted.part(1).is_empty());
    }
}
