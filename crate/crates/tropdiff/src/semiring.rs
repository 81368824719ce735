//! The tropical value domain ℤ ∪ {∞} with min-plus semantics, and the two
//! vanishing predicates everything else is built on.
//!
//! Tropical addition ⊕ is `min`, tropical multiplication ⊙ is integer
//! addition; ∞ is the ⊕-identity and ⊙-absorbing. Values are exact
//! integers. Arithmetic is overflow-checked: an overflow panics instead of
//! wrapping, since wrapped values would silently corrupt every downstream
//! minimum.

use std::fmt;
use std::ops::Add;

/// An element of ℤ ∪ {∞}.
///
/// The derived order puts every finite value below `Infinity` and compares
/// finite values as integers, which is exactly the min-order of the
/// tropical semifield restricted to this domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    Finite(i64),
    Infinity,
}

pub use ExtInt::{Finite, Infinity};

impl ExtInt {
    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<i64> {
        match self {
            Finite(v) => Some(v),
            Infinity => None,
        }
    }

    /// Unwraps a value known to be finite.
    pub fn expect_finite(self) -> i64 {
        self.finite().expect("expected a finite tropical value")
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        Finite(v)
    }
}

/// Tropical multiplication ⊙ (integer addition, ∞ absorbing).
impl Add for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (Finite(a), Finite(b)) => {
                Finite(a.checked_add(b).expect("tropical value overflow"))
            }
            _ => Infinity,
        }
    }
}

/// ⊙ with a plain integer on the right.
impl Add<i64> for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: i64) -> ExtInt {
        self + Finite(rhs)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(v) => write!(f, "{v}"),
            Infinity => write!(f, "inf"),
        }
    }
}

/// Tropical vanishing: the minimum is ∞, or it is attained at two or more
/// positions.
///
/// Panics on an empty term list; a vanishing question about no terms is a
/// caller bug.
pub fn vanishes(terms: &[ExtInt]) -> bool {
    assert!(!terms.is_empty(), "vanishes: empty term list");
    let min = *terms.iter().min().unwrap();
    if min == Infinity {
        return true;
    }
    terms.iter().filter(|&&t| t == min).count() >= 2
}

/// Weak vanishing: some finite value occurs at two or more positions,
/// whether or not it is the minimum. An all-∞ list does not vanish weakly.
pub fn vanishes_weakly(terms: &[ExtInt]) -> bool {
    assert!(!terms.is_empty(), "vanishes_weakly: empty term list");
    let mut finite: Vec<i64> = terms.iter().filter_map(|t| t.finite()).collect();
    finite.sort_unstable();
    finite.windows(2).any(|w| w[0] == w[1])
}

/// True when the minimum of an integer sequence is attained at two or more
/// positions. Shared helper for holonomicity and regularity tests.
pub fn min_attained_twice<I: IntoIterator<Item = i64>>(vals: I) -> bool {
    let mut min = i64::MAX;
    let mut count = 0usize;
    for v in vals {
        if v < min {
            min = v;
            count = 1;
        } else if v == min {
            count += 1;
        }
    }
    count >= 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_cases() {
        assert!(vanishes(&[Finite(1), Finite(1), Finite(2)]));
        assert!(vanishes(&[Infinity, Infinity]));
        assert!(!vanishes(&[Finite(0), Finite(1), Finite(2)]));
        // a repeated non-minimal value is not tropical vanishing
        assert!(!vanishes(&[Finite(0), Finite(3), Finite(3)]));
    }

    #[test]
    fn weak_vanishing_cases() {
        assert!(vanishes_weakly(&[Finite(1), Finite(1), Infinity]));
        assert!(!vanishes_weakly(&[Infinity, Infinity]));
        assert!(!vanishes_weakly(&[Finite(0), Finite(1)]));
        assert!(vanishes_weakly(&[Finite(0), Finite(3), Finite(3)]));
    }

    #[test]
    fn vanishing_implies_weak_unless_all_infinite() {
        // exhaustive over short lists with small entries
        let vals = [Finite(-1), Finite(0), Finite(1), Infinity];
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    let t = [a, b, c];
                    if vanishes(&t) && t.iter().any(|x| x.is_finite()) {
                        assert!(vanishes_weakly(&t), "{t:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn ordering_is_min_plus() {
        assert!(Finite(3) < Infinity);
        assert!(Finite(-5) < Finite(0));
        assert_eq!(Finite(2) + Finite(3), Finite(5));
        assert_eq!(Finite(2) + Infinity, Infinity);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_rejected() {
        let _ = Finite(i64::MAX) + Finite(1);
    }
}
