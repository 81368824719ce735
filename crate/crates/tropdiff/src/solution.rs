//! Solution sets: a finite part plus shift-ray families, with the
//! subset-minimality filtering shared by the structural solvers.

use std::collections::BTreeSet;
use std::fmt;

use crate::support::MultiSupport;

/// An infinite family { t^i · base : i ≥ 0 } of minimal solutions, where
/// the shift adds i to every exponent of every nonempty part.
///
/// Bases always have every nonempty part at or above the corresponding
/// differential order, so shifting never leaves the solution set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftRay {
    base: MultiSupport,
}

impl ShiftRay {
    pub fn new(base: MultiSupport) -> Self {
        assert!(!base.is_zero(), "a shift ray needs a nonzero base");
        ShiftRay { base }
    }

    pub fn base(&self) -> &MultiSupport {
        &self.base
    }

    /// The i-th member of the family.
    pub fn member(&self, i: i64) -> MultiSupport {
        self.base.shift(i)
    }

    /// Indices of the nonempty parts.
    pub fn pattern(&self) -> Vec<usize> {
        self.base.nonempty_parts()
    }

    /// Whether some member of this ray is contained in `candidate`.
    ///
    /// Only shifts whose exponents fit inside the candidate can qualify,
    /// so the scan is over the candidate's own elements.
    pub fn some_member_inside(&self, candidate: &MultiSupport) -> bool {
        let pattern = self.pattern();
        let j0 = pattern[0];
        let base0 = self.base.part(j0).elems()[0];
        for &s in candidate.part(j0).elems() {
            let t = s - base0;
            if t < 0 {
                continue;
            }
            if self.member(t).le(candidate) {
                return true;
            }
        }
        false
    }

    /// Whether every member of `other` contains a member of `self`, so
    /// `other` contributes no minimal solutions at all.
    ///
    /// Containment at one shift propagates along the whole family: upward
    /// because both families shift together, downward because minimality
    /// of a member would force minimality of its shifts. So it suffices
    /// to find one alignment c with self.base + c ⊆ other.base. When the
    /// aligned bases are equal the families overlap instead of nesting;
    /// the one starting lower subsumes the other.
    pub fn dominates(&self, other: &ShiftRay) -> bool {
        if self == other {
            return false;
        }
        let j0 = self.pattern()[0];
        if other.base.part(j0).is_empty() {
            return false;
        }
        let e0 = self.base.part(j0).elems()[0];
        for &s in other.base.part(j0).elems() {
            let c = s - e0;
            let shifted = self.base.shift_signed(c);
            let shifted = match shifted {
                Some(sh) => sh,
                None => continue,
            };
            if !shifted.le(&other.base) {
                continue;
            }
            if shifted == other.base {
                // same orbit: other is redundant iff it starts higher
                if c > 0 {
                    return true;
                }
            } else {
                return true;
            }
        }
        false
    }
}

impl fmt::Display for ShiftRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^i · ({})", self.base)
    }
}

/// Minimal solutions of an equation or system: the finite part F plus the
/// generators of the shift-ray families.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolutionSet {
    pub finite: Vec<MultiSupport>,
    pub rays: Vec<ShiftRay>,
}

impl SolutionSet {
    pub fn new(finite: Vec<MultiSupport>, rays: Vec<ShiftRay>) -> Self {
        let mut set = SolutionSet { finite, rays };
        set.canonicalize();
        set
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.rays.is_empty()
    }

    /// Number of minimal solutions in the finite part.
    pub fn finite_count(&self) -> usize {
        self.finite.len()
    }

    fn canonicalize(&mut self) {
        self.finite.sort();
        self.finite.dedup();
        self.rays.sort();
        self.rays.dedup();
    }

    /// Removes finite elements containing another finite element or a ray
    /// member, and rays wholly dominated by other rays.
    pub fn filter_minimal(&mut self) {
        self.canonicalize();

        let rays = std::mem::take(&mut self.rays);
        let kept_rays: Vec<ShiftRay> = rays
            .iter()
            .filter(|r| !rays.iter().any(|other| other.dominates(r)))
            .cloned()
            .collect();
        self.rays = kept_rays;

        let finite = std::mem::take(&mut self.finite);
        let mut kept: Vec<MultiSupport> = Vec::new();
        for s in finite {
            let sub_finite = kept.iter().any(|t| t.lt(&s));
            // later elements can still be subsets of s (sorted order is
            // not the inclusion order), so scan everything
            let sub_ray = self.rays.iter().any(|r| r.some_member_inside(&s));
            if !sub_finite && !sub_ray {
                kept.retain(|t| !s.lt(t));
                kept.push(s);
            }
        }
        kept.sort();
        self.finite = kept;
    }

    /// Finite elements plus all ray members whose exponents stay ≤ `cap`,
    /// for comparison against box-bounded oracle output.
    pub fn members_within(&self, cap: i64) -> BTreeSet<MultiSupport> {
        let mut out: BTreeSet<MultiSupport> = self
            .finite
            .iter()
            .filter(|s| s.max_exp().is_some_and(|e| e <= cap))
            .cloned()
            .collect();
        for ray in &self.rays {
            let mut t = 0;
            loop {
                let member = ray.member(t);
                match member.max_exp() {
                    Some(e) if e <= cap => out.insert(member),
                    _ => break,
                };
                t += 1;
            }
        }
        out
    }
}

impl fmt::Display for SolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "finite ({}):", self.finite.len())?;
        for s in &self.finite {
            writeln!(f, "  {s}")?;
        }
        writeln!(f, "rays ({}):", self.rays.len())?;
        for r in &self.rays {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::Support;

    fn msup(parts: Vec<Vec<i64>>) -> MultiSupport {
        MultiSupport::new(parts.into_iter().map(Support::new).collect())
    }

    #[test]
    fn ray_members_shift_everything() {
        let ray = ShiftRay::new(msup(vec![vec![1], vec![2]]));
        assert_eq!(ray.member(3), msup(vec![vec![4], vec![5]]));
        assert_eq!(ray.pattern(), vec![0, 1]);
    }

    #[test]
    fn member_inside_detection() {
        let ray = ShiftRay::new(msup(vec![vec![1], vec![]]));
        // candidate ({0,4}, {7}) contains the member t1^4
        assert!(ray.some_member_inside(&msup(vec![vec![0, 4], vec![7]])));
        // exponents below the base never match
        assert!(!ray.some_member_inside(&msup(vec![vec![0], vec![7]])));
    }

    #[test]
    fn loop_ray_dominates_pair_ray() {
        let pair = ShiftRay::new(msup(vec![vec![1], vec![3]]));
        let single = ShiftRay::new(msup(vec![vec![1], vec![]]));
        assert!(single.dominates(&pair));
        assert!(!pair.dominates(&single));
        assert!(!single.dominates(&single.clone()));
    }

    #[test]
    fn minimality_filter_drops_supersets() {
        let mut set = SolutionSet::new(
            vec![
                msup(vec![vec![0, 3]]),
                msup(vec![vec![0, 3, 5]]),
                msup(vec![vec![2]]),
            ],
            vec![],
        );
        set.filter_minimal();
        assert_eq!(
            set.finite,
            vec![msup(vec![vec![0, 3]]), msup(vec![vec![2]])]
        );
    }

    #[test]
    fn finite_elements_containing_ray_members_are_dropped() {
        let mut set = SolutionSet::new(
            vec![msup(vec![vec![0, 4], vec![]]), msup(vec![vec![0, 1], vec![]])],
            vec![ShiftRay::new(msup(vec![vec![3], vec![]]))],
        );
        set.filter_minimal();
        assert_eq!(set.finite, vec![msup(vec![vec![0, 1], vec![]])]);
    }
}
