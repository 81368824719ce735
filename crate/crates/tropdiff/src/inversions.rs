//! Inversions of families of permutations.
//!
//! For w ∈ Sym(r) and a tuple of distinct indices, m_w picks the tuple
//! element with the smallest w-image. An n-subset is an inversion of a
//! family (w_1, …, w_n) when the n picks are pairwise distinct; for the
//! pair (e, w) this is the classical inversion count of w.

use thiserror::Error;

use crate::budget::{Budget, Truncated};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("permutation images must be a bijection of 0..{r}")]
    NotABijection { r: usize },
    #[error("family members must all act on the same ground set")]
    MixedSizes,
    #[error("inversion queries need at least two permutations")]
    TooFewPerms,
}

/// A bijection of {0, …, r−1}, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn new(map: Vec<usize>) -> Result<Self, PermError> {
        let r = map.len();
        let mut seen = vec![false; r];
        for &v in &map {
            if v >= r || seen[v] {
                return Err(PermError::NotABijection { r });
            }
            seen[v] = true;
        }
        Ok(Perm { map })
    }

    pub fn identity(r: usize) -> Self {
        Perm {
            map: (0..r).collect(),
        }
    }

    pub fn reversal(r: usize) -> Self {
        Perm {
            map: (0..r).rev().collect(),
        }
    }

    pub fn r(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.r(), other.r());
        Perm {
            map: (0..self.r()).map(|i| self.map[other.map[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0; self.r()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v] = i;
        }
        Perm { map }
    }
}

/// A family of n permutations of the same ground set {0, …, r−1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermFamily {
    perms: Vec<Perm>,
}

impl PermFamily {
    pub fn new(perms: Vec<Perm>) -> Result<Self, PermError> {
        if perms.len() < 2 {
            return Err(PermError::TooFewPerms);
        }
        let r = perms[0].r();
        if perms.iter().any(|p| p.r() != r) {
            return Err(PermError::MixedSizes);
        }
        Ok(PermFamily { perms })
    }

    pub fn n(&self) -> usize {
        self.perms.len()
    }

    pub fn r(&self) -> usize {
        self.perms[0].r()
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    /// The family with permutation j removed.
    pub fn drop(&self, j: usize) -> Vec<Perm> {
        let mut out = self.perms.clone();
        out.remove(j);
        out
    }
}

/// m_w: the tuple element whose w-image is smallest.
///
/// Panics on duplicate or out-of-range indices.
pub fn m_of(w: &Perm, tuple: &[usize]) -> usize {
    assert!(!tuple.is_empty(), "m_of: empty tuple");
    let mut best: Option<usize> = None;
    for (pos, &i) in tuple.iter().enumerate() {
        assert!(i < w.r(), "m_of: index out of range");
        assert!(
            !tuple[..pos].contains(&i),
            "m_of: duplicate index in tuple"
        );
        best = match best {
            None => Some(i),
            Some(b) if w.apply(i) < w.apply(b) => Some(i),
            keep => keep,
        };
    }
    best.unwrap()
}

fn picks_distinct(perms: &[Perm], tuple: &[usize]) -> bool {
    let mut picks: Vec<usize> = perms.iter().map(|w| m_of(w, tuple)).collect();
    picks.sort_unstable();
    picks.windows(2).all(|w| w[0] != w[1])
}

/// Whether the tuple is an inversion of the family: the per-permutation
/// argmin elements are pairwise distinct.
pub fn is_inversion(family: &PermFamily, tuple: &[usize]) -> bool {
    assert_eq!(
        tuple.len(),
        family.n(),
        "is_inversion: tuple arity must match the family"
    );
    picks_distinct(&family.perms, tuple)
}

/// Visits the n-subsets of {0, …, r−1} in colexicographic order.
fn for_each_subset_colex(r: usize, n: usize, mut f: impl FnMut(&[usize])) {
    if n > r {
        return;
    }
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        f(&subset);
        // colex successor: bump the lowest index that can move without
        // colliding with the one above it
        let mut i = 0;
        loop {
            if i + 1 < n {
                if subset[i] + 1 < subset[i + 1] {
                    subset[i] += 1;
                    break;
                }
            } else if subset[i] + 1 < r {
                subset[i] += 1;
                break;
            } else {
                return;
            }
            subset[i] = i;
            i += 1;
        }
    }
}

/// Number of n-subsets of the ground set that are inversions.
pub fn count_inversions(family: &PermFamily) -> u64 {
    let mut count = 0u64;
    for_each_subset_colex(family.r(), family.n(), |subset| {
        if picks_distinct(&family.perms, subset) {
            count += 1;
        }
    });
    count
}

fn all_perms(r: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut map: Vec<usize> = (0..r).collect();
    heap(&mut map, r, &mut out);
    return out;

    fn heap(map: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
        if k <= 1 {
            out.push(Perm { map: map.clone() });
            return;
        }
        for i in 0..k {
            heap(map, k - 1, out);
            if k % 2 == 0 {
                map.swap(i, k - 1);
            } else {
                map.swap(0, k - 1);
            }
        }
    }
}

/// Exact maximum of `count_inversions` over all n-families on {0,…,r−1},
/// searched with w_1 fixed to the identity: right-composing a family by
/// w_1⁻¹ permutes the candidate subsets bijectively and preserves the
/// count, so the reduction loses nothing.
///
/// `jobs` > 1 shards the search by the second permutation.
pub fn max_inversions(
    n: usize,
    r: usize,
    budget: &Budget,
    jobs: usize,
) -> Result<u64, Truncated> {
    assert!(n >= 2, "max_inversions requires n ≥ 2");
    let perms = all_perms(r);
    let identity = Perm::identity(r);

    let search = |second: &[Perm], budget: &Budget| -> Result<u64, Truncated> {
        let mut best = 0u64;
        let mut family: Vec<Perm> = vec![identity.clone(); n];
        for w2 in second {
            family[1] = w2.clone();
            best = best.max(fill(&mut family, 2, &perms, budget)?);
        }
        return Ok(best);

        fn fill(
            family: &mut Vec<Perm>,
            at: usize,
            perms: &[Perm],
            budget: &Budget,
        ) -> Result<u64, Truncated> {
            if at == family.len() {
                budget.tick(1)?;
                let fam = PermFamily {
                    perms: family.clone(),
                };
                return Ok(count_inversions(&fam));
            }
            let mut best = 0u64;
            for w in perms {
                family[at] = w.clone();
                best = best.max(fill(family, at + 1, perms, budget)?);
            }
            Ok(best)
        }
    };

    if jobs <= 1 || perms.len() < jobs {
        return search(&perms, budget);
    }
    let chunk = perms.len().div_ceil(jobs);
    let results: Vec<Result<u64, Truncated>> = std::thread::scope(|scope| {
        let handles: Vec<_> = perms
            .chunks(chunk)
            .map(|shard| scope.spawn(move || search(shard, budget)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut best = 0;
    for res in results {
        best = best.max(res?);
    }
    Ok(best)
}

/// The set of indices j such that the subtuple is an inversion of the
/// family with w_j removed. By the cut lemma this has size 0 or exactly 2.
pub fn cut_witness(family: &PermFamily, subtuple: &[usize]) -> Vec<usize> {
    assert!(family.n() >= 3, "cut_witness requires n ≥ 3");
    assert_eq!(
        subtuple.len(),
        family.n() - 1,
        "cut_witness: subtuple must omit exactly one permutation"
    );
    (0..family.n())
        .filter(|&j| picks_distinct(&family.drop(j), subtuple))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(perms: Vec<Perm>) -> PermFamily {
        PermFamily::new(perms).unwrap()
    }

    #[test]
    fn m_of_examples() {
        let e = Perm::identity(6);
        assert_eq!(m_of(&e, &[1, 4]), 1);
        let rev = Perm::reversal(3);
        assert_eq!(m_of(&rev, &[0, 2]), 2);
    }

    #[test]
    #[should_panic(expected = "duplicate")]
    fn m_of_rejects_duplicates() {
        m_of(&Perm::identity(4), &[1, 1]);
    }

    #[test]
    fn pair_inversions_match_classical() {
        // (e, w): {i, j} is an inversion iff i < j and w(i) > w(j)
        for r in 2..=6 {
            for w in all_perms(r) {
                let classical = {
                    let mut c = 0u64;
                    for i in 0..r {
                        for j in i + 1..r {
                            if w.apply(i) > w.apply(j) {
                                c += 1;
                            }
                        }
                    }
                    c
                };
                let fam = family(vec![Perm::identity(r), w.clone()]);
                assert_eq!(count_inversions(&fam), classical, "w = {:?}", w.images());
            }
        }
    }

    #[test]
    fn reversal_attains_the_pair_maximum() {
        for r in 2..=6 {
            let fam = family(vec![Perm::identity(r), Perm::reversal(r)]);
            assert_eq!(count_inversions(&fam), (r * (r - 1) / 2) as u64);
        }
    }

    #[test]
    fn identical_permutations_have_no_inversions() {
        let fam = family(vec![Perm::identity(5), Perm::identity(5)]);
        assert_eq!(count_inversions(&fam), 0);
    }

    #[test]
    fn three_cycles_example() {
        // w2 = (2,3,1), w3 = (3,1,2) in one-line 1-based notation
        let w2 = Perm::new(vec![1, 2, 0]).unwrap();
        let w3 = Perm::new(vec![2, 0, 1]).unwrap();
        let fam = family(vec![Perm::identity(3), w2, w3]);
        assert_eq!(count_inversions(&fam), 1);
    }

    #[test]
    fn right_composition_equivariance() {
        let w2 = Perm::new(vec![3, 1, 0, 2]).unwrap();
        let w3 = Perm::new(vec![2, 3, 1, 0]).unwrap();
        let tau = Perm::new(vec![1, 3, 2, 0]).unwrap();
        let fam = family(vec![Perm::identity(4), w2.clone(), w3.clone()]);
        let composed = family(vec![
            Perm::identity(4).compose(&tau),
            w2.compose(&tau),
            w3.compose(&tau),
        ]);
        assert_eq!(count_inversions(&fam), count_inversions(&composed));
    }

    #[test]
    fn obvious_binomial_cap() {
        let fam = family(vec![
            Perm::identity(5),
            Perm::reversal(5),
            Perm::new(vec![2, 0, 4, 1, 3]).unwrap(),
        ]);
        assert!(count_inversions(&fam) <= 10); // C(5,3)
    }

    #[test]
    fn max_inversions_small() {
        let b = Budget::default();
        assert_eq!(max_inversions(2, 4, &b, 1).unwrap(), 6);
        assert_eq!(max_inversions(2, 5, &b, 2).unwrap(), 10);
    }

    #[test]
    fn cut_sizes_are_zero_or_two() {
        // exhaustive for n = 3, r = 4, w1 = identity
        let perms = all_perms(4);
        for w2 in &perms {
            for w3 in &perms {
                let fam = family(vec![Perm::identity(4), w2.clone(), w3.clone()]);
                for i in 0..4 {
                    for j in i + 1..4 {
                        let witnesses = cut_witness(&fam, &[i, j]);
                        assert!(
                            witnesses.len() == 0 || witnesses.len() == 2,
                            "family ({:?}, {:?}), pair ({i},{j}): {witnesses:?}",
                            w2.images(),
                            w3.images()
                        );
                        // the two subfamilies agree on the dropped pick
                        if let [a, b] = witnesses[..] {
                            let pa = m_of(&fam.perms()[a], &[i, j]);
                            let pb = m_of(&fam.perms()[b], &[i, j]);
                            assert_eq!(pa, pb);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn colex_order_is_correct() {
        let mut seen = Vec::new();
        for_each_subset_colex(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3],
            ]
        );
    }
}
