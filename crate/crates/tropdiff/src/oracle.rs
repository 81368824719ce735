//! Brute-force enumeration of solutions over a bounded exponent box.
//!
//! This module is correctness ballast: it knows nothing about the
//! structure theorems and simply tests every candidate support against
//! the vanishing definition. The auto-derived box provably covers the
//! finite part: a minimal pair {p, q} of a univariate equation satisfies
//! q = A_p − min(a_i − i) ≤ 2k + (max a − min a), and a minimal solution
//! of an m-equation system is a union of per-equation certificates of at
//! most two exponents each, so at most 2m exponents in total.

use crate::budget::{Budget, Truncated};
use crate::support::{MultiSupport, Support};
use crate::tlde::{Tlde, TldeSystem};

/// Bounds for the exhaustive search: a per-unknown exponent cap
/// (inclusive), a per-unknown support-size cap, and a total-size cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox {
    pub exp_caps: Vec<i64>,
    pub size_caps: Vec<usize>,
    pub total_size_cap: usize,
}

impl SearchBox {
    /// Derives a box guaranteed to contain every minimal solution of the
    /// system: exponents up to 2·max(k) + coefficient spread + 1 and at
    /// most 2m exponents in total.
    pub fn auto(sigma: &TldeSystem) -> SearchBox {
        let kmax = sigma.orders().into_iter().max().unwrap();
        let cap = 2 * kmax + sigma.spread() + 1;
        let total = 2 * sigma.m();
        SearchBox {
            exp_caps: vec![cap; sigma.n()],
            size_caps: vec![total; sigma.n()],
            total_size_cap: total,
        }
    }

    /// Same box with every exponent cap raised by `extra`, e.g. to cover
    /// the first few shifts of each ray.
    pub fn widen(mut self, extra: i64) -> SearchBox {
        for c in &mut self.exp_caps {
            *c += extra;
        }
        self
    }

    /// Overrides every exponent cap with a uniform bound.
    pub fn with_uniform_cap(mut self, cap: i64) -> SearchBox {
        for c in &mut self.exp_caps {
            *c = cap;
        }
        self
    }

    pub fn max_exp_cap(&self) -> i64 {
        self.exp_caps.iter().copied().max().unwrap()
    }
}

fn combinations(universe: &[i64], size: usize, start: usize, current: &mut Vec<i64>, out: &mut Vec<Support>) {
    if current.len() == size {
        out.push(Support::new(current.clone()));
        return;
    }
    let needed = size - current.len();
    for i in start..=universe.len() - needed {
        current.push(universe[i]);
        combinations(universe, size, i + 1, current, out);
        current.pop();
    }
}

/// All subsets of {0, …, cap} of size up to `size_cap`, grouped by size.
fn subsets_by_size(cap: i64, size_cap: usize) -> Vec<Vec<Support>> {
    let universe: Vec<i64> = (0..=cap).collect();
    let mut by_size: Vec<Vec<Support>> = vec![vec![Support::empty()]];
    for size in 1..=size_cap.min(universe.len()) {
        let mut level = Vec::new();
        combinations(&universe, size, 0, &mut Vec::with_capacity(size), &mut level);
        by_size.push(level);
    }
    by_size
}

fn size_compositions(levels: &[usize], total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut sizes = vec![0usize; levels.len()];
    fill(levels, total, 0, &mut sizes, &mut out);
    return out;

    fn fill(
        levels: &[usize],
        remaining: usize,
        j: usize,
        sizes: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if j == levels.len() - 1 {
            if remaining < levels[j] {
                sizes[j] = remaining;
                out.push(sizes.clone());
            }
            return;
        }
        for s in 0..=remaining.min(levels[j] - 1) {
            sizes[j] = s;
            fill(levels, remaining - s, j + 1, sizes, out);
        }
    }
}

/// Enumerates candidate supports in the box ordered by total size, then
/// lexicographically, applying `f` to each.
fn for_each_candidate(
    n: usize,
    box_: &SearchBox,
    budget: &Budget,
    mut f: impl FnMut(&MultiSupport) -> bool,
) -> Result<(), Truncated> {
    let per_unknown: Vec<Vec<Vec<Support>>> = (0..n)
        .map(|j| subsets_by_size(box_.exp_caps[j], box_.size_caps[j]))
        .collect();
    let levels: Vec<usize> = per_unknown.iter().map(Vec::len).collect();

    for total in 1..=box_.total_size_cap {
        let mut batch: Vec<MultiSupport> = Vec::new();
        for sizes in size_compositions(&levels, total) {
            let mut parts: Vec<Support> = vec![Support::empty(); n];
            cartesian(&per_unknown, &sizes, 0, &mut parts, &mut batch, budget)?;
        }
        batch.sort();
        for cand in &batch {
            if !f(cand) {
                return Ok(());
            }
        }
    }
    return Ok(());

    fn cartesian(
        per_unknown: &[Vec<Vec<Support>>],
        sizes: &[usize],
        j: usize,
        parts: &mut Vec<Support>,
        out: &mut Vec<MultiSupport>,
        budget: &Budget,
    ) -> Result<(), Truncated> {
        if j == per_unknown.len() {
            budget.tick(1)?;
            out.push(MultiSupport::new(parts.clone()));
            return Ok(());
        }
        for sup in &per_unknown[j][sizes[j]] {
            parts[j] = sup.clone();
            cartesian(per_unknown, sizes, j + 1, parts, out, budget)?;
        }
        Ok(())
    }
}

/// Every nonzero support tuple in the box solving all equations, in
/// (total size, lexicographic) order.
pub fn oracle_solutions(
    sigma: &TldeSystem,
    box_: &SearchBox,
    budget: &Budget,
) -> Result<Vec<MultiSupport>, Truncated> {
    let mut out = Vec::new();
    for_each_candidate(sigma.n(), box_, budget, |cand| {
        if sigma.is_solution(cand) {
            out.push(cand.clone());
        }
        true
    })?;
    Ok(out)
}

/// Subset-minimal elements of `oracle_solutions`. Candidates are visited
/// in size order, so a candidate containing an already-kept solution can
/// be skipped before evaluation.
pub fn oracle_minimal(
    sigma: &TldeSystem,
    box_: &SearchBox,
    budget: &Budget,
) -> Result<Vec<MultiSupport>, Truncated> {
    let mut minimal: Vec<MultiSupport> = Vec::new();
    for_each_candidate(sigma.n(), box_, budget, |cand| {
        if minimal.iter().any(|m| m.le(cand)) {
            return true;
        }
        if sigma.is_solution(cand) {
            minimal.push(cand.clone());
        }
        true
    })?;
    minimal.sort();
    Ok(minimal)
}

/// Evaluation at infinity: the max-plus analogue over supports S ⊆ ℤ≤0,
/// with val^∞_S(0) = max S and val^∞_S(i) = max{s − i : s ∈ S, s ≤ −1}
/// for i ≥ 1.
fn is_infinity_solution(p: &Tlde, s: &[i64]) -> bool {
    let k = p.order(0);
    let mut terms: Vec<Option<i64>> = Vec::new();
    for i in 0..=k {
        let val = if i == 0 {
            s.iter().copied().max()
        } else {
            s.iter().copied().filter(|&e| e <= -1).max().map(|m| m - i)
        };
        terms.push(val.map(|v| v + p.coeff(0, i)));
    }
    let max = terms.iter().flatten().copied().max();
    match max {
        None => false,
        Some(m) => terms.iter().flatten().filter(|&&t| t == m).count() >= 2,
    }
}

/// All minimal subsets of {0, −1, …, −depth} that are tropical solutions
/// at ∞ of a univariate equation.
pub fn oracle_infinity(p: &Tlde, depth: i64) -> Vec<Vec<i64>> {
    assert_eq!(p.n(), 1, "oracle_infinity requires n = 1");
    assert!(depth >= 1);
    let universe: Vec<i64> = (0..=depth).map(|r| -r).collect();
    let mut solutions: Vec<Vec<i64>> = Vec::new();
    // subsets ordered by size so the greedy minimality filter works
    for mask in 1u64..(1 << universe.len()) {
        let subset: Vec<i64> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if is_infinity_solution(p, &subset) {
            solutions.push(subset);
        }
    }
    solutions.sort_by_key(|s| s.len());
    let mut minimal: Vec<Vec<i64>> = Vec::new();
    for s in solutions {
        if !minimal
            .iter()
            .any(|m| m.iter().all(|e| s.contains(e)))
        {
            minimal.push(s);
        }
    }
    for m in &mut minimal {
        m.sort_unstable();
    }
    minimal.sort();
    minimal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(coeffs: &[i64]) -> TldeSystem {
        TldeSystem::single(Tlde::univariate(coeffs.to_vec()).unwrap())
    }

    fn msup(parts: Vec<Vec<i64>>) -> MultiSupport {
        MultiSupport::new(parts.into_iter().map(Support::new).collect())
    }

    fn small_box(n: usize, cap: i64, size: usize) -> SearchBox {
        SearchBox {
            exp_caps: vec![cap; n],
            size_caps: vec![size; n],
            total_size_cap: size * n,
        }
    }

    #[test]
    fn solutions_within_box() {
        let sigma = uni(&[2, 0]);
        let sols =
            oracle_solutions(&sigma, &small_box(1, 5, 2), &Budget::default()).unwrap();
        assert!(sols.contains(&msup(vec![vec![0, 3]])));
        // zero tuple is never emitted
        assert!(!sols.iter().any(|s| s.is_zero()));
        // every emitted support really vanishes
        assert!(sols.iter().all(|s| sigma.is_solution(s)));
    }

    #[test]
    fn empty_when_no_solutions() {
        let sigma = uni(&[0, 2, 3]);
        let sols =
            oracle_solutions(&sigma, &small_box(1, 10, 2), &Budget::default()).unwrap();
        assert!(sols.is_empty());
    }

    #[test]
    fn minimal_examples() {
        let sigma = uni(&[0, 0, 0]);
        let min = oracle_minimal(&sigma, &small_box(1, 6, 2), &Budget::default()).unwrap();
        assert_eq!(
            min,
            vec![
                msup(vec![vec![0, 1]]),
                msup(vec![vec![0, 2]]),
                msup(vec![vec![1, 2]]),
            ]
        );

        let sigma = uni(&[0, 1]);
        let min = oracle_minimal(&sigma, &small_box(1, 4, 2), &Budget::default()).unwrap();
        assert_eq!(
            min,
            vec![
                msup(vec![vec![1]]),
                msup(vec![vec![2]]),
                msup(vec![vec![3]]),
                msup(vec![vec![4]]),
            ]
        );
    }

    #[test]
    fn two_unknown_minimal() {
        let p = Tlde::new(vec![vec![2, 0], vec![2, 0]]).unwrap();
        let sigma = TldeSystem::single(p);
        let min = oracle_minimal(&sigma, &small_box(2, 6, 2), &Budget::default()).unwrap();
        // 5 finite solutions plus ray members (1+i, 1+i) for i ≤ 5
        let finite = [
            msup(vec![vec![0, 3], vec![]]),
            msup(vec![vec![], vec![0, 3]]),
            msup(vec![vec![0], vec![0]]),
            msup(vec![vec![0], vec![3]]),
            msup(vec![vec![3], vec![0]]),
        ];
        for f in &finite {
            assert!(min.contains(f), "missing {f}");
        }
        for i in 0..=5 {
            assert!(min.contains(&msup(vec![vec![1 + i], vec![1 + i]])));
        }
        assert_eq!(min.len(), finite.len() + 6);
    }

    #[test]
    fn infinity_oracle_examples() {
        let p = Tlde::univariate(vec![0, 2, 3]).unwrap();
        assert_eq!(
            oracle_infinity(&p, 4),
            vec![vec![-4], vec![-3], vec![-2], vec![-1]]
        );

        let p = Tlde::univariate(vec![0, 2]).unwrap();
        assert_eq!(oracle_infinity(&p, 3), vec![vec![-1, 0]]);

        let p = Tlde::univariate(vec![2, 0]).unwrap();
        assert!(oracle_infinity(&p, 5).is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let sigma = uni(&[0, 0, 0, 0]);
        let budget = Budget::new(10);
        let err = oracle_solutions(&sigma, &small_box(1, 20, 2), &budget);
        assert!(err.is_err());
    }
}
