//! Minimal solutions of a single TLDE in n > 1 unknowns.
//!
//! Writing P = P_1(u_1) ⊕ … ⊕ P_n(u_n), the loops L(P) are the unknowns
//! whose block is non-holonomic on its own. The solutions with every
//! order at or above k form shift-ray families: one per loop, and one per
//! pair of non-loops {a, b} with base t_a^{k_a} + t_b^{k_b + A_a − A_b}
//! (labels chosen so the offset is nonnegative). Their supports are the
//! circuits of a matroid on [n], valuated by the order offsets.

use crate::semiring::min_attained_twice;
use crate::single_eq;
use crate::solution::{ShiftRay, SolutionSet};
use crate::support::MultiSupport;
use crate::tlde::Tlde;

fn check_multivariate(p: &Tlde) {
    assert!(p.n() > 1, "multi-unknown analysis requires n > 1");
}

/// L(P): unknowns whose block equation is non-holonomic.
pub fn loops(p: &Tlde) -> Vec<usize> {
    check_multivariate(p);
    (0..p.n())
        .filter(|&j| p.a_val_attained_twice(j, p.order(j)))
        .collect()
}

/// A circuit of M(P): its support (one or two unknowns) and valuation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Circuit {
    pub members: Vec<usize>,
    pub valuation: i64,
}

/// The circuit matroid M(P) = ([n], 𝒞(P)) with its valuation: loops are
/// singleton circuits valued k_j, and every 2-subset of the non-loops is
/// a circuit valued |A_{k_a,a}(P) − A_{k_b,b}(P)|.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitMatroid {
    pub ground: usize,
    pub loops: Vec<usize>,
    pub circuits: Vec<Circuit>,
}

pub fn circuit_matroid(p: &Tlde) -> CircuitMatroid {
    check_multivariate(p);
    let loop_set = loops(p);
    let mut circuits: Vec<Circuit> = loop_set
        .iter()
        .map(|&j| Circuit {
            members: vec![j],
            valuation: p.order(j),
        })
        .collect();
    let free: Vec<usize> = (0..p.n()).filter(|j| !loop_set.contains(j)).collect();
    for (idx, &a) in free.iter().enumerate() {
        for &b in &free[idx + 1..] {
            let av = p.a_val(a, p.order(a));
            let bv = p.a_val(b, p.order(b));
            circuits.push(Circuit {
                members: vec![a, b],
                valuation: (av - bv).abs(),
            });
        }
    }
    circuits.sort();
    CircuitMatroid {
        ground: p.n(),
        loops: loop_set,
        circuits,
    }
}

/// Generators of 𝒞_{ℤ≥0}(P) modulo the shift action: a monomial ray
/// t_j^{k_j} per loop and a pair ray per 2-subset of non-loops, the
/// larger-A side carrying exponent k.
pub fn ray_solutions(p: &Tlde) -> Vec<ShiftRay> {
    check_multivariate(p);
    let n = p.n();
    let loop_set = loops(p);
    let mut rays: Vec<ShiftRay> = loop_set
        .iter()
        .map(|&j| ShiftRay::new(MultiSupport::monomial(n, j, p.order(j))))
        .collect();
    let free: Vec<usize> = (0..n).filter(|j| !loop_set.contains(j)).collect();
    for (idx, &a) in free.iter().enumerate() {
        for &b in &free[idx + 1..] {
            let av = p.a_val(a, p.order(a));
            let bv = p.a_val(b, p.order(b));
            let (hi, lo, diff) = if av >= bv { (a, b, av - bv) } else { (b, a, bv - av) };
            let base = MultiSupport::monomial(n, hi, p.order(hi))
                .union(&MultiSupport::monomial(n, lo, p.order(lo) + diff));
            rays.push(ShiftRay::new(base));
        }
    }
    rays.sort();
    rays
}

/// The unique cross partner q = q(p) ≥ k_j in unknown j for a low
/// exponent p < k_i of unknown i ≠ j: q = A_{p,i}(P) − A_{k_j,j}(P) + k_j,
/// valid only when unknown j is not a loop and the low minimum of block i
/// at p is attained exactly once.
fn cross_partner(p: &Tlde, i: usize, low: i64, j: usize) -> Option<i64> {
    let low_vals = (0..=low.min(p.order(i))).map(|b| p.coeff(i, b) + low - b);
    if min_attained_twice(low_vals.clone()) {
        return None;
    }
    if p.a_val_attained_twice(j, p.order(j)) {
        return None;
    }
    let q = low_vals.min().unwrap() - p.a_val(j, p.order(j)) + p.order(j);
    (q >= p.order(j)).then_some(q)
}

/// All minimal solutions of P for n > 1: the rays above, plus a finite
/// part made of the re-embedded single-block solutions, the cross pairs
/// below both orders, and the cross pairs with a unique high partner.
pub fn minimal_solutions_n(p: &Tlde) -> SolutionSet {
    check_multivariate(p);
    let n = p.n();
    let rays = ray_solutions(p);
    let mut finite: Vec<MultiSupport> = Vec::new();

    // each block's own finite part, embedded at its unknown
    for j in 0..n {
        let block = single_eq::minimal_solutions_1(&p.block(j));
        for s in &block.finite {
            let mut parts = MultiSupport::zero(n).parts().to_vec();
            parts[j] = s.part(0).clone();
            finite.push(MultiSupport::new(parts));
        }
    }

    // cross pairs with both exponents below the orders
    for i in 0..n {
        for j in i + 1..n {
            for a in 0..p.order(i) {
                for b in 0..p.order(j) {
                    let cand =
                        MultiSupport::monomial(n, i, a).union(&MultiSupport::monomial(n, j, b));
                    if p.is_solution(&cand)
                        && !p.is_solution(&MultiSupport::monomial(n, i, a))
                        && !p.is_solution(&MultiSupport::monomial(n, j, b))
                    {
                        finite.push(cand);
                    }
                }
            }
        }
    }

    // cross pairs with a low exponent in one unknown and the unique high
    // partner in another
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for low in 0..p.order(i) {
                if let Some(q) = cross_partner(p, i, low, j) {
                    finite.push(
                        MultiSupport::monomial(n, i, low)
                            .union(&MultiSupport::monomial(n, j, q)),
                    );
                }
            }
        }
    }

    let mut set = SolutionSet::new(finite, rays);
    set.filter_minimal();
    set
}

/// Regularity for n > 1: every block regular on its own, and the values
/// A_{α,j}(P) over all j and 0 ≤ α < k_j pairwise distinct.
pub fn is_regular_n(p: &Tlde) -> bool {
    check_multivariate(p);
    for j in 0..p.n() {
        if !single_eq::is_regular_1(&p.block(j)) {
            return false;
        }
    }
    let mut vals: Vec<i64> = Vec::new();
    for j in 0..p.n() {
        for alpha in 0..p.order(j) {
            vals.push(p.a_val(j, alpha));
        }
    }
    vals.sort_unstable();
    !vals.windows(2).any(|w| w[0] == w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::Support;

    fn two(bu: &[i64], bv: &[i64]) -> Tlde {
        Tlde::new(vec![bu.to_vec(), bv.to_vec()]).unwrap()
    }

    fn msup(parts: Vec<Vec<i64>>) -> MultiSupport {
        MultiSupport::new(parts.into_iter().map(Support::new).collect())
    }

    #[test]
    fn loop_detection() {
        assert!(loops(&two(&[2, 0], &[2, 0])).is_empty());
        assert_eq!(loops(&two(&[0, 1], &[2, 0])), vec![0]);
        assert_eq!(loops(&two(&[0, 1], &[0, 1])), vec![0, 1]);
    }

    #[test]
    fn circuit_matroid_examples() {
        let m = circuit_matroid(&two(&[2, 0], &[2, 0]));
        assert!(m.loops.is_empty());
        assert_eq!(
            m.circuits,
            vec![Circuit { members: vec![0, 1], valuation: 0 }]
        );

        let m = circuit_matroid(&two(&[0, 1], &[0, 1]));
        assert_eq!(m.loops, vec![0, 1]);
        assert_eq!(
            m.circuits,
            vec![
                Circuit { members: vec![0], valuation: 1 },
                Circuit { members: vec![1], valuation: 1 },
            ]
        );

        let p3 = Tlde::new(vec![vec![2, 0], vec![2, 0], vec![2, 0]]).unwrap();
        let m = circuit_matroid(&p3);
        assert!(m.loops.is_empty());
        assert_eq!(m.circuits.len(), 3);
        assert!(m.circuits.iter().all(|c| c.valuation == 0 && c.members.len() == 2));
    }

    #[test]
    fn ray_examples() {
        let rays = ray_solutions(&two(&[2, 0], &[2, 0]));
        assert_eq!(rays.len(), 1);
        assert_eq!(rays[0].base(), &msup(vec![vec![1], vec![1]]));

        // one loop, one free unknown: only the loop ray survives
        let rays = ray_solutions(&two(&[0, 1], &[2, 0]));
        assert_eq!(rays.len(), 1);
        assert_eq!(rays[0].base(), &msup(vec![vec![1], vec![]]));

        // A_u = 0, A_v = 1: the larger-A side (v) sits at its order
        let p = two(&[2, 0], &[0, 5]);
        let rays = ray_solutions(&p);
        assert_eq!(rays.len(), 1);
        assert_eq!(rays[0].base(), &msup(vec![vec![2], vec![1]]));
        assert!(p.is_solution(rays[0].base()));
        assert!(p.is_solution(&rays[0].member(4)));
    }

    #[test]
    fn minimal_solutions_two_identical_blocks() {
        let p = two(&[2, 0], &[2, 0]);
        let sols = minimal_solutions_n(&p);
        assert_eq!(
            sols.finite,
            vec![
                msup(vec![vec![], vec![0, 3]]),
                msup(vec![vec![0], vec![0]]),
                msup(vec![vec![0], vec![3]]),
                msup(vec![vec![0, 3], vec![]]),
                msup(vec![vec![3], vec![0]]),
            ]
        );
        assert_eq!(sols.rays.len(), 1);
    }

    #[test]
    fn minimal_solutions_two_loops() {
        let p = two(&[0, 1], &[0, 1]);
        let sols = minimal_solutions_n(&p);
        assert!(sols.finite.is_empty());
        assert_eq!(sols.rays.len(), 2);
        assert_eq!(sols.rays[0].base(), &msup(vec![vec![1], vec![]]));
        assert_eq!(sols.rays[1].base(), &msup(vec![vec![], vec![1]]));
    }

    #[test]
    fn finite_elements_have_at_most_two_exponents() {
        let p = two(&[1, -1, 2], &[0, 3]);
        for s in &minimal_solutions_n(&p).finite {
            assert!(s.total_len() <= 2);
        }
    }

    #[test]
    fn regularity_examples() {
        assert!(!is_regular_n(&two(&[2, 0], &[2, 0])));
        assert!(is_regular_n(&two(&[2, 0], &[5, 0])));
        // a loop block is not regular on its own
        assert!(!is_regular_n(&two(&[0, 1], &[5, 0])));
    }
}
