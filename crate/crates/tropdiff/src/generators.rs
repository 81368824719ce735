//! Extremal and random instance generation, and the bound formulas.
//!
//! The 2×2 construction takes block u of equation 1 and block v of
//! equation 2 strictly increasing, the opposite blocks strictly
//! decreasing, with the constant terms ordered a_{0v1} < a_{0u1} and
//! a_{0u2} < a_{0v2}; such a system carries minimal solutions of all
//! three mixed types and attains the sharp (k_u+k_v)(k_u+k_v+1)/2 count.
//! The n×n lower-bound construction repeats the pattern cyclically, with
//! all remaining blocks pushed high enough to never attain a minimum.
//!
//! Genericity is not automatic from the inequalities, so generation
//! retries with seeded jitter until `is_generic` and `is_regular_system`
//! both pass, then re-checks every defining inequality bit-exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::systems::{is_generic, is_regular_system};
use crate::tlde::{Tlde, TldeSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("retry budget exhausted after {tries} attempts; try a larger step or range")]
    RetriesExhausted { tries: u32 },
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
}

const MAX_TRIES: u32 = 64;

/// Index family for the n×n lower-bound construction: 1-based positions
/// p_1 < … < p_s with cyclic gaps of at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundPlan {
    pub orders: Vec<i64>,
    pub family: Vec<usize>,
}

impl LowerBoundPlan {
    pub fn new(orders: Vec<i64>, family: Vec<usize>) -> Result<Self, GenError> {
        let n = orders.len();
        if n < 2 {
            return Err(GenError::InvalidPlan("need at least two unknowns".into()));
        }
        if orders.iter().any(|&k| k < 1) {
            return Err(GenError::InvalidPlan("orders must be ≥ 1".into()));
        }
        if family.is_empty() {
            return Err(GenError::InvalidPlan("empty index family".into()));
        }
        let mut sorted = family.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != family.len() || sorted != family {
            return Err(GenError::InvalidPlan(
                "family must be strictly increasing".into(),
            ));
        }
        if family.iter().any(|&p| p < 1 || p > n) {
            return Err(GenError::InvalidPlan("family indices must lie in [n]".into()));
        }
        for w in family.windows(2) {
            if w[1] < w[0] + 2 {
                return Err(GenError::InvalidPlan("cyclic gaps must be ≥ 2".into()));
            }
        }
        // wraparound gap: p_1 + n ≥ p_s + 2
        if family.len() >= 1 && family[0] + n < family[family.len() - 1] + 2 {
            return Err(GenError::InvalidPlan("cyclic gaps must be ≥ 2".into()));
        }
        Ok(LowerBoundPlan { orders, family })
    }

    pub fn n(&self) -> usize {
        self.orders.len()
    }

    /// 1-based cyclic predecessor p − 1, mapping 1 to n.
    fn pred(&self, p: usize) -> usize {
        if p == 1 {
            self.n()
        } else {
            p - 1
        }
    }
}

fn increasing(k: i64, start: i64, step: i64) -> Vec<i64> {
    (0..=k).map(|i| start + i * step).collect()
}

fn decreasing(k: i64, start: i64, step: i64) -> Vec<i64> {
    (0..=k).map(|i| start - i * step).collect()
}

/// A 2×2 system satisfying the slope and ordering inequalities of the
/// sharp construction, retried until generic and regular.
pub fn construct_n2(
    k_u: i64,
    k_v: i64,
    base: i64,
    step: i64,
    seed: u64,
) -> Result<TldeSystem, GenError> {
    assert!(k_u >= 1 && k_v >= 1, "orders must be ≥ 1");
    assert!(step >= 2, "step must be ≥ 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_TRIES {
        let gap = step + 1 + rng.gen_range(0..step);
        let base2 = base + rng.gen_range(0..2 * step);
        let p1 = Tlde::new(vec![
            increasing(k_u, base + gap, step),
            decreasing(k_v, base, step),
        ])
        .unwrap();
        let p2 = Tlde::new(vec![
            decreasing(k_u, base2, step),
            increasing(k_v, base2 + gap, step),
        ])
        .unwrap();
        let sigma = TldeSystem::new(vec![p1, p2]).unwrap();
        if construct_n2_inequalities_hold(&sigma)
            && is_generic(&sigma).unwrap()
            && is_regular_system(&sigma)
        {
            return Ok(sigma);
        }
    }
    Err(GenError::RetriesExhausted { tries: MAX_TRIES })
}

/// Bit-exact re-check of the 2×2 construction inequalities.
pub fn construct_n2_inequalities_hold(sigma: &TldeSystem) -> bool {
    if sigma.n() != 2 || sigma.m() != 2 {
        return false;
    }
    let (ku, kv) = (sigma.orders()[0], sigma.orders()[1]);
    let a = |i: i64, j: usize, l: usize| sigma.eq(l).coeff(j, i);
    (0..ku).all(|i| a(i + 1, 0, 0) >= a(i, 0, 0) + 1)
        && (0..kv).all(|i| a(i + 1, 1, 0) <= a(i, 1, 0) - 1)
        && (0..ku).all(|i| a(i + 1, 0, 1) <= a(i, 0, 1) - 1)
        && (0..kv).all(|i| a(i + 1, 1, 1) >= a(i, 1, 1) + 1)
        && a(0, 1, 0) < a(0, 0, 0)
        && a(0, 0, 1) < a(0, 1, 1)
}

/// An n×n generic regular system realizing the lower-bound construction:
/// diagonal blocks strictly decreasing, cyclic-successor blocks strictly
/// increasing and dominating the diagonal start, all other blocks pushed
/// above every attainable minimum.
pub fn construct_lower(
    plan: &LowerBoundPlan,
    base: i64,
    step: i64,
    seed: u64,
) -> Result<TldeSystem, GenError> {
    assert!(step >= 2, "step must be ≥ 2");
    let n = plan.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_TRIES {
        let mut eqs = Vec::with_capacity(n);
        let mut ok = true;
        for l in 0..n {
            // 1-based successor of equation l+1
            let succ = (l + 1) % n;
            let diag_start = base + rng.gen_range(0..step);
            let succ_start = diag_start + 1 + rng.gen_range(0..step);
            let mut blocks: Vec<Vec<i64>> = vec![Vec::new(); n];
            blocks[l] = decreasing(plan.orders[l], diag_start, step);
            blocks[succ] = increasing(plan.orders[succ], succ_start, step);
            let floor = succ_start + plan.orders[succ] * step;
            for j in 0..n {
                if j != l && j != succ {
                    let start =
                        floor + plan.orders[j] * (step + 1) + 1 + rng.gen_range(0..step);
                    blocks[j] = decreasing(plan.orders[j], start, step);
                }
            }
            match Tlde::new(blocks) {
                Ok(eq) => eqs.push(eq),
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let sigma = TldeSystem::new(eqs).unwrap();
        if construct_lower_inequalities_hold(plan, &sigma)
            && is_generic(&sigma).unwrap()
            && is_regular_system(&sigma)
        {
            return Ok(sigma);
        }
    }
    Err(GenError::RetriesExhausted { tries: MAX_TRIES })
}

/// Bit-exact re-check of the lower-bound construction inequalities.
pub fn construct_lower_inequalities_hold(plan: &LowerBoundPlan, sigma: &TldeSystem) -> bool {
    let n = plan.n();
    if sigma.n() != n || sigma.m() != n || sigma.orders() != plan.orders {
        return false;
    }
    let a = |i: i64, j: usize, l: usize| sigma.eq(l).coeff(j, i);
    for l in 0..n {
        let succ = (l + 1) % n;
        let k_l = plan.orders[l];
        let k_s = plan.orders[succ];
        if !(0..k_l).all(|i| a(i + 1, l, l) <= a(i, l, l) - 1) {
            return false;
        }
        if !(0..k_s).all(|i| a(i + 1, succ, l) >= a(i, succ, l) + 1) {
            return false;
        }
        if a(0, l, l) >= a(0, succ, l) {
            return false;
        }
        let dominated = a(k_s, succ, l);
        for j in 0..n {
            if j != l && j != succ {
                let k_j = plan.orders[j];
                if !(0..=k_j).all(|i| a(i, j, l) > dominated + k_j) {
                    return false;
                }
            }
        }
    }
    true
}

/// Number of minimal solutions the lower-bound construction promises:
/// Π_j k_{p_j}(k_{p_j}+1)/2 over the family times Π k_r over the
/// unknowns that are neither a family index nor its cyclic predecessor.
pub fn expected_lower_count(plan: &LowerBoundPlan) -> u64 {
    let mut excluded = vec![false; plan.n() + 1];
    let mut count = 1u64;
    for &p in &plan.family {
        let k = plan.orders[p - 1] as u64;
        count *= k * (k + 1) / 2;
        excluded[p] = true;
        excluded[plan.pred(p)] = true;
    }
    for r in 1..=plan.n() {
        if !excluded[r] {
            count *= plan.orders[r - 1] as u64;
        }
    }
    count
}

fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut out = 1u64;
    for i in 0..k {
        out = out * (n - i) as u64 / (i + 1) as u64;
    }
    out
}

/// The crude count ceiling Σ_{d_1+⋯+d_n≤n} Π_j C(k_j+d_j−1, d_j).
pub fn naive_upper_bound(orders: &[i64]) -> u64 {
    let n = orders.len();
    let mut total = 0u64;
    let mut degrees = vec![0i64; n];
    sum_over(orders, &mut degrees, 0, n as i64, &mut total);
    return total;

    fn sum_over(orders: &[i64], degrees: &mut Vec<i64>, j: usize, left: i64, total: &mut u64) {
        if j == orders.len() {
            let prod: u64 = orders
                .iter()
                .zip(degrees.iter())
                .map(|(&k, &d)| binomial(k + d - 1, d))
                .product();
            *total += prod;
            return;
        }
        for d in 0..=left {
            degrees[j] = d;
            sum_over(orders, degrees, j + 1, left - d, total);
        }
    }
}

/// The sharp n = 2 ceiling (k_u + k_v)(k_u + k_v + 1)/2.
pub fn sharp_bound_n2(k_u: i64, k_v: i64) -> u64 {
    let s = (k_u + k_v) as u64;
    s * (s + 1) / 2
}

/// Leading term 2(Σk_j)^n / (n·n!) of the asymptotic ceiling, as a
/// reduced rational; `asymptotic` flags the suppressed lower-order terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingBound {
    pub numerator: u64,
    pub denominator: u64,
    pub asymptotic: bool,
}

pub fn leading_upper(n: usize, orders: &[i64]) -> LeadingBound {
    assert_eq!(n, orders.len());
    let sum: i64 = orders.iter().sum();
    let mut numerator = 2 * (sum as u64).pow(n as u32);
    let mut denominator = (n as u64) * (1..=n as u64).product::<u64>();
    let g = gcd(numerator, denominator);
    if g > 0 {
        numerator /= g;
        denominator /= g;
    }
    return LeadingBound {
        numerator,
        denominator,
        asymptotic: true,
    };

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
}

/// Rejection-samples a generic regular system with uniform coefficients
/// in [lo, hi]; deterministic for a fixed seed.
pub fn random_system(
    n: usize,
    orders: &[i64],
    coeff_range: (i64, i64),
    seed: u64,
) -> Result<TldeSystem, GenError> {
    assert_eq!(n, orders.len());
    let (lo, hi) = coeff_range;
    assert!(lo < hi, "coefficient range must be nonempty");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tries = MAX_TRIES * 32;
    for _ in 0..tries {
        let eqs: Vec<Tlde> = (0..n)
            .map(|_| {
                Tlde::new(
                    orders
                        .iter()
                        .map(|&k| (0..=k).map(|_| rng.gen_range(lo..=hi)).collect())
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        let sigma = TldeSystem::new(eqs).unwrap();
        if is_generic(&sigma).unwrap() && is_regular_system(&sigma) {
            return Ok(sigma);
        }
    }
    Err(GenError::RetriesExhausted { tries })
}
