//! Square-system analysis: genericity and regularity tests, the branching
//! minimal-solution solver over difference constraints, holonomicity, and
//! the n = 2 solution-type diagnostics.
//!
//! The solver enumerates, for every choice of low parts F_j ⊆ {0..k_j−1}
//! and every pattern Q of unknowns carrying a high exponent q_j ≥ k_j,
//! the ways each equation's doubled minimum can be certified: two
//! constant terms, a constant against one q_j, two distinct q's pinned
//! together, or an internal tie within one unknown's q-terms. Each choice
//! yields a difference-constraint system over the q_j, solved by
//! longest-path relaxation with positive-cycle detection.
//!
//! Unbounded feasible directions are handled structurally rather than
//! enumerated: a branch with nonempty low parts and an unbounded q_j is
//! wholly dominated (dropping the unbounded exponents from any member
//! leaves a smaller solution, found in the branch without them), and a
//! homogeneous branch whose recession cone exceeds the diagonal ray is
//! dominated the same way. What remains of the homogeneous branches are
//! exact shift-ray families, emitted as such; the system is holonomic
//! exactly when no ray survives.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::budget::{Budget, Truncated};
use crate::multi_unknown;
use crate::single_eq;
use crate::solution::{ShiftRay, SolutionSet};
use crate::support::{MultiSupport, Support};
use crate::tlde::{ModelError, TldeSystem};

/// A term position a_{i,j,l} inside one equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermRef {
    pub unknown: usize,
    pub derivative: i64,
}

/// One constraint accumulated along a branch of the solver, in terms of
/// the unknown high exponents q_j. The bound q_j ≥ k_j is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintKind {
    Fix { var: usize, value: i64 },
    /// q_a − q_b = delta.
    Difference { a: usize, b: usize, delta: i64 },
    Lower { var: usize, bound: i64 },
    Upper { var: usize, bound: i64 },
    /// q_var ≥ q_anchor + delta.
    RelativeLower { var: usize, anchor: usize, delta: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchConstraint {
    pub kind: ConstraintKind,
    /// Equation index and the certifying term pair that generated it.
    pub origin: (usize, Option<(TermRef, TermRef)>),
}

// ---------------------------------------------------------------------
// genericity and regularity

/// Genericity of a square system: the n! permutation sums of the order-k
/// A-values are pairwise distinct, and for every unknown j the difference
/// lists A_{k_j,j}(P_l) − A_{α,j'}(P_l) over all j' and α < k_{j'} are
/// disjoint across distinct equations.
pub fn is_generic(sigma: &TldeSystem) -> Result<bool, ModelError> {
    if !sigma.is_square() {
        return Err(ModelError::NotSquare {
            m: sigma.m(),
            n: sigma.n(),
        });
    }
    let n = sigma.n();
    let orders = sigma.orders();

    // permutation sums of A_{k_{σ(l)}, σ(l)}(P_l)
    let mut sums: Vec<i64> = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute_sums(sigma, &orders, &mut perm, 0, &mut sums);
    sums.sort_unstable();
    if sums.windows(2).any(|w| w[0] == w[1]) {
        return Ok(false);
    }

    for j in 0..n {
        let diff_list = |l: usize| -> Vec<i64> {
            let top = sigma.eq(l).a_val(j, orders[j]);
            let mut out = Vec::new();
            for jp in 0..n {
                for alpha in 0..orders[jp] {
                    out.push(top - sigma.eq(l).a_val(jp, alpha));
                }
            }
            out
        };
        for l1 in 0..n {
            let d1 = diff_list(l1);
            for l2 in l1 + 1..n {
                let d2 = diff_list(l2);
                if d1.iter().any(|v| d2.contains(v)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn permute_sums(
    sigma: &TldeSystem,
    orders: &[i64],
    perm: &mut Vec<usize>,
    at: usize,
    out: &mut Vec<i64>,
) {
    let n = perm.len();
    if at == n {
        let sum = (0..n)
            .map(|l| sigma.eq(l).a_val(perm[l], orders[perm[l]]))
            .sum();
        out.push(sum);
        return;
    }
    for i in at..n {
        perm.swap(at, i);
        permute_sums(sigma, orders, perm, at + 1, out);
        perm.swap(at, i);
    }
}

/// Every equation regular (single-unknown or multi-unknown sense).
pub fn is_regular_system(sigma: &TldeSystem) -> bool {
    sigma.eqs().iter().all(|p| {
        if p.n() == 1 {
            single_eq::is_regular_1(p)
        } else {
            multi_unknown::is_regular_n(p)
        }
    })
}

// ---------------------------------------------------------------------
// difference-constraint graph

const NO_DIST: i64 = i64::MIN;

/// Edges encode x_to ≥ x_from + w over variables 0..nv plus the zero
/// node nv. Feasibility and the componentwise-least solution come from
/// longest-path relaxation; a positive cycle means infeasible.
struct DiffGraph {
    nv: usize,
    edges: Vec<(usize, usize, i64)>,
}

impl DiffGraph {
    fn new(nv: usize) -> Self {
        DiffGraph {
            nv,
            edges: Vec::new(),
        }
    }

    fn zero(&self) -> usize {
        self.nv
    }

    fn add(&mut self, from: usize, to: usize, w: i64) {
        self.edges.push((from, to, w));
    }

    fn add_constraint(&mut self, c: &ConstraintKind) {
        let z = self.zero();
        match *c {
            ConstraintKind::Fix { var, value } => {
                self.add(z, var, value);
                self.add(var, z, -value);
            }
            ConstraintKind::Difference { a, b, delta } => {
                self.add(b, a, delta);
                self.add(a, b, -delta);
            }
            ConstraintKind::Lower { var, bound } => self.add(z, var, bound),
            ConstraintKind::Upper { var, bound } => self.add(var, z, -bound),
            ConstraintKind::RelativeLower { var, anchor, delta } => {
                self.add(anchor, var, delta)
            }
        }
    }

    /// Least solution with x_zero = 0, or None when infeasible.
    fn least_solution(&self) -> Option<Vec<i64>> {
        let nodes = self.nv + 1;
        let mut dist = vec![NO_DIST; nodes];
        dist[self.zero()] = 0;
        for round in 0..=nodes {
            let mut changed = false;
            for &(from, to, w) in &self.edges {
                if dist[from] != NO_DIST && dist[from] + w > dist[to] {
                    dist[to] = dist[from] + w;
                    changed = true;
                }
            }
            if !changed {
                return Some(dist);
            }
            if round == nodes {
                return None;
            }
        }
        None
    }

    /// Variables with some path to the zero node, i.e. bounded above.
    fn bounded_vars(&self) -> Vec<bool> {
        let nodes = self.nv + 1;
        let mut reaches = vec![false; nodes];
        reaches[self.zero()] = true;
        loop {
            let mut changed = false;
            for &(from, to, _) in &self.edges {
                if reaches[to] && !reaches[from] {
                    reaches[from] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        reaches.truncate(self.nv);
        reaches
    }

    /// Upper bounds −(longest path to zero) for every bounded variable.
    /// Call only on feasible graphs.
    fn upper_bounds(&self) -> Vec<Option<i64>> {
        let nodes = self.nv + 1;
        let mut dist = vec![NO_DIST; nodes];
        dist[self.zero()] = 0;
        loop {
            let mut changed = false;
            for &(from, to, w) in &self.edges {
                // reversed orientation: longest path from node to zero
                if dist[to] != NO_DIST && dist[to] + w > dist[from] {
                    dist[from] = dist[to] + w;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..self.nv)
            .map(|v| (dist[v] != NO_DIST).then(|| -dist[v]))
            .collect()
    }

    fn satisfied_at(&self, x: &[i64]) -> bool {
        // x has nv entries; zero node fixed at 0
        let get = |v: usize| if v == self.nv { 0 } else { x[v] };
        self.edges
            .iter()
            .all(|&(from, to, w)| get(to) >= get(from) + w)
    }
}

// ---------------------------------------------------------------------
// branch views and options

#[derive(Debug, Clone)]
struct VarAtom {
    var: usize,
    offset: i64,
    tie: bool,
    argmin_der: i64,
}

#[derive(Debug, Clone)]
struct EqView {
    min_const: Option<i64>,
    min_const_tie: bool,
    min_const_ref: Option<TermRef>,
    vars: Vec<VarAtom>,
}

fn eq_view(sigma: &TldeSystem, l: usize, lows: &[Support], q_vars: &[usize]) -> EqView {
    let p = sigma.eq(l);
    let mut consts = Vec::new();
    for (j, low) in lows.iter().enumerate() {
        for i in 0..=p.order(j) {
            if let Some(v) = low.val(i).finite() {
                consts.push((
                    TermRef {
                        unknown: j,
                        derivative: i,
                    },
                    p.coeff(j, i) + v,
                ));
            }
        }
    }
    let min_const = consts.iter().map(|&(_, v)| v).min();
    let (min_const_tie, min_const_ref) = match min_const {
        None => (false, None),
        Some(mc) => {
            let hits: Vec<TermRef> = consts
                .iter()
                .filter(|&&(_, v)| v == mc)
                .map(|&(t, _)| t)
                .collect();
            (hits.len() >= 2, Some(hits[0]))
        }
    };
    let vars = q_vars
        .iter()
        .enumerate()
        .map(|(vi, &j)| {
            let offsets = (0..=p.order(j)).map(|i| p.coeff(j, i) - i);
            let best = offsets.clone().min().unwrap();
            let hits: Vec<i64> = (0..=p.order(j))
                .filter(|&i| p.coeff(j, i) - i == best)
                .collect();
            VarAtom {
                var: vi,
                offset: best,
                tie: hits.len() >= 2,
                argmin_der: hits[0],
            }
        })
        .collect();
    EqView {
        min_const,
        min_const_tie,
        min_const_ref,
        vars,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BranchOption {
    /// Two constant terms tie at the minimum.
    ConstPair,
    /// The minimum constant pairs with variable v's cheapest term.
    ConstVar { v: usize },
    /// The cheapest terms of two distinct variables pin together.
    VarVar { a: usize, b: usize },
    /// An internal tie among one variable's terms.
    VarTie { a: usize },
}

fn options_for(view: &EqView) -> Vec<BranchOption> {
    let mut out = Vec::new();
    if view.min_const_tie {
        out.push(BranchOption::ConstPair);
    }
    if view.min_const.is_some() {
        for va in &view.vars {
            out.push(BranchOption::ConstVar { v: va.var });
        }
    }
    for (i, va) in view.vars.iter().enumerate() {
        for vb in &view.vars[i + 1..] {
            out.push(BranchOption::VarVar {
                a: va.var,
                b: vb.var,
            });
        }
        if va.tie {
            out.push(BranchOption::VarTie { a: va.var });
        }
    }
    out
}

fn constraints_for(
    view: &EqView,
    l: usize,
    opt: BranchOption,
    q_vars: &[usize],
) -> Vec<BranchConstraint> {
    let mut out = Vec::new();
    let atom = |v: usize| view.vars.iter().find(|va| va.var == v).unwrap();
    let term_of = |v: usize| TermRef {
        unknown: q_vars[v],
        derivative: atom(v).argmin_der,
    };
    match opt {
        BranchOption::ConstPair => {
            let mc = view.min_const.unwrap();
            for va in &view.vars {
                out.push(BranchConstraint {
                    kind: ConstraintKind::Lower {
                        var: va.var,
                        bound: mc - va.offset,
                    },
                    origin: (l, None),
                });
            }
        }
        BranchOption::ConstVar { v } => {
            let mc = view.min_const.unwrap();
            let pair = (view.min_const_ref.unwrap(), term_of(v));
            out.push(BranchConstraint {
                kind: ConstraintKind::Fix {
                    var: v,
                    value: mc - atom(v).offset,
                },
                origin: (l, Some(pair)),
            });
            for va in &view.vars {
                if va.var != v {
                    out.push(BranchConstraint {
                        kind: ConstraintKind::Lower {
                            var: va.var,
                            bound: mc - va.offset,
                        },
                        origin: (l, None),
                    });
                }
            }
        }
        BranchOption::VarVar { a, b } => {
            let (da, db) = (atom(a).offset, atom(b).offset);
            let pair = (term_of(a), term_of(b));
            out.push(BranchConstraint {
                kind: ConstraintKind::Difference {
                    a,
                    b,
                    delta: db - da,
                },
                origin: (l, Some(pair)),
            });
            if let Some(mc) = view.min_const {
                out.push(BranchConstraint {
                    kind: ConstraintKind::Upper {
                        var: a,
                        bound: mc - da,
                    },
                    origin: (l, None),
                });
            }
            for va in &view.vars {
                if va.var != a && va.var != b {
                    out.push(BranchConstraint {
                        kind: ConstraintKind::RelativeLower {
                            var: va.var,
                            anchor: a,
                            delta: da - va.offset,
                        },
                        origin: (l, None),
                    });
                }
            }
        }
        BranchOption::VarTie { a } => {
            let da = atom(a).offset;
            if let Some(mc) = view.min_const {
                out.push(BranchConstraint {
                    kind: ConstraintKind::Upper {
                        var: a,
                        bound: mc - da,
                    },
                    origin: (l, None),
                });
            }
            for va in &view.vars {
                if va.var != a {
                    out.push(BranchConstraint {
                        kind: ConstraintKind::RelativeLower {
                            var: va.var,
                            anchor: a,
                            delta: da - va.offset,
                        },
                        origin: (l, None),
                    });
                }
            }
        }
    }
    out
}

/// Whether option `opt` leaves variable v untouched by any certifying
/// pair; untouched variables are exactly the directions a homogeneous
/// branch can grow transversally to the diagonal.
fn touches(opt: BranchOption, v: usize) -> bool {
    match opt {
        BranchOption::ConstPair | BranchOption::ConstVar { .. } => false,
        BranchOption::VarVar { a, b } => v == a || v == b,
        BranchOption::VarTie { a } => v == a,
    }
}

// ---------------------------------------------------------------------
// the solver

fn subsets_below(k: i64) -> Vec<Support> {
    let mut out = vec![Support::empty()];
    for e in 0..k {
        let mut more: Vec<Support> = out
            .iter()
            .map(|s| s.union(&Support::singleton(e)))
            .collect();
        out.append(&mut more);
    }
    out.sort();
    out
}

fn build_support(lows: &[Support], q_vars: &[usize], q: &[i64]) -> MultiSupport {
    let mut parts = lows.to_vec();
    for (vi, &j) in q_vars.iter().enumerate() {
        parts[j] = parts[j].union(&Support::singleton(q[vi]));
    }
    MultiSupport::new(parts)
}

/// Enumerates integer points of the branch polytope within per-variable
/// bounds, checking every edge.
fn enumerate_points(
    graph: &DiffGraph,
    lo: &[i64],
    hi: &[i64],
    budget: &Budget,
    mut f: impl FnMut(&[i64]) -> Result<(), Truncated>,
) -> Result<(), Truncated> {
    let nv = lo.len();
    let mut point = vec![0i64; nv];
    return dfs(graph, lo, hi, 0, &mut point, budget, &mut f);

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        graph: &DiffGraph,
        lo: &[i64],
        hi: &[i64],
        v: usize,
        point: &mut Vec<i64>,
        budget: &Budget,
        f: &mut impl FnMut(&[i64]) -> Result<(), Truncated>,
    ) -> Result<(), Truncated> {
        if v == lo.len() {
            budget.tick(1)?;
            if graph.satisfied_at(point) {
                f(point)?;
            }
            return Ok(());
        }
        for q in lo[v]..=hi[v] {
            budget.tick(1)?;
            point[v] = q;
            // prune on edges among assigned variables
            let ok = graph.edges.iter().all(|&(from, to, w)| {
                let val = |node: usize| -> Option<i64> {
                    if node == graph.nv {
                        Some(0)
                    } else if node <= v {
                        Some(point[node])
                    } else {
                        None
                    }
                };
                match (val(from), val(to)) {
                    (Some(a), Some(b)) => b >= a + w,
                    _ => true,
                }
            });
            if ok {
                dfs(graph, lo, hi, v + 1, point, budget, f)?;
            }
        }
        Ok(())
    }
}

struct BranchContext<'a> {
    sigma: &'a TldeSystem,
    budget: &'a Budget,
    orders: Vec<i64>,
    ray_window: i64,
}

impl<'a> BranchContext<'a> {
    /// Explores every option combination for the given low parts and
    /// high pattern, feeding feasible supports and rays to the sinks.
    fn explore(
        &self,
        lows: &[Support],
        q_vars: &[usize],
        finite: &mut BTreeSet<MultiSupport>,
        rays: &mut BTreeSet<ShiftRay>,
    ) -> Result<(), Truncated> {
        let m = self.sigma.m();
        let homogeneous = lows.iter().all(Support::is_empty);
        let views: Vec<EqView> = (0..m)
            .map(|l| eq_view(self.sigma, l, lows, q_vars))
            .collect();
        let options: Vec<Vec<BranchOption>> = views.iter().map(options_for).collect();
        if options.iter().any(Vec::is_empty) {
            return Ok(());
        }

        let mut combo = vec![0usize; m];
        loop {
            self.budget.tick(1)?;
            let chosen: Vec<BranchOption> =
                (0..m).map(|l| options[l][combo[l]]).collect();
            self.run_branch(lows, q_vars, &views, &chosen, homogeneous, finite, rays)?;

            // advance the mixed-radix counter
            let mut l = 0;
            loop {
                if l == m {
                    return Ok(());
                }
                combo[l] += 1;
                if combo[l] < options[l].len() {
                    break;
                }
                combo[l] = 0;
                l += 1;
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn run_branch(
        &self,
        lows: &[Support],
        q_vars: &[usize],
        views: &[EqView],
        chosen: &[BranchOption],
        homogeneous: bool,
        finite: &mut BTreeSet<MultiSupport>,
        rays: &mut BTreeSet<ShiftRay>,
    ) -> Result<(), Truncated> {
        let nv = q_vars.len();
        let mut graph = DiffGraph::new(nv);
        for (vi, &j) in q_vars.iter().enumerate() {
            graph.add_constraint(&ConstraintKind::Lower {
                var: vi,
                bound: self.orders[j],
            });
        }
        for (l, &opt) in chosen.iter().enumerate() {
            for c in constraints_for(&views[l], l, opt, q_vars) {
                graph.add_constraint(&c.kind);
            }
        }

        let least = match graph.least_solution() {
            Some(d) => d,
            None => return Ok(()),
        };

        if homogeneous {
            // the branch can only contribute rays; if some variable is
            // untouched by every certifying pair the family grows in a
            // non-diagonal direction and is dominated by its trim
            let all_touched =
                (0..nv).all(|v| chosen.iter().any(|&opt| touches(opt, v)));
            if !all_touched {
                return Ok(());
            }
            let lo: Vec<i64> = (0..nv).map(|v| least[v]).collect();
            let hi: Vec<i64> = lo.iter().map(|&b| b + self.ray_window).collect();
            enumerate_points(&graph, &lo, &hi, self.budget, |q| {
                let at_floor = q_vars
                    .iter()
                    .enumerate()
                    .any(|(vi, &j)| q[vi] == self.orders[j]);
                if at_floor {
                    let base = build_support(lows, q_vars, q);
                    if self.sigma.is_solution(&base) {
                        rays.insert(ShiftRay::new(base));
                    }
                }
                Ok(())
            })?;
            return Ok(());
        }

        // inhomogeneous: unbounded variables mean every member strictly
        // contains its own trim, which the smaller pattern enumerates
        let bounded = graph.bounded_vars();
        if !bounded.iter().all(|&b| b) {
            return Ok(());
        }
        let uppers = graph.upper_bounds();
        let lo: Vec<i64> = (0..nv).map(|v| least[v]).collect();
        let hi: Vec<i64> = (0..nv).map(|v| uppers[v].unwrap()).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Ok(());
        }
        enumerate_points(&graph, &lo, &hi, self.budget, |q| {
            let cand = build_support(lows, q_vars, q);
            if self.sigma.is_solution(&cand) {
                finite.insert(cand);
            }
            Ok(())
        })
    }
}

/// All minimal solutions of a system of TLDEs: the finite part plus every
/// shift-ray family. Works for any m ≥ 1 (with m < n the system is
/// always non-holonomic).
pub fn solve_system(sigma: &TldeSystem, budget: &Budget) -> Result<SolutionSet, Truncated> {
    let n = sigma.n();
    let m = sigma.m();
    let orders = sigma.orders();
    let kmax = orders.iter().copied().max().unwrap();
    let ray_window = (n as i64) * (sigma.spread() + kmax) + 1;

    let pruned = sigma.is_square()
        && is_generic(sigma).unwrap_or(false)
        && is_regular_system(sigma);

    let ctx = BranchContext {
        sigma,
        budget,
        orders: orders.clone(),
        ray_window,
    };

    let mut finite: BTreeSet<MultiSupport> = BTreeSet::new();
    let mut rays: BTreeSet<ShiftRay> = BTreeSet::new();

    // homogeneous patterns: every nonempty subset of unknowns, no lows
    let empty_lows = vec![Support::empty(); n];
    for q_mask in 1u32..(1 << n) {
        let q_vars: Vec<usize> = (0..n).filter(|&j| q_mask >> j & 1 == 1).collect();
        if q_vars.len() > 2 * m {
            continue;
        }
        ctx.explore(&empty_lows, &q_vars, &mut finite, &mut rays)?;
    }

    // inhomogeneous patterns
    let per_unknown_lows: Vec<Vec<Support>> =
        orders.iter().map(|&k| subsets_below(k)).collect();
    // a minimal solution is the union of per-equation certificates of at
    // most two exponents each, so 2m exponents total; under the generic
    // regular pruning the pattern is all of [n] with one high each
    let low_cap = |q_len: usize| (2 * m).saturating_sub(q_len);
    let q_masks: Vec<u32> = if pruned {
        vec![(1 << n) - 1]
    } else {
        (0u32..(1 << n)).collect()
    };

    let mut lows = vec![Support::empty(); n];
    enumerate_lows(
        &per_unknown_lows,
        0,
        &mut lows,
        &mut |lows: &[Support]| -> Result<(), Truncated> {
            let total: usize = lows.iter().map(Support::len).sum();
            if total == 0 {
                return Ok(());
            }
            for &q_mask in &q_masks {
                let q_vars: Vec<usize> =
                    (0..n).filter(|&j| q_mask >> j & 1 == 1).collect();
                if total > low_cap(q_vars.len()) {
                    continue;
                }
                if q_vars.is_empty() {
                    budget.tick(1)?;
                    let cand = MultiSupport::new(lows.to_vec());
                    if sigma.is_solution(&cand) {
                        finite.insert(cand);
                    }
                } else {
                    ctx.explore(lows, &q_vars, &mut finite, &mut rays)?;
                }
            }
            Ok(())
        },
    )?;

    let mut set = SolutionSet::new(finite.into_iter().collect(), rays.into_iter().collect());
    set.filter_minimal();
    Ok(set)
}

fn enumerate_lows(
    per_unknown: &[Vec<Support>],
    j: usize,
    lows: &mut Vec<Support>,
    f: &mut impl FnMut(&[Support]) -> Result<(), Truncated>,
) -> Result<(), Truncated> {
    if j == per_unknown.len() {
        return f(lows);
    }
    for s in &per_unknown[j] {
        lows[j] = s.clone();
        enumerate_lows(per_unknown, j + 1, lows, f)?;
    }
    Ok(())
}

/// Holonomic ⇔ the solver finds no shift-ray family.
pub fn is_holonomic_system(sigma: &TldeSystem, budget: &Budget) -> Result<bool, Truncated> {
    Ok(solve_system(sigma, budget)?.rays.is_empty())
}

// ---------------------------------------------------------------------
// n = 2 solution types

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TypeLabel {
    Uv,
    Uu,
    Vv,
    U,
    V,
}

impl std::fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TypeLabel::Uv => "uv",
            TypeLabel::Uu => "uu",
            TypeLabel::Vv => "vv",
            TypeLabel::U => "u",
            TypeLabel::V => "v",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("classification requires a 2×2 system")]
    NotTwoByTwo,
    #[error("the support is not a minimal solution of the expected shape")]
    NotMinimalSolution,
}

/// Type and diagnostics of one minimal solution of a generic regular
/// 2×2 system: the label among the five shapes, the per-equation
/// attaining element sets, the sign quantity A = A_{u1} − A_{u2} − A_{v1}
/// + A_{v2}, and A_i' = A_{iu2} − A_{iu1} − A_{v2} + A_{v1} for each low
/// u-exponent i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionTypeN2 {
    pub label: TypeLabel,
    /// attaining[l][j]: elements of S_j realizing equation l's minimum.
    pub attaining: Vec<[Vec<i64>; 2]>,
    pub a: i64,
    /// (i, A_i') for each low exponent i of the u part.
    pub a_primes: Vec<(i64, i64)>,
}

pub fn classify_solution_n2(
    sigma: &TldeSystem,
    s: &MultiSupport,
) -> Result<SolutionTypeN2, ClassifyError> {
    if sigma.n() != 2 || sigma.m() != 2 {
        return Err(ClassifyError::NotTwoByTwo);
    }
    let orders = sigma.orders();
    if !sigma.is_solution(s) {
        return Err(ClassifyError::NotMinimalSolution);
    }
    // generic regular minimal solutions carry exactly one high exponent
    // per unknown
    for j in 0..2 {
        let highs = s
            .part(j)
            .elems()
            .iter()
            .filter(|&&e| e >= orders[j])
            .count();
        if highs != 1 {
            return Err(ClassifyError::NotMinimalSolution);
        }
    }

    let mut attaining: Vec<[Vec<i64>; 2]> = Vec::new();
    for l in 0..2 {
        let p = sigma.eq(l);
        let terms = p.terms(s);
        let min = terms.iter().min().copied().unwrap();
        let mut sets = [Vec::new(), Vec::new()];
        let mut idx = 0;
        for j in 0..2 {
            for i in 0..=orders[j] {
                if terms[idx] == min {
                    let witness = s.part(j).val_witness(i).unwrap();
                    if !sets[j].contains(&witness) {
                        sets[j].push(witness);
                    }
                }
                idx += 1;
            }
        }
        attaining.push(sets);
    }

    let lows =
        |j: usize| -> Vec<i64> { s.part(j).elems().iter().copied().filter(|&e| e < orders[j]).collect() };
    let high = |j: usize| -> i64 {
        s.part(j)
            .elems()
            .iter()
            .copied()
            .find(|&e| e >= orders[j])
            .unwrap()
    };
    let (lu, lv) = (lows(0), lows(1));

    // an equation certified purely by the two high exponents marks the
    // degenerate types u and v
    let highs_only = (0..2).any(|l| {
        attaining[l][0] == vec![high(0)] && attaining[l][1] == vec![high(1)]
    });

    let label = match (lu.len(), lv.len()) {
        (1, 1) => TypeLabel::Uv,
        (2, 0) => TypeLabel::Uu,
        (0, 2) => TypeLabel::Vv,
        (1, 0) => {
            if highs_only {
                TypeLabel::U
            } else {
                TypeLabel::Uu
            }
        }
        (0, 1) => {
            if highs_only {
                TypeLabel::V
            } else {
                TypeLabel::Vv
            }
        }
        _ => return Err(ClassifyError::NotMinimalSolution),
    };

    let a_val = |l: usize, j: usize, alpha: i64| sigma.eq(l).a_val(j, alpha);
    let (ku, kv) = (orders[0], orders[1]);
    let a = a_val(0, 0, ku) - a_val(1, 0, ku) - a_val(0, 1, kv) + a_val(1, 1, kv);
    let a_primes = lu
        .iter()
        .map(|&i| {
            (
                i,
                a_val(1, 0, i) - a_val(0, 0, i) - a_val(1, 1, kv) + a_val(0, 1, kv),
            )
        })
        .collect();

    Ok(SolutionTypeN2 {
        label,
        attaining,
        a,
        a_primes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tlde::Tlde;

    fn uni_sys(coeffs: &[i64]) -> TldeSystem {
        TldeSystem::single(Tlde::univariate(coeffs.to_vec()).unwrap())
    }

    fn msup(parts: Vec<Vec<i64>>) -> MultiSupport {
        MultiSupport::new(parts.into_iter().map(Support::new).collect())
    }

    #[test]
    fn solve_matches_single_equation_theory() {
        // holonomic k = 1: unique pair {0, a0 − a1 + 1}
        let set = solve_system(&uni_sys(&[2, 0]), &Budget::default()).unwrap();
        assert_eq!(set.finite, vec![msup(vec![vec![0, 3]])]);
        assert!(set.rays.is_empty());

        // non-holonomic: single ray at {1}
        let set = solve_system(&uni_sys(&[0, 1]), &Budget::default()).unwrap();
        assert!(set.finite.is_empty());
        assert_eq!(set.rays.len(), 1);
        assert_eq!(set.rays[0].base(), &msup(vec![vec![1]]));

        // no solutions at all
        let set = solve_system(&uni_sys(&[0, 2, 3]), &Budget::default()).unwrap();
        assert!(set.is_empty());

        // all-zero coefficients, k = 2
        let set = solve_system(&uni_sys(&[0, 0, 0]), &Budget::default()).unwrap();
        assert_eq!(
            set.finite,
            vec![
                msup(vec![vec![0, 1]]),
                msup(vec![vec![0, 2]]),
                msup(vec![vec![1, 2]]),
            ]
        );
    }

    #[test]
    fn holonomicity_examples() {
        let b = Budget::default();
        assert!(!is_holonomic_system(&uni_sys(&[0, 1]), &b).unwrap());
        assert!(is_holonomic_system(&uni_sys(&[2, 0]), &b).unwrap());

        // one equation in two unknowns is never holonomic
        let p = Tlde::new(vec![vec![2, 0], vec![4, 1]]).unwrap();
        assert!(!is_holonomic_system(&TldeSystem::single(p), &b).unwrap());
    }

    #[test]
    fn duplicated_equation_changes_nothing() {
        let p = Tlde::new(vec![vec![2, 0], vec![2, 0]]).unwrap();
        let single = solve_system(&TldeSystem::single(p.clone()), &Budget::default()).unwrap();
        let doubled =
            solve_system(&TldeSystem::new(vec![p.clone(), p]).unwrap(), &Budget::default())
                .unwrap();
        assert_eq!(single, doubled);
    }

    #[test]
    fn genericity_examples() {
        // n = 1: a single permutation, nothing to collide
        assert!(is_generic(&uni_sys(&[2, 0])).unwrap());

        // two identical equations collide on the permutation sums
        let p = Tlde::new(vec![vec![2, 0], vec![5, 0]]).unwrap();
        let sigma = TldeSystem::new(vec![p.clone(), p]).unwrap();
        assert!(!is_generic(&sigma).unwrap());

        let wide = Tlde::new(vec![vec![2, 0], vec![5, 0]]).unwrap();
        assert!(is_generic(&TldeSystem::single(wide)).is_err());
    }

    #[test]
    fn regular_system_examples() {
        assert!(is_regular_system(&uni_sys(&[3, 2, 1, 0])));
        let p = Tlde::new(vec![vec![2, 0], vec![2, 0]]).unwrap();
        assert!(!is_regular_system(&TldeSystem::single(p)));
        let p = Tlde::new(vec![vec![0, 1], vec![5, 0]]).unwrap();
        assert!(!is_regular_system(&TldeSystem::single(p)));
    }

    #[test]
    fn solve_agrees_with_multi_unknown_structure() {
        let p = Tlde::new(vec![vec![2, 0], vec![2, 0]]).unwrap();
        let structural = multi_unknown::minimal_solutions_n(&p);
        let solved = solve_system(&TldeSystem::single(p), &Budget::default()).unwrap();
        assert_eq!(structural.finite, solved.finite);
        assert_eq!(structural.rays, solved.rays);
    }
}
