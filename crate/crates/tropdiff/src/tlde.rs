//! Tropical linear differential equations and square systems thereof.
//!
//! A TLDE in n unknowns of order k = (k_1, …, k_n) is the min-plus
//! expression  min_{j, 0≤i≤k_j} { a_{i,j} + u_j^{(i)} }  with integer
//! coefficients. Evaluating on a support tuple S substitutes
//! u_j^{(i)} ↦ val_{S_j}(i); S solves the equation when that minimum
//! tropically vanishes.

use thiserror::Error;

use crate::semiring::{vanishes, ExtInt};
use crate::support::MultiSupport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("a TLDE needs at least one unknown")]
    NoUnknowns,
    #[error("unknown {unknown}: order must be ≥ 1 (got {got} coefficients)")]
    OrderTooSmall { unknown: usize, got: usize },
    #[error("equation {eq}: order tuple differs from equation 0")]
    InconsistentOrders { eq: usize },
    #[error("a system needs at least one equation")]
    EmptySystem,
    #[error("operation requires a square system (m = n), got {m} equations in {n} unknowns")]
    NotSquare { m: usize, n: usize },
}

/// One TLDE. `coeffs[j][i]` is a_{i,j}, the coefficient of u_j^(i);
/// every coefficient is a finite integer and `coeffs[j]` has k_j + 1
/// entries with k_j ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tlde {
    coeffs: Vec<Vec<i64>>,
}

impl Tlde {
    pub fn new(coeffs: Vec<Vec<i64>>) -> Result<Self, ModelError> {
        if coeffs.is_empty() {
            return Err(ModelError::NoUnknowns);
        }
        for (j, block) in coeffs.iter().enumerate() {
            if block.len() < 2 {
                return Err(ModelError::OrderTooSmall {
                    unknown: j,
                    got: block.len(),
                });
            }
        }
        Ok(Tlde { coeffs })
    }

    /// Single-unknown equation from its coefficient vector (a_0, …, a_k).
    pub fn univariate(coeffs: Vec<i64>) -> Result<Self, ModelError> {
        Tlde::new(vec![coeffs])
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// k_j, the differential order in unknown j.
    pub fn order(&self, j: usize) -> i64 {
        (self.coeffs[j].len() - 1) as i64
    }

    pub fn orders(&self) -> Vec<i64> {
        (0..self.n()).map(|j| self.order(j)).collect()
    }

    pub fn coeff(&self, j: usize, i: i64) -> i64 {
        self.coeffs[j][i as usize]
    }

    pub fn coeffs(&self) -> &[Vec<i64>] {
        &self.coeffs
    }

    /// The block P_j viewed as a TLDE in the single unknown u_j.
    pub fn block(&self, j: usize) -> Tlde {
        Tlde {
            coeffs: vec![self.coeffs[j].clone()],
        }
    }

    /// The term list a_{i,j} + val_{S_j}(i) in (j, i) order.
    pub fn terms(&self, s: &MultiSupport) -> Vec<ExtInt> {
        assert_eq!(s.n(), self.n(), "arity mismatch");
        let mut out = Vec::with_capacity(self.coeffs.iter().map(|b| b.len()).sum());
        for (j, block) in self.coeffs.iter().enumerate() {
            let part = s.part(j);
            for (i, &a) in block.iter().enumerate() {
                out.push(part.val(i as i64) + a);
            }
        }
        out
    }

    /// trop_P(S): the minimum of the term list; ∞ exactly on the zero tuple.
    pub fn trop_eval(&self, s: &MultiSupport) -> ExtInt {
        self.terms(s).into_iter().min().unwrap()
    }

    /// S solves P when the evaluation vanishes tropically.
    pub fn is_solution(&self, s: &MultiSupport) -> bool {
        vanishes(&self.terms(s))
    }

    /// A_{α,j}(P) = trop_P(t_j^α) = min_{0≤i≤min(α,k_j)} { a_{i,j} + α − i }.
    ///
    /// Always finite since a_{0,j} is. For α ≥ k_j this grows by exactly 1
    /// per unit of α.
    pub fn a_val(&self, j: usize, alpha: i64) -> i64 {
        assert!(alpha >= 0, "a_val: negative exponent");
        let top = alpha.min(self.order(j));
        (0..=top)
            .map(|i| self.coeff(j, i) + alpha - i)
            .min()
            .unwrap()
    }

    /// Whether the minimum defining A_{α,j}(P) is attained at ≥ 2 indices,
    /// i.e. whether the monomial t_j^α solves P.
    pub fn a_val_attained_twice(&self, j: usize, alpha: i64) -> bool {
        let top = alpha.min(self.order(j));
        crate::semiring::min_attained_twice((0..=top).map(|i| self.coeff(j, i) + alpha - i))
    }

    /// Coefficient spread max a − min a, used for search-box sizing.
    pub fn spread(&self) -> i64 {
        let all = self.coeffs.iter().flatten();
        let max = all.clone().max().unwrap();
        let min = all.min().unwrap();
        max - min
    }
}

/// A system of m TLDEs sharing the unknown count and order tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TldeSystem {
    eqs: Vec<Tlde>,
}

impl TldeSystem {
    pub fn new(eqs: Vec<Tlde>) -> Result<Self, ModelError> {
        if eqs.is_empty() {
            return Err(ModelError::EmptySystem);
        }
        let orders = eqs[0].orders();
        for (l, eq) in eqs.iter().enumerate().skip(1) {
            if eq.orders() != orders {
                return Err(ModelError::InconsistentOrders { eq: l });
            }
        }
        Ok(TldeSystem { eqs })
    }

    pub fn single(eq: Tlde) -> Self {
        TldeSystem { eqs: vec![eq] }
    }

    pub fn m(&self) -> usize {
        self.eqs.len()
    }

    pub fn n(&self) -> usize {
        self.eqs[0].n()
    }

    pub fn orders(&self) -> Vec<i64> {
        self.eqs[0].orders()
    }

    pub fn eqs(&self) -> &[Tlde] {
        &self.eqs
    }

    pub fn eq(&self, l: usize) -> &Tlde {
        &self.eqs[l]
    }

    pub fn is_square(&self) -> bool {
        self.m() == self.n()
    }

    /// S solves the system when it solves every member equation.
    pub fn is_solution(&self, s: &MultiSupport) -> bool {
        self.eqs.iter().all(|eq| eq.is_solution(s))
    }

    pub fn spread(&self) -> i64 {
        let all = self.eqs.iter().flat_map(|e| e.coeffs.iter().flatten());
        let max = all.clone().max().unwrap();
        let min = all.min().unwrap();
        max - min
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Finite, Infinity};
    use crate::support::{MultiSupport, Support};

    fn uni(coeffs: &[i64]) -> Tlde {
        Tlde::univariate(coeffs.to_vec()).unwrap()
    }

    fn msup(parts: Vec<Vec<i64>>) -> MultiSupport {
        MultiSupport::new(parts.into_iter().map(Support::new).collect())
    }

    #[test]
    fn trop_eval_examples() {
        // P = min{0 + u, 1 + u'}, S = {1}: terms {0+1, 1+0} → 1
        assert_eq!(uni(&[0, 1]).trop_eval(&msup(vec![vec![1]])), Finite(1));
        // the zero tuple is the only support evaluating to ∞
        assert_eq!(uni(&[0, 1]).trop_eval(&MultiSupport::zero(1)), Infinity);
        // P = min{2 + u, 0 + u'}, S = {0,3}: terms {2+0, 0+2} → 2
        assert_eq!(uni(&[2, 0]).trop_eval(&msup(vec![vec![0, 3]])), Finite(2));
    }

    #[test]
    fn is_solution_examples() {
        // {q}, q ≥ 1 solves min{0 + u, 1 + u'}
        for q in 1..6 {
            assert!(uni(&[0, 1]).is_solution(&msup(vec![vec![q]])));
        }
        // terms {1, 0}: unique minimum
        assert!(!uni(&[0, 0]).is_solution(&msup(vec![vec![1]])));
        // {0, a_0 − a_1 + 1} for a = (2, 0)
        assert!(uni(&[2, 0]).is_solution(&msup(vec![vec![0, 3]])));
        // the all-empty tuple always solves
        assert!(uni(&[2, 0]).is_solution(&MultiSupport::zero(1)));
    }

    #[test]
    fn a_val_examples() {
        // increasing coefficients: A_α = α + a_0
        assert_eq!(uni(&[0, 2, 4]).a_val(0, 3), 3);
        // decreasing coefficients: A_α = a_α on [0, k]
        assert_eq!(uni(&[3, 2, 1, 0]).a_val(0, 2), 1);
        // α = 0 only sees the i = 0 term
        assert_eq!(uni(&[7, -3]).a_val(0, 0), 7);
    }

    #[test]
    fn a_val_shift_linearity_beyond_order() {
        let p = uni(&[1, -2, 5, 0]);
        let k = p.order(0);
        for alpha in k..k + 6 {
            assert_eq!(p.a_val(0, alpha + 1), p.a_val(0, alpha) + 1);
        }
    }

    #[test]
    fn homomorphism_and_solution_closure() {
        // trop_P(S ∪ T) = min(trop_P(S), trop_P(T)) on small supports,
        // hence solutions are closed under union.
        let p = Tlde::new(vec![vec![1, 0], vec![2, -1, 3]]).unwrap();
        let supports: Vec<MultiSupport> = (0u32..32)
            .flat_map(|m1| (0u32..32).map(move |m2| (m1, m2)))
            .map(|(m1, m2)| {
                let pick = |mask: u32| {
                    Support::new((0..5).filter(|i| mask >> i & 1 == 1).collect())
                };
                MultiSupport::new(vec![pick(m1), pick(m2)])
            })
            .collect();
        for s in supports.iter().step_by(7) {
            for t in supports.iter().step_by(11) {
                let u = s.union(t);
                assert_eq!(p.trop_eval(&u), p.trop_eval(s).min(p.trop_eval(t)));
                if p.is_solution(s) && p.is_solution(t) {
                    assert!(p.is_solution(&u));
                }
            }
        }
    }

    #[test]
    fn system_shape_checks() {
        let p = Tlde::new(vec![vec![0, 1], vec![1, 2]]).unwrap();
        let q = Tlde::new(vec![vec![0, 1, 2], vec![1, 2]]).unwrap();
        assert_eq!(
            TldeSystem::new(vec![p.clone(), q]),
            Err(ModelError::InconsistentOrders { eq: 1 })
        );
        assert!(TldeSystem::new(vec![p.clone(), p]).is_ok());
        assert_eq!(Tlde::new(vec![vec![3]]), Err(ModelError::OrderTooSmall { unknown: 0, got: 1 }));
    }
}
