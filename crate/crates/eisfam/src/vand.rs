//! Inverse-Vandermonde valuation combinatorics and the precision-tracked
//! linear solver behind the family interpolation.
//!
//! The inverse is computed from elementary symmetric polynomials with exact
//! integer numerators and product-of-differences denominators, so the exact
//! denominator valuation of every row is known and yields per-entry precision
//! guarantees sharper than the blanket `f(n)` bound.

use crate::arith::{vp_bigint, PAdicNumber};
use crate::{Error, Rat, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `f(n) = sum_i floor((n-1) / ((p-1) p^(i-1)))`; the sum is finite.
pub fn f_bound(p: u64, n: u64) -> u64 {
    assert!(n >= 1);
    let mut acc = 0u64;
    let mut d = p - 1;
    while d <= n - 1 {
        acc += (n - 1) / d;
        d = d.saturating_mul(p);
    }
    acc
}

/// Pairwise-distinct interpolation nodes, prime to p (units of `Z_p`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    p: u64,
    nodes: Vec<BigInt>,
}

impl NodeSet {
    pub fn new(p: u64, nodes: Vec<BigInt>) -> Result<Self> {
        for (i, a) in nodes.iter().enumerate() {
            if (a % BigInt::from(p)).is_zero() {
                return Err(Error::BadConfig(format!("node {a} is not a unit at {p}")));
            }
            if nodes[..i].contains(a) {
                return Err(Error::CoincidentNodes);
            }
        }
        Ok(NodeSet { p, nodes })
    }

    /// The first `n` naturals prime to p; realizes `max_x v(S,x) = f(n)`.
    pub fn optimal(p: u64, n: u64) -> Self {
        let nodes = (1u64..)
            .filter(|m| m % p != 0)
            .take(n as usize)
            .map(BigInt::from)
            .collect();
        NodeSet { p, nodes }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[BigInt] {
        &self.nodes
    }

    /// `v(S,x) = v_p(prod_{s != x} (x - s))` for `x` the `idx`-th node.
    pub fn v_at_index(&self, idx: usize) -> u64 {
        let x = &self.nodes[idx];
        self.nodes
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != idx)
            .map(|(_, s)| vp_bigint(&(x - s), self.p))
            .sum()
    }

    /// `v(S,x)` for a node given by value; errors when `x` is not in the set.
    pub fn v_at(&self, x: &BigInt) -> Result<u64> {
        let idx = self
            .nodes
            .iter()
            .position(|s| s == x)
            .ok_or_else(|| Error::NodeNotInSet(x.to_string()))?;
        Ok(self.v_at_index(idx))
    }

    /// `max_x v(S,x)`, the worst-row denominator valuation.
    pub fn max_v(&self) -> u64 {
        (0..self.len()).map(|i| self.v_at_index(i)).max().unwrap_or(0)
    }

    /// Exact rational inverse of the Vandermonde matrix `V(x_0..x_{n-1})`.
    ///
    /// Entry `(i, j)` is the coefficient of `T^i` in `prod_{l != j} (T - x_l)`
    /// divided by `prod_{l != j} (x_j - x_l)` (the elementary-symmetric-
    /// polynomial formula), so `b = V^{-1} y` interpolates `y` at the nodes.
    pub fn inverse_vandermonde_exact(&self) -> Vec<Vec<Rat>> {
        let n = self.len();
        assert!(n >= 1);
        // P(T) = prod (T - x_i), ascending powers
        let mut poly = vec![BigInt::one()];
        for x in &self.nodes {
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= x * c;
            }
            poly = next;
        }
        let mut out = vec![vec![Rat::zero(); n]; n];
        for j in 0..n {
            let xj = &self.nodes[j];
            // synthetic division: Q_j(T) = P(T) / (T - x_j)
            let mut q = vec![BigInt::zero(); n];
            let mut carry = poly[n].clone();
            for i in (0..n).rev() {
                q[i] = carry.clone();
                carry = &poly[i] + xj * &carry;
            }
            debug_assert!(carry.is_zero(), "x_j must be a root of P");
            let mut denom = BigInt::one();
            for (l, xl) in self.nodes.iter().enumerate() {
                if l != j {
                    denom *= xj - xl;
                }
            }
            for (i, qi) in q.into_iter().enumerate() {
                out[i][j] = Rat::new(qi, denom.clone());
            }
        }
        out
    }

    /// The inverse reduced p-adically at absolute precision `m`.
    pub fn inverse_vandermonde(&self, m: i64) -> Vec<Vec<PAdicNumber>> {
        self.inverse_vandermonde_exact()
            .iter()
            .map(|row| row.iter().map(|e| PAdicNumber::from_rat(self.p, e, m)).collect())
            .collect()
    }
}

/// Solution of `V b = y` with per-entry guaranteed precision.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub solution: Vec<PAdicNumber>,
    /// `M - (exact max valuation loss of the corresponding inverse row)`.
    pub guaranteed_precision: Vec<i64>,
}

/// The exact inverse together with its per-row valuation losses, reusable
/// across many right-hand sides over the same nodes.
pub struct PreparedSolver {
    p: u64,
    inverse: Vec<Vec<Rat>>,
    losses: Vec<i64>,
    max_loss: i64,
}

impl PreparedSolver {
    pub fn new(nodes: &NodeSet) -> Self {
        let p = nodes.prime();
        let inverse = nodes.inverse_vandermonde_exact();
        let n = nodes.len();
        let mut losses = vec![0i64; n];
        for (i, row) in inverse.iter().enumerate() {
            for e in row {
                if let Some(v) = crate::arith::vp_rat(e, p) {
                    losses[i] = losses[i].max(-v);
                }
            }
        }
        let max_loss = losses.iter().copied().max().unwrap_or(0);
        PreparedSolver { p, inverse, losses, max_loss }
    }

    /// Worst-row loss (equals `f(n)` for an optimal node set).
    pub fn max_loss(&self) -> i64 {
        self.max_loss
    }

    pub fn row_losses(&self) -> &[i64] {
        &self.losses
    }

    /// Solve `V b = y` for `y` known modulo `p^M` (M = min input precision).
    /// Rows whose guaranteed precision is `<= 0` are flagged by the per-entry
    /// precision (never silently returned as data); the call errors only when
    /// every row is exhausted.
    pub fn solve(&self, values: &[PAdicNumber]) -> Result<SolveResult> {
        let n = self.inverse.len();
        assert_eq!(values.len(), n, "|values| must equal |nodes|");
        let p = self.p;
        let m = values.iter().map(|v| v.precision()).min().unwrap();
        let embed_prec = m + self.max_loss + 4;
        let mut solution = Vec::with_capacity(n);
        let mut guaranteed = Vec::with_capacity(n);
        for (i, row) in self.inverse.iter().enumerate() {
            let mut acc = PAdicNumber::exact_zero(p);
            for (e, y) in row.iter().zip(values) {
                acc = acc.add(&PAdicNumber::from_rat(p, e, embed_prec).mul(&y.truncate(m)));
            }
            let g = m - self.losses[i];
            solution.push(acc.truncate(g.max(acc.precision().min(g))));
            guaranteed.push(g);
        }
        if guaranteed.iter().all(|&g| g <= 0) {
            return Err(Error::PrecisionExhausted { stage: "vandermonde solve" });
        }
        Ok(SolveResult { solution, guaranteed_precision: guaranteed })
    }
}

/// One-shot convenience wrapper around [`PreparedSolver`].
pub fn solve_with_precision(nodes: &NodeSet, values: &[PAdicNumber]) -> Result<SolveResult> {
    PreparedSolver::new(nodes).solve(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use rand::{Rng, SeedableRng};

    #[test]
    fn f_bound_examples() {
        assert_eq!(f_bound(5, 1), 0);
        assert_eq!(f_bound(5, 5), 1); // floor(4/4) + floor(4/20)
        assert_eq!(f_bound(5, 21), 6); // floor(20/4) + floor(20/20)
        assert_eq!(f_bound(7, 7), 1);
    }

    #[test]
    fn f_bound_linear_upper_bound() {
        // f(n) <= (n-1) p / (p-1)^2, exact rational comparison
        for p in [5u64, 7, 13] {
            for n in 1..=10_000u64 {
                let lhs = rat(f_bound(p, n) as i64, 1);
                let rhs = rat((n as i64 - 1) * p as i64, ((p - 1) * (p - 1)) as i64);
                assert!(lhs <= rhs, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn v_s_x_examples() {
        let s = NodeSet::new(5, vec![BigInt::from(1), BigInt::from(2)]).unwrap();
        assert_eq!(s.v_at(&BigInt::from(1)).unwrap(), 0);
        let s = NodeSet::new(5, vec![BigInt::from(1), BigInt::from(6)]).unwrap();
        assert_eq!(s.v_at(&BigInt::from(1)).unwrap(), 1);
        let s = NodeSet::optimal(5, 4);
        assert_eq!(s.max_v(), 0);
        assert_eq!(f_bound(5, 4), 0);
        assert!(s.v_at(&BigInt::from(9)).is_err());
    }

    #[test]
    fn optimal_set_skips_multiples() {
        assert_eq!(
            NodeSet::optimal(5, 5).nodes(),
            &[1, 2, 3, 4, 6].map(BigInt::from)
        );
        let s = NodeSet::optimal(7, 7);
        assert_eq!(s.nodes().last().unwrap(), &BigInt::from(8));
        assert_eq!(s.max_v(), f_bound(7, 7));
    }

    #[test]
    fn optimal_sets_attain_f() {
        for p in [5u64, 7, 13] {
            for n in 1..=40 {
                assert_eq!(NodeSet::optimal(p, n).max_v(), f_bound(p, n), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn random_subsets_respect_lower_bound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20240817);
        for p in [5u64, 7, 13] {
            for _ in 0..200 {
                let n = rng.gen_range(1..=12usize);
                let mut nodes = Vec::new();
                while nodes.len() < n {
                    let c = BigInt::from(rng.gen_range(1..=10_000u64));
                    if (&c % BigInt::from(p)).is_zero() || nodes.contains(&c) {
                        continue;
                    }
                    nodes.push(c);
                }
                let s = NodeSet::new(p, nodes).unwrap();
                assert!(s.max_v() >= f_bound(p, n as u64));
            }
        }
    }

    #[test]
    fn two_by_two_inverse() {
        let s = NodeSet::new(7, vec![BigInt::from(1), BigInt::from(2)]).unwrap();
        let inv = s.inverse_vandermonde_exact();
        assert_eq!(inv[0], vec![rat(2, 1), rat(-1, 1)]);
        assert_eq!(inv[1], vec![rat(-1, 1), rat(1, 1)]);
        let s1 = NodeSet::new(7, vec![BigInt::from(3)]).unwrap();
        assert_eq!(s1.inverse_vandermonde_exact(), vec![vec![rat(1, 1)]]);
    }

    #[test]
    fn inverse_times_vandermonde_is_identity() {
        let s = NodeSet::optimal(5, 6);
        let inv = s.inverse_vandermonde_exact();
        let n = s.len();
        for i in 0..n {
            for j in 0..n {
                // (V^-1 V)_{ij} = sum_k inv[i][k] x_k^i ... careful: V_{kj} = x_k^j
                let mut acc = Rat::zero();
                for (k, x) in s.nodes().iter().enumerate() {
                    let mut xp = Rat::one();
                    for _ in 0..j {
                        xp *= Rat::from_integer(x.clone());
                    }
                    acc += &inv[i][k] * xp;
                }
                let expect = if i == j { Rat::one() } else { Rat::zero() };
                assert_eq!(acc, expect, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn inverse_entry_valuations_bounded() {
        // Prop 3.3(a): entries have valuation >= -max_v, and >= -f(n) on
        // optimal sets.
        for p in [5u64, 7] {
            for n in 1..=12u64 {
                let s = NodeSet::optimal(p, n);
                let bound = -(s.max_v() as i64);
                assert_eq!(bound, -(f_bound(p, n) as i64));
                for row in s.inverse_vandermonde_exact() {
                    for e in &row {
                        if let Some(v) = crate::arith::vp_rat(e, p) {
                            assert!(v >= bound);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn solve_recovers_basis_vectors() {
        let s = NodeSet::optimal(5, 5);
        let p = 5u64;
        let m = 20i64;
        for k in 0..s.len() {
            // y = V e_k, i.e. y_i = x_i^k
            let values: Vec<PAdicNumber> = s
                .nodes()
                .iter()
                .map(|x| PAdicNumber::from_int(p, &x.pow(k as u32), m))
                .collect();
            let r = solve_with_precision(&s, &values).unwrap();
            for (j, b) in r.solution.iter().enumerate() {
                let expect = if j == k { 1 } else { 0 };
                assert!(b.congruent(&PAdicNumber::from_int(p, &BigInt::from(expect), r.guaranteed_precision[j])));
            }
        }
    }

    #[test]
    fn solve_roundtrip_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let p = 5u64;
        let m = 20i64;
        for n in [3usize, 5, 7] {
            let s = NodeSet::optimal(p, n as u64);
            let b: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-500..=500i64))).collect();
            let values: Vec<PAdicNumber> = s
                .nodes()
                .iter()
                .map(|x| {
                    let mut acc = BigInt::zero();
                    let mut xp = BigInt::one();
                    for bj in &b {
                        acc += bj * &xp;
                        xp *= x;
                    }
                    PAdicNumber::from_int(p, &acc, m)
                })
                .collect();
            let r = solve_with_precision(&s, &values).unwrap();
            for (j, bj) in b.iter().enumerate() {
                let g = r.guaranteed_precision[j];
                assert!(g >= m - f_bound(p, n as u64) as i64);
                assert!(r
                    .solution[j]
                    .congruent(&PAdicNumber::from_int(p, bj, g)));
            }
        }
    }

    #[test]
    fn all_precision_lost_is_an_error() {
        let s = NodeSet::new(5, vec![BigInt::from(1), BigInt::from(1 + 5u64.pow(8) as i64)]).unwrap();
        let values: Vec<PAdicNumber> = s
            .nodes()
            .iter()
            .map(|x| PAdicNumber::from_int(5, x, 4))
            .collect();
        assert!(matches!(
            solve_with_precision(&s, &values),
            Err(Error::PrecisionExhausted { .. })
        ));
    }
}
