//! The conductor-25 counterexample: for `kappa = x^4 chi` with `chi(7) = 1`,
//! `chi(6) = zeta`, the t-expansion of `E*_kappa/V(E*_kappa)` has
//! `v_5(u_10) = 1`, far below the `(3/4) * 10` required if the overconvergence
//! constant could be taken to be 1.

use super::character_ratio;
use crate::arith::{rat, DirichletCharacter, ValOrBound};
use crate::forms::t_expand;
use crate::{Error, Rat, Result};

#[derive(Debug, Clone)]
pub struct CounterexampleReport {
    pub p: u64,
    pub k0: u64,
    pub chi_images: Vec<(u64, u64)>,
    /// `v_p(w(kappa))` (= 1/4 here).
    pub w_valuation: Rat,
    /// Exact valuations of `u_0..u_{count-1}`, in `(1/(p-1)) Z`.
    pub u_valuations: Vec<ValOrBound>,
    /// `v_5(u_10)`.
    pub observed: Rat,
    /// `(3/4) * 10`, the bound a constant of 1 would force.
    pub required_if_c_were_1: Rat,
    /// `observed < required`: the constant 1 is refuted.
    pub refutes: bool,
}

/// Run the counterexample computation over exact cyclotomic rationals.
/// `count` t-coefficients are produced (>= 11 needed to see `u_10`); `qprec`
/// must be at least `count`.
pub fn counterexample(p: u64, count: usize, qprec: usize) -> Result<CounterexampleReport> {
    if p != 5 {
        return Err(Error::UnsupportedPrime(p));
    }
    if count < 11 || qprec < count {
        return Err(Error::BadConfig("need count >= 11 and qprec >= count".into()));
    }
    let images = vec![(7u64, 0u64), (6, 1)];
    let chi = DirichletCharacter::from_generator_images(p, &images)?;
    let k0 = 4u64;
    let ratio = character_ratio(p, k0, &chi, qprec)?;
    let u = t_expand(p, &ratio, count)?;
    let u_valuations: Vec<ValOrBound> = u
        .iter()
        .map(|c| match c.valuation() {
            Some(v) => ValOrBound::Exact(v),
            None => ValOrBound::Infinite,
        })
        .collect();
    let observed = match &u_valuations[10] {
        ValOrBound::Exact(v) => v.clone(),
        _ => return Err(Error::PrecisionExhausted { stage: "counterexample u_10" }),
    };
    let required = rat(3, 4) * rat(10, 1);
    Ok(CounterexampleReport {
        p,
        k0,
        chi_images: images,
        w_valuation: rat(1, p as i64 - 1),
        refutes: observed < required,
        u_valuations,
        observed,
        required_if_c_were_1: required,
    })
}
