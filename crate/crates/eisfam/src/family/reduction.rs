//! Rescaled reduction of the t-coefficients at a wild character: reduce
//! `c_n = u_n w^{-gamma n}` modulo the maximal ideal of `Z_p[zeta_p]`.

use super::{character_ratio, d_of_c, c_prop34};
use crate::arith::{rat, CycloRat, DirichletCharacter};
use crate::forms::t_expand;
use crate::{Error, Rat, Result};
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub p: u64,
    pub k0: u64,
    pub chi_images: Vec<(u64, u64)>,
    pub gamma: Rat,
    pub w_valuation: Rat,
    /// Residues of `u_n w^{-gamma n}` in `F_p`; forced 0 when `gamma n` is
    /// not an integer (every term then has strictly positive valuation).
    pub residues: Vec<u64>,
    /// Exact valuations `v_p(u_n)` (`None` for `u_n = 0`).
    pub u_valuations: Vec<Option<Rat>>,
    /// Indices with `gamma n` non-integral where the positivity estimate
    /// `v(u_n) - gamma n v(w) > 0` failed to hold; must be empty.
    pub positivity_failures: Vec<usize>,
    /// `min_{n>0} v(u_n) / n`, the empirical best exponent.
    pub empirical_exponent: Option<Rat>,
}

/// Default exponent `gamma = d_p` built from the Prop 3.4 constant.
pub fn default_gamma(p: u64) -> Rat {
    d_of_c(p, &c_prop34(p))
}

/// Reduce the specialization at `kappa = x^k0 chi` (conductor p^2, so
/// `0 < v_p(w(kappa)) = 1/(p-1) < 1`).
pub fn rescaled_reduction(
    p: u64,
    k0: u64,
    chi: &DirichletCharacter,
    gamma: &Rat,
    count: usize,
) -> Result<ReductionReport> {
    if chi.prime() != p {
        return Err(Error::BadCharacter("character prime does not match p".into()));
    }
    if gamma.is_negative() || gamma.is_zero() {
        return Err(Error::BadConfig("gamma must be positive".into()));
    }
    let v_w = rat(1, p as i64 - 1);
    // w(kappa) = (1+p)^k0 zeta^e - 1
    let w = CycloRat::zeta_pow(p, chi.exponent_at_one_plus_p() as i64)
        .mul_rat(&Rat::from_integer(num_bigint::BigInt::from(p + 1).pow(k0 as u32)))
        .sub(&CycloRat::one(p));
    debug_assert_eq!(w.valuation(), Some(v_w.clone()));

    let ratio = character_ratio(p, k0, chi, count.max(1))?;
    let u = t_expand(p, &ratio, count)?;

    let mut residues = Vec::with_capacity(count);
    let mut u_valuations = Vec::with_capacity(count);
    let mut positivity_failures = Vec::new();
    let mut empirical: Option<Rat> = None;
    for (n, un) in u.iter().enumerate() {
        let v_un = un.valuation();
        if let (Some(v), true) = (&v_un, n > 0) {
            let e = v / rat(n as i64, 1);
            empirical = Some(match empirical.take() {
                Some(b) => b.min(e),
                None => e,
            });
        }
        let gn = gamma * rat(n as i64, 1);
        if gn.denom().is_one() {
            // integral twist: reduce u_n / w^{gamma n} exactly
            let e = gn.numer().to_u64().expect("gamma n fits in u64");
            let mut wpow = CycloRat::one(p);
            for _ in 0..e {
                wpow = wpow.mul(&w);
            }
            let x = un.mul(&wpow.inv()?);
            let r = match x.valuation() {
                None => 0,
                Some(v) if v > Rat::zero() => 0,
                Some(_) => x.residue()?,
            };
            residues.push(r);
        } else {
            // gamma n not an integer: check the positivity estimate, then 0
            let margin_ok = match &v_un {
                None => true,
                Some(v) => v - &gn * &v_w > Rat::zero(),
            };
            if !margin_ok {
                positivity_failures.push(n);
            }
            residues.push(0);
        }
        u_valuations.push(v_un);
    }
    Ok(ReductionReport {
        p,
        k0,
        chi_images: Vec::new(),
        gamma: gamma.clone(),
        w_valuation: v_w,
        residues,
        u_valuations,
        positivity_failures,
        empirical_exponent: empirical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(p: u64, e: u64) -> DirichletCharacter {
        DirichletCharacter::from_generator_images(p, &[(7, 0), (6, e)]).unwrap()
    }

    #[test]
    fn default_gamma_value() {
        assert_eq!(default_gamma(5), rat(11, 40));
    }

    #[test]
    fn reduction_vanishes_off_integral_twists() {
        let g = default_gamma(5);
        let rep = rescaled_reduction(5, 4, &chi(5, 1), &g, 13).unwrap();
        assert!(rep.positivity_failures.is_empty());
        assert_eq!(rep.residues[0], 1);
        // gamma = 11/40: gamma n integral only at n = 0 below 40
        for n in 1..13 {
            assert_eq!(rep.residues[n], 0, "n={n}");
        }
    }

    #[test]
    fn two_characters_reduce_identically() {
        let g = default_gamma(5);
        let a = rescaled_reduction(5, 4, &chi(5, 1), &g, 13).unwrap();
        let b = rescaled_reduction(5, 4, &chi(5, 2), &g, 13).unwrap();
        assert_eq!(a.residues, b.residues);
        assert!(b.positivity_failures.is_empty());
    }

    #[test]
    fn rejects_bad_gamma() {
        assert!(rescaled_reduction(5, 4, &chi(5, 1), &Rat::zero(), 5).is_err());
    }
}
