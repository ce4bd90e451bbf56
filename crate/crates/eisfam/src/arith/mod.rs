//! Exact rational arithmetic, bounded-precision p-adic numbers, the totally
//! ramified extension `Z_p[zeta_p]`, Dirichlet characters of conductor p^2 and
//! (generalized) Bernoulli numbers.

mod bernoulli;
mod character;
mod cyclo;
mod padic;

pub use bernoulli::{bernoulli, bernoulli_polynomial_at, binomial, gen_bernoulli, gen_bernoulli_with};
pub use character::DirichletCharacter;
pub use cyclo::{CycloPAdicNumber, CycloRat};
pub use padic::PAdicNumber;

use crate::Rat;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Valuation of a (possibly only partially known) p-adic quantity.
///
/// `Exact` is the valuation of a quantity that is nonzero at its tracked
/// precision; `AtLeast` records that the quantity vanishes to full known
/// precision; `Infinite` is reserved for quantities known to be exactly zero
/// (e.g. rational zeros in the exact-first pipeline).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValOrBound {
    Exact(Rat),
    AtLeast(Rat),
    Infinite,
}

impl ValOrBound {
    pub fn exact_int(v: i64) -> Self {
        ValOrBound::Exact(Rat::from_integer(BigInt::from(v)))
    }

    /// True when the valuation is certainly `>= bound`.
    pub fn certainly_at_least(&self, bound: &Rat) -> bool {
        match self {
            ValOrBound::Exact(v) | ValOrBound::AtLeast(v) => v >= bound,
            ValOrBound::Infinite => true,
        }
    }

    /// True when the valuation is certainly `< bound` (a definite violation).
    pub fn certainly_below(&self, bound: &Rat) -> bool {
        match self {
            ValOrBound::Exact(v) => v < bound,
            _ => false,
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            ValOrBound::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            ValOrBound::Exact(v) => rat_to_json(v),
            ValOrBound::AtLeast(v) => serde_json::json!({ "at_least": rat_to_json(v) }),
            ValOrBound::Infinite => serde_json::json!({ "infinite": true }),
        }
    }

    /// CSV cell encoding: exact values as `a/b` (or `a`), bounds as `>=P`.
    pub fn to_csv_cell(&self) -> String {
        match self {
            ValOrBound::Exact(v) => rat_display(v),
            ValOrBound::AtLeast(v) => format!(">={}", rat_display(v)),
            ValOrBound::Infinite => ">=inf".to_string(),
        }
    }
}

pub fn rat_to_json(r: &Rat) -> serde_json::Value {
    serde_json::json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
    })
}

pub fn rat_display(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// `w(k) = (1+p)^k - 1` as an exact integer.
pub fn w_of_k_int(p: u64, k: u64) -> BigInt {
    BigInt::from(p + 1).pow(k as u32) - BigInt::one()
}

/// `w(k) = (1+p)^k - 1` at the requested absolute precision.
pub fn w_of_k(p: u64, k: u64, prec: i64) -> PAdicNumber {
    PAdicNumber::from_int(p, &w_of_k_int(p, k), prec)
}

/// p-adic valuation of a nonzero big integer.
pub fn vp_bigint(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0u64;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// p-adic valuation of a rational; `None` for zero.
pub fn vp_rat(r: &Rat, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(vp_bigint(r.numer(), p) as i64 - vp_bigint(r.denom(), p) as i64)
}

/// Inverse of `a` modulo `m` (`m > 1`, `gcd(a, m) = 1`).
pub fn modinv(a: &BigUint, m: &BigUint) -> BigUint {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let e = a.extended_gcd(&m);
    assert!(e.gcd.is_one(), "modinv of a non-unit");
    let mut x = e.x % &m;
    if x.is_negative() {
        x += &m;
    }
    x.to_biguint().unwrap()
}

/// `p^k` as a `BigUint`.
pub fn pow_u(p: u64, k: u64) -> BigUint {
    BigUint::from(p).pow(k as u32)
}

/// Reduce a rational with p-unit denominator modulo `p^k`.
pub fn rat_mod_pk(r: &Rat, p: u64, k: u64) -> BigUint {
    let m = pow_u(p, k);
    let num = r.numer().mod_floor(&BigInt::from(m.clone())).to_biguint().unwrap();
    let den = r.denom().mod_floor(&BigInt::from(m.clone())).to_biguint().unwrap();
    assert!(
        !(r.denom().magnitude() % BigUint::from(p)).is_zero(),
        "denominator is not a p-unit"
    );
    (num * modinv(&den, &m)) % &m
}
