//! Ring-object abstraction for pluggable series coefficients.
//!
//! Operations take the ring context explicitly so that context-dependent
//! coefficient types (p-adic numbers with a default embedding precision,
//! cyclotomic fields for a fixed p) fit the same interface as `Q` and `Z`.

use crate::arith::{CycloRat, PAdicNumber};
use crate::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub trait RingCtx: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse of a unit; `None` when `a` is not invertible
    /// (or not visibly so at its precision).
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Embed an exact rational; `None` when the denominator is not a unit.
    fn from_rat(&self, r: &Rat) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rat(&Rat::from_integer(BigInt::from(n))).unwrap()
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.from_rat(&Rat::from_integer(n.clone())).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatField;

impl RingCtx for RatField {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_rat(&self, r: &Rat) -> Option<Rat> {
        Some(r.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BigIntRing;

impl RingCtx for BigIntRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs() == BigInt::one()).then(|| a.clone())
    }
    fn from_rat(&self, r: &Rat) -> Option<BigInt> {
        r.denom().is_one().then(|| r.numer().clone())
    }
}

/// The cyclotomic field `Q(zeta_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycloField {
    pub p: u64,
}

impl RingCtx for CycloField {
    type Elem = CycloRat;

    fn zero(&self) -> CycloRat {
        CycloRat::zero(self.p)
    }
    fn one(&self) -> CycloRat {
        CycloRat::one(self.p)
    }
    fn add(&self, a: &CycloRat, b: &CycloRat) -> CycloRat {
        a.add(b)
    }
    fn neg(&self, a: &CycloRat) -> CycloRat {
        a.neg()
    }
    fn mul(&self, a: &CycloRat, b: &CycloRat) -> CycloRat {
        a.mul(b)
    }
    fn is_zero(&self, a: &CycloRat) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &CycloRat) -> Option<CycloRat> {
        a.inv().ok()
    }
    fn from_rat(&self, r: &Rat) -> Option<CycloRat> {
        Some(CycloRat::from_rat(self.p, r))
    }
}

/// `Q_p` with a default absolute precision for embedding exact scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PAdicRing {
    pub p: u64,
    /// Absolute precision used when embedding exact rationals.
    pub embed_prec: i64,
}

impl RingCtx for PAdicRing {
    type Elem = PAdicNumber;

    fn zero(&self) -> PAdicNumber {
        PAdicNumber::exact_zero(self.p)
    }
    fn one(&self) -> PAdicNumber {
        PAdicNumber::from_int(self.p, &BigInt::one(), self.embed_prec)
    }
    fn add(&self, a: &PAdicNumber, b: &PAdicNumber) -> PAdicNumber {
        a.add(b)
    }
    fn neg(&self, a: &PAdicNumber) -> PAdicNumber {
        a.neg()
    }
    fn mul(&self, a: &PAdicNumber, b: &PAdicNumber) -> PAdicNumber {
        a.mul(b)
    }
    fn is_zero(&self, a: &PAdicNumber) -> bool {
        a.is_zero_at_precision()
    }
    fn inv(&self, a: &PAdicNumber) -> Option<PAdicNumber> {
        a.inv().ok()
    }
    fn from_rat(&self, r: &Rat) -> Option<PAdicNumber> {
        Some(PAdicNumber::from_rat(self.p, r, self.embed_prec))
    }
}
