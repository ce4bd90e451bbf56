//! Truncated q-expansions over a pluggable coefficient ring, the V and U
//! operators, and eta-quotient Hauptmoduls for the genus-zero primes.

use crate::ring::{BigIntRing, RingCtx};
use crate::{Error, Result};
use num_bigint::BigInt;

/// Truncated q-expansion `c_0 + c_1 q + ... + c_{N-1} q^{N-1} + O(q^N)`.
///
/// Arithmetic never fabricates coefficients beyond the joint precision:
/// multiplication truncates to `min(N_a, N_b)`, V expands precision to
/// `p(N-1)+1`, U contracts it to `ceil(N/p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeries<R: RingCtx> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: RingCtx> QSeries<R> {
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "q-precision must be >= 1");
        QSeries { ring, coeffs }
    }

    pub fn zero(ring: R, prec: usize) -> Self {
        let coeffs = (0..prec).map(|_| ring.zero()).collect();
        Self::new(ring, coeffs)
    }

    pub fn one(ring: R, prec: usize) -> Self {
        let mut s = Self::zero(ring, prec);
        s.coeffs[0] = s.ring.one();
        s
    }

    pub fn from_fn(ring: R, prec: usize, mut f: impl FnMut(usize) -> R::Elem) -> Self {
        let coeffs = (0..prec).map(&mut f).collect();
        Self::new(ring, coeffs)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &R::Elem {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec >= 1);
        if prec >= self.prec() {
            return self.clone();
        }
        Self::new(self.ring.clone(), self.coeffs[..prec].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    /// Coefficientwise equality up to the joint q-precision.
    pub fn congruent(&self, other: &Self) -> bool {
        let n = self.prec().min(other.prec());
        self.coeffs[..n] == other.coeffs[..n]
    }

    pub fn map_coeffs<S: RingCtx>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> QSeries<S> {
        QSeries::new(ring, self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.prec().min(other.prec());
        Self::from_fn(self.ring.clone(), n, |i| {
            self.ring.add(&self.coeffs[i], &other.coeffs[i])
        })
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.ring.clone(),
            self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.prec().min(other.prec());
        let ring = &self.ring;
        let mut out: Vec<R::Elem> = (0..n).map(|_| ring.zero()).collect();
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if ring.is_zero(b) {
                    continue;
                }
                out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
            }
        }
        Self::new(ring.clone(), out)
    }

    pub fn mul_scalar(&self, s: &R::Elem) -> Self {
        Self::new(
            self.ring.clone(),
            self.coeffs.iter().map(|c| self.ring.mul(c, s)).collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.prec());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse: requires a unit constant term; satisfies
    /// `f * invert(f) = 1 + O(q^N)`.
    pub fn invert(&self) -> Result<Self> {
        let ring = &self.ring;
        let c0inv = ring.inv(&self.coeffs[0]).ok_or(Error::NonUnitConstantTerm)?;
        let n = self.prec();
        let mut out: Vec<R::Elem> = Vec::with_capacity(n);
        out.push(c0inv.clone());
        for m in 1..n {
            let mut acc = ring.zero();
            for k in 1..=m {
                if ring.is_zero(&self.coeffs[k]) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(&self.coeffs[k], &out[m - k]));
            }
            out.push(ring.neg(&ring.mul(&c0inv, &acc)));
        }
        Ok(Self::new(ring.clone(), out))
    }

    /// Frobenius `V`: `q -> q^p`; output precision `p(N-1)+1`.
    pub fn frobenius_v(&self, p: u64) -> Self {
        let p = p as usize;
        let n = p * (self.prec() - 1) + 1;
        Self::from_fn(self.ring.clone(), n, |i| {
            if i % p == 0 {
                self.coeffs[i / p].clone()
            } else {
                self.ring.zero()
            }
        })
    }

    /// Atkin `U`: takes every p-th coefficient; output precision `ceil(N/p)`.
    pub fn atkin_u(&self, p: u64) -> Self {
        let p = p as usize;
        let n = self.prec().div_ceil(p);
        Self::from_fn(self.ring.clone(), n, |i| self.coeffs[i * p].clone())
    }

    /// Multiply by `q^k` (drops the top `k` coefficients).
    pub fn shift_q(&self, k: usize) -> Self {
        let n = self.prec();
        Self::from_fn(self.ring.clone(), n, |i| {
            if i >= k {
                self.coeffs[i - k].clone()
            } else {
                self.ring.zero()
            }
        })
    }
}

/// `prod_{m>=1} (1 - q^(s m))^e` truncated to `prec`, by repeated sparse
/// multiplication; `order` controls the factor order (for the order-independence
/// check).
fn eta_like(prec: usize, stride: usize, e: u64, reversed: bool) -> QSeries<BigIntRing> {
    let mut coeffs = vec![BigInt::from(0); prec];
    coeffs[0] = BigInt::from(1);
    let ms: Vec<usize> = (1..).map(|m| m * stride).take_while(|&s| s < prec).collect();
    let apply = |coeffs: &mut Vec<BigInt>, m: usize| {
        for _ in 0..e {
            for i in (m..prec).rev() {
                let t = coeffs[i - m].clone();
                coeffs[i] -= t;
            }
        }
    };
    if reversed {
        for &m in ms.iter().rev() {
            apply(&mut coeffs, m);
        }
    } else {
        for &m in &ms {
            apply(&mut coeffs, m);
        }
    }
    QSeries::new(BigIntRing, coeffs)
}

/// The Hauptmodul `f_p = (eta(pz)/eta(z))^(24/(p-1))` for the genus-zero
/// primes 5, 7, 13 in scope: `q prod (1-q^(pn))^e (1-q^n)^(-e)` with
/// `e = 24/(p-1)`; integer coefficients, leading coefficient of `q` is 1.
pub fn hauptmodul(p: u64, prec: usize) -> Result<QSeries<BigIntRing>> {
    hauptmodul_ordered(p, prec, false)
}

pub fn hauptmodul_ordered(p: u64, prec: usize, reversed: bool) -> Result<QSeries<BigIntRing>> {
    if !matches!(p, 5 | 7 | 13) {
        return Err(Error::UnsupportedPrime(p));
    }
    let e = 24 / (p - 1);
    let num = eta_like(prec, p as usize, e, reversed);
    let den = eta_like(prec, 1, e, reversed);
    Ok(num.mul(&den.invert()?).shift_q(1))
}
