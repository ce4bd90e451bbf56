use super::{binomial, pow_u, rat_mod_pk, vp_bigint, vp_rat, ValOrBound};
use crate::{Error, Rat, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Exact element of the cyclotomic field `Q(zeta_p)` in the power basis
/// `1, zeta, ..., zeta^(p-2)` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloRat {
    p: u64,
    coords: Vec<Rat>,
}

impl CycloRat {
    pub fn zero(p: u64) -> Self {
        CycloRat { p, coords: vec![Rat::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u64) -> Self {
        Self::from_rat(p, &Rat::one())
    }

    pub fn from_rat(p: u64, r: &Rat) -> Self {
        let mut coords = vec![Rat::zero(); (p - 1) as usize];
        coords[0] = r.clone();
        CycloRat { p, coords }
    }

    /// `zeta^e` for any integer exponent (taken mod p).
    pub fn zeta_pow(p: u64, e: i64) -> Self {
        let e = e.rem_euclid(p as i64) as u64;
        let mut coords = vec![Rat::zero(); (p - 1) as usize];
        if e < p - 1 {
            coords[e as usize] = Rat::one();
        } else {
            // zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
            for c in coords.iter_mut() {
                *c = -Rat::one();
            }
        }
        CycloRat { p, coords }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Rational part, if the element lies in `Q`.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed cyclotomic fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        CycloRat { p: self.p, coords }
    }

    pub fn neg(&self) -> Self {
        CycloRat { p: self.p, coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Normalize a length-p exponent vector (coefficients of `zeta^0..zeta^(p-1)`)
    /// back to the power basis using `1 + zeta + ... + zeta^(p-1) = 0`.
    fn from_exponent_vec(p: u64, mut v: Vec<Rat>) -> Self {
        debug_assert_eq!(v.len(), p as usize);
        let top = v.pop().unwrap();
        let coords = v.into_iter().map(|c| c - &top).collect();
        CycloRat { p, coords }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same(other);
        let p = self.p as usize;
        let mut acc = vec![Rat::zero(); p];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % p] += a * b;
            }
        }
        Self::from_exponent_vec(self.p, acc)
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        CycloRat { p: self.p, coords: self.coords.iter().map(|c| c * r).collect() }
    }

    /// Galois conjugate `zeta -> zeta^j` for `j` prime to `p`.
    pub fn conjugate(&self, j: u64) -> Self {
        assert!(j % self.p != 0);
        let p = self.p as usize;
        let mut acc = vec![Rat::zero(); p];
        for (i, a) in self.coords.iter().enumerate() {
            acc[(i * j as usize) % p] += a;
        }
        Self::from_exponent_vec(self.p, acc)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let mut prod = self.clone();
        for j in 2..self.p {
            prod = prod.mul(&self.conjugate(j));
        }
        prod.as_rat().expect("norm must be rational").clone()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let mut cof = CycloRat::one(self.p);
        for j in 2..self.p {
            cof = cof.mul(&self.conjugate(j));
        }
        let n = self.mul(&cof).as_rat().expect("norm must be rational").clone();
        Ok(cof.mul_rat(&n.recip()))
    }

    /// p-adic valuation, normalized with `v_p(p) = 1`; `None` for zero.
    /// The extension is totally ramified of degree p-1, so
    /// `v_p(x) = v_p(Norm(x)) / (p-1)`.
    pub fn valuation(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let v = vp_rat(&n, self.p).unwrap();
        Some(Rat::new(BigInt::from(v), BigInt::from(self.p - 1)))
    }

    pub fn valuation_bound(&self) -> ValOrBound {
        match self.valuation() {
            Some(v) => ValOrBound::Exact(v),
            None => ValOrBound::Infinite,
        }
    }

    /// Residue in `F_p` of a p-integral element (the residue field of the
    /// totally ramified extension is `F_p`; `zeta = 1 mod pi`).
    pub fn residue(&self) -> Result<u64> {
        let mut sum = Rat::zero();
        for c in &self.coords {
            if !c.is_zero() && vp_rat(c, self.p).unwrap() < 0 {
                return Err(Error::PrecisionExhausted { stage: "residue of non-integral element" });
            }
            sum += c;
        }
        if sum.is_zero() {
            return Ok(0);
        }
        if vp_rat(&sum, self.p).unwrap() > 0 {
            return Ok(0);
        }
        let r = rat_mod_pk(&sum, self.p, 1);
        Ok(r.to_u64_digits().first().copied().unwrap_or(0))
    }

    /// Embed a p-integral element into `Z_p[zeta]` in the pi-basis,
    /// substituting `zeta = 1 + pi`.
    pub fn to_pi_adic(&self, pi_prec: i64) -> CycloPAdicNumber {
        let p = self.p;
        let deg = (p - 1) as usize;
        let k = CycloPAdicNumber::coeff_digits(p, pi_prec);
        let mut coeffs = vec![BigUint::zero(); deg];
        // zeta^i = (1+pi)^i: degree <= p-2, no Eisenstein reduction needed
        for (kk, c) in coeffs.iter_mut().enumerate() {
            let mut acc = Rat::zero();
            for (i, a) in self.coords.iter().enumerate() {
                if i >= kk && !a.is_zero() {
                    acc += a * Rat::from_integer(binomial(i as u64, kk as u64));
                }
            }
            if !acc.is_zero() {
                *c = rat_mod_pk(&acc, p, k);
            }
        }
        CycloPAdicNumber { p, coeffs, pi_prec }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coords.iter().map(super::rat_to_json).collect())
    }
}

/// Element of `Z_p[zeta_p]` in the pi-basis (`pi = zeta - 1`), known modulo
/// `pi^pi_prec`. Coefficients are integers modulo `p^ceil(pi_prec/(p-1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloPAdicNumber {
    p: u64,
    coeffs: Vec<BigUint>,
    pi_prec: i64,
}

impl CycloPAdicNumber {
    fn coeff_digits(p: u64, pi_prec: i64) -> u64 {
        assert!(pi_prec > 0);
        (pi_prec as u64).div_ceil(p - 1)
    }

    pub fn zero_at(p: u64, pi_prec: i64) -> Self {
        CycloPAdicNumber { p, coeffs: vec![BigUint::zero(); (p - 1) as usize], pi_prec }
    }

    pub fn pi(p: u64, pi_prec: i64) -> Self {
        let mut x = Self::zero_at(p, pi_prec);
        x.coeffs[1] = BigUint::one();
        x
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn pi_precision(&self) -> i64 {
        self.pi_prec
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let pi_prec = self.pi_prec.min(other.pi_prec);
        let m = pow_u(self.p, Self::coeff_digits(self.p, pi_prec));
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % &m)
            .collect();
        CycloPAdicNumber { p: self.p, coeffs, pi_prec }
    }

    pub fn neg(&self) -> Self {
        let m = pow_u(self.p, Self::coeff_digits(self.p, self.pi_prec));
        let coeffs = self.coeffs.iter().map(|a| (&m - a % &m) % &m).collect();
        CycloPAdicNumber { p: self.p, coeffs, pi_prec: self.pi_prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let p = self.p;
        let deg = (p - 1) as usize;
        let pi_prec = self.pi_prec.min(other.pi_prec);
        let m = pow_u(p, Self::coeff_digits(p, pi_prec));
        let mut acc = vec![BigUint::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (&acc[i + j] + a * b) % &m;
            }
        }
        // Eisenstein relation: pi^(p-1) = -(C(p,1) + C(p,2) pi + ... + C(p,p-1) pi^(p-2))
        for d in (deg..2 * deg - 1).rev() {
            let c = std::mem::take(&mut acc[d]);
            if c.is_zero() {
                continue;
            }
            for j in 1..p {
                let bc = binomial(p, j).to_biguint().unwrap() % &m;
                let term = (&c * bc) % &m;
                let idx = d - deg + (j as usize - 1);
                acc[idx] = ((&acc[idx] + &m) - term % &m) % &m;
            }
        }
        acc.truncate(deg);
        CycloPAdicNumber { p, coeffs: acc, pi_prec }
    }

    /// Valuation (normalized `v_p(p) = 1`) read off from the leading nonzero
    /// pi-index: `v_pi(c_i pi^i) = (p-1) v_p(c_i) + i`, minimized over `i`.
    pub fn valuation(&self) -> ValOrBound {
        let p = self.p;
        let k = Self::coeff_digits(p, self.pi_prec);
        let mut best: Option<i64> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = vp_bigint(&BigInt::from(c.clone()), p);
            if v >= k {
                continue;
            }
            let cand = (p - 1) as i64 * v as i64 + i as i64;
            best = Some(best.map_or(cand, |b: i64| b.min(cand)));
        }
        match best {
            Some(v) if v < self.pi_prec => {
                ValOrBound::Exact(Rat::new(BigInt::from(v), BigInt::from(p - 1)))
            }
            _ => ValOrBound::AtLeast(Rat::new(BigInt::from(self.pi_prec), BigInt::from(p - 1))),
        }
    }

    pub fn is_zero_at_precision(&self) -> bool {
        !matches!(self.valuation(), ValOrBound::Exact(_))
    }
}
