use super::{modinv, pow_u, vp_bigint, vp_rat, ValOrBound};
use crate::{Error, Rat, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

/// Precision sentinel for quantities known to be exactly zero.
const EXACT: i64 = i64::MAX / 4;

/// An element of `Q_p` known to a stated absolute precision.
///
/// A nonzero element is `unit * p^val` with `unit` a p-adic unit stored modulo
/// `p^(prec - val)`; the value is known modulo `p^prec`. `unit == None` means
/// the element vanishes to the full tracked precision. Arithmetic propagates
/// precision pessimistically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicNumber {
    p: u64,
    val: i64,
    unit: Option<BigUint>,
    prec: i64,
}

impl PAdicNumber {
    pub fn zero_at(p: u64, prec: i64) -> Self {
        PAdicNumber { p, val: 0, unit: None, prec }
    }

    pub fn exact_zero(p: u64) -> Self {
        PAdicNumber { p, val: 0, unit: None, prec: EXACT }
    }

    pub fn from_int(p: u64, n: &BigInt, prec: i64) -> Self {
        if n.is_zero() {
            return Self::exact_zero(p);
        }
        let v = vp_bigint(n, p) as i64;
        if v >= prec {
            return Self::zero_at(p, prec);
        }
        let rel = (prec - v) as u64;
        let m = pow_u(p, rel);
        let unit_int = n / BigInt::from(p).pow(v as u32);
        let mut u = unit_int % BigInt::from(m.clone());
        if u.is_negative() {
            u += BigInt::from(m);
        }
        PAdicNumber { p, val: v, unit: Some(u.to_biguint().unwrap()), prec }
    }

    pub fn from_rat(p: u64, r: &Rat, prec: i64) -> Self {
        if r.is_zero() {
            return Self::exact_zero(p);
        }
        let v = vp_rat(r, p).unwrap();
        if v >= prec {
            return Self::zero_at(p, prec);
        }
        let rel = (prec - v) as u64;
        let m = pow_u(p, rel);
        let pv_num = BigInt::from(p).pow(vp_bigint(r.numer(), p) as u32);
        let pv_den = BigInt::from(p).pow(vp_bigint(r.denom(), p) as u32);
        let num = r.numer() / pv_num;
        let den = r.denom() / pv_den;
        let mut nu = num % BigInt::from(m.clone());
        if nu.is_negative() {
            nu += BigInt::from(m.clone());
        }
        let du = den.to_biguint().unwrap() % &m;
        let unit = (nu.to_biguint().unwrap() * modinv(&du, &m)) % &m;
        PAdicNumber { p, val: v, unit: Some(unit), prec }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Absolute precision exponent.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_exact_zero(&self) -> bool {
        self.unit.is_none() && self.prec == EXACT
    }

    /// Zero at the tracked precision (includes exact zeros).
    pub fn is_zero_at_precision(&self) -> bool {
        self.unit.is_none()
    }

    pub fn valuation(&self) -> ValOrBound {
        match &self.unit {
            Some(_) => ValOrBound::exact_int(self.val),
            None if self.prec == EXACT => ValOrBound::Infinite,
            None => ValOrBound::exact_int(self.prec),
        }
    }

    pub fn valuation_bound(&self) -> ValOrBound {
        match &self.unit {
            Some(_) => ValOrBound::exact_int(self.val),
            None if self.prec == EXACT => ValOrBound::Infinite,
            None => ValOrBound::AtLeast(Rat::from_integer(BigInt::from(self.prec))),
        }
    }

    fn assert_same_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed primes in p-adic arithmetic");
    }

    /// Canonical representative in `[0, p^(prec - val))` of the unit part
    /// times `p^val`, as an integer when `val >= 0`.
    pub fn representative(&self) -> BigInt {
        match &self.unit {
            None => BigInt::zero(),
            Some(u) => {
                assert!(self.val >= 0, "representative of a non-integral element");
                BigInt::from(u.clone()) * BigInt::from(self.p).pow(self.val as u32)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_prime(other);
        let (a, b) = (self, other);
        match (&a.unit, &b.unit) {
            (None, None) => Self::zero_at_or_exact(a.p, a.prec.min(b.prec)),
            (None, Some(_)) => b.truncate(a.prec.min(b.prec)),
            (Some(_), None) => a.truncate(a.prec.min(b.prec)),
            (Some(ua), Some(ub)) => {
                let m = a.prec.min(b.prec);
                let v = a.val.min(b.val);
                if m <= v {
                    return Self::zero_at(a.p, m);
                }
                let digits = (m - v) as u64;
                let modulus = pow_u(a.p, digits);
                let ra = (ua * pow_u(a.p, (a.val - v) as u64)) % &modulus;
                let rb = (ub * pow_u(a.p, (b.val - v) as u64)) % &modulus;
                let s = (ra + rb) % &modulus;
                Self::from_shifted_residue(a.p, s, v, m)
            }
        }
    }

    fn zero_at_or_exact(p: u64, prec: i64) -> Self {
        if prec >= EXACT {
            Self::exact_zero(p)
        } else {
            Self::zero_at(p, prec)
        }
    }

    /// Build from a residue `s` of `x / p^shift` modulo `p^(prec - shift)`.
    fn from_shifted_residue(p: u64, s: BigUint, shift: i64, prec: i64) -> Self {
        if s.is_zero() {
            return Self::zero_at(p, prec);
        }
        let t = vp_bigint(&BigInt::from(s.clone()), p) as i64;
        let val = shift + t;
        if val >= prec {
            return Self::zero_at(p, prec);
        }
        let rel = (prec - val) as u64;
        let unit = (s / pow_u(p, t as u64)) % pow_u(p, rel);
        if unit.is_zero() {
            return Self::zero_at(p, prec);
        }
        PAdicNumber { p, val, unit: Some(unit), prec }
    }

    /// Lower the absolute precision to `prec` (no-op if already lower).
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        match &self.unit {
            None => Self::zero_at(self.p, prec),
            Some(u) => {
                if self.val >= prec {
                    return Self::zero_at(self.p, prec);
                }
                let rel = (prec - self.val) as u64;
                let unit = u % pow_u(self.p, rel);
                if unit.is_zero() {
                    return Self::zero_at(self.p, prec);
                }
                PAdicNumber { p: self.p, val: self.val, unit: Some(unit), prec }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match &self.unit {
            None => self.clone(),
            Some(u) => {
                let rel = (self.prec - self.val) as u64;
                let m = pow_u(self.p, rel);
                PAdicNumber {
                    p: self.p,
                    val: self.val,
                    unit: Some((&m - u % &m) % &m),
                    prec: self.prec,
                }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_prime(other);
        let (a, b) = (self, other);
        match (&a.unit, &b.unit) {
            (None, None) => Self::zero_at_or_exact(a.p, a.prec.saturating_add(b.prec)),
            (None, Some(_)) => Self::zero_at_or_exact(a.p, a.prec.saturating_add(b.val)),
            (Some(_), None) => Self::zero_at_or_exact(a.p, b.prec.saturating_add(a.val)),
            (Some(ua), Some(ub)) => {
                let rel = (a.prec - a.val).min(b.prec - b.val);
                let val = a.val + b.val;
                let m = pow_u(a.p, rel as u64);
                let unit = (ua % &m) * (ub % &m) % &m;
                PAdicNumber { p: a.p, val, unit: Some(unit), prec: val + rel }
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.unit {
            None => Err(Error::PrecisionExhausted { stage: "p-adic inversion of (apparent) zero" }),
            Some(u) => {
                let rel = self.prec - self.val;
                let m = pow_u(self.p, rel as u64);
                let unit = modinv(&(u % &m), &m);
                Ok(PAdicNumber { p: self.p, val: -self.val, unit: Some(unit), prec: -self.val + rel })
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Multiply by `p^k` (k may be negative); shifts valuation and precision.
    pub fn mul_pow_p(&self, k: i64) -> Self {
        match &self.unit {
            None => Self::zero_at_or_exact(self.p, self.prec.saturating_add(k)),
            Some(u) => PAdicNumber {
                p: self.p,
                val: self.val + k,
                unit: Some(u.clone()),
                prec: self.prec + k,
            },
        }
    }

    /// Congruence at the joint tracked precision.
    pub fn congruent(&self, other: &Self) -> bool {
        self.sub(other).is_zero_at_precision()
    }

    /// Parse the [`Self::to_json`] encoding back.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::BadConfig(format!("p-adic json: {m}"));
        let p = v["p"].as_u64().ok_or_else(|| bad("missing p"))?;
        let prec = match &v["prec"] {
            serde_json::Value::String(s) if s == "exact" => EXACT,
            serde_json::Value::Number(n) => n.as_i64().ok_or_else(|| bad("bad prec"))?,
            _ => return Err(bad("missing prec")),
        };
        if v["val"].is_null() {
            return Ok(PAdicNumber { p, val: 0, unit: None, prec });
        }
        let val = v["val"].as_i64().ok_or_else(|| bad("bad val"))?;
        let unit: BigUint = v["unit"]
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("bad unit"))?;
        Ok(PAdicNumber { p, val, unit: Some(unit), prec })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let prec = if self.prec == EXACT {
            serde_json::Value::String("exact".into())
        } else {
            serde_json::json!(self.prec)
        };
        match &self.unit {
            None => serde_json::json!({
                "p": self.p, "val": serde_json::Value::Null, "unit": "0", "prec": prec,
            }),
            Some(u) => serde_json::json!({
                "p": self.p, "val": self.val, "unit": u.to_string(), "prec": prec,
            }),
        }
    }
}

impl std::fmt::Display for PAdicNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.unit {
            None => write!(f, "O({}^{})", self.p, self.prec),
            Some(u) => write!(f, "{}*{}^{} + O({}^{})", u, self.p, self.val, self.p, self.prec),
        }
    }
}
