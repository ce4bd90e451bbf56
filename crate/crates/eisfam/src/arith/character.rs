use super::{modinv, CycloRat};
use crate::{Error, Result};
use num_bigint::BigUint;


/// Dirichlet character of conductor `p^2`, trivial on the (p-1)st roots of
/// unity, so that its values lie in `mu_p`. Such a character is determined by
/// the exponent `e` with `chi(1+p) = zeta^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    p: u64,
    /// chi(1+p) = zeta^e, 1 <= e <= p-1 (e = 0 would drop the conductor to p).
    e: u64,
}

impl DirichletCharacter {
    /// Build from generator images, given as pairs `(g, t)` meaning
    /// `chi(g) = zeta^t`. Images must be consistent with the generator orders
    /// in `(Z/p^2)^*` and must determine a character of exact conductor p^2.
    pub fn from_generator_images(p: u64, images: &[(u64, u64)]) -> Result<Self> {
        assert!(p >= 5);
        let mut e: Option<u64> = None;
        for &(g, t) in images {
            if g % p == 0 {
                return Err(Error::BadCharacter(format!("generator {g} is divisible by {p}")));
            }
            let a = p_part_dlog(p, g);
            let t = t % p;
            if a == 0 {
                // g lies in the prime-to-p part, where chi is trivial
                if t != 0 {
                    return Err(Error::BadCharacter(format!(
                        "chi({g}) = zeta^{t} violates the order of {g} (trivial p-part)"
                    )));
                }
            } else {
                let ainv = modinv(&BigUint::from(a), &BigUint::from(p));
                let cand = (BigUint::from(t) * ainv % BigUint::from(p))
                    .to_u64_digits()
                    .first()
                    .copied()
                    .unwrap_or(0);
                match e {
                    None => e = Some(cand),
                    Some(prev) if prev != cand => {
                        return Err(Error::BadCharacter(
                            "generator images are mutually inconsistent".into(),
                        ))
                    }
                    _ => {}
                }
            }
        }
        match e {
            Some(e) if e != 0 => Ok(DirichletCharacter { p, e }),
            Some(_) => Err(Error::BadCharacter(
                "images define the trivial character; conductor is not p^2".into(),
            )),
            None => Err(Error::BadCharacter(
                "no generator with nontrivial p-part given; character underdetermined".into(),
            )),
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn conductor(&self) -> u64 {
        self.p * self.p
    }

    /// Exponent `e` with `chi(1+p) = zeta^e`.
    pub fn exponent_at_one_plus_p(&self) -> u64 {
        self.e
    }

    /// `chi(d)` as an exact element of `Z[zeta_p]`; zero when `p | d`.
    pub fn eval(&self, d: u64) -> CycloRat {
        if d % self.p == 0 {
            return CycloRat::zero(self.p);
        }
        let a = p_part_dlog(self.p, d);
        CycloRat::zeta_pow(self.p, (self.e * a % self.p) as i64)
    }

    pub fn eval_exponent(&self, d: u64) -> Option<u64> {
        if d % self.p == 0 {
            return None;
        }
        Some(self.e * p_part_dlog(self.p, d) % self.p)
    }
}

/// Discrete log of the `C_p`-part of `d` in `(Z/p^2)^*`: the unique
/// `a mod p` with `d = omega * (1+p)^a` for `omega` of order prime to p.
/// Uses `d^(p-1) = (1+p)^(a(p-1)) = 1 + a(p-1)p mod p^2`.
fn p_part_dlog(p: u64, d: u64) -> u64 {
    let p2 = p * p;
    let dp = BigUint::from(d % p2).modpow(&BigUint::from(p - 1), &BigUint::from(p2));
    let dp = dp.to_u64_digits().first().copied().unwrap_or(0);
    debug_assert_eq!(dp % p, 1);
    let u = (dp - 1) / p;
    let inv = modinv(&BigUint::from(p - 1), &BigUint::from(p));
    ((BigUint::from(u) * inv) % BigUint::from(p))
        .to_u64_digits()
        .first()
        .copied()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi_example() -> DirichletCharacter {
        // chi(7) = 1, chi(6) = zeta on (Z/25)^* = <7> x <6>
        DirichletCharacter::from_generator_images(5, &[(7, 0), (6, 1)]).unwrap()
    }

    #[test]
    fn generator_images() {
        let chi = chi_example();
        assert_eq!(chi.eval(7), CycloRat::one(5));
        assert_eq!(chi.eval(6), CycloRat::zeta_pow(5, 1));
        assert_eq!(chi.eval(1), CycloRat::one(5));
    }

    #[test]
    fn multiplicativity() {
        let chi = chi_example();
        // 36 = 6^2 mod 25
        assert_eq!(chi.eval(36), CycloRat::zeta_pow(5, 2));
        for a in 1..50u64 {
            for b in 1..20u64 {
                let lhs = chi.eval(a * b);
                let rhs = chi.eval(a).mul(&chi.eval(b));
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn vanishes_on_multiples_of_p() {
        assert!(chi_example().eval(10).is_zero());
    }

    #[test]
    fn inconsistent_images_rejected() {
        // 7 has trivial p-part, so chi(7) = zeta is impossible
        assert!(DirichletCharacter::from_generator_images(5, &[(7, 1), (6, 1)]).is_err());
        // trivial character is not conductor p^2
        assert!(DirichletCharacter::from_generator_images(5, &[(7, 0), (6, 0)]).is_err());
        // 6 and 36 must carry compatible exponents
        assert!(DirichletCharacter::from_generator_images(5, &[(6, 1), (36, 1)]).is_err());
        assert!(DirichletCharacter::from_generator_images(5, &[(6, 1), (36, 2)]).is_ok());
    }

    #[test]
    fn works_for_p7() {
        let chi = DirichletCharacter::from_generator_images(7, &[(8, 1)]).unwrap();
        assert_eq!(chi.eval(8), CycloRat::zeta_pow(7, 1));
        assert_eq!(chi.eval(8 * 8 % 49), CycloRat::zeta_pow(7, 2));
    }
}
