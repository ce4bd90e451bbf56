use super::{CycloRat, DirichletCharacter};
use crate::Rat;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Mutex;

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

static BERNOULLI_CACHE: Mutex<Vec<Rat>> = Mutex::new(Vec::new());

/// Bernoulli number `B_k` (convention `B_1 = -1/2`), via the standard
/// recurrence `sum_{j=0}^{k} C(k+1, j) B_j = 0`.
pub fn bernoulli(k: u64) -> Rat {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rat::one());
    }
    while (cache.len() as u64) <= k {
        let m = cache.len() as u64;
        let mut acc = Rat::zero();
        for (j, b) in cache.iter().enumerate() {
            acc += Rat::from_integer(binomial(m + 1, j as u64)) * b;
        }
        let next = -acc / Rat::from_integer(BigInt::from(m + 1));
        cache.push(next);
    }
    cache[k as usize].clone()
}

/// Bernoulli polynomial `B_k(x) = sum_i C(k, i) B_i x^(k-i)` evaluated at `x`.
pub fn bernoulli_polynomial_at(k: u64, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    let mut xpow = Rat::one();
    // iterate i = k down to 0 so that x powers build up from x^0
    for i in (0..=k).rev() {
        acc += Rat::from_integer(binomial(k, i)) * bernoulli(i) * &xpow;
        xpow *= x;
    }
    acc
}

/// Generalized Bernoulli number for an arbitrary modulus `f` and a value map,
/// `B_{k,chi} = f^(k-1) sum_{a=1}^{f} chi(a) B_k(a/f)`.
pub fn gen_bernoulli_with<F>(k: u64, f: u64, chi: F) -> CycloRat
where
    F: Fn(u64) -> CycloRat,
{
    assert!(f >= 1);
    let fr = Rat::from_integer(BigInt::from(f));
    let mut acc: Option<CycloRat> = None;
    for a in 1..=f {
        let x = Rat::from_integer(BigInt::from(a)) / &fr;
        let term = chi(a).mul_rat(&bernoulli_polynomial_at(k, &x));
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term),
        });
    }
    let mut fpow = Rat::one();
    for _ in 1..k {
        fpow *= &fr;
    }
    acc.unwrap().mul_rat(&fpow)
}

/// `B_{k,chi}` for a conductor-p^2 Dirichlet character.
pub fn gen_bernoulli(k: u64, chi: &DirichletCharacter) -> CycloRat {
    let f = chi.prime() * chi.prime();
    gen_bernoulli_with(k, f, |a| chi.eval(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn small_bernoulli_numbers() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(3), rat(0, 1));
    }

    #[test]
    fn bernoulli_polynomial_endpoints() {
        // B_k(0) = B_k, B_k(1) = B_k for k >= 2
        for k in [2u64, 4, 6, 8] {
            assert_eq!(bernoulli_polynomial_at(k, &rat(0, 1)), bernoulli(k));
            assert_eq!(bernoulli_polynomial_at(k, &rat(1, 1)), bernoulli(k));
        }
    }

    #[test]
    fn degenerate_modulus_reduces_to_bernoulli() {
        let b = gen_bernoulli_with(4, 1, |_| CycloRat::one(5));
        assert_eq!(b.as_rat().unwrap(), &bernoulli(4));
    }

    #[test]
    fn power_series_oracle_for_gen_bernoulli() {
        // B_{k,chi} is k! times the t^k coefficient of
        // sum_a chi(a) t e^(at) / (e^(ft) - 1).
        let chi = DirichletCharacter::from_generator_images(5, &[(7, 0), (6, 1)]).unwrap();
        let f = 25u64;
        let kmax = 6usize;
        // e^(ft) - 1 = t * g(t) with g_m = f^(m+1)/(m+1)!
        let mut g = vec![Rat::zero(); kmax + 1];
        let mut fact = Rat::one();
        let mut fpow = rat(f as i64, 1);
        for (m, gm) in g.iter_mut().enumerate() {
            fact *= rat(m as i64 + 1, 1);
            *gm = &fpow / &fact;
            fpow *= rat(f as i64, 1);
        }
        // numerator sum_a chi(a) e^(at), truncated
        let mut num = vec![CycloRat::zero(5); kmax + 1];
        for a in 1..=f {
            let ca = chi.eval(a);
            if ca.is_zero() {
                continue;
            }
            let mut fact = Rat::one();
            let mut apow = Rat::one();
            for (m, cell) in num.iter_mut().enumerate() {
                if m > 0 {
                    fact *= rat(m as i64, 1);
                }
                *cell = cell.add(&ca.mul_rat(&(&apow / &fact)));
                apow *= rat(a as i64, 1);
            }
        }
        // divide by g(t): series division over Q(zeta)
        let g0inv = g[0].recip();
        let mut quo = vec![CycloRat::zero(5); kmax + 1];
        for m in 0..=kmax {
            let mut acc = num[m].clone();
            for l in 1..=m {
                acc = acc.sub(&quo[m - l].mul_rat(&g[l]));
            }
            quo[m] = acc.mul_rat(&g0inv);
        }
        let mut kfact = Rat::one();
        for k in 1..=kmax as u64 {
            kfact *= rat(k as i64, 1);
            let oracle = quo[k as usize].mul_rat(&kfact);
            assert_eq!(gen_bernoulli(k, &chi), oracle, "k = {k}");
        }
    }
}
