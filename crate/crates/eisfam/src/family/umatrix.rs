//! U_p matrices on powers of the Hauptmodul, their characteristic polynomials
//! and Newton-polygon slopes.
//!
//! With `U(t^i) = sum_j m_ij t^j` (weight 0) and `g_kappa` the t-expansion of
//! `E*_kappa/V(E*_kappa)`, the weight-kappa matrix in the scaled basis
//! `(ct)^j` has entries `c^{i-j} [t^j](g_kappa(t) sum_l m_il t^l)`
//! (Coleman's trick). The scaling is a diagonal conjugation, which leaves the
//! characteristic polynomial of any top-left truncation invariant, so slopes
//! are computed from the unscaled entries and the scaled entries are reported
//! through their valuations.

use super::{character_ratio, classical_ratio};
use crate::arith::{vp_rat, DirichletCharacter};
use crate::forms::t_expand;
use crate::qexp::{hauptmodul, QSeries};
use crate::ring::{BigIntRing, CycloField, RatField, RingCtx};
use crate::{Rat, Result};
use num_bigint::BigInt;

/// `m_ij = [t^j] U(f_p^i)` for `i, j < size`; integer entries, with
/// `m_ij = 0` for `j < ceil(i/p)`.
pub fn u_matrix_weight0(p: u64, size: usize) -> Result<Vec<Vec<BigInt>>> {
    let qprec = p as usize * size.max(1);
    let fp = hauptmodul(p, qprec)?;
    let mut pow = QSeries::one(BigIntRing, qprec);
    let mut rows = Vec::with_capacity(size);
    for i in 0..size {
        if i > 0 {
            pow = pow.mul(&fp);
        }
        rows.push(t_expand(p, &pow.atkin_u(p), size)?);
    }
    Ok(rows)
}

/// Unscaled weight-kappa entries `n_ij = [t^j](g_kappa(t) sum_l m_il t^l)`
/// from the weight-0 matrix and the t-coefficients of `g_kappa`.
fn twist_rows<R: RingCtx>(
    ring: &R,
    m: &[Vec<BigInt>],
    g: &[R::Elem],
    size: usize,
) -> Vec<Vec<R::Elem>> {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let mut acc = ring.zero();
                    for (l, mil) in m[i].iter().enumerate().take(j + 1) {
                        acc = ring.add(&acc, &ring.mul(&ring.from_bigint(mil), &g[j - l]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Weight-k matrix (classical `(p-1)|k`), unscaled, over `Q`.
pub fn u_matrix_weight_classical(p: u64, k: u64, size: usize) -> Result<Vec<Vec<Rat>>> {
    let m = u_matrix_weight0(p, size)?;
    let g = t_expand(p, &classical_ratio(p, k, size.max(1))?, size)?;
    Ok(twist_rows(&RatField, &m, &g, size))
}

/// Weight-`x^k0 chi` matrix, unscaled, over `Q(zeta_p)`.
pub fn u_matrix_weight_character(
    p: u64,
    k0: u64,
    chi: &DirichletCharacter,
    size: usize,
) -> Result<Vec<Vec<<CycloField as RingCtx>::Elem>>> {
    let m = u_matrix_weight0(p, size)?;
    let g = t_expand(p, &character_ratio(p, k0, chi, size.max(1))?, size)?;
    Ok(twist_rows(&CycloField { p }, &m, &g, size))
}

/// Characteristic polynomial `det(x I - M)` by Faddeev-LeVerrier, returned in
/// ascending powers (length `S + 1`, leading coefficient 1). Requires the
/// coefficient ring to contain `1/1..1/S`.
pub fn charpoly<R: RingCtx>(ring: &R, m: &[Vec<R::Elem>]) -> Vec<R::Elem> {
    let s = m.len();
    let mut coeffs = vec![ring.zero(); s + 1];
    coeffs[s] = ring.one();
    // N_1 = M; c_{S-k} = -tr(N_k)/k; N_{k+1} = M (N_k + c_{S-k} I)
    let mut nk = m.to_vec();
    for k in 1..=s {
        let mut tr = ring.zero();
        for (i, row) in nk.iter().enumerate() {
            tr = ring.add(&tr, &row[i]);
        }
        let c = ring.neg(&ring.mul(&tr, &ring.inv(&ring.from_i64(k as i64)).unwrap()));
        coeffs[s - k] = c.clone();
        if k == s {
            break;
        }
        let mut shifted = nk.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = ring.add(&row[i], &c);
        }
        let mut next = vec![vec![ring.zero(); s]; s];
        for i in 0..s {
            for j in 0..s {
                let mut acc = ring.zero();
                for (l, mi) in m[i].iter().enumerate() {
                    acc = ring.add(&acc, &ring.mul(mi, &shifted[l][j]));
                }
                next[i][j] = acc;
            }
        }
        nk = next;
    }
    coeffs
}

/// Newton-polygon slope data of a polynomial given by the valuations of its
/// ascending coefficients (`None` = coefficient zero; leading coefficient
/// must be nonzero).
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonSlopes {
    /// `(root valuation, multiplicity)` ascending in valuation.
    pub slopes: Vec<(Rat, usize)>,
    /// Number of roots of infinite valuation (vanishing trailing coefficients).
    pub infinite: usize,
}

pub fn newton_slopes(coeff_valuations: &[Option<Rat>]) -> NewtonSlopes {
    let deg = coeff_valuations.len() - 1;
    assert!(coeff_valuations[deg].is_some(), "leading coefficient must be nonzero");
    let m0 = coeff_valuations.iter().position(|v| v.is_some()).unwrap();
    // lower convex hull of (m, v_m) for m0 <= m <= deg, left to right
    let pts: Vec<(usize, Rat)> = coeff_valuations
        .iter()
        .enumerate()
        .filter_map(|(mm, v)| v.clone().map(|v| (mm, v)))
        .collect();
    let mut hull: Vec<(usize, Rat)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            // keep b only if it lies strictly below the chord a->pt
            let lhs = (&b.1 - &a.1) * Rat::from_integer(BigInt::from((pt.0 - a.0) as i64));
            let rhs = (&pt.1 - &a.1) * Rat::from_integer(BigInt::from((b.0 - a.0) as i64));
            if lhs < rhs {
                break;
            }
            hull.pop();
        }
        hull.push(pt);
    }
    let mut slopes: Vec<(Rat, usize)> = hull
        .windows(2)
        .map(|wnd| {
            let (m1, v1) = &wnd[0];
            let (m2, v2) = &wnd[1];
            ((v1 - v2) / Rat::from_integer(BigInt::from((m2 - m1) as i64)), m2 - m1)
        })
        .collect();
    // hull segments run from the constant coefficient upward, which lists
    // root valuations in descending order
    slopes.reverse();
    NewtonSlopes { slopes, infinite: m0 }
}

/// Slopes of the characteristic polynomial of a rational matrix.
pub fn rational_matrix_slopes(p: u64, m: &[Vec<Rat>]) -> NewtonSlopes {
    let cp = charpoly(&RatField, m);
    let vals: Vec<Option<Rat>> = cp
        .iter()
        .map(|c| vp_rat(c, p).map(|v| Rat::from_integer(BigInt::from(v))))
        .collect();
    newton_slopes(&vals)
}
