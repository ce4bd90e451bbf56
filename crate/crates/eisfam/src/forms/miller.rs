//! Victor Miller bases of level-1 modular forms and the blocks complementing
//! multiplication by `E_{p-1}`.

use super::{delta, dim_mk, eisenstein_level1};
use crate::qexp::QSeries;
use crate::ring::RatField;
use crate::Result;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// The block `B_i`: the Miller basis forms `g_{i,j}` of weight `i(p-1)` with
/// `dim M_{(i-1)(p-1)} <= j <= dim M_{i(p-1)} - 1` (possibly empty).
#[derive(Debug, Clone)]
pub struct MillerBlock {
    pub p: u64,
    pub i: u64,
    /// Leading q-index of the first form in the block.
    pub j_start: usize,
    pub forms: Vec<QSeries<RatField>>,
}

impl MillerBlock {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

fn basis_cache() -> &'static Mutex<HashMap<(u64, usize), Arc<Vec<QSeries<RatField>>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<Vec<QSeries<RatField>>>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Full Miller basis of weight `w` (even, != 2): `g_j = q^j + O(q^d)` for
/// `0 <= j < d = dim M_w`, built from `Delta^j E_4^a E_6^b` monomials and
/// reduced to echelon form. Results are memoized per `(w, prec)`.
pub fn full_miller_basis(w: u64, prec: usize) -> Arc<Vec<QSeries<RatField>>> {
    let d = dim_mk(w as i64) as usize;
    assert!(d > 0, "weight {w} has no forms");
    assert!(prec >= d, "q-precision must reach the dimension");
    if let Some(hit) = basis_cache().lock().unwrap().get(&(w, prec)) {
        return hit.clone();
    }

    let mut rows: Vec<QSeries<RatField>> = Vec::with_capacity(d);
    if w == 0 {
        rows.push(QSeries::one(RatField, prec));
    } else {
        let e4 = eisenstein_level1(4, prec).unwrap();
        let e6 = eisenstein_level1(6, prec).unwrap();
        let dl = delta(prec);
        for j in 0..d as u64 {
            let r = w - 12 * j;
            let b = if r % 4 == 0 { 0 } else { 1 };
            let a = (r - 6 * b) / 4;
            rows.push(dl.pow(j).mul(&e4.pow(a)).mul(&e6.pow(b)));
        }
    }
    // clear above-diagonal entries so g_j = q^j + O(q^d)
    for j in 1..d {
        for i in 0..j {
            let c = rows[i].coeff(j).clone();
            if !c.is_zero() {
                rows[i] = rows[i].sub(&rows[j].mul_scalar(&c));
            }
        }
    }
    let arc = Arc::new(rows);
    basis_cache().lock().unwrap().insert((w, prec), arc.clone());
    arc
}

/// The block `B_i` for the prime p at q-precision `prec`.
pub fn miller_basis(p: u64, i: u64, prec: usize) -> Result<MillerBlock> {
    if i == 0 {
        return Ok(MillerBlock {
            p,
            i,
            j_start: 0,
            forms: vec![QSeries::one(RatField, prec)],
        });
    }
    let w = i * (p - 1);
    let d = dim_mk(w as i64) as usize;
    let d_prev = dim_mk((w - (p - 1)) as i64) as usize;
    let forms = if d > d_prev {
        full_miller_basis(w, prec)[d_prev..d].to_vec()
    } else {
        Vec::new()
    };
    Ok(MillerBlock { p, i, j_start: d_prev, forms })
}
