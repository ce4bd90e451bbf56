//! Decomposition along the Katz basis `h_{i,j} = g_{i,j} E_{p-1}^{-i}` and
//! along powers of the Hauptmodul.

use super::{dim_mk, eisenstein_level1, miller_basis};
use crate::arith::ValOrBound;
use crate::qexp::{hauptmodul, QSeries};
use crate::ring::{RatField, RingCtx};
use crate::{Error, Result};

/// Precomputed Katz basis `{h_{i,j}}` for `0 <= i <= depth` over `Q`.
///
/// The leading indices `j` tile `0..T` with `T = dim M_{depth(p-1)}`, and the
/// change of basis from q-coefficients is unipotent upper-triangular, so a
/// modular function of weight 0 known to `O(q^T)` decomposes uniquely by back
/// substitution — over any coefficient ring the rational basis embeds into.
pub struct KatzBasis {
    p: u64,
    depth: u64,
    total: usize,
    /// `(i, j_start, forms)` per block, ascending in `i`; empty blocks kept.
    blocks: Vec<(u64, usize, Vec<QSeries<RatField>>)>,
}

/// Coordinates of one block `B_i` of a Katz expansion.
#[derive(Debug, Clone)]
pub struct KatzBlockCoords<E> {
    pub i: u64,
    pub j_start: usize,
    pub coords: Vec<E>,
}

/// A finite Katz expansion `sum_i b_i E_{p-1}^{-i}` with `b_i` recorded in
/// coordinates along the Miller block `B_i`.
#[derive(Debug, Clone)]
pub struct KatzExpansion<E> {
    pub p: u64,
    pub blocks: Vec<KatzBlockCoords<E>>,
}

impl<E> KatzExpansion<E> {
    /// Valuation profile `i -> v(b_i)`, taking the minimum over the block's
    /// coordinates; empty blocks report `Infinite`.
    pub fn valuation_profile(&self, val: impl Fn(&E) -> ValOrBound) -> Vec<(u64, ValOrBound)> {
        self.blocks
            .iter()
            .map(|b| {
                let mut best = ValOrBound::Infinite;
                for c in &b.coords {
                    best = min_val(best, val(c));
                }
                (b.i, best)
            })
            .collect()
    }
}

/// Sound minimum of two valuation statements: keeps `Exact` only when the
/// other operand certainly cannot undercut it.
fn min_val(a: ValOrBound, b: ValOrBound) -> ValOrBound {
    use ValOrBound::*;
    match (a, b) {
        (Infinite, x) | (x, Infinite) => x,
        (Exact(u), Exact(v)) => Exact(u.min(v)),
        (Exact(u), AtLeast(v)) | (AtLeast(v), Exact(u)) => {
            if u <= v {
                Exact(u)
            } else {
                AtLeast(v)
            }
        }
        (AtLeast(u), AtLeast(v)) => AtLeast(u.min(v)),
    }
}

impl KatzBasis {
    /// Build the basis for blocks `0..=depth` at q-precision `qprec`
    /// (`qprec >= dim M_{depth(p-1)}` required).
    pub fn new(p: u64, depth: u64, qprec: usize) -> Result<Self> {
        if !matches!(p, 5 | 7 | 13) {
            return Err(Error::UnsupportedPrime(p));
        }
        let total = dim_mk((depth * (p - 1)) as i64) as usize;
        if qprec < total {
            return Err(Error::InsufficientQPrecision {
                stage: "katz basis",
                have: qprec,
                need: total,
            });
        }
        let e_inv = eisenstein_level1(p - 1, qprec)?.invert()?;
        let mut e_inv_pow = QSeries::one(RatField, qprec);
        let mut blocks = Vec::new();
        for i in 0..=depth {
            if i > 0 {
                e_inv_pow = e_inv_pow.mul(&e_inv);
            }
            let blk = miller_basis(p, i, qprec)?;
            let forms = blk.forms.iter().map(|g| g.mul(&e_inv_pow)).collect();
            blocks.push((i, blk.j_start, forms));
        }
        Ok(KatzBasis { p, depth, total, blocks })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }

    /// Number of basis elements (= `dim M_{depth(p-1)}`).
    pub fn total(&self) -> usize {
        self.total
    }

    /// Decompose `f` (weight 0, known to at least `O(q^total)`) by back
    /// substitution on leading coefficients.
    pub fn decompose<R: RingCtx>(&self, f: &QSeries<R>) -> Result<KatzExpansion<R::Elem>> {
        if f.prec() < self.total {
            return Err(Error::InsufficientQPrecision {
                stage: "katz decomposition",
                have: f.prec(),
                need: self.total,
            });
        }
        let ring = f.ring().clone();
        let mut resid = f.truncate(self.total.max(1));
        let mut out = Vec::new();
        for (i, j_start, forms) in &self.blocks {
            let mut coords = Vec::with_capacity(forms.len());
            for (off, h) in forms.iter().enumerate() {
                let c = resid.coeff(j_start + off).clone();
                let h_emb = h.truncate(self.total.max(1)).map_coeffs(ring.clone(), |x| {
                    ring.from_rat(x).expect("katz basis embeds into coefficient ring")
                });
                resid = resid.sub(&h_emb.mul_scalar(&c));
                coords.push(c);
            }
            out.push(KatzBlockCoords { i: *i, j_start: *j_start, coords });
        }
        Ok(KatzExpansion { p: self.p, blocks: out })
    }

    /// Rebuild the q-expansion `sum c_{i,j} h_{i,j}` at precision `qprec`.
    pub fn reconstruct<R: RingCtx>(&self, ring: R, x: &KatzExpansion<R::Elem>) -> QSeries<R> {
        let mut acc = QSeries::zero(ring.clone(), self.total.max(1));
        for (blk, (_, _, forms)) in x.blocks.iter().zip(&self.blocks) {
            for (c, h) in blk.coords.iter().zip(forms) {
                let h_emb = h.truncate(self.total.max(1)).map_coeffs(ring.clone(), |x| {
                    ring.from_rat(x).expect("katz basis embeds into coefficient ring")
                });
                acc = acc.add(&h_emb.mul_scalar(c));
            }
        }
        acc
    }
}

/// Expand a weight-0 function in powers of the Hauptmodul: returns
/// `(u_0, ..., u_{count-1})` with `f = sum u_n f_p^n + O(t^count)`, by back
/// substitution against the unipotent t-to-q change of basis.
pub fn t_expand<R: RingCtx>(p: u64, f: &QSeries<R>, count: usize) -> Result<Vec<R::Elem>> {
    if f.prec() < count {
        return Err(Error::InsufficientQPrecision {
            stage: "t expansion",
            have: f.prec(),
            need: count,
        });
    }
    let ring = f.ring().clone();
    let fp = hauptmodul(p, count.max(1))?
        .map_coeffs(ring.clone(), |c| ring.from_bigint(c));
    let mut resid = f.truncate(count.max(1));
    let mut pow = QSeries::one(ring.clone(), count.max(1));
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        if n > 0 {
            pow = pow.mul(&fp);
        }
        let c = resid.coeff(n).clone();
        resid = resid.sub(&pow.mul_scalar(&c));
        out.push(c);
    }
    Ok(out)
}
