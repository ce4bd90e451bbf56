//! The central computations: two-variable expansions a_nj / b_ij / u_ij of
//! `E*_kappa / V(E*_kappa)` recovered by interpolation over classical weights,
//! bound verification, the conductor-p^2 counterexample, U_p matrices and the
//! rescaled reduction.

mod counterexample;
mod reduction;
mod umatrix;

pub use counterexample::{counterexample, CounterexampleReport};
pub use reduction::{default_gamma, rescaled_reduction, ReductionReport};
pub use umatrix::{
    charpoly, newton_slopes, rational_matrix_slopes, u_matrix_weight0,
    u_matrix_weight_character, u_matrix_weight_classical, NewtonSlopes,
};

use crate::arith::{rat, vp_rat, DirichletCharacter, PAdicNumber, ValOrBound};
use crate::forms::{eisenstein_star_character, eisenstein_star_classical, KatzBasis};
use crate::qexp::QSeries;
use crate::ring::{CycloField, PAdicRing, RatField};
use crate::vand::{NodeSet, PreparedSolver};
use crate::{Error, Rat, Result};
use num_bigint::BigInt;
use num_traits::One;

/// Overconvergence constant of Theorem A:
/// `c_p = (2/3)(1 - p/(p-1)^2) / (p+1)`.
pub fn c_thm_a(p: u64) -> Rat {
    let p = p as i64;
    rat(2, 3) * (Rat::one() - rat(p, (p - 1) * (p - 1))) * rat(1, p + 1)
}

/// Improved constant of Prop 3.4: `c_p = (p^2 - 3p + 1)/(p(p^2 - 1))`.
pub fn c_prop34(p: u64) -> Rat {
    let p = p as i64;
    rat(p * p - 3 * p + 1, p * (p * p - 1))
}

/// Hauptmodul-side constant `d_p = 12/(p-1) * c`.
pub fn d_of_c(p: u64, c: &Rat) -> Rat {
    rat(12, p as i64 - 1) * c
}

/// Prop 3.5 rate `(p-1)/(p(p+1))` for classical specializations.
pub fn prop35_bound(p: u64) -> Rat {
    let p = p as i64;
    rat(p - 1, p * (p + 1))
}

/// Prop 3.6 rate `(p-1)/(p+1)` for the `e_n`, `e*_n`.
pub fn prop36_bound(p: u64) -> Rat {
    let p = p as i64;
    rat(p - 1, p + 1)
}

/// The weaker rate `2/(3(p+1))` used as input in the Theorem A proof.
pub fn sect33_bound(p: u64) -> Rat {
    rat(2, 3 * (p as i64 + 1))
}

/// A weight character `kappa` in the Iwasawa coordinate `w = kappa(1+p) - 1`:
/// either a classical weight `k` in `(p-1)N`, or `x^k0 chi` with `chi` of
/// conductor p^2 trivial on the (p-1)st roots of unity.
#[derive(Debug, Clone)]
pub enum WeightCharacter {
    Classical { p: u64, k: u64 },
    Pair { k0: u64, chi: DirichletCharacter },
}

impl WeightCharacter {
    pub fn classical(p: u64, k: u64) -> Result<Self> {
        if k == 0 || k % (p - 1) != 0 {
            return Err(Error::BadWeight(k, "need nonzero k divisible by p-1"));
        }
        Ok(WeightCharacter::Classical { p, k })
    }

    pub fn pair(k0: u64, chi: DirichletCharacter) -> Result<Self> {
        if k0 < 2 {
            return Err(Error::BadWeight(k0, "need k0 >= 2"));
        }
        Ok(WeightCharacter::Pair { k0, chi })
    }

    pub fn p(&self) -> u64 {
        match self {
            WeightCharacter::Classical { p, .. } => *p,
            WeightCharacter::Pair { chi, .. } => chi.prime(),
        }
    }

    /// `v_p(w(kappa))`: `1 + v_p(k)` classically; `1/(p-1)` for a wild
    /// character (its value `zeta^e - 1` mod p dominates).
    pub fn w_valuation(&self) -> Rat {
        match self {
            WeightCharacter::Classical { p, k } => {
                rat(1 + vp_rat(&rat(*k as i64, 1), *p).unwrap(), 1)
            }
            WeightCharacter::Pair { chi, .. } => rat(1, chi.prime() as i64 - 1),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            WeightCharacter::Classical { k, .. } => format!("x^{k}"),
            WeightCharacter::Pair { k0, chi } => {
                format!("x^{k0} chi  (chi(1+p) = zeta^{})", chi.exponent_at_one_plus_p())
            }
        }
    }
}

/// `E*_k / V(E*_k)` to q-precision N over the exact rationals.
pub fn classical_ratio(p: u64, k: u64, prec: usize) -> Result<QSeries<RatField>> {
    let e = eisenstein_star_classical(p, k, prec)?;
    let v = e.frobenius_v(p).truncate(prec);
    Ok(e.mul(&v.invert()?))
}

/// `E*_kappa / V(E*_kappa)` for `kappa = x^k0 chi` over `Q(zeta_p)`.
pub fn character_ratio(
    p: u64,
    k0: u64,
    chi: &DirichletCharacter,
    prec: usize,
) -> Result<QSeries<CycloField>> {
    let e = eisenstein_star_character(p, k0, chi, prec)?;
    let v = e.frobenius_v(p).truncate(prec);
    Ok(e.mul(&v.invert()?))
}

/// Basis in which a [`FamilyTable`] is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisTag {
    /// rows = q-exponents n, entries = a_nj
    Q,
    /// rows = Katz block index i, entries = b_ij in Miller coordinates
    Katz,
    /// rows = Hauptmodul exponent i, entries = u_ij
    Hauptmodul,
}

impl BasisTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            BasisTag::Q => "q",
            BasisTag::Katz => "katz",
            BasisTag::Hauptmodul => "hauptmodul",
        }
    }
}

/// One row of a family table. Each entry is a coordinate vector (length 1 for
/// scalar bases; a Miller-coordinate vector, possibly empty, for `katz`).
#[derive(Debug, Clone)]
pub struct FamilyRow {
    pub index: u64,
    /// Leading q-index of the row's Miller block (0 for scalar bases).
    pub j_start: usize,
    pub entries: Vec<Vec<PAdicNumber>>,
}

/// The two-variable expansion `sum_{row, j} (entry) w^j` of
/// `E*_kappa/V(E*_kappa)` in one of the three bases. Every entry carries its
/// guaranteed absolute precision; entries with precision <= 0 are
/// undetermined and excluded from bound verification.
#[derive(Debug, Clone)]
pub struct FamilyTable {
    pub p: u64,
    pub basis: BasisTag,
    pub w_degree: usize,
    pub rows: Vec<FamilyRow>,
}

impl FamilyTable {
    /// Valuation statement for one entry: minimum over the coordinate vector
    /// (`Infinite` for an empty block).
    pub fn cell_valuation(entry: &[PAdicNumber]) -> ValOrBound {
        let mut best = ValOrBound::Infinite;
        for c in entry {
            let v = c.valuation_bound();
            best = match (best, v) {
                (ValOrBound::Infinite, x) | (x, ValOrBound::Infinite) => x,
                (ValOrBound::Exact(a), ValOrBound::Exact(b)) => ValOrBound::Exact(a.min(b)),
                (ValOrBound::Exact(a), ValOrBound::AtLeast(b))
                | (ValOrBound::AtLeast(b), ValOrBound::Exact(a)) => {
                    if a <= b {
                        ValOrBound::Exact(a)
                    } else {
                        ValOrBound::AtLeast(b)
                    }
                }
                (ValOrBound::AtLeast(a), ValOrBound::AtLeast(b)) => ValOrBound::AtLeast(a.min(b)),
            };
        }
        best
    }

    /// Per-row valuation cells (min over coordinates).
    pub fn valuation_rows(&self) -> Vec<(u64, Vec<ValOrBound>)> {
        self.rows
            .iter()
            .map(|r| (r.index, r.entries.iter().map(|e| Self::cell_valuation(e)).collect()))
            .collect()
    }
}

/// Recover `a_nj` for `n < rows`, `j < w_degree` from specializations at the
/// optimal classical weights `k_i = (p-1) m_i`, by solving the Vandermonde
/// system at the nodes `x_i = w(k_i)/p`.
///
/// Unknowns are `c_j = a_nj p^j`; the discarded tail `sum_{j >= J} a_nj w^j`
/// contributes `O(p^J)`, so the working precision is `min(M, J)` and each
/// `a_nj` is guaranteed to `min(M, J) - (row j loss) - j` digits.
pub fn formal_w_expansion(p: u64, rows: usize, w_degree: usize, m_prec: i64) -> Result<FamilyTable> {
    if !matches!(p, 5 | 7 | 13) {
        return Err(Error::UnsupportedPrime(p));
    }
    if w_degree < 1 || rows < 1 {
        return Err(Error::BadConfig("need rows >= 1 and w_degree >= 1".into()));
    }
    let j = w_degree;
    let ms = NodeSet::optimal(p, j as u64);
    // nodes x_i = w(k_i)/p (exact division: v_p(w(k_i)) = 1 for unit m_i)
    let xs: Vec<BigInt> = ms
        .nodes()
        .iter()
        .map(|m| {
            let k = (p - 1) * u64::try_from(m).expect("optimal nodes are small naturals");
            crate::arith::w_of_k_int(p, k) / BigInt::from(p)
        })
        .collect();
    let nodes = NodeSet::new(p, xs)?;
    let solver = PreparedSolver::new(&nodes);
    let p0 = m_prec.min(j as i64);
    if p0 - solver.max_loss() <= 0 {
        return Err(Error::PrecisionExhausted { stage: "w-expansion working precision" });
    }

    // specializations at the node weights, exact over Q
    let ratios: Vec<QSeries<RatField>> = ms
        .nodes()
        .iter()
        .map(|m| {
            let k = (p - 1) * u64::try_from(m).unwrap();
            classical_ratio(p, k, rows)
        })
        .collect::<Result<_>>()?;

    let mut out_rows = Vec::with_capacity(rows);
    for n in 0..rows {
        let values: Vec<PAdicNumber> = ratios
            .iter()
            .map(|s| PAdicNumber::from_rat(p, s.coeff(n), p0))
            .collect();
        let sol = solver.solve(&values)?;
        // a_nj = c_j p^{-j}; the shift lowers both valuation and precision by j
        let entries: Vec<Vec<PAdicNumber>> =
            sol.solution.iter().enumerate().map(|(jj, c)| vec![c.mul_pow_p(-(jj as i64))]).collect();
        out_rows.push(FamilyRow { index: n as u64, j_start: 0, entries });
    }
    Ok(FamilyTable { p, basis: BasisTag::Q, w_degree, rows: out_rows })
}

fn column_series(table: &FamilyTable, j: usize, embed_prec: i64) -> QSeries<PAdicRing> {
    let ring = PAdicRing { p: table.p, embed_prec };
    QSeries::from_fn(ring, table.rows.len(), |n| table.rows[n].entries[j][0].clone())
}

/// Katz-decompose each w-column of a basis-q table: yields `b_ij` in Miller
/// coordinates. Back-substitution against the unipotent Katz basis costs no
/// additional p-adic precision.
pub fn formal_katz(table: &FamilyTable, depth: u64) -> Result<FamilyTable> {
    if table.basis != BasisTag::Q {
        return Err(Error::BadConfig("formal_katz expects a basis-q table".into()));
    }
    let p = table.p;
    let basis = KatzBasis::new(p, depth, table.rows.len())?;
    let embed_prec = table
        .rows
        .iter()
        .flat_map(|r| r.entries.iter().flatten())
        .map(|e| e.precision())
        .filter(|&x| x < i64::MAX / 8)
        .max()
        .unwrap_or(8)
        + 8;
    // decompose per column, then regroup by block row
    let mut per_column = Vec::with_capacity(table.w_degree);
    for j in 0..table.w_degree {
        per_column.push(basis.decompose(&column_series(table, j, embed_prec))?);
    }
    let mut rows = Vec::new();
    for (bi, blk0) in per_column[0].blocks.iter().enumerate() {
        let entries = per_column
            .iter()
            .map(|x| x.blocks[bi].coords.clone())
            .collect();
        rows.push(FamilyRow { index: blk0.i, j_start: blk0.j_start, entries });
    }
    Ok(FamilyTable { p, basis: BasisTag::Katz, w_degree: table.w_degree, rows })
}

/// t-expand each w-column of a basis-q table along the Hauptmodul: yields the
/// `u_ij` of the §-style t-coefficient table.
pub fn formal_hauptmodul(table: &FamilyTable, count: usize) -> Result<FamilyTable> {
    if table.basis != BasisTag::Q {
        return Err(Error::BadConfig("formal_hauptmodul expects a basis-q table".into()));
    }
    let p = table.p;
    let embed_prec = table
        .rows
        .iter()
        .flat_map(|r| r.entries.iter().flatten())
        .map(|e| e.precision())
        .filter(|&x| x < i64::MAX / 8)
        .max()
        .unwrap_or(8)
        + 8;
    let mut per_column = Vec::with_capacity(table.w_degree);
    for j in 0..table.w_degree {
        per_column.push(crate::forms::t_expand(p, &column_series(table, j, embed_prec), count)?);
    }
    let rows = (0..count)
        .map(|i| FamilyRow {
            index: i as u64,
            j_start: 0,
            entries: per_column.iter().map(|col| vec![col[i].clone()]).collect(),
        })
        .collect();
    Ok(FamilyTable { p, basis: BasisTag::Hauptmodul, w_degree: table.w_degree, rows })
}

/// Choice of overconvergence constant for bound verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundConstant {
    ThmA,
    Prop34,
    Custom(Rat),
}

impl BoundConstant {
    pub fn label(&self) -> String {
        match self {
            BoundConstant::ThmA => "thmA".into(),
            BoundConstant::Prop34 => "prop34".into(),
            BoundConstant::Custom(r) => crate::arith::rat_display(r),
        }
    }

    pub fn value(&self, p: u64) -> Rat {
        match self {
            BoundConstant::ThmA => c_thm_a(p),
            BoundConstant::Prop34 => c_prop34(p),
            BoundConstant::Custom(r) => r.clone(),
        }
    }
}

/// A single definite bound violation.
#[derive(Debug, Clone)]
pub struct Violation {
    pub row: u64,
    pub col: usize,
    pub coord: usize,
    pub observed: ValOrBound,
    pub required: Rat,
}

/// Outcome of checking `v_p(entry_{ij}) >= c_eff * i - j` over all determined
/// entries, plus the empirical profile `min_{i>0} (v + j)/i`.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub label: String,
    pub constant: Rat,
    /// `c` for Katz tables, `12/(p-1) * c` for Hauptmodul tables.
    pub effective_constant: Rat,
    pub checked: usize,
    pub undetermined: usize,
    pub violations: Vec<Violation>,
    pub empirical_profile: Option<Rat>,
}

impl BoundReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check a Katz or Hauptmodul table against `v >= c_eff * i - j`.
pub fn verify_bound(table: &FamilyTable, constant: &BoundConstant) -> Result<BoundReport> {
    let c = constant.value(table.p);
    let c_eff = match table.basis {
        BasisTag::Katz => c.clone(),
        BasisTag::Hauptmodul => d_of_c(table.p, &c),
        BasisTag::Q => {
            return Err(Error::BadConfig("verify_bound needs a katz or hauptmodul table".into()))
        }
    };
    let mut report = BoundReport {
        label: constant.label(),
        constant: c,
        effective_constant: c_eff.clone(),
        checked: 0,
        undetermined: 0,
        violations: Vec::new(),
        empirical_profile: None,
    };
    for row in &table.rows {
        let i = row.index;
        for (j, entry) in row.entries.iter().enumerate() {
            let required = &c_eff * rat(i as i64, 1) - rat(j as i64, 1);
            for (ci, coordinate) in entry.iter().enumerate() {
                let observed = coordinate.valuation_bound();
                if observed.certainly_at_least(&required) {
                    report.checked += 1;
                    if i > 0 {
                        if let Some(v) = observed.exact() {
                            let profile = (v + rat(j as i64, 1)) / rat(i as i64, 1);
                            report.empirical_profile = Some(match report.empirical_profile.take() {
                                Some(b) => b.min(profile),
                                None => profile,
                            });
                        }
                    }
                } else if observed.certainly_below(&required) {
                    report.violations.push(Violation {
                        row: i,
                        col: j,
                        coord: ci,
                        observed,
                        required: required.clone(),
                    });
                } else {
                    report.undetermined += 1;
                }
            }
        }
    }
    Ok(report)
}

/// Check a single specialized t-coefficient column (e.g. the counterexample
/// character) against `v(u_i) >= 12/(p-1) * c * min(1, v_p(w(kappa))) * i`.
pub fn verify_specialized_bound(
    p: u64,
    valuations: &[ValOrBound],
    constant: &BoundConstant,
    w_valuation: &Rat,
) -> BoundReport {
    let c = constant.value(p);
    let one = Rat::one();
    let vw = if *w_valuation < one { w_valuation.clone() } else { one };
    let c_eff = d_of_c(p, &c) * vw;
    let mut report = BoundReport {
        label: constant.label(),
        constant: c,
        effective_constant: c_eff.clone(),
        checked: 0,
        undetermined: 0,
        violations: Vec::new(),
        empirical_profile: None,
    };
    for (i, observed) in valuations.iter().enumerate() {
        let required = &c_eff * rat(i as i64, 1);
        if observed.certainly_at_least(&required) {
            report.checked += 1;
            if i > 0 {
                if let Some(v) = observed.exact() {
                    let profile = v / rat(i as i64, 1);
                    report.empirical_profile = Some(match report.empirical_profile.take() {
                        Some(b) => b.min(profile),
                        None => profile,
                    });
                }
            }
        } else if observed.certainly_below(&required) {
            report.violations.push(Violation {
                row: i as u64,
                col: 0,
                coord: 0,
                observed: observed.clone(),
                required,
            });
        } else {
            report.undetermined += 1;
        }
    }
    report
}
