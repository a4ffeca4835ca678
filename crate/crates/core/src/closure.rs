//! The p-adic closure of a finitely generated group of units.
//!
//! Every product `ε₁^{e₁} ⋯ ε_k^{e_k}` with `e_j = i_j + E_j t_j` is the value
//! at `(t₁, …, t_k)` of the branch series `∏ ε_j^{i_j} · exp(Σ t_j L_j)`, where
//! `E_j` is the order of `ε_j` modulo `q` and `L_j = log(ε_j^{E_j})`.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraElement, AlgebraError};
use crate::analysis::{exp_of_linear_form, padic_log, AnalysisError};
use crate::padic::{PadicInt, Valuation};
use crate::series::{SeriesError, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("element is not a unit of the algebra")]
    NotAUnit,
    #[error("no exponent up to {0} brings the unit to 1 mod q")]
    ExponentSearchExceeded(u64),
    #[error("residue {residue} is outside 0..{exponent}")]
    ResidueOutOfRange { residue: u64, exponent: u64 },
    #[error("expected between 1 and 2 units, got {0}")]
    UnsupportedUnitCount(usize),
    #[error("branch series disagrees with the direct product at {0:?}")]
    BranchCheckFailed(Vec<i64>),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn is_one_mod_q(x: &AlgebraElement) -> bool {
    let q_val = x.ctx().q_valuation();
    let d = x - &AlgebraElement::one(x.algebra());
    d.module_valuation().lower_bound() >= q_val
}

/// Order of `ε` in `(R/qR)^×`: the least `E ≥ 1` with `ε^E ≡ 1 mod qR`.
pub fn unit_exponent(eps: &AlgebraElement) -> Result<u64, ClosureError> {
    if !eps.is_unit() {
        return Err(ClosureError::NotAUnit);
    }
    let alg = eps.algebra();
    let q = alg.ctx().q() as u64;
    let limit = q.saturating_pow(alg.rank() as u32);
    let mut power = eps.clone();
    for e in 1..=limit {
        if is_one_mod_q(&power) {
            return Ok(e);
        }
        power = &power * eps;
    }
    Err(ClosureError::ExponentSearchExceeded(limit))
}

/// Units together with their exponents and logarithms.
#[derive(Debug, Clone)]
pub struct UnitSystem {
    pub alg: Algebra,
    pub units: Vec<AlgebraElement>,
    pub exponents: Vec<u64>,
    pub logs: Vec<AlgebraElement>,
}

pub fn build_unit_system(units: &[AlgebraElement]) -> Result<UnitSystem, ClosureError> {
    if !(1..=2).contains(&units.len()) {
        return Err(ClosureError::UnsupportedUnitCount(units.len()));
    }
    let alg = units[0].algebra().clone();
    let mut exponents = Vec::new();
    let mut logs = Vec::new();
    for u in units {
        if u.algebra() != &alg {
            return Err(AlgebraError::AlgebraMismatch.into());
        }
        let e = unit_exponent(u)?;
        logs.push(padic_log(&u.pow(e))?);
        exponents.push(e);
    }
    Ok(UnitSystem {
        alg,
        units: units.to_vec(),
        exponents,
        logs,
    })
}

impl UnitSystem {
    /// `∏ ε_j^{e_j}` by direct exponentiation; negative exponents use inverses.
    pub fn direct_product(&self, exps: &[i64]) -> Result<AlgebraElement, ClosureError> {
        let mut acc = AlgebraElement::one(&self.alg);
        for (u, &e) in self.units.iter().zip(exps) {
            acc = &acc * &u.pow_signed(e)?;
        }
        Ok(acc)
    }

    /// Splits exponents `e_j = i_j + E_j t_j` with `0 ≤ i_j < E_j`.
    pub fn split_exponents(&self, exps: &[i64]) -> (Vec<u64>, Vec<i64>) {
        exps.iter()
            .zip(&self.exponents)
            .map(|(&e, &big_e)| {
                let big_e = big_e as i64;
                (e.rem_euclid(big_e) as u64, e.div_euclid(big_e))
            })
            .unzip()
    }
}

/// A pivot `(row, col)` of the log matrix and its valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    pub valuation: u32,
}

/// Rank of the coordinate matrix of the logs over `Z_p`, certified at the
/// working precision, with the pivots used.
pub fn rank_profile(logs: &[AlgebraElement]) -> (usize, Vec<Pivot>) {
    let mut rows: Vec<(usize, Vec<PadicInt>)> = logs.iter().map(|l| l.coeffs().to_vec()).enumerate().collect();
    let mut pivots = Vec::new();
    let mut used_cols = Vec::new();
    loop {
        let mut best: Option<(usize, usize, u32)> = None;
        for (ri, (_, row)) in rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if used_cols.contains(&c) {
                    continue;
                }
                if let Valuation::Exact(v) = x.valuation() {
                    if best.map_or(true, |(_, _, bv)| v < bv) {
                        best = Some((ri, c, v));
                    }
                }
            }
        }
        let Some((ri, col, v)) = best else { break };
        let (orig, prow) = rows.remove(ri);
        let unit_inv = prow[col].div_p_pow(v).and_then(|u| u.invert()).expect("pivot has exact valuation v");
        for (_, row) in rows.iter_mut() {
            let factor = &row[col].div_p_pow(v).expect("pivot valuation is minimal") * &unit_inv;
            for (x, y) in row.iter_mut().zip(&prow) {
                *x = &*x - &(&factor * y);
            }
        }
        used_cols.push(col);
        pivots.push(Pivot { row: orig, col, valuation: v });
    }
    (pivots.len(), pivots)
}

pub fn log_independence_rank(logs: &[AlgebraElement]) -> usize {
    rank_profile(logs).0
}

/// One branch `∏ ε_j^{i_j} · exp(Σ t_j L_j)` of the closure.
#[derive(Debug, Clone)]
pub struct ClosureBranch {
    pub residues: Vec<u64>,
    pub prefactor: AlgebraElement,
    pub series: TruncSeries<AlgebraElement>,
}

impl ClosureBranch {
    pub fn evaluate(&self, t: &[i64]) -> Result<AlgebraElement, ClosureError> {
        Ok(self.series.eval_integers(t)?)
    }
}

/// Builds the branch for `residues`, with omitted terms in `p^target`.
pub fn closure_branch(sys: &UnitSystem, residues: &[u64], target: u32) -> Result<ClosureBranch, ClosureError> {
    if residues.len() != sys.units.len() {
        return Err(ClosureError::UnsupportedUnitCount(residues.len()));
    }
    for (&i, &e) in residues.iter().zip(&sys.exponents) {
        if i >= e {
            return Err(ClosureError::ResidueOutOfRange { residue: i, exponent: e });
        }
    }
    let exps: Vec<i64> = residues.iter().map(|&i| i.to_i64().expect("small residue")).collect();
    let prefactor = sys.direct_product(&exps)?;
    let series = exp_of_linear_form(&sys.logs, target)?.mul_coefficient(&prefactor)?;
    let branch = ClosureBranch {
        residues: residues.to_vec(),
        prefactor,
        series,
    };
    let mut t = vec![0i64; residues.len()];
    t[0] = 1;
    let mut direct = exps.clone();
    direct[0] += sys.exponents[0] as i64;
    let expected = sys.direct_product(&direct)?.truncate_known(branch.series.prec());
    if branch.evaluate(&t)? != expected {
        return Err(ClosureError::BranchCheckFailed(direct));
    }
    Ok(branch)
}
