//! The family `m⁵ + 4b⁴mn⁴ − n⁵ = 1` with `5 | b`, solved 5-adically.
//!
//! With `θ` a root of `x⁵ + 4b⁴x − 1` the left side is the norm of `m − nθ`,
//! so solutions are the units `ξ₁^{n₁} ξ₂^{n₂}` of the form `m − nθ`, where
//! `ξ₁ = θ` and `ξ₂ = θ² + 2bθ + 2b²`. A congruence modulo `5^{3k}` leaves the
//! residue classes `(n₁, n₂) ≡ (0, 0), (1, 0) mod 5`. The first is handled by
//! Strassmann's bound, the second by Skolem's criterion.

mod case;
mod certificate;

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraElement, AlgebraError};
use crate::analysis::{
    exp_of_linear_form, skolem_criterion, strassmann_series, weierstrass_solve, AnalysisError, Variable,
};
use crate::closure::{build_unit_system, closure_branch, rank_profile, ClosureError, UnitSystem};
use crate::padic::{int_valuation, PadicContext, PadicError, PadicInt};
use crate::series::{SeriesError, TruncSeries};

pub use case::{case_reduction, CaseReductionReport, ExclusionWitness};
pub use certificate::{
    element_json, OracleCrossCheck, SkolemCertificate, Solution, StrassmannCertificate, TheoremCertificate,
    UnitSystemSummary, EXTERNAL_DEPENDENCIES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuinticError {
    #[error("b must be nonzero")]
    BZero,
    #[error("b = {0} is not divisible by 5; only the case 5 | b is supported")]
    BNotDivisibleBy5(BigInt),
    #[error("working precision {prec} is below the required {min}")]
    PrecisionTooLow { prec: u32, min: u32 },
    #[error("sampled range must be at least 25, got {0}")]
    RangeTooSmall(i64),
    #[error("norm of {unit} is {norm}, expected 1")]
    NormNotOne { unit: &'static str, norm: BigInt },
    #[error("x⁵ + 4b⁴x − 1 has the rational root {0}")]
    RationalRoot(i64),
    #[error("case reduction evidence failed: {0}")]
    EvidenceFailure(String),
    #[error("coefficient mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("Skolem criterion does not apply: Jacobian determinant {0} mod 5")]
    NotUnique(u32),
    #[error("Strassmann bound is {0}, expected 2")]
    StrassmannBoundNotTwo(usize),
    #[error("root check failed: {0}")]
    RootCheckFailed(String),
    #[error("element is not of the form m − nθ: coordinate {0} is nonzero")]
    NotInX(usize),
    #[error("no candidate matches the element")]
    NoMatchingCandidate,
    #[error("({m}, {n}) does not satisfy the equation")]
    SolutionCheckFailed { m: BigInt, n: BigInt },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// `m⁵ + 4b⁴mn⁴ − n⁵` in exact integer arithmetic.
pub fn thue_form(b: &BigInt, m: &BigInt, n: &BigInt) -> BigInt {
    m.pow(5) + BigInt::from(4) * b.pow(4) * m * n.pow(4) - n.pow(5)
}

/// Integer coefficients of `x⁵ + 4b⁴x − 1`, constant term first.
pub fn defining_polynomial(b: &BigInt) -> Vec<BigInt> {
    vec![
        BigInt::from(-1),
        BigInt::from(4) * b.pow(4),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::one(),
    ]
}

/// `5`-adic valuation of `b` after checking the hypotheses on `b`.
pub fn check_b(b: &BigInt) -> Result<u32, QuinticError> {
    if b.is_zero() {
        return Err(QuinticError::BZero);
    }
    if !b.is_multiple_of(&BigInt::from(5)) {
        return Err(QuinticError::BNotDivisibleBy5(b.clone()));
    }
    Ok(int_valuation(b, 5).expect("b is nonzero"))
}

/// One member of the family together with its 5-adic unit system.
#[derive(Debug, Clone)]
pub struct QuinticInstance {
    pub b: BigInt,
    pub k: u32,
    pub prec: u32,
    pub alg: Algebra,
    pub xi1: AlgebraElement,
    pub xi2: AlgebraElement,
    pub units: UnitSystem,
}

impl QuinticInstance {
    pub fn ctx(&self) -> &PadicContext {
        self.alg.ctx()
    }

    /// `4b⁴`.
    pub fn four_b4(&self) -> BigInt {
        BigInt::from(4) * self.b.pow(4)
    }

    fn int(&self, x: &BigInt) -> PadicInt {
        PadicInt::from_integer(self.ctx(), x)
    }

    fn rational(&self, num: &BigInt, den: i64) -> Result<PadicInt, QuinticError> {
        Ok(PadicInt::from_rational(num, &BigInt::from(den), self.ctx())?)
    }

    /// The three solutions claimed for this `b`.
    pub fn expected_solutions(&self) -> Vec<Solution> {
        vec![
            Solution::new(1.into(), 0.into()),
            Solution::new(0.into(), (-1).into()),
            Solution::new(1.into(), self.four_b4()),
        ]
    }
}

/// Default working precision `14k + 4`.
pub fn default_precision(k: u32) -> u32 {
    14 * k + 4
}

/// Smallest accepted working precision `12k + 4`.
pub fn minimum_precision(k: u32) -> u32 {
    12 * k + 4
}

pub fn build_instance(b: &BigInt, prec: Option<u32>) -> Result<QuinticInstance, QuinticError> {
    let k = check_b(b)?;
    let prec = prec.unwrap_or_else(|| default_precision(k));
    if prec < minimum_precision(k) {
        return Err(QuinticError::PrecisionTooLow {
            prec,
            min: minimum_precision(k),
        });
    }
    let poly = defining_polynomial(b);
    // a rational root would be ±1
    for x in [1i64, -1] {
        let x = BigInt::from(x);
        let value: BigInt = poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c);
        if value.is_zero() {
            return Err(QuinticError::RationalRoot(x.to_i64().expect("±1")));
        }
    }
    let ctx = PadicContext::new(5, prec)?;
    let alg = Algebra::new(&ctx, &poly)?;
    let xi1_coeffs = vec![BigInt::zero(), BigInt::one()];
    let xi2_coeffs = vec![BigInt::from(2) * b * b, BigInt::from(2) * b, BigInt::one()];
    for (name, c) in [("xi1", &xi1_coeffs), ("xi2", &xi2_coeffs)] {
        let norm = alg.exact_norm(c);
        if !norm.is_one() {
            return Err(QuinticError::NormNotOne { unit: name, norm });
        }
    }
    let xi1 = AlgebraElement::from_integers(&alg, &xi1_coeffs)?;
    let xi2 = AlgebraElement::from_integers(&alg, &xi2_coeffs)?;
    let units = build_unit_system(&[xi1.clone(), xi2.clone()])?;
    if units.exponents != [5, 5] {
        return Err(QuinticError::CoefficientMismatch(format!(
            "unit exponents {:?}, expected [5, 5]",
            units.exponents
        )));
    }
    Ok(QuinticInstance {
        b: b.clone(),
        k,
        prec,
        alg,
        xi1,
        xi2,
        units,
    })
}

/// Reads `x = m − nθ` off its coordinates.
///
/// With candidates, returns the one congruent to `(m, n)` at the known
/// precision of `x`; without, returns the signed residues.
pub fn extract_solution(x: &AlgebraElement, candidates: &[Solution]) -> Result<Solution, QuinticError> {
    for j in 2..x.algebra().rank() {
        if !x.coordinate(j).is_zero() {
            return Err(QuinticError::NotInX(j));
        }
    }
    let m = x.coordinate(0);
    let minus_n = x.coordinate(1);
    if candidates.is_empty() {
        return Ok(Solution::new(m.signed_residue(), -minus_n.signed_residue()));
    }
    candidates
        .iter()
        .find(|s| m.matches_integer(&s.m) && minus_n.matches_integer(&-&s.n))
        .cloned()
        .ok_or(QuinticError::NoMatchingCandidate)
}

fn series_from_ints(
    inst: &QuinticInstance,
    like: &TruncSeries<PadicInt>,
    terms: Vec<([u32; 2], PadicInt)>,
) -> Result<TruncSeries<PadicInt>, QuinticError> {
    Ok(TruncSeries::from_terms(
        inst.ctx(),
        like.nvars(),
        like.degree_cap(),
        inst.prec,
        terms,
    )?)
}

fn check_close(
    what: &str,
    got: &TruncSeries<PadicInt>,
    expected: &TruncSeries<PadicInt>,
    min: u32,
) -> Result<(), QuinticError> {
    let diff = got.sub(expected)?.min_valuation().lower_bound();
    if diff < min {
        return Err(QuinticError::CoefficientMismatch(format!(
            "{what} differs from its expected leading terms at valuation {diff} < {min}"
        )));
    }
    Ok(())
}

/// The branch `ξ₁ exp(t₁L₁ + t₂L₂)` through `θ`, closed by Skolem's criterion.
pub fn branch_f1(inst: &QuinticInstance) -> Result<SkolemCertificate, QuinticError> {
    let k = inst.k;
    let b = &inst.b;
    let branch = closure_branch(&inst.units, &[1, 0], inst.prec)?;
    let coords = branch.series.coefficient_vector();
    let (f12, f13) = (&coords[2], &coords[3]);

    let b3 = b.pow(3);
    let b4 = b.pow(4);
    let expected12 = series_from_ints(
        inst,
        f12,
        vec![([1, 0], inst.int(&(-4 * &b4))), ([0, 1], inst.int(&(2 * &b4)))],
    )?;
    let expected13 = series_from_ints(
        inst,
        f13,
        vec![
            ([0, 3], inst.rational(&(500 * &b3), 3)?),
            ([0, 1], inst.rational(&(-20 * &b3), 3)?),
        ],
    )?;
    check_close("θ²-coordinate of f₁", f12, &expected12, 4 * k + 1)?;
    check_close("θ³-coordinate of f₁", f13, &expected13, 4 * k + 1)?;

    let s12 = f12.div_integer(&b4)?;
    let s13 = f13.div_integer(&(5 * &b3))?;
    let skolem = skolem_criterion(&[s12.clone(), s13.clone()])?;
    if skolem.jacobian_mod_p != [vec![1, 2], vec![0, 2]] {
        return Err(QuinticError::CoefficientMismatch(format!(
            "Jacobian modulo 5 is {:?}",
            skolem.jacobian_mod_p
        )));
    }
    if !skolem.unique {
        return Err(QuinticError::NotUnique(skolem.det_mod_p));
    }
    let root = branch.evaluate(&[0, 0])?;
    if root != inst.xi1 {
        return Err(QuinticError::RootCheckFailed("f₁(0, 0) ≠ θ".into()));
    }
    let solution = extract_solution(&root, &inst.expected_solutions())?;
    Ok(SkolemCertificate {
        f12_scaled: s12.to_json(),
        f13_scaled: s13.to_json(),
        skolem,
        root: [0, 0],
        element: element_json(&root),
        solution,
    })
}

/// The branch `exp(t₁L₁ + t₂L₂)` through `1`, in the coordinates
/// `(t₁, t₁ + t₂)`, closed by Weierstrass preparation and Strassmann's bound.
pub fn branch_f0(inst: &QuinticInstance) -> Result<StrassmannCertificate, QuinticError> {
    let k = inst.k;
    let b = &inst.b;
    let l = &inst.units.logs;
    let shifted = &l[0] + &l[1];
    let f = exp_of_linear_form(&[shifted, l[1].clone()], inst.prec)?;
    let coords = f.coefficient_vector();

    let ten_b = 10 * b;
    let f04 = &coords[4];
    let expected04 = series_from_ints(
        inst,
        f04,
        vec![([1, 0], inst.int(&ten_b)), ([0, 1], inst.int(&ten_b))],
    )?;
    check_close("θ⁴-coordinate of f₀", f04, &expected04, 6 * k + 1)?;

    let g = f04.div_integer(&ten_b)?;
    let h = weierstrass_solve(&g, Variable::T2)?;
    let t1 = TruncSeries::variable(inst.ctx(), 1, 0, h.degree_cap(), inst.prec)?;
    let h_dev = h.add(&t1)?.min_valuation().lower_bound();
    if h_dev < 5 * k {
        return Err(QuinticError::CoefficientMismatch(format!(
            "h(t₁) + t₁ has valuation {h_dev} < {}",
            5 * k
        )));
    }

    let target = 8 * k + 1;
    let f02_full = coords[2].substitute(&h)?;
    if f02_full.prec() < target {
        return Err(AnalysisError::InsufficientPrecision(format!(
            "θ²-coordinate after substitution is only known to 5^{}",
            f02_full.prec()
        ))
        .into());
    }
    let f02 = f02_full.with_prec(target);
    let b8 = b.pow(8);
    let expected02 = series_from_ints(
        inst,
        &f02,
        vec![([1, 0], inst.int(&(-8 * &b8))), ([2, 0], inst.int(&(8 * &b8)))],
    )?;
    check_close("θ²-coordinate after substitution", &f02, &expected02, target)?;
    let strassmann = strassmann_series(&f02)?;
    if strassmann.bound != 2 {
        return Err(QuinticError::StrassmannBoundNotTwo(strassmann.bound));
    }

    // t₁ = 0 gives the unit 1, t₁ = 1 gives ξ₁⁵ = 1 − 4b⁴θ at (t₁, t₂) = (1, −1)
    let h1 = h.eval_integers(&[1])?;
    if !(&h1 + &PadicInt::one(inst.ctx())).is_zero() {
        return Err(QuinticError::RootCheckFailed("h(1) ≠ −1".into()));
    }
    let candidates = inst.expected_solutions();
    let mut elements = Vec::new();
    let mut solutions = Vec::new();
    for (root, point, expected) in [
        (0i64, [0i64, 0], AlgebraElement::one(&inst.alg)),
        (1, [1, -1], inst.xi1.pow(5)),
    ] {
        if !f02.eval_integers(&[root])?.is_zero() {
            return Err(QuinticError::RootCheckFailed(format!("f₀₂({root}) ≠ 0")));
        }
        let x = f.eval_integers(&point)?;
        if x != expected {
            return Err(QuinticError::RootCheckFailed(format!("f₀ at t₁ = {root} is not the expected unit")));
        }
        solutions.push(extract_solution(&x, &candidates)?);
        elements.push(element_json(&x));
    }
    Ok(StrassmannCertificate {
        f04: f04.to_json(),
        h: h.to_json(),
        f02: f02.to_json(),
        strassmann,
        roots: vec![0, 1],
        elements,
        solutions,
    })
}

/// Options for [`verify_theorem_with`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub prec: Option<u32>,
    pub case_bound: i64,
    /// Box size for an oracle cross-check run alongside the branches.
    pub oracle_bound: Option<i64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            prec: None,
            case_bound: 25,
            oracle_bound: None,
        }
    }
}

pub fn verify_theorem(b: &BigInt) -> Result<TheoremCertificate, QuinticError> {
    verify_theorem_with(b, &VerifyOptions::default())
}

pub fn verify_theorem_with(b: &BigInt, opts: &VerifyOptions) -> Result<TheoremCertificate, QuinticError> {
    let start = Instant::now();
    let inst = build_instance(b, opts.prec)?;
    let ((cases, (f1, f0)), oracle) = rayon::join(
        || {
            rayon::join(
                || case_reduction(&inst, opts.case_bound),
                || rayon::join(|| branch_f1(&inst), || branch_f0(&inst)),
            )
        },
        || opts.oracle_bound.map(|bound| crate::oracle::brute_force(b, bound)),
    );
    let (cases, f1, f0) = (cases?, f1?, f0?);

    let found: Vec<Solution> = std::iter::once(f1.solution.clone()).chain(f0.solutions.iter().cloned()).collect();
    let solutions = inst.expected_solutions();
    if found.len() != 3 || solution_set(&found) != solution_set(&solutions) {
        return Err(QuinticError::InvalidCertificate(format!("branches produced {found:?}")));
    }
    for s in &solutions {
        if !thue_form(b, &s.m, &s.n).is_one() {
            return Err(QuinticError::SolutionCheckFailed {
                m: s.m.clone(),
                n: s.n.clone(),
            });
        }
    }
    let oracle = oracle.map(|r| OracleCrossCheck::new(&r, &solutions));
    let (rank, pivots) = rank_profile(&inst.units.logs);
    let cert = TheoremCertificate {
        b: b.clone(),
        k: inst.k,
        prec: inst.prec,
        unit_system: UnitSystemSummary {
            units: vec![element_json(&inst.xi1), element_json(&inst.xi2)],
            exponents: inst.units.exponents.clone(),
            logs: inst.units.logs.iter().map(element_json).collect(),
            rank,
            pivots,
        },
        case_reduction: cases,
        skolem_branch: f1,
        strassmann_branch: f0,
        solutions,
        external_dependencies: EXTERNAL_DEPENDENCIES.iter().map(|s| s.to_string()).collect(),
        oracle,
        glossary: certificate::glossary(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    cert.validate()?;
    Ok(cert)
}

pub(crate) fn solution_set(xs: &[Solution]) -> BTreeSet<Solution> {
    xs.iter().cloned().collect()
}

pub(crate) fn fits_box(s: &Solution, bound: i64) -> bool {
    let b = BigInt::from(bound);
    s.m.abs() <= b && s.n.abs() <= b
}
