//! p-adic logarithm and exponential, Strassmann's bound, Skolem's criterion
//! and an order-one Weierstrass solver.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::padic::{factorial_valuation, floor_log, split_p_power, PadicError, PadicInt, Valuation};
use crate::series::{Coefficient, Monomial, SeriesError, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("log needs u ≡ 1 mod q, but u − 1 has valuation {0}")]
    NotPrincipalUnit(Valuation),
    #[error("exp needs an argument in qR, got valuation {0}")]
    ArgumentNotInQR(Valuation),
    #[error("minimal valuation cannot be certified: {0}")]
    InsufficientPrecision(String),
    #[error("every coefficient vanishes at the available precision")]
    ZeroSeries,
    #[error("series {series} is not linear modulo p at monomial {exp:?}")]
    NotLinearModP { series: usize, exp: Monomial },
    #[error("series is not general of order one: {0}")]
    NotGeneralOfOrderOne(&'static str),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("fixed-point iteration did not settle within {0} steps")]
    NoConvergence(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

fn lift_ring<C: Coefficient>(ring: &C::Ring, guard: u32) -> Result<C::Ring, PadicError> {
    let ctx = C::ring_context(ring);
    Ok(C::ring_with_context(ring, &ctx.with_prec(ctx.prec() + guard)?))
}

/// `x / n` for a positive integer `n` with `x` divisible by `p^{v_p(n)}`.
fn div_by_integer<C: Coefficient>(x: &C, n: u64) -> Result<C, PadicError> {
    let ctx = C::ring_context(&x.ring()).clone();
    let (v, unit) = split_p_power(&BigInt::from(n), ctx.p()).expect("n is positive");
    let inv = PadicInt::from_integer(&ctx, &unit).invert()?;
    Ok(x.div_p_pow(v)?.scaled(&inv))
}

/// `log u = Σ (−1)^{n+1} (u − 1)^n / n` for `u ≡ 1 mod q`.
///
/// Terms stop at the first `M` with `M·c − ⌊log_p M⌋ ≥ N`, `c` the valuation of
/// `u − 1`, and the sum runs with `⌊log_p M⌋` guard digits.
pub fn padic_log<C: Coefficient>(u: &C) -> Result<C, AnalysisError> {
    let ring = u.ring();
    let ctx = C::ring_context(&ring).clone();
    let n = ctx.prec();
    let known = u.known_precision().min(n);
    let x = u.minus(&C::one(&ring));
    let val = x.valuation();
    if val.lower_bound() < ctx.q_valuation() {
        return Err(AnalysisError::NotPrincipalUnit(val));
    }
    let c = match val {
        Valuation::Exact(c) => c as u64,
        Valuation::AtLeast(_) => return Ok(C::zero(&ring).truncate_known(known)),
    };
    let p = ctx.p();
    let mut m = 1u64;
    while m * c < n as u64 + floor_log(m, p) as u64 {
        m += 1;
    }
    let big = lift_ring::<C>(&ring, floor_log(m, p))?;
    let xl = x.lifted(&big);
    let mut power = xl.clone();
    let mut acc = C::zero(&big);
    for k in 1..m {
        let term = div_by_integer(&power, k)?;
        acc = if k % 2 == 1 { acc.plus(&term) } else { acc.minus(&term) };
        power = power.times(&xl);
    }
    Ok(acc.to_ring(&ring).truncate_known(known))
}

/// Smallest `D` with `(D + 1)·c − ⌊D/(p − 1)⌋ ≥ target`.
fn exp_degree(c: u64, p: u32, target: u32) -> u64 {
    let mut d = 0u64;
    while (d + 1) * c < target as u64 + d / (p as u64 - 1) {
        d += 1;
    }
    d
}

/// `exp x = Σ x^n / n!` for `x ∈ qR`.
pub fn padic_exp<C: Coefficient>(x: &C) -> Result<C, AnalysisError> {
    let ring = x.ring();
    let ctx = C::ring_context(&ring).clone();
    let known = x.known_precision().min(ctx.prec());
    let val = x.valuation();
    if val.lower_bound() < ctx.q_valuation() {
        return Err(AnalysisError::ArgumentNotInQR(val));
    }
    let c = match val {
        Valuation::Exact(c) => c as u64,
        Valuation::AtLeast(_) => return Ok(C::one(&ring).truncate_known(known)),
    };
    let d = exp_degree(c, ctx.p(), ctx.prec());
    let big = lift_ring::<C>(&ring, factorial_valuation(d, ctx.p()) as u32)?;
    let xl = x.lifted(&big);
    let mut term = C::one(&big);
    let mut acc = term.clone();
    for k in 1..=d {
        term = div_by_integer(&term.times(&xl), k)?;
        acc = acc.plus(&term);
    }
    Ok(acc.to_ring(&ring).truncate_known(known))
}

/// `exp(t₁L₁ + … + t_kL_k)` as a truncated series for `k ∈ {1, 2}`.
///
/// The coefficient of `t^α` is `L^α / α!`. The degree cap is the smallest `D`
/// with `c(D + 1) − ⌊D/(p − 1)⌋ ≥ target`, where `c` is the least valuation of
/// the `L_i`, so every omitted coefficient lies in `p^target`.
pub fn exp_of_linear_form<C: Coefficient>(forms: &[C], target: u32) -> Result<TruncSeries<C>, AnalysisError> {
    let k = forms.len();
    if !(1..=2).contains(&k) {
        return Err(AnalysisError::DimensionMismatch(format!("{k} linear forms")));
    }
    let ring = forms[0].ring();
    if forms.iter().any(|l| l.ring() != ring) {
        return Err(SeriesError::DomainMismatch.into());
    }
    let ctx = C::ring_context(&ring).clone();
    let n = ctx.prec();
    let known = forms.iter().map(C::known_precision).min().unwrap_or(n);
    let prec = target.min(n).min(known);
    let val = forms.iter().map(C::valuation).reduce(Valuation::min).expect("k ≥ 1");
    if val.lower_bound() < ctx.q_valuation() {
        return Err(AnalysisError::ArgumentNotInQR(val));
    }
    let d = match val {
        Valuation::Exact(c) => exp_degree(c as u64, ctx.p(), prec),
        Valuation::AtLeast(_) => 0,
    };
    let big = lift_ring::<C>(&ring, factorial_valuation(d, ctx.p()) as u32)?;
    // divided powers L_i^a / a!
    let divided: Vec<Vec<C>> = forms
        .iter()
        .map(|l| {
            let ll = l.lifted(&big);
            let mut v = vec![C::one(&big)];
            for a in 1..=d {
                let next = div_by_integer(&v[a as usize - 1].times(&ll), a)?;
                v.push(next);
            }
            Ok(v)
        })
        .collect::<Result<_, PadicError>>()?;
    let mut terms = Vec::new();
    for i in 0..=d as usize {
        if k == 1 {
            terms.push(([i as u32, 0], divided[0][i].to_ring(&ring)));
            continue;
        }
        for j in 0..=(d as usize - i) {
            let c = divided[0][i].times(&divided[1][j]);
            terms.push(([i as u32, j as u32], c.to_ring(&ring)));
        }
    }
    Ok(TruncSeries::from_terms(&ring, k, d as u32, prec, terms)?)
}

/// Outcome of Strassmann's bound on a one-variable series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrassmannResult {
    pub p: u32,
    /// Least coefficient valuation.
    pub r: u32,
    /// Largest index attaining `r`.
    pub n_index: usize,
    /// At most this many zeros in `Z_p`.
    pub bound: usize,
    pub tail_prec: u32,
    pub valuations: Vec<Valuation>,
}

/// Strassmann's bound for `Σ a_n t^n` whose unstored coefficients all have
/// valuation at least `tail_prec`.
pub fn strassmann_bound(coeffs: &[PadicInt], tail_prec: u32) -> Result<StrassmannResult, AnalysisError> {
    let p = coeffs.first().map_or(0, |c| c.ctx().p());
    let valuations: Vec<Valuation> = coeffs.iter().map(PadicInt::valuation).collect();
    let r = valuations
        .iter()
        .filter_map(|v| v.exact())
        .min()
        .ok_or(AnalysisError::ZeroSeries)?;
    if r >= tail_prec {
        return Err(AnalysisError::InsufficientPrecision(format!(
            "minimal stored valuation {r} is not below the tail bound {tail_prec}"
        )));
    }
    let n_index = valuations
        .iter()
        .rposition(|v| *v == Valuation::Exact(r))
        .expect("r is attained");
    for (i, v) in valuations.iter().enumerate() {
        if let Valuation::AtLeast(k) = v {
            if *k < r || (*k == r && i > n_index) {
                return Err(AnalysisError::InsufficientPrecision(format!(
                    "coefficient {i} is only known to valuation ≥ {k}"
                )));
            }
        }
    }
    Ok(StrassmannResult {
        p,
        r,
        n_index,
        bound: n_index,
        tail_prec,
        valuations,
    })
}

/// Dense coefficients `a_0..=a_D` of a one-variable series, each known to the
/// series precision.
pub fn dense_coefficients(f: &TruncSeries<PadicInt>) -> Vec<PadicInt> {
    (0..=f.degree_cap())
        .map(|i| {
            let c = f.coefficient([i, 0]);
            c.truncate_known(f.prec())
        })
        .collect()
}

/// Strassmann's bound with the series precision as tail bound.
pub fn strassmann_series(f: &TruncSeries<PadicInt>) -> Result<StrassmannResult, AnalysisError> {
    if f.nvars() != 1 {
        return Err(AnalysisError::DimensionMismatch("Strassmann needs one variable".into()));
    }
    strassmann_bound(&dense_coefficients(f), f.prec())
}

/// Outcome of Skolem's criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkolemResult {
    pub p: u32,
    pub jacobian_mod_p: Vec<Vec<u32>>,
    pub det_mod_p: u32,
    pub unique: bool,
}

/// Determinant of a square matrix over `F_p`.
pub fn det_mod_p(m: &[Vec<u32>], p: u32) -> u32 {
    let p = p as u64;
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x as u64 % p).collect()).collect();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = (p - det) % p;
        }
        det = det * a[col][col] % p;
        let inv = mod_inverse(a[col][col], p);
        for row in col + 1..n {
            let f = a[row][col] * inv % p;
            for c in col..n {
                a[row][c] = (a[row][c] + p * p - f * a[col][c] % p) % p;
            }
        }
    }
    det as u32
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Skolem's criterion: `n` series in `n` variables, each linear modulo `p`
/// with constant term in `pZ_p`, have at most one common zero in `Z_p^n` when
/// the Jacobian of their linear parts is invertible modulo `p`.
pub fn skolem_criterion(system: &[TruncSeries<PadicInt>]) -> Result<SkolemResult, AnalysisError> {
    let n = system.len();
    if n == 0 || system.iter().any(|f| f.nvars() != n) {
        return Err(AnalysisError::DimensionMismatch(format!(
            "need n series in n variables, got {n}"
        )));
    }
    let p = system[0].ctx().p();
    let mut jac = vec![vec![0u32; n]; n];
    for (s, f) in system.iter().enumerate() {
        if f.prec() == 0 {
            return Err(AnalysisError::InsufficientPrecision(format!("series {s} has no known digit")));
        }
        for (e, c) in f.terms() {
            if c.valuation().lower_bound() > 0 {
                continue;
            }
            let deg = e[0] + e[1];
            if deg != 1 {
                return Err(AnalysisError::NotLinearModP { series: s, exp: *e });
            }
            let var = if e[0] == 1 { 0 } else { 1 };
            jac[s][var] = c.residue_mod_p();
        }
    }
    let det = det_mod_p(&jac, p);
    Ok(SkolemResult {
        p,
        jacobian_mod_p: jac,
        det_mod_p: det,
        unique: det != 0,
    })
}

/// The variable solved for by [`weierstrass_solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variable {
    T1,
    T2,
}

/// Solves `g(t₁, t₂) = 0` for one variable as a series in the other.
///
/// After removing the content, `g` must have zero constant term and a unit
/// coefficient `u` in the solved variable. The iteration
/// `h ← h − u⁻¹ g(t, h)` runs until the stored residual vanishes at its
/// precision. The returned precision bounds `h* − h` for the true root `h*`:
/// it is the smaller of the precision of `g` and the loss in composing the
/// nonlinear part of `g` with the nonlinear part of `h`.
pub fn weierstrass_solve(g: &TruncSeries<PadicInt>, solve_for: Variable) -> Result<TruncSeries<PadicInt>, AnalysisError> {
    if g.nvars() != 2 {
        return Err(AnalysisError::DimensionMismatch("expects a two-variable series".into()));
    }
    let g = match solve_for {
        Variable::T2 => g.clone(),
        Variable::T1 => g.swap_variables()?,
    };
    let content = match g.min_valuation() {
        Valuation::Exact(v) => v,
        Valuation::AtLeast(_) => return Err(AnalysisError::NotGeneralOfOrderOne("series vanishes")),
    };
    let g = g.div_p_pow(content)?;
    if !g.coefficient([0, 0]).is_zero() {
        return Err(AnalysisError::NotGeneralOfOrderOne("nonzero constant term"));
    }
    let u = g.coefficient([0, 1]);
    if !u.is_unit() {
        return Err(AnalysisError::NotGeneralOfOrderOne("linear coefficient is not a unit"));
    }
    let u_inv = u.invert()?;
    let ctx = g.ctx().clone();
    let cap = g.degree_cap();
    let n = ctx.prec();
    let nonlinear = TruncSeries::from_terms(
        &ctx,
        2,
        cap,
        g.prec(),
        g.terms().filter(|(e, _)| **e != [0, 1]).map(|(e, c)| (*e, c.clone())),
    )?;
    let mut h = TruncSeries::zero(&ctx, 1, cap, n)?;
    let max_iter = (g.prec() + cap + 2) as usize;
    for _ in 0..max_iter {
        let residual = nonlinear.substitute(&h)?.add(&h.scale(&u))?;
        if residual.is_zero() {
            return Ok(h.with_prec(residual.prec()));
        }
        let stored = TruncSeries::from_terms(&ctx, 1, cap, n, residual.terms().map(|(e, c)| (*e, c.clone())))?;
        h = h.sub(&stored.scale(&u_inv))?;
    }
    Err(AnalysisError::NoConvergence(max_iter))
}
