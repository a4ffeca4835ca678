//! Truncated power series in one or two variables over `Z_p` or `R`.
//!
//! A [`TruncSeries`] stores the monomials of total degree at most
//! `degree_cap` together with a precision `prec`: the difference between the
//! true series and the stored polynomial has every coefficient in
//! `p^prec`. This one number covers both rounding of the stored coefficients
//! and the omitted terms of higher degree, and every operation below
//! propagates it conservatively.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraElement};
use crate::padic::{split_p_power, PadicContext, PadicError, PadicInt, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series live over different coefficient domains")]
    DomainMismatch,
    #[error("series must have 1 or 2 variables, got {0}")]
    UnsupportedVariableCount(usize),
    #[error("exponent {exp:?} is invalid for a {nvars}-variable series of degree cap {cap}")]
    ExponentOutOfRange { exp: Monomial, nvars: usize, cap: u32 },
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(&'static str),
    #[error("malformed series encoding: {0}")]
    Malformed(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// Exponents `(i, j)` of `t₁^i t₂^j`; one-variable series keep `j = 0`.
pub type Monomial = [u32; 2];

/// Coefficient domains usable in a [`TruncSeries`].
pub trait Coefficient: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Ring: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ring(&self) -> Self::Ring;
    fn ring_context(ring: &Self::Ring) -> &PadicContext;
    /// The same ring over another precision.
    fn ring_with_context(ring: &Self::Ring, ctx: &PadicContext) -> Self::Ring;
    fn zero(ring: &Self::Ring) -> Self;
    fn one(ring: &Self::Ring) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, s: &PadicInt) -> Self;
    fn valuation(&self) -> Valuation;
    fn known_precision(&self) -> u32;
    fn truncate_known(&self, known: u32) -> Self;
    fn div_p_pow(&self, shift: u32) -> Result<Self, PadicError>;
    fn to_ring(&self, ring: &Self::Ring) -> Self;
    /// Moves to a ring of higher precision, treating the residue as exact.
    fn lifted(&self, ring: &Self::Ring) -> Self;
    fn residue_strings(&self) -> Vec<String>;
}

impl Coefficient for PadicInt {
    type Ring = PadicContext;

    fn ring(&self) -> PadicContext {
        self.ctx().clone()
    }
    fn ring_context(ring: &PadicContext) -> &PadicContext {
        ring
    }
    fn ring_with_context(_: &PadicContext, ctx: &PadicContext) -> PadicContext {
        ctx.clone()
    }
    fn zero(ring: &PadicContext) -> Self {
        PadicInt::zero(ring)
    }
    fn one(ring: &PadicContext) -> Self {
        PadicInt::one(ring)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, s: &PadicInt) -> Self {
        self * s
    }
    fn valuation(&self) -> Valuation {
        PadicInt::valuation(self)
    }
    fn known_precision(&self) -> u32 {
        PadicInt::known_precision(self)
    }
    fn truncate_known(&self, known: u32) -> Self {
        PadicInt::truncate_known(self, known)
    }
    fn div_p_pow(&self, shift: u32) -> Result<Self, PadicError> {
        PadicInt::div_p_pow(self, shift)
    }
    fn to_ring(&self, ring: &PadicContext) -> Self {
        self.to_context(ring)
    }
    fn lifted(&self, ring: &PadicContext) -> Self {
        PadicInt::with_known_precision(ring, self.residue(), ring.prec())
    }
    fn residue_strings(&self) -> Vec<String> {
        vec![self.residue().to_string()]
    }
}

impl Coefficient for AlgebraElement {
    type Ring = Algebra;

    fn ring(&self) -> Algebra {
        self.algebra().clone()
    }
    fn ring_context(ring: &Algebra) -> &PadicContext {
        ring.ctx()
    }
    fn ring_with_context(ring: &Algebra, ctx: &PadicContext) -> Algebra {
        ring.with_context(ctx).expect("same modulus over a new precision")
    }
    fn zero(ring: &Algebra) -> Self {
        AlgebraElement::zero(ring)
    }
    fn one(ring: &Algebra) -> Self {
        AlgebraElement::one(ring)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, s: &PadicInt) -> Self {
        self.scale(s)
    }
    fn valuation(&self) -> Valuation {
        self.module_valuation()
    }
    fn known_precision(&self) -> u32 {
        AlgebraElement::known_precision(self)
    }
    fn truncate_known(&self, known: u32) -> Self {
        AlgebraElement::truncate_known(self, known)
    }
    fn div_p_pow(&self, shift: u32) -> Result<Self, PadicError> {
        AlgebraElement::div_p_pow(self, shift)
    }
    fn to_ring(&self, ring: &Algebra) -> Self {
        self.to_algebra(ring).expect("same modulus")
    }
    fn lifted(&self, ring: &Algebra) -> Self {
        let coeffs = self.coeffs().iter().map(|c| c.lifted(ring.ctx())).collect();
        AlgebraElement::from_coeffs(ring, coeffs).expect("same rank")
    }
    fn residue_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(|c| c.residue().to_string()).collect()
    }
}

/// A truncated power series with certified precision.
#[derive(Clone)]
pub struct TruncSeries<C: Coefficient> {
    ring: C::Ring,
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
    degree_cap: u32,
    prec: u32,
}

fn degree(e: &Monomial) -> u32 {
    e[0] + e[1]
}

impl<C: Coefficient> TruncSeries<C> {
    /// The zero series.
    pub fn zero(ring: &C::Ring, nvars: usize, degree_cap: u32, prec: u32) -> Result<Self, SeriesError> {
        if !(1..=2).contains(&nvars) {
            return Err(SeriesError::UnsupportedVariableCount(nvars));
        }
        Ok(TruncSeries {
            ring: ring.clone(),
            nvars,
            terms: BTreeMap::new(),
            degree_cap,
            prec: prec.min(C::ring_context(ring).prec()),
        })
    }

    pub fn from_terms<I>(ring: &C::Ring, nvars: usize, degree_cap: u32, prec: u32, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut s = TruncSeries::zero(ring, nvars, degree_cap, prec)?;
        for (e, c) in terms {
            if (nvars == 1 && e[1] != 0) || degree(&e) > degree_cap {
                return Err(SeriesError::ExponentOutOfRange { exp: e, nvars, cap: degree_cap });
            }
            if &c.ring() != ring {
                return Err(SeriesError::DomainMismatch);
            }
            s.accumulate(e, c);
        }
        Ok(s.finish())
    }

    pub fn constant(c: &C, nvars: usize, degree_cap: u32, prec: u32) -> Result<Self, SeriesError> {
        TruncSeries::from_terms(&c.ring(), nvars, degree_cap, prec, [([0, 0], c.clone())])
    }

    /// The series `t_var` (`var` is 0 or 1).
    pub fn variable(ring: &C::Ring, nvars: usize, var: usize, degree_cap: u32, prec: u32) -> Result<Self, SeriesError> {
        let mut e = [0, 0];
        e[var] = 1;
        TruncSeries::from_terms(ring, nvars, degree_cap, prec, [(e, C::one(ring))])
    }

    pub fn ring(&self) -> &C::Ring {
        &self.ring
    }

    pub fn ctx(&self) -> &PadicContext {
        C::ring_context(&self.ring)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// Every coefficient of (true series − stored polynomial) lies in `p^prec`.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: Monomial) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(|| C::zero(&self.ring))
    }

    /// Valuation of a stored coefficient, capped by the series precision.
    pub fn coefficient_valuation(&self, e: Monomial) -> Valuation {
        let cap = Valuation::AtLeast(self.prec);
        self.terms.get(&e).map_or(cap, |c| c.valuation().min(cap))
    }

    /// Smallest coefficient valuation, counting the error term.
    pub fn min_valuation(&self) -> Valuation {
        self.terms
            .values()
            .map(|c| c.valuation())
            .fold(Valuation::AtLeast(self.prec), Valuation::min)
    }

    /// True when the series vanishes at its precision.
    pub fn is_zero(&self) -> bool {
        matches!(self.min_valuation(), Valuation::AtLeast(_))
    }

    fn accumulate(&mut self, e: Monomial, c: C) {
        match self.terms.get_mut(&e) {
            Some(existing) => *existing = existing.plus(&c),
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Caps the precision by the coefficients' own precision and drops zeros.
    fn finish(mut self) -> Self {
        let n = self.ctx().prec();
        let known = self.terms.values().map(|c| c.known_precision()).min().unwrap_or(n);
        self.prec = self.prec.min(known).min(n);
        let prec = self.prec;
        self.terms.retain(|_, c| c.valuation().lower_bound() < prec || !matches!(c.valuation(), Valuation::AtLeast(_)));
        self
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ring != other.ring || self.nvars != other.nvars {
            return Err(SeriesError::DomainMismatch);
        }
        Ok(())
    }

    fn clipped_valuation(&self, c: &C) -> u32 {
        c.valuation().lower_bound().min(self.prec)
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let cap = self.degree_cap.min(other.degree_cap);
        let mut prec = self.prec.min(other.prec);
        let mut out = TruncSeries::zero(&self.ring, self.nvars, cap, prec)?;
        for (e, c) in &self.terms {
            if degree(e) > cap {
                prec = prec.min(self.clipped_valuation(c));
            } else {
                out.accumulate(*e, c.clone());
            }
        }
        for (e, c) in &other.terms {
            if degree(e) > cap {
                prec = prec.min(other.clipped_valuation(c));
            } else {
                out.accumulate(*e, if subtract { c.negated() } else { c.clone() });
            }
        }
        out.prec = prec;
        Ok(out.finish())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.negated();
        }
        out
    }

    /// Minimum stored valuation for each total degree `0..=cap`.
    fn valuation_by_degree(&self) -> Vec<Option<u32>> {
        let mut out = vec![None; self.degree_cap as usize + 1];
        for (e, c) in &self.terms {
            let v = self.clipped_valuation(c);
            let slot = &mut out[degree(e) as usize];
            *slot = Some(slot.map_or(v, |w: u32| w.min(v)));
        }
        out
    }

    /// Product truncated to the smaller degree cap.
    ///
    /// With `f = f_s + E_f` and `g = g_s + E_g`, the error of the product is
    /// bounded by `E_f g_s`, `f_s E_g`, `E_f E_g` and the stored products that
    /// fall above the cap.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let cap = self.degree_cap.min(other.degree_cap);
        let n = self.ctx().prec();
        let vmin_f = self.terms.values().map(|c| self.clipped_valuation(c)).min();
        let vmin_g = other.terms.values().map(|c| other.clipped_valuation(c)).min();
        let mut prec = self.prec.saturating_add(other.prec).min(n);
        if let Some(v) = vmin_g {
            prec = prec.min(self.prec.saturating_add(v));
        }
        if let Some(v) = vmin_f {
            prec = prec.min(other.prec.saturating_add(v));
        }
        let vf = self.valuation_by_degree();
        let vg = other.valuation_by_degree();
        for (d1, a) in vf.iter().enumerate() {
            for (d2, b) in vg.iter().enumerate() {
                if let (Some(a), Some(b)) = (a, b) {
                    if (d1 + d2) as u32 > cap {
                        prec = prec.min(a + b);
                    }
                }
            }
        }
        let mut out = TruncSeries::zero(&self.ring, self.nvars, cap, prec)?;
        for (e1, a) in &self.terms {
            for (e2, b) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1]];
                if degree(&e) <= cap {
                    out.accumulate(e, a.times(b));
                }
            }
        }
        Ok(out.finish())
    }

    /// Multiplication by a scalar of `Z_p`.
    pub fn scale(&self, s: &PadicInt) -> Self {
        let vs = s.valuation().lower_bound();
        let vmin = self.terms.values().map(|c| self.clipped_valuation(c)).min();
        let mut prec = self.prec.saturating_add(vs).min(self.ctx().prec());
        if let Some(v) = vmin {
            prec = prec.min(s.known_precision().saturating_add(v));
        }
        let mut out = TruncSeries {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (*e, c.scaled(s))).collect(),
            degree_cap: self.degree_cap,
            prec,
        };
        out.prec = prec;
        out.finish()
    }

    /// Multiplication of every coefficient by a fixed element of the ring.
    pub fn mul_coefficient(&self, c: &C) -> Result<Self, SeriesError> {
        if c.ring() != self.ring {
            return Err(SeriesError::DomainMismatch);
        }
        let k = TruncSeries::constant(c, self.nvars, self.degree_cap, self.ctx().prec())?;
        k.mul(self)
    }

    /// Exact division by `p^shift`; needs every coefficient and the error
    /// term to be divisible.
    pub fn div_p_pow(&self, shift: u32) -> Result<Self, SeriesError> {
        if self.prec < shift {
            return Err(PadicError::NotDivisible {
                shift,
                valuation: Valuation::AtLeast(self.prec),
            }
            .into());
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(*e, c.truncate_known(self.prec).div_p_pow(shift)?);
        }
        let out = TruncSeries {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms,
            degree_cap: self.degree_cap,
            prec: self.prec - shift,
        };
        Ok(out.finish())
    }

    /// Exact division by a nonzero integer.
    pub fn div_integer(&self, d: &BigInt) -> Result<Self, SeriesError> {
        let p = self.ctx().p();
        let (v, unit) = split_p_power(d, p).ok_or(PadicError::ZeroDenominator)?;
        let inv = PadicInt::from_integer(self.ctx(), &unit).invert()?;
        Ok(self.div_p_pow(v)?.scale(&inv))
    }

    /// Drops every monomial above `cap`, folding them into the error term.
    pub fn truncate(&self, cap: u32) -> Self {
        let mut out = self.clone();
        out.degree_cap = cap.min(self.degree_cap);
        let mut prec = out.prec;
        out.terms.retain(|e, c| {
            if degree(e) > cap {
                prec = prec.min(c.valuation().lower_bound());
                false
            } else {
                true
            }
        });
        out.prec = prec;
        out
    }

    /// Restricts the error bound to a smaller precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        let mut out = self.clone();
        out.prec = out.prec.min(prec);
        out.finish()
    }

    /// Exchanges `t₁` and `t₂`.
    pub fn swap_variables(&self) -> Result<Self, SeriesError> {
        if self.nvars != 2 {
            return Err(SeriesError::UnsupportedVariableCount(self.nvars));
        }
        let mut out = self.clone();
        out.terms = self.terms.iter().map(|(e, c)| ([e[1], e[0]], c.clone())).collect();
        Ok(out)
    }

    /// Value at a point of `Z_p^nvars`, known to the series precision.
    pub fn eval(&self, point: &[PadicInt]) -> Result<C, SeriesError> {
        if point.len() != self.nvars {
            return Err(SeriesError::UnsupportedVariableCount(point.len()));
        }
        for x in point {
            if x.ctx() != self.ctx() {
                return Err(SeriesError::DomainMismatch);
            }
        }
        let powers: Vec<Vec<PadicInt>> = point
            .iter()
            .map(|x| {
                let mut v = vec![PadicInt::one(self.ctx())];
                for i in 1..=self.degree_cap as usize {
                    let next = &v[i - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = C::zero(&self.ring);
        for (e, c) in &self.terms {
            let mut m = powers[0][e[0] as usize].clone();
            if self.nvars == 2 {
                m = &m * &powers[1][e[1] as usize];
            }
            acc = acc.plus(&c.scaled(&m));
        }
        Ok(acc.truncate_known(self.prec))
    }

    /// Evaluation at integer points.
    pub fn eval_integers(&self, point: &[i64]) -> Result<C, SeriesError> {
        let p: Vec<PadicInt> = point.iter().map(|&x| PadicInt::from_i64(self.ctx(), x)).collect();
        self.eval(&p)
    }

    /// `f(t₁, h(t₁))` for a two-variable `f` and a one-variable `h` over `Z_p`
    /// without constant term.
    ///
    /// The stored part is composed exactly up to the smaller degree cap.
    /// Monomials `c t₁^i t₂^j` with `i + j` within the cap only lose terms
    /// that contain a factor from the degree ≥ 2 part or the error of `h`,
    /// so the precision drops to at most `v(c) + w`, where `w` is the least
    /// valuation over those parts of `h`. Monomials above the cap are dropped
    /// whole.
    pub fn substitute(&self, h: &TruncSeries<PadicInt>) -> Result<Self, SeriesError> {
        if self.nvars != 2 || h.nvars != 1 {
            return Err(SeriesError::InvalidSubstitution("expects f(t₁, t₂) and h(t₁)"));
        }
        if h.ctx() != self.ctx() {
            return Err(SeriesError::DomainMismatch);
        }
        if h.terms.contains_key(&[0, 0]) {
            return Err(SeriesError::InvalidSubstitution("h has a nonzero constant term"));
        }
        let cap = self.degree_cap.min(h.degree_cap);
        let w = h
            .terms
            .iter()
            .filter(|(e, _)| e[0] >= 2)
            .map(|(_, c)| h.clipped_valuation(c))
            .fold(h.prec, u32::min);
        let max_j = self
            .terms
            .keys()
            .filter(|e| degree(e) <= cap)
            .map(|e| e[1])
            .max()
            .unwrap_or(0) as usize;

        let ctx = self.ctx();
        let len = cap as usize + 1;
        let mut h_dense = vec![PadicInt::zero(ctx); len];
        for (e, c) in &h.terms {
            if (e[0] as usize) < len {
                h_dense[e[0] as usize] = c.clone();
            }
        }
        let mut powers: Vec<Vec<PadicInt>> = Vec::with_capacity(max_j + 1);
        let mut unit = vec![PadicInt::zero(ctx); len];
        unit[0] = PadicInt::one(ctx);
        powers.push(unit);
        for j in 1..=max_j {
            let prev = &powers[j - 1];
            let mut next = vec![PadicInt::zero(ctx); len];
            for (a, x) in prev.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (b, y) in h_dense.iter().enumerate().take(len - a) {
                    if !y.is_zero() {
                        next[a + b] = &next[a + b] + &(x * y);
                    }
                }
            }
            powers.push(next);
        }

        let mut prec = self.prec;
        let mut out = TruncSeries::zero(&self.ring, 1, cap, self.prec)?;
        for (e, c) in &self.terms {
            let (i, j) = (e[0], e[1]);
            let vc = self.clipped_valuation(c);
            if i + j > cap {
                prec = prec.min(vc);
                continue;
            }
            if j >= 1 {
                prec = prec.min(vc.saturating_add(w));
            }
            for (d, x) in powers[j as usize].iter().enumerate().take(len - i as usize) {
                if !x.is_zero() {
                    out.accumulate([i + d as u32, 0], c.scaled(x));
                }
            }
        }
        out.prec = prec;
        Ok(out.finish())
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            p: self.ctx().p(),
            prec: self.prec,
            degree_cap: self.degree_cap,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e[..self.nvars].to_vec(),
                    coeffs: c.residue_strings(),
                })
                .collect(),
        }
    }
}

impl TruncSeries<AlgebraElement> {
    /// Splits a series over `R` into its coordinate series over `Z_p`.
    pub fn coefficient_vector(&self) -> Vec<TruncSeries<PadicInt>> {
        let ctx = self.ctx().clone();
        (0..self.ring.rank())
            .map(|j| {
                let terms = self.terms.iter().map(|(e, c)| (*e, c.coordinate(j).clone()));
                TruncSeries::from_terms(&ctx, self.nvars, self.degree_cap, self.prec, terms)
                    .expect("coordinates share the series shape")
            })
            .collect()
    }
}

impl TruncSeries<PadicInt> {
    /// Rebuilds a `Z_p` series from its JSON form; residues are read modulo
    /// `p^prec`.
    pub fn from_json(json: &SeriesJson) -> Result<Self, SeriesError> {
        let ctx = PadicContext::new(json.p, json.prec.max(1))?;
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            if t.exp.len() != json.nvars || t.coeffs.len() != 1 {
                return Err(SeriesError::Malformed(format!("term {:?}", t.exp)));
            }
            let mut e = [0, 0];
            e[..json.nvars].copy_from_slice(&t.exp);
            let r: BigInt = t.coeffs[0]
                .parse()
                .map_err(|_| SeriesError::Malformed(format!("residue {:?}", t.coeffs[0])))?;
            terms.push((e, PadicInt::from_integer(&ctx, &r)));
        }
        TruncSeries::from_terms(&ctx, json.nvars, json.degree_cap, json.prec, terms)
    }
}

impl<C: Coefficient> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.terms {
            write!(f, "({c:?})")?;
            match self.nvars {
                1 if e[0] > 0 => write!(f, "·t^{}", e[0])?,
                2 if degree(e) > 0 => write!(f, "·t1^{} t2^{}", e[0], e[1])?,
                _ => {}
            }
            write!(f, " + ")?;
        }
        write!(f, "O({}^{}) [deg <= {}]", self.ctx().p(), self.prec, self.degree_cap)
    }
}

/// JSON form of a series: residues modulo `p^N` as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub p: u32,
    pub prec: u32,
    pub degree_cap: u32,
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeffs: Vec<String>,
}
