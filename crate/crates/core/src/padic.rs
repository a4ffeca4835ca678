//! Fixed-precision arithmetic in `Z_p`.
//!
//! A [`PadicInt`] is a residue modulo `p^N` together with the number of
//! digits that are actually known. Most values carry full precision; the
//! known precision only drops after exact division by a power of `p`, which
//! shifts unknown digits into the top of the residue.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not a prime number")]
    NotPrime(u32),
    #[error("p-adic precision must be at least 1")]
    ZeroPrecision,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("denominator {den} is divisible by p = {p}")]
    DenominatorNotUnit { den: BigInt, p: u32 },
    #[error("element is not a unit (valuation {0})")]
    NotAUnit(Valuation),
    #[error("cannot divide by p^{shift}: valuation is {valuation}")]
    NotDivisible { shift: u32, valuation: Valuation },
    #[error("mixed p-adic contexts: (p={0}, N={1}) vs (p={2}, N={3})")]
    ContextMismatch(u32, u32, u32, u32),
}

/// A p-adic valuation observed at finite precision.
///
/// `AtLeast(k)` means the element is zero modulo `p^k`, where `k` is all the
/// precision available; the true valuation cannot be certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Valuation {
    Exact(u32),
    AtLeast(u32),
}

impl Valuation {
    pub fn lower_bound(self) -> u32 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn exact(self) -> Option<u32> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// Valuation of a sum-like combination: the minimum of two valuations.
    pub fn min(self, other: Valuation) -> Valuation {
        use Valuation::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) => {
                if a < b {
                    Exact(a)
                } else {
                    AtLeast(b)
                }
            }
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of the largest power of `p` dividing `x`, or `None` for zero.
pub fn int_valuation(x: &BigInt, p: u32) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut cur = x.clone();
    loop {
        let (q, r) = cur.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        cur = q;
        v += 1;
    }
}

/// Upper bound `floor((n - 1) / (p - 1))` on `v_p(n!)` for `n >= 1`.
pub fn factorial_valuation_bound(n: u64, p: u32) -> u64 {
    if n == 0 {
        0
    } else {
        (n - 1) / (p as u64 - 1)
    }
}

/// Exact `v_p(n!)` by Legendre's formula.
pub fn factorial_valuation(n: u64, p: u32) -> u64 {
    let p = p as u64;
    let mut v = 0;
    let mut pk = p;
    while pk <= n {
        v += n / pk;
        pk = match pk.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    v
}

/// `floor(log_p n)` for `n >= 1`.
pub fn floor_log(n: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut k = 0;
    let mut pk = p;
    while pk <= n {
        k += 1;
        pk = match pk.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    k
}

struct ContextInner {
    p: u32,
    prec: u32,
    modulus: BigInt,
}

/// The prime `p` and working precision `N` shared by a family of values.
#[derive(Clone)]
pub struct PadicContext {
    inner: Arc<ContextInner>,
}

impl PadicContext {
    pub fn new(p: u32, prec: u32) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if prec == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        let modulus = num_traits::pow(BigInt::from(p), prec as usize);
        Ok(PadicContext {
            inner: Arc::new(ContextInner { p, prec, modulus }),
        })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    /// The auxiliary modulus: 4 when `p = 2`, otherwise `p`.
    pub fn q(&self) -> u32 {
        if self.inner.p == 2 {
            4
        } else {
            self.inner.p
        }
    }

    /// `v_p(q)`.
    pub fn q_valuation(&self) -> u32 {
        if self.inner.p == 2 {
            2
        } else {
            1
        }
    }

    pub fn prec(&self) -> u32 {
        self.inner.prec
    }

    /// `p^N`.
    pub fn modulus(&self) -> &BigInt {
        &self.inner.modulus
    }

    pub fn with_prec(&self, prec: u32) -> Result<Self, PadicError> {
        if prec == self.prec() {
            return Ok(self.clone());
        }
        PadicContext::new(self.p(), prec)
    }

    pub fn p_pow(&self, e: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.p()), e as usize)
    }

    pub(crate) fn reduce(&self, x: &BigInt) -> BigInt {
        x.mod_floor(self.modulus())
    }

    pub(crate) fn check_same(&self, other: &PadicContext) -> Result<(), PadicError> {
        if self == other {
            Ok(())
        } else {
            Err(PadicError::ContextMismatch(
                self.p(),
                self.prec(),
                other.p(),
                other.prec(),
            ))
        }
    }

    /// Valuation of a residue modulo `p^N`, capped at `known`.
    pub(crate) fn residue_valuation(&self, residue: &BigInt, known: u32) -> Valuation {
        match int_valuation(residue, self.p()) {
            Some(v) if v < known => Valuation::Exact(v),
            _ => Valuation::AtLeast(known),
        }
    }
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.prec == other.inner.prec)
    }
}

impl Eq for PadicContext {}

impl fmt::Debug for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}/{}^{}", self.p(), self.p(), self.prec())
    }
}

/// An element of `Z_p` known modulo `p^known`, stored as a residue modulo `p^N`.
#[derive(Clone)]
pub struct PadicInt {
    ctx: PadicContext,
    residue: BigInt,
    known: u32,
}

impl PadicInt {
    pub fn zero(ctx: &PadicContext) -> Self {
        PadicInt {
            ctx: ctx.clone(),
            residue: BigInt::zero(),
            known: ctx.prec(),
        }
    }

    pub fn one(ctx: &PadicContext) -> Self {
        PadicInt::from_integer(ctx, &BigInt::one())
    }

    pub fn from_integer(ctx: &PadicContext, n: &BigInt) -> Self {
        PadicInt {
            ctx: ctx.clone(),
            residue: ctx.reduce(n),
            known: ctx.prec(),
        }
    }

    pub fn from_i64(ctx: &PadicContext, n: i64) -> Self {
        PadicInt::from_integer(ctx, &BigInt::from(n))
    }

    /// The image of `num / den` in `Z_p`, defined when `p` does not divide `den`.
    pub fn from_rational(num: &BigInt, den: &BigInt, ctx: &PadicContext) -> Result<Self, PadicError> {
        if den.is_zero() {
            return Err(PadicError::ZeroDenominator);
        }
        if (den % BigInt::from(ctx.p())).is_zero() {
            return Err(PadicError::DenominatorNotUnit {
                den: den.clone(),
                p: ctx.p(),
            });
        }
        let inv = PadicInt::from_integer(ctx, den).invert()?;
        Ok(&PadicInt::from_integer(ctx, num) * &inv)
    }

    /// Builds an element from a raw residue and an explicit known precision.
    pub fn with_known_precision(ctx: &PadicContext, residue: &BigInt, known: u32) -> Self {
        PadicInt {
            ctx: ctx.clone(),
            residue: ctx.reduce(residue),
            known: known.min(ctx.prec()),
        }
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn known_precision(&self) -> u32 {
        self.known
    }

    /// Representative in `(-p^k/2, p^k/2]` where `k` is the known precision.
    pub fn signed_residue(&self) -> BigInt {
        let m = self.ctx.p_pow(self.known);
        let r = self.residue.mod_floor(&m);
        if &r * 2 > m {
            r - m
        } else {
            r
        }
    }

    pub fn valuation(&self) -> Valuation {
        self.ctx.residue_valuation(&self.residue, self.known)
    }

    /// True when the element vanishes at its known precision.
    pub fn is_zero(&self) -> bool {
        matches!(self.valuation(), Valuation::AtLeast(_))
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Exact(0)
    }

    /// Lowers the known precision to at most `known`.
    pub fn truncate_known(&self, known: u32) -> Self {
        PadicInt {
            ctx: self.ctx.clone(),
            residue: self.residue.clone(),
            known: self.known.min(known),
        }
    }

    /// Moves the residue into another context with the same prime.
    ///
    /// Lifting to a larger precision keeps the residue as representative; the
    /// extra digits are not known.
    pub fn to_context(&self, ctx: &PadicContext) -> Self {
        assert_eq!(self.ctx.p(), ctx.p(), "cannot change the prime of a p-adic value");
        PadicInt {
            ctx: ctx.clone(),
            residue: ctx.reduce(&self.residue),
            known: self.known.min(ctx.prec()),
        }
    }

    /// Congruence with an exact integer at the known precision.
    pub fn matches_integer(&self, n: &BigInt) -> bool {
        let m = self.ctx.p_pow(self.known);
        (&self.residue - n).mod_floor(&m).is_zero()
    }

    pub fn checked_add(&self, rhs: &PadicInt) -> Result<PadicInt, PadicError> {
        self.ctx.check_same(&rhs.ctx)?;
        Ok(PadicInt {
            ctx: self.ctx.clone(),
            residue: self.ctx.reduce(&(&self.residue + &rhs.residue)),
            known: self.known.min(rhs.known),
        })
    }

    pub fn checked_sub(&self, rhs: &PadicInt) -> Result<PadicInt, PadicError> {
        self.ctx.check_same(&rhs.ctx)?;
        Ok(PadicInt {
            ctx: self.ctx.clone(),
            residue: self.ctx.reduce(&(&self.residue - &rhs.residue)),
            known: self.known.min(rhs.known),
        })
    }

    pub fn checked_mul(&self, rhs: &PadicInt) -> Result<PadicInt, PadicError> {
        self.ctx.check_same(&rhs.ctx)?;
        let known = product_known(
            self.known,
            self.valuation().lower_bound(),
            rhs.known,
            rhs.valuation().lower_bound(),
            self.ctx.prec(),
        );
        Ok(PadicInt {
            ctx: self.ctx.clone(),
            residue: self.ctx.reduce(&(&self.residue * &rhs.residue)),
            known,
        })
    }

    pub fn pow(&self, mut e: u64) -> PadicInt {
        let mut base = self.clone();
        let mut acc = PadicInt::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit, by Newton iteration `y <- y (2 - x y)` from the
    /// inverse modulo `p`.
    pub fn invert(&self) -> Result<PadicInt, PadicError> {
        if !self.is_unit() {
            return Err(PadicError::NotAUnit(self.valuation()));
        }
        let p = BigInt::from(self.ctx.p());
        let seed = if self.ctx.p() == 2 {
            BigInt::one()
        } else {
            self.residue.modpow(&(&p - 2u32), &p)
        };
        let modulus = self.ctx.modulus();
        let two = BigInt::from(2u32);
        let mut y = seed;
        let mut correct = 1u32;
        while correct < self.ctx.prec() {
            let xy = (&self.residue * &y).mod_floor(modulus);
            y = (&y * (&two - xy)).mod_floor(modulus);
            correct = correct.saturating_mul(2);
        }
        Ok(PadicInt {
            ctx: self.ctx.clone(),
            residue: y,
            known: self.known,
        })
    }

    /// Exact division by `p^shift`; the result is known to `shift` fewer digits.
    pub fn div_p_pow(&self, shift: u32) -> Result<PadicInt, PadicError> {
        if shift == 0 {
            return Ok(self.clone());
        }
        let val = self.valuation();
        if val.lower_bound() < shift {
            return Err(PadicError::NotDivisible { shift, valuation: val });
        }
        let pk = self.ctx.p_pow(shift);
        Ok(PadicInt {
            ctx: self.ctx.clone(),
            residue: &self.residue / pk,
            known: self.known - shift,
        })
    }

    pub fn mul_p_pow(&self, shift: u32) -> PadicInt {
        PadicInt {
            ctx: self.ctx.clone(),
            residue: self.ctx.reduce(&(&self.residue * self.ctx.p_pow(shift))),
            known: (self.known + shift).min(self.ctx.prec()),
        }
    }

    /// Multiplication by a rational with unit denominator.
    pub fn mul_rational(&self, num: i64, den: i64) -> Result<PadicInt, PadicError> {
        let r = PadicInt::from_rational(&BigInt::from(num), &BigInt::from(den), &self.ctx)?;
        Ok(self * &r)
    }

    /// Residue modulo `p` as a machine integer.
    pub fn residue_mod_p(&self) -> u32 {
        (&self.residue % BigInt::from(self.ctx.p()))
            .to_u32()
            .expect("residue mod p fits in u32")
    }
}

/// Known precision of a product from the operands' precision and valuation.
pub(crate) fn product_known(ka: u32, va: u32, kb: u32, vb: u32, cap: u32) -> u32 {
    (ka.saturating_add(vb)).min(kb.saturating_add(va)).min(cap)
}

impl PartialEq for PadicInt {
    /// Equality at the smaller of the two known precisions.
    fn eq(&self, other: &Self) -> bool {
        if self.ctx != other.ctx {
            return false;
        }
        let k = self.known.min(other.known);
        let m = self.ctx.p_pow(k);
        (&self.residue - &other.residue).mod_floor(&m).is_zero()
    }
}

impl fmt::Debug for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.known < self.ctx.prec() {
            write!(f, "{} + O({}^{})", self.signed_residue(), self.ctx.p(), self.known)
        } else {
            write!(f, "{} mod {}^{}", self.signed_residue(), self.ctx.p(), self.known)
        }
    }
}

impl<'a> Add<&'a PadicInt> for &'a PadicInt {
    type Output = PadicInt;

    /// # Panics
    /// If the operands live in different contexts.
    fn add(self, rhs: &'a PadicInt) -> PadicInt {
        self.checked_add(rhs).expect("p-adic addition")
    }
}

impl<'a> Sub<&'a PadicInt> for &'a PadicInt {
    type Output = PadicInt;

    fn sub(self, rhs: &'a PadicInt) -> PadicInt {
        self.checked_sub(rhs).expect("p-adic subtraction")
    }
}

impl<'a> Mul<&'a PadicInt> for &'a PadicInt {
    type Output = PadicInt;

    fn mul(self, rhs: &'a PadicInt) -> PadicInt {
        self.checked_mul(rhs).expect("p-adic multiplication")
    }
}

impl Neg for &PadicInt {
    type Output = PadicInt;

    fn neg(self) -> PadicInt {
        PadicInt {
            ctx: self.ctx.clone(),
            residue: self.ctx.reduce(&-&self.residue),
            known: self.known,
        }
    }
}

/// Splits a nonzero integer into `p^v * u` with `p` not dividing `u`.
pub fn split_p_power(n: &BigInt, p: u32) -> Option<(u32, BigInt)> {
    let v = int_valuation(n, p)?;
    let u = n / num_traits::pow(BigInt::from(p), v as usize);
    Some((v, u))
}
