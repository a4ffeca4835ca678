//! The free `Z_p`-algebra `R = Z_p[θ]/(f(θ))` for a monic integer polynomial `f`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::padic::{product_known, PadicContext, PadicError, PadicInt, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("defining polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("element is not a unit of R/pR")]
    NotAUnit,
    #[error(transparent)]
    Padic(#[from] PadicError),
}

struct AlgebraInner {
    ctx: PadicContext,
    /// Exact integer coefficients of the monic modulus, low to high, length r + 1.
    modulus: Vec<BigInt>,
    /// `θ^(r + j)` reduced to the power basis, for `j < r - 1`, modulo `p^N`.
    fold: Vec<Vec<BigInt>>,
}

/// `Z_p[θ]/(f)` at the precision of a fixed context.
#[derive(Clone)]
pub struct Algebra {
    inner: Arc<AlgebraInner>,
}

impl Algebra {
    /// Builds the algebra from the integer coefficients of a monic polynomial,
    /// listed from the constant term up.
    pub fn new(ctx: &PadicContext, modulus: &[BigInt]) -> Result<Self, AlgebraError> {
        let r = modulus.len().checked_sub(1).ok_or(AlgebraError::NotMonic)?;
        if r == 0 || !modulus[r].is_one() {
            return Err(AlgebraError::NotMonic);
        }
        let fold = power_basis_fold(modulus)
            .into_iter()
            .map(|v| v.iter().map(|c| ctx.reduce(c)).collect())
            .collect();
        Ok(Algebra {
            inner: Arc::new(AlgebraInner {
                ctx: ctx.clone(),
                modulus: modulus.to_vec(),
                fold,
            }),
        })
    }

    /// `Z_p` itself, presented as `Z_p[θ]/(θ)`.
    pub fn rank_one(ctx: &PadicContext) -> Self {
        Algebra::new(ctx, &[BigInt::zero(), BigInt::one()]).expect("θ is monic")
    }

    /// The same algebra over another precision.
    pub fn with_context(&self, ctx: &PadicContext) -> Result<Self, AlgebraError> {
        if ctx == self.ctx() {
            return Ok(self.clone());
        }
        Algebra::new(ctx, &self.inner.modulus)
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.inner.ctx
    }

    pub fn rank(&self) -> usize {
        self.inner.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.inner.modulus
    }

    /// Exact norm `N(g(θ)) = Res(f, g)` of an integral element, as an integer.
    pub fn exact_norm(&self, coeffs: &[BigInt]) -> BigInt {
        integer_norm(&self.inner.modulus, coeffs)
    }

    fn check_same(&self, other: &Algebra) -> Result<(), AlgebraError> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    fn mul_residues(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let r = self.rank();
        let mut full = vec![BigInt::zero(); 2 * r - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        let (low, high) = full.split_at_mut(r);
        for (j, c) in high.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (l, f) in low.iter_mut().zip(&self.inner.fold[j]) {
                *l += c * f;
            }
        }
        full.truncate(r);
        full.iter().map(|c| self.ctx().reduce(c)).collect()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.ctx == other.inner.ctx && self.inner.modulus == other.inner.modulus)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[θ]/(", self.ctx())?;
        write_poly(f, &self.inner.modulus)?;
        write!(f, ")")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        } else if c.is_negative() {
            write!(f, "-")?;
        }
        first = false;
        let a = c.abs();
        match (i, a.is_one()) {
            (0, _) => write!(f, "{a}")?,
            (1, true) => write!(f, "θ")?,
            (1, false) => write!(f, "{a}θ")?,
            (_, true) => write!(f, "θ^{i}")?,
            (_, false) => write!(f, "{a}θ^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `θ^(r + j)` for `j = 0..r-1` expressed in the basis `1, θ, …, θ^(r-1)`.
fn power_basis_fold(modulus: &[BigInt]) -> Vec<Vec<BigInt>> {
    let r = modulus.len() - 1;
    let mut out = Vec::with_capacity(r.saturating_sub(1));
    // θ^r = -(a_0 + a_1 θ + … + a_{r-1} θ^{r-1})
    let mut cur: Vec<BigInt> = modulus[..r].iter().map(|c| -c).collect();
    for _ in 0..r.saturating_sub(1) {
        out.push(cur.clone());
        // multiply by θ
        let top = cur[r - 1].clone();
        let mut next = vec![BigInt::zero(); r];
        next[1..r].clone_from_slice(&cur[..(r - 1)]);
        for (n, a) in next.iter_mut().zip(&modulus[..r]) {
            *n -= &top * a;
        }
        cur = next;
    }
    out
}

/// Exact product of integer polynomials reduced modulo a monic integer polynomial.
pub fn int_poly_mulmod(a: &[BigInt], b: &[BigInt], modulus: &[BigInt]) -> Vec<BigInt> {
    let r = modulus.len() - 1;
    let mut full = vec![BigInt::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            full[i + j] += x * y;
        }
    }
    for d in (r..full.len()).rev() {
        let c = std::mem::take(&mut full[d]);
        if c.is_zero() {
            continue;
        }
        for (i, m) in modulus[..r].iter().enumerate() {
            full[d - r + i] -= &c * m;
        }
    }
    full.truncate(r);
    full.resize(r, BigInt::zero());
    full
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Norm of `g(θ)` in `Z[θ]/(f)`: determinant of multiplication by `g`.
pub fn integer_norm(modulus: &[BigInt], coeffs: &[BigInt]) -> BigInt {
    let r = modulus.len() - 1;
    let mut g = coeffs.to_vec();
    g.resize(g.len().max(r), BigInt::zero());
    let g = int_poly_mulmod(&g, &[BigInt::one()], modulus);
    let mut cols = Vec::with_capacity(r);
    let mut basis = vec![BigInt::zero(); r];
    basis[0] = BigInt::one();
    for _ in 0..r {
        cols.push(int_poly_mulmod(&g, &basis, modulus));
        basis = int_poly_mulmod(&basis, &[BigInt::zero(), BigInt::one()], modulus);
    }
    let rows = (0..r).map(|i| (0..r).map(|j| cols[j][i].clone()).collect()).collect();
    bareiss_determinant(rows)
}

/// Minimal polynomial arithmetic over `F_p` used for unit tests and seeds.
mod fp {
    pub(super) type Poly = Vec<u64>;

    pub(super) fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    fn sub_scaled(a: &mut Poly, b: &[u64], c: u64, shift: usize, p: u64) {
        if a.len() < b.len() + shift {
            a.resize(b.len() + shift, 0);
        }
        for (i, &x) in b.iter().enumerate() {
            a[i + shift] = (a[i + shift] + p - x * c % p) % p;
        }
    }

    pub(super) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let lead_inv = inv(*b.last().expect("nonzero divisor"), p);
        let mut q = vec![0; r.len().saturating_sub(b.len()) + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * lead_inv % p;
            q[shift] = c;
            sub_scaled(&mut r, &b, c, shift, p);
            r = trim(r);
        }
        (trim(q), r)
    }

    fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
        let mut out = a.to_vec();
        sub_scaled(&mut out, b, 1, 0, p);
        trim(out)
    }

    /// Inverse of `a` modulo `f`, if `gcd(a, f) = 1`.
    pub(super) fn inverse_mod(a: &[u64], f: &[u64], p: u64) -> Option<Poly> {
        let (mut r0, mut r1) = (trim(f.to_vec()), trim(a.to_vec()));
        let (mut s0, mut s1): (Poly, Poly) = (vec![], vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = inv(r0[0], p);
        let s: Poly = s0.iter().map(|x| x * c % p).collect();
        Some(divrem(&s, f, p).1)
    }
}

/// An element of `R`, stored by its coordinates in the power basis.
#[derive(Clone)]
pub struct AlgebraElement {
    alg: Algebra,
    coeffs: Vec<PadicInt>,
}

impl AlgebraElement {
    pub fn from_coeffs(alg: &Algebra, coeffs: Vec<PadicInt>) -> Result<Self, AlgebraError> {
        if coeffs.len() != alg.rank() {
            return Err(AlgebraError::WrongLength {
                expected: alg.rank(),
                got: coeffs.len(),
            });
        }
        for c in &coeffs {
            alg.ctx().check_same(c.ctx())?;
        }
        Ok(AlgebraElement {
            alg: alg.clone(),
            coeffs,
        })
    }

    /// Element with the given integer coordinates; missing ones are zero.
    pub fn from_integers(alg: &Algebra, coeffs: &[BigInt]) -> Result<Self, AlgebraError> {
        if coeffs.len() > alg.rank() {
            return Err(AlgebraError::WrongLength {
                expected: alg.rank(),
                got: coeffs.len(),
            });
        }
        let mut c: Vec<PadicInt> = coeffs
            .iter()
            .map(|x| PadicInt::from_integer(alg.ctx(), x))
            .collect();
        c.resize(alg.rank(), PadicInt::zero(alg.ctx()));
        Ok(AlgebraElement {
            alg: alg.clone(),
            coeffs: c,
        })
    }

    pub fn from_i64s(alg: &Algebra, coeffs: &[i64]) -> Result<Self, AlgebraError> {
        let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        AlgebraElement::from_integers(alg, &big)
    }

    pub fn scalar(alg: &Algebra, c: &PadicInt) -> Self {
        let mut coeffs = vec![PadicInt::zero(alg.ctx()); alg.rank()];
        coeffs[0] = c.to_context(alg.ctx());
        AlgebraElement {
            alg: alg.clone(),
            coeffs,
        }
    }

    pub fn zero(alg: &Algebra) -> Self {
        AlgebraElement {
            alg: alg.clone(),
            coeffs: vec![PadicInt::zero(alg.ctx()); alg.rank()],
        }
    }

    pub fn one(alg: &Algebra) -> Self {
        AlgebraElement::scalar(alg, &PadicInt::one(alg.ctx()))
    }

    /// The class of `θ`.
    pub fn theta(alg: &Algebra) -> Self {
        let x = if alg.rank() == 1 {
            vec![-alg.modulus()[0].clone()]
        } else {
            vec![BigInt::zero(), BigInt::one()]
        };
        AlgebraElement::from_integers(alg, &x).expect("θ fits the rank")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn ctx(&self) -> &PadicContext {
        self.alg.ctx()
    }

    pub fn coeffs(&self) -> &[PadicInt] {
        &self.coeffs
    }

    pub fn coordinate(&self, j: usize) -> &PadicInt {
        &self.coeffs[j]
    }

    /// Smallest known precision over all coordinates.
    pub fn known_precision(&self) -> u32 {
        self.coeffs
            .iter()
            .map(PadicInt::known_precision)
            .min()
            .unwrap_or(self.ctx().prec())
    }

    /// Largest `k` with `x ∈ p^k R`: the minimum coordinate valuation.
    pub fn module_valuation(&self) -> Valuation {
        self.coeffs
            .iter()
            .map(PadicInt::valuation)
            .reduce(Valuation::min)
            .expect("rank is at least 1")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(PadicInt::is_zero)
    }

    fn residues(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.residue().clone()).collect()
    }

    fn with_residues(&self, residues: Vec<BigInt>, known: u32) -> Self {
        let ctx = self.ctx();
        AlgebraElement {
            alg: self.alg.clone(),
            coeffs: residues
                .iter()
                .map(|r| PadicInt::with_known_precision(ctx, r, known))
                .collect(),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.alg.check_same(&rhs.alg)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Ok(AlgebraElement {
            alg: self.alg.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.alg.check_same(&rhs.alg)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Ok(AlgebraElement {
            alg: self.alg.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.alg.check_same(&rhs.alg)?;
        let known = product_known(
            self.known_precision(),
            self.module_valuation().lower_bound(),
            rhs.known_precision(),
            rhs.module_valuation().lower_bound(),
            self.ctx().prec(),
        );
        let prod = self.alg.mul_residues(&self.residues(), &rhs.residues());
        Ok(self.with_residues(prod, known))
    }

    pub fn scale(&self, s: &PadicInt) -> Self {
        AlgebraElement {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = AlgebraElement::one(&self.alg);
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

    /// Integer powers, negative exponents going through the inverse.
    pub fn pow_signed(&self, e: i64) -> Result<Self, AlgebraError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.invert()?.pow(e.unsigned_abs()))
        }
    }

    fn reduction_mod_p(&self) -> fp::Poly {
        fp::trim(self.coeffs.iter().map(|c| c.residue_mod_p() as u64).collect())
    }

    fn modulus_mod_p(&self) -> fp::Poly {
        let p = BigInt::from(self.ctx().p());
        self.alg
            .modulus()
            .iter()
            .map(|c| c.mod_floor(&p).to_u64().expect("small"))
            .collect()
    }

    /// Whether the reduction generates the unit ideal of `F_p[θ]/(f̄)`.
    pub fn is_unit(&self) -> bool {
        let p = self.ctx().p() as u64;
        fp::inverse_mod(&self.reduction_mod_p(), &self.modulus_mod_p(), p).is_some()
    }

    /// Inverse of a unit: an inverse modulo `p` from the extended Euclidean
    /// algorithm over `F_p`, then Newton steps `y <- y (2 - x y)`.
    pub fn invert(&self) -> Result<Self, AlgebraError> {
        let p = self.ctx().p() as u64;
        let seed = fp::inverse_mod(&self.reduction_mod_p(), &self.modulus_mod_p(), p)
            .ok_or(AlgebraError::NotAUnit)?;
        let seed: Vec<BigInt> = seed.into_iter().map(BigInt::from).collect();
        let mut y = AlgebraElement::from_integers(&self.alg, &seed)?;
        // work with an exact copy of x so Newton's steps do not lose tracked precision
        let x = self.with_residues(self.residues(), self.ctx().prec());
        let two = AlgebraElement::scalar(&self.alg, &PadicInt::from_i64(self.ctx(), 2));
        let mut correct = 1u32;
        while correct < self.ctx().prec() {
            y = &y * &(&two - &(&x * &y));
            correct = correct.saturating_mul(2);
        }
        Ok(self.with_residues(y.residues(), self.known_precision()))
    }

    /// Norm as an element of `Z_p`: determinant of multiplication by `x`.
    pub fn norm(&self) -> PadicInt {
        let det = integer_norm(self.alg.modulus(), &self.residues());
        PadicInt::with_known_precision(self.ctx(), &det, self.known_precision())
    }

    /// Exact division of every coordinate by `p^shift`.
    pub fn div_p_pow(&self, shift: u32) -> Result<Self, PadicError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div_p_pow(shift))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraElement {
            alg: self.alg.clone(),
            coeffs,
        })
    }

    /// Moves the element to the same algebra over another precision.
    pub fn to_algebra(&self, alg: &Algebra) -> Result<Self, AlgebraError> {
        if alg.modulus() != self.alg.modulus() || alg.ctx().p() != self.ctx().p() {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(AlgebraElement {
            alg: alg.clone(),
            coeffs: self.coeffs.iter().map(|c| c.to_context(alg.ctx())).collect(),
        })
    }

    pub fn truncate_known(&self, known: u32) -> Self {
        AlgebraElement {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|c| c.truncate_known(known)).collect(),
        }
    }

    /// Coordinates as signed residues at their known precision.
    pub fn signed_coordinates(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(PadicInt::signed_residue).collect()
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.signed_coordinates())?;
        write!(f, " + O({}^{})", self.ctx().p(), self.known_precision())
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;

    /// # Panics
    /// If the operands belong to different algebras.
    fn add(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).expect("algebra addition")
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs).expect("algebra subtraction")
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs).expect("algebra multiplication")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// `x^5 + 4 b^4 x - 1`.
    fn quintic(b: i64, prec: u32) -> Algebra {
        let ctx = PadicContext::new(5, prec).unwrap();
        Algebra::new(&ctx, &big(&[-1, 4 * b.pow(4), 0, 0, 0, 1])).unwrap()
    }

    /// Schoolbook product followed by long division by the monic modulus.
    fn schoolbook_mulmod(a: &[i64], b: &[i64], f: &[i64]) -> Vec<BigInt> {
        let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += BigInt::from(*x) * BigInt::from(*y);
            }
        }
        let r = f.len() - 1;
        while prod.len() > r {
            let lead = prod.pop().unwrap();
            let shift = prod.len() - r;
            for i in 0..r {
                prod[shift + i] -= &lead * BigInt::from(f[i]);
            }
        }
        prod.resize(r, BigInt::zero());
        prod
    }

    /// Sylvester-matrix resultant over the rationals with Gaussian elimination.
    fn sylvester_resultant(f: &[i64], g: &[i64]) -> BigInt {
        let (m, n) = (f.len() - 1, g.len() - 1);
        let size = m + n;
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..n {
            let mut row = vec![BigRational::zero(); size];
            for (j, c) in f.iter().rev().enumerate() {
                row[i + j] = BigRational::from_integer((*c).into());
            }
            rows.push(row);
        }
        for i in 0..m {
            let mut row = vec![BigRational::zero(); size];
            for (j, c) in g.iter().rev().enumerate() {
                row[i + j] = BigRational::from_integer((*c).into());
            }
            rows.push(row);
        }
        let mut det = BigRational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !rows[r][col].is_zero()) else {
                return BigInt::zero();
            };
            if piv != col {
                rows.swap(piv, col);
                det = -det;
            }
            det *= rows[col][col].clone();
            for r in col + 1..size {
                let factor = &rows[r][col] / &rows[col][col];
                for c in col..size {
                    let v = &rows[col][c] * &factor;
                    rows[r][c] -= v;
                }
            }
        }
        assert!(det.is_integer());
        det.to_integer()
    }

    #[test]
    fn defining_relation() {
        let b = 5;
        let alg = quintic(b, 18);
        let th = AlgebraElement::theta(&alg);
        let lhs = &th * &th.pow(4);
        let rhs = AlgebraElement::from_i64s(&alg, &[1, -4 * b.pow(4)]).unwrap();
        assert_eq!(lhs, rhs);
        let x = AlgebraElement::from_i64s(&alg, &[3, 1, 4, 1, 5]).unwrap();
        assert_eq!(&AlgebraElement::one(&alg) * &x, x);
    }

    #[test]
    fn product_matches_schoolbook() {
        let b = 5i64;
        let alg = quintic(b, 18);
        let f = [-1, 4 * b.pow(4), 0, 0, 0, 1];
        let u = [2 * b * b, 2 * b, 1];
        let v = [2 * b * b, -2 * b, 1];
        let expected = schoolbook_mulmod(&u, &v, &f);
        let got = &AlgebraElement::from_i64s(&alg, &u).unwrap() * &AlgebraElement::from_i64s(&alg, &v).unwrap();
        assert_eq!(got, AlgebraElement::from_integers(&alg, &expected).unwrap());
        // (θ²+2bθ+2b²)(θ²−2bθ+2b²) = θ⁴ + 4b⁴ exactly, already reduced
        assert_eq!(expected, big(&[4 * b.pow(4), 0, 0, 0, 1]));
    }

    #[test]
    fn module_valuation_examples() {
        let alg = quintic(5, 18);
        let x = AlgebraElement::from_i64s(&alg, &[5, 25]).unwrap();
        assert_eq!(x.module_valuation(), Valuation::Exact(1));
        assert_eq!(AlgebraElement::zero(&alg).module_valuation(), Valuation::AtLeast(18));
        let b = 25i64; // k = 2
        let alg = quintic(b, 32);
        let y = AlgebraElement::from_integers(
            &alg,
            &[BigInt::zero(), BigInt::from(-4 * b.pow(4)), BigInt::from(-8) * BigInt::from(b).pow(8)],
        )
        .unwrap();
        assert_eq!(y.module_valuation(), Valuation::Exact(8));
    }

    #[test]
    fn invert_examples() {
        let alg = quintic(5, 18);
        let one = AlgebraElement::one(&alg);
        assert_eq!(one.invert().unwrap(), one);
        let x = AlgebraElement::from_i64s(&alg, &[1, 5]).unwrap();
        assert_eq!(&x * &x.invert().unwrap(), one);
        let y = AlgebraElement::from_i64s(&alg, &[0, 5]).unwrap();
        assert_eq!(y.invert().unwrap_err(), AlgebraError::NotAUnit);
        // θ⁻¹ = θ⁴ + 4b⁴
        let th = AlgebraElement::theta(&alg);
        assert_eq!(th.invert().unwrap(), AlgebraElement::from_i64s(&alg, &[2500, 0, 0, 0, 1]).unwrap());
    }

    #[test]
    fn non_reduced_quotient_unit_test() {
        // θ⁵ − 1 ≡ (θ − 1)⁵ mod 5: θ − 1 is nilpotent, θ + 1 is a unit
        let ctx = PadicContext::new(5, 6).unwrap();
        let alg = Algebra::new(&ctx, &big(&[-1, 0, 0, 0, 0, 1])).unwrap();
        assert!(!AlgebraElement::from_i64s(&alg, &[-1, 1]).unwrap().is_unit());
        let u = AlgebraElement::from_i64s(&alg, &[1, 1]).unwrap();
        assert!(u.is_unit());
        assert_eq!(&u * &u.invert().unwrap(), AlgebraElement::one(&alg));
    }

    #[test]
    fn norm_examples() {
        let b = 5i64;
        let alg = quintic(b, 18);
        let f = [-1, 4 * b.pow(4), 0, 0, 0, 1];
        for (m, n) in [(1i64, 0i64), (0, -1), (1, 2500), (3, 7), (-2, 11)] {
            let x = AlgebraElement::from_i64s(&alg, &[m, -n]).unwrap();
            let thue = BigInt::from(m).pow(5) + BigInt::from(4 * b.pow(4)) * m * BigInt::from(n).pow(4)
                - BigInt::from(n).pow(5);
            assert!(x.norm().matches_integer(&thue));
            assert_eq!(alg.exact_norm(&big(&[m, -n])), thue);
        }
        assert!(AlgebraElement::one(&alg).norm().matches_integer(&BigInt::one()));
        let xi2 = [2 * b * b, 2 * b, 1];
        assert_eq!(sylvester_resultant(&f, &xi2), BigInt::one());
        assert_eq!(alg.exact_norm(&big(&xi2)), BigInt::one());
        assert!(AlgebraElement::from_i64s(&alg, &xi2).unwrap().norm().matches_integer(&BigInt::one()));
    }

    #[test]
    fn mismatched_algebras() {
        let a = AlgebraElement::one(&quintic(5, 18));
        let b = AlgebraElement::one(&quintic(10, 18));
        assert_eq!(a.checked_mul(&b).unwrap_err(), AlgebraError::AlgebraMismatch);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coords() -> impl Strategy<Value = Vec<i64>> {
            prop::collection::vec(-100_000i64..100_000, 5)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn inverse_of_random_units(a in coords()) {
                let alg = quintic(5, 18);
                let x = AlgebraElement::from_i64s(&alg, &a).unwrap();
                // R/5R = F_5[θ]/((θ - 1)^5): units are exactly the elements with x(1) ≢ 0 mod 5
                let at_one: i64 = a.iter().sum();
                prop_assume!(at_one.rem_euclid(5) != 0);
                prop_assert!(x.is_unit());
                prop_assert_eq!(&x * &x.invert().unwrap(), AlgebraElement::one(&alg));
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn norm_is_multiplicative(a in coords(), b in coords()) {
                let alg = quintic(5, 18);
                let x = AlgebraElement::from_i64s(&alg, &a).unwrap();
                let y = AlgebraElement::from_i64s(&alg, &b).unwrap();
                prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
            }

            #[test]
            fn norm_agrees_with_sylvester(a in prop::collection::vec(-50i64..50, 5)) {
                let alg = quintic(5, 18);
                let f = [-1, 2500, 0, 0, 0, 1];
                let mut g = a.clone();
                while g.len() > 1 && *g.last().unwrap() == 0 { g.pop(); }
                prop_assume!(g.iter().any(|&c| c != 0));
                let expected = if g.len() == 1 { BigInt::from(g[0]).pow(5) } else { sylvester_resultant(&f, &g) };
                prop_assert_eq!(alg.exact_norm(&big(&a)), expected);
            }

            #[test]
            fn valuation_is_supermultiplicative(a in coords(), b in coords(), s in 0u32..3, t in 0u32..3) {
                let alg = quintic(5, 18);
                let x = AlgebraElement::from_i64s(&alg, &a).unwrap().scale(&PadicInt::from_i64(alg.ctx(), 5i64.pow(s)));
                let y = AlgebraElement::from_i64s(&alg, &b).unwrap().scale(&PadicInt::from_i64(alg.ctx(), 5i64.pow(t)));
                let lhs = (&x * &y).module_valuation().lower_bound();
                prop_assert!(lhs >= (x.module_valuation().lower_bound() + y.module_valuation().lower_bound()).min(18));
            }
        }
    }
}
