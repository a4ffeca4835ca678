//! Exhaustive search for solutions of `m⁵ + 4b⁴mn⁴ − n⁵ = 1` in a box.
//!
//! For fixed `n` the map `m ↦ m⁵ + 4b⁴n⁴m` is strictly increasing, so each
//! row has at most one solution. A floating-point estimate of the real root
//! proposes a candidate, and exact evaluation at its neighbours confirms that
//! no other integer can work; otherwise the row falls back to an exact binary
//! search.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::serde_util::decimal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    #[serde(with = "decimal")]
    pub b: BigInt,
    pub bound: i64,
    /// Sorted pairs `(m, n)`.
    pub solutions: Vec<(i64, i64)>,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

/// One row: `g(m) = m⁵ + a·m − c` with `a = 4b⁴n⁴ ≥ 0` and `c = 1 + n⁵`.
struct Row {
    a: BigInt,
    c: BigInt,
    small: Option<(i128, i128)>,
}

impl Row {
    fn new(four_b4: &BigInt, n: i64) -> Self {
        let nb = BigInt::from(n);
        let a = four_b4 * nb.pow(4);
        let c = BigInt::from(1) + nb.pow(5);
        let small = a.to_i128().zip(c.to_i128());
        Row { a, c, small }
    }

    /// Sign of `g(m)`.
    fn sign(&self, m: i64) -> std::cmp::Ordering {
        if let Some((a, c)) = self.small {
            let mm = m as i128;
            let v = mm
                .checked_pow(5)
                .and_then(|p| a.checked_mul(mm).and_then(|am| p.checked_add(am)))
                .and_then(|s| s.checked_sub(c));
            if let Some(v) = v {
                return v.cmp(&0);
            }
        }
        let mb = BigInt::from(m);
        (mb.pow(5) + &self.a * &mb - &self.c).cmp(&BigInt::zero())
    }

    /// Real root of `x⁵ + a x = c`, by Newton's method on `|c|` from the
    /// upper bound `min(|c|^{1/5}, |c|/a)`.
    fn estimate(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::MAX);
        let c = self.c.to_f64().unwrap_or(f64::MAX);
        let s = c.abs();
        if s == 0.0 {
            return 0.0;
        }
        let mut x = s.powf(0.2);
        if a > 0.0 {
            x = x.min(s / a);
        }
        for _ in 0..200 {
            let f = x.powi(5) + a * x - s;
            let df = 5.0 * x.powi(4) + a;
            if df == 0.0 {
                break;
            }
            let next = x - f / df;
            if !next.is_finite() || (next - x).abs() <= 1e-9 * x.abs().max(1.0) {
                x = next;
                break;
            }
            x = next;
        }
        c.signum() * x
    }

    fn solve(&self, bound: i64) -> Option<i64> {
        use std::cmp::Ordering::*;
        let est = self.estimate();
        if est.is_finite() && est.abs() < 9.0e15 {
            let r = est.round() as i64;
            if self.sign(r - 1) == Less && self.sign(r + 1) == Greater {
                return (r.abs() <= bound && self.sign(r) == Equal).then_some(r);
            }
        }
        let (mut lo, mut hi) = (-bound, bound);
        while lo <= hi {
            let mid = lo + (hi - lo) / 2;
            match self.sign(mid) {
                Equal => return Some(mid),
                Less => lo = mid + 1,
                Greater => hi = mid - 1,
            }
        }
        None
    }
}

/// All `(m, n)` with `|m|, |n| ≤ bound` and `m⁵ + 4b⁴mn⁴ − n⁵ = 1`.
pub fn brute_force(b: &BigInt, bound: i64) -> SearchResult {
    let start = Instant::now();
    let four_b4 = BigInt::from(4) * b.pow(4);
    let bound = bound.max(0);
    let mut solutions: Vec<(i64, i64)> = (-bound..=bound)
        .into_par_iter()
        .filter_map(|n| Row::new(&four_b4, n).solve(bound).map(|m| (m, n)))
        .collect();
    solutions.sort_unstable();
    SearchResult {
        b: b.clone(),
        bound,
        solutions,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(b: i64, bound: i64) -> Vec<(i64, i64)> {
        let b = b as i128;
        let mut out = Vec::new();
        for m in -bound..=bound {
            for n in -bound..=bound {
                let (mi, ni) = (m as i128, n as i128);
                if mi.pow(5) + 4 * b.pow(4) * mi * ni.pow(4) - ni.pow(5) == 1 {
                    out.push((m, n));
                }
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn examples() {
        let five = BigInt::from(5);
        assert_eq!(brute_force(&five, 100).solutions, vec![(0, -1), (1, 0)]);
        assert_eq!(brute_force(&five, 1).solutions, vec![(0, -1), (1, 0)]);
        assert_eq!(brute_force(&BigInt::from(7), 1).solutions, vec![(0, -1), (1, 0)]);
        assert_eq!(brute_force(&five, 3000).solutions, vec![(0, -1), (1, 0), (1, 2500)]);
    }

    #[test]
    fn agrees_with_naive_scan() {
        for b in [-3, -1, 1, 2, 5] {
            assert_eq!(brute_force(&BigInt::from(b), 40).solutions, naive(b, 40), "b = {b}");
        }
    }

    #[test]
    fn rows_with_large_coefficients_use_exact_fallback() {
        // 4b⁴n⁴m overflows i128 here
        let b: BigInt = "1000000000000".parse().unwrap();
        let r = brute_force(&b, 50);
        assert_eq!(r.solutions, vec![(0, -1), (1, 0)]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(20))]

            #[test]
            fn monotone_in_bound(b in -20i64..20, small in 1i64..30, extra in 0i64..30) {
                let b = BigInt::from(b);
                let lo = brute_force(&b, small).solutions;
                let hi = brute_force(&b, small + extra).solutions;
                prop_assert!(lo.iter().all(|s| hi.contains(s)));
            }
        }
    }
}
