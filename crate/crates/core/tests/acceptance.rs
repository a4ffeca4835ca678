//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::{BTreeSet, HashMap};
use std::panic;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use skolem::algebra::{Algebra, AlgebraElement};
use skolem::analysis::{padic_exp, padic_log};
use skolem::closure::{build_unit_system, closure_branch, ClosureBranch};
use skolem::oracle::brute_force;
use skolem::padic::{PadicContext, PadicInt, Valuation};
use skolem::quintic::{
    branch_f0, branch_f1, build_instance, case_reduction, verify_theorem, Solution, TheoremCertificate,
};
use skolem::series::TruncSeries;

type Check = fn() -> Result<String, String>;

const THEOREM_TIME_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(10);

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("theorem reproduction", theorem_reproduction),
        ("oracle agreement", oracle_agreement),
        ("L1 regression", l1_regression),
        ("L2 regression", l2_regression),
        ("Skolem branch", skolem_branch),
        ("Strassmann branch", strassmann_branch),
        ("analytic identities", analytic_identities),
        ("closure consistency", closure_consistency),
        ("case-reduction evidence", case_reduction_evidence),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn expected_solutions(b: i64) -> BTreeSet<(BigInt, BigInt)> {
    let four_b4 = BigInt::from(4) * big(b).pow(4);
    [(big(1), big(0)), (big(0), big(-1)), (big(1), four_b4)].into_iter().collect()
}

fn as_set(xs: &[Solution]) -> BTreeSet<(BigInt, BigInt)> {
    xs.iter().map(|s| (s.m.clone(), s.n.clone())).collect()
}

fn theorem_reproduction() -> Result<String, String> {
    let mut slowest = 0.0f64;
    for b in [5i64, -5, 10, 25, 50] {
        let start = Instant::now();
        let cert = verify_theorem(&big(b)).map_err(|e| format!("b = {b}: {e}"))?;
        let took = start.elapsed();
        ensure(took < THEOREM_TIME_LIMIT, || format!("b = {b} took {took:?}"))?;
        slowest = slowest.max(took.as_secs_f64());
        let back = TheoremCertificate::from_json(&cert.to_json_pretty()).map_err(|e| e.to_string())?;
        back.validate().map_err(|e| format!("b = {b}: reparsed certificate invalid: {e}"))?;
        ensure(cert.solutions.len() == 3 && as_set(&cert.solutions) == expected_solutions(b), || {
            format!("b = {b}: solutions {:?}", cert.solutions)
        })?;
    }
    Ok(format!(
        "b in {{5, -5, 10, 25, 50}} give exactly {{(1,0), (0,-1), (1,4b^4)}}; slowest {slowest:.2}s < 60s"
    ))
}

fn oracle_agreement() -> Result<String, String> {
    let start = Instant::now();
    let r = brute_force(&big(5), 3000);
    let took = start.elapsed();
    ensure(took < ORACLE_TIME_LIMIT, || format!("search took {took:?}"))?;
    ensure(r.solutions == [(0, -1), (1, 0), (1, 2500)], || {
        format!("found {:?}", r.solutions)
    })?;
    let cert = verify_theorem(&big(5)).map_err(|e| e.to_string())?;
    let found: BTreeSet<(BigInt, BigInt)> = r.solutions.iter().map(|&(m, n)| (big(m), big(n))).collect();
    ensure(found == as_set(&cert.solutions), || "oracle and certificate differ".into())?;
    Ok(format!("b = 5, |m|,|n| <= 3000: {{(1,0), (0,-1), (1,2500)}} in {:.2}s < 10s", took.as_secs_f64()))
}

/// Coordinates of `x` reduced modulo `5^e`, after checking they are known
/// that far.
fn coords_mod(x: &AlgebraElement, e: u32) -> Result<Vec<BigInt>, String> {
    ensure(x.known_precision() >= e, || format!("only known to 5^{}", x.known_precision()))?;
    let m = BigInt::from(5).pow(e);
    Ok(x.coeffs().iter().map(|c| c.residue().mod_floor(&m)).collect())
}

fn rational_mod(num: BigInt, den: i64, m: &BigInt) -> BigInt {
    let inv = big(den).mod_floor(m).modinv(m).expect("unit denominator");
    (num * inv).mod_floor(m)
}

fn l1_regression() -> Result<String, String> {
    let b = big(5);
    let inst = build_instance(&b, None).map_err(|e| e.to_string())?;
    let l1 = padic_log(&inst.xi1.pow(5)).map_err(|e| e.to_string())?;
    let m = BigInt::from(5).pow(12);
    let expected: Vec<BigInt> = [big(0), big(-4) * b.pow(4), big(-8) * b.pow(8), big(0), big(0)]
        .into_iter()
        .map(|x| x.mod_floor(&m))
        .collect();
    let got = coords_mod(&l1, 12)?;
    ensure(got == expected, || format!("got {got:?}, expected {expected:?}"))?;
    Ok("log(xi1^5) = -4b^4 theta - 8b^8 theta^2 in all 5 coordinates mod 5^12".into())
}

fn l2_regression() -> Result<String, String> {
    let b = big(5);
    let inst = build_instance(&b, None).map_err(|e| e.to_string())?;
    let l2 = padic_log(&inst.xi2.pow(5)).map_err(|e| e.to_string())?;
    let m = BigInt::from(5).pow(9);
    let expected = vec![
        (big(32) * b.pow(5)).mod_floor(&m),
        (big(2) * b.pow(4)).mod_floor(&m),
        (rational_mod(big(-20) * b.pow(3), 3, &m) + big(4) * b.pow(8)).mod_floor(&m),
        rational_mod(big(-320) * b.pow(7), 21, &m),
        (big(10) * &b).mod_floor(&m),
    ];
    let got = coords_mod(&l2, 9)?;
    ensure(got == expected, || format!("got {got:?}, expected {expected:?}"))?;
    Ok("log(xi2^5) = (32b^5, 2b^4, -20/3 b^3 + 4b^8, -320/21 b^7, 10b) mod 5^9".into())
}

/// Constant, linear and nonlinear parts of a series modulo 5.
fn linear_part_mod5(f: &TruncSeries<PadicInt>) -> Result<[u32; 2], String> {
    let mut lin = [0u32; 2];
    for (e, c) in f.terms() {
        let r = c.residue_mod_p();
        match (e[0], e[1]) {
            (1, 0) => lin[0] = r,
            (0, 1) => lin[1] = r,
            _ => ensure(r == 0, || format!("monomial {e:?} is nonzero mod 5"))?,
        }
    }
    ensure(f.prec() >= 1, || "series carries no digit".into())?;
    Ok(lin)
}

fn skolem_branch() -> Result<String, String> {
    for b in [5i64, 25] {
        let inst = build_instance(&big(b), None).map_err(|e| e.to_string())?;
        let cert = branch_f1(&inst).map_err(|e| format!("b = {b}: {e}"))?;
        let s12 = TruncSeries::from_json(&cert.f12_scaled).map_err(|e| e.to_string())?;
        let s13 = TruncSeries::from_json(&cert.f13_scaled).map_err(|e| e.to_string())?;
        // −4 ≡ 1 and −4/3 ≡ −4·2 ≡ 2 modulo 5
        let l12 = linear_part_mod5(&s12)?;
        let l13 = linear_part_mod5(&s13)?;
        ensure(l12 == [1, 2], || format!("b = {b}: f12 linear part {l12:?}"))?;
        ensure(l13 == [0, 2], || format!("b = {b}: f13 linear part {l13:?}"))?;
        let det = (l12[0] * l13[1] + 5 * 5 - l12[1] * l13[0]) % 5;
        ensure(det == 2 && cert.skolem.det_mod_p == 2 && cert.skolem.unique, || {
            format!("b = {b}: det {det}, certificate {}", cert.skolem.det_mod_p)
        })?;
    }
    Ok("b in {5, 25}: linear parts (-4t1 + 2t2, -4/3 t2) mod 5, det = 2 mod 5".into())
}

/// Residues `t mod 5` with `g(t) ≡ 0` and `g'(t) ≢ 0`, and whether some
/// zero of `g` modulo 5 is singular.
fn hensel_roots_mod5(g: &[u32]) -> (Vec<u32>, bool) {
    let eval = |c: &[u32], t: u32| c.iter().rev().fold(0u32, |acc, x| (acc * t + x) % 5);
    let deriv: Vec<u32> = g.iter().enumerate().skip(1).map(|(i, c)| (i as u32 * c) % 5).collect();
    let mut simple = Vec::new();
    let mut singular = false;
    for t in 0..5 {
        if eval(g, t) == 0 {
            if eval(&deriv, t) != 0 {
                simple.push(t);
            } else {
                singular = true;
            }
        }
    }
    (simple, singular)
}

fn strassmann_branch() -> Result<String, String> {
    for b in [5i64, 25] {
        let inst = build_instance(&big(b), None).map_err(|e| e.to_string())?;
        let k = inst.k;
        let cert = branch_f0(&inst).map_err(|e| format!("b = {b}: {e}"))?;
        let f02 = TruncSeries::from_json(&cert.f02).map_err(|e| e.to_string())?;
        ensure(f02.prec() == 8 * k + 1, || format!("b = {b}: precision {}", f02.prec()))?;
        let v: Vec<Valuation> = (0..3).map(|i| f02.coefficient_valuation([i, 0])).collect();
        ensure(v[0].lower_bound() >= 8 * k + 1, || format!("b = {b}: a0 valuation {}", v[0]))?;
        ensure(v[1] == Valuation::Exact(8 * k) && v[2] == Valuation::Exact(8 * k), || {
            format!("b = {b}: valuations {v:?}")
        })?;
        for i in 3..=f02.degree_cap() {
            let vi = f02.coefficient_valuation([i, 0]).lower_bound();
            ensure(vi > 8 * k, || format!("b = {b}: a{i} has valuation {vi}"))?;
        }
        ensure(cert.strassmann.bound == 2 && cert.strassmann.r == 8 * k, || {
            format!("b = {b}: bound {}", cert.strassmann.bound)
        })?;
        // g = f02 / 5^{8k} is known mod 5; simple zeros lift uniquely
        let g = f02.div_p_pow(8 * k).map_err(|e| e.to_string())?;
        let coeffs: Vec<u32> = (0..=g.degree_cap()).map(|i| g.coefficient([i, 0]).residue_mod_p()).collect();
        let (roots, singular) = hensel_roots_mod5(&coeffs);
        ensure(roots == [0, 1] && !singular, || format!("b = {b}: residues {roots:?}"))?;
        for t in [0, 1] {
            let value = f02.eval_integers(&[t]).map_err(|e| e.to_string())?;
            ensure(value.is_zero() && value.known_precision() == 8 * k + 1, || {
                format!("b = {b}: f02({t}) = {value:?}")
            })?;
        }
        ensure(cert.roots == [0, 1], || format!("b = {b}: roots {:?}", cert.roots))?;
    }
    Ok("b in {5, 25}: valuations (>= 8k+1, 8k, 8k), bound 2, roots {0, 1} via Hensel mod 5".into())
}

const IDENTITY_CASES: u32 = 200;
const IDENTITY_PREC: u32 = 20;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn exact_eq<C: PartialEq + std::fmt::Debug>(a: &C, b: &C, known: u32, expected_known: u32) -> Result<(), TestCaseError> {
    prop_assert_eq!(known, expected_known);
    prop_assert_eq!(a, b);
    Ok(())
}

fn analytic_identities() -> Result<String, String> {
    let ctx = PadicContext::new(5, IDENTITY_PREC).map_err(|e| e.to_string())?;
    let alg = Algebra::new(&ctx, &skolem::quintic::defining_polynomial(&big(5))).map_err(|e| e.to_string())?;
    let q = 5u64.pow(IDENTITY_PREC - 1);
    let five = PadicInt::from_i64(&ctx, 5);
    let zp = |x: u64| &five * &PadicInt::from_integer(&ctx, &BigInt::from(x));
    let rr = |xs: &[u64]| {
        let c: Vec<BigInt> = xs.iter().map(|&x| BigInt::from(x) * 5).collect();
        AlgebraElement::from_integers(&alg, &c).expect("rank 5")
    };
    let one = PadicInt::one(&ctx);
    let one_r = AlgebraElement::one(&alg);

    let mut r = runner(IDENTITY_CASES);
    r.run(&(0..q), |x| {
        let u = &one + &zp(x);
        let back = padic_exp(&padic_log(&u).unwrap()).unwrap();
        exact_eq(&back, &u, back.known_precision(), IDENTITY_PREC)
    })
    .map_err(|e| format!("Z_5 exp(log(1+5x)): {e}"))?;
    let mut r = runner(IDENTITY_CASES);
    r.run(&(0..q, 0..q), |(x, y)| {
        let lhs = padic_exp(&(&zp(x) + &zp(y))).unwrap();
        let rhs = &padic_exp(&zp(x)).unwrap() * &padic_exp(&zp(y)).unwrap();
        exact_eq(&lhs, &rhs, lhs.known_precision().min(rhs.known_precision()), IDENTITY_PREC)
    })
    .map_err(|e| format!("Z_5 exp(5x+5y): {e}"))?;
    let mut r = runner(IDENTITY_CASES);
    r.run(&prop::collection::vec(0..q, 5), |x| {
        let u = &one_r + &rr(&x);
        let back = padic_exp(&padic_log(&u).unwrap()).unwrap();
        exact_eq(&back, &u, back.known_precision(), IDENTITY_PREC)
    })
    .map_err(|e| format!("R exp(log(1+5x)): {e}"))?;
    let mut r = runner(IDENTITY_CASES);
    r.run(&(prop::collection::vec(0..q, 5), prop::collection::vec(0..q, 5)), |(x, y)| {
        let (x, y) = (rr(&x), rr(&y));
        let lhs = padic_exp(&(&x + &y)).unwrap();
        let rhs = &padic_exp(&x).unwrap() * &padic_exp(&y).unwrap();
        exact_eq(&lhs, &rhs, lhs.known_precision().min(rhs.known_precision()), IDENTITY_PREC)
    })
    .map_err(|e| format!("R exp(5x+5y): {e}"))?;
    Ok(format!(
        "{IDENTITY_CASES} cases each in Z_5 and R at N = {IDENTITY_PREC}: exp(log(1+5x)) = 1+5x, exp(5x+5y) = exp(5x)exp(5y), exact"
    ))
}

const CLOSURE_CASES: u32 = 50;

fn closure_consistency() -> Result<String, String> {
    let inst = build_instance(&big(5), None).map_err(|e| e.to_string())?;
    let sys = build_unit_system(&[inst.xi1.clone(), inst.xi2.clone()]).map_err(|e| e.to_string())?;
    let prec = inst.prec;
    let branches = std::cell::RefCell::new(HashMap::<Vec<u64>, ClosureBranch>::new());
    let mut r = runner(CLOSURE_CASES);
    r.run(&(-10i64..=10, -10i64..=10), |(e1, e2)| {
        let (res, t) = sys.split_exponents(&[e1, e2]);
        let mut cache = branches.borrow_mut();
        let branch = cache
            .entry(res.clone())
            .or_insert_with(|| closure_branch(&sys, &res, prec).unwrap());
        let value = branch.evaluate(&t).unwrap();
        let direct = &inst.xi1.pow_signed(e1).unwrap() * &inst.xi2.pow_signed(e2).unwrap();
        prop_assert_eq!(value.known_precision(), branch.series.prec());
        prop_assert_eq!(value, direct.truncate_known(branch.series.prec()));
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok(format!(
        "{CLOSURE_CASES} exponent pairs in [-10,10]^2 (b = 5): branch values equal xi1^e1 xi2^e2 at 5^{prec}"
    ))
}

/// Arithmetic in `Z[θ]/(θ⁵ + 4b⁴θ − 1)` modulo `5^e`, coefficient lists of
/// length 5.
struct Reduced {
    m: BigInt,
    four_b4: BigInt,
}

impl Reduced {
    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = vec![BigInt::zero(); 9];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] += x * y;
            }
        }
        // θ⁵ = 1 − 4b⁴θ
        for d in (5..9).rev() {
            let c = std::mem::take(&mut r[d]);
            r[d - 5] += &c;
            r[d - 4] -= &self.four_b4 * &c;
        }
        r.truncate(5);
        r.into_iter().map(|x| x.mod_floor(&self.m)).collect()
    }

    fn pow(&self, x: &[BigInt], mut e: BigInt) -> Vec<BigInt> {
        let mut acc = self.one();
        let mut base = x.to_vec();
        let two = big(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e /= &two;
        }
        acc
    }

    fn one(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); 5];
        v[0] = BigInt::one();
        v
    }

    fn scalar(&self, c: BigInt) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); 5];
        v[0] = c.mod_floor(&self.m);
        v
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| (x + y).mod_floor(&self.m)).collect()
    }

    /// Powers for exponents `-r..=r`; inverses as `x^{5^e − 1}`, valid since
    /// `x⁵ ≡ 1 mod 5`.
    fn signed_powers(&self, x: &[BigInt], r: i64, e: u32) -> Vec<Vec<BigInt>> {
        let inv = self.pow(x, BigInt::from(5).pow(e) - 1);
        let mut out = Vec::new();
        for n in -r..=r {
            out.push(if n < 0 {
                self.pow(&inv, big(-n))
            } else {
                self.pow(x, big(n))
            });
        }
        out
    }
}

const CASE_RANGE: i64 = 25;

fn case_reduction_evidence() -> Result<String, String> {
    for b in [5i64, 25] {
        let inst = build_instance(&big(b), None).map_err(|e| e.to_string())?;
        let report = case_reduction(&inst, CASE_RANGE).map_err(|e| format!("b = {b}: {e}"))?;
        ensure(report.surviving == [[0, 0], [1, 0]], || format!("b = {b}: surviving {:?}", report.surviving))?;
        let side = (2 * CASE_RANGE + 1) as usize;
        ensure(report.binomial_identity_checked == side * side, || "binomial identity not checked everywhere".into())?;

        let e = 3 * inst.k;
        let bb = big(b);
        let ar = Reduced {
            m: BigInt::from(5).pow(e),
            four_b4: BigInt::from(4) * bb.pow(4),
        };
        let xi1 = vec![big(0), big(1), big(0), big(0), big(0)];
        let xi2 = vec![2 * &bb * &bb, 2 * &bb, big(1), big(0), big(0)];
        ensure(ar.mul(&xi1, &ar.pow(&xi1, BigInt::from(5).pow(e) - 1)) == ar.one(), || "inverse check".into())?;
        let p1 = ar.signed_powers(&xi1, CASE_RANGE, e);
        let p2 = ar.signed_powers(&xi2, CASE_RANGE, e);
        let tr = 3 * CASE_RANGE + 2;
        let tp = ar.signed_powers(&xi1, tr, e);
        let mut excluded = 0;
        for n1 in -CASE_RANGE..=CASE_RANGE {
            for n2 in -CASE_RANGE..=CASE_RANGE {
                let x = ar.mul(&p1[(n1 + CASE_RANGE) as usize], &p2[(n2 + CASE_RANGE) as usize]);
                let ex = n1 + 2 * n2;
                let t = |d: i64| &tp[(ex - d + tr) as usize];
                let rhs = ar.add(
                    &ar.add(t(0), &ar.mul(&ar.scalar(2 * n2 * &bb), t(1))),
                    &ar.mul(&ar.scalar(2 * n2 * n2 * &bb * &bb), t(2)),
                );
                ensure(x == rhs, || format!("b = {b}: binomial congruence fails at ({n1}, {n2})"))?;
                let class = [n1.rem_euclid(5) as u8, n2.rem_euclid(5) as u8];
                if !report.surviving.contains(&class) {
                    excluded += 1;
                    ensure(x[2..].iter().any(|c| !c.is_zero()), || {
                        format!("b = {b}: ({n1}, {n2}) is of the form m - n theta mod 5^{e}")
                    })?;
                }
            }
        }
        ensure(excluded > 0, || "no excluded pairs sampled".into())?;
    }
    Ok(format!(
        "b in {{5, 25}}, (n1,n2) in [-{CASE_RANGE},{CASE_RANGE}]^2: excluded classes never of the form m - n theta mod 5^(3k); binomial congruence holds"
    ))
}
