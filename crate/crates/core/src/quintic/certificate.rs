//! Serializable certificates and their independent re-validation.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::case::{reduced_units, ExclusionWitness, SURVIVING};
use super::{check_b, defining_polynomial, fits_box, minimum_precision, solution_set, thue_form, CaseReductionReport, QuinticError};
use crate::algebra::{Algebra, AlgebraElement};
use crate::analysis::{skolem_criterion, strassmann_series, SkolemResult, StrassmannResult};
use crate::closure::Pivot;
use crate::oracle::SearchResult;
use crate::padic::{PadicContext, PadicInt};
use crate::serde_util::{decimal, deserialize_bigint};
use crate::series::{SeriesJson, TruncSeries};

pub const EXTERNAL_DEPENDENCIES: [&str; 2] = [
    "irreducibility of x^5 + 4b^4 x - 1 over Q",
    "xi1 = theta and xi2 = theta^2 + 2b theta + 2b^2 form a system of fundamental positive units of Z[theta]",
];

pub(crate) fn glossary() -> Vec<String> {
    vec![
        "an error term O(b^m) is read as membership in 5^(m k) R, with k = v_5(b), and stored as series precision".into(),
        "series precision N_s: every coefficient of (true series - stored terms) lies in 5^(N_s)".into(),
        "valuation of an algebra element: the largest j with x in 5^j R, the minimum over its coordinates".into(),
    ]
}

/// A pair `(m, n)`. Serialized as `[m, n]`, with entries of absolute value
/// above 1 written as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Solution {
    pub m: BigInt,
    pub n: BigInt,
}

impl Solution {
    pub fn new(m: BigInt, n: BigInt) -> Self {
        Solution { m, n }
    }
}

fn serialize_entry<S: SerializeSeq>(seq: &mut S, x: &BigInt) -> Result<(), S::Error> {
    if x.abs() <= BigInt::one() {
        let v: i64 = x.try_into().expect("small");
        seq.serialize_element(&v)
    } else {
        seq.serialize_element(&x.to_string())
    }
}

impl Serialize for Solution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        serialize_entry(&mut seq, &self.m)?;
        serialize_entry(&mut seq, &self.n)?;
        seq.end()
    }
}

#[derive(Deserialize)]
struct Entry(#[serde(deserialize_with = "deserialize_bigint")] BigInt);

impl<'de> Deserialize<'de> for Solution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PairVisitor;
        impl<'de> Visitor<'de> for PairVisitor {
            type Value = Solution;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a pair [m, n]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Solution, A::Error> {
                let m: Entry = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let n: Entry = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<Entry>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(Solution::new(m.0, n.0))
            }
        }
        d.deserialize_seq(PairVisitor)
    }
}

/// Signed coordinates of an algebra element as decimal strings.
pub fn element_json(x: &AlgebraElement) -> Vec<String> {
    x.signed_coordinates().iter().map(BigInt::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSystemSummary {
    pub units: Vec<Vec<String>>,
    pub exponents: Vec<u64>,
    pub logs: Vec<Vec<String>>,
    pub rank: usize,
    pub pivots: Vec<Pivot>,
}

/// The branch through `θ`: `θ²`- and `θ³`-coordinates scaled by `b⁻⁴` and
/// `5⁻¹b⁻³`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkolemCertificate {
    pub f12_scaled: SeriesJson,
    pub f13_scaled: SeriesJson,
    pub skolem: SkolemResult,
    pub root: [i64; 2],
    pub element: Vec<String>,
    pub solution: Solution,
}

/// The branch through `1`, after `t₂ ↦ t₁ + t₂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrassmannCertificate {
    pub f04: SeriesJson,
    pub h: SeriesJson,
    pub f02: SeriesJson,
    pub strassmann: StrassmannResult,
    pub roots: Vec<i64>,
    pub elements: Vec<Vec<String>>,
    pub solutions: Vec<Solution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCrossCheck {
    pub bound: i64,
    pub solutions: Vec<Solution>,
    /// The oracle found exactly the claimed solutions lying in its box.
    pub agrees: bool,
    pub elapsed_ms: u64,
}

impl OracleCrossCheck {
    pub fn new(r: &SearchResult, claimed: &[Solution]) -> Self {
        let found: Vec<Solution> = r
            .solutions
            .iter()
            .map(|&(m, n)| Solution::new(m.into(), n.into()))
            .collect();
        let in_box: Vec<Solution> = claimed.iter().filter(|s| fits_box(s, r.bound)).cloned().collect();
        OracleCrossCheck {
            bound: r.bound,
            agrees: solution_set(&found) == solution_set(&in_box),
            solutions: found,
            elapsed_ms: r.elapsed.as_millis() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCertificate {
    #[serde(with = "decimal")]
    pub b: BigInt,
    pub k: u32,
    pub prec: u32,
    pub unit_system: UnitSystemSummary,
    pub case_reduction: CaseReductionReport,
    pub skolem_branch: SkolemCertificate,
    pub strassmann_branch: StrassmannCertificate,
    pub solutions: Vec<Solution>,
    pub external_dependencies: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCrossCheck>,
    #[serde(default)]
    pub glossary: Vec<String>,
    #[serde(default)]
    pub elapsed_ms: u64,
}

fn invalid(msg: impl Into<String>) -> QuinticError {
    QuinticError::InvalidCertificate(msg.into())
}

fn parse_element(coords: &[String]) -> Result<Vec<BigInt>, QuinticError> {
    coords
        .iter()
        .map(|c| c.parse().map_err(|_| invalid(format!("bad coordinate {c:?}"))))
        .collect()
}

fn is_zero_at_prec(x: &PadicInt) -> bool {
    x.is_zero()
}

impl TheoremCertificate {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Re-derives every recorded conclusion from the serialized data.
    ///
    /// Skolem's criterion and Strassmann's bound are recomputed from the
    /// stored series, the roots are re-evaluated, the case-reduction
    /// witnesses are recomputed in `R / 5^{3k}R`, and the solutions are
    /// checked in exact integer arithmetic.
    pub fn validate(&self) -> Result<(), QuinticError> {
        let b = &self.b;
        let k = check_b(b)?;
        if k != self.k {
            return Err(invalid(format!("k = {} but v_5(b) = {k}", self.k)));
        }
        if self.prec < minimum_precision(k) {
            return Err(invalid(format!("precision {} below {}", self.prec, minimum_precision(k))));
        }
        if self.external_dependencies != EXTERNAL_DEPENDENCIES {
            return Err(invalid("external dependencies are not recorded"));
        }
        if self.unit_system.exponents != [5, 5] || self.unit_system.rank != 2 {
            return Err(invalid("unit system must have exponents (5, 5) and rank 2"));
        }

        let four_b4 = BigInt::from(4) * b.pow(4);
        let expected = [
            Solution::new(BigInt::one(), BigInt::zero()),
            Solution::new(BigInt::zero(), BigInt::from(-1)),
            Solution::new(BigInt::one(), four_b4.clone()),
        ];
        if self.solutions.len() != 3 || solution_set(&self.solutions) != solution_set(&expected) {
            return Err(invalid("solution list differs from the three expected pairs"));
        }
        for s in &self.solutions {
            if !thue_form(b, &s.m, &s.n).is_one() {
                return Err(QuinticError::SolutionCheckFailed {
                    m: s.m.clone(),
                    n: s.n.clone(),
                });
            }
        }

        self.validate_skolem()?;
        self.validate_strassmann(&four_b4)?;
        let mut branch_solutions: Vec<Solution> = vec![self.skolem_branch.solution.clone()];
        branch_solutions.extend(self.strassmann_branch.solutions.iter().cloned());
        if branch_solutions.len() != 3 || solution_set(&branch_solutions) != solution_set(&self.solutions) {
            return Err(invalid("branch solutions do not add up to the solution list"));
        }
        self.validate_cases(k)?;

        if let Some(o) = &self.oracle {
            let in_box: Vec<Solution> = self.solutions.iter().filter(|s| fits_box(s, o.bound)).cloned().collect();
            if !o.agrees || solution_set(&o.solutions) != solution_set(&in_box) {
                return Err(invalid("oracle disagrees with the solution list"));
            }
        }
        Ok(())
    }

    fn validate_skolem(&self) -> Result<(), QuinticError> {
        let c = &self.skolem_branch;
        let s12 = TruncSeries::from_json(&c.f12_scaled)?;
        let s13 = TruncSeries::from_json(&c.f13_scaled)?;
        let skolem = skolem_criterion(&[s12, s13])?;
        if skolem != c.skolem || !skolem.unique {
            return Err(invalid("Skolem criterion does not reproduce"));
        }
        let theta = [0, 1, 0, 0, 0].map(BigInt::from);
        if parse_element(&c.element)? != theta || c.root != [0, 0] {
            return Err(invalid("Skolem root is not theta"));
        }
        if c.solution != Solution::new(BigInt::zero(), BigInt::from(-1)) {
            return Err(invalid("Skolem branch solution"));
        }
        Ok(())
    }

    fn validate_strassmann(&self, four_b4: &BigInt) -> Result<(), QuinticError> {
        let c = &self.strassmann_branch;
        let f02 = TruncSeries::from_json(&c.f02)?;
        let s = strassmann_series(&f02)?;
        if s != c.strassmann || s.bound != 2 {
            return Err(invalid("Strassmann bound does not reproduce"));
        }
        if c.roots != [0, 1] {
            return Err(invalid("Strassmann roots must be 0 and 1"));
        }
        for &r in &c.roots {
            if !is_zero_at_prec(&f02.eval_integers(&[r])?) {
                return Err(invalid(format!("f02({r}) is not zero")));
            }
        }
        let h = TruncSeries::from_json(&c.h)?;
        let h1 = h.eval_integers(&[1])?;
        if !(&h1 + &PadicInt::one(h.ctx())).is_zero() {
            return Err(invalid("h(1) is not -1"));
        }
        let one = [1, 0, 0, 0, 0].map(BigInt::from).to_vec();
        let mut xi1_5 = one.clone();
        xi1_5[1] = -four_b4.clone();
        if c.elements.len() != 2 || parse_element(&c.elements[0])? != one || parse_element(&c.elements[1])? != xi1_5 {
            return Err(invalid("Strassmann root elements"));
        }
        let expected = [
            Solution::new(BigInt::one(), BigInt::zero()),
            Solution::new(BigInt::one(), four_b4.clone()),
        ];
        if c.solutions != expected {
            return Err(invalid("Strassmann branch solutions"));
        }
        Ok(())
    }

    fn validate_cases(&self, k: u32) -> Result<(), QuinticError> {
        let r = &self.case_reduction;
        if r.surviving != SURVIVING || r.modulus_exponent != 3 * k {
            return Err(invalid("surviving residue classes"));
        }
        let classes: BTreeSet<[u8; 2]> = r.evidence.iter().map(|w| w.residues).collect();
        if classes.len() != 23 || SURVIVING.iter().any(|s| classes.contains(s)) {
            return Err(invalid("every excluded class needs one witness"));
        }
        let ctx = PadicContext::new(5, self.prec)?;
        let alg = Algebra::new(&ctx, &defining_polynomial(&self.b))?;
        let (_, xi1, xi2) = reduced_units(&alg, &self.b, k)?;
        let unit = |e: [i64; 2]| -> Result<AlgebraElement, QuinticError> {
            Ok(&xi1.pow_signed(e[0])? * &xi2.pow_signed(e[1])?)
        };
        for w in &r.evidence {
            let ExclusionWitness {
                residues,
                exponents,
                coordinate,
                value,
            } = w;
            if [exponents[0].rem_euclid(5) as u8, exponents[1].rem_euclid(5) as u8] != *residues {
                return Err(invalid(format!("witness {exponents:?} is not in class {residues:?}")));
            }
            let x = unit(*exponents)?;
            let c = x.coordinate(*coordinate);
            if !(2..5).contains(coordinate) || c.is_zero() || c.signed_residue() != *value {
                return Err(invalid(format!("witness {exponents:?} does not reproduce")));
            }
        }
        for e in &r.members_of_x {
            let x = unit(*e)?;
            let class = [e[0].rem_euclid(5) as u8, e[1].rem_euclid(5) as u8];
            if !SURVIVING.contains(&class) || (2..5).any(|j| !x.coordinate(j).is_zero()) {
                return Err(invalid(format!("recorded member {e:?} of X does not reproduce")));
            }
        }
        if !r.members_of_x.contains(&[0, 0]) || !r.members_of_x.contains(&[1, 0]) {
            return Err(invalid("surviving classes lack a member"));
        }
        Ok(())
    }
}
