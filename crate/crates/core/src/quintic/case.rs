//! Reduction of the exponent pairs `(n₁, n₂)` modulo 5.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{QuinticError, QuinticInstance};
use crate::algebra::{Algebra, AlgebraElement};
use crate::serde_util::decimal;

/// A sampled pair whose unit has a nonzero `θ²`, `θ³` or `θ⁴` coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionWitness {
    pub residues: [u8; 2],
    pub exponents: [i64; 2],
    pub coordinate: usize,
    #[serde(with = "decimal")]
    pub value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReductionReport {
    /// Computations run modulo `5^modulus_exponent`, that is `5^{3k}`.
    pub modulus_exponent: u32,
    pub sampled_range: i64,
    pub sampled_pairs: usize,
    pub surviving: Vec<[u8; 2]>,
    pub evidence: Vec<ExclusionWitness>,
    /// Sampled pairs whose unit is of the form `m − nθ` modulo `5^{3k}`.
    pub members_of_x: Vec<[i64; 2]>,
    pub binomial_identity_checked: usize,
    pub justification: String,
}

pub(crate) const SURVIVING: [[u8; 2]; 2] = [[0, 0], [1, 0]];

pub(crate) const JUSTIFICATION: &str = "sampled evidence only; for all integers the congruence \
xi1^n1 xi2^n2 = theta^n1 (theta^(2 n2) + 2 n2 b theta^(2 n2 - 1) + 2 n2^2 b^2 theta^(2 n2 - 2)) mod 5^(3k), \
checked here on every sampled pair, forces 5 | n2 and then n1 = 0, 1 mod 5";

/// `x^n` for `n` in `-range..=range`, indexed by `n + range`.
fn signed_powers(x: &AlgebraElement, range: i64) -> Result<Vec<AlgebraElement>, QuinticError> {
    let inv = x.invert()?;
    let one = AlgebraElement::one(x.algebra());
    let mut neg = vec![one.clone()];
    let mut pos = vec![one];
    for i in 1..=range as usize {
        neg.push(&neg[i - 1] * &inv);
        pos.push(&pos[i - 1] * x);
    }
    neg.reverse();
    neg.pop();
    neg.extend(pos);
    Ok(neg)
}

fn residue_class(n1: i64, n2: i64) -> [u8; 2] {
    [n1.rem_euclid(5) as u8, n2.rem_euclid(5) as u8]
}

/// The algebra modulo `5^{3k}` with `ξ₁`, `ξ₂` in it.
pub(crate) fn reduced_units(
    alg: &Algebra,
    b: &BigInt,
    k: u32,
) -> Result<(Algebra, AlgebraElement, AlgebraElement), QuinticError> {
    let ctx = alg.ctx().with_prec(3 * k)?;
    let alg = alg.with_context(&ctx)?;
    let xi1 = AlgebraElement::theta(&alg);
    let xi2 = AlgebraElement::from_integers(&alg, &[2 * b * b, 2 * b, BigInt::from(1)])?;
    Ok((alg, xi1, xi2))
}

fn first_high_coordinate(x: &AlgebraElement) -> Option<usize> {
    (2..x.algebra().rank()).find(|&j| !x.coordinate(j).is_zero())
}

/// Samples `ξ₁^{n₁} ξ₂^{n₂}` modulo `5^{3k}` over `[−B, B]²`.
///
/// The surviving residue classes are those containing a sampled unit of the
/// form `m − nθ`; they must be `(0, 0)` and `(1, 0)`, and every other class
/// gets a witness. The binomial congruence behind the general argument is
/// checked on every sampled pair.
pub fn case_reduction(inst: &QuinticInstance, range: i64) -> Result<CaseReductionReport, QuinticError> {
    if range < 25 {
        return Err(QuinticError::RangeTooSmall(range));
    }
    let k = inst.k;
    let b = &inst.b;
    let (alg, xi1, xi2) = reduced_units(&inst.alg, b, k)?;
    let p1 = signed_powers(&xi1, range)?;
    let p2 = signed_powers(&xi2, range)?;
    let theta_range = 3 * range + 2;
    let tp = signed_powers(&xi1, theta_range)?;
    let theta_pow = |e: i64| &tp[(e + theta_range) as usize];

    let mut surviving = BTreeSet::new();
    let mut witnesses: BTreeMap<[u8; 2], ExclusionWitness> = BTreeMap::new();
    let mut members = Vec::new();
    let mut checked = 0;
    for n1 in -range..=range {
        for n2 in -range..=range {
            let x = &p1[(n1 + range) as usize] * &p2[(n2 + range) as usize];
            let e = n1 + 2 * n2;
            let lin = AlgebraElement::from_integers(&alg, &[2 * n2 * b])?;
            let quad = AlgebraElement::from_integers(&alg, &[2 * n2 * n2 * b * b])?;
            let rhs = &(theta_pow(e) + &(&lin * theta_pow(e - 1))) + &(&quad * theta_pow(e - 2));
            if x != rhs {
                return Err(QuinticError::EvidenceFailure(format!(
                    "binomial congruence fails at ({n1}, {n2})"
                )));
            }
            checked += 1;
            let class = residue_class(n1, n2);
            match first_high_coordinate(&x) {
                None => {
                    surviving.insert(class);
                    members.push([n1, n2]);
                }
                Some(j) => {
                    witnesses.entry(class).or_insert_with(|| ExclusionWitness {
                        residues: class,
                        exponents: [n1, n2],
                        coordinate: j,
                        value: x.coordinate(j).signed_residue(),
                    });
                }
            }
        }
    }
    let surviving: Vec<[u8; 2]> = surviving.into_iter().collect();
    if surviving != SURVIVING {
        return Err(QuinticError::EvidenceFailure(format!(
            "surviving classes {surviving:?}, expected {SURVIVING:?}"
        )));
    }
    let evidence: Vec<ExclusionWitness> = witnesses
        .into_values()
        .filter(|w| !SURVIVING.contains(&w.residues))
        .collect();
    if evidence.len() != 23 {
        return Err(QuinticError::EvidenceFailure(format!(
            "only {} excluded classes have a witness",
            evidence.len()
        )));
    }
    let side = (2 * range + 1) as usize;
    Ok(CaseReductionReport {
        modulus_exponent: 3 * k,
        sampled_range: range,
        sampled_pairs: side * side,
        surviving,
        evidence,
        members_of_x: members,
        binomial_identity_checked: checked,
        justification: JUSTIFICATION.to_string(),
    })
}
