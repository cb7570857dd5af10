//! Strict majorization chains and their matrix realizations.
//!
//! `build_chain` connects `a↓` to `b↓` through single mass transfers:
//! each step moves `min(surplus, deficit)` from the last coordinate
//! still above its target to the first coordinate after it still below.
//! That choice keeps every intermediate vector decreasing, changes
//! exactly two coordinates per step, pins at least one coordinate to its
//! target, and therefore finishes in at most `n - 1` steps.
//!
//! Each step is equivalent to the doubly stochastic matrix
//! `lambda I + (1 - lambda) P_(j,k)`; composing them (with the
//! permutations aligning `a` and `b` to decreasing order) yields an
//! exact doubly stochastic `S` with `b = S a`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{DoublyStochastic, SquareMatrix};
use crate::perm::Permutation;
use crate::rat::{format_rat, parse_rat, rat_int, Rat};
use crate::vector::{RVector, Relation};
use num_traits::{One, Signed, Zero};

/// One elementary transfer between coordinates `j < k` of a decreasing
/// vector. `rho` is the midpoint of the two coordinates before the
/// move, `half_gap_before`/`half_gap_after` the half-differences before
/// and after, and `lambda = (before + after) / (2 before)` the mixing
/// weight of the equivalent T-transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferStep {
    pub j: usize,
    pub k: usize,
    pub rho: Rat,
    pub half_gap_before: Rat,
    pub half_gap_after: Rat,
    pub lambda: Rat,
}

impl TransferStep {
    pub fn new(j: usize, k: usize, rho: Rat, before: Rat, after: Rat) -> Result<Self> {
        if j >= k {
            return Err(Error::InvalidInput(format!(
                "step indices must satisfy j < k, got {j} >= {k}"
            )));
        }
        if after.is_negative() || after >= before {
            return Err(Error::InvalidInput(format!(
                "half gaps must satisfy 0 <= after < before, got {after} vs {before}"
            )));
        }
        let lambda = (&before + &after) / (rat_int(2) * &before);
        Ok(TransferStep {
            j,
            k,
            rho,
            half_gap_before: before,
            half_gap_after: after,
            lambda,
        })
    }

    /// Mass moved from coordinate `j` to coordinate `k`.
    pub fn amount(&self) -> Rat {
        &self.half_gap_before - &self.half_gap_after
    }
}

#[derive(Serialize, Deserialize)]
struct TransferStepWire {
    j: usize,
    k: usize,
    rho: String,
    delta: String,
    #[serde(rename = "Delta")]
    big_delta: String,
    lambda: String,
}

impl Serialize for TransferStep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TransferStepWire {
            j: self.j + 1,
            k: self.k + 1,
            rho: format_rat(&self.rho),
            delta: format_rat(&self.half_gap_after),
            big_delta: format_rat(&self.half_gap_before),
            lambda: format_rat(&self.lambda),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TransferStep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = TransferStepWire::deserialize(d)?;
        if wire.j < 1 || wire.k < 1 {
            return Err(serde::de::Error::custom("step indices are 1-based"));
        }
        let step = TransferStep::new(
            wire.j - 1,
            wire.k - 1,
            parse_rat(&wire.rho).map_err(serde::de::Error::custom)?,
            parse_rat(&wire.big_delta).map_err(serde::de::Error::custom)?,
            parse_rat(&wire.delta).map_err(serde::de::Error::custom)?,
        )
        .map_err(serde::de::Error::custom)?;
        let lambda = parse_rat(&wire.lambda).map_err(serde::de::Error::custom)?;
        if lambda != step.lambda {
            return Err(serde::de::Error::custom("lambda inconsistent with gaps"));
        }
        Ok(step)
    }
}

/// A strict chain `b↓ = c_r ≺ ... ≺ c_1 ≺ c_0 = a↓` where consecutive
/// vectors differ in exactly two coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorizationChain {
    pub vectors: Vec<RVector>,
    pub steps: Vec<TransferStep>,
}

impl MajorizationChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-checks every chain invariant against the claimed endpoints.
    pub fn validate(&self, a: &RVector, b: &RVector) -> Result<()> {
        let n = a.len();
        if self.vectors.len() != self.steps.len() + 1 {
            return Err(Error::CertificateInvalid(
                "vector count must be step count + 1".into(),
            ));
        }
        if self.steps.len() + 1 > n {
            return Err(Error::CertificateInvalid(format!(
                "{} steps exceeds n - 1 = {}",
                self.steps.len(),
                n - 1
            )));
        }
        if self.vectors[0] != a.decreasing_rearrangement() {
            return Err(Error::CertificateInvalid(
                "chain does not start at a↓".into(),
            ));
        }
        if self.vectors[self.vectors.len() - 1] != b.decreasing_rearrangement() {
            return Err(Error::CertificateInvalid("chain does not end at b↓".into()));
        }
        for (i, step) in self.steps.iter().enumerate() {
            let prev = &self.vectors[i];
            let next = &self.vectors[i + 1];
            if !prev.is_decreasing() || !next.is_decreasing() {
                return Err(Error::CertificateInvalid(format!(
                    "chain vector {i} is not decreasing"
                )));
            }
            if prev.hamming_distance(next)? != 2 {
                return Err(Error::CertificateInvalid(format!(
                    "step {i} does not change exactly two coordinates"
                )));
            }
            if prev.majorizes(next)?.relation != Relation::StrictMajor {
                return Err(Error::CertificateInvalid(format!(
                    "step {i} is not a strict majorization"
                )));
            }
            // Dual route: the equivalent T-transform must map prev to next.
            let t = step_to_ttransform(step, n)?;
            if t.apply(prev)? != *next {
                return Err(Error::CertificateInvalid(format!(
                    "T-transform of step {i} does not reproduce the next vector"
                )));
            }
        }
        Ok(())
    }
}

/// Builds a strict majorization chain from `a↓` to `b↓`. Requires
/// nonnegative inputs with `b` strictly majorized by `a`.
pub fn build_chain(a: &RVector, b: &RVector) -> Result<MajorizationChain> {
    if !a.is_nonnegative() || !b.is_nonnegative() {
        return Err(Error::NotNonnegative);
    }
    let verdict = a.majorizes(b)?;
    if verdict.relation != Relation::StrictMajor {
        return Err(Error::NotStrictlyMajorized(format!(
            "verdict was {:?}",
            verdict.relation
        )));
    }
    let ad = a.decreasing_rearrangement();
    let bd = b.decreasing_rearrangement();
    let target = bd.coords();
    let mut cur = ad.coords().to_vec();
    let mut vectors = vec![ad];
    let mut steps = Vec::new();
    while cur != target {
        let j = (0..cur.len())
            .rev()
            .find(|&i| cur[i] > target[i])
            .ok_or_else(|| Error::internal("no surplus coordinate left"))?;
        let k = (j + 1..cur.len())
            .find(|&i| cur[i] < target[i])
            .ok_or_else(|| Error::internal("no deficit coordinate after surplus"))?;
        let surplus = &cur[j] - &target[j];
        let deficit = &target[k] - &cur[k];
        let amount = surplus.min(deficit);
        let rho = (&cur[j] + &cur[k]) / rat_int(2);
        let before = (&cur[j] - &cur[k]) / rat_int(2);
        cur[j] -= &amount;
        cur[k] += &amount;
        let after = (&cur[j] - &cur[k]) / rat_int(2);
        steps.push(TransferStep::new(j, k, rho, before, after)?);
        let next = RVector::new(cur.clone())?;
        if !next.is_decreasing() {
            return Err(Error::internal("transfer broke the decreasing order"));
        }
        vectors.push(next);
    }
    let chain = MajorizationChain { vectors, steps };
    chain.validate(a, b)?;
    Ok(chain)
}

/// The T-transform `lambda I + (1 - lambda) P_(j,k)` as an exact doubly
/// stochastic matrix. `lambda` must lie in `[0, 1]`; `lambda = 1` gives
/// the identity, `lambda = 1/2` the full midpoint mix.
pub fn t_transform_matrix(n: usize, j: usize, k: usize, lambda: &Rat) -> Result<DoublyStochastic> {
    if j >= n || k >= n || j == k {
        return Err(Error::InvalidInput(format!(
            "transform indices ({j},{k}) out of range for n = {n}"
        )));
    }
    if lambda.is_negative() || lambda > &Rat::one() {
        return Err(Error::InvalidInput(format!(
            "lambda must lie in [0,1], got {lambda}"
        )));
    }
    let mut entries = vec![vec![Rat::zero(); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    let complement = Rat::one() - lambda;
    entries[j][j] = lambda.clone();
    entries[k][k] = lambda.clone();
    entries[j][k] = complement.clone();
    entries[k][j] = complement;
    DoublyStochastic::new(SquareMatrix::from_rows(entries)?)
}

/// The matrix of one chain step.
pub fn step_to_ttransform(step: &TransferStep, n: usize) -> Result<DoublyStochastic> {
    t_transform_matrix(n, step.j, step.k, &step.lambda)
}

/// The permutation carrying `v` to its decreasing rearrangement:
/// `pi.act(v) = v↓`, stable on ties.
pub fn sorting_permutation(v: &RVector) -> Permutation {
    let order = v.decreasing_order();
    let mut images = vec![0; v.len()];
    for (position, &original) in order.iter().enumerate() {
        images[original] = position;
    }
    Permutation::from_images(images).expect("argsort is a bijection")
}

/// An exact doubly stochastic `S` with `b = S a`, synthesized as the
/// chain's T-transforms composed with the alignment permutations.
/// Requires `b ⪯ a` (weakly); for `b↓ = a↓` the result is a permutation
/// matrix.
pub fn hlp_matrix(a: &RVector, b: &RVector) -> Result<DoublyStochastic> {
    let verdict = a.majorizes(b)?;
    if !verdict.relation.holds_weakly() {
        return Err(Error::NotMajorized(format!(
            "verdict was {:?}",
            verdict.relation
        )));
    }
    let pi_a = sorting_permutation(a);
    let pi_b = sorting_permutation(b);
    let mut product = SquareMatrix::permutation(&pi_a);
    if verdict.relation == Relation::StrictMajor {
        let chain = build_chain(a, b)?;
        for step in &chain.steps {
            let t = step_to_ttransform(step, a.len())?;
            product = t.matrix().mul(&product)?;
        }
    }
    product = SquareMatrix::permutation(&pi_b.inverse()).mul(&product)?;
    let s = DoublyStochastic::new(product)?;
    if s.apply(a)? != *b {
        return Err(Error::internal("synthesized matrix does not map a to b"));
    }
    Ok(s)
}
