//! Monomials `x^a` and their G-symmetric means.
//!
//! Exact mode requires integer exponents and evaluates everything in
//! rational arithmetic; float mode accepts rational exponents and works
//! in binary64 through `exp`/`log` powers.
//!
//! The sum over group elements is embarrassingly parallel. With the
//! `parallel` feature the exact-mode sum is reduced with rayon (rational
//! addition is exact in any order); float mode always runs sequentially
//! over the group's canonical element order so results are reproducible
//! bit for bit.

use std::cmp::Ordering;

use num_traits::{One, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::rat::{format_rat, pow_rat, rat_to_i64, to_f64, Rat};
use crate::vector::RVector;

/// Group order from which the exact-mode sum switches to the parallel
/// reduction (when the `parallel` feature is enabled).
#[cfg(feature = "parallel")]
const PARALLEL_MIN_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanMode {
    Exact,
    Float,
}

/// Value of a monomial or mean: a rational in exact mode, a binary64 in
/// float mode. Serializes as a `"p/q"` string or a JSON number.
#[derive(Debug, Clone, PartialEq)]
pub enum MeanValue {
    Exact(Rat),
    Float(f64),
}

impl MeanValue {
    pub fn mode(&self) -> MeanMode {
        match self {
            MeanValue::Exact(_) => MeanMode::Exact,
            MeanValue::Float(_) => MeanMode::Float,
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            MeanValue::Exact(r) => Some(r),
            MeanValue::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            MeanValue::Exact(r) => to_f64(r),
            MeanValue::Float(f) => *f,
        }
    }
}

impl Serialize for MeanValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MeanValue::Exact(r) => s.serialize_str(&format_rat(r)),
            MeanValue::Float(f) => s.serialize_f64(*f),
        }
    }
}

/// Nonnegative exponent vector. Exact-mode evaluation additionally
/// requires every coordinate to be an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentVector {
    v: RVector,
}

impl ExponentVector {
    pub fn new(v: RVector) -> Result<Self> {
        if !v.is_nonnegative() {
            return Err(Error::NotNonnegative);
        }
        Ok(ExponentVector { v })
    }

    pub fn from_ints(xs: &[i64]) -> Result<Self> {
        ExponentVector::new(RVector::from_ints(xs))
    }

    pub fn vector(&self) -> &RVector {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    /// Always false: length >= 1 by construction.
    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn total(&self) -> Rat {
        self.v.sum()
    }

    pub fn is_integral(&self) -> bool {
        self.v.iter().all(|c| c.is_integer())
    }

    pub fn int_exponents(&self) -> Result<Vec<i64>> {
        self.v.iter().map(rat_to_i64).collect()
    }
}

/// Relative/absolute tolerance used for float-mode comparisons.
#[derive(Debug, Clone, Copy)]
pub struct FloatTolerance {
    pub relative: f64,
    pub absolute: f64,
}

impl Default for FloatTolerance {
    fn default() -> Self {
        FloatTolerance {
            relative: 1e-9,
            absolute: 1e-12,
        }
    }
}

impl FloatTolerance {
    fn compare(&self, lhs: f64, rhs: f64) -> Ordering {
        let diff = lhs - rhs;
        let scale = lhs.abs().max(rhs.abs());
        if diff.abs() < self.absolute.max(self.relative * scale) {
            Ordering::Equal
        } else if diff < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

fn check_base(x: &RVector, a: &ExponentVector) -> Result<()> {
    if x.len() != a.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: a.len(),
        });
    }
    if !x.is_positive() {
        return Err(Error::NotPositive);
    }
    Ok(())
}

/// `x^a = x_1^{a_1} ... x_n^{a_n}` for a strictly positive `x`.
pub fn monomial_eval(x: &RVector, a: &ExponentVector, mode: MeanMode) -> Result<MeanValue> {
    check_base(x, a)?;
    match mode {
        MeanMode::Exact => {
            let exps = a.int_exponents()?;
            let mut acc = Rat::one();
            for (base, e) in x.iter().zip(exps) {
                acc *= pow_rat(base, e)?;
            }
            Ok(MeanValue::Exact(acc))
        }
        MeanMode::Float => {
            let xs: Vec<f64> = x.iter().map(to_f64).collect();
            let es: Vec<f64> = a.vector().iter().map(to_f64).collect();
            Ok(MeanValue::Float(float_term(&xs, &es, None)))
        }
    }
}

fn exact_term(x: &RVector, exps: &[i64], sigma: &Permutation) -> Result<Rat> {
    let mut acc = Rat::one();
    for (i, &e) in exps.iter().enumerate() {
        acc *= pow_rat(x.get(sigma.apply(i)), e)?;
    }
    Ok(acc)
}

fn float_term(xs: &[f64], es: &[f64], sigma: Option<&Permutation>) -> f64 {
    let mut acc = 1.0;
    for (i, &e) in es.iter().enumerate() {
        let base = match sigma {
            Some(s) => xs[s.apply(i)],
            None => xs[i],
        };
        acc *= base.powf(e);
    }
    acc
}

/// `[x^a]_G`: the mean over all `sigma in G` of the monomial with
/// permuted variables, normalized by `|G|`.
pub fn symmetric_mean(
    x: &RVector,
    a: &ExponentVector,
    group: &PermGroup,
    mode: MeanMode,
) -> Result<MeanValue> {
    check_group(x, a, group)?;
    match mode {
        MeanMode::Exact => {
            let exps = a.int_exponents()?;
            #[cfg(feature = "parallel")]
            if group.order() >= PARALLEL_MIN_ORDER {
                let sum = group
                    .elements()
                    .par_iter()
                    .map(|sigma| exact_term(x, &exps, sigma))
                    .try_reduce(Rat::zero, |acc, t| Ok(acc + t))?;
                return Ok(MeanValue::Exact(normalize(sum, group.order())));
            }
            exact_mean_seq(x, &exps, group)
        }
        MeanMode::Float => float_mean_seq(x, a, group),
    }
}

/// Sequential reference path: identical results to [`symmetric_mean`],
/// always single-threaded. Float mode uses this path unconditionally.
pub fn symmetric_mean_seq(
    x: &RVector,
    a: &ExponentVector,
    group: &PermGroup,
    mode: MeanMode,
) -> Result<MeanValue> {
    check_group(x, a, group)?;
    match mode {
        MeanMode::Exact => {
            let exps = a.int_exponents()?;
            exact_mean_seq(x, &exps, group)
        }
        MeanMode::Float => float_mean_seq(x, a, group),
    }
}

fn check_group(x: &RVector, a: &ExponentVector, group: &PermGroup) -> Result<()> {
    check_base(x, a)?;
    if group.degree() != x.len() {
        return Err(Error::DegreeMismatch {
            left: group.degree(),
            right: x.len(),
        });
    }
    Ok(())
}

fn exact_mean_seq(x: &RVector, exps: &[i64], group: &PermGroup) -> Result<MeanValue> {
    let mut sum = Rat::zero();
    for sigma in group.elements() {
        sum += exact_term(x, exps, sigma)?;
    }
    Ok(MeanValue::Exact(normalize(sum, group.order())))
}

fn float_mean_seq(x: &RVector, a: &ExponentVector, group: &PermGroup) -> Result<MeanValue> {
    let xs: Vec<f64> = x.iter().map(to_f64).collect();
    let es: Vec<f64> = a.vector().iter().map(to_f64).collect();
    // Fixed summation order (canonical element order) for reproducibility.
    let mut sum = 0.0;
    for sigma in group.elements() {
        sum += float_term(&xs, &es, Some(sigma));
    }
    Ok(MeanValue::Float(sum / group.order() as f64))
}

fn normalize(sum: Rat, order: usize) -> Rat {
    sum / Rat::from_integer(order.into())
}

/// Result of comparing `[x^b]_G` (lhs) against `[x^a]_G` (rhs).
#[derive(Debug, Clone, PartialEq)]
pub struct MeanComparison {
    /// Ordering of lhs relative to rhs.
    pub order: Ordering,
    pub lhs: MeanValue,
    pub rhs: MeanValue,
}

/// Compares the two means; exact trichotomy in exact mode, tolerance
/// comparison (default 1e-9 relative, 1e-12 absolute floor) in float
/// mode.
pub fn compare_means(
    x: &RVector,
    a: &ExponentVector,
    b: &ExponentVector,
    group: &PermGroup,
    mode: MeanMode,
) -> Result<MeanComparison> {
    compare_means_with(x, a, b, group, mode, FloatTolerance::default())
}

pub fn compare_means_with(
    x: &RVector,
    a: &ExponentVector,
    b: &ExponentVector,
    group: &PermGroup,
    mode: MeanMode,
    tol: FloatTolerance,
) -> Result<MeanComparison> {
    let rhs = symmetric_mean(x, a, group, mode)?;
    let lhs = symmetric_mean(x, b, group, mode)?;
    let order = match (&lhs, &rhs) {
        (MeanValue::Exact(l), MeanValue::Exact(r)) => l.cmp(r),
        (l, r) => tol.compare(l.to_f64(), r.to_f64()),
    };
    Ok(MeanComparison { order, lhs, rhs })
}

/// The exponent difference `c = a - b` used by the mean-inequality
/// argument: guaranteed to sum to zero, flagged when some coordinate is
/// nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmGmCertificate {
    pub c: RVector,
    pub all_zero: bool,
}

pub fn amgm_certificate(a: &ExponentVector, b: &ExponentVector) -> Result<AmGmCertificate> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.total() != b.total() {
        return Err(Error::TotalMismatch {
            left: format_rat(&a.total()),
            right: format_rat(&b.total()),
        });
    }
    let c = a.vector().sub(b.vector())?;
    debug_assert!(c.sum().is_zero());
    let all_zero = c.iter().all(Zero::is_zero);
    Ok(AmGmCertificate { c, all_zero })
}

/// Geometric-mean exponent vector `(1/n, ..., 1/n)`.
pub fn geometric_exponents(n: usize) -> Result<ExponentVector> {
    let coord = Rat::one() / Rat::from_integer(n.into());
    ExponentVector::new(RVector::new(vec![coord; n])?)
}

/// Arithmetic-mean exponent vector `e_1 = (1, 0, ..., 0)`.
pub fn arithmetic_exponents(n: usize) -> Result<ExponentVector> {
    let mut coords = vec![Rat::zero(); n];
    coords[0] = Rat::one();
    ExponentVector::new(RVector::new(coords)?)
}
