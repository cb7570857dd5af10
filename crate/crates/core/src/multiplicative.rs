//! Prefix-product dominance between decreasing positive sequences and
//! the strict sum inequality it forces.
//!
//! The argument augments both sequences with an (n+1)-th term that
//! equalizes the full products, rescales so every term exceeds one, and
//! reads the conclusion off the log-majorization of the scaled
//! sequences. The sum inequality itself is certified here by direct
//! exact summation; the log vectors are exposed as a float diagnostic
//! only, since logs are irrational.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_int, to_f64, Rat};

/// Validated input: two strictly positive, non-increasing sequences of
/// equal length with every prefix product of `v` at most the matching
/// prefix product of `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativePair {
    u: Vec<Rat>,
    v: Vec<Rat>,
    diverging_index: Option<usize>,
}

impl MultiplicativePair {
    pub fn new(u: Vec<Rat>, v: Vec<Rat>) -> Result<Self> {
        if u.is_empty() || u.len() != v.len() {
            return Err(Error::InvalidInput(
                "sequences must be nonempty and of equal length".into(),
            ));
        }
        validate_positive_decreasing(&u)?;
        validate_positive_decreasing(&v)?;
        let check = prefix_products_dominate(&u, &v);
        if let Some(j) = check.first_violation {
            return Err(Error::InvalidInput(format!(
                "prefix product dominance fails at j = {j}"
            )));
        }
        let diverging_index = u.iter().zip(&v).position(|(x, y)| x != y);
        Ok(MultiplicativePair {
            u,
            v,
            diverging_index,
        })
    }

    pub fn u(&self) -> &[Rat] {
        &self.u
    }

    pub fn v(&self) -> &[Rat] {
        &self.v
    }

    /// Smallest index (0-based) where the sequences differ, `None` when
    /// they are identical.
    pub fn diverging_index(&self) -> Option<usize> {
        self.diverging_index
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    /// Always false: length >= 1 by construction.
    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }
}

fn validate_positive_decreasing(seq: &[Rat]) -> Result<()> {
    if seq.iter().any(|x| !x.is_positive()) {
        return Err(Error::NotPositive);
    }
    if seq.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(
            "sequence must be non-increasing".into(),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixProductCheck {
    pub ok: bool,
    /// First prefix length (1-based) where `prod v` exceeds `prod u`.
    pub first_violation: Option<usize>,
}

fn prefix_products_dominate(u: &[Rat], v: &[Rat]) -> PrefixProductCheck {
    let mut pu = Rat::one();
    let mut pv = Rat::one();
    for j in 0..u.len() {
        pu *= &u[j];
        pv *= &v[j];
        if pv > pu {
            return PrefixProductCheck {
                ok: false,
                first_violation: Some(j + 1),
            };
        }
    }
    PrefixProductCheck {
        ok: true,
        first_violation: None,
    }
}

/// Exact check of the hypothesis `prod_1^j v <= prod_1^j u` for all
/// `j`, on positive non-increasing sequences.
pub fn check_prefix_products(u: &[Rat], v: &[Rat]) -> Result<PrefixProductCheck> {
    if u.is_empty() || u.len() != v.len() {
        return Err(Error::InvalidInput(
            "sequences must be nonempty and of equal length".into(),
        ));
    }
    validate_positive_decreasing(u)?;
    validate_positive_decreasing(v)?;
    Ok(prefix_products_dominate(u, v))
}

/// The (n+1)-th terms equalizing the full products, plus the power-of-2
/// factor pushing every term above one before logs are taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub u_next: Rat,
    pub v_next: Rat,
    pub lambda_scale: Rat,
}

pub fn augment(pair: &MultiplicativePair) -> Result<Augmentation> {
    let prod = |seq: &[Rat]| seq.iter().fold(Rat::one(), |acc, x| acc * x);
    let pu = prod(pair.u());
    let pv = prod(pair.v());
    let last = pair.len() - 1;
    let v_next = pair.v()[last].clone().min(pair.u()[last].clone());
    let u_next = &v_next * &pv / &pu;
    if !u_next.is_positive() || u_next > v_next {
        return Err(Error::internal("augmented terms out of order"));
    }
    if pu * &u_next != pv * &v_next {
        return Err(Error::internal("augmented products differ"));
    }
    // Smallest power of two (at least 1) making every scaled term > 1.
    let smallest = pair
        .u()
        .iter()
        .chain(pair.v())
        .chain([&u_next, &v_next])
        .min()
        .expect("nonempty")
        .clone();
    let mut lambda_scale = Rat::one();
    while &lambda_scale * &smallest <= Rat::one() {
        lambda_scale *= rat_int(2);
    }
    Ok(Augmentation {
        u_next,
        v_next,
        lambda_scale,
    })
}

/// The strict sum conclusion, with the augmented log vectors as a float
/// diagnostic of the underlying majorization.
#[derive(Debug, Clone, PartialEq)]
pub struct SumDominance {
    pub sum_u: Rat,
    pub sum_v: Rat,
    pub strict: bool,
    pub augmentation: Augmentation,
    /// Logs of the scaled augmented `u` sequence (decreasing, positive).
    pub log_u: Vec<f64>,
    /// Logs of the scaled augmented `v` sequence.
    pub log_v: Vec<f64>,
    /// Float cross-check that `log_v` is weakly majorized by `log_u`
    /// with equal totals, at 1e-9 tolerance on prefix sums.
    pub log_majorization_ok: bool,
}

pub fn sum_dominance(pair: &MultiplicativePair) -> Result<SumDominance> {
    if pair.diverging_index().is_none() {
        return Err(Error::InvalidInput(
            "sequences are identical; no strict conclusion".into(),
        ));
    }
    let sum = |seq: &[Rat]| seq.iter().fold(Rat::zero(), |acc, x| acc + x);
    let sum_u = sum(pair.u());
    let sum_v = sum(pair.v());
    if sum_v >= sum_u {
        return Err(Error::internal("sum dominance failed on a valid pair"));
    }
    let augmentation = augment(pair)?;
    let scaled_logs = |seq: &[Rat], next: &Rat| -> Vec<f64> {
        seq.iter()
            .chain(std::iter::once(next))
            .map(|x| to_f64(&(x * &augmentation.lambda_scale)).ln())
            .collect()
    };
    let log_u = scaled_logs(pair.u(), &augmentation.u_next);
    let log_v = scaled_logs(pair.v(), &augmentation.v_next);
    let log_majorization_ok = float_majorization(&log_u, &log_v, 1e-9);
    Ok(SumDominance {
        sum_u,
        sum_v,
        strict: true,
        augmentation,
        log_u,
        log_v,
        log_majorization_ok,
    })
}

fn float_majorization(a: &[f64], b: &[f64], tol: f64) -> bool {
    let mut pa = 0.0;
    let mut pb = 0.0;
    for i in 0..a.len() {
        pa += a[i];
        pb += b[i];
        if pb > pa + tol {
            return false;
        }
    }
    (pa - pb).abs() <= tol * pa.abs().max(1.0)
}
