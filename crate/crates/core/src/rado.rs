//! Constructive converses: turning a separation certificate into a
//! positive point where the symmetric-mean inequality reverses, plus the
//! constant and step-vector probes that recover prefix-sum information
//! from mean comparisons.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::hull::SeparationCertificate;
use crate::means::{symmetric_mean, ExponentVector, MeanMode, MeanValue};
use crate::perm::PermGroup;
use crate::rat::{pow_rat, rat_int, rat_to_i64, Rat};
use crate::vector::RVector;

/// A positive point `x` with `x_i = M^{u_i}` on which `[x^b]_G`
/// strictly exceeds `[x^a]_G`, certifying `b` outside `K_G(a)`
/// constructively. `M` is the smallest integer `>= 2` with
/// `M^margin > |G|`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadoWitness {
    pub scale_base: Rat,
    pub u: RVector,
    pub x: RVector,
    /// `[x^b]_G`
    pub lhs: MeanValue,
    /// `[x^a]_G`
    pub rhs: MeanValue,
}

/// Builds the witness from a verified separation certificate. Exact
/// when both exponent vectors are integral; float mode (with the
/// documented tolerance) otherwise.
pub fn build_rado_witness(
    cert: &SeparationCertificate,
    a: &ExponentVector,
    b: &ExponentVector,
    group: &PermGroup,
) -> Result<RadoWitness> {
    cert.verify(a.vector(), b.vector(), group)?;

    // The certificate normally arrives with integral (u, margin); scale
    // by the denominators' lcm otherwise. Scaling u scales the margin
    // identically, so the separation survives.
    let mut u = cert.u.clone();
    let mut margin = cert.margin.clone();
    if u.iter().any(|c| !c.is_integer()) || !margin.is_integer() {
        let mut lcm = BigInt::one();
        for c in u.iter().chain(std::iter::once(&margin)) {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let factor = Rat::from_integer(lcm);
        u = u.scale(&factor);
        margin *= factor;
    }

    let scale_base = smallest_power_base(&margin, group.order())?;
    let coords = u
        .iter()
        .map(|ui| pow_rat(&scale_base, rat_to_i64(ui)?))
        .collect::<Result<Vec<_>>>()?;
    let x = RVector::new(coords)?;

    let mode = if a.is_integral() && b.is_integral() {
        MeanMode::Exact
    } else {
        MeanMode::Float
    };
    let lhs = symmetric_mean(&x, b, group, mode)?;
    let rhs = symmetric_mean(&x, a, group, mode)?;
    let reversed = match (&lhs, &rhs) {
        (MeanValue::Exact(l), MeanValue::Exact(r)) => l > r,
        (l, r) => l.to_f64() > r.to_f64(),
    };
    if !reversed {
        return Err(Error::internal(
            "witness failed to reverse the mean inequality",
        ));
    }
    Ok(RadoWitness {
        scale_base,
        u,
        x,
        lhs,
        rhs,
    })
}

/// Smallest integer `M >= 2` with `M^margin > order`, decided by the
/// exact integer comparison `M^p > order^q` for `margin = p/q`.
pub fn smallest_power_base(margin: &Rat, order: usize) -> Result<Rat> {
    if !margin.is_positive() {
        return Err(Error::InvalidInput(format!(
            "margin must be positive, got {margin}"
        )));
    }
    let p = margin.numer().to_u32().ok_or(Error::ExponentOutOfRange)?;
    let q = margin.denom().to_u32().ok_or(Error::ExponentOutOfRange)?;
    let target = BigInt::from(order).pow(q);
    let mut m = BigInt::from(2);
    while m.clone().pow(p) <= target {
        m += 1;
    }
    Ok(Rat::from_integer(m))
}

/// Result of probing with the constant vector `(w, ..., w)`: the means
/// collapse to `w^total`, so their ordering reveals the ordering of
/// the exponent totals (reversed when `w < 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantProbe {
    pub w: Rat,
    pub sum_a: Rat,
    pub sum_b: Rat,
    /// Ordering of `sum_b` relative to `sum_a`.
    pub totals: Ordering,
    /// `w^sum_a`, exact when the total is an integer.
    pub mean_a: Option<Rat>,
    pub mean_b: Option<Rat>,
}

pub fn probe_constant(a: &ExponentVector, b: &ExponentVector, w: &Rat) -> Result<ConstantProbe> {
    if !w.is_positive() || w.is_one() {
        return Err(Error::InvalidInput(format!(
            "probe base must be positive and != 1, got {w}"
        )));
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let sum_a = a.total();
    let sum_b = b.total();
    let power = |total: &Rat| -> Result<Option<Rat>> {
        if total.is_integer() {
            Ok(Some(pow_rat(w, rat_to_i64(total)?)?))
        } else {
            Ok(None)
        }
    };
    let mean_a = power(&sum_a)?;
    let mean_b = power(&sum_b)?;
    let totals = sum_b.cmp(&sum_a);
    if let (Some(ma), Some(mb)) = (&mean_a, &mean_b) {
        // Monotonicity sanity check: w > 1 preserves the ordering,
        // w < 1 reverses it.
        let observed = mb.cmp(ma);
        let implied = if *w > Rat::one() {
            observed
        } else {
            observed.reverse()
        };
        if implied != totals {
            return Err(Error::internal("constant probe ordering mismatch"));
        }
    }
    Ok(ConstantProbe {
        w: w.clone(),
        sum_a,
        sum_b,
        totals,
        mean_a,
        mean_b,
    })
}

/// One row of the step-vector probe: with `k` leading `w`s the dominant
/// power of `w` in each mean is the k-th prefix sum of the decreasing
/// exponent vector, so prefix comparisons emerge asymptotically.
#[derive(Debug, Clone, PartialEq)]
pub struct StepProbeRow {
    pub k: usize,
    pub prefix_a: Rat,
    pub prefix_b: Rat,
    /// Ordering of `prefix_b` relative to `prefix_a` (the asymptotic
    /// verdict for large `w`).
    pub asymptotic: Ordering,
    /// Exact `[x^a]` at the probed `w`.
    pub mean_a: Rat,
    /// Exact `[x^b]` at the probed `w`.
    pub mean_b: Rat,
    /// Ordering of `mean_b` relative to `mean_a` at the probed `w`.
    pub observed: Ordering,
}

/// Probes both exponent vectors (rearranged decreasing) against the
/// step vectors `(w,...,w,1,...,1)` for `k = 1..n-1` under the full
/// symmetric group. Requires integral exponents (the means are
/// evaluated exactly) and `w > 1`.
pub fn probe_step_vectors(
    a: &ExponentVector,
    b: &ExponentVector,
    w: &Rat,
) -> Result<Vec<StepProbeRow>> {
    if *w <= Rat::one() {
        return Err(Error::InvalidInput(format!(
            "step probe base must be > 1, got {w}"
        )));
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if !a.is_integral() || !b.is_integral() {
        return Err(Error::NonIntegralExponent);
    }
    let n = a.len();
    let group = PermGroup::symmetric(n)?;
    let ad = a.vector().decreasing_rearrangement();
    let bd = b.vector().decreasing_rearrangement();
    let pa = ad.prefix_sums();
    let pb = bd.prefix_sums();
    let mut rows = Vec::new();
    for k in 1..n {
        let mut coords = vec![w.clone(); k];
        coords.extend(std::iter::repeat_n(rat_int(1), n - k));
        let x = RVector::new(coords)?;
        let mean_a = symmetric_mean(&x, a, &group, MeanMode::Exact)?
            .as_rat()
            .expect("exact mode")
            .clone();
        let mean_b = symmetric_mean(&x, b, &group, MeanMode::Exact)?
            .as_rat()
            .expect("exact mode")
            .clone();
        rows.push(StepProbeRow {
            k,
            prefix_a: pa[k - 1].clone(),
            prefix_b: pb[k - 1].clone(),
            asymptotic: pb[k - 1].cmp(&pa[k - 1]),
            observed: mean_b.cmp(&mean_a),
            mean_a,
            mean_b,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::{membership, MembershipOutcome};
    use crate::rat::rat;

    fn rv(xs: &[i64]) -> RVector {
        RVector::from_ints(xs)
    }

    fn ev(xs: &[i64]) -> ExponentVector {
        ExponentVector::from_ints(xs).unwrap()
    }

    #[test]
    fn witness_for_the_two_variable_example() {
        let s2 = PermGroup::symmetric(2).unwrap();
        let a = ev(&[6, 4]);
        let b = ev(&[7, 3]);
        let cert = SeparationCertificate {
            u: rv(&[1, -1]),
            c: rat_int(2),
            margin: rat_int(2),
        };
        let witness = build_rado_witness(&cert, &a, &b, &s2).unwrap();
        // M = 2 since 2^2 = 4 > |G| = 2; x = (2, 1/2).
        assert_eq!(witness.scale_base, rat_int(2));
        assert_eq!(
            witness.x,
            RVector::new(vec![rat_int(2), rat(1, 2)]).unwrap()
        );
        assert_eq!(witness.lhs.as_rat().unwrap(), &rat(257, 32));
        assert_eq!(witness.rhs.as_rat().unwrap(), &rat(17, 8));
    }

    #[test]
    fn witness_from_lp_certificate() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let a = ev(&[6, 4, 0]);
        let b = ev(&[7, 3, 0]);
        let outcome = membership(b.vector(), a.vector(), &s3).unwrap();
        let MembershipOutcome::Separated(cert) = outcome else {
            panic!("expected separation");
        };
        let witness = build_rado_witness(&cert, &a, &b, &s3).unwrap();
        assert!(witness.lhs.as_rat().unwrap() > witness.rhs.as_rat().unwrap());
    }

    #[test]
    fn witness_rejects_certificates_that_do_not_verify() {
        let s2 = PermGroup::symmetric(2).unwrap();
        let bogus = SeparationCertificate {
            u: rv(&[1, -1]),
            c: rat_int(100),
            margin: rat_int(1),
        };
        assert!(matches!(
            build_rado_witness(&bogus, &ev(&[6, 4]), &ev(&[7, 3]), &s2),
            Err(Error::CertificateInvalid(_))
        ));
    }

    #[test]
    fn smallest_base_examples() {
        assert_eq!(smallest_power_base(&rat_int(2), 2).unwrap(), rat_int(2));
        // margin 1: need M > order.
        assert_eq!(smallest_power_base(&rat_int(1), 6).unwrap(), rat_int(7));
        // Fractional margin 1/2: need M > 6^2.
        assert_eq!(smallest_power_base(&rat(1, 2), 6).unwrap(), rat_int(37));
        assert!(smallest_power_base(&rat_int(0), 2).is_err());
    }

    #[test]
    fn constant_probe_examples() {
        let p = probe_constant(&ev(&[7, 3]), &ev(&[6, 4]), &rat_int(2)).unwrap();
        assert_eq!(p.totals, Ordering::Equal);
        assert_eq!(p.mean_a.unwrap(), rat_int(1024));
        assert_eq!(p.mean_b.unwrap(), rat_int(1024));

        let p = probe_constant(&ev(&[5, 0]), &ev(&[2, 2]), &rat_int(2)).unwrap();
        assert_eq!(p.totals, Ordering::Less);
        assert_eq!(p.mean_a.unwrap(), rat_int(32));
        assert_eq!(p.mean_b.unwrap(), rat_int(16));

        // Reversal below 1.
        let p = probe_constant(&ev(&[5, 0]), &ev(&[2, 2]), &rat(1, 2)).unwrap();
        assert_eq!(p.totals, Ordering::Less);
        assert_eq!(p.mean_a.unwrap(), rat(1, 32));

        assert!(probe_constant(&ev(&[1, 1]), &ev(&[2, 0]), &rat_int(1)).is_err());
        assert!(probe_constant(&ev(&[1, 1]), &ev(&[2, 0]), &rat_int(0)).is_err());
    }

    #[test]
    fn step_probe_examples() {
        let rows = probe_step_vectors(&ev(&[7, 3]), &ev(&[6, 4]), &rat_int(1000)).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].asymptotic, Ordering::Less);
        assert_eq!(rows[0].observed, Ordering::Less);
        assert!(rows[0].mean_a > rows[0].mean_b);

        let same = probe_step_vectors(&ev(&[4, 2, 1]), &ev(&[4, 2, 1]), &rat_int(7)).unwrap();
        assert!(same
            .iter()
            .all(|r| r.asymptotic == Ordering::Equal && r.observed == Ordering::Equal));

        // Roles reversed: evidence that (3,2,1) is not below (2,2,2).
        let rows = probe_step_vectors(&ev(&[2, 2, 2]), &ev(&[3, 2, 1]), &rat_int(5)).unwrap();
        assert_eq!(rows[0].asymptotic, Ordering::Greater);

        assert!(probe_step_vectors(&ev(&[1, 1]), &ev(&[2, 0]), &rat_int(1)).is_err());
    }

    #[test]
    fn step_probe_recovers_majorization() {
        // For b strictly majorized by a, every probe row reports <= and
        // the totals agree: together that reconstructs b ⪯ a.
        let a = ev(&[9, 4, 2, 1]);
        let b = ev(&[6, 5, 3, 2]);
        assert!(a
            .vector()
            .majorizes(b.vector())
            .unwrap()
            .relation
            .holds_weakly());
        let rows = probe_step_vectors(&a, &b, &rat_int(50)).unwrap();
        assert!(rows.iter().all(|r| r.asymptotic != Ordering::Greater));
        let totals = probe_constant(&a, &b, &rat_int(2)).unwrap().totals;
        assert_eq!(totals, Ordering::Equal);
    }

    #[test]
    fn probe_family_reconstructs_the_predicate() {
        // b ⪯ a holds exactly when the totals probe reports equal and
        // no step row reports a greater prefix for b.
        let mut state = 0xfeedu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let n = 2 + (next() % 3) as usize;
            let a: Vec<i64> = (0..n).map(|_| (next() % 9) as i64).collect();
            let b: Vec<i64> = (0..n).map(|_| (next() % 9) as i64).collect();
            let (a, b) = (ev(&a), ev(&b));
            let verdict = a.vector().majorizes(b.vector()).unwrap().relation;
            let totals = probe_constant(&a, &b, &rat_int(3)).unwrap().totals;
            let rows = probe_step_vectors(&a, &b, &rat_int(7)).unwrap();
            let reconstructed =
                totals == Ordering::Equal && rows.iter().all(|r| r.asymptotic != Ordering::Greater);
            assert_eq!(reconstructed, verdict.holds_weakly(), "a={a:?} b={b:?}");
        }
    }
}
