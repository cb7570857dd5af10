//! Membership in `K_G(a)`, the convex hull of the orbit
//! `{gamma a : gamma in G}`.
//!
//! Membership is decided by an exact phase-1 simplex over the orbit
//! points. A feasible system yields convex weights (verified by
//! re-substitution before being returned); an infeasible one yields a
//! separating hyperplane extracted from the Farkas dual, normalized so
//! the coefficients and the margin are coprime integers, and verified
//! against every orbit point.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::rat::{normalize_to_coprime_integers, Rat};
use crate::simplex::{solve_feasibility, FeasibilityOutcome};
use crate::vector::RVector;

/// Convex weights over group elements expressing `b` as a mixture of
/// orbit points. Orbit points shared by several group elements carry
/// their weight on the lexicographically smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    weights: Vec<(Permutation, Rat)>,
}

impl MembershipCertificate {
    pub fn from_weights(weights: Vec<(Permutation, Rat)>) -> Self {
        MembershipCertificate { weights }
    }

    pub fn weights(&self) -> &[(Permutation, Rat)] {
        &self.weights
    }

    /// Exact re-verification: weights nonnegative and in the group,
    /// summing to one, mixing the orbit to exactly `b`.
    pub fn verify(&self, a: &RVector, b: &RVector, group: &PermGroup) -> Result<()> {
        if self.weights.is_empty() {
            return Err(Error::CertificateInvalid("no weights".into()));
        }
        let mut total = Rat::zero();
        let mut combo = vec![Rat::zero(); a.len()];
        for (gamma, w) in &self.weights {
            if !group.contains(gamma) {
                return Err(Error::CertificateInvalid(format!(
                    "{} is not a group element",
                    gamma.cycle_string()
                )));
            }
            if w.is_negative() {
                return Err(Error::CertificateInvalid(format!("negative weight {w}")));
            }
            total += w;
            let moved = gamma.act(a)?;
            for (c, m) in combo.iter_mut().zip(moved.iter()) {
                *c += w * m;
            }
        }
        if !total.is_one() {
            return Err(Error::CertificateInvalid(format!("weights sum to {total}")));
        }
        if RVector::new(combo)? != *b {
            return Err(Error::CertificateInvalid(
                "weighted orbit mixture does not equal b".into(),
            ));
        }
        Ok(())
    }
}

/// A hyperplane strictly separating `b` from `K_G(a)`:
/// `<u, gamma a> <= c` for every `gamma` while `<u, b> >= c + margin`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SeparationCertificate {
    pub u: RVector,
    #[serde(with = "crate::rat::rat_string")]
    pub c: Rat,
    #[serde(with = "crate::rat::rat_string")]
    pub margin: Rat,
}

impl SeparationCertificate {
    pub fn verify(&self, a: &RVector, b: &RVector, group: &PermGroup) -> Result<()> {
        if !self.margin.is_positive() {
            return Err(Error::CertificateInvalid(format!(
                "margin {} is not positive",
                self.margin
            )));
        }
        if self.u.iter().all(Zero::is_zero) {
            return Err(Error::CertificateInvalid("u is the zero vector".into()));
        }
        for point in orbit(a, group)? {
            let value = self.u.dot(&point)?;
            if value > self.c {
                return Err(Error::CertificateInvalid(format!(
                    "orbit point {point:?} violates <u,.> <= c: {value} > {}",
                    self.c
                )));
            }
        }
        let hit = self.u.dot(b)?;
        if hit < &self.c + &self.margin {
            return Err(Error::CertificateInvalid(format!(
                "<u,b> = {hit} below c + margin"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipOutcome {
    Member(MembershipCertificate),
    Separated(SeparationCertificate),
}

impl MembershipOutcome {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipOutcome::Member(_))
    }
}

/// The orbit `{gamma a : gamma in G}` without duplicates, in
/// lexicographic point order.
pub fn orbit(a: &RVector, group: &PermGroup) -> Result<Vec<RVector>> {
    Ok(orbit_with_reps(a, group)?
        .into_iter()
        .map(|(p, _)| p)
        .collect())
}

/// Deduplicated orbit points, each with the lexicographically smallest
/// group element producing it.
pub fn orbit_with_reps(a: &RVector, group: &PermGroup) -> Result<Vec<(RVector, Permutation)>> {
    if group.degree() != a.len() {
        return Err(Error::DegreeMismatch {
            left: group.degree(),
            right: a.len(),
        });
    }
    let mut seen: BTreeMap<RVector, Permutation> = BTreeMap::new();
    for gamma in group.elements() {
        let point = gamma.act(a)?;
        seen.entry(point).or_insert_with(|| gamma.clone());
    }
    Ok(seen.into_iter().collect())
}

/// Decides `b in K_G(a)` exactly. Both vectors must be nonnegative; use
/// [`membership_unrestricted`] to lift that requirement (the geometry
/// itself does not need it).
pub fn membership(b: &RVector, a: &RVector, group: &PermGroup) -> Result<MembershipOutcome> {
    if !a.is_nonnegative() || !b.is_nonnegative() {
        return Err(Error::NotNonnegative);
    }
    membership_unrestricted(b, a, group)
}

/// Same LP as [`membership`] without the nonnegativity guard.
pub fn membership_unrestricted(
    b: &RVector,
    a: &RVector,
    group: &PermGroup,
) -> Result<MembershipOutcome> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    let points = orbit_with_reps(a, group)?;

    // A vertex hit needs no LP (and pins b = a on the identity).
    for (point, gamma) in &points {
        if point == b {
            let cert = MembershipCertificate::from_weights(vec![(gamma.clone(), Rat::one())]);
            cert.verify(a, b, group)?;
            return Ok(MembershipOutcome::Member(cert));
        }
    }

    // Columns are orbit points with the convexity row appended.
    let columns: Vec<Vec<Rat>> = points
        .iter()
        .map(|(p, _)| {
            let mut col: Vec<Rat> = p.coords().to_vec();
            col.push(Rat::one());
            col
        })
        .collect();
    let mut rhs: Vec<Rat> = b.coords().to_vec();
    rhs.push(Rat::one());

    match solve_feasibility(&columns, &rhs)? {
        FeasibilityOutcome::Feasible(t) => {
            let weights: Vec<(Permutation, Rat)> = points
                .iter()
                .zip(t)
                .filter(|(_, w)| !w.is_zero())
                .map(|((_, gamma), w)| (gamma.clone(), w))
                .collect();
            let cert = MembershipCertificate::from_weights(weights);
            cert.verify(a, b, group)
                .map_err(|e| Error::internal(format!("membership re-verification: {e}")))?;
            Ok(MembershipOutcome::Member(cert))
        }
        FeasibilityOutcome::Infeasible(y) => {
            let u_raw = RVector::new(y[..n].to_vec())?;
            let c_raw = points
                .iter()
                .map(|(p, _)| u_raw.dot(p))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max()
                .ok_or_else(|| Error::internal("empty orbit"))?;
            let margin_raw = u_raw.dot(b)? - &c_raw;
            if !margin_raw.is_positive() {
                return Err(Error::internal("Farkas margin not positive"));
            }
            // Scale (u, margin) jointly to coprime integers; c scales along.
            let mut bundle: Vec<Rat> = u_raw.coords().to_vec();
            bundle.push(margin_raw.clone());
            let scaled = normalize_to_coprime_integers(&bundle);
            let factor = &scaled[n] / &margin_raw;
            let cert = SeparationCertificate {
                u: RVector::new(scaled[..n].to_vec())?,
                c: c_raw * &factor,
                margin: scaled[n].clone(),
            };
            cert.verify(a, b, group)
                .map_err(|e| Error::internal(format!("separation re-verification: {e}")))?;
            Ok(MembershipOutcome::Separated(cert))
        }
    }
}

/// The majorization shortcut, valid only for the full symmetric group:
/// `b in K_{S_n}(a)` exactly when `a` majorizes `b` at least weakly.
pub fn membership_via_majorization(b: &RVector, a: &RVector) -> Result<bool> {
    if !a.is_nonnegative() || !b.is_nonnegative() {
        return Err(Error::NotNonnegative);
    }
    Ok(a.majorizes(b)?.relation.holds_weakly())
}
