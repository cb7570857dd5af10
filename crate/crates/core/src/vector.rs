//! Rational coordinate vectors and the majorization predicate.
//!
//! All comparisons are exact; there is no tolerance anywhere in this
//! module. Majorization is decided on the decreasing rearrangements:
//! `b` is majorized by `a` when every prefix sum of `b↓` is at most the
//! matching prefix sum of `a↓` and the totals agree.

use std::fmt;

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{format_rat, rat_int, rat_string::RawRat, Rat};
use num_traits::{Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RVector {
    coords: Vec<Rat>,
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rat).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl RVector {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("vector must have length >= 1".into()));
        }
        Ok(RVector { coords })
    }

    /// Integer literal helper, mostly for tests and examples.
    pub fn from_ints(xs: &[i64]) -> Self {
        RVector {
            coords: xs.iter().map(|&x| rat_int(x)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    /// Always false: length >= 1 by construction.
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.coords.iter()
    }

    pub fn sum(&self) -> Rat {
        self.coords.iter().fold(Rat::zero(), |acc, c| acc + c)
    }

    pub fn prefix_sums(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.len());
        let mut acc = Rat::zero();
        for c in &self.coords {
            acc += c;
            out.push(acc.clone());
        }
        out
    }

    /// Coordinates sorted non-increasing. The sort is stable, so ties
    /// keep their original relative order and the result is
    /// deterministic.
    pub fn decreasing_rearrangement(&self) -> RVector {
        let mut coords = self.coords.clone();
        coords.sort_by(|x, y| y.cmp(x));
        RVector { coords }
    }

    /// Stable argsort: `order[p]` is the original index of the p-th
    /// largest coordinate.
    pub fn decreasing_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&i, &j| self.coords[j].cmp(&self.coords[i]));
        order
    }

    pub fn is_decreasing(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_constant(&self) -> bool {
        self.coords.iter().all(|c| *c == self.coords[0])
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|c| c.is_positive())
    }

    /// Number of coordinates where the two vectors differ.
    pub fn hamming_distance(&self, other: &RVector) -> Result<usize> {
        self.check_len(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .filter(|(x, y)| x != y)
            .count())
    }

    pub fn sub(&self, other: &RVector) -> Result<RVector> {
        self.check_len(other)?;
        Ok(RVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x - y)
                .collect(),
        })
    }

    pub fn scale(&self, factor: &Rat) -> RVector {
        RVector {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn dot(&self, other: &RVector) -> Result<Rat> {
        self.check_len(other)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .fold(Rat::zero(), |acc, (x, y)| acc + x * y))
    }

    /// Decides how `self` (as `a`) relates to `b` under majorization.
    pub fn majorizes(&self, b: &RVector) -> Result<MajorizationVerdict> {
        self.check_len(b)?;
        let ad = self.decreasing_rearrangement();
        let bd = b.decreasing_rearrangement();
        if ad.sum() != bd.sum() {
            return Ok(MajorizationVerdict {
                relation: Relation::SumMismatch,
                failing_prefix: None,
            });
        }
        let pa = ad.prefix_sums();
        let pb = bd.prefix_sums();
        for k in 0..self.len() {
            if pb[k] > pa[k] {
                return Ok(MajorizationVerdict {
                    relation: Relation::Incomparable,
                    failing_prefix: Some(k + 1),
                });
            }
        }
        let relation = if ad == bd {
            Relation::Equal
        } else {
            Relation::StrictMajor
        };
        Ok(MajorizationVerdict {
            relation,
            failing_prefix: None,
        })
    }

    fn check_len(&self, other: &RVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

/// Outcome of the majorization test between two equal-length vectors.
///
/// Weak majorization without strictness happens exactly when the
/// decreasing rearrangements coincide, so `Equal` covers that case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    StrictMajor,
    Incomparable,
    SumMismatch,
}

impl Relation {
    /// True when `b ⪯ a` holds at least weakly.
    pub fn holds_weakly(self) -> bool {
        matches!(self, Relation::Equal | Relation::StrictMajor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorizationVerdict {
    pub relation: Relation,
    /// First prefix index (1-based) where `b↓` overtakes `a↓`, when
    /// the vectors are incomparable.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failing_prefix: Option<usize>,
}

impl Serialize for RVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for c in &self.coords {
            seq.serialize_element(&format_rat(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RVector;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an array of rationals like [\"7\",\"1/2\"]")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<RVector, A::Error> {
                let mut coords = Vec::new();
                while let Some(raw) = seq.next_element::<RawRat>()? {
                    coords.push(raw.into_rat().map_err(serde::de::Error::custom)?);
                }
                RVector::new(coords).map_err(serde::de::Error::custom)
            }
        }
        d.deserialize_seq(V)
    }
}
