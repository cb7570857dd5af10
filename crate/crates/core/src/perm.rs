//! Permutations of `{1..n}` and finite subgroups of the symmetric group.
//!
//! Internally everything is 0-based image form: `images[j] = sigma(j)`.
//! The external formats (cycle strings, JSON, transfer-step indices) are
//! 1-based; the conversion happens only at the parsing/formatting
//! boundary.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::vector::RVector;

/// Group enumeration stops with an error once more than this many
/// elements are seen, unless the caller passes another cap.
pub const DEFAULT_GROUP_CAP: usize = 50_000;

/// `full_symmetric_group` refuses degrees beyond this (8! = 40 320).
pub const MAX_SYMMETRIC_DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// `images[j] = sigma(j)`, 0-based. Must be a bijection of `0..n`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be >= 1".into()));
        }
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a bijection of 0..{n}"
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Transposition swapping `j` and `k` (0-based).
    pub fn transposition(n: usize, j: usize, k: usize) -> Result<Self> {
        if j >= n || k >= n || j == k {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({j},{k}) out of range for degree {n}"
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(j, k);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `sigma(j)`, 0-based.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &img)| j == img)
    }

    /// Composition `sigma . tau`: `(sigma tau)(j) = sigma(tau(j))`.
    pub fn compose(&self, tau: &Permutation) -> Result<Permutation> {
        if self.degree() != tau.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: tau.degree(),
            });
        }
        Ok(Permutation {
            images: tau.images.iter().map(|&j| self.images[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (j, &img) in self.images.iter().enumerate() {
            images[img] = j;
        }
        Permutation { images }
    }

    /// The action on coordinate vectors: the result holds `x[j]` at
    /// position `sigma(j)`, i.e. `(sigma x)[i] = x[sigma^{-1}(i)]`.
    pub fn act(&self, x: &RVector) -> Result<RVector> {
        if self.degree() != x.len() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: x.len(),
            });
        }
        let mut coords = x.coords().to_vec();
        for (j, &img) in self.images.iter().enumerate() {
            coords[img] = x.get(j).clone();
        }
        RVector::new(coords)
    }

    /// Parses cycle notation: `"(1,2,3)(4,5)"` with disjoint 1-based
    /// cycles, or `"e"` / `"()"` for the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be >= 1".into()));
        }
        let s = text.trim();
        if s.is_empty() || s == "e" || s == "()" {
            return Ok(Permutation::identity(n));
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        let mut rest = s;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::Parse(format!("expected '(' in cycles {s:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
            let body = &rest[1..close];
            rest = rest[close + 1..].trim_start();
            let entries: Vec<usize> = body
                .split(',')
                .map(|p| {
                    let v: usize = p
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad cycle entry {p:?}")))?;
                    if v < 1 || v > n {
                        return Err(Error::Parse(format!(
                            "cycle entry {v} out of range 1..={n}"
                        )));
                    }
                    Ok(v - 1)
                })
                .collect::<Result<_>>()?;
            if entries.len() < 2 {
                return Err(Error::Parse(format!("cycle in {s:?} needs >= 2 entries")));
            }
            for &e in &entries {
                if used[e] {
                    return Err(Error::Parse(format!("cycles in {s:?} are not disjoint")));
                }
                used[e] = true;
            }
            for w in 0..entries.len() {
                images[entries[w]] = entries[(w + 1) % entries.len()];
            }
        }
        Permutation::from_images(images)
    }

    /// Canonical cycle string: disjoint cycles, each starting at its
    /// smallest element, ordered by that element, 1-based; `"e"` for the
    /// identity.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            let parts: Vec<String> = cycle.iter().map(|&c| (c + 1).to_string()).collect();
            out.push('(');
            out.push_str(&parts.join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }
}

/// A finite subgroup of `S_n`, stored as the sorted list of its
/// elements. Always contains the identity and is closed under
/// composition and inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermGroup {
    n: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be >= 1".into()));
        }
        Ok(PermGroup {
            n,
            elements: vec![Permutation::identity(n)],
        })
    }

    /// Breadth-first closure of the generators (plus the identity) under
    /// composition. Fails once the closure would exceed `cap`.
    pub fn generate(n: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be >= 1".into()));
        }
        if cap == 0 {
            return Err(Error::InvalidInput("group cap must be >= 1".into()));
        }
        for g in generators {
            if g.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: g.degree(),
                });
            }
        }
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        seen.insert(Permutation::identity(n));
        let mut frontier: Vec<Permutation> = vec![Permutation::identity(n)];
        while let Some(cur) = frontier.pop() {
            for g in generators {
                let next = g.compose(&cur)?;
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(Error::GroupCapExceeded { cap });
                    }
                    frontier.push(next);
                }
            }
        }
        Ok(PermGroup {
            n,
            elements: seen.into_iter().collect(),
        })
    }

    /// All `n!` permutations, in lexicographic image order.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be >= 1".into()));
        }
        if n > MAX_SYMMETRIC_DEGREE {
            return Err(Error::DegreeTooLarge {
                n,
                max: MAX_SYMMETRIC_DEGREE,
            });
        }
        let mut elements = Vec::new();
        let mut images: Vec<usize> = (0..n).collect();
        loop {
            elements.push(Permutation {
                images: images.clone(),
            });
            if !next_permutation(&mut images) {
                break;
            }
        }
        Ok(PermGroup { n, elements })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in their canonical (lexicographic) order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.n && self.elements.binary_search(p).is_ok()
    }

    pub fn is_full_symmetric(&self) -> bool {
        self.order() == (1..=self.n).product::<usize>()
    }
}

fn next_permutation(xs: &mut [usize]) -> bool {
    let n = xs.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize, cycles: &str) -> Permutation {
        Permutation::parse_cycles(cycles, n).unwrap()
    }

    #[test]
    fn compose_examples() {
        // (1 2) then (2 3): image chasing gives the 3-cycle (1,2,3).
        let sigma = perm(3, "(1,2)");
        let tau = perm(3, "(2,3)");
        let st = sigma.compose(&tau).unwrap();
        // Oracle: chase each point by hand through tau then sigma.
        for j in 0..3 {
            assert_eq!(st.apply(j), sigma.apply(tau.apply(j)));
        }
        assert_eq!(st, perm(3, "(1,2,3)"));

        let id = Permutation::identity(3);
        assert_eq!(sigma.compose(&id).unwrap(), sigma);
        assert!(sigma.compose(&sigma.inverse()).unwrap().is_identity());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(perm(3, "(1,2,3)").inverse(), perm(3, "(1,3,2)"));
        assert!(Permutation::identity(4).inverse().is_identity());
        let t = perm(5, "(2,4)");
        assert_eq!(t.inverse(), t);
    }

    #[test]
    fn action_examples() {
        let sigma = perm(3, "(1,2,3)");
        let x = RVector::from_ints(&[10, 20, 30]);
        // sigma x = (x3, x1, x2)
        assert_eq!(sigma.act(&x).unwrap(), RVector::from_ints(&[30, 10, 20]));
        assert_eq!(Permutation::identity(3).act(&x).unwrap(), x);
    }

    #[test]
    fn transposition_action_swaps_exactly_two() {
        let t = perm(4, "(2,4)");
        let x = RVector::from_ints(&[5, 6, 7, 8]);
        assert_eq!(t.act(&x).unwrap(), RVector::from_ints(&[5, 8, 7, 6]));
    }

    #[test]
    fn generate_examples() {
        let c3 = PermGroup::generate(3, &[perm(3, "(1,2,3)")], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(c3.contains(&perm(3, "(1,3,2)")));
        assert!(c3.contains(&Permutation::identity(3)));

        let g = PermGroup::generate(4, &[perm(4, "(1,2)")], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 2);

        let s3 = PermGroup::generate(3, &[perm(3, "(1,2)"), perm(3, "(1,2,3)")], 100).unwrap();
        assert_eq!(s3.order(), 6);
        // Oracle: must equal the direct enumeration.
        assert_eq!(s3, PermGroup::symmetric(3).unwrap());
    }

    #[test]
    fn generate_respects_cap() {
        let err = PermGroup::generate(4, &[perm(4, "(1,2)"), perm(4, "(1,2,3,4)")], 10);
        assert_eq!(err.unwrap_err(), Error::GroupCapExceeded { cap: 10 });
    }

    #[test]
    fn symmetric_group_sizes() {
        assert_eq!(PermGroup::symmetric(1).unwrap().order(), 1);
        assert_eq!(PermGroup::symmetric(2).unwrap().order(), 2);
        assert_eq!(PermGroup::symmetric(4).unwrap().order(), 24);
        assert!(PermGroup::symmetric(9).is_err());
    }

    #[test]
    fn cycle_string_round_trip() {
        for s in ["e", "(1,2)", "(1,2,3)(4,5)", "(2,5)(3,4)"] {
            let p = perm(5, s);
            assert_eq!(p.cycle_string(), s);
            assert_eq!(Permutation::parse_cycles(&p.cycle_string(), 5).unwrap(), p);
        }
    }

    #[test]
    fn cycle_parse_rejects_bad_input() {
        assert!(Permutation::parse_cycles("(1,2", 3).is_err());
        assert!(Permutation::parse_cycles("(0,1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1,4)", 3).is_err());
        assert!(Permutation::parse_cycles("(1,2)(2,3)", 3).is_err());
        assert!(Permutation::parse_cycles("(1)", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just(n).prop_perturb(move |n, mut rng| {
            let mut images: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = (rng.next_u64() as usize) % (i + 1);
                images.swap(i, j);
            }
            Permutation::from_images(images).unwrap()
        })
    }

    proptest! {
        #[test]
        fn action_is_multiplicative(sigma in arb_perm(5), tau in arb_perm(5), xs in proptest::collection::vec(-9i64..=9, 5)) {
            let x = RVector::from_ints(&xs);
            let lhs = sigma.act(&tau.act(&x).unwrap()).unwrap();
            let rhs = sigma.compose(&tau).unwrap().act(&x).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn action_preserves_multiset(sigma in arb_perm(6), xs in proptest::collection::vec(-9i64..=9, 6)) {
            let x = RVector::from_ints(&xs);
            let y = sigma.act(&x).unwrap();
            let mut a = x.coords().to_vec();
            let mut b = y.coords().to_vec();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn generated_groups_are_closed_and_lagrange(g1 in arb_perm(4), g2 in arb_perm(4)) {
            let group = PermGroup::generate(4, &[g1, g2], DEFAULT_GROUP_CAP).unwrap();
            for a in group.elements() {
                prop_assert!(group.contains(&a.inverse()));
                for b in group.elements() {
                    prop_assert!(group.contains(&a.compose(b).unwrap()));
                }
            }
            prop_assert_eq!(24 % group.order(), 0);
        }
    }
}
