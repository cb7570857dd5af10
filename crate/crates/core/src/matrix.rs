//! Exact square matrices, doubly stochastic matrices, and their
//! decomposition into convex combinations of permutation matrices.
//!
//! The decomposition repeatedly extracts the lexicographically smallest
//! perfect matching from the positive-support bipartite graph and
//! subtracts the minimal matched entry. Should the greedy pass ever use
//! more than `(n-1)^2 + 1` terms, an exact affine-dependence elimination
//! trims the list down to that bound.

// Index loops here mirror the matrix algebra; iterator rewrites obscure
// the row/column roles.
#![allow(clippy::needless_range_loop)]

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rat::Rat;
use crate::vector::RVector;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<Vec<Rat>>,
}

impl SquareMatrix {
    pub fn from_rows(entries: Vec<Vec<Rat>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("matrix must be square, n >= 1".into()));
        }
        Ok(SquareMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![vec![Rat::zero(); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Rat::one();
        }
        SquareMatrix { n, entries }
    }

    /// The matrix of `sigma`: entry `(i, j)` is 1 exactly when
    /// `i = sigma(j)`.
    pub fn permutation(sigma: &Permutation) -> Self {
        let n = sigma.degree();
        let mut entries = vec![vec![Rat::zero(); n]; n];
        for j in 0..n {
            entries[sigma.apply(j)][j] = Rat::one();
        }
        SquareMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut entries = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                let lhs = &self.entries[i][k];
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let rhs = &other.entries[k][j];
                    if !rhs.is_zero() {
                        entries[i][j] += lhs * rhs;
                    }
                }
            }
        }
        Ok(SquareMatrix { n, entries })
    }

    pub fn mul_vec(&self, x: &RVector) -> Result<RVector> {
        if self.n != x.len() {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: x.len(),
            });
        }
        let coords = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x.iter())
                    .fold(Rat::zero(), |acc, (m, v)| acc + m * v)
            })
            .collect();
        RVector::new(coords)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Rat::is_zero)
    }
}

/// A nonnegative square matrix whose rows and columns all sum to one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoublyStochastic {
    matrix: SquareMatrix,
}

impl DoublyStochastic {
    pub fn new(matrix: SquareMatrix) -> Result<Self> {
        let n = matrix.size();
        for (i, row) in matrix.rows().iter().enumerate() {
            if row.iter().any(Rat::is_negative) {
                return Err(Error::NotDoublyStochastic(format!(
                    "negative entry in row {}",
                    i + 1
                )));
            }
            let sum = row.iter().fold(Rat::zero(), |acc, e| acc + e);
            if !sum.is_one() {
                return Err(Error::NotDoublyStochastic(format!(
                    "row {} sums to {sum}",
                    i + 1
                )));
            }
        }
        for j in 0..n {
            let sum = (0..n).fold(Rat::zero(), |acc, i| acc + matrix.get(i, j));
            if !sum.is_one() {
                return Err(Error::NotDoublyStochastic(format!(
                    "column {} sums to {sum}",
                    j + 1
                )));
            }
        }
        Ok(DoublyStochastic { matrix })
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &RVector) -> Result<RVector> {
        self.matrix.mul_vec(x)
    }
}

/// A convex combination of permutation matrices reconstructing a doubly
/// stochastic matrix exactly. Terms appear in extraction order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BirkhoffDecomposition {
    terms: Vec<(Rat, Permutation)>,
}

impl BirkhoffDecomposition {
    pub fn from_terms(terms: Vec<(Rat, Permutation)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("decomposition needs >= 1 term".into()));
        }
        let n = terms[0].1.degree();
        for (w, sigma) in &terms {
            if sigma.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: sigma.degree(),
                });
            }
            if w.is_negative() || w > &Rat::one() {
                return Err(Error::InvalidInput(format!("weight {w} outside [0,1]")));
            }
        }
        Ok(BirkhoffDecomposition { terms })
    }

    pub fn terms(&self) -> &[(Rat, Permutation)] {
        &self.terms
    }

    pub fn weight_sum(&self) -> Rat {
        self.terms.iter().fold(Rat::zero(), |acc, (w, _)| acc + w)
    }

    pub fn reconstruct(&self) -> Result<SquareMatrix> {
        let n = self.terms[0].1.degree();
        let mut entries = vec![vec![Rat::zero(); n]; n];
        for (w, sigma) in &self.terms {
            for j in 0..n {
                entries[sigma.apply(j)][j] += w;
            }
        }
        SquareMatrix::from_rows(entries)
    }

    /// Checks every stated invariant against `target`: weights sum to
    /// one, reconstruction matches entrywise, term count within the
    /// Carathéodory bound.
    pub fn verify(&self, target: &DoublyStochastic) -> Result<()> {
        let n = target.size();
        if !self.weight_sum().is_one() {
            return Err(Error::CertificateInvalid(format!(
                "weights sum to {}",
                self.weight_sum()
            )));
        }
        if self.reconstruct()? != *target.matrix() {
            return Err(Error::CertificateInvalid(
                "reconstruction differs from target".into(),
            ));
        }
        let bound = (n - 1) * (n - 1) + 1;
        if self.terms.len() > bound {
            return Err(Error::CertificateInvalid(format!(
                "{} terms exceeds bound {bound}",
                self.terms.len()
            )));
        }
        Ok(())
    }
}

/// Greedy Birkhoff–von Neumann extraction with an exact reduction pass
/// guaranteeing at most `(n-1)^2 + 1` terms.
pub fn birkhoff_decompose(s: &DoublyStochastic) -> Result<BirkhoffDecomposition> {
    let n = s.size();
    let mut rem: Vec<Vec<Rat>> = s.matrix().rows().to_vec();
    let mut terms: Vec<(Rat, Permutation)> = Vec::new();
    loop {
        if rem.iter().flatten().all(Rat::is_zero) {
            break;
        }
        let support: Vec<Vec<bool>> = rem
            .iter()
            .map(|row| row.iter().map(|e| !e.is_zero()).collect())
            .collect();
        let matching = lex_smallest_perfect_matching(&support).ok_or_else(|| {
            Error::internal("doubly stochastic support lost its perfect matching")
        })?;
        let sigma = Permutation::from_images(matching)?;
        let weight = (0..n)
            .map(|j| rem[sigma.apply(j)][j].clone())
            .min()
            .expect("n >= 1");
        if !weight.is_positive() {
            return Err(Error::internal("nonpositive extraction weight"));
        }
        for j in 0..n {
            let i = sigma.apply(j);
            rem[i][j] -= &weight;
        }
        terms.push((weight, sigma));
    }
    let bound = (n - 1) * (n - 1) + 1;
    if terms.len() > bound {
        terms = reduce_affine_dependence(terms, n, bound)?;
    }
    let decomposition = BirkhoffDecomposition::from_terms(terms)?;
    decomposition.verify(s)?;
    Ok(decomposition)
}

/// Lexicographically smallest perfect matching in a bipartite support
/// graph, returned as images `sigma(j) = matched row of column j`.
fn lex_smallest_perfect_matching(support: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = support.len();
    let mut images = vec![usize::MAX; n];
    let mut used_rows = vec![false; n];
    for col in 0..n {
        let mut chosen = None;
        for row in 0..n {
            if used_rows[row] || !support[row][col] {
                continue;
            }
            used_rows[row] = true;
            if can_match_remaining(support, col + 1, &used_rows) {
                chosen = Some(row);
                break;
            }
            used_rows[row] = false;
        }
        let row = chosen?;
        images[col] = row;
    }
    // images[j] is the row matched to column j, i.e. sigma(j).
    Some(images)
}

/// Can columns `from..n` all be matched to unused rows? Standard
/// augmenting-path matching.
fn can_match_remaining(support: &[Vec<bool>], from: usize, used_rows: &[bool]) -> bool {
    let n = support.len();
    let mut row_owner = vec![usize::MAX; n];
    for col in from..n {
        let mut seen = vec![false; n];
        if !augment(support, col, used_rows, &mut row_owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(
    support: &[Vec<bool>],
    col: usize,
    used_rows: &[bool],
    row_owner: &mut [usize],
    seen: &mut [bool],
) -> bool {
    for row in 0..support.len() {
        if used_rows[row] || !support[row][col] || seen[row] {
            continue;
        }
        seen[row] = true;
        if row_owner[row] == usize::MAX
            || augment(support, row_owner[row], used_rows, row_owner, seen)
        {
            row_owner[row] = col;
            return true;
        }
    }
    false
}

/// Removes terms while the list is affinely dependent, preserving the
/// weighted sum and nonnegativity exactly. Any list longer than
/// `(n-1)^2 + 1` terms is affinely dependent, so the loop always reaches
/// the bound.
fn reduce_affine_dependence(
    mut terms: Vec<(Rat, Permutation)>,
    n: usize,
    bound: usize,
) -> Result<Vec<(Rat, Permutation)>> {
    while terms.len() > bound {
        let lambda = affine_dependence(&terms, n)
            .ok_or_else(|| Error::internal("expected affine dependence among terms"))?;
        let lambda: Vec<Rat> = if lambda.iter().any(Rat::is_positive) {
            lambda
        } else {
            lambda.into_iter().map(|l| -l).collect()
        };
        let theta = terms
            .iter()
            .zip(&lambda)
            .filter(|(_, l)| l.is_positive())
            .map(|((w, _), l)| w / l)
            .min()
            .ok_or_else(|| Error::internal("dependence without positive part"))?;
        let mut next = Vec::with_capacity(terms.len() - 1);
        for ((w, sigma), l) in terms.into_iter().zip(&lambda) {
            let w = w - &theta * l;
            if w.is_negative() {
                return Err(Error::internal("reduction produced a negative weight"));
            }
            if !w.is_zero() {
                next.push((w, sigma));
            }
        }
        terms = next;
    }
    Ok(terms)
}

/// A nonzero vector `lambda` with `sum lambda_i vec(P_i) = 0` and
/// `sum lambda_i = 0`, if one exists. Exact Gaussian elimination on the
/// (n^2 + 1) x m system.
fn affine_dependence(terms: &[(Rat, Permutation)], n: usize) -> Option<Vec<Rat>> {
    let m = terms.len();
    let rows = n * n + 1;
    let mut a = vec![vec![Rat::zero(); m]; rows];
    for (idx, (_, sigma)) in terms.iter().enumerate() {
        for j in 0..n {
            a[sigma.apply(j) * n + j][idx] = Rat::one();
        }
        a[rows - 1][idx] = Rat::one();
    }
    // Row echelon with column pivots in order.
    let mut pivot_in_col = vec![usize::MAX; m];
    let mut next_row = 0;
    for col in 0..m {
        let pivot = (next_row..rows).find(|&r| !a[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        a.swap(next_row, pivot);
        let inv = a[next_row][col].recip();
        for cell in a[next_row].iter_mut() {
            *cell *= &inv;
        }
        for r in 0..rows {
            if r != next_row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..m {
                    let delta = &factor * &a[next_row][c];
                    a[r][c] -= delta;
                }
            }
        }
        pivot_in_col[col] = next_row;
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    let free_col = (0..m).find(|&c| pivot_in_col[c] == usize::MAX)?;
    let mut lambda = vec![Rat::zero(); m];
    lambda[free_col] = Rat::one();
    for col in 0..m {
        let r = pivot_in_col[col];
        if r != usize::MAX {
            lambda[col] = -a[r][free_col].clone();
        }
    }
    Some(lambda)
}
