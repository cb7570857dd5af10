//! Shared helpers for the integration suites: a deterministic RNG and
//! random-instance generators. Everything is seeded, so failures are
//! reproducible.

use majorize::{rat, rat_int, PermGroup, Permutation, RVector, Rat, Relation};

/// splitmix64: tiny, deterministic, good enough for test instances.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    /// Uniform in `lo..=hi`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.below((hi - lo + 1) as u64) as i64)
    }

    /// Positive rational with numerator and denominator up to the caps.
    pub fn positive_rat(&mut self, max_num: i64, max_den: i64) -> Rat {
        rat(self.int(1, max_num), self.int(1, max_den))
    }
}

/// Random nonnegative integer vector sorted non-increasing.
pub fn decreasing_ints(rng: &mut Rng, n: usize, max: i64) -> Vec<i64> {
    let mut xs: Vec<i64> = (0..n).map(|_| rng.int(0, max)).collect();
    xs.sort_by(|a, b| b.cmp(a));
    xs
}

/// A strictly majorized integer pair `(a, b)` with `b ≺ a`, built by
/// Robin Hood transfers from `a`.
pub fn strict_int_pair(rng: &mut Rng, n: usize, max: i64) -> (RVector, RVector) {
    loop {
        let mut a = decreasing_ints(rng, n, max);
        if a.iter().all(|&v| v == a[0]) {
            a[0] += 2; // constants majorize nothing strictly
            a.sort_by(|x, y| y.cmp(x));
        }
        let a = RVector::from_ints(&a);
        let mut b: Vec<i64> = a
            .decreasing_rearrangement()
            .iter()
            .map(|c| c.to_integer().try_into().unwrap())
            .collect();
        for _ in 0..1 + rng.below(3) {
            let j = rng.below(n as u64) as usize;
            let k = rng.below(n as u64) as usize;
            let (j, k) = (j.min(k), j.max(k));
            if j == k || b[j] - b[k] < 2 {
                continue;
            }
            let amount = rng.int(1, (b[j] - b[k]) / 2);
            b[j] -= amount;
            b[k] += amount;
        }
        b.sort_by(|x, y| y.cmp(x));
        let b = RVector::from_ints(&b);
        if a.majorizes(&b).unwrap().relation == Relation::StrictMajor {
            return (a, b);
        }
    }
}

/// An equal-total nonnegative integer pair whose verdict is
/// `Incomparable`.
pub fn incomparable_int_pair(rng: &mut Rng, n: usize, max: i64) -> (RVector, RVector) {
    loop {
        let a = decreasing_ints(rng, n, max);
        let total: i64 = a.iter().sum();
        // Random composition of the same total.
        let mut b: Vec<i64> = Vec::with_capacity(n);
        let mut left = total;
        for i in 0..n {
            let v = if i + 1 == n { left } else { rng.int(0, left) };
            b.push(v);
            left -= v;
        }
        let a = RVector::from_ints(&a);
        let b = RVector::from_ints(&b);
        if a.majorizes(&b).unwrap().relation == Relation::Incomparable {
            return (a, b);
        }
    }
}

/// Strictly positive rational vector, guaranteed nonconstant for n >= 2.
pub fn nonconstant_positive_x(rng: &mut Rng, n: usize) -> RVector {
    loop {
        let coords: Vec<Rat> = (0..n).map(|_| rng.positive_rat(9, 4)).collect();
        let v = RVector::new(coords).unwrap();
        if n == 1 || !v.is_constant() {
            return v;
        }
    }
}

/// Nonnegative rational vector (coordinates may be zero).
pub fn nonneg_rational_vec(rng: &mut Rng, n: usize) -> RVector {
    let coords: Vec<Rat> = (0..n)
        .map(|_| {
            if rng.below(5) == 0 {
                rat_int(0)
            } else {
                rat(rng.int(0, 12), rng.int(1, 4))
            }
        })
        .collect();
    RVector::new(coords).unwrap()
}

pub fn random_permutation(rng: &mut Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below((i + 1) as u64) as usize;
        images.swap(i, j);
    }
    Permutation::from_images(images).unwrap()
}

/// Subgroup generated by one or two random permutations.
pub fn random_subgroup(rng: &mut Rng, n: usize) -> PermGroup {
    let count = 1 + rng.below(2) as usize;
    let generators: Vec<Permutation> = (0..count).map(|_| random_permutation(rng, n)).collect();
    PermGroup::generate(n, &generators, 50_000).unwrap()
}

/// x^r (x-y)(x-z) + y^r (y-x)(y-z) + z^r (z-x)(z-y), exactly.
pub fn schur_expression(x: &Rat, y: &Rat, z: &Rat, r: i64) -> Rat {
    let pow = |base: &Rat, e: i64| majorize::rat::pow_rat(base, e).unwrap();
    pow(x, r) * (x - y) * (x - z) + pow(y, r) * (y - x) * (y - z) + pow(z, r) * (z - x) * (z - y)
}
