//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the checked statistics. Random instances are seeded,
//! so every run exercises the same cases.

mod support;

use std::cmp::Ordering;
use std::time::Instant;

use rayon::prelude::*;

use majorize::{
    arithmetic_exponents, birkhoff_decompose, build_chain, build_rado_witness,
    check_prefix_products, compare_means, geometric_exponents, hlp_matrix, membership,
    membership_via_majorization, rat, rat_int, sum_dominance, symmetric_mean, ExponentVector,
    MeanMode, MembershipOutcome, MultiplicativePair, PermGroup, RVector, Rat, Relation,
};
use num_traits::{One, Signed, ToPrimitive, Zero};
use support::*;

fn exact_mean(x: &RVector, a: &ExponentVector, g: &PermGroup) -> Rat {
    symmetric_mean(x, a, g, MeanMode::Exact)
        .unwrap()
        .as_rat()
        .unwrap()
        .clone()
}

/// Criterion 1: the two-variable ladder of means at x = (2, 1).
/// Exponent pairs (5,5) .. (10,0) give means 32, 40, 68, 130, 257,
/// 1025/2 and unnormalized sums 64 < 80 < 136 < 260 < 514 < 1025.
#[test]
fn criterion_01_two_variable_ladder() {
    let started = Instant::now();
    let s2 = PermGroup::symmetric(2).unwrap();
    let x = RVector::from_ints(&[2, 1]);
    let ladder: [(i64, i64); 6] = [(5, 5), (6, 4), (7, 3), (8, 2), (9, 1), (10, 0)];
    let expected_means = [
        rat_int(32),
        rat_int(40),
        rat_int(68),
        rat_int(130),
        rat_int(257),
        rat(1025, 2),
    ];
    let expected_sums = [64, 80, 136, 260, 514, 1025].map(rat_int);

    let mut means = Vec::new();
    for (i, (hi, lo)) in ladder.iter().enumerate() {
        let a = ExponentVector::from_ints(&[*hi, *lo]).unwrap();
        let mean = exact_mean(&x, &a, &s2);
        assert_eq!(mean, expected_means[i], "mean of pair {ladder:?}[{i}]");
        let unnormalized = &mean * rat_int(2);
        assert_eq!(unnormalized, expected_sums[i]);
        means.push(mean);
    }
    for w in means.windows(2) {
        assert!(w[0] < w[1], "ladder must be strictly increasing");
    }
    // Each consecutive pair is also an exact `less` under mean compare.
    for w in ladder.windows(2) {
        let b = ExponentVector::from_ints(&[w[0].0, w[0].1]).unwrap();
        let a = ExponentVector::from_ints(&[w[1].0, w[1].1]).unwrap();
        let cmp = compare_means(&x, &a, &b, &s2, MeanMode::Exact).unwrap();
        assert_eq!(cmp.order, Ordering::Less);
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("criterion 01 PASS: ladder 64 < 80 < 136 < 260 < 514 < 1025 exact in {elapsed:?}");
}

/// Criterion 2: 500 strict pairs (n in 2..=5, exponents <= 12) times 20
/// nonconstant positive x each; [x^b] < [x^a] exactly in every trial.
#[test]
fn criterion_02_forward_inequality() {
    let started = Instant::now();
    let mut rng = Rng::new(0x02);
    let instances: Vec<(RVector, RVector, Vec<RVector>)> = (0..500)
        .map(|_| {
            let n = 2 + rng.below(4) as usize;
            let (a, b) = strict_int_pair(&mut rng, n, 12);
            let xs = (0..20)
                .map(|_| nonconstant_positive_x(&mut rng, n))
                .collect();
            (a, b, xs)
        })
        .collect();

    let trials: usize = instances
        .par_iter()
        .map(|(a, b, xs)| {
            let n = a.len();
            let group = PermGroup::symmetric(n).unwrap();
            let ea = ExponentVector::new(a.clone()).unwrap();
            let eb = ExponentVector::new(b.clone()).unwrap();
            for x in xs {
                let cmp = compare_means(x, &ea, &eb, &group, MeanMode::Exact).unwrap();
                assert_eq!(
                    cmp.order,
                    Ordering::Less,
                    "strict pair a={a:?} b={b:?} failed at x={x:?}"
                );
            }
            xs.len()
        })
        .sum();

    let elapsed = started.elapsed();
    assert_eq!(trials, 10_000);
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "took {elapsed:?}, budget 120 s"
    );
    println!("criterion 02 PASS: 500 pairs x 20 points strict in {elapsed:?}");
}

/// Criterion 3: 200 incomparable pairs; the separation witness reverses
/// the inequality exactly every time.
#[test]
fn criterion_03_converse_witnesses() {
    let mut rng = Rng::new(0x03);
    let instances: Vec<(RVector, RVector)> = (0..200)
        .map(|_| {
            let n = 2 + rng.below(4) as usize;
            incomparable_int_pair(&mut rng, n, 12)
        })
        .collect();

    instances.par_iter().for_each(|(a, b)| {
        let group = PermGroup::symmetric(a.len()).unwrap();
        let outcome = membership(b, a, &group).unwrap();
        let MembershipOutcome::Separated(cert) = outcome else {
            panic!("incomparable pair must be separated: a={a:?} b={b:?}");
        };
        let ea = ExponentVector::new(a.clone()).unwrap();
        let eb = ExponentVector::new(b.clone()).unwrap();
        let witness = build_rado_witness(&cert, &ea, &eb, &group).unwrap();
        let lhs = witness
            .lhs
            .as_rat()
            .expect("integral exponents, exact mode");
        let rhs = witness
            .rhs
            .as_rat()
            .expect("integral exponents, exact mode");
        assert!(lhs > rhs, "witness did not reverse at a={a:?} b={b:?}");
    });
    println!("criterion 03 PASS: 200 separation witnesses reverse the inequality exactly");
}

/// Criterion 4: 300 strict pairs; every chain has Hamming distance 2
/// per step, stepwise strict majorization, correct endpoints, length
/// <= n - 1. (`validate` re-checks each property; key ones asserted
/// directly as well.)
#[test]
fn criterion_04_chain_validity() {
    let mut rng = Rng::new(0x04);
    for _ in 0..300 {
        let n = 2 + rng.below(4) as usize;
        let (a, b) = strict_int_pair(&mut rng, n, 14);
        let chain = build_chain(&a, &b).unwrap();
        chain.validate(&a, &b).unwrap();
        assert!(chain.len() < n);
        assert_eq!(chain.vectors[0], a.decreasing_rearrangement());
        assert_eq!(chain.vectors[chain.len()], b.decreasing_rearrangement());
        for w in chain.vectors.windows(2) {
            assert_eq!(w[0].hamming_distance(&w[1]).unwrap(), 2);
            assert_eq!(
                w[0].majorizes(&w[1]).unwrap().relation,
                Relation::StrictMajor
            );
        }
    }
    println!("criterion 04 PASS: 300 chains valid (distance 2, strict, length <= n-1)");
}

/// Criterion 5: 200 majorized pairs; b = S a exactly, weights sum to
/// one, the decomposition reconstructs S entrywise, term count within
/// (n-1)^2 + 1.
#[test]
fn criterion_05_matrix_synthesis_exactness() {
    let mut rng = Rng::new(0x05);
    for round in 0..200 {
        let n = 2 + rng.below(4) as usize;
        let (a, b) = if round % 10 == 0 {
            // Include the permutation-matrix case.
            let a = nonneg_rational_vec(&mut rng, n);
            let shuffled = random_permutation(&mut rng, n).act(&a).unwrap();
            (a, shuffled)
        } else {
            strict_int_pair(&mut rng, n, 12)
        };
        let s = hlp_matrix(&a, &b).unwrap();
        assert_eq!(s.apply(&a).unwrap(), b, "S a must equal b exactly");
        let decomposition = birkhoff_decompose(&s).unwrap();
        assert!(decomposition.weight_sum().is_one());
        assert_eq!(&decomposition.reconstruct().unwrap(), s.matrix());
        assert!(decomposition.terms().len() <= (n - 1) * (n - 1) + 1);
    }
    println!("criterion 05 PASS: 200 syntheses exact, Birkhoff bound respected");
}

/// Criterion 6: 300 nonnegative pairs; LP membership for the full
/// symmetric group agrees with the majorization predicate.
#[test]
fn criterion_06_membership_equivalence() {
    let mut rng = Rng::new(0x06);
    let mut members = 0usize;
    for round in 0..300 {
        let n = 2 + rng.below(4) as usize;
        let group = PermGroup::symmetric(n).unwrap();
        let (a, b) = match round % 3 {
            0 => {
                let (a, b) = strict_int_pair(&mut rng, n, 9);
                (a, b)
            }
            1 => (
                nonneg_rational_vec(&mut rng, n),
                nonneg_rational_vec(&mut rng, n),
            ),
            _ => incomparable_int_pair(&mut rng, n, 9),
        };
        let lp = membership(&b, &a, &group).unwrap().is_member();
        let predicate = membership_via_majorization(&b, &a).unwrap();
        assert_eq!(lp, predicate, "disagreement at a={a:?} b={b:?}");
        members += lp as usize;
    }
    assert!(members > 0, "generator should produce some members");
    println!("criterion 06 PASS: 300 pairs, LP == majorization ({members} members)");
}

/// Criterion 7: 100 random subgroup instances with certified
/// membership; 50 positive points each never reverse the inequality.
#[test]
fn criterion_07_subgroup_soundness() {
    let mut rng = Rng::new(0x07);
    let mut instances = Vec::new();
    while instances.len() < 100 {
        let n = 2 + rng.below(4) as usize;
        let group = random_subgroup(&mut rng, n);
        let base = decreasing_ints(&mut rng, n, 6);
        // Convex weights m_i / d over up to three orbit points; scaling
        // a by d keeps the mixture integral.
        let picks = 1 + rng.below(3) as usize;
        let masses: Vec<i64> = (0..picks).map(|_| rng.int(1, 4)).collect();
        let d: i64 = masses.iter().sum();
        let a = RVector::from_ints(&base.iter().map(|v| v * d).collect::<Vec<_>>());
        let mut mix = vec![rat_int(0); n];
        for &m in &masses {
            let gamma = &group.elements()[rng.below(group.order() as u64) as usize];
            let point = gamma.act(&RVector::from_ints(&base)).unwrap();
            for (acc, c) in mix.iter_mut().zip(point.iter()) {
                *acc += c * rat_int(m);
            }
        }
        let b = RVector::new(mix).unwrap();
        assert!(b.iter().all(|c| c.is_integer()));
        let xs: Vec<RVector> = (0..50)
            .map(|_| nonconstant_positive_x(&mut rng, n))
            .collect();
        instances.push((group, a, b, xs));
    }

    instances.par_iter().for_each(|(group, a, b, xs)| {
        // Certify membership first; the witness direction is then
        // forbidden for every positive point.
        let outcome = membership(b, a, group).unwrap();
        assert!(outcome.is_member(), "construction must be a member");
        let ea = ExponentVector::new(a.clone()).unwrap();
        let eb = ExponentVector::new(b.clone()).unwrap();
        for x in xs {
            let lhs = exact_mean(x, &eb, group);
            let rhs = exact_mean(x, &ea, group);
            assert!(
                lhs <= rhs,
                "member b={b:?} of K_G(a={a:?}) reversed at x={x:?}"
            );
        }
    });
    println!("criterion 07 PASS: 100 membership instances x 50 points, zero reversals");
}

/// Criterion 8: arithmetic-mean exponents reproduce the arithmetic mean
/// exactly; geometric-mean exponents match (prod x)^(1/n) within 1e-12
/// relative in float mode.
#[test]
fn criterion_08_classical_special_cases() {
    let mut rng = Rng::new(0x08);
    for _ in 0..100 {
        let n = 2 + rng.below(4) as usize;
        let group = PermGroup::symmetric(n).unwrap();
        let x = nonconstant_positive_x(&mut rng, n);

        let e1 = arithmetic_exponents(n).unwrap();
        let am = exact_mean(&x, &e1, &group);
        assert_eq!(am, x.sum() / rat_int(n as i64));

        let jn = geometric_exponents(n).unwrap();
        let gm = symmetric_mean(&x, &jn, &group, MeanMode::Float)
            .unwrap()
            .to_f64();
        let product: f64 = x.iter().map(|c| c.to_f64().unwrap()).product();
        let expected = product.powf(1.0 / n as f64);
        assert!(
            (gm - expected).abs() <= 1e-12 * expected.abs(),
            "geometric mean {gm} vs {expected}"
        );
    }
    println!("criterion 08 PASS: 100 arithmetic means exact, geometric within 1e-12");
}

/// Criterion 9: 200 valid multiplicative pairs; the sum inequality is
/// strict and the augmented products agree exactly.
#[test]
fn criterion_09_multiplicative_dominance() {
    let mut rng = Rng::new(0x09);
    let mut produced = 0;
    while produced < 200 {
        let n = 2 + rng.below(4) as usize;
        // v decreasing positive; u = v * w with w decreasing, all >= 1
        // and the leading factor > 1, so prefix dominance holds by
        // construction.
        let mut v: Vec<Rat> = Vec::with_capacity(n);
        let mut cur = rng.positive_rat(9, 3) + rat_int(1);
        for _ in 0..n {
            v.push(cur.clone());
            cur *= rat(rng.int(1, 4), 4);
        }
        let mut w: Vec<Rat> = Vec::with_capacity(n);
        let mut wf = rat_int(1) + rat(rng.int(1, 6), 4);
        for _ in 0..n {
            w.push(wf.clone());
            if rng.below(2) == 0 {
                wf *= rat(3, 4);
            }
            if wf < rat_int(1) {
                wf = rat_int(1);
            }
        }
        let u: Vec<Rat> = v.iter().zip(&w).map(|(x, f)| x * f).collect();
        if u == v {
            continue;
        }
        let check = check_prefix_products(&u, &v).unwrap();
        assert!(check.ok, "constructed pair must satisfy the hypothesis");
        let pair = MultiplicativePair::new(u.clone(), v.clone()).unwrap();
        let dom = sum_dominance(&pair).unwrap();
        assert!(
            dom.sum_v < dom.sum_u,
            "strict sum failed for u={u:?} v={v:?}"
        );
        // Augmented product identity, checked independently.
        let prod = |s: &[Rat]| s.iter().fold(rat_int(1), |acc, x| acc * x);
        assert_eq!(
            prod(&u) * &dom.augmentation.u_next,
            prod(&v) * &dom.augmentation.v_next
        );
        produced += 1;
    }
    println!("criterion 09 PASS: 200 pairs, strict sums and exact product identity");
}

/// Criterion 10: the three-variable symmetric expression
/// x^r (x-y)(x-z) + y^r (y-x)(y-z) + z^r (z-x)(z-y) is nonnegative for
/// x >= y >= z >= 0, r in 1..=4, exactly.
#[test]
fn criterion_10_schur_fixture() {
    let mut rng = Rng::new(0x0a);
    for _ in 0..200 {
        let mut coords: Vec<Rat> = (0..3)
            .map(|_| {
                if rng.below(6) == 0 {
                    Rat::zero()
                } else {
                    rng.positive_rat(12, 4)
                }
            })
            .collect();
        coords.sort_by(|a, b| b.cmp(a));
        let r = rng.int(1, 4);
        let value = schur_expression(&coords[0], &coords[1], &coords[2], r);
        assert!(
            !value.is_negative(),
            "negative at x={coords:?} r={r}: {value}"
        );
    }
    println!("criterion 10 PASS: 200 nonnegative evaluations, r in 1..=4");
}
