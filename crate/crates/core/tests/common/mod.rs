#![allow(dead_code)]

use std::collections::BTreeSet;

use hamloc::algebra::rational::{int, Rational};
use hamloc::spaces::{build_projective, disjoint_union, product, reverse, HamiltonianSpaceData};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Named {
    pub label: String,
    pub space: HamiltonianSpaceData,
}

fn named(label: impl Into<String>, space: HamiltonianSpaceData) -> Named {
    Named {
        label: label.into(),
        space,
    }
}

pub fn standard_projective(d: usize, level: i64) -> HamiltonianSpaceData {
    let w: Vec<i64> = (0..=d as i64).collect();
    build_projective(&w, &int(level)).unwrap()
}

/// `count` weight vectors of `d + 1` distinct entries drawn from `[lo, hi]`.
pub fn random_weight_vectors(
    rng: &mut ChaCha8Rng,
    d: usize,
    count: usize,
    lo: i64,
    hi: i64,
) -> Vec<Vec<i64>> {
    let pool: Vec<i64> = (lo..=hi).collect();
    (0..count)
        .map(|_| pool.choose_multiple(rng, d + 1).copied().collect())
        .collect()
}

/// Projective spaces with random weights, their pairwise products up to
/// total half-dimension 5, and disjoint unions.
pub fn corpus() -> Vec<Named> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0b0);
    let mut out = Vec::new();
    let mut factors = Vec::new();
    for d in 1..=4usize {
        out.push(named(format!("CP{d} standard"), standard_projective(d, 1)));
        factors.push((format!("CP{d} standard"), standard_projective(d, 1)));
        for (i, w) in random_weight_vectors(&mut rng, d, 20, -9, 9)
            .into_iter()
            .enumerate()
        {
            let space = build_projective(&w, &int(1)).unwrap();
            if i < 2 {
                factors.push((format!("CP{d}{w:?}"), space.clone()));
            }
            out.push(named(format!("CP{d}{w:?}"), space));
        }
    }
    for (i, (la, a)) in factors.iter().enumerate() {
        for (lb, b) in &factors[i..] {
            if a.half_dim() + b.half_dim() <= 5 {
                out.push(named(format!("{la} x {lb}"), product(a, b).unwrap()));
            }
        }
    }
    for (la, a) in &factors {
        out.push(named(
            format!("{la} + rev"),
            disjoint_union(a, &reverse(a)).unwrap(),
        ));
    }
    for pair in factors.windows(2) {
        let ((la, a), (lb, b)) = (&pair[0], &pair[1]);
        if a.half_dim() == b.half_dim() {
            out.push(named(format!("{la} + {lb}"), disjoint_union(a, b).unwrap()));
        }
    }
    out
}

/// Randomized integral spaces with half-dimension at most 3 and all weights
/// of absolute value at most 4, built from projective spaces, products,
/// reversals and unions.
pub fn random_small_spaces(count: usize, seed: u64) -> Vec<Named> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let projective = |rng: &mut ChaCha8Rng, d: usize| -> (String, HamiltonianSpaceData) {
        let start = rng.random_range(-3..=3);
        let w: Vec<i64> = random_weight_vectors(rng, d, 1, start, start + 4).remove(0);
        let level = rng.random_range(1..=3);
        (
            format!("CP{d}{w:?}@{level}"),
            build_projective(&w, &int(level)).unwrap(),
        )
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let kind = rng.random_range(0..4);
        let item = match kind {
            0 => {
                let d = rng.random_range(1..=3);
                let (l, s) = projective(&mut rng, d);
                named(l, s)
            }
            1 => {
                let d1 = rng.random_range(1..=2);
                let d2 = rng.random_range(1..=3 - d1);
                let (la, a) = projective(&mut rng, d1);
                let (lb, b) = projective(&mut rng, d2);
                named(format!("{la} x {lb}"), product(&a, &b).unwrap())
            }
            2 => {
                let d = rng.random_range(1..=3);
                let (la, a) = projective(&mut rng, d);
                let (lb, b) = projective(&mut rng, d);
                named(
                    format!("{la} + rev {lb}"),
                    disjoint_union(&a, &reverse(&b)).unwrap(),
                )
            }
            _ => {
                let d = rng.random_range(1..=3);
                let (l, s) = projective(&mut rng, d);
                named(format!("rev {l}"), reverse(&s))
            }
        };
        let bounded = item
            .space
            .fixed_points()
            .iter()
            .all(|p| p.weights.iter().all(|r| r[0].abs() <= 4));
        if bounded {
            out.push(item);
        }
    }
    out
}

/// Distinct moment values of a circle space, ascending.
pub fn critical_values(space: &HamiltonianSpaceData) -> Vec<Rational> {
    space
        .circle_moments()
        .unwrap()
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// One regular level inside each chamber, plus one below and one above.
pub fn chamber_samples(space: &HamiltonianSpaceData) -> Vec<Rational> {
    let cv = critical_values(space);
    let (Some(lo), Some(hi)) = (cv.first(), cv.last()) else {
        return Vec::new();
    };
    let mut out = vec![lo - int(1)];
    out.extend(cv.windows(2).map(|w| (&w[0] + &w[1]) / int(2)));
    out.push(hi + int(1));
    out
}

/// Half-integer levels from just below the lowest to just above the highest
/// integral moment value.
pub fn half_integer_levels(space: &HamiltonianSpaceData) -> Vec<Rational> {
    let cv = critical_values(space);
    let (Some(lo), Some(hi)) = (cv.first(), cv.last()) else {
        return Vec::new();
    };
    let lo = lo.floor().to_integer();
    let hi = hi.ceil().to_integer();
    let mut out = Vec::new();
    let mut n: num_bigint::BigInt = lo - 1;
    while n <= hi {
        out.push(Rational::from_integer(n.clone()) + Rational::new(1.into(), 2.into()));
        n += 1;
    }
    out
}

pub fn ensure<T: PartialEq + std::fmt::Debug>(
    label: &str,
    left: T,
    right: T,
) -> Result<(), String> {
    if left == right {
        Ok(())
    } else {
        Err(format!("{label}: {left:?} != {right:?}"))
    }
}

/// Prints one line per criterion and fails the test on a failure.
pub fn report(id: u32, title: &str, outcome: Result<(), String>) {
    match &outcome {
        Ok(()) => println!("[PASS] criterion {id}: {title}"),
        Err(why) => println!("[FAIL] criterion {id}: {title} -- {why}"),
    }
    if let Err(why) = outcome {
        panic!("criterion {id} failed: {why}");
    }
}
