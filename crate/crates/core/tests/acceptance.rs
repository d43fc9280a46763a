//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run
//! with `cargo test -p hamloc --test acceptance -- --nocapture` to see them.

mod common;

use common::{
    chamber_samples, corpus, critical_values, ensure, half_integer_levels, random_small_spaces,
    report, standard_projective,
};
use hamloc::algebra::rational::{factorial, int, rat, Rational};
use hamloc::algebra::{PiecewisePolynomialMeasure, Polynomial};
use hamloc::dh::{cut_measure, dh_jump, dh_measure};
use hamloc::error::Error;
use hamloc::quantization::{
    certifying_range, character, cut_character, multiplicity, PrequantSpace,
};
use hamloc::reduction::{chamber_decomposition, jk_pairing, reduced_volume};
use hamloc::spaces::{
    build_projective, product, quasi_free_summary, validate_consistency, FixedPointDatum,
    HamiltonianSpaceData, Sign,
};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

const MONTE_CARLO_SAMPLES: usize = 1_000_000;
const MONTE_CARLO_BINS: usize = 10;
const MONTE_CARLO_SUP_TOLERANCE: f64 = 1e-2;
const ASYMPTOTIC_LEVEL: i64 = 50;
const ASYMPTOTIC_RELATIVE_TOLERANCE: f64 = 0.05;

fn poly(cs: &[(i64, i64)]) -> Polynomial {
    Polynomial::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
}

/// Histogram of `Σ a_i x_i` for `x` uniform on the standard simplex: the
/// Fubini–Study measure of `CP^d` pushed forward by the moment map of the
/// circle with weights `a`. Returns the sup-distance between the estimated
/// bin densities and the exact bin averages of `exact`.
fn monte_carlo_sup_error(weights: &[i64], exact: &PiecewisePolynomialMeasure) -> f64 {
    let d = weights.len() - 1;
    let lo = *weights.iter().min().unwrap();
    let hi = *weights.iter().max().unwrap();
    let mass = 1.0 / factorial(d).to_f64().unwrap();
    let width = (hi - lo) as f64 / MONTE_CARLO_BINS as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(1729 + d as u64);
    let mut counts = [0usize; MONTE_CARLO_BINS];
    for _ in 0..MONTE_CARLO_SAMPLES {
        // |z_i|^2 of a complex Gaussian vector are i.i.d. exponentials.
        let e: Vec<f64> = (0..=d).map(|_| Exp1.sample(&mut rng)).collect();
        let total: f64 = e.iter().sum();
        let phi: f64 = e
            .iter()
            .zip(weights)
            .map(|(x, &a)| x * a as f64)
            .sum::<f64>()
            / total;
        let bin = (((phi - lo as f64) / width) as usize).min(MONTE_CARLO_BINS - 1);
        counts[bin] += 1;
    }
    let bin_width = rat(hi - lo, MONTE_CARLO_BINS as i64);
    (0..MONTE_CARLO_BINS)
        .map(|b| {
            let left = int(lo) + &bin_width * int(b as i64);
            let right = &left + &bin_width;
            let avg = (exact.integrate_over(&left, &right) / &bin_width)
                .to_f64()
                .unwrap();
            let estimate = counts[b] as f64 / MONTE_CARLO_SAMPLES as f64 * mass / width;
            (estimate - avg).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn criterion_01_gls_reconstruction() {
    let outcome = (|| {
        let cp1 = build_projective(&[0, 1], &int(1)).unwrap();
        let cp2 = build_projective(&[0, 1, 2], &int(1)).unwrap();
        let unit =
            PiecewisePolynomialMeasure::on_interval(int(0), int(1), poly(&[(1, 1)])).unwrap();
        let tent = PiecewisePolynomialMeasure::new(
            vec![int(0), int(1), int(2)],
            vec![poly(&[(0, 1), (1, 2)]), poly(&[(1, 1), (-1, 2)])],
        )
        .unwrap();
        let mu1 = dh_measure(&cp1).map_err(|e| e.to_string())?;
        let mu2 = dh_measure(&cp2).map_err(|e| e.to_string())?;
        ensure("CP1 measure", &mu1, &unit)?;
        ensure("CP2 measure", &mu2, &tent)?;
        for (w, mu) in [(vec![0, 1], &mu1), (vec![0, 1, 2], &mu2)] {
            let err = monte_carlo_sup_error(&w, mu);
            if err >= MONTE_CARLO_SUP_TOLERANCE {
                return Err(format!("Monte-Carlo sup error {err} for weights {w:?}"));
            }
            println!("    Monte-Carlo sup error for weights {w:?}: {err:.5}");
        }
        Ok(())
    })();
    report(1, "GLS reconstruction of CP1 and CP2 measures", outcome);
}

#[test]
fn criterion_02_consistency_and_compact_support() {
    let outcome = (|| {
        for item in corpus() {
            let space = &item.space;
            let report = validate_consistency(space).map_err(|e| e.to_string())?;
            if !report.sums.iter().all(Zero::is_zero) || report.sums.len() != space.half_dim() {
                return Err(format!("{}: sums {:?}", item.label, report.sums));
            }
            let mu = dh_measure(space).map_err(|e| format!("{}: {e}", item.label))?;
            let cv = critical_values(space);
            if let Some((lo, hi)) = mu.support() {
                if lo < &cv[0] || hi > cv.last().unwrap() {
                    return Err(format!("{}: support [{lo}, {hi}] escapes", item.label));
                }
            }
        }
        Ok(())
    })();
    report(
        2,
        "consistency sums vanish and DH support is compact",
        outcome,
    );
}

#[test]
fn criterion_03_smoothness_and_jumps() {
    let outcome = (|| {
        for item in corpus() {
            let space = &item.space;
            let d = space.half_dim();
            let mu = dh_measure(space).unwrap();
            let moments = space.circle_moments().unwrap();
            for c in critical_values(space) {
                for order in 0..d - 1 {
                    ensure(
                        &format!("{}: C^{} at {c}", item.label, d - 2),
                        mu.derivative_jump(&c, order),
                        Rational::zero(),
                    )?;
                }
                // Coincident fixed points at one level contribute jointly.
                let expected = moments
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| **m == c)
                    .map(|(k, _)| dh_jump(space, k).unwrap())
                    .fold(Rational::zero(), |acc, x| acc + x);
                ensure(
                    &format!("{}: top-derivative jump at {c}", item.label),
                    mu.derivative_jump(&c, d - 1),
                    expected,
                )?;
            }
        }
        Ok(())
    })();
    report(
        3,
        "densities are C^(d-2) with the predicted top-derivative jumps",
        outcome,
    );
}

#[test]
fn criterion_04_jk_identity() {
    let outcome = (|| {
        for item in corpus() {
            let space = &item.space;
            let d = space.half_dim();
            let chambers = chamber_decomposition(space).unwrap();
            let mu = dh_measure(space).unwrap();
            for a in chamber_samples(space) {
                let p = chambers.polynomial_at(&a).unwrap();
                let derivative = p.derivative(d - 1).eval(&a);
                let pairing = jk_pairing(space, &a).unwrap();
                ensure(&format!("{}: JK at {a}", item.label), &pairing, &derivative)?;
                ensure(
                    &format!("{}: reduced volume at {a}", item.label),
                    reduced_volume(space, &a).unwrap(),
                    mu.eval_density(&a).unwrap(),
                )?;
            }
            if let Some(top) = critical_values(space).last() {
                let above = top + int(1);
                ensure(
                    &format!("{}: JK above top", item.label),
                    jk_pairing(space, &above).unwrap(),
                    Rational::zero(),
                )?;
                ensure(
                    &format!("{}: derivative above top", item.label),
                    chambers
                        .polynomial_at(&above)
                        .unwrap()
                        .derivative(d - 1)
                        .eval(&above),
                    Rational::zero(),
                )?;
            }
        }
        Ok(())
    })();
    report(
        4,
        "JK pairing equals the top derivative of each chamber polynomial",
        outcome,
    );
}

fn rr_passes(label: &str, space: HamiltonianSpaceData) -> Result<(), String> {
    let ps = PrequantSpace::new(space).map_err(|e| format!("{label}: {e}"))?;
    let (lo, hi) = certifying_range(&ps).map_err(|e| format!("{label}: {e}"))?;
    let report = hamloc::quantization::verify_rr_identity(&ps, lo, hi)
        .map_err(|e| format!("{label}: {e}"))?;
    match report.rows.iter().find(|r| !r.agrees()) {
        None => Ok(()),
        Some(row) => Err(format!(
            "{label}: level {} multiplicity {} vs partition sum {}",
            row.level, row.multiplicity, row.partition_sum
        )),
    }
}

#[test]
fn criterion_05_quantization_identity() {
    let outcome = (|| {
        for k in 1..=5 {
            rr_passes(&format!("CP1 level {k}"), standard_projective(1, k))?;
            rr_passes(&format!("CP2 level {k}"), standard_projective(2, k))?;
        }
        for k1 in 1..=3 {
            for k2 in 1..=3 {
                let s = product(&standard_projective(1, k1), &standard_projective(1, k2)).unwrap();
                rr_passes(&format!("CP1({k1}) x CP1({k2})"), s)?;
            }
        }
        let randomized = random_small_spaces(50, 0xdecade);
        if randomized.len() != 50 {
            return Err("randomized corpus has the wrong size".into());
        }
        for item in randomized {
            rr_passes(&item.label, item.space)?;
        }
        Ok(())
    })();
    report(
        5,
        "multiplicities equal partition-count sums at all integer levels",
        outcome,
    );
}

fn lattice_points_in_simplex(d: usize, k: i64) -> usize {
    // n in Z^d_{>=0} with n_1 + ... + n_d <= k, by direct enumeration.
    fn go(remaining_dims: usize, budget: i64) -> usize {
        if remaining_dims == 0 {
            return 1;
        }
        (0..=budget)
            .map(|n| go(remaining_dims - 1, budget - n))
            .sum()
    }
    go(d, k)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn criterion_06_closed_form_rr_totals() {
    let outcome = (|| {
        for d in 1..=3usize {
            for k in 1..=5i64 {
                let chi = character(&PrequantSpace::new(standard_projective(d, k)).unwrap())
                    .map_err(|e| e.to_string())?;
                let oracle = lattice_points_in_simplex(d, k);
                ensure(
                    &format!("CP{d} level {k} total"),
                    chi.total(),
                    BigInt::from(oracle),
                )?;
                ensure(
                    &format!("CP{d} level {k} binomial"),
                    oracle as u64,
                    binomial(d as u64 + k as u64, d as u64),
                )?;
                if chi.coefficients().values().any(|c| *c < BigInt::zero()) {
                    return Err(format!("CP{d} level {k} has a negative multiplicity"));
                }
            }
        }
        Ok(())
    })();
    report(
        6,
        "total multiplicity of CP^d at level k is C(d+k, d)",
        outcome,
    );
}

fn perturbed(space: &HamiltonianSpaceData) -> HamiltonianSpaceData {
    let mut pts: Vec<FixedPointDatum> = space.fixed_points().to_vec();
    pts[0].moment[0] += int(1);
    HamiltonianSpaceData::new(space.torus_rank(), space.half_dim(), pts).unwrap()
}

#[test]
fn criterion_07_character_exactness() {
    let outcome = (|| {
        let mut rejected = 0usize;
        let mut still_consistent = 0usize;
        for item in corpus() {
            let ps = PrequantSpace::new(item.space.clone()).unwrap();
            character(&ps).map_err(|e| format!("{}: {e}", item.label))?;

            let bad = perturbed(&item.space);
            let fails_validation = !validate_consistency(&bad).unwrap().passed();
            let fails_division = matches!(
                character(&PrequantSpace::new(bad.clone()).unwrap()),
                Err(Error::InexactDivision)
            );
            if fails_validation || fails_division {
                rejected += 1;
                continue;
            }
            // In half-dimension one, shifting a point of weight ±1 changes its
            // character term by the monomial -t^φ and leaves the weight-only
            // consistency sum alone, so the data stays realizable.
            let unit_curve_point =
                item.space.half_dim() == 1 && item.space.fixed_points()[0].weights[0][0].abs() == 1;
            if !unit_curve_point {
                return Err(format!("{}: corrupted data was accepted", item.label));
            }
            character(&PrequantSpace::new(bad).unwrap())
                .map_err(|e| format!("{}: shifted unit-weight data: {e}", item.label))?;
            still_consistent += 1;
        }
        println!("    corrupted corpus members rejected: {rejected}, realizable after shift: {still_consistent}");
        Ok(())
    })();
    report(
        7,
        "characters divide exactly and corrupted data is rejected",
        outcome,
    );
}

#[test]
fn criterion_08_cut_coherence() {
    let outcome = (|| {
        for item in corpus() {
            let space = &item.space;
            let mu = dh_measure(space).unwrap();
            let ps = PrequantSpace::new(space.clone()).unwrap();
            let chi = character(&ps).unwrap();
            let levels = half_integer_levels(space);
            let cuts: Vec<_> = levels
                .iter()
                .map(|a| {
                    (
                        cut_measure(space, a).unwrap(),
                        cut_character(&ps, a).unwrap(),
                    )
                })
                .collect();
            for (i, a) in levels.iter().enumerate() {
                let (cut, cut_chi) = &cuts[i];
                ensure(
                    &format!("{}: measure cut at {a}", item.label),
                    cut,
                    &mu.truncate(a).unwrap(),
                )?;
                ensure(
                    &format!("{}: character cut at {a}", item.label),
                    cut_chi.laurent(),
                    &chi.laurent().truncate_below(a),
                )?;
                // Levels ascend, so every earlier level is a lower cut.
                for (j, b) in levels[..i].iter().enumerate() {
                    ensure(
                        &format!("{}: re-cut {a} then {b}", item.label),
                        &cut.truncate(b).unwrap(),
                        &cuts[j].0,
                    )?;
                    ensure(
                        &format!("{}: re-cut character {a} then {b}", item.label),
                        &cut_chi.laurent().truncate_below(b),
                        cuts[j].1.laurent(),
                    )?;
                }
            }
        }
        Ok(())
    })();
    report(8, "cuts are truncations and re-cutting composes", outcome);
}

#[test]
fn criterion_09_quasi_free_summary() {
    let outcome = (|| {
        let cp1 = build_projective(&[0, 1], &int(1)).unwrap();
        let flipped = build_projective(&[1, 0], &int(1)).unwrap();
        let mut space = cp1.clone();
        for d in 1..=5usize {
            if d > 1 {
                let factor = if d % 2 == 0 { &flipped } else { &cp1 };
                space = product(&space, factor).unwrap();
            }
            let summary = quasi_free_summary(&space).map_err(|e| e.to_string())?;
            ensure(&format!("N for d={d}"), summary.count, 1usize << d)?;
            let mut got = summary.signs.clone();
            let mut expected: Vec<Sign> = space
                .fixed_points()
                .iter()
                .map(|p| Sign::parity(p.weights.iter().filter(|r| r[0] < 0).count()))
                .collect();
            got.sort();
            expected.sort();
            ensure(&format!("sign multiset for d={d}"), got.clone(), expected)?;
            let minus = got.iter().filter(|s| **s == Sign::Minus).count();
            ensure(
                &format!("odd-sigma count for d={d}"),
                minus,
                1usize << (d - 1),
            )?;
        }
        Ok(())
    })();
    report(
        9,
        "quasi-free products of CP1 have N = 2^d with signs (-1)^sigma",
        outcome,
    );
}

#[test]
fn criterion_10_asymptotic_sanity() {
    let outcome = {
        let k = ASYMPTOTIC_LEVEL;
        let chi = character(&PrequantSpace::new(standard_projective(2, k)).unwrap()).unwrap();
        let mult = multiplicity(&chi, k / 2).to_f64().unwrap();
        let unit = dh_measure(&standard_projective(2, 1)).unwrap();
        let density = unit.eval_density(&rat(1, 2)).unwrap().to_f64().unwrap();
        let ratio = mult / k as f64;
        let rel = (ratio - density).abs() / density;
        println!("    mult/k = {ratio:.4}, DH density at 1/2 = {density}, relative gap {rel:.4}");
        if rel < ASYMPTOTIC_RELATIVE_TOLERANCE {
            Ok(())
        } else {
            Err(format!(
                "relative gap {rel} exceeds {ASYMPTOTIC_RELATIVE_TOLERANCE}"
            ))
        }
    };
    report(
        10,
        "CP2 multiplicity at level 50 tracks the DH density",
        outcome,
    );
}
