//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_4, SQRT_2};
use std::time::Instant;

use lemniscate::admissibility::{check_admissible, GridSpec};
use lemniscate::boundary::{curvature_identity, THETA_MARGIN};
use lemniscate::catalog::{LemmaId, LemmaParams, StatedBound};
use lemniscate::geometry::{ComplexValue, TargetRegion};
use lemniscate::series::{p_of_f, sqrt_one_plus_z_series, TruncatedSeries};
use lemniscate::thresholds::{find_beta_threshold, DEFAULT_BRACKET, DEFAULT_TOL};
use lemniscate::verifier::{random_normalized_p, sharpness_probe_example2, verify_implication, ImplicationStatus, ProbeSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn admissible(lemma: LemmaId, params: &LemmaParams, grid: &GridSpec) -> Result<bool, String> {
    let form = lemma.form(params).map_err(|e| e.to_string())?;
    check_admissible(&form, &lemma.region(), grid)
        .map(|v| v.admissible)
        .map_err(|e| e.to_string())
}

/// β in (0, 10].
fn beta_draw(rng: &mut ChaCha8Rng) -> f64 {
    10.0 * (1.0 - rng.gen::<f64>())
}

fn thresholds() -> Outcome {
    let start = Instant::now();
    let cases = [
        (LemmaId::First3, 1.1874, 5e-3),
        (LemmaId::First4, 3.58095, 5e-3),
        (LemmaId::Sq2, 2.0 * SQRT_2, 2e-3),
        (LemmaId::Moebius, 2.0, 2e-3),
        (LemmaId::One0, 4.0 - 2.0 * SQRT_2, 2e-3),
        (LemmaId::One1, 4.0 * SQRT_2 - 4.0, 2e-3),
        (LemmaId::One2, 8.0 - 4.0 * SQRT_2, 2e-3),
    ];
    let mut found = Vec::new();
    for (lemma, expected, tol) in cases {
        let r = find_beta_threshold(lemma, DEFAULT_BRACKET, DEFAULT_TOL, &GridSpec::default())
            .map_err(|e| format!("{lemma}: {e}"))?;
        ensure((r.beta_star - expected).abs() <= tol, || {
            format!("{lemma}: beta_star {} vs {expected} (tol {tol})", r.beta_star)
        })?;
        found.push(format!("{lemma}={:.5}", r.beta_star));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s, budget 60s"))?;
    Ok(format!("{} in {secs:.1}s", found.join(" ")))
}

fn unconditional() -> Outcome {
    let grid = GridSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checks = 0;
    let real_lemmas = [LemmaId::First0, LemmaId::First1, LemmaId::First2, LemmaId::SqMinus1, LemmaId::Sq0, LemmaId::Sq1];
    let betas: Vec<f64> = (0..32).map(|_| beta_draw(&mut rng)).collect();
    for lemma in real_lemmas {
        for &b in &betas {
            ensure(admissible(lemma, &LemmaParams::real(b), &grid)?, || format!("{lemma} violated at beta={b}"))?;
            checks += 1;
        }
    }
    for _ in 0..16 {
        let params = LemmaParams {
            beta: ComplexValue::new(beta_draw(&mut rng), rng.gen_range(-10.0..10.0)),
            gamma: 1.0,
        };
        ensure(admissible(LemmaId::SqMinus1, &params, &grid)?, || {
            format!("sq-1 violated at beta={}", params.beta)
        })?;
        checks += 1;
    }
    for _ in 0..16 {
        let params = LemmaParams::with_gamma(beta_draw(&mut rng), beta_draw(&mut rng));
        ensure(admissible(LemmaId::SqRat, &params, &grid)?, || {
            format!("sqrat violated at beta={} gamma={}", params.beta.re, params.gamma)
        })?;
        checks += 1;
    }
    Ok(format!("{checks} checks, zero violations"))
}

fn second_order() -> Outcome {
    let grid = GridSpec::default();
    ensure(admissible(LemmaId::SecondSum, &LemmaParams::real(1.0), &grid)?, || "second-sum violated".into())?;
    ensure(
        admissible(LemmaId::SecondSqSum, &LemmaParams::real(1.0), &grid.with_m_min(2.0))?,
        || "second-sqsum violated".into(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..16 {
        let beta = beta_draw(&mut rng);
        let low = beta.max((1.0 + beta) / 4.0);
        let gamma = rng.gen_range(low..=10.0f64.max(low));
        ensure(admissible(LemmaId::SecondWeighted, &LemmaParams::with_gamma(beta, gamma), &grid)?, || {
            format!("second-weighted violated at gamma={gamma} beta={beta}")
        })?;
    }
    // γ ≥ β but 4γ − β = 0.5
    let outside = LemmaParams::with_gamma(0.1, 0.15);
    ensure(!admissible(LemmaId::SecondWeighted, &outside, &grid)?, || {
        "second-weighted admissible at 4gamma-beta=0.5".into()
    })?;
    Ok("3 disks admissible on 16 weighted pairs, 4gamma-beta=0.5 violated".into())
}

fn draw_params(lemma: LemmaId, rng: &mut ChaCha8Rng) -> LemmaParams {
    match lemma.stated_bound() {
        StatedBound::ReBetaPositive => LemmaParams {
            beta: ComplexValue::new(beta_draw(rng), rng.gen_range(-10.0..10.0)),
            gamma: 1.0,
        },
        StatedBound::BetaGammaPositive => LemmaParams::with_gamma(beta_draw(rng), beta_draw(rng)),
        StatedBound::WeightedCondition => {
            let beta = beta_draw(rng);
            LemmaParams::with_gamma(beta, beta + rng.gen::<f64>() * 5.0)
        }
        StatedBound::Fixed => lemma.reference_params(),
        StatedBound::BetaPositive | StatedBound::Beta { .. } => LemmaParams::real(beta_draw(rng)),
    }
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for &lemma in LemmaId::all() {
        let m_min = lemma.class_index() as f64;
        for _ in 0..10_000 {
            let theta = rng.gen_range(-FRAC_PI_4 + THETA_MARGIN..FRAC_PI_4 - THETA_MARGIN);
            let m = rng.gen_range(m_min..=8.0);
            let params = draw_params(lemma, &mut rng);
            let closed = lemma.closed_form_g(theta, m, &params).map_err(|e| e.to_string())?;
            let direct = lemma.direct_g(theta, m, &params).map_err(|e| e.to_string())?;
            let rel = (closed - direct).abs() / closed.abs().max(direct.abs()).max(1e-300);
            worst = worst.max(rel);
            ensure(rel <= 1e-9, || {
                format!("{lemma} theta={theta} m={m} beta={}: closed {closed} direct {direct}", params.beta)
            })?;
        }
    }
    Ok(format!("{} lemmas x 10^4 draws, worst relative gap {worst:.2e}", LemmaId::all().len()))
}

fn curvature() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let theta = rng.gen_range(-FRAC_PI_4 + THETA_MARGIN..FRAC_PI_4 - THETA_MARGIN);
        let v = curvature_identity(theta).map_err(|e| e.to_string())?;
        worst = worst.max((v - 0.75).abs());
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("10^3 thetas, max deviation {worst:.1e}"))
}

fn examples() -> Outcome {
    let grid = GridSpec::default();
    let expected = [
        (LemmaId::Ex1, TargetRegion::disk(1.0, 1.0 / (2.0 * SQRT_2))),
        (LemmaId::Ex2, TargetRegion::HalfPlaneReLess { bound: 0.25 }),
        (LemmaId::Ex3, TargetRegion::disk(1.0, 1.0 / (4.0 * SQRT_2))),
    ];
    for (lemma, region) in expected {
        ensure(lemma.region() == region, || format!("{lemma} paired with {}", lemma.region().name()))?;
        let form = lemma.form(&lemma.reference_params()).map_err(|e| e.to_string())?;
        let v = check_admissible(&form, &region, &grid).map_err(|e| e.to_string())?;
        ensure(v.admissible, || format!("{lemma} violated: {:?}", v.witness))?;
    }
    let probe = sharpness_probe_example2(1e-4).map_err(|e| e.to_string())?;
    ensure((probe - (0.25 - 1.25e-5)).abs() <= 1e-8, || format!("sharpness probe {probe}"))?;
    Ok(format!("ex1 ex2 ex3 admissible, sharpness probe {probe:.10}"))
}

fn falsification() -> Outcome {
    let probe = ProbeSpec::default();
    let mut tally = [0usize; 3];
    for seed in 0..200u64 {
        for &lemma in LemmaId::all() {
            let p = random_normalized_p(seed, 8, lemma.class_index(), 8);
            let r = verify_implication(lemma, &p, &lemma.reference_params(), &probe).map_err(|e| e.to_string())?;
            match r.status {
                ImplicationStatus::Confirmed => tally[0] += 1,
                ImplicationStatus::Vacuous => tally[1] += 1,
                ImplicationStatus::Counterexample => {
                    return Err(format!("{lemma} seed {seed}: {:?}", r));
                }
            }
        }
    }
    Ok(format!("{} confirmed, {} vacuous, 0 counterexamples", tally[0], tally[1]))
}

fn f_level() -> Outcome {
    const N: usize = 32;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let beta = beta_draw(&mut rng);
        let mut coeffs = vec![ComplexValue::new(0.0, 0.0); N + 2];
        coeffs[1] = ComplexValue::new(1.0, 0.0);
        for (k, c) in coeffs.iter_mut().enumerate().take(9).skip(2) {
            let r = rng.gen::<f64>() * 0.5 / (k * k) as f64;
            *c = ComplexValue::from_polar(r, rng.gen::<f64>() * std::f64::consts::TAU);
        }
        let f = TruncatedSeries::new(coeffs);
        let err = |e: lemniscate::Error| e.to_string();

        // f-level: zf'/f + β (zf'/f)(1 + zf''/f' − zf'/f)
        let zf_over_f = p_of_f(&f).map_err(err)?;
        let fp = f.derivative();
        let zfpp_over_fp = fp.z_derivative().div(&fp).map_err(err)?;
        let one = TruncatedSeries::constant(ComplexValue::new(1.0, 0.0), N);
        let bracket = one.add(&zfpp_over_fp).map_err(err)?.sub(&zf_over_f).map_err(err)?;
        let lhs = zf_over_f
            .add(&zf_over_f.mul(&bracket).map_err(err)?.scale(beta.into()))
            .map_err(err)?;

        // p-level: p + β zp'
        let p = p_of_f(&f).map_err(err)?;
        let rhs = p.add(&p.z_derivative().scale(beta.into())).map_err(err)?;
        for k in 0..=N {
            worst = worst.max((lhs.coeff(k) - rhs.coeff(k)).norm());
        }
    }
    ensure(worst <= 1e-10, || format!("max coefficient gap {worst:e}"))?;
    Ok(format!("20 functions through order {N}, max gap {worst:.1e}"))
}

fn series_identities() -> Outcome {
    let err = |e: lemniscate::Error| e.to_string();
    let q = sqrt_one_plus_z_series(64);
    let sq = q.mul(&q).map_err(err)?;
    let target = TruncatedSeries::padded(&[ComplexValue::new(1.0, 0.0), ComplexValue::new(1.0, 0.0)], 64);
    let gap = sq.max_abs_diff(&target).map_err(err)?;
    ensure(gap <= 1e-12, || format!("q^2 - (1+z) gap {gap:e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mut draw = |lead: f64| {
            let mut c: Vec<ComplexValue> = (0..=32)
                .map(|k| ComplexValue::from_polar(rng.gen::<f64>() / (1 + k * k) as f64, rng.gen::<f64>() * 6.3))
                .collect();
            c[0] = ComplexValue::new(lead, 0.0);
            TruncatedSeries::new(c)
        };
        let a = draw(0.5);
        let b = draw(1.0);
        let back = a.mul(&b).map_err(err)?.div(&b).map_err(err)?;
        worst = worst.max(back.max_abs_diff(&a).map_err(err)?);
    }
    ensure(worst <= 1e-12, || format!("mul/div residual {worst:e}"))?;
    Ok(format!("sqrt^2 gap {gap:.1e}, mul/div residual {worst:.1e}"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 threshold reproduction", thresholds),
        ("2 unconditional admissibility", unconditional),
        ("3 second-order lemmas", second_order),
        ("4 oracle equivalence", oracle_equivalence),
        ("5 curvature identity", curvature),
        ("6 worked examples", examples),
        ("7 falsification suite", falsification),
        ("8 f-level consistency", f_level),
        ("9 series identities", series_identities),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
