//! Acceptance suite: one PASS/FAIL line per criterion; exits non-zero if
//! any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use godbersen_core::certificate::certificate;
use godbersen_core::constructions::*;
use godbersen_core::mixed::polarization_profile_entry;
use godbersen_core::sweep::{run, RunConfig, DEFAULT_SEED};
use godbersen_core::verify::{self, uniform_grid, Subject};
use godbersen_core::zoo::{default_zoo, generate, recenter, Generator, Recenter};
use godbersen_core::{godbersen_ratios, minkowski_sum, mixed_volume_profile, VPolytope};

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn zoo(n: usize) -> Vec<(String, VPolytope)> {
    default_zoo(n, DEFAULT_SEED).into_iter().map(|s| (s.label(), generate(&s).unwrap())).collect()
}

fn simplex_equality() -> Check {
    for n in 2..=5 {
        let s = body(Generator::Simplex, n);
        let p = mixed_volume_profile(&s).map_err(err)?;
        let r = godbersen_ratios(&p);
        for (j, v) in r.iter().enumerate() {
            ensure((v - 1.0).abs() <= 1e-5, || format!("n={n} ratio_{j} = {v}"))?;
        }
        let avg = r.iter().sum::<f64>() / (n + 1) as f64;
        ensure((avg - 1.0).abs() <= 1e-5, || format!("n={n} average {avg}"))?;
        let diff = minkowski_sum(&s, &s.negate()).map_err(err)?.volume().map_err(err)?;
        let ratio = diff / s.volume().map_err(err)?;
        ensure(rel_close(ratio, binom(2 * n, n), 1e-5), || format!("n={n} vol(Δ−Δ)/vol(Δ) = {ratio}"))?;
    }
    Ok(())
}

fn theorem_one_identity() -> Check {
    for n in 2..=3 {
        for (label, k) in seeded_bodies(n) {
            let p = mixed_volume_profile(&k).map_err(err)?;
            for l in uniform_grid(11) {
                let vol = build_C(&k, l).map_err(err)?.body.volume().map_err(err)?;
                let want = c_volume_from_profile(&p.values, l);
                ensure(rel_close(vol, want, 1e-6), || format!("{label} λ={l}: {vol} vs {want}"))?;
            }
        }
    }
    Ok(())
}

fn lemma_two() -> Check {
    for n in 2..=5 {
        for (label, k) in zoo(n) {
            let vol = k.volume().map_err(err)?;
            let bound = vol / (n + 1) as f64;
            for l in uniform_grid(21) {
                let c = build_C(&k, l).map_err(err)?.body.volume().map_err(err)?;
                ensure(c <= bound + 1e-9, || format!("{label} λ={l}: {c} > {bound}"))?;
                if label.starts_with("SIMPLEX") {
                    ensure(rel_close(c, bound, 1e-5), || format!("{label} λ={l}: no equality, {c} vs {bound}"))?;
                }
            }
        }
    }
    Ok(())
}

fn t_closed_form() -> Check {
    let i = body(Generator::Cube, 1);
    let v = build_T(&i, &i).map_err(err)?.body.volume().map_err(err)?;
    ensure(rel_close(v, 1.0 / 6.0, 1e-6), || format!("n=1 unit cubes: {v}"))?;
    let sq = body(Generator::Cube, 2);
    let v = build_T(&sq, &sq).map_err(err)?.body.volume().map_err(err)?;
    ensure(rel_close(v, 1.0 / 30.0, 1e-6), || format!("n=2 unit cubes: {v}"))?;
    for n in 1..=3 {
        let tol = if n == 3 { 1e-4 } else { 1e-6 };
        for seed in 0..3 {
            let k1 = random_body(Generator::RandomGaussHull, n, n + 4, 700 + seed);
            let k2 = random_body(Generator::RandomSphere, n, n + 4, 800 + seed);
            let t = build_T(&k1, &k2).map_err(err)?;
            let got = t.body.volume().map_err(err)?;
            let want = t.closed_form_volume().map_err(err)?;
            ensure(rel_close(got, want, tol), || format!("n={n} seed={seed}: {got} vs {want}"))?;
        }
    }
    Ok(())
}

fn proof_constructions() -> Check {
    let mut cases = vec![
        ("I".to_string(), body(Generator::Cube, 1)),
        ("J".to_string(), VPolytope::from_points(&[vec![-0.3], vec![1.2]]).map_err(err)?),
    ];
    cases.extend(seeded_bodies(2));
    for (label, k) in cases {
        for l in [0.1, 0.3, 0.5, 0.8] {
            let t = build_T(&k.scale(l).map_err(err)?, &k.scale(1.0 - l).map_err(err)?).map_err(err)?;
            let s = section_T(&t, 1.0 - l).map_err(err)?;
            let want = k.scale(l * (1.0 - l)).map_err(err)?;
            ensure(s.same_vertices(&want, 1e-8), || format!("{label} λ={l}: section is not λ(1−λ)K"))?;
            let p = project_T(&t).map_err(err)?.volume().map_err(err)?;
            let c = build_C(&k, l).map_err(err)?.body.volume().map_err(err)?;
            ensure(rel_close(p, c, 1e-7), || format!("{label} λ={l}: shadow {p} vs C {c}"))?;
        }
    }
    Ok(())
}

fn certificate_grid() -> Check {
    for n in [4, 5] {
        for l in uniform_grid(1001) {
            let c = certificate(n, l).map_err(err)?;
            ensure(c.a >= -1e-12 && c.b >= -1e-12 && c.det >= 0.0, || format!("n={n} λ={l}: {c:?}"))?;
            ensure(c.residual <= 1e-12, || format!("n={n} λ={l}: residual {}", c.residual))?;
            if n == 4 {
                ensure((c.det - c.det_factored).abs() <= 1e-12, || format!("λ={l}: det {} vs {}", c.det, c.det_factored))?;
            }
        }
    }
    Ok(())
}

fn unbalanced() -> Check {
    let grid = uniform_grid(21);
    for n in 2..=5 {
        for (label, k) in zoo(n) {
            let s = Subject::new(label.clone(), k);
            let lambdas: Vec<f64> = if n >= 4 { grid.clone() } else { vec![0.0, 0.5, 1.0] };
            for r in verify::verify_unbalanced(&s, &lambdas).map_err(err)? {
                ensure(r.passed, || format!("{label} λ={:?}: margin {}", r.lambda, r.margin))?;
                if r.lambda == Some(0.0) || r.lambda == Some(1.0) {
                    ensure((r.lhs - r.rhs).abs() <= 1e-9, || format!("{label} endpoint: {} vs {}", r.lhs, r.rhs))?;
                }
            }
        }
    }
    Ok(())
}

fn theorem_eight() -> Check {
    let centred = |k: VPolytope| recenter(&k, Recenter::Centroid).map(|(b, _)| b).map_err(err);
    for n in 2..=3 {
        for seed in 0..5u64 {
            let k = centred(random_body(Generator::RandomGaussHull, n, n + 5, 900 + seed))?;
            let l = centred(random_body(Generator::RandomSphere, n, n + 4, 950 + seed))?;
            let r = verify::verify_strange(&Subject::new("K", k.clone()), &Subject::new("L", l.clone())).map_err(err)?;
            ensure(r.passed, || format!("n={n} seed={seed}: strange margin {}", r.margin))?;
            let c = build_diag_C(&k, &l).map_err(err)?;
            let vc = c.volume().map_err(err)?;
            let want = diag_closed_form_volume(&k, &l).map_err(err)?;
            ensure(rel_close(vc, want, 1e-6), || format!("n={n} seed={seed}: join {vc} vs {want}"))?;
            let root = 2f64.sqrt().powi(n as i32);
            let sec = diag_section(&c, 0.5).map_err(err)?.volume().map_err(err)?;
            let polar = polar_sum_body(&k, &l).map_err(err)?.volume().map_err(err)?;
            ensure(rel_close(sec, root * polar, 1e-6), || format!("n={n} seed={seed}: section {sec} vs √2^n·{polar}"))?;
            let shadow = diag_projection(&c, 0.5).map_err(err)?.volume().map_err(err)?;
            let union = conv_union(&k, &l).map_err(err)?.volume().map_err(err)?;
            ensure(rel_close(shadow, union / root, 1e-6), || format!("n={n} seed={seed}: shadow {shadow} vs {union}/√2^n"))?;
        }
    }
    Ok(())
}

fn profile_cross_validation() -> Check {
    for n in 2..=4 {
        for (label, k) in seeded_bodies(n) {
            let p = mixed_volume_profile(&k).map_err(err)?;
            for j in 0..=n {
                let oracle = polarization_profile_entry(&k, j).map_err(err)?;
                ensure(rel_close(p.values[j], oracle, 1e-6), || format!("{label} j={j}: {} vs {oracle}", p.values[j]))?;
            }
        }
    }
    for n in 2..=5 {
        for (label, k) in zoo(n) {
            let p = mixed_volume_profile(&k).map_err(err)?;
            let bad = p.invariant_violations(1e-7);
            ensure(bad.is_empty(), || format!("{label}: {bad:?}"))?;
        }
    }
    Ok(())
}

fn determinism() -> Check {
    let mut first = RunConfig::full_matrix(DEFAULT_SEED);
    first.jobs = 1;
    let second = RunConfig::full_matrix(DEFAULT_SEED);
    let a = run(&first).map_err(err)?;
    let b = run(&second).map_err(err)?;
    ensure(a.failures.is_empty(), || format!("task failures: {:?}", a.failures))?;
    ensure(a.violations().count() == 0, || format!("{} proven-statement violations", a.violations().count()))?;
    ensure(a.reports_csv() == b.reports_csv(), || "report CSV differs between runs".into())?;
    ensure(a.certificate_csv() == b.certificate_csv(), || "certificate CSV differs between runs".into())?;
    ensure(a.reports_jsonl() == b.reports_jsonl(), || "report JSONL differs between runs".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("simplex equality: ratios, average and difference body", simplex_equality),
        ("lifted body volume equals the profile sum", theorem_one_identity),
        ("lifted body volume bound on the zoo, equality for simplices", lemma_two),
        ("T-body closed-form volume", t_closed_form),
        ("T section is λ(1−λ)K and T shadow is C", proof_constructions),
        ("n = 4, 5 certificate on a 1001-point grid", certificate_grid),
        ("unbalanced difference body bound for n <= 5", unbalanced),
        ("polar-sum/convex-union bound and diagonal volume factors", theorem_eight),
        ("profile cross-validation and invariants", profile_cross_validation),
        ("sweep outputs are byte-identical across runs", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = check();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
