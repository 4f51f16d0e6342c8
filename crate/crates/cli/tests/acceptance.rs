//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::Command as Process;
use std::time::{Duration, Instant};

use ks3_cli::{emit_report, run, Command, Format, RunConfig};
use ks3_core::bloch::{adjoint_orthogonal, decompose};
use ks3_core::gellmann::{structure_constants, su3, su3_constants, GellMannBasis};
use ks3_core::ks::{ks_difference, ks_difference_raw, spread_bound};
use ks3_core::map::catalog;
use ks3_core::numerics::{min_eigenvalue, singular_values, ComplexMatrix};
use ks3_core::random::{ginibre, haar_unitary, rng_for};
use ks3_core::{
    c3_constant, is_cp, kadison_contraction_check, ks_expansion, normal_operator_audit,
    sample_random_map, search_violation, RandomMapKind, SearchOptions, UnitalMap,
};
use rand::Rng;
use serde_json::Value;

const CHOI_TOL: f64 = 1e-9;
const TRANSPOSE_WITNESS_MAX: f64 = -0.99;
const ALGEBRA_TOL: f64 = 1e-12;
const EXPANSION_TOL: f64 = 1e-10;
const NORMAL_TOL: f64 = 1e-9;
const CONTRACTION_TOL: f64 = 1e-10;
const COVARIANCE_TOL: f64 = 1e-9;
const VIOLATION_THRESHOLD: f64 = -1e-7;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    o.detail = format!("{} [{:.2?}]", o.detail, took);
    if let Some(limit) = limit {
        if took > limit {
            o.pass = false;
            o.detail = format!("{} exceeds {:?}", o.detail, limit);
        }
    }
    o
}

fn config(budget: usize, seed: u64) -> RunConfig {
    RunConfig {
        seed,
        budget,
        ..RunConfig::default()
    }
}

fn transposition_counterexample() -> Outcome {
    let cfg = config(500, 0);
    let report = run(
        &Command::Classify {
            map: "catalog:transposition".into(),
        },
        &cfg,
    )
    .unwrap();
    let v: Value = serde_json::from_slice(&emit_report(&report, &cfg).unwrap()).unwrap();
    let r = &v["results"];
    let choi = r["cp"]["min_choi_eig"].as_f64().unwrap();
    let not_cp = r["cp"]["verdict"] == "no" && (choi + 1.0).abs() <= CHOI_TOL;
    let violated = r["ks"]["verdict"] == "violated";
    let witness = r["ks"]["witness"]["min_eig"].as_f64().unwrap_or(0.0);

    // re-verify the reported witness from its matrix entries
    let x = ComplexMatrix::from_fn(3, |i, j| {
        let z = &r["ks"]["witness"]["x"][i][j];
        ks3_core::Complex64::new(z[0].as_f64().unwrap_or(0.0), z[1].as_f64().unwrap_or(0.0))
    });
    let recomputed =
        min_eigenvalue(&ks_difference(&catalog::transposition(), &x).unwrap()).unwrap();
    let positive = r["positive"]["verdict"] == "no_violation_found";
    outcome(
        not_cp && violated && witness <= TRANSPOSE_WITNESS_MAX && recomputed <= TRANSPOSE_WITNESS_MAX && positive,
        format!("min Choi eig {choi:.12}, witness min eig {witness:.6} (recomputed {recomputed:.6}), positivity {}", r["positive"]["verdict"]),
    )
}

fn gell_mann_algebra() -> Outcome {
    let mut worst_product: f64 = 0.0;
    let mut worst_other: f64 = 0.0;
    let mut triples = 0;
    for d in [2, 3] {
        let b = GellMannBasis::generators(d).unwrap();
        let sc = structure_constants(&b);
        let n = b.len();
        worst_other = worst_other.max(b.gram_residual());
        for l in b.lambdas() {
            worst_other = worst_other
                .max(l.hermiticity_residual())
                .max(l.trace().norm());
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst_other = worst_other
                        .max((sc.d(i, j, k) - sc.d(j, i, k)).abs())
                        .max((sc.d(i, j, k) - sc.d(k, j, i)).abs())
                        .max((sc.f(i, j, k) + sc.f(j, i, k)).abs())
                        .max((sc.f(i, j, k) - sc.f(j, k, i)).abs());
                    // λ_i λ_j = (2/d) δ_ij I + Σ_k (d_ijk + i f_ijk) λ_k, componentwise in k
                    let prod = b.lambda(i).matmul(b.lambda(j));
                    let coeff = prod.trace_product(b.lambda(k)) / 2.0;
                    let want = ks3_core::Complex64::new(sc.d(i, j, k), sc.f(i, j, k));
                    worst_product = worst_product.max((coeff - want).norm());
                    if d == 3 {
                        triples += 1;
                    }
                }
                let prod = b.lambda(i).matmul(b.lambda(j));
                let full = sc.product_expand(i, j).unwrap().to_matrix(&b);
                worst_product = worst_product.max((&prod - &full).frobenius_norm());
            }
        }
        if d == 2 {
            worst_other = worst_other.max(sc.d_nonzero(0.0).len() as f64);
        }
    }
    let sc = su3_constants();
    let golden = [
        (sc.f(0, 1, 2), 1.0),
        (sc.f(3, 4, 7), 3f64.sqrt() / 2.0),
        (sc.f(0, 3, 6), 0.5),
        (sc.d(0, 0, 7), 1.0 / 3f64.sqrt()),
    ];
    for (got, want) in golden {
        worst_other = worst_other.max((got - want).abs());
    }
    outcome(
        worst_product <= ALGEBRA_TOL && worst_other <= ALGEBRA_TOL && triples == 512,
        format!("product residual {worst_product:.2e} over {triples} triples (d = 3), invariants {worst_other:.2e}"),
    )
}

fn expansion_equality() -> Outcome {
    let mut rng = rng_for(2024, 0);
    let sc = su3_constants();
    let (mut worst, mut worst_alpha, mut min_alpha) = (0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..1000 {
        let mu: Vec<f64> = (0..8).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let map = UnitalMap::from_diagonal(&mu).unwrap();
        let x = ginibre(&mut rng, 3);
        let v = decompose(&x, su3()).unwrap();
        let e = ks_expansion(&mu, &v, sc).unwrap();
        let direct = ks_difference_raw(&map, &x).unwrap();
        worst = worst.max((&direct - &e.to_matrix(su3())).frobenius_norm());
        // the generators are traceless, so Tr Δ = 3 α
        let alpha_direct = direct.trace().re / 3.0;
        let alpha_formula: f64 = (2.0 / 3.0)
            * mu.iter()
                .zip(&v.w)
                .map(|(m, w)| (1.0 - m * m) * w.norm_sqr())
                .sum::<f64>();
        worst_alpha = worst_alpha
            .max((alpha_direct - alpha_formula).abs())
            .max((e.alpha - alpha_formula).abs());
        min_alpha = min_alpha.min(e.alpha);
    }
    outcome(
        worst <= EXPANSION_TOL && worst_alpha <= EXPANSION_TOL && min_alpha >= 0.0,
        format!("expansion residual {worst:.2e}, alpha residual {worst_alpha:.2e}, min alpha {min_alpha:.3e}"),
    )
}

fn cp_implies_ks() -> Outcome {
    let mut violations = 0;
    let mut worst_choi = f64::INFINITY;
    let mut worst_search = f64::INFINITY;
    for seed in 0..50u64 {
        let terms = 2 + (seed % 4) as usize;
        let m = sample_random_map(RandomMapKind::UnitaryMixture { terms }, seed).unwrap();
        let (_, choi) = is_cp(&m, CHOI_TOL).unwrap();
        worst_choi = worst_choi.min(choi);
        let s = search_violation(&m, &SearchOptions::new(100, seed)).unwrap();
        worst_search = worst_search.min(s.best_min_eig);
        if s.found() {
            violations += 1;
        }
    }
    outcome(
        violations == 0 && worst_choi >= -CHOI_TOL,
        format!("{violations} violations in 50 maps, min Choi eig {worst_choi:.3e}, lowest search value {worst_search:.3e}"),
    )
}

fn certificate_audit() -> Outcome {
    let c3 = c3_constant(su3_constants());
    let bound = spread_bound(c3);
    let mut rng = rng_for(77, 0);
    let (mut clean, mut violated, mut invalid, mut uncertified) = (0, 0, 0, 0);
    let mut worst = f64::INFINITY;
    let mut worst_mu = Vec::new();
    for i in 0..100u64 {
        let lo = rng.random_range(0.0..=1.0 - bound);
        let mu: Vec<f64> = (0..8).map(|_| rng.random_range(lo..=lo + bound)).collect();
        if !ks3_core::certify_ks(&mu, c3).is_certified() {
            uncertified += 1;
        }
        let map = UnitalMap::from_diagonal(&mu).unwrap();
        let s = search_violation(&map, &SearchOptions::new(300, i)).unwrap();
        if s.best_min_eig < worst {
            worst = s.best_min_eig;
            worst_mu = mu.clone();
        }
        match s.witness {
            None => clean += 1,
            Some(w) => {
                let recomputed = min_eigenvalue(&ks_difference(&map, &w.x).unwrap()).unwrap();
                if recomputed < VIOLATION_THRESHOLD {
                    violated += 1;
                } else {
                    invalid += 1;
                }
            }
        }
    }
    if violated > 0 {
        let mu: Vec<String> = worst_mu.iter().map(|m| format!("{m:.4}")).collect();
        println!(
            "    finding: {violated} certified diagonal maps have a verified KS violation; worst min eig {worst:.4e} at mu = [{}]",
            mu.join(", ")
        );
    }
    outcome(
        invalid == 0 && uncertified == 0,
        format!("no violation {clean}, verified violation {violated}, invalid witness {invalid}"),
    )
}

fn normal_operators() -> Outcome {
    let r = normal_operator_audit(&catalog::transposition(), 200, 6).unwrap();
    outcome(
        r.all_psd() && r.worst_min_eig >= -NORMAL_TOL,
        format!(
            "{} of {} non-PSD, worst min eig {:.3e}",
            r.non_psd, r.samples, r.worst_min_eig
        ),
    )
}

fn contraction() -> Outcome {
    let maps = [
        catalog::transposition(),
        catalog::identity(),
        catalog::depolarizing(0.25).unwrap(),
        catalog::depolarizing(0.5).unwrap(),
        catalog::depolarizing(1.0).unwrap(),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        let r = kadison_contraction_check(m, 100, i as u64).unwrap();
        pass &= r.passed() && r.tol <= CONTRACTION_TOL;
        parts.push(format!("{} {:.6}", m.label(), r.max_ratio));
    }
    outcome(pass, format!("max ||Φ(A)||/||A||: {}", parts.join(", ")))
}

fn covariance() -> Outcome {
    let mut rng = rng_for(8, 0);
    let (mut worst_t, mut worst_sv) = (0.0f64, 0.0f64);
    for seed in 0..20u64 {
        let map = sample_random_map(RandomMapKind::Kraus { terms: 3 }, seed).unwrap();
        let (u1, u2) = (haar_unitary(&mut rng, 3), haar_unitary(&mut rng, 3));
        let conj = map.conjugated(&u1, &u2).unwrap();
        let o1 = adjoint_orthogonal(&u1, su3()).unwrap();
        let o2 = adjoint_orthogonal(&u2, su3()).unwrap();
        let t = &map.bloch().t;
        let predicted = o1.matmul(t).matmul(&o2);
        worst_t = worst_t.max((&conj.bloch().t - &predicted).frobenius_norm());
        let (a, b) = (
            singular_values(t).unwrap(),
            singular_values(&conj.bloch().t).unwrap(),
        );
        for (x, y) in a.iter().zip(&b) {
            worst_sv = worst_sv.max((x - y).abs());
        }
    }
    outcome(
        worst_t <= COVARIANCE_TOL && worst_sv <= COVARIANCE_TOL,
        format!("Bloch residual {worst_t:.2e}, singular value drift {worst_sv:.2e}"),
    )
}

fn depolarizing_boundary() -> Outcome {
    let mut last_non_cp = f64::NEG_INFINITY;
    let mut first_cp = f64::INFINITY;
    let mut mismatches = 0;
    for step in 0..=120 {
        let p = -0.2 + 0.01 * step as f64;
        let (cp, min) = is_cp(&catalog::depolarizing(p).unwrap(), CHOI_TOL).unwrap();
        // Choi spectrum: (1 - p)/3 eight times and (1 + 8p)/3 once
        let oracle = ((1.0 - p) / 3.0).min((1.0 + 8.0 * p) / 3.0);
        if (min - oracle).abs() > 1e-12 || cp != (oracle >= -CHOI_TOL) {
            mismatches += 1;
        }
        if cp {
            first_cp = first_cp.min(p);
        } else {
            last_non_cp = last_non_cp.max(p);
        }
    }
    let flip_ok =
        last_non_cp < -0.125 && first_cp > -0.125 && first_cp - last_non_cp < 0.01 + 1e-12;
    outcome(
        mismatches == 0 && flip_ok,
        format!("last non-CP p = {last_non_cp:.2}, first CP p = {first_cp:.2}, oracle mismatches {mismatches}"),
    )
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ks3");
    let runs: [&[&str]; 2] = [
        &[
            "classify",
            "catalog:unitary_conjugation(seed=5)",
            "--seed",
            "3",
            "--budget",
            "200",
        ],
        &[
            "sweep",
            "--family",
            "mu=(a,a,a,a,b,b,b,b)",
            "--a",
            "0:1:0.25",
            "--b",
            "0:1:0.25",
            "--seed",
            "9",
            "--budget",
            "100",
        ],
    ];
    let mut pass = true;
    let mut sizes = Vec::new();
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["0", "4", "0"] {
            let out = Process::new(bin)
                .args(args)
                .env("KS3_THREADS", threads)
                .output()
                .unwrap();
            pass &= out.status.success();
            outputs.push(out.stdout);
        }
        pass &= outputs.windows(2).all(|w| w[0] == w[1]) && !outputs[0].is_empty();
        sizes.push(outputs[0].len());
    }
    // the library path agrees with the binary
    let cfg = RunConfig {
        format: Format::Json,
        threads: 4,
        ..config(200, 3)
    };
    let lib = run(
        &Command::Classify {
            map: "catalog:unitary_conjugation(seed=5)".into(),
        },
        &cfg,
    )
    .unwrap();
    let bytes = emit_report(&lib, &cfg).unwrap();
    let out = Process::new(bin)
        .args(runs[0])
        .env("KS3_THREADS", "2")
        .output()
        .unwrap();
    pass &= bytes == out.stdout;
    outcome(
        pass,
        format!(
            "classify {} bytes, sweep {} bytes, serial vs 4 threads identical",
            sizes[0], sizes[1]
        ),
    )
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "transposition counterexample",
            Some(Duration::from_secs(5)),
            transposition_counterexample,
        ),
        (
            "Gell-Mann algebra",
            Some(Duration::from_secs(1)),
            gell_mann_algebra,
        ),
        (
            "expansion equality",
            Some(Duration::from_secs(10)),
            expansion_equality,
        ),
        (
            "CP implies KS",
            Some(Duration::from_secs(60)),
            cp_implies_ks,
        ),
        (
            "certificate audit",
            Some(Duration::from_secs(300)),
            certificate_audit,
        ),
        ("normal operators", None, normal_operators),
        ("Kadison contraction", None, contraction),
        ("unitary covariance", None, covariance),
        ("depolarizing CP boundary", None, depolarizing_boundary),
        ("determinism", None, determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let o = timed(limit, f);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("acceptance {:>2} {tag}: {name}: {}", i + 1, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
