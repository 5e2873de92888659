//! End-to-end acceptance checks. Runs without the libtest harness so the
//! per-criterion lines always reach the test log.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use common::{assert_valid, json, qmk, qmk_env};
use qmk_core::quiver::euler_form;
use qmk_core::semiinv::{lemma0_invariants, random_point};
use qmk_core::smoothness::{
    lemma2_audit, pairwise_test, Certificate, PairwiseOutcome, SweepBounds, VerdictRecord,
};
use qmk_core::stability::moduli_dimension;
use qmk_core::suites::run_suite;
use qmk_core::{DimVector, ExceptionRule, Int};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 42;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn alpha(s: &str) -> DimVector {
    s.parse().expect("valid dimension vector")
}

fn families(n_max: u32) -> Vec<(DimVector, Int)> {
    let mut out: Vec<(DimVector, Int)> = (1..n_max)
        .map(|m| {
            (
                DimVector::new(vec![m, 1], vec![1; m as usize + 1]),
                Int::from(m),
            )
        })
        .collect();
    out.push((alpha("2,2;2,1,1"), 3));
    out.push((alpha("4,2;2,2,2"), 5));
    out
}

fn claim<'a>(report: &'a Value, id: &str) -> Option<&'a Value> {
    report["claims"].as_array()?.iter().find(|c| c["id"] == id)
}

fn final_theorem() -> Outcome {
    let args = [
        "sweep", "--p-max", "5", "--q-max", "6", "--n-max", "12", "--format", "json",
    ];
    let start = Instant::now();
    let out = qmk_env(&args, &[("QMK_THREADS", "1")]);
    let elapsed = start.elapsed();
    ensure(out.status.success(), "sweep exited non-zero")?;
    let report = json(&out);
    assert_valid("audit_report.schema.json", &report);

    let mut expected = BTreeSet::new();
    for m in 1..=5u32 {
        expected.insert((
            format!("{m},1;{}", vec!["1"; m as usize + 1].join(",")),
            Int::from(m),
        ));
    }
    expected.insert(("2,2;2,1,1".to_string(), 3));
    expected.insert(("4,2;2,2,2".to_string(), 5));
    let found: BTreeSet<(String, Int)> = report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["kind"] == "SmoothProjSpace")
        .map(|v| {
            (
                v["alpha"].as_str().unwrap().to_string(),
                Int::from(v["dim"].as_i64().unwrap()),
            )
        })
        .collect();
    ensure(found == expected, format!("smooth set {found:?}"))?;
    ensure(elapsed.as_secs() < 300, format!("took {elapsed:?}"))?;

    let strict = qmk(&[
        "sweep",
        "--p-max",
        "5",
        "--q-max",
        "6",
        "--n-max",
        "12",
        "--strict-exception",
        "--format",
        "json",
    ]);
    ensure(strict.status.success(), "strict sweep exited non-zero")?;
    let strict = json(&strict);
    let ft = claim(&strict, "final-theorem").ok_or("no final-theorem claim")?;
    ensure(
        ft["status"] == "DISPUTED",
        format!("strict final-theorem is {}", ft["status"]),
    )?;
    let mentions = ft["evidence"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e.as_str().unwrap().contains("1,1;1,1"));
    ensure(mentions, "strict evidence does not name 1,1;1,1")?;
    Ok(format!(
        "{} smooth vectors match, {:.1}s single-threaded, strict reading DISPUTED",
        found.len(),
        elapsed.as_secs_f64()
    ))
}

fn pairwise_certificates() -> Outcome {
    let out = qmk(&["classify", "4,3;3,2,2", "--format", "json"]);
    assert_valid("verdict.schema.json", &json(&out));
    let record: VerdictRecord = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(record.kind == "NonSmoothCertified", record.kind.clone())?;
    let cert: Certificate = record.certificate.ok_or("no certificate")?;
    let w = serde_json::to_value(&cert.witness).unwrap();
    ensure(
        w["type"] == "two-vertex" && w["k"] == 2,
        format!("witness {w}"),
    )?;
    ensure(
        cert.replay(ExceptionRule::Corrected),
        "stored certificate does not replay",
    )?;
    let Some(PairwiseOutcome::Fail { beta, gamma, k }) = record.pairwise else {
        return Err("pairwise outcome missing".into());
    };
    ensure(
        k == 2 && -euler_form(&beta, &gamma).unwrap() == 2,
        "k does not re-derive",
    )?;

    let members = families(12);
    for (a, _) in &members {
        let outcome = pairwise_test(a, ExceptionRule::Corrected).map_err(|e| e.to_string())?;
        ensure(
            outcome == PairwiseOutcome::Pass,
            format!("{a} fails the pairwise test"),
        )?;
    }
    Ok(format!(
        "k=2 pair {beta} + {gamma} replays; {} family members pass",
        members.len()
    ))
}

fn reorder(dims: &[u64], arrows: &[Vec<u64>], order: &[usize]) -> (Vec<u64>, Vec<Vec<u64>>) {
    let d = order.iter().map(|&i| dims[i]).collect();
    let a = order
        .iter()
        .map(|&i| order.iter().map(|&j| arrows[i][j]).collect())
        .collect();
    (d, a)
}

fn local_figure(
    alpha: &str,
    parts: &str,
    drawn_dims: &[u64],
    drawn: &[Vec<u64>],
) -> Result<(), String> {
    let v = json(&qmk(&[
        "local", alpha, "--parts", parts, "--format", "json",
    ]));
    assert_valid("local_quiver.schema.json", &v);
    let dims: Vec<u64> = serde_json::from_value(v["dims"].clone()).unwrap();
    let arrows: Vec<Vec<u64>> = serde_json::from_value(v["arrows"].clone()).unwrap();
    // vertex dimensions are distinct in both figures, so they fix the labelling
    let order: Option<Vec<usize>> = drawn_dims
        .iter()
        .map(|d| dims.iter().position(|x| x == d))
        .collect();
    let order = order.ok_or(format!("dims {dims:?}"))?;
    let (d, a) = reorder(&dims, &arrows, &order);
    ensure(
        d == drawn_dims && a == drawn,
        format!("{alpha}: got {d:?} {a:?}"),
    )
}

fn golden_figures() -> Outcome {
    local_figure(
        "3,3;3,2,1",
        "1,0;0,0,1 x1 + 1,0;0,1,0 x2 + 0,1;1,0,0 x3",
        &[1, 3, 2],
        &[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
    )?;
    local_figure(
        "4,4;4,3,1",
        "1,1;1,0,1 x1 + 1,1;1,1,0 x3",
        &[1, 3],
        &[vec![1, 1], vec![1, 1]],
    )?;
    Ok("path 1-3-2 and looped pair (1,3) match exactly".into())
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn lemma2() -> Outcome {
    let mut examined = 0;
    for n in 1..=12u32 {
        let parts = partitions(n, n);
        for a in &parts {
            for b in &parts {
                if a.len() < 2 || b.len() < 2 || a[0] + b[0] > n {
                    continue;
                }
                if a[0] != a[1] || b[0] != b[1] || a[0] + b[0] != n {
                    continue;
                }
                examined += 1;
                let tail_zero = a.len() == 2 && b.len() == 2;
                ensure(
                    tail_zero && 2 * a[0] == n,
                    format!("counterexample {a:?};{b:?}"),
                )?;
            }
        }
    }
    let lib = lemma2_audit(SweepBounds {
        p_max: 5,
        q_max: 6,
        n_max: 12,
    });
    ensure(
        lib.counterexamples.is_empty(),
        format!("{:?}", lib.counterexamples),
    )?;
    Ok(format!(
        "{examined} vectors (any length), {} within sweep bounds, no counterexamples",
        lib.examined
    ))
}

fn euler_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..1000 {
        let p = rng.gen_range(1..=5);
        let q = rng.gen_range(1..=6);
        let mut draw =
            |len: usize| -> Vec<u32> { (0..len).map(|_| rng.gen_range(0..=7)).collect() };
        let a1 = DimVector::new(draw(p), draw(q));
        let a2 = DimVector::new(draw(p), draw(q));
        // E = I - adjacency, vertices ordered left then right
        let v = p + q;
        let flat = |a: &DimVector| -> Vec<Int> {
            a.left
                .iter()
                .chain(&a.right)
                .map(|&x| Int::from(x))
                .collect()
        };
        let (x, y) = (flat(&a1), flat(&a2));
        let mut acc: Int = 0;
        for i in 0..v {
            for j in 0..v {
                let adj = Int::from(i < p && j >= p);
                let e = Int::from(i == j) - adj;
                acc += x[i] * e * y[j];
            }
        }
        let got = euler_form(&a1, &a2).map_err(|e| e.to_string())?;
        ensure(got == acc, format!("{a1} {a2}: {got} vs {acc}"))?;
    }
    let suite = run_suite("euler", SEED).unwrap();
    ensure(suite.passed(), suite.summary())?;
    Ok("1000 pairs agree with the block matrix form".into())
}

fn semi_invariants() -> Outcome {
    let mut lines = Vec::new();
    for (name, min_trials) in [
        ("equivariance", 500),
        ("qm-witness", 600),
        ("in-u", 200),
        ("qiii-jacobian", 100),
    ] {
        let r = run_suite(name, SEED).unwrap();
        ensure(r.passed(), r.summary())?;
        ensure(
            r.trials >= min_trials,
            format!("{name}: only {} trials", r.trials),
        )?;
        lines.push(format!("{name} {}", r.trials));
    }
    let out = qmk(&[
        "verify",
        "--suite",
        "qm-witness",
        "--seed",
        "42",
        "--format",
        "json",
    ]);
    ensure(out.status.success(), "verify qm-witness failed")?;
    assert_valid("verify_report.schema.json", &json(&out));
    Ok(lines.join(", "))
}

fn determinantal() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let k = 3;
    for _ in 0..100 {
        let arrows = random_point(2 * k, &mut rng);
        let (_, x) = lemma0_invariants(k, 0, &arrows).map_err(|e| e.to_string())?;
        ensure(x.rank() <= 1, "rank(X) > 1")?;
        for i in 0..k {
            for j in 0..k {
                for kk in 0..k {
                    for l in 0..k {
                        let lhs = &x[(i, j)] * &x[(kk, l)];
                        let rhs = &x[(i, l)] * &x[(kk, j)];
                        ensure(lhs == rhs, format!("X{i}{j}X{kk}{l} != X{i}{l}X{kk}{j}"))?;
                    }
                }
            }
        }
        // triangle on three one-dimensional vertices, one arrow each way
        let a = random_point(6, &mut rng);
        let (ij, ji, jk, kj, ik, ki) = (&a[0], &a[1], &a[2], &a[3], &a[4], &a[5]);
        let (tx, ty, tz) = (ij * ji, jk * kj, ik * ki);
        let t = ij * jk * ki;
        let t2 = ik * kj * ji;
        ensure(&t * &t2 == &tx * &ty * &tz, "t t' != x y z")?;
    }
    for name in ["lemma0", "triangle"] {
        let r = run_suite(name, SEED).unwrap();
        ensure(r.passed(), r.summary())?;
    }
    Ok("100 trials each, rank(X) <= 1 and t t' = x y z".into())
}

fn dimension_formula() -> Outcome {
    let members = families(12);
    for (a, want) in &members {
        let got = moduli_dimension(a, ExceptionRule::Corrected).map_err(|e| e.to_string())?;
        ensure(got == *want, format!("{a}: {got} != {want}"))?;
    }
    Ok(format!("{} family members", members.len()))
}

fn honest_audit() -> Outcome {
    let args = ["sweep", "--format", "json"];
    let a = qmk(&args);
    let b = qmk(&args);
    ensure(
        a.status.code() == Some(0),
        format!("exit {:?}", a.status.code()),
    )?;
    ensure(a.stdout == b.stdout, "reports differ between runs")?;
    let report = json(&a);
    let survivors = claim(&report, "lemma4-survivors").ok_or("no lemma4-survivors claim")?;
    ensure(
        survivors["status"] == "DISPUTED",
        format!("{}", survivors["status"]),
    )?;
    let names_322 = survivors["evidence"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e.as_str().unwrap().contains("3,2;2,2,1"));
    ensure(names_322, "3,2;2,2,1 not listed")?;
    let refuted = report["claims"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["status"] == "REFUTED");
    ensure(!refuted, "a claim is REFUTED")?;
    let stderr = String::from_utf8_lossy(&a.stderr);
    ensure(stderr.contains("disputed"), "no DISPUTED warning on stderr")?;
    let claims = report["claims"].as_array().unwrap().len();
    Ok(format!(
        "{claims} claims, lemma4-survivors DISPUTED, exit 0"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("final theorem reproduction", final_theorem),
        ("pairwise certificates", pairwise_certificates),
        ("local quiver golden figures", golden_figures),
        ("lemma 2 audit", lemma2),
        ("euler form oracle", euler_oracle),
        ("semi-invariant suite", semi_invariants),
        ("determinantal relations", determinantal),
        ("dimension formula", dimension_formula),
        ("honest audit", honest_audit),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
