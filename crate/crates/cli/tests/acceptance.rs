//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
//! its wall-clock time; the run fails if any criterion fails or overruns.
//! Built without the libtest harness so the lines are never captured.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use quasiline::action::{Generator, HoughtonElement, Letter, MarkedAction, RayPoint, Word};
use quasiline::coarse::{ends_profile, linear_growth_check, narrowness_profile};
use quasiline::cube::{
    dual_cube_complex, facing_triples, hyperplanes, is_median, line_window, path_graph, spider,
    staircase_window, tripod, MedianGraph, MedianVerdict, PocSet, Sign, SkewerVerdict,
};
use quasiline::schreier::{build_ball, growth_table};

type Check = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn quasiline(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_quasiline"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

/// Runs `f` and fails it if it overran `limit`.
fn timed<F: FnOnce() -> Check>(limit: Duration, f: F) -> (Check, Duration) {
    let start = Instant::now();
    let result = f();
    let took = start.elapsed();
    let result =
        result.and_then(|()| ensure(took <= limit, || format!("took {took:?}, limit {limit:?}")));
    (result, took)
}

fn ends_of_houghton() -> Check {
    for n in 2..=4u32 {
        let start = Instant::now();
        let n_text = n.to_string();
        let out = quasiline(&[
            "ends", "--family", "houghton", "--n", &n_text, "--r", "2", "--radius", "12",
        ])?;
        let took = start.elapsed();
        ensure(out.trim() == n_text, || format!("n = {n}: printed {out:?}"))?;
        ensure(took < Duration::from_secs(1), || {
            format!("n = {n}: took {took:?}")
        })?;
    }
    Ok(())
}

fn double_cosets() -> Check {
    for n in ["2", "3"] {
        let out = quasiline(&[
            "--json",
            "double-cosets",
            "--n",
            n,
            "--budget",
            "6",
            "--radius",
            "12",
        ])?;
        let report: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let result = &report["result"];
        let classes = result["classes"].as_array().ok_or("no classes")?;
        ensure(classes.len() == 2, || {
            format!("n = {n}: {} classes", classes.len())
        })?;
        ensure(result["stable"] == true, || format!("n = {n}: not stable"))?;
        let base = classes
            .iter()
            .find(|c| c["min_sphere"] == 0)
            .ok_or_else(|| format!("n = {n}: no basepoint class"))?;
        ensure(base["members"].as_array().map(Vec::len) == Some(1), || {
            format!("n = {n}: basepoint class {}", base["members"])
        })?;
    }
    Ok(())
}

fn linear_growth() -> Check {
    for n in [2u32, 3] {
        let action = MarkedAction::houghton(n).map_err(|e| e.to_string())?;
        let ball = build_ball(&action, RayPoint::new(1, 1), 64).map_err(|e| e.to_string())?;
        let evidence = linear_growth_check(&growth_table(&ball)).map_err(|e| e.to_string())?;
        ensure(evidence.holds, || format!("n = {n}: holds = false"))?;
        ensure(
            evidence.c_estimate <= Ratio::from_integer(u64::from(n) + 1),
            || format!("n = {n}: C = {}", evidence.c_estimate),
        )?;
    }
    Ok(())
}

fn narrowness() -> Check {
    let y3 = build_ball(&MarkedAction::houghton(3).unwrap(), RayPoint::new(1, 1), 12).unwrap();
    let report = narrowness_profile(&y3, 1, 2).map_err(|e| e.to_string())?;
    ensure(report.witness_count == 3, || {
        format!("Y_3: {}", report.witness_count)
    })?;
    ensure(report.certificate.len() == 3, || {
        "Y_3: certificate size".into()
    })?;
    report.verify(&y3)?;

    let line = build_ball(&MarkedAction::line().unwrap(), RayPoint::new(1, 1), 12).unwrap();
    let report = narrowness_profile(&line, 2, 2).map_err(|e| e.to_string())?;
    ensure(report.witness_count == 4, || {
        format!("line: {}", report.witness_count)
    })?;
    report.verify(&line)
}

fn extended_action_ends() -> Check {
    let sigma = quasiline::action::parse_cycles(3, "(2,3)").map_err(|e| e.to_string())?;
    let action = MarkedAction::houghton_extended(3, &sigma).map_err(|e| e.to_string())?;
    let ball = build_ball(&action, RayPoint::new(1, 1), 12).map_err(|e| e.to_string())?;
    let ends = ends_profile(&ball, &[2]).map_err(|e| e.to_string())?;
    ensure(ends.count(2) == Some(2), || format!("{:?}", ends.count(2)))
}

fn poc_set_duals() -> Check {
    let cube = dual_cube_complex(&PocSet::crossing(3)).map_err(|e| e.to_string())?;
    ensure(
        cube.graph.vertex_count() == 8 && cube.graph.edges().len() == 12,
        || {
            format!(
                "{} vertices, {} edges",
                cube.graph.vertex_count(),
                cube.graph.edges().len()
            )
        },
    )?;
    ensure(
        matches!(is_median(&cube.graph), Ok(MedianVerdict::Median)),
        || "3-cube not median".into(),
    )?;

    let chain = dual_cube_complex(&PocSet::chain(3)).map_err(|e| e.to_string())?;
    let degrees: Vec<usize> = (0..chain.graph.vertex_count())
        .map(|v| chain.graph.neighbors(v).len())
        .collect();
    ensure(
        chain.graph.vertex_count() == 4
            && chain.graph.edges().len() == 3
            && degrees.iter().filter(|&&d| d == 1).count() == 2,
        || format!("chain dual degrees {degrees:?}"),
    )?;

    for k in 0..=10 {
        let dual = dual_cube_complex(&PocSet::crossing(k)).map_err(|e| e.to_string())?;
        ensure(dual.graph.vertex_count() == 1 << k, || {
            format!("k = {k}: {} vertices", dual.graph.vertex_count())
        })?;
    }
    Ok(())
}

fn facing() -> Check {
    let median = |g| MedianGraph::new(g).map_err(|e| e.to_string());
    let t = hyperplanes(&median(tripod())?);
    ensure(facing_triples(&t, None).len() == 1, || "tripod".into())?;
    let p = hyperplanes(&median(path_graph(5))?);
    ensure(facing_triples(&p, None).is_empty(), || "path_5".into())?;
    let s = hyperplanes(&median(spider(4, 2))?);
    let inner: Vec<usize> = s
        .iter()
        .filter(|h| h.support.contains(&0))
        .map(|h| h.id)
        .collect();
    let count = facing_triples(&s, Some(&inner)).len();
    ensure(count == 4, || format!("spider(4,2) inner: {count}"))
}

fn transfer_on_the_line() -> Check {
    let w = line_window(20);
    let h = w.hyperplane_at("0", "1").map_err(|e| e.to_string())?;
    for (p, want) in [(1i64, -1i64), (2, -2), (0, 0)] {
        let t = w.transfer(h, p).map_err(|e| e.to_string())?;
        ensure(t.verified && t.value == want, || {
            format!("tr(shift^{p}) = {t:?}")
        })?;
    }
    match w.skewer_check(h, 3).map_err(|e| e.to_string())? {
        SkewerVerdict::Skewers {
            power: 1,
            direction: Sign::Plus,
        } => Ok(()),
        other => Err(format!("skewer verdict {other:?}")),
    }
}

fn symdiff_members_are_skewered() -> Check {
    let w = staircase_window(20);
    let mut resolvable = 0;
    for h in 0..w.hyperplanes().len() {
        for p in 1..=3i64 {
            let Ok(d) = w.hyperplane_symdiff(h, p) else {
                continue;
            };
            if !d.verified {
                continue;
            }
            for &m in &d.members {
                match w.skewer_check(m, 4).map_err(|e| e.to_string())? {
                    SkewerVerdict::Skewers { .. } => resolvable += 1,
                    // the window ran out before any containment could be read
                    SkewerVerdict::Inconclusive
                        if (1..=4)
                            .any(|n| !w.power(m, n).is_some_and(|(k, _)| w.is_resolved(k))) => {}
                    other => return Err(format!("h = {h}, p = {p}, member {m}: {other:?}")),
                }
            }
        }
    }
    ensure(resolvable > 0, || "no resolvable members".into())
}

fn element(action: &MarkedAction, word: &Word) -> Result<HoughtonElement, TestCaseError> {
    action
        .word_element(word)
        .map_err(|e| TestCaseError::fail(e.to_string()))
}

fn algebra() -> Check {
    let sigma = quasiline::action::parse_cycles(3, "(2,3)").unwrap();
    let gens = vec![
        ("g1", HoughtonElement::houghton_generator(1, 3).unwrap()),
        ("g2", HoughtonElement::houghton_generator(2, 3).unwrap()),
        ("beta", HoughtonElement::beta(3).unwrap()),
        ("alpha", HoughtonElement::alpha(&sigma).unwrap()),
    ];
    let action = MarkedAction::new(
        3,
        gens.into_iter()
            .map(|(label, element)| Generator {
                label: label.into(),
                element,
            })
            .collect(),
    )
    .map_err(|e| e.to_string())?;

    let letter = (0usize..4, any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv));
    let word = prop::collection::vec(letter, 0..=6).prop_map(Word);
    let mut runner = TestRunner::new(Config {
        cases: 500,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(word.clone(), word.clone(), word), |(a, b, c)| {
            let (x, y, z) = (
                element(&action, &a)?,
                element(&action, &b)?,
                element(&action, &c)?,
            );
            let fail = |e: quasiline::action::ElementError| TestCaseError::fail(e.to_string());

            let left = x.compose(&y).map_err(fail)?.compose(&z).map_err(fail)?;
            let right = x.compose(&y.compose(&z).map_err(fail)?).map_err(fail)?;
            prop_assert!(left.canonical_equal(&right), "associativity");

            let id = HoughtonElement::identity(3).unwrap();
            prop_assert!(x.compose(&x.invert()).map_err(fail)?.canonical_equal(&id));
            prop_assert!(x.invert().compose(&x).map_err(fail)?.canonical_equal(&id));
            prop_assert_eq!(element(&action, &a.concat(&a.inverse()))?, id);

            prop_assert_eq!(x.translation().iter().sum::<i64>(), 0);

            let text = x.to_string();
            let parsed: HoughtonElement = text.parse().map_err(fail)?;
            prop_assert!(parsed.canonical_equal(&x));
            prop_assert_eq!(parsed.to_string(), text);

            for pos in 1..=8 {
                for ray in 1..=3 {
                    let p = RayPoint::new(ray, pos);
                    prop_assert_eq!(x.apply(p).map_err(fail)?, action.act(p, &a));
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 ends of Y_n, n = 2, 3, 4", 3, ends_of_houghton),
        ("2 double cosets, n = 2, 3", 5, double_cosets),
        ("3 linear growth of Y_2, Y_3 to R = 64", 5, linear_growth),
        ("4 narrowness witnesses", 10, narrowness),
        ("5 extended action ends", 5, extended_action_ends),
        ("6 poc-set duals", 10, poc_set_duals),
        ("7 facing triples", 1, facing),
        ("8 transfer on the line window", 1, transfer_on_the_line),
        (
            "9 symdiff members are skewered",
            10,
            symdiff_members_are_skewered,
        ),
        ("10 element algebra, 500 words", 5, algebra),
    ];
    let mut failed = Vec::new();
    for (name, secs, check) in criteria {
        let (result, took) = timed(Duration::from_secs(secs), check);
        match result {
            Ok(()) => println!("PASS criterion {name} ({:.3}s)", took.as_secs_f64()),
            Err(e) => {
                println!("FAIL criterion {name} ({:.3}s): {e}", took.as_secs_f64());
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
