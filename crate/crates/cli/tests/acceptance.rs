//! Acceptance suite: one pass/fail line per criterion.
//!
//! Run with `cargo test -p hagge-cli --test acceptance -- --nocapture` to
//! see the lines. Everything runs on pinned seeds and pinned tolerances;
//! the exact lane asserts exact rational equality, the double lane the
//! crate-wide 1e-9 relative tolerance.

use hagge_core::construction::{
    classic_hagge, construct, AnyScene, Generator, PathKind, Scene, TriangleParams,
};
use hagge_core::geom::{on_circle, Circle, Point};
use hagge_core::io::scene_from_value;
use hagge_core::scalar::{rat, Rat};
use hagge_core::verify::{
    random_scene, trial_seed, verify_arbitrary_batch, verify_batch, verify_scene, FramePolicy,
    Report, ReportStatus, ScenePolicy, VerifyOptions,
};
use std::time::{Duration, Instant};

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($msg)+)),
        }
    };
}

const BATCH_SEED: u64 = 42;
const CENTER_SEED: u64 = 43;
const HAGGE_SEED: u64 = 44;
const FRAME_SEED: u64 = 45;

fn s1_scene() -> Scene<Rat> {
    Scene::canonical(
        TriangleParams::new(rat(0, 1), rat(1, 1), rat(-1, 1)).unwrap(),
        rat(1, 2),
        Generator::D(Point::new(rat(0, 1), rat(1, 2))),
    )
}

fn ratp(nx: i64, dx: i64, ny: i64, dy: i64) -> Point<Rat> {
    Point::new(rat(nx, dx), rat(ny, dy))
}

fn check_batch_passes(report: &Report, expected_names: &[&str]) -> Result<(), String> {
    if report.status != ReportStatus::Pass {
        let failing: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{}: {:?}", c.name, c.residual))
            .collect();
        return Err(format!("batch FAIL: {}", failing.join("; ")));
    }
    for name in expected_names {
        if !report.checks.iter().any(|c| c.name == *name && c.pass) {
            return Err(format!("invariant {name} missing from the report"));
        }
    }
    Ok(())
}

/// Fixture S1: exact construction values on both paths.
fn criterion_1() -> Result<String, String> {
    let start = Instant::now();
    let scene = s1_scene();
    for path in [PathKind::ClosedForm, PathKind::Geometric] {
        let out = construct(&scene, path).map_err(|e| e.to_string())?;
        ensure!(
            out.special_points[0] == ratp(-1, 2, 0, 1),
            "{path:?}: U wrong"
        );
        ensure!(
            out.special_points[1] == ratp(-1, 10, 4, 5),
            "{path:?}: V wrong"
        );
        ensure!(
            out.special_points[2] == ratp(-9, 10, 4, 5),
            "{path:?}: W wrong"
        );
        ensure!(
            out.chord_midpoints[0] == Point::origin(),
            "{path:?}: U' wrong"
        );
        ensure!(
            out.chord_midpoints[1] == ratp(1, 5, 2, 5),
            "{path:?}: V' wrong"
        );
        ensure!(
            out.chord_midpoints[2] == ratp(-1, 5, 2, 5),
            "{path:?}: W' wrong"
        );
        let special = out
            .special_circle
            .as_ref()
            .ok_or("special circle missing")?;
        ensure!(
            special.center() == ratp(-1, 2, 1, 2),
            "{path:?}: special center wrong"
        );
        ensure!(
            special.radius_sq() == rat(1, 4),
            "{path:?}: special r^2 wrong"
        );
        let midpoint = out
            .midpoint_circle
            .as_ref()
            .ok_or("midpoint circle missing")?;
        ensure!(
            *midpoint == Circle::new(rat(0, 1), rat(-1, 4), rat(0, 1)),
            "{path:?}: midpoint circle is not x^2+y^2-y/2=0"
        );
    }
    let elapsed = start.elapsed();
    ensure!(
        elapsed < Duration::from_secs(1),
        "took {elapsed:?}, budget 1 s"
    );
    Ok(format!("exact on both paths, {elapsed:?}"))
}

/// 1,000 seeded random canonical rational scenes pass every invariant
/// exactly.
fn criterion_2() -> Result<(Report, String), String> {
    let start = Instant::now();
    let report = verify_batch(
        1000,
        BATCH_SEED,
        &ScenePolicy::default(),
        &VerifyOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    check_batch_passes(
        &report,
        &[
            "closed_form_matches_geometric",
            "special_circle_matches_oracle",
            "special_circle_contains_p",
            "special_circle_center_is_k",
            "special_circle_radius_sq_is_od_sq",
            "midpoint_circle_matches_oracle",
            "midpoint_circle_through_o_and_d",
            "midpoint_circle_center_is_od_midpoint",
            "homothety_factor_two_maps_circles",
            "q_to_special_ratio_two",
            "chord_midpoints_independent_of_k",
            "classic_hagge_contains_orthocenter",
        ],
    )?;
    ensure!(report.trials == 1000, "trials recorded wrong");
    let elapsed = start.elapsed();
    ensure!(
        elapsed < Duration::from_secs(30),
        "took {elapsed:?}, budget 30 s"
    );
    Ok((
        report,
        format!("1000/1000 scenes, every invariant exact, {elapsed:?}"),
    ))
}

/// The deliberately misprinted circle equation is caught by the oracle on
/// the same 1,000 scenes, with a replayable witness; the corrected form
/// failed nowhere (criterion 2).
fn criterion_3() -> Result<(Report, String), String> {
    let opts = VerifyOptions {
        misprinted_circle: true,
    };
    let report = verify_batch(1000, BATCH_SEED, &ScenePolicy::default(), &opts)
        .map_err(|e| e.to_string())?;
    ensure!(
        report.status == ReportStatus::Fail,
        "misprint went undetected"
    );
    let failing = report
        .checks
        .iter()
        .find(|c| c.name == "misprinted_special_circle_matches_oracle" && !c.pass)
        .ok_or("misprint check missing or passing")?;
    // Only the injected check may fail; the corrected form is clean.
    for check in &report.checks {
        if check.name != "misprinted_special_circle_matches_oracle" {
            ensure!(check.pass, "{} failed unexpectedly", check.name);
        }
    }

    // The witness survives report serialization and replays to the same
    // failure, and it is a scene outside the misprint's blind spots.
    let value = report.to_value();
    let witness_value = value["checks"]
        .as_array()
        .and_then(|checks| {
            checks
                .iter()
                .find(|c| c["name"] == "misprinted_special_circle_matches_oracle")
        })
        .map(|c| c["witness"].clone())
        .ok_or("witness missing from serialized report")?;
    let witness = scene_from_value(&witness_value).map_err(|e| e.to_string())?;
    let AnyScene::Exact(scene) = witness else {
        return Err("witness must be an exact scene".into());
    };
    let d = scene.generator.resolve_d(&scene.p, &Point::origin());
    ensure!(
        d.y != rat(0, 1) && d.x != rat(1, 1),
        "witness scene is in the misprint's blind spot"
    );
    let replay = verify_scene(&scene, &opts);
    ensure!(
        replay.status == ReportStatus::Fail,
        "witness did not replay to a failure"
    );
    ensure!(
        replay
            .checks
            .iter()
            .any(|c| c.name == "misprinted_special_circle_matches_oracle" && !c.pass),
        "replay failed a different check"
    );
    let _ = failing;
    Ok((
        report,
        "misprint caught, witness replayed, corrected form clean".into(),
    ))
}

/// 200 scenes with the target at the circumcenter: the special circle is
/// centered exactly at D and passes exactly through O.
fn criterion_4() -> Result<(Report, String), String> {
    let policy = ScenePolicy {
        fixed_k: Some(rat(0, 1)),
        ..ScenePolicy::default()
    };
    for i in 0..200u64 {
        let scene = random_scene(trial_seed(CENTER_SEED, i), &policy).map_err(|e| e.to_string())?;
        ensure!(scene.p == Point::origin(), "scene {i}: target not at O");
        let out = construct(&scene, PathKind::Geometric).map_err(|e| e.to_string())?;
        let circle = out
            .special_circle
            .as_ref()
            .ok_or("special circle missing")?;
        ensure!(
            circle.center() == out.d,
            "scene {i}: center is not exactly D"
        );
        ensure!(
            circle.eval(&Point::origin()) == rat(0, 1),
            "scene {i}: circle misses O"
        );
    }
    let report = verify_batch(200, CENTER_SEED, &policy, &VerifyOptions::default())
        .map_err(|e| e.to_string())?;
    check_batch_passes(
        &report,
        &["special_circle_center_is_k", "special_circle_contains_p"],
    )?;
    Ok((
        report,
        "200/200 scenes: center exactly D, exactly through O".into(),
    ))
}

/// Classic construction: 500 random scenes plus the hand-computed fixture.
fn criterion_5() -> Result<(Report, String), String> {
    let report = verify_batch(
        500,
        HAGGE_SEED,
        &ScenePolicy::default(),
        &VerifyOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    check_batch_passes(&report, &["classic_hagge_contains_orthocenter"])?;

    let vertices = [ratp(0, 1, 1, 1), ratp(1, 1, 0, 1), ratp(-1, 1, 0, 1)];
    let hagge = classic_hagge(&vertices, &ratp(0, 1, 1, 2)).map_err(|e| e.to_string())?;
    ensure!(
        hagge.circle.center() == ratp(0, 1, 2, 3),
        "fixture center wrong"
    );
    ensure!(hagge.circle.radius_sq() == rat(1, 9), "fixture r^2 wrong");
    ensure!(
        hagge.orthocenter == ratp(0, 1, 1, 1),
        "fixture orthocenter wrong"
    );
    ensure!(
        on_circle(&hagge.circle, &hagge.orthocenter),
        "fixture circle misses the orthocenter"
    );
    Ok((
        report,
        "500/500 scenes contain the orthocenter exactly; fixture matches".into(),
    ))
}

/// Arbitrary-frame double scenes: geometric path matches the
/// inverse-transformed canonical closed forms within 1e-9, and predicted
/// circle membership residuals stay below 1e-9.
fn criterion_6() -> Result<(Report, String), String> {
    let report = verify_arbitrary_batch(500, FRAME_SEED, &FramePolicy::default())
        .map_err(|e| e.to_string())?;
    check_batch_passes(
        &report,
        &[
            "frame_points_agree",
            "frame_circles_agree",
            "frame_special_circle_membership",
            "frame_midpoint_circle_membership",
        ],
    )?;
    let worst = report
        .checks
        .iter()
        .filter_map(|c| c.residual_value)
        .fold(0.0_f64, f64::max);
    ensure!(worst < 1e-9, "worst residual {worst:.3e} exceeds 1e-9");
    Ok((
        report,
        format!("500/500 scenes, worst residual {worst:.3e}"),
    ))
}

/// Determinism: repeating criteria 2-6 with identical seeds reproduces the
/// reports byte for byte, and rendering reproduces the frozen golden SVG.
fn criterion_7(first_runs: &[(&str, String)]) -> Result<String, String> {
    for (label, first_json) in first_runs {
        let again = match *label {
            "batch" => verify_batch(
                1000,
                BATCH_SEED,
                &ScenePolicy::default(),
                &VerifyOptions::default(),
            ),
            "misprint" => verify_batch(
                1000,
                BATCH_SEED,
                &ScenePolicy::default(),
                &VerifyOptions {
                    misprinted_circle: true,
                },
            ),
            "center" => verify_batch(
                200,
                CENTER_SEED,
                &ScenePolicy {
                    fixed_k: Some(rat(0, 1)),
                    ..ScenePolicy::default()
                },
                &VerifyOptions::default(),
            ),
            "hagge" => verify_batch(
                500,
                HAGGE_SEED,
                &ScenePolicy::default(),
                &VerifyOptions::default(),
            ),
            "frame" => verify_arbitrary_batch(500, FRAME_SEED, &FramePolicy::default()),
            _ => unreachable!(),
        }
        .map_err(|e| e.to_string())?;
        ensure!(
            again.to_json() == *first_json,
            "{label} report changed between identical runs"
        );
    }

    let fixtures = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let scene_text =
        std::fs::read_to_string(fixtures.join("s1_scene.json")).map_err(|e| e.to_string())?;
    let scene = hagge_core::io::scene_from_str(&scene_text).map_err(|e| e.to_string())?;
    let golden =
        std::fs::read_to_string(fixtures.join("s1_golden.svg")).map_err(|e| e.to_string())?;
    for _ in 0..2 {
        let figure = hagge_cli::render_scene(&scene, &hagge_cli::FigureOptions::default())
            .map_err(|e| e.to_string())?;
        ensure!(
            figure.svg == golden,
            "rendered SVG differs from the frozen golden file"
        );
    }
    Ok("reports and golden SVG byte-identical across repeat runs".into())
}

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    let mut report_jsons: Vec<(&str, String)> = Vec::new();

    let mut record = |n: usize, label: &str, result: Result<String, String>| match result {
        Ok(detail) => println!("criterion {n} ({label}): PASS — {detail}"),
        Err(reason) => {
            println!("criterion {n} ({label}): FAIL — {reason}");
            failures.push(format!("criterion {n}: {reason}"));
        }
    };

    record(1, "fixture S1 exact values", criterion_1());

    match criterion_2() {
        Ok((report, detail)) => {
            report_jsons.push(("batch", report.to_json()));
            record(2, "randomized exact verification", Ok(detail));
        }
        Err(e) => record(2, "randomized exact verification", Err(e)),
    }

    match criterion_3() {
        Ok((report, detail)) => {
            report_jsons.push(("misprint", report.to_json()));
            record(3, "misprinted circle equation detected", Ok(detail));
        }
        Err(e) => record(3, "misprinted circle equation detected", Err(e)),
    }

    match criterion_4() {
        Ok((report, detail)) => {
            report_jsons.push(("center", report.to_json()));
            record(4, "target at circumcenter", Ok(detail));
        }
        Err(e) => record(4, "target at circumcenter", Err(e)),
    }

    match criterion_5() {
        Ok((report, detail)) => {
            report_jsons.push(("hagge", report.to_json()));
            record(5, "classic construction through orthocenter", Ok(detail));
        }
        Err(e) => record(5, "classic construction through orthocenter", Err(e)),
    }

    match criterion_6() {
        Ok((report, detail)) => {
            report_jsons.push(("frame", report.to_json()));
            record(6, "arbitrary-frame double path", Ok(detail));
        }
        Err(e) => record(6, "arbitrary-frame double path", Err(e)),
    }

    record(7, "determinism", criterion_7(&report_jsons));

    assert!(
        failures.is_empty(),
        "acceptance failures:\n{}",
        failures.join("\n")
    );
}
