//! Seeded random scenes, invariant execution, and reports.
//!
//! Every claim the construction makes is a polynomial identity in the
//! scene parameters `(a, b, c, m, n, k)`. The exact lane therefore runs
//! each check with exact rational arithmetic on random rational scenes:
//! agreement across a large batch is a Schwartz–Zippel-style verification,
//! and a single exact mismatch is a hard failure. A separate double lane
//! checks frame independence: the geometric path in an arbitrary frame
//! must agree with inverse-transformed canonical closed forms within the
//! crate tolerance.
//!
//! Per-trial seeds come from the master seed by a fixed splitting rule,
//! `trial_seed(master, i) = splitmix64(master + i * 0x9E3779B97F4A7C15)`,
//! so trials are independently replayable.

use crate::construction::{
    classic_hagge, construct, homothety_circle, normalize_scene, AnyScene, ConstructError,
    ConstructionOutput, Generator, PathKind, Scene, TriangleParams, TriangleSpec,
};
use crate::geom::{circle_through_3, collinear, midpoint, on_circle, Circle, Point};
use crate::io::{scene_to_value, to_json_string};
use crate::scalar::{rat, Rat, Scalar, REL_TOL};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("policy rejected {0} consecutive candidate scenes")]
    PolicyUnsatisfiable(u32),
}

/// Generation bounds and degeneracy rejection rules for exact canonical
/// scenes. The policy fully determines the rejection predicate: parameters
/// pairwise separated, the generator off the circumcenter (unless
/// allowed), off the vertices, off the sidelines, and off the
/// circumcircle (where the classic construction degenerates).
#[derive(Debug, Clone, PartialEq)]
pub struct ScenePolicy {
    pub max_numerator: i64,
    pub max_denominator: i64,
    pub min_param_separation: Rat,
    pub allow_d_at_center: bool,
    /// Force the target distance k instead of drawing it.
    pub fixed_k: Option<Rat>,
    /// Force the generator instead of drawing it (still subject to the
    /// vertex-collision rejection).
    pub fixed_d: Option<Point<Rat>>,
    pub max_attempts: u32,
}

impl Default for ScenePolicy {
    fn default() -> Self {
        ScenePolicy {
            max_numerator: 64,
            max_denominator: 64,
            min_param_separation: rat(1, 64),
            allow_d_at_center: false,
            fixed_k: None,
            fixed_d: None,
            max_attempts: 4096,
        }
    }
}

/// Generation bounds for arbitrary-frame double scenes. Rejection keeps
/// the scenes well-conditioned so that the 1e-9 frame-agreement tolerance
/// is meaningful rather than ill-posed: vertices apart, triangle not
/// flat, P strictly inside the circumcircle, and the normalized scene
/// clear of the parametrization's blind spot at (0, -1), of the vertices,
/// of the sidelines, and of the circumcenter.
#[derive(Debug, Clone, PartialEq)]
pub struct FramePolicy {
    pub coord_range: f64,
    pub min_vertex_gap: f64,
    pub min_cross: f64,
    /// P is drawn uniformly in the disk of this fraction of the
    /// circumradius around the circumcenter.
    pub p_radius_factor: f64,
    /// Generator drawn uniformly in the disk of twice the circumradius.
    pub d_radius_factor: f64,
    /// Margin (canonical units) kept around every degeneracy listed above.
    pub canonical_margin: f64,
    pub max_attempts: u32,
}

impl Default for FramePolicy {
    fn default() -> Self {
        FramePolicy {
            coord_range: 10.0,
            min_vertex_gap: 0.5,
            min_cross: 1.0,
            p_radius_factor: 0.9,
            d_radius_factor: 2.0,
            canonical_margin: 0.05,
            max_attempts: 4096,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Swap in the known-bad special-circle variant (y-coefficient scaled
    /// by the generator's x-coordinate) so the oracle comparison can be
    /// seen catching it. Never enabled by default.
    pub misprinted_circle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportStatus {
    Pass,
    Fail,
}

impl ReportStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReportStatus::Pass => "PASS",
            ReportStatus::Fail => "FAIL",
        }
    }
}

/// One named check: pass/fail, a residual (or exact-mismatch description),
/// and on failure the full scene for replay.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: &'static str,
    pub pass: bool,
    pub residual: Option<String>,
    pub witness: Option<AnyScene>,
    /// Numeric residual for batch aggregation; not serialized.
    pub residual_value: Option<f64>,
}

impl CheckRecord {
    fn passing(name: &'static str) -> Self {
        CheckRecord {
            name,
            pass: true,
            residual: None,
            witness: None,
            residual_value: None,
        }
    }

    fn passing_note(name: &'static str, note: String) -> Self {
        CheckRecord {
            name,
            pass: true,
            residual: Some(note),
            witness: None,
            residual_value: None,
        }
    }

    fn passing_value(name: &'static str, value: f64) -> Self {
        CheckRecord {
            name,
            pass: true,
            residual: Some(format!("{value:.3e}")),
            witness: None,
            residual_value: Some(value),
        }
    }

    fn failing(name: &'static str, detail: String, witness: AnyScene) -> Self {
        CheckRecord {
            name,
            pass: false,
            residual: Some(detail),
            witness: Some(witness),
            residual_value: None,
        }
    }

    fn failing_value(name: &'static str, value: f64, witness: AnyScene) -> Self {
        CheckRecord {
            name,
            pass: false,
            residual: Some(format!("{value:.3e}")),
            witness: Some(witness),
            residual_value: Some(value),
        }
    }

    fn exact(
        name: &'static str,
        pass: bool,
        detail: impl FnOnce() -> String,
        scene: &Scene<Rat>,
    ) -> Self {
        if pass {
            CheckRecord::passing(name)
        } else {
            CheckRecord::failing(name, detail(), AnyScene::Exact(scene.clone()))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub trials: u32,
    pub checks: Vec<CheckRecord>,
    pub status: ReportStatus,
    /// Digest of the scene for single-scene reports; not serialized.
    pub scene_digest: Option<String>,
    /// Wall-clock duration; not serialized (reports are byte-deterministic).
    pub elapsed_ms: Option<u128>,
}

impl Report {
    fn from_checks(seed: u64, trials: u32, checks: Vec<CheckRecord>) -> Self {
        let status = if checks.iter().all(|c| c.pass) {
            ReportStatus::Pass
        } else {
            ReportStatus::Fail
        };
        Report {
            seed,
            trials,
            checks,
            status,
            scene_digest: None,
            elapsed_ms: None,
        }
    }

    pub fn to_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("seed".into(), Value::from(self.seed));
        root.insert("trials".into(), Value::from(self.trials));
        let checks = self
            .checks
            .iter()
            .map(|c| {
                let mut obj = Map::new();
                obj.insert("name".into(), Value::String(c.name.into()));
                obj.insert("pass".into(), Value::Bool(c.pass));
                obj.insert(
                    "residual".into(),
                    c.residual
                        .as_ref()
                        .map(|r| Value::String(r.clone()))
                        .unwrap_or(Value::Null),
                );
                obj.insert(
                    "witness".into(),
                    c.witness
                        .as_ref()
                        .map(scene_to_value)
                        .unwrap_or(Value::Null),
                );
                Value::Object(obj)
            })
            .collect();
        root.insert("checks".into(), Value::Array(checks));
        root.insert("status".into(), Value::String(self.status.as_str().into()));
        Value::Object(root)
    }

    pub fn to_json(&self) -> String {
        to_json_string(&self.to_value())
    }
}

/// Hex digest identifying a scene (first 16 chars of the SHA-256 of its
/// canonical JSON form).
pub fn scene_digest(scene: &AnyScene) -> String {
    let json = to_json_string(&scene_to_value(scene));
    let hash = Sha256::digest(json.as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// The documented per-trial seed splitting rule.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(index.wrapping_mul(0x9E3779B97F4A7C15)))
}

fn random_rat<R: Rng>(rng: &mut R, policy: &ScenePolicy) -> Rat {
    let numer = rng.gen_range(-policy.max_numerator..=policy.max_numerator);
    let denom = rng.gen_range(1..=policy.max_denominator);
    rat(numer, denom)
}

/// Deterministic canonical rational scene for a seed, rejected and redrawn
/// until it satisfies the policy.
pub fn random_scene(seed: u64, policy: &ScenePolicy) -> Result<Scene<Rat>, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..policy.max_attempts {
        let a = random_rat(&mut rng, policy);
        let b = random_rat(&mut rng, policy);
        let c = random_rat(&mut rng, policy);
        let k = policy
            .fixed_k
            .clone()
            .unwrap_or_else(|| random_rat(&mut rng, policy));
        let d = policy.fixed_d.clone().unwrap_or_else(|| {
            Point::new(random_rat(&mut rng, policy), random_rat(&mut rng, policy))
        });

        let sep = &policy.min_param_separation;
        let separated = |x: &Rat, y: &Rat| Scalar::abs(&(x.clone() - y.clone())) >= *sep;
        if !(separated(&a, &b) && separated(&b, &c) && separated(&a, &c)) {
            continue;
        }
        let params = match TriangleParams::new(a, b, c) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let vertices = params.vertices();
        if vertices.contains(&d) {
            continue;
        }
        let d_at_center = d == Point::origin();
        if d_at_center && !(policy.allow_d_at_center || policy.fixed_d.is_some()) {
            continue;
        }
        if !d_at_center {
            // Keep the generator off the circumcircle (the classic
            // construction's reflections would be collinear) and off the
            // sidelines (the fitted circles would be underdetermined).
            if d.norm_sq() == rat(1, 1) {
                continue;
            }
            let on_sideline = [(0, 1), (1, 2), (2, 0)].iter().any(|&(i, j)| {
                crate::geom::line_through(&vertices[i], &vertices[j])
                    .map(|l| l.eval(&d).is_zero())
                    .unwrap_or(true)
            });
            if on_sideline && policy.fixed_d.is_none() {
                continue;
            }
        }
        return Ok(Scene::canonical(params, k, Generator::D(d)));
    }
    Err(VerifyError::PolicyUnsatisfiable(policy.max_attempts))
}

/// Deterministic arbitrary-frame double scene for a seed.
pub fn random_arbitrary_scene(seed: u64, policy: &FramePolicy) -> Result<Scene<f64>, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..policy.max_attempts {
        let range = policy.coord_range;
        let coord = |rng: &mut ChaCha8Rng| rng.gen_range(-range..range);
        let vertices = [
            Point::new(coord(&mut rng), coord(&mut rng)),
            Point::new(coord(&mut rng), coord(&mut rng)),
            Point::new(coord(&mut rng), coord(&mut rng)),
        ];
        let gap_ok = |p: &Point<f64>, q: &Point<f64>| {
            (p.clone() - q.clone()).norm_sq().sqrt() >= policy.min_vertex_gap
        };
        if !(gap_ok(&vertices[0], &vertices[1])
            && gap_ok(&vertices[1], &vertices[2])
            && gap_ok(&vertices[0], &vertices[2]))
        {
            continue;
        }
        let ab = vertices[1].clone() - vertices[0].clone();
        let ac = vertices[2].clone() - vertices[0].clone();
        if ab.cross(&ac).abs() < policy.min_cross {
            continue;
        }
        let circumcircle = match circle_through_3(&vertices[0], &vertices[1], &vertices[2]) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let o = circumcircle.center();
        let r = circumcircle.radius_sq().sqrt();

        let disk_point = |rng: &mut ChaCha8Rng, radius: f64| {
            let angle = rng.gen_range(0.0..std::f64::consts::TAU);
            let dist = radius * rng.gen_range(0.0_f64..1.0).sqrt();
            Point::new(o.x + dist * angle.cos(), o.y + dist * angle.sin())
        };
        let p = disk_point(&mut rng, policy.p_radius_factor * r);
        let d = disk_point(&mut rng, policy.d_radius_factor * r);

        let scene = Scene {
            triangle: TriangleSpec::Vertices(vertices),
            p,
            generator: Generator::D(d),
        };
        if frame_scene_well_conditioned(&scene, policy) {
            return Ok(scene);
        }
    }
    Err(VerifyError::PolicyUnsatisfiable(policy.max_attempts))
}

fn frame_scene_well_conditioned(scene: &Scene<f64>, policy: &FramePolicy) -> bool {
    let margin = policy.canonical_margin;
    let (canonical, _) = match normalize_scene(scene) {
        Ok(n) => n,
        Err(_) => return false,
    };
    let vertices = match canonical.vertices() {
        Ok(v) => v,
        Err(_) => return false,
    };
    // Finite, well-separated vertex parameters.
    if vertices.iter().any(|v| 1.0 + v.y < margin) {
        return false;
    }
    let params: Vec<f64> = vertices.iter().map(|v| v.x / (1.0 + v.y)).collect();
    if (params[0] - params[1]).abs() < margin
        || (params[1] - params[2]).abs() < margin
        || (params[0] - params[2]).abs() < margin
    {
        return false;
    }
    let d = canonical
        .generator
        .resolve_d(&canonical.p, &Point::origin());
    // Generator clear of the circumcenter, the parametrization's blind
    // spot, the vertices, and the sidelines.
    if d.norm_sq().sqrt() < margin {
        return false;
    }
    if (d.clone() - Point::new(0.0, -1.0)).norm_sq().sqrt() < margin {
        return false;
    }
    for v in &vertices {
        if (d.clone() - v.clone()).norm_sq().sqrt() < margin {
            return false;
        }
    }
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let line = match crate::geom::line_through(&vertices[i], &vertices[j]) {
            Ok(l) => l,
            Err(_) => return false,
        };
        let norm = (line.alpha * line.alpha + line.beta * line.beta).sqrt();
        if line.eval(&d).abs() / norm < margin {
            return false;
        }
    }
    true
}

/// Runs every construction invariant on one exact canonical scene.
/// Failures are recorded, not thrown.
pub fn verify_scene(scene: &Scene<Rat>, opts: &VerifyOptions) -> Report {
    let checks = run_exact_checks(scene, opts);
    let mut report = Report::from_checks(0, 1, checks);
    report.scene_digest = Some(scene_digest(&AnyScene::Exact(scene.clone())));
    report
}

fn run_exact_checks(scene: &Scene<Rat>, opts: &VerifyOptions) -> Vec<CheckRecord> {
    let witness = || AnyScene::Exact(scene.clone());
    let closed = match construct(scene, PathKind::ClosedForm) {
        Ok(out) => out,
        Err(err) => {
            return vec![CheckRecord::failing(
                "construction",
                format!("closed-form path failed: {err}"),
                witness(),
            )]
        }
    };
    let geo = match construct(scene, PathKind::Geometric) {
        Ok(out) => out,
        Err(err) => {
            return vec![CheckRecord::failing(
                "construction",
                format!("geometric path failed: {err}"),
                witness(),
            )]
        }
    };

    if closed.flags.d_at_circumcenter {
        return vec![degenerate_collapse_check(scene, &closed, &geo)];
    }

    let mut checks = Vec::with_capacity(13);
    checks.push(paths_agree_check(scene, &closed, &geo));

    let circles_available = geo.special_circle.is_some() && geo.midpoint_circle.is_some();
    if circles_available {
        checks.extend(circle_checks(scene, &closed, &geo, opts));
    } else {
        checks.push(CheckRecord::passing_note(
            "degenerate_generator_on_sideline",
            "generator on a sideline; circle checks skipped".into(),
        ));
    }

    checks.push(enlargement_ratio_check(scene, &closed));
    checks.push(k_independence_check(scene, &geo));
    checks.push(classic_hagge_check(scene, &geo));
    checks
}

fn degenerate_collapse_check(
    scene: &Scene<Rat>,
    closed: &ConstructionOutput<Rat>,
    geo: &ConstructionOutput<Rat>,
) -> CheckRecord {
    let collapsed = |out: &ConstructionOutput<Rat>| {
        out.special_points.iter().all(|u| *u == out.p)
            && out.special_circle.is_none()
            && out.midpoint_circle.is_none()
    };
    CheckRecord::exact(
        "degenerate_collapse_to_p",
        collapsed(closed) && collapsed(geo),
        || "generator at circumcenter must collapse all special points onto P".into(),
        scene,
    )
}

fn paths_agree_check(
    scene: &Scene<Rat>,
    closed: &ConstructionOutput<Rat>,
    geo: &ConstructionOutput<Rat>,
) -> CheckRecord {
    let mut mismatch = None;
    let pairs: [(&str, &Point<Rat>, &Point<Rat>); 11] = [
        ("E", &closed.chord_ends[0], &geo.chord_ends[0]),
        ("F", &closed.chord_ends[1], &geo.chord_ends[1]),
        ("G", &closed.chord_ends[2], &geo.chord_ends[2]),
        ("U", &closed.special_points[0], &geo.special_points[0]),
        ("V", &closed.special_points[1], &geo.special_points[1]),
        ("W", &closed.special_points[2], &geo.special_points[2]),
        ("U'", &closed.chord_midpoints[0], &geo.chord_midpoints[0]),
        ("V'", &closed.chord_midpoints[1], &geo.chord_midpoints[1]),
        ("W'", &closed.chord_midpoints[2], &geo.chord_midpoints[2]),
        ("Q", &closed.q, &geo.q),
        ("K", &closed.special_center, &geo.special_center),
    ];
    for (label, a, b) in pairs {
        if a != b {
            mismatch = Some(format!(
                "{label}: closed form ({}, {}) vs geometric ({}, {})",
                a.x, a.y, b.x, b.y
            ));
            break;
        }
    }
    CheckRecord::exact(
        "closed_form_matches_geometric",
        mismatch.is_none(),
        || mismatch.unwrap(),
        scene,
    )
}

fn circle_mismatch(label: &str, lhs: &Circle<Rat>, rhs: &Circle<Rat>) -> String {
    format!(
        "{label}: (g, f, t) = ({}, {}, {}) vs ({}, {}, {})",
        lhs.g, lhs.f, lhs.t, rhs.g, rhs.f, rhs.t
    )
}

fn circle_checks(
    scene: &Scene<Rat>,
    closed: &ConstructionOutput<Rat>,
    geo: &ConstructionOutput<Rat>,
    opts: &VerifyOptions,
) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    let special_formula = closed.special_circle.as_ref().expect("nondegenerate");
    let midpoint_formula = closed.midpoint_circle.as_ref().expect("nondegenerate");

    // The oracle fits circles to the geometric path's points and knows
    // nothing about the closed forms it is checking.
    let special_oracle = circle_through_3(
        &geo.special_points[0],
        &geo.special_points[1],
        &geo.special_points[2],
    );
    let midpoint_oracle = circle_through_3(
        &geo.chord_midpoints[0],
        &geo.chord_midpoints[1],
        &geo.chord_midpoints[2],
    );

    match special_oracle {
        Ok(oracle) => {
            checks.push(CheckRecord::exact(
                "special_circle_matches_oracle",
                oracle == *special_formula,
                || circle_mismatch("special circle", &oracle, special_formula),
                scene,
            ));
            if opts.misprinted_circle {
                let misprint = crate::construction::special_circle_misprint(
                    &closed.d,
                    &scene.canonical_k().expect("canonical"),
                )
                .expect("nondegenerate");
                checks.push(CheckRecord::exact(
                    "misprinted_special_circle_matches_oracle",
                    misprint == oracle,
                    || circle_mismatch("misprinted special circle", &misprint, &oracle),
                    scene,
                ));
            }
        }
        Err(err) => checks.push(CheckRecord::failing(
            "special_circle_matches_oracle",
            format!("oracle fit failed: {err}"),
            AnyScene::Exact(scene.clone()),
        )),
    }

    checks.push(CheckRecord::exact(
        "special_circle_contains_p",
        on_circle(special_formula, &closed.p),
        || format!("residual {}", special_formula.eval(&closed.p)),
        scene,
    ));
    checks.push(CheckRecord::exact(
        "special_circle_center_is_k",
        special_formula.center() == closed.special_center,
        || {
            let c = special_formula.center();
            format!(
                "center ({}, {}) vs P + D - O = ({}, {})",
                c.x, c.y, closed.special_center.x, closed.special_center.y
            )
        },
        scene,
    ));
    checks.push(CheckRecord::exact(
        "special_circle_radius_sq_is_od_sq",
        special_formula.radius_sq() == closed.d.norm_sq(),
        || {
            format!(
                "r^2 = {} vs |OD|^2 = {}",
                special_formula.radius_sq(),
                closed.d.norm_sq()
            )
        },
        scene,
    ));

    match midpoint_oracle {
        Ok(oracle) => checks.push(CheckRecord::exact(
            "midpoint_circle_matches_oracle",
            oracle == *midpoint_formula,
            || circle_mismatch("midpoint circle", &oracle, midpoint_formula),
            scene,
        )),
        Err(err) => checks.push(CheckRecord::failing(
            "midpoint_circle_matches_oracle",
            format!("oracle fit failed: {err}"),
            AnyScene::Exact(scene.clone()),
        )),
    }
    checks.push(CheckRecord::exact(
        "midpoint_circle_through_o_and_d",
        on_circle(midpoint_formula, &Point::origin()) && on_circle(midpoint_formula, &closed.d),
        || {
            format!(
                "residuals at O and D: {}, {}",
                midpoint_formula.eval(&Point::origin()),
                midpoint_formula.eval(&closed.d)
            )
        },
        scene,
    ));
    checks.push(CheckRecord::exact(
        "midpoint_circle_center_is_od_midpoint",
        midpoint_formula.center() == midpoint(&Point::origin(), &closed.d),
        || {
            let c = midpoint_formula.center();
            format!("center ({}, {}) is not the midpoint of OD", c.x, c.y)
        },
        scene,
    ));

    // Homothety about Q with factor two carries the fitted midpoint circle
    // onto the closed-form special circle.
    match homothety_circle(geo, &rat(2, 1)) {
        Ok(enlarged) => checks.push(CheckRecord::exact(
            "homothety_factor_two_maps_circles",
            enlarged == *special_formula,
            || circle_mismatch("homothety image", &enlarged, special_formula),
            scene,
        )),
        Err(err) => checks.push(CheckRecord::failing(
            "homothety_factor_two_maps_circles",
            format!("homothety failed: {err}"),
            AnyScene::Exact(scene.clone()),
        )),
    }

    checks
}

/// Q, U' (closed form), U (closed form) are collinear with displacement
/// ratio exactly two. Both points come from independent formulas, so this
/// is not true by construction.
fn enlargement_ratio_check(scene: &Scene<Rat>, closed: &ConstructionOutput<Rat>) -> CheckRecord {
    let q = &closed.q;
    let mut failure = None;
    for i in 0..3 {
        let u = &closed.special_points[i];
        let mid = &closed.chord_midpoints[i];
        let lhs = u.clone() - q.clone();
        let rhs = (mid.clone() - q.clone()).scaled(&rat(2, 1));
        if lhs != rhs || !collinear(q, mid, u) {
            failure = Some(format!(
                "chord {i}: U - Q = ({}, {}) but 2(U' - Q) = ({}, {})",
                lhs.x, lhs.y, rhs.x, rhs.y
            ));
            break;
        }
    }
    CheckRecord::exact(
        "q_to_special_ratio_two",
        failure.is_none(),
        || failure.unwrap(),
        scene,
    )
}

/// Diagonal midpoints must not depend on k: rebuild the scene with the
/// target shifted along the axis and compare the geometric route (which
/// passes through the k-dependent Q and U).
fn k_independence_check(scene: &Scene<Rat>, geo: &ConstructionOutput<Rat>) -> CheckRecord {
    let shifted = Scene {
        triangle: scene.triangle.clone(),
        p: Point::new(scene.p.x.clone() - rat(1, 1), scene.p.y.clone()),
        generator: Generator::D(geo.d.clone()),
    };
    match construct(&shifted, PathKind::Geometric) {
        Ok(other) => CheckRecord::exact(
            "chord_midpoints_independent_of_k",
            other.chord_midpoints == geo.chord_midpoints,
            || "diagonal midpoints moved when only k changed".into(),
            scene,
        ),
        Err(err) => CheckRecord::failing(
            "chord_midpoints_independent_of_k",
            format!("shifted construction failed: {err}"),
            AnyScene::Exact(scene.clone()),
        ),
    }
}

/// The classic construction: reflections of the chord ends in the sides
/// are concyclic with the orthocenter. When the generator sits on the
/// circumcircle the three reflections degenerate to a line; the claim
/// survives as the orthocenter lying on that line.
fn classic_hagge_check(scene: &Scene<Rat>, geo: &ConstructionOutput<Rat>) -> CheckRecord {
    match classic_hagge(&geo.vertices, &geo.d) {
        Ok(hagge) => CheckRecord::exact(
            "classic_hagge_contains_orthocenter",
            on_circle(&hagge.circle, &hagge.orthocenter),
            || {
                format!(
                    "orthocenter residual {}",
                    hagge.circle.eval(&hagge.orthocenter)
                )
            },
            scene,
        ),
        Err(ConstructError::CollinearReflections) => {
            let lines = [
                crate::geom::line_through(&geo.vertices[1], &geo.vertices[2]),
                crate::geom::line_through(&geo.vertices[2], &geo.vertices[0]),
            ];
            let h = crate::construction::orthocenter(&geo.vertices, &geo.circumcenter);
            let on_line = match (&lines[0], &lines[1]) {
                (Ok(bc), Ok(ca)) => {
                    let r1 = crate::geom::reflect_across_line(&geo.d, bc);
                    let r2 = crate::geom::reflect_across_line(&geo.d, ca);
                    collinear(&r1, &r2, &h)
                }
                _ => false,
            };
            CheckRecord::exact(
                "classic_hagge_contains_orthocenter",
                on_line,
                || "reflections collinear but orthocenter off their line".into(),
                scene,
            )
        }
        Err(err) => CheckRecord::failing(
            "classic_hagge_contains_orthocenter",
            format!("classic construction failed: {err}"),
            AnyScene::Exact(scene.clone()),
        ),
    }
}

/// Relative componentwise distance with an absolute floor of 1.
fn point_residual(a: &Point<f64>, b: &Point<f64>) -> f64 {
    let rx = (a.x - b.x).abs() / a.x.abs().max(b.x.abs()).max(1.0);
    let ry = (a.y - b.y).abs() / a.y.abs().max(b.y.abs()).max(1.0);
    rx.max(ry)
}

fn circle_residual(a: &Circle<f64>, b: &Circle<f64>) -> f64 {
    let centers = point_residual(&a.center(), &b.center());
    let ra = a.radius_sq();
    let rb = b.radius_sq();
    let radii = (ra - rb).abs() / ra.abs().max(rb.abs()).max(1.0);
    centers.max(radii)
}

/// Frame-independence checks for one arbitrary-frame double scene: the
/// geometric path in place must agree with the inverse-transformed
/// canonical closed forms, and the predicted circles must contain the
/// constructed points.
pub fn verify_arbitrary_scene(scene: &Scene<f64>) -> Report {
    let checks = run_frame_checks(scene);
    let mut report = Report::from_checks(0, 1, checks);
    report.scene_digest = Some(scene_digest(&AnyScene::Double(scene.clone())));
    report
}

fn run_frame_checks(scene: &Scene<f64>) -> Vec<CheckRecord> {
    let witness = || AnyScene::Double(scene.clone());
    let fail_all = |detail: String| vec![CheckRecord::failing("construction", detail, witness())];

    let geo = match construct(scene, PathKind::Geometric) {
        Ok(out) => out,
        Err(err) => return fail_all(format!("geometric path failed: {err}")),
    };
    let (canonical, transform) = match normalize_scene(scene) {
        Ok(n) => n,
        Err(err) => return fail_all(format!("normalization failed: {err}")),
    };
    let closed = match construct(&canonical, PathKind::ClosedForm) {
        Ok(out) => out,
        Err(err) => return fail_all(format!("canonical closed form failed: {err}")),
    };
    let back = transform.inverse();

    let mut checks = Vec::with_capacity(4);

    let mut worst = 0.0_f64;
    let point_pairs: Vec<(&Point<f64>, &Point<f64>)> = geo
        .chord_ends
        .iter()
        .zip(closed.chord_ends.iter())
        .chain(geo.special_points.iter().zip(closed.special_points.iter()))
        .chain(
            geo.chord_midpoints
                .iter()
                .zip(closed.chord_midpoints.iter()),
        )
        .chain(std::iter::once((&geo.q, &closed.q)))
        .chain(std::iter::once((
            &geo.special_center,
            &closed.special_center,
        )))
        .collect();
    for (arb, canon) in point_pairs {
        worst = worst.max(point_residual(arb, &back.apply(canon)));
    }
    checks.push(if worst <= REL_TOL {
        CheckRecord::passing_value("frame_points_agree", worst)
    } else {
        CheckRecord::failing_value("frame_points_agree", worst, witness())
    });

    match (
        &geo.special_circle,
        &geo.midpoint_circle,
        &closed.special_circle,
        &closed.midpoint_circle,
    ) {
        (Some(gs), Some(gm), Some(cs), Some(cm)) => {
            let worst = circle_residual(gs, &back.apply_circle(cs))
                .max(circle_residual(gm, &back.apply_circle(cm)));
            checks.push(if worst <= REL_TOL {
                CheckRecord::passing_value("frame_circles_agree", worst)
            } else {
                CheckRecord::failing_value("frame_circles_agree", worst, witness())
            });
        }
        _ => checks.push(CheckRecord::failing(
            "frame_circles_agree",
            "a fitted circle was unexpectedly missing".into(),
            witness(),
        )),
    }

    // Predicted special circle straight from the scene data: center
    // K = P + D - O, squared radius |OD|^2.
    let od = geo.d.clone() - geo.circumcenter.clone();
    let predicted_special = Circle::from_center_radius_sq(&geo.special_center, &od.norm_sq());
    let mut worst = predicted_special.membership_residual(&geo.p);
    for u in &geo.special_points {
        worst = worst.max(predicted_special.membership_residual(u));
    }
    checks.push(if worst <= REL_TOL {
        CheckRecord::passing_value("frame_special_circle_membership", worst)
    } else {
        CheckRecord::failing_value("frame_special_circle_membership", worst, witness())
    });

    // Predicted midpoint circle: OD as diameter.
    let mid_center = midpoint(&geo.circumcenter, &geo.d);
    let predicted_mid = Circle::from_center_radius_sq(&mid_center, &(od.norm_sq() / 4.0));
    let mut worst = predicted_mid
        .membership_residual(&geo.circumcenter)
        .max(predicted_mid.membership_residual(&geo.d));
    for m in &geo.chord_midpoints {
        worst = worst.max(predicted_mid.membership_residual(m));
    }
    checks.push(if worst <= REL_TOL {
        CheckRecord::passing_value("frame_midpoint_circle_membership", worst)
    } else {
        CheckRecord::failing_value("frame_midpoint_circle_membership", worst, witness())
    });

    checks
}

/// Aggregates per-trial checks into one summary record per check name, in
/// first-appearance order. The residual reports pass counts (and the worst
/// numeric residual where one exists); the witness is the first failing
/// scene.
fn aggregate(seed: u64, trials: u32, per_trial: Vec<Vec<CheckRecord>>) -> Report {
    struct Bucket {
        name: &'static str,
        passes: u32,
        total: u32,
        worst: Option<f64>,
        first_failure: Option<(String, Option<AnyScene>)>,
    }
    let mut order: Vec<&'static str> = Vec::new();
    let mut buckets: Vec<Bucket> = Vec::new();
    for records in per_trial {
        for record in records {
            let idx = match order.iter().position(|n| *n == record.name) {
                Some(i) => i,
                None => {
                    order.push(record.name);
                    buckets.push(Bucket {
                        name: record.name,
                        passes: 0,
                        total: 0,
                        worst: None,
                        first_failure: None,
                    });
                    buckets.len() - 1
                }
            };
            let bucket = &mut buckets[idx];
            bucket.total += 1;
            if record.pass {
                bucket.passes += 1;
            } else if bucket.first_failure.is_none() {
                bucket.first_failure = Some((
                    record.residual.clone().unwrap_or_else(|| "mismatch".into()),
                    record.witness.clone(),
                ));
            }
            if let Some(v) = record.residual_value {
                bucket.worst = Some(bucket.worst.map_or(v, |w: f64| w.max(v)));
            }
        }
    }
    let checks = buckets
        .into_iter()
        .map(|bucket| {
            let mut residual = format!("{}/{} scenes", bucket.passes, bucket.total);
            if let Some(w) = bucket.worst {
                residual.push_str(&format!("; max residual {w:.3e}"));
            }
            if let Some((detail, witness)) = bucket.first_failure {
                residual.push_str(&format!("; first failure: {detail}"));
                CheckRecord {
                    name: bucket.name,
                    pass: false,
                    residual: Some(residual),
                    witness,
                    residual_value: bucket.worst,
                }
            } else {
                CheckRecord {
                    name: bucket.name,
                    pass: true,
                    residual: Some(residual),
                    witness: None,
                    residual_value: bucket.worst,
                }
            }
        })
        .collect();
    Report::from_checks(seed, trials, checks)
}

/// Runs [`verify_scene`] over `trials` deterministic scenes drawn with
/// per-trial seeds split from `seed`.
pub fn verify_batch(
    trials: u32,
    seed: u64,
    policy: &ScenePolicy,
    opts: &VerifyOptions,
) -> Result<Report, VerifyError> {
    let start = std::time::Instant::now();
    let mut per_trial = Vec::with_capacity(trials as usize);
    for i in 0..trials {
        let scene = random_scene(trial_seed(seed, i as u64), policy)?;
        per_trial.push(run_exact_checks(&scene, opts));
    }
    let mut report = aggregate(seed, trials, per_trial);
    report.elapsed_ms = Some(start.elapsed().as_millis());
    Ok(report)
}

/// Frame-independence batch over arbitrary double scenes.
pub fn verify_arbitrary_batch(
    trials: u32,
    seed: u64,
    policy: &FramePolicy,
) -> Result<Report, VerifyError> {
    let start = std::time::Instant::now();
    let mut per_trial = Vec::with_capacity(trials as usize);
    for i in 0..trials {
        let scene = random_arbitrary_scene(trial_seed(seed, i as u64), policy)?;
        per_trial.push(run_frame_checks(&scene));
    }
    let mut report = aggregate(seed, trials, per_trial);
    report.elapsed_ms = Some(start.elapsed().as_millis());
    Ok(report)
}
