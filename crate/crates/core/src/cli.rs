//! Command pipeline behind the `lensorbit` binary: configuration, dispatch
//! and rendering. Everything here returns strings and exit codes so the
//! binary stays a thin argument parser.

use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::gysin::{
    char_class_zero_composite, enumerate_exact_profiles, first_infeasible_degree, GysinInstance,
};
use crate::lens::{
    alpha, alpha_is_free_on, alpha_orbit, alpha_squares_to_generator, composite_is_z2p,
    orbit_equal, sample_grid, ActionParams, FreenessCheck, PhasePoint,
};
use crate::reconstruct::{borsuk_bound, coindex_of, CandidateMatch};
use crate::ring::{
    compute_basis, nilpotency_order, standard_space, Nilpotency, ParityGate, Presentation,
    SpaceKind,
};
use crate::search::{
    classify, scenario_pages, FiberSpec, Outcome, PruneReason, ScenarioReport, SearchConfig,
    SearchError, SearchReport,
};
use crate::spectral::SpectralError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_NO_MATCH: i32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    InvalidParam(String),
    #[error("{0}")]
    UnsupportedFiber(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::InvalidParam(_) => "InvalidParam",
            CliError::UnsupportedFiber(_) => "UnsupportedFiber",
            CliError::Internal(_) => "Internal",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_UNSUPPORTED,
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match &e {
            SearchError::Spectral(SpectralError::UnsupportedFiber(_)) => {
                CliError::UnsupportedFiber(e.to_string())
            }
            SearchError::Spectral(
                SpectralError::InvalidWindow(_) | SpectralError::WindowTooSmall { .. },
            )
            | SearchError::InvalidFiber(_)
            | SearchError::InvalidCase(_)
            | SearchError::NoSuchScenario { .. }
            | SearchError::BranchCapExceeded(_) => CliError::InvalidParam(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberSelector {
    Lens {
        m: usize,
    },
    Sphere {
        n: usize,
    },
    Projective {
        n: usize,
    },
    ByP {
        p: i64,
        m: usize,
    },
    Ring {
        text: String,
        assume_trivial_action: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Classify {
        fiber: FiberSelector,
        kmax: Option<usize>,
    },
    Pages {
        fiber: FiberSelector,
        kmax: Option<usize>,
        scenario: usize,
    },
    Gysin {
        orbit: Vec<usize>,
        space: Vec<usize>,
    },
    Coindex {
        ring: String,
        class: String,
    },
    Involution {
        p: i64,
        m: usize,
        q: Option<Vec<i64>>,
        denominator: i64,
        point: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub output: OutputMode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// `L_p^{2m-1}` has the mod-2 cohomology of a sphere for odd `p`, of a real
/// projective space for `p ≡ 2 mod 4`, and of the mod-2 lens type otherwise.
pub fn dispatch_by_p(p: i64, m: usize) -> Result<SpaceKind, CliError> {
    if p < 2 {
        return Err(CliError::InvalidParam(format!(
            "p = {p} must be at least 2"
        )));
    }
    if m < 1 {
        return Err(CliError::InvalidParam("m must be at least 1".into()));
    }
    Ok(if p % 2 == 1 {
        SpaceKind::Sphere(2 * m - 1)
    } else if p % 4 == 2 {
        SpaceKind::RealProjective(2 * m - 1)
    } else {
        SpaceKind::LensMod2(m)
    })
}

fn fiber_spec(sel: &FiberSelector) -> Result<FiberSpec, CliError> {
    let kind = match sel {
        FiberSelector::Lens { m } => SpaceKind::LensMod2(*m),
        FiberSelector::Sphere { n } => SpaceKind::Sphere(*n),
        FiberSelector::Projective { n } => SpaceKind::RealProjective(*n),
        FiberSelector::ByP { p, m } => dispatch_by_p(*p, *m)?,
        FiberSelector::Ring {
            text,
            assume_trivial_action,
        } => {
            let presentation: Presentation = text
                .parse()
                .map_err(|e| CliError::InvalidParam(format!("{e}")))?;
            return Ok(FiberSpec {
                presentation,
                kind: None,
                assume_trivial_action: *assume_trivial_action,
            });
        }
    };
    standard_space(kind).map_err(|e| CliError::InvalidParam(e.to_string()))?;
    Ok(FiberSpec::standard(kind)?)
}

fn selector_json(sel: &FiberSelector) -> Value {
    match sel {
        FiberSelector::Lens { m } => json!({"fiber": "lens", "m": m}),
        FiberSelector::Sphere { n } => json!({"fiber": "sphere", "n": n}),
        FiberSelector::Projective { n } => json!({"fiber": "rp", "n": n}),
        FiberSelector::ByP { p, m } => json!({"p": p, "m": m}),
        FiberSelector::Ring {
            text,
            assume_trivial_action,
        } => json!({"ring": text, "assume_trivial_action": assume_trivial_action}),
    }
}

pub fn run(config: &RunConfig) -> RunOutcome {
    let result = match &config.command {
        Command::Classify { fiber, kmax } => run_classify(fiber, *kmax, config.output),
        Command::Pages {
            fiber,
            kmax,
            scenario,
        } => run_pages(fiber, *kmax, *scenario, config.output),
        Command::Gysin { orbit, space } => run_gysin(orbit, space, config.output),
        Command::Coindex { ring, class } => run_coindex(ring, class, config.output),
        Command::Involution {
            p,
            m,
            q,
            denominator,
            point,
        } => run_involution(
            *p,
            *m,
            q.as_deref(),
            *denominator,
            point.as_deref(),
            config.output,
        ),
    };
    match result {
        Ok((code, stdout)) => RunOutcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => error_outcome(&e, config.output),
    }
}

/// One line on stderr, plus a JSON object on stdout in JSON mode.
pub fn error_outcome(e: &CliError, mode: OutputMode) -> RunOutcome {
    let line = format!("error[{}]: {}", e.code(), e.to_string().replace('\n', " "));
    let stdout = match mode {
        OutputMode::Json => {
            json!({"error": {"code": e.code(), "message": e.to_string()}}).to_string() + "\n"
        }
        OutputMode::Text => String::new(),
    };
    RunOutcome {
        code: e.exit_code(),
        stdout,
        stderr: line + "\n",
    }
}

fn render_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn config_for(kmax: Option<usize>) -> SearchConfig {
    SearchConfig {
        kmax,
        ..SearchConfig::default()
    }
}

fn match_json(m: &CandidateMatch) -> Value {
    let mut v = json!({
        "family": m.family,
        "coindex": m.coindex,
        "borsuk_bound": m.borsuk_bound,
    });
    let obj = v.as_object_mut().expect("object");
    if m.family == 1 {
        obj.insert("height".into(), json!(m.param));
        if m.param.is_multiple_of(2) {
            obj.insert("m".into(), json!(m.param / 2));
        }
    } else {
        obj.insert("m".into(), json!(m.param));
    }
    if m.family == 3 {
        obj.insert("lambda".into(), json!(m.lambdas));
    }
    v
}

fn reason_json(r: &PruneReason) -> Value {
    let mut v = json!({"code": r.code(), "message": r.to_string()});
    let obj = v.as_object_mut().expect("object");
    match r {
        PruneReason::IllDefined(w) => {
            obj.insert(
                "witness".into(),
                serde_json::to_value(w).expect("serializable"),
            );
        }
        PruneReason::NotSquareZero(w) => {
            obj.insert(
                "witness".into(),
                serde_json::to_value(w).expect("serializable"),
            );
        }
        PruneReason::FreenessViolation { degree } | PruneReason::GysinInfeasible { degree } => {
            obj.insert("degree".into(), json!(degree));
        }
        PruneReason::Unsupported { .. } => {}
    }
    v
}

pub fn scenario_json(s: &ScenarioReport) -> Value {
    let mut v = json!({
        "branch": s.branch(),
        "totals": s.totals,
        "last_page": s.last_page,
    });
    let obj = v.as_object_mut().expect("object");
    match &s.outcome {
        Outcome::Pruned(r) => {
            obj.insert("status".into(), json!("pruned"));
            obj.insert("reason".into(), reason_json(r));
            obj.insert("matches".into(), json!([]));
        }
        Outcome::Survived {
            nilpotency,
            matches,
        } => {
            obj.insert("status".into(), json!("survived"));
            obj.insert("x_nilpotency".into(), json!(nilpotency));
            obj.insert("coindex".into(), json!(nilpotency - 1));
            match matches {
                Ok(ms) => {
                    obj.insert(
                        "matches".into(),
                        Value::Array(ms.iter().map(match_json).collect()),
                    );
                }
                Err(d) => {
                    obj.insert("matches".into(), json!([]));
                    obj.insert(
                        "no_match".into(),
                        json!({"message": d.to_string(), "tried": d.tried}),
                    );
                }
            }
        }
    }
    v
}

fn parity_json(p: &ParityGate) -> Value {
    match p {
        ParityGate::Pass => json!("pass"),
        ParityGate::Fail(reason) => json!({"fail": reason}),
    }
}

pub fn report_json(sel: &FiberSelector, r: &SearchReport) -> Value {
    json!({
        "input": {
            "command": "classify",
            "selector": selector_json(sel),
            "fiber": r.fiber,
            "fiber_dims": r.fiber_dims,
            "window": {"kmax": r.window.kmax, "lmax": r.window.lmax},
            "parity_gate": parity_json(&r.parity),
        },
        "scenarios": r.scenarios.iter().map(scenario_json).collect::<Vec<_>>(),
    })
}

fn scenario_text(out: &mut String, i: usize, s: &ScenarioReport) {
    let status = if s.survived() { "survived" } else { "pruned" };
    let _ = writeln!(out, "[{i}] {status:<8} {}", s.branch());
    match &s.outcome {
        Outcome::Pruned(r) => {
            let _ = writeln!(out, "    reason: {r}");
        }
        Outcome::Survived {
            nilpotency,
            matches,
        } => {
            let _ = writeln!(
                out,
                "    x-nilpotency: {nilpotency} (coindex {})",
                nilpotency - 1
            );
            match matches {
                Ok(ms) => {
                    for m in ms {
                        let _ = writeln!(
                            out,
                            "    match: {}  coindex {}  borsuk bound {}",
                            m.describe(),
                            m.coindex,
                            m.borsuk_bound
                        );
                    }
                }
                Err(d) => {
                    let _ = writeln!(out, "    no match: {d}");
                }
            }
        }
    }
    if !s.totals.is_empty() {
        let _ = writeln!(out, "    totals: {}", join(&s.totals, " "));
    }
}

pub fn report_text(r: &SearchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "fiber: {}", r.fiber);
    let _ = writeln!(out, "fiber dims: {}", join(&r.fiber_dims, " "));
    let _ = writeln!(out, "window: kmax={} lmax={}", r.window.kmax, r.window.lmax);
    match &r.parity {
        ParityGate::Pass => {
            let _ = writeln!(out, "parity gate: pass");
        }
        ParityGate::Fail(reason) => {
            let _ = writeln!(out, "parity gate: fail ({reason})");
        }
    }
    let survived = r.survivors().count();
    let _ = writeln!(
        out,
        "scenarios: {} ({survived} survived, {} pruned)\n",
        r.scenarios.len(),
        r.scenarios.len() - survived
    );
    for (i, s) in r.scenarios.iter().enumerate() {
        scenario_text(&mut out, i, s);
    }
    out
}

fn run_classify(
    sel: &FiberSelector,
    kmax: Option<usize>,
    mode: OutputMode,
) -> Result<(i32, String), CliError> {
    let fiber = fiber_spec(sel)?;
    let report = classify(&fiber, &config_for(kmax))?;
    let code = if report.scenarios.iter().any(ScenarioReport::unmatched) {
        EXIT_NO_MATCH
    } else {
        EXIT_OK
    };
    let text = match mode {
        OutputMode::Json => render_json(&report_json(sel, &report)),
        OutputMode::Text => report_text(&report),
    };
    Ok((code, text))
}

fn run_pages(
    sel: &FiberSelector,
    kmax: Option<usize>,
    index: usize,
    mode: OutputMode,
) -> Result<(i32, String), CliError> {
    let fiber = fiber_spec(sel)?;
    let (scenario, replay) = scenario_pages(&fiber, &config_for(kmax), index)?;
    match mode {
        OutputMode::Json => {
            let pages: serde_json::Map<String, Value> = replay
                .pages
                .iter()
                .map(|p| {
                    (
                        p.r().to_string(),
                        serde_json::to_value(p.summary()).expect("serializable"),
                    )
                })
                .collect();
            let v = json!({
                "input": {"command": "pages", "selector": selector_json(sel), "scenario": index},
                "scenario": scenario_json(&scenario),
                "pages": pages,
                "stopped": replay.stopped.as_ref().map(reason_json),
            });
            Ok((EXIT_OK, render_json(&v)))
        }
        OutputMode::Text => {
            let mut out = String::new();
            scenario_text(&mut out, index, &scenario);
            out.push('\n');
            for p in &replay.pages {
                out.push_str(&p.render_grid(p.window().reliable_degree()));
                out.push('\n');
            }
            if let Some(r) = &replay.stopped {
                let last = replay.pages.last().map_or(2, |p| p.r());
                let _ = writeln!(out, "stopped on E{last}: {r}");
            }
            Ok((EXIT_OK, out))
        }
    }
}

fn run_gysin(
    orbit: &[usize],
    space: &[usize],
    mode: OutputMode,
) -> Result<(i32, String), CliError> {
    let inst = GysinInstance::new(orbit.to_vec(), space.to_vec())
        .map_err(|e| CliError::InvalidParam(e.to_string()))?;
    let profiles = enumerate_exact_profiles(&inst);
    let classes = |p: &crate::gysin::RankProfile| -> Vec<String> {
        (0..p.cup_v.len())
            .map(|i| {
                char_class_zero_composite(p, i)
                    .expect("in range")
                    .to_string()
            })
            .collect()
    };
    match mode {
        OutputMode::Json => {
            let v = json!({
                "input": {"command": "gysin", "orbit": orbit, "space": space},
                "profiles": profiles.iter().map(|p| json!({
                    "eta": p.eta,
                    "transfer": p.transfer,
                    "cup_v": p.cup_v,
                    "char_class": classes(p),
                })).collect::<Vec<_>>(),
                "infeasible_degree": first_infeasible_degree(&inst),
            });
            Ok((EXIT_OK, render_json(&v)))
        }
        OutputMode::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "orbit: {}", join(orbit, " "));
            let _ = writeln!(out, "space: {}", join(space, " "));
            match profiles.first() {
                None => {
                    let d = first_infeasible_degree(&inst).unwrap_or(0);
                    let _ = writeln!(out, "no exact rank profile (fails in degree {d})");
                }
                Some(p) => {
                    let _ = writeln!(out, "exactly one rank profile\n");
                    let _ = writeln!(
                        out,
                        "{:>3} {:>3} {:>3} {:>5} {:>5} {:>5}  v·H^i",
                        "i", "a", "b", "rk η", "rk τ", "rk ∪v"
                    );
                    let cls = classes(p);
                    for i in 0..orbit.len() {
                        let _ = writeln!(
                            out,
                            "{:>3} {:>3} {:>3} {:>5} {:>5} {:>5}  {}",
                            i, orbit[i], space[i], p.eta[i], p.transfer[i], p.cup_v[i], cls[i]
                        );
                    }
                }
            }
            Ok((EXIT_OK, out))
        }
    }
}

fn run_coindex(ring: &str, class: &str, mode: OutputMode) -> Result<(i32, String), CliError> {
    let p: Presentation = ring
        .parse()
        .map_err(|e| CliError::InvalidParam(format!("{e}")))?;
    let basis = compute_basis(&p);
    let x = basis
        .generator(class)
        .map_err(|e| CliError::InvalidParam(e.to_string()))?;
    let nil = match nilpotency_order(&x).map_err(|e| CliError::InvalidParam(e.to_string()))? {
        Nilpotency::Order(k) => k,
        Nilpotency::Unbounded => {
            return Err(CliError::InvalidParam(format!(
                "{class} is not nilpotent within the cap {}",
                p.cap()
            )))
        }
    };
    let ci = coindex_of(&p, class).map_err(|e| CliError::InvalidParam(e.to_string()))?;
    let bound = borsuk_bound(ci);
    Ok((
        EXIT_OK,
        match mode {
            OutputMode::Json => render_json(&json!({
                "input": {"command": "coindex", "ring": p.to_string(), "class": class},
                "nilpotency": nil,
                "coindex": ci,
                "borsuk_bound": bound,
            })),
            OutputMode::Text => format!(
                "ring: {p}\nclass: {class}\nnilpotency: {nil}\ncoindex: {ci}\nborsuk bound: no equivariant map from S^n for n >= {bound}\n"
            ),
        },
    ))
}

fn check_text(c: &FreenessCheck) -> String {
    match c {
        FreenessCheck::Pass => "pass".into(),
        FreenessCheck::Counterexample(pt) => format!("counterexample {pt}"),
    }
}

fn check_json(c: &FreenessCheck) -> Value {
    match c {
        FreenessCheck::Pass => json!("pass"),
        FreenessCheck::Counterexample(pt) => json!({"counterexample": pt.to_string()}),
    }
}

fn run_involution(
    p: i64,
    m: usize,
    q: Option<&[i64]>,
    denominator: i64,
    point: Option<&str>,
    mode: OutputMode,
) -> Result<(i32, String), CliError> {
    let bad = |e: crate::lens::LensError| CliError::InvalidParam(e.to_string());
    if m == 0 {
        return Err(CliError::InvalidParam("m must be at least 1".into()));
    }
    let q: Vec<i64> = q.map_or_else(|| vec![1; m], <[i64]>::to_vec);
    if q.len() != m {
        return Err(CliError::InvalidParam(format!(
            "q has {} entries but m = {m}",
            q.len()
        )));
    }
    let a = ActionParams::new(p, q.clone()).map_err(bad)?;
    let grid = sample_grid(m, denominator).map_err(bad)?;
    let free = alpha_is_free_on(&grid, &a).map_err(bad)?;
    let square = alpha_squares_to_generator(&grid, &a).map_err(bad)?;
    let composite = composite_is_z2p(&grid, &a).map_err(bad)?;
    let pt = point
        .map(|s| s.parse::<PhasePoint>().map_err(bad))
        .transpose()?;
    let detail = match &pt {
        Some(x) => {
            let image = alpha(x, &a).map_err(bad)?;
            let fixed = orbit_equal(&image, x, &a).map_err(bad)?;
            let orbit = alpha_orbit(x, &a).map_err(bad)?;
            Some((image, fixed, orbit))
        }
        None => None,
    };
    let out = match mode {
        OutputMode::Json => {
            let mut v = json!({
                "input": {"command": "involution", "p": p, "m": m, "q": q, "denominator": denominator},
                "samples": grid.len(),
                "alpha_free": check_json(&free),
                "alpha_squared_is_generator": check_json(&square),
                "alpha_is_z2p_generator": check_json(&composite),
            });
            if let (Some(x), Some((image, fixed, orbit))) = (&pt, &detail) {
                v.as_object_mut().expect("object").insert(
                    "point".into(),
                    json!({
                        "point": x.to_string(),
                        "alpha": image.to_string(),
                        "class_fixed": fixed,
                        "alpha_orbit": orbit.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    }),
                );
            }
            render_json(&v)
        }
        OutputMode::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "action: p={p} q={}", join(&q, ","));
            let _ = writeln!(out, "samples: {} (phases j/{denominator})", grid.len());
            let _ = writeln!(out, "involution free on samples: {}", check_text(&free));
            let _ = writeln!(
                out,
                "alpha squared is the Z_{p} generator: {}",
                check_text(&square)
            );
            let _ = writeln!(
                out,
                "lift generates Z_{}: {}",
                2 * p,
                check_text(&composite)
            );
            if let (Some(x), Some((image, fixed, orbit))) = (&pt, &detail) {
                let _ = writeln!(out, "point: {x}");
                let _ = writeln!(out, "alpha: {image}");
                let _ = writeln!(out, "class fixed: {fixed}");
                let _ = writeln!(out, "orbit length: {}", orbit.len());
            }
            out
        }
    };
    Ok((EXIT_OK, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_examples() {
        assert_eq!(dispatch_by_p(5, 2).unwrap(), SpaceKind::Sphere(3));
        assert_eq!(dispatch_by_p(6, 2).unwrap(), SpaceKind::RealProjective(3));
        assert_eq!(dispatch_by_p(8, 3).unwrap(), SpaceKind::LensMod2(3));
        assert!(dispatch_by_p(1, 3).is_err());
        assert!(dispatch_by_p(4, 0).is_err());
    }

    fn run_json(command: Command) -> (i32, Value) {
        let out = run(&RunConfig {
            command,
            output: OutputMode::Json,
        });
        (out.code, serde_json::from_str(&out.stdout).unwrap())
    }

    #[test]
    fn classify_by_p() {
        let (code, v) = run_json(Command::Classify {
            fiber: FiberSelector::ByP { p: 8, m: 3 },
            kmax: None,
        });
        assert_eq!(code, 0);
        let survivors: Vec<&Value> = v["scenarios"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|s| s["status"] == "survived")
            .collect();
        assert_eq!(survivors.len(), 1);
        assert_eq!(survivors[0]["matches"][0]["family"], 2);
    }

    #[test]
    fn gysin_command() {
        let (code, v) = run_json(Command::Gysin {
            orbit: vec![1, 1, 1, 1],
            space: vec![1, 1, 1, 1],
        });
        assert_eq!(code, 0);
        assert_eq!(v["profiles"].as_array().unwrap().len(), 1);
        assert_eq!(v["profiles"][0]["char_class"][1], "forced zero");
    }

    #[test]
    fn involution_command() {
        let (code, v) = run_json(Command::Involution {
            p: 4,
            m: 2,
            q: Some(vec![1, 1]),
            denominator: 16,
            point: Some("0,1/8".into()),
        });
        assert_eq!(code, 0);
        assert_eq!(v["alpha_free"], "pass");
        assert_eq!(v["point"]["alpha_orbit"].as_array().unwrap().len(), 8);
    }

    #[test]
    fn errors_are_one_line() {
        let out = run(&RunConfig {
            command: Command::Classify {
                fiber: FiberSelector::Ring {
                    text: "ring F2[a:1,b:1]/(a^2, b^2) cap 3".into(),
                    assume_trivial_action: false,
                },
                kmax: None,
            },
            output: OutputMode::Text,
        });
        assert_eq!(out.code, EXIT_UNSUPPORTED);
        assert_eq!(out.stderr.lines().count(), 1);
        assert!(out.stderr.starts_with("error[UnsupportedFiber]"));
    }

    #[test]
    fn coindex_command() {
        let (code, v) = run_json(Command::Coindex {
            ring: "ring F2[x:1]/(x^4) cap 8".into(),
            class: "x".into(),
        });
        assert_eq!(code, 0);
        assert_eq!(v["coindex"], 3);
        assert_eq!(v["borsuk_bound"], 4);
    }
}
