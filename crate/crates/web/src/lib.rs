//! Browser bindings: the demo page calls these and draws the JSON they return.

use lensorbit::cli::{run, Command, FiberSelector, OutputMode, RunConfig};
use wasm_bindgen::prelude::wasm_bindgen;

fn selector(fiber: &str, param: usize) -> FiberSelector {
    match fiber {
        "sphere" => FiberSelector::Sphere { n: param },
        "rp" => FiberSelector::Projective { n: param },
        _ => FiberSelector::Lens { m: param },
    }
}

fn json(command: Command) -> String {
    let out = run(&RunConfig {
        command,
        output: OutputMode::Json,
    });
    out.stdout
}

/// Search report for a fiber (`lens`, `sphere` or `rp`) as JSON.
#[wasm_bindgen]
pub fn classify(fiber: &str, param: usize) -> String {
    json(Command::Classify {
        fiber: selector(fiber, param),
        kmax: None,
    })
}

/// Every page along one scenario of the search, as JSON.
#[wasm_bindgen]
pub fn pages(fiber: &str, param: usize, scenario: usize) -> String {
    json(Command::Pages {
        fiber: selector(fiber, param),
        kmax: None,
        scenario,
    })
}

/// Gysin rank profiles for comma-separated dimension vectors.
#[wasm_bindgen]
pub fn gysin(orbit: &str, space: &str) -> String {
    let parse = |s: &str| -> Result<Vec<usize>, String> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| format!("not a dimension: {t:?}"))
            })
            .collect()
    };
    match (parse(orbit), parse(space)) {
        (Ok(orbit), Ok(space)) => json(Command::Gysin { orbit, space }),
        (Err(e), _) | (_, Err(e)) => error_json(&e),
    }
}

fn error_json(message: &str) -> String {
    format!(
        "{{\"error\":{{\"code\":\"InvalidParam\",\"message\":{:?}}}}}\n",
        message
    )
}
