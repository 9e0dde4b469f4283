//! Depth-first enumeration of differentials, page by page.
//!
//! At every unstable page the search branches over all images of the
//! generators that have a nonzero target, extends each choice by the
//! derivation rule and turns the page. A branch dies when the extension is
//! inconsistent, when the stable page has cohomology above the fiber
//! dimension, or when its total dimensions admit no exact Gysin profile.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::f2::BitVec;
use crate::gysin::{gysin_gate, GysinGate};
use crate::reconstruct::{
    bottom_row_nilpotency, candidates_for_top, family_one, match_invariants, CandidateMatch,
    CandidatePresentation, NoMatch, ReconstructError,
};
use crate::ring::{
    free_involution_parity_gate, standard_space, ParityGate, Presentation, SpaceKind,
};
use crate::spectral::{
    build_e2, extend_leibniz, is_stable, total_dims, turn_page, DifferentialAssignment, Fiber,
    GeneratorImage, LeibnizWitness, Page, SpectralError, SquareWitness, Window,
};

pub const DEFAULT_BRANCH_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error("invalid fiber: {0}")]
    InvalidFiber(String),
    #[error("more than {0} branches explored")]
    BranchCapExceeded(usize),
    #[error("invalid case {0:?}; expected a, b or c")]
    InvalidCase(String),
    #[error("no scenario {index}; the search produced {count}")]
    NoSuchScenario { index: usize, count: usize },
}

/// The fiber of the Borel fibration, with an optional name.
#[derive(Clone, Debug)]
pub struct FiberSpec {
    pub presentation: Presentation,
    pub kind: Option<SpaceKind>,
    pub assume_trivial_action: bool,
}

impl FiberSpec {
    pub fn standard(kind: SpaceKind) -> Result<Self, SearchError> {
        let presentation =
            standard_space(kind).map_err(|e| SearchError::InvalidFiber(e.to_string()))?;
        Ok(FiberSpec {
            presentation,
            kind: Some(kind),
            assume_trivial_action: false,
        })
    }

    pub fn describe(&self) -> String {
        match self.kind {
            Some(k) => k.describe(),
            None => self.presentation.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub kmax: Option<usize>,
    pub branch_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            kmax: None,
            branch_cap: DEFAULT_BRANCH_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PruneReason {
    IllDefined(Box<LeibnizWitness>),
    NotSquareZero(Box<SquareWitness>),
    FreenessViolation { degree: usize },
    GysinInfeasible { degree: usize },
    Unsupported { detail: String },
}

impl PruneReason {
    pub fn code(&self) -> &'static str {
        match self {
            PruneReason::IllDefined(_) => "IllDefined",
            PruneReason::NotSquareZero(_) => "NotSquareZero",
            PruneReason::FreenessViolation { .. } => "FreenessViolation",
            PruneReason::GysinInfeasible { .. } => "GysinInfeasible",
            PruneReason::Unsupported { .. } => "Unsupported",
        }
    }
}

impl fmt::Display for PruneReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PruneReason::IllDefined(w) => write!(f, "IllDefined: {w}"),
            PruneReason::NotSquareZero(w) => write!(f, "NotSquareZero: {w}"),
            PruneReason::FreenessViolation { degree } => {
                write!(
                    f,
                    "FreenessViolation: H^{degree} of the Borel construction is nonzero"
                )
            }
            PruneReason::GysinInfeasible { degree } => {
                write!(
                    f,
                    "GysinInfeasible: no exact rank profile, fails in degree {degree}"
                )
            }
            PruneReason::Unsupported { detail } => write!(f, "Unsupported: {detail}"),
        }
    }
}

/// One branching choice: `d_r` on the generators that had somewhere to go.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub r: usize,
    pub choices: Vec<(String, String)>,
    pub assignment: DifferentialAssignment,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .choices
            .iter()
            .map(|(g, im)| format!("{g}→{im}"))
            .collect();
        write!(f, "d{}[{}]", self.r, parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Survived {
        nilpotency: usize,
        matches: Result<Vec<CandidateMatch>, NoMatch>,
    },
    Pruned(PruneReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioReport {
    pub steps: Vec<Step>,
    pub outcome: Outcome,
    /// total dimensions, through the fiber's top degree for survivors and
    /// Gysin failures, through the reliable degree for freeness failures,
    /// empty when a differential was inconsistent
    pub totals: Vec<usize>,
    /// page on which the branch ended
    pub last_page: usize,
}

impl ScenarioReport {
    pub fn branch(&self) -> String {
        if self.steps.is_empty() {
            "(no choices)".into()
        } else {
            self.steps
                .iter()
                .map(Step::to_string)
                .collect::<Vec<_>>()
                .join(" / ")
        }
    }

    pub fn survived(&self) -> bool {
        matches!(self.outcome, Outcome::Survived { .. })
    }

    pub fn prune_reason(&self) -> Option<&PruneReason> {
        match &self.outcome {
            Outcome::Pruned(r) => Some(r),
            Outcome::Survived { .. } => None,
        }
    }

    pub fn matches(&self) -> Option<&[CandidateMatch]> {
        match &self.outcome {
            Outcome::Survived { matches: Ok(m), .. } => Some(m),
            _ => None,
        }
    }

    pub fn unmatched(&self) -> bool {
        matches!(
            self.outcome,
            Outcome::Survived {
                matches: Err(_),
                ..
            }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub fiber: String,
    pub fiber_dims: Vec<usize>,
    pub window: Window,
    pub parity: ParityGate,
    pub scenarios: Vec<ScenarioReport>,
}

impl SearchReport {
    pub fn survivors(&self) -> impl Iterator<Item = &ScenarioReport> {
        self.scenarios.iter().filter(|s| s.survived())
    }

    pub fn pruned(&self) -> impl Iterator<Item = &ScenarioReport> {
        self.scenarios.iter().filter(|s| !s.survived())
    }
}

/// All choices of `d_r` on the page's generators. Generators without a
/// nonzero target are fixed at zero; the rest run over every element of
/// their target, earlier generators varying slowest.
pub fn enumerate_assignments(page: &Page) -> Vec<DifferentialAssignment> {
    let base = DifferentialAssignment::zero(page);
    let branching: Vec<(usize, usize, usize, usize)> = page
        .generators()
        .iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let (k, l) = page.window().target(page.r(), g.k, g.l)?;
            let n = page.dim(k, l);
            (n > 0).then_some((i, k, l, n))
        })
        .collect();
    let options: Vec<Vec<BitVec>> = branching
        .iter()
        .map(|&(_, _, _, n)| BitVec::all(n).collect())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; branching.len()];
    loop {
        let mut a = base.clone();
        for (slot, &(i, k, l, _)) in branching.iter().enumerate() {
            a.images[i] = GeneratorImage {
                generator: page.generators()[i].clone(),
                image: Some(crate::spectral::PageElement {
                    k,
                    l,
                    coords: options[slot][idx[slot]].clone(),
                }),
            };
        }
        out.push(a);
        // odometer, last position fastest
        let mut pos = branching.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FreenessGate {
    Pass,
    Fail(usize),
}

/// A free action makes the Borel construction look like the orbit space, so
/// nothing survives above the fiber's dimension `n`.
pub fn freeness_gate(einf: &Page, n: usize) -> Result<FreenessGate, SearchError> {
    let jmax = einf.window().reliable_degree();
    let totals = total_dims(einf, jmax)?;
    Ok(match (n + 1..=jmax).find(|&j| totals[j] != 0) {
        Some(j) => FreenessGate::Fail(j),
        None => FreenessGate::Pass,
    })
}

struct Ctx {
    fiber_dims: Vec<usize>,
    candidates: Vec<CandidatePresentation>,
    n: usize,
    cap: usize,
    explored: usize,
    out: Vec<ScenarioReport>,
}

fn finish(ctx: &Ctx, page: &Page, steps: Vec<Step>) -> Result<ScenarioReport, SearchError> {
    let n = ctx.n;
    let jmax = page.window().reliable_degree();
    let all = total_dims(page, jmax)?;
    let pruned = |reason, totals: Vec<usize>| ScenarioReport {
        steps: steps.clone(),
        outcome: Outcome::Pruned(reason),
        totals,
        last_page: page.r(),
    };
    if let FreenessGate::Fail(degree) = freeness_gate(page, n)? {
        return Ok(pruned(PruneReason::FreenessViolation { degree }, all));
    }
    let totals = all[..=n].to_vec();
    let gate = gysin_gate(&totals, &ctx.fiber_dims[..=n])
        .map_err(|e| SearchError::InvalidFiber(e.to_string()))?;
    if let GysinGate::Fail { degree } = gate {
        return Ok(pruned(PruneReason::GysinInfeasible { degree }, totals));
    }
    let nilpotency = bottom_row_nilpotency(page);
    let matches = match match_invariants(&totals, nilpotency, &ctx.candidates) {
        Ok(m) => Ok(m),
        Err(ReconstructError::NoMatch(d)) => Err(d),
        Err(e) => return Err(e.into()),
    };
    Ok(ScenarioReport {
        steps,
        outcome: Outcome::Survived {
            nilpotency,
            matches,
        },
        totals,
        last_page: page.r(),
    })
}

fn explore(ctx: &mut Ctx, page: Page, steps: Vec<Step>) -> Result<(), SearchError> {
    if is_stable(&page) {
        let report = finish(ctx, &page, steps)?;
        ctx.out.push(report);
        return Ok(());
    }
    let options = enumerate_assignments(&page);
    if options.len() == 1 {
        // nothing to choose; d_r vanishes for bidegree reasons
        return explore(ctx, page.advance(), steps);
    }
    for a in options {
        ctx.explored += 1;
        if ctx.explored > ctx.cap {
            return Err(SearchError::BranchCapExceeded(ctx.cap));
        }
        take_step(ctx, &page, &steps, a)?;
    }
    Ok(())
}

fn take_step(
    ctx: &mut Ctx,
    page: &Page,
    steps: &[Step],
    a: DifferentialAssignment,
) -> Result<(), SearchError> {
    let mut steps = steps.to_vec();
    steps.push(Step {
        r: page.r(),
        choices: a.describe(page),
        assignment: a.clone(),
    });
    let pruned = |reason| ScenarioReport {
        steps: steps.clone(),
        outcome: Outcome::Pruned(reason),
        totals: Vec::new(),
        last_page: page.r(),
    };
    let next = match extend_leibniz(page, &a) {
        Ok(d) if d.is_zero() => page.advance(),
        Ok(d) => match turn_page(page, &d) {
            Ok(p) => p,
            Err(SpectralError::UnsupportedInstance(detail)) => {
                ctx.out.push(pruned(PruneReason::Unsupported { detail }));
                return Ok(());
            }
            Err(e) => return Err(e.into()),
        },
        Err(SpectralError::IllDefined(w)) => {
            ctx.out.push(pruned(PruneReason::IllDefined(w)));
            return Ok(());
        }
        Err(SpectralError::NotSquareZero(w)) => {
            ctx.out.push(pruned(PruneReason::NotSquareZero(w)));
            return Ok(());
        }
        Err(SpectralError::UnsupportedInstance(detail)) => {
            ctx.out.push(pruned(PruneReason::Unsupported { detail }));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    explore(ctx, next, steps)
}

/// `E₂` page of the fiber's Borel spectral sequence.
pub fn initial_page(fiber: &FiberSpec, config: &SearchConfig) -> Result<Page, SearchError> {
    let f = Arc::new(Fiber::new(
        &fiber.presentation,
        fiber.assume_trivial_action,
    )?);
    let window = match config.kmax {
        Some(k) => Window::new(k, f.top())?,
        None => Window::default_for(f.top()),
    };
    Ok(build_e2(f, window)?)
}

fn context(fiber: &FiberSpec, page: &Page, config: &SearchConfig) -> Result<Ctx, SearchError> {
    let n = page.window().lmax;
    if n == 0 {
        return Err(SearchError::InvalidFiber(
            "fiber has no positive-degree cohomology".into(),
        ));
    }
    let candidates = match fiber.kind {
        Some(SpaceKind::Sphere(_)) => vec![family_one(n + 1)?],
        _ => candidates_for_top(n)?,
    };
    Ok(Ctx {
        fiber_dims: page.fiber().dims(),
        candidates,
        n,
        cap: config.branch_cap,
        explored: 0,
        out: Vec::new(),
    })
}

/// Every branch of the search, survivors and pruned alike, in search order.
pub fn classify(fiber: &FiberSpec, config: &SearchConfig) -> Result<SearchReport, SearchError> {
    let page = initial_page(fiber, config)?;
    let mut ctx = context(fiber, &page, config)?;
    let parity = free_involution_parity_gate(&ctx.fiber_dims);
    let window = page.window();
    if parity == ParityGate::Pass {
        explore(&mut ctx, page, Vec::new())?;
    }
    Ok(SearchReport {
        fiber: fiber.describe(),
        fiber_dims: ctx.fiber_dims,
        window,
        parity,
        scenarios: ctx.out,
    })
}

/// The three nonzero choices of `d₂` on the lens fiber's generators `v`, `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LensCase {
    /// `d₂v = t²`, `d₂w = t²v`
    A,
    /// `d₂v = t²`, `d₂w = 0`
    B,
    /// `d₂v = 0`, `d₂w = t²v`
    C,
}

impl std::str::FromStr for LensCase {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" | "A" => Ok(LensCase::A),
            "b" | "B" => Ok(LensCase::B),
            "c" | "C" => Ok(LensCase::C),
            _ => Err(SearchError::InvalidCase(s.into())),
        }
    }
}

/// Runs one named `d₂` on the mod-2 lens fiber and searches everything
/// below it.
pub fn replay_case(
    case: LensCase,
    m: usize,
    config: &SearchConfig,
) -> Result<Vec<ScenarioReport>, SearchError> {
    let fiber = FiberSpec::standard(SpaceKind::LensMod2(m))?;
    let page = initial_page(&fiber, config)?;
    let mut ctx = context(&fiber, &page, config)?;
    let missing = || SearchError::InvalidFiber("lens page lacks an expected class".into());
    let v = page.class_by_label(0, "v").ok_or_else(missing)?;
    let w = page.class_by_label(0, "w").ok_or_else(missing)?;
    let t2 = page.class_by_label(2, "1").ok_or_else(missing)?;
    let t2v = page.class_by_label(2, "v").ok_or_else(missing)?;
    let mut a = DifferentialAssignment::zero(&page);
    if matches!(case, LensCase::A | LensCase::B) {
        a = a.with(&v, t2)?;
    }
    if matches!(case, LensCase::A | LensCase::C) {
        a = a.with(&w, t2v)?;
    }
    take_step(&mut ctx, &page, &[], a)?;
    Ok(ctx.out)
}

/// A page of a replayed branch, or the point where the branch broke.
#[derive(Clone, Debug)]
pub struct Replay {
    pub pages: Vec<Page>,
    pub stopped: Option<PruneReason>,
}

/// Pages `E₂, E₃, …` along a recorded branch. Pages with no recorded
/// step carry the zero differential.
pub fn replay_steps(
    fiber: &FiberSpec,
    config: &SearchConfig,
    steps: &[Step],
) -> Result<Replay, SearchError> {
    let mut page = initial_page(fiber, config)?;
    let mut pages = vec![page.clone()];
    while !is_stable(&page) {
        let next = match steps.iter().find(|s| s.r == page.r()) {
            None => page.advance(),
            Some(step) => match extend_leibniz(&page, &step.assignment) {
                Ok(d) => turn_page(&page, &d)?,
                Err(SpectralError::IllDefined(w)) => {
                    return Ok(Replay {
                        pages,
                        stopped: Some(PruneReason::IllDefined(w)),
                    })
                }
                Err(SpectralError::NotSquareZero(w)) => {
                    return Ok(Replay {
                        pages,
                        stopped: Some(PruneReason::NotSquareZero(w)),
                    })
                }
                Err(e) => return Err(e.into()),
            },
        };
        pages.push(next.clone());
        page = next;
    }
    Ok(Replay {
        pages,
        stopped: None,
    })
}

/// Pages along scenario `index` of a fresh search.
pub fn scenario_pages(
    fiber: &FiberSpec,
    config: &SearchConfig,
    index: usize,
) -> Result<(ScenarioReport, Replay), SearchError> {
    let report = classify(fiber, config)?;
    let count = report.scenarios.len();
    let scenario = report
        .scenarios
        .into_iter()
        .nth(index)
        .ok_or(SearchError::NoSuchScenario { index, count })?;
    let replay = replay_steps(fiber, config, &scenario.steps)?;
    Ok((scenario, replay))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lens(m: usize) -> FiberSpec {
        FiberSpec::standard(SpaceKind::LensMod2(m)).unwrap()
    }

    #[test]
    fn lens_e2_has_four_assignments() {
        let page = initial_page(&lens(3), &SearchConfig::default()).unwrap();
        let opts = enumerate_assignments(&page);
        assert_eq!(opts.len(), 4);
        assert!(opts[0].is_zero());
        let described: Vec<Vec<(String, String)>> =
            opts.iter().map(|a| a.describe(&page)).collect();
        assert_eq!(described[1][0].1, "0");
        assert_eq!(described[1][1].1, "t^2⊗v");
        assert_eq!(described[2][0].1, "t^2⊗1");
    }

    #[test]
    fn sphere_assignments() {
        let s = FiberSpec::standard(SpaceKind::Sphere(3)).unwrap();
        let page = initial_page(&s, &SearchConfig::default()).unwrap();
        assert_eq!(enumerate_assignments(&page).len(), 1);
        let mut p = page;
        while p.r() < 4 {
            p = p.advance();
        }
        assert_eq!(enumerate_assignments(&p).len(), 2);
    }

    #[test]
    fn sphere_classification() {
        let s = FiberSpec::standard(SpaceKind::Sphere(3)).unwrap();
        let r = classify(&s, &SearchConfig::default()).unwrap();
        let surv: Vec<_> = r.survivors().collect();
        assert_eq!(surv.len(), 1);
        assert_eq!(surv[0].totals, vec![1, 1, 1, 1]);
        assert_eq!(surv[0].matches().unwrap()[0].family, 1);
    }

    #[test]
    fn branch_cap() {
        let cfg = SearchConfig {
            kmax: None,
            branch_cap: 2,
        };
        assert!(matches!(
            classify(&lens(3), &cfg),
            Err(SearchError::BranchCapExceeded(2))
        ));
    }

    #[test]
    fn case_names() {
        assert_eq!("b".parse::<LensCase>().unwrap(), LensCase::B);
        assert!("d".parse::<LensCase>().is_err());
    }

    #[test]
    fn parity_gate_skips_search() {
        let rp2 = FiberSpec::standard(SpaceKind::RealProjective(2)).unwrap();
        let r = classify(&rp2, &SearchConfig::default()).unwrap();
        assert!(matches!(r.parity, ParityGate::Fail(_)));
        assert!(r.scenarios.is_empty());
    }
}
