use std::sync::Arc;

use lensorbit::ring::{
    free_involution_parity_gate, poincare, standard_space, ParityGate, Presentation, SpaceKind,
};
use lensorbit::search::{classify, freeness_gate, FiberSpec, FreenessGate, SearchConfig};
use lensorbit::spectral::{build_e2, is_stable, Fiber, Window};
use proptest::prelude::*;

/// Runs the sequence with every differential zero and applies the gate.
fn zero_scenario_gate(p: &Presentation, trivial: bool) -> FreenessGate {
    let f = Arc::new(Fiber::new(p, trivial).unwrap());
    let n = f.top();
    let mut page = build_e2(f.clone(), Window::default_for(n)).unwrap();
    while !is_stable(&page) {
        page = page.advance();
    }
    freeness_gate(&page, n).unwrap()
}

#[test]
fn zero_scenario_fails_freeness_for_standard_fibers() {
    let mut kinds: Vec<SpaceKind> = (1..=7).map(SpaceKind::Sphere).collect();
    kinds.extend((1..=11).map(SpaceKind::RealProjective));
    kinds.extend((1..=7).map(SpaceKind::LensMod2));
    for kind in kinds {
        let p = standard_space(kind).unwrap();
        let gate = zero_scenario_gate(&p, false);
        assert!(
            matches!(gate, FreenessGate::Fail(_)),
            "{kind:?} gave {gate:?}"
        );
    }
}

proptest! {
    #[test]
    fn zero_scenario_fails_freeness(
        degrees in prop::collection::vec(1usize..=3, 1..=2),
        heights in prop::collection::vec(2u32..=3, 2),
    ) {
        let gens: Vec<String> = degrees.iter().enumerate().map(|(i, d)| format!("g{i}:{d}")).collect();
        let rels: Vec<String> = (0..degrees.len()).map(|i| format!("g{i}^{}", heights[i])).collect();
        let top: usize = degrees.iter().zip(&heights).map(|(&d, &h)| d * (h as usize - 1)).sum();
        let text = format!("ring F2[{}]/({}) cap {}", gens.join(","), rels.join(", "), top + 3);
        let p: Presentation = text.parse().unwrap();
        prop_assert!(matches!(zero_scenario_gate(&p, true), FreenessGate::Fail(_)));
    }

    #[test]
    fn parity_gate_follows_euler_characteristic(dims in prop::collection::vec(0usize..4, 1..10)) {
        let chi: i64 = dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        let gate = free_involution_parity_gate(&dims);
        prop_assert_eq!(gate == ParityGate::Pass, chi % 2 == 0);
    }
}

#[test]
fn parity_gate_rejects_even_projective_spaces() {
    for m in 1..=6 {
        let dims = poincare(&standard_space(SpaceKind::RealProjective(2 * m)).unwrap());
        assert!(matches!(
            free_involution_parity_gate(&dims),
            ParityGate::Fail(_)
        ));
        let report = classify(
            &FiberSpec::standard(SpaceKind::RealProjective(2 * m)).unwrap(),
            &SearchConfig::default(),
        )
        .unwrap();
        assert!(report.scenarios.is_empty());
        assert!(matches!(report.parity, ParityGate::Fail(_)));
    }
}

#[test]
fn classify_is_deterministic() {
    for kind in [
        SpaceKind::LensMod2(4),
        SpaceKind::Sphere(5),
        SpaceKind::RealProjective(7),
    ] {
        let f = FiberSpec::standard(kind).unwrap();
        let a = classify(&f, &SearchConfig::default()).unwrap();
        let b = classify(&f, &SearchConfig::default()).unwrap();
        assert_eq!(a.scenarios, b.scenarios);
    }
}

#[test]
fn survivors_have_the_orbit_euler_characteristic() {
    for kind in [
        SpaceKind::LensMod2(4),
        SpaceKind::LensMod2(6),
        SpaceKind::Sphere(5),
        SpaceKind::RealProjective(5),
    ] {
        let f = FiberSpec::standard(kind).unwrap();
        let report = classify(&f, &SearchConfig::default()).unwrap();
        let fiber_chi = lensorbit::ring::euler_char(&report.fiber_dims);
        for s in report.survivors() {
            assert_eq!(
                2 * lensorbit::ring::euler_char(&s.totals),
                fiber_chi,
                "{kind:?} {}",
                s.branch()
            );
        }
    }
}
