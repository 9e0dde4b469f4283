use std::sync::Arc;

use lensorbit::f2::rank;
use lensorbit::ring::{standard_space, Presentation, SpaceKind};
use lensorbit::search::enumerate_assignments;
use lensorbit::spectral::{
    build_e2, extend_leibniz, is_stable, turn_page, Fiber, FullDifferential, Page, Window,
};
use proptest::prelude::*;

fn fiber_strategy() -> impl Strategy<Value = (Presentation, bool)> {
    let standard = prop_oneof![
        (1usize..=4).prop_map(SpaceKind::LensMod2),
        (1usize..=5).prop_map(SpaceKind::Sphere),
        (0usize..=3).prop_map(|k| SpaceKind::RealProjective(2 * k + 1)),
    ]
    .prop_map(|k| (standard_space(k).unwrap(), false));
    let trivial = prop::sample::select(vec![
        "ring F2[a:1,b:1]/(a^2, b^2) cap 4",
        "ring F2[a:1,b:2]/(a^2, b^2) cap 5",
        "ring F2[a:2,b:3]/(a^2, b^2) cap 8",
        "ring F2[x:1,y:2]/(x^3 + x*y, y^2) cap 7",
    ])
    .prop_map(|t| (t.parse().unwrap(), true));
    prop_oneof![3 => standard, 1 => trivial]
}

fn e2(p: &Presentation, trivial: bool) -> Page {
    let f = Arc::new(Fiber::new(p, trivial).unwrap());
    let w = Window::default_for(f.top());
    build_e2(f, w).unwrap()
}

fn all_cells(page: &Page) -> impl Iterator<Item = (usize, usize)> {
    let w = page.window();
    (0..=w.kmax).flat_map(move |k| (0..=w.lmax).map(move |l| (k, l)))
}

fn check_square_zero(page: &Page, d: &FullDifferential) {
    let w = page.window();
    for (k, l) in all_cells(page) {
        let (Some(first), Some((tk, tl))) = (d.matrix(k, l), w.target(d.r(), k, l)) else {
            continue;
        };
        let Some(second) = d.matrix(tk, tl) else {
            continue;
        };
        assert!(
            second.mul(first).is_zero(),
            "d∘d ≠ 0 from ({k},{l}) on E{}",
            d.r()
        );
        for i in 0..page.dim(k, l) {
            let c = page.basis_element(k, l, i);
            let dc = d.apply(&c).unwrap();
            assert!(d.apply(&dc).unwrap().is_zero());
        }
    }
}

fn check_turn(page: &Page, d: &FullDifferential, next: &Page) {
    let mut ranks = 0;
    for (k, l) in all_cells(page) {
        assert!(
            next.dim(k, l) <= page.dim(k, l),
            "E{} grew at ({k},{l})",
            next.r()
        );
        if let Some(m) = d.matrix(k, l) {
            ranks += rank(m);
        }
    }
    let before: usize = all_cells(page).map(|(k, l)| page.dim(k, l)).sum();
    let after: usize = all_cells(page).map(|(k, l)| next.dim(k, l)).sum();
    assert_eq!(after + 2 * ranks, before);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn random_walks_through_pages((p, trivial) in fiber_strategy(), picks in prop::collection::vec(any::<u32>(), 12)) {
        let mut page = e2(&p, trivial);
        for pick in picks {
            if is_stable(&page) {
                break;
            }
            let options = enumerate_assignments(&page);
            let a = &options[pick as usize % options.len()];
            let Ok(d) = extend_leibniz(&page, a) else { break };
            check_square_zero(&page, &d);
            let next = turn_page(&page, &d).unwrap();
            check_turn(&page, &d, &next);
            if d.is_zero() {
                for (k, l) in all_cells(&page) {
                    prop_assert_eq!(next.dim(k, l), page.dim(k, l));
                }
            }
            page = next;
        }
    }
}

#[test]
fn every_choice_on_small_fibers_squares_to_zero() {
    for kind in [
        SpaceKind::LensMod2(2),
        SpaceKind::LensMod2(3),
        SpaceKind::Sphere(3),
        SpaceKind::RealProjective(3),
    ] {
        let page = e2(&standard_space(kind).unwrap(), false);
        for a in enumerate_assignments(&page) {
            if let Ok(d) = extend_leibniz(&page, &a) {
                check_square_zero(&page, &d);
                check_turn(&page, &d, &turn_page(&page, &d).unwrap());
            }
        }
    }
}

#[test]
fn zero_differential_keeps_the_page() {
    let page = e2(&standard_space(SpaceKind::LensMod2(3)).unwrap(), false);
    let next = page.advance();
    assert_eq!(next.r(), page.r() + 1);
    for (k, l) in all_cells(&page) {
        assert_eq!(next.dim(k, l), page.dim(k, l));
    }
}
