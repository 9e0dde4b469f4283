use lensorbit::lens::{alpha, orbit_equal, zp_act, ActionParams, Coord, PhasePoint};
use num_integer::Integer;
use num_rational::Rational64;
use proptest::prelude::*;

fn arb_action() -> impl Strategy<Value = ActionParams> {
    (2i64..=12, 1usize..=3).prop_flat_map(|(p, m)| {
        let q = prop::collection::vec(0i64..4 * p, m).prop_map(move |raw| {
            raw.into_iter()
                .map(|x| {
                    // nearest odd weight coprime to p
                    (x..).find(|y| y % 2 == 1 && y.gcd(&p) == 1).unwrap()
                })
                .collect::<Vec<_>>()
        });
        (Just(p), q).prop_map(|(p, q)| ActionParams::new(p, q).unwrap())
    })
}

fn arb_point(m: usize) -> impl Strategy<Value = PhasePoint> {
    prop::collection::vec(prop::option::weighted(0.85, (0i64..96, 1i64..=48)), m)
        .prop_filter("not all zero", |cs| cs.iter().any(Option::is_some))
        .prop_map(|cs| {
            PhasePoint::new(
                cs.into_iter()
                    .map(|c| match c {
                        None => Coord::Zero,
                        Some((n, d)) => Coord::Phase(Rational64::new(n, d)),
                    })
                    .collect(),
            )
            .unwrap()
        })
}

fn action_and_points() -> impl Strategy<Value = (ActionParams, PhasePoint, PhasePoint)> {
    arb_action().prop_flat_map(|a| {
        let m = a.m();
        (Just(a), arb_point(m), arb_point(m))
    })
}

/// Same orbit by trying every group element.
fn orbit_oracle(x: &PhasePoint, y: &PhasePoint, a: &ActionParams) -> bool {
    (0..a.p()).any(|k| zp_act(x, k, a).unwrap() == *y)
}

proptest! {
    #[test]
    fn action_composes((a, x, _) in action_and_points(), j in -30i64..30, k in -30i64..30) {
        let two_steps = zp_act(&zp_act(&x, j, &a).unwrap(), k, &a).unwrap();
        prop_assert_eq!(two_steps, zp_act(&x, j + k, &a).unwrap());
        prop_assert_eq!(zp_act(&x, a.p(), &a).unwrap(), x.clone());
        prop_assert_eq!(zp_act(&x, 0, &a).unwrap(), x);
    }

    #[test]
    fn alpha_squares_to_generator_and_commutes((a, x, _) in action_and_points(), k in -20i64..20) {
        let ax = alpha(&x, &a).unwrap();
        prop_assert_eq!(alpha(&ax, &a).unwrap(), zp_act(&x, 1, &a).unwrap());
        prop_assert_eq!(
            alpha(&zp_act(&x, k, &a).unwrap(), &a).unwrap(),
            zp_act(&ax, k, &a).unwrap()
        );
        prop_assert!(!orbit_equal(&ax, &x, &a).unwrap());
    }

    #[test]
    fn orbit_equal_is_an_equivalence((a, x, y) in action_and_points(), j in 0i64..40, k in 0i64..40) {
        prop_assert!(orbit_equal(&x, &x, &a).unwrap());
        let xy = orbit_equal(&x, &y, &a).unwrap();
        prop_assert_eq!(xy, orbit_equal(&y, &x, &a).unwrap());
        prop_assert_eq!(xy, orbit_oracle(&x, &y, &a));
        let x1 = zp_act(&x, j, &a).unwrap();
        let x2 = zp_act(&x1, k, &a).unwrap();
        prop_assert!(orbit_equal(&x, &x1, &a).unwrap());
        prop_assert!(orbit_equal(&x1, &x2, &a).unwrap());
        prop_assert!(orbit_equal(&x, &x2, &a).unwrap());
        prop_assert_eq!(orbit_equal(&x2, &y, &a).unwrap(), xy);
    }

    #[test]
    fn text_form_round_trips((_, x, _) in action_and_points()) {
        let back: PhasePoint = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }
}
