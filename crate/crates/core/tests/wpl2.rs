use proptest::prelude::*;
use sodlab_core::sod::Direction;
use sodlab_core::wpl2::{self, Sheaf, Wpl2Object, DEFAULT_BOUND, OMEGA};
use sodlab_core::{euler_pairing, QuiverSpec};

/// Monomials `x1^a x2^b` of degree `a + 2b = d`.
fn monomials(d: i64) -> usize {
    let mut count = 0;
    for a in 0..=d.max(0) {
        for b in 0..=d.max(0) {
            count += usize::from(a + 2 * b == d);
        }
    }
    count
}

fn exceptional_sheaves(window: i64) -> Vec<Sheaf> {
    (-window..=window)
        .map(Sheaf::line)
        .chain([Sheaf::simple(0), Sheaf::simple(1)])
        .collect()
}

#[test]
fn line_bundle_hom_is_a_monomial_count() {
    for m in -8..=8 {
        for m2 in -8..=8 {
            let h = wpl2::sheaf_hom(Sheaf::line(m), Sheaf::line(m2));
            assert_eq!(h[0], monomials(m2 - m), "Hom(O({m}), O({m2}))");
            assert_eq!(h[1], monomials(m + OMEGA - m2), "Ext(O({m}), O({m2}))");
        }
    }
    assert_eq!(wpl2::sheaf_hom(Sheaf::line(0), Sheaf::line(1))[0], 1);
    assert_eq!(wpl2::sheaf_hom(Sheaf::line(0), Sheaf::line(2))[0], 2);
}

#[test]
fn serre_duality_in_a_window() {
    let all: Vec<Sheaf> = exceptional_sheaves(7).into_iter().chain([Sheaf::Ordinary]).collect();
    for &x in &all {
        for &y in &all {
            assert_eq!(wpl2::sheaf_hom(x, y)[1], wpl2::sheaf_hom(y, x.tau())[0], "{x} {y}");
        }
    }
}

#[test]
fn euler_form_matches_alternating_sums() {
    let q = QuiverSpec::Wpl2;
    let all: Vec<Sheaf> = exceptional_sheaves(7).into_iter().chain([Sheaf::Ordinary]).collect();
    for &x in &all {
        for &y in &all {
            let chi = wpl2::chi_sheaves(x, y);
            assert_eq!(chi, euler_pairing(&q, &x.class(), &y.class()).unwrap(), "{x} {y}");
        }
    }
}

#[test]
fn exceptional_objects_have_trivial_endomorphisms() {
    for s in exceptional_sheaves(5) {
        assert_eq!(wpl2::sheaf_hom(s, s), [1, 0]);
    }
    assert_eq!(wpl2::sheaf_hom(Sheaf::Ordinary, Sheaf::Ordinary), [1, 1]);
    let sx = Wpl2Object::new(Sheaf::Ordinary, 0);
    assert!(wpl2::wpl2_hom_dim(&sx, &sx, 0).is_err());
}

#[test]
fn fullness_examples() {
    let o = Sheaf::line;
    assert!(wpl2::is_full_exceptional(&[o(0), o(1), o(2)]));
    assert!(wpl2::is_full_exceptional(&[o(-2), o(0), Sheaf::simple(0)]));
    assert!(!wpl2::is_full_exceptional(&[o(0), o(0), o(0)]));
    assert!(!wpl2::is_full_exceptional(&[o(0), o(1)]));
    // Ext^1(O(4), O) = Hom(O, O(1)) is nonzero
    assert!(!wpl2::is_exceptional_sequence(&[o(0), o(2), o(4)]));
}

#[test]
fn class_search_respects_the_window() {
    let seq = [Sheaf::line(0), Sheaf::line(1), Sheaf::line(2)];
    let l = wpl2::left_mutate(&seq, 1, DEFAULT_BOUND).unwrap();
    assert!(wpl2::is_full_exceptional(&l));
    assert_eq!(l, vec![Sheaf::simple(1), Sheaf::line(0), Sheaf::line(2)]);
    let far = [Sheaf::line(40), Sheaf::line(42), Sheaf::simple(0)];
    assert!(matches!(
        wpl2::left_mutate(&far, 1, 30),
        Err(sodlab_core::Error::WindowTooSmall { bound: 30 })
    ));
    assert!(wpl2::left_mutate(&far, 1, DEFAULT_BOUND).is_ok());
}

fn arb_full_triple() -> impl Strategy<Value = (Vec<Sheaf>, Vec<(usize, bool)>)> {
    (
        -6i64..=6,
        prop::collection::vec((1usize..=2, any::<bool>()), 0..=6),
    )
        .prop_map(|(m, steps)| (vec![Sheaf::line(m), Sheaf::line(m + 1), Sheaf::line(m + 2)], steps))
}

proptest! {
    #[test]
    fn hom_is_twist_equivariant(
        x in (-10i64..=10).prop_map(Sheaf::line).boxed().prop_union(prop_oneof![Just(Sheaf::simple(0)), Just(Sheaf::simple(1))].boxed()),
        y in (-10i64..=10).prop_map(Sheaf::line),
        d in -9i64..=9,
        k in -2i32..=2,
        sx in -1i32..=1,
        sy in -1i32..=1,
    ) {
        let (a, b) = (Wpl2Object::new(x, sx), Wpl2Object::new(y, sy));
        let (ta, tb) = (Wpl2Object::new(x.twist(d), sx), Wpl2Object::new(y.twist(d), sy));
        prop_assert_eq!(wpl2::wpl2_hom_dim(&a, &b, k).unwrap(), wpl2::wpl2_hom_dim(&ta, &tb, k).unwrap());
        prop_assert_eq!(wpl2::wpl2_hom_dim(&b, &a, k).unwrap(), wpl2::wpl2_hom_dim(&tb, &ta, k).unwrap());
    }

    #[test]
    fn mutations_stay_full_and_invert((seq, steps) in arb_full_triple()) {
        let mut cur = seq;
        for (i, left) in steps {
            let dir = if left { Direction::Left } else { Direction::Right };
            let back = if left { Direction::Right } else { Direction::Left };
            let next = wpl2::mutate(&cur, i, dir, DEFAULT_BOUND).unwrap();
            prop_assert!(wpl2::is_full_exceptional(&next));
            prop_assert_eq!(&wpl2::mutate(&next, i, back, DEFAULT_BOUND).unwrap(), &cur);
            prop_assert_eq!(
                wpl2::twist_sequence(&next, 2),
                wpl2::mutate(&wpl2::twist_sequence(&cur, 2), i, dir, DEFAULT_BOUND).unwrap()
            );
            cur = next;
        }
    }
}

#[test]
fn window_radius_zero_and_growth() {
    let seed = wpl2::parse_sequence("(O(-c),O,S10)").unwrap();
    assert_eq!(wpl2::windowed_graph(&seed, 0, DEFAULT_BOUND).unwrap().vertices.len(), 1);
    let mut last = 0;
    for r in 1..=4 {
        let g = wpl2::windowed_graph(&seed, r, DEFAULT_BOUND).unwrap();
        assert!(g.vertices.len() > last);
        last = g.vertices.len();
        for v in &g.vertices {
            assert!(wpl2::is_full_exceptional(v));
        }
    }
    assert!(wpl2::windowed_graph(&[Sheaf::line(0); 3], 1, DEFAULT_BOUND).is_err());
}
