use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use realgame::related::banach_mazur::{bm_certificate, bm_play, BartekMeagre, MeagrePresentation, RandomIntervals};
use realgame::related::choquet::{choquet_play, paul_certificate, Ambient, PaulComplete, RandomOpen};
use realgame::strategy::{random_dyadic_between, SeededRandomStrategy};
use realgame::{
    check_legality, midpoint, play, ternary_digits, CantorSet, GameState, Rational, SetDescription,
};

fn rational_in_unit() -> impl Strategy<Value = Rational> {
    (1i64..2000).prop_flat_map(|q| (0..=q).prop_map(move |p| Rational::new(p, q)))
}

fn open_pair() -> impl Strategy<Value = (Rational, Rational)> {
    (rational_in_unit(), rational_in_unit())
        .prop_filter("distinct", |(a, b)| a != b)
        .prop_map(|(a, b)| if a < b { (a, b) } else { (b, a) })
}

proptest! {
    #[test]
    fn display_parse_round_trip(q in rational_in_unit()) {
        prop_assert_eq!(q.to_string().parse::<Rational>().unwrap(), q);
    }

    #[test]
    fn midpoint_strictly_inside((a, b) in open_pair()) {
        let m = midpoint(&a, &b).unwrap();
        prop_assert!(a < m && m < b);
    }

    #[test]
    fn ternary_expansion_is_exact(q in rational_in_unit()) {
        prop_assert_eq!(ternary_digits(&q).unwrap().to_rational(), q);
    }

    #[test]
    fn cantor_symmetric(q in rational_in_unit()) {
        let mirror = &Rational::one() - &q;
        prop_assert_eq!(CantorSet.contains(&q), CantorSet.contains(&mirror));
        let scaled = &q / &Rational::from_integer(3);
        prop_assert_eq!(CantorSet.contains(&q), CantorSet.contains(&scaled));
    }

    #[test]
    fn next_above_is_in_cantor(q in rational_in_unit()) {
        if let Some(n) = CantorSet.next_above(&q) {
            prop_assert!(n >= q && CantorSet.contains(&n));
        }
    }

    #[test]
    fn random_dyadic_inside((a, b) in open_pair(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_dyadic_between(&a, &b, &mut rng);
        prop_assert!(a < x && x < b);
    }

    #[test]
    fn apply_move_accepts_exactly_the_open_interval(
        moves in proptest::collection::vec(rational_in_unit(), 1..12)
    ) {
        let mut state = GameState::default();
        for v in moves {
            let legal = state.lower() < &v && &v < state.upper();
            match state.apply_move(v) {
                Ok(next) => { prop_assert!(legal); state = next; }
                Err(_) => prop_assert!(!legal),
            }
        }
    }

    #[test]
    fn random_plays_are_strictly_nested(a in any::<u64>(), b in any::<u64>(), n in 1usize..40) {
        let trace = play(&SeededRandomStrategy::new(a), &SeededRandomStrategy::new(b), n, &SetDescription::unit()).unwrap();
        prop_assert!(check_legality(&trace).is_ok());
        let again = play(&SeededRandomStrategy::new(a), &SeededRandomStrategy::new(b), n, &SetDescription::unit()).unwrap();
        prop_assert_eq!(trace.to_json(), again.to_json());
        // Any legal continuation tightens the enclosure.
        let state = GameState::replay(&trace.moves).unwrap();
        let m = midpoint(state.lower(), state.upper()).unwrap();
        let next = state.apply_move(m.clone()).unwrap();
        prop_assert!(next.lower() > state.lower() && next.upper() == state.upper());
    }

    #[test]
    fn bartek_avoids_every_piece(seed in any::<u64>(), n in 1usize..15) {
        let set = SetDescription::Union(vec![
            SetDescription::Cantor,
            SetDescription::Countable(realgame::CountableEnumeration::Dyadic),
        ]);
        let bartek = BartekMeagre::new(MeagrePresentation::from_set(&set).unwrap());
        let trace = bm_play(&RandomIntervals::new(seed), &bartek, &set, n).unwrap();
        prop_assert!(bm_certificate(&trace, n).is_ok());
    }

    #[test]
    fn paul_shrinks_diameters(seed in any::<u64>(), n in 1usize..20) {
        let trace = choquet_play(&RandomOpen::new(seed), &PaulComplete, Ambient::UnitInterval, n).unwrap();
        let cert = paul_certificate(&trace, n).unwrap();
        prop_assert!(&cert.enclosure.1 - &cert.enclosure.0 <= Rational::inv_pow2(n as u32));
    }
}
