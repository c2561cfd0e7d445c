mod support;

use proptest::prelude::*;
use puzzle_notation::cube::{self, Face, FaceletCube, Formula, Move, Turn};
use support::oracles::{self, cube_distances, cube_from_stickers, stickers_of};

fn move_index(m: Move) -> usize {
    m.face.index() * 3 + m.turn.quarter_turns() - 1
}

#[test]
fn every_move_matches_the_geometric_model() {
    let geometric = oracles::geometric_moves();
    let scrambled =
        FaceletCube::solved().apply_formula(&Formula::parse("R U2 F' L D B2 R' U").unwrap());
    for m in Move::all() {
        for start in [FaceletCube::solved(), scrambled] {
            let want = oracles::gather(&stickers_of(&start), &geometric[move_index(m)]);
            assert_eq!(stickers_of(&start.apply_move(m)), want, "{m}");
        }
    }
}

#[test]
fn positions_per_distance() {
    let dist = cube_distances(4);
    let mut counts = [0usize; 5];
    for d in dist.values() {
        counts[*d] += 1;
    }
    assert_eq!(counts, [1, 18, 243, 3240, 43239]);
}

#[test]
fn solver_is_optimal_on_a_sample_at_distance_four() {
    let dist = cube_distances(4);
    for (s, &d) in dist.iter().filter(|(_, &d)| d == 4).take(2000) {
        let c = cube_from_stickers(s);
        let f = cube::solve(&c, cube::DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(f.len(), d);
        assert!(c.apply_formula(&f).is_solved());
    }
}

#[test]
fn deeper_scrambles_are_solved() {
    for seed in 0..40 {
        let f = cube::random_scramble_capped(seed, 7, 7).unwrap();
        let c = FaceletCube::solved().apply_formula(&f);
        let s = cube::solve(&c, 7).unwrap();
        assert!(s.len() <= 7);
        assert!(c.apply_formula(&s).is_solved());
    }
}

#[test]
fn solver_respects_depth_cap() {
    let c = FaceletCube::solved().apply_formula(&Formula::parse("R U F").unwrap());
    assert!(matches!(
        cube::solve(&c, 2),
        Err(cube::SolveError::DepthExceeded(2))
    ));
}

fn any_move() -> impl Strategy<Value = Move> {
    (0..6usize, 0..3usize).prop_map(|(f, t)| Move::new(Face::from_index(f).unwrap(), Turn::ALL[t]))
}

fn any_formula() -> impl Strategy<Value = Formula> {
    proptest::collection::vec(any_move(), 0..25).prop_map(Formula::from)
}

proptest! {
    #[test]
    fn inverse_formula_undoes(f in any_formula()) {
        let c = FaceletCube::solved().apply_formula(&f).apply_formula(&f.inverse());
        prop_assert!(c.is_solved());
    }

    #[test]
    fn encoding_round_trips(f in any_formula()) {
        let c = FaceletCube::solved().apply_formula(&f);
        let text = c.encode();
        prop_assert_eq!(FaceletCube::decode(&text).unwrap(), c);
    }

    #[test]
    fn formula_text_round_trips(f in any_formula()) {
        prop_assert_eq!(Formula::parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn scrambles_are_canonical(seed in any::<u64>(), len in 1usize..=5) {
        let f = cube::random_scramble(seed, len).unwrap();
        prop_assert_eq!(f.len(), len);
        for w in f.moves().windows(2) {
            prop_assert!(w[0].may_precede(w[1]));
        }
        prop_assert!(!FaceletCube::solved().apply_formula(&f).is_solved());
    }
}
