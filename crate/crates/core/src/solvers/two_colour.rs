//! Strong equilibria for games using at most two colours: a maximal run of
//! profitable coalition switches to the first colour, then to the second.
//! Payoffs never decrease when another player adopts your colour, which is
//! why the final colouring survives every coalition.

use std::collections::BTreeSet;

use crate::dynamics::{Path, PathBuilder, PathStatus};
use crate::error::{structure, Result};
use crate::game::{Colouring, ColourId, Game, NodeId};

/// Solves a two-colour game (any weights and bonuses) from `start`. The
/// returned path alternates at most `n` switches towards each colour and
/// ends in a strong equilibrium.
pub fn solve_two_colour(game: &Game, start: &Colouring) -> Result<(Colouring, Path)> {
    let palette: BTreeSet<ColourId> = game
        .nodes()
        .flat_map(|node| game.colour_set(node).iter().copied())
        .collect();
    if palette.len() > 2 {
        return Err(structure(format!(
            "two-colour solver needs at most two colours in use, found {}",
            palette.len()
        )));
    }
    let mut builder = PathBuilder::new(game, start.clone(), false);
    for &target in &palette {
        monochrome_phase(game, &mut builder, target);
    }
    Ok(builder.finish(PathStatus::Converged))
}

/// Repeatedly applies the largest coalition whose joint switch to `target`
/// strictly benefits every member, until none exists.
fn monochrome_phase(game: &Game, builder: &mut PathBuilder<'_>, target: ColourId) {
    loop {
        let coalition = switch_coalition(game, builder.current(), target);
        if coalition.is_empty() {
            return;
        }
        let changes: Vec<(NodeId, ColourId)> =
            coalition.iter().map(|&node| (node, target)).collect();
        builder.apply(&changes);
    }
}

/// The greatest coalition whose joint switch to `target` strictly benefits
/// every member, found by elimination: start from every node that could
/// switch, compute payoffs as if the whole candidate set switched, and drop
/// the candidates that do not strictly gain. A genuinely profitable
/// switching coalition keeps all its members through every round (adding
/// switchers never hurts a switcher), so an empty result certifies that no
/// profitable switch to `target` exists at all.
fn switch_coalition(game: &Game, s: &Colouring, target: ColourId) -> Vec<NodeId> {
    let mut candidates: Vec<NodeId> = game
        .nodes()
        .filter(|&node| {
            s.get(node) != target && game.colour_set(node).binary_search(&target).is_ok()
        })
        .collect();
    while !candidates.is_empty() {
        let mut trial = s.clone();
        for &node in &candidates {
            trial.set(node, target);
        }
        let survivors: Vec<NodeId> = candidates
            .iter()
            .copied()
            .filter(|&node| game.payoff(&trial, node) > game.payoff(s, node))
            .collect();
        let stable = survivors.len() == candidates.len();
        candidates = survivors;
        if stable {
            break;
        }
    }
    candidates
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::testgames::colouring_of;
    use crate::game::{GameBuilder, DEFAULT_BUDGET};

    fn symmetric_two_cycle() -> Game {
        let mut b = GameBuilder::new();
        b.declare_palette(&["blue", "red"]).unwrap();
        for ext in 1..=2u64 {
            b.add_node(ext).unwrap();
            b.add_colour_option(ext, "blue").unwrap();
            b.add_colour_option(ext, "red").unwrap();
        }
        b.add_edge(1, 2, 1).unwrap();
        b.add_edge(2, 1, 1).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn single_colour_game_converges_immediately() {
        let mut b = GameBuilder::new();
        for ext in 1..=3u64 {
            b.add_node(ext).unwrap();
            b.add_colour_option(ext, "blue").unwrap();
        }
        b.add_edge(1, 2, 1).unwrap();
        b.add_edge(2, 3, 1).unwrap();
        let game = b.build().unwrap();
        let start = Colouring::least(&game);
        let (answer, path) = solve_two_colour(&game, &start).unwrap();
        assert_eq!(answer, start);
        assert!(path.is_empty());
    }

    #[test]
    fn lagging_node_joins_the_first_colour() {
        let game = symmetric_two_cycle();
        let start = colouring_of(&game, &[(1, "blue"), (2, "red")]);
        let (answer, path) = solve_two_colour(&game, &start).unwrap();
        let blue = game.colour_by_token("blue").unwrap();
        assert_eq!(answer.values(), &[blue, blue]);
        assert_eq!(path.len(), 1);
        assert_eq!(path.steps[0].coalition, vec![game.node_by_ext(2).unwrap()]);
        assert!(game.is_strong(&answer, DEFAULT_BUDGET).unwrap());
        path.validate(&game).unwrap();
    }

    #[test]
    fn weighted_two_colour_games_are_supported() {
        // Node 3 prefers red by bonus, but two weight-2 blue in-edges win.
        let mut b = GameBuilder::new();
        b.declare_palette(&["blue", "red"]).unwrap();
        for ext in 1..=3u64 {
            b.add_node(ext).unwrap();
            b.add_colour_option(ext, "blue").unwrap();
            b.add_colour_option(ext, "red").unwrap();
        }
        b.set_bonus(3, "red", 3).unwrap();
        b.add_edge(1, 3, 2).unwrap();
        b.add_edge(2, 3, 2).unwrap();
        b.add_edge(3, 1, 1).unwrap();
        b.add_edge(1, 2, 1).unwrap();
        let game = b.build().unwrap();
        let start = colouring_of(&game, &[(1, "blue"), (2, "blue"), (3, "red")]);
        let (answer, path) = solve_two_colour(&game, &start).unwrap();
        assert!(game.is_strong(&answer, DEFAULT_BUDGET).unwrap());
        path.validate(&game).unwrap();
    }

    #[test]
    fn three_colours_are_refused() {
        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        b.add_colour_option(1, "b").unwrap();
        b.add_node(2).unwrap();
        b.add_colour_option(2, "c").unwrap();
        let game = b.build().unwrap();
        let start = Colouring::least(&game);
        assert!(solve_two_colour(&game, &start).is_err());
    }

    #[test]
    fn elimination_agrees_with_subset_brute_force() {
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let n = rng.random_range(2..=7u64);
            let mut b = GameBuilder::new();
            b.declare_palette(&["blue", "red"]).unwrap();
            for ext in 1..=n {
                b.add_node(ext).unwrap();
                let colours: &[&str] = match rng.random_range(0..3u8) {
                    0 => &["blue"],
                    1 => &["red"],
                    _ => &["blue", "red"],
                };
                for colour in colours {
                    b.add_colour_option(ext, colour).unwrap();
                }
                if rng.random_bool(0.3) {
                    let colour = colours[rng.random_range(0..colours.len())];
                    b.set_bonus(ext, colour, rng.random_range(1..=2)).unwrap();
                }
            }
            for src in 1..=n {
                for dst in 1..=n {
                    if src != dst && rng.random_bool(0.35) {
                        b.add_edge(src, dst, rng.random_range(1..=2)).unwrap();
                    }
                }
            }
            let game = b.build().unwrap();
            let target = game.colour_by_token("blue").unwrap();
            let values: Vec<_> = game
                .nodes()
                .map(|node| {
                    let set = game.colour_set(node);
                    set[rng.random_range(0..set.len())]
                })
                .collect();
            let s = Colouring::new(&game, values).unwrap();

            let fixed_point = switch_coalition(&game, &s, target);
            // Brute force over all switchable subsets.
            let switchable: Vec<_> = game
                .nodes()
                .filter(|&node| {
                    s.get(node) != target
                        && game.colour_set(node).binary_search(&target).is_ok()
                })
                .collect();
            let mut any_profitable = false;
            for mask in 1u32..(1 << switchable.len()) {
                let members: Vec<_> = switchable
                    .iter()
                    .enumerate()
                    .filter(|&(bit, _)| mask & (1 << bit) != 0)
                    .map(|(_, &node)| node)
                    .collect();
                let mut trial = s.clone();
                for &m in &members {
                    trial.set(m, target);
                }
                if members
                    .iter()
                    .all(|&m| game.payoff(&trial, m) > game.payoff(&s, m))
                {
                    any_profitable = true;
                    break;
                }
            }
            assert_eq!(!fixed_point.is_empty(), any_profitable);
            if !fixed_point.is_empty() {
                let mut trial = s.clone();
                for &m in &fixed_point {
                    trial.set(m, target);
                }
                for &m in &fixed_point {
                    assert!(game.payoff(&trial, m) > game.payoff(&s, m));
                }
            }
        }
    }
}
