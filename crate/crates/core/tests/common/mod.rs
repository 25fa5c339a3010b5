//! Random instance generators shared by the integration suites. All draw
//! from a caller-supplied seeded RNG, so every test run is reproducible.

#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use rand_chacha::ChaCha8Rng;
use rand::Rng;

use coord_games::game::{Colouring, Game, GameBuilder};

pub const TOKENS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture exists")
}

fn builder_with_palette(colours: usize) -> GameBuilder {
    let mut b = GameBuilder::new();
    b.declare_palette(&TOKENS[..colours]).expect("valid palette");
    b
}

fn add_random_node(
    b: &mut GameBuilder,
    rng: &mut ChaCha8Rng,
    ext: u64,
    colours: usize,
    max_bonus: u64,
) {
    b.add_node(ext).expect("fresh node");
    let size = rng.random_range(1..=colours);
    let mut picked: Vec<usize> = (0..colours).collect();
    for _ in 0..colours - size {
        let drop = rng.random_range(0..picked.len());
        picked.swap_remove(drop);
    }
    for &idx in &picked {
        b.add_colour_option(ext, TOKENS[idx]).expect("palette colour");
    }
    if max_bonus > 0 {
        for &idx in &picked {
            let bonus = rng.random_range(0..=max_bonus);
            if bonus > 0 {
                b.set_bonus(ext, TOKENS[idx], bonus).expect("own colour");
            }
        }
    }
}

/// Acyclic game: edges only run from lower to higher ids.
pub fn random_dag(rng: &mut ChaCha8Rng, n: u64, colours: usize, max_bonus: u64, max_weight: u64) -> Game {
    let mut b = builder_with_palette(colours);
    for ext in 1..=n {
        add_random_node(&mut b, rng, ext, colours, max_bonus);
    }
    for src in 1..n {
        for dst in src + 1..=n {
            if rng.random_bool(0.4) {
                b.add_edge(src, dst, rng.random_range(1..=max_weight)).expect("edge");
            }
        }
    }
    b.build().expect("valid game")
}

/// Simple cycle 1 -> 2 -> ... -> n -> 1 with unit weights and bonuses.
pub fn random_cycle(rng: &mut ChaCha8Rng, n: u64, colours: usize, max_bonus: u64) -> Game {
    let mut b = builder_with_palette(colours);
    for ext in 1..=n {
        add_random_node(&mut b, rng, ext, colours, max_bonus);
    }
    for ext in 1..=n {
        b.add_edge(ext, ext % n + 1, 1).expect("edge");
    }
    b.build().expect("valid game")
}

/// Unit-weight game whose strongly connected components are simple cycles
/// and singletons, wired forward between components.
pub fn random_cycle_scc(rng: &mut ChaCha8Rng, n: u64, colours: usize, max_bonus: u64) -> Game {
    let mut b = builder_with_palette(colours);
    for ext in 1..=n {
        add_random_node(&mut b, rng, ext, colours, max_bonus);
    }
    // Partition 1..=n into consecutive components.
    let mut components: Vec<(u64, u64)> = Vec::new();
    let mut next = 1;
    while next <= n {
        let size = rng.random_range(1..=4.min(n - next + 1));
        components.push((next, next + size - 1));
        next += size;
    }
    let mut used: HashSet<(u64, u64)> = HashSet::new();
    for &(lo, hi) in &components {
        if hi > lo {
            for ext in lo..=hi {
                let dst = if ext == hi { lo } else { ext + 1 };
                b.add_edge(ext, dst, 1).expect("edge");
                used.insert((ext, dst));
            }
        }
    }
    // Forward edges between components keep the condensation acyclic.
    for later in 1..components.len() {
        let attempts = rng.random_range(0..=2);
        for _ in 0..attempts {
            let earlier = rng.random_range(0..later);
            let src = rng.random_range(components[earlier].0..=components[earlier].1);
            let dst = rng.random_range(components[later].0..=components[later].1);
            if used.insert((src, dst)) {
                b.add_edge(src, dst, 1).expect("edge");
            }
        }
    }
    b.build().expect("valid game")
}

/// Arbitrary weighted digraph over at most two colours.
pub fn random_two_colour(rng: &mut ChaCha8Rng, n: u64, max_bonus: u64, max_weight: u64) -> Game {
    let mut b = builder_with_palette(2);
    for ext in 1..=n {
        add_random_node(&mut b, rng, ext, 2, max_bonus);
    }
    for src in 1..=n {
        for dst in 1..=n {
            if src != dst && rng.random_bool(0.3) {
                b.add_edge(src, dst, rng.random_range(1..=max_weight)).expect("edge");
            }
        }
    }
    b.build().expect("valid game")
}

/// Disjoint bidirectional cliques with random colour sets: for every colour,
/// the offering nodes split along the cliques, and each such piece carries
/// both edges between every pair.
pub fn random_colour_complete(rng: &mut ChaCha8Rng, n: u64, colours: usize) -> Game {
    let mut b = builder_with_palette(colours);
    for ext in 1..=n {
        add_random_node(&mut b, rng, ext, colours, 0);
    }
    let mut next = 1;
    while next <= n {
        let size = rng.random_range(1..=3.min(n - next + 1));
        for u in next..next + size {
            for v in next..next + size {
                if u != v {
                    b.add_edge(u, v, 1).expect("edge");
                }
            }
        }
        next += size;
    }
    b.build().expect("valid game")
}

pub fn random_colouring(rng: &mut ChaCha8Rng, game: &Game) -> Colouring {
    let values = game
        .nodes()
        .map(|node| {
            let set = game.colour_set(node);
            set[rng.random_range(0..set.len())]
        })
        .collect();
    Colouring::new(game, values).expect("colours from own sets")
}
