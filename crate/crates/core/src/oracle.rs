//! Brute-force ground truth for desk-scale instances: exhaustive colouring
//! enumeration and equilibrium search. Every structural solver and reduction
//! is checked against this module in the test suite.

use crate::error::{input, Error, Result};
use crate::game::{Colouring, Game};
use crate::reductions;

/// Deviation-pair overhead of the strong check is proportional to the state
/// count, so callers can size budgets with this.
pub fn state_count(game: &Game) -> Option<u64> {
    let mut product: u64 = 1;
    for node in game.nodes() {
        product = product.checked_mul(game.colour_set(node).len() as u64)?;
    }
    Some(product)
}

/// Streams every colouring in lexicographic order: node 0 most significant,
/// per-node colours ascending by id. Construction fails when the state count
/// exceeds `budget`.
pub fn enumerate_colourings<'g>(game: &'g Game, budget: u64) -> Result<ColouringIter<'g>> {
    match state_count(game) {
        Some(count) if count <= budget => Ok(ColouringIter {
            game,
            indices: vec![0; game.node_count()],
            next: Some(Colouring::least(game)),
        }),
        Some(count) => Err(Error::Resource { examined: count, budget }),
        None => Err(Error::Resource { examined: u64::MAX, budget }),
    }
}

pub struct ColouringIter<'g> {
    game: &'g Game,
    indices: Vec<usize>,
    next: Option<Colouring>,
}

impl Iterator for ColouringIter<'_> {
    type Item = Colouring;

    fn next(&mut self) -> Option<Colouring> {
        let emit = self.next.take()?;
        let mut upcoming = emit.clone();
        let mut pos = self.game.node_count();
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            pos -= 1;
            let node = crate::game::NodeId(pos as u32);
            let set = self.game.colour_set(node);
            self.indices[pos] += 1;
            if self.indices[pos] < set.len() {
                upcoming.set(node, set[self.indices[pos]]);
                self.next = Some(upcoming);
                break;
            }
            self.indices[pos] = 0;
            upcoming.set(node, set[0]);
        }
        Some(emit)
    }
}

/// Which equilibrium notion to search for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumKind {
    Nash,
    K(usize),
    Strong,
}

impl EquilibriumKind {
    fn holds(self, game: &Game, s: &Colouring, budget: u64) -> Result<bool> {
        match self {
            EquilibriumKind::Nash => Ok(game.is_nash(s)),
            // A strong equilibrium is a Nash equilibrium, so the cheap check
            // prunes before the exhaustive one.
            EquilibriumKind::K(k) => {
                Ok(game.is_nash(s) && game.is_k_equilibrium(s, k, budget)?)
            }
            EquilibriumKind::Strong => Ok(game.is_nash(s) && game.is_strong(s, budget)?),
        }
    }
}

/// All equilibria of the requested kind, in enumeration order.
pub fn find_all(game: &Game, kind: EquilibriumKind, budget: u64) -> Result<Vec<Colouring>> {
    if let EquilibriumKind::K(k) = kind {
        if k == 0 || k > game.node_count() {
            return Err(input(format!("k must be in 1..={}", game.node_count())));
        }
    }
    let mut found = Vec::new();
    for s in enumerate_colourings(game, budget)? {
        if kind.holds(game, &s, budget)? {
            found.push(s);
        }
    }
    Ok(found)
}

/// First equilibrium of the requested kind in enumeration order, if any.
pub fn find_first(game: &Game, kind: EquilibriumKind, budget: u64) -> Result<Option<Colouring>> {
    for s in enumerate_colourings(game, budget)? {
        if kind.holds(game, &s, budget)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Brute-force verification of the two properties that make the 3-SAT clause
/// gadget work: the standalone gadget has no Nash equilibrium, and each of
/// its three distinguished nodes can secure a payoff of at least 2 in every
/// colouring.
pub fn verify_no_ne_gadget(x: bool, y: bool, z: bool, budget: u64) -> Result<bool> {
    let (game, roles) = reductions::build_gadget(0, x, y, z);
    if find_first(&game, EquilibriumKind::Nash, budget)?.is_some() {
        return Ok(false);
    }
    let cores = [roles.core_a, roles.core_b, roles.core_c];
    for s in enumerate_colourings(&game, budget)? {
        for ext in cores {
            let node = game.node_by_ext(ext).expect("gadget core exists");
            if game.best_response_payoff(&s, node) < 2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
