//! Constructive solvers for the graph classes where a strong equilibrium is
//! guaranteed, plus structure classification and method dispatch.

mod cycle;
mod dag;
mod scc;
mod two_colour;

pub use cycle::{solve_cycle, solve_cycle_strong, CycleSolution, InducedCycleGame};
pub use dag::solve_dag;
pub use scc::{decompose, solve_scc, ComponentKind, SccDecomposition};
pub use two_colour::solve_two_colour;

use std::collections::HashSet;

use crate::dynamics::{topological_order, Path, TopoResult};
use crate::error::Result;
use crate::game::{Colouring, Game, NodeId};
use crate::oracle::{self, EquilibriumKind};

/// Structural facts that decide which solver applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureReport {
    pub is_dag: bool,
    pub is_single_simple_cycle: bool,
    /// Every strongly connected component is a simple cycle or a single node.
    pub all_sccs_simple_cycles: bool,
    /// At most two distinct colours appear across all colour sets.
    pub uses_at_most_two_colours: bool,
    /// For every colour, each weakly connected component of the subgraph
    /// induced by the nodes offering it has both edges between every pair.
    pub is_colour_complete: bool,
    pub all_weights_unit: bool,
}

pub fn classify(game: &Game) -> StructureReport {
    let decomposition = decompose(game);
    StructureReport {
        is_dag: matches!(topological_order(game), TopoResult::Order(_)),
        is_single_simple_cycle: cycle::is_single_simple_cycle(game),
        all_sccs_simple_cycles: decomposition
            .kinds
            .iter()
            .all(|kind| *kind != ComponentKind::Other),
        uses_at_most_two_colours: colours_in_use(game) <= 2,
        is_colour_complete: is_colour_complete(game),
        all_weights_unit: game.all_weights_unit(),
    }
}

fn colours_in_use(game: &Game) -> usize {
    let mut used = HashSet::new();
    for node in game.nodes() {
        used.extend(game.colour_set(node).iter().copied());
    }
    used.len()
}

/// Components are weakly connected pieces of the induced subgraph;
/// "complete" asks for both directed edges between every pair.
fn is_colour_complete(game: &Game) -> bool {
    let n = game.node_count();
    let edges: HashSet<(NodeId, NodeId)> =
        game.edges().map(|(src, dst, _)| (src, dst)).collect();
    for colour in 0..game.colour_count() {
        let colour = crate::game::ColourId(colour as u32);
        let mut offers = vec![false; n];
        for node in game.nodes() {
            offers[node.index()] = game.colour_set(node).binary_search(&colour).is_ok();
        }
        let mut seen = vec![false; n];
        for start in game.nodes() {
            if !offers[start.index()] || seen[start.index()] {
                continue;
            }
            // Collect the weak component of `start` within the offering set.
            let mut component = Vec::new();
            let mut queue = vec![start];
            seen[start.index()] = true;
            while let Some(node) = queue.pop() {
                component.push(node);
                let neighbours = game
                    .out_neighbours(node)
                    .iter()
                    .chain(game.in_neighbours(node));
                for &(other, _) in neighbours {
                    if offers[other.index()] && !seen[other.index()] {
                        seen[other.index()] = true;
                        queue.push(other);
                    }
                }
            }
            for &u in &component {
                for &v in &component {
                    if u != v && !edges.contains(&(u, v)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Solver selection for the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Dag,
    Cycle,
    Scc,
    TwoColour,
    Brute,
}

/// A solver run: the method that actually ran, the strong equilibrium it
/// found, and the improvement path for the methods that construct one.
#[derive(Debug, Clone)]
pub struct Solution {
    pub method: &'static str,
    pub colouring: Colouring,
    pub path: Option<Path>,
}

/// Dispatches to a solver. `Auto` picks the first applicable method in the
/// order dag, cycle, scc, two-colour, brute. Returns `Ok(None)` only for the
/// brute-force method when the game has no strong equilibrium at all.
pub fn solve(
    game: &Game,
    method: Method,
    start: &Colouring,
    budget: u64,
) -> Result<Option<Solution>> {
    let method = match method {
        Method::Auto => {
            let report = classify(game);
            if report.is_dag {
                Method::Dag
            } else if report.is_single_simple_cycle && report.all_weights_unit {
                Method::Cycle
            } else if report.all_sccs_simple_cycles && report.all_weights_unit {
                Method::Scc
            } else if report.uses_at_most_two_colours {
                Method::TwoColour
            } else {
                Method::Brute
            }
        }
        chosen => chosen,
    };
    match method {
        Method::Auto => unreachable!("auto resolved above"),
        Method::Dag => Ok(Some(Solution {
            method: "dag",
            colouring: solve_dag(game)?,
            path: None,
        })),
        Method::Cycle => Ok(Some(Solution {
            method: "cycle",
            colouring: solve_cycle_strong(game, start)?,
            path: None,
        })),
        Method::Scc => {
            let (colouring, path) = solve_scc(game, start)?;
            Ok(Some(Solution { method: "scc", colouring, path: Some(path) }))
        }
        Method::TwoColour => {
            let (colouring, path) = solve_two_colour(game, start)?;
            Ok(Some(Solution { method: "two-colour", colouring, path: Some(path) }))
        }
        Method::Brute => {
            let found = oracle::find_first(game, EquilibriumKind::Strong, budget)?;
            Ok(found.map(|colouring| Solution { method: "brute", colouring, path: None }))
        }
    }
}
