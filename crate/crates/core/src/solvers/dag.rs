use crate::dynamics::{topological_order, TopoResult};
use crate::error::{structure, Result};
use crate::game::{Colouring, Game};

/// Solves an acyclic game by visiting nodes in topological order and giving
/// each its lowest best response against the already-fixed predecessors. A
/// node's payoff never depends on its successors, so the result is a Nash
/// equilibrium, and on acyclic graphs every Nash equilibrium is strong.
pub fn solve_dag(game: &Game) -> Result<Colouring> {
    let order = match topological_order(game) {
        TopoResult::Order(order) => order,
        TopoResult::Cycle(cycle) => {
            let ids: Vec<String> = cycle.iter().map(|&n| game.ext_id(n).to_string()).collect();
            return Err(structure(format!(
                "graph is not acyclic (cycle through nodes {})",
                ids.join(" -> ")
            )));
        }
    };
    let mut s = Colouring::least(game);
    for node in order {
        let mut best = s.get(node);
        let mut best_payoff = game.payoff_if(&s, node, best);
        for &colour in game.colour_set(node) {
            let payoff = game.payoff_if(&s, node, colour);
            if payoff > best_payoff {
                best = colour;
                best_payoff = payoff;
            }
        }
        s.set(node, best);
    }
    debug_assert!(game.is_nash(&s));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::testgames::*;
    use crate::game::GameBuilder;

    #[test]
    fn successor_copies_its_predecessor() {
        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        b.add_node(2).unwrap();
        b.add_colour_option(2, "a").unwrap();
        b.add_colour_option(2, "b").unwrap();
        b.add_edge(1, 2, 1).unwrap();
        let game = b.build().unwrap();
        let s = solve_dag(&game).unwrap();
        let a = game.colour_by_token("a").unwrap();
        assert_eq!(s.values(), &[a, a]);
    }

    #[test]
    fn isolated_nodes_take_their_highest_bonus() {
        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        b.add_colour_option(1, "b").unwrap();
        b.set_bonus(1, "b", 2).unwrap();
        b.add_node(2).unwrap();
        b.add_colour_option(2, "a").unwrap();
        b.add_colour_option(2, "b").unwrap();
        let game = b.build().unwrap();
        let s = solve_dag(&game).unwrap();
        let a = game.colour_by_token("a").unwrap();
        let b_colour = game.colour_by_token("b").unwrap();
        // Node 1 takes the bonus; node 2 breaks its tie towards the lowest id.
        assert_eq!(s.values(), &[b_colour, a]);
    }

    #[test]
    fn cyclic_graphs_are_refused() {
        let game = two_cycle();
        assert!(solve_dag(&game).is_err());
    }
}
