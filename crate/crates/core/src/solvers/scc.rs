//! Strongly connected components, the condensation labelling, and the
//! solver that stitches per-component strong equilibria into one coalitional
//! improvement path for graphs whose components are all simple cycles.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::cycle::{
    full_switch_colour, max_bonus_intersection, profitable_switch, three_phase, InducedCycleGame,
};
use crate::dynamics::{Path, PathBuilder, PathStatus};
use crate::error::{structure, Result};
use crate::game::{Colouring, ColourId, Game, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    Singleton,
    /// Two or more nodes, each with exactly one in- and one out-neighbour
    /// inside the component.
    SimpleCycle,
    Other,
}

/// The strongly connected components with a topological labelling of the
/// condensation: every edge between distinct components goes from a lower
/// to a higher label (= index into `components`).
#[derive(Debug, Clone)]
pub struct SccDecomposition {
    /// Component members in ascending node order, listed in label order.
    pub components: Vec<Vec<NodeId>>,
    /// Per node, the index of its component in `components`.
    pub label_of: Vec<usize>,
    pub kinds: Vec<ComponentKind>,
}

pub fn decompose(game: &Game) -> SccDecomposition {
    let raw = tarjan(game);
    let n = game.node_count();

    // Relabel via Kahn on the condensation, smallest contained node first,
    // so labels are deterministic and independent of traversal order.
    let mut comp_of = vec![usize::MAX; n];
    for (idx, comp) in raw.iter().enumerate() {
        for &node in comp {
            comp_of[node.index()] = idx;
        }
    }
    // Duplicate condensation edges are fine: the indegree bookkeeping below
    // counts and consumes them consistently.
    let mut indegree = vec![0usize; raw.len()];
    let mut dag = vec![Vec::new(); raw.len()];
    for (src, dst, _) in game.edges() {
        let (a, b) = (comp_of[src.index()], comp_of[dst.index()]);
        if a != b {
            dag[a].push(b);
            indegree[b] += 1;
        }
    }
    let smallest: Vec<NodeId> = raw
        .iter()
        .map(|comp| *comp.iter().min().expect("components are non-empty"))
        .collect();
    let mut heap: BinaryHeap<Reverse<(NodeId, usize)>> = (0..raw.len())
        .filter(|&idx| indegree[idx] == 0)
        .map(|idx| Reverse((smallest[idx], idx)))
        .collect();
    let mut components = Vec::with_capacity(raw.len());
    let mut label_of = vec![usize::MAX; n];
    while let Some(Reverse((_, idx))) = heap.pop() {
        let label = components.len();
        let mut comp = raw[idx].clone();
        comp.sort_unstable();
        for &node in &comp {
            label_of[node.index()] = label;
        }
        components.push(comp);
        for &next in &dag[idx] {
            indegree[next] -= 1;
            if indegree[next] == 0 {
                heap.push(Reverse((smallest[next], next)));
            }
        }
    }
    debug_assert_eq!(components.len(), raw.len());

    let kinds = components
        .iter()
        .map(|comp| component_kind(game, comp, &label_of))
        .collect();
    SccDecomposition { components, label_of, kinds }
}

fn component_kind(game: &Game, comp: &[NodeId], label_of: &[usize]) -> ComponentKind {
    if comp.len() == 1 {
        return ComponentKind::Singleton;
    }
    let label = label_of[comp[0].index()];
    let internal_degree = |list: &[(NodeId, u64)]| {
        list.iter()
            .filter(|&&(other, _)| label_of[other.index()] == label)
            .count()
    };
    let simple = comp.iter().all(|&node| {
        internal_degree(game.out_neighbours(node)) == 1
            && internal_degree(game.in_neighbours(node)) == 1
    });
    if simple {
        ComponentKind::SimpleCycle
    } else {
        ComponentKind::Other
    }
}

/// Iterative Tarjan; components come out in reverse topological order, which
/// `decompose` discards in favour of the deterministic relabelling.
fn tarjan(game: &Game) -> Vec<Vec<NodeId>> {
    const UNVISITED: u32 = u32::MAX;
    let n = game.node_count();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<NodeId> = Vec::new();
    let mut counter = 0u32;
    let mut components = Vec::new();
    let mut work: Vec<(NodeId, usize)> = Vec::new();

    for root in game.nodes() {
        if index[root.index()] != UNVISITED {
            continue;
        }
        work.push((root, 0));
        while let Some(&mut (v, ref mut edge)) = work.last_mut() {
            if *edge == 0 {
                index[v.index()] = counter;
                lowlink[v.index()] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v.index()] = true;
            }
            let out = game.out_neighbours(v);
            if *edge < out.len() {
                let w = out[*edge].0;
                *edge += 1;
                if index[w.index()] == UNVISITED {
                    work.push((w, 0));
                } else if on_stack[w.index()] {
                    lowlink[v.index()] = lowlink[v.index()].min(index[w.index()]);
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    lowlink[parent.index()] = lowlink[parent.index()].min(lowlink[v.index()]);
                }
                if lowlink[v.index()] == index[v.index()] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("stack holds the component");
                        on_stack[w.index()] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    components.push(comp);
                }
            }
        }
    }
    components
}

/// Fixes each component in label order: a singleton takes its best response
/// to the frozen context, a cycle component is solved through its induced
/// game (a profitable joint jump to a commonly-maximal colour when one
/// applies, otherwise the three-phase walk plus, if the equilibrium is not
/// yet strong, one full-coalition switch). The lifted steps concatenate into
/// a single coalitional improvement path of the whole game whose last
/// element is a strong equilibrium.
pub fn solve_scc(game: &Game, start: &Colouring) -> Result<(Colouring, Path)> {
    if !game.all_weights_unit() {
        return Err(structure(
            "component solver requires unit edge weights; weighted games may lack equilibria \
             even when every component is a simple cycle",
        ));
    }
    let decomposition = decompose(game);
    if decomposition.kinds.iter().any(|&k| k == ComponentKind::Other) {
        return Err(structure(
            "every strongly connected component must be a single node or a simple cycle",
        ));
    }

    let mut builder = PathBuilder::new(game, start.clone(), false);
    for (label, comp) in decomposition.components.iter().enumerate() {
        match decomposition.kinds[label] {
            ComponentKind::Singleton => {
                let node = comp[0];
                let s = builder.current();
                let current = game.payoff(s, node);
                let mut best = s.get(node);
                let mut best_payoff = current;
                for &colour in game.colour_set(node) {
                    let payoff = game.payoff_if(s, node, colour);
                    if payoff > best_payoff {
                        best = colour;
                        best_payoff = payoff;
                    }
                }
                if best_payoff > current {
                    builder.apply(&[(node, best)]);
                }
            }
            ComponentKind::SimpleCycle => {
                let order = component_cycle_order(game, comp, &decomposition.label_of, label);
                let ctx = InducedCycleGame::induced(
                    game,
                    order,
                    |n| decomposition.label_of[n.index()] == label,
                    builder.current(),
                );
                solve_component(&ctx, &mut builder);
            }
            ComponentKind::Other => unreachable!("rejected above"),
        }
    }
    let (last, path) = builder.finish(PathStatus::Converged);
    debug_assert!(game.is_nash(&last));
    Ok((last, path))
}

/// Members of one cycle component starting at its smallest node, following
/// the unique internal out-edges.
fn component_cycle_order(
    game: &Game,
    comp: &[NodeId],
    label_of: &[usize],
    label: usize,
) -> Vec<NodeId> {
    let start = comp[0];
    let mut order = Vec::with_capacity(comp.len());
    let mut current = start;
    loop {
        order.push(current);
        let next = game
            .out_neighbours(current)
            .iter()
            .map(|&(n, _)| n)
            .find(|&n| label_of[n.index()] == label)
            .expect("cycle members keep one internal out-edge");
        if next == start {
            break;
        }
        current = next;
    }
    debug_assert_eq!(order.len(), comp.len());
    order
}

fn apply_joint_switch(
    ctx: &InducedCycleGame<'_>,
    builder: &mut PathBuilder<'_>,
    movers: &[usize],
    colour: ColourId,
) {
    let mut changes: Vec<(NodeId, ColourId)> =
        movers.iter().map(|&pos| (ctx.node(pos), colour)).collect();
    changes.sort_unstable_by_key(|&(node, _)| node);
    builder.apply(&changes);
}

fn solve_component(ctx: &InducedCycleGame<'_>, builder: &mut PathBuilder<'_>) {
    if ctx.is_local_nash(builder) {
        // Already an equilibrium; at most one full-coalition switch is
        // missing for it to be strong.
        if let Some(colour) = full_switch_colour(ctx, builder) {
            let movers: Vec<usize> = (0..ctx.len()).collect();
            apply_joint_switch(ctx, builder, &movers, colour);
        }
        return;
    }
    if let Some(colour) = max_bonus_intersection(ctx) {
        if let Some(movers) = profitable_switch(ctx, builder, colour) {
            apply_joint_switch(ctx, builder, &movers, colour);
            return;
        }
    }
    three_phase(ctx, builder);
    if let Some(colour) = full_switch_colour(ctx, builder) {
        let movers: Vec<usize> = (0..ctx.len()).collect();
        apply_joint_switch(ctx, builder, &movers, colour);
    }
}
