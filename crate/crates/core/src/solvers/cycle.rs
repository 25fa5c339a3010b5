//! The three-phase walk that finds a Nash equilibrium on a simple cycle with
//! at most `3n` single-player updates, and the linear-time strong-equilibrium
//! construction built on top of it.
//!
//! Both require unit edge weights: with integer bonuses and unit matching
//! reward, the best responses among a player's maximal-bonus colours are
//! global best responses, which is what drives every phase bound. A weighted
//! cycle can fail to have a Nash equilibrium at all.

use crate::dynamics::{Path, PathBuilder, PathStatus};
use crate::error::{structure, Result};
use crate::game::{Colouring, ColourId, Game, NodeId};

/// A cycle game with the surrounding context frozen into per-node bonuses:
/// member `i`'s induced bonus for colour `c` is its base bonus plus the total
/// weight of edges from outside in-neighbours currently coloured `c`. For
/// unit weights and zero base bonuses this is exactly the count of matching
/// outside in-neighbours.
pub struct InducedCycleGame<'g> {
    game: &'g Game,
    /// Members in cycle order: `order[p]` feeds `order[(p + 1) % m]`.
    order: Vec<NodeId>,
    /// Per position, aligned with the member's colour set.
    bonus: Vec<Vec<u64>>,
    max_bonus: Vec<u64>,
}

/// Structural check used by `classify`: one in- and one out-edge per node and
/// a single loop covering every node.
pub(crate) fn is_single_simple_cycle(game: &Game) -> bool {
    cycle_order(game).is_some()
}

fn cycle_order(game: &Game) -> Option<Vec<NodeId>> {
    let n = game.node_count();
    if n < 2 {
        return None;
    }
    for node in game.nodes() {
        if game.out_neighbours(node).len() != 1 || game.in_neighbours(node).len() != 1 {
            return None;
        }
    }
    let start = NodeId(0);
    let mut order = Vec::with_capacity(n);
    let mut current = start;
    loop {
        order.push(current);
        current = game.out_neighbours(current)[0].0;
        if current == start {
            break;
        }
        if order.len() == n {
            return None;
        }
    }
    if order.len() == n {
        Some(order)
    } else {
        None
    }
}

impl<'g> InducedCycleGame<'g> {
    /// The whole game as one cycle; context-free, so induced bonuses are the
    /// base bonuses.
    pub(crate) fn whole_game(game: &'g Game) -> Result<Self> {
        let Some(order) = cycle_order(game) else {
            return Err(structure("graph is not a single simple cycle"));
        };
        if !game.all_weights_unit() {
            return Err(structure(
                "cycle solver requires unit edge weights; weighted cycles can lack equilibria",
            ));
        }
        Ok(Self::from_order(game, order, |_| true))
    }

    /// A cycle component inside a larger game. `members` must be in cycle
    /// order; in-edges from outside the component are folded into bonuses
    /// using the colours in `context`.
    pub(crate) fn induced(
        game: &'g Game,
        members: Vec<NodeId>,
        in_component: impl Fn(NodeId) -> bool,
        context: &Colouring,
    ) -> Self {
        let mut this = Self::from_order(game, members, &in_component);
        for (pos, &node) in this.order.iter().enumerate() {
            for &(source, weight) in game.in_neighbours(node) {
                if in_component(source) {
                    continue;
                }
                let colour = context.get(source);
                if let Ok(idx) = game.colour_set(node).binary_search(&colour) {
                    this.bonus[pos][idx] += weight;
                }
            }
            this.max_bonus[pos] = this.bonus[pos].iter().copied().max().unwrap_or(0);
        }
        this
    }

    fn from_order(
        game: &'g Game,
        order: Vec<NodeId>,
        in_component: impl Fn(NodeId) -> bool,
    ) -> Self {
        debug_assert!(order.len() >= 2);
        debug_assert!(order.iter().all(|&n| in_component(n)));
        let bonus: Vec<Vec<u64>> = order
            .iter()
            .map(|&node| {
                game.colour_set(node)
                    .iter()
                    .map(|&c| game.bonus(node, c))
                    .collect()
            })
            .collect();
        let max_bonus = bonus
            .iter()
            .map(|row| row.iter().copied().max().unwrap_or(0))
            .collect();
        Self { game, order, bonus, max_bonus }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Members in cycle order.
    pub fn members(&self) -> &[NodeId] {
        &self.order
    }

    pub fn node(&self, pos: usize) -> NodeId {
        self.order[pos]
    }

    fn pred(&self, pos: usize) -> usize {
        (pos + self.order.len() - 1) % self.order.len()
    }

    /// Induced bonus of the member at `pos` for `colour` (zero outside its
    /// colour set).
    pub fn induced_bonus(&self, pos: usize, colour: ColourId) -> u64 {
        match self.game.colour_set(self.order[pos]).binary_search(&colour) {
            Ok(idx) => self.bonus[pos][idx],
            Err(_) => 0,
        }
    }

    fn in_max_bonus(&self, pos: usize, colour: ColourId) -> bool {
        match self.game.colour_set(self.order[pos]).binary_search(&colour) {
            Ok(idx) => self.bonus[pos][idx] == self.max_bonus[pos],
            Err(_) => false,
        }
    }

    /// Payoff of the member at `pos` playing `colour`: induced bonus plus one
    /// when it matches its cycle predecessor.
    fn payoff_at<S: CycleState + ?Sized>(&self, state: &S, pos: usize, colour: ColourId) -> u64 {
        let matches = state.colour(self.order[self.pred(pos)]) == colour;
        self.induced_bonus(pos, colour) + u64::from(matches)
    }

    fn best_payoff<S: CycleState + ?Sized>(&self, state: &S, pos: usize) -> u64 {
        self.game
            .colour_set(self.order[pos])
            .iter()
            .map(|&c| self.payoff_at(state, pos, c))
            .max()
            .expect("colour sets are non-empty")
    }

    fn is_best<S: CycleState + ?Sized>(&self, state: &S, pos: usize) -> bool {
        let current = state.colour(self.order[pos]);
        self.payoff_at(state, pos, current) == self.best_payoff(state, pos)
    }

    pub(crate) fn is_local_nash<S: CycleState + ?Sized>(&self, state: &S) -> bool {
        (0..self.len()).all(|pos| self.is_best(state, pos))
    }

    /// The update choice: the lowest-id maximal-bonus colour achieving the
    /// best payoff. With unit weights such a colour always exists (matching
    /// a non-maximal colour gains at most one, which integer bonuses absorb).
    fn update_choice<S: CycleState + ?Sized>(&self, state: &S, pos: usize) -> ColourId {
        let best = self.best_payoff(state, pos);
        let node = self.order[pos];
        for &colour in self.game.colour_set(node) {
            if self.in_max_bonus(pos, colour) && self.payoff_at(state, pos, colour) == best {
                return colour;
            }
        }
        unreachable!("a maximal-bonus colour always attains the best payoff on unit-weight cycles")
    }
}

/// Minimal view the three-phase walk needs: read a node's colour and apply a
/// single-node update.
pub(crate) trait CycleState {
    fn colour(&self, node: NodeId) -> ColourId;
    fn update(&mut self, node: NodeId, colour: ColourId);
}

impl CycleState for Colouring {
    fn colour(&self, node: NodeId) -> ColourId {
        self.get(node)
    }

    fn update(&mut self, node: NodeId, colour: ColourId) {
        self.set(node, colour);
    }
}

impl CycleState for PathBuilder<'_> {
    fn colour(&self, node: NodeId) -> ColourId {
        self.current().get(node)
    }

    fn update(&mut self, node: NodeId, colour: ColourId) {
        self.apply(&[(node, colour)]);
    }
}

/// Walks the cycle in three phases of single-player updates and stops at a
/// Nash equilibrium of the induced game after at most `3n` updates.
///
/// Phase 1 sweeps all positions but the last, updating anyone not
/// best-responding. Phase 2 continues from the last position around the
/// cycle for at most `n` considerations; a considered player already
/// best-responding certifies a Nash equilibrium, because everyone else
/// best-responds at that moment. After `n` consecutive phase-2 updates every
/// player holds a maximal-bonus colour, so phase-3 improvements can only
/// copy the predecessor's colour, and at most `n` more updates reach an
/// equilibrium.
pub(crate) fn three_phase<S: CycleState + ?Sized>(
    ctx: &InducedCycleGame<'_>,
    state: &mut S,
) -> [usize; 3] {
    let m = ctx.len();
    let mut updates = [0usize; 3];
    for pos in 0..m - 1 {
        if !ctx.is_best(state, pos) {
            let choice = ctx.update_choice(state, pos);
            state.update(ctx.node(pos), choice);
            updates[0] += 1;
        }
    }
    for turn in 0..m {
        let pos = (m - 1 + turn) % m;
        if ctx.is_best(state, pos) {
            return updates;
        }
        let choice = ctx.update_choice(state, pos);
        state.update(ctx.node(pos), choice);
        updates[1] += 1;
    }
    for turn in 0..m {
        let pos = (m - 1 + turn) % m;
        if ctx.is_best(state, pos) {
            return updates;
        }
        let choice = ctx.update_choice(state, pos);
        debug_assert_eq!(
            choice,
            state.colour(ctx.node(ctx.pred(pos))),
            "phase-3 updates copy the predecessor"
        );
        state.update(ctx.node(pos), choice);
        updates[2] += 1;
    }
    updates
}

/// The lowest colour lying in every member's maximal-bonus set, if any.
/// Starts from the member with the fewest colours, so the work stays linear
/// in the input size.
pub(crate) fn max_bonus_intersection(ctx: &InducedCycleGame<'_>) -> Option<ColourId> {
    ma_intersection_all(ctx).first().copied()
}

fn ma_intersection_all(ctx: &InducedCycleGame<'_>) -> Vec<ColourId> {
    let seed = (0..ctx.len())
        .min_by_key(|&pos| ctx.game.colour_set(ctx.node(pos)).len())
        .expect("cycle has members");
    let mut candidates: Vec<ColourId> = ctx
        .game
        .colour_set(ctx.node(seed))
        .iter()
        .copied()
        .filter(|&c| ctx.in_max_bonus(seed, c))
        .collect();
    for pos in 0..ctx.len() {
        if candidates.is_empty() {
            break;
        }
        if pos == seed {
            continue;
        }
        candidates.retain(|&c| ctx.in_max_bonus(pos, c));
    }
    candidates
}

/// When every member sits at most at its maximal bonus (strictly below the
/// maximum possible payoff), the lowest commonly-maximal colour avoided by
/// everyone, if any; switching the full coalition there is a profitable
/// deviation onto an all-maximum colouring.
pub(crate) fn full_switch_colour<S: CycleState + ?Sized>(
    ctx: &InducedCycleGame<'_>,
    state: &S,
) -> Option<ColourId> {
    let below_max = (0..ctx.len()).all(|pos| {
        let current = state.colour(ctx.node(pos));
        ctx.payoff_at(state, pos, current) <= ctx.max_bonus[pos]
    });
    if !below_max {
        return None;
    }
    ma_intersection_all(ctx)
        .into_iter()
        .find(|&c| (0..ctx.len()).all(|pos| state.colour(ctx.node(pos)) != c))
}

/// Members not yet on `colour`, in cycle positions, provided every one of
/// them strictly gains when they all switch to `colour` together.
pub(crate) fn profitable_switch<S: CycleState + ?Sized>(
    ctx: &InducedCycleGame<'_>,
    state: &S,
    colour: ColourId,
) -> Option<Vec<usize>> {
    let mut movers = Vec::new();
    for pos in 0..ctx.len() {
        if state.colour(ctx.node(pos)) == colour {
            continue;
        }
        // After the joint switch the mover matches its predecessor and plays
        // a commonly-maximal colour, reaching max_bonus + 1; the move is a
        // strict gain exactly when it currently sits below that.
        let current = ctx.payoff_at(state, pos, state.colour(ctx.node(pos)));
        if current > ctx.max_bonus[pos] {
            return None;
        }
        movers.push(pos);
    }
    if movers.is_empty() {
        None
    } else {
        Some(movers)
    }
}

/// The equilibrium plus the update trace and per-phase update counts.
#[derive(Debug, Clone)]
pub struct CycleSolution {
    pub equilibrium: Colouring,
    pub path: Path,
    /// Single-player updates performed in each phase; the total is at most
    /// `3n` and every update is strictly profitable.
    pub phase_updates: [usize; 3],
}

/// Runs the three-phase walk on a single-simple-cycle game from `start` and
/// returns the Nash equilibrium it lands on.
pub fn solve_cycle(game: &Game, start: &Colouring) -> Result<CycleSolution> {
    let ctx = InducedCycleGame::whole_game(game)?;
    let mut builder = PathBuilder::new(game, start.clone(), false);
    let phase_updates = three_phase(&ctx, &mut builder);
    let (equilibrium, path) = builder.finish(PathStatus::Converged);
    debug_assert!(game.is_nash(&equilibrium));
    Ok(CycleSolution { equilibrium, path, phase_updates })
}

/// Finds a strong equilibrium of a single-simple-cycle game in time linear
/// in the input size: if some colour is maximal-bonus for every player, the
/// monochromatic colouring in the lowest such colour pays everyone their
/// maximum; otherwise every Nash equilibrium is already strong and the
/// three-phase walk supplies one.
pub fn solve_cycle_strong(game: &Game, start: &Colouring) -> Result<Colouring> {
    let ctx = InducedCycleGame::whole_game(game)?;
    if let Some(colour) = max_bonus_intersection(&ctx) {
        return Colouring::new(game, vec![colour; game.node_count()]);
    }
    let mut s = start.clone();
    three_phase(&ctx, &mut s);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::testgames::*;
    use crate::game::{GameBuilder, DEFAULT_BUDGET};
    use crate::oracle::{self, EquilibriumKind};

    fn bonus_cycle(n: u64, bonus_colour: &str, amount: u64) -> Game {
        let mut b = GameBuilder::new();
        b.declare_palette(&["a", "b"]).unwrap();
        for ext in 1..=n {
            b.add_node(ext).unwrap();
            b.add_colour_option(ext, "a").unwrap();
            b.add_colour_option(ext, "b").unwrap();
            if amount > 0 {
                b.set_bonus(ext, bonus_colour, amount).unwrap();
            }
        }
        for ext in 1..=n {
            b.add_edge(ext, ext % n + 1, 1).unwrap();
        }
        b.build().unwrap()
    }

    #[test]
    fn already_an_equilibrium_means_no_updates() {
        let game = two_cycle();
        let start = colouring_of(&game, &[(1, "a"), (2, "b")]);
        let solution = solve_cycle(&game, &start).unwrap();
        assert_eq!(solution.equilibrium, start);
        assert_eq!(solution.phase_updates, [0, 0, 0]);
        assert!(solution.path.is_empty());
    }

    #[test]
    fn phase_one_aligns_a_shared_cycle() {
        let game = shared_cycle(3);
        let start = colouring_of(&game, &[(1, "a"), (2, "b"), (3, "b")]);
        let solution = solve_cycle(&game, &start).unwrap();
        let b = game.colour_by_token("b").unwrap();
        assert_eq!(solution.equilibrium.values(), &[b, b, b]);
        assert!(game.is_nash(&solution.equilibrium));
        solution.path.validate(&game).unwrap();
    }

    #[test]
    fn matching_payoff_offsets_a_small_bonus() {
        // With a +1 bonus on colour a, the all-b colouring still pays each
        // player its best achievable 1, so nobody can strictly improve and
        // the walk rightly performs no update.
        let game = bonus_cycle(3, "a", 1);
        let start = colouring_of(&game, &[(1, "b"), (2, "b"), (3, "b")]);
        let solution = solve_cycle(&game, &start).unwrap();
        assert_eq!(solution.equilibrium, start);
        assert_eq!(solution.phase_updates, [0, 0, 0]);
        assert!(game.is_nash(&solution.equilibrium));
    }

    #[test]
    fn dominant_bonus_pulls_the_cycle_over() {
        let game = bonus_cycle(3, "a", 2);
        let start = colouring_of(&game, &[(1, "b"), (2, "b"), (3, "b")]);
        let solution = solve_cycle(&game, &start).unwrap();
        let a = game.colour_by_token("a").unwrap();
        assert_eq!(solution.equilibrium.values(), &[a, a, a]);
        assert!(game.is_nash(&solution.equilibrium));
        let total: usize = solution.phase_updates.iter().sum();
        assert!(total <= 9);
    }

    #[test]
    fn strong_solver_picks_the_common_colour() {
        let game = two_cycle();
        let start = colouring_of(&game, &[(1, "a"), (2, "b")]);
        let s = solve_cycle_strong(&game, &start).unwrap();
        let c = game.colour_by_token("c").unwrap();
        assert_eq!(s.values(), &[c, c]);
        assert!(game.is_strong(&s, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn disjoint_sets_fall_back_to_the_walk() {
        let mut b = GameBuilder::new();
        b.declare_palette(&["a", "b", "c", "d"]).unwrap();
        for (ext, colours) in [(1u64, ["a", "b"]), (2, ["c", "d"])] {
            b.add_node(ext).unwrap();
            for c in colours {
                b.add_colour_option(ext, c).unwrap();
            }
        }
        b.add_edge(1, 2, 1).unwrap();
        b.add_edge(2, 1, 1).unwrap();
        let game = b.build().unwrap();
        let start = Colouring::least(&game);
        let s = solve_cycle_strong(&game, &start).unwrap();
        assert!(game.is_strong(&s, DEFAULT_BUDGET).unwrap());
        let strong = oracle::find_all(&game, EquilibriumKind::Strong, DEFAULT_BUDGET).unwrap();
        assert!(strong.contains(&s));
    }

    #[test]
    fn single_shared_colour_goes_monochromatic() {
        let mut b = GameBuilder::new();
        for ext in 1..=4u64 {
            b.add_node(ext).unwrap();
            b.add_colour_option(ext, "a").unwrap();
        }
        for ext in 1..=4u64 {
            b.add_edge(ext, ext % 4 + 1, 1).unwrap();
        }
        let game = b.build().unwrap();
        let start = Colouring::least(&game);
        let s = solve_cycle_strong(&game, &start).unwrap();
        let a = game.colour_by_token("a").unwrap();
        assert!(s.values().iter().all(|&c| c == a));
    }

    #[test]
    fn weighted_cycles_are_refused() {
        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        b.add_node(2).unwrap();
        b.add_colour_option(2, "a").unwrap();
        b.add_edge(1, 2, 2).unwrap();
        b.add_edge(2, 1, 1).unwrap();
        let game = b.build().unwrap();
        let start = Colouring::least(&game);
        assert!(solve_cycle(&game, &start).is_err());
        assert!(solve_cycle_strong(&game, &start).is_err());
    }

    #[test]
    fn non_cycles_are_refused() {
        let game = nine_node();
        let start = Colouring::least(&game);
        assert!(solve_cycle(&game, &start).is_err());
    }
}
