//! Improvement-path machinery: schedulers, (coalitional) improvement runs
//! with revisit detection, scripted move sequences, topological orders and
//! the lexicographic potential that certifies convergence on acyclic graphs.

use std::collections::{BinaryHeap, HashMap, HashSet};
use std::cmp::Reverse;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Error, Result};
use crate::game::{Colouring, ColourId, Game, NodeId};

/// Why a path run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStatus {
    /// The final colouring admits no further step under the active scheduler.
    Converged,
    /// The run reached a colouring it had already visited.
    Revisited,
    /// The step budget (or the move script) ran out first.
    BudgetExhausted,
}

/// One profitable coalition move, stored sparsely: only the members, their
/// new colours and their payoff gains.
#[derive(Debug, Clone)]
pub struct PathStep {
    /// Deviating nodes, ascending.
    pub coalition: Vec<NodeId>,
    /// New colour per member, aligned with `coalition`.
    pub colours: Vec<ColourId>,
    /// Payoff gain per member, aligned with `coalition`; all strictly positive.
    pub deltas: Vec<i64>,
    pub sw_before: u64,
    pub sw_after: u64,
}

/// A chained sequence of profitable deviations from a start colouring.
#[derive(Debug, Clone)]
pub struct Path {
    pub start: Colouring,
    pub steps: Vec<PathStep>,
    pub status: PathStatus,
}

impl Path {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the steps onto the start colouring.
    pub fn final_colouring(&self) -> Colouring {
        let mut current = self.start.clone();
        for step in &self.steps {
            for (&node, &colour) in step.coalition.iter().zip(&step.colours) {
                current.set(node, colour);
            }
        }
        current
    }

    /// Re-derives every step from scratch and checks the chain invariants:
    /// coalitions are exactly the changed nodes, every member strictly gains,
    /// and the recorded social welfare matches. Intended for tests and
    /// desk-scale paths.
    pub fn validate(&self, game: &Game) -> Result<()> {
        let mut current = self.start.clone();
        let mut sw = game.social_welfare(&current);
        for (idx, step) in self.steps.iter().enumerate() {
            if step.coalition.is_empty() {
                return Err(input(format!("step {idx}: empty coalition")));
            }
            if !step.coalition.windows(2).all(|w| w[0] < w[1]) {
                return Err(input(format!("step {idx}: coalition not sorted")));
            }
            if step.sw_before != sw {
                return Err(input(format!("step {idx}: sw_before mismatch")));
            }
            let before_payoffs: Vec<u64> = step
                .coalition
                .iter()
                .map(|&m| game.payoff(&current, m))
                .collect();
            for ((&node, &colour), _) in step.coalition.iter().zip(&step.colours).zip(&step.deltas)
            {
                if current.get(node) == colour {
                    return Err(input(format!(
                        "step {idx}: member {} does not change colour",
                        game.ext_id(node)
                    )));
                }
                current.set(node, colour);
            }
            for ((&m, &before), &delta) in
                step.coalition.iter().zip(&before_payoffs).zip(&step.deltas)
            {
                let after = game.payoff(&current, m) as i64;
                if after - (before as i64) != delta {
                    return Err(input(format!("step {idx}: delta mismatch")));
                }
                if delta <= 0 {
                    return Err(input(format!(
                        "step {idx}: member {} does not strictly gain",
                        game.ext_id(m)
                    )));
                }
            }
            sw = game.social_welfare(&current);
            if step.sw_after != sw {
                return Err(input(format!("step {idx}: sw_after mismatch")));
            }
        }
        Ok(())
    }

    /// One line per step: index, coalition (external ids) with new colours
    /// and per-member gains, and the social welfare before and after.
    pub fn render_trace(&self, game: &Game) -> String {
        let mut out = String::new();
        for (idx, step) in self.steps.iter().enumerate() {
            let members: Vec<String> = step
                .coalition
                .iter()
                .zip(&step.colours)
                .zip(&step.deltas)
                .map(|((&node, &colour), &delta)| {
                    format!("{}:{}(+{})", game.ext_id(node), game.colour_token(colour), delta)
                })
                .collect();
            let _ = writeln!(
                out,
                "step {}: {} sw {}->{}",
                idx + 1,
                members.join(" "),
                step.sw_before,
                step.sw_after
            );
        }
        out
    }
}

/// Incrementally builds a [`Path`], tracking social welfare through the
/// nodes a change can affect (members and their out-neighbours) so a step
/// costs time proportional to the coalition's degree, not the game size.
pub(crate) struct PathBuilder<'g> {
    game: &'g Game,
    start: Colouring,
    current: Colouring,
    sw: u64,
    steps: Vec<PathStep>,
    visited: Option<HashSet<Colouring>>,
    scratch_affected: Vec<NodeId>,
    scratch_before: Vec<u64>,
}

impl<'g> PathBuilder<'g> {
    pub(crate) fn new(game: &'g Game, start: Colouring, track_visited: bool) -> Self {
        let sw = game.social_welfare(&start);
        let mut visited = None;
        if track_visited {
            let mut set = HashSet::new();
            set.insert(start.clone());
            visited = Some(set);
        }
        Self {
            game,
            current: start.clone(),
            start,
            sw,
            steps: Vec::new(),
            visited,
            scratch_affected: Vec::new(),
            scratch_before: Vec::new(),
        }
    }

    pub(crate) fn current(&self) -> &Colouring {
        &self.current
    }

    pub(crate) fn len(&self) -> usize {
        self.steps.len()
    }

    /// Applies one coalition move (changes sorted by node, each a real colour
    /// change). Returns `true` when the resulting colouring was seen before.
    pub(crate) fn apply(&mut self, changes: &[(NodeId, ColourId)]) -> bool {
        debug_assert!(!changes.is_empty());
        debug_assert!(changes.windows(2).all(|w| w[0].0 < w[1].0));

        // Payoffs can move only for the members and their out-neighbours.
        let mut affected = std::mem::take(&mut self.scratch_affected);
        affected.clear();
        for &(node, colour) in changes {
            debug_assert_ne!(self.current.get(node), colour);
            affected.push(node);
            for &(succ, _) in self.game.out_neighbours(node) {
                affected.push(succ);
            }
        }
        affected.sort_unstable();
        affected.dedup();

        let mut before = std::mem::take(&mut self.scratch_before);
        before.clear();
        before.extend(affected.iter().map(|&i| self.game.payoff(&self.current, i)));
        for &(node, colour) in changes {
            self.current.set(node, colour);
        }
        let mut sw = self.sw as i64;
        let mut deltas = Vec::with_capacity(changes.len());
        let mut member = 0usize;
        for (&i, &was) in affected.iter().zip(&before) {
            let now = self.game.payoff(&self.current, i) as i64;
            sw += now - was as i64;
            if member < changes.len() && changes[member].0 == i {
                deltas.push(now - was as i64);
                member += 1;
            }
        }
        debug_assert_eq!(member, changes.len());
        let sw_after = sw as u64;
        self.steps.push(PathStep {
            coalition: changes.iter().map(|&(n, _)| n).collect(),
            colours: changes.iter().map(|&(_, c)| c).collect(),
            deltas,
            sw_before: self.sw,
            sw_after,
        });
        self.sw = sw_after;
        self.scratch_affected = affected;
        self.scratch_before = before;

        match &mut self.visited {
            Some(seen) => !seen.insert(self.current.clone()),
            None => false,
        }
    }

    pub(crate) fn finish(self, status: PathStatus) -> (Colouring, Path) {
        (
            self.current,
            Path { start: self.start, steps: self.steps, status },
        )
    }
}

/// Which deviations a run may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Single-node deviations only.
    Unilateral,
    /// Coalitions of up to `max_size` nodes.
    Coalition { max_size: usize },
}

/// How the next step is picked among the admitted profitable deviations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionPolicy {
    /// Smallest coalition first, then lexicographic coalition, then target
    /// colours ascending by colour id.
    FirstByTiebreak,
    /// Uniformly among all admitted profitable deviations, deterministic for
    /// a fixed seed.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scheduler {
    pub mode: Mode,
    pub policy: SelectionPolicy,
}

/// Runs improvement dynamics from `start` until an equilibrium for the
/// scheduler's deviation class is reached, a colouring repeats, or
/// `max_steps` is hit. Coalition search is exhaustive and counts
/// (coalition, target) pairs against `budget`.
pub fn run_path(
    game: &Game,
    start: &Colouring,
    scheduler: &Scheduler,
    max_steps: usize,
    budget: u64,
) -> Result<Path> {
    if max_steps == 0 {
        return Err(input("max_steps must be at least 1"));
    }
    let max_size = match scheduler.mode {
        Mode::Unilateral => 1,
        Mode::Coalition { max_size } => {
            if max_size == 0 || max_size > game.node_count() {
                return Err(input(format!(
                    "coalition size must be in 1..={}, got {max_size}",
                    game.node_count()
                )));
            }
            max_size
        }
    };
    let mut rng = match scheduler.policy {
        SelectionPolicy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        SelectionPolicy::FirstByTiebreak => None,
    };

    let mut builder = PathBuilder::new(game, start.clone(), true);
    loop {
        if builder.len() >= max_steps {
            return Ok(builder.finish(PathStatus::BudgetExhausted).1);
        }
        let next = next_deviation(game, builder.current(), max_size, rng.as_mut(), budget)?;
        match next {
            None => return Ok(builder.finish(PathStatus::Converged).1),
            Some(changes) => {
                if builder.apply(&changes) {
                    return Ok(builder.finish(PathStatus::Revisited).1);
                }
            }
        }
    }
}

/// Applies a fixed sequence of single-node moves, each of which must be a
/// strictly profitable deviation, stopping early when a colouring repeats.
/// Status is [`PathStatus::Revisited`] on a repeat and
/// [`PathStatus::BudgetExhausted`] when the script (or `max_steps`) ran out.
pub fn run_script(
    game: &Game,
    start: &Colouring,
    moves: &[(NodeId, ColourId)],
    max_steps: usize,
) -> Result<Path> {
    let mut builder = PathBuilder::new(game, start.clone(), true);
    for &(node, colour) in moves {
        if builder.len() >= max_steps {
            break;
        }
        if node.index() >= game.node_count() {
            return Err(input(format!("scripted move names unknown node {:?}", node)));
        }
        if game.colour_set(node).binary_search(&colour).is_err() {
            return Err(input(format!(
                "scripted move gives node {} a colour outside its set",
                game.ext_id(node)
            )));
        }
        let s = builder.current();
        let gain = game.payoff_if(s, node, colour) as i64 - game.payoff(s, node) as i64;
        if s.get(node) == colour || gain <= 0 {
            return Err(input(format!(
                "scripted move for node {} is not a profitable deviation",
                game.ext_id(node)
            )));
        }
        if builder.apply(&[(node, colour)]) {
            return Ok(builder.finish(PathStatus::Revisited).1);
        }
    }
    Ok(builder.finish(PathStatus::BudgetExhausted).1)
}

/// Finds the next admitted profitable deviation: the first one in tie-break
/// order, or a uniform choice via reservoir sampling when `rng` is given.
fn next_deviation(
    game: &Game,
    s: &Colouring,
    max_size: usize,
    mut rng: Option<&mut ChaCha8Rng>,
    budget: u64,
) -> Result<Option<Vec<(NodeId, ColourId)>>> {
    let n = game.node_count();
    let mut examined = 0u64;
    let mut chosen: Option<Vec<(NodeId, ColourId)>> = None;
    let mut found = 0u64;
    let mut scratch = s.clone();

    let mut combo: Vec<usize> = Vec::new();
    for size in 1..=max_size.min(n) {
        // Lexicographically first coalition of this size.
        combo.clear();
        combo.extend(0..size);
        'coalitions: loop {
            let res = scan_targets(
                game,
                s,
                &mut scratch,
                &combo,
                &mut examined,
                budget,
                rng.as_deref_mut(),
                &mut found,
                &mut chosen,
            )?;
            if res && rng.is_none() {
                return Ok(chosen);
            }
            // Next size-`size` combination.
            let mut pos = size;
            loop {
                if pos == 0 {
                    break 'coalitions;
                }
                pos -= 1;
                if combo[pos] + 1 <= n - (size - pos) {
                    combo[pos] += 1;
                    for later in pos + 1..size {
                        combo[later] = combo[later - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    Ok(chosen)
}

/// Enumerates every target colouring for one coalition (each member must
/// change colour), updating the reservoir choice. Returns `true` if at least
/// one profitable target exists for this coalition.
#[allow(clippy::too_many_arguments)]
fn scan_targets(
    game: &Game,
    s: &Colouring,
    scratch: &mut Colouring,
    combo: &[usize],
    examined: &mut u64,
    budget: u64,
    mut rng: Option<&mut ChaCha8Rng>,
    found: &mut u64,
    chosen: &mut Option<Vec<(NodeId, ColourId)>>,
) -> Result<bool> {
    let members: Vec<NodeId> = combo.iter().map(|&i| NodeId(i as u32)).collect();
    // Per-member colour options, excluding the current colour.
    let options: Vec<Vec<ColourId>> = members
        .iter()
        .map(|&m| {
            game.colour_set(m)
                .iter()
                .copied()
                .filter(|&c| c != s.get(m))
                .collect()
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        return Ok(false);
    }

    let mut any = false;
    let mut indices = vec![0usize; members.len()];
    loop {
        *examined += 1;
        if *examined > budget {
            return Err(Error::Resource { examined: *examined, budget });
        }
        for (pos, &m) in members.iter().enumerate() {
            scratch.set(m, options[pos][indices[pos]]);
        }
        let profitable = members
            .iter()
            .all(|&m| game.payoff(scratch, m) > game.payoff(s, m));
        if profitable {
            any = true;
            let candidate: Vec<(NodeId, ColourId)> = members
                .iter()
                .enumerate()
                .map(|(pos, &m)| (m, options[pos][indices[pos]]))
                .collect();
            match rng.as_deref_mut() {
                None => {
                    *chosen = Some(candidate);
                    // First in tie-break order wins; restore and stop.
                    for &m in &members {
                        scratch.set(m, s.get(m));
                    }
                    return Ok(true);
                }
                Some(rng) => {
                    *found += 1;
                    if rng.random_range(0..*found) == 0 {
                        *chosen = Some(candidate);
                    }
                }
            }
        }
        // Advance the target odometer, last member fastest.
        let mut pos = members.len();
        loop {
            if pos == 0 {
                for &m in &members {
                    scratch.set(m, s.get(m));
                }
                return Ok(any);
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < options[pos].len() {
                break;
            }
            indices[pos] = 0;
        }
    }
}

/// Either a permutation placing every edge's source before its target, or a
/// witness cycle (forward edge order, smallest node first) when none exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopoResult {
    Order(Vec<NodeId>),
    Cycle(Vec<NodeId>),
}

/// Kahn's algorithm with a smallest-id-first heap, so the order (and hence
/// every downstream tie-break) is deterministic.
pub fn topological_order(game: &Game) -> TopoResult {
    let n = game.node_count();
    let mut indegree: Vec<usize> = (0..n).map(|i| game.in_neighbours(NodeId(i as u32)).len()).collect();
    let mut heap: BinaryHeap<Reverse<u32>> = (0..n as u32)
        .filter(|&i| indegree[i as usize] == 0)
        .map(Reverse)
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut emitted = vec![false; n];
    while let Some(Reverse(i)) = heap.pop() {
        let node = NodeId(i);
        order.push(node);
        emitted[node.index()] = true;
        for &(succ, _) in game.out_neighbours(node) {
            indegree[succ.index()] -= 1;
            if indegree[succ.index()] == 0 {
                heap.push(Reverse(succ.0));
            }
        }
    }
    if order.len() == n {
        return TopoResult::Order(order);
    }

    // Every remaining node keeps an in-neighbour among the remaining ones;
    // walk backwards along smallest such in-neighbours until a repeat.
    let start = (0..n as u32).map(NodeId).find(|i| !emitted[i.index()]).expect("cycle exists");
    let mut position: HashMap<NodeId, usize> = HashMap::new();
    let mut walk: Vec<NodeId> = vec![start];
    position.insert(start, 0);
    loop {
        let last = *walk.last().expect("non-empty walk");
        let prev = game
            .in_neighbours(last)
            .iter()
            .map(|&(p, _)| p)
            .find(|p| !emitted[p.index()])
            .expect("remaining nodes keep a remaining in-neighbour");
        if let Some(&at) = position.get(&prev) {
            // walk[at] == prev; edges run walk[t+1] -> walk[t], and
            // prev -> last closes the cycle.
            let mut cycle: Vec<NodeId> = Vec::with_capacity(walk.len() - at);
            cycle.push(prev);
            for idx in (at + 1..walk.len()).rev() {
                cycle.push(walk[idx]);
            }
            let least = cycle
                .iter()
                .enumerate()
                .min_by_key(|&(_, &node)| node)
                .map(|(idx, _)| idx)
                .expect("non-empty cycle");
            cycle.rotate_left(least);
            return TopoResult::Cycle(cycle);
        }
        position.insert(prev, walk.len());
        walk.push(prev);
    }
}

/// The payoff vector read off in `order`; orders must place every edge's
/// source before its target (checked in O(|E|)). Comparing results with the
/// native lexicographic order on `Vec<u64>` gives a quantity that strictly
/// increases along every profitable coalition deviation on acyclic graphs.
pub fn lex_potential(game: &Game, order: &[NodeId], s: &Colouring) -> Result<Vec<u64>> {
    let n = game.node_count();
    if order.len() != n {
        return Err(input(format!("order has {} entries for {n} nodes", order.len())));
    }
    let mut position = vec![usize::MAX; n];
    for (idx, &node) in order.iter().enumerate() {
        if node.index() >= n || position[node.index()] != usize::MAX {
            return Err(input("order is not a permutation of the nodes"));
        }
        position[node.index()] = idx;
    }
    for (src, dst, _) in game.edges() {
        if position[src.index()] >= position[dst.index()] {
            return Err(input(format!(
                "order puts node {} after its successor {}",
                game.ext_id(src),
                game.ext_id(dst)
            )));
        }
    }
    Ok(order.iter().map(|&node| game.payoff(s, node)).collect())
}
