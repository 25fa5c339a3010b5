//! The game model: a weighted directed graph where every node owns a
//! non-empty set of colours and a bonus per colour. A node's payoff under a
//! colouring is the total weight of in-edges whose source picked the same
//! colour, plus the node's bonus for its own colour.
//!
//! `Game` and `Colouring` are immutable once built (solvers work on clones),
//! so everything here is safe to call concurrently.

use std::collections::HashMap;
use std::fmt;

use crate::error::{input, Error, Result};

/// Default cap on states examined by exhaustive equilibrium checks.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Dense node index, `0..n`. External ids map onto these in ascending order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

/// Interned colour index; ids follow first-declaration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColourId(pub u32);

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Debug for ColourId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ColourId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

fn valid_token(token: &str) -> bool {
    !token.is_empty() && token.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

#[derive(Debug, Clone, Default)]
struct NodeSpec {
    colours: Vec<ColourId>,
    bonuses: Vec<(ColourId, u64)>,
}

/// Incremental construction of a [`Game`]. Nodes carry arbitrary positive
/// external ids; parallel edges merge by weight summation; self loops are
/// rejected.
#[derive(Debug, Default)]
pub struct GameBuilder {
    token_to_colour: HashMap<String, ColourId>,
    colour_tokens: Vec<String>,
    fixed_palette: bool,
    specs: HashMap<u64, NodeSpec>,
    edges: HashMap<(u64, u64), u64>,
}

impl GameBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declare the full colour palette up front, fixing colour-id order.
    /// Afterwards any undeclared colour token is an error.
    pub fn declare_palette<S: AsRef<str>>(&mut self, tokens: &[S]) -> Result<()> {
        if self.fixed_palette || !self.colour_tokens.is_empty() {
            return Err(input("colour palette already declared"));
        }
        for token in tokens {
            let token = token.as_ref();
            self.intern_colour(token)?;
        }
        self.fixed_palette = true;
        Ok(())
    }

    fn intern_colour(&mut self, token: &str) -> Result<ColourId> {
        if !valid_token(token) {
            return Err(input(format!(
                "invalid colour token {token:?} (expected [A-Za-z0-9_]+)"
            )));
        }
        if let Some(&id) = self.token_to_colour.get(token) {
            return Ok(id);
        }
        if self.fixed_palette {
            return Err(input(format!("colour {token:?} not in the declared palette")));
        }
        let id = ColourId(self.colour_tokens.len() as u32);
        self.colour_tokens.push(token.to_owned());
        self.token_to_colour.insert(token.to_owned(), id);
        Ok(id)
    }

    pub fn add_node(&mut self, ext: u64) -> Result<()> {
        if ext == 0 {
            return Err(input("node ids must be positive"));
        }
        if self.specs.contains_key(&ext) {
            return Err(input(format!("duplicate node {ext}")));
        }
        self.specs.insert(ext, NodeSpec::default());
        Ok(())
    }

    pub fn has_node(&self, ext: u64) -> bool {
        self.specs.contains_key(&ext)
    }

    /// Add one colour to a node's set. Repeats are merged silently.
    pub fn add_colour_option(&mut self, ext: u64, token: &str) -> Result<()> {
        let colour = self.intern_colour(token)?;
        let spec = self
            .specs
            .get_mut(&ext)
            .ok_or_else(|| input(format!("undeclared node {ext}")))?;
        if !spec.colours.contains(&colour) {
            spec.colours.push(colour);
        }
        Ok(())
    }

    pub fn set_bonus(&mut self, ext: u64, token: &str, bonus: u64) -> Result<()> {
        let colour = self.intern_colour(token)?;
        let spec = self
            .specs
            .get_mut(&ext)
            .ok_or_else(|| input(format!("undeclared node {ext}")))?;
        if spec.bonuses.iter().any(|&(c, _)| c == colour) {
            return Err(input(format!("duplicate bonus for node {ext} colour {token}")));
        }
        spec.bonuses.push((colour, bonus));
        Ok(())
    }

    pub fn add_edge(&mut self, src: u64, dst: u64, weight: u64) -> Result<()> {
        if src == dst {
            return Err(input(format!("self loop on node {src}")));
        }
        *self.edges.entry((src, dst)).or_insert(0) += weight;
        Ok(())
    }

    pub fn build(self) -> Result<Game> {
        if self.specs.is_empty() {
            return Err(input("game has no nodes"));
        }
        let mut ext_ids: Vec<u64> = self.specs.keys().copied().collect();
        ext_ids.sort_unstable();
        let ext_to_node: HashMap<u64, NodeId> = ext_ids
            .iter()
            .enumerate()
            .map(|(i, &ext)| (ext, NodeId(i as u32)))
            .collect();

        let n = ext_ids.len();
        let mut colour_sets = Vec::with_capacity(n);
        let mut bonuses = Vec::with_capacity(n);
        for &ext in &ext_ids {
            let spec = &self.specs[&ext];
            if spec.colours.is_empty() {
                return Err(input(format!("node {ext} has an empty colour set")));
            }
            let mut set = spec.colours.clone();
            set.sort_unstable();
            let mut row = vec![0u64; set.len()];
            for &(colour, bonus) in &spec.bonuses {
                match set.binary_search(&colour) {
                    Ok(pos) => row[pos] = bonus,
                    Err(_) => {
                        return Err(input(format!(
                            "bonus for node {ext} names colour {:?} outside its set",
                            self.colour_tokens[colour.index()]
                        )))
                    }
                }
            }
            colour_sets.push(set);
            bonuses.push(row);
        }

        let mut edges: Vec<(NodeId, NodeId, u64)> = Vec::with_capacity(self.edges.len());
        for ((src, dst), weight) in self.edges {
            let (Some(&s), Some(&d)) = (ext_to_node.get(&src), ext_to_node.get(&dst)) else {
                return Err(input(format!("edge {src} -> {dst} references an undeclared node")));
            };
            edges.push((s, d, weight));
        }
        edges.sort_unstable();
        let (out_offsets, out_flat) = compress(n, edges.iter().map(|&(s, d, w)| (s, (d, w))));
        edges.sort_unstable_by_key(|&(s, d, _)| (d, s));
        let (in_offsets, in_flat) = compress(n, edges.iter().map(|&(s, d, w)| (d, (s, w))));

        Ok(Game {
            ext_ids,
            ext_to_node,
            colour_tokens: self.colour_tokens,
            token_to_colour: self.token_to_colour,
            colour_sets,
            bonuses,
            out_offsets,
            out_flat,
            in_offsets,
            in_flat,
        })
    }
}

/// Packs `(key, value)` pairs sorted by key into offset + flat-array form.
fn compress(
    n: usize,
    pairs: impl Iterator<Item = (NodeId, (NodeId, u64))>,
) -> (Vec<u32>, Vec<(NodeId, u64)>) {
    let mut offsets = vec![0u32; n + 1];
    let mut flat = Vec::new();
    for (key, value) in pairs {
        flat.push(value);
        offsets[key.index() + 1] = flat.len() as u32;
    }
    for i in 1..=n {
        offsets[i] = offsets[i].max(offsets[i - 1]);
    }
    (offsets, flat)
}

/// A coordination game instance. Immutable after construction. Adjacency is
/// stored in compressed (offset + flat array) form so payoff scans stay
/// cache-friendly on million-node games.
#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    ext_ids: Vec<u64>,
    ext_to_node: HashMap<u64, NodeId>,
    colour_tokens: Vec<String>,
    token_to_colour: HashMap<String, ColourId>,
    /// Per node, sorted ascending by colour id.
    colour_sets: Vec<Vec<ColourId>>,
    /// Aligned with `colour_sets`.
    bonuses: Vec<Vec<u64>>,
    out_offsets: Vec<u32>,
    out_flat: Vec<(NodeId, u64)>,
    in_offsets: Vec<u32>,
    in_flat: Vec<(NodeId, u64)>,
}

impl Game {
    pub fn node_count(&self) -> usize {
        self.ext_ids.len()
    }

    pub fn colour_count(&self) -> usize {
        self.colour_tokens.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.ext_ids.len() as u32).map(NodeId)
    }

    pub fn ext_id(&self, node: NodeId) -> u64 {
        self.ext_ids[node.index()]
    }

    pub fn node_by_ext(&self, ext: u64) -> Option<NodeId> {
        self.ext_to_node.get(&ext).copied()
    }

    pub fn colour_token(&self, colour: ColourId) -> &str {
        &self.colour_tokens[colour.index()]
    }

    pub fn colour_by_token(&self, token: &str) -> Option<ColourId> {
        self.token_to_colour.get(token).copied()
    }

    pub fn colour_tokens(&self) -> &[String] {
        &self.colour_tokens
    }

    /// The node's colour set, ascending by colour id.
    pub fn colour_set(&self, node: NodeId) -> &[ColourId] {
        &self.colour_sets[node.index()]
    }

    /// Bonus of `node` for `colour`; zero when the colour is not in its set.
    pub fn bonus(&self, node: NodeId, colour: ColourId) -> u64 {
        match self.colour_sets[node.index()].binary_search(&colour) {
            Ok(pos) => self.bonuses[node.index()][pos],
            Err(_) => 0,
        }
    }

    pub fn max_bonus(&self, node: NodeId) -> u64 {
        self.bonuses[node.index()].iter().copied().max().unwrap_or(0)
    }

    /// In-neighbours with edge weights, ascending by source id.
    pub fn in_neighbours(&self, node: NodeId) -> &[(NodeId, u64)] {
        let (lo, hi) = (self.in_offsets[node.index()], self.in_offsets[node.index() + 1]);
        &self.in_flat[lo as usize..hi as usize]
    }

    /// Out-neighbours with edge weights, ascending by target id.
    pub fn out_neighbours(&self, node: NodeId) -> &[(NodeId, u64)] {
        let (lo, hi) = (self.out_offsets[node.index()], self.out_offsets[node.index() + 1]);
        &self.out_flat[lo as usize..hi as usize]
    }

    pub fn edge_count(&self) -> usize {
        self.out_flat.len()
    }

    /// All edges as `(src, dst, weight)`, sorted by `(src, dst)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, u64)> + '_ {
        self.nodes().flat_map(move |src| {
            self.out_neighbours(src)
                .iter()
                .map(move |&(dst, w)| (src, dst, w))
        })
    }

    pub fn all_weights_unit(&self) -> bool {
        self.edges().all(|(_, _, w)| w == 1)
    }

    /// Payoff of `node` under `s`: matching in-edge weight plus own bonus.
    pub fn payoff(&self, s: &Colouring, node: NodeId) -> u64 {
        self.payoff_if(s, node, s.get(node))
    }

    /// Payoff `node` would get by playing `colour` while everyone else keeps
    /// their colour in `s`.
    pub fn payoff_if(&self, s: &Colouring, node: NodeId, colour: ColourId) -> u64 {
        let mut total = self.bonus(node, colour);
        for &(src, weight) in &self.in_edges[node.index()] {
            if s.get(src) == colour {
                total += weight;
            }
        }
        total
    }

    pub fn social_welfare(&self, s: &Colouring) -> u64 {
        self.nodes().map(|i| self.payoff(s, i)).sum()
    }

    pub fn best_response_payoff(&self, s: &Colouring, node: NodeId) -> u64 {
        self.colour_set(node)
            .iter()
            .map(|&c| self.payoff_if(s, node, c))
            .max()
            .expect("colour sets are non-empty")
    }

    /// All payoff-maximising colours for `node` against `s`, ascending by
    /// colour id.
    pub fn best_responses(&self, s: &Colouring, node: NodeId) -> Vec<ColourId> {
        let best = self.best_response_payoff(s, node);
        self.colour_set(node)
            .iter()
            .copied()
            .filter(|&c| self.payoff_if(s, node, c) == best)
            .collect()
    }

    /// True iff no single node can strictly improve by switching colour.
    pub fn is_nash(&self, s: &Colouring) -> bool {
        self.nodes()
            .all(|i| self.payoff(s, i) == self.best_response_payoff(s, i))
    }

    /// Exhaustive check that no coalition of at most `k` nodes can deviate
    /// with a strict gain for every member. Exponential by design; refuses
    /// with a resource error once `budget` alternative colourings have been
    /// examined, rather than ever returning a wrong answer.
    pub fn is_k_equilibrium(&self, s: &Colouring, k: usize, budget: u64) -> Result<bool> {
        let n = self.node_count();
        if k == 0 || k > n {
            return Err(input(format!("k must be in 1..={n}, got {k}")));
        }
        if s.len() != n {
            return Err(input("colouring size does not match the game"));
        }

        // Odometer over the product of colour sets.
        let mut indices = vec![0usize; n];
        let mut current = Colouring {
            values: self
                .colour_sets
                .iter()
                .map(|set| set[0])
                .collect::<Vec<_>>(),
        };
        let mut examined = 0u64;
        loop {
            if current.values != s.values {
                examined += 1;
                if examined > budget {
                    return Err(Error::Resource { examined, budget });
                }
                if self.admits_profitable_within(s, &current, k) {
                    return Ok(false);
                }
            }
            // Advance the odometer, last node fastest.
            let mut pos = n;
            loop {
                if pos == 0 {
                    return Ok(true);
                }
                pos -= 1;
                indices[pos] += 1;
                if indices[pos] < self.colour_sets[pos].len() {
                    current.values[pos] = self.colour_sets[pos][indices[pos]];
                    break;
                }
                indices[pos] = 0;
                current.values[pos] = self.colour_sets[pos][0];
            }
        }
    }

    /// `true` iff `after` deviates from `s` in at most `k` nodes and every
    /// deviating node strictly gains.
    fn admits_profitable_within(&self, s: &Colouring, after: &Colouring, k: usize) -> bool {
        let mut members = 0usize;
        for i in self.nodes() {
            if s.get(i) != after.get(i) {
                members += 1;
                if members > k {
                    return false;
                }
            }
        }
        if members == 0 {
            return false;
        }
        for i in self.nodes() {
            if s.get(i) != after.get(i) && self.payoff(after, i) <= self.payoff(s, i) {
                return false;
            }
        }
        true
    }

    /// A strong equilibrium is an n-equilibrium.
    pub fn is_strong(&self, s: &Colouring, budget: u64) -> Result<bool> {
        self.is_k_equilibrium(s, self.node_count(), budget)
    }
}

/// One colour per node; valid only for the game it was built against.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    values: Vec<ColourId>,
}

impl fmt::Debug for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter()).finish()
    }
}

impl Colouring {
    /// Validates that every node gets a colour from its own set.
    pub fn new(game: &Game, values: Vec<ColourId>) -> Result<Self> {
        if values.len() != game.node_count() {
            return Err(input(format!(
                "colouring has {} entries for a {}-node game",
                values.len(),
                game.node_count()
            )));
        }
        for (i, &colour) in values.iter().enumerate() {
            let node = NodeId(i as u32);
            if game.colour_sets[i].binary_search(&colour).is_err() {
                return Err(input(format!(
                    "node {} cannot play colour {:?}",
                    game.ext_id(node),
                    game.colour_tokens.get(colour.index()).map(String::as_str).unwrap_or("?")
                )));
            }
        }
        Ok(Self { values })
    }

    /// The tie-break-least colouring: every node plays its lowest colour id.
    pub fn least(game: &Game) -> Self {
        Self {
            values: game.colour_sets.iter().map(|set| set[0]).collect(),
        }
    }

    pub fn get(&self, node: NodeId) -> ColourId {
        self.values[node.index()]
    }

    /// The caller must pick a colour from the node's set.
    pub fn set(&mut self, node: NodeId, colour: ColourId) {
        self.values[node.index()] = colour;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[ColourId] {
        &self.values
    }
}

/// A coalition move between two colourings: the coalition is exactly the set
/// of nodes whose colour differs, and the step is profitable iff every
/// member's payoff strictly rises.
#[derive(Debug, Clone)]
pub struct DeviationStep {
    pub coalition: Vec<NodeId>,
    pub before: Colouring,
    pub after: Colouring,
    pub deltas: Vec<i64>,
}

impl DeviationStep {
    /// `None` when the colourings are identical (not a deviation).
    pub fn between(game: &Game, before: &Colouring, after: &Colouring) -> Option<Self> {
        let coalition: Vec<NodeId> = game
            .nodes()
            .filter(|&i| before.get(i) != after.get(i))
            .collect();
        if coalition.is_empty() {
            return None;
        }
        let deltas = coalition
            .iter()
            .map(|&i| game.payoff(after, i) as i64 - game.payoff(before, i) as i64)
            .collect();
        Some(Self {
            coalition,
            before: before.clone(),
            after: after.clone(),
            deltas,
        })
    }

    pub fn is_profitable(&self) -> bool {
        self.deltas.iter().all(|&d| d > 0)
    }
}

/// Diffs the colourings and reports whether the move is a profitable
/// deviation, together with the deviating coalition (empty for identical
/// colourings).
pub fn is_profitable_deviation(
    game: &Game,
    before: &Colouring,
    after: &Colouring,
) -> (bool, Vec<NodeId>) {
    match DeviationStep::between(game, before, after) {
        Some(step) => {
            let profitable = step.is_profitable();
            (profitable, step.coalition)
        }
        None => (false, Vec::new()),
    }
}


#[cfg(test)]
mod tests {
    use super::testgames::*;
    use super::*;

    #[test]
    fn reference_payoffs() {
        let game = nine_node();
        let s = nine_node_reference_colouring(&game);
        let expected = [(1, 0), (2, 1), (3, 2), (4, 1), (5, 1), (6, 1), (7, 0), (8, 0), (9, 0)];
        for (ext, want) in expected {
            let node = game.node_by_ext(ext).unwrap();
            assert_eq!(game.payoff(&s, node), want, "payoff of node {ext}");
        }
        assert_eq!(game.social_welfare(&s), 6);
    }

    #[test]
    fn payoff_of_isolated_node_is_zero() {
        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        let game = b.build().unwrap();
        let s = Colouring::least(&game);
        assert_eq!(game.payoff(&s, NodeId(0)), 0);
        assert_eq!(game.social_welfare(&s), 0);
    }

    #[test]
    fn two_cycle_shared_colour_pays_one_each() {
        let game = two_cycle();
        let s = colouring_of(&game, &[(1, "c"), (2, "c")]);
        assert_eq!(game.payoff(&s, NodeId(0)), 1);
        assert_eq!(game.payoff(&s, NodeId(1)), 1);
        assert_eq!(game.social_welfare(&s), 2);
    }

    #[test]
    fn best_responses_in_reference_colouring() {
        let game = nine_node();
        let s = nine_node_reference_colouring(&game);
        let node1 = game.node_by_ext(1).unwrap();
        let a = game.colour_by_token("a").unwrap();
        assert_eq!(game.best_responses(&s, node1), vec![a]);
    }

    #[test]
    fn best_response_of_single_colour_node() {
        let game = nine_node();
        let s = nine_node_reference_colouring(&game);
        let node7 = game.node_by_ext(7).unwrap();
        let a = game.colour_by_token("a").unwrap();
        assert_eq!(game.best_responses(&s, node7), vec![a]);
    }

    #[test]
    fn best_response_copies_predecessor_on_cycle() {
        let game = shared_cycle(3);
        let s = colouring_of(&game, &[(1, "a"), (2, "b"), (3, "b")]);
        let b = game.colour_by_token("b").unwrap();
        assert_eq!(game.best_responses(&s, NodeId(0)), vec![b]);
    }

    #[test]
    fn pair_deviation_to_common_colour_is_profitable() {
        let game = two_cycle();
        let before = colouring_of(&game, &[(1, "a"), (2, "b")]);
        let after = colouring_of(&game, &[(1, "c"), (2, "c")]);
        let (profitable, coalition) = is_profitable_deviation(&game, &before, &after);
        assert!(profitable);
        assert_eq!(coalition, vec![NodeId(0), NodeId(1)]);
    }

    #[test]
    fn identical_colourings_are_not_a_deviation() {
        let game = two_cycle();
        let s = colouring_of(&game, &[(1, "a"), (2, "b")]);
        let (profitable, coalition) = is_profitable_deviation(&game, &s, &s);
        assert!(!profitable);
        assert!(coalition.is_empty());
    }

    #[test]
    fn single_node_improvement_is_profitable() {
        let game = nine_node();
        let before = nine_node_reference_colouring(&game);
        let mut after = before.clone();
        after.set(game.node_by_ext(1).unwrap(), game.colour_by_token("a").unwrap());
        let (profitable, coalition) = is_profitable_deviation(&game, &before, &after);
        assert!(profitable);
        assert_eq!(coalition, vec![game.node_by_ext(1).unwrap()]);
    }

    #[test]
    fn nash_status_of_fixture_colourings() {
        let two = two_cycle();
        let ab = colouring_of(&two, &[(1, "a"), (2, "b")]);
        assert!(two.is_nash(&ab));

        let nine = nine_node();
        let s = nine_node_reference_colouring(&nine);
        assert!(!nine.is_nash(&s));
    }

    #[test]
    fn dominated_bonus_colour_is_not_nash() {
        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        b.add_colour_option(1, "b").unwrap();
        b.set_bonus(1, "b", 2).unwrap();
        let game = b.build().unwrap();
        let s = Colouring::new(&game, vec![game.colour_by_token("a").unwrap()]).unwrap();
        assert!(!game.is_nash(&s));
    }

    #[test]
    fn strong_versus_nash_on_two_cycle() {
        let game = two_cycle();
        let ab = colouring_of(&game, &[(1, "a"), (2, "b")]);
        let cc = colouring_of(&game, &[(1, "c"), (2, "c")]);
        assert!(!game.is_k_equilibrium(&ab, 2, DEFAULT_BUDGET).unwrap());
        assert!(game.is_k_equilibrium(&cc, 2, DEFAULT_BUDGET).unwrap());
        assert!(game.is_strong(&cc, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn k_equilibrium_is_monotone_in_k() {
        let game = two_cycle();
        let cc = colouring_of(&game, &[(1, "c"), (2, "c")]);
        assert!(game.is_strong(&cc, DEFAULT_BUDGET).unwrap());
        for k in 1..=2 {
            assert!(game.is_k_equilibrium(&cc, k, DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn budget_exhaustion_is_a_typed_error() {
        let game = nine_node();
        let s = nine_node_reference_colouring(&game);
        let err = game.is_strong(&s, 3).unwrap_err();
        assert!(matches!(err, Error::Resource { budget: 3, .. }));
    }

    #[test]
    fn parallel_edges_merge_and_self_loops_reject() {
        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        b.add_node(2).unwrap();
        b.add_colour_option(2, "a").unwrap();
        b.add_edge(1, 2, 1).unwrap();
        b.add_edge(1, 2, 1).unwrap();
        assert!(b.add_edge(1, 1, 1).is_err());
        let game = b.build().unwrap();
        assert_eq!(game.edges().collect::<Vec<_>>(), vec![(NodeId(0), NodeId(1), 2)]);
    }

    #[test]
    fn bonus_outside_set_is_rejected() {
        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        b.set_bonus(1, "z", 1).unwrap();
        assert!(b.build().is_err());
    }

    #[test]
    fn colouring_must_respect_colour_sets() {
        let game = two_cycle();
        let b = game.colour_by_token("b").unwrap();
        assert!(Colouring::new(&game, vec![b, b]).is_err());
    }
}
