//! Constructions connecting 3-CNF satisfiability and coordination games:
//! the 9-node clause gadget, the full formula-to-game reduction with its
//! role map, simulation of weighted edges by relay players, and the 0/1
//! polymatrix translation.

use std::collections::{HashMap, HashSet};

use crate::error::{input, structure, Error, Result};
use crate::game::{Colouring, ColourId, Game, GameBuilder, NodeId};

/// Colour tokens used by the reduction, in interning order.
const PALETTE: [&str; 5] = ["R", "G", "B", "T", "F"];

fn literal_token(positive: bool) -> &'static str {
    if positive {
        "T"
    } else {
        "F"
    }
}

/// A 3-CNF formula: literals are signed variable indexes, `3` meaning the
/// third variable and `-3` its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(input(format!(
                        "literal {lit} out of range for {num_vars} variables"
                    )));
                }
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = assignment[(lit.unsigned_abs() - 1) as usize];
                if lit > 0 {
                    value
                } else {
                    !value
                }
            })
        })
    }

    /// Tries all `2^num_vars` assignments.
    pub fn satisfiable_by_enumeration(&self) -> Result<bool> {
        if self.num_vars > 30 {
            return Err(input("enumeration only supports up to 30 variables"));
        }
        let mut assignment = vec![false; self.num_vars];
        for mask in 0u64..(1u64 << self.num_vars) {
            for (bit, slot) in assignment.iter_mut().enumerate() {
                *slot = mask & (1 << bit) != 0;
            }
            if self.evaluate(&assignment) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Parse DIMACS CNF text; every clause must have exactly three literals.
/// Clauses may span lines; `c` comment lines and the `p cnf` header are
/// honoured.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let parse_err =
        |line: usize, message: String| Error::Parse { line, message };
    let mut num_vars: Option<usize> = None;
    let mut clauses: Vec<[i32; 3]> = Vec::new();
    let mut pending: Vec<i32> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if num_vars.is_some() {
                return Err(parse_err(line_no, "duplicate header".into()));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            let ["cnf", vars, _clause_count] = fields[..] else {
                return Err(parse_err(line_no, "malformed header, expected: p cnf <vars> <clauses>".into()));
            };
            let vars: usize = vars
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid variable count {vars:?}")))?;
            num_vars = Some(vars);
            continue;
        }
        let Some(vars) = num_vars else {
            return Err(parse_err(line_no, "clause before the p cnf header".into()));
        };
        for token in line.split_whitespace() {
            let lit: i32 = token
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid literal {token:?}")))?;
            if lit == 0 {
                let done: [i32; 3] = pending.as_slice().try_into().map_err(|_| {
                    parse_err(line_no, format!("clause has {} literals, expected 3", pending.len()))
                })?;
                clauses.push(done);
                pending.clear();
            } else {
                if lit.unsigned_abs() as usize > vars {
                    return Err(parse_err(line_no, format!("literal {lit} out of range")));
                }
                pending.push(lit);
            }
        }
    }
    if !pending.is_empty() {
        return Err(input("unterminated clause at end of input"));
    }
    let num_vars = num_vars.ok_or_else(|| input("missing p cnf header"))?;
    CnfFormula::new(num_vars, clauses)
}

/// External ids of one gadget's distinguished nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetRoles {
    pub core_a: u64,
    pub core_b: u64,
    pub core_c: u64,
}

/// Where every node of a reduced game came from, recoverable from the game
/// file's `# role` comments.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RoleMap {
    /// `variables[j]` is the external id of the node for variable `j + 1`.
    pub variables: Vec<u64>,
    /// Per clause, the external ids of its three core nodes.
    pub clause_cores: Vec<GadgetRoles>,
}

impl RoleMap {
    /// Structured comment lines for embedding into a game file.
    pub fn comment_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for (j, &ext) in self.variables.iter().enumerate() {
            lines.push(format!("role {ext} X {}", j + 1));
        }
        for (i, cores) in self.clause_cores.iter().enumerate() {
            lines.push(format!("role {} A {}", cores.core_a, i + 1));
            lines.push(format!("role {} B {}", cores.core_b, i + 1));
            lines.push(format!("role {} C {}", cores.core_c, i + 1));
        }
        lines
    }

    /// Recovers a role map from `# role <ext> <kind> <index>` comment lines.
    pub fn from_comments(text: &str) -> Result<RoleMap> {
        let mut variables: HashMap<usize, u64> = HashMap::new();
        let mut cores: HashMap<(usize, usize), u64> = HashMap::new();
        for raw in text.lines() {
            let Some(rest) = raw.trim().strip_prefix("# role ") else {
                continue;
            };
            let fields: Vec<&str> = rest.split_whitespace().collect();
            let [ext, kind, index] = fields[..] else {
                return Err(input(format!("malformed role comment {raw:?}")));
            };
            let ext: u64 = ext.parse().map_err(|_| input(format!("bad role id in {raw:?}")))?;
            let index: usize =
                index.parse().map_err(|_| input(format!("bad role index in {raw:?}")))?;
            if index == 0 {
                return Err(input(format!("role indexes are 1-based: {raw:?}")));
            }
            let slot = match kind {
                "X" => variables.insert(index, ext).is_some(),
                "A" => cores.insert((index, 0), ext).is_some(),
                "B" => cores.insert((index, 1), ext).is_some(),
                "C" => cores.insert((index, 2), ext).is_some(),
                other => return Err(input(format!("unknown role kind {other:?}"))),
            };
            if slot {
                return Err(input(format!("duplicate role comment {raw:?}")));
            }
        }
        let mut map = RoleMap::default();
        for j in 1..=variables.len() {
            let &ext = variables
                .get(&j)
                .ok_or_else(|| input(format!("missing role for variable {j}")))?;
            map.variables.push(ext);
        }
        let clause_count = cores.len() / 3;
        for i in 1..=clause_count {
            let fetch = |pos: usize| {
                cores
                    .get(&(i, pos))
                    .copied()
                    .ok_or_else(|| input(format!("missing core role for clause {i}")))
            };
            map.clause_cores.push(GadgetRoles {
                core_a: fetch(0)?,
                core_b: fetch(1)?,
                core_c: fetch(2)?,
            });
        }
        Ok(map)
    }
}

/// Adds the 9-node clause gadget to `builder` with external ids
/// `base + 1 ..= base + 9`, returning the core ids.
fn add_gadget(
    builder: &mut GameBuilder,
    base: u64,
    x: bool,
    y: bool,
    z: bool,
) -> Result<GadgetRoles> {
    let a = base + 1;
    let b = base + 2;
    let c = base + 3;
    let relay_rg = base + 4;
    let relay_rb = base + 5;
    let relay_gb = base + 6;
    let leaf_r = base + 7;
    let leaf_b = base + 8;
    let leaf_g = base + 9;

    let sets: [(u64, Vec<&str>); 9] = [
        (a, vec!["R", "G", literal_token(x)]),
        (b, vec!["R", "B", literal_token(y)]),
        (c, vec!["G", "B", literal_token(z)]),
        (relay_rg, vec!["R", "G"]),
        (relay_rb, vec!["R", "B"]),
        (relay_gb, vec!["G", "B"]),
        (leaf_r, vec!["R"]),
        (leaf_b, vec!["B"]),
        (leaf_g, vec!["G"]),
    ];
    for (ext, colours) in sets {
        builder.add_node(ext)?;
        for token in colours {
            builder.add_colour_option(ext, token)?;
        }
    }
    // Core triangle, relays boosting the next core node, and fixed leaves.
    for (src, dst, weight) in [
        (a, b, 1),
        (b, c, 1),
        (c, a, 1),
        (a, relay_rg, 1),
        (b, relay_rb, 1),
        (c, relay_gb, 1),
        (relay_rg, b, 2),
        (relay_rb, c, 2),
        (relay_gb, a, 2),
        (leaf_r, a, 2),
        (leaf_b, b, 2),
        (leaf_g, c, 2),
    ] {
        builder.add_edge(src, dst, weight)?;
    }
    Ok(GadgetRoles { core_a: a, core_b: b, core_c: c })
}

/// The standalone clause gadget: 9 nodes and 12 weighted edges, with the
/// parameter colours (`true` for `T`, `false` for `F`) appearing in the core
/// nodes' sets. External ids start at `9 * index`.
pub fn build_gadget(index: usize, x: bool, y: bool, z: bool) -> (Game, GadgetRoles) {
    let mut builder = GameBuilder::new();
    builder.declare_palette(&PALETTE).expect("fixed palette");
    let roles = add_gadget(&mut builder, 9 * index as u64, x, y, z).expect("gadget is well-formed");
    (builder.build().expect("gadget is well-formed"), roles)
}

/// Builds the weighted game whose Nash equilibria correspond to satisfying
/// assignments: one `{T, F}` node per variable, one gadget per clause, and a
/// weight-4 edge from each literal's variable node to the matching core
/// node. Total size is `num_vars + 9 * clause_count` nodes.
pub fn sat_to_game(formula: &CnfFormula) -> Result<(Game, RoleMap)> {
    if formula.num_vars == 0 {
        return Err(input("the reduction needs at least one variable"));
    }
    let mut builder = GameBuilder::new();
    builder.declare_palette(&PALETTE)?;
    let mut roles = RoleMap::default();
    for j in 1..=formula.num_vars as u64 {
        builder.add_node(j)?;
        builder.add_colour_option(j, "T")?;
        builder.add_colour_option(j, "F")?;
        roles.variables.push(j);
    }
    for (i, clause) in formula.clauses.iter().enumerate() {
        let base = formula.num_vars as u64 + 9 * i as u64;
        let gadget = add_gadget(
            &mut builder,
            base,
            clause[0] > 0,
            clause[1] > 0,
            clause[2] > 0,
        )?;
        roles.clause_cores.push(gadget);
        let targets = [gadget.core_a, gadget.core_b, gadget.core_c];
        for (&lit, &target) in clause.iter().zip(&targets) {
            let variable = lit.unsigned_abs() as u64;
            builder.add_edge(variable, target, 4)?;
        }
    }
    Ok((builder.build()?, roles))
}

/// Reads the truth assignment off the variable nodes of a Nash equilibrium.
/// Refuses non-equilibrium colourings: only at a Nash equilibrium is the
/// extracted assignment guaranteed to satisfy the formula.
pub fn extract_assignment(game: &Game, roles: &RoleMap, s: &Colouring) -> Result<Vec<bool>> {
    if !game.is_nash(s) {
        return Err(input("colouring is not a Nash equilibrium"));
    }
    let truthy = game
        .colour_by_token("T")
        .ok_or_else(|| input("game does not use the reduction palette"))?;
    roles
        .variables
        .iter()
        .map(|&ext| {
            let node = game
                .node_by_ext(ext)
                .ok_or_else(|| input(format!("role map names unknown node {ext}")))?;
            Ok(s.get(node) == truthy)
        })
        .collect()
}

/// A weight-free copy of a game plus the projection from its node ids back
/// to the original ones (identity on surviving nodes).
#[derive(Debug, Clone)]
pub struct ExpandedGame {
    pub game: Game,
    pub projection: HashMap<u64, u64>,
}

/// Replaces every edge of weight `w >= 2` by `w` relay players that copy the
/// source's colour set, each wired `src -> relay -> dst` with unit edges.
/// Weight-1 edges pass through; weight-0 edges are dropped.
pub fn expand_weights(game: &Game) -> ExpandedGame {
    let mut builder = GameBuilder::new();
    builder
        .declare_palette(game.colour_tokens())
        .expect("palette from a valid game");
    let mut projection = HashMap::new();
    for node in game.nodes() {
        let ext = game.ext_id(node);
        builder.add_node(ext).expect("unique original ids");
        projection.insert(ext, ext);
        for &colour in game.colour_set(node) {
            builder
                .add_colour_option(ext, game.colour_token(colour))
                .expect("colour from palette");
            let bonus = game.bonus(node, colour);
            if bonus > 0 {
                builder
                    .set_bonus(ext, game.colour_token(colour), bonus)
                    .expect("bonus on own colour");
            }
        }
    }
    let mut next_ext = game.nodes().map(|n| game.ext_id(n)).max().unwrap_or(0) + 1;
    for (src, dst, weight) in game.edges() {
        let src_ext = game.ext_id(src);
        let dst_ext = game.ext_id(dst);
        match weight {
            0 => {}
            1 => builder.add_edge(src_ext, dst_ext, 1).expect("valid edge"),
            w => {
                for _ in 0..w {
                    let relay = next_ext;
                    next_ext += 1;
                    builder.add_node(relay).expect("fresh id");
                    projection.insert(relay, src_ext);
                    for &colour in game.colour_set(src) {
                        builder
                            .add_colour_option(relay, game.colour_token(colour))
                            .expect("colour from palette");
                    }
                    builder.add_edge(src_ext, relay, 1).expect("valid edge");
                    builder.add_edge(relay, dst_ext, 1).expect("valid edge");
                }
            }
        }
    }
    ExpandedGame {
        game: builder.build().expect("expansion of a valid game"),
        projection,
    }
}

/// A polymatrix game with 0/1 partial payoffs: player `i`'s payoff is the
/// number of stored `(i, j, s_i, s_j)` entries matching the joint strategy.
#[derive(Debug, Clone)]
pub struct PolymatrixGame {
    ext_ids: Vec<u64>,
    colour_tokens: Vec<String>,
    strategy_sets: Vec<Vec<ColourId>>,
    ones: HashSet<(NodeId, NodeId, ColourId, ColourId)>,
}

impl PolymatrixGame {
    pub fn player_count(&self) -> usize {
        self.ext_ids.len()
    }

    pub fn ext_id(&self, player: usize) -> u64 {
        self.ext_ids[player]
    }

    pub fn colour_token(&self, colour: ColourId) -> &str {
        &self.colour_tokens[colour.index()]
    }

    pub fn strategy_set(&self, player: usize) -> &[ColourId] {
        &self.strategy_sets[player]
    }

    /// The stored 1-entries, sorted.
    pub fn one_entries(&self) -> Vec<(NodeId, NodeId, ColourId, ColourId)> {
        let mut entries: Vec<_> = self.ones.iter().copied().collect();
        entries.sort_unstable();
        entries
    }

    /// `p_i(s) = sum over j != i of a^{ij}(s_i, s_j)`.
    pub fn payoff(&self, s: &[ColourId], player: usize) -> u64 {
        let i = NodeId(player as u32);
        let own = s[player];
        (0..self.player_count())
            .filter(|&j| j != player)
            .filter(|&j| self.ones.contains(&(i, NodeId(j as u32), own, s[j])))
            .count() as u64
    }

    pub fn is_nash(&self, s: &[ColourId]) -> bool {
        (0..self.player_count()).all(|player| {
            let current = self.payoff(s, player);
            let mut probe = s.to_vec();
            self.strategy_sets[player].iter().all(|&alt| {
                probe[player] = alt;
                self.payoff(&probe, player) <= current
            })
        })
    }
}

/// Translates a unit-weight, zero-bonus game into a polymatrix game with 0/1
/// partial payoffs: `a^{ij}(c, c) = 1` exactly when `j` is an in-neighbour
/// of `i`, so both games assign identical payoffs at every colouring.
pub fn to_polymatrix(game: &Game) -> Result<PolymatrixGame> {
    if !game.all_weights_unit() {
        return Err(structure("polymatrix translation needs unit edge weights"));
    }
    if game.nodes().any(|i| game.max_bonus(i) > 0) {
        return Err(structure("polymatrix translation needs zero bonuses"));
    }
    let mut ones = HashSet::new();
    for node in game.nodes() {
        for &(source, _) in game.in_neighbours(node) {
            for &colour in game.colour_set(node) {
                if game.colour_set(source).binary_search(&colour).is_ok() {
                    ones.insert((node, source, colour, colour));
                }
            }
        }
    }
    Ok(PolymatrixGame {
        ext_ids: game.nodes().map(|n| game.ext_id(n)).collect(),
        colour_tokens: game.colour_tokens().to_vec(),
        strategy_sets: game.nodes().map(|n| game.colour_set(n).to_vec()).collect(),
        ones,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::testgames::*;
    use crate::game::DEFAULT_BUDGET;
    use crate::oracle::{self, EquilibriumKind};

    #[test]
    fn parses_simple_dimacs() {
        let formula = parse_dimacs("p cnf 3 1\n1 -2 3 0\n").unwrap();
        assert_eq!(formula.num_vars, 3);
        assert_eq!(formula.clauses, vec![[1, -2, 3]]);
    }

    #[test]
    fn rejects_short_clause() {
        assert!(parse_dimacs("p cnf 2 1\n1 2 0\n").is_err());
    }

    #[test]
    fn honours_comments_and_multiline_clauses() {
        let formula = parse_dimacs("c a comment\np cnf 3 1\n1 -2\n3 0\n").unwrap();
        assert_eq!(formula.clauses, vec![[1, -2, 3]]);
    }

    #[test]
    fn rejects_out_of_range_literal() {
        assert!(parse_dimacs("p cnf 2 1\n1 -2 3 0\n").is_err());
    }

    #[test]
    fn two_clause_formula_reduces_to_23_nodes() {
        let formula = parse_dimacs("p cnf 5 2\n1 -2 3 0\n-3 4 -5 0\n").unwrap();
        assert_eq!(formula.clauses.len(), 2);
        let (game, roles) = sat_to_game(&formula).unwrap();
        assert_eq!(game.node_count(), 5 + 18);
        assert_eq!(roles.variables.len(), 5);
        assert_eq!(roles.clause_cores.len(), 2);
    }

    #[test]
    fn gadget_shape() {
        let (game, roles) = build_gadget(0, true, false, true);
        assert_eq!(game.node_count(), 9);
        assert_eq!(game.edge_count(), 12);
        let core_a = game.node_by_ext(roles.core_a).unwrap();
        let tokens: Vec<&str> = game
            .colour_set(core_a)
            .iter()
            .map(|&c| game.colour_token(c))
            .collect();
        assert_eq!(tokens, vec!["R", "G", "T"]);
        let core_b = game.node_by_ext(roles.core_b).unwrap();
        let tokens: Vec<&str> = game
            .colour_set(core_b)
            .iter()
            .map(|&c| game.colour_token(c))
            .collect();
        assert_eq!(tokens, vec!["R", "B", "F"]);
    }

    #[test]
    fn standalone_gadget_has_no_nash_equilibrium() {
        let (game, _) = build_gadget(0, false, false, false);
        assert!(oracle::find_first(&game, EquilibriumKind::Nash, DEFAULT_BUDGET)
            .unwrap()
            .is_none());
    }

    #[test]
    fn core_guaranteed_payoff_is_exactly_two() {
        let (game, roles) = build_gadget(0, true, true, true);
        for ext in [roles.core_a, roles.core_b, roles.core_c] {
            let node = game.node_by_ext(ext).unwrap();
            let guaranteed = oracle::enumerate_colourings(&game, DEFAULT_BUDGET)
                .unwrap()
                .map(|s| game.best_response_payoff(&s, node))
                .min()
                .unwrap();
            assert_eq!(guaranteed, 2, "core {ext}");
        }
    }

    #[test]
    fn satisfiable_single_clause_yields_extractable_equilibrium() {
        let formula = CnfFormula::new(1, vec![[1, 1, 1]]).unwrap();
        let (game, roles) = sat_to_game(&formula).unwrap();
        assert_eq!(game.node_count(), 10);
        let ne = oracle::find_first(&game, EquilibriumKind::Nash, DEFAULT_BUDGET)
            .unwrap()
            .expect("satisfiable formula gives an equilibrium");
        let assignment = extract_assignment(&game, &roles, &ne).unwrap();
        assert_eq!(assignment, vec![true]);
        assert!(formula.evaluate(&assignment));
    }

    #[test]
    fn extraction_refuses_non_equilibria() {
        let formula = CnfFormula::new(1, vec![[1, 1, 1]]).unwrap();
        let (game, roles) = sat_to_game(&formula).unwrap();
        // All-least is not an equilibrium of the reduced game.
        let s = Colouring::least(&game);
        assert!(!game.is_nash(&s));
        assert!(extract_assignment(&game, &roles, &s).is_err());
    }

    #[test]
    fn role_map_round_trips_through_comments() {
        let formula = parse_dimacs("p cnf 2 1\n1 -2 2 0\n").unwrap();
        let (game, roles) = sat_to_game(&formula).unwrap();
        let text = crate::format::emit_game_with_comments(&game, &roles.comment_lines());
        let recovered = RoleMap::from_comments(&text).unwrap();
        assert_eq!(recovered, roles);
        assert_eq!(crate::format::parse_game(&text).unwrap(), game);
    }

    #[test]
    fn weight_three_edge_expands_to_three_relays() {
        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        b.add_colour_option(1, "b").unwrap();
        b.add_node(2).unwrap();
        b.add_colour_option(2, "a").unwrap();
        b.add_edge(1, 2, 3).unwrap();
        let game = b.build().unwrap();
        let expanded = expand_weights(&game);
        assert_eq!(expanded.game.node_count(), 5);
        assert_eq!(expanded.game.edge_count(), 6);
        assert!(expanded.game.all_weights_unit());
        for relay in 3..=5 {
            assert_eq!(expanded.projection[&relay], 1);
            let node = expanded.game.node_by_ext(relay).unwrap();
            assert_eq!(expanded.game.colour_set(node).len(), 2);
        }
    }

    #[test]
    fn unit_weight_game_expands_to_itself() {
        let game = two_cycle();
        let expanded = expand_weights(&game);
        assert_eq!(expanded.game, game);
        assert!(expanded.projection.iter().all(|(k, v)| k == v));
    }

    #[test]
    fn polymatrix_entries_of_the_two_cycle() {
        let game = two_cycle();
        let poly = to_polymatrix(&game).unwrap();
        let c = game.colour_by_token("c").unwrap();
        let entries = poly.one_entries();
        assert_eq!(
            entries,
            vec![(NodeId(0), NodeId(1), c, c), (NodeId(1), NodeId(0), c, c)]
        );
    }

    #[test]
    fn edgeless_game_translates_to_all_zero_payoffs() {
        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        b.add_node(2).unwrap();
        b.add_colour_option(2, "a").unwrap();
        let game = b.build().unwrap();
        let poly = to_polymatrix(&game).unwrap();
        assert!(poly.one_entries().is_empty());
        let a = game.colour_by_token("a").unwrap();
        assert_eq!(poly.payoff(&[a, a], 0), 0);
    }

    #[test]
    fn weighted_or_bonused_games_are_refused() {
        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        b.add_node(2).unwrap();
        b.add_colour_option(2, "a").unwrap();
        b.add_edge(1, 2, 2).unwrap();
        let weighted = b.build().unwrap();
        assert!(matches!(to_polymatrix(&weighted), Err(Error::Structure(_))));

        let mut b = GameBuilder::new();
        b.add_node(1).unwrap();
        b.add_colour_option(1, "a").unwrap();
        b.set_bonus(1, "a", 1).unwrap();
        let bonused = b.build().unwrap();
        assert!(matches!(to_polymatrix(&bonused), Err(Error::Structure(_))));
    }

    #[test]
    fn polymatrix_payoffs_match_the_game_everywhere() {
        let game = nine_node();
        let poly = to_polymatrix(&game).unwrap();
        for s in oracle::enumerate_colourings(&game, DEFAULT_BUDGET).unwrap() {
            for node in game.nodes() {
                assert_eq!(
                    poly.payoff(s.values(), node.index()),
                    game.payoff(&s, node)
                );
            }
        }
    }
}
