//! Line-oriented text formats for games and colourings.
//!
//! A game file holds directives, one per line, with `#` comments:
//!
//! ```text
//! colours a b c          # optional; fixes colour-id order
//! node 1
//! set 1 a b              # the node's colour set
//! bonus 1 a 2            # bonus for picking a colour, default 0
//! edge 1 2 3             # weight defaults to 1 when omitted
//! ```
//!
//! Duplicate `edge` lines merge by weight summation; self loops are
//! rejected; every referenced node must be declared with `node`. Emission is
//! canonical (sorted directives), so equal games emit byte-equal files.
//!
//! A colouring file has one `<node-id> <colour>` line per node.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::game::{Colouring, ColourId, Game, GameBuilder};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn reline(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Input(msg) => Error::Parse { line, message: msg },
        other => other,
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn parse_uint(token: &str, line: usize, what: &str) -> Result<u64> {
    token
        .parse::<u64>()
        .map_err(|_| parse_err(line, format!("invalid {what} {token:?}")))
}

/// Parse a game file. Errors carry the offending line number.
pub fn parse_game(text: &str) -> Result<Game> {
    let mut builder = GameBuilder::new();
    let mut saw_palette = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let directive = tokens.next().expect("non-empty line");
        let rest: Vec<&str> = tokens.collect();
        match directive {
            "colours" => {
                if saw_palette {
                    return Err(parse_err(line_no, "duplicate colours line"));
                }
                if rest.is_empty() {
                    return Err(parse_err(line_no, "colours line needs at least one token"));
                }
                builder.declare_palette(&rest).map_err(reline(line_no))?;
                saw_palette = true;
            }
            "node" => {
                let [ext] = rest[..] else {
                    return Err(parse_err(line_no, "expected: node <id>"));
                };
                let ext = parse_uint(ext, line_no, "node id")?;
                builder.add_node(ext).map_err(reline(line_no))?;
            }
            "set" => {
                if rest.len() < 2 {
                    return Err(parse_err(line_no, "expected: set <id> <colour>..."));
                }
                let ext = parse_uint(rest[0], line_no, "node id")?;
                if !builder.has_node(ext) {
                    return Err(parse_err(line_no, format!("undeclared node {ext}")));
                }
                for token in &rest[1..] {
                    builder.add_colour_option(ext, token).map_err(reline(line_no))?;
                }
            }
            "bonus" => {
                let [ext, colour, amount] = rest[..] else {
                    return Err(parse_err(line_no, "expected: bonus <id> <colour> <nat>"));
                };
                let ext = parse_uint(ext, line_no, "node id")?;
                if !builder.has_node(ext) {
                    return Err(parse_err(line_no, format!("undeclared node {ext}")));
                }
                let amount = parse_uint(amount, line_no, "bonus")?;
                builder.set_bonus(ext, colour, amount).map_err(reline(line_no))?;
            }
            "edge" => {
                let (src, dst, weight) = match rest[..] {
                    [src, dst] => (src, dst, 1),
                    [src, dst, w] => (src, dst, parse_uint(w, line_no, "weight")?),
                    _ => return Err(parse_err(line_no, "expected: edge <src> <dst> [<weight>]")),
                };
                let src = parse_uint(src, line_no, "node id")?;
                let dst = parse_uint(dst, line_no, "node id")?;
                if !builder.has_node(src) {
                    return Err(parse_err(line_no, format!("undeclared node {src}")));
                }
                if !builder.has_node(dst) {
                    return Err(parse_err(line_no, format!("undeclared node {dst}")));
                }
                builder.add_edge(src, dst, weight).map_err(reline(line_no))?;
            }
            other => {
                return Err(parse_err(line_no, format!("unknown directive {other:?}")));
            }
        }
    }
    builder.build()
}

/// Canonical emission: colours line, then per node (ascending id) its
/// `node`/`set`/non-zero `bonus` lines, then edges sorted by (src, dst) with
/// explicit weights.
pub fn emit_game(game: &Game) -> String {
    emit_game_with_comments(game, &[])
}

/// Same as [`emit_game`] with leading comment lines (each emitted as
/// `# <line>`).
pub fn emit_game_with_comments(game: &Game, comments: &[String]) -> String {
    let mut out = String::new();
    for comment in comments {
        let _ = writeln!(out, "# {comment}");
    }
    let _ = writeln!(out, "colours {}", game.colour_tokens().join(" "));
    for node in game.nodes() {
        let ext = game.ext_id(node);
        let _ = writeln!(out, "node {ext}");
        let set: Vec<&str> = game
            .colour_set(node)
            .iter()
            .map(|&c| game.colour_token(c))
            .collect();
        let _ = writeln!(out, "set {ext} {}", set.join(" "));
        for &colour in game.colour_set(node) {
            let bonus = game.bonus(node, colour);
            if bonus > 0 {
                let _ = writeln!(out, "bonus {ext} {} {bonus}", game.colour_token(colour));
            }
        }
    }
    for (src, dst, weight) in game.edges() {
        let _ = writeln!(out, "edge {} {} {weight}", game.ext_id(src), game.ext_id(dst));
    }
    out
}

/// Parse a colouring file against a game: exactly one `<id> <colour>` line
/// per node, `#` comments allowed.
pub fn parse_colouring(text: &str, game: &Game) -> Result<Colouring> {
    let mut values: Vec<Option<ColourId>> = vec![None; game.node_count()];
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (Some(ext), Some(token), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(parse_err(line_no, "expected: <node-id> <colour>"));
        };
        let ext = parse_uint(ext, line_no, "node id")?;
        let node = game
            .node_by_ext(ext)
            .ok_or_else(|| parse_err(line_no, format!("unknown node {ext}")))?;
        let colour = game
            .colour_by_token(token)
            .ok_or_else(|| parse_err(line_no, format!("unknown colour {token:?}")))?;
        if values[node.index()].is_some() {
            return Err(parse_err(line_no, format!("node {ext} coloured twice")));
        }
        values[node.index()] = Some(colour);
    }
    let mut resolved = Vec::with_capacity(game.node_count());
    for node in game.nodes() {
        match values[node.index()] {
            Some(colour) => resolved.push(colour),
            None => {
                return Err(Error::Input(format!(
                    "node {} has no colour assigned",
                    game.ext_id(node)
                )))
            }
        }
    }
    Colouring::new(game, resolved)
}

pub fn emit_colouring(game: &Game, s: &Colouring) -> String {
    let mut out = String::new();
    for node in game.nodes() {
        let _ = writeln!(out, "{} {}", game.ext_id(node), game.colour_token(s.get(node)));
    }
    out
}
