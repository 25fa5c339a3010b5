use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use coord_games::dynamics::{self, Mode, PathStatus, Scheduler, SelectionPolicy};
use coord_games::error::Error;
use coord_games::format;
use coord_games::game::{Colouring, Game, DEFAULT_BUDGET};
use coord_games::oracle;
use coord_games::reductions;
use coord_games::solvers::{self, Method};

/// Coordination games on directed graphs: each node picks a colour from its
/// own list and earns the weight of in-edges from matching neighbours plus a
/// colour bonus. Compute payoffs, check and enumerate equilibria, run
/// improvement dynamics, solve the guaranteed classes, and build the 3-CNF
/// and polymatrix constructions.
#[derive(Parser)]
#[command(name = "coord-games", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArg {
    /// Cap on states examined by exhaustive searches.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Per-node payoffs and the social welfare of a colouring.
    Payoff { game: PathBuf, colouring: PathBuf },
    /// Check whether a colouring is a Nash, k- or strong equilibrium.
    /// Exits 0 when it is, 1 when it is not.
    Check {
        game: PathBuf,
        colouring: PathBuf,
        /// One of: nash, strong, k=<int>.
        #[arg(long, value_parser = parse_level)]
        level: Level,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// List colourings with payoff vectors and social welfare.
    /// Exits 1 when nothing matches the requested kind.
    Enumerate {
        game: PathBuf,
        /// One of: all, nash, strong, k=<int>.
        #[arg(long, value_parser = parse_kind, default_value = "all")]
        kind: Kind,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Compute a strong equilibrium with a structural solver or the
    /// brute-force oracle. Exits 1 when brute force proves none exists.
    Solve {
        game: PathBuf,
        /// One of: auto, dag, cycle, scc, two-colour, brute. Auto picks the
        /// first applicable in that order.
        #[arg(long, value_parser = parse_method, default_value = "auto")]
        method: Method,
        /// Start colouring file; defaults to every node's lowest colour.
        #[arg(long)]
        start: Option<PathBuf>,
        /// Print the improvement path (for methods that construct one).
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Run improvement dynamics until an equilibrium, a repeated colouring,
    /// or the step limit. Exits 0 on convergence, 1 otherwise.
    Dynamics {
        game: PathBuf,
        /// One of: unilateral, coalition.
        #[arg(long, value_parser = parse_mode, default_value = "unilateral")]
        mode: ModeArg,
        /// Largest coalition size in coalition mode; defaults to all nodes.
        #[arg(long)]
        max_coalition: Option<usize>,
        /// One of: tiebreak, random.
        #[arg(long, value_parser = parse_policy, default_value = "tiebreak")]
        policy: PolicyArg,
        /// Seed for the random policy.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        /// Start colouring file; defaults to every node's lowest colour.
        #[arg(long)]
        start: Option<PathBuf>,
        /// Print one line per step.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Build the coordination game for a DIMACS 3-CNF formula. The emitted
    /// game file carries `# role` comments mapping nodes back to variables
    /// and clause cores.
    Reduce {
        cnf: PathBuf,
        /// Simulate the weighted edges with extra unit-weight relay players.
        #[arg(long)]
        expand_weights: bool,
        /// Write the game file here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Translate a unit-weight, zero-bonus game into a 0/1 polymatrix game.
    ToPolymatrix { game: PathBuf },
}

#[derive(Clone, Copy, Debug)]
enum Level {
    Nash,
    Strong,
    K(usize),
}

fn parse_level(text: &str) -> Result<Level, String> {
    match text {
        "nash" => Ok(Level::Nash),
        "strong" => Ok(Level::Strong),
        other => match other.strip_prefix("k=") {
            Some(k) => k
                .parse::<usize>()
                .ok()
                .filter(|&k| k >= 1)
                .map(Level::K)
                .ok_or_else(|| format!("invalid coalition size in {other:?}")),
            None => Err(format!("expected nash, strong or k=<int>, got {other:?}")),
        },
    }
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    All,
    Equilibrium(Level),
}

fn parse_kind(text: &str) -> Result<Kind, String> {
    if text == "all" {
        return Ok(Kind::All);
    }
    parse_level(text).map(Kind::Equilibrium)
}

fn parse_method(text: &str) -> Result<Method, String> {
    match text {
        "auto" => Ok(Method::Auto),
        "dag" => Ok(Method::Dag),
        "cycle" => Ok(Method::Cycle),
        "scc" => Ok(Method::Scc),
        "two-colour" => Ok(Method::TwoColour),
        "brute" => Ok(Method::Brute),
        other => Err(format!("unknown method {other:?}")),
    }
}

#[derive(Clone, Copy, Debug)]
enum ModeArg {
    Unilateral,
    Coalition,
}

fn parse_mode(text: &str) -> Result<ModeArg, String> {
    match text {
        "unilateral" => Ok(ModeArg::Unilateral),
        "coalition" => Ok(ModeArg::Coalition),
        other => Err(format!("unknown mode {other:?}")),
    }
}

#[derive(Clone, Copy, Debug)]
enum PolicyArg {
    Tiebreak,
    Random,
}

fn parse_policy(text: &str) -> Result<PolicyArg, String> {
    match text {
        "tiebreak" => Ok(PolicyArg::Tiebreak),
        "random" => Ok(PolicyArg::Random),
        other => Err(format!("unknown policy {other:?}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn load_game(path: &PathBuf) -> Result<Game, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    format::parse_game(&text)
}

fn load_colouring(path: &PathBuf, game: &Game) -> Result<Colouring, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    format::parse_colouring(&text, game)
}

fn load_start(path: &Option<PathBuf>, game: &Game) -> Result<Colouring, Error> {
    match path {
        Some(path) => load_colouring(path, game),
        None => Ok(Colouring::least(game)),
    }
}

fn level_holds(game: &Game, s: &Colouring, level: Level, budget: u64) -> Result<bool, Error> {
    match level {
        Level::Nash => Ok(game.is_nash(s)),
        Level::Strong => Ok(game.is_nash(s) && game.is_strong(s, budget)?),
        Level::K(k) => Ok(game.is_nash(s) && game.is_k_equilibrium(s, k, budget)?),
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Payoff { game, colouring } => {
            let game = load_game(&game)?;
            let s = load_colouring(&colouring, &game)?;
            for node in game.nodes() {
                println!(
                    "node {} colour {} payoff {}",
                    game.ext_id(node),
                    game.colour_token(s.get(node)),
                    game.payoff(&s, node)
                );
            }
            println!("sw {}", game.social_welfare(&s));
            Ok(0)
        }
        Command::Check { game, colouring, level, budget } => {
            let game = load_game(&game)?;
            let s = load_colouring(&colouring, &game)?;
            let holds = level_holds(&game, &s, level, budget.budget)?;
            let name = match level {
                Level::Nash => "nash".to_owned(),
                Level::Strong => "strong".to_owned(),
                Level::K(k) => format!("k={k}"),
            };
            println!("{name}: {}", if holds { "yes" } else { "no" });
            Ok(if holds { 0 } else { 1 })
        }
        Command::Enumerate { game, kind, budget } => {
            let game = load_game(&game)?;
            let mut printed = 0usize;
            for s in oracle::enumerate_colourings(&game, budget.budget)? {
                let keep = match kind {
                    Kind::All => true,
                    Kind::Equilibrium(level) => level_holds(&game, &s, level, budget.budget)?,
                };
                if !keep {
                    continue;
                }
                printed += 1;
                let assignment: Vec<String> = game
                    .nodes()
                    .map(|n| format!("{}:{}", game.ext_id(n), game.colour_token(s.get(n))))
                    .collect();
                let payoffs: Vec<String> = game
                    .nodes()
                    .map(|n| game.payoff(&s, n).to_string())
                    .collect();
                println!(
                    "{} | payoffs {} | sw {}",
                    assignment.join(" "),
                    payoffs.join(" "),
                    game.social_welfare(&s)
                );
            }
            Ok(if printed > 0 { 0 } else { 1 })
        }
        Command::Solve { game, method, start, trace, budget } => {
            let game = load_game(&game)?;
            let start = load_start(&start, &game)?;
            match solvers::solve(&game, method, &start, budget.budget)? {
                None => {
                    println!("# method brute");
                    println!("# no strong equilibrium exists");
                    Ok(1)
                }
                Some(solution) => {
                    println!("# method {}", solution.method);
                    println!("# sw {}", game.social_welfare(&solution.colouring));
                    if trace {
                        match &solution.path {
                            Some(path) => {
                                for line in path.render_trace(&game).lines() {
                                    println!("# {line}");
                                }
                            }
                            None => println!("# no trace for this method"),
                        }
                    }
                    print!("{}", format::emit_colouring(&game, &solution.colouring));
                    Ok(0)
                }
            }
        }
        Command::Dynamics {
            game,
            mode,
            max_coalition,
            policy,
            seed,
            max_steps,
            start,
            trace,
            budget,
        } => {
            let game = load_game(&game)?;
            let start = load_start(&start, &game)?;
            let scheduler = Scheduler {
                mode: match mode {
                    ModeArg::Unilateral => Mode::Unilateral,
                    ModeArg::Coalition => Mode::Coalition {
                        max_size: max_coalition.unwrap_or(game.node_count()),
                    },
                },
                policy: match policy {
                    PolicyArg::Tiebreak => SelectionPolicy::FirstByTiebreak,
                    PolicyArg::Random => SelectionPolicy::Random { seed },
                },
            };
            let path = dynamics::run_path(&game, &start, &scheduler, max_steps, budget.budget)?;
            let status = match path.status {
                PathStatus::Converged => "converged-equilibrium",
                PathStatus::Revisited => "revisited-state",
                PathStatus::BudgetExhausted => "step-budget-exhausted",
            };
            println!("# status {status}");
            println!("# steps {}", path.len());
            if trace {
                for line in path.render_trace(&game).lines() {
                    println!("# {line}");
                }
            }
            print!("{}", format::emit_colouring(&game, &path.final_colouring()));
            Ok(if path.status == PathStatus::Converged { 0 } else { 1 })
        }
        Command::Reduce { cnf, expand_weights, output } => {
            let text = fs::read_to_string(&cnf)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", cnf.display())))?;
            let formula = reductions::parse_dimacs(&text)?;
            let (game, roles) = reductions::sat_to_game(&formula)?;
            let game = if expand_weights {
                reductions::expand_weights(&game).game
            } else {
                game
            };
            let emitted = format::emit_game_with_comments(&game, &roles.comment_lines());
            match output {
                Some(path) => fs::write(&path, emitted)
                    .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{emitted}"),
            }
            Ok(0)
        }
        Command::ToPolymatrix { game } => {
            let game = load_game(&game)?;
            let poly = reductions::to_polymatrix(&game)?;
            println!("players {}", poly.player_count());
            for player in 0..poly.player_count() {
                let strategies: Vec<&str> = poly
                    .strategy_set(player)
                    .iter()
                    .map(|&c| poly.colour_token(c))
                    .collect();
                println!("strategies {} {}", poly.ext_id(player), strategies.join(" "));
            }
            for (i, j, si, sj) in poly.one_entries() {
                println!(
                    "entry {} {} {} {}",
                    poly.ext_id(i.index()),
                    poly.ext_id(j.index()),
                    poly.colour_token(si),
                    poly.colour_token(sj)
                );
            }
            Ok(0)
        }
    }
}
