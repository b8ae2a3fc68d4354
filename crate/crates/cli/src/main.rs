use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use lexsynt::automata::eval_word;
use lexsynt::error::{FormatError, FormatErrorKind};
use lexsynt::format::{
    format_lasso, format_word, parse_game, parse_mealy, parse_qa, parse_value, parse_vector, parse_word,
    serialize_mealy, serialize_strategy,
};
use lexsynt::lmpp::{solve_lmpp, LmppOptions};
use lexsynt::mealy::verify_value;
use lexsynt::oracle::{bounded_memory_bounds, enumerate_cycles, enumerate_memoryless_game_value};
use lexsynt::synth::{classify_realizability, synthesize, Verdict};
use lexsynt::value::fmt_vector;
use lexsynt::{Error, QuantAutomaton, Rational};

#[derive(Parser)]
#[command(name = "lexsynt", version, about = "Quantitative verification and synthesis with lexicographic mean-payoff (parity) automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value of an ultimately periodic word.
    Eval {
        #[arg(long)]
        spec: PathBuf,
        /// Prefix letters, `|`, cycle letters, e.g. "{r} | {g} {}".
        #[arg(long)]
        word: String,
        /// Print the run of the automaton.
        #[arg(long)]
        witness: bool,
    },
    /// Worst-case value of a Mealy machine.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "impl")]
        implementation: PathBuf,
        /// Print a word attaining the value.
        #[arg(long)]
        witness: bool,
    },
    /// Values of every state of a game.
    Solve {
        #[arg(long)]
        game: PathBuf,
        #[command(flatten)]
        limits: Limits,
        /// Write the Player 1 witness strategy to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the witness strategies of both players.
        #[arg(long)]
        witness: bool,
    },
    /// Build an optimal (or epsilon-optimal) Mealy machine.
    Synthesize {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        epsilon: Option<String>,
        #[command(flatten)]
        limits: Limits,
        /// Write the machine to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether some Mealy machine reaches a cutoff.
    Realizable {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        cutoff: String,
        #[arg(long)]
        epsilon: Option<String>,
        #[command(flatten)]
        limits: Limits,
        /// Write the witness machine, if any, to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force reference values, for debugging.
    #[command(hide = true)]
    Oracle {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, default_value_t = 1)]
        memory: usize,
    },
}

#[derive(Args)]
struct Limits {
    #[arg(long, default_value_t = 8)]
    memory_cap: usize,
    #[arg(long)]
    deadline_seconds: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl Limits {
    fn options(&self) -> LmppOptions {
        LmppOptions {
            memory_cap: self.memory_cap,
            deadline: self.deadline_seconds.map(|s| Instant::now() + Duration::from_secs(s)),
            jobs: self.jobs.max(1),
            ..LmppOptions::default()
        }
    }
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Format(f) => return f.clone().into(),
            Error::ResourceCap(_) | Error::Uncertified => 3,
            Error::EpsilonRequired => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let code = match e.kind {
            FormatErrorKind::Syntax => 1,
            FormatErrorKind::Validation => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })
}

fn in_file<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load_qa(path: &Path) -> Result<QuantAutomaton, Failure> {
    in_file(path, parse_qa(&read(path)?))
}

fn epsilon(text: Option<&str>, dim: usize) -> Result<Option<Vec<Rational>>, Failure> {
    let Some(text) = text else { return Ok(None) };
    let eps = parse_vector(text)?;
    if eps.len() != dim {
        return Err(Error::DimensionMismatch(eps.len(), dim).into());
    }
    Ok(Some(eps))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut out = String::new();
    match cli.command {
        Command::Eval { spec, word, witness } => {
            let a = load_qa(&spec)?;
            let w = parse_word(a.alphabet(), &word)?;
            out += &format!("value = {}\n", eval_word(&a, &w)?);
            if witness {
                out += &format!("run = {}\n", format_lasso(a.graph(), &a.run(&w)?));
            }
        }
        Command::Verify { spec, implementation, witness } => {
            let a = load_qa(&spec)?;
            let m = in_file(&implementation, parse_mealy(&read(&implementation)?))?;
            let v = verify_value(&a, &m)?;
            out += &format!("value = {}\n", v.value);
            if witness {
                out += &format!("word = {}\n", format_word(a.alphabet(), &v.word));
            }
        }
        Command::Solve { game, limits, out: file, witness } => {
            let lg = in_file(&game, parse_game(&read(&game)?))?;
            let g = &lg.game;
            let sol = solve_lmpp(g, &limits.options())?;
            for s in g.states() {
                if sol.certified[s] {
                    out += &format!("{} = {}\n", g.name(s), sol.values[s]);
                } else {
                    out += &format!("{} in [{}, {}]\n", g.name(s), sol.lower[s], sol.upper[s]);
                }
            }
            if witness {
                out += &serialize_strategy(g, &sol.p1_witness);
                out += &serialize_strategy(g, &sol.p2_witness);
            }
            if let Some(f) = file {
                write(&f, &serialize_strategy(g, &sol.p1_witness))?;
            }
            if !sol.all_certified() {
                print!("{out}");
                return Err(Failure { code: 3, message: "limits reached before every value was pinned".into() });
            }
        }
        Command::Synthesize { spec, epsilon: eps, limits, out: file } => {
            let a = load_qa(&spec)?;
            let eps = epsilon(eps.as_deref(), a.dim())?;
            let s = synthesize(&a, eps.as_deref(), &limits.options())?;
            out += &format!("value = {}\n", s.value);
            out += &format!("machine value = {}\n", s.guaranteed);
            match file {
                Some(f) => write(&f, &serialize_mealy(&s.machine))?,
                None => out += &serialize_mealy(&s.machine),
            }
        }
        Command::Realizable { spec, cutoff, epsilon: eps, limits, out: file } => {
            let a = load_qa(&spec)?;
            let cutoff = parse_value(&cutoff)?;
            let eps = epsilon(eps.as_deref(), a.dim())?;
            let verdict = classify_realizability(&a, &cutoff, eps.as_deref(), &limits.options())?;
            out += &format!("{verdict}\nvalue = {}\n", verdict.value());
            let machine = match &verdict {
                Verdict::Realizable { machine, .. } => Some(machine),
                Verdict::LimitOnly { machine, .. } => machine.as_ref(),
                Verdict::Unrealizable { .. } => None,
            };
            if let (Some(f), Some(m)) = (file, machine) {
                write(&f, &serialize_mealy(m))?;
            }
        }
        Command::Oracle { game, memory } => {
            let lg = in_file(&game, parse_game(&read(&game)?))?;
            let g = &lg.game;
            for c in enumerate_cycles(g)? {
                let names: Vec<&str> = c.states.iter().map(|&s| g.name(s)).collect();
                let prio = c.min_priority.map_or("-".to_string(), |p| p.to_string());
                out += &format!("cycle {} mean {} prio {}\n", names.join(" "), fmt_vector(&c.mean), prio);
            }
            if g.has_priorities() {
                let (lo, hi) = bounded_memory_bounds(g, memory)?;
                for s in g.states() {
                    out += &format!("{} in [{}, {}]\n", g.name(s), lo[s], hi[s]);
                }
            } else {
                for (s, v) in enumerate_memoryless_game_value(g)?.iter().enumerate() {
                    out += &format!("{} = {}\n", g.name(s), v);
                }
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
