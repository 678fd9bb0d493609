//! `planecyc`: plane cycles in colored point sets from the command line.
//!
//! Exit status: 0 yes / done, 1 decided no, 2 bad input or usage.

mod report;
mod svg;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use plane_cycles::fpt::decide_hamiltonian;
use plane_cycles::generate::{generate, GenKind, GenSpec};
use plane_cycles::model::{parse_cycles, parse_instance, write_cycles};
use plane_cycles::monotonicity::shorten_cycle;
use plane_cycles::nested::{cycle_of_length, suggest_enclosing};
use plane_cycles::oracle::enumerate_plane_cycles;
use plane_cycles::rainbow::{find_configuration, witness_cycle};
use plane_cycles::{validate_cycle, ColoredPointSet, PlaneCycle};

use report::{indices, Report};

#[derive(Parser)]
#[command(name = "planecyc", version, about = "Plane cycles in colored point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Look for a non-rainbow plane cycle and print the configuration behind it.
    Detect {
        /// Instance file (`x y color` per line), `-` for stdin.
        file: PathBuf,
        /// Write the witness cycle here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Shorten a non-rainbow plane cycle of length at least 6.
    Shorten {
        file: PathBuf,
        #[arg(long)]
        cycle: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Plane cycle on 2t points of a nested bicolored drawing.
    Nested {
        file: PathBuf,
        /// Comma-separated enclosing point ids, or `auto` for the hull of color 1.
        #[arg(long, default_value = "auto")]
        blues: String,
        #[arg(long)]
        t: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a balanced bicolored instance has a plane Hamiltonian cycle.
    Hamilton {
        file: PathBuf,
        /// Also build the cycle.
        #[arg(long)]
        construct: bool,
        #[arg(long, env = "PLANECYC_WORKERS")]
        workers: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// List every plane cycle up to a length (at most 12 points).
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance.
    Gen {
        #[arg(long)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 2)]
        interior: usize,
        #[arg(long, default_value_t = 1000)]
        range: i64,
        /// Instance output; stdout when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check every cycle of a cycle file against an instance.
    Validate {
        file: PathBuf,
        #[arg(long)]
        cycle: PathBuf,
    },
    /// Draw an instance, optionally with the first cycle of a cycle file, as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        cycle: Option<PathBuf>,
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<ColoredPointSet> {
    parse_instance(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_cycles(path: &Path) -> Result<Vec<Vec<usize>>> {
    parse_cycles(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Option<PathBuf>, cycles: &[&PlaneCycle], r: &mut Report) -> Result<()> {
    if let Some(p) = out {
        fs::write(p, write_cycles(cycles.iter().copied())).with_context(|| format!("writing {}", p.display()))?;
        r.field("written", p.display());
    }
    Ok(())
}

fn describe(r: &mut Report, ps: &ColoredPointSet, c: &PlaneCycle) {
    r.field("length", c.len());
    r.field("rainbow", c.is_rainbow(ps));
    r.field("cycle", indices(c.vertices()));
}

/// Runs one command; `Ok(true)` for yes, `Ok(false)` for a decided no.
fn run(cmd: Command, r: &mut Report) -> Result<bool> {
    match cmd {
        Command::Detect { file, out } => {
            let ps = load(&file)?;
            r.instance(&ps);
            let Some(w) = find_configuration(&ps) else {
                r.field("nonrainbow_cycle", false);
                return Ok(false);
            };
            let c = witness_cycle(&ps, &w)?;
            r.field("nonrainbow_cycle", true);
            r.field("configuration", w.kind);
            r.field("witness", indices(&w.vertices()));
            describe(r, &ps, &c);
            emit(&out, &[&c], r)?;
            Ok(true)
        }
        Command::Shorten { file, cycle, out } => {
            let ps = load(&file)?;
            r.instance(&ps);
            let raw = load_cycles(&cycle)?;
            let Some(first) = raw.first() else { bail!("{} holds no cycle", cycle.display()) };
            let c = validate_cycle(&ps, first).context("input cycle")?;
            let s = shorten_cycle(&ps, &c)?;
            r.field("input_length", c.len());
            r.field("step", format!("{:?}", s.step));
            describe(r, &ps, &s.cycle);
            emit(&out, &[&s.cycle], r)?;
            Ok(true)
        }
        Command::Nested { file, blues, t, out } => {
            let ps = load(&file)?;
            r.instance(&ps);
            let ring: Vec<usize> = if blues == "auto" {
                suggest_enclosing(&ps)?.ring
            } else {
                blues
                    .split(',')
                    .map(|s| s.trim().parse::<usize>().with_context(|| format!("bad point id `{s}`")))
                    .collect::<Result<_>>()?
            };
            r.field("enclosing", indices(&ring));
            let res = cycle_of_length(&ps, &ring, t)?;
            r.field("finish", format!("{:?}", res.finish));
            r.field("steps", res.steps.len());
            describe(r, &ps, &res.cycle);
            emit(&out, &[&res.cycle], r)?;
            Ok(true)
        }
        Command::Hamilton { file, construct, workers, out } => {
            let ps = load(&file)?;
            r.instance(&ps);
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(w) = workers {
                pool = pool.num_threads(w);
            }
            let pool = pool.build()?;
            let rep = pool.install(|| decide_hamiltonian(&ps, construct || out.is_some()))?;
            r.field("workers", pool.current_num_threads());
            r.field("hamiltonian", rep.hamiltonian);
            r.field("method", rep.method);
            r.field("interior", rep.interior);
            r.field("boundary", rep.boundary);
            r.field("first_kind", rep.first_kind);
            r.field("arcs", rep.arcs);
            r.field("initial_cycles", rep.initial_cycles);
            if let Some(c) = &rep.cycle {
                describe(r, &ps, c);
                emit(&out, &[c], r)?;
            }
            Ok(rep.hamiltonian)
        }
        Command::Enumerate { file, max_len, out } => {
            let ps = load(&file)?;
            r.instance(&ps);
            let inv = enumerate_plane_cycles(&ps, max_len)?;
            r.field("total", inv.total());
            r.field("rainbow", inv.rainbow);
            r.field("non_rainbow", inv.non_rainbow);
            for (len, cs) in &inv.by_length {
                r.field(&format!("length_{len}"), cs.len());
            }
            let all: Vec<&PlaneCycle> = inv.iter().collect();
            emit(&out, &all, r)?;
            Ok(true)
        }
        Command::Gen { kind, n, seed, colors, interior, range, out } => {
            let ps = generate(&GenSpec::new(kind, n, seed).colors(colors).interior(interior).range(range))?;
            r.field("kind", kind);
            r.field("seed", seed);
            r.instance(&ps);
            match out {
                Some(p) => {
                    fs::write(&p, ps.to_text()).with_context(|| format!("writing {}", p.display()))?;
                    r.field("written", p.display());
                }
                None => {
                    let mut so = io::stdout().lock();
                    so.write_all(ps.to_text().as_bytes())?;
                }
            }
            Ok(true)
        }
        Command::Validate { file, cycle } => {
            let ps = load(&file)?;
            r.instance(&ps);
            let raw = load_cycles(&cycle)?;
            if raw.is_empty() {
                bail!("{} holds no cycle", cycle.display());
            }
            let mut ok = true;
            for (i, c) in raw.iter().enumerate() {
                match validate_cycle(&ps, c) {
                    Ok(c) => r.field(&format!("cycle_{i}"), format!("valid, length {}, rainbow {}", c.len(), c.is_rainbow(&ps))),
                    Err(e) => {
                        ok = false;
                        r.field(&format!("cycle_{i}"), format!("invalid: {e}"));
                    }
                }
            }
            r.field("valid", ok);
            Ok(ok)
        }
        Command::Render { file, cycle, out } => {
            let ps = load(&file)?;
            r.instance(&ps);
            let c = match cycle {
                Some(p) => {
                    let raw = load_cycles(&p)?;
                    let Some(first) = raw.first() else { bail!("{} holds no cycle", p.display()) };
                    Some(validate_cycle(&ps, first)?)
                }
                None => None,
            };
            fs::write(&out, svg::render(&ps, c.as_ref().map(|c| c.vertices()))).with_context(|| format!("writing {}", out.display()))?;
            r.field("written", out.display());
            Ok(true)
        }
    }
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Detect { .. } => "detect",
        Command::Shorten { .. } => "shorten",
        Command::Nested { .. } => "nested",
        Command::Hamilton { .. } => "hamilton",
        Command::Enumerate { .. } => "enumerate",
        Command::Gen { .. } => "gen",
        Command::Validate { .. } => "validate",
        Command::Render { .. } => "render",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let to_stdout = matches!(cli.command, Command::Gen { out: None, .. });
    let mut r = Report::new(name(&cli.command));
    match run(cli.command, &mut r) {
        Ok(yes) => {
            // Generated instances on stdout carry the report as comments.
            print!("{}", r.render(if to_stdout { "# " } else { "" }));
            ExitCode::from(if yes { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
