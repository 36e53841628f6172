//! `fs`: command-line front end for friends-and-strangers analysis.

use std::fs::{self as stdfs, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use fsgraph::constructions::{self, BlockConstruction};
use fsgraph::embed::{self, EmbedInstance};
use fsgraph::exchanger::{self, LadderOutcome, StrategyChoice};
use fsgraph::experiments::{self, Mode, SweepConfig};
use fsgraph::fs::{self, Cap, IsolatedOutcome, Reachability};
use fsgraph::graph::{self, Graph};
use fsgraph::{wilson, Bijection};

#[derive(Parser)]
#[command(
    name = "fs",
    version,
    about = "Friends-and-strangers graphs: components, exchanges, constructions, experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Component summary, isolated-vertex search or an exchange query on FS(X, Y).
    Analyze {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        components: bool,
        #[arg(long)]
        isolated: bool,
        /// Y-vertices U V to exchange (needs --sigma).
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        exchange: Option<Vec<usize>>,
        /// Comma-separated images.
        #[arg(long)]
        sigma: Option<Bijection>,
        /// Largest n analysed exactly (12 by default, 13 at most).
        #[arg(long, default_value_t = 12)]
        cap: usize,
    },
    /// Prints the Wilsonian status token of Y.
    Classify {
        #[arg(long)]
        y: PathBuf,
    },
    /// Builds one of the extremal constructions.
    Construct {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// n, r, m, or the index 1..4 of the built-in sequence.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finds a friendly-swap sequence exchanging U and V from sigma.
    Exchange {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        sigma: Bijection,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 12)]
        cap: usize,
    },
    /// Searches for a transversal realising the pattern pair (G, H).
    Embed {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        sigma: Bijection,
        /// Semicolon-separated comma lists, one per pattern vertex.
        #[arg(long)]
        sets: String,
    },
    /// Coupled component sweep over a p grid.
    Montecarlo {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        size: usize,
        /// a:b:step
        #[arg(long)]
        pgrid: String,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = experiments::DEFAULT_SWEEP_CAP)]
        cap: usize,
        /// Write wall_ms as 0 so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Hitting times of the edge-by-edge process.
    Hitting {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = experiments::DEFAULT_SWEEP_CAP)]
        cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    FiveBlock,
    BipartiteFourBlock,
    LargeGadget,
    SequenceGadget,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Bip62,
    Bfs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Gnp,
    Bip,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = stdfs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_sets(spec: &str) -> Result<Vec<Vec<usize>>> {
    spec.split(';')
        .map(|set| {
            set.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<usize>()
                        .with_context(|| format!("bad vertex {v:?} in --sets"))
                })
                .collect()
        })
        .collect()
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn block_manifest(c: &BlockConstruction) -> String {
    let mut out = format!("kind {:?}\n", c.kind);
    for (side, blocks) in [("x", &c.x_blocks), ("y", &c.y_blocks)] {
        for (name, block) in c.block_names.iter().zip(blocks) {
            let vs: Vec<String> = block.iter().map(usize::to_string).collect();
            out.push_str(&format!("{side}_block {name} {}\n", vs.join(",")));
        }
    }
    out
}

/// Writes `files` under `dir` when given, otherwise prints them in order.
fn emit_files(out: &mut impl Write, dir: Option<&Path>, files: &[(&str, String)]) -> Result<()> {
    match dir {
        Some(dir) => {
            stdfs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (name, body) in files {
                stdfs::write(dir.join(name), body).with_context(|| format!("writing {name}"))?;
                writeln!(out, "wrote {}", dir.join(name).display())?;
            }
        }
        None => {
            for (name, body) in files {
                writeln!(out, "# {name}")?;
                write!(out, "{body}")?;
            }
        }
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    match cli.command {
        Command::Analyze {
            x,
            y,
            components,
            isolated,
            exchange,
            sigma,
            cap,
        } => {
            let (x, y) = (read_graph(&x)?, read_graph(&y)?);
            let cap = Cap::new(cap)?;
            if !(components || isolated || exchange.is_some()) {
                bail!("choose at least one of --components, --isolated, --exchange");
            }
            if components {
                writeln!(out, "{}", fs::components_capped(&x, &y, cap)?)?;
            }
            if isolated {
                let search = fs::find_isolated_vertex(&x, &y, fs::DEFAULT_ISOLATED_BUDGET)?;
                match &search.outcome {
                    IsolatedOutcome::Found(b) => writeln!(out, "isolated {b}")?,
                    _ if search.exhaustive() => writeln!(out, "isolated none (exhaustive)")?,
                    _ => writeln!(out, "isolated not-found (budget exhausted)")?,
                }
            }
            if let Some(uv) = exchange {
                let sigma = sigma.context("--exchange needs --sigma")?;
                match fs::exchangeable_capped(&x, &y, &sigma, uv[0], uv[1], cap)? {
                    Reachability::Found(seq) => writeln!(out, "exchangeable {} moves: {seq}", seq.len())?,
                    Reachability::CertifiedAbsent => writeln!(out, "not exchangeable (certified)")?,
                }
            }
        }
        Command::Classify { y } => {
            writeln!(out, "{}", wilson::classify(&read_graph(&y)?).status.token())?;
        }
        Command::Construct { family, n, out: dir } => {
            let files: Vec<(&str, String)> = match family {
                FamilyArg::FiveBlock => {
                    let c = constructions::build_lower_bound_pair(n)?;
                    constructions::certify_block_disconnected(&c)?;
                    vec![
                        ("x.txt", graph::to_edge_list(&c.x)),
                        ("y.txt", graph::to_edge_list(&c.y)),
                        ("manifest.txt", block_manifest(&c)),
                    ]
                }
                FamilyArg::BipartiteFourBlock => {
                    let (c, sigma0) = constructions::build_bipartite_lower_bound(n)?;
                    let manifest = format!("{}sigma0 {sigma0}\n", block_manifest(&c));
                    vec![
                        ("x.txt", graph::to_edge_list(&c.x)),
                        ("y.txt", graph::to_edge_list(&c.y)),
                        ("manifest.txt", manifest),
                    ]
                }
                FamilyArg::LargeGadget => {
                    let layout = constructions::build_large_gadget(n)?;
                    let report = constructions::verify_gadget_constraints(&layout);
                    let mut manifest = layout.manifest();
                    for c in &report.checks {
                        manifest.push_str(&format!(
                            "constraint {:?} {}\n",
                            c.constraint,
                            if c.passed { "pass" } else { "fail" }
                        ));
                    }
                    vec![
                        ("g.txt", graph::to_edge_list(&layout.g_triple_star())),
                        ("manifest.txt", manifest),
                    ]
                }
                FamilyArg::SequenceGadget => {
                    let seqs = constructions::builtin_bipartite_gadget_sequences();
                    let Some(seq) = n.checked_sub(1).and_then(|i| seqs.get(i)) else {
                        bail!("sequence-gadget takes --n 1..={}", seqs.len());
                    };
                    let (u, v) = constructions::GADGET_EXCHANGE;
                    let d = constructions::derive_gadget_from_sequence(seq, constructions::GADGET_SIZE, u, v)?;
                    let manifest = format!("sequence {seq}\nexchange {u} {v}\n");
                    vec![
                        ("g.txt", graph::to_edge_list(&d.g)),
                        ("h.txt", graph::to_edge_list(&d.h)),
                        ("manifest.txt", manifest),
                    ]
                }
            };
            emit_files(out, dir.as_deref(), &files)?;
        }
        Command::Exchange {
            x,
            y,
            sigma,
            u,
            v,
            strategy,
            cap,
        } => {
            let (x, y) = (read_graph(&x)?, read_graph(&y)?);
            let choice = match strategy {
                StrategyArg::Auto => StrategyChoice::Auto,
                StrategyArg::Bip62 => StrategyChoice::Bip62,
                StrategyArg::Bfs => StrategyChoice::Bfs,
            };
            match exchanger::exchange_with(choice, &x, &y, &sigma, u, v, Cap::new(cap)?)? {
                LadderOutcome::Exchanged(res) => {
                    writeln!(out, "{}", res.sequence)?;
                    writeln!(out, "strategy {}", res.strategy)?;
                }
                LadderOutcome::Absent(reason) => writeln!(out, "none ({reason})")?,
            }
        }
        Command::Embed {
            g,
            h,
            x,
            y,
            sigma,
            sets,
        } => {
            let inst = EmbedInstance {
                g: read_graph(&g)?,
                h: read_graph(&h)?,
                x: read_graph(&x)?,
                y: read_graph(&y)?,
                sigma,
                sets: parse_sets(&sets)?,
            };
            match embed::find_embedding(&inst)? {
                Some(w) => {
                    let vs: Vec<String> = w.chosen.iter().map(usize::to_string).collect();
                    writeln!(out, "{}", vs.join(","))?;
                }
                None => writeln!(out, "none")?,
            }
        }
        Command::Montecarlo {
            mode,
            size,
            pgrid,
            trials,
            seed,
            out: path,
            svg,
            cap,
            no_timing,
        } => {
            let mode = match mode {
                ModeArg::Gnp => Mode::Gnp,
                ModeArg::Bip => Mode::Bipartite,
            };
            let config = SweepConfig {
                mode,
                size,
                p_grid: experiments::parse_pgrid(&pgrid)?,
                trials,
                seed,
                cap,
            };
            let records = experiments::run_sweep(&config)?;
            let mut w = create(&path)?;
            experiments::write_csv(&records, !no_timing, &mut w)?;
            w.flush()?;
            if let Some(svg) = svg {
                stdfs::write(&svg, experiments::render_svg(&records)?)
                    .with_context(|| format!("writing {}", svg.display()))?;
            }
            writeln!(out, "{} cells written to {}", records.len(), path.display())?;
        }
        Command::Hitting {
            n,
            trials,
            seed,
            out: path,
            cap,
        } => {
            let records = experiments::run_hitting(n, trials, seed, Cap::new(cap)?)?;
            let mut w = create(&path)?;
            experiments::write_hitting_csv(&records, &mut w)?;
            w.flush()?;
            writeln!(out, "{} trials written to {}", records.len(), path.display())?;
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    run(cli, &mut out)
}
