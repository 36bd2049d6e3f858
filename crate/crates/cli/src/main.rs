use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use overfull::coloring::{ColoringDoc, PartialColoring};
use overfull::graph::{build_o_delta, classify, from_graph6, read_graph6_lines, to_graph6, ODeltaSpec, SimpleGraph};
use overfull::harness::{
    census::census_over, enumerate_hz_candidates, hz_candidates_from_graph6, replay_witness, run_suite,
    CampaignConfig, Suite, VerificationReport,
};
use overfull::oracle::{chromatic_index_exact, delta_edge_color, vizing_plus_one, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "overfull", version, about = "Edge-coloring checks for graphs whose core has maximum degree at most two")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class 1 or class 2, with the deciding reason, for each graph in a graph6 file
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Edge-color each graph in a graph6 file and print the coloring as JSON
    Color {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Emit Graphviz instead of JSON
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// graph6 of the O_Δ member with a single-cycle H1 and the canonical H2
    GenOdelta {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n1: usize,
        /// Print the spec (H1 and H2 edge lists) alongside the graph6
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connected graphs with Δ(G_Δ) ≤ 2 up to isomorphism, one graph6 per line
    Enumerate {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        /// Permit n = 10
        #[arg(long)]
        allow_slow: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classification census over enumerated graphs, or over a graph6 file
    Census {
        /// Pre-generated graph6 file used instead of enumeration. The base-case
        /// checks assume it holds every HZ candidate up to --max-n.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        campaign: CampaignArgs,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        campaign: CampaignArgs,
        /// Write every witness coloring as Graphviz to this file
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Re-evaluate every witness of a JSON report; exits 0 when all of them fail again
    Replay {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 9)]
    max_n: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    allow_slow: bool,
    /// Print the full JSON report instead of the summary
    #[arg(long)]
    json: bool,
    /// Write the JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CampaignArgs {
    fn config(&self, suite: Suite) -> CampaignConfig {
        CampaignConfig {
            seed: self.seed,
            trials: self.trials,
            max_n: self.max_n,
            budget: self.budget,
            suite,
            allow_slow: self.allow_slow,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Vizing,
    Delta,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse()
}

/// Outcome of a subcommand that ran to completion.
enum Status {
    Ok,
    ChecksFailed,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_graphs(path: &Path) -> Result<Vec<SimpleGraph>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graphs = read_graph6_lines(&text).with_context(|| format!("parsing {}", path.display()))?;
    if graphs.is_empty() {
        bail!("{} contains no graph6 lines", path.display());
    }
    Ok(graphs)
}

/// Wall time goes to stderr so that reports stay byte-identical across runs.
fn report_out(report: &VerificationReport, args: &CampaignArgs, started: Instant) -> Result<Status> {
    eprintln!("wall time {:.2}s", started.elapsed().as_secs_f64());
    let json = report.to_json() + "\n";
    if let Some(p) = &args.out {
        emit(Some(p), &json)?;
    }
    if args.json {
        print!("{json}");
    } else {
        print!("{}", report.summary());
    }
    Ok(if report.passed() { Status::Ok } else { Status::ChecksFailed })
}

fn witness_dot(report: &VerificationReport) -> Result<String> {
    let mut out = String::new();
    for (check, tally) in &report.checks {
        for w in &tally.witnesses {
            let Some(doc) = &w.coloring else { continue };
            let g = std::sync::Arc::new(from_graph6(&w.graph6)?);
            out.push_str(&format!("// {check}: {}\n", w.detail));
            out.push_str(&doc.to_coloring(g)?.to_dot());
        }
    }
    Ok(out)
}

fn color(g: &SimpleGraph, mode: Mode, budget: u64) -> Result<PartialColoring> {
    Ok(match mode {
        Mode::Exact => chromatic_index_exact(g, budget)?.witness,
        Mode::Vizing => vizing_plus_one(g)?,
        Mode::Delta => delta_edge_color(g, budget)?.coloring,
    })
}

fn run(cli: Cli) -> Result<Status> {
    match cli.cmd {
        Cmd::Classify { input, json } => {
            for g in read_graphs(&input)? {
                let label = classify(&g)?;
                if json {
                    println!("{}", serde_json::to_string(&label)?);
                } else {
                    println!("{}\tclass {}\t{:?}", to_graph6(&g), label.is_class2() as u8 + 1, label.reason);
                }
            }
            Ok(Status::Ok)
        }
        Cmd::Color { input, mode, budget, dot, out } => {
            let mut text = String::new();
            for g in read_graphs(&input)? {
                let c = color(&g, mode, budget)?;
                if dot {
                    text.push_str(&c.to_dot());
                } else {
                    text.push_str(&serde_json::to_string(&ColoringDoc::from_coloring(&c)?)?);
                    text.push('\n');
                }
            }
            emit(out.as_deref(), &text)?;
            Ok(Status::Ok)
        }
        Cmd::GenOdelta { delta, n1, json, out } => {
            let spec = ODeltaSpec::canonical(delta, n1)?;
            let g6 = to_graph6(&build_o_delta(&spec)?);
            let text = if json {
                serde_json::to_string(&serde_json::json!({ "graph6": g6, "spec": spec }))? + "\n"
            } else {
                g6 + "\n"
            };
            emit(out.as_deref(), &text)?;
            Ok(Status::Ok)
        }
        Cmd::Enumerate { max_n, allow_slow, out } => {
            let mut text = String::new();
            for g in enumerate_hz_candidates(max_n, allow_slow)? {
                text.push_str(&to_graph6(&g));
                text.push('\n');
            }
            emit(out.as_deref(), &text)?;
            Ok(Status::Ok)
        }
        Cmd::Census { input, campaign } => {
            let started = Instant::now();
            let cfg = campaign.config(Suite::Census);
            let report = match input {
                Some(p) => {
                    let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    census_over(&cfg, &hz_candidates_from_graph6(&text)?)
                }
                None => run_suite(&cfg)?,
            };
            report_out(&report, &campaign, started)
        }
        Cmd::Verify { suite, campaign, dot } => {
            let started = Instant::now();
            let report = run_suite(&campaign.config(suite))?;
            if let Some(p) = dot {
                emit(Some(&p), &witness_dot(&report)?)?;
            }
            report_out(&report, &campaign, started)
        }
        Cmd::Replay { input } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let report: VerificationReport = serde_json::from_str(&text).context("parsing the report")?;
            let mut all = true;
            let mut count = 0;
            for (check, tally) in &report.checks {
                for w in &tally.witnesses {
                    let outcome = replay_witness(check, w, &report.config)?;
                    let again = outcome.is_fail();
                    all &= again;
                    count += 1;
                    println!("{check}\t{}\t{}", if again { "FAIL reproduced" } else { "not reproduced" }, w.detail);
                }
            }
            println!("{count} witnesses replayed");
            Ok(if all { Status::Ok } else { Status::ChecksFailed })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
