use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bctree::driver::{build, plan, Strategy};
use bctree::geom::PointSet;
use bctree::io::{
    gen_convex, gen_double_chain, gen_double_chain_plus_red, gen_random, read_instance, read_tree,
    render_svg, write_instance, write_tree, TreeFile, TreeMetadata,
};
use bctree::oracle::{find_plane_tree_with_bound_capped, min_plane_degree_capped, oracle_cap};
use bctree::validate::{check_tree, theorem_bound};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "bctree",
    version,
    about = "Plane bichromatic spanning trees of bounded degree"
)]
struct Cli {
    /// Log the build plan and recursion statistics.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    Convex,
    DoubleChain,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance.
    Gen {
        #[arg(long, value_enum, default_value = "random")]
        kind: Kind,
        #[arg(long, default_value_t = 4)]
        red: usize,
        #[arg(long, default_value_t = 2)]
        blue: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Chain parameter of the double chain.
        #[arg(long, default_value_t = 4)]
        m: usize,
        /// Double chain with one extra red point.
        #[arg(long)]
        plus_red: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a tree for one instance, or for every instance in a directory.
    Build {
        #[arg(
            short,
            long,
            required_unless_present = "batch",
            conflicts_with = "batch"
        )]
        input: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        strategy: Strategy,
        /// Tree file, or output directory with --batch.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Build `<name>.tree.json` for each `<name>.json` in this directory.
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Check a tree against an instance.
    Validate {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        tree: PathBuf,
        /// `auto` for max(3, delta + 1), or a number.
        #[arg(long, default_value = "auto")]
        bound: String,
    },
    /// Exhaustive minimum degree, or a yes/no answer for one degree.
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        decision: Option<usize>,
    },
    /// Draw an instance and optionally a tree as SVG.
    Render {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        tree: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Show the branch a build would take.
    Plan {
        #[arg(short, long)]
        input: PathBuf,
    },
}

enum Failure {
    /// Exit 1.
    Violation(String),
    /// Exit 2.
    Error(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "debug" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<PointSet, Failure> {
    read_instance(&read(path)?).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Error(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Gen {
            kind,
            red,
            blue,
            seed,
            m,
            plus_red,
            output,
        } => {
            let ps = match kind {
                Kind::Random | Kind::Convex if blue == 0 || red < blue => {
                    return Err(Failure::Error(format!(
                        "need --red >= --blue >= 1, got {red} and {blue}"
                    )))
                }
                Kind::DoubleChain if m < 3 => return Err(Failure::Error("need --m >= 3".into())),
                Kind::Random => gen_random(red, blue, seed),
                Kind::Convex => gen_convex(red, blue, seed),
                Kind::DoubleChain if plus_red => gen_double_chain_plus_red(m),
                Kind::DoubleChain => gen_double_chain(m),
            };
            emit(output.as_deref(), &write_instance(&ps))
        }
        Cmd::Build {
            input: Some(input),
            strategy,
            output,
            batch: None,
        } => {
            let ps = load(&input)?;
            emit(output.as_deref(), &build_file(&ps, strategy)?)
        }
        Cmd::Build {
            strategy,
            output,
            batch: Some(dir),
            ..
        } => build_batch(&dir, output.as_deref(), strategy),
        Cmd::Build { .. } => Err(Failure::Error("give --input or --batch".into())),
        Cmd::Validate { input, tree, bound } => {
            let ps = load(&input)?;
            let t = read_tree(&read(&tree)?)?.tree_for(&ps)?;
            let bound = match bound.as_str() {
                "auto" => theorem_bound(ps.red_count(), ps.blue_count())?,
                b => b
                    .parse()
                    .map_err(|_| Failure::Error(format!("bad --bound {b:?}")))?,
            };
            let report = check_tree(&ps, &t, bound);
            println!(
                "spanning={} bichromatic={} plane={} max_degree={} bound={} red_max_degree={} blue_degrees={:?}",
                report.is_spanning,
                report.is_bichromatic,
                report.is_plane,
                report.max_degree,
                report.bound,
                report.red_max_degree,
                report.blue_degree_histogram
            );
            if report.passes() {
                println!("pass");
                Ok(())
            } else {
                Err(Failure::Violation(format!(
                    "fail: {}",
                    report.violations.join("; ")
                )))
            }
        }
        Cmd::Oracle { input, decision } => {
            let ps = load(&input)?;
            let cap = oracle_cap();
            match decision {
                Some(d) => match find_plane_tree_with_bound_capped(&ps, d, cap)? {
                    Some(_) => {
                        println!("yes: a plane bichromatic spanning tree of degree <= {d} exists");
                        Ok(())
                    }
                    None => Err(Failure::Violation(format!(
                        "no: every plane bichromatic spanning tree has degree > {d}"
                    ))),
                },
                None => {
                    let (d, _) = min_plane_degree_capped(&ps, cap)?;
                    println!("d_star={d}");
                    Ok(())
                }
            }
        }
        Cmd::Render {
            input,
            tree,
            output,
        } => {
            let ps = load(&input)?;
            let t = match tree {
                Some(p) => Some(read_tree(&read(&p)?)?.tree_for(&ps)?),
                None => None,
            };
            emit(output.as_deref(), &render_svg(&ps, t.as_ref()))
        }
        Cmd::Plan { input } => {
            let ps = load(&input)?;
            println!("{}", plan(&ps, Strategy::Auto)?);
            Ok(())
        }
    }
}

fn build_file(ps: &PointSet, strategy: Strategy) -> Result<String, Failure> {
    let b = build(ps, strategy, Default::default())?;
    log::info!("recursion depth {}", b.stats.max_depth);
    let meta = TreeMetadata {
        strategy: b.plan.strategy.to_string(),
        delta: b.plan.delta,
        bound: b.plan.bound,
        wall_time_ms: b.wall_time_ms,
    };
    Ok(write_tree(&TreeFile::new(ps, &b.tree, Some(meta))))
}

fn build_batch(dir: &Path, out: Option<&Path>, strategy: Strategy) -> Outcome {
    let out = out.unwrap_or(dir);
    fs::create_dir_all(out).map_err(|e| Failure::Error(format!("{}: {e}", out.display())))?;
    let mut inputs: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Error(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            name.ends_with(".json") && !name.ends_with(".tree.json")
        })
        .collect();
    inputs.sort();
    let failures: Vec<String> = inputs
        .par_iter()
        .filter_map(|path| {
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("instance");
            let target = out.join(format!("{stem}.tree.json"));
            let result = load(path)
                .and_then(|ps| build_file(&ps, strategy))
                .and_then(|text: String| emit(Some(&target), &text));
            match result {
                Ok(()) => {
                    println!("{} -> {}", path.display(), target.display());
                    None
                }
                Err(Failure::Violation(m) | Failure::Error(m)) => {
                    Some(format!("{}: {m}", path.display()))
                }
            }
        })
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Error(failures.join("\n")))
    }
}
