//! `bisimqi` command-line tool.
//!
//! Predicate subcommands exit 0 for yes and 1 for no. Any parse or
//! validation error exits 2 with a message on stderr.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use bisimqi::artin::{
    artin_to_decomposition, classify_artin, is_3manifold_artin, is_qi_to_right_angled_tree_group,
    parse_labeled_graph, ArtinTree, LabeledGraph, QiClass,
};
use bisimqi::census::{count_minimal, enumerate_minimal, for_each_minimal};
use bisimqi::format::{parse_any_named, write_graph, write_graph_json};
use bisimqi::graph::{to_dot, BicoloredGraph};
use bisimqi::splice::{artin_tree_to_splice, splice_to_decomposition, splice_to_dot, write_splice};
use bisimqi::unfold::{unfolding_dot, Unfolder};
use bisimqi::{bisimilar, is_minimal, minimize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser)]
#[command(name = "bisimqi", version, about = "Minimal bicolored graphs and Artin tree groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the minimal graph and the map from input vertices to its vertices
    Minimize {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exit 0 if the graph is minimal, 1 otherwise
    IsMinimal {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exit 0 if the two graphs are bisimilar, 1 otherwise
    Bisimilar {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count connected minimal graphs with n vertices
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Only graphs with this many black vertices
        #[arg(long)]
        b: Option<usize>,
        /// Print one canonical representative per class
        #[arg(long)]
        list: bool,
        /// Worker threads (defaults to available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Depth-limited type of the Bass-Serre tree at a vertex
    Unfold {
        file: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(long)]
        depth: usize,
        /// Children per neighbor in the DOT picture
        #[arg(long, default_value_t = 2)]
        multiplicity: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Artin presentation trees
    Artin {
        #[command(subcommand)]
        action: ArtinAction,
    },
    /// Splice diagrams of Artin trees
    Splice {
        #[command(subcommand)]
        action: SpliceAction,
    },
}

#[derive(Subcommand)]
enum ArtinAction {
    /// Colored decomposition graph of a big tree
    Convert(ArtinArgs),
    /// Quasi-isometry class
    Classify(ArtinArgs),
    /// Exit 0 if quasi-isometric to a right-angled tree group
    IsRaQi(ArtinArgs),
    /// Exit 0 if the Artin group is a 3-manifold group
    #[command(name = "is-3mfld")]
    Is3mfld(ArtinArgs),
}

#[derive(Subcommand)]
enum SpliceAction {
    /// Splice diagram of the tree's link
    FromArtin(ArtinArgs),
    /// Decomposition graph read off the splice diagram
    Decomposition(ArtinArgs),
}

#[derive(clap::Args)]
struct ArtinArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<(BicoloredGraph, Vec<String>)> {
    parse_any_named(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_labeled(path: &Path) -> Result<LabeledGraph> {
    parse_labeled_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_tree(path: &Path) -> Result<ArtinTree> {
    ArtinTree::new(load_labeled(path)?).with_context(|| format!("validating {}", path.display()))
}

fn render_graph(g: &BicoloredGraph, format: Format) -> String {
    match format {
        Format::Text => write_graph(g),
        Format::Json => write_graph_json(g) + "\n",
        Format::Dot => to_dot(g),
    }
}

fn verdict(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode> {
    match cli.command {
        Command::Minimize { file, format } => {
            let (g, names) = load_graph(&file)?;
            let m = minimize(&g)?;
            match format {
                Format::Text => {
                    write!(out, "{}", write_graph(&m.graph))?;
                    writeln!(out, "# class map: input vertex -> minimal vertex")?;
                    for (name, c) in names.iter().zip(m.coloring.classes()) {
                        writeln!(out, "# {name} {c}")?;
                    }
                }
                Format::Json => {
                    let graph: serde_json::Value = serde_json::from_str(&write_graph_json(&m.graph))?;
                    let classes: Vec<_> = names
                        .iter()
                        .zip(m.coloring.classes())
                        .map(|(n, c)| json!([n, c]))
                        .collect();
                    writeln!(out, "{}", json!({"graph": graph, "classes": classes}))?;
                }
                Format::Dot => write!(out, "{}", to_dot(&m.graph))?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::IsMinimal { file, format } => {
            let (g, _) = load_graph(&file)?;
            let minimal = is_minimal(&g)?;
            match format {
                Format::Json => writeln!(out, "{}", json!({ "minimal": minimal }))?,
                _ => writeln!(out, "{}", if minimal { "minimal" } else { "not minimal" })?,
            }
            Ok(verdict(minimal))
        }
        Command::Bisimilar {
            first,
            second,
            format,
        } => {
            let (g1, _) = load_graph(&first)?;
            let (g2, _) = load_graph(&second)?;
            let witness = bisimilar(&g1, &g2)?;
            let pairs: Vec<(usize, usize)> = witness
                .as_ref()
                .map(|w| w.matching.images().iter().copied().enumerate().collect())
                .unwrap_or_default();
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({ "bisimilar": witness.is_some(), "matching": pairs })
                )?,
                _ => {
                    writeln!(out, "{}", if witness.is_some() { "bisimilar" } else { "not bisimilar" })?;
                    if let Some(w) = &witness {
                        writeln!(
                            out,
                            "# matching of minimal-graph vertices ({} vertices)",
                            w.left.graph.vertex_count()
                        )?;
                        for (a, b) in &pairs {
                            writeln!(out, "m {a} {b}")?;
                        }
                    }
                }
            }
            Ok(verdict(witness.is_some()))
        }
        Command::Enumerate {
            n,
            b,
            list,
            jobs,
            format,
        } => {
            if list {
                let blacks: Vec<usize> = match b {
                    Some(b) => vec![b],
                    None => (0..=n).collect(),
                };
                let mut graphs = Vec::new();
                for b in blacks {
                    for_each_minimal(n, b, |g| graphs.push(g.clone()))?;
                }
                match format {
                    Format::Json => {
                        let values: Vec<serde_json::Value> = graphs
                            .iter()
                            .map(|g| serde_json::from_str(&write_graph_json(g)))
                            .collect::<Result<_, _>>()?;
                        writeln!(out, "{}", serde_json::Value::Array(values))?;
                    }
                    _ => {
                        let blocks: Vec<String> = graphs.iter().map(|g| render_graph(g, format)).collect();
                        write!(out, "{}", blocks.join("\n"))?;
                    }
                }
                return Ok(ExitCode::SUCCESS);
            }
            match b {
                Some(b) => {
                    let count = count_minimal(n, b, jobs)?;
                    match format {
                        Format::Json => writeln!(out, "{}", json!({"n": n, "b": b, "count": count}))?,
                        _ => writeln!(out, "n={n} b={b}: {count}")?,
                    }
                }
                None => {
                    let row = enumerate_minimal(n, jobs)?;
                    match format {
                        Format::Json => writeln!(out, "{}", serde_json::to_string(&row)?)?,
                        _ => {
                            write!(out, " n |")?;
                            for b in 0..=n {
                                write!(out, " {:>8}", format!("b={b}"))?;
                            }
                            writeln!(out, " | {:>9}", "total")?;
                            writeln!(out, "{row}")?;
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Unfold {
            file,
            root,
            depth,
            multiplicity,
            format,
        } => {
            let (g, names) = load_graph(&file)?;
            let v = names
                .iter()
                .position(|n| *n == root)
                .ok_or_else(|| anyhow!("unknown vertex `{root}`"))?;
            if !g.is_connected() {
                bail!("graph is not connected");
            }
            match format {
                Format::Dot => {
                    let dot = unfolding_dot(&g, v, depth, multiplicity)
                        .ok_or_else(|| anyhow!("tree too large to draw; lower --depth or --multiplicity"))?;
                    write!(out, "{dot}")?;
                }
                Format::Json => {
                    let mut u = Unfolder::new();
                    let id = u.type_of(&g, v, depth);
                    writeln!(out, "{}", json!({"root": root, "depth": depth, "key": u.key(id)}))?;
                }
                Format::Text => {
                    let mut u = Unfolder::new();
                    let id = u.type_of(&g, v, depth);
                    writeln!(out, "{}", u.key(id))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Artin { action } => match action {
            ArtinAction::Convert(args) => {
                let t = load_tree(&args.input)?;
                let g = artin_to_decomposition(&t)?;
                write!(out, "{}", render_graph(&g, args.format))?;
                Ok(ExitCode::SUCCESS)
            }
            ArtinAction::Classify(args) => {
                let t = load_tree(&args.input)?;
                let class = classify_artin(&t);
                match (args.format, &class) {
                    (Format::Json, QiClass::GraphManifold(g)) => {
                        let graph: serde_json::Value = serde_json::from_str(&write_graph_json(g))?;
                        writeln!(out, "{}", json!({"class": "graph-manifold", "minimal": graph}))?;
                    }
                    (Format::Json, other) => writeln!(out, "{}", json!({ "class": other.to_string() }))?,
                    (Format::Dot, QiClass::GraphManifold(g)) => write!(out, "{}", to_dot(g))?,
                    (_, QiClass::GraphManifold(g)) => {
                        writeln!(out, "# {class}")?;
                        write!(out, "{}", write_graph(g))?;
                    }
                    (_, other) => writeln!(out, "{other}")?,
                }
                Ok(ExitCode::SUCCESS)
            }
            ArtinAction::IsRaQi(args) => {
                let yes = is_qi_to_right_angled_tree_group(&load_tree(&args.input)?);
                predicate_output(out, args.format, "right_angled_qi", yes)?;
                Ok(verdict(yes))
            }
            ArtinAction::Is3mfld(args) => {
                let yes = is_3manifold_artin(&load_labeled(&args.input)?);
                predicate_output(out, args.format, "three_manifold", yes)?;
                Ok(verdict(yes))
            }
        },
        Command::Splice { action } => match action {
            SpliceAction::FromArtin(args) => {
                let d = artin_tree_to_splice(&load_tree(&args.input)?)?;
                match args.format {
                    Format::Dot => write!(out, "{}", splice_to_dot(&d))?,
                    _ => write!(out, "{}", write_splice(&d))?,
                }
                Ok(ExitCode::SUCCESS)
            }
            SpliceAction::Decomposition(args) => {
                let d = artin_tree_to_splice(&load_tree(&args.input)?)?;
                let g = splice_to_decomposition(&d)?;
                write!(out, "{}", render_graph(&g, args.format))?;
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn predicate_output(out: &mut impl Write, format: Format, key: &str, yes: bool) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", json!({ key: yes }))?,
        _ => writeln!(out, "{}", if yes { "yes" } else { "no" })?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => {
            let _ = out.flush();
            code
        }
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
