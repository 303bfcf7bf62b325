//! `matrecol`: command-line front end for binary matroid recolouring.
//!
//! Exit codes: 0 success or YES, 1 NO, 2 usage or input error, 3 capacity.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use matrecol::decision::{tutte_phi, tutte_tau_with, DecisionGraph, TutteContext};
use matrecol::formats::{self, read_bm, read_edges};
use matrecol::graphs::{colouring_graph_dot, graph_homs, kempe_decide, kempe_neighbors};
use matrecol::hom::{dismantles_to, dismantling_retractions, enumerate_homs, is_homomorphism, triviality_certificate};
use matrecol::recolor::{build_col_graph, recol_decide};
use matrecol::reduction::{build_gadget, lift_hom, verify_reduction};
use matrecol::suite::run_suite;
use matrecol::{BinaryMatroid, BitVec, Caps, Error, GraphColouring, MatroidHom, SimpleGraph};

// Output goes through these so a closed pipe (`| head`) is not a panic.
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outp {
    ($($t:tt)*) => {{
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser, Debug)]
#[command(name = "matrecol", version, about = "Reconfiguration of binary matroid homomorphisms")]
struct Cli {
    #[command(flatten)]
    caps: CapArgs,

    /// Accept all-zero columns (loops) in .bm inputs.
    #[arg(long, global = true)]
    allow_loops: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CapArgs {
    /// Largest rank whose row or null space may be swept.
    #[arg(long, global = true)]
    max_rank: Option<u32>,
    /// Largest number of states visited by a search.
    #[arg(long, global = true)]
    max_states: Option<usize>,
    /// Largest homomorphism search space.
    #[arg(long, global = true)]
    max_homs: Option<u64>,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(r) = self.max_rank {
            caps.max_rank = r;
        }
        if let Some(s) = self.max_states {
            caps.max_states = s;
        }
        if let Some(h) = self.max_homs {
            caps.max_homs = h;
        }
        caps
    }
}

/// A pair of matroids `M → N`.
#[derive(Args, Debug)]
struct Frame {
    /// Domain matroid (.bm).
    #[arg(short = 'm', long)]
    domain: PathBuf,
    /// Codomain matroid (.bm).
    #[arg(short = 'n', long)]
    codomain: PathBuf,
}

/// A graph `G` coloured into the universal decision graph of `N`.
#[derive(Args, Debug)]
struct ColouringFrame {
    /// Graph (.edges).
    #[arg(short = 'g', long)]
    graph: PathBuf,
    /// Target matroid (.bm).
    #[arg(short = 'n', long)]
    codomain: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check whether a map is a homomorphism (exit 0 yes, 1 no).
    CheckHom {
        #[command(flatten)]
        frame: Frame,
        /// Homomorphism (.hom).
        #[arg(long)]
        hom: PathBuf,
    },
    /// List all homomorphisms, or count them.
    EnumHoms {
        #[command(flatten)]
        frame: Frame,
        /// Print only the number of homomorphisms.
        #[arg(long)]
        count: bool,
    },
    /// Decide whether two homomorphisms are connected in Col(M, N).
    Recol {
        #[command(flatten)]
        frame: Frame,
        /// Start homomorphism (.hom).
        #[arg(long)]
        from: PathBuf,
        /// Target homomorphism (.hom).
        #[arg(long)]
        to: PathBuf,
        /// Print the witnessed path as a hom sequence.
        #[arg(long)]
        path: bool,
        /// Write the path to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connected components of Col(M, N).
    Components {
        #[command(flatten)]
        frame: Frame,
        /// Write Col(M, N) as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Summarise the decision graph of N.
    DecisionGraph {
        /// Codomain matroid (.bm).
        #[arg(short = 'n', long)]
        codomain: PathBuf,
        /// Use the given representation rather than the universal one.
        #[arg(long)]
        as_given: bool,
        /// Write the decision graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Tutte maps between homomorphisms and decision-graph colourings.
    Tutte {
        #[command(subcommand)]
        action: TutteAction,
    },
    /// Kempe recolouring of decision-graph colourings.
    Kempe {
        #[command(subcommand)]
        action: KempeAction,
    },
    /// Dismantling retractions of N, or a dismantling sequence to a target.
    Dismantle {
        /// Codomain matroid (.bm).
        #[arg(short = 'n', long)]
        codomain: PathBuf,
        /// Search for a dismantling sequence to this matroid.
        #[arg(long)]
        to: Option<PathBuf>,
        /// Search for a sequence to a loop or a single edge.
        #[arg(long, conflicts_with = "to")]
        trivial: bool,
    },
    /// The clique gadget reduction.
    Gadget {
        #[command(subcommand)]
        action: GadgetAction,
    },
    /// Run the built-in battery of small examples.
    Verify,
}

#[derive(Subcommand, Debug)]
enum TutteAction {
    /// Colouring `phi` of a homomorphism M(G) → N.
    Phi {
        #[command(flatten)]
        frame: ColouringFrame,
        /// Homomorphism (.hom).
        #[arg(long)]
        hom: PathBuf,
        /// Root vertex of the spanning tree.
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Root colour as a bitstring; zero by default.
        #[arg(long)]
        base: Option<String>,
    },
    /// Homomorphism `tau` of a colouring.
    Tau {
        #[command(flatten)]
        frame: ColouringFrame,
        /// Colouring file (one bitstring per vertex).
        #[arg(long)]
        colouring: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum KempeAction {
    /// Decide whether two colourings are Kempe-connected.
    Decide {
        #[command(flatten)]
        frame: ColouringFrame,
        /// Start colouring file.
        #[arg(long)]
        from: PathBuf,
        /// Target colouring file.
        #[arg(long)]
        to: PathBuf,
    },
    /// Colourings one Kempe move away.
    Neighbors {
        #[command(flatten)]
        frame: ColouringFrame,
        /// Start colouring file.
        #[arg(long)]
        from: PathBuf,
    },
    /// Write the Kempe recolouring graph as DOT.
    Dot {
        #[command(flatten)]
        frame: ColouringFrame,
        /// DOT output file.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum GadgetAction {
    /// Write M* as .bm and its index map.
    Build {
        #[command(flatten)]
        frame: Frame,
        /// Output file for M* (.bm).
        #[arg(long)]
        out: PathBuf,
        /// Write the index map to this file.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Lift a homomorphism into the K4 copy to M* → N.
    Lift {
        #[command(flatten)]
        frame: Frame,
        /// Homomorphism (.hom).
        #[arg(long)]
        hom: PathBuf,
    },
    /// Check the reduction exhaustively (exit 0 holds, 1 fails).
    Verify {
        #[command(flatten)]
        frame: Frame,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
}

/// Outcome of a successful command.
enum Answer {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Answer::Yes) => ExitCode::SUCCESS,
        Ok(Answer::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Capacity { .. } => 3,
                _ => 2,
            })
        }
    }
}

fn load(path: &Path, allow_loops: bool) -> matrecol::Result<Arc<BinaryMatroid>> {
    read_bm(path, allow_loops).map(Arc::new).map_err(|e| in_file(path, e))
}

fn read(path: &Path) -> matrecol::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse { line, message: format!("{}: {message}", path.display()) },
        other => other,
    }
}

fn write(path: &Path, text: &str) -> matrecol::Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn yes_no(b: bool) -> Answer {
    if b {
        Answer::Yes
    } else {
        Answer::No
    }
}

struct Colouring {
    graph: Arc<SimpleGraph>,
    domain: Arc<BinaryMatroid>,
    dg: DecisionGraph,
}

impl Colouring {
    fn load(frame: &ColouringFrame, allow_loops: bool, caps: &Caps) -> matrecol::Result<Self> {
        let graph = Arc::new(read_edges(&frame.graph).map_err(|e| in_file(&frame.graph, e))?);
        let domain = Arc::new(BinaryMatroid::graphic(&graph));
        let dg = DecisionGraph::universal(load(&frame.codomain, allow_loops)?, caps)?;
        Ok(Self { graph, domain, dg })
    }

    /// A colouring file: one bitstring per vertex on a single line.
    fn read_colouring(&self, path: &Path) -> matrecol::Result<GraphColouring> {
        let text = read(path)?;
        let mut image = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for word in line.split_whitespace() {
                let v = BitVec::parse(word).map_err(|e| Error::Parse { line: i + 1, message: e.to_string() })?;
                image.push(self.dg.vertex_of(&v)?);
            }
        }
        GraphColouring::new(self.graph.clone(), self.dg.graph().clone(), image)
    }

    fn colouring_line(&self, phi: &GraphColouring) -> String {
        phi.image().iter().map(|&v| self.dg.vector(v).to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn run(cli: &Cli) -> matrecol::Result<Answer> {
    let caps = cli.caps.caps();
    let loops = cli.allow_loops;
    let frame = |f: &Frame| -> matrecol::Result<(Arc<BinaryMatroid>, Arc<BinaryMatroid>)> {
        Ok((load(&f.domain, loops)?, load(&f.codomain, loops)?))
    };
    let hom = |path: &Path, m: &Arc<BinaryMatroid>, n: &Arc<BinaryMatroid>| -> matrecol::Result<MatroidHom> {
        formats::parse_hom_for(&read(path)?, m, n).map_err(|e| in_file(path, e))
    };

    match &cli.command {
        Command::CheckHom { frame: f, hom: path } => {
            let (m, n) = frame(f)?;
            let image = formats::parse_hom(&read(path)?).map_err(|e| in_file(path, e))?;
            let ok = is_homomorphism(&m, &n, &image)?;
            out!("{}", if ok { "YES" } else { "NO" });
            Ok(yes_no(ok))
        }
        Command::EnumHoms { frame: f, count } => {
            let (m, n) = frame(f)?;
            let homs = enumerate_homs(&m, &n, &caps)?;
            if *count {
                out!("{}", homs.len());
            } else {
                for h in &homs {
                    out!("{}", h.to_line());
                }
            }
            Ok(Answer::Yes)
        }
        Command::Recol { frame: f, from, to, path, out } => {
            let (m, n) = frame(f)?;
            let (a, b) = (hom(from, &m, &n)?, hom(to, &m, &n)?);
            match recol_decide(&a, &b, &caps)? {
                Some(p) => {
                    out!("YES {}", p.len());
                    if *path || out.is_some() {
                        let text = formats::write_path(&p);
                        match out {
                            Some(o) => write(o, &text)?,
                            None => outp!("{text}"),
                        }
                    }
                    Ok(Answer::Yes)
                }
                None => {
                    out!("NO");
                    Ok(Answer::No)
                }
            }
        }
        Command::Components { frame: f, dot } => {
            let (m, n) = frame(f)?;
            let col = build_col_graph(&m, &n, &caps)?;
            let comps = col.components();
            out!("homs {} edges {} components {}", col.vertex_count(), col.edge_count(), comps.len());
            for c in &comps {
                out!("size {} representative {}", c.len(), col.homs[c[0]].to_line());
            }
            if let Some(d) = dot {
                write(d, &col.to_dot())?;
            }
            Ok(Answer::Yes)
        }
        Command::DecisionGraph { codomain, as_given, dot } => {
            let dg = DecisionGraph::new(load(codomain, loops)?, !as_given, &caps)?;
            out!("{}", dg.summary());
            if let Some(d) = dot {
                write(d, &dg.to_dot())?;
            }
            Ok(Answer::Yes)
        }
        Command::Tutte { action } => match action {
            TutteAction::Phi { frame: f, hom: path, root, base } => {
                let c = Colouring::load(f, loops, &caps)?;
                let tau = hom(path, &c.domain, c.dg.matroid())?;
                let ctx = TutteContext::bfs(c.graph.clone(), *root)?;
                let b = match base {
                    Some(s) => BitVec::parse(s)?,
                    None => BitVec::zeros(c.dg.dim()),
                };
                let phi = tutte_phi(&tau, &ctx, &c.dg, &b)?;
                out!("{}", c.colouring_line(&phi));
                Ok(Answer::Yes)
            }
            TutteAction::Tau { frame: f, colouring } => {
                let c = Colouring::load(f, loops, &caps)?;
                let phi = c.read_colouring(colouring)?;
                let tau = tutte_tau_with(&phi, &c.dg, &c.domain)?;
                outp!("{}", formats::write_hom(&tau));
                Ok(Answer::Yes)
            }
        },
        Command::Kempe { action } => match action {
            KempeAction::Decide { frame: f, from, to } => {
                let c = Colouring::load(f, loops, &caps)?;
                let (a, b) = (c.read_colouring(from)?, c.read_colouring(to)?);
                match kempe_decide(&a, &b, &caps)? {
                    Some(p) => {
                        out!("YES {}", p.len());
                        for phi in &p.colourings {
                            out!("{}", c.colouring_line(phi));
                        }
                        Ok(Answer::Yes)
                    }
                    None => {
                        out!("NO");
                        Ok(Answer::No)
                    }
                }
            }
            KempeAction::Neighbors { frame: f, from } => {
                let c = Colouring::load(f, loops, &caps)?;
                for phi in kempe_neighbors(&c.read_colouring(from)?)? {
                    out!("{}", c.colouring_line(&phi));
                }
                Ok(Answer::Yes)
            }
            KempeAction::Dot { frame: f, out } => {
                let c = Colouring::load(f, loops, &caps)?;
                let all = graph_homs(&c.graph, c.dg.graph(), &caps)?;
                write(out, &colouring_graph_dot(&all, true)?)?;
                out!("colourings {}", all.len());
                Ok(Answer::Yes)
            }
        },
        Command::Dismantle { codomain, to, trivial } => {
            let n = load(codomain, loops)?;
            if *trivial {
                return match triviality_certificate(&n, &caps)? {
                    Some(cert) => {
                        out!("YES {:?} in {} steps", cert.target, cert.steps.len());
                        for r in &cert.steps {
                            out!("{}", r.to_line());
                        }
                        Ok(Answer::Yes)
                    }
                    None => {
                        out!("NO");
                        Ok(Answer::No)
                    }
                };
            }
            if let Some(t) = to {
                let target = load(t, loops)?;
                return match dismantles_to(&n, &target, &caps)? {
                    Some(steps) => {
                        out!("YES {}", steps.len());
                        for r in &steps {
                            out!("{}", r.to_line());
                        }
                        Ok(Answer::Yes)
                    }
                    None => {
                        out!("NO");
                        Ok(Answer::No)
                    }
                };
            }
            let all = dismantling_retractions(&n, &caps)?;
            out!("{} dismantling retractions", all.len());
            for r in &all {
                out!("{}", r.to_line());
            }
            Ok(Answer::Yes)
        }
        Command::Gadget { action } => match action {
            GadgetAction::Build { frame: f, out, map } => {
                let (m, n) = frame(f)?;
                let g = build_gadget(&m, &n)?;
                write(out, &formats::write_bm(&g.gadget))?;
                if let Some(p) = map {
                    write(p, &g.index_map())?;
                }
                out!("points {} rank {} clique {}", g.gadget.len(), g.gadget.rank(), g.clique_size);
                Ok(Answer::Yes)
            }
            GadgetAction::Lift { frame: f, hom: path } => {
                let (m, n) = frame(f)?;
                let g = build_gadget(&m, &n)?;
                let tau = hom(path, &m, &g.k4)?;
                outp!("{}", formats::write_hom(&lift_hom(&g, &tau)?));
                Ok(Answer::Yes)
            }
            GadgetAction::Verify { frame: f, json } => {
                let (m, n) = frame(f)?;
                let report = verify_reduction(&m, &n, &caps)?;
                if *json {
                    out!("{}", report.to_json());
                } else {
                    outp!("{}", report.to_text());
                }
                Ok(yes_no(report.holds()))
            }
        },
        Command::Verify => {
            let results = run_suite(&caps);
            for r in &results {
                out!("{}", r.line());
            }
            let passed = results.iter().filter(|r| r.passed).count();
            out!("{passed}/{} checks passed", results.len());
            Ok(yes_no(passed == results.len()))
        }
    }
}
