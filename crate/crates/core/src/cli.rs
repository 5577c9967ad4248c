//! Command-line front end.
//!
//! Every run produces one report with a fixed set of fields, as `key: value`
//! lines or, with `--json`, a single JSON document. Exit codes: 0 for a
//! decided `true` or a successful report, 1 for `false`, 2 for unknown or
//! an exhausted closure, 3 for usage and input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bs_family::{detect_bs, sc_positive_word, BsParams};
use crate::complex::Complex;
use crate::oracle::{derivation_bfs, OracleError};
use crate::presentation::{
    build_bisided, check_star, classify, is_adian, parse_presentation, parse_word, side_graph, DecidabilityClass,
    Presentation, Side, StarKind, Word,
};
use crate::stephen::{equal_from_closures, schutzenberger, Budget, ClosureOutcome, ClosureStatus, TriBool};
use crate::wordgraph::WordGraph;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "adian", version, about = "Word problem for positively presented inverse monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Presentation file.
    presentation: PathBuf,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_vertices: u64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_rounds: u64,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn budget(&self) -> Budget {
        Budget::new(self.max_vertices as usize, self.max_rounds as usize)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a presentation.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Decide u = v.
    Eq {
        #[command(flatten)]
        common: Common,
        u: String,
        v: String,
    },
    /// Decide u ≤ v in the natural partial order.
    Leq {
        #[command(flatten)]
        common: Common,
        u: String,
        v: String,
    },
    /// Decide whether w is idempotent.
    Idem {
        #[command(flatten)]
        common: Common,
        w: String,
    },
    /// Decide whether w maps to the identity of the maximal group image.
    GroupId {
        #[command(flatten)]
        common: Common,
        w: String,
    },
    /// Close the Schützenberger complex of w and export it.
    Graph {
        #[command(flatten)]
        common: Common,
        w: String,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Include faces in the DOT output.
        #[arg(long)]
        complex: bool,
    },
    /// Munn tree of w.
    Munn {
        #[command(flatten)]
        common: Common,
        w: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Search derivations between positive words u and v.
    OracleEq {
        #[command(flatten)]
        common: Common,
        u: String,
        v: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
}

/// Result of [`run`]: what `main` prints and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureStats {
    pub word: String,
    pub status: String,
    pub rounds: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub fold_merges: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witnesses {
    pub left_graph_cycle: String,
    pub right_graph_cycle: String,
    pub star_violation: String,
    pub bisided_cycle: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivationReport {
    pub depth: String,
    pub length: String,
    pub path: Vec<String>,
}

/// One report per run; all fields are always present.
#[derive(Debug, Clone, Serialize)]
pub struct CliReport {
    pub command: String,
    pub presentation: String,
    pub generators: usize,
    pub relations: usize,
    pub class: String,
    pub adian: bool,
    pub star: bool,
    pub bisided_forest: bool,
    pub engine: String,
    pub answer: String,
    pub reason: String,
    pub closures: Vec<ClosureStats>,
    pub witnesses: Witnesses,
    pub derivation: DerivationReport,
    pub dot: String,
}

const NA: &str = "n/a";

impl CliReport {
    fn new(command: &str, path: &str, p: &Presentation) -> Self {
        let names = |g: &[u32]| p.format_gens(g);
        let cycle = |c: Option<Vec<u32>>| match c {
            Some(c) => names(&c),
            None => "none".into(),
        };
        let star = check_star(p);
        let star_violation = match &star {
            None => "none".into(),
            Some(w) => {
                let (what, where_) = match w.kind {
                    StarKind::PrefixIsSuffix => ("prefix", "suffix"),
                    StarKind::SuffixIsPrefix => ("suffix", "prefix"),
                };
                format!("{what} [{}] of [{}] is a {where_} of [{}]", names(&w.factor), names(&w.word), names(&w.other))
            }
        };
        let bs = build_bisided(p);
        let bisided_cycle = match bs.find_cycle() {
            None => "none".into(),
            Some(c) => c.iter().map(|&v| format!("[{}]", names(&bs.vertices[v]))).collect::<Vec<_>>().join(" "),
        };
        CliReport {
            command: command.into(),
            presentation: path.into(),
            generators: p.num_generators(),
            relations: p.relations().len(),
            class: classify(p).to_string(),
            adian: is_adian(p),
            star: star.is_none(),
            bisided_forest: bs.is_forest(),
            engine: NA.into(),
            answer: "ok".into(),
            reason: NA.into(),
            closures: Vec::new(),
            witnesses: Witnesses {
                left_graph_cycle: cycle(side_graph(p, Side::Left).find_cycle()),
                right_graph_cycle: cycle(side_graph(p, Side::Right).find_cycle()),
                star_violation,
                bisided_cycle,
            },
            derivation: DerivationReport { depth: NA.into(), length: NA.into(), path: Vec::new() },
            dot: NA.into(),
        }
    }

    fn set_answer(&mut self, t: &TriBool) -> i32 {
        match t {
            TriBool::True => {
                self.answer = "true".into();
                EXIT_TRUE
            }
            TriBool::False => {
                self.answer = "false".into();
                EXIT_FALSE
            }
            TriBool::Unknown(r) => {
                self.answer = "unknown".into();
                self.reason = r.clone();
                EXIT_UNKNOWN
            }
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "presentation: {}", self.presentation);
        let _ = writeln!(s, "generators: {}", self.generators);
        let _ = writeln!(s, "relations: {}", self.relations);
        let _ = writeln!(s, "class: {}", self.class);
        let _ = writeln!(s, "adian: {}", self.adian);
        let _ = writeln!(s, "star: {}", self.star);
        let _ = writeln!(s, "bisided_forest: {}", self.bisided_forest);
        let _ = writeln!(s, "engine: {}", self.engine);
        let _ = writeln!(s, "answer: {}", self.answer);
        let _ = writeln!(s, "reason: {}", self.reason);
        if self.closures.is_empty() {
            let _ = writeln!(s, "closures: none");
        }
        for (i, c) in self.closures.iter().enumerate() {
            let _ = writeln!(
                s,
                "closure.{i}: word=\"{}\" status={} rounds={} vertices={} edges={} faces={} fold_merges={}",
                c.word, c.status, c.rounds, c.vertices, c.edges, c.faces, c.fold_merges
            );
        }
        let w = &self.witnesses;
        let _ = writeln!(s, "witness.left_graph_cycle: {}", w.left_graph_cycle);
        let _ = writeln!(s, "witness.right_graph_cycle: {}", w.right_graph_cycle);
        let _ = writeln!(s, "witness.star_violation: {}", w.star_violation);
        let _ = writeln!(s, "witness.bisided_cycle: {}", w.bisided_cycle);
        let _ = writeln!(s, "derivation.depth: {}", self.derivation.depth);
        let _ = writeln!(s, "derivation.length: {}", self.derivation.length);
        if self.derivation.path.is_empty() {
            let _ = writeln!(s, "derivation.path: none");
        }
        for (i, step) in self.derivation.path.iter().enumerate() {
            let _ = writeln!(s, "derivation.path.{i}: {step}");
        }
        let _ = writeln!(s, "dot: {}", self.dot);
        s
    }
}

fn stats(p: &Presentation, w: &Word, status: &str, rounds: usize, c: &Complex, fold_merges: usize) -> ClosureStats {
    ClosureStats {
        word: p.format_word(w),
        status: status.into(),
        rounds,
        vertices: c.skeleton().vertex_count(),
        edges: c.skeleton().edge_count(),
        faces: c.face_count(),
        fold_merges,
    }
}

fn outcome_stats(p: &Presentation, w: &Word, o: &ClosureOutcome) -> ClosureStats {
    stats(p, w, &o.status.to_string(), o.rounds_used, &o.complex, o.fold_merges)
}

/// Parameters for the direct constructions when the presentation is in the
/// `⟨a,b | abᵐ = bⁿa⟩` family with `m ≠ n` and every query word is positive.
fn bs_route(p: &Presentation, words: &[&Word]) -> Option<BsParams> {
    match classify(p) {
        DecidabilityClass::AdianBsFamily { m, n } if m != n && words.iter().all(|w| w.is_positive()) => detect_bs(p),
        _ => None,
    }
}

fn closure(p: &Presentation, w: &Word, b: Budget, route: Option<BsParams>) -> ClosureOutcome {
    if let Some(out) = route.and_then(|bp| sc_positive_word(&bp, w).ok()) {
        let vertices = out.complex.skeleton().vertex_count();
        return ClosureOutcome {
            status: ClosureStatus::Closed,
            complex: out.complex,
            rounds_used: out.waves,
            vertices,
            fold_merges: out.fold_merges,
        };
    }
    schutzenberger(p, w, b)
}

fn engine_name(route: Option<BsParams>) -> String {
    if route.is_some() { "bs-family" } else { "stephen" }.into()
}

fn load(path: &PathBuf) -> Result<Presentation, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))
}

fn word(p: &Presentation, name: &str, text: &str) -> Result<Word, Outcome> {
    parse_word(p, text).map_err(|e| Outcome::usage(format!("word {name} \"{text}\": {e}")))
}

fn write_dot(path: &Option<PathBuf>, dot: String, report: &mut CliReport) -> Result<(), Outcome> {
    if let Some(path) = path {
        std::fs::write(path, dot).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
        report.dot = path.display().to_string();
    }
    Ok(())
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli.command) {
        Ok((code, report, json)) => {
            let stdout = if json {
                let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                s.push('\n');
                s
            } else {
                report.render_text()
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(o) => o,
    }
}

fn execute(command: Command) -> Result<(i32, CliReport, bool), Outcome> {
    let (name, common) = match &command {
        Command::Check { common } => ("check", common),
        Command::Eq { common, .. } => ("eq", common),
        Command::Leq { common, .. } => ("leq", common),
        Command::Idem { common, .. } => ("idem", common),
        Command::GroupId { common, .. } => ("group-id", common),
        Command::Graph { common, .. } => ("graph", common),
        Command::Munn { common, .. } => ("munn", common),
        Command::OracleEq { common, .. } => ("oracle-eq", common),
    };
    let p = load(&common.presentation)?;
    let mut report = CliReport::new(name, &common.presentation.display().to_string(), &p);
    let b = common.budget();
    let json = common.json;
    let code = match &command {
        Command::Check { .. } => EXIT_TRUE,
        Command::Eq { u, v, .. } => {
            let (u, v) = (word(&p, "u", u)?, word(&p, "v", v)?);
            let route = bs_route(&p, &[&u, &v]);
            let (cu, cv) = std::thread::scope(|s| {
                let hu = s.spawn(|| closure(&p, &u, b, route));
                let cv = closure(&p, &v, b, route);
                (hu.join().expect("closure thread panicked"), cv)
            });
            report.engine = engine_name(route);
            report.closures = vec![outcome_stats(&p, &u, &cu), outcome_stats(&p, &v, &cv)];
            report.set_answer(&equal_from_closures(&cu, &u, &cv, &v))
        }
        Command::Leq { u, v, .. } => {
            let (u, v) = (word(&p, "u", u)?, word(&p, "v", v)?);
            let cu = schutzenberger(&p, &u, b);
            report.engine = "stephen".into();
            report.closures = vec![outcome_stats(&p, &u, &cu)];
            let answer = if cu.accepts(&v) {
                TriBool::True
            } else if cu.is_closed() {
                TriBool::False
            } else {
                TriBool::Unknown(exhausted_reason(&cu))
            };
            report.set_answer(&answer)
        }
        Command::Idem { w, .. } | Command::GroupId { w, .. } => {
            let w = word(&p, "w", w)?;
            if matches!(command, Command::GroupId { .. }) && !is_adian(&p) {
                return Err(Outcome::usage("group-id: presentation is not Adian"));
            }
            let ww = w.concat(&w);
            let (cw, cww) = std::thread::scope(|s| {
                let h = s.spawn(|| schutzenberger(&p, &w, b));
                let cww = schutzenberger(&p, &ww, b);
                (h.join().expect("closure thread panicked"), cww)
            });
            report.engine = "stephen".into();
            report.closures = vec![outcome_stats(&p, &w, &cw), outcome_stats(&p, &ww, &cww)];
            report.set_answer(&equal_from_closures(&cw, &w, &cww, &ww))
        }
        Command::Graph { w, dot, complex, .. } => {
            let w = word(&p, "w", w)?;
            let route = bs_route(&p, &[&w]);
            let c = closure(&p, &w, b, route);
            report.engine = engine_name(route);
            report.closures = vec![outcome_stats(&p, &w, &c)];
            let text = if *complex { c.complex.to_dot(&p) } else { c.complex.skeleton().to_dot(&p) };
            write_dot(dot, text, &mut report)?;
            match c.status {
                ClosureStatus::Closed => EXIT_TRUE,
                ClosureStatus::Exhausted => {
                    report.answer = "unknown".into();
                    report.reason = exhausted_reason(&c);
                    EXIT_UNKNOWN
                }
            }
        }
        Command::Munn { w, dot, .. } => {
            let w = word(&p, "w", w)?;
            let mt = WordGraph::munn_tree(&w);
            report.engine = "munn".into();
            let c = Complex::new(&p, mt);
            report.closures = vec![stats(&p, &w, NA, 0, &c, 0)];
            write_dot(dot, c.skeleton().to_dot(&p), &mut report)?;
            EXIT_TRUE
        }
        Command::OracleEq { u, v, depth, .. } => {
            let (u, v) = (word(&p, "u", u)?, word(&p, "v", v)?);
            if !is_adian(&p) {
                return Err(Outcome::usage(format!("oracle-eq: {}", OracleError::NotAdian)));
            }
            let r = derivation_bfs(&p, &u, &v, *depth).map_err(|e| Outcome::usage(format!("oracle-eq: {e}")))?;
            report.engine = "oracle".into();
            report.derivation.depth = depth.to_string();
            if r.found {
                report.derivation.length = r.path.len().to_string();
                report.derivation.path = r
                    .path
                    .iter()
                    .map(|(w, s)| {
                        format!(
                            "{:?} relation={} position={} -> {}",
                            s.direction,
                            s.relation_index,
                            s.position,
                            p.format_word(w)
                        )
                    })
                    .collect();
                report.set_answer(&TriBool::True)
            } else {
                report.set_answer(&TriBool::Unknown(format!(
                    "no derivation within {depth} steps ({} words explored)",
                    r.explored
                )))
            }
        }
    };
    Ok((code, report, json))
}

fn exhausted_reason(c: &ClosureOutcome) -> String {
    format!("closure exhausted at {} vertices after {} rounds", c.vertices, c.rounds_used)
}
