use std::fmt::Write;

use anyhow::{bail, Context};
use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;

use quasiline::cube::{
    cube_graph, cycle_graph, dual_cube_complex, facing_triples, hyperplanes, is_median,
    ladder_window, line_window, path_graph, relation, spider, staircase_window, tripod, Graph,
    MedianGraph, MedianVerdict, PocSet, Sign, SkewerVerdict, WindowedShiftComplex,
};

use crate::output::Output;
use crate::Outcome;

#[derive(Subcommand)]
pub enum CubeCommand {
    /// Exhaustive median check with a failing triple.
    CheckMedian(GraphArgs),
    /// Edge classes, halfspaces and pairwise relations.
    Hyperplanes(GraphArgs),
    /// Triples of disjoint hyperplanes, none separating the other two.
    FacingTriples(FacingArgs),
    /// Dual cube complex of a poc-set.
    Dual(DualArgs),
    /// Does sigma skewer or stabilise a hyperplane?
    Skewer(SkewerArgs),
    /// H(h) symmetric difference H(sigma^p h).
    Symdiff(PowerArgs),
    /// Transfer tr(sigma^p) relative to h+.
    Transfer(PowerArgs),
    /// Separation index of k against the sigma-orbit of h.
    SepIndex(SepArgs),
}

#[derive(Args)]
pub struct GraphArgs {
    /// Graph JSON file: {"vertices": [labels], "edges": [[u, v], ...]}.
    #[arg(long, conflicts_with = "example")]
    pub graph: Option<std::path::PathBuf>,
    /// Built-in graph: path:N, cube:N, tripod, spider:LEGS,LEN, cycle:N.
    #[arg(long)]
    pub example: Option<String>,
}

impl GraphArgs {
    fn load(&self) -> anyhow::Result<Graph> {
        match (&self.graph, &self.example) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(Graph::from_json(&text)?)
            }
            (None, Some(spec)) => example_graph(spec),
            _ => bail!("give exactly one of --graph or --example"),
        }
    }

    fn params(&self) -> serde_json::Value {
        json!({
            "graph": self.graph.as_ref().map(|p| p.display().to_string()),
            "example": self.example,
        })
    }
}

fn example_graph(spec: &str) -> anyhow::Result<Graph> {
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let num = |s: &str| -> anyhow::Result<usize> {
        s.trim()
            .parse()
            .with_context(|| format!("bad size `{s}` in example `{spec}`"))
    };
    Ok(match name {
        "path" => path_graph(num(arg)?),
        "cube" => {
            let n = num(arg)?;
            if n > 12 {
                bail!("cube:N is limited to N <= 12");
            }
            cube_graph(n as u32)
        }
        "tripod" => tripod(),
        "spider" => {
            let (legs, len) = arg
                .split_once(',')
                .context("spider needs LEGS,LEN, e.g. spider:4,2")?;
            let (legs, len) = (num(legs)?, num(len)?);
            if len == 0 {
                bail!("spider legs need length >= 1");
            }
            spider(legs, len)
        }
        "cycle" => {
            let n = num(arg)?;
            if n < 3 {
                bail!("cycle:N needs N >= 3");
            }
            cycle_graph(n)
        }
        _ => bail!("unknown example `{spec}`; try path:N, cube:N, tripod, spider:L,N, cycle:N"),
    })
}

#[derive(Args)]
pub struct FacingArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Only hyperplanes whose support contains the vertex with this label.
    #[arg(long)]
    pub touching: Option<String>,
}

#[derive(Args)]
pub struct DualArgs {
    /// Poc-set JSON file with "walls" and either "order" or "relations".
    #[arg(long, conflicts_with_all = ["crossing", "chain"])]
    pub pocset: Option<std::path::PathBuf>,
    /// K pairwise transverse walls.
    #[arg(long, conflicts_with = "chain")]
    pub crossing: Option<usize>,
    /// K nested walls A_0 <= ... <= A_(K-1).
    #[arg(long)]
    pub chain: Option<usize>,
    /// Print the dual graph as JSON instead of a summary.
    #[arg(long)]
    pub emit_graph: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexKind {
    /// Integer line, sigma = +1.
    Line,
    /// Diagonal strip of squares, sigma = (+1, +1).
    Staircase,
    /// Two rails with rungs, sigma = +shift.
    Ladder,
}

#[derive(Args)]
pub struct WindowArgs {
    #[arg(long, value_enum, default_value = "line")]
    pub complex: ComplexKind,
    /// Window half-width N.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=200))]
    pub window: u32,
    /// Ladder shift.
    #[arg(long, default_value_t = 2)]
    pub shift: u32,
    /// Hyperplane h, named by one of its edges as `U~V` (vertex labels).
    #[arg(long, default_value = "0~1")]
    pub h: String,
}

impl WindowArgs {
    fn build(&self) -> anyhow::Result<WindowedShiftComplex> {
        Ok(match self.complex {
            ComplexKind::Line => line_window(self.window),
            ComplexKind::Staircase => staircase_window(self.window),
            ComplexKind::Ladder => {
                if self.shift == 0 || self.shift > self.window {
                    bail!("ladder shift must be in 1..=window");
                }
                ladder_window(self.window, self.shift)
            }
        })
    }

    fn params(&self) -> serde_json::Value {
        json!({
            "complex": match self.complex {
                ComplexKind::Line => "line",
                ComplexKind::Staircase => "staircase",
                ComplexKind::Ladder => "ladder",
            },
            "window": self.window,
            "shift": self.shift,
            "h": self.h,
        })
    }
}

fn edge_hyperplane(w: &WindowedShiftComplex, spec: &str) -> anyhow::Result<usize> {
    let (u, v) = spec
        .split_once('~')
        .with_context(|| format!("hyperplane `{spec}` must be written U~V"))?;
    Ok(w.hyperplane_at(u.trim(), v.trim())?)
}

#[derive(Args)]
pub struct SkewerArgs {
    #[command(flatten)]
    pub window: WindowArgs,
    /// Largest power tried.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_power: u32,
}

#[derive(Args)]
pub struct PowerArgs {
    #[command(flatten)]
    pub window: WindowArgs,
    /// The element is sigma^power.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub power: i64,
}

#[derive(Args)]
pub struct SepArgs {
    #[command(flatten)]
    pub window: WindowArgs,
    /// The separating hyperplane k, as `U~V`.
    #[arg(long)]
    pub k: String,
    #[arg(long, default_value_t = 8)]
    pub max_power: u32,
}

fn median(g: Graph) -> anyhow::Result<MedianGraph> {
    Ok(MedianGraph::new(g)?)
}

pub fn run(cmd: &CubeCommand, out: &Output) -> anyhow::Result<Outcome> {
    match cmd {
        CubeCommand::CheckMedian(a) => {
            let verdict = is_median(&a.load()?)?;
            if out.json {
                return Ok(Outcome::done(out.report(
                    "cube check-median",
                    a.params(),
                    &verdict,
                )));
            }
            Ok(Outcome::done(match verdict {
                MedianVerdict::Median => "median\n".to_string(),
                MedianVerdict::Fails { triple, medians } => format!(
                    "not median: triple ({}, {}, {}) has {medians} medians\n",
                    triple[0], triple[1], triple[2]
                ),
            }))
        }
        CubeCommand::Hyperplanes(a) => {
            let g = median(a.load()?)?;
            let hs = hyperplanes(&g);
            let mut relations = Vec::new();
            for h in &hs {
                for k in &hs {
                    if h.id < k.id {
                        relations.push((h.id, k.id, relation(h, k)?));
                    }
                }
            }
            if out.json {
                let result = json!({ "hyperplanes": hs, "relations": relations });
                return Ok(Outcome::done(out.report(
                    "cube hyperplanes",
                    a.params(),
                    &result,
                )));
            }
            let labels = g.graph().labels();
            let mut text = format!("{} hyperplanes\n", hs.len());
            for h in &hs {
                let edges: Vec<String> = h
                    .edges
                    .iter()
                    .map(|&(u, v)| format!("{}-{}", labels[u], labels[v]))
                    .collect();
                let _ = writeln!(
                    text,
                    "  h{}: |h-| = {}, |h+| = {}, edges {}",
                    h.id,
                    h.minus.len(),
                    h.plus.len(),
                    edges.join(" ")
                );
            }
            for (i, j, r) in relations {
                let _ = writeln!(
                    text,
                    "  h{i} h{j}: {}",
                    serde_json::to_value(r)?.as_str().unwrap_or("")
                );
            }
            Ok(Outcome::done(text))
        }
        CubeCommand::FacingTriples(a) => {
            let g = median(a.graph.load()?)?;
            let hs = hyperplanes(&g);
            let among: Option<Vec<usize>> = match &a.touching {
                None => None,
                Some(label) => {
                    let v = g
                        .graph()
                        .labels()
                        .iter()
                        .position(|l| l == label)
                        .with_context(|| format!("no vertex labelled `{label}`"))?;
                    Some(
                        hs.iter()
                            .filter(|h| h.support.contains(&v))
                            .map(|h| h.id)
                            .collect(),
                    )
                }
            };
            let triples = facing_triples(&hs, among.as_deref());
            if out.json {
                let params = json!({ "graph": a.graph.params(), "touching": a.touching });
                let result = json!({ "count": triples.len(), "triples": triples });
                return Ok(Outcome::done(out.report(
                    "cube facing-triples",
                    params,
                    &result,
                )));
            }
            let mut text = format!("{}\n", triples.len());
            for t in &triples {
                let _ = writeln!(text, "  h{} h{} h{}", t[0], t[1], t[2]);
            }
            Ok(Outcome::done(text))
        }
        CubeCommand::Dual(a) => {
            let p = match (&a.pocset, a.crossing, a.chain) {
                (Some(path), None, None) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    PocSet::from_json(&text)?
                }
                (None, Some(k), None) => PocSet::crossing(k),
                (None, None, Some(k)) => PocSet::chain(k),
                _ => bail!("give exactly one of --pocset, --crossing or --chain"),
            };
            let dual = dual_cube_complex(&p)?;
            let params = json!({
                "pocset": a.pocset.as_ref().map(|p| p.display().to_string()),
                "crossing": a.crossing,
                "chain": a.chain,
            });
            if a.emit_graph {
                return Ok(Outcome::done(format!("{}\n", dual.graph.to_json())));
            }
            // the median check is cubic in memory; skip it past 512 vertices
            let median = (dual.graph.vertex_count() <= 512)
                .then(|| is_median(&dual.graph))
                .transpose()?;
            let conclusive = median.is_some();
            let result = json!({
                "walls": p.walls(),
                "vertices": dual.graph.vertex_count(),
                "edges": dual.graph.edges().len(),
                "connected": dual.connected,
                "median": median,
            });
            if out.json {
                return Ok(Outcome {
                    text: out.report("cube dual", params, &result),
                    conclusive,
                });
            }
            let median_text = match median {
                Some(MedianVerdict::Median) => "median",
                Some(MedianVerdict::Fails { .. }) => "not median",
                None => "median check skipped",
            };
            Ok(Outcome {
                text: format!(
                    "{} vertices, {} edges, {}, {}\n",
                    dual.graph.vertex_count(),
                    dual.graph.edges().len(),
                    if dual.connected {
                        "connected"
                    } else {
                        "disconnected"
                    },
                    median_text
                ),
                conclusive,
            })
        }
        CubeCommand::Skewer(a) => {
            let w = a.window.build()?;
            let h = edge_hyperplane(&w, &a.window.h)?;
            let verdict = w.skewer_check(h, a.max_power)?;
            let conclusive = verdict != SkewerVerdict::Inconclusive;
            if out.json {
                let params = json!({ "window": a.window.params(), "max_power": a.max_power });
                return Ok(Outcome {
                    text: out.report("cube skewer", params, &verdict),
                    conclusive,
                });
            }
            let text = match verdict {
                SkewerVerdict::Skewers { power, direction } => {
                    let d = if direction == Sign::Plus { "+" } else { "-" };
                    format!("skewers: sigma^{power} h{d} is strictly inside h{d}\n")
                }
                SkewerVerdict::StabilisesPower { power } => {
                    format!("stabilises: sigma^{power} h = h\n")
                }
                SkewerVerdict::Inconclusive => "inconclusive: the window ran out\n".to_string(),
            };
            Ok(Outcome { text, conclusive })
        }
        CubeCommand::Symdiff(a) => {
            let w = a.window.build()?;
            let h = edge_hyperplane(&w, &a.window.h)?;
            let d = w.hyperplane_symdiff(h, a.power)?;
            if out.json {
                let params = json!({ "window": a.window.params(), "power": a.power });
                return Ok(Outcome {
                    text: out.report("cube symdiff", params, &d),
                    conclusive: d.verified,
                });
            }
            let ids: Vec<String> = d.members.iter().map(|m| format!("h{m}")).collect();
            Ok(Outcome {
                text: format!(
                    "{} hyperplanes{}{}, {}\n",
                    d.members.len(),
                    if ids.is_empty() { "" } else { ": " },
                    ids.join(" "),
                    if d.verified {
                        "verified within window"
                    } else {
                        "NOT verified within window"
                    }
                ),
                conclusive: d.verified,
            })
        }
        CubeCommand::Transfer(a) => {
            let w = a.window.build()?;
            let h = edge_hyperplane(&w, &a.window.h)?;
            let t = w.transfer(h, a.power)?;
            if out.json {
                let params = json!({ "window": a.window.params(), "power": a.power });
                return Ok(Outcome {
                    text: out.report("cube transfer", params, &t),
                    conclusive: t.verified,
                });
            }
            Ok(Outcome {
                text: if t.verified {
                    format!("{}\n", t.value)
                } else {
                    format!("inconclusive (window-limited estimate {})\n", t.value)
                },
                conclusive: t.verified,
            })
        }
        CubeCommand::SepIndex(a) => {
            let w = a.window.build()?;
            let h = edge_hyperplane(&w, &a.window.h)?;
            let k = edge_hyperplane(&w, &a.k)?;
            let index = w.separation_index(k, h, a.max_power)?;
            if out.json {
                let params =
                    json!({ "window": a.window.params(), "k": a.k, "max_power": a.max_power });
                return Ok(Outcome::done(out.report(
                    "cube sep-index",
                    params,
                    &json!({ "index": index }),
                )));
            }
            Ok(Outcome::done(format!("{index}\n")))
        }
    }
}
