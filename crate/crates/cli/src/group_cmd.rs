use std::fmt::Write;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use serde_json::json;

use quasiline::action::{parse_cycles, HoughtonElement, MarkedAction, RayPoint};
use quasiline::coarse::{
    commensurator_probe_at, coset_distance_probe, double_coset_orbits, ends_profile,
    linear_growth_check, narrowness_profile, CosetDistance, ProbeVerdict,
};
use quasiline::schreier::{build_ball, growth_table, BallGraph, ExportFormat};

use crate::output::Output;
use crate::Outcome;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// G_n with its standard generators.
    Houghton,
    /// G_n plus the ray permutation alpha given by --sigma.
    HoughtonExt,
    /// g1 alone on X_2, a bi-infinite line.
    Line,
}

#[derive(Args, Clone)]
pub struct ActionArgs {
    #[arg(long, value_enum, default_value = "houghton")]
    pub family: Family,
    /// Number of rays.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    pub n: u32,
    /// Ray permutation for houghton-ext, in cycle notation.
    #[arg(long, default_value = "()")]
    pub sigma: String,
    #[arg(long, default_value = "1,1")]
    pub basepoint: String,
    /// Ball radius R.
    #[arg(long, default_value_t = 12)]
    pub radius: u32,
}

impl ActionArgs {
    fn action(&self) -> anyhow::Result<MarkedAction> {
        Ok(match self.family {
            Family::Houghton => MarkedAction::houghton(self.n)?,
            Family::HoughtonExt => {
                let sigma = parse_cycles(self.n, &self.sigma)?;
                MarkedAction::houghton_extended(self.n, &sigma)?
            }
            Family::Line => {
                if self.n != 2 {
                    bail!("the line family acts on 2 rays, got --n {}", self.n);
                }
                MarkedAction::line()?
            }
        })
    }

    fn basepoint(&self) -> anyhow::Result<RayPoint> {
        let p: RayPoint = self
            .basepoint
            .parse()
            .map_err(|e: String| anyhow::anyhow!("--basepoint: {e}"))?;
        if !p.is_valid_for(self.n) {
            bail!("--basepoint {p} is not a point of X_{}", self.n);
        }
        Ok(p)
    }

    fn ball(&self) -> anyhow::Result<(MarkedAction, BallGraph)> {
        let action = self.action()?;
        let ball = build_ball(&action, self.basepoint()?, self.radius)?;
        Ok((action, ball))
    }

    fn params(&self) -> serde_json::Value {
        json!({
            "family": match self.family {
                Family::Houghton => "houghton",
                Family::HoughtonExt => "houghton-ext",
                Family::Line => "line",
            },
            "n": self.n,
            "sigma": self.sigma,
            "basepoint": self.basepoint,
            "radius": self.radius,
        })
    }
}

fn with(mut params: serde_json::Value, extra: serde_json::Value) -> serde_json::Value {
    if let (Some(p), Some(e)) = (params.as_object_mut(), extra.as_object()) {
        p.extend(e.clone());
    }
    params
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BallFormat {
    Dot,
    Json,
}

#[derive(Args)]
pub struct SchreierArgs {
    #[command(flatten)]
    pub action: ActionArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: BallFormat,
}

pub fn schreier(a: &SchreierArgs, out: &Output) -> anyhow::Result<Outcome> {
    let (_, ball) = a.action.ball()?;
    let format = if out.json { BallFormat::Json } else { a.format };
    let mut text = ball.export(match format {
        BallFormat::Dot => ExportFormat::Dot,
        BallFormat::Json => ExportFormat::Json,
    });
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok(Outcome::done(text))
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Table,
    Csv,
}

#[derive(Args)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub action: ActionArgs,
    #[arg(long, value_enum, default_value = "table")]
    pub format: TableFormat,
}

pub fn growth(a: &GrowthArgs, out: &Output) -> anyhow::Result<Outcome> {
    if a.action.radius < 3 {
        bail!("growth check needs radius >= 3 (at least 4 table entries)");
    }
    let (_, ball) = a.action.ball()?;
    let table = growth_table(&ball);
    let evidence = linear_growth_check(&table)?;
    if out.json {
        return Ok(Outcome::done(out.report(
            "growth",
            a.action.params(),
            &json!({ "table": table, "linear_growth": evidence }),
        )));
    }
    let text = match a.format {
        TableFormat::Csv => table.to_csv(),
        TableFormat::Table => {
            let mut t = String::from("     r  |B(r)|\n");
            for (r, s) in &table.entries {
                let _ = writeln!(t, "{r:>6}  {s}");
            }
            let _ = writeln!(
                t,
                "C_estimate = {} ({:.4}), holds = {} (evidence up to R = {}, not a proof)",
                evidence.c_estimate,
                *evidence.c_estimate.numer() as f64 / *evidence.c_estimate.denom() as f64,
                evidence.holds,
                evidence.radius
            );
            t
        }
    };
    Ok(Outcome::done(text))
}

#[derive(Args)]
pub struct EndsArgs {
    #[command(flatten)]
    pub action: ActionArgs,
    /// Inner radius r; repeat for several.
    #[arg(long = "r", default_values_t = vec![2])]
    pub inner: Vec<u32>,
}

pub fn ends(a: &EndsArgs, out: &Output) -> anyhow::Result<Outcome> {
    if let Some(&r) = a.inner.iter().find(|&&r| r + 1 >= a.action.radius) {
        bail!("ends need r + 1 < R; got r = {r}, R = {}", a.action.radius);
    }
    let (_, ball) = a.action.ball()?;
    let profile = ends_profile(&ball, &a.inner)?;
    if out.json {
        let params = with(a.action.params(), json!({ "r": a.inner }));
        return Ok(Outcome::done(out.report("ends", params, &profile)));
    }
    let text = if profile.rows.len() == 1 {
        format!("{}\n", profile.rows[0].deep_components)
    } else {
        profile
            .rows
            .iter()
            .map(|row| {
                format!(
                    "r={} R={} ends={}\n",
                    row.inner, row.outer, row.deep_components
                )
            })
            .collect()
    };
    Ok(Outcome::done(text))
}

#[derive(Args)]
pub struct NarrownessArgs {
    #[command(flatten)]
    pub action: ActionArgs,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub mu: u32,
    #[arg(long = "r", default_value_t = 2)]
    pub inner: u32,
}

pub fn narrowness(a: &NarrownessArgs, out: &Output) -> anyhow::Result<Outcome> {
    if a.inner + a.mu >= a.action.radius {
        bail!(
            "narrowness needs r + mu < R; got r = {}, mu = {}, R = {}",
            a.inner,
            a.mu,
            a.action.radius
        );
    }
    let (_, ball) = a.action.ball()?;
    let report = narrowness_profile(&ball, a.mu, a.inner)?;
    report
        .verify(&ball)
        .map_err(|e| anyhow::anyhow!("internal check of the witness report failed: {e}"))?;
    if out.json {
        let params = with(a.action.params(), json!({ "mu": a.mu, "r": a.inner }));
        return Ok(Outcome::done(out.report("narrowness", params, &report)));
    }
    let mut text = format!(
        "witness_count = {} (mu = {}, r = {}, R = {}, maximality certified by a cut of {} vertices)\n",
        report.witness_count,
        report.mu,
        report.inner_radius,
        report.outer_radius,
        report.certificate.len()
    );
    for (i, w) in report.witnesses.iter().enumerate() {
        let _ = writeln!(text, "  witness {i}: {} vertices, e.g. {}", w.len(), w[0]);
    }
    Ok(Outcome::done(text))
}

#[derive(Args)]
pub struct DoubleCosetArgs {
    #[command(flatten)]
    pub action: ActionArgs,
    /// Loop-word length budget L.
    #[arg(long, default_value_t = 6)]
    pub budget: u32,
}

pub fn double_cosets(a: &DoubleCosetArgs, out: &Output) -> anyhow::Result<Outcome> {
    if a.budget > a.action.radius {
        bail!(
            "double cosets need budget L <= R; got L = {}, R = {}",
            a.budget,
            a.action.radius
        );
    }
    let (_, ball) = a.action.ball()?;
    let part = double_coset_orbits(&ball, a.budget)?;
    let conclusive = part.stable && part.classes.iter().all(|c| c.trusted);
    if out.json {
        let params = with(a.action.params(), json!({ "budget": a.budget }));
        return Ok(Outcome {
            text: out.report("double-cosets", params, &part),
            conclusive,
        });
    }
    let mut text = format!(
        "{} classes, stable = {} (budget {}, radius {}, {} loop words)\n",
        part.classes.len(),
        part.stable,
        part.loop_word_budget,
        part.radius,
        part.loop_word_count
    );
    for (i, c) in part.classes.iter().enumerate() {
        let _ = writeln!(
            text,
            "  class {i}: {} vertices, nearest at distance {}, {}",
            c.members.len(),
            c.min_sphere,
            if c.trusted { "trusted" } else { "untrusted" }
        );
    }
    Ok(Outcome { text, conclusive })
}

#[derive(Args)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub action: ActionArgs,
    /// Word for g, e.g. "g1 beta^-1"; "id" for the identity.
    #[arg(long)]
    pub word: String,
    #[arg(long, default_value_t = 6)]
    pub budget: u32,
}

pub fn comm_probe(a: &ProbeArgs, out: &Output) -> anyhow::Result<Outcome> {
    if a.action.radius == 0 {
        bail!("the probe needs radius >= 1");
    }
    let action = a.action.action()?;
    let word = action.parse_word(&a.word)?;
    let probe = commensurator_probe_at(
        &action,
        a.action.basepoint()?,
        &word,
        a.action.radius,
        a.budget,
    )?;
    if out.json {
        let params = with(
            a.action.params(),
            json!({ "word": a.word, "budget": a.budget }),
        );
        return Ok(Outcome::done(out.report("comm-probe", params, &probe)));
    }
    let sizes: Vec<String> = probe
        .image_sizes
        .iter()
        .map(|(_, s)| s.to_string())
        .collect();
    Ok(Outcome::done(format!(
        "{} (x0.g = {}, orbit sizes in B(1..{}): {}; evidence, not a proof)\n",
        match probe.verdict {
            ProbeVerdict::BoundedSoFar => "bounded-so-far",
            ProbeVerdict::GrowingSoFar => "growing-so-far",
        },
        probe.target,
        probe.radius,
        sizes.join(" ")
    )))
}

#[derive(Args)]
pub struct CosetDistanceArgs {
    #[command(flatten)]
    pub action: ActionArgs,
    #[arg(long)]
    pub word: String,
    /// Distance bound D.
    #[arg(long = "bound", default_value_t = 3)]
    pub bound: u32,
    #[arg(long, default_value_t = 6)]
    pub budget: u32,
}

pub fn coset_distance(a: &CosetDistanceArgs, out: &Output) -> anyhow::Result<Outcome> {
    let action = a.action.action()?;
    let word = action.parse_word(&a.word)?;
    if a.action.radius <= a.bound + word.len() as u32 {
        bail!(
            "coset distance needs R > D + |g|; got R = {}, D = {}, |g| = {}",
            a.action.radius,
            a.bound,
            word.len()
        );
    }
    if a.budget > a.action.radius {
        bail!(
            "loop budget L = {} exceeds R = {}",
            a.budget,
            a.action.radius
        );
    }
    let ball = build_ball(&action, a.action.basepoint()?, a.action.radius)?;
    // ball labels are the action labels, so the parsed word applies directly
    let d = coset_distance_probe(&ball, &word, a.bound, a.budget)?;
    let conclusive = matches!(d, CosetDistance::Value(_));
    if out.json {
        let params = with(
            a.action.params(),
            json!({ "word": a.word, "bound": a.bound, "budget": a.budget }),
        );
        return Ok(Outcome {
            text: out.report("coset-distance", params, &d),
            conclusive,
        });
    }
    let text = match d {
        CosetDistance::Value(v) => format!("{v}\n"),
        CosetDistance::AtLeast(v) => format!("at least {v}\n"),
    };
    Ok(Outcome { text, conclusive })
}

#[derive(Args)]
pub struct ElementArgs {
    #[command(flatten)]
    pub action: ActionArgs,
    /// Word over the family's generators.
    #[arg(long, conflicts_with = "element")]
    pub word: Option<String>,
    /// Element in text form, e.g. "n=2 sigma=() t=[-1,1] c={(1,1)->(2,1)}".
    #[arg(long)]
    pub element: Option<String>,
    /// Points to evaluate the element at.
    #[arg(long = "apply")]
    pub apply: Vec<String>,
}

pub fn element(a: &ElementArgs, out: &Output) -> anyhow::Result<Outcome> {
    let e: HoughtonElement = match (&a.word, &a.element) {
        (Some(w), None) => {
            let action = a.action.action()?;
            action.word_element(&action.parse_word(w)?)?
        }
        (None, Some(text)) => text.parse()?,
        _ => bail!("give exactly one of --word or --element"),
    };
    let mut images = Vec::new();
    for p in &a.apply {
        let p: RayPoint = p
            .parse()
            .map_err(|msg: String| anyhow::anyhow!("--apply: {msg}"))?;
        let q = e.apply(p).with_context(|| format!("evaluating at {p}"))?;
        images.push((p, q));
    }
    let inverse = e.invert();
    if out.json {
        let params = json!({ "word": a.word, "element": a.element, "apply": a.apply });
        let result = json!({
            "element": e.to_string(),
            "inverse": inverse.to_string(),
            "identity": e.is_identity(),
            "images": images,
        });
        return Ok(Outcome::done(out.report("element", params, &result)));
    }
    let mut text = format!("{e}\ninverse {inverse}\n");
    for (p, q) in images {
        let _ = writeln!(text, "{p} -> {q}");
    }
    Ok(Outcome::done(text))
}
