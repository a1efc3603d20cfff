//! `helly-bench` command line.
//!
//! Exit codes: 0 when every verdict passes, 1 on a theorem violation or
//! property failure (the report carries the witness), 2 on usage, input or
//! guard errors.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::{json, Value};

use crate::complex::{is_d_collapsible, SimplicialComplex};
use crate::experiment::{experiment_report, Suite, SuiteConfig};
use crate::generators::{
    gen_conditioned, gen_helly_lower_bound, gen_instance, gen_radon_lower_bound, Conditioned,
    GenSpec, Instance, Predicate, DEFAULT_DRAW_CAP,
};
use crate::guards::Guards;
use crate::helly::{
    cfh_stats, colorful_helly_points, colorful_helly_points_fixed, frac_helly_stats, helly_check,
    radon_number_bruteforce, radon_partition, ColorfulHellyPoints, HellyError, HellyReport,
    RadonNumber,
};
use crate::instance::{parse_instance, serialize_instance, InstanceDoc, Strictness};
use crate::interval::{hull, TraceSet};
use crate::piercing::{pierce, pq_check, PqKind};
use crate::rat::Rat;
use crate::report::{emit_report, Cell, Format, Report, Row};
use crate::sweep::{nerve, sweep_collapse, SweepError};

#[derive(Debug, Parser)]
#[command(
    name = "helly-bench",
    version,
    about = "Exact Helly-type experiments on separated d-intervals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    pub format: OutFormat,
    /// Output path; `-` or absent writes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Guard overrides, e.g. `nerve=16,piercing=24` (on top of HELLY_GUARDS).
    #[arg(long, global = true)]
    pub guards: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Instance document; `-` reads stdin.
    #[arg(short, long, default_value = "-")]
    pub input: String,
    /// Warn about unknown fields instead of rejecting them.
    #[arg(long)]
    pub lenient: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PqKindArg {
    Plain,
    ColorfulFirst,
    ColorfulSecond,
}

impl From<PqKindArg> for PqKind {
    fn from(k: PqKindArg) -> Self {
        match k {
            PqKindArg::Plain => PqKind::Plain,
            PqKindArg::ColorfulFirst => PqKind::ColorfulFirst,
            PqKindArg::ColorfulSecond => PqKind::ColorfulSecond,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LowerBound {
    Helly,
    Radon,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nerve of the (first) family.
    Nerve(InputArgs),
    /// Sweep collapse of the nerve, replay-verified.
    Collapse(InputArgs),
    /// Backtracking b-collapsibility test of the nerve or of explicit facets.
    DcollapseOracle {
        #[command(flatten)]
        input: InputArgs,
        /// Dimension bound b (default 2d − 1).
        #[arg(long)]
        b: Option<usize>,
        /// Facets as JSON, e.g. `[[1,2],[2,3],[1,3]]`; replaces the instance.
        #[arg(long)]
        facets: Option<String>,
    },
    /// Radon partitions of the ground set.
    Radon {
        #[command(flatten)]
        input: InputArgs,
        /// Point indices (0-based, canonical order) to partition; default checks every (2d+1)-subset.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Helly test at size m.
    Helly {
        #[command(flatten)]
        input: InputArgs,
        /// Subfamily size (default 2d).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Colorful k-Helly point selection over 2d − k + 1 families.
    ColorfulHelly {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Also report the selection with each claim family fixed in advance.
        #[arg(long)]
        rotate: bool,
    },
    /// Fractional k-Helly statistics.
    FracHelly {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Colorful fractional Helly statistics over 2d families.
    Cfh(InputArgs),
    /// τ, ν, τ*, ν* with the LP certificate.
    Pierce(InputArgs),
    /// (p,q) property check.
    PqCheck {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = PqKindArg::Plain)]
        kind: PqKindArg,
    },
    /// Generate an instance document.
    Gen(GenArgs),
    /// Seeded corpus run of an acceptance suite.
    Experiment {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Dimensions, comma-separated.
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<usize>>,
    },
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// JSON GenSpec file; inline flags are ignored when given.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Points per level: one count, or one per level.
    #[arg(long, value_delimiter = ',', default_value = "4")]
    pub points: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "3/4")]
    pub presence: Rat,
    #[arg(long, default_value_t = 1)]
    pub width_min: usize,
    #[arg(long)]
    pub width_max: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub families: usize,
    /// Rejection-sampling predicate as JSON, e.g. `{"kind":"colorful-helly","k":1}`.
    #[arg(long)]
    pub predicate: Option<String>,
    #[arg(long, default_value_t = DEFAULT_DRAW_CAP)]
    pub cap: u64,
    /// Replace the sets by an extremal construction on the generated points.
    #[arg(long, value_enum)]
    pub lower_bound: Option<LowerBound>,
}

/// A command's result: a report, and for `gen` the document to write.
#[derive(Debug)]
pub struct Output {
    pub report: Report,
    pub document: Option<String>,
}

impl Output {
    fn report(report: Report) -> Self {
        Output {
            report,
            document: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.report.pass {
            0
        } else {
            1
        }
    }
}

/// Usage, input or guard error; always exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl<E: Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError(format!("{path}: {e}")))
    }
}

fn load(args: &InputArgs) -> Result<InstanceDoc, CliError> {
    let text = read_source(&args.input)?;
    let mode = if args.lenient {
        Strictness::Lenient
    } else {
        Strictness::Strict
    };
    let (doc, warnings) = parse_instance(&text, mode)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(doc)
}

fn rat_value(r: &Rat) -> Value {
    serde_json::to_value(Cell::Rat(r.clone())).expect("serializable")
}

fn stats_value(stats: &BTreeMap<String, Rat>) -> Value {
    Value::Object(
        stats
            .iter()
            .map(|(k, v)| (k.clone(), rat_value(v)))
            .collect(),
    )
}

fn stats_row(mut row: Row, stats: &BTreeMap<String, Rat>) -> Row {
    for (k, v) in stats {
        row.push(k, v.clone());
    }
    row
}

fn base(command: &str, doc: &InstanceDoc) -> Report {
    let mut r = Report::new(command);
    r.parameters = Row::new()
        .with("d", doc.instance.ground.d())
        .with("points", doc.instance.ground.len())
        .with("sets", doc.instance.sets.len());
    r
}

fn helly_report(mut r: Report, h: &HellyReport) -> Report {
    r.pass = h.verdict;
    r.results = json!({
        "mode": h.mode,
        "params": h.params,
        "verdict": h.verdict,
        "witness": h.witness,
        "stats": stats_value(&h.stats),
    });
    r.rows
        .push(stats_row(Row::new().with("verdict", h.verdict), &h.stats));
    r
}

fn cmd_nerve(args: &InputArgs, guards: &Guards) -> Result<Output, CliError> {
    let doc = load(args)?;
    let fam = doc.instance.family(0);
    let k = nerve(&fam, guards)?;
    let mut r = base("nerve", &doc);
    r.results = json!({
        "labels": doc.instance.families[0].iter().map(|&i| &doc.names[i]).collect::<Vec<_>>(),
        "faces": k.face_count(),
        "dim": k.dim(),
        "facets": k.maximal_faces(),
    });
    r.rows.push(
        Row::new()
            .with("faces", k.face_count())
            .with("dim", k.dim() as i64),
    );
    Ok(Output::report(r))
}

fn cmd_collapse(args: &InputArgs, guards: &Guards) -> Result<Output, CliError> {
    let doc = load(args)?;
    let fam = doc.instance.family(0);
    let d = doc.instance.ground.d();
    let mut r = base("collapse", &doc);
    match sweep_collapse(&fam, guards) {
        Ok(seq) => {
            let k = nerve(&fam, guards)?;
            let replay = seq.replay(&k);
            let max_dim = seq.max_face_dim();
            let within = max_dim <= 2 * d as isize - 2;
            r.pass = replay.is_ok() && within;
            let steps: Vec<Value> = seq
                .steps
                .iter()
                .map(|s| json!({"sigma": s.free_face, "unique_maximal": s.unique_maximal, "removed": s.removed_faces.len()}))
                .collect();
            r.results = json!({
                "bound": seq.bound,
                "steps": steps,
                "replay_ok": replay.is_ok(),
                "replay_error": replay.err().map(|e| e.to_string()),
                "max_free_face_dim": max_dim,
            });
            r.rows.push(
                Row::new()
                    .with("ok", r.pass)
                    .with("steps", seq.steps.len())
                    .with("max_dim", max_dim as i64),
            );
        }
        Err(SweepError::Guard(g)) => return Err(g.into()),
        Err(SweepError::MixedGround) => {
            return Err(CliError("traces reference different ground sets".into()))
        }
        Err(e) => {
            r.pass = false;
            let detail = match &e {
                SweepError::FamilyMismatch(m) => serde_json::to_value(m)?,
                _ => Value::Null,
            };
            r.results = json!({ "error": e.to_string(), "witness": detail });
            r.rows.push(
                Row::new()
                    .with("ok", false)
                    .with("steps", 0usize)
                    .with("max_dim", -1i64),
            );
        }
    }
    Ok(Output::report(r))
}

fn cmd_oracle(
    args: &InputArgs,
    b: Option<usize>,
    facets: Option<&str>,
    guards: &Guards,
) -> Result<Output, CliError> {
    let (k, default_b, mut r) = match facets {
        Some(text) => {
            let facets: Vec<Vec<i64>> = serde_json::from_str(text)?;
            let labels: Vec<i64> = facets.iter().flatten().copied().sorted().dedup().collect();
            let k = SimplicialComplex::from_facets(labels, &facets)?;
            let mut r = Report::new("dcollapse-oracle");
            r.parameters = Row::new().with("vertices", k.labels().len());
            (k, None, r)
        }
        None => {
            let doc = load(args)?;
            let k = nerve(&doc.instance.family(0), guards)?;
            let d = doc.instance.ground.d();
            (k, Some(2 * d - 1), base("dcollapse-oracle", &doc))
        }
    };
    let Some(b) = b.or(default_b) else {
        return Err(CliError("--b is required with --facets".into()));
    };
    r.parameters.push("b", b);
    r.parameters.push("faces", k.face_count());
    let found = is_d_collapsible(&k, b, guards)?;
    let replay_ok = found.as_ref().map(|s| s.replay(&k).is_ok());
    r.pass = replay_ok == Some(true);
    r.results =
        json!({ "collapsible": found.is_some(), "replay_ok": replay_ok, "sequence": found });
    r.rows
        .push(Row::new().with("b", b).with("collapsible", r.pass));
    Ok(Output::report(r))
}

fn cmd_radon(
    args: &InputArgs,
    subset: Option<&[usize]>,
    guards: &Guards,
) -> Result<Output, CliError> {
    let doc = load(args)?;
    let ground = &doc.instance.ground;
    let all = ground.points();
    let d = ground.d();
    let mut r = base("radon", &doc);
    if let Some(idx) = subset {
        let pts = idx
            .iter()
            .map(|&i| {
                all.get(i)
                    .cloned()
                    .ok_or_else(|| CliError(format!("point index {i} out of range")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let part = radon_partition(ground, &pts)?;
        let verified = part.as_ref().map(|p| p.verify(ground));
        r.pass = verified != Some(false) && (part.is_some() || pts.len() <= 2 * d);
        r.results = json!({ "points": pts, "partition": part, "verified": verified });
        r.rows.push(
            Row::new()
                .with("size", pts.len())
                .with("partition", part.is_some()),
        );
        return Ok(Output::report(r));
    }
    Guards::check("radon", ground.len(), guards.radon)?;
    let mut checked = 0usize;
    let mut failure = None;
    for a in all.iter().cloned().combinations(2 * d + 1) {
        checked += 1;
        match radon_partition(ground, &a)? {
            Some(p) if p.verify(ground) => {}
            _ => {
                failure = Some(a);
                break;
            }
        }
    }
    let full_levels = (1..=d).all(|l| ground.level_len(l) >= 2);
    let lower = if full_levels {
        Some(gen_radon_lower_bound(ground, None)?)
    } else {
        None
    };
    let lower_free = match &lower {
        Some(pts) => Some(radon_partition(ground, pts)?.is_none()),
        None => None,
    };
    let number = radon_number_bruteforce(ground, 2 * d + 2, guards)?;
    let number_text = match number {
        RadonNumber::Exactly(n) => n.to_string(),
        RadonNumber::AboveCap(c) => format!(">{c}"),
    };
    let number_ok = !full_levels || number == RadonNumber::Exactly(2 * d + 1);
    r.pass = failure.is_none() && lower_free != Some(false) && number_ok;
    r.results = json!({
        "subsets_checked": checked,
        "failing_subset": failure,
        "lower_bound_points": lower,
        "lower_bound_partition_free": lower_free,
        "radon_number": number_text,
    });
    r.rows.push(
        Row::new()
            .with("subsets", checked)
            .with("all_partitioned", failure.is_none())
            .with("radon_number", number_text),
    );
    Ok(Output::report(r))
}

fn cmd_helly(args: &InputArgs, m: Option<usize>, k: usize) -> Result<Output, CliError> {
    let doc = load(args)?;
    let m = m.unwrap_or(2 * doc.instance.ground.d());
    let h = helly_check(&doc.instance.family(0), m, k)?;
    Ok(Output::report(helly_report(base("helly", &doc), &h)))
}

fn colorful_outcome(
    res: Result<ColorfulHellyPoints, HellyError>,
) -> Result<(&'static str, Value, bool), CliError> {
    Ok(match res {
        Ok(p) => ("ok", serde_json::to_value(&p)?, true),
        // The theorem says nothing when the hypothesis fails.
        Err(HellyError::PreconditionFailed { tuple }) => {
            ("precondition-failed", json!({ "tuple": tuple }), true)
        }
        Err(HellyError::TheoremViolation {
            family,
            member,
            points,
        }) => (
            "violation",
            json!({ "family": family, "member": member, "points": points }),
            false,
        ),
        Err(e) => return Err(e.into()),
    })
}

fn cmd_colorful(args: &InputArgs, k: usize, rotate: bool) -> Result<Output, CliError> {
    let doc = load(args)?;
    let fams = doc.instance.family_sets();
    let mut r = base("colorful-helly", &doc);
    r.parameters.push("k", k);
    let (status, detail, ok) = colorful_outcome(colorful_helly_points(&fams, k))?;
    r.pass = ok;
    r.rows.push(
        Row::new()
            .with("claim", "minimizing")
            .with("status", status),
    );
    // Fixed claim families are exploratory: reported, never part of the verdict.
    let mut fixed = Vec::new();
    if rotate {
        for rot in 0..fams.len() {
            let (status, detail, _) = colorful_outcome(colorful_helly_points_fixed(&fams, k, rot))?;
            fixed.push(json!({ "rotation": rot, "status": status, "detail": detail }));
            r.rows.push(
                Row::new()
                    .with("claim", format!("rotation-{rot}"))
                    .with("status", status),
            );
        }
    }
    r.results = json!({ "status": status, "detail": detail, "fixed_claim": fixed });
    Ok(Output::report(r))
}

fn cmd_frac(args: &InputArgs, k: usize) -> Result<Output, CliError> {
    let doc = load(args)?;
    let h = frac_helly_stats(&doc.instance.family(0), k)?;
    Ok(Output::report(helly_report(base("frac-helly", &doc), &h)))
}

fn cmd_cfh(args: &InputArgs) -> Result<Output, CliError> {
    let doc = load(args)?;
    let h = cfh_stats(&doc.instance.family_sets())?;
    Ok(Output::report(helly_report(base("cfh", &doc), &h)))
}

fn cmd_pierce(args: &InputArgs, guards: &Guards) -> Result<Output, CliError> {
    let doc = load(args)?;
    let p = pierce(&doc.instance.family(0), guards)?;
    let mut r = base("pierce", &doc);
    r.pass = p.sandwich_holds();
    r.results = json!({
        "tau": p.tau,
        "nu": p.nu,
        "tau_star": rat_value(&p.tau_star),
        "nu_star": rat_value(&p.nu_star),
        "certificate": p.certificate,
        "piercing_points": p.piercing_points,
        "matching": p.matching,
        "set_weights": p.set_weights.iter().map(rat_value).collect::<Vec<_>>(),
        "point_weights": p.point_weights.iter().map(|(pt, w)| json!({"point": pt, "weight": rat_value(w)})).collect::<Vec<_>>(),
    });
    r.rows.push(
        Row::new()
            .with("tau", p.tau)
            .with("nu", p.nu)
            .with("tau_star", p.tau_star.clone())
            .with("nu_star", p.nu_star.clone())
            .with("certificate", p.certificate),
    );
    Ok(Output::report(r))
}

fn cmd_pq(args: &InputArgs, p: usize, q: usize, kind: PqKind) -> Result<Output, CliError> {
    let doc = load(args)?;
    let o = pq_check(&doc.instance.family_sets(), p, q, kind)?;
    let mut r = base("pq-check", &doc);
    r.parameters.push("p", p);
    r.parameters.push("q", q);
    r.parameters.push(
        "kind",
        serde_json::to_value(kind)?
            .as_str()
            .unwrap_or_default()
            .to_string(),
    );
    r.pass = o.holds;
    r.results = serde_json::to_value(&o)?;
    r.rows.push(Row::new().with("holds", o.holds));
    Ok(Output::report(r))
}

fn gen_spec(args: &GenArgs) -> Result<GenSpec, CliError> {
    if let Some(path) = &args.spec {
        let text =
            fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        return Ok(serde_json::from_str(&text)?);
    }
    let points_per_level = match args.points.as_slice() {
        [c] => vec![*c; args.d],
        many if many.len() == args.d => many.to_vec(),
        many => {
            return Err(CliError(format!(
                "--points lists {} levels, d = {}",
                many.len(),
                args.d
            )))
        }
    };
    let top = points_per_level.iter().copied().max().unwrap_or(1);
    let mut spec = GenSpec::uniform(args.d, top, args.n, args.seed);
    spec.points_per_level = points_per_level;
    spec.presence = args.presence.clone();
    spec.width_min = args.width_min;
    spec.width_max = args.width_max.unwrap_or(top);
    spec.families = args.families;
    Ok(spec)
}

fn cmd_gen(args: &GenArgs) -> Result<Output, CliError> {
    let mut spec = gen_spec(args)?;
    if let Some(text) = &args.predicate {
        spec.predicate = Some(serde_json::from_str::<Predicate>(text)?);
    }
    let mut r = Report::new("gen");
    r.parameters = Row::new().with("spec", serde_json::to_string(&spec)?);
    r.seed = Some(spec.seed);
    let instance = match &spec.predicate {
        None => gen_instance(&spec)?,
        Some(pred) => match gen_conditioned(&spec, pred, args.cap)? {
            Conditioned::Found {
                instance,
                stream,
                draws,
            } => {
                r.results = json!({ "stream": stream, "draws": draws });
                instance
            }
            Conditioned::NotFound { draws } => {
                r.pass = false;
                r.results = json!({ "found": false, "draws": draws });
                r.rows.push(
                    Row::new()
                        .with("found", false)
                        .with("draws", draws as usize),
                );
                return Ok(Output::report(r));
            }
        },
    };
    let instance = match args.lower_bound {
        None => instance,
        Some(LowerBound::Helly) => {
            let sets = gen_helly_lower_bound(&instance.ground, None)?;
            Instance::single(instance.ground, sets)
        }
        Some(LowerBound::Radon) => {
            let pts = gen_radon_lower_bound(&instance.ground, None)?;
            let sets = pts
                .iter()
                .map(|p| hull(&instance.ground, std::slice::from_ref(p)))
                .collect::<Result<Vec<TraceSet>, _>>()?;
            Instance::single(instance.ground, sets)
        }
    };
    r.rows.push(
        Row::new()
            .with("found", true)
            .with("sets", instance.sets.len()),
    );
    let document = serialize_instance(&InstanceDoc::from_instance(instance));
    Ok(Output {
        report: r,
        document: Some(document),
    })
}

fn cmd_experiment(
    suite: Suite,
    trials: Option<usize>,
    seed: u64,
    d: Option<&[usize]>,
    guards: &Guards,
) -> Result<Output, CliError> {
    let mut cfg = SuiteConfig::defaults(suite, seed);
    if let Some(t) = trials {
        cfg.trials = t;
    }
    if let Some(dims) = d {
        if dims.is_empty() || dims.iter().any(|&x| x == 0 || x > 6) {
            return Err(CliError("--d entries must lie in [1, 6]".into()));
        }
        cfg.dims = dims.to_vec();
    }
    Ok(Output::report(experiment_report(suite, &cfg, guards)))
}

/// Runs a parsed command. Timing is filled in here.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let mut guards = Guards::from_env();
    if let Some(spec) = &cli.guards {
        guards = guards.with_overrides(spec);
    }
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Nerve(a) => cmd_nerve(a, &guards),
        Command::Collapse(a) => cmd_collapse(a, &guards),
        Command::DcollapseOracle { input, b, facets } => {
            cmd_oracle(input, *b, facets.as_deref(), &guards)
        }
        Command::Radon { input, subset } => cmd_radon(input, subset.as_deref(), &guards),
        Command::Helly { input, m, k } => cmd_helly(input, *m, *k),
        Command::ColorfulHelly { input, k, rotate } => cmd_colorful(input, *k, *rotate),
        Command::FracHelly { input, k } => cmd_frac(input, *k),
        Command::Cfh(a) => cmd_cfh(a),
        Command::Pierce(a) => cmd_pierce(a, &guards),
        Command::PqCheck { input, p, q, kind } => cmd_pq(input, *p, *q, (*kind).into()),
        Command::Gen(g) => cmd_gen(g),
        Command::Experiment {
            suite,
            trials,
            seed,
            d,
        } => cmd_experiment(*suite, *trials, *seed, d.as_deref(), &guards),
    }?;
    out.report.timing.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(out)
}

fn write_text(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::write(p, text),
        _ => io::stdout().write_all(text.as_bytes()),
    }
}

/// Parses `argv`, runs the command, writes its output and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let format = match cli.format {
        OutFormat::Json => Format::Json,
        OutFormat::Csv => Format::Csv,
    };
    let written = match &out.document {
        Some(doc) => write_text(cli.out.as_deref(), doc),
        None => emit_report(&out.report, format, cli.out.as_deref()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if !out.report.pass {
        eprintln!("{}: verdict failed", out.report.command);
    }
    out.exit_code()
}
