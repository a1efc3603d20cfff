//! Seeded corpus runs. Each suite draws its instances from
//! `(seed, trial index)`, evaluates them in parallel, and reports rows in
//! trial order, so a run is reproducible byte for byte.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::complex::{is_d_collapsible, SimplicialComplex};
use crate::generators::{
    gen_conditioned, gen_helly_lower_bound, gen_instance, gen_radon_lower_bound, Conditioned,
    GenSpec, Instance, Predicate, DEFAULT_DRAW_CAP,
};
use crate::guards::Guards;
use crate::helly::{
    cfh_stats, colorful_helly_points, colorful_helly_points_fixed, frac_helly_stats, helly_check,
    lemma2_holds, lemma2_witness, max_intersecting, radon_number_bruteforce, radon_partition,
    HellyError, RadonNumber,
};
use crate::interval::{f_value, intersect_indices, Point, PointSet, TraceSet};
use crate::piercing::{blow_up, fractional_lp, pierce, tardos_kaiser_check, PqKind};
use crate::rat::Rat;
use crate::report::{Report, Row};
use crate::sweep::{nerve, sweep_collapse, SweepError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Collapse,
    Radon,
    Helly,
    Colorful,
    Fractional,
    Lemma2,
    Lp,
    TardosKaiser,
    Oracle,
    Blowup,
    PqTau,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Collapse,
        Suite::Radon,
        Suite::Helly,
        Suite::Colorful,
        Suite::Fractional,
        Suite::Lemma2,
        Suite::Lp,
        Suite::TardosKaiser,
        Suite::Oracle,
        Suite::Blowup,
        Suite::PqTau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Collapse => "collapse",
            Suite::Radon => "radon",
            Suite::Helly => "helly",
            Suite::Colorful => "colorful",
            Suite::Fractional => "fractional",
            Suite::Lemma2 => "lemma2",
            Suite::Lp => "lp",
            Suite::TardosKaiser => "tardos-kaiser",
            Suite::Oracle => "oracle",
            Suite::Blowup => "blowup",
            Suite::PqTau => "pq-tau",
        }
    }

    /// Trial count used when none is given.
    pub fn default_trials(self) -> usize {
        match self {
            Suite::Collapse => 1000,
            Suite::Radon => 60,
            Suite::Helly => 300,
            Suite::Colorful => 200,
            Suite::Fractional => 500,
            Suite::Lemma2 => 300,
            Suite::Lp => 200,
            Suite::TardosKaiser => 300,
            Suite::Oracle => 100,
            Suite::Blowup => 200,
            Suite::PqTau => 40,
        }
    }

    pub fn default_dims(self) -> Vec<usize> {
        match self {
            Suite::Oracle => vec![1, 2],
            Suite::TardosKaiser => vec![2, 3],
            _ => vec![1, 2, 3],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown suite `{s}`; expected one of {}",
                    Suite::ALL.iter().join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// For `colorful` this is per `(d, k)`, for `fractional` per `d`.
    pub trials: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
}

impl SuiteConfig {
    pub fn defaults(suite: Suite, seed: u64) -> Self {
        SuiteConfig {
            trials: suite.default_trials(),
            seed,
            dims: suite.default_dims(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub pass: bool,
    pub rows: Vec<Row>,
    pub summary: Row,
}

fn rng_for(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Random spec: per-level counts in `counts`, `n` sets, widths up to the
/// level size (at least half of it when `wide`).
fn random_spec(
    rng: &mut ChaCha8Rng,
    d: usize,
    n: usize,
    counts: (usize, usize),
    presence: Rat,
    wide: bool,
) -> GenSpec {
    let points_per_level: Vec<usize> = (0..d)
        .map(|_| rng.random_range(counts.0..=counts.1))
        .collect();
    let top = *points_per_level.iter().max().unwrap_or(&1);
    GenSpec {
        d,
        points_per_level,
        coord_min: 0,
        coord_max: 2 * counts.1 as i64,
        n,
        presence,
        width_min: if wide { top.div_ceil(2).max(1) } else { 1 },
        width_max: top.max(1),
        families: 1,
        seed: rng.random(),
        predicate: None,
    }
}

fn pick_d(dims: &[usize], trial: usize) -> usize {
    dims[trial % dims.len()]
}

fn run_rows<F>(trials: usize, f: F) -> Vec<(bool, Row)>
where
    F: Fn(usize) -> (bool, Row) + Sync + Send,
{
    (0..trials).into_par_iter().map(f).collect()
}

fn finish(
    suite: Suite,
    results: Vec<(bool, Row)>,
    mut summary: Row,
    extra_ok: bool,
) -> SuiteOutcome {
    let failures = results.iter().filter(|(ok, _)| !ok).count();
    summary.push("instances", results.len());
    summary.push("failures", failures);
    SuiteOutcome {
        suite,
        pass: failures == 0 && extra_ok,
        rows: results.into_iter().map(|(_, r)| r).collect(),
        summary,
    }
}

fn sweep_failure(e: &SweepError) -> String {
    match e {
        SweepError::FamilyMismatch(m) => format!("family-mismatch@{}", m.step),
        SweepError::NotFree { step, .. } => format!("not-free@{step}"),
        SweepError::SupportTooLarge { step, .. } => format!("support-too-large@{step}"),
        SweepError::Guard(g) => format!("guard:{g}"),
        SweepError::MixedGround => "mixed-ground".into(),
        SweepError::Complex(c) => format!("complex:{c}"),
    }
}

/// Sweep outcome: `Ok(max free-face dim)` when the sweep finished, replayed
/// and respected `2d − 2`; otherwise a failure tag.
fn sweep_and_verify(
    family: &[TraceSet],
    d: usize,
    guards: &Guards,
) -> Result<(usize, isize), String> {
    let seq = sweep_collapse(family, guards).map_err(|e| sweep_failure(&e))?;
    let k = nerve(family, guards).map_err(|e| sweep_failure(&e))?;
    seq.replay(&k).map_err(|e| format!("replay:{e}"))?;
    let max_dim = seq.max_face_dim();
    if max_dim > 2 * d as isize - 2 {
        return Err(format!("dimension {max_dim}"));
    }
    Ok((seq.steps.len(), max_dim))
}

fn collapse_family(rng: &mut ChaCha8Rng, d: usize) -> Instance {
    let n = rng.random_range(2..=8);
    let spec = random_spec(rng, d, n, (1, 6), Rat::new(3, 4), false);
    gen_instance(&spec).expect("valid spec")
}

fn suite_collapse(cfg: &SuiteConfig, guards: &Guards) -> SuiteOutcome {
    let results = run_rows(cfg.trials, |i| {
        let mut rng = rng_for(cfg.seed, i);
        let d = pick_d(&cfg.dims, i);
        let inst = collapse_family(&mut rng, d);
        let mut row = Row::new()
            .with("trial", i)
            .with("d", d)
            .with("n", inst.sets.len())
            .with("points", inst.ground.len());
        match sweep_and_verify(&inst.sets, d, guards) {
            Ok((steps, dim)) => {
                row.push("ok", true);
                row.push("steps", steps);
                row.push("max_dim", dim as i64);
                row.push("failure", "");
                (true, row)
            }
            Err(tag) => {
                row.push("ok", false);
                row.push("steps", 0usize);
                row.push("max_dim", -1i64);
                row.push("failure", tag);
                (false, row)
            }
        }
    });
    let mut summary = Row::new();
    for &d in &cfg.dims {
        let fails = results
            .iter()
            .filter(|(ok, r)| !ok && r.get("d") == Some(&(d).into()))
            .count();
        summary.push(&format!("failures_d{d}"), fails);
    }
    finish(Suite::Collapse, results, summary, true)
}

fn hollow_triangle_ok(guards: &Guards) -> bool {
    let k = SimplicialComplex::from_facets(vec![1, 2, 3], &[vec![1, 2], vec![2, 3], vec![1, 3]])
        .expect("valid");
    let not_one = matches!(is_d_collapsible(&k, 1, guards), Ok(None));
    let two = matches!(is_d_collapsible(&k, 2, guards), Ok(Some(seq)) if seq.replay(&k).is_ok());
    not_one && two
}

fn suite_oracle(cfg: &SuiteConfig, guards: &Guards) -> SuiteOutcome {
    let triangle = hollow_triangle_ok(guards);
    let results = run_rows(cfg.trials, |i| {
        let mut rng = rng_for(cfg.seed, i);
        let d = pick_d(&cfg.dims, i);
        let inst = collapse_family(&mut rng, d);
        let k = nerve(&inst.sets, guards).expect("within guard");
        let oracle = match is_d_collapsible(&k, 2 * d - 1, guards) {
            Ok(Some(seq)) => seq.replay(&k).is_ok(),
            _ => false,
        };
        let sweep = sweep_and_verify(&inst.sets, d, guards);
        let agree = oracle == sweep.is_ok();
        let row = Row::new()
            .with("trial", i)
            .with("d", d)
            .with("n", inst.sets.len())
            .with("faces", k.face_count())
            .with("oracle_collapsible", oracle)
            .with("sweep_ok", sweep.is_ok())
            .with("sweep_failure", sweep.err().unwrap_or_default())
            .with("agree", agree);
        (agree, row)
    });
    let oracle_negative = results
        .iter()
        .filter(|(_, r)| r.get("oracle_collapsible") == Some(&false.into()))
        .count();
    let summary = Row::new()
        .with("hollow_triangle_ok", triangle)
        .with("oracle_negative", oracle_negative);
    finish(Suite::Oracle, results, summary, triangle)
}

fn random_ground(rng: &mut ChaCha8Rng, d: usize, counts: &[usize]) -> Arc<PointSet> {
    let pts = counts.iter().enumerate().flat_map(|(l, &c)| {
        let mut xs: Vec<i64> = rand::seq::index::sample(rng, 3 * c, c)
            .into_iter()
            .map(|x| x as i64)
            .collect();
        xs.sort_unstable();
        xs.into_iter()
            .map(move |x| Point::new(x, l + 1))
            .collect::<Vec<_>>()
    });
    Arc::new(PointSet::new(d, pts.collect::<Vec<_>>()).expect("distinct"))
}

fn suite_radon(cfg: &SuiteConfig, guards: &Guards) -> SuiteOutcome {
    let results = run_rows(cfg.trials, |i| {
        let mut rng = rng_for(cfg.seed, i);
        let d = pick_d(&cfg.dims, i);
        let per_level_max = (12 / d).min(6);
        let counts: Vec<usize> = (0..d)
            .map(|_| rng.random_range(2..=per_level_max))
            .collect();
        let ground = random_ground(&mut rng, d, &counts);
        let all = ground.points();
        let mut subsets = 0usize;
        let mut partitions_ok = true;
        for a in all.iter().cloned().combinations(2 * d + 1) {
            subsets += 1;
            match radon_partition(&ground, &a) {
                Ok(Some(p)) if p.verify(&ground) => {}
                _ => partitions_ok = false,
            }
        }
        let lower = gen_radon_lower_bound(&ground, None).expect("two points per level");
        let lower_ok = matches!(radon_partition(&ground, &lower), Ok(None));
        let number = radon_number_bruteforce(&ground, 2 * d + 2, guards);
        let number_ok = matches!(number, Ok(RadonNumber::Exactly(r)) if r == 2 * d + 1);
        let ok = partitions_ok && lower_ok && number_ok;
        let row = Row::new()
            .with("trial", i)
            .with("d", d)
            .with("points", ground.len())
            .with("subsets", subsets)
            .with("partitions_ok", partitions_ok)
            .with("lower_bound_ok", lower_ok)
            .with(
                "radon_number",
                match number {
                    Ok(RadonNumber::Exactly(r)) => r.to_string(),
                    Ok(RadonNumber::AboveCap(c)) => format!(">{c}"),
                    Err(e) => e.to_string(),
                },
            )
            .with("ok", ok);
        (ok, row)
    });
    finish(Suite::Radon, results, Row::new(), true)
}

fn suite_helly(cfg: &SuiteConfig, guards: &Guards) -> SuiteOutcome {
    let _ = guards;
    let results = run_rows(cfg.trials, |i| {
        let mut rng = rng_for(cfg.seed, i);
        let d = pick_d(&cfg.dims, i);
        let n = rng.random_range(1..=10);
        let spec = random_spec(&mut rng, d, n, (1, 6), Rat::new(3, 4), true);
        let inst = gen_instance(&spec).expect("valid spec");
        let at_2d = helly_check(&inst.sets, 2 * d, 1).expect("k = 1");

        let counts: Vec<usize> = (0..d).map(|_| rng.random_range(2..=6)).collect();
        let ground = random_ground(&mut rng, d, &counts);
        let designated: Vec<(Rat, Rat)> = (1..=d)
            .map(|l| {
                let c = ground.level(l);
                let a = rng.random_range(0..c.len() - 1);
                let b = rng.random_range(a + 1..c.len());
                (c[a].clone(), c[b].clone())
            })
            .collect();
        let lower =
            gen_helly_lower_bound(&ground, Some(&designated)).expect("valid designated points");
        let lower_violates = !helly_check(&lower, 2 * d - 1, 1).expect("k = 1").verdict;
        let ok = at_2d.verdict && lower_violates;
        let row = Row::new()
            .with("trial", i)
            .with("d", d)
            .with("n", n)
            .with("helly_2d_ok", at_2d.verdict)
            .with("lower_bound_violates", lower_violates)
            .with("ok", ok);
        (ok, row)
    });
    finish(Suite::Helly, results, Row::new(), true)
}

fn colorful_spec(rng: &mut ChaCha8Rng, d: usize, k: usize) -> GenSpec {
    let presence = if k == 1 { Rat::new(7, 8) } else { Rat::one() };
    let n = rng.random_range(1..=3);
    let mut spec = random_spec(rng, d, n, (3, 6), presence, true);
    spec.families = 2 * d - k + 1;
    spec
}

fn suite_colorful(cfg: &SuiteConfig, _guards: &Guards) -> SuiteOutcome {
    let combos: Vec<(usize, usize)> = cfg
        .dims
        .iter()
        .flat_map(|&d| (1..=d).map(move |k| (d, k)))
        .collect();
    let total = combos.len() * cfg.trials;
    let results = run_rows(total, |i| {
        let (d, k) = combos[i / cfg.trials];
        let mut rng = rng_for(cfg.seed, i);
        let spec = colorful_spec(&mut rng, d, k);
        let pred = Predicate::ColorfulHelly { k };
        let mut row = Row::new().with("trial", i).with("d", d).with("k", k);
        match gen_conditioned(&spec, &pred, DEFAULT_DRAW_CAP) {
            Ok(Conditioned::Found {
                instance, draws, ..
            }) => {
                let fams = instance.family_sets();
                let outcome = colorful_helly_points(&fams, k);
                let fixed_failures = (0..fams.len())
                    .filter(|&r| {
                        matches!(
                            colorful_helly_points_fixed(&fams, k, r),
                            Err(HellyError::TheoremViolation { .. })
                        )
                    })
                    .count();
                let ok = match &outcome {
                    Ok(pts) => {
                        pts.points.len() == k
                            && fams[pts.claim_family]
                                .iter()
                                .all(|c| pts.points.iter().all(|p| c.contains_point(p)))
                    }
                    Err(_) => false,
                };
                row.push("draws", draws as usize);
                row.push("sets", instance.sets.len());
                row.push("claim_ok", ok);
                row.push(
                    "diagnostic",
                    outcome.err().map(|e| e.to_string()).unwrap_or_default(),
                );
                row.push("fixed_claim_failures", fixed_failures);
                (ok, row)
            }
            Ok(Conditioned::NotFound { draws }) => {
                row.push("draws", draws as usize);
                row.push("sets", 0usize);
                row.push("claim_ok", false);
                row.push("diagnostic", "could not sample");
                row.push("fixed_claim_failures", 0usize);
                (false, row)
            }
            Err(e) => {
                row.push("draws", 0usize);
                row.push("sets", 0usize);
                row.push("claim_ok", false);
                row.push("diagnostic", e.to_string());
                row.push("fixed_claim_failures", 0usize);
                (false, row)
            }
        }
    });
    let fixed_failures: usize = results
        .iter()
        .map(|(_, r)| match r.get("fixed_claim_failures") {
            Some(crate::report::Cell::Int(v)) => *v as usize,
            _ => 0,
        })
        .sum();
    finish(
        Suite::Colorful,
        results,
        Row::new().with("fixed_claim_failures", fixed_failures),
        true,
    )
}

fn suite_fractional(cfg: &SuiteConfig, _guards: &Guards) -> SuiteOutcome {
    let total = cfg.dims.len() * cfg.trials;
    let results = run_rows(total, |i| {
        let d = cfg.dims[i / cfg.trials];
        let mut rng = rng_for(cfg.seed, i);
        let n = rng.random_range(2 * d..=2 * d + 3);
        let wide = rng.random_bool(0.5);
        let spec = random_spec(&mut rng, d, n, (2, 5), Rat::new(3, 4), wide);
        let inst = gen_instance(&spec).expect("valid spec");
        let mut row = Row::new().with("trial", i).with("d", d).with("n", n);
        let mut ok = true;
        for k in 1..=d {
            let r = frac_helly_stats(&inst.sets, k).expect("n >= 2d - k + 1");
            ok &= r.verdict;
            row.push(&format!("alpha_k{k}"), r.stats["alpha"].clone());
            row.push(&format!("beta_hat_k{k}"), r.stats["beta_hat"].clone());
        }
        for k in d + 1..=3 {
            row.push(&format!("alpha_k{k}"), Rat::zero());
            row.push(&format!("beta_hat_k{k}"), Rat::zero());
        }
        let cn = rng.random_range(1..=3);
        let mut cspec = random_spec(&mut rng, d, cn, (2, 5), Rat::new(3, 4), true);
        cspec.families = 2 * d;
        let cinst = gen_instance(&cspec).expect("valid spec");
        let c = cfh_stats(&cinst.family_sets()).expect("2d nonempty families");
        ok &= c.verdict;
        row.push("cfh_alpha", c.stats["alpha"].clone());
        row.push("cfh_ok", c.verdict);
        row.push("ok", ok);
        (ok, row)
    });
    finish(Suite::Fractional, results, Row::new(), true)
}

/// Brute force: some subfamily of at most `2d − k` sets has the same sweep value.
fn lemma2_bruteforce(family: &[TraceSet], d: usize, k: usize) -> bool {
    let all: Vec<usize> = (0..family.len()).collect();
    let target = f_value(&intersect_indices(family, &all).expect("nonempty family"));
    (1..=(2 * d - k).min(family.len())).any(|s| {
        all.iter()
            .copied()
            .combinations(s)
            .any(|c| f_value(&intersect_indices(family, &c).expect("s >= 1")) == target)
    })
}

fn suite_lemma2(cfg: &SuiteConfig, _guards: &Guards) -> SuiteOutcome {
    let results = run_rows(cfg.trials, |i| {
        let mut rng = rng_for(cfg.seed, i);
        let d = pick_d(&cfg.dims, i);
        let n = rng.random_range(1..=7);
        let spec = random_spec(&mut rng, d, n, (2, 6), Rat::new(7, 8), true);
        let inst = gen_instance(&spec).expect("valid spec");
        let mut applicable = 0usize;
        let mut ok = true;
        for k in 1..=d {
            match lemma2_witness(&inst.sets, k) {
                Ok(w) => {
                    applicable += 1;
                    ok &= lemma2_holds(&inst.sets, k, &w) && lemma2_bruteforce(&inst.sets, d, k);
                }
                Err(HellyError::NotKIntersecting { .. }) => {}
                Err(_) => ok = false,
            }
        }
        let row = Row::new()
            .with("trial", i)
            .with("d", d)
            .with("n", n)
            .with("applicable_k", applicable)
            .with("ok", ok);
        (ok, row)
    });
    let applicable: i64 = results
        .iter()
        .map(|(_, r)| match r.get("applicable_k") {
            Some(crate::report::Cell::Int(v)) => *v,
            _ => 0,
        })
        .sum();
    finish(
        Suite::Lemma2,
        results,
        Row::new().with("applicable_cases", applicable),
        applicable > 0,
    )
}

/// The d = 2 triple with `τ = 2`, `ν = 1`, `τ* = ν* = 3/2`.
pub fn plane_triple() -> Vec<TraceSet> {
    let ground =
        Arc::new(PointSet::from_int_levels(&[&[0, 1, 2, 4, 5], &[0, 1, 2, 3]]).expect("distinct"));
    let boxes = [[(0, 1), (0, 1)], [(1, 2), (2, 3)], [(4, 5), (1, 2)]];
    boxes
        .iter()
        .map(|b| {
            let pts: Vec<Point> = b
                .iter()
                .enumerate()
                .flat_map(|(l, &(lo, hi))| [Point::new(lo, l + 1), Point::new(hi, l + 1)])
                .collect();
            crate::interval::hull(&ground, &pts).expect("points in ground")
        })
        .collect()
}

fn triple_ok(guards: &Guards) -> (bool, bool) {
    let fam = plane_triple();
    let Ok(r) = pierce(&fam, guards) else {
        return (false, false);
    };
    let lp = r.tau == 2
        && r.nu == 1
        && r.tau_star == Rat::new(3, 2)
        && r.nu_star == Rat::new(3, 2)
        && r.certificate;
    let tk =
        matches!(tardos_kaiser_check(&fam, guards), Ok(t) if t.tau == 2 && t.bound == 2 && t.holds);
    (lp, tk)
}

fn suite_lp(cfg: &SuiteConfig, guards: &Guards) -> SuiteOutcome {
    let (triple, _) = triple_ok(guards);
    let results = run_rows(cfg.trials, |i| {
        let mut rng = rng_for(cfg.seed, i);
        let d = pick_d(&cfg.dims, i);
        let n = rng.random_range(1..=10);
        let wide = rng.random_bool(0.5);
        let spec = random_spec(&mut rng, d, n, (1, 6), Rat::new(3, 4), wide);
        let inst = gen_instance(&spec).expect("valid spec");
        let r = pierce(&inst.sets, guards).expect("within guard");
        let lp = fractional_lp(&inst.sets, guards).expect("within guard");
        let recheck = lp.problem.verify(&lp.solution);
        let ok = r.certificate && recheck && r.sandwich_holds();
        let row = Row::new()
            .with("trial", i)
            .with("d", d)
            .with("n", n)
            .with("nu", r.nu)
            .with("nu_star", r.nu_star)
            .with("tau_star", r.tau_star)
            .with("tau", r.tau)
            .with("certificate", recheck)
            .with("ok", ok);
        (ok, row)
    });
    finish(
        Suite::Lp,
        results,
        Row::new().with("triple_ok", triple),
        triple,
    )
}

fn suite_tk(cfg: &SuiteConfig, guards: &Guards) -> SuiteOutcome {
    let (_, triple) = triple_ok(guards);
    let results = run_rows(cfg.trials, |i| {
        let mut rng = rng_for(cfg.seed, i);
        let d = pick_d(&cfg.dims, i);
        let n = rng.random_range(1..=12);
        let spec = random_spec(&mut rng, d, n, (1, 6), Rat::new(3, 4), false);
        let inst = gen_instance(&spec).expect("valid spec");
        let t = tardos_kaiser_check(&inst.sets, guards).expect("within guard");
        let row = Row::new()
            .with("trial", i)
            .with("d", d)
            .with("n", n)
            .with("tau", t.tau)
            .with("nu", t.nu)
            .with("bound", t.bound)
            .with("ok", t.holds);
        (t.holds, row)
    });
    finish(
        Suite::TardosKaiser,
        results,
        Row::new().with("triple_tight", triple),
        triple,
    )
}

fn suite_blowup(cfg: &SuiteConfig, guards: &Guards) -> SuiteOutcome {
    let results = run_rows(cfg.trials, |i| {
        let mut rng = rng_for(cfg.seed, i);
        let d = pick_d(&cfg.dims, i);
        let n = rng.random_range(1..=8);
        let spec = random_spec(&mut rng, d, n, (1, 5), Rat::new(3, 4), false);
        let inst = gen_instance(&spec).expect("valid spec");
        let mut mult: Vec<usize> = (0..n).map(|_| rng.random_range(0..=3)).collect();
        if mult.iter().all(|&m| m == 0) {
            mult[0] = 1;
        }
        let b = blow_up(&inst.sets, &mult).expect("lengths match");
        let nu_star = fractional_lp(&inst.sets, guards)
            .expect("within guard")
            .solution
            .objective;
        let (best, _) = max_intersecting(&b.sets);
        // best >= |F*| / ν*  ⇔  best · ν* >= |F*|
        let ok = &Rat::from_int(best as i64) * &nu_star >= Rat::from_int(b.sets.len() as i64);
        let row = Row::new()
            .with("trial", i)
            .with("d", d)
            .with("n", n)
            .with("blown_up", b.sets.len())
            .with("nu_star", nu_star)
            .with("max_intersecting", best)
            .with("ok", ok);
        (ok, row)
    });
    finish(Suite::Blowup, results, Row::new(), true)
}

fn suite_pq_tau(cfg: &SuiteConfig, guards: &Guards) -> SuiteOutcome {
    let combos: Vec<(usize, usize)> = cfg
        .dims
        .iter()
        .flat_map(|&d| [2usize, 3, 4].map(|p| (d, p)))
        .collect();
    let total = combos.len() * cfg.trials;
    let results = run_rows(total, |i| {
        let (d, p) = combos[i / cfg.trials];
        let mut rng = rng_for(cfg.seed, i);
        let n = rng.random_range(p..=p + 6);
        let spec = random_spec(&mut rng, d, n, (2, 6), Rat::new(3, 4), true);
        let pred = Predicate::Pq {
            p,
            q: 2,
            pq_kind: PqKind::Plain,
        };
        let mut row = Row::new().with("trial", i).with("d", d).with("p", p);
        match gen_conditioned(&spec, &pred, 2_000) {
            Ok(Conditioned::Found { instance, .. }) => {
                let tau = pierce(&instance.sets, guards)
                    .map(|r| r.tau)
                    .unwrap_or(usize::MAX);
                row.push("found", true);
                row.push("tau", tau);
                (tau != usize::MAX, row)
            }
            _ => {
                row.push("found", false);
                row.push("tau", 0usize);
                (true, row)
            }
        }
    });
    let mut summary = Row::new();
    for &(d, p) in &combos {
        let max_tau = results
            .iter()
            .filter(|(_, r)| r.get("d") == Some(&d.into()) && r.get("p") == Some(&p.into()))
            .filter_map(|(_, r)| match r.get("tau") {
                Some(crate::report::Cell::Int(v)) => Some(*v),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        summary.push(&format!("max_tau_d{d}_p{p}"), max_tau);
    }
    finish(Suite::PqTau, results, summary, true)
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig, guards: &Guards) -> SuiteOutcome {
    match suite {
        Suite::Collapse => suite_collapse(cfg, guards),
        Suite::Radon => suite_radon(cfg, guards),
        Suite::Helly => suite_helly(cfg, guards),
        Suite::Colorful => suite_colorful(cfg, guards),
        Suite::Fractional => suite_fractional(cfg, guards),
        Suite::Lemma2 => suite_lemma2(cfg, guards),
        Suite::Lp => suite_lp(cfg, guards),
        Suite::TardosKaiser => suite_tk(cfg, guards),
        Suite::Oracle => suite_oracle(cfg, guards),
        Suite::Blowup => suite_blowup(cfg, guards),
        Suite::PqTau => suite_pq_tau(cfg, guards),
    }
}

/// A suite run as a report (timing left for the caller to fill in).
pub fn experiment_report(suite: Suite, cfg: &SuiteConfig, guards: &Guards) -> Report {
    let outcome = run_suite(suite, cfg, guards);
    let mut report = Report::new("experiment");
    report.parameters = Row::new()
        .with("suite", suite.name())
        .with("trials", cfg.trials)
        .with("dims", cfg.dims.iter().join(","));
    report.seed = Some(cfg.seed);
    report.pass = outcome.pass;
    report.results =
        json!({ "suite": suite.name(), "pass": outcome.pass, "summary": outcome.summary });
    report.rows = outcome.rows;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> SuiteConfig {
        SuiteConfig {
            trials: 6,
            seed: 11,
            dims: suite.default_dims(),
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let g = Guards::default();
        for suite in [Suite::Collapse, Suite::Lp, Suite::Lemma2] {
            let a = experiment_report(suite, &small(suite), &g).to_json_untimed();
            let b = experiment_report(suite, &small(suite), &g).to_json_untimed();
            assert_eq!(a, b, "{suite}");
        }
    }

    #[test]
    fn small_suites_pass() {
        let g = Guards::default();
        for suite in [
            Suite::Radon,
            Suite::Helly,
            Suite::Lp,
            Suite::TardosKaiser,
            Suite::Blowup,
        ] {
            let out = run_suite(
                suite,
                &SuiteConfig {
                    trials: 4,
                    seed: 5,
                    dims: suite.default_dims(),
                },
                &g,
            );
            assert!(out.pass, "{suite}: {:?}", out.summary);
        }
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
