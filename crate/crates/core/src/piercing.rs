//! Transversal and matching numbers, their LP relaxations, (p,q) checks,
//! blow-ups and the Tardos–Kaiser comparison.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::guards::{GuardError, Guards};
use crate::interval::{Point, PointId, TraceSet};
use crate::lp::{LPProblem, LPSolution, LpError};
use crate::rat::Rat;

#[derive(Debug, Clone, Error)]
pub enum PiercingError {
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("set {0} is empty, so no transversal exists")]
    EmptySet(usize),
    #[error("traces reference different ground sets")]
    MixedGround,
    #[error("{kind} needs {expected}, got {found}")]
    Arity {
        kind: &'static str,
        expected: String,
        found: String,
    },
    #[error("multiplicities have length {found}, family has {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// Candidate points (covered by some set) and, per candidate, the mask of
/// sets containing it.
struct Incidence {
    points: Vec<PointId>,
    covers: Vec<u64>,
}

fn incidence(family: &[TraceSet], guards: &Guards) -> Result<Incidence, PiercingError> {
    Guards::check("piercing", family.len(), guards.piercing.min(63))?;
    let Some(first) = family.first() else {
        return Ok(Incidence {
            points: Vec::new(),
            covers: Vec::new(),
        });
    };
    if family.iter().any(|t| !t.same_ground(first)) {
        return Err(PiercingError::MixedGround);
    }
    if let Some(i) = family.iter().position(TraceSet::is_empty) {
        return Err(PiercingError::EmptySet(i));
    }
    let mut points = Vec::new();
    let mut covers = Vec::new();
    for id in first.ground().ids() {
        let mask = family
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(id))
            .fold(0u64, |m, (j, _)| m | 1 << j);
        if mask != 0 {
            points.push(id);
            covers.push(mask);
        }
    }
    Ok(Incidence { points, covers })
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Pairwise-meeting masks: bit `j` of `meets[i]` is set when sets `i`, `j` meet.
fn meet_masks(family: &[TraceSet]) -> Vec<u64> {
    (0..family.len())
        .map(|i| {
            (0..family.len())
                .filter(|&j| j != i && family[i].meets(&family[j]))
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect()
}

/// Size of a greedy packing of pairwise-disjoint sets inside `sets`; each
/// needs its own piercing point, so this bounds τ of `sets` from below.
fn packing_bound(sets: u64, meets: &[u64]) -> usize {
    let mut left = sets;
    let mut count = 0;
    while left != 0 {
        let j = (0..64)
            .filter(|b| left >> b & 1 == 1)
            .min_by_key(|&b| (meets[b] & left).count_ones())
            .expect("nonempty");
        left &= !(meets[j] | 1 << j);
        count += 1;
    }
    count
}

struct TauSearch<'a> {
    covers: &'a [u64],
    meets: &'a [u64],
    floor: usize,
    best: Vec<usize>,
    path: Vec<usize>,
}

impl TauSearch<'_> {
    fn run(&mut self, uncovered: u64) {
        if self.best.len() <= self.floor {
            return;
        }
        if uncovered == 0 {
            if self.path.len() < self.best.len() {
                self.best = self.path.clone();
            }
            return;
        }
        if self.path.len() + packing_bound(uncovered, self.meets) >= self.best.len() {
            return;
        }
        // Branch on the uncovered set with the fewest useful points; among
        // its points keep only those whose coverage is not dominated.
        let mut target = None;
        let mut options: Vec<usize> = Vec::new();
        for s in (0..64).filter(|b| uncovered >> b & 1 == 1) {
            let mut opts: Vec<usize> = (0..self.covers.len())
                .filter(|&p| self.covers[p] >> s & 1 == 1)
                .collect();
            opts.sort_by_key(|&p| std::cmp::Reverse((self.covers[p] & uncovered).count_ones()));
            let mut kept: Vec<usize> = Vec::new();
            for p in opts {
                let c = self.covers[p] & uncovered;
                if !kept.iter().any(|&q| self.covers[q] & uncovered & c == c) {
                    kept.push(p);
                }
            }
            if target.is_none() || kept.len() < options.len() {
                target = Some(s);
                options = kept;
            }
        }
        for p in options {
            self.path.push(p);
            self.run(uncovered & !self.covers[p]);
            self.path.pop();
        }
    }
}

fn greedy_cover(covers: &[u64], all: u64) -> Vec<usize> {
    let mut left = all;
    let mut chosen = Vec::new();
    while left != 0 {
        let p = (0..covers.len())
            .max_by_key(|&p| ((covers[p] & left).count_ones(), std::cmp::Reverse(p)))
            .unwrap();
        chosen.push(p);
        left &= !covers[p];
    }
    chosen
}

/// Minimum piercing set by branch and bound, with `ceil(τ*)` as the target
/// that stops the search early and a disjoint-packing bound at each node.
pub fn tau_exact(
    family: &[TraceSet],
    guards: &Guards,
) -> Result<(usize, Vec<Point>), PiercingError> {
    let inc = incidence(family, guards)?;
    if family.is_empty() {
        return Ok((0, Vec::new()));
    }
    let floor = fractional_from(&inc, family.len())?.objective.ceil_int();
    let floor = usize::try_from(floor).expect("small");
    let meets = meet_masks(family);
    let all = full_mask(family.len());
    let mut search = TauSearch {
        covers: &inc.covers,
        meets: &meets,
        floor,
        best: greedy_cover(&inc.covers, all),
        path: Vec::new(),
    };
    search.run(all);
    let ground = family[0].ground();
    let mut pts: Vec<Point> = search
        .best
        .iter()
        .map(|&p| ground.point(inc.points[p]))
        .collect();
    pts.sort();
    Ok((pts.len(), pts))
}

fn mis(cands: u64, adj: &[u64], cur: &mut Vec<usize>, best: &mut Vec<usize>) {
    if cur.len() + cands.count_ones() as usize <= best.len() {
        return;
    }
    if cands == 0 {
        *best = cur.clone();
        return;
    }
    let v = (0..64)
        .filter(|b| cands >> b & 1 == 1)
        .max_by_key(|&b| ((adj[b] & cands).count_ones(), std::cmp::Reverse(b)))
        .unwrap();
    if adj[v] & cands == 0 {
        // Every remaining vertex is isolated: take them all.
        let before = cur.len();
        cur.extend((0..64).filter(|b| cands >> b & 1 == 1));
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        cur.truncate(before);
        return;
    }
    cur.push(v);
    mis(cands & !(adj[v] | 1 << v), adj, cur, best);
    cur.pop();
    mis(cands & !(1 << v), adj, cur, best);
}

/// Maximum pairwise-disjoint subfamily (0-based indices), via maximum
/// independent set in the intersection graph.
pub fn nu_exact(
    family: &[TraceSet],
    guards: &Guards,
) -> Result<(usize, Vec<usize>), PiercingError> {
    incidence(family, guards)?;
    let adj = meet_masks(family);
    let mut best = Vec::new();
    mis(full_mask(family.len()), &adj, &mut Vec::new(), &mut best);
    best.sort_unstable();
    Ok((best.len(), best))
}

fn matching_lp(inc: &Incidence, n: usize) -> LPProblem {
    LPProblem {
        a: inc
            .covers
            .iter()
            .map(|&m| (0..n).map(|j| Rat::from_int((m >> j & 1) as i64)).collect())
            .collect(),
        b: vec![Rat::one(); inc.points.len()],
        c: vec![Rat::one(); n],
    }
}

fn fractional_from(inc: &Incidence, n: usize) -> Result<LPSolution, PiercingError> {
    Ok(matching_lp(inc, n).solve()?)
}

/// The fractional matching LP, its solution, and the candidate points that
/// index its rows (and hence the fractional transversal weights).
#[derive(Debug, Clone, Serialize)]
pub struct FractionalLp {
    pub candidates: Vec<Point>,
    pub problem: LPProblem,
    pub solution: LPSolution,
}

impl FractionalLp {
    /// `ν*`: primal optimum (weights on sets).
    pub fn nu_star(&self) -> &Rat {
        &self.solution.objective
    }

    /// `τ*`: dual objective (weights on points).
    pub fn tau_star(&self) -> Rat {
        self.solution
            .dual
            .iter()
            .fold(Rat::zero(), |acc, y| &acc + y)
    }
}

pub fn fractional_lp(family: &[TraceSet], guards: &Guards) -> Result<FractionalLp, PiercingError> {
    let inc = incidence(family, guards)?;
    let problem = matching_lp(&inc, family.len());
    let solution = problem.solve()?;
    let candidates = match family.first() {
        Some(t) => inc.points.iter().map(|&id| t.ground().point(id)).collect(),
        None => Vec::new(),
    };
    Ok(FractionalLp {
        candidates,
        problem,
        solution,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PiercingResult {
    pub tau: usize,
    pub piercing_points: Vec<Point>,
    pub nu: usize,
    pub matching: Vec<usize>,
    pub tau_star: Rat,
    pub nu_star: Rat,
    pub certificate: bool,
    pub set_weights: Vec<Rat>,
    pub point_weights: Vec<(Point, Rat)>,
}

impl PiercingResult {
    /// `ν <= ν* = τ* <= τ` with a valid LP certificate.
    pub fn sandwich_holds(&self) -> bool {
        let (nu, tau) = (
            Rat::from_int(self.nu as i64),
            Rat::from_int(self.tau as i64),
        );
        self.certificate
            && nu <= self.nu_star
            && self.nu_star == self.tau_star
            && self.tau_star <= tau
    }
}

pub fn pierce(family: &[TraceSet], guards: &Guards) -> Result<PiercingResult, PiercingError> {
    let (tau, piercing_points) = tau_exact(family, guards)?;
    let (nu, matching) = nu_exact(family, guards)?;
    let lp = fractional_lp(family, guards)?;
    let tau_star = lp.tau_star();
    Ok(PiercingResult {
        tau,
        piercing_points,
        nu,
        matching,
        nu_star: lp.solution.objective.clone(),
        tau_star,
        certificate: lp.solution.certificate,
        set_weights: lp.solution.primal.clone(),
        point_weights: lp
            .candidates
            .into_iter()
            .zip(lp.solution.dual)
            .filter(|(_, w)| !w.is_zero())
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PqKind {
    Plain,
    ColorfulFirst,
    ColorfulSecond,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PqOutcome {
    pub holds: bool,
    /// Offending `(family, member)` pairs, 0-based.
    pub counterexample: Option<Vec<(usize, usize)>>,
}

fn max_cover(sets: &[&TraceSet]) -> usize {
    let Some(first) = sets.first() else { return 0 };
    first
        .ground()
        .ids()
        .map(|id| sets.iter().filter(|t| t.contains(id)).count())
        .max()
        .unwrap_or(0)
}

/// Exhaustive (p,q) property checks.
///
/// * `Plain`: among any `p` members of `families[0]` some `q` share a point.
/// * `ColorfulFirst`: `q` families; for any `p` members from each, a point
///   is hit by one chosen member of every family.
/// * `ColorfulSecond`: `p` families; every colorful `p`-tuple has `q`
///   members sharing a point.
pub fn pq_check(
    families: &[Vec<TraceSet>],
    p: usize,
    q: usize,
    kind: PqKind,
) -> Result<PqOutcome, PiercingError> {
    let arity = |kind, expected: String, found: String| {
        Err(PiercingError::Arity {
            kind,
            expected,
            found,
        })
    };
    if let Some(first) = families.iter().flatten().next() {
        if families.iter().flatten().any(|t| !t.same_ground(first)) {
            return Err(PiercingError::MixedGround);
        }
    }
    match kind {
        PqKind::Plain => {
            if families.len() != 1 || families[0].len() < p || q > p {
                return arity(
                    "plain",
                    format!("one family of size >= p = {p} and q <= p"),
                    format!("{} families, q = {q}", families.len()),
                );
            }
            let fam = &families[0];
            let bad = (0..fam.len()).combinations(p).find(|c| {
                let sets: Vec<&TraceSet> = c.iter().map(|&j| &fam[j]).collect();
                max_cover(&sets) < q
            });
            Ok(PqOutcome {
                holds: bad.is_none(),
                counterexample: bad.map(|c| c.into_iter().map(|j| (0, j)).collect()),
            })
        }
        PqKind::ColorfulFirst => {
            if families.len() != q || families.iter().any(|f| f.len() < p) {
                return arity(
                    "colorful-first",
                    format!("q = {q} families of size >= p = {p}"),
                    format!("{} families", families.len()),
                );
            }
            let choices: Vec<Vec<Vec<usize>>> = families
                .iter()
                .map(|f| (0..f.len()).combinations(p).collect())
                .collect();
            let ground = families.iter().flatten().next().map(|t| t.ground().clone());
            let bad = choices.into_iter().multi_cartesian_product().find(|pick| {
                let Some(ground) = &ground else { return false };
                let hit = ground.ids().any(|id| {
                    pick.iter()
                        .enumerate()
                        .all(|(i, members)| members.iter().any(|&j| families[i][j].contains(id)))
                });
                !hit
            });
            Ok(PqOutcome {
                holds: bad.is_none(),
                counterexample: bad.map(|pick| {
                    pick.into_iter()
                        .enumerate()
                        .flat_map(|(i, m)| m.into_iter().map(move |j| (i, j)))
                        .collect()
                }),
            })
        }
        PqKind::ColorfulSecond => {
            if families.len() != p || q > p {
                return arity(
                    "colorful-second",
                    format!("p = {p} families and q <= p"),
                    format!("{} families", families.len()),
                );
            }
            let bad = families
                .iter()
                .map(|f| 0..f.len())
                .multi_cartesian_product()
                .find(|tuple| {
                    let sets: Vec<&TraceSet> = tuple
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| &families[i][j])
                        .collect();
                    max_cover(&sets) < q
                });
            Ok(PqOutcome {
                holds: bad.is_none(),
                counterexample: bad.map(|t| t.into_iter().enumerate().collect()),
            })
        }
    }
}

/// A multiset copy of a family: `sets[i]` is a copy of `family[origin[i]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowUp {
    pub sets: Vec<TraceSet>,
    pub origin: Vec<usize>,
}

pub fn blow_up(family: &[TraceSet], multiplicities: &[usize]) -> Result<BlowUp, PiercingError> {
    if family.len() != multiplicities.len() {
        return Err(PiercingError::LengthMismatch {
            expected: family.len(),
            found: multiplicities.len(),
        });
    }
    let origin: Vec<usize> = multiplicities
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| std::iter::repeat_n(i, m))
        .collect();
    Ok(BlowUp {
        sets: origin.iter().map(|&i| family[i].clone()).collect(),
        origin,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TardosKaiser {
    pub d: usize,
    pub tau: usize,
    pub nu: usize,
    /// `(d² − d)·ν` for `d >= 2`; `ν` itself for `d = 1`, where τ = ν is checked.
    pub bound: usize,
    pub holds: bool,
}

pub fn tardos_kaiser_check(
    family: &[TraceSet],
    guards: &Guards,
) -> Result<TardosKaiser, PiercingError> {
    let d = family.first().map_or(1, TraceSet::d);
    let (tau, _) = tau_exact(family, guards)?;
    let (nu, _) = nu_exact(family, guards)?;
    let (bound, holds) = if d == 1 {
        (nu, tau == nu)
    } else {
        ((d * d - d) * nu, tau <= (d * d - d) * nu)
    };
    Ok(TardosKaiser {
        d,
        tau,
        nu,
        bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{trace_of, DInterval, PointSet};
    use std::sync::Arc;

    fn g() -> Guards {
        Guards::default()
    }

    fn triple() -> Vec<TraceSet> {
        let p = Arc::new(PointSet::from_int_levels(&[&[0, 1, 2, 4, 5], &[0, 1, 2, 3]]).unwrap());
        [[(0, 1), (0, 1)], [(1, 2), (2, 3)], [(4, 5), (1, 2)]]
            .iter()
            .map(|lv| {
                trace_of(
                    &DInterval::from_ints(&[Some(lv[0]), Some(lv[1])]).unwrap(),
                    &p,
                )
                .unwrap()
            })
            .collect()
    }

    fn line(ivls: &[(i64, i64)]) -> Vec<TraceSet> {
        let mut xs: Vec<i64> = ivls.iter().flat_map(|&(a, b)| [a, b]).collect();
        xs.sort();
        xs.dedup();
        let p = Arc::new(PointSet::from_int_levels(&[&xs]).unwrap());
        ivls.iter()
            .map(|&(a, b)| trace_of(&DInterval::from_ints(&[Some((a, b))]).unwrap(), &p).unwrap())
            .collect()
    }

    #[test]
    fn triple_numbers() {
        let r = pierce(&triple(), &g()).unwrap();
        assert_eq!((r.tau, r.nu), (2, 1));
        assert_eq!(r.tau_star, Rat::new(3, 2));
        assert_eq!(r.nu_star, Rat::new(3, 2));
        assert_eq!(r.set_weights, vec![Rat::new(1, 2); 3]);
        assert!(r.certificate && r.sandwich_holds());
        let fam = triple();
        assert!(fam
            .iter()
            .all(|s| r.piercing_points.iter().any(|p| s.contains_point(p))));
        let tk = tardos_kaiser_check(&fam, &g()).unwrap();
        assert_eq!((tk.tau, tk.bound, tk.holds), (2, 2, true));
    }

    #[test]
    fn common_point_and_disjoint() {
        let common = line(&[(0, 2), (1, 3), (1, 1)]);
        let r = pierce(&common, &g()).unwrap();
        assert_eq!((r.tau, r.nu, r.nu_star.clone()), (1, 1, Rat::one()));

        let disjoint = line(&[(0, 0), (2, 2), (4, 4), (6, 6)]);
        let r = pierce(&disjoint, &g()).unwrap();
        assert_eq!((r.tau, r.nu, r.tau_star.clone()), (4, 4, Rat::from_int(4)));
    }

    #[test]
    fn nu_on_line() {
        let (nu, sub) = nu_exact(&line(&[(0, 1), (2, 3), (1, 2)]), &g()).unwrap();
        assert_eq!((nu, sub), (2, vec![0, 1]));
        let tk = tardos_kaiser_check(&line(&[(0, 1), (2, 3)]), &g()).unwrap();
        assert_eq!((tk.tau, tk.nu, tk.holds), (2, 2, true));
    }

    #[test]
    fn empty_set_rejected() {
        let p = Arc::new(PointSet::from_int_levels(&[&[0]]).unwrap());
        let fam = vec![TraceSet::empty(&p)];
        assert!(matches!(
            tau_exact(&fam, &g()),
            Err(PiercingError::EmptySet(0))
        ));
    }

    #[test]
    fn pq_examples() {
        let pairwise = triple();
        for p in 2..=3 {
            assert!(
                pq_check(std::slice::from_ref(&pairwise), p, 2, PqKind::Plain)
                    .unwrap()
                    .holds
            );
        }
        let disjoint = line(&[(0, 0), (2, 2), (4, 4)]);
        let out = pq_check(std::slice::from_ref(&disjoint), 2, 2, PqKind::Plain).unwrap();
        assert_eq!(out.counterexample, Some(vec![(0, 0), (0, 1)]));

        let all = line(&[(0, 2), (1, 3), (2, 2)]);
        let fams = vec![all[..2].to_vec(), all[2..].to_vec()];
        assert!(pq_check(&fams, 2, 2, PqKind::ColorfulSecond).unwrap().holds);
        assert!(pq_check(&fams, 1, 2, PqKind::ColorfulFirst).unwrap().holds);
        assert!(pq_check(&fams, 2, 2, PqKind::Plain).is_err());
    }

    #[test]
    fn blow_up_examples() {
        let fam = line(&[(0, 1), (2, 3)]);
        let b = blow_up(&fam, &[2, 1]).unwrap();
        assert_eq!(b.origin, vec![0, 0, 1]);
        assert_eq!(b.sets, vec![fam[0].clone(), fam[0].clone(), fam[1].clone()]);
        assert_eq!(blow_up(&fam, &[0, 1]).unwrap().origin, vec![1]);
        assert!(blow_up(&fam, &[1]).is_err());
        let same = blow_up(&triple(), &[1, 1, 1]).unwrap();
        assert_eq!(
            fractional_lp(&same.sets, &g()).unwrap().nu_star(),
            &Rat::new(3, 2)
        );
    }
}
