//! Seeded instance generation and the extremal constructions.
//!
//! Every draw uses ChaCha8 seeded from `GenSpec::seed` with an explicit
//! stream index, so instance `i` of a corpus never depends on instance
//! `i − 1`. Generation uses integer arithmetic only.

use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::helly::{colorful_violation, frac_helly_stats, HellyError};
use crate::interval::{hull, IntervalError, Point, PointSet, TraceSet};
use crate::piercing::{pq_check, PiercingError, PqKind};
use crate::rat::Rat;

#[derive(Debug, Clone, Error)]
pub enum GenError {
    #[error("level {level}: {count} points do not fit in [{lo}, {hi}]")]
    RangeTooSmall {
        level: usize,
        count: usize,
        lo: i64,
        hi: i64,
    },
    #[error("spec has {found} per-level counts for d = {d}")]
    CountsMismatch { d: usize, found: usize },
    #[error("presence probability {0} outside [0, 1]")]
    BadProbability(Rat),
    #[error("width range [{0}, {1}] is invalid")]
    BadWidth(usize, usize),
    #[error("d must be positive")]
    ZeroDimension,
    #[error("level {0} has fewer than two points")]
    TooFewPoints(usize),
    #[error("designated points for level {0} are not two increasing points of P")]
    BadDesignated(usize),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Helly(#[from] HellyError),
    #[error(transparent)]
    Piercing(#[from] PiercingError),
}

/// Parameters of a random instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSpec {
    pub d: usize,
    pub points_per_level: Vec<usize>,
    pub coord_min: i64,
    pub coord_max: i64,
    /// Sets per family.
    pub n: usize,
    /// Probability that a set is nonempty on a given level.
    pub presence: Rat,
    /// Run length, in points, of a present level (clipped to the level size).
    pub width_min: usize,
    pub width_max: usize,
    #[serde(default = "one")]
    pub families: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicate: Option<Predicate>,
}

fn one() -> usize {
    1
}

impl GenSpec {
    /// A uniform spec: `points` per level on `[0, 2·points]`.
    pub fn uniform(d: usize, points: usize, n: usize, seed: u64) -> Self {
        GenSpec {
            d,
            points_per_level: vec![points; d],
            coord_min: 0,
            coord_max: 2 * points as i64,
            n,
            presence: Rat::new(3, 4),
            width_min: 1,
            width_max: points.max(1),
            families: 1,
            seed,
            predicate: None,
        }
    }

    fn validate(&self) -> Result<(u64, u64), GenError> {
        if self.d == 0 {
            return Err(GenError::ZeroDimension);
        }
        if self.points_per_level.len() != self.d {
            return Err(GenError::CountsMismatch {
                d: self.d,
                found: self.points_per_level.len(),
            });
        }
        if self.width_min == 0 || self.width_min > self.width_max {
            return Err(GenError::BadWidth(self.width_min, self.width_max));
        }
        let span = (self.coord_max as i128 - self.coord_min as i128 + 1).max(0);
        for (i, &c) in self.points_per_level.iter().enumerate() {
            if c as i128 > span {
                return Err(GenError::RangeTooSmall {
                    level: i + 1,
                    count: c,
                    lo: self.coord_min,
                    hi: self.coord_max,
                });
            }
        }
        let p = &self.presence;
        if p.is_negative() || *p > Rat::one() {
            return Err(GenError::BadProbability(p.clone()));
        }
        match (p.numer().to_u64(), p.denom().to_u64()) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(GenError::BadProbability(p.clone())),
        }
    }
}

/// A ground set with its sets; `families` partitions set indices for
/// colorful inputs (a single family lists every set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub ground: Arc<PointSet>,
    pub sets: Vec<TraceSet>,
    pub families: Vec<Vec<usize>>,
}

impl Instance {
    pub fn single(ground: Arc<PointSet>, sets: Vec<TraceSet>) -> Self {
        let families = vec![(0..sets.len()).collect()];
        Instance {
            ground,
            sets,
            families,
        }
    }

    pub fn family(&self, i: usize) -> Vec<TraceSet> {
        self.families[i]
            .iter()
            .map(|&j| self.sets[j].clone())
            .collect()
    }

    pub fn family_sets(&self) -> Vec<Vec<TraceSet>> {
        (0..self.families.len()).map(|i| self.family(i)).collect()
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `gen_instance` on stream 0.
pub fn gen_instance(spec: &GenSpec) -> Result<Instance, GenError> {
    gen_instance_stream(spec, 0)
}

/// One instance drawn from stream `stream` of the spec's seed.
pub fn gen_instance_stream(spec: &GenSpec, stream: u64) -> Result<Instance, GenError> {
    let (num, den) = spec.validate()?;
    let mut rng = rng_for(spec.seed, stream);
    let span = (spec.coord_max - spec.coord_min + 1) as usize;
    let mut points = Vec::new();
    for (i, &count) in spec.points_per_level.iter().enumerate() {
        let mut picks = index::sample(&mut rng, span, count).into_vec();
        picks.sort_unstable();
        points.extend(
            picks
                .into_iter()
                .map(|off| Point::new(spec.coord_min + off as i64, i + 1)),
        );
    }
    let ground = Arc::new(PointSet::new(spec.d, points)?);
    let total = spec.n * spec.families;
    let mut sets = Vec::with_capacity(total);
    for _ in 0..total {
        sets.push(draw_set(&ground, spec, num, den, &mut rng));
    }
    let families = (0..spec.families)
        .map(|f| (f * spec.n..(f + 1) * spec.n).collect())
        .collect();
    Ok(Instance {
        ground,
        sets,
        families,
    })
}

fn draw_set(
    ground: &Arc<PointSet>,
    spec: &GenSpec,
    num: u64,
    den: u64,
    rng: &mut ChaCha8Rng,
) -> TraceSet {
    let d = spec.d;
    let mut present: Vec<bool> = (1..=d)
        .map(|l| ground.level_len(l) > 0 && rng.random_range(0..den) < num)
        .collect();
    let nonempty_levels: Vec<usize> = (1..=d).filter(|&l| ground.level_len(l) > 0).collect();
    if !present.iter().any(|&p| p) && !nonempty_levels.is_empty() {
        let l = nonempty_levels[rng.random_range(0..nonempty_levels.len())];
        present[l - 1] = true;
    }
    let runs = (1..=d)
        .map(|l| {
            if !present[l - 1] {
                return None;
            }
            let len = ground.level_len(l);
            let w = rng.random_range(spec.width_min.min(len)..=spec.width_max.min(len));
            let start = rng.random_range(0..=len - w);
            Some((start, start + w - 1))
        })
        .collect();
    TraceSet::from_runs(ground, runs).expect("runs drawn within bounds")
}

fn designated_points(
    ground: &Arc<PointSet>,
    designated: Option<&[(Rat, Rat)]>,
) -> Result<Vec<(Point, Point)>, GenError> {
    (1..=ground.d())
        .map(|l| {
            let coords = ground.level(l);
            let (a, b) = match designated {
                Some(ds) => {
                    let (a, b) = ds.get(l - 1).ok_or(GenError::BadDesignated(l))?;
                    if a >= b
                        || coords.binary_search(a).is_err()
                        || coords.binary_search(b).is_err()
                    {
                        return Err(GenError::BadDesignated(l));
                    }
                    (a.clone(), b.clone())
                }
                None => {
                    if coords.len() < 2 {
                        return Err(GenError::TooFewPoints(l));
                    }
                    (coords[0].clone(), coords[coords.len() - 1].clone())
                }
            };
            Ok((Point { coord: a, level: l }, Point { coord: b, level: l }))
        })
        .collect()
}

/// The `2d` sets where every `2d − 1` meet but all `2d` do not. Set `k`
/// (1-based) is the single designated point `a_{⌈k/2⌉,1}` (k odd) or
/// `a_{⌈k/2⌉,2}` (k even) on its level, and the hull of both designated
/// points on every other level. Designated points default to each
/// level's minimum and maximum.
pub fn gen_helly_lower_bound(
    ground: &Arc<PointSet>,
    designated: Option<&[(Rat, Rat)]>,
) -> Result<Vec<TraceSet>, GenError> {
    let des = designated_points(ground, designated)?;
    let d = ground.d();
    (1..=2 * d)
        .map(|k| {
            let own = k.div_ceil(2);
            let mut pts = Vec::new();
            for (l, (a, b)) in des.iter().enumerate() {
                if l + 1 == own {
                    pts.push(if k % 2 == 1 { a.clone() } else { b.clone() });
                } else {
                    pts.push(a.clone());
                    pts.push(b.clone());
                }
            }
            Ok(hull(ground, &pts)?)
        })
        .collect()
}

/// The `2d` designated points, which admit no Radon partition.
pub fn gen_radon_lower_bound(
    ground: &Arc<PointSet>,
    designated: Option<&[(Rat, Rat)]>,
) -> Result<Vec<Point>, GenError> {
    Ok(designated_points(ground, designated)?
        .into_iter()
        .flat_map(|(a, b)| [a, b])
        .collect())
}

/// Conditions for rejection sampling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Predicate {
    /// Every colorful tuple over the spec's families k-intersects.
    ColorfulHelly { k: usize },
    /// The (p,q) property of the given kind over the spec's families.
    Pq { p: usize, q: usize, pq_kind: PqKind },
    /// The share of k-intersecting `(2d − k + 1)`-tuples is at least `alpha_min`.
    KIntersectRich { k: usize, alpha_min: Rat },
}

impl Predicate {
    pub fn holds(&self, inst: &Instance) -> Result<bool, GenError> {
        let fams = inst.family_sets();
        Ok(match self {
            Predicate::ColorfulHelly { k } => colorful_violation(&fams, *k).is_none(),
            Predicate::Pq { p, q, pq_kind } => pq_check(&fams, *p, *q, *pq_kind)?.holds,
            Predicate::KIntersectRich { k, alpha_min } => match frac_helly_stats(&inst.sets, *k) {
                Ok(r) => r.stats["alpha"] >= *alpha_min,
                Err(HellyError::AlphaUndefined { .. }) => false,
                Err(e) => return Err(e.into()),
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conditioned {
    Found {
        instance: Instance,
        stream: u64,
        draws: u64,
    },
    NotFound {
        draws: u64,
    },
}

pub const DEFAULT_DRAW_CAP: u64 = 100_000;

/// Rejection sampling over streams `0, 1, …` until `predicate` holds or
/// `cap` draws are spent.
pub fn gen_conditioned(
    spec: &GenSpec,
    predicate: &Predicate,
    cap: u64,
) -> Result<Conditioned, GenError> {
    for stream in 0..cap {
        let inst = gen_instance_stream(spec, stream)?;
        if predicate.holds(&inst)? {
            return Ok(Conditioned::Found {
                instance: inst,
                stream,
                draws: stream + 1,
            });
        }
    }
    Ok(Conditioned::NotFound { draws: cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::helly::{helly_check, radon_partition};
    use crate::interval::intersect_indices;
    use itertools::Itertools;

    #[test]
    fn deterministic() {
        let spec = GenSpec::uniform(2, 4, 6, 42);
        assert_eq!(gen_instance(&spec).unwrap(), gen_instance(&spec).unwrap());
        assert_ne!(
            gen_instance_stream(&spec, 1).unwrap(),
            gen_instance(&spec).unwrap()
        );
    }

    #[test]
    fn full_presence_covers_levels() {
        let mut spec = GenSpec::uniform(3, 4, 5, 7);
        spec.presence = Rat::one();
        let inst = gen_instance(&spec).unwrap();
        assert!(inst.sets.iter().all(|s| s.level_count() == 3));
    }

    #[test]
    fn empty_family() {
        let inst = gen_instance(&GenSpec::uniform(2, 3, 0, 1)).unwrap();
        assert!(inst.sets.is_empty());
        assert_eq!(inst.ground.len(), 6);
    }

    #[test]
    fn infeasible_range() {
        let mut spec = GenSpec::uniform(1, 5, 1, 1);
        spec.coord_max = 2;
        assert!(matches!(
            gen_instance(&spec),
            Err(GenError::RangeTooSmall { .. })
        ));
    }

    #[test]
    fn helly_lower_bound_contract() {
        let line = Arc::new(PointSet::from_int_levels(&[&[0, 1]]).unwrap());
        let fam = gen_helly_lower_bound(&line, None).unwrap();
        assert_eq!(fam[0].points(), vec![Point::new(0, 1)]);
        assert_eq!(fam[1].points(), vec![Point::new(1, 1)]);

        let p = Arc::new(PointSet::from_int_levels(&[&[0, 1, 2], &[0, 1, 2]]).unwrap());
        let fam = gen_helly_lower_bound(&p, None).unwrap();
        assert_eq!(fam.len(), 4);
        for c in (0..4).combinations(3) {
            assert!(!intersect_indices(&fam, &c).unwrap().is_empty());
        }
        assert!(intersect_indices(&fam, &[0, 1, 2, 3]).unwrap().is_empty());
        assert!(!helly_check(&fam, 3, 1).unwrap().verdict);
    }

    #[test]
    fn radon_lower_bound_contract() {
        let p = Arc::new(PointSet::from_int_levels(&[&[0, 1, 2], &[0, 1, 2]]).unwrap());
        let a = gen_radon_lower_bound(&p, None).unwrap();
        assert_eq!(a.len(), 4);
        assert!(radon_partition(&p, &a).unwrap().is_none());
        for extra in p.points().into_iter().filter(|x| !a.contains(x)) {
            let mut b = a.clone();
            b.push(extra);
            assert!(radon_partition(&p, &b).unwrap().unwrap().verify(&p));
        }
        let short = Arc::new(PointSet::from_int_levels(&[&[0], &[0, 1]]).unwrap());
        assert!(matches!(
            gen_radon_lower_bound(&short, None),
            Err(GenError::TooFewPoints(1))
        ));
    }

    #[test]
    fn conditioned_found_and_not_found() {
        let mut spec = GenSpec::uniform(1, 4, 2, 3);
        spec.families = 2;
        spec.presence = Rat::one();
        spec.width_min = 4;
        let pred = Predicate::ColorfulHelly { k: 1 };
        let Conditioned::Found { instance, .. } = gen_conditioned(&spec, &pred, 10).unwrap() else {
            panic!("full-width sets always meet")
        };
        assert!(
            pq_check(&instance.family_sets(), 2, 2, PqKind::ColorfulSecond)
                .unwrap()
                .holds
        );
        assert_eq!(
            gen_conditioned(&spec, &pred, 10).unwrap(),
            gen_conditioned(&spec, &pred, 10).unwrap()
        );

        let mut narrow = GenSpec::uniform(1, 6, 3, 3);
        narrow.width_max = 1;
        narrow.presence = Rat::one();
        let never = Predicate::KIntersectRich {
            k: 1,
            alpha_min: Rat::from_int(2),
        };
        assert_eq!(
            gen_conditioned(&narrow, &never, 25).unwrap(),
            Conditioned::NotFound { draws: 25 }
        );
    }
}
