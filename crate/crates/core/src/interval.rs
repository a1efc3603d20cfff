//! Separated d-intervals over a finite ground set and their traces.
//!
//! A ground set `P` places points on `d` labeled copies of the real line.
//! Every convex set of the space is a *trace* `I ∩ P` of a separated
//! d-interval `I`; over a finite `P` it is stored as one contiguous index
//! run per level. All comparisons that matter (hulls, intersections, the
//! sweep value) reduce to index arithmetic on those runs.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("dimension mismatch: expected d = {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("level {level} outside [1, {d}]")]
    LevelOutOfRange { level: usize, d: usize },
    #[error("duplicate point ({coord}, {level})")]
    DuplicatePoint { coord: Rat, level: usize },
    #[error("point ({coord}, {level}) is not in the ground set")]
    NotInGround { coord: Rat, level: usize },
    #[error("traces reference different ground sets")]
    MixedGround,
    #[error("intersection of an empty family is undefined")]
    EmptyFamily,
    #[error("level {level}: lo {lo} exceeds hi {hi}")]
    InvertedInterval {
        level: usize,
        lo: String,
        hi: String,
    },
    #[error("level {level}: run [{first}, {last}] is invalid for {len} points")]
    BadRun {
        level: usize,
        first: usize,
        last: usize,
        len: usize,
    },
    #[error("d must be positive")]
    ZeroDimension,
}

/// A point `(coord, level)`; levels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub coord: Rat,
    pub level: usize,
}

impl Point {
    pub fn new(coord: impl Into<Rat>, level: usize) -> Self {
        Point {
            coord: coord.into(),
            level,
        }
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level, &self.coord).cmp(&(other.level, &other.coord))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.coord, self.level)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.coord)?;
        seq.serialize_element(&self.level)?;
        seq.end()
    }
}

/// Position of a point inside its ground set: level (1-based) and rank
/// within the level's sorted coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointId {
    pub level: usize,
    pub index: usize,
}

/// The finite ground set `P ⊆ ℝ × [d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    d: usize,
    levels: Vec<Vec<Rat>>,
}

impl PointSet {
    /// Builds a ground set from arbitrary-order points; duplicates are an error.
    pub fn new(d: usize, points: impl IntoIterator<Item = Point>) -> Result<Self, IntervalError> {
        if d == 0 {
            return Err(IntervalError::ZeroDimension);
        }
        let mut levels: Vec<Vec<Rat>> = vec![Vec::new(); d];
        for p in points {
            if p.level == 0 || p.level > d {
                return Err(IntervalError::LevelOutOfRange { level: p.level, d });
            }
            levels[p.level - 1].push(p.coord);
        }
        for (i, coords) in levels.iter_mut().enumerate() {
            coords.sort();
            if let Some(w) = coords.windows(2).find(|w| w[0] == w[1]) {
                return Err(IntervalError::DuplicatePoint {
                    coord: w[0].clone(),
                    level: i + 1,
                });
            }
        }
        Ok(PointSet { d, levels })
    }

    /// Integer coordinates per level, e.g. `from_int_levels(&[&[0, 1], &[2]])`.
    pub fn from_int_levels(levels: &[&[i64]]) -> Result<Self, IntervalError> {
        let d = levels.len();
        PointSet::new(
            d,
            levels
                .iter()
                .enumerate()
                .flat_map(|(i, xs)| xs.iter().map(move |&x| Point::new(x, i + 1))),
        )
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Sorted coordinates of level `level` (1-based).
    pub fn level(&self, level: usize) -> &[Rat] {
        &self.levels[level - 1]
    }

    pub fn level_len(&self, level: usize) -> usize {
        self.levels[level - 1].len()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, id: PointId) -> Point {
        Point {
            coord: self.levels[id.level - 1][id.index].clone(),
            level: id.level,
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = PointId> + '_ {
        self.levels.iter().enumerate().flat_map(|(i, xs)| {
            (0..xs.len()).map(move |index| PointId {
                level: i + 1,
                index,
            })
        })
    }

    pub fn points(&self) -> Vec<Point> {
        self.ids().map(|id| self.point(id)).collect()
    }

    pub fn locate(&self, p: &Point) -> Option<PointId> {
        if p.level == 0 || p.level > self.d {
            return None;
        }
        self.levels[p.level - 1]
            .binary_search(&p.coord)
            .ok()
            .map(|index| PointId {
                level: p.level,
                index,
            })
    }

    pub fn require(&self, p: &Point) -> Result<PointId, IntervalError> {
        self.locate(p).ok_or_else(|| IntervalError::NotInGround {
            coord: p.coord.clone(),
            level: p.level,
        })
    }
}

/// One level of a d-interval: empty, or the closed interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum LevelInterval {
    Empty,
    Closed { lo: Rat, hi: Rat },
}

impl LevelInterval {
    pub fn closed(lo: impl Into<Rat>, hi: impl Into<Rat>) -> Self {
        LevelInterval::Closed {
            lo: lo.into(),
            hi: hi.into(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, LevelInterval::Empty)
    }
}

/// A separated d-interval with closed, bounded components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DInterval {
    levels: Vec<LevelInterval>,
}

impl DInterval {
    pub fn new(levels: Vec<LevelInterval>) -> Result<Self, IntervalError> {
        if levels.is_empty() {
            return Err(IntervalError::ZeroDimension);
        }
        for (i, lv) in levels.iter().enumerate() {
            if let LevelInterval::Closed { lo, hi } = lv {
                if lo > hi {
                    return Err(IntervalError::InvertedInterval {
                        level: i + 1,
                        lo: lo.to_string(),
                        hi: hi.to_string(),
                    });
                }
            }
        }
        Ok(DInterval { levels })
    }

    /// Convenience for integer endpoints; `None` marks an empty level.
    pub fn from_ints(levels: &[Option<(i64, i64)>]) -> Result<Self, IntervalError> {
        DInterval::new(
            levels
                .iter()
                .map(|lv| match lv {
                    Some((lo, hi)) => LevelInterval::closed(*lo, *hi),
                    None => LevelInterval::Empty,
                })
                .collect(),
        )
    }

    pub fn d(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[LevelInterval] {
        &self.levels
    }

    pub fn level(&self, level: usize) -> &LevelInterval {
        &self.levels[level - 1]
    }
}

/// `I ∩ P` stored as one inclusive index run per level.
#[derive(Clone)]
pub struct TraceSet {
    ground: Arc<PointSet>,
    runs: Vec<Option<(usize, usize)>>,
}

impl PartialEq for TraceSet {
    fn eq(&self, other: &Self) -> bool {
        self.same_ground(other) && self.runs == other.runs
    }
}

impl Eq for TraceSet {}

impl fmt::Debug for TraceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.points().iter().map(|p| p.to_string()))
            .finish()
    }
}

impl Serialize for TraceSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.points())
    }
}

impl TraceSet {
    pub fn empty(ground: &Arc<PointSet>) -> Self {
        TraceSet {
            ground: Arc::clone(ground),
            runs: vec![None; ground.d()],
        }
    }

    pub fn full(ground: &Arc<PointSet>) -> Self {
        let runs = (1..=ground.d())
            .map(|lv| match ground.level_len(lv) {
                0 => None,
                n => Some((0, n - 1)),
            })
            .collect();
        TraceSet {
            ground: Arc::clone(ground),
            runs,
        }
    }

    /// Builds a trace from explicit runs, validating bounds.
    pub fn from_runs(
        ground: &Arc<PointSet>,
        runs: Vec<Option<(usize, usize)>>,
    ) -> Result<Self, IntervalError> {
        if runs.len() != ground.d() {
            return Err(IntervalError::DimensionMismatch {
                expected: ground.d(),
                found: runs.len(),
            });
        }
        for (i, run) in runs.iter().enumerate() {
            if let Some((first, last)) = *run {
                let len = ground.level_len(i + 1);
                if first > last || last >= len {
                    return Err(IntervalError::BadRun {
                        level: i + 1,
                        first,
                        last,
                        len,
                    });
                }
            }
        }
        Ok(TraceSet {
            ground: Arc::clone(ground),
            runs,
        })
    }

    /// Returns `Some` only if `ids` is per-level contiguous in `ground`'s order,
    /// i.e. the subset really is a trace of some d-interval.
    pub fn from_ids(ground: &Arc<PointSet>, ids: &[PointId]) -> Option<Self> {
        let d = ground.d();
        let mut per_level: Vec<Vec<usize>> = vec![Vec::new(); d];
        for id in ids {
            if id.level == 0 || id.level > d || id.index >= ground.level_len(id.level) {
                return None;
            }
            per_level[id.level - 1].push(id.index);
        }
        let mut runs = Vec::with_capacity(d);
        for mut idx in per_level {
            idx.sort_unstable();
            idx.dedup();
            match (idx.first(), idx.last()) {
                (Some(&a), Some(&b)) => {
                    if b - a + 1 != idx.len() {
                        return None;
                    }
                    runs.push(Some((a, b)));
                }
                _ => runs.push(None),
            }
        }
        Some(TraceSet {
            ground: Arc::clone(ground),
            runs,
        })
    }

    pub fn ground(&self) -> &Arc<PointSet> {
        &self.ground
    }

    pub fn d(&self) -> usize {
        self.runs.len()
    }

    pub fn runs(&self) -> &[Option<(usize, usize)>] {
        &self.runs
    }

    pub fn run(&self, level: usize) -> Option<(usize, usize)> {
        self.runs[level - 1]
    }

    pub fn same_ground(&self, other: &TraceSet) -> bool {
        Arc::ptr_eq(&self.ground, &other.ground) || *self.ground == *other.ground
    }

    pub fn is_empty(&self) -> bool {
        self.runs.iter().all(Option::is_none)
    }

    pub fn len(&self) -> usize {
        self.runs.iter().flatten().map(|(a, b)| b - a + 1).sum()
    }

    /// Number of levels on which the trace is nonempty.
    pub fn level_count(&self) -> usize {
        self.runs.iter().filter(|r| r.is_some()).count()
    }

    pub fn contains(&self, id: PointId) -> bool {
        match self.runs.get(id.level.wrapping_sub(1)) {
            Some(Some((a, b))) => *a <= id.index && id.index <= *b,
            _ => false,
        }
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.ground.locate(p).is_some_and(|id| self.contains(id))
    }

    pub fn ids(&self) -> Vec<PointId> {
        self.runs
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                r.iter().flat_map(move |&(a, b)| {
                    (a..=b).map(move |index| PointId {
                        level: i + 1,
                        index,
                    })
                })
            })
            .collect()
    }

    pub fn points(&self) -> Vec<Point> {
        self.ids()
            .into_iter()
            .map(|id| self.ground.point(id))
            .collect()
    }

    pub fn first_id(&self) -> Option<PointId> {
        self.runs.iter().enumerate().find_map(|(i, r)| {
            r.map(|(a, _)| PointId {
                level: i + 1,
                index: a,
            })
        })
    }

    /// Pairwise intersection; both traces must share a ground set.
    pub fn intersect(&self, other: &TraceSet) -> TraceSet {
        debug_assert!(self.same_ground(other));
        let runs = self
            .runs
            .iter()
            .zip(&other.runs)
            .map(|(a, b)| match (a, b) {
                (Some((a0, a1)), Some((b0, b1))) => {
                    let lo = *a0.max(b0);
                    let hi = *a1.min(b1);
                    (lo <= hi).then_some((lo, hi))
                }
                _ => None,
            })
            .collect();
        TraceSet {
            ground: Arc::clone(&self.ground),
            runs,
        }
    }

    pub fn meets(&self, other: &TraceSet) -> bool {
        self.runs
            .iter()
            .zip(&other.runs)
            .any(|(a, b)| match (a, b) {
                (Some((a0, a1)), Some((b0, b1))) => a0.max(b0) <= a1.min(b1),
                _ => false,
            })
    }

    pub fn is_subset_of(&self, other: &TraceSet) -> bool {
        self.runs
            .iter()
            .zip(&other.runs)
            .all(|(a, b)| match (a, b) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some((a0, a1)), Some((b0, b1))) => b0 <= a0 && a1 <= b1,
            })
    }

    /// Index form of the sweep value: per level the index of the maximum
    /// point, `None` for an empty level. Orders exactly like [`FLexValue`].
    pub fn f_key(&self) -> Vec<Option<usize>> {
        self.runs.iter().map(|r| r.map(|(_, b)| b)).collect()
    }

    pub(crate) fn with_runs(&self, runs: Vec<Option<(usize, usize)>>) -> TraceSet {
        TraceSet {
            ground: Arc::clone(&self.ground),
            runs,
        }
    }
}

/// One component of the sweep value; `NegInf` sorts below every finite value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FCoord {
    NegInf,
    Finite(Rat),
}

impl fmt::Display for FCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FCoord::NegInf => write!(f, "-inf"),
            FCoord::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for FCoord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Per-level maxima of a trace, compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FLexValue(pub Vec<FCoord>);

impl FLexValue {
    pub fn components(&self) -> &[FCoord] {
        &self.0
    }

    /// The first `count` finite components as points `(a_i, i)`.
    pub fn leading_finite(&self, count: usize) -> Vec<Point> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, c)| match c {
                FCoord::Finite(x) => Some(Point {
                    coord: x.clone(),
                    level: i + 1,
                }),
                FCoord::NegInf => None,
            })
            .take(count)
            .collect()
    }
}

impl fmt::Display for FLexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The trace `I ∩ P`.
pub fn trace_of(interval: &DInterval, ground: &Arc<PointSet>) -> Result<TraceSet, IntervalError> {
    if interval.d() != ground.d() {
        return Err(IntervalError::DimensionMismatch {
            expected: ground.d(),
            found: interval.d(),
        });
    }
    let runs = interval
        .levels()
        .iter()
        .enumerate()
        .map(|(i, lv)| match lv {
            LevelInterval::Empty => None,
            LevelInterval::Closed { lo, hi } => {
                let coords = ground.level(i + 1);
                let first = coords.partition_point(|x| x < lo);
                let end = coords.partition_point(|x| x <= hi);
                (first < end).then(|| (first, end - 1))
            }
        })
        .collect();
    Ok(TraceSet {
        ground: Arc::clone(ground),
        runs,
    })
}

/// Convex hull of `subset` in the trace convexity: per level the run
/// spanning the subset's extreme points.
pub fn hull(ground: &Arc<PointSet>, subset: &[Point]) -> Result<TraceSet, IntervalError> {
    let mut runs: Vec<Option<(usize, usize)>> = vec![None; ground.d()];
    for p in subset {
        let id = ground.require(p)?;
        let slot = &mut runs[id.level - 1];
        *slot = Some(match *slot {
            None => (id.index, id.index),
            Some((a, b)) => (a.min(id.index), b.max(id.index)),
        });
    }
    Ok(TraceSet {
        ground: Arc::clone(ground),
        runs,
    })
}

/// Hull of point ids already known to lie in `ground`.
pub fn hull_ids(ground: &Arc<PointSet>, ids: &[PointId]) -> TraceSet {
    let mut runs: Vec<Option<(usize, usize)>> = vec![None; ground.d()];
    for id in ids {
        let slot = &mut runs[id.level - 1];
        *slot = Some(match *slot {
            None => (id.index, id.index),
            Some((a, b)) => (a.min(id.index), b.max(id.index)),
        });
    }
    TraceSet {
        ground: Arc::clone(ground),
        runs,
    }
}

/// Intersection of a nonempty family together with its number of
/// nonempty levels; the family k-intersects iff that count is `>= k`.
pub fn intersect_all(traces: &[TraceSet]) -> Result<(TraceSet, usize), IntervalError> {
    let (first, rest) = traces.split_first().ok_or(IntervalError::EmptyFamily)?;
    let mut acc = first.clone();
    for t in rest {
        if !t.same_ground(first) {
            return Err(IntervalError::MixedGround);
        }
        acc = acc.intersect(t);
    }
    let count = acc.level_count();
    Ok((acc, count))
}

/// Intersection of the members selected by `indices`; `None` when no index
/// is given.
pub fn intersect_indices(family: &[TraceSet], indices: &[usize]) -> Option<TraceSet> {
    let (&first, rest) = indices.split_first()?;
    Some(
        rest.iter()
            .fold(family[first].clone(), |acc, &i| acc.intersect(&family[i])),
    )
}

/// Smallest d-interval containing the trace: per level `[min, max]`.
pub fn minimal_dinterval(trace: &TraceSet) -> DInterval {
    let ground = trace.ground();
    let levels = trace
        .runs()
        .iter()
        .enumerate()
        .map(|(i, r)| match r {
            None => LevelInterval::Empty,
            Some((a, b)) => {
                let coords = ground.level(i + 1);
                LevelInterval::Closed {
                    lo: coords[*a].clone(),
                    hi: coords[*b].clone(),
                }
            }
        })
        .collect();
    DInterval { levels }
}

/// The sweep value: per level the maximum coordinate, or `-inf`.
pub fn f_value(trace: &TraceSet) -> FLexValue {
    let ground = trace.ground();
    FLexValue(
        trace
            .runs()
            .iter()
            .enumerate()
            .map(|(i, r)| match r {
                None => FCoord::NegInf,
                Some((_, b)) => FCoord::Finite(ground.level(i + 1)[*b].clone()),
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn six() -> Arc<PointSet> {
        Arc::new(PointSet::from_int_levels(&[&[0, 1, 2], &[0, 1, 2]]).unwrap())
    }

    fn pts(v: &[(i64, usize)]) -> Vec<Point> {
        v.iter().map(|&(x, l)| Point::new(x, l)).collect()
    }

    #[test]
    fn trace_examples() {
        let p = six();
        let t = trace_of(&DInterval::from_ints(&[Some((0, 1)), None]).unwrap(), &p).unwrap();
        assert_eq!(t.points(), pts(&[(0, 1), (1, 1)]));

        let half = DInterval::new(vec![
            LevelInterval::closed(Rat::new(1, 2), Rat::new(3, 4)),
            LevelInterval::Empty,
        ])
        .unwrap();
        assert!(trace_of(&half, &p).unwrap().is_empty());

        let full = trace_of(
            &DInterval::from_ints(&[Some((0, 2)), Some((0, 2))]).unwrap(),
            &p,
        )
        .unwrap();
        assert_eq!(full, TraceSet::full(&p));
    }

    #[test]
    fn trace_dimension_mismatch() {
        let p = six();
        let i = DInterval::from_ints(&[Some((0, 1))]).unwrap();
        assert_eq!(
            trace_of(&i, &p).unwrap_err(),
            IntervalError::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn hull_examples() {
        let p = six();
        assert_eq!(
            hull(&p, &pts(&[(0, 1), (2, 1)])).unwrap().points(),
            pts(&[(0, 1), (1, 1), (2, 1)])
        );
        assert!(hull(&p, &[]).unwrap().is_empty());
        assert_eq!(
            hull(&p, &pts(&[(1, 1), (0, 2)])).unwrap().points(),
            pts(&[(1, 1), (0, 2)])
        );
        assert!(matches!(
            hull(&p, &pts(&[(7, 1)])),
            Err(IntervalError::NotInGround { .. })
        ));
    }

    #[test]
    fn intersect_examples() {
        let p = six();
        let a = hull(&p, &pts(&[(0, 1), (1, 1)])).unwrap();
        let b = TraceSet::from_ids(
            &p,
            &[
                PointId { level: 1, index: 1 },
                PointId { level: 1, index: 2 },
                PointId { level: 2, index: 0 },
            ],
        )
        .unwrap();
        let (i, c) = intersect_all(&[a.clone(), b]).unwrap();
        assert_eq!((i.points(), c), (pts(&[(1, 1)]), 1));

        let far = hull(&p, &pts(&[(2, 2)])).unwrap();
        let (i, c) = intersect_all(&[a, far]).unwrap();
        assert!(i.is_empty());
        assert_eq!(c, 0);

        let full = TraceSet::full(&p);
        let (i, c) = intersect_all(&[full.clone(), full.clone()]).unwrap();
        assert_eq!((i, c), (full, 2));
    }

    #[test]
    fn intersect_errors() {
        assert_eq!(intersect_all(&[]).unwrap_err(), IntervalError::EmptyFamily);
        let p = six();
        let q = Arc::new(PointSet::from_int_levels(&[&[5], &[5]]).unwrap());
        let err = intersect_all(&[TraceSet::full(&p), TraceSet::full(&q)]).unwrap_err();
        assert_eq!(err, IntervalError::MixedGround);
    }

    #[test]
    fn minimal_dinterval_examples() {
        let p = six();
        let c = TraceSet::from_ids(
            &p,
            &[
                PointId { level: 1, index: 0 },
                PointId { level: 1, index: 1 },
                PointId { level: 1, index: 2 },
                PointId { level: 2, index: 1 },
            ],
        )
        .unwrap();
        assert_eq!(
            minimal_dinterval(&c),
            DInterval::from_ints(&[Some((0, 2)), Some((1, 1))]).unwrap()
        );
        assert_eq!(
            minimal_dinterval(&TraceSet::empty(&p)),
            DInterval::from_ints(&[None, None]).unwrap()
        );
        let q = Arc::new(PointSet::from_int_levels(&[&[], &[5]]).unwrap());
        let single = hull(&q, &pts(&[(5, 2)])).unwrap();
        assert_eq!(
            minimal_dinterval(&single),
            DInterval::from_ints(&[None, Some((5, 5))]).unwrap()
        );
    }

    #[test]
    fn non_contiguous_ids_are_not_a_trace() {
        let p = six();
        let ids = [
            PointId { level: 1, index: 0 },
            PointId { level: 1, index: 2 },
        ];
        assert!(TraceSet::from_ids(&p, &ids).is_none());
    }

    #[test]
    fn f_value_examples() {
        let p = six();
        let c = hull(&p, &pts(&[(0, 1), (1, 1), (2, 2)])).unwrap();
        assert_eq!(
            f_value(&c),
            FLexValue(vec![
                FCoord::Finite(Rat::from_int(1)),
                FCoord::Finite(Rat::from_int(2))
            ])
        );
        assert_eq!(
            f_value(&TraceSet::empty(&p)),
            FLexValue(vec![FCoord::NegInf, FCoord::NegInf])
        );
        let lhs = FLexValue(vec![FCoord::NegInf, FCoord::Finite(Rat::from_int(5))]);
        let rhs = FLexValue(vec![FCoord::Finite(Rat::from_int(0)), FCoord::NegInf]);
        assert!(lhs < rhs);
    }

    #[test]
    fn duplicate_points_rejected() {
        let err = PointSet::new(1, pts(&[(1, 1), (1, 1)])).unwrap_err();
        assert!(matches!(err, IntervalError::DuplicatePoint { .. }));
        assert!(matches!(
            PointSet::new(1, pts(&[(1, 2)])),
            Err(IntervalError::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn inverted_interval_rejected() {
        assert!(matches!(
            DInterval::from_ints(&[Some((3, 1))]),
            Err(IntervalError::InvertedInterval { level: 1, .. })
        ));
    }
}
