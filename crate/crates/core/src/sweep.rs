//! Nerves of trace families and the lexicographic sweep collapse.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::complex::{CollapseSequence, ComplexError, Mask, SimplicialComplex};
use crate::guards::{GuardError, Guards};
use crate::interval::{f_value, FCoord, FLexValue, TraceSet};
use crate::rat::Rat;

/// Everything needed to replay a step whose transformed family has the wrong nerve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMismatch {
    pub step: usize,
    pub sigma: Vec<i64>,
    pub f: FLexValue,
    pub family: Vec<TraceSet>,
    pub transformed: Vec<TraceSet>,
    pub expected: SimplicialComplex,
    pub actual: SimplicialComplex,
}

#[derive(Debug, Clone, Error)]
pub enum SweepError {
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error("traces reference different ground sets")]
    MixedGround,
    #[error("step {step}: selected face {sigma:?} has {size} sets, more than {bound}")]
    SupportTooLarge {
        step: usize,
        sigma: Vec<i64>,
        size: usize,
        bound: usize,
    },
    #[error("step {step}: selected face {sigma:?} is not free")]
    NotFree {
        step: usize,
        sigma: Vec<i64>,
        nerve: SimplicialComplex,
    },
    #[error(
        "step {}: nerve of the transformed family differs from coll(K, {:?}) \
         (expected {:?}, got {:?})",
        .0.step, .0.sigma, .0.expected, .0.actual
    )]
    FamilyMismatch(Box<FamilyMismatch>),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn check_family(family: &[TraceSet], guards: &Guards) -> Result<(), SweepError> {
    Guards::check("nerve", family.len(), guards.nerve)?;
    if let Some(first) = family.first() {
        if family.iter().any(|t| !t.same_ground(first)) {
            return Err(SweepError::MixedGround);
        }
    }
    Ok(())
}

/// All nonempty faces of the nerve with their intersections, keyed by mask.
/// A set of size `s + 1` is tried only when all its facets are faces.
pub(crate) fn nerve_faces(family: &[TraceSet]) -> BTreeMap<Mask, TraceSet> {
    let mut faces: BTreeMap<Mask, TraceSet> = BTreeMap::new();
    let mut layer: Vec<Mask> = Vec::new();
    for (i, t) in family.iter().enumerate() {
        if !t.is_empty() {
            faces.insert(1 << i, t.clone());
            layer.push(1 << i);
        }
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &face in &layer {
            let top = 63 - face.leading_zeros() as usize;
            for j in top + 1..family.len() {
                let cand = face | 1 << j;
                let facets_ok = (0..family.len())
                    .filter(|b| cand >> b & 1 == 1)
                    .all(|b| faces.contains_key(&(cand & !(1 << b))));
                if !facets_ok {
                    continue;
                }
                let inter = faces[&face].intersect(&family[j]);
                if !inter.is_empty() {
                    faces.insert(cand, inter);
                    next.push(cand);
                }
            }
        }
        layer = next;
    }
    faces
}

fn labels_for(n: usize) -> Vec<i64> {
    (1..=n as i64).collect()
}

/// The nerve: vertices labeled `1..=n` by family position; faces are the
/// index sets with nonempty common intersection, `∅` always included.
pub fn nerve(family: &[TraceSet], guards: &Guards) -> Result<SimplicialComplex, SweepError> {
    check_family(family, guards)?;
    Ok(complex_from_faces(family.len(), &nerve_faces(family)))
}

fn complex_from_faces(n: usize, faces: &BTreeMap<Mask, TraceSet>) -> SimplicialComplex {
    let mut masks: BTreeSet<Mask> = faces.keys().copied().collect();
    masks.insert(0);
    SimplicialComplex::from_parts(labels_for(n), masks)
}

/// Removes from every set at position `support` (0-based) the level-`level`
/// points with coordinate `<= a` and all levels above `level`.
pub fn truncate_family(
    family: &[TraceSet],
    support: &[usize],
    level: usize,
    a: &Rat,
) -> Vec<TraceSet> {
    let mut out = family.to_vec();
    for &s in support {
        let t = &family[s];
        let coords = t.ground().level(level);
        let cut = coords.partition_point(|x| x <= a);
        let runs = t
            .runs()
            .iter()
            .enumerate()
            .map(|(i, r)| match (i + 1).cmp(&level) {
                std::cmp::Ordering::Less => *r,
                std::cmp::Ordering::Greater => None,
                std::cmp::Ordering::Equal => r.and_then(|(lo, hi)| {
                    let lo = lo.max(cut);
                    (lo <= hi).then_some((lo, hi))
                }),
            })
            .collect();
        out[s] = t.with_runs(runs);
    }
    out
}

fn index_key(mask: Mask) -> Vec<u32> {
    (0..64).filter(|b| mask >> b & 1 == 1).collect()
}

/// Runs the lexicographic sweep on the nerve of `family` and returns the
/// collapse sequence with bound `2d − 1`.
///
/// Each round picks the face whose intersection has the least sweep value
/// (ties: fewer sets, then the lexicographically smaller index set),
/// collapses it, and transforms the family: a single set is deleted
/// (replaced by the empty trace), otherwise the supporting sets are
/// truncated at the first finite level of the sweep value. After every
/// round the nerve of the new family must equal the collapsed complex;
/// any discrepancy aborts with a [`SweepError`] carrying both complexes.
pub fn sweep_collapse(
    family: &[TraceSet],
    guards: &Guards,
) -> Result<CollapseSequence, SweepError> {
    check_family(family, guards)?;
    let Some(first) = family.first() else {
        return Ok(CollapseSequence {
            bound: 1,
            steps: Vec::new(),
        });
    };
    let d = first.d();
    let bound = 2 * d - 1;
    let n = family.len();
    let mut current = family.to_vec();
    let mut faces = nerve_faces(&current);
    let mut k = complex_from_faces(n, &faces);
    let mut seq = CollapseSequence {
        bound,
        steps: Vec::new(),
    };

    while let Some((&sigma, inter)) = faces.iter().min_by(|(ma, ta), (mb, tb)| {
        (ta.f_key(), ma.count_ones(), index_key(**ma)).cmp(&(
            tb.f_key(),
            mb.count_ones(),
            index_key(**mb),
        ))
    }) {
        let step = seq.steps.len();
        let size = sigma.count_ones() as usize;
        let f = f_value(inter);
        if size > bound {
            return Err(SweepError::SupportTooLarge {
                step,
                sigma: k.labels_of(sigma),
                size,
                bound,
            });
        }
        if !k.is_free_mask(sigma) {
            return Err(SweepError::NotFree {
                step,
                sigma: k.labels_of(sigma),
                nerve: k,
            });
        }
        let (collapsed, record) = k.collapse_mask(sigma)?;
        seq.steps.push(record);

        let support: Vec<usize> = index_key(sigma).into_iter().map(|b| b as usize).collect();
        let transformed = if size == 1 {
            let mut next = current.clone();
            next[support[0]] = TraceSet::empty(current[support[0]].ground());
            next
        } else {
            let (level, a) = f
                .components()
                .iter()
                .enumerate()
                .find_map(|(i, c)| match c {
                    FCoord::Finite(x) => Some((i + 1, x.clone())),
                    FCoord::NegInf => None,
                })
                .expect("faces of the nerve have nonempty intersections");
            truncate_family(&current, &support, level, &a)
        };
        let next_faces = nerve_faces(&transformed);
        let next_k = complex_from_faces(n, &next_faces);
        if next_k != collapsed {
            return Err(SweepError::FamilyMismatch(Box::new(FamilyMismatch {
                step,
                sigma: k.labels_of(sigma),
                f,
                family: current,
                transformed,
                expected: collapsed,
                actual: next_k,
            })));
        }
        current = transformed;
        faces = next_faces;
        k = next_k;
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{hull, trace_of, DInterval, Point, PointSet};
    use std::sync::Arc;

    fn g() -> Guards {
        Guards::default()
    }

    fn pts(v: &[(i64, usize)]) -> Vec<Point> {
        v.iter().map(|&(x, l)| Point::new(x, l)).collect()
    }

    fn three_sets() -> Vec<TraceSet> {
        let p = Arc::new(PointSet::from_int_levels(&[&[0, 1], &[0, 1]]).unwrap());
        vec![
            hull(&p, &pts(&[(0, 1), (1, 1)])).unwrap(),
            hull(&p, &pts(&[(0, 2), (1, 2)])).unwrap(),
            hull(&p, &pts(&[(1, 1), (0, 2)])).unwrap(),
        ]
    }

    #[test]
    fn nerve_examples() {
        let k = nerve(&three_sets(), &g()).unwrap();
        assert_eq!(
            k.face_lists(),
            vec![vec![], vec![1], vec![2], vec![3], vec![1, 3], vec![2, 3]]
        );

        let fam = three_sets();
        assert_eq!(
            nerve(&fam[..1], &g()).unwrap().face_lists(),
            vec![vec![], vec![1]]
        );
        assert_eq!(
            nerve(&fam[..2], &g()).unwrap().face_lists(),
            vec![vec![], vec![1], vec![2]]
        );
    }

    #[test]
    fn nerve_guard() {
        let fam = vec![three_sets()[0].clone(); 21];
        assert!(matches!(nerve(&fam, &g()), Err(SweepError::Guard(_))));
    }

    #[test]
    fn sweep_two_intervals_on_line() {
        let p = Arc::new(PointSet::from_int_levels(&[&[0, 1, 2, 3]]).unwrap());
        let fam = vec![
            trace_of(&DInterval::from_ints(&[Some((0, 2))]).unwrap(), &p).unwrap(),
            trace_of(&DInterval::from_ints(&[Some((1, 3))]).unwrap(), &p).unwrap(),
        ];
        let seq = sweep_collapse(&fam, &g()).unwrap();
        let faces: Vec<_> = seq.steps.iter().map(|s| s.free_face.clone()).collect();
        assert_eq!(faces, vec![vec![1], vec![2]]);
        seq.replay(&nerve(&fam, &g()).unwrap()).unwrap();
    }

    #[test]
    fn sweep_three_sets_in_plane() {
        let fam = three_sets();
        let seq = sweep_collapse(&fam, &g()).unwrap();
        let faces: Vec<_> = seq.steps.iter().map(|s| s.free_face.clone()).collect();
        assert_eq!(faces, vec![vec![2, 3], vec![2], vec![1], vec![3]]);
        assert!(seq.max_face_dim() <= 2);
        seq.replay(&nerve(&fam, &g()).unwrap()).unwrap();
    }

    #[test]
    fn sweep_empty_family() {
        assert!(sweep_collapse(&[], &g()).unwrap().steps.is_empty());
    }

    #[test]
    fn truncation_can_break_the_nerve() {
        // Both sets lose their only common level-1 point and everything on
        // level 2, so the collapsed complex's vertices disappear too.
        let p = Arc::new(PointSet::new(2, pts(&[(0, 1), (0, 2), (1, 2)])).unwrap());
        let fam = vec![
            TraceSet::from_ids(
                &p,
                &[
                    p.require(&Point::new(0, 1)).unwrap(),
                    p.require(&Point::new(1, 2)).unwrap(),
                ],
            )
            .unwrap(),
            hull(&p, &pts(&[(0, 1), (0, 2)])).unwrap(),
        ];
        match sweep_collapse(&fam, &g()).unwrap_err() {
            SweepError::FamilyMismatch(m) => {
                assert_eq!(m.sigma, vec![1, 2]);
                assert_eq!(m.expected.face_lists(), vec![vec![], vec![1], vec![2]]);
                assert_eq!(m.actual.face_lists(), vec![Vec::<i64>::new()]);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn truncate_examples() {
        let p = Arc::new(PointSet::from_int_levels(&[&[0, 1, 2], &[0, 1, 2]]).unwrap());
        let c = trace_of(
            &DInterval::from_ints(&[Some((0, 3)), Some((0, 3))]).unwrap(),
            &p,
        )
        .unwrap();
        let out = truncate_family(std::slice::from_ref(&c), &[0], 1, &Rat::from_int(1));
        assert_eq!(out[0].points(), pts(&[(2, 1)]));

        let out = truncate_family(std::slice::from_ref(&c), &[0], 2, &Rat::from_int(-1));
        assert_eq!(out[0], c);

        let out = truncate_family(&[c.clone(), c.clone()], &[1], 1, &Rat::from_int(-5));
        assert_eq!(out[0], c);
        assert_eq!(out[1].points(), pts(&[(0, 1), (1, 1), (2, 1)]));
    }
}
