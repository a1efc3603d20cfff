//! Explicit simplicial complexes and elementary collapses.
//!
//! Faces are bitmasks over vertex positions (at most 64 vertices); each
//! position carries an integer label used in all external output.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::guards::{GuardError, Guards};

pub type Mask = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("too many vertices: {0} (at most 64)")]
    TooManyVertices(usize),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(i64),
    #[error("unknown vertex label {0}")]
    UnknownLabel(i64),
    #[error("face {0:?} is missing its subface {1:?}")]
    NotDownwardClosed(Vec<i64>, Vec<i64>),
    #[error("{0:?} is not a face")]
    NotAFace(Vec<i64>),
    #[error("{face:?} is not free; maximal faces containing it: {maximal:?}")]
    NotFree {
        face: Vec<i64>,
        maximal: Vec<Vec<i64>>,
    },
    #[error("step {step}: free face {face:?} has dimension above {bound_minus_one}")]
    DimensionTooLarge {
        step: usize,
        face: Vec<i64>,
        bound_minus_one: isize,
    },
    #[error("step {step}: recorded data does not match the complex")]
    StepMismatch { step: usize },
    #[error("replay ended at a complex with {0} nonempty faces")]
    NotEmptied(usize),
    #[error("vertex classes overlap or miss vertices")]
    BadPartition,
    #[error(transparent)]
    Guard(#[from] GuardError),
}

/// A downward-closed set of faces over labeled vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<i64>,
    faces: BTreeSet<Mask>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.faces.iter().map(|&m| self.labels_of(m)))
            .finish()
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.face_lists())
    }
}

fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| mask >> b & 1 == 1)
}

impl SimplicialComplex {
    /// Validates downward closure of the given faces.
    pub fn from_masks(
        labels: Vec<i64>,
        faces: impl IntoIterator<Item = Mask>,
    ) -> Result<Self, ComplexError> {
        check_labels(&labels)?;
        let faces: BTreeSet<Mask> = faces.into_iter().collect();
        let k = SimplicialComplex { labels, faces };
        for &face in &k.faces {
            for b in bits(face) {
                let sub = face & !(1 << b);
                if !k.faces.contains(&sub) {
                    return Err(ComplexError::NotDownwardClosed(
                        k.labels_of(face),
                        k.labels_of(sub),
                    ));
                }
            }
        }
        Ok(k)
    }

    /// Faces given by label lists; must already be downward closed.
    pub fn from_faces(labels: Vec<i64>, faces: &[Vec<i64>]) -> Result<Self, ComplexError> {
        check_labels(&labels)?;
        let masks = faces
            .iter()
            .map(|f| mask_for(&labels, f))
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialComplex::from_masks(labels, masks)
    }

    /// Downward closure of the given facets (plus the empty face).
    pub fn from_facets(labels: Vec<i64>, facets: &[Vec<i64>]) -> Result<Self, ComplexError> {
        check_labels(&labels)?;
        let mut faces = BTreeSet::new();
        faces.insert(0);
        for facet in facets {
            let m = mask_for(&labels, facet)?;
            let mut sub = m;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        Ok(SimplicialComplex { labels, faces })
    }

    /// The full simplex on `labels`.
    pub fn simplex(labels: Vec<i64>) -> Result<Self, ComplexError> {
        let facet = labels.clone();
        SimplicialComplex::from_facets(labels, &[facet])
    }

    pub(crate) fn from_parts(labels: Vec<i64>, faces: BTreeSet<Mask>) -> Self {
        SimplicialComplex { labels, faces }
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn masks(&self) -> &BTreeSet<Mask> {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn labels_of(&self, mask: Mask) -> Vec<i64> {
        bits(mask).map(|b| self.labels[b]).collect()
    }

    pub fn mask_of(&self, face: &[i64]) -> Result<Mask, ComplexError> {
        mask_for(&self.labels, face)
    }

    /// Faces as sorted label lists, ordered by size then lexicographically.
    pub fn face_lists(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.faces.iter().map(|&m| self.labels_of(m)).collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    pub fn contains(&self, face: &[i64]) -> bool {
        self.mask_of(face).is_ok_and(|m| self.faces.contains(&m))
    }

    pub fn contains_mask(&self, mask: Mask) -> bool {
        self.faces.contains(&mask)
    }

    /// `max |face| − 1`; `-1` for `{∅}` and for the empty complex.
    pub fn dim(&self) -> isize {
        self.faces
            .iter()
            .map(|m| m.count_ones() as isize)
            .max()
            .unwrap_or(0)
            - 1
    }

    /// No faces at all, not even `∅`.
    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// No nonempty faces: `{∅}` or the empty complex.
    pub fn is_void(&self) -> bool {
        self.faces.iter().all(|&m| m == 0)
    }

    pub fn maximal_masks(&self) -> Vec<Mask> {
        maximal_of(&self.faces)
    }

    pub fn maximal_faces(&self) -> Vec<Vec<i64>> {
        self.maximal_masks()
            .into_iter()
            .map(|m| self.labels_of(m))
            .collect()
    }

    fn maximal_containing(&self, sigma: Mask) -> Vec<Mask> {
        self.maximal_masks()
            .into_iter()
            .filter(|&m| m & sigma == sigma)
            .collect()
    }

    pub fn is_free_mask(&self, sigma: Mask) -> bool {
        self.faces.contains(&sigma) && self.maximal_containing(sigma).len() == 1
    }

    /// `coll(K, σ)`: drop every face containing `σ`. No freeness check.
    pub fn coll_mask(&self, sigma: Mask) -> SimplicialComplex {
        SimplicialComplex {
            labels: self.labels.clone(),
            faces: self
                .faces
                .iter()
                .copied()
                .filter(|&m| m & sigma != sigma)
                .collect(),
        }
    }

    pub fn elementary_collapse(
        &self,
        sigma: &[i64],
    ) -> Result<(SimplicialComplex, CollapseStep), ComplexError> {
        let m = self.mask_of(sigma)?;
        self.collapse_mask(m)
    }

    pub fn collapse_mask(
        &self,
        sigma: Mask,
    ) -> Result<(SimplicialComplex, CollapseStep), ComplexError> {
        if !self.faces.contains(&sigma) {
            return Err(ComplexError::NotAFace(self.labels_of(sigma)));
        }
        let maximal = self.maximal_containing(sigma);
        if maximal.len() != 1 {
            return Err(ComplexError::NotFree {
                face: self.labels_of(sigma),
                maximal: maximal.iter().map(|&m| self.labels_of(m)).collect(),
            });
        }
        let removed: Vec<Vec<i64>> = self
            .faces
            .iter()
            .filter(|&&m| m & sigma == sigma)
            .map(|&m| self.labels_of(m))
            .collect();
        let step = CollapseStep {
            free_face: self.labels_of(sigma),
            unique_maximal: self.labels_of(maximal[0]),
            removed_faces: removed,
        };
        Ok((self.coll_mask(sigma), step))
    }
}

fn check_labels(labels: &[i64]) -> Result<(), ComplexError> {
    if labels.len() > 64 {
        return Err(ComplexError::TooManyVertices(labels.len()));
    }
    let mut seen = HashSet::new();
    for &l in labels {
        if !seen.insert(l) {
            return Err(ComplexError::DuplicateLabel(l));
        }
    }
    Ok(())
}

fn mask_for(labels: &[i64], face: &[i64]) -> Result<Mask, ComplexError> {
    face.iter().try_fold(0, |acc, l| {
        labels
            .iter()
            .position(|x| x == l)
            .map(|p| acc | 1 << p)
            .ok_or(ComplexError::UnknownLabel(*l))
    })
}

fn maximal_of(faces: &BTreeSet<Mask>) -> Vec<Mask> {
    let mut by_size: Vec<Mask> = faces.iter().copied().collect();
    by_size.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut maximal: Vec<Mask> = Vec::new();
    for m in by_size {
        if !maximal.iter().any(|&big| big & m == m) {
            maximal.push(m);
        }
    }
    maximal.sort_unstable();
    maximal
}

/// One elementary collapse, recorded in vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseStep {
    pub free_face: Vec<i64>,
    pub unique_maximal: Vec<i64>,
    pub removed_faces: Vec<Vec<i64>>,
}

/// Ordered collapses with dimension bound `b`: every free face has dim `<= b − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseSequence {
    pub bound: usize,
    pub steps: Vec<CollapseStep>,
}

impl CollapseSequence {
    /// Re-executes every step on `initial`, checking the recorded data, the
    /// dimension bound, and that the result has no nonempty face left.
    pub fn replay(&self, initial: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        let mut k = initial.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let dim = step.free_face.len() as isize - 1;
            if dim > self.bound as isize - 1 {
                return Err(ComplexError::DimensionTooLarge {
                    step: i,
                    face: step.free_face.clone(),
                    bound_minus_one: self.bound as isize - 1,
                });
            }
            let (next, actual) = k.elementary_collapse(&step.free_face)?;
            let mut recorded = step.removed_faces.clone();
            recorded.iter_mut().for_each(|f| f.sort_unstable());
            recorded.sort();
            let mut got = actual.removed_faces.clone();
            got.sort();
            let mut unique = step.unique_maximal.clone();
            unique.sort_unstable();
            if got != recorded || actual.unique_maximal != unique {
                return Err(ComplexError::StepMismatch { step: i });
            }
            k = next;
        }
        if !k.is_void() {
            return Err(ComplexError::NotEmptied(
                k.faces.iter().filter(|&&m| m != 0).count(),
            ));
        }
        Ok(k)
    }

    pub fn max_face_dim(&self) -> isize {
        self.steps
            .iter()
            .map(|s| s.free_face.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }
}

/// Exhaustive search for a `b`-collapse of `k` down to `{∅}`.
///
/// Collapsibility depends on the order of collapses, so this backtracks
/// over all free faces of dimension `<= b − 1`, memoizing complexes already
/// shown to be stuck. Returns a witness sequence or `None`.
pub fn is_d_collapsible(
    k: &SimplicialComplex,
    b: usize,
    guards: &Guards,
) -> Result<Option<CollapseSequence>, ComplexError> {
    Guards::check("faces", k.face_count(), guards.faces)?;
    let mut dead: HashSet<Vec<Mask>> = HashSet::new();
    let mut path: Vec<Mask> = Vec::new();
    let faces: Vec<Mask> = k.faces.iter().copied().collect();
    if search(&faces, b as u32, &mut dead, &mut path) {
        let mut seq = CollapseSequence {
            bound: b,
            steps: Vec::with_capacity(path.len()),
        };
        let mut cur = k.clone();
        for sigma in path {
            let (next, step) = cur.collapse_mask(sigma)?;
            seq.steps.push(step);
            cur = next;
        }
        Ok(Some(seq))
    } else {
        Ok(None)
    }
}

fn search(faces: &[Mask], b: u32, dead: &mut HashSet<Vec<Mask>>, path: &mut Vec<Mask>) -> bool {
    if faces.iter().all(|&m| m == 0) {
        return true;
    }
    if dead.contains(faces) {
        return false;
    }
    let set: BTreeSet<Mask> = faces.iter().copied().collect();
    let maximal = maximal_of(&set);
    for &sigma in faces {
        if sigma == 0 || sigma.count_ones() > b {
            continue;
        }
        let mut owners = maximal.iter().filter(|&&m| m & sigma == sigma);
        if owners.next().is_none() || owners.next().is_some() {
            continue;
        }
        let next: Vec<Mask> = faces
            .iter()
            .copied()
            .filter(|&m| m & sigma != sigma)
            .collect();
        path.push(sigma);
        if search(&next, b, dead, path) {
            return true;
        }
        path.pop();
    }
    dead.insert(faces.to_vec());
    false
}

/// Colorful-face count and per-class induced dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorfulStats {
    pub colorful_faces: u64,
    pub induced_dims: Vec<isize>,
}

/// Counts faces with exactly one vertex in each class and reports
/// `dim K[N_i]` per class (`-1` when the class spans no face).
pub fn colorful_face_stats(
    k: &SimplicialComplex,
    classes: &[Vec<i64>],
) -> Result<ColorfulStats, ComplexError> {
    let masks = classes
        .iter()
        .map(|c| k.mask_of(c))
        .collect::<Result<Vec<_>, _>>()?;
    let all: Mask = if k.labels.len() == 64 {
        !0
    } else {
        (1 << k.labels.len()) - 1
    };
    let mut union = 0;
    for (i, &m) in masks.iter().enumerate() {
        if union & m != 0 || m.count_ones() as usize != classes[i].len() {
            return Err(ComplexError::BadPartition);
        }
        union |= m;
    }
    if union != all {
        return Err(ComplexError::BadPartition);
    }
    let colorful_faces = k
        .faces
        .iter()
        .filter(|&&f| masks.iter().all(|&c| (f & c).count_ones() == 1))
        .count() as u64;
    let induced_dims = masks
        .iter()
        .map(|&c| {
            k.faces
                .iter()
                .filter(|&&f| f & !c == 0)
                .map(|f| f.count_ones() as isize)
                .max()
                .unwrap_or(0)
                - 1
        })
        .collect();
    Ok(ColorfulStats {
        colorful_faces,
        induced_dims,
    })
}
