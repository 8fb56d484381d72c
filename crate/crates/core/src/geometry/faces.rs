use std::collections::{BTreeSet, VecDeque};

use num::Signed;

use super::HalfSpace;
use crate::arith::{IntegerVector, RationalPoint};
use crate::error::{Error, Result};
use crate::linalg::rank;

/// A compact face of an upward-closed polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    /// Sorted lexicographically.
    pub vertices: Vec<RationalPoint>,
    /// Facets containing the face, sorted.
    pub active: Vec<HalfSpace>,
}

impl Face {
    pub fn active_normals(&self) -> Vec<IntegerVector> {
        self.active.iter().map(|h| h.normal.clone()).collect()
    }

    /// Active facets whose normals are strictly positive.
    pub fn compact_active(&self) -> impl Iterator<Item = &HalfSpace> {
        self.active.iter().filter(|h| h.normal.is_positive())
    }
}

pub(crate) fn affine_dim(points: &[RationalPoint]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let diffs: Vec<_> = rest.iter().map(|p| p.sub(p0).0).collect();
            rank(&diffs)
        }
    }
}

/// All compact faces of the polyhedron with the given vertices and facets.
///
/// Vertex sets of faces are exactly the non-empty intersections of facet
/// vertex sets. A face is compact iff the supports of the facet normals
/// containing it cover every coordinate, since its recession cone is the set
/// of nonnegative directions orthogonal to those normals.
pub fn enumerate_faces(vertices: &[RationalPoint], facets: &[HalfSpace]) -> Result<Vec<Face>> {
    let Some(first) = vertices.first() else {
        return Err(Error::InvalidInput(
            "face enumeration without vertices".into(),
        ));
    };
    let n = first.dim();
    if facets
        .iter()
        .any(|h| h.normal.dim() != n || !h.normal.is_nonnegative())
    {
        return Err(Error::InvalidInput(
            "face enumeration expects nonnegative facet normals".into(),
        ));
    }

    let incidence: Vec<BTreeSet<usize>> = facets
        .iter()
        .map(|h| {
            (0..vertices.len())
                .filter(|&i| h.is_tight(&vertices[i]))
                .collect()
        })
        .collect();

    let mut closed: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue: VecDeque<BTreeSet<usize>> = VecDeque::new();
    for set in &incidence {
        if !set.is_empty() && closed.insert(set.clone()) {
            queue.push_back(set.clone());
        }
    }
    while let Some(set) = queue.pop_front() {
        for other in &incidence {
            let meet: BTreeSet<usize> = set.intersection(other).copied().collect();
            if !meet.is_empty() && closed.insert(meet.clone()) {
                queue.push_back(meet);
            }
        }
    }

    let mut faces = Vec::new();
    for set in closed {
        let active: Vec<HalfSpace> = facets
            .iter()
            .zip(&incidence)
            .filter(|(_, inc)| set.is_subset(inc))
            .map(|(h, _)| h.clone())
            .collect();
        let covered = (0..n).all(|i| active.iter().any(|h| h.normal[i].is_positive()));
        if !covered {
            continue;
        }
        let mut pts: Vec<RationalPoint> = set.iter().map(|&i| vertices[i].clone()).collect();
        pts.sort();
        faces.push(Face {
            dim: affine_dim(&pts),
            vertices: pts,
            active,
        });
    }
    faces.sort();
    Ok(faces)
}
