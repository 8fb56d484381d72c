//! Exact convex geometry for upward-closed polyhedra in the nonnegative orthant.
//!
//! Dual descriptions are computed by candidate-normal enumeration, linear
//! programs by exhaustive basis enumeration, and volumes by a pulling
//! triangulation. Everything is exact and deterministic; ties are broken by
//! lexicographic order.

mod cone;
mod faces;
mod hull;
mod lp;
mod volume;

use num::Zero;

use crate::arith::{IntegerVector, Rational, RationalPoint};
use crate::error::{Error, Result};

pub use cone::cone_halfspaces;
pub use faces::{enumerate_faces, Face};
pub(crate) use hull::ray_entry;
pub use hull::{upward_hull, UpwardHull};
pub use lp::{basic_feasible_points, minimize_linear, LpOutcome};
pub use volume::{polytope_volume, pulling_triangulation};

/// Largest supported number of variables.
pub const MAX_DIM: usize = 6;

pub fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "ambient dimension must be positive".into(),
        ));
    }
    if n > MAX_DIM {
        return Err(Error::DimensionLimit { n, cap: MAX_DIM });
    }
    Ok(())
}

/// `v / gcd` of its nonzero entries, for nonnegative nonzero `v`.
pub fn primitive(v: &IntegerVector) -> Result<IntegerVector> {
    if v.is_zero() {
        return Err(Error::InvalidInput("primitive of the zero vector".into()));
    }
    if !v.is_nonnegative() {
        return Err(Error::InvalidInput(format!(
            "primitive of {v}: negative entry"
        )));
    }
    Ok(v.primitive_signed())
}

/// The closed half-space `{k : <normal, k> >= offset}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: IntegerVector,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: IntegerVector, offset: Rational) -> Self {
        HalfSpace { normal, offset }
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.normal.dot_point(p) >= self.offset
    }

    pub fn is_tight(&self, p: &RationalPoint) -> bool {
        self.normal.dot_point(p) == self.offset
    }

    /// The pair of half-spaces cutting out `<normal, k> = offset`.
    pub fn equality(normal: IntegerVector, offset: Rational) -> [HalfSpace; 2] {
        let neg = IntegerVector(normal.0.iter().map(|c| -c).collect());
        [
            HalfSpace::new(normal, offset.clone()),
            HalfSpace::new(neg, -offset),
        ]
    }
}

/// Intersection of finitely many half-spaces. Possibly unbounded or empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    pub ambient_dim: usize,
    pub halfspaces: Vec<HalfSpace>,
}

impl HPolyhedron {
    pub fn new(ambient_dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if let Some(h) = halfspaces.iter().find(|h| h.normal.dim() != ambient_dim) {
            return Err(Error::InvalidInput(format!(
                "half-space normal {} does not live in dimension {ambient_dim}",
                h.normal
            )));
        }
        Ok(HPolyhedron {
            ambient_dim,
            halfspaces,
        })
    }

    /// `{k : k >= 0}`.
    pub fn orthant(n: usize) -> Self {
        let halfspaces = (0..n)
            .map(|i| HalfSpace::new(IntegerVector::unit(n, i), Rational::zero()))
            .collect();
        HPolyhedron {
            ambient_dim: n,
            halfspaces,
        }
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.halfspaces.iter().all(|h| h.contains(p))
    }

    pub fn intersect(&self, other: &HPolyhedron) -> HPolyhedron {
        let mut halfspaces = self.halfspaces.clone();
        halfspaces.extend(other.halfspaces.iter().cloned());
        halfspaces.sort();
        halfspaces.dedup();
        HPolyhedron {
            ambient_dim: self.ambient_dim,
            halfspaces,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_examples() {
        let p = |v: &[i64]| primitive(&IntegerVector::from_i64(v)).unwrap();
        assert_eq!(p(&[4, 6]), IntegerVector::from_i64(&[2, 3]));
        assert_eq!(p(&[1, 3]), IntegerVector::from_i64(&[1, 3]));
        assert_eq!(p(&[0, 5, 10]), IntegerVector::from_i64(&[0, 1, 2]));
    }

    #[test]
    fn primitive_rejects_zero() {
        assert!(matches!(
            primitive(&IntegerVector::from_i64(&[0, 0])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn dimension_cap() {
        assert!(check_dim(6).is_ok());
        assert_eq!(check_dim(7), Err(Error::DimensionLimit { n: 7, cap: 6 }));
    }
}
