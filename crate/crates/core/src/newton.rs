//! Monomial ideals and their Newton polyhedra.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};

use crate::arith::{int, Integer, IntegerVector, Rational, RationalPoint};
use crate::error::{internal, Error, Result};
use crate::geometry::{
    check_dim, cone_halfspaces, enumerate_faces, upward_hull, Face, HPolyhedron, HalfSpace,
};

/// A monomial ideal, identified with its minimal set of exponent vectors.
///
/// The zero ideal (no generators) is representable so that restrictions stay
/// total; [`MonomialIdeal::is_zero`] flags it.
#[derive(Clone, Debug)]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: Vec<IntegerVector>,
    names: Option<Vec<String>>,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.generators == other.generators
    }
}

impl Eq for MonomialIdeal {}

impl MonomialIdeal {
    /// Builds the ideal, pruning duplicate and non-minimal generators.
    pub fn new(num_vars: usize, generators: Vec<IntegerVector>) -> Result<Self> {
        check_dim(num_vars)?;
        if generators.is_empty() {
            return Err(Error::InvalidInput(
                "ideal needs at least one generator".into(),
            ));
        }
        if let Some(g) = generators
            .iter()
            .find(|g| g.dim() != num_vars || !g.is_nonnegative())
        {
            return Err(Error::InvalidInput(format!(
                "exponent {g} is not a nonnegative vector of length {num_vars}"
            )));
        }
        Ok(MonomialIdeal {
            num_vars,
            generators: minimalize(generators),
            names: None,
        })
    }

    pub fn from_exponents(num_vars: usize, exps: &[&[i64]]) -> Result<Self> {
        Self::new(
            num_vars,
            exps.iter().map(|e| IntegerVector::from_i64(e)).collect(),
        )
    }

    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            generators: Vec::new(),
            names: None,
        }
    }

    pub fn unit(num_vars: usize) -> Result<Self> {
        Self::new(num_vars, vec![IntegerVector::zeros(num_vars)])
    }

    /// The maximal ideal `<x_1, ..., x_n>`.
    pub fn maximal(num_vars: usize) -> Result<Self> {
        Self::new(
            num_vars,
            (0..num_vars)
                .map(|i| IntegerVector::unit(num_vars, i))
                .collect(),
        )
    }

    /// `<x_1^{a_1}, ..., x_n^{a_n}>`.
    pub fn pure_powers(exponents: &[i64]) -> Result<Self> {
        let n = exponents.len();
        Self::new(
            n,
            exponents
                .iter()
                .enumerate()
                .map(|(i, &a)| IntegerVector::unit(n, i).scale(&int(a)))
                .collect(),
        )
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        self.names = Some(names);
        self
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Sorted minimal generators.
    pub fn generators(&self) -> &[IntegerVector] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(IntegerVector::is_zero)
    }

    pub fn contains_monomial(&self, k: &IntegerVector) -> bool {
        self.generators.iter().any(|g| g.le_all(k))
    }

    /// Contains a pure power of every variable.
    pub fn is_finite_colength(&self) -> bool {
        (0..self.num_vars).all(|i| {
            self.generators
                .iter()
                .any(|g| g.support().iter().all(|&j| j == i))
        })
    }

    /// `I + J`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        if gens.is_empty() {
            return Ok(Self::zero(self.num_vars));
        }
        Self::new(self.num_vars, gens)
    }

    /// `I * J`: generators are pairwise exponent sums.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.num_vars));
        }
        let gens = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.add(b)))
            .collect();
        Self::new(self.num_vars, gens)
    }

    pub fn power(&self, s: u32) -> Result<Self> {
        let mut acc = Self::unit(self.num_vars)?;
        for _ in 0..s {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Minimal generator degree; `None` for the zero ideal.
    pub fn order(&self) -> Option<Integer> {
        self.generators.iter().map(IntegerVector::sum).min()
    }

    /// `I^L`: generators supported in `axes`, written in those variables only.
    pub fn restrict(&self, axes: &[usize]) -> Result<Self> {
        let axes = self.check_axes(axes)?;
        let gens: Vec<IntegerVector> = self
            .supported_in(&axes)
            .map(|g| IntegerVector(axes.iter().map(|&a| g[a].clone()).collect()))
            .collect();
        if gens.is_empty() {
            return Ok(Self::zero(axes.len()));
        }
        Self::new(axes.len(), gens)
    }

    /// `I^L O_n`: generators supported in `axes`, kept in all `n` variables.
    pub fn restrict_embedded(&self, axes: &[usize]) -> Result<Self> {
        let axes = self.check_axes(axes)?;
        let gens: Vec<IntegerVector> = self.supported_in(&axes).cloned().collect();
        if gens.is_empty() {
            return Ok(Self::zero(self.num_vars));
        }
        Self::new(self.num_vars, gens)
    }

    pub fn newton_polyhedron(&self) -> Result<NewtonPolyhedron> {
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "the zero ideal has no Newton polyhedron".into(),
            ));
        }
        NewtonPolyhedron::from_points(
            self.generators
                .iter()
                .map(IntegerVector::to_point)
                .collect(),
        )
    }

    /// Minimal monomial generators of the integral closure.
    pub fn closure_generators(&self) -> Result<Self> {
        let p = self.newton_polyhedron()?;
        Self::new(self.num_vars, p.lattice_minimal_points()?)
    }

    fn supported_in<'a>(&'a self, axes: &'a [usize]) -> impl Iterator<Item = &'a IntegerVector> {
        self.generators
            .iter()
            .filter(move |g| g.support().iter().all(|i| axes.contains(i)))
    }

    fn check_axes(&self, axes: &[usize]) -> Result<Vec<usize>> {
        let set: BTreeSet<usize> = axes.iter().copied().collect();
        if set.is_empty() || set.iter().any(|&a| a >= self.num_vars) {
            return Err(Error::InvalidInput(format!(
                "axis subset {axes:?} is not a non-empty subset of 0..{}",
                self.num_vars
            )));
        }
        Ok(set.into_iter().collect())
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::InvalidInput(format!(
                "ideals live in {} and {} variables",
                self.num_vars, other.num_vars
            )));
        }
        Ok(())
    }
}

/// Keeps the componentwise-minimal vectors, sorted.
fn minimalize(gens: Vec<IntegerVector>) -> Vec<IntegerVector> {
    let unique: BTreeSet<IntegerVector> = gens.into_iter().collect();
    let unique: Vec<IntegerVector> = unique.into_iter().collect();
    unique
        .iter()
        .filter(|g| !unique.iter().any(|h| h != *g && h.le_all(g)))
        .cloned()
        .collect()
}

/// Newton polyhedron `conv(A) + R^n_{>=0}` with its dual description and
/// compact faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    dim: usize,
    vertices: Vec<RationalPoint>,
    facets: Vec<HalfSpace>,
    compact_faces: Vec<Face>,
    axis_intercepts: Vec<Option<Rational>>,
}

/// Value and minimizing face of a linear functional on a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub value: Rational,
    /// Vertices attaining the minimum.
    pub face: Vec<RationalPoint>,
    /// False when the functional has a zero entry, so the face is unbounded.
    pub compact: bool,
}

/// The cone over a compact face, as an H-polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCone {
    pub face: Face,
    pub region: HPolyhedron,
}

impl NewtonPolyhedron {
    pub fn from_points(points: Vec<RationalPoint>) -> Result<Self> {
        let hull = upward_hull(&points)?;
        let compact_faces = enumerate_faces(&hull.vertices, &hull.facets)?;
        let axis_intercepts = (0..hull.dim)
            .map(|i| crate::geometry::ray_entry(&hull.facets, &IntegerVector::unit(hull.dim, i)))
            .collect();
        Ok(NewtonPolyhedron {
            dim: hull.dim,
            vertices: hull.vertices,
            facets: hull.facets,
            compact_faces,
            axis_intercepts,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    /// Facets with strictly positive normals.
    pub fn compact_facets(&self) -> impl Iterator<Item = &HalfSpace> {
        self.facets.iter().filter(|h| h.normal.is_positive())
    }

    pub fn compact_faces(&self) -> &[Face] {
        &self.compact_faces
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = &Face> {
        self.compact_faces.iter().filter(move |f| f.dim == d)
    }

    pub fn axis_intercepts(&self) -> &[Option<Rational>] {
        &self.axis_intercepts
    }

    /// Meets every coordinate axis.
    pub fn is_convenient(&self) -> bool {
        self.axis_intercepts.iter().all(Option::is_some)
    }

    pub fn region(&self) -> HPolyhedron {
        HPolyhedron {
            ambient_dim: self.dim,
            halfspaces: self.facets.clone(),
        }
    }

    pub fn contains(&self, k: &RationalPoint) -> bool {
        self.facets.iter().all(|h| h.contains(k))
    }

    /// Whether `r P_J ⊆ s P_I`, for `r, s >= 1`. Both sets are upward-closed
    /// and convex, so it suffices to test the scaled vertices of `P_J`.
    pub fn contains_scaled(r: u64, p_j: &Self, s: u64, p_i: &Self) -> Result<bool> {
        if r == 0 || s == 0 {
            return Err(Error::InvalidInput(
                "scaling factors must be positive".into(),
            ));
        }
        let t = Rational::new(Integer::from(r), Integer::from(s));
        Ok(p_j.vertices.iter().all(|u| p_i.contains(&u.scale(&t))))
    }

    /// `l(v, P)` together with the face on which it is attained.
    pub fn support(&self, v: &IntegerVector) -> Result<Support> {
        if v.dim() != self.dim || v.is_zero() || !v.is_nonnegative() {
            return Err(Error::InvalidInput(format!(
                "support functional {v} must be nonnegative and nonzero"
            )));
        }
        let value = self
            .vertices
            .iter()
            .map(|p| v.dot_point(p))
            .min()
            .expect("polyhedron has vertices");
        let face = self
            .vertices
            .iter()
            .filter(|p| v.dot_point(p) == value)
            .cloned()
            .collect();
        Ok(Support {
            value,
            face,
            compact: v.is_positive(),
        })
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::InvalidInput(
                "Minkowski sum across dimensions".into(),
            ));
        }
        let sums = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| a.add(b)))
            .collect();
        Self::from_points(sums)
    }

    /// `s P` for a positive rational `s`.
    pub fn dilate(&self, s: &Rational) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::InvalidInput(
                "dilation factor must be positive".into(),
            ));
        }
        let scale_face = |f: &Face| Face {
            dim: f.dim,
            vertices: f.vertices.iter().map(|p| p.scale(s)).collect(),
            active: f.active.iter().map(|h| scale_halfspace(h, s)).collect(),
        };
        Ok(NewtonPolyhedron {
            dim: self.dim,
            vertices: self.vertices.iter().map(|p| p.scale(s)).collect(),
            facets: self.facets.iter().map(|h| scale_halfspace(h, s)).collect(),
            compact_faces: self.compact_faces.iter().map(scale_face).collect(),
            axis_intercepts: self
                .axis_intercepts
                .iter()
                .map(|a| a.as_ref().map(|a| a * s))
                .collect(),
        })
    }

    /// The point where the ray through `u` enters the polyhedron.
    pub fn ray_intersection(&self, u: &IntegerVector) -> Result<RationalPoint> {
        if u.dim() != self.dim || u.is_zero() || !u.is_nonnegative() {
            return Err(Error::InvalidInput(format!(
                "ray direction {u} must be nonnegative and nonzero"
            )));
        }
        let t = crate::geometry::ray_entry(&self.facets, u)
            .ok_or_else(|| internal!("ray through {u} misses the polyhedron"))?;
        Ok(u.to_point().scale(&t))
    }

    /// The cone generated by a compact face.
    pub fn cone_of_face(&self, face: &Face) -> Result<FaceCone> {
        let halfspaces = cone_halfspaces(&face.vertices)?;
        Ok(FaceCone {
            face: face.clone(),
            region: HPolyhedron::new(self.dim, halfspaces)?,
        })
    }

    /// Minimal lattice points of the polyhedron (requires convenience).
    pub(crate) fn lattice_minimal_points(&self) -> Result<Vec<IntegerVector>> {
        let bounds: Vec<Integer> = self
            .axis_intercepts
            .iter()
            .map(|a| a.as_ref().map(|a| a.ceil().to_integer()))
            .collect::<Option<_>>()
            .ok_or(Error::NotFiniteColength)?;
        let mut out = Vec::new();
        for_each_lattice_point(&bounds, |k| {
            let p = k.to_point();
            if !self.contains(&p) {
                return;
            }
            let minimal = (0..self.dim).all(|i| {
                if k[i].is_zero() {
                    return true;
                }
                let mut q = p.clone();
                q.0[i] -= Rational::one();
                !self.contains(&q)
            });
            if minimal {
                out.push(k.clone());
            }
        });
        Ok(out)
    }
}

fn scale_halfspace(h: &HalfSpace, s: &Rational) -> HalfSpace {
    HalfSpace::new(h.normal.clone(), &h.offset * s)
}

/// Visits every lattice point of the box `prod [0, bounds_i]`.
pub(crate) fn for_each_lattice_point(bounds: &[Integer], mut f: impl FnMut(&IntegerVector)) {
    let n = bounds.len();
    let mut k = IntegerVector::zeros(n);
    if bounds.iter().any(Signed::is_negative) {
        return;
    }
    loop {
        f(&k);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if k.0[i] < bounds[i] {
                k.0[i] += 1;
                break;
            }
            k.0[i] = Integer::zero();
            i += 1;
        }
    }
}
