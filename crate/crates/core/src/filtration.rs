//! The Newton filtration induced by a convenient Newton polyhedron.
//!
//! For `J` of finite colength with compact facets `(v, l(v))`, the filtrating
//! map is `phi_J(k) = min_v (M_J / l(v)) <v, k>` where `M_J` is the lcm of the
//! support values. It is piecewise linear, equals `M_J` on the Newton
//! boundary, and is linear on the cone over each compact face.

use std::collections::BTreeSet;
use std::fmt;

use num::{Integer as _, One, Signed, Zero};

use crate::arith::{rat_int, Integer, IntegerVector, Rational, RationalPoint};
use crate::error::{internal, Error, Result};
use crate::geometry::{minimize_linear, Face, HPolyhedron, LpOutcome};
use crate::newton::{for_each_lattice_point, MonomialIdeal, NewtonPolyhedron};

/// One linear piece `multiplier * <normal, k>` of the filtrating map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub normal: IntegerVector,
    /// `l(normal, Γ_+(J))`.
    pub support: Integer,
    /// `M_J / support`.
    pub multiplier: Integer,
}

impl Piece {
    pub fn eval(&self, k: &RationalPoint) -> Rational {
        self.normal.dot_point(k) * rat_int(&self.multiplier)
    }

    /// The piece as a linear objective.
    pub fn objective(&self) -> RationalPoint {
        self.normal.scale(&self.multiplier).to_point()
    }
}

/// Weight data of a diagonal ideal `<x_1^{a_1}, ..., x_n^{a_n}>` (up to closure).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalData {
    pub exponents: Vec<Integer>,
    /// `(a/a_1, ..., a/a_n)` with `a = a_1 ... a_n`.
    pub w: IntegerVector,
    /// `gcd(w)`.
    pub w0: Integer,
    /// `w / w0`; `phi_J(k) = <v, k>`.
    pub v: IntegerVector,
}

/// `nu` of an ideal; the zero ideal has value `+inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NuValue {
    Finite(Rational),
    Infinite,
}

impl NuValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            NuValue::Finite(v) => Some(v),
            NuValue::Infinite => None,
        }
    }
}

impl fmt::Display for NuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuValue::Finite(v) => write!(f, "{}", crate::arith::fmt_rational(v)),
            NuValue::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationMap {
    source: NewtonPolyhedron,
    pieces: Vec<Piece>,
    m: Integer,
    diagonal: Option<DiagonalData>,
}

impl FiltrationMap {
    pub fn new(j: &MonomialIdeal) -> Result<Self> {
        if j.is_zero() || j.is_unit() {
            return Err(Error::InvalidInput(
                "filtration needs a proper non-zero ideal".into(),
            ));
        }
        Self::from_polyhedron(j.newton_polyhedron()?)
    }

    /// Requires a convenient polyhedron with integral support values.
    pub fn from_polyhedron(source: NewtonPolyhedron) -> Result<Self> {
        if !source.is_convenient() {
            return Err(Error::NotFiniteColength);
        }
        let supports: Vec<(IntegerVector, Integer)> = source
            .compact_facets()
            .map(|h| {
                if h.offset.denom().is_one() && h.offset.is_positive() {
                    Ok((h.normal.clone(), h.offset.numer().clone()))
                } else {
                    Err(Error::InvalidInput(format!(
                        "support value {} is not a positive integer",
                        crate::arith::fmt_rational(&h.offset)
                    )))
                }
            })
            .collect::<Result<_>>()?;
        if supports.is_empty() {
            return Err(Error::InvalidInput(
                "polyhedron has no compact facet".into(),
            ));
        }
        let m = supports
            .iter()
            .fold(Integer::one(), |acc, (_, l)| acc.lcm(l));
        let pieces = supports
            .into_iter()
            .map(|(normal, support)| Piece {
                multiplier: &m / &support,
                normal,
                support,
            })
            .collect();
        let diagonal = diagonal_data(&source);
        Ok(FiltrationMap {
            source,
            pieces,
            m,
            diagonal,
        })
    }

    pub fn source(&self) -> &NewtonPolyhedron {
        &self.source
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// `M_J`.
    pub fn m(&self) -> &Integer {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    pub fn diagonal(&self) -> Option<&DiagonalData> {
        self.diagonal.as_ref()
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal.is_some()
    }

    /// `Γ_+(J) = Γ_+(m)`, i.e. `J` has the maximal ideal as closure.
    pub fn is_maximal(&self) -> bool {
        self.diagonal
            .as_ref()
            .is_some_and(|d| d.exponents.iter().all(One::is_one))
    }

    pub fn phi(&self, k: &RationalPoint) -> Result<Rational> {
        if k.dim() != self.dim() || !k.is_nonnegative() {
            return Err(Error::InvalidInput(format!(
                "phi is defined on nonnegative points of dimension {}, got {k}",
                self.dim()
            )));
        }
        Ok(self.phi_unchecked(k))
    }

    pub(crate) fn phi_unchecked(&self, k: &RationalPoint) -> Rational {
        self.pieces
            .iter()
            .map(|p| p.eval(k))
            .min()
            .expect("filtration has pieces")
    }

    pub fn nu_monomial(&self, k: &IntegerVector) -> Result<Rational> {
        self.phi(&k.to_point())
    }

    /// `nu_J(I)`: the minimum of `phi_J` over the generators, which suffices
    /// because `phi_J` is monotone in every coordinate.
    pub fn nu_ideal(&self, ideal: &MonomialIdeal) -> Result<NuValue> {
        if ideal.num_vars() != self.dim() {
            return Err(Error::InvalidInput(
                "ideal and filtration differ in dimension".into(),
            ));
        }
        Ok(ideal
            .generators()
            .iter()
            .map(|g| self.phi_unchecked(&g.to_point()))
            .min()
            .map_or(NuValue::Infinite, NuValue::Finite))
    }

    /// `I ⊆ closure(J)`, decided by `nu_J(I) >= M_J`.
    pub fn closure_contains(&self, ideal: &MonomialIdeal) -> Result<bool> {
        Ok(match self.nu_ideal(ideal)? {
            NuValue::Finite(v) => v >= rat_int(&self.m),
            NuValue::Infinite => true,
        })
    }

    /// Pieces of the filtrating map active on a compact face of `Γ_+(J)`.
    pub fn pieces_on(&self, face: &Face) -> Vec<&Piece> {
        self.pieces
            .iter()
            .filter(|p| face.compact_active().any(|h| h.normal == p.normal))
            .collect()
    }

    /// Minimum of `phi_J` over `region`, which must lie in the cone over
    /// `face`. There `phi_J` is linear and every active piece gives the same
    /// minimum; this is checked.
    pub fn nu_region(
        &self,
        region: &HPolyhedron,
        face: &Face,
    ) -> Result<(Rational, RationalPoint)> {
        let pieces = self.pieces_on(face);
        if pieces.is_empty() {
            return Err(internal!("face without an active compact facet"));
        }
        let region = region.intersect(&HPolyhedron::orthant(self.dim()));
        let mut result: Option<(Rational, RationalPoint)> = None;
        for piece in pieces {
            let (value, witness) = match minimize_linear(&piece.objective(), &region)? {
                LpOutcome::Optimal { value, witness } => (value, witness),
                LpOutcome::Empty => return Err(Error::EmptyRegion),
            };
            match &result {
                None => result = Some((value, witness)),
                Some((v, _)) if *v != value => {
                    return Err(internal!(
                        "filtration pieces disagree on a face cone: {} vs {}",
                        crate::arith::fmt_rational(v),
                        crate::arith::fmt_rational(&value)
                    ))
                }
                Some(_) => {}
            }
        }
        Ok(result.expect("at least one piece"))
    }

    /// `nu_J(Γ_+(I) ∩ C(Δ))` for a compact face `Δ` of `Γ_+(J)`.
    pub fn nu_on_face_cone(
        &self,
        p_i: &NewtonPolyhedron,
        face: &Face,
    ) -> Result<(Rational, RationalPoint)> {
        let cone = self.source.cone_of_face(face)?;
        self.nu_region(&p_i.region().intersect(&cone.region), face)
    }

    /// Bound on coordinate `i` of the minimal points of `{phi >= level}`.
    fn level_bound(&self, level: &Rational, i: usize) -> Integer {
        self.pieces
            .iter()
            .map(|p| {
                let denom = rat_int(&(&p.multiplier * &p.normal[i]));
                (level / denom).ceil().to_integer()
            })
            .max()
            .expect("filtration has pieces")
    }

    /// Minimal monomial generators of `B_r = {h : nu_J(h) >= r}`.
    pub fn filtration_ideal(&self, r: u64) -> Result<MonomialIdeal> {
        let n = self.dim();
        if r == 0 {
            return MonomialIdeal::unit(n);
        }
        let level = Rational::from_integer(Integer::from(r));
        let bounds: Vec<Integer> = (0..n).map(|i| self.level_bound(&level, i)).collect();
        let mut gens = Vec::new();
        for_each_lattice_point(&bounds, |k| {
            let p = k.to_point();
            if self.phi_unchecked(&p) < level {
                return;
            }
            let minimal = (0..n).all(|i| {
                if k[i].is_zero() {
                    return true;
                }
                let mut q = p.clone();
                q.0[i] -= Rational::one();
                self.phi_unchecked(&q) < level
            });
            if minimal {
                gens.push(k.clone());
            }
        });
        MonomialIdeal::new(n, gens)
    }

    /// Lattice points `k` inside `p` with `phi_J(k) = level`, minimal under
    /// the componentwise order.
    pub(crate) fn level_set_generators(
        &self,
        p: &NewtonPolyhedron,
        level: &Rational,
    ) -> Vec<IntegerVector> {
        // phi = level forces equality on some piece, so it suffices to walk
        // the lattice points of each piece's hyperplane.
        let mut out = BTreeSet::new();
        for pc in &self.pieces {
            let target = level / rat_int(&pc.multiplier);
            if !target.is_integer() {
                continue;
            }
            hyperplane_points(&pc.normal, &target.to_integer(), |k| {
                let q = k.to_point();
                if &self.phi_unchecked(&q) == level && p.contains(&q) {
                    out.insert(k.clone());
                }
            });
        }
        out.into_iter().collect()
    }
}

/// Calls `f` on every `k >= 0` with `<w, k> = t`, for a positive `w`.
fn hyperplane_points(w: &IntegerVector, t: &Integer, mut f: impl FnMut(&IntegerVector)) {
    fn go(
        w: &[Integer],
        rem: Integer,
        k: &mut IntegerVector,
        i: usize,
        f: &mut impl FnMut(&IntegerVector),
    ) {
        let last = w.len() - 1;
        if i == last {
            if (&rem % &w[last]).is_zero() {
                k.0[last] = &rem / &w[last];
                f(k);
            }
            return;
        }
        let mut c = Integer::zero();
        while &c * &w[i] <= rem {
            k.0[i] = c.clone();
            go(w, &rem - &c * &w[i], k, i + 1, f);
            c += 1;
        }
    }
    if t.is_negative() {
        return;
    }
    let mut k = IntegerVector::zeros(w.dim());
    go(&w.0, t.clone(), &mut k, 0, &mut f);
}

fn diagonal_data(p: &NewtonPolyhedron) -> Option<DiagonalData> {
    let n = p.dim();
    if p.vertices().len() != n {
        return None;
    }
    let mut exponents = vec![Integer::zero(); n];
    for v in p.vertices() {
        let v = v.to_integer()?;
        let support = v.support();
        if support.len() != 1 {
            return None;
        }
        exponents[support[0]] = v[support[0]].clone();
    }
    if exponents.iter().any(Zero::is_zero) {
        return None;
    }
    let product: Integer = exponents.iter().product();
    let w = IntegerVector(exponents.iter().map(|a| &product / a).collect());
    let w0 = w.0.iter().fold(Integer::zero(), |acc, c| acc.gcd(c));
    let v = IntegerVector(w.0.iter().map(|c| c / &w0).collect());
    Some(DiagonalData {
        exponents,
        w,
        w0,
        v,
    })
}

/// `J_w = <x_i^{(w_1 ... w_n) / w_i}>` for a primitive positive weight.
pub fn diagonal_ideal_of_weights(w: &IntegerVector) -> Result<MonomialIdeal> {
    if w.dim() == 0 || !w.is_positive() {
        return Err(Error::InvalidInput(format!("weight {w} must be positive")));
    }
    if w.primitive_signed() != *w {
        return Err(Error::InvalidInput(format!("weight {w} is not primitive")));
    }
    let product: Integer = w.0.iter().product();
    let n = w.dim();
    MonomialIdeal::new(
        n,
        (0..n)
            .map(|i| IntegerVector::unit(n, i).scale(&(&product / &w[i])))
            .collect(),
    )
}

/// `d_w(x^k) = <k, w>`.
pub fn weighted_degree(w: &IntegerVector, k: &IntegerVector) -> Result<Integer> {
    if w.dim() != k.dim() {
        return Err(Error::InvalidInput(
            "weight and exponent differ in length".into(),
        ));
    }
    Ok(w.dot(k))
}

/// `d_w(I)`: minimum over generators; `None` for the zero ideal.
pub fn weighted_degree_ideal(w: &IntegerVector, ideal: &MonomialIdeal) -> Result<Option<Integer>> {
    ideal
        .generators()
        .iter()
        .map(|g| weighted_degree(w, g))
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().min())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn ideal(n: usize, exps: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, exps).unwrap()
    }

    fn ex65_j() -> MonomialIdeal {
        ideal(2, &[&[4, 0], &[1, 1], &[0, 4]])
    }

    #[test]
    fn maximal_ideal_filtration_is_degree() {
        for n in 1..=4 {
            let f = FiltrationMap::new(&MonomialIdeal::maximal(n).unwrap()).unwrap();
            assert_eq!(f.pieces().len(), 1);
            assert_eq!(f.pieces()[0].normal, IntegerVector::from_i64(&vec![1; n]));
            assert_eq!(f.m(), &int(1));
            assert!(f.is_maximal());
        }
    }

    #[test]
    fn example_filtration() {
        let f = FiltrationMap::new(&ex65_j()).unwrap();
        assert_eq!(f.m(), &int(4));
        let ps: Vec<_> = f
            .pieces()
            .iter()
            .map(|p| (p.normal.clone(), p.support.clone()))
            .collect();
        assert_eq!(
            ps,
            vec![
                (IntegerVector::from_i64(&[1, 3]), int(4)),
                (IntegerVector::from_i64(&[3, 1]), int(4))
            ]
        );
        assert!(!f.is_diagonal());
        assert_eq!(
            f.phi(&RationalPoint::from_fracs(&[(5, 2), (5, 2)]))
                .unwrap(),
            rat(10, 1)
        );
        assert_eq!(
            f.phi(&RationalPoint::from_fracs(&[(3, 2), (3, 2)]))
                .unwrap(),
            rat(6, 1)
        );
        assert_eq!(f.phi(&RationalPoint::zeros(2)).unwrap(), rat(0, 1));
    }

    #[test]
    fn diagonal_detection() {
        let f = FiltrationMap::new(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap();
        let d = f.diagonal().unwrap();
        assert_eq!(d.v, IntegerVector::from_i64(&[3, 2]));
        assert_eq!(d.w0, int(1));
        assert_eq!(f.m(), &int(6));
        // Closure-equivalent presentation is still diagonal.
        let g = FiltrationMap::new(&ideal(2, &[&[2, 0], &[1, 2], &[0, 3]])).unwrap();
        assert!(g.is_diagonal());
        let h = FiltrationMap::new(&ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]])).unwrap();
        let d = h.diagonal().unwrap();
        assert_eq!(d.w, IntegerVector::from_i64(&[12, 8, 6]));
        assert_eq!(d.w0, int(2));
        assert_eq!(h.m(), &int(12));
    }

    #[test]
    fn nu_of_ideals() {
        let m = FiltrationMap::new(&MonomialIdeal::maximal(2).unwrap()).unwrap();
        assert_eq!(
            m.nu_ideal(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap(),
            NuValue::Finite(rat(2, 1))
        );
        let f = FiltrationMap::new(&ex65_j()).unwrap();
        assert_eq!(
            f.nu_ideal(&ideal(2, &[&[5, 0], &[0, 5]])).unwrap(),
            NuValue::Finite(rat(5, 1))
        );
        assert_eq!(
            f.nu_ideal(&MonomialIdeal::zero(2)).unwrap(),
            NuValue::Infinite
        );
    }

    #[test]
    fn nu_on_face_cones() {
        let f = FiltrationMap::new(&ex65_j()).unwrap();
        let p_i = ideal(2, &[&[5, 0], &[0, 5]]).newton_polyhedron().unwrap();
        let src = f.source().clone();
        let edge = src
            .faces_of_dim(1)
            .find(|face| face.vertices.contains(&RationalPoint::from_i64(&[4, 0])))
            .unwrap();
        let (v, w) = f.nu_on_face_cone(&p_i, edge).unwrap();
        assert_eq!((v, w), (rat(5, 1), RationalPoint::from_i64(&[5, 0])));
        let vertex = src
            .faces_of_dim(0)
            .find(|face| face.vertices == vec![RationalPoint::from_i64(&[1, 1])])
            .unwrap();
        let (v, w) = f.nu_on_face_cone(&p_i, vertex).unwrap();
        assert_eq!(
            (v, w),
            (rat(10, 1), RationalPoint::from_fracs(&[(5, 2), (5, 2)]))
        );

        let m = FiltrationMap::new(&MonomialIdeal::maximal(2).unwrap()).unwrap();
        let top = m.source().faces_of_dim(1).next().unwrap().clone();
        let p = ideal(2, &[&[2, 0], &[0, 3]]).newton_polyhedron().unwrap();
        assert_eq!(m.nu_on_face_cone(&p, &top).unwrap().0, rat(2, 1));
    }

    #[test]
    fn filtration_ideals() {
        let m = FiltrationMap::new(&MonomialIdeal::maximal(2).unwrap()).unwrap();
        assert_eq!(
            m.filtration_ideal(2).unwrap(),
            ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])
        );
        let f = FiltrationMap::new(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(
            f.filtration_ideal(6).unwrap(),
            ideal(2, &[&[2, 0], &[1, 2], &[0, 3]])
        );
        assert!(f.filtration_ideal(0).unwrap().is_unit());
    }

    #[test]
    fn weighted_constructions() {
        let w = IntegerVector::from_i64(&[1, 2]);
        assert_eq!(
            diagonal_ideal_of_weights(&w).unwrap(),
            ideal(2, &[&[2, 0], &[0, 1]])
        );
        let w = IntegerVector::from_i64(&[2, 3]);
        assert_eq!(
            diagonal_ideal_of_weights(&w).unwrap(),
            ideal(2, &[&[3, 0], &[0, 2]])
        );
        assert_eq!(
            weighted_degree(&w, &IntegerVector::from_i64(&[3, 1])).unwrap(),
            int(9)
        );
        assert_eq!(
            diagonal_ideal_of_weights(&IntegerVector::from_i64(&[1, 1, 1])).unwrap(),
            MonomialIdeal::maximal(3).unwrap()
        );
        assert!(diagonal_ideal_of_weights(&IntegerVector::from_i64(&[0, 1])).is_err());
        assert!(diagonal_ideal_of_weights(&IntegerVector::from_i64(&[2, 4])).is_err());
    }

    #[test]
    fn non_convenient_rejected() {
        assert_eq!(
            FiltrationMap::new(&ideal(2, &[&[1, 1]])),
            Err(Error::NotFiniteColength)
        );
    }
}
