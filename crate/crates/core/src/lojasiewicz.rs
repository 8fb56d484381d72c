//! The invariants `a_{i,J}(I)` and `c_J(I)`, the Lojasiewicz exponent
//! `L_J(I)`, the mixed sequence `L_J^{(i)}(I)` and the ideals `K_i`.

use itertools::Itertools;
use num::{Integer as _, One, Zero};
use rayon::prelude::*;

use crate::arith::{fmt_rational, rat_int, Integer, IntegerVector, Rational, RationalPoint};
use crate::error::{internal, Error, Result};
use crate::filtration::{FiltrationMap, NuValue};
use crate::newton::{MonomialIdeal, NewtonPolyhedron};

/// Whether an entry of the sequence is the exact value, only an upper bound,
/// or not available.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EntryKind {
    Exact,
    UpperBound,
    Absent,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::Exact => "EXACT",
            EntryKind::UpperBound => "UPPER_BOUND",
            EntryKind::Absent => "ABSENT",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LojaEntry {
    /// Index `i` in `1..=n`.
    pub i: usize,
    /// `None` iff the kind is `Absent`.
    pub value: Option<Rational>,
    pub kind: EntryKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LojaReport {
    pub n: usize,
    pub m_j: Integer,
    /// `a[i - 1] = a_{i,J}(I)`.
    pub a: Vec<Rational>,
    pub c_j: Integer,
    /// `entries[i - 1]` describes `L_J^{(i)}(I)`.
    pub entries: Vec<LojaEntry>,
    /// `I ⊆ closure(J)`.
    pub inclusion: bool,
    pub diagonal: bool,
    pub maximal: bool,
    pub notes: Vec<String>,
}

impl LojaReport {
    pub fn entry(&self, i: usize) -> &LojaEntry {
        &self.entries[i - 1]
    }

    pub fn all_exact(&self) -> bool {
        self.entries.iter().all(|e| e.kind == EntryKind::Exact)
    }

    /// `L_J(I) = L_J^{(n)}(I)`.
    pub fn exponent(&self) -> &Rational {
        self.entries[self.n - 1]
            .value
            .as_ref()
            .expect("the last entry is exact")
    }
}

/// Shared state for computations on a pair `(I, J)`.
pub struct Pair {
    pub filtration: FiltrationMap,
    pub p_i: NewtonPolyhedron,
    n: usize,
}

impl Pair {
    pub fn new(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Self> {
        let n = i.num_vars();
        if j.num_vars() != n {
            return Err(Error::InvalidInput("ideals live in different rings".into()));
        }
        for ideal in [i, j] {
            if ideal.is_unit() || ideal.is_zero() {
                return Err(Error::InvalidInput(
                    "both ideals must be proper and non-zero".into(),
                ));
            }
            if !ideal.is_finite_colength() {
                return Err(Error::NotFiniteColength);
            }
        }
        Ok(Pair {
            filtration: FiltrationMap::new(j)?,
            p_i: i.newton_polyhedron()?,
            n,
        })
    }

    pub fn from_polyhedra(filtration: FiltrationMap, p_i: NewtonPolyhedron) -> Result<Self> {
        let n = p_i.dim();
        if filtration.dim() != n {
            return Err(Error::InvalidInput(
                "polyhedra live in different dimensions".into(),
            ));
        }
        if !p_i.is_convenient() {
            return Err(Error::NotFiniteColength);
        }
        Ok(Pair { filtration, p_i, n })
    }

    fn m(&self) -> Rational {
        rat_int(self.filtration.m())
    }

    /// Max of `nu_J(Γ_+(I) ∩ C(Δ))` over compact faces `Δ` of `Γ_+(J)` of
    /// dimension `n - i`.
    pub fn a_invariant(&self, i: usize) -> Result<Rational> {
        if i == 0 || i > self.n {
            return Err(Error::InvalidInput(format!(
                "index {i} outside 1..={}",
                self.n
            )));
        }
        let faces: Vec<_> = self.filtration.source().faces_of_dim(self.n - i).collect();
        faces
            .par_iter()
            .map(|face| Ok(self.filtration.nu_on_face_cone(&self.p_i, face)?.0))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .ok_or_else(|| internal!("no compact face of dimension {}", self.n - i))
    }

    pub fn a_vector(&self) -> Result<Vec<Rational>> {
        (1..=self.n).map(|i| self.a_invariant(i)).collect()
    }

    /// `k_u^I` for every vertex `u` of `Γ_+(J)`.
    pub fn ray_points(&self) -> Result<Vec<RationalPoint>> {
        self.filtration
            .source()
            .vertices()
            .iter()
            .map(|u| {
                let u = u
                    .to_integer()
                    .ok_or_else(|| internal!("non-integral vertex {u}"))?;
                self.p_i.ray_intersection(&u)
            })
            .collect()
    }

    pub fn c_invariant(&self) -> Result<Integer> {
        Ok(self
            .ray_points()?
            .iter()
            .fold(Integer::one(), |acc, k| acc.lcm(&k.denominator_lcm())))
    }

    pub fn loja_exponent(&self) -> Result<Rational> {
        Ok(self.a_invariant(self.n)? / self.m())
    }

    /// `max_u min{t : t u ∈ Γ_+(I)}` over the vertices `u` of `Γ_+(J)`,
    /// computed from the compact facets of `Γ_+(I)`.
    pub fn loja_oracle(&self) -> Result<Rational> {
        let mut best = Rational::zero();
        for u in self.filtration.source().vertices() {
            for h in self.p_i.compact_facets() {
                let t = &h.offset / h.normal.dot_point(u);
                if t > best {
                    best = t;
                }
            }
        }
        Ok(best)
    }

    /// `I ⊆ closure(J)`, i.e. `Γ_+(I) ⊆ Γ_+(J)`.
    pub fn inclusion(&self) -> bool {
        let p_j = self.filtration.source();
        self.p_i.vertices().iter().all(|v| p_j.contains(v))
    }
}

pub fn a_invariant(i: &MonomialIdeal, j: &MonomialIdeal, index: usize) -> Result<Rational> {
    Pair::new(i, j)?.a_invariant(index)
}

pub fn a_vector(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Vec<Rational>> {
    Pair::new(i, j)?.a_vector()
}

/// The `a`-vector through the closed forms available when `J` has the
/// closure of the maximal ideal (orders of restrictions) or is diagonal
/// (filtration values of restrictions); `None` otherwise.
pub fn a_vector_shortcut(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Option<Vec<Rational>>> {
    let pair = Pair::new(i, j)?;
    let f = &pair.filtration;
    if !f.is_diagonal() {
        return Ok(None);
    }
    let n = pair.n;
    let maximal = f.is_maximal();
    let mut out = Vec::with_capacity(n);
    for index in 1..=n {
        let mut best: Option<Rational> = None;
        for axes in (0..n).combinations(n - index + 1) {
            let value = if maximal {
                let restricted = i.restrict(&axes)?;
                restricted
                    .order()
                    .map(Rational::from_integer)
                    .ok_or_else(|| internal!("restriction of a finite-colength ideal is zero"))?
            } else {
                match f.nu_ideal(&i.restrict_embedded(&axes)?)? {
                    NuValue::Finite(v) => v,
                    NuValue::Infinite => {
                        return Err(internal!("restriction of a finite-colength ideal is zero"))
                    }
                }
            };
            if best.as_ref().is_none_or(|b| value > *b) {
                best = Some(value);
            }
        }
        out.push(best.expect("at least one subset"));
    }
    Ok(Some(out))
}

pub fn c_invariant(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Integer> {
    Pair::new(i, j)?.c_invariant()
}

/// `L_J(I) = a_{n,J}(I) / M_J`.
pub fn loja_exponent(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Rational> {
    Pair::new(i, j)?.loja_exponent()
}

/// `L_J(I)` as the least `p/q` with `p Γ_+(J) ⊆ q Γ_+(I)`.
pub fn loja_oracle(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Rational> {
    Pair::new(i, j)?.loja_oracle()
}

pub fn loja_sequence(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<LojaReport> {
    let pair = Pair::new(i, j)?;
    let n = pair.n;
    let f = &pair.filtration;
    let m = pair.m();
    let a = pair.a_vector()?;
    let inclusion = pair.inclusion();
    if inclusion != f.closure_contains(i)? {
        return Err(internal!("inclusion tests disagree"));
    }
    let diagonal = f.is_diagonal();
    let maximal = f.is_maximal();
    let mut notes = Vec::new();

    let lower_kind = if maximal || (diagonal && inclusion) {
        EntryKind::Exact
    } else if inclusion {
        notes.push(
            "J is not diagonal: L^(i) for i < n is only bounded above by a_i/M_J".to_string(),
        );
        notes.push(format!(
            "a_i uses compact faces of dimension n - i; the bound L^(1) <= {} may be strict",
            fmt_rational(&(&a[0] / &m))
        ));
        EntryKind::UpperBound
    } else {
        notes.push(
            "I is not contained in the integral closure of J: L^(i) for i < n is not available"
                .to_string(),
        );
        EntryKind::Absent
    };

    let entries = (1..=n)
        .map(|idx| {
            let kind = if idx == n {
                EntryKind::Exact
            } else {
                lower_kind
            };
            let value = (kind != EntryKind::Absent).then(|| &a[idx - 1] / &m);
            LojaEntry {
                i: idx,
                value,
                kind,
            }
        })
        .collect();
    Ok(LojaReport {
        n,
        m_j: f.m().clone(),
        c_j: pair.c_invariant()?,
        a,
        entries,
        inclusion,
        diagonal,
        maximal,
        notes,
    })
}

/// The ideals `K_1, ..., K_n`: `K_i` is generated by the lattice points `k`
/// of `c M_J Γ_+(I)` with `phi_J(k) = c M_J a_{i,J}(I)`.
pub fn build_k_ideals(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Vec<MonomialIdeal>> {
    let pair = Pair::new(i, j)?;
    let f = &pair.filtration;
    let scale = pair.c_invariant()? * f.m();
    let dilated = pair.p_i.dilate(&rat_int(&scale))?;
    let n = pair.n;
    pair.a_vector()?
        .iter()
        .map(|a| {
            let level = a * rat_int(&scale);
            if !level.is_integer() {
                return Err(internal!(
                    "level {} is not an integer",
                    fmt_rational(&level)
                ));
            }
            let gens: Vec<IntegerVector> = f.level_set_generators(&dilated, &level);
            if gens.is_empty() {
                return Err(internal!("empty level set at {}", fmt_rational(&level)));
            }
            let k = MonomialIdeal::new(n, gens)?;
            if f.nu_ideal(&k)? != NuValue::Finite(level.clone()) {
                return Err(internal!("nu_J(K) differs from {}", fmt_rational(&level)));
            }
            Ok(k)
        })
        .collect()
}
