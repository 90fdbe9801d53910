//! Exact integral polyhedra with a rational offset group.
//!
//! A [`Polyhedron`] carries both descriptions: irredundant inequalities
//! `⟨a, x⟩ <= b` with `a` integral and `b` rational, and generators
//! (vertices, primitive rays, lineality lattice). Conversions run the
//! double description method on the homogenization.

mod dd;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    denominator_lcm, integer_rank, rational_determinant, rational_rank,
    saturate, IntegerVector, RationalVector, Sublattice,
};
use crate::{Int, Rat};

pub(crate) use dd::cone_generators;

/// Largest ambient dimension accepted by the hull conversions.
pub const MAX_AMBIENT_DIM: usize = 12;

/// `⟨normal, x⟩ <= offset`, or `=` when used as an equation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: IntegerVector,
    pub offset: Rat,
}

impl Halfspace {
    /// Normalizes to a primitive normal vector.
    pub fn new(normal: IntegerVector, offset: Rat) -> Self {
        let g = normal.content();
        if g.is_zero() || g.is_one() {
            return Halfspace { normal, offset };
        }
        let offset = offset / Rat::from_integer(g.clone());
        Halfspace {
            normal: IntegerVector(normal.0.into_iter().map(|x| x / &g).collect()),
            offset,
        }
    }

    pub fn from_i64s(normal: &[i64], offset: i64) -> Self {
        Halfspace::new(
            IntegerVector::from_i64s(normal),
            Rat::from_integer(Int::from(offset)),
        )
    }

    /// `⟨normal, x⟩ - offset`
    pub fn slack(&self, x: &RationalVector) -> Rat {
        self.normal.pair(x) - &self.offset
    }

    fn homogenized(&self) -> Vec<Int> {
        let den = self.offset.denom().clone();
        let mut row: Vec<Int> = self.normal.0.iter().map(|a| a * &den).collect();
        row.push(-self.offset.numer().clone());
        row
    }

    fn negated(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.neg(),
            offset: -self.offset.clone(),
        }
    }
}

/// Inequality description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    pub ambient_dim: usize,
    pub inequalities: Vec<Halfspace>,
    pub equations: Vec<Halfspace>,
}

impl HPolyhedron {
    pub fn new(ambient_dim: usize, inequalities: Vec<Halfspace>, equations: Vec<Halfspace>) -> Self {
        HPolyhedron {
            ambient_dim,
            inequalities,
            equations,
        }
    }

    fn infeasible(ambient_dim: usize) -> Self {
        HPolyhedron {
            ambient_dim,
            inequalities: vec![Halfspace::new(
                IntegerVector::zeros(ambient_dim),
                -Rat::one(),
            )],
            equations: Vec::new(),
        }
    }

    fn check(&self) -> Result<()> {
        if self.ambient_dim > MAX_AMBIENT_DIM {
            return Err(Error::UnsupportedDimension(self.ambient_dim));
        }
        for hs in self.inequalities.iter().chain(&self.equations) {
            if hs.normal.len() != self.ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient_dim,
                    found: hs.normal.len(),
                });
            }
        }
        Ok(())
    }
}

/// Generator description; no vertices means the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolyhedron {
    pub ambient_dim: usize,
    pub vertices: Vec<RationalVector>,
    pub rays: Vec<IntegerVector>,
    pub lineality: Sublattice,
}

impl VPolyhedron {
    pub fn new(
        ambient_dim: usize,
        vertices: Vec<RationalVector>,
        rays: Vec<IntegerVector>,
        lineality: Vec<IntegerVector>,
    ) -> Self {
        VPolyhedron {
            ambient_dim,
            vertices,
            rays,
            lineality: saturate(&Sublattice::from_generators(ambient_dim, &lineality)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn check(&self) -> Result<()> {
        if self.ambient_dim > MAX_AMBIENT_DIM {
            return Err(Error::UnsupportedDimension(self.ambient_dim));
        }
        let bad = self
            .vertices
            .iter()
            .map(RationalVector::len)
            .chain(self.rays.iter().map(IntegerVector::len))
            .find(|&l| l != self.ambient_dim);
        match bad {
            Some(found) => Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found,
            }),
            None => Ok(()),
        }
    }
}

/// Inequalities to generators. Empty input gives a `VPolyhedron` with no
/// vertices.
pub fn dualize(h: &HPolyhedron) -> Result<VPolyhedron> {
    h.check()?;
    let n = h.ambient_dim;
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(2 * h.equations.len() + h.inequalities.len() + 1);
    for eq in &h.equations {
        rows.push(eq.homogenized());
        rows.push(eq.negated().homogenized());
    }
    let mut t_nonneg = vec![Int::zero(); n + 1];
    t_nonneg[n] = -Int::one();
    rows.push(t_nonneg);
    rows.extend(h.inequalities.iter().map(Halfspace::homogenized));

    let gens = cone_generators(n + 1, &rows);
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in gens.rays {
        let t = r[n].clone();
        if t.is_zero() {
            rays.push(IntegerVector(r[..n].to_vec()));
        } else {
            debug_assert!(t.is_positive());
            let den = Rat::from_integer(t);
            vertices.push(RationalVector(
                r[..n].iter().map(|x| Rat::from_integer(x.clone()) / &den).collect(),
            ));
        }
    }
    if vertices.is_empty() {
        return Ok(VPolyhedron::new(n, Vec::new(), Vec::new(), Vec::new()));
    }
    let lineality: Vec<IntegerVector> = gens
        .lineality
        .into_iter()
        .map(|l| {
            debug_assert!(l[n].is_zero());
            IntegerVector(l[..n].to_vec())
        })
        .collect();
    vertices.sort();
    rays.sort();
    Ok(VPolyhedron::new(n, vertices, rays, lineality))
}

/// Generators to irredundant inequalities and a system of equations.
pub fn dualize_generators(v: &VPolyhedron) -> Result<HPolyhedron> {
    v.check()?;
    let n = v.ambient_dim;
    if v.is_empty() {
        return Ok(HPolyhedron::infeasible(n));
    }
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for l in v.lineality.basis() {
        let mut row = l.0.clone();
        row.push(Int::zero());
        rows.push(row.iter().map(|x| -x).collect());
        rows.push(row);
    }
    for vert in &v.vertices {
        let den = denominator_lcm(&vert.0);
        let mut row: Vec<Int> = vert
            .0
            .iter()
            .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
            .collect();
        row.push(den);
        rows.push(row);
    }
    for r in &v.rays {
        let mut row = r.0.clone();
        row.push(Int::zero());
        rows.push(row);
    }
    let polar = cone_generators(n + 1, &rows);
    let split = |y: &[Int]| -> Option<Halfspace> {
        let normal = IntegerVector(y[..n].to_vec());
        if normal.is_zero() {
            return None;
        }
        Some(Halfspace::new(normal, Rat::from_integer(-y[n].clone())))
    };
    let mut equations: Vec<Halfspace> = polar.lineality.iter().filter_map(|y| split(y)).collect();
    let mut inequalities: Vec<Halfspace> = polar.rays.iter().filter_map(|y| split(y)).collect();
    equations.sort();
    inequalities.sort();
    Ok(HPolyhedron {
        ambient_dim: n,
        inequalities,
        equations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct CanonicalKey {
    dim: isize,
    lineality: Sublattice,
    vertices: Vec<RationalVector>,
    rays: Vec<IntegerVector>,
}

/// A polyhedron with both descriptions kept consistent.
#[derive(Clone)]
pub struct Polyhedron {
    h: HPolyhedron,
    v: VPolyhedron,
    dim: isize,
    key: OnceLock<CanonicalKey>,
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polyhedron")
            .field("dim", &self.dim)
            .field("vertices", &self.v.vertices)
            .field("rays", &self.v.rays)
            .field("lineality", &self.v.lineality)
            .finish()
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "conv{{")?;
        for (i, v) in self.v.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")?;
        if !self.v.rays.is_empty() {
            write!(f, " + cone{{")?;
            for (i, r) in self.v.rays.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, "}}")?;
        }
        if self.v.lineality.rank() > 0 {
            write!(f, " + {}", self.v.lineality)?;
        }
        Ok(())
    }
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.key() == other.key()
    }
}

impl Eq for Polyhedron {}

impl std::hash::Hash for Polyhedron {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for Polyhedron {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polyhedron {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(other.key())
    }
}

fn generator_dim(v: &VPolyhedron) -> isize {
    let Some(first) = v.vertices.first() else {
        return -1;
    };
    let mut rows: Vec<Vec<Rat>> = v.vertices[1..]
        .iter()
        .map(|x| x.sub(first).0)
        .collect();
    rows.extend(v.rays.iter().map(|r| r.to_rational().0));
    rows.extend(v.lineality.basis().iter().map(|r| r.to_rational().0));
    rational_rank(&rows) as isize
}

impl Polyhedron {
    pub fn from_h(h: HPolyhedron) -> Result<Self> {
        let v = dualize(&h)?;
        if v.is_empty() {
            return Ok(Self::empty(h.ambient_dim));
        }
        let h = dualize_generators(&v)?;
        let dim = generator_dim(&v);
        Ok(Polyhedron {
            h,
            v,
            dim,
            key: OnceLock::new(),
        })
    }

    pub fn from_v(v: VPolyhedron) -> Result<Self> {
        if v.is_empty() {
            v.check()?;
            return Ok(Self::empty(v.ambient_dim));
        }
        let h = dualize_generators(&v)?;
        let v = dualize(&h)?;
        let dim = generator_dim(&v);
        Ok(Polyhedron {
            h,
            v,
            dim,
            key: OnceLock::new(),
        })
    }

    pub fn from_inequalities(
        ambient_dim: usize,
        inequalities: Vec<Halfspace>,
        equations: Vec<Halfspace>,
    ) -> Result<Self> {
        Self::from_h(HPolyhedron::new(ambient_dim, inequalities, equations))
    }

    /// Convex hull of finitely many points.
    pub fn polytope(ambient_dim: usize, points: Vec<RationalVector>) -> Result<Self> {
        Self::from_v(VPolyhedron::new(ambient_dim, points, Vec::new(), Vec::new()))
    }

    pub fn lattice_polytope(points: &[&[i64]]) -> Result<Self> {
        let n = points.first().map_or(0, |p| p.len());
        Self::polytope(n, points.iter().map(|p| RationalVector::from_i64s(p)).collect())
    }

    /// `apex + cone(rays) + span(lineality)`
    pub fn cone(
        apex: RationalVector,
        rays: Vec<IntegerVector>,
        lineality: Vec<IntegerVector>,
    ) -> Result<Self> {
        let n = apex.len();
        Self::from_v(VPolyhedron::new(n, vec![apex], rays, lineality))
    }

    pub fn point(x: RationalVector) -> Self {
        let n = x.len();
        Self::from_v(VPolyhedron::new(n, vec![x], Vec::new(), Vec::new()))
            .expect("a point is always representable")
    }

    pub fn whole_space(ambient_dim: usize) -> Self {
        Self::from_h(HPolyhedron::new(ambient_dim, Vec::new(), Vec::new()))
            .expect("whole space is always representable")
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Polyhedron {
            h: HPolyhedron::infeasible(ambient_dim),
            v: VPolyhedron {
                ambient_dim,
                vertices: Vec::new(),
                rays: Vec::new(),
                lineality: Sublattice::zero(ambient_dim),
            },
            dim: -1,
            key: OnceLock::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.h.ambient_dim
    }

    /// Dimension, `-1` for the empty set.
    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn is_bounded(&self) -> bool {
        self.v.rays.is_empty() && self.v.lineality.rank() == 0
    }

    pub fn h(&self) -> &HPolyhedron {
        &self.h
    }

    pub fn v(&self) -> &VPolyhedron {
        &self.v
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.v.vertices
    }

    pub fn rays(&self) -> &[IntegerVector] {
        &self.v.rays
    }

    pub fn lineality(&self) -> &Sublattice {
        &self.v.lineality
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.h.inequalities
    }

    pub fn equations(&self) -> &[Halfspace] {
        &self.h.equations
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        !self.is_empty()
            && self.h.equations.iter().all(|e| e.slack(x).is_zero())
            && self.h.inequalities.iter().all(|i| !i.slack(x).is_positive())
    }

    pub fn relative_interior_contains(&self, x: &RationalVector) -> bool {
        !self.is_empty()
            && self.h.equations.iter().all(|e| e.slack(x).is_zero())
            && self.h.inequalities.iter().all(|i| i.slack(x).is_negative())
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_polyhedron(&self, other: &Polyhedron) -> bool {
        if other.is_empty() {
            return true;
        }
        if self.is_empty() {
            return false;
        }
        let rec_ok = |d: &IntegerVector, both_signs: bool| {
            self.h.equations.iter().all(|e| e.normal.dot(d).is_zero())
                && self.h.inequalities.iter().all(|i| {
                    let s = i.normal.dot(d);
                    if both_signs {
                        s.is_zero()
                    } else {
                        !s.is_positive()
                    }
                })
        };
        other.v.vertices.iter().all(|x| self.contains(x))
            && other.v.rays.iter().all(|r| rec_ok(r, false))
            && other.v.lineality.basis().iter().all(|l| rec_ok(l, true))
    }

    /// Centroid of the vertices plus the sum of the rays.
    pub fn relative_interior_point(&self) -> Result<RationalVector> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let k = Rat::from_integer(Int::from(self.v.vertices.len()));
        let mut x = self
            .v
            .vertices
            .iter()
            .fold(RationalVector::zeros(self.ambient_dim()), |acc, v| acc.add(v))
            .scale(&(Rat::one() / k));
        for r in &self.v.rays {
            x = x.add(&r.to_rational());
        }
        Ok(x)
    }

    /// Homogenized constraints `⟨a, x⟩ <= 0`.
    pub fn recession_cone(&self) -> Result<Polyhedron> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let n = self.ambient_dim();
        let v = VPolyhedron {
            ambient_dim: n,
            vertices: vec![RationalVector::zeros(n)],
            rays: self.v.rays.clone(),
            lineality: self.v.lineality.clone(),
        };
        Polyhedron::from_v(v)
    }

    /// `R≥0 (P - x)` for a point `x` of `P`.
    pub fn tangent_cone(&self, x: &RationalVector) -> Result<Polyhedron> {
        if !self.contains(x) {
            return Err(Error::NotInSupport(x.to_string()));
        }
        let n = self.ambient_dim();
        let eqs = self
            .h
            .equations
            .iter()
            .map(|e| Halfspace::new(e.normal.clone(), Rat::zero()))
            .collect();
        let ineqs = self
            .h
            .inequalities
            .iter()
            .filter(|i| i.slack(x).is_zero())
            .map(|i| Halfspace::new(i.normal.clone(), Rat::zero()))
            .collect();
        Polyhedron::from_inequalities(n, ineqs, eqs)
    }

    pub fn translate(&self, t: &RationalVector) -> Polyhedron {
        if self.is_empty() {
            return self.clone();
        }
        let shift = |hs: &Halfspace| Halfspace {
            normal: hs.normal.clone(),
            offset: &hs.offset + hs.normal.pair(t),
        };
        Polyhedron {
            h: HPolyhedron {
                ambient_dim: self.h.ambient_dim,
                inequalities: self.h.inequalities.iter().map(shift).collect(),
                equations: self.h.equations.iter().map(shift).collect(),
            },
            v: VPolyhedron {
                vertices: self.v.vertices.iter().map(|x| x.add(t)).collect(),
                ..self.v.clone()
            },
            dim: self.dim,
            key: OnceLock::new(),
        }
    }

    /// Dilation by a positive rational.
    pub fn dilate(&self, k: &Rat) -> Result<Polyhedron> {
        assert!(k.is_positive(), "dilation factor must be positive");
        let v = VPolyhedron {
            vertices: self.v.vertices.iter().map(|x| x.scale(k)).collect(),
            ..self.v.clone()
        };
        Polyhedron::from_v(v)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        self.same_dim(other)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Polyhedron::empty(self.ambient_dim()));
        }
        let mut ineqs = self.h.inequalities.clone();
        ineqs.extend(other.h.inequalities.iter().cloned());
        let mut eqs = self.h.equations.clone();
        eqs.extend(other.h.equations.iter().cloned());
        Polyhedron::from_inequalities(self.ambient_dim(), ineqs, eqs)
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        self.same_dim(other)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Polyhedron::empty(self.ambient_dim()));
        }
        let mut vertices = Vec::with_capacity(self.v.vertices.len() * other.v.vertices.len());
        for a in &self.v.vertices {
            for b in &other.v.vertices {
                vertices.push(a.add(b));
            }
        }
        vertices.sort();
        vertices.dedup();
        let mut rays = self.v.rays.clone();
        rays.extend(other.v.rays.iter().cloned());
        let lineality = self.v.lineality.sum(&other.v.lineality)?;
        Polyhedron::from_v(VPolyhedron::new(
            self.ambient_dim(),
            vertices,
            rays,
            lineality.basis().to_vec(),
        ))
    }

    /// Cartesian product in `R^(n + m)`.
    pub fn product(&self, other: &Polyhedron) -> Result<Polyhedron> {
        let n = self.ambient_dim();
        let m = other.ambient_dim();
        if n + m > MAX_AMBIENT_DIM {
            return Err(Error::UnsupportedDimension(n + m));
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Polyhedron::empty(n + m));
        }
        let zi = |k: usize| vec![Int::zero(); k];
        let left = |hs: &Halfspace| Halfspace {
            normal: IntegerVector([hs.normal.0.clone(), zi(m)].concat()),
            offset: hs.offset.clone(),
        };
        let right = |hs: &Halfspace| Halfspace {
            normal: IntegerVector([zi(n), hs.normal.0.clone()].concat()),
            offset: hs.offset.clone(),
        };
        let h = HPolyhedron {
            ambient_dim: n + m,
            inequalities: self
                .h
                .inequalities
                .iter()
                .map(left)
                .chain(other.h.inequalities.iter().map(right))
                .collect(),
            equations: self
                .h
                .equations
                .iter()
                .map(left)
                .chain(other.h.equations.iter().map(right))
                .collect(),
        };
        let mut vertices = Vec::new();
        for a in &self.v.vertices {
            for b in &other.v.vertices {
                vertices.push(RationalVector([a.0.clone(), b.0.clone()].concat()));
            }
        }
        let rays = self
            .v
            .rays
            .iter()
            .map(|r| IntegerVector([r.0.clone(), zi(m)].concat()))
            .chain(
                other
                    .v
                    .rays
                    .iter()
                    .map(|r| IntegerVector([zi(n), r.0.clone()].concat())),
            )
            .collect();
        let lineality: Vec<IntegerVector> = self
            .v
            .lineality
            .basis()
            .iter()
            .map(|r| IntegerVector([r.0.clone(), zi(m)].concat()))
            .chain(
                other
                    .v
                    .lineality
                    .basis()
                    .iter()
                    .map(|r| IntegerVector([zi(n), r.0.clone()].concat())),
            )
            .collect();
        Ok(Polyhedron {
            h,
            v: VPolyhedron {
                ambient_dim: n + m,
                vertices,
                rays,
                lineality: Sublattice::from_generators(n + m, &lineality),
            },
            dim: self.dim + other.dim,
            key: OnceLock::new(),
        })
    }

    /// The saturated lattice parallel to the affine span.
    pub fn affine_span_lattice(&self) -> Result<Sublattice> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let first = &self.v.vertices[0];
        let mut gens: Vec<IntegerVector> = self.v.vertices[1..]
            .iter()
            .map(|x| x.sub(first).integral_direction())
            .filter(|d| !d.is_zero())
            .collect();
        gens.extend(self.v.rays.iter().cloned());
        gens.extend(self.v.lineality.basis().iter().cloned());
        Ok(saturate(&Sublattice::from_generators(self.ambient_dim(), &gens)))
    }

    /// Exact euclidean volume; zero when not full-dimensional.
    pub fn euclidean_volume(&self) -> Result<Rat> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let n = self.ambient_dim();
        if self.dim < n as isize {
            return Ok(Rat::zero());
        }
        if n == 0 {
            return Ok(Rat::one());
        }
        let lattice = FaceLattice::new(self);
        let full = lattice.sets.len() - 1;
        let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
        let simplices = lattice.triangulate(full, &mut memo);
        let mut total = Rat::zero();
        for s in simplices {
            let base = &self.v.vertices[s[0]];
            let rows: Vec<Vec<Rat>> = s[1..]
                .iter()
                .map(|&i| self.v.vertices[i].sub(base).0)
                .collect();
            total += rational_determinant(rows).abs();
        }
        let fact: Int = (1..=n).fold(Int::one(), |acc, k| acc * Int::from(k));
        Ok(total / Rat::from_integer(fact))
    }

    /// All nonempty faces, the polyhedron itself included, ordered by
    /// increasing dimension.
    pub fn faces(&self) -> Vec<Polyhedron> {
        if self.is_empty() {
            return Vec::new();
        }
        let lattice = FaceLattice::new(self);
        let mut out: Vec<(isize, Polyhedron)> = (0..lattice.sets.len())
            .map(|i| (lattice.dims[i], lattice.build(self, i)))
            .collect();
        out.sort_by_key(|a| a.0);
        out.into_iter().map(|(_, p)| p).collect()
    }

    /// Faces of codimension one.
    pub fn facets(&self) -> Vec<Polyhedron> {
        self.faces()
            .into_iter()
            .filter(|f| f.dim == self.dim - 1)
            .collect()
    }

    /// Whether some facet inequality is tight at `x` (for `x` in `P`).
    pub fn on_relative_boundary(&self, x: &RationalVector) -> bool {
        self.h.inequalities.iter().any(|i| i.slack(x).is_zero())
    }

    fn same_dim(&self, other: &Polyhedron) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        Ok(())
    }

    fn key(&self) -> &CanonicalKey {
        self.key.get_or_init(|| {
            let lin = self.v.lineality.clone();
            let proj = Projector::new(&lin);
            let mut vertices: Vec<RationalVector> =
                self.v.vertices.iter().map(|x| proj.apply(x)).collect();
            vertices.sort();
            vertices.dedup();
            let mut rays: Vec<IntegerVector> = self
                .v
                .rays
                .iter()
                .map(|r| proj.apply(&r.to_rational()).integral_direction())
                .collect();
            rays.sort();
            rays.dedup();
            CanonicalKey {
                dim: self.dim,
                lineality: lin,
                vertices,
                rays,
            }
        })
    }

    /// Shorthand for small integral constraint systems.
    pub fn from_halfspaces_i64(
        ambient_dim: usize,
        ineqs: &[(&[i64], i64)],
        eqs: &[(&[i64], i64)],
    ) -> Result<Self> {
        let mk = |xs: &[(&[i64], i64)]| {
            xs.iter()
                .map(|(a, b)| Halfspace::from_i64s(a, *b))
                .collect::<Vec<_>>()
        };
        Self::from_inequalities(ambient_dim, mk(ineqs), mk(eqs))
    }
}

/// Orthogonal projection onto the complement of a lineality space.
struct Projector {
    basis: Vec<Vec<Rat>>,
    gram_inv: Vec<Vec<Rat>>,
}

impl Projector {
    fn new(lin: &Sublattice) -> Self {
        let basis: Vec<Vec<Rat>> = lin.basis().iter().map(|b| b.to_rational().0).collect();
        let k = basis.len();
        let dot = |a: &[Rat], b: &[Rat]| -> Rat {
            a.iter().zip(b).map(|(x, y)| x * y).fold(Rat::zero(), |s, t| s + t)
        };
        let gram: Vec<Vec<Rat>> = (0..k)
            .map(|i| (0..k).map(|j| dot(&basis[i], &basis[j])).collect())
            .collect();
        Projector {
            gram_inv: invert(gram),
            basis,
        }
    }

    fn apply(&self, x: &RationalVector) -> RationalVector {
        if self.basis.is_empty() {
            return x.clone();
        }
        let bx: Vec<Rat> = self
            .basis
            .iter()
            .map(|b| b.iter().zip(&x.0).map(|(p, q)| p * q).fold(Rat::zero(), |s, t| s + t))
            .collect();
        let mut out = x.0.clone();
        for (i, row) in self.gram_inv.iter().enumerate() {
            let c = row.iter().zip(&bx).map(|(p, q)| p * q).fold(Rat::zero(), |s, t| s + t);
            for (o, b) in out.iter_mut().zip(&self.basis[i]) {
                *o -= &c * b;
            }
        }
        RationalVector(out)
    }
}

fn invert(a: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let k = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..k).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&r| !aug[r][c].is_zero()).expect("invertible");
        aug.swap(p, c);
        let pivot = aug[c][c].clone();
        for x in aug[c].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..k {
            if r == c || aug[r][c].is_zero() {
                continue;
            }
            let f = aug[r][c].clone();
            for j in 0..2 * k {
                let s = &f * &aug[c][j];
                aug[r][j] -= s;
            }
        }
    }
    aug.into_iter().map(|row| row[k..].to_vec()).collect()
}

/// Faces as sets of generator indices (vertices first, then rays).
struct FaceLattice {
    n_vertices: usize,
    sets: Vec<FixedBitSet>,
    dims: Vec<isize>,
    /// facet inequality tight sets
    tight: Vec<FixedBitSet>,
}

impl FaceLattice {
    fn new(p: &Polyhedron) -> Self {
        let nv = p.v.vertices.len();
        let ng = nv + p.v.rays.len();
        let tight: Vec<FixedBitSet> = p
            .h
            .inequalities
            .iter()
            .map(|ineq| {
                let mut s = FixedBitSet::with_capacity(ng);
                for (i, x) in p.v.vertices.iter().enumerate() {
                    if ineq.slack(x).is_zero() {
                        s.insert(i);
                    }
                }
                for (j, r) in p.v.rays.iter().enumerate() {
                    if ineq.normal.dot(r).is_zero() {
                        s.insert(nv + j);
                    }
                }
                s
            })
            .collect();
        let mut full = FixedBitSet::with_capacity(ng);
        full.insert_range(..);
        let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
        let mut queue = VecDeque::from([full.clone()]);
        seen.insert(full, ());
        let mut order = Vec::new();
        while let Some(s) = queue.pop_front() {
            for t in &tight {
                let mut next = s.clone();
                next.intersect_with(t);
                if next.ones().next().is_none_or(|i| i >= nv) || next == s {
                    continue;
                }
                if seen.insert(next.clone(), ()).is_none() {
                    queue.push_back(next);
                }
            }
            order.push(s);
        }
        // smaller faces first, the polyhedron itself last
        order.sort_by_key(|s| s.count_ones(..));
        let dims = order
            .iter()
            .map(|s| {
                let verts: Vec<&RationalVector> =
                    s.ones().filter(|&i| i < nv).map(|i| &p.v.vertices[i]).collect();
                let first = verts[0];
                let mut rows: Vec<Vec<Rat>> = verts[1..].iter().map(|x| x.sub(first).0).collect();
                rows.extend(
                    s.ones()
                        .filter(|&i| i >= nv)
                        .map(|i| p.v.rays[i - nv].to_rational().0),
                );
                rows.extend(p.v.lineality.basis().iter().map(|b| b.to_rational().0));
                rational_rank(&rows) as isize
            })
            .collect();
        FaceLattice {
            n_vertices: nv,
            sets: order,
            dims,
            tight,
        }
    }

    fn facets_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let s = &self.sets[i];
        let d = self.dims[i];
        (0..self.sets.len()).filter(move |&j| self.dims[j] == d - 1 && self.sets[j].is_subset(s))
    }

    fn triangulate(&self, i: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(t) = memo.get(&i) {
            return t.clone();
        }
        let s = &self.sets[i];
        let apex = s.ones().next().expect("face has a vertex");
        let out = if self.dims[i] == 0 {
            vec![vec![apex]]
        } else {
            let facets: Vec<usize> = self.facets_of(i).filter(|&j| !self.sets[j].contains(apex)).collect();
            let mut out = Vec::new();
            for j in facets {
                for mut simplex in self.triangulate(j, memo) {
                    simplex.insert(0, apex);
                    out.push(simplex);
                }
            }
            out
        };
        memo.insert(i, out.clone());
        out
    }

    fn build(&self, p: &Polyhedron, i: usize) -> Polyhedron {
        let s = &self.sets[i];
        let nv = self.n_vertices;
        let vertices: Vec<RationalVector> =
            s.ones().filter(|&k| k < nv).map(|k| p.v.vertices[k].clone()).collect();
        let rays: Vec<IntegerVector> =
            s.ones().filter(|&k| k >= nv).map(|k| p.v.rays[k - nv].clone()).collect();
        let mut equations = p.h.equations.clone();
        let mut inequalities = Vec::new();
        let mut used: Vec<FixedBitSet> = Vec::new();
        for (ineq, t) in p.h.inequalities.iter().zip(&self.tight) {
            if s.is_subset(t) {
                equations.push(ineq.clone());
                continue;
            }
            let mut sub = s.clone();
            sub.intersect_with(t);
            if used.contains(&sub) {
                continue;
            }
            let is_facet = self
                .sets
                .iter()
                .position(|x| *x == sub)
                .is_some_and(|j| self.dims[j] == self.dims[i] - 1);
            if is_facet {
                used.push(sub);
                inequalities.push(ineq.clone());
            }
        }
        reduce_equations(&mut equations);
        Polyhedron {
            h: HPolyhedron {
                ambient_dim: p.ambient_dim(),
                inequalities,
                equations,
            },
            v: VPolyhedron {
                ambient_dim: p.ambient_dim(),
                vertices,
                rays,
                lineality: p.v.lineality.clone(),
            },
            dim: self.dims[i],
            key: OnceLock::new(),
        }
    }
}

/// Drops equations that are implied by earlier ones.
fn reduce_equations(eqs: &mut Vec<Halfspace>) {
    let mut kept: Vec<Halfspace> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for e in eqs.drain(..) {
        let mut row: Vec<Rat> = e.normal.to_rational().0;
        row.push(e.offset.clone());
        rows.push(row);
        if rational_rank(&rows) == kept.len() + 1 {
            kept.push(e);
        } else {
            rows.pop();
        }
    }
    *eqs = kept;
}

/// Lattice length of a segment between lattice points.
pub fn lattice_length(a: &IntegerVector, b: &IntegerVector) -> Int {
    b.sub(a).content()
}

pub(crate) fn rank_of(vectors: &[IntegerVector]) -> usize {
    integer_rank(vectors)
}
