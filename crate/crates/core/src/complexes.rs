//! Weighted polyhedral complexes: stars, balancing, simple points and
//! set-theoretic intersections.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Deref;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{primitive_or_zero, IntegerVector, QuotientMap, RationalVector};
use crate::polyhedra::Polyhedron;
use crate::Int;

/// Anything made of polyhedral cells in a common ambient space.
pub trait CellComplex {
    fn ambient_dim(&self) -> usize;
    fn cells(&self) -> &[Polyhedron];

    /// Cells not contained in another cell.
    fn maximal_cells(&self) -> Vec<&Polyhedron> {
        let cells = self.cells();
        cells
            .iter()
            .enumerate()
            .filter(|(i, c)| {
                !cells.iter().enumerate().any(|(j, d)| {
                    j != *i && d.dim() > c.dim() && d.contains_polyhedron(c)
                })
            })
            .map(|(_, c)| c)
            .collect()
    }

    fn support_contains(&self, w: &RationalVector) -> bool {
        self.cells().iter().any(|c| c.contains(w))
    }

    fn cells_containing<'a>(&'a self, w: &'a RationalVector) -> Box<dyn Iterator<Item = &'a Polyhedron> + 'a> {
        Box::new(self.cells().iter().filter(move |c| c.contains(w)))
    }
}

/// Pure-dimensional complex with positive integer weights on its facets.
#[derive(Clone, Debug)]
pub struct WeightedComplex {
    ambient_dim: usize,
    dim: usize,
    cells: Vec<Polyhedron>,
    faces: Vec<Vec<usize>>,
    multiplicities: BTreeMap<usize, u64>,
}

/// A weighted complex all of whose cells are cones with apex at the origin.
#[derive(Clone, Debug)]
pub struct WeightedFan(WeightedComplex);

impl Deref for WeightedFan {
    type Target = WeightedComplex;
    fn deref(&self) -> &WeightedComplex {
        &self.0
    }
}

impl WeightedFan {
    pub fn new(c: WeightedComplex) -> Result<Self> {
        if !c.is_fan() {
            return Err(Error::InvalidComplex("cells are not cones at the origin".into()));
        }
        Ok(WeightedFan(c))
    }

    pub fn into_complex(self) -> WeightedComplex {
        self.0
    }
}

/// Complex without weights, possibly of mixed dimension.
#[derive(Clone, Debug)]
pub struct PolyhedralComplex {
    ambient_dim: usize,
    cells: Vec<Polyhedron>,
}

impl CellComplex for WeightedComplex {
    fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }
    fn maximal_cells(&self) -> Vec<&Polyhedron> {
        let mut out: Vec<&Polyhedron> = self.facets().map(|(_, c, _)| c).collect();
        // stray lower-dimensional cells only occur in invalid input
        for (i, c) in self.cells.iter().enumerate() {
            if c.dim() < self.dim as isize && !self.is_face_of_facet(i) {
                out.push(c);
            }
        }
        out
    }
}

impl CellComplex for PolyhedralComplex {
    fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }
}

/// Dedups cells and closes them under taking faces.
struct CellCollector {
    cells: Vec<Polyhedron>,
    index: HashMap<Polyhedron, usize>,
    faces: Vec<Vec<usize>>,
}

impl CellCollector {
    fn new() -> Self {
        CellCollector {
            cells: Vec::new(),
            index: HashMap::new(),
            faces: Vec::new(),
        }
    }

    fn id(&mut self, p: Polyhedron) -> usize {
        if let Some(&i) = self.index.get(&p) {
            return i;
        }
        let i = self.cells.len();
        self.index.insert(p.clone(), i);
        self.cells.push(p);
        self.faces.push(Vec::new());
        i
    }

    /// Adds `p` with all of its faces; returns the id of `p`.
    fn add_closed(&mut self, p: Polyhedron) -> usize {
        if let Some(&i) = self.index.get(&p) {
            return i;
        }
        let faces = p.faces();
        let ids: Vec<usize> = faces.iter().map(|f| self.id(f.clone())).collect();
        for (a, fa) in faces.iter().enumerate() {
            if !self.faces[ids[a]].is_empty() || fa.dim() == 0 {
                continue;
            }
            let sub: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(b, fb)| *b != a && fb.dim() < fa.dim() && fa.contains_polyhedron(fb))
                .map(|(b, _)| ids[b])
                .collect();
            self.faces[ids[a]] = sub;
        }
        self.id(p)
    }

    /// Sorts by dimension and renumbers.
    fn finish(self) -> (Vec<Polyhedron>, Vec<Vec<usize>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by(|&a, &b| {
            self.cells[a]
                .dim()
                .cmp(&self.cells[b].dim())
                .then_with(|| self.cells[a].cmp(&self.cells[b]))
        });
        let mut new_id = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new;
        }
        let cells = order.iter().map(|&o| self.cells[o].clone()).collect();
        let faces = order
            .iter()
            .map(|&o| {
                let mut f: Vec<usize> = self.faces[o].iter().map(|&x| new_id[x]).collect();
                f.sort_unstable();
                f
            })
            .collect();
        (cells, faces, new_id)
    }
}

impl WeightedComplex {
    /// The empty complex of a given (expected) dimension.
    pub fn empty(ambient_dim: usize, dim: usize) -> Self {
        WeightedComplex {
            ambient_dim,
            dim,
            cells: Vec::new(),
            faces: Vec::new(),
            multiplicities: BTreeMap::new(),
        }
    }

    /// All of `R^n` as a single cell of weight one.
    pub fn whole_space(ambient_dim: usize) -> Self {
        Self::from_facets(ambient_dim, ambient_dim, vec![(Polyhedron::whole_space(ambient_dim), 1)])
            .expect("whole space is a valid cell")
    }

    /// Builds a complex from its facets, adding all faces. Repeated facets
    /// have their weights added.
    pub fn from_facets(
        ambient_dim: usize,
        dim: usize,
        facets: Vec<(Polyhedron, u64)>,
    ) -> Result<Self> {
        let mut merged: Vec<(Polyhedron, u64)> = Vec::new();
        let mut seen: HashMap<Polyhedron, usize> = HashMap::new();
        for (p, m) in facets {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: p.ambient_dim(),
                });
            }
            if p.dim() != dim as isize {
                return Err(Error::InvalidComplex(format!(
                    "facet {p} has dimension {} instead of {dim}",
                    p.dim()
                )));
            }
            match seen.get(&p) {
                Some(&i) => merged[i].1 += m,
                None => {
                    seen.insert(p.clone(), merged.len());
                    merged.push((p, m));
                }
            }
        }
        Self::assemble(ambient_dim, dim, merged.into_iter().map(|(p, m)| (p, Some(m))).collect())
    }

    /// Builds a complex from an explicit list of cells (facets and faces in
    /// any order). Facets without an entry in `multiplicities` get weight
    /// zero, which `validate` reports.
    pub fn from_cells(
        ambient_dim: usize,
        dim: usize,
        cells: Vec<Polyhedron>,
        multiplicities: &BTreeMap<usize, u64>,
    ) -> Result<Self> {
        let mut list = Vec::with_capacity(cells.len());
        for (i, p) in cells.into_iter().enumerate() {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: p.ambient_dim(),
                });
            }
            if p.is_empty() || p.dim() > dim as isize {
                return Err(Error::InvalidComplex(format!(
                    "cell {i} has dimension {} but the complex has dimension {dim}",
                    p.dim()
                )));
            }
            let m = if p.dim() == dim as isize {
                Some(multiplicities.get(&i).copied().unwrap_or(0))
            } else {
                None
            };
            list.push((p, m));
        }
        Self::assemble(ambient_dim, dim, list)
    }

    fn assemble(ambient_dim: usize, dim: usize, cells: Vec<(Polyhedron, Option<u64>)>) -> Result<Self> {
        let mut col = CellCollector::new();
        let mut weights: Vec<(usize, u64)> = Vec::new();
        // facets first so that their face lists are complete
        let (tops, lower): (Vec<_>, Vec<_>) = cells.into_iter().partition(|(_, m)| m.is_some());
        for (p, m) in tops {
            let id = col.add_closed(p);
            weights.push((id, m.unwrap_or(0)));
        }
        for (p, _) in lower {
            col.add_closed(p);
        }
        let (cells, faces, new_id) = col.finish();
        let mut multiplicities = BTreeMap::new();
        for (id, m) in weights {
            *multiplicities.entry(new_id[id]).or_insert(0) += m;
        }
        Ok(WeightedComplex {
            ambient_dim,
            dim,
            cells,
            faces,
            multiplicities,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `(id, cell, weight)` for every top-dimensional cell.
    pub fn facets(&self) -> impl Iterator<Item = (usize, &Polyhedron, u64)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.dim() == self.dim as isize)
            .map(|(i, c)| (i, c, self.multiplicities.get(&i).copied().unwrap_or(0)))
    }

    pub fn cell(&self, id: usize) -> &Polyhedron {
        &self.cells[id]
    }

    /// Ids of all proper faces of a cell.
    pub fn faces_of(&self, id: usize) -> &[usize] {
        &self.faces[id]
    }

    pub fn multiplicity(&self, id: usize) -> Option<u64> {
        self.multiplicities.get(&id).copied()
    }

    pub fn multiplicities(&self) -> &BTreeMap<usize, u64> {
        &self.multiplicities
    }

    pub fn is_fan(&self) -> bool {
        let origin = RationalVector::zeros(self.ambient_dim);
        self.cells.iter().all(|c| c.contains(&origin) && c.recession_cone().ok().as_ref() == Some(c))
    }

    /// Sum of the facet weights.
    pub fn total_multiplicity(&self) -> u64 {
        self.facets().map(|(_, _, m)| m).sum()
    }

    /// For zero-dimensional complexes: point to weight.
    pub fn point_weights(&self) -> BTreeMap<RationalVector, u64> {
        self.facets()
            .filter(|(_, c, _)| c.dim() == 0)
            .map(|(_, c, m)| (c.vertices()[0].clone(), m))
            .collect()
    }

    /// Id of the cell whose relative interior contains `w`.
    pub fn carrier(&self, w: &RationalVector) -> Option<usize> {
        self.cells.iter().position(|c| c.relative_interior_contains(w))
    }

    fn is_face_of_facet(&self, id: usize) -> bool {
        self.facets().any(|(f, _, _)| self.faces[f].contains(&id))
    }

    /// Facets having the given cell as a face.
    pub fn facets_around(&self, id: usize) -> Vec<usize> {
        self.facets()
            .filter(|(f, _, _)| *f == id || self.faces[*f].contains(&id))
            .map(|(f, _, _)| f)
            .collect()
    }

    pub fn translate(&self, t: &RationalVector) -> WeightedComplex {
        let facets = self.facets().map(|(_, c, m)| (c.translate(t), m)).collect();
        Self::from_facets(self.ambient_dim, self.dim, facets).expect("translation keeps the complex valid")
    }

    /// Drops the weights.
    pub fn to_unweighted(&self) -> PolyhedralComplex {
        PolyhedralComplex {
            ambient_dim: self.ambient_dim,
            cells: self.cells.clone(),
        }
    }
}

impl fmt::Display for WeightedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}-dimensional complex in R^{}", self.dim, self.ambient_dim)?;
        for (_, c, m) in self.facets() {
            writeln!(f, "  {c}  [m = {m}]")?;
        }
        Ok(())
    }
}

impl PolyhedralComplex {
    /// Closes a list of cells under taking faces.
    pub fn from_cells(ambient_dim: usize, cells: Vec<Polyhedron>) -> Self {
        let mut col = CellCollector::new();
        for c in cells.into_iter().filter(|c| !c.is_empty()) {
            col.add_closed(c);
        }
        let (cells, _, _) = col.finish();
        PolyhedralComplex { ambient_dim, cells }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Largest cell dimension, `-1` when empty.
    pub fn dim(&self) -> isize {
        self.cells.iter().map(Polyhedron::dim).max().unwrap_or(-1)
    }
}

/// A broken invariant, naming the offending cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A cell of lower dimension that is not a face of any facet.
    NotPure { cell: usize },
    /// Two cells meeting outside a common face.
    NotAComplex { a: usize, b: usize },
    /// A facet with weight below one.
    Multiplicity { facet: usize, m: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPure { cell } => write!(f, "cell {cell} is not a face of any facet"),
            Violation::NotAComplex { a, b } => {
                write!(f, "cells {a} and {b} do not meet in a common face")
            }
            Violation::Multiplicity { facet, m } => {
                write!(f, "facet {facet} has multiplicity {m}")
            }
        }
    }
}

pub fn validate(c: &WeightedComplex) -> Vec<Violation> {
    let mut out = Vec::new();
    let tops: Vec<usize> = c.facets().map(|(i, _, _)| i).collect();
    let strays: Vec<usize> = (0..c.cells.len())
        .filter(|&i| c.cells[i].dim() < c.dim as isize && !c.is_face_of_facet(i))
        .collect();
    out.extend(strays.iter().map(|&cell| Violation::NotPure { cell }));

    let maximal: Vec<usize> = tops.iter().chain(&strays).copied().collect();
    let is_face = |cell: usize, p: &Polyhedron| {
        c.cells[cell] == *p || c.faces[cell].iter().any(|&f| c.cells[f] == *p)
    };
    for (k, &a) in maximal.iter().enumerate() {
        for &b in &maximal[k + 1..] {
            let Ok(meet) = c.cells[a].intersect(&c.cells[b]) else {
                continue;
            };
            if meet.is_empty() {
                continue;
            }
            if !is_face(a, &meet) || !is_face(b, &meet) {
                out.push(Violation::NotAComplex { a, b });
            }
        }
    }
    for (facet, _, m) in c.facets() {
        if m == 0 {
            out.push(Violation::Multiplicity { facet, m });
        }
    }
    out
}

/// `R≥0 (σ - w)` over all cells `σ` containing `w`, with inherited weights.
pub fn star(c: &WeightedComplex, w: &RationalVector) -> Result<WeightedFan> {
    if !c.support_contains(w) {
        return Err(Error::NotInSupport(w.to_string()));
    }
    let mut facets = Vec::new();
    for (_, cell, m) in c.facets() {
        if cell.contains(w) {
            facets.push((cell.tangent_cone(w)?, m));
        }
    }
    Ok(WeightedFan(WeightedComplex::from_facets(c.ambient_dim, c.dim, facets)?))
}

/// A codimension-one cell where the weighted primitive directions do not
/// sum to zero; `residual` is the sum in quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancingViolation {
    pub cell: usize,
    pub residual: IntegerVector,
}

impl fmt::Display for BalancingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cell {}: weighted sum {} in N/N_tau", self.cell, self.residual)
    }
}

/// Primitive generator of the image of `N_σ` in `N / N_τ`, pointing into σ.
pub(crate) fn quotient_direction(
    sigma: &Polyhedron,
    tau: &Polyhedron,
    quotient: &QuotientMap,
) -> Result<IntegerVector> {
    let inside = sigma.relative_interior_point()?;
    let base = tau.relative_interior_point()?;
    let u = inside.sub(&base).integral_direction();
    Ok(primitive_or_zero(quotient.project(&u)))
}

pub fn check_balancing(c: &WeightedComplex) -> Vec<BalancingViolation> {
    if c.dim == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (t, tau) in c.cells.iter().enumerate() {
        if tau.dim() != c.dim as isize - 1 {
            continue;
        }
        let lattice = tau.affine_span_lattice().expect("cells are nonempty");
        let q = QuotientMap::new(&lattice);
        let mut sum = vec![Int::zero(); q.quotient_rank()];
        for f in c.facets_around(t) {
            if f == t {
                continue;
            }
            let m = Int::from(c.multiplicity(f).unwrap_or(0));
            let v = quotient_direction(&c.cells[f], tau, &q).expect("cells are nonempty");
            for (s, x) in sum.iter_mut().zip(&v.0) {
                *s += &m * x;
            }
        }
        let residual = IntegerVector(sum);
        if !residual.is_zero() {
            out.push(BalancingViolation { cell: t, residual });
        }
    }
    out
}

/// True iff `w` is in the relative interior of a facet of weight one.
pub fn is_simple_point(c: &WeightedComplex, w: &RationalVector) -> bool {
    c.facets()
        .any(|(_, cell, m)| m == 1 && cell.relative_interior_contains(w))
}

/// `n` minus the largest dimension of a cell through `w`.
pub fn codim_at<C: CellComplex + ?Sized>(c: &C, w: &RationalVector) -> Result<usize> {
    let d = c
        .cells()
        .iter()
        .filter(|cell| cell.contains(w))
        .map(Polyhedron::dim)
        .max()
        .ok_or_else(|| Error::NotInSupport(w.to_string()))?;
    Ok(c.ambient_dim() - d as usize)
}

/// Common refinement of pairwise cell intersections (no weights).
pub fn set_intersection<A: CellComplex + ?Sized, B: CellComplex + ?Sized>(
    a: &A,
    b: &B,
) -> Result<PolyhedralComplex> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    let mut pieces = Vec::new();
    for s in a.maximal_cells() {
        for t in b.maximal_cells() {
            let meet = s.intersect(t)?;
            if !meet.is_empty() {
                pieces.push(meet);
            }
        }
    }
    Ok(PolyhedralComplex::from_cells(a.ambient_dim(), pieces))
}

/// Whether `cover` (a family whose pairwise intersections are faces)
/// covers the polyhedron `sigma`.
fn covered(sigma: &Polyhedron, cover: &[&Polyhedron]) -> Result<bool> {
    let k = sigma.dim();
    let mut pieces: Vec<Polyhedron> = Vec::new();
    for t in cover {
        let p = sigma.intersect(t)?;
        if p.dim() == k && !pieces.contains(&p) {
            pieces.push(p);
        }
    }
    if pieces.is_empty() {
        return Ok(false);
    }
    for (i, p) in pieces.iter().enumerate() {
        for f in p.facets() {
            let x = f.relative_interior_point()?;
            if sigma.on_relative_boundary(&x) {
                continue;
            }
            let glued = pieces
                .iter()
                .enumerate()
                .any(|(j, q)| j != i && q.contains(&x));
            if !glued {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `|a| ⊆ |b|`
pub fn support_contained<A: CellComplex + ?Sized, B: CellComplex + ?Sized>(
    a: &A,
    b: &B,
) -> Result<bool> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    let cover = b.maximal_cells();
    for s in a.maximal_cells() {
        if !covered(s, &cover)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality of supports as point sets, independent of cell structure.
pub fn supports_equal<A: CellComplex + ?Sized, B: CellComplex + ?Sized>(a: &A, b: &B) -> bool {
    support_contained(a, b).unwrap_or(false) && support_contained(b, a).unwrap_or(false)
}

/// Supports agree and weights agree on every top-dimensional piece of
/// the common refinement.
pub fn weighted_supports_equal(a: &WeightedComplex, b: &WeightedComplex) -> bool {
    if a.ambient_dim != b.ambient_dim {
        return false;
    }
    if a.is_empty() || b.is_empty() {
        return a.is_empty() && b.is_empty();
    }
    if a.dim != b.dim || !supports_equal(a, b) {
        return false;
    }
    for (_, s, ms) in a.facets() {
        for (_, t, mt) in b.facets() {
            match s.intersect(t) {
                Ok(meet) if meet.dim() == a.dim as isize => {
                    if ms != mt {
                        return false;
                    }
                }
                Ok(_) => {}
                Err(_) => return false,
            }
        }
    }
    true
}
