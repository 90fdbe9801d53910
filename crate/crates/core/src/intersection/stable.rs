//! Local displacement rule, stable intersections and the diagonal route.

use crate::complexes::{set_intersection, CellComplex, PolyhedralComplex, WeightedComplex};
use crate::error::{Error, Result};
use crate::lattice::{IntegerVector, RationalVector, Sublattice};
use crate::polyhedra::{Polyhedron, MAX_AMBIENT_DIM};

use super::displacement::{displacement_sum, DisplacementVector};

/// Tangent cones at `x` of the facets through `x`, with weights.
pub(crate) fn star_cones(c: &WeightedComplex, x: &RationalVector) -> Result<Vec<(Polyhedron, u64)>> {
    c.facets()
        .filter(|(_, cell, _)| cell.contains(x))
        .map(|(_, cell, m)| Ok((cell.tangent_cone(x)?, m)))
        .collect()
}

/// The facet of `y` whose relative interior contains `x`, with its
/// saturated linear lattice.
pub(crate) fn ambient_lattice(y: &WeightedComplex, x: &RationalVector) -> Result<(Polyhedron, Sublattice)> {
    let facet = y
        .facets()
        .find(|(_, c, _)| c.relative_interior_contains(x))
        .map(|(_, c, _)| c.clone())
        .ok_or_else(|| {
            Error::AmbientNotLinear(format!("{x} is not in the relative interior of an ambient facet"))
        })?;
    let lattice = facet.affine_span_lattice()?;
    Ok((facet, lattice))
}

/// A local multiplicity together with the vector that certified it.
#[derive(Clone, Debug)]
pub struct LocalMultiplicity {
    pub value: u64,
    pub vector: DisplacementVector,
}

fn expected_dim(a: &WeightedComplex, b: &WeightedComplex, ambient: Option<&WeightedComplex>) -> isize {
    let big = ambient.map_or(a.ambient_dim(), WeightedComplex::dim);
    a.dim() as isize + b.dim() as isize - big as isize
}

fn check_common_cell(c: &WeightedComplex, tau: &Polyhedron, x: &RationalVector) -> Result<()> {
    let mut any = false;
    for (_, cell, _) in c.facets() {
        if cell.contains(x) {
            any = true;
            if !cell.contains_polyhedron(tau) {
                return Err(Error::NotACommonCell);
            }
        }
    }
    if any {
        Ok(())
    } else {
        Err(Error::NotACommonCell)
    }
}

pub fn local_intersection_multiplicity(
    a: &WeightedComplex,
    b: &WeightedComplex,
    tau: &Polyhedron,
    ambient: Option<&WeightedComplex>,
) -> Result<u64> {
    local_multiplicity_with(a, b, tau, ambient, 0).map(|m| m.value)
}

/// As `local_intersection_multiplicity`, using the `skip`-th certified
/// displacement vector.
pub fn local_multiplicity_with(
    a: &WeightedComplex,
    b: &WeightedComplex,
    tau: &Polyhedron,
    ambient: Option<&WeightedComplex>,
    skip: usize,
) -> Result<LocalMultiplicity> {
    let n = a.ambient_dim();
    for d in [b.ambient_dim(), tau.ambient_dim()] {
        if d != n {
            return Err(Error::DimensionMismatch { expected: n, found: d });
        }
    }
    if tau.is_empty() {
        return Err(Error::NotACommonCell);
    }
    let x = tau.relative_interior_point()?;
    check_common_cell(a, tau, &x)?;
    check_common_cell(b, tau, &x)?;

    let e = expected_dim(a, b, ambient);
    if tau.dim() != e {
        let big = ambient.map_or(n, WeightedComplex::dim) as isize;
        return Err(Error::NotProper {
            expected: (big - e).max(0) as usize,
            found: (big - tau.dim()) as usize,
        });
    }
    let lattice = match ambient {
        None => Sublattice::full(n),
        Some(y) => ambient_lattice(y, &x)?.1,
    };
    let (value, vector) = displacement_sum(&star_cones(a, &x)?, &star_cones(b, &x)?, &lattice, skip)?;
    Ok(LocalMultiplicity { value, vector })
}

pub fn stable_intersection(a: &WeightedComplex, b: &WeightedComplex) -> Result<WeightedComplex> {
    stable_intersection_with(a, b, None, 0)
}

/// Stable intersection, optionally inside an ambient complex, using the
/// `skip`-th certified displacement vector at every cell.
pub fn stable_intersection_with(
    a: &WeightedComplex,
    b: &WeightedComplex,
    ambient: Option<&WeightedComplex>,
    skip: usize,
) -> Result<WeightedComplex> {
    let n = a.ambient_dim();
    if b.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.ambient_dim(),
        });
    }
    let e = expected_dim(a, b, ambient);
    if e < 0 {
        return Ok(WeightedComplex::empty(n, 0));
    }
    let common = set_intersection(a, b)?;
    let mut facets = Vec::new();
    for tau in common.cells().iter().filter(|c| c.dim() == e) {
        let m = local_multiplicity_with(a, b, tau, ambient, skip)?.value;
        if m > 0 {
            facets.push((tau.clone(), m));
        }
    }
    WeightedComplex::from_facets(n, e as usize, facets)
}

pub fn stable_intersection_multi(list: &[WeightedComplex]) -> Result<WeightedComplex> {
    stable_intersection_multi_with(list, 0)
}

/// `diag(R^n)` in `R^(rn)`.
fn diagonal(n: usize, r: usize) -> Result<Polyhedron> {
    let dirs = (0..n)
        .map(|i| {
            let mut v = IntegerVector::zeros(n * r);
            for k in 0..r {
                v.0[k * n + i] = 1.into();
            }
            v
        })
        .collect();
    Polyhedron::cone(RationalVector::zeros(n * r), Vec::new(), dirs)
}

/// Stable intersection of several complexes as the stable intersection of
/// their product with the diagonal, read back in the first factor.
pub fn stable_intersection_multi_with(list: &[WeightedComplex], skip: usize) -> Result<WeightedComplex> {
    if list.len() < 2 {
        return Err(Error::WrongCount {
            expected: 2,
            found: list.len(),
        });
    }
    let n = list[0].ambient_dim();
    if let Some(c) = list.iter().find(|c| c.ambient_dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.ambient_dim(),
        });
    }
    let r = list.len();
    let e = list.iter().map(|c| c.dim() as isize).sum::<isize>() - ((r - 1) * n) as isize;
    if e < 0 {
        return Ok(WeightedComplex::empty(n, 0));
    }
    if r * n > MAX_AMBIENT_DIM {
        return Err(Error::UnsupportedDimension(r * n));
    }

    let mut common: PolyhedralComplex = list[0].to_unweighted();
    for c in &list[1..] {
        common = set_intersection(&common, c)?;
        if common.is_empty() {
            return Ok(WeightedComplex::empty(n, e as usize));
        }
    }
    let delta = vec![(diagonal(n, r)?, 1u64)];
    let full = Sublattice::full(n * r);
    let mut facets = Vec::new();
    for tau in common.cells().iter().filter(|c| c.dim() == e) {
        let x = tau.relative_interior_point()?;
        let mut products = star_cones(&list[0], &x)?;
        for c in &list[1..] {
            let stars = star_cones(c, &x)?;
            let mut next = Vec::with_capacity(products.len() * stars.len());
            for (p, mp) in &products {
                for (s, ms) in &stars {
                    next.push((p.product(s)?, mp * ms));
                }
            }
            products = next;
        }
        let (m, _) = displacement_sum(&products, &delta, &full, skip)?;
        if m > 0 {
            facets.push((tau.clone(), m));
        }
    }
    WeightedComplex::from_facets(n, e as usize, facets)
}
