//! Intersection theory: displacement rules, stable intersections, mixed
//! volumes and lifting checks.

mod displacement;
mod minkowski;
mod stable;

use std::fmt;

use num_traits::{One, Zero};

use crate::complexes::{is_simple_point, set_intersection, CellComplex, PolyhedralComplex, WeightedComplex};
use crate::error::{Error, Result};
use crate::lattice::RationalVector;
use crate::polyhedra::Polyhedron;
use crate::valued_poly::{dual_cell, tropicalize, ValuedLaurentPoly};
use crate::Rat;

pub use displacement::{
    check_pair, moment_point, pick_generic_vector, pick_generic_vector_in, primes, DisplacementVector, PairCheck,
    PairOutcome,
};
pub use minkowski::{minkowski_product, ConeId, MinkowskiWeight, SimplicialFan};
pub use stable::{
    local_intersection_multiplicity, local_multiplicity_with, stable_intersection, stable_intersection_multi,
    stable_intersection_multi_with, stable_intersection_with, LocalMultiplicity,
};

/// `V(Q_1, ..., Q_n)` by inclusion-exclusion over Minkowski sums.
pub fn mixed_volume(polytopes: &[Polyhedron]) -> Result<Rat> {
    let Some(first) = polytopes.first() else {
        return Err(Error::WrongCount { expected: 1, found: 0 });
    };
    let n = first.ambient_dim();
    if polytopes.len() != n {
        return Err(Error::WrongCount {
            expected: n,
            found: polytopes.len(),
        });
    }
    for p in polytopes {
        if p.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.ambient_dim(),
            });
        }
        if p.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        if !p.is_bounded() {
            return Err(Error::Unbounded);
        }
    }
    let mut total = Rat::zero();
    for mask in 1u32..(1 << n) {
        let mut sum: Option<Polyhedron> = None;
        for (i, p) in polytopes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = Some(match sum {
                    None => p.clone(),
                    Some(s) => s.minkowski_sum(p)?,
                });
            }
        }
        let vol = sum.expect("mask is nonzero").euclidean_volume()?;
        if (n - mask.count_ones() as usize).is_multiple_of(2) {
            total += vol;
        } else {
            total -= vol;
        }
    }
    Ok(total)
}

/// Number of solutions near `w` of a square system, as the mixed volume of
/// the cells dual to `w`.
pub fn complete_intersection_count(polys: &[ValuedLaurentPoly], w: &RationalVector) -> Result<u64> {
    let n = w.len();
    if polys.len() != n {
        return Err(Error::WrongCount {
            expected: n,
            found: polys.len(),
        });
    }
    if let Some(f) = polys.iter().find(|f| f.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.n(),
        });
    }
    let tropical: Vec<WeightedComplex> = polys.iter().map(tropicalize).collect::<Result<_>>()?;
    if !isolated(&tropical, w)? {
        return Err(Error::NotIsolated(w.to_string()));
    }
    let cells: Vec<Polyhedron> = polys.iter().map(|f| dual_cell(f, w)).collect::<Result<_>>()?;
    let v = mixed_volume(&cells)?;
    if !v.denom().is_one() {
        return Err(Error::InvalidComplex(format!("non-integral mixed volume {v}")));
    }
    Ok(v.to_integer().try_into().expect("count fits in u64"))
}

fn isolated(complexes: &[WeightedComplex], w: &RationalVector) -> Result<bool> {
    if complexes.iter().any(|c| !c.support_contains(w)) {
        return Ok(false);
    }
    let mut common: PolyhedralComplex = complexes[0].to_unweighted();
    for c in &complexes[1..] {
        common = set_intersection(&common, c)?;
    }
    Ok(common.cells().iter().all(|c| !c.contains(w) || c.dim() == 0))
}

fn require_support(c: &WeightedComplex, w: &RationalVector) -> Result<()> {
    if c.ambient_dim() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: c.ambient_dim(),
            found: w.len(),
        });
    }
    if c.support_contains(w) {
        Ok(())
    } else {
        Err(Error::NotInSupport(w.to_string()))
    }
}

fn expected_dim(a: &WeightedComplex, b: &WeightedComplex, ambient: Option<&WeightedComplex>) -> isize {
    let big = ambient.map_or(a.ambient_dim(), WeightedComplex::dim);
    a.dim() as isize + b.dim() as isize - big as isize
}

/// Whether every maximal cell of `|a| ∩ |b|` through `w` has the expected
/// dimension.
pub fn check_proper(
    a: &WeightedComplex,
    b: &WeightedComplex,
    w: &RationalVector,
    ambient: Option<&WeightedComplex>,
) -> Result<bool> {
    require_support(a, w)?;
    require_support(b, w)?;
    if let Some(y) = ambient {
        require_support(y, w)?;
    }
    let e = expected_dim(a, b, ambient);
    let common = set_intersection(a, b)?;
    Ok(common
        .maximal_cells()
        .into_iter()
        .filter(|c| c.contains(w))
        .all(|c| c.dim() == e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Lifts,
    NoGuarantee,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Lifts => "LIFTS",
            Verdict::NoGuarantee => "NO_GUARANTEE",
        })
    }
}

/// Whether the hypotheses of the lifting theorem hold at `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub point: RationalVector,
    pub proper: bool,
    pub simple_ambient: bool,
    pub verdict: Verdict,
    /// Lower bound for the multiplicity of the intersection at `w`.
    pub total_multiplicity: u64,
    pub notes: String,
}

pub fn lifting_report(
    a: &WeightedComplex,
    b: &WeightedComplex,
    w: &RationalVector,
    ambient: Option<&WeightedComplex>,
) -> Result<LiftReport> {
    let proper = check_proper(a, b, w, ambient)?;
    let simple_ambient = ambient.is_none_or(|y| is_simple_point(y, w));
    let mut notes = Vec::new();
    let mut total = 0;
    if proper {
        let e = expected_dim(a, b, ambient);
        let common = set_intersection(a, b)?;
        let carrier = common
            .cells()
            .iter()
            .find(|c| c.relative_interior_contains(w))
            .expect("w lies in the intersection");
        if carrier.dim() == e {
            match local_intersection_multiplicity(a, b, carrier, ambient) {
                Ok(m) => total = m,
                Err(Error::AmbientNotLinear(msg)) => {
                    notes.push(format!("ambient is not locally linear at w: {msg}"));
                }
                Err(err) => return Err(err),
            }
        } else {
            // w is on the boundary of intersection cells; take the smallest neighbour
            let mut best: Option<u64> = None;
            for tau in common.cells().iter().filter(|c| c.dim() == e && c.contains(w)) {
                let m = local_intersection_multiplicity(a, b, tau, ambient)?;
                best = Some(best.map_or(m, |x| x.min(m)));
            }
            total = best.unwrap_or(0);
            notes.push("w is not in the relative interior of an intersection cell".into());
        }
    } else {
        notes.push("intersection is not proper at w".into());
    }
    if !simple_ambient {
        notes.push("w is not a simple point of the ambient tropicalization".into());
    }
    let verdict = if proper && simple_ambient {
        Verdict::Lifts
    } else {
        Verdict::NoGuarantee
    };
    Ok(LiftReport {
        point: w.clone(),
        proper,
        simple_ambient,
        verdict,
        total_multiplicity: total,
        notes: notes.join("; "),
    })
}
