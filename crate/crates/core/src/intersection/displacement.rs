//! Deterministic generic displacement vectors with per-pair certificates.

use std::fmt;

use num_traits::One;

use crate::error::Result;
use crate::lattice::{index_of_generators, IntegerVector, LatticeIndex, RationalVector, Sublattice};
use crate::polyhedra::Polyhedron;
use crate::{Int, Rat};

/// What was verified about `σ ∩ (σ' + v)` for one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    Empty,
    /// Relative interiors meet and the intersection has the expected dimension.
    Transverse { dim: isize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub pair: usize,
    pub outcome: PairOutcome,
}

/// A displacement vector together with the checks that make it generic
/// for a particular list of cone pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplacementVector {
    pub v: RationalVector,
    /// Moment-curve parameter the vector was taken from.
    pub parameter: u64,
    pub certificate: Vec<PairCheck>,
}

impl fmt::Display for DisplacementVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (t = {})", self.v, self.parameter)
    }
}

/// 2, 3, 5, 7, ...
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

/// `(1, t, t^2, ..., t^(k-1))`
pub fn moment_point(t: u64, k: usize) -> RationalVector {
    let mut out = Vec::with_capacity(k);
    let mut x = Int::one();
    for _ in 0..k {
        out.push(Rat::from_integer(x.clone()));
        x *= t;
    }
    RationalVector(out)
}

/// Checks one pair against `v`; `None` means `v` lies in the bad locus.
/// `rank` is the dimension of the space both cones live in.
pub fn check_pair(
    a: &Polyhedron,
    b: &Polyhedron,
    v: &RationalVector,
    rank: usize,
) -> Result<Option<PairOutcome>> {
    let moved = b.translate(v);
    let meet = a.intersect(&moved)?;
    if meet.is_empty() {
        return Ok(Some(PairOutcome::Empty));
    }
    let expected = a.dim() + b.dim() - rank as isize;
    if meet.dim() != expected {
        return Ok(None);
    }
    let x = meet.relative_interior_point()?;
    if a.relative_interior_contains(&x) && moved.relative_interior_contains(&x) {
        Ok(Some(PairOutcome::Transverse { dim: expected }))
    } else {
        Ok(None)
    }
}

/// First certified moment-curve vector in `R^n`.
pub fn pick_generic_vector(n: usize, pairs: &[(Polyhedron, Polyhedron)]) -> Result<DisplacementVector> {
    pick_generic_vector_in(&Sublattice::full(n), pairs, 0)
}

/// The `skip`-th certified vector, drawn from the real span of `lattice`
/// with moment-curve coordinates in its basis.
pub fn pick_generic_vector_in(
    lattice: &Sublattice,
    pairs: &[(Polyhedron, Polyhedron)],
    skip: usize,
) -> Result<DisplacementVector> {
    let rank = lattice.rank();
    let mut found = 0;
    for t in primes() {
        let v = lattice.combine(&moment_point(t, rank));
        let mut certificate = Vec::with_capacity(pairs.len());
        let mut ok = true;
        for (i, (a, b)) in pairs.iter().enumerate() {
            match check_pair(a, b, &v, rank)? {
                Some(outcome) => certificate.push(PairCheck { pair: i, outcome }),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        if found == skip {
            return Ok(DisplacementVector {
                v,
                parameter: t,
                certificate,
            });
        }
        found += 1;
    }
    unreachable!("the prime sequence is infinite")
}

/// `Σ [L : L_σ + L_σ'] m m'` over pairs whose displaced cones meet, with
/// indices measured inside `lattice`. Pairs of infinite index contribute
/// nothing.
pub(crate) fn displacement_sum(
    left: &[(Polyhedron, u64)],
    right: &[(Polyhedron, u64)],
    lattice: &Sublattice,
    skip: usize,
) -> Result<(u64, DisplacementVector)> {
    let pairs: Vec<(Polyhedron, Polyhedron)> = left
        .iter()
        .flat_map(|(a, _)| right.iter().map(move |(b, _)| (a.clone(), b.clone())))
        .collect();
    let dv = pick_generic_vector_in(lattice, &pairs, skip)?;
    let mut total = 0u64;
    for check in &dv.certificate {
        if check.outcome == PairOutcome::Empty {
            continue;
        }
        let (a, ma) = &left[check.pair / right.len()];
        let (b, mb) = &right[check.pair % right.len()];
        let mut gens: Vec<IntegerVector> = Vec::new();
        for cone in [a, b] {
            for g in cone.affine_span_lattice()?.basis() {
                match lattice.coordinates(g) {
                    Some(c) => gens.push(c),
                    None => {
                        return Err(crate::Error::AmbientNotLinear(format!(
                            "cone {cone} leaves the ambient lattice {lattice}"
                        )))
                    }
                }
            }
        }
        if let LatticeIndex::Finite(d) = index_of_generators(lattice.rank(), &gens) {
            let d: u64 = d.try_into().expect("lattice index fits in u64");
            total += d * ma * mb;
        }
    }
    Ok((total, dv))
}
