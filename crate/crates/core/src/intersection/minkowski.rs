//! Minkowski weights on complete simplicial fans and their product by the
//! fan displacement rule.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::complexes::{support_contained, WeightedComplex};
use crate::error::{Error, Result};
use crate::lattice::{
    index_of_generators, primitive_or_zero, saturate, IntegerVector, LatticeIndex, QuotientMap,
    RationalVector, Sublattice,
};
use crate::polyhedra::{rank_of, Polyhedron};
use crate::Int;

use super::displacement::{pick_generic_vector, PairOutcome};

/// A cone of a simplicial fan, named by the indices of its rays.
pub type ConeId = BTreeSet<usize>;

/// Complete simplicial fan given by rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialFan {
    n: usize,
    rays: Vec<IntegerVector>,
    maximal: Vec<ConeId>,
}

impl SimplicialFan {
    pub fn new(n: usize, rays: Vec<IntegerVector>, maximal: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(r) = rays.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        let rays: Vec<IntegerVector> = rays.into_iter().map(primitive_or_zero).collect();
        if rays.iter().any(IntegerVector::is_zero) {
            return Err(Error::InvalidFan("zero ray".into()));
        }
        let mut cones: Vec<ConeId> = Vec::new();
        for c in maximal {
            if c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("cone {c:?} names a missing ray")));
            }
            let gens: Vec<IntegerVector> = c.iter().map(|&i| rays[i].clone()).collect();
            if c.len() != n || rank_of(&gens) != n {
                return Err(Error::InvalidFan(format!("cone {c:?} is not a full-dimensional simplicial cone")));
            }
            cones.push(c.into_iter().collect());
        }
        cones.sort();
        cones.dedup();
        let fan = SimplicialFan {
            n,
            rays,
            maximal: cones,
        };
        let as_complex = WeightedComplex::from_facets(
            n,
            n,
            fan.maximal.iter().map(|c| fan.cone(c)).collect::<Result<Vec<_>>>()?,
        )?;
        if !crate::complexes::validate(&as_complex).is_empty() {
            return Err(Error::InvalidFan("cones overlap".into()));
        }
        if !support_contained(&WeightedComplex::whole_space(n), &as_complex)? {
            return Err(Error::InvalidFan("fan is not complete".into()));
        }
        Ok(fan)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[IntegerVector] {
        &self.rays
    }

    pub fn maximal_cones(&self) -> &[ConeId] {
        &self.maximal
    }

    /// All cones of codimension `j`.
    pub fn cones_of_codim(&self, j: usize) -> Vec<ConeId> {
        let size = self.n - j;
        let mut out: BTreeSet<ConeId> = BTreeSet::new();
        for m in &self.maximal {
            let items: Vec<usize> = m.iter().copied().collect();
            for subset in subsets(&items, size) {
                out.insert(subset);
            }
        }
        out.into_iter().collect()
    }

    fn cone(&self, c: &ConeId) -> Result<(Polyhedron, u64)> {
        Ok((self.cone_polyhedron(c, &BTreeSet::new())?, 1))
    }

    /// `cone(c) + span(lin)`
    fn cone_polyhedron(&self, c: &ConeId, lin: &ConeId) -> Result<Polyhedron> {
        Polyhedron::cone(
            RationalVector::zeros(self.n),
            c.difference(lin).map(|&i| self.rays[i].clone()).collect(),
            lin.iter().map(|&i| self.rays[i].clone()).collect(),
        )
    }

    fn span(&self, c: &ConeId) -> Sublattice {
        let gens: Vec<IntegerVector> = c.iter().map(|&i| self.rays[i].clone()).collect();
        saturate(&Sublattice::from_generators(self.n, &gens))
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<ConeId> {
    if k == 0 {
        return vec![BTreeSet::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = subsets(&items[1..], k);
    for mut s in subsets(&items[1..], k - 1) {
        s.insert(items[0]);
        out.push(s);
    }
    out
}

/// Integer weights on the codimension-`j` cones of a complete fan that
/// satisfy the balancing condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiWeight {
    fan: SimplicialFan,
    codim: usize,
    weights: BTreeMap<ConeId, i64>,
}

impl MinkowskiWeight {
    /// Cones not listed get weight zero.
    pub fn new(fan: SimplicialFan, codim: usize, weights: BTreeMap<ConeId, i64>) -> Result<Self> {
        if codim > fan.n {
            return Err(Error::CodimensionTooLarge(codim));
        }
        let cones: BTreeSet<ConeId> = fan.cones_of_codim(codim).into_iter().collect();
        if let Some(c) = weights.keys().find(|c| !cones.contains(*c)) {
            return Err(Error::InvalidFan(format!("{c:?} is not a cone of codimension {codim}")));
        }
        let weights = weights.into_iter().filter(|(_, w)| *w != 0).collect();
        let w = MinkowskiWeight { fan, codim, weights };
        if let Some(tau) = w.unbalanced_cones().into_iter().next() {
            return Err(Error::InvalidFan(format!("weights are not balanced at {tau:?}")));
        }
        Ok(w)
    }

    /// Weight one on every maximal cone: the unit of the ring.
    pub fn unit(fan: SimplicialFan) -> Self {
        let weights = fan.maximal.iter().map(|c| (c.clone(), 1)).collect();
        MinkowskiWeight { fan, codim: 0, weights }
    }

    pub fn fan(&self) -> &SimplicialFan {
        &self.fan
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn weight(&self, c: &ConeId) -> i64 {
        self.weights.get(c).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> &BTreeMap<ConeId, i64> {
        &self.weights
    }

    pub fn scale(&self, k: i64) -> Self {
        MinkowskiWeight {
            fan: self.fan.clone(),
            codim: self.codim,
            weights: self
                .weights
                .iter()
                .map(|(c, w)| (c.clone(), w * k))
                .filter(|(_, w)| *w != 0)
                .collect(),
        }
    }

    /// Codimension-`(j+1)` cones where the balancing condition fails.
    pub fn unbalanced_cones(&self) -> Vec<ConeId> {
        if self.codim == self.fan.n {
            return Vec::new();
        }
        let mut out = Vec::new();
        for tau in self.fan.cones_of_codim(self.codim + 1) {
            let q = QuotientMap::new(&self.fan.span(&tau));
            let mut sum = vec![Int::zero(); q.quotient_rank()];
            for (sigma, w) in &self.weights {
                if !tau.is_subset(sigma) {
                    continue;
                }
                let extra = *sigma.difference(&tau).next().expect("one extra ray");
                let v = primitive_or_zero(q.project(&self.fan.rays[extra]));
                for (s, x) in sum.iter_mut().zip(&v.0) {
                    *s += x * Int::from(*w);
                }
            }
            if sum.iter().any(|s| !s.is_zero()) {
                out.push(tau);
            }
        }
        out
    }
}

/// `(c·c')(τ) = Σ [N : N_σ + N_σ'] c(σ) c'(σ')` over cones `σ, σ' ⊇ τ`
/// whose star cones at `τ` meet after a generic displacement.
pub fn minkowski_product(c: &MinkowskiWeight, d: &MinkowskiWeight) -> Result<MinkowskiWeight> {
    if c.fan != d.fan {
        return Err(Error::IncompatibleFans);
    }
    let fan = &c.fan;
    let n = fan.n;
    let k = c.codim + d.codim;
    if k > n {
        return Err(Error::CodimensionTooLarge(k));
    }
    let mut weights = BTreeMap::new();
    for tau in fan.cones_of_codim(k) {
        let star = |w: &MinkowskiWeight| -> Result<Vec<(ConeId, Polyhedron, i64)>> {
            w.weights
                .iter()
                .filter(|(s, _)| tau.is_subset(s))
                .map(|(s, x)| Ok((s.clone(), fan.cone_polyhedron(s, &tau)?, *x)))
                .collect()
        };
        let left = star(c)?;
        let right = star(d)?;
        if left.is_empty() || right.is_empty() {
            continue;
        }
        let pairs: Vec<(Polyhedron, Polyhedron)> = left
            .iter()
            .flat_map(|(_, a, _)| right.iter().map(move |(_, b, _)| (a.clone(), b.clone())))
            .collect();
        let v = pick_generic_vector(n, &pairs)?;
        let mut total: i64 = 0;
        for check in &v.certificate {
            if check.outcome == PairOutcome::Empty {
                continue;
            }
            let (s, _, x) = &left[check.pair / right.len()];
            let (t, _, y) = &right[check.pair % right.len()];
            let gens: Vec<IntegerVector> = s.iter().chain(t.iter()).map(|&i| fan.rays[i].clone()).collect();
            if let LatticeIndex::Finite(ix) = index_of_generators(n, &gens) {
                let ix: i64 = ix.try_into().expect("lattice index fits in i64");
                total += ix * x * y;
            }
        }
        if total != 0 {
            weights.insert(tau, total);
        }
    }
    Ok(MinkowskiWeight {
        fan: fan.clone(),
        codim: k,
        weights,
    })
}
