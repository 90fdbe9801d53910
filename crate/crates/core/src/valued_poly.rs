//! Laurent polynomials seen through the valuations of their coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::complexes::WeightedComplex;
use crate::error::{Error, Result};
use crate::lattice::{IntegerVector, RationalVector};
use crate::polyhedra::{lattice_length, Halfspace, Polyhedron, VPolyhedron};
use crate::{Int, Rat};

/// `Σ a_u x^u`, stored as `u ↦ ν(a_u)` plus optional opaque tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedLaurentPoly {
    n: usize,
    terms: BTreeMap<IntegerVector, Rat>,
    tags: BTreeMap<IntegerVector, String>,
}

impl ValuedLaurentPoly {
    pub fn new(n: usize) -> Self {
        ValuedLaurentPoly {
            n,
            terms: BTreeMap::new(),
            tags: BTreeMap::new(),
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (IntegerVector, Rat)>) -> Result<Self> {
        let mut f = Self::new(n);
        for (u, v) in terms {
            f.add_term(u, v)?;
        }
        Ok(f)
    }

    /// Integer exponents and integer valuations.
    pub fn from_i64s(n: usize, terms: &[(&[i64], i64)]) -> Result<Self> {
        Self::from_terms(
            n,
            terms
                .iter()
                .map(|(u, v)| (IntegerVector::from_i64s(u), Rat::from_integer(Int::from(*v)))),
        )
    }

    /// Inserts or replaces the term with exponent `u`.
    pub fn add_term(&mut self, u: IntegerVector, valuation: Rat) -> Result<()> {
        if u.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: u.len(),
            });
        }
        self.terms.insert(u, valuation);
        Ok(())
    }

    pub fn set_tag(&mut self, u: &IntegerVector, tag: String) -> Result<()> {
        if !self.terms.contains_key(u) {
            return Err(Error::TermNotFound(u.to_string()));
        }
        self.tags.insert(u.clone(), tag);
        Ok(())
    }

    pub fn tag(&self, u: &IntegerVector) -> Option<&str> {
        self.tags.get(u).map(String::as_str)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<IntegerVector, Rat> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by `x^u` (shifts all exponents).
    pub fn shift_exponents(&self, u: &IntegerVector) -> Self {
        ValuedLaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.add(u), v.clone())).collect(),
            tags: self.tags.iter().map(|(e, t)| (e.add(u), t.clone())).collect(),
        }
    }

    /// Adds `c` to every valuation.
    pub fn shift_valuations(&self, c: &Rat) -> Self {
        ValuedLaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v + c)).collect(),
            tags: self.tags.clone(),
        }
    }

    /// Newton polytope `conv{u}`.
    pub fn newton_polytope(&self) -> Result<Polyhedron> {
        Polyhedron::polytope(self.n, self.terms.keys().map(IntegerVector::to_rational).collect())
    }
}

impl fmt::Display for ValuedLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(u, v)| format!("[{v}]x^{u}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `ν(a_u) + ⟨u, w⟩`
pub fn w_weight(f: &ValuedLaurentPoly, u: &IntegerVector, w: &RationalVector) -> Result<Rat> {
    let v = f.terms.get(u).ok_or_else(|| Error::TermNotFound(u.to_string()))?;
    if w.len() != f.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            found: w.len(),
        });
    }
    Ok(v + u.pair(w))
}

/// Exponents of minimal `w`-weight.
pub fn initial_support(f: &ValuedLaurentPoly, w: &RationalVector) -> BTreeSet<IntegerVector> {
    let weights: Vec<(&IntegerVector, Rat)> = f.terms.iter().map(|(u, v)| (u, v + u.pair(w))).collect();
    let Some(min) = weights.iter().map(|(_, x)| x).min().cloned() else {
        return BTreeSet::new();
    };
    weights
        .into_iter()
        .filter(|(_, x)| *x == min)
        .map(|(u, _)| u.clone())
        .collect()
}

/// `conv(initial_support(f, w))`
pub fn dual_cell(f: &ValuedLaurentPoly, w: &RationalVector) -> Result<Polyhedron> {
    let pts = initial_support(f, w).iter().map(IntegerVector::to_rational).collect();
    Polyhedron::polytope(f.n, pts)
}

/// The regular subdivision of the Newton polytope induced by the lift.
#[derive(Clone, Debug)]
pub struct NewtonSubdivision {
    pub polytope: Polyhedron,
    /// Projected lower faces of every dimension, sorted by dimension.
    pub cells: Vec<Polyhedron>,
    pub lift: BTreeMap<IntegerVector, Rat>,
}

impl NewtonSubdivision {
    /// Cells not contained in a larger cell.
    pub fn maximal_cells(&self) -> Vec<&Polyhedron> {
        self.cells
            .iter()
            .filter(|c| {
                !self
                    .cells
                    .iter()
                    .any(|d| d.dim() > c.dim() && d.contains_polyhedron(c))
            })
            .collect()
    }

    /// Edges with their lattice lengths.
    pub fn edges(&self) -> Vec<(&Polyhedron, Int)> {
        self.cells
            .iter()
            .filter(|c| c.dim() == 1)
            .map(|c| {
                let a = c.vertices()[0].to_integer().expect("lattice vertex");
                let b = c.vertices()[1].to_integer().expect("lattice vertex");
                (c, lattice_length(&a, &b))
            })
            .collect()
    }
}

/// Lower faces of the lifted point set, as faces of `conv(u, ν(a_u)) + R≥0 e_{n+1}`.
fn lower_faces(f: &ValuedLaurentPoly) -> Result<Vec<Polyhedron>> {
    let n = f.n;
    let pts: Vec<RationalVector> = f
        .terms
        .iter()
        .map(|(u, v)| {
            let mut x = u.to_rational().0;
            x.push(v.clone());
            RationalVector(x)
        })
        .collect();
    let mut up = vec![Int::zero(); n + 1];
    up[n] = Int::from(1);
    let lifted = Polyhedron::from_v(VPolyhedron::new(n + 1, pts, vec![IntegerVector(up)], Vec::new()))?;
    Ok(lifted.faces().into_iter().filter(Polyhedron::is_bounded).collect())
}

fn project_down(face: &Polyhedron, n: usize) -> Result<Polyhedron> {
    let pts = face
        .vertices()
        .iter()
        .map(|x| RationalVector(x.0[..n].to_vec()))
        .collect();
    Polyhedron::polytope(n, pts)
}

pub fn newton_subdivision(f: &ValuedLaurentPoly) -> Result<NewtonSubdivision> {
    let polytope = f.newton_polytope()?;
    if f.is_empty() {
        return Ok(NewtonSubdivision {
            polytope,
            cells: Vec::new(),
            lift: BTreeMap::new(),
        });
    }
    let mut cells = lower_faces(f)?
        .iter()
        .map(|face| project_down(face, f.n))
        .collect::<Result<Vec<_>>>()?;
    cells.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    Ok(NewtonSubdivision {
        polytope,
        cells,
        lift: f.terms.clone(),
    })
}

/// The region where the terms with exponents `face` all attain the minimum.
fn region(f: &ValuedLaurentPoly, face: &[IntegerVector]) -> Result<Polyhedron> {
    let u0 = &face[0];
    let v0 = &f.terms[u0];
    let equations = face[1..]
        .iter()
        .map(|u| Halfspace::new(u.sub(u0), v0 - &f.terms[u]))
        .collect();
    let inequalities = f
        .terms
        .iter()
        .filter(|(u, _)| !face.contains(u))
        .map(|(u, v)| Halfspace::new(u0.sub(u), v - v0))
        .collect();
    Polyhedron::from_inequalities(f.n, inequalities, equations)
}

/// Corner locus of `f`, weighted by lattice lengths of dual edges.
pub fn tropicalize(f: &ValuedLaurentPoly) -> Result<WeightedComplex> {
    if f.len() < 2 {
        return Err(Error::MonomialInput);
    }
    let n = f.n;
    let mut facets = Vec::new();
    for face in lower_faces(f)? {
        if face.dim() != 1 {
            continue;
        }
        let ends: Vec<IntegerVector> = face
            .vertices()
            .iter()
            .map(|x| IntegerVector(x.0[..n].iter().map(|c| c.to_integer()).collect()))
            .collect();
        let m = lattice_length(&ends[0], &ends[1]);
        let cell = region(f, &ends)?;
        let m: u64 = m.try_into().map_err(|_| Error::InvalidComplex("multiplicity overflow".into()))?;
        facets.push((cell, m));
    }
    WeightedComplex::from_facets(n, n - 1, facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{check_balancing, validate, weighted_supports_equal, CellComplex};

    fn rv(xs: &[i64]) -> RationalVector {
        RationalVector::from_i64s(xs)
    }

    fn iv(xs: &[i64]) -> IntegerVector {
        IntegerVector::from_i64s(xs)
    }

    fn line_poly() -> ValuedLaurentPoly {
        ValuedLaurentPoly::from_i64s(2, &[(&[1, 0], 0), (&[0, 0], 0), (&[0, 1], 0)]).unwrap()
    }

    fn parabola(nu: i64) -> ValuedLaurentPoly {
        ValuedLaurentPoly::from_i64s(2, &[(&[0, 1], 0), (&[2, 0], nu)]).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(w_weight(&line_poly(), &iv(&[1, 0]), &rv(&[3, 5])).unwrap(), Rat::from_integer(3.into()));
        assert_eq!(w_weight(&parabola(1), &iv(&[2, 0]), &rv(&[0, 0])).unwrap(), Rat::from_integer(1.into()));
        let half = RationalVector::from_fracs(&[(1, 2), (0, 1)]);
        assert!(w_weight(&parabola(1), &iv(&[0, 1]), &half).unwrap().is_zero());
        assert!(matches!(w_weight(&line_poly(), &iv(&[5, 5]), &rv(&[0, 0])), Err(Error::TermNotFound(_))));
    }

    #[test]
    fn initial_supports() {
        let s = initial_support(&line_poly(), &rv(&[0, 1]));
        assert_eq!(s, BTreeSet::from([iv(&[1, 0]), iv(&[0, 0])]));
        let s = initial_support(&line_poly(), &rv(&[3, 5]));
        assert_eq!(s, BTreeSet::from([iv(&[0, 0])]));
        let half = RationalVector::from_fracs(&[(1, 2), (0, 1)]);
        let s = initial_support(&parabola(-1), &half);
        assert_eq!(s, BTreeSet::from([iv(&[0, 1]), iv(&[2, 0])]));
    }

    #[test]
    fn subdivisions() {
        let s = newton_subdivision(&line_poly()).unwrap();
        assert_eq!(s.maximal_cells().len(), 1);
        assert_eq!(s.maximal_cells()[0].dim(), 2);

        let f = ValuedLaurentPoly::from_i64s(1, &[(&[0], 0), (&[1], 0), (&[2], 1)]).unwrap();
        let s = newton_subdivision(&f).unwrap();
        let mut max: Vec<Polyhedron> = s.maximal_cells().into_iter().cloned().collect();
        max.sort();
        let mut expect = vec![
            Polyhedron::lattice_polytope(&[&[0], &[1]]).unwrap(),
            Polyhedron::lattice_polytope(&[&[1], &[2]]).unwrap(),
        ];
        expect.sort();
        assert_eq!(max, expect);

        let mono = ValuedLaurentPoly::from_i64s(2, &[(&[1, 1], 3)]).unwrap();
        let s = newton_subdivision(&mono).unwrap();
        assert_eq!(s.cells, vec![Polyhedron::point(rv(&[1, 1]))]);
    }

    #[test]
    fn tropical_line() {
        let t = tropicalize(&line_poly()).unwrap();
        let ray = |d: &[i64]| Polyhedron::cone(rv(&[0, 0]), vec![iv(d)], vec![]).unwrap();
        let expect = WeightedComplex::from_facets(
            2,
            1,
            vec![(ray(&[1, 0]), 1), (ray(&[0, 1]), 1), (ray(&[-1, -1]), 1)],
        )
        .unwrap();
        assert!(weighted_supports_equal(&t, &expect));
        assert!(validate(&t).is_empty());
        assert!(check_balancing(&t).is_empty());
    }

    #[test]
    fn two_term_curve() {
        let t = tropicalize(&parabola(1)).unwrap();
        let l = Polyhedron::from_halfspaces_i64(2, &[], &[(&[-2, 1], 1)]).unwrap();
        let expect = WeightedComplex::from_facets(2, 1, vec![(l, 1)]).unwrap();
        assert!(weighted_supports_equal(&t, &expect));
        assert!(matches!(
            tropicalize(&ValuedLaurentPoly::from_i64s(2, &[(&[0, 1], 0)]).unwrap()),
            Err(Error::MonomialInput)
        ));
    }

    #[test]
    fn dual_cells() {
        let d = dual_cell(&line_poly(), &rv(&[0, 1])).unwrap();
        assert_eq!(d, Polyhedron::lattice_polytope(&[&[0, 0], &[1, 0]]).unwrap());
        let d = dual_cell(&parabola(1), &rv(&[0, 1])).unwrap();
        assert_eq!(d, Polyhedron::lattice_polytope(&[&[0, 1], &[2, 0]]).unwrap());
        let d = dual_cell(&line_poly(), &rv(&[3, 5])).unwrap();
        assert_eq!(d.dim(), 0);
    }

    #[test]
    fn doubled_facet_in_threefold() {
        // z^2 - 1 + a(xy + x + y + 1), ν(a) = 1
        let f = ValuedLaurentPoly::from_i64s(
            3,
            &[
                (&[0, 0, 2], 0),
                (&[0, 0, 0], 0),
                (&[1, 1, 0], 1),
                (&[1, 0, 0], 1),
                (&[0, 1, 0], 1),
            ],
        )
        .unwrap();
        let t = tropicalize(&f).unwrap();
        assert!(check_balancing(&t).is_empty());
        let origin = rv(&[0, 0, 0]);
        let (_, _, m) = t
            .facets()
            .find(|(_, c, _)| c.relative_interior_contains(&origin))
            .unwrap();
        assert_eq!(m, 2);
        assert!(t.support_contains(&origin));
    }

    #[test]
    fn valuation_and_monomial_shifts_preserve_tropicalization() {
        let f = ValuedLaurentPoly::from_i64s(2, &[(&[0, 0], 0), (&[1, 0], 1), (&[0, 2], -1), (&[3, 1], 2)]).unwrap();
        let t = tropicalize(&f).unwrap();
        let g = f.shift_exponents(&iv(&[-2, 5])).shift_valuations(&Rat::new(7.into(), 3.into()));
        assert!(weighted_supports_equal(&t, &tropicalize(&g).unwrap()));
    }
}
