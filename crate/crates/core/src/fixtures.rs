//! Worked examples with known answers: a line against parabolas, two
//! lines meeting along a ray, and lines on quadric surfaces in `R^3`.

use std::collections::BTreeMap;

use crate::complexes::WeightedComplex;
use crate::error::{Error, Result};
use crate::intersection::Verdict;
use crate::lattice::{IntegerVector, RationalVector};
use crate::polyhedra::Polyhedron;
use crate::valued_poly::{tropicalize, ValuedLaurentPoly};

pub const FIXTURE_IDS: [&str; 6] = ["6.1a", "6.1b", "6.1c", "6.2", "6.4", "6.5"];

/// Known values for a fixture; `None` where nothing is asserted.
#[derive(Clone, Debug, Default)]
pub struct Expected {
    /// Stable intersection as point weights.
    pub stable: Option<BTreeMap<RationalVector, u64>>,
    pub proper: Option<bool>,
    pub simple_ambient: Option<bool>,
    pub verdict: Option<Verdict>,
    pub total_multiplicity: Option<u64>,
    /// Multiplicity of the ambient facet through the point.
    pub ambient_facet_multiplicity: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: &'static str,
    pub description: &'static str,
    /// Defining polynomials, when the complexes are hypersurfaces.
    pub polys: Vec<ValuedLaurentPoly>,
    pub ambient_poly: Option<ValuedLaurentPoly>,
    pub a: WeightedComplex,
    pub b: WeightedComplex,
    pub ambient: Option<WeightedComplex>,
    /// Whether stable intersections should be taken inside `ambient`.
    pub stable_in_ambient: bool,
    pub point: RationalVector,
    pub expected: Expected,
}

/// `y - x - 1` with trivial valuations.
pub fn line_poly() -> ValuedLaurentPoly {
    ValuedLaurentPoly::from_i64s(2, &[(&[0, 1], 0), (&[1, 0], 0), (&[0, 0], 0)]).expect("valid terms")
}

/// `y - a x^2`
pub fn parabola_poly(nu_a: i64) -> ValuedLaurentPoly {
    ValuedLaurentPoly::from_i64s(2, &[(&[0, 1], 0), (&[2, 0], nu_a)]).expect("valid terms")
}

/// `y - a x - b`
pub fn shifted_line_poly(nu_a: i64, nu_b: i64) -> ValuedLaurentPoly {
    ValuedLaurentPoly::from_i64s(2, &[(&[0, 1], 0), (&[1, 0], nu_a), (&[0, 0], nu_b)]).expect("valid terms")
}

/// `z^2 - 1 + a(xy + x + y + 1)`, `ν(a) = 1`
pub fn quadric_y_prime() -> ValuedLaurentPoly {
    ValuedLaurentPoly::from_i64s(
        3,
        &[
            (&[0, 0, 2], 0),
            (&[0, 0, 0], 0),
            (&[1, 1, 0], 1),
            (&[1, 0, 0], 1),
            (&[0, 1, 0], 1),
        ],
    )
    .expect("valid terms")
}

/// `(x+1)(y+1) + (x+z)(y+z+a)` expanded, `ν(a) = 1`
pub fn quadric_y_double_prime() -> ValuedLaurentPoly {
    ValuedLaurentPoly::from_i64s(
        3,
        &[
            (&[1, 1, 0], 0),
            (&[1, 0, 0], 0),
            (&[0, 1, 0], 0),
            (&[0, 0, 0], 0),
            (&[1, 0, 1], 0),
            (&[0, 1, 1], 0),
            (&[0, 0, 2], 0),
            (&[0, 0, 1], 1),
        ],
    )
    .expect("valid terms")
}

/// The coordinate line `R e_i` in `R^n` with weight one.
pub fn axis(n: usize, i: usize) -> WeightedComplex {
    let mut d = IntegerVector::zeros(n);
    d.0[i] = 1.into();
    let line = Polyhedron::cone(RationalVector::zeros(n), Vec::new(), vec![d]).expect("a line");
    WeightedComplex::from_facets(n, 1, vec![(line, 1)]).expect("a line is a complex")
}

fn points(entries: &[(&[(i64, i64)], u64)]) -> BTreeMap<RationalVector, u64> {
    entries
        .iter()
        .map(|(p, m)| (RationalVector::from_fracs(p), *m))
        .collect()
}

fn hypersurface_pair(
    id: &'static str,
    description: &'static str,
    f: ValuedLaurentPoly,
    g: ValuedLaurentPoly,
    point: RationalVector,
    expected: Expected,
) -> Result<Fixture> {
    Ok(Fixture {
        id,
        description,
        a: tropicalize(&f)?,
        b: tropicalize(&g)?,
        polys: vec![f, g],
        ambient_poly: None,
        ambient: None,
        stable_in_ambient: false,
        point,
        expected,
    })
}

pub fn fixture(id: &str) -> Result<Fixture> {
    match id {
        "6.1a" => hypersurface_pair(
            "6.1a",
            "y = x + 1 against y = a x^2 with val(a) = 1",
            line_poly(),
            parabola_poly(1),
            RationalVector::from_i64s(&[0, 1]),
            Expected {
                stable: Some(points(&[(&[(0, 1), (1, 1)], 1), (&[(-1, 1), (-1, 1)], 1)])),
                proper: Some(true),
                verdict: Some(Verdict::Lifts),
                total_multiplicity: Some(1),
                ..Expected::default()
            },
        ),
        "6.1b" => hypersurface_pair(
            "6.1b",
            "y = x + 1 against y = a x^2 with val(a) = -1",
            line_poly(),
            parabola_poly(-1),
            RationalVector::from_fracs(&[(1, 2), (0, 1)]),
            Expected {
                stable: Some(points(&[(&[(1, 2), (0, 1)], 2)])),
                proper: Some(true),
                verdict: Some(Verdict::Lifts),
                total_multiplicity: Some(2),
                ..Expected::default()
            },
        ),
        "6.1c" => hypersurface_pair(
            "6.1c",
            "y = x + 1 against y = a x^2 with val(a) = 0",
            line_poly(),
            parabola_poly(0),
            RationalVector::from_i64s(&[0, 0]),
            Expected {
                stable: Some(points(&[(&[(0, 1), (0, 1)], 2)])),
                proper: Some(true),
                verdict: Some(Verdict::Lifts),
                total_multiplicity: Some(2),
                ..Expected::default()
            },
        ),
        "6.2" => hypersurface_pair(
            "6.2",
            "y = x + 1 against y = a x + b with val(a) = 0, val(b) = 1",
            line_poly(),
            shifted_line_poly(0, 1),
            RationalVector::from_i64s(&[-1, -1]),
            Expected {
                stable: Some(points(&[(&[(0, 1), (0, 1)], 1)])),
                proper: Some(false),
                verdict: Some(Verdict::NoGuarantee),
                ..Expected::default()
            },
        ),
        "6.4" => {
            let y = quadric_y_prime();
            Ok(Fixture {
                id: "6.4",
                description: "two coordinate lines inside the quadric z^2 - 1 + a(x+1)(y+1), val(a) = 1",
                polys: Vec::new(),
                ambient: Some(tropicalize(&y)?),
                ambient_poly: Some(y),
                a: axis(3, 1),
                b: axis(3, 0),
                stable_in_ambient: true,
                point: RationalVector::zeros(3),
                expected: Expected {
                    proper: Some(true),
                    simple_ambient: Some(false),
                    verdict: Some(Verdict::NoGuarantee),
                    ambient_facet_multiplicity: Some(2),
                    ..Expected::default()
                },
            })
        }
        "6.5" => {
            let y = quadric_y_double_prime();
            Ok(Fixture {
                id: "6.5",
                description: "two coordinate lines inside the quadric cone (x+1)(y+1) + (x+z)(y+z+a), val(a) = 1",
                polys: Vec::new(),
                ambient: Some(tropicalize(&y)?),
                ambient_poly: Some(y),
                a: axis(3, 1),
                b: axis(3, 0),
                stable_in_ambient: false,
                point: RationalVector::zeros(3),
                expected: Expected {
                    proper: Some(true),
                    simple_ambient: Some(false),
                    verdict: Some(Verdict::NoGuarantee),
                    ..Expected::default()
                },
            })
        }
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

pub fn all_fixtures() -> Result<Vec<Fixture>> {
    FIXTURE_IDS.iter().map(|id| fixture(id)).collect()
}
