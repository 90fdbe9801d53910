//! JSON file formats. Rationals travel as strings so nothing is rounded.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use tropint::complexes::{validate, CellComplex, WeightedComplex};
use tropint::intersection::LiftReport;
use tropint::lattice::{IntegerVector, RationalVector};
use tropint::polyhedra::{Halfspace, Polyhedron};
use tropint::valued_poly::ValuedLaurentPoly;
use tropint::{Int, Rat};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input.
    Parse(String),
    /// A mathematical precondition failed.
    Math(tropint::Error),
    /// Computed and expected values disagree.
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
            CliError::Math(e) => write!(f, "{}: {e}", e.name()),
            CliError::Mismatch(msg) => write!(f, "mismatch: {msg}"),
        }
    }
}

impl From<tropint::Error> for CliError {
    fn from(e: tropint::Error) -> Self {
        CliError::Math(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A rational written either as a JSON integer or as a string `"p/q"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatText {
    Int(i64),
    Text(String),
}

impl RatText {
    pub fn from_rat(q: &Rat) -> Self {
        RatText::Text(q.to_string())
    }

    pub fn to_rat(&self) -> CliResult<Rat> {
        match self {
            RatText::Int(k) => Ok(Rat::from_integer(Int::from(*k))),
            RatText::Text(s) => parse_rat(s),
        }
    }
}

pub fn parse_rat(s: &str) -> CliResult<Rat> {
    let s = s.trim();
    let q = Rat::from_str(s).map_err(|_| CliError::Parse(format!("not a rational: {s:?}")))?;
    Ok(q)
}

/// Comma-separated rationals, e.g. `"1/2,-3"`.
pub fn parse_point(s: &str) -> CliResult<RationalVector> {
    let xs = s.split(',').map(parse_rat).collect::<CliResult<Vec<_>>>()?;
    Ok(RationalVector(xs))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermEntry {
    pub exp: Vec<i64>,
    pub val: RatText,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyFile {
    pub n: usize,
    pub terms: Vec<TermEntry>,
}

impl PolyFile {
    pub fn to_poly(&self) -> CliResult<ValuedLaurentPoly> {
        let mut f = ValuedLaurentPoly::new(self.n);
        for t in &self.terms {
            if t.exp.len() != self.n {
                return Err(CliError::Parse(format!(
                    "exponent {:?} has length {} but n = {}",
                    t.exp,
                    t.exp.len(),
                    self.n
                )));
            }
            let u = IntegerVector::from_i64s(&t.exp);
            f.add_term(u.clone(), t.val.to_rat()?)?;
            if let Some(tag) = &t.tag {
                f.set_tag(&u, tag.clone())?;
            }
        }
        Ok(f)
    }

    pub fn from_poly(f: &ValuedLaurentPoly) -> CliResult<Self> {
        let terms = f
            .terms()
            .iter()
            .map(|(u, v)| {
                Ok(TermEntry {
                    exp: ints(u)?,
                    val: RatText::from_rat(v),
                    tag: f.tag(u).map(str::to_string),
                })
            })
            .collect::<CliResult<_>>()?;
        Ok(PolyFile { n: f.n(), terms })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HalfspaceEntry {
    pub normal: Vec<i64>,
    pub offset: RatText,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CellEntry {
    #[serde(default)]
    pub ineqs: Vec<HalfspaceEntry>,
    #[serde(default)]
    pub eqs: Vec<HalfspaceEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiplicityEntry {
    pub cell: usize,
    pub m: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub dim: usize,
    pub cells: Vec<CellEntry>,
    #[serde(default)]
    pub multiplicities: Vec<MultiplicityEntry>,
}

fn ints(v: &IntegerVector) -> CliResult<Vec<i64>> {
    v.0.iter()
        .map(|x| i64::try_from(x).map_err(|_| CliError::Parse(format!("{x} does not fit in 64 bits"))))
        .collect()
}

fn halfspaces(n: usize, list: &[HalfspaceEntry]) -> CliResult<Vec<Halfspace>> {
    list.iter()
        .map(|h| {
            if h.normal.len() != n {
                return Err(CliError::Parse(format!("normal {:?} has length {} but n = {n}", h.normal, h.normal.len())));
            }
            Ok(Halfspace::new(IntegerVector::from_i64s(&h.normal), h.offset.to_rat()?))
        })
        .collect()
}

fn entries(list: &[Halfspace]) -> CliResult<Vec<HalfspaceEntry>> {
    list.iter()
        .map(|h| {
            Ok(HalfspaceEntry {
                normal: ints(&h.normal)?,
                offset: RatText::from_rat(&h.offset),
            })
        })
        .collect()
}

impl ComplexFile {
    /// Rebuilds the complex and rejects it unless it satisfies the complex
    /// invariants.
    pub fn to_complex(&self) -> CliResult<WeightedComplex> {
        if self.dim > self.n {
            return Err(CliError::Parse(format!("dim {} exceeds n = {}", self.dim, self.n)));
        }
        let cells = self
            .cells
            .iter()
            .map(|c| {
                Ok(Polyhedron::from_inequalities(
                    self.n,
                    halfspaces(self.n, &c.ineqs)?,
                    halfspaces(self.n, &c.eqs)?,
                )?)
            })
            .collect::<CliResult<Vec<_>>>()?;
        let mut weights = BTreeMap::new();
        for e in &self.multiplicities {
            if e.cell >= cells.len() {
                return Err(CliError::Parse(format!("multiplicity names missing cell {}", e.cell)));
            }
            *weights.entry(e.cell).or_insert(0) += e.m;
        }
        let c = WeightedComplex::from_cells(self.n, self.dim, cells, &weights)?;
        let problems = validate(&c);
        if !problems.is_empty() {
            let msg = problems.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
            return Err(tropint::Error::InvalidComplex(msg).into());
        }
        Ok(c)
    }

    /// Facets only, in H-form; faces are recovered on load.
    pub fn from_complex(c: &WeightedComplex) -> CliResult<Self> {
        let mut cells = Vec::new();
        let mut multiplicities = Vec::new();
        for (_, p, m) in c.facets() {
            multiplicities.push(MultiplicityEntry { cell: cells.len(), m });
            cells.push(CellEntry {
                ineqs: entries(p.inequalities())?,
                eqs: entries(p.equations())?,
            });
        }
        Ok(ComplexFile {
            n: c.ambient_dim(),
            dim: c.dim(),
            cells,
            multiplicities,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeEntry {
    pub vertices: Vec<Vec<RatText>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopesFile {
    pub n: usize,
    pub polytopes: Vec<PolytopeEntry>,
}

impl PolytopesFile {
    pub fn to_polytopes(&self) -> CliResult<Vec<Polyhedron>> {
        self.polytopes
            .iter()
            .map(|p| {
                let pts = p
                    .vertices
                    .iter()
                    .map(|v| {
                        if v.len() != self.n {
                            return Err(CliError::Parse(format!("vertex of length {} but n = {}", v.len(), self.n)));
                        }
                        Ok(RationalVector(v.iter().map(RatText::to_rat).collect::<CliResult<_>>()?))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                if pts.is_empty() {
                    return Err(CliError::Parse("polytope without vertices".into()));
                }
                Ok(Polyhedron::polytope(self.n, pts)?)
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationEntry {
    pub cell: usize,
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReportFile {
    pub point: Vec<String>,
    pub proper: bool,
    pub simple_ambient: bool,
    pub verdict: String,
    pub total_multiplicity: u64,
    pub notes: String,
}

impl From<&LiftReport> for LiftReportFile {
    fn from(r: &LiftReport) -> Self {
        LiftReportFile {
            point: r.point.0.iter().map(ToString::to_string).collect(),
            proper: r.proper,
            simple_ambient: r.simple_ambient,
            verdict: r.verdict.to_string(),
            total_multiplicity: r.total_multiplicity,
            notes: r.notes.clone(),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn load_complex(path: &Path) -> CliResult<WeightedComplex> {
    read_json::<ComplexFile>(path)?.to_complex()
}

pub fn load_poly(path: &Path) -> CliResult<ValuedLaurentPoly> {
    read_json::<PolyFile>(path)?.to_poly()
}
