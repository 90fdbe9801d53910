use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use tropint::complexes::{check_balancing, star, CellComplex, WeightedComplex};
use tropint::fixtures::{fixture, Fixture, FIXTURE_IDS};
use tropint::intersection::{
    complete_intersection_count, lifting_report, mixed_volume, stable_intersection_multi, stable_intersection_with,
};
use tropint::lattice::RationalVector;
use tropint::valued_poly::tropicalize;

use crate::io::{
    load_complex, load_poly, parse_point, parse_rat, read_json, to_json, write_text, CliError, CliResult, ComplexFile,
    LiftReportFile, PolytopesFile, ViolationEntry,
};
use crate::svg::{render_svg, Window};

#[derive(Debug, Parser)]
#[command(name = "tropint", version, about = "Exact tropical hypersurfaces and stable intersections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tropical hypersurface of a polynomial.
    Tropicalize {
        #[arg(long)]
        poly: PathBuf,
        /// Complex JSON; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// `x0,x1,y0,y1`
        #[arg(long, allow_hyphen_values = true, default_value = "-5,5,-5,5")]
        window: String,
    },
    /// Star of a complex at a point.
    Star {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Balancing check; exits 1 when some codimension-one cell is unbalanced.
    Balance {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Stable intersection of two complexes, optionally inside an ambient one.
    Stable {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        ambient: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stable intersection of several complexes in one step.
    MultiStable {
        #[arg(long, num_args = 1.., required = true)]
        complexes: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mixed volume of n polytopes in R^n.
    Mixedvol {
        #[arg(long)]
        polytopes: PathBuf,
    },
    /// Number of solutions of a complete intersection tropicalizing to a point.
    Cicount {
        #[arg(long, num_args = 1.., required = true)]
        polys: Vec<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Checks the hypotheses of the lifting theorem at a point.
    Liftcheck {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        ambient: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Draws planar complexes, overlaid in the given order.
    Render {
        #[arg(long, num_args = 1.., required = true)]
        complex: Vec<PathBuf>,
        #[arg(long, allow_hyphen_values = true, default_value = "-5,5,-5,5")]
        window: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the built-in worked examples against their known answers.
    Examples {
        /// One example id; all of them when absent.
        #[arg(long)]
        id: Option<String>,
    },
}

fn parse_window(s: &str) -> CliResult<Window> {
    let xs = s.split(',').map(parse_rat).collect::<CliResult<Vec<_>>>()?;
    let [x0, x1, y0, y1]: [_; 4] = xs
        .try_into()
        .map_err(|_| CliError::Parse(format!("window {s:?} needs four values x0,x1,y0,y1")))?;
    Window::new(x0, x1, y0, y1).map_err(CliError::Parse)
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write_text(p, text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_complex(out: Option<&Path>, c: &WeightedComplex) -> CliResult<()> {
    emit(out, &to_json(&ComplexFile::from_complex(c)?))
}

fn point_in(n: usize, s: &str) -> CliResult<RationalVector> {
    let w = parse_point(s)?;
    if w.len() != n {
        return Err(CliError::Parse(format!("point {s:?} has {} coordinates, expected {n}", w.len())));
    }
    Ok(w)
}

/// Runs one command. `Ok` carries the exit code for commands whose answer
/// is itself a yes/no.
pub fn execute(cmd: Command) -> CliResult<i32> {
    match cmd {
        Command::Tropicalize { poly, out, svg, window } => {
            let c = tropicalize(&load_poly(&poly)?)?;
            if let Some(svg) = svg {
                write_text(&svg, &render_svg(&[&c], &parse_window(&window)?)?)?;
            }
            emit_complex(out.as_deref(), &c)?;
        }
        Command::Star { complex, point, out } => {
            let c = load_complex(&complex)?;
            let w = point_in(c.ambient_dim(), &point)?;
            emit_complex(out.as_deref(), &star(&c, &w)?.into_complex())?;
        }
        Command::Balance { complex } => {
            let c = load_complex(&complex)?;
            let violations: Vec<ViolationEntry> = check_balancing(&c)
                .into_iter()
                .map(|v| ViolationEntry {
                    cell: v.cell,
                    residual: v.residual.0.iter().map(ToString::to_string).collect(),
                })
                .collect();
            println!("{}", serde_json::to_string(&violations).expect("plain data serializes"));
            return Ok(if violations.is_empty() { 0 } else { 1 });
        }
        Command::Stable { a, b, ambient, out } => {
            let a = load_complex(&a)?;
            let b = load_complex(&b)?;
            let y = ambient.as_deref().map(load_complex).transpose()?;
            emit_complex(out.as_deref(), &stable_intersection_with(&a, &b, y.as_ref(), 0)?)?;
        }
        Command::MultiStable { complexes, out } => {
            let list = complexes.iter().map(|p| load_complex(p)).collect::<CliResult<Vec<_>>>()?;
            emit_complex(out.as_deref(), &stable_intersection_multi(&list)?)?;
        }
        Command::Mixedvol { polytopes } => {
            let ps = read_json::<PolytopesFile>(&polytopes)?.to_polytopes()?;
            println!("{}", mixed_volume(&ps)?);
        }
        Command::Cicount { polys, point } => {
            let fs = polys.iter().map(|p| load_poly(p)).collect::<CliResult<Vec<_>>>()?;
            let n = fs.first().map_or(0, |f| f.n());
            println!("{}", complete_intersection_count(&fs, &point_in(n, &point)?)?);
        }
        Command::Liftcheck { a, b, ambient, point } => {
            let a = load_complex(&a)?;
            let b = load_complex(&b)?;
            let y = ambient.as_deref().map(load_complex).transpose()?;
            let w = point_in(a.ambient_dim(), &point)?;
            let report = lifting_report(&a, &b, &w, y.as_ref())?;
            println!("{}", to_json(&LiftReportFile::from(&report)));
        }
        Command::Render { complex, window, out } => {
            let list = complex.iter().map(|p| load_complex(p)).collect::<CliResult<Vec<_>>>()?;
            let refs: Vec<&WeightedComplex> = list.iter().collect();
            let svg = render_svg(&refs, &parse_window(&window)?)?;
            emit(out.as_deref(), svg.trim_end())?;
        }
        Command::Examples { id } => {
            let ids: Vec<&str> = match &id {
                Some(id) => vec![id.as_str()],
                None => FIXTURE_IDS.to_vec(),
            };
            let mut failed = Vec::new();
            for id in ids {
                let (text, ok) = run_example(&fixture(id)?)?;
                print!("{text}");
                if !ok {
                    failed.push(id.to_string());
                }
            }
            if !failed.is_empty() {
                return Err(CliError::Mismatch(format!("examples {} disagree", failed.join(", "))));
            }
        }
    }
    Ok(0)
}

pub fn format_points(p: &BTreeMap<RationalVector, u64>) -> String {
    let items: Vec<String> = p.iter().map(|(w, m)| format!("{w}:{m}")).collect();
    format!("{{{}}}", items.join(", "))
}

struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn line<T: std::fmt::Display + PartialEq>(&mut self, what: &str, expected: Option<T>, computed: T) {
        match expected {
            Some(e) => {
                let agree = e == computed;
                self.ok &= agree;
                let tag = if agree { "ok" } else { "MISMATCH" };
                let _ = writeln!(self.text, "  {what}: expected {e}, computed {computed} [{tag}]");
            }
            None => {
                let _ = writeln!(self.text, "  {what}: computed {computed}");
            }
        }
    }
}

/// Recomputes an example and compares it with the stored answer.
pub fn run_example(f: &Fixture) -> CliResult<(String, bool)> {
    let mut r = Report {
        text: format!("example {}: {}\n", f.id, f.description),
        ok: true,
    };
    let y = f.ambient.as_ref();
    if let Some(y) = y {
        let facet = y
            .facets()
            .find(|(_, c, _)| c.relative_interior_contains(&f.point))
            .map_or_else(|| "none".to_string(), |(_, _, m)| m.to_string());
        r.line(
            &format!("ambient facet multiplicity at {}", f.point),
            f.expected.ambient_facet_multiplicity.map(|m| m.to_string()),
            facet,
        );
    }
    if f.ambient.is_none() || f.stable_in_ambient {
        let s = stable_intersection_with(&f.a, &f.b, if f.stable_in_ambient { y } else { None }, 0)?;
        r.line(
            "stable intersection",
            f.expected.stable.as_ref().map(format_points),
            format_points(&s.point_weights()),
        );
    }
    let report = lifting_report(&f.a, &f.b, &f.point, y)?;
    r.line(&format!("proper at {}", f.point), f.expected.proper, report.proper);
    if y.is_some() {
        r.line("simple ambient point", f.expected.simple_ambient, report.simple_ambient);
    }
    r.line("verdict", f.expected.verdict, report.verdict);
    r.line("total multiplicity", f.expected.total_multiplicity, report.total_multiplicity);
    if !report.notes.is_empty() {
        let _ = writeln!(r.text, "  notes: {}", report.notes);
    }
    let _ = writeln!(r.text, "  result: {}", if r.ok { "MATCH" } else { "MISMATCH" });
    Ok((r.text, r.ok))
}
