//! Deterministic SVG drawings of planar weighted complexes.

use std::fmt::Write;

use tropint::complexes::{CellComplex, WeightedComplex};
use tropint::lattice::{IntegerVector, RationalVector};
use tropint::polyhedra::{Halfspace, Polyhedron};
use tropint::{Error, Int, Rat};

const SIZE: i64 = 400;
const PALETTE: [&str; 4] = ["#1f4e79", "#b03a2e", "#1e8449", "#7d3c98"];

/// Axis-parallel viewing rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub x0: Rat,
    pub x1: Rat,
    pub y0: Rat,
    pub y1: Rat,
}

impl Window {
    pub fn new(x0: Rat, x1: Rat, y0: Rat, y1: Rat) -> Result<Self, String> {
        if x0 >= x1 || y0 >= y1 {
            return Err("window must satisfy x0 < x1 and y0 < y1".into());
        }
        Ok(Window { x0, x1, y0, y1 })
    }

    pub fn square(r: i64) -> Self {
        let r = Rat::from_integer(Int::from(r));
        Window::new(-r.clone(), r.clone(), -r.clone(), r).expect("r > 0")
    }

    fn polyhedron(&self) -> Polyhedron {
        let h = |n: [i64; 2], b: &Rat| Halfspace::new(IntegerVector::from_i64s(&n), b.clone());
        let ineqs = vec![
            h([-1, 0], &-self.x0.clone()),
            h([1, 0], &self.x1),
            h([0, -1], &-self.y0.clone()),
            h([0, 1], &self.y1),
        ];
        Polyhedron::from_inequalities(2, ineqs, Vec::new()).expect("a box is a polytope")
    }

    fn to_canvas(&self, p: &RationalVector) -> (String, String) {
        let size = Rat::from_integer(Int::from(SIZE));
        let x = (&p.0[0] - &self.x0) / (&self.x1 - &self.x0) * &size;
        let y = (&self.y1 - &p.0[1]) / (&self.y1 - &self.y0) * &size;
        (decimal(&x), decimal(&y))
    }
}

/// Rounds to three decimals and trims trailing zeros.
fn decimal(q: &Rat) -> String {
    let k = (q * Rat::from_integer(Int::from(1000))).round().to_integer().to_string();
    let (neg, digits) = match k.strip_prefix('-') {
        Some(d) => (true, d.to_string()),
        None => (false, k),
    };
    let digits = format!("{digits:0>4}");
    let (int, frac) = digits.split_at(digits.len() - 3);
    let frac = frac.trim_end_matches('0');
    let body = if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    };
    if neg && body != "0" {
        format!("-{body}")
    } else {
        body
    }
}

/// Counter-clockwise order around the barycenter, exactly.
fn sort_ccw(points: &mut [RationalVector]) {
    let n = Rat::from_integer(Int::from(points.len() as i64));
    let cx = points.iter().fold(Rat::from_integer(Int::from(0)), |a, p| a + &p.0[0]) / &n;
    let cy = points.iter().fold(Rat::from_integer(Int::from(0)), |a, p| a + &p.0[1]) / &n;
    let zero = Rat::from_integer(Int::from(0));
    let half = |dx: &Rat, dy: &Rat| -> u8 {
        if *dy > zero || (*dy == zero && *dx > zero) {
            0
        } else {
            1
        }
    };
    points.sort_by(|a, b| {
        let (ax, ay) = (&a.0[0] - &cx, &a.0[1] - &cy);
        let (bx, by) = (&b.0[0] - &cx, &b.0[1] - &cy);
        half(&ax, &ay).cmp(&half(&bx, &by)).then_with(|| {
            let cross = &ax * &by - &ay * &bx;
            zero.cmp(&cross)
        })
    });
}

fn midpoint(points: &[RationalVector]) -> RationalVector {
    let n = Rat::from_integer(Int::from(points.len() as i64));
    let mut sum = RationalVector::zeros(2);
    for p in points {
        sum = sum.add(p);
    }
    sum.scale(&(Rat::from_integer(Int::from(1)) / n))
}

fn draw(out: &mut String, c: &WeightedComplex, window: &Window, colour: &str) -> Result<(), Error> {
    let frame = window.polyhedron();
    let _ = writeln!(out, "<g stroke=\"{colour}\" fill=\"{colour}\">");
    let mut labels = Vec::new();
    for (_, cell, m) in c.facets() {
        let clipped = cell.intersect(&frame)?;
        if clipped.dim() != cell.dim() {
            continue;
        }
        let mut pts = clipped.vertices().to_vec();
        match cell.dim() {
            2 => {
                sort_ccw(&mut pts);
                let coords: Vec<String> = pts
                    .iter()
                    .map(|p| {
                        let (x, y) = window.to_canvas(p);
                        format!("{x},{y}")
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "<polygon points=\"{}\" fill-opacity=\"0.25\" stroke-width=\"1\"/>",
                    coords.join(" ")
                );
            }
            1 => {
                pts.sort();
                let (x1, y1) = window.to_canvas(&pts[0]);
                let (x2, y2) = window.to_canvas(&pts[1]);
                let _ = writeln!(
                    out,
                    "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke-width=\"{}\"/>",
                    2 * m
                );
            }
            _ => {}
        }
        if m > 1 {
            labels.push((window.to_canvas(&midpoint(&pts)), m));
        }
    }
    for v in c.cells().iter().filter(|p| p.dim() == 0) {
        let p = &v.vertices()[0];
        if frame.contains(p) {
            let (x, y) = window.to_canvas(p);
            let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"4\"/>");
        }
    }
    for ((x, y), m) in labels {
        let _ = writeln!(
            out,
            "<text x=\"{x}\" y=\"{y}\" dx=\"6\" dy=\"-6\" font-size=\"14\" stroke=\"none\">{m}</text>"
        );
    }
    out.push_str("</g>\n");
    Ok(())
}

/// Overlays the complexes in order, each in its own colour.
pub fn render_svg(complexes: &[&WeightedComplex], window: &Window) -> Result<String, Error> {
    if let Some(c) = complexes.iter().find(|c| c.ambient_dim() != 2) {
        return Err(Error::UnsupportedDimension(c.ambient_dim()));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    for (i, c) in complexes.iter().enumerate() {
        draw(&mut out, c, window, PALETTE[i % PALETTE.len()])?;
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropint::fixtures::{fixture, line_poly};
    use tropint::valued_poly::tropicalize;

    #[test]
    fn decimals() {
        let q = |a: i64, b: i64| Rat::new(Int::from(a), Int::from(b));
        assert_eq!(decimal(&q(200, 1)), "200");
        assert_eq!(decimal(&q(1, 3)), "0.333");
        assert_eq!(decimal(&q(-1, 2)), "-0.5");
        assert_eq!(decimal(&q(-1, 10000)), "0");
    }

    #[test]
    fn tropical_line_structure() {
        let l = tropicalize(&line_poly()).unwrap();
        let svg = render_svg(&[&l], &Window::square(3)).unwrap();
        assert_eq!(svg.matches("<line ").count(), 3);
        assert_eq!(svg.matches("<circle ").count(), 1);
        assert!(svg.contains("cx=\"200\" cy=\"200\""));
        assert_eq!(svg, render_svg(&[&l], &Window::square(3)).unwrap());
    }

    #[test]
    fn overlay_crosses_at_stable_point() {
        let f = fixture("6.1b").unwrap();
        let svg = render_svg(&[&f.a, &f.b], &Window::square(3)).unwrap();
        assert_eq!(svg.matches("<g ").count(), 2);
        // the line's horizontal ray y = 0 and the parabola's line y = 2x - 1
        // both pass through (1/2, 0), which lands on canvas (225, 200)
        assert!(svg.contains("x1=\"200\" y1=\"200\" x2=\"400\" y2=\"200\""));
        assert!(svg.contains("\"133.333\"") && svg.contains("\"333.333\""));
        assert_eq!(svg.matches("<circle ").count(), 1);
    }

    #[test]
    fn empty_and_wrong_dimension() {
        let svg = render_svg(&[&WeightedComplex::empty(2, 1)], &Window::square(1)).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(render_svg(&[], &Window::square(1)).is_ok());
        let c = WeightedComplex::whole_space(3);
        assert!(matches!(render_svg(&[&c], &Window::square(1)), Err(Error::UnsupportedDimension(3))));
    }
}
