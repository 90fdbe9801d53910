//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use tropint::complexes::{
    check_balancing, is_simple_point, set_intersection, star, weighted_supports_equal, CellComplex, WeightedComplex,
};
use tropint::fixtures::{all_fixtures, fixture, line_poly, parabola_poly};
use tropint::intersection::{
    check_proper, complete_intersection_count, lifting_report, local_intersection_multiplicity, minkowski_product,
    mixed_volume, stable_intersection, stable_intersection_multi, stable_intersection_with, MinkowskiWeight,
    SimplicialFan, Verdict,
};
use tropint::lattice::{index_of_generators, IntegerVector, LatticeIndex, RationalVector};
use tropint::polyhedra::Polyhedron;
use tropint::valued_poly::{initial_support, tropicalize, ValuedLaurentPoly};
use tropint::{Int, Rat};

const EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
const QUADRIC_LIMIT: Duration = Duration::from_secs(5);
const CONSERVATION_LIMIT: Duration = Duration::from_secs(60);
const CONSERVATION_PAIRS: usize = 50;
const BALANCING_SURFACES: usize = 30;
const DISPLACEMENT_VECTORS: usize = 5;
const LATTICE_SAMPLES: usize = 100;
const STAR_SAMPLES: usize = 200;
const TRIPLES: usize = 20;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, start: Instant, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    check(t <= limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn err(e: tropint::Error) -> String {
    e.to_string()
}

fn rv(xs: &[i64]) -> RationalVector {
    RationalVector::from_i64s(xs)
}

/// Random polynomial with exponents in `[0, max_exp]^n`, valuations in
/// `{-2..2}` and a full-dimensional Newton polytope.
fn random_poly(rng: &mut StdRng, n: usize, max_exp: i64, terms: std::ops::RangeInclusive<usize>) -> ValuedLaurentPoly {
    loop {
        let k = rng.gen_range(terms.clone());
        let mut f = ValuedLaurentPoly::new(n);
        while f.len() < k {
            let u: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            let v = rng.gen_range(-2..=2);
            f.add_term(IntegerVector::from_i64s(&u), Rat::from_integer(Int::from(v))).unwrap();
        }
        if f.newton_polytope().unwrap().dim() == n as isize {
            return f;
        }
    }
}

fn criterion_1() -> Outcome {
    let cases: [(i64, Vec<(RationalVector, u64)>); 3] = [
        (1, vec![(rv(&[0, 1]), 1), (rv(&[-1, -1]), 1)]),
        (-1, vec![(RationalVector::from_fracs(&[(1, 2), (0, 1)]), 2)]),
        (0, vec![(rv(&[0, 0]), 2)]),
    ];
    let mut out = Vec::new();
    for (nu, expect) in cases {
        let start = Instant::now();
        let a = tropicalize(&line_poly()).map_err(err)?;
        let b = tropicalize(&parabola_poly(nu)).map_err(err)?;
        let s = stable_intersection(&a, &b).map_err(err)?;
        timed(EXAMPLE_LIMIT, start, &format!("val(a) = {nu}"))?;
        let expect: BTreeMap<_, _> = expect.into_iter().collect();
        let got = s.point_weights();
        check(got == expect, || format!("val(a) = {nu}: got {got:?}"))?;
        out.push(format!("val(a)={nu}: {:?}", start.elapsed()));
    }
    Ok(out.join(", "))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let f = fixture("6.2").map_err(err)?;
    let common = set_intersection(&f.a, &f.b).map_err(err)?;
    let ray = Polyhedron::cone(rv(&[0, 0]), vec![IntegerVector::from_i64s(&[-1, -1])], vec![]).map_err(err)?;
    let maximal = common.maximal_cells();
    check(maximal == vec![&ray], || format!("set intersection {maximal:?}"))?;
    for t in [(0, 1), (1, 2), (1, 1), (3, 1), (10, 1)] {
        let w = RationalVector::from_fracs(&[(-t.0, t.1), (-t.0, t.1)]);
        let proper = check_proper(&f.a, &f.b, &w, None).map_err(err)?;
        check(!proper, || format!("proper at {w}"))?;
    }
    let s = stable_intersection(&f.a, &f.b).map_err(err)?;
    let simplex = Polyhedron::lattice_polytope(&[&[0, 0], &[1, 0], &[0, 1]]).map_err(err)?;
    let oracle = mixed_volume(&[simplex.clone(), simplex]).map_err(err)?;
    let mass = Rat::from_integer(Int::from(s.total_multiplicity()));
    check(mass == oracle, || format!("mass {mass} vs mixed volume {oracle}"))?;
    timed(EXAMPLE_LIMIT, start, "example")?;
    Ok(format!("ray, nonproper at 5 points, mass {mass}, {:?}", start.elapsed()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let f = fixture("6.4").map_err(err)?;
    let y = f.ambient.as_ref().expect("ambient");
    let origin = rv(&[0, 0, 0]);
    let (_, _, m) = y
        .facets()
        .find(|(_, c, _)| c.relative_interior_contains(&origin))
        .ok_or("no facet has the origin in its relative interior")?;
    check(m == 2, || format!("facet multiplicity {m}"))?;
    check(!is_simple_point(y, &origin), || "origin is simple".into())?;
    let r = lifting_report(&f.a, &f.b, &origin, Some(y)).map_err(err)?;
    check(r.verdict == Verdict::NoGuarantee, || format!("verdict {}", r.verdict))?;
    timed(QUADRIC_LIMIT, start, "quadric")?;
    Ok(format!("m = 2, not simple, {}, {:?}", r.verdict, start.elapsed()))
}

struct Pair {
    f: ValuedLaurentPoly,
    g: ValuedLaurentPoly,
    a: WeightedComplex,
    b: WeightedComplex,
    stable: WeightedComplex,
}

fn plane_corpus() -> Result<Vec<Pair>, String> {
    let mut rng = StdRng::seed_from_u64(0x7a11);
    (0..CONSERVATION_PAIRS)
        .map(|_| {
            let f = random_poly(&mut rng, 2, 3, 3..=5);
            let g = random_poly(&mut rng, 2, 3, 3..=5);
            let a = tropicalize(&f).map_err(err)?;
            let b = tropicalize(&g).map_err(err)?;
            let stable = stable_intersection(&a, &b).map_err(err)?;
            Ok(Pair { f, g, a, b, stable })
        })
        .collect()
}

fn criterion_4(corpus: &[Pair], elapsed: Duration) -> Outcome {
    let start = Instant::now();
    for (i, p) in corpus.iter().enumerate() {
        let mv = mixed_volume(&[p.f.newton_polytope().map_err(err)?, p.g.newton_polytope().map_err(err)?])
            .map_err(err)?;
        let mass = Rat::from_integer(Int::from(p.stable.total_multiplicity()));
        check(mass == mv, || format!("pair {i}: mass {mass}, mixed volume {mv}\n  f = {}\n  g = {}", p.f, p.g))?;
    }
    let total = elapsed + start.elapsed();
    check(total <= CONSERVATION_LIMIT, || format!("suite took {total:?}, limit {CONSERVATION_LIMIT:?}"))?;
    Ok(format!("{} pairs, {total:?}", corpus.len()))
}

fn criterion_5(corpus: &[Pair]) -> Outcome {
    let mut points = 0;
    for (i, p) in corpus.iter().enumerate() {
        let common = set_intersection(&p.a, &p.b).map_err(err)?;
        for cell in common.maximal_cells().into_iter().filter(|c| c.dim() == 0) {
            let w = &cell.vertices()[0];
            let local = local_intersection_multiplicity(&p.a, &p.b, cell, None).map_err(err)?;
            let count = complete_intersection_count(&[p.f.clone(), p.g.clone()], w).map_err(err)?;
            check(local == count, || format!("pair {i} at {w}: local {local}, mixed volume {count}"))?;
            points += 1;
        }
    }
    Ok(format!("{points} isolated points"))
}

fn criterion_6(corpus: &[Pair]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xba1a);
    let mut hypersurfaces = 0;
    let mut stables = 0;
    for p in corpus {
        for c in [&p.a, &p.b] {
            check(check_balancing(c).is_empty(), || "unbalanced plane curve".into())?;
            hypersurfaces += 1;
        }
        check(check_balancing(&p.stable).is_empty(), || "unbalanced stable intersection".into())?;
        stables += 1;
    }
    let surfaces: Vec<(ValuedLaurentPoly, WeightedComplex)> = (0..BALANCING_SURFACES)
        .map(|_| {
            let f = random_poly(&mut rng, 3, 2, 4..=6);
            let t = tropicalize(&f).map_err(err)?;
            Ok((f, t))
        })
        .collect::<Result<_, String>>()?;
    for (f, t) in &surfaces {
        let v = check_balancing(t);
        check(v.is_empty(), || format!("unbalanced surface {f}: {v:?}"))?;
        hypersurfaces += 1;
    }
    for pair in surfaces.chunks(2).take(5) {
        let s = stable_intersection(&pair[0].1, &pair[1].1).map_err(err)?;
        check(check_balancing(&s).is_empty(), || format!("unbalanced curve from {} and {}", pair[0].0, pair[1].0))?;
        stables += 1;
    }
    Ok(format!("{hypersurfaces} hypersurfaces, {stables} stable intersections"))
}

fn criterion_7(corpus: &[Pair]) -> Outcome {
    let mut cases: Vec<(String, WeightedComplex, WeightedComplex, Option<WeightedComplex>)> = Vec::new();
    for f in all_fixtures().map_err(err)? {
        let ambient = if f.stable_in_ambient { f.ambient.clone() } else { None };
        cases.push((f.id.to_string(), f.a, f.b, ambient));
    }
    for (i, p) in corpus.iter().take(10).enumerate() {
        cases.push((format!("random pair {i}"), p.a.clone(), p.b.clone(), None));
    }
    for (id, a, b, y) in &cases {
        let base = stable_intersection_with(a, b, y.as_ref(), 0).map_err(err)?;
        for k in 1..DISPLACEMENT_VECTORS {
            let other = stable_intersection_with(a, b, y.as_ref(), k).map_err(err)?;
            check(weighted_supports_equal(&base, &other), || format!("{id}: vector {k} disagrees"))?;
        }
    }
    Ok(format!("{} cases x {DISPLACEMENT_VECTORS} vectors", cases.len()))
}

/// Order of the subgroup generated by `gens` in `(Z/d)^n`, by breadth-first
/// enumeration of its elements.
fn subgroup_order(gens: &[Vec<i64>], d: i64) -> usize {
    let n = gens[0].len();
    let start = vec![0i64; n];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(d)).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Index by coset enumeration: with `d` the gcd of the maximal minors,
/// `d Z^n` lies in the lattice and the index is `d^n / |L / d Z^n|`.
fn brute_index(gens: &[Vec<i64>], n: usize) -> Option<i64> {
    let mut d = 0;
    let k = gens.len();
    let mut choose = vec![0usize; n];
    fn rec(gens: &[Vec<i64>], n: usize, k: usize, pos: usize, from: usize, choose: &mut Vec<usize>, d: &mut i64) {
        if pos == n {
            let m: Vec<Vec<i64>> = choose.iter().map(|&i| gens[i].clone()).collect();
            *d = gcd(*d, det(&m));
            return;
        }
        for i in from..k {
            choose[pos] = i;
            rec(gens, n, k, pos + 1, i + 1, choose, d);
        }
    }
    rec(gens, n, k, 0, 0, &mut choose, &mut d);
    if d == 0 {
        return None;
    }
    let order = subgroup_order(gens, d) as i64;
    Some(d.pow(n as u32) / order)
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x1a77);
    let mut infinite = 0;
    for i in 0..LATTICE_SAMPLES {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let k = rng.gen_range(1..=n + 2);
        let gens: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        let ivs: Vec<IntegerVector> = gens.iter().map(|g| IntegerVector::from_i64s(g)).collect();
        let got = index_of_generators(n, &ivs);
        let expect = match brute_index(&gens, n) {
            Some(d) => LatticeIndex::Finite(Int::from(d)),
            None => {
                infinite += 1;
                LatticeIndex::Infinite
            }
        };
        check(got == expect, || format!("{gens:?}: SNF {got}, enumeration {expect}"))?;
    }
    Ok(format!("{LATTICE_SAMPLES} generator sets ({infinite} infinite)"))
}

/// `Σ_{u in initial support} x^u` with trivial valuation.
fn initial_form(f: &ValuedLaurentPoly, w: &RationalVector) -> ValuedLaurentPoly {
    ValuedLaurentPoly::from_terms(f.n(), initial_support(f, w).into_iter().map(|u| (u, Rat::from_integer(0.into()))))
        .expect("same dimension")
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x57a5);
    let mut samples = 0;
    let mut polys = 0;
    while samples < STAR_SAMPLES {
        let n = if polys % 4 == 3 { 3 } else { 2 };
        let f = random_poly(&mut rng, n, if n == 2 { 3 } else { 2 }, 3..=6);
        polys += 1;
        let t = tropicalize(&f).map_err(err)?;
        let mut points: Vec<RationalVector> = Vec::new();
        for c in t.cells() {
            points.push(c.relative_interior_point().map_err(err)?);
            points.extend(c.vertices().iter().cloned());
        }
        points.sort();
        points.dedup();
        points.shuffle(&mut rng);
        for w in points.into_iter().take(8) {
            let s = star(&t, &w).map_err(err)?;
            let g = tropicalize(&initial_form(&f, &w)).map_err(err)?;
            check(weighted_supports_equal(&s, &g), || format!("f = {f}, w = {w}"))?;
            samples += 1;
        }
    }
    Ok(format!("{samples} points on {polys} hypersurfaces"))
}

fn criterion_10() -> Outcome {
    let fan = SimplicialFan::new(
        2,
        vec![
            IntegerVector::from_i64s(&[1, 0]),
            IntegerVector::from_i64s(&[0, 1]),
            IntegerVector::from_i64s(&[-1, -1]),
        ],
        vec![vec![0, 1], vec![1, 2], vec![2, 0]],
    )
    .map_err(err)?;
    let weights = (0..3).map(|i| (std::collections::BTreeSet::from([i]), 1)).collect();
    let line = MinkowskiWeight::new(fan.clone(), 1, weights).map_err(err)?;
    let square = minkowski_product(&line, &line).map_err(err)?;
    let at_origin = square.weight(&Default::default());
    check(at_origin == 1, || format!("line squared is {at_origin}"))?;
    let unit = MinkowskiWeight::unit(fan);
    check(minkowski_product(&line, &unit).map_err(err)? == line, || "unit on the right".into())?;
    check(minkowski_product(&unit, &line).map_err(err)? == line, || "unit on the left".into())?;
    Ok("line^2 = 1, unit acts trivially".into())
}

fn criterion_11() -> Outcome {
    let mut fixtures = 0;
    for f in all_fixtures().map_err(err)? {
        let multi = stable_intersection_multi(&[f.a.clone(), f.b.clone()]).map_err(err)?;
        let pair = stable_intersection(&f.a, &f.b).map_err(err)?;
        check(weighted_supports_equal(&multi, &pair), || format!("fixture {}", f.id))?;
        fixtures += 1;
    }
    let line = tropicalize(&line_poly()).map_err(err)?;
    let multi = stable_intersection_multi(&[line.clone(), line.clone(), WeightedComplex::whole_space(2)]).map_err(err)?;
    check(weighted_supports_equal(&multi, &stable_intersection(&line, &line).map_err(err)?), || {
        "line, line, plane".into()
    })?;

    let mut rng = StdRng::seed_from_u64(0x3d3d);
    let mut nonempty = 0;
    for i in 0..TRIPLES {
        let fs: Vec<ValuedLaurentPoly> = (0..3).map(|_| random_poly(&mut rng, 3, 1, 3..=4)).collect();
        let ts: Vec<WeightedComplex> = fs.iter().map(tropicalize).collect::<Result<_, _>>().map_err(err)?;
        let multi = stable_intersection_multi(&ts).map_err(err)?;
        let first = stable_intersection(&ts[0], &ts[1]).map_err(err)?;
        let iterated = stable_intersection(&first, &ts[2]).map_err(err)?;
        check(weighted_supports_equal(&multi, &iterated), || {
            format!("triple {i}: {} / {} / {}", fs[0], fs[1], fs[2])
        })?;
        if !multi.is_empty() {
            nonempty += 1;
        }
    }
    Ok(format!("{fixtures} fixtures, {TRIPLES} triples in R^3 ({nonempty} nonempty)"))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, r: Outcome| {
        match r {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why}");
            }
        }
    };
    report(1, "parabola regimes", criterion_1());
    report(2, "nonproper lines", criterion_2());
    report(3, "doubled ambient facet", criterion_3());

    let start = Instant::now();
    let corpus = plane_corpus();
    let build = start.elapsed();
    match corpus {
        Ok(corpus) => {
            report(4, "mass conservation", criterion_4(&corpus, build));
            report(5, "local counts", criterion_5(&corpus));
            report(6, "balancing", criterion_6(&corpus));
            report(7, "displacement independence", criterion_7(&corpus));
        }
        Err(e) => {
            for (n, name) in [(4, "mass conservation"), (5, "local counts"), (6, "balancing"), (7, "displacement independence")] {
                report(n, name, Err(format!("corpus: {e}")));
            }
        }
    }
    report(8, "lattice index oracle", criterion_8());
    report(9, "star and initial form", criterion_9());
    report(10, "fan displacement ring", criterion_10());
    report(11, "diagonal consistency", criterion_11());
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
