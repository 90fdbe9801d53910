//! Exact integer linear algebra: vectors, Hermite and Smith normal forms,
//! sublattices of `Z^n` and lattice indices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rat};

/// A point of the lattice `N = Z^n` (or of its dual).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerVector(pub Vec<Int>);

/// A point of `N_Q = N ⊗ Q`, coordinates kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rat>);

impl IntegerVector {
    pub fn zeros(n: usize) -> Self {
        IntegerVector(vec![Int::zero(); n])
    }

    pub fn from_i64s(xs: &[i64]) -> Self {
        IntegerVector(xs.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntegerVector) -> Int {
        dot_int(&self.0, &other.0)
    }

    /// Pairing with a rational point.
    pub fn pair(&self, w: &RationalVector) -> Rat {
        self.0
            .iter()
            .zip(&w.0)
            .map(|(a, b)| Rat::from_integer(a.clone()) * b)
            .fold(Rat::zero(), |acc, x| acc + x)
    }

    pub fn sub(&self, other: &IntegerVector) -> IntegerVector {
        IntegerVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &IntegerVector) -> IntegerVector {
        IntegerVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> IntegerVector {
        IntegerVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Int) -> IntegerVector {
        IntegerVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Gcd of the entries (zero for the zero vector).
    pub fn content(&self) -> Int {
        gcd_all(&self.0)
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| Rat::from_integer(a.clone())).collect())
    }
}

impl RationalVector {
    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![Rat::zero(); n])
    }

    pub fn from_i64s(xs: &[i64]) -> Self {
        RationalVector(xs.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_fracs(xs: &[(i64, i64)]) -> Self {
        RationalVector(
            xs.iter()
                .map(|&(p, q)| Rat::new(Int::from(p), Int::from(q)))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rat) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dot(&self, other: &RationalVector) -> Rat {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, x| acc + x)
    }

    /// Clears denominators: returns the primitive integer vector with the
    /// same direction, or the zero vector.
    pub fn integral_direction(&self) -> IntegerVector {
        let lcm = self
            .0
            .iter()
            .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<Int> = self
            .0
            .iter()
            .map(|x| (x * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        primitive_or_zero(IntegerVector(ints))
    }

    /// The vector as integers if every coordinate is integral.
    pub fn to_integer(&self) -> Option<IntegerVector> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntegerVector)
    }
}

impl fmt::Display for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Int::zero(), |acc, x| acc + x)
}

pub(crate) fn gcd_all(xs: &[Int]) -> Int {
    xs.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

/// Divides by the content; the zero vector is returned unchanged.
pub(crate) fn primitive_or_zero(v: IntegerVector) -> IntegerVector {
    let g = v.content();
    if g.is_zero() || g.is_one() {
        v
    } else {
        IntegerVector(v.0.into_iter().map(|x| x / &g).collect())
    }
}

/// Primitive generator of the ray through `v`, sign preserved.
pub fn primitive_vector(v: &IntegerVector) -> Result<IntegerVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(primitive_or_zero(v.clone()))
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from its rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[IntegerVector]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r.0.iter().cloned());
        }
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<IntegerVector> = rows.iter().map(|r| IntegerVector::from_i64s(r)).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntegerVector {
        IntegerVector(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_vectors(&self) -> Vec<IntegerVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &IntegerVector) -> IntegerVector {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![Int::zero(); self.cols];
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += xi * &self[(i, j)];
            }
        }
        IntegerVector(out)
    }

    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let rows: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| Rat::from_integer(self[(i, j)].clone()))
                    .collect()
            })
            .collect();
        rational_determinant(rows).to_integer()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.entries[src * self.cols + j] * k;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.entries[i * self.cols + src] * k;
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[r * self.cols + j];
            *e = -std::mem::take(e);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn rational_determinant(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let sub = &f * &a[c][k];
                a[r][k] -= sub;
            }
        }
    }
    det
}

/// Rank of a list of rational rows.
pub(crate) fn rational_rank(rows: &[Vec<Rat>]) -> usize {
    row_reduce(rows.to_vec()).len()
}

/// Reduced row echelon form, zero rows dropped.
pub(crate) fn row_reduce(mut a: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let pivot = a[rank][c].clone();
        for x in a[rank].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..a.len() {
            if r == rank || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..cols {
                let sub = &f * &a[rank][k];
                a[r][k] -= sub;
            }
        }
        rank += 1;
    }
    a.truncate(rank);
    a
}

pub(crate) fn integer_rank(rows: &[IntegerVector]) -> usize {
    let q: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.0.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    rational_rank(&q)
}

/// Row-style Hermite normal form: returns `(h, u)` with `h = u * m`, `u`
/// unimodular, pivots positive, entries above each pivot reduced into
/// `[0, pivot)` and zero rows at the bottom.
pub fn hermite_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let mut h = m.clone();
    let mut u = IntegerMatrix::identity(m.rows);
    let mut pivot_row = 0;
    for c in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below the pivot row
            let best = (pivot_row..h.rows)
                .filter(|&r| !h[(r, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..h.rows {
                if h[(r, c)].is_zero() {
                    continue;
                }
                let q = h[(r, c)].div_floor(&h[(pivot_row, c)]);
                let k = -q;
                h.add_row(r, pivot_row, &k);
                u.add_row(r, pivot_row, &k);
                if !h[(r, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, c)].is_zero() {
            continue;
        }
        if h[(pivot_row, c)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for r in 0..pivot_row {
            let q = h[(r, c)].div_floor(&h[(pivot_row, c)]);
            if !q.is_zero() {
                let k = -q;
                h.add_row(r, pivot_row, &k);
                u.add_row(r, pivot_row, &k);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith decomposition `diag = left * m * right`, with the inverse of
/// `right` tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub diagonal: Vec<Int>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
    pub right_inverse: IntegerMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_decomposition(m: &IntegerMatrix) -> SmithDecomposition {
    let mut a = m.clone();
    let mut left = IntegerMatrix::identity(m.rows);
    let mut right = IntegerMatrix::identity(m.cols);
    // right_inverse receives the inverse column operations as row operations
    let mut right_inv = IntegerMatrix::identity(m.cols);
    let k = m.rows.min(m.cols);

    let col_swap = |a: &mut IntegerMatrix,
                    right: &mut IntegerMatrix,
                    right_inv: &mut IntegerMatrix,
                    x: usize,
                    y: usize| {
        a.swap_cols(x, y);
        right.swap_cols(x, y);
        right_inv.swap_rows(x, y);
    };
    // col[dst] += k col[src]; inverse: row[src] -= k row[dst]
    let col_add = |a: &mut IntegerMatrix,
                   right: &mut IntegerMatrix,
                   right_inv: &mut IntegerMatrix,
                   dst: usize,
                   src: usize,
                   k: &Int| {
        a.add_col(dst, src, k);
        right.add_col(dst, src, k);
        right_inv.add_row(src, dst, &-k);
    };

    for t in 0..k {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break 'pivot;
            };
            a.swap_rows(t, bi);
            left.swap_rows(t, bi);
            col_swap(&mut a, &mut right, &mut right_inv, t, bj);

            let mut clean = true;
            for i in t + 1..a.rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                left.add_row(i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..a.cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                col_add(&mut a, &mut right, &mut right_inv, j, t, &q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let p = a[(t, t)].clone();
            let offending = (t + 1..a.rows)
                .find(|&i| (t + 1..a.cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    a.add_row(t, i, &Int::one());
                    left.add_row(t, i, &Int::one());
                }
                None => break 'pivot,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..k).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition {
        diagonal,
        left,
        right,
        right_inverse: right_inv,
    }
}

/// Invariant factors `d1 | d2 | ...` (length `min(rows, cols)`).
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<Int> {
    smith_decomposition(m).diagonal
}

/// Index of a sublattice in the ambient lattice; `Infinite` when the
/// sublattice has deficient rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&Int> {
        match self {
            LatticeIndex::Finite(d) => Some(d),
            LatticeIndex::Infinite => None,
        }
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(d) => write!(f, "{d}"),
            LatticeIndex::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// A sublattice of `Z^n`, stored by its Hermite-normal-form basis so that
/// equal sublattices compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient_dim: usize,
    basis: Vec<IntegerVector>,
}

impl Sublattice {
    /// The sublattice generated by arbitrary (possibly dependent) vectors.
    pub fn from_generators(ambient_dim: usize, generators: &[IntegerVector]) -> Self {
        if generators.is_empty() {
            return Self::zero(ambient_dim);
        }
        let (h, _) = hermite_normal_form(&IntegerMatrix::from_rows(ambient_dim, generators));
        let basis = h.row_vectors().into_iter().filter(|r| !r.is_zero()).collect();
        Sublattice { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Sublattice {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = IntegerVector::zeros(ambient_dim);
                v.0[i] = Int::one();
                v
            })
            .collect();
        Sublattice { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntegerVector] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(self.ambient_dim, &self.basis)
    }

    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let gens: Vec<IntegerVector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Sublattice::from_generators(self.ambient_dim, &gens))
    }

    pub fn contains(&self, v: &IntegerVector) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_saturated(&self) -> bool {
        saturate(self) == *self
    }

    /// Integer coordinates of `v` in this basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &IntegerVector) -> Option<IntegerVector> {
        let coords = self.rational_coordinates(&v.to_rational())?;
        coords.to_integer()
    }

    /// Rational coordinates of `v` in this basis, if `v` lies in the span.
    pub fn rational_coordinates(&self, v: &RationalVector) -> Option<RationalVector> {
        let k = self.rank();
        let n = self.ambient_dim;
        // solve c * B = v via the augmented transpose system
        let mut rows: Vec<Vec<Rat>> = (0..n)
            .map(|j| {
                let mut row: Vec<Rat> = self
                    .basis
                    .iter()
                    .map(|b| Rat::from_integer(b.0[j].clone()))
                    .collect();
                row.push(v.0[j].clone());
                row
            })
            .collect();
        rows = row_reduce(rows);
        let mut c = vec![Rat::zero(); k];
        for row in &rows {
            let lead = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if lead == k {
                return None;
            }
            c[lead] = row[k].clone();
        }
        Some(RationalVector(c))
    }

    /// Combination `sum c_i b_i` of basis vectors.
    pub fn combine(&self, coeffs: &RationalVector) -> RationalVector {
        let mut out = RationalVector::zeros(self.ambient_dim);
        for (b, c) in self.basis.iter().zip(&coeffs.0) {
            out = out.add(&b.to_rational().scale(c));
        }
        out
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

/// `[Z^n : a + b]`, or `Infinite` when `a + b` has rank below `n`.
pub fn lattice_index(a: &Sublattice, b: &Sublattice, n: usize) -> Result<LatticeIndex> {
    for l in [a, b] {
        if l.ambient_dim != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: l.ambient_dim,
            });
        }
    }
    let gens: Vec<IntegerVector> = a.basis.iter().chain(&b.basis).cloned().collect();
    Ok(index_of_generators(n, &gens))
}

/// Index in `Z^n` of the lattice generated by `gens`.
pub fn index_of_generators(n: usize, gens: &[IntegerVector]) -> LatticeIndex {
    if gens.len() < n {
        return LatticeIndex::Infinite;
    }
    let diag = smith_normal_form(&IntegerMatrix::from_rows(n, gens));
    if diag.iter().filter(|d| !d.is_zero()).count() < n {
        return LatticeIndex::Infinite;
    }
    LatticeIndex::Finite(diag.iter().fold(Int::one(), |acc, d| acc * d))
}

/// The smallest saturated sublattice containing `a`, i.e. `Z^n ∩ span(a)`.
pub fn saturate(a: &Sublattice) -> Sublattice {
    if a.rank() == 0 {
        return a.clone();
    }
    let smith = smith_decomposition(&a.basis_matrix());
    let r = smith.rank();
    let rows: Vec<IntegerVector> = (0..r).map(|i| smith.right_inverse.row(i)).collect();
    Sublattice::from_generators(a.ambient_dim, &rows)
}

/// Coordinates on the quotient `Z^n / L` for a saturated sublattice `L`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    rank: usize,
    right: IntegerMatrix,
}

impl QuotientMap {
    pub fn new(sub: &Sublattice) -> Self {
        let n = sub.ambient_dim;
        if sub.rank() == 0 {
            return QuotientMap {
                rank: 0,
                right: IntegerMatrix::identity(n),
            };
        }
        let smith = smith_decomposition(&sub.basis_matrix());
        debug_assert!(
            smith.diagonal.iter().all(|d| d.is_zero() || d.is_one()),
            "quotient map needs a saturated sublattice"
        );
        QuotientMap {
            rank: smith.rank(),
            right: smith.right,
        }
    }

    pub fn quotient_rank(&self) -> usize {
        self.right.cols() - self.rank
    }

    pub fn project(&self, v: &IntegerVector) -> IntegerVector {
        let c = self.right.left_apply(v);
        IntegerVector(c.0[self.rank..].to_vec())
    }
}

/// Lowest common multiple of the denominators.
pub(crate) fn denominator_lcm(xs: &[Rat]) -> BigInt {
    xs.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64s(rows)
    }

    fn ints(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    fn lat(gens: &[&[i64]]) -> Sublattice {
        let n = gens[0].len();
        let v: Vec<IntegerVector> = gens.iter().map(|g| IntegerVector::from_i64s(g)).collect();
        Sublattice::from_generators(n, &v)
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hermite_normal_form(&m(&[&[1, 0], &[0, 1]]));
        assert_eq!(h, m(&[&[1, 0], &[0, 1]]));
        assert_eq!(u.determinant().abs(), Int::one());

        let a = m(&[&[2, 4], &[6, 8]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, m(&[&[2, 0], &[0, 4]]));
        assert_eq!(u.mul(&a), h);
        assert_eq!(u.determinant().abs(), Int::one());

        let (h, _) = hermite_normal_form(&m(&[&[0, 0]]));
        assert_eq!(h, m(&[&[0, 0]]));
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&m(&[&[1, 0], &[0, 1]])), ints(&[1, 1]));
        assert_eq!(smith_normal_form(&m(&[&[2, 4], &[6, 8]])), ints(&[2, 4]));
        assert_eq!(smith_normal_form(&m(&[&[2, 0], &[0, 0]])), ints(&[2, 0]));
    }

    #[test]
    fn smith_transforms_are_consistent() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let s = smith_decomposition(&a);
        let d = s.left.mul(&a).mul(&s.right);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { s.diagonal[i].clone() } else { Int::zero() };
                assert_eq!(d[(i, j)], expect);
            }
        }
        assert_eq!(s.right.mul(&s.right_inverse), IntegerMatrix::identity(3));
    }

    #[test]
    fn primitive_vector_examples() {
        let p = |xs: &[i64]| primitive_vector(&IntegerVector::from_i64s(xs)).unwrap();
        assert_eq!(p(&[2, 4, 6]), IntegerVector::from_i64s(&[1, 2, 3]));
        assert_eq!(p(&[1, 0]), IntegerVector::from_i64s(&[1, 0]));
        assert_eq!(p(&[-3, 6]), IntegerVector::from_i64s(&[-1, 2]));
        assert_eq!(
            primitive_vector(&IntegerVector::zeros(2)),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn lattice_index_examples() {
        let idx = |a: &Sublattice, b: &Sublattice| lattice_index(a, b, 2).unwrap();
        assert_eq!(
            idx(&lat(&[&[1, 0]]), &lat(&[&[0, 1]])),
            LatticeIndex::Finite(Int::from(1))
        );
        assert_eq!(
            idx(&lat(&[&[1, 1]]), &lat(&[&[1, -1]])),
            LatticeIndex::Finite(Int::from(2))
        );
        assert_eq!(idx(&lat(&[&[1, 1]]), &lat(&[&[2, 2]])), LatticeIndex::Infinite);
        assert!(matches!(
            lattice_index(&lat(&[&[1, 1, 0]]), &lat(&[&[1, 0]]), 2),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(saturate(&lat(&[&[2, 0]])), lat(&[&[1, 0]]));
        assert_eq!(saturate(&lat(&[&[2, 4]])), lat(&[&[1, 2]]));
        assert_eq!(saturate(&lat(&[&[1, 0], &[0, 1]])), lat(&[&[1, 0], &[0, 1]]));
        assert_eq!(saturate(&lat(&[&[2, 2, 0], &[0, 3, 3]])), lat(&[&[1, 1, 0], &[0, 1, 1]]));
    }

    #[test]
    fn quotient_projection_kills_sublattice() {
        let l = lat(&[&[1, 1, 0]]);
        let q = QuotientMap::new(&l);
        assert_eq!(q.quotient_rank(), 2);
        assert!(q.project(&IntegerVector::from_i64s(&[3, 3, 0])).is_zero());
        assert!(!q.project(&IntegerVector::from_i64s(&[1, 0, 0])).is_zero());
    }

    #[test]
    fn coordinates_in_sublattice() {
        let l = lat(&[&[1, 0, 1], &[0, 1, 1]]);
        let c = l.coordinates(&IntegerVector::from_i64s(&[2, 3, 5])).unwrap();
        let back = l.combine(&c.to_rational());
        assert_eq!(back, RationalVector::from_i64s(&[2, 3, 5]));
        assert!(l.coordinates(&IntegerVector::from_i64s(&[1, 0, 0])).is_none());
    }
}
