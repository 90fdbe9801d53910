//! Inputs shared by the benchmarks.

use tropint::lattice::IntegerMatrix;
use tropint::valued_poly::ValuedLaurentPoly;

/// A dense matrix with small entries and no special structure.
pub fn dense_matrix(n: usize) -> IntegerMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 11) as i64 - 5).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntegerMatrix::from_i64s(&refs)
}

/// Generic plane curve of degree `d` with valuations `(i² + j²) mod 5`.
pub fn plane_curve(d: i64) -> ValuedLaurentPoly {
    let mut terms = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            terms.push(([i, j], (i * i + j * j) % 5));
        }
    }
    let refs: Vec<(&[i64], i64)> = terms.iter().map(|(u, v)| (&u[..], *v)).collect();
    ValuedLaurentPoly::from_i64s(2, &refs).expect("exponents have length 2")
}
