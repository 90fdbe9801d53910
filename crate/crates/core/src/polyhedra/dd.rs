//! Double description for homogeneous cones `{x : h·x <= 0}` over `Z^m`.
//!
//! Rays are kept primitive, so the arithmetic stays integral; adjacency
//! is decided with the combinatorial test on zero sets.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::lattice::{dot_int, gcd_all};
use crate::Int;

#[derive(Clone, Debug, Default)]
pub(crate) struct ConeGenerators {
    pub lineality: Vec<Vec<Int>>,
    pub rays: Vec<Vec<Int>>,
}

struct Ray {
    v: Vec<Int>,
    zeros: FixedBitSet,
}

fn primitive(mut v: Vec<Int>) -> Vec<Int> {
    let g = gcd_all(&v);
    if !g.is_zero() && g != Int::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// `a*x + b*y`
fn combine(a: &Int, x: &[Int], b: &Int, y: &[Int]) -> Vec<Int> {
    x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
}

/// Generators of the cone cut out by `rows` in `Z^m`.
pub(crate) fn cone_generators(m: usize, rows: &[Vec<Int>]) -> ConeGenerators {
    let total = rows.len();
    let mut lineality: Vec<Vec<Int>> = (0..m)
        .map(|i| {
            let mut e = vec![Int::zero(); m];
            e[i] = Int::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, h) in rows.iter().enumerate() {
        debug_assert_eq!(h.len(), m);
        if h.iter().all(Zero::is_zero) {
            for r in rays.iter_mut() {
                r.zeros.insert(idx);
            }
            continue;
        }

        let pos = lineality.iter().position(|l| !dot_int(h, l).is_zero());
        if let Some(pos) = pos {
            let mut l = lineality.swap_remove(pos);
            let mut hl = dot_int(h, &l);
            if hl.is_positive() {
                l.iter_mut().for_each(|x| *x = -std::mem::take(x));
                hl = -hl;
            }
            for other in lineality.iter_mut() {
                let ho = dot_int(h, other);
                if !ho.is_zero() {
                    *other = primitive(combine(&hl, other, &-ho, &l));
                }
            }
            let neg_hl = -&hl;
            for r in rays.iter_mut() {
                let hr = dot_int(h, &r.v);
                if !hr.is_zero() {
                    r.v = primitive(combine(&neg_hl, &r.v, &hr, &l));
                }
                r.zeros.insert(idx);
            }
            let mut zeros = FixedBitSet::with_capacity(total);
            zeros.insert_range(0..idx);
            rays.push(Ray {
                v: primitive(l),
                zeros,
            });
            continue;
        }

        let signs: Vec<Int> = rays.iter().map(|r| dot_int(h, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        let pos_idx: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].is_positive()).collect();
        let neg_idx: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].is_negative()).collect();
        if pos_idx.is_empty() {
            for (r, s) in rays.iter_mut().zip(&signs) {
                if s.is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }
        for &p in &pos_idx {
            for &q in &neg_idx {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                let v = primitive(combine(&signs[p], &rays[q].v, &-&signs[q], &rays[p].v));
                common.insert(idx);
                next.push(Ray { v, zeros: common });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if signs[i].is_negative() {
                next.push(r);
            } else if signs[i].is_zero() {
                r.zeros.insert(idx);
                next.push(r);
            }
        }
        rays = next;
    }

    ConeGenerators {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}
