//! Double description method for `{x : ⟨a, x⟩ ≥ 0 for all rows a}`.
//!
//! The lineality space (the kernel of the row matrix) is split off first;
//! the remaining pointed cone is parametrised by the row space and built by
//! incremental insertion of the rows, starting from a simplicial cone on a
//! maximal independent subset. Two rays are combined only when they are
//! adjacent, decided by the rank of their common tight rows.

use num_traits::Zero;

use crate::arith::{
    canonical_basis, dot_int, nullspace_int, primitive, primitive_int, rank_int, Echelon, Int,
};

/// Generators of a polyhedral cone: a canonical lineality basis and the
/// extreme rays of the pointed part, chosen orthogonal to the lineality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Generators {
    pub lineality: Vec<Vec<Int>>,
    pub rays: Vec<Vec<Int>>,
}

struct Ray {
    coords: Vec<Int>,
    /// Indices (into the processed row list) of rows vanishing on this ray.
    tight: Vec<usize>,
}

pub(crate) fn double_description(dim: usize, rows: &[Vec<Int>]) -> Generators {
    let mut rows: Vec<Vec<Int>> = rows
        .iter()
        .filter(|r| !r.iter().all(Zero::is_zero))
        .map(|r| primitive_int(r))
        .collect();
    rows.sort();
    rows.dedup();

    let kernel: Vec<Vec<Int>> = nullspace_int(&rows, dim)
        .iter()
        .map(|v| primitive(v).expect("kernel basis vectors are nonzero"))
        .collect();
    let lineality = canonical_basis(&kernel, dim);
    if rows.is_empty() {
        return Generators {
            lineality,
            rays: Vec::new(),
        };
    }

    // Row space basis B; points of the pointed part are x = Bᵀ z.
    let ech = Echelon::compute(rows.clone(), dim);
    let basis: Vec<Vec<Int>> = ech.rows[..ech.pivots.len()].to_vec();
    let k = basis.len();
    let reduced: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| basis.iter().map(|b| dot_int(r, b)).collect())
        .collect();

    let rays_z = pointed_dd(k, &reduced);

    let mut rays: Vec<Vec<Int>> = rays_z
        .iter()
        .map(|z| {
            let x: Vec<Int> = (0..dim)
                .map(|j| {
                    z.iter()
                        .zip(&basis)
                        .fold(Int::zero(), |acc, (zi, b)| acc + zi * &b[j])
                })
                .collect();
            primitive_int(&x)
        })
        .collect();
    rays.sort();
    rays.dedup();
    Generators { lineality, rays }
}

/// Extreme rays of `{z : A z ≥ 0}` where `A` has full column rank `k`.
fn pointed_dd(k: usize, rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    // Greedy maximal independent subset for the initial simplex.
    let mut initial = Vec::with_capacity(k);
    let mut chosen: Vec<Vec<Int>> = Vec::with_capacity(k);
    for (i, r) in rows.iter().enumerate() {
        chosen.push(r.clone());
        if rank_int(&chosen, k) == chosen.len() {
            initial.push(i);
            if initial.len() == k {
                break;
            }
        } else {
            chosen.pop();
        }
    }
    debug_assert_eq!(initial.len(), k);

    // Rays of the simplicial cone: columns of the inverse, made primitive.
    // Column j is tight on every initial row except row j.
    let mut processed: Vec<usize> = initial.clone();
    let mut rays: Vec<Ray> = (0..k)
        .map(|j| {
            let mut rhs = vec![Int::zero(); k];
            rhs[j] = Int::from(1);
            let sol = solve_square(&chosen, &rhs);
            Ray {
                coords: primitive(&sol).expect("invertible system"),
                tight: (0..k).filter(|&i| i != j).collect(),
            }
        })
        .collect();

    for (idx, row) in rows.iter().enumerate() {
        if initial.contains(&idx) {
            continue;
        }
        let pos_in_processed = processed.len();
        processed.push(idx);

        let values: Vec<Int> = rays.iter().map(|r| dot_int(row, &r.coords)).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for (i, v) in values.iter().enumerate() {
            if v.is_zero() {
                let mut tight = rays[i].tight.clone();
                tight.push(pos_in_processed);
                next.push(Ray {
                    coords: rays[i].coords.clone(),
                    tight,
                });
            } else if v > &Int::zero() {
                positive.push(i);
            } else {
                negative.push(i);
            }
        }
        for &p in &positive {
            for &n in &negative {
                let common: Vec<usize> = rays[p]
                    .tight
                    .iter()
                    .filter(|t| rays[n].tight.contains(t))
                    .copied()
                    .collect();
                // A one-dimensional pointed cone has no adjacent pairs.
                if k < 2 || common.len() < k - 2 {
                    continue;
                }
                let tight_rows: Vec<Vec<Int>> =
                    common.iter().map(|&t| rows[processed[t]].clone()).collect();
                if rank_int(&tight_rows, k) != k - 2 {
                    continue;
                }
                let (vp, vn) = (&values[p], &values[n]);
                let coords: Vec<Int> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(cn, cp)| vp * cn - vn * cp)
                    .collect();
                let mut tight = common;
                tight.push(pos_in_processed);
                next.push(Ray {
                    coords: primitive_int(&coords),
                    tight,
                });
            }
        }
        for &p in &positive {
            next.push(Ray {
                coords: rays[p].coords.clone(),
                tight: rays[p].tight.clone(),
            });
        }
        rays = next;
    }
    rays.into_iter().map(|r| r.coords).collect()
}

/// Solves an invertible integer system exactly.
fn solve_square(rows: &[Vec<Int>], rhs: &[Int]) -> Vec<crate::arith::Rational> {
    use crate::arith::{solve, to_rational, RatMatrix};
    let m = RatMatrix::from_rows(
        rows.len(),
        &rows.iter().map(|r| to_rational(r)).collect::<Vec<_>>(),
    )
    .expect("square system");
    solve(&m, &to_rational(rhs)).expect("invertible system")
}
