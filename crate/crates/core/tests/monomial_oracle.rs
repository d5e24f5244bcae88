//! Checks monomial system answers against a direct oracle: values are plain
//! products, first derivatives come from exact finite differences (exact
//! for polynomials), and ranks from the largest nonzero minor.

mod support;

use mori_cones::arith::{rat, Rational};
use mori_cones::monomial::MonomialSystem;
use num_traits::{One, Zero};
use rand::Rng;

fn value(m: &[u32], p: &[Rational]) -> Rational {
    let mut v = Rational::one();
    for (&e, x) in m.iter().zip(p) {
        for _ in 0..e {
            v *= x;
        }
    }
    v
}

/// f'(0) for g(t) = m(p + t e_j) from the forward differences of g at
/// t = 0..=d, using f'(0) = Σ (-1)^(k+1) Δ^k g(0) / k.
fn partial(m: &[u32], p: &[Rational], j: usize) -> Rational {
    let d: u32 = m.iter().sum();
    let mut g: Vec<Rational> = (0..=d as i64)
        .map(|t| {
            let mut q = p.to_vec();
            q[j] += rat(t);
            value(m, &q)
        })
        .collect();
    let mut out = Rational::zero();
    for k in 1..=d as i64 {
        g = g.windows(2).map(|w| &w[1] - &w[0]).collect();
        let term = &g[0] / rat(k);
        if k % 2 == 1 {
            out += term;
        } else {
            out -= term;
        }
    }
    out
}

fn det(m: &[Vec<Rational>]) -> Rational {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut total = Rational::zero();
    for c in 0..m.len() {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn oracle_rank(rows: &[Vec<Rational>]) -> usize {
    let cols = rows[0].len();
    for k in (1..=cols.min(rows.len())).rev() {
        for rs in subsets(rows.len(), k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<Rational>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn gradient_rows(s: &MonomialSystem, p: &[Rational]) -> Vec<Vec<Rational>> {
    s.monomials()
        .iter()
        .map(|m| (0..p.len()).map(|j| partial(m, p, j)).collect())
        .collect()
}

fn systems() -> [MonomialSystem; 2] {
    [
        MonomialSystem::builtin("box3.alpha").unwrap(),
        MonomialSystem::builtin("box3.beta").unwrap(),
    ]
}

#[test]
fn jacobian_matches_finite_differences() {
    let mut rng = support::rng(3);
    for s in systems() {
        for _ in 0..10 {
            let p = support::random_vec(&mut rng, 4, -6, 6);
            if p.iter().all(Zero::is_zero) {
                continue;
            }
            assert_eq!(s.jacobian(&p).unwrap().row_vecs(), gradient_rows(&s, &p));
        }
    }
}

#[test]
fn image_dimension_matches_minor_rank() {
    let mut rng = support::rng(17);
    for s in systems() {
        let fixed = vec![rat(1), rat(2), rat(3), rat(5)];
        assert_eq!(oracle_rank(&gradient_rows(&s, &fixed)) - 1, 3);
        assert_eq!(s.image_dimension(&fixed).unwrap(), 3);
        for _ in 0..20 {
            let p: Vec<Rational> = (0..4).map(|_| rat(rng.gen_range(1..=100))).collect();
            let want = oracle_rank(&gradient_rows(&s, &p)) - 1;
            assert_eq!(s.image_dimension(&p).unwrap(), want);
        }
    }
}

#[test]
fn alpha_is_rank_four_at_the_unit_point() {
    let s = MonomialSystem::builtin("box3.alpha").unwrap();
    let p = vec![rat(1); 4];
    assert_eq!(oracle_rank(&gradient_rows(&s, &p)), 4);
    assert_eq!(mori_cones::arith::rank(&s.jacobian(&p).unwrap()), 4);
}

#[test]
fn base_points_match_direct_evaluation() {
    let mut rng = support::rng(23);
    for s in systems() {
        let mut points: Vec<Vec<Rational>> = (0..4)
            .map(|i| (0..4).map(|j| rat((i == j) as i64)).collect())
            .collect();
        for _ in 0..30 {
            points.push(support::random_vec(&mut rng, 4, -1, 1));
        }
        for p in points
            .into_iter()
            .filter(|p| p.iter().any(|x| !x.is_zero()))
        {
            let all_zero = s.monomials().iter().all(|m| value(m, &p).is_zero());
            assert_eq!(s.is_base_point(&p).unwrap(), all_zero, "{p:?}");
        }
    }
}

#[test]
fn order_two_vanishing_matches_values_and_gradients() {
    let mut rng = support::rng(29);
    for s in systems() {
        for _ in 0..30 {
            let p = support::random_vec(&mut rng, 4, -1, 1);
            if p.iter().all(Zero::is_zero) {
                continue;
            }
            let values_vanish = s.monomials().iter().all(|m| value(m, &p).is_zero());
            let gradients_vanish = gradient_rows(&s, &p).iter().flatten().all(Zero::is_zero);
            assert_eq!(s.vanishes_to_order(&p, 1).unwrap(), values_vanish);
            assert_eq!(
                s.vanishes_to_order(&p, 2).unwrap(),
                values_vanish && gradients_vanish,
                "{p:?}"
            );
        }
    }
}

#[test]
fn vanishing_is_monotone_in_the_order() {
    let mut rng = support::rng(31);
    for s in systems() {
        for _ in 0..20 {
            let p = support::random_vec(&mut rng, 4, -1, 1);
            if p.iter().all(Zero::is_zero) {
                continue;
            }
            let orders: Vec<bool> = (0..=4)
                .map(|k| s.vanishes_to_order(&p, k).unwrap())
                .collect();
            for w in orders.windows(2) {
                assert!(!w[1] || w[0], "{p:?}: {orders:?}");
            }
        }
    }
}

#[test]
fn generic_dimension_is_stable_across_samples() {
    for s in systems() {
        let dims = s.sample_dimensions(20, 99);
        assert!(dims.iter().all(|d| *d == Some(3)));
        assert_eq!(s.generic_image_dimension(20, 1), Some(3));
    }
}
