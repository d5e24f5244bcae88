//! Shared test helpers: a Fourier–Motzkin membership oracle and seeded
//! random cone generation. Nothing here calls into the double description
//! code, so it can be used to check it.

#![allow(dead_code)]

use mori_cones::arith::{Int, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `a·λ + c ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Ineq {
    a: Vec<Rational>,
    c: Rational,
}

impl Ineq {
    fn normalized(mut self) -> Self {
        // Scale so the first nonzero entry has absolute value one; keeps
        // duplicates detectable.
        let lead = self
            .a
            .iter()
            .chain(std::iter::once(&self.c))
            .find(|x| !x.is_zero())
            .cloned();
        if let Some(l) = lead {
            let l = l.abs();
            for x in self.a.iter_mut() {
                *x /= l.clone();
            }
            self.c /= l;
        }
        self
    }
}

/// Decides `x ∈ cone(gens)` by eliminating the multipliers λ from
/// `Σ λ_i g_i = x, λ ≥ 0`: equalities are used for substitution first, the
/// remaining variables go through Fourier–Motzkin.
pub fn fm_member(gens: &[Vec<Rational>], x: &[Rational]) -> bool {
    let m = gens.len();
    let d = x.len();
    // Equalities `a·λ + c = 0`.
    let mut eqs: Vec<Ineq> = (0..d)
        .map(|j| Ineq {
            a: gens.iter().map(|g| g[j].clone()).collect(),
            c: -x[j].clone(),
        })
        .collect();
    let mut system: Vec<Ineq> = (0..m)
        .map(|i| {
            let mut a = vec![Rational::zero(); m];
            a[i] = Rational::from_integer(Int::from(1));
            Ineq {
                a,
                c: Rational::zero(),
            }
        })
        .collect();
    while let Some(pos) = eqs.iter().position(|e| e.a.iter().any(|v| !v.is_zero())) {
        let e = eqs.swap_remove(pos);
        let var = e.a.iter().position(|v| !v.is_zero()).unwrap();
        let substitute = |q: &mut Ineq| {
            if q.a[var].is_zero() {
                return;
            }
            let f = q.a[var].clone() / e.a[var].clone();
            for (u, v) in q.a.iter_mut().zip(&e.a) {
                *u -= &f * v;
            }
            q.c -= &f * &e.c;
        };
        eqs.iter_mut().for_each(substitute);
        system.iter_mut().for_each(substitute);
    }
    if eqs.iter().any(|e| !e.c.is_zero()) {
        return false;
    }
    loop {
        // Eliminate the variable with the fewest new rows.
        let best = (0..m)
            .map(|v| {
                let p = system.iter().filter(|q| q.a[v].is_positive()).count();
                let n = system.iter().filter(|q| q.a[v].is_negative()).count();
                (v, p, n)
            })
            .filter(|&(_, p, n)| p + n > 0)
            .min_by_key(|&(_, p, n)| p * n);
        let Some((var, _, _)) = best else { break };
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in system {
            if q.a[var].is_positive() {
                pos.push(q);
            } else if q.a[var].is_negative() {
                neg.push(q);
            } else {
                rest.push(q);
            }
        }
        for p in &pos {
            for n in &neg {
                let sp = -n.a[var].clone();
                let sn = p.a[var].clone();
                let a: Vec<Rational> =
                    p.a.iter()
                        .zip(&n.a)
                        .map(|(u, v)| &sp * u + &sn * v)
                        .collect();
                let c = &sp * &p.c + &sn * &n.c;
                rest.push(Ineq { a, c }.normalized());
            }
        }
        rest.sort();
        rest.dedup();
        system = rest;
    }
    system.iter().all(|q| !q.c.is_negative())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vec(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> Vec<Rational> {
    (0..dim)
        .map(|_| Rational::from_integer(Int::from(rng.gen_range(lo..=hi))))
        .collect()
}

/// Random generator list: dimension 1..=4, 1..=6 generators, entries in [-5, 5].
pub fn random_generators(rng: &mut ChaCha8Rng) -> (usize, Vec<Vec<Rational>>) {
    let dim = rng.gen_range(1..=4);
    let count = rng.gen_range(1..=6);
    let gens = (0..count).map(|_| random_vec(rng, dim, -5, 5)).collect();
    (dim, gens)
}

/// Random generators of a pointed cone: all lie in the open half-space
/// `x_0 > 0`.
pub fn random_pointed_generators(rng: &mut ChaCha8Rng) -> (usize, Vec<Vec<Rational>>) {
    let dim = rng.gen_range(1..=4);
    let count = rng.gen_range(1..=6);
    let gens = (0..count)
        .map(|_| {
            let mut v = random_vec(rng, dim, -5, 5);
            v[0] = Rational::from_integer(Int::from(rng.gen_range(1..=5)));
            v
        })
        .collect();
    (dim, gens)
}

pub fn to_rational(v: &[Int]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

#[test]
fn oracle_sanity() {
    let r = |v: &[i64]| -> Vec<Rational> {
        v.iter()
            .map(|&x| Rational::from_integer(Int::from(x)))
            .collect()
    };
    let gens = vec![r(&[1, 0]), r(&[1, 1])];
    assert!(fm_member(&gens, &r(&[2, 1])));
    assert!(fm_member(&gens, &r(&[0, 0])));
    assert!(!fm_member(&gens, &r(&[0, 1])));
    assert!(!fm_member(&gens, &r(&[1, -1])));
    assert!(fm_member(&[r(&[1]), r(&[-1])], &r(&[-7])));
}
