//! Linear systems spanned by monomials on ℙⁿ, evaluated exactly.
//!
//! Derivatives are taken symbolically from exponent vectors, so Jacobians
//! and vanishing orders involve no approximation.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{primitive, rank, Int, RatMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoError {
    #[error("system has no monomials")]
    Empty,
    #[error("monomial {index} has {found} exponents, expected {expected}")]
    Length {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("monomial {index} has degree {found}, expected {expected}")]
    NotHomogeneous {
        index: usize,
        expected: u32,
        found: u32,
    },
    #[error("monomial {index} is repeated")]
    Duplicate { index: usize },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },
    #[error("point is a base point of the system")]
    BasePoint,
    #[error("unknown built-in system {0:?}")]
    Unknown(String),
}

/// Monomials of equal degree in `source_dim + 1` homogeneous variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSystem", into = "RawSystem")]
pub struct MonomialSystem {
    source_dim: usize,
    monomials: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    source_dim: usize,
    monomials: Vec<Vec<u32>>,
}

impl TryFrom<RawSystem> for MonomialSystem {
    type Error = MonoError;

    fn try_from(raw: RawSystem) -> Result<Self, MonoError> {
        Self::new(raw.source_dim, raw.monomials)
    }
}

impl From<MonomialSystem> for RawSystem {
    fn from(s: MonomialSystem) -> Self {
        RawSystem {
            source_dim: s.source_dim,
            monomials: s.monomials,
        }
    }
}

pub const BUILTIN_NAMES: [&str; 2] = ["box3.alpha", "box3.beta"];

impl MonomialSystem {
    pub fn new(source_dim: usize, monomials: Vec<Vec<u32>>) -> Result<Self, MonoError> {
        let first = monomials.first().ok_or(MonoError::Empty)?;
        let degree: u32 = first.iter().sum();
        let mut seen = BTreeSet::new();
        for (index, m) in monomials.iter().enumerate() {
            if m.len() != source_dim + 1 {
                return Err(MonoError::Length {
                    index,
                    expected: source_dim + 1,
                    found: m.len(),
                });
            }
            let d: u32 = m.iter().sum();
            if d != degree {
                return Err(MonoError::NotHomogeneous {
                    index,
                    expected: degree,
                    found: d,
                });
            }
            if !seen.insert(m.clone()) {
                return Err(MonoError::Duplicate { index });
            }
        }
        Ok(Self {
            source_dim,
            monomials,
        })
    }

    /// `box3.alpha`: quadrics of ℙ³ through p = [1:0:0:0] and q = [0:0:0:1].
    /// `box3.beta`: cubics of ℙ³ singular at p and q.
    pub fn builtin(name: &str) -> Result<Self, MonoError> {
        let monomials: &[[u32; 4]] = match name {
            "box3.alpha" => &[
                [1, 1, 0, 0],
                [1, 0, 1, 0],
                [1, 0, 0, 1],
                [0, 2, 0, 0],
                [0, 1, 1, 0],
                [0, 1, 0, 1],
                [0, 0, 2, 0],
                [0, 0, 1, 1],
            ],
            "box3.beta" => &[
                [1, 2, 0, 0],
                [1, 0, 2, 0],
                [1, 1, 1, 0],
                [1, 1, 0, 1],
                [1, 0, 1, 1],
                [0, 3, 0, 0],
                [0, 2, 1, 0],
                [0, 2, 0, 1],
                [0, 1, 2, 0],
                [0, 1, 1, 1],
                [0, 0, 3, 0],
                [0, 0, 2, 1],
            ],
            _ => return Err(MonoError::Unknown(name.to_string())),
        };
        Self::new(3, monomials.iter().map(|m| m.to_vec()).collect())
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn degree(&self) -> u32 {
        self.monomials[0].iter().sum()
    }

    fn check_point(&self, p: &[Rational]) -> Result<(), MonoError> {
        if p.len() != self.source_dim + 1 {
            return Err(MonoError::PointLength {
                expected: self.source_dim + 1,
                found: p.len(),
            });
        }
        if p.iter().all(Zero::is_zero) {
            return Err(MonoError::ZeroPoint);
        }
        Ok(())
    }

    /// Image of `p` as primitive integer coordinates whose first nonzero
    /// entry is positive; `None` at a base point.
    pub fn evaluate(&self, p: &[Rational]) -> Result<Option<Vec<Int>>, MonoError> {
        self.check_point(p)?;
        let values: Vec<Rational> = self.monomials.iter().map(|m| monomial_at(m, p)).collect();
        if values.iter().all(Zero::is_zero) {
            return Ok(None);
        }
        let mut v = primitive(&values).expect("nonzero vector");
        if v.iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
        {
            v.iter_mut().for_each(|x| *x = -x.clone());
        }
        Ok(Some(v))
    }

    pub fn is_base_point(&self, p: &[Rational]) -> Result<bool, MonoError> {
        Ok(self.evaluate(p)?.is_none())
    }

    /// Gradients of the monomials at `p`, one row per monomial.
    pub fn jacobian(&self, p: &[Rational]) -> Result<RatMatrix, MonoError> {
        self.check_point(p)?;
        let n = self.source_dim + 1;
        let mut rows = Vec::with_capacity(self.monomials.len());
        for m in &self.monomials {
            let row: Vec<Rational> = (0..n)
                .map(|j| {
                    let mut order = vec![0; n];
                    order[j] = 1;
                    derivative_at(m, &order, p)
                })
                .collect();
            rows.push(row);
        }
        Ok(RatMatrix::from_rows(n, &rows).expect("rows have source_dim + 1 entries"))
    }

    /// Projective dimension of the image near the image of `p`: the rank of
    /// the Jacobian minus one.
    pub fn image_dimension(&self, p: &[Rational]) -> Result<usize, MonoError> {
        if self.is_base_point(p)? {
            return Err(MonoError::BasePoint);
        }
        Ok(rank(&self.jacobian(p)?) - 1)
    }

    /// Whether every partial derivative of order below `k` of every monomial
    /// vanishes at `p`.
    pub fn vanishes_to_order(&self, p: &[Rational], k: usize) -> Result<bool, MonoError> {
        self.check_point(p)?;
        let n = self.source_dim + 1;
        for m in &self.monomials {
            for total in 0..k {
                for order in compositions(total, n) {
                    if !derivative_at(m, &order, p).is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Maximum image dimension over `samples` random points with integer
    /// coordinates in [1, 100]. Base points are skipped; `None` if every
    /// sample was one.
    pub fn generic_image_dimension(&self, samples: usize, seed: u64) -> Option<usize> {
        self.sample_dimensions(samples, seed)
            .into_iter()
            .flatten()
            .max()
    }

    /// Image dimension at each of `samples` seeded random points.
    pub fn sample_dimensions(&self, samples: usize, seed: u64) -> Vec<Option<usize>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                let p: Vec<Rational> = (0..=self.source_dim)
                    .map(|_| Rational::from_integer(Int::from(rng.gen_range(1..=100))))
                    .collect();
                self.image_dimension(&p).ok()
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system serializes") + "\n"
    }
}

fn monomial_at(m: &[u32], p: &[Rational]) -> Rational {
    m.iter().zip(p).fold(Rational::one(), |acc, (&e, x)| {
        acc * num_traits::pow(x.clone(), e as usize)
    })
}

/// `∂^order x^m` evaluated at `p`.
fn derivative_at(m: &[u32], order: &[u32], p: &[Rational]) -> Rational {
    let mut coeff = Int::one();
    let mut rest = Vec::with_capacity(m.len());
    for (&e, &o) in m.iter().zip(order) {
        if o > e {
            return Rational::zero();
        }
        for t in 0..o {
            coeff *= Int::from(e - t);
        }
        rest.push(e - o);
    }
    Rational::from_integer(coeff) * monomial_at(&rest, p)
}

/// All exponent vectors of length `n` summing to `total`.
fn compositions(total: usize, n: usize) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![total as u32]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut tail in compositions(total - first, n - 1) {
            tail.insert(0, first as u32);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat, rat_vec};

    fn alpha() -> MonomialSystem {
        MonomialSystem::builtin("box3.alpha").unwrap()
    }

    fn beta() -> MonomialSystem {
        MonomialSystem::builtin("box3.beta").unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(MonomialSystem::new(1, vec![]), Err(MonoError::Empty));
        assert!(matches!(
            MonomialSystem::new(1, vec![vec![2, 0], vec![1]]),
            Err(MonoError::Length { index: 1, .. })
        ));
        assert!(matches!(
            MonomialSystem::new(1, vec![vec![2, 0], vec![1, 0]]),
            Err(MonoError::NotHomogeneous { index: 1, .. })
        ));
        assert_eq!(
            MonomialSystem::new(1, vec![vec![1, 1], vec![1, 1]]),
            Err(MonoError::Duplicate { index: 1 })
        );
        assert!(matches!(
            MonomialSystem::builtin("nope"),
            Err(MonoError::Unknown(_))
        ));
    }

    #[test]
    fn evaluation() {
        assert_eq!(
            alpha().evaluate(&rat_vec(&[1, 1, 1, 1])).unwrap(),
            Some(int_vec(&[1; 8]))
        );
        assert_eq!(alpha().evaluate(&rat_vec(&[1, 0, 0, 0])).unwrap(), None);
        assert_eq!(beta().evaluate(&rat_vec(&[0, 0, 0, 1])).unwrap(), None);
        assert_eq!(
            alpha().evaluate(&rat_vec(&[0, 0, 0, 0])),
            Err(MonoError::ZeroPoint)
        );
        assert!(alpha().evaluate(&rat_vec(&[1, 1])).is_err());
        let s = MonomialSystem::new(1, vec![vec![1, 0]]).unwrap();
        assert_eq!(s.evaluate(&rat_vec(&[-2, 1])).unwrap(), Some(int_vec(&[1])));
    }

    #[test]
    fn evaluation_is_projective() {
        let p = vec![rat(1), rat(2), crate::arith::ratio(1, 3), rat(-5)];
        let t = crate::arith::ratio(-7, 4);
        let tp: Vec<Rational> = p.iter().map(|x| x * &t).collect();
        for s in [alpha(), beta()] {
            assert_eq!(s.evaluate(&p).unwrap(), s.evaluate(&tp).unwrap());
        }
    }

    #[test]
    fn dimensions() {
        let p = rat_vec(&[1, 2, 3, 5]);
        assert_eq!(alpha().image_dimension(&p).unwrap(), 3);
        assert_eq!(beta().image_dimension(&p).unwrap(), 3);
        let point = MonomialSystem::new(1, vec![vec![2, 0]]).unwrap();
        assert_eq!(point.image_dimension(&rat_vec(&[1, 1])).unwrap(), 0);
        assert_eq!(
            alpha().image_dimension(&rat_vec(&[1, 0, 0, 0])),
            Err(MonoError::BasePoint)
        );
        assert_eq!(alpha().generic_image_dimension(20, 7), Some(3));
    }

    #[test]
    fn vanishing_orders() {
        let p = rat_vec(&[1, 0, 0, 0]);
        assert!(beta().vanishes_to_order(&p, 2).unwrap());
        assert!(!beta().vanishes_to_order(&p, 3).unwrap());
        assert!(alpha().vanishes_to_order(&p, 1).unwrap());
        assert!(!alpha().vanishes_to_order(&p, 2).unwrap());
        assert!(alpha()
            .vanishes_to_order(&rat_vec(&[1, 1, 1, 1]), 0)
            .unwrap());
    }

    #[test]
    fn compositions_count() {
        // C(total + n - 1, n - 1)
        assert_eq!(compositions(2, 4).len(), 10);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn json_round_trip() {
        let s = beta();
        let back: MonomialSystem = serde_json::from_str(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"source_dim": 1, "monomials": [[2, 0], [1, 0]]}"#;
        assert!(serde_json::from_str::<MonomialSystem>(bad).is_err());
    }
}
