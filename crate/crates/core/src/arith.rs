//! Exact rational scalars, vectors and matrices.
//!
//! Everything in this crate is computed over the rationals with arbitrary
//! precision integers. Linear algebra is done by fraction-free (Bareiss)
//! elimination on integer-scaled rows, so intermediate entries stay bounded
//! by minors of the input.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision integer.
pub type Int = BigInt;

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("malformed rational {0:?}")]
    Parse(String),
    #[error("the zero vector has no primitive representative")]
    ZeroVector,
    #[error("{found} entries do not fill a {rows}x{cols} matrix")]
    Shape {
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let t = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(t).map_err(|_| bad())?,
        )),
    }
}

/// Canonical `"p/q"` text; integers print without a denominator.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_rational(v: &[Int]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

/// `a·x + b·y`, componentwise.
pub fn combine(a: &Rational, x: &[Rational], b: &Rational, y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Smallest positive integer multiple of a rational vector (zero stays zero).
fn clear_denominators(v: &[Rational]) -> Vec<Int> {
    let lcm = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Divides out the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive_int(v: &[Int]) -> Vec<Int> {
    let g = v.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// The unique positive multiple of `v` with coprime integer entries.
pub fn primitive(v: &[Rational]) -> Result<Vec<Int>, ArithError> {
    if is_zero_vec(v) {
        return Err(ArithError::ZeroVector);
    }
    Ok(primitive_int(&clear_denominators(v)))
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, ArithError> {
        if entries.len() != rows * cols {
            return Err(ArithError::Shape {
                rows,
                cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self, ArithError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ArithError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| rat_vec(r)).collect();
        Self::from_rows(cols, &rows).expect("ragged integer rows")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.entries[i * n + i] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, ArithError> {
        if v.len() != self.cols {
            return Err(ArithError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, ArithError> {
        if self.cols != other.rows {
            return Err(ArithError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                entries.push(acc);
            }
        }
        RatMatrix::new(self.rows, other.cols, entries)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    /// Determinant of a square matrix; `None` when not square.
    pub fn determinant(&self) -> Option<Rational> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(Rational::one());
        }
        // Row scaling by the integer factors is undone at the end.
        let mut scale = Rational::one();
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let r = self.row(i);
            let lcm = r.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
            scale *= Rational::from_integer(lcm.clone());
            rows.push(r.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
        }
        let ech = Echelon::compute(rows, self.cols);
        if ech.pivots.len() < self.rows {
            return Some(Rational::zero());
        }
        let last = Rational::from_integer(ech.rows[self.rows - 1][self.cols - 1].clone());
        let sign = if ech.swaps.is_multiple_of(2) {
            rat(1)
        } else {
            rat(-1)
        };
        Some(sign * last / scale)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() || rank(self) < self.rows {
            return None;
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            cols.push(solve(self, &e)?);
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for c in &cols {
                entries.push(c[i].clone());
            }
        }
        RatMatrix::new(n, n, entries).ok()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Fraction-free row echelon form of an integer matrix.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    pub rows: Vec<Vec<Int>>,
    pub pivots: Vec<usize>,
    pub swaps: usize,
}

impl Echelon {
    /// Bareiss elimination. Every division below is exact (Sylvester's identity),
    /// also when columns without a pivot are skipped.
    pub fn compute(mut a: Vec<Vec<Int>>, ncols: usize) -> Self {
        let m = a.len();
        let mut prev = Int::one();
        let mut r = 0;
        let mut pivots = Vec::new();
        let mut swaps = 0;
        for c in 0..ncols {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            for i in r + 1..m {
                for j in c + 1..ncols {
                    let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero());
                    a[i][j] = q;
                }
                a[i][c] = Int::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        // Rows below the rank are not touched by the last step but are zero.
        for row in a.iter_mut().skip(r) {
            for x in row.iter_mut() {
                *x = Int::zero();
            }
        }
        Self {
            rows: a,
            pivots,
            swaps,
        }
    }

    /// Solves the echelon system with right-hand side in column `rhs_col`
    /// (or zero), free variables given by `free`.
    fn back_substitute(
        &self,
        ncols: usize,
        rhs_col: Option<usize>,
        free: &[(usize, Rational)],
    ) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); ncols];
        for (j, v) in free {
            x[*j] = v.clone();
        }
        for (i, &p) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[i];
            let mut acc = match rhs_col {
                Some(c) => Rational::from_integer(row[c].clone()),
                None => Rational::zero(),
            };
            for (j, xj) in x.iter().enumerate().take(ncols).skip(p + 1) {
                if !row[j].is_zero() && !xj.is_zero() {
                    acc -= Rational::from_integer(row[j].clone()) * xj;
                }
            }
            x[p] = acc / Rational::from_integer(row[p].clone());
        }
        x
    }
}

fn integer_rows(m: &RatMatrix) -> Vec<Vec<Int>> {
    (0..m.rows).map(|i| clear_denominators(m.row(i))).collect()
}

/// Rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    Echelon::compute(integer_rows(m), m.cols).pivots.len()
}

/// Rank of a list of integer vectors of length `ncols`.
pub fn rank_int(rows: &[Vec<Int>], ncols: usize) -> usize {
    Echelon::compute(rows.to_vec(), ncols).pivots.len()
}

/// Some `x` with `m·x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    if b.len() != m.rows {
        return None;
    }
    let aug: Vec<Vec<Int>> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            clear_denominators(&r)
        })
        .collect();
    let ech = Echelon::compute(aug, m.cols + 1);
    if ech.pivots.last() == Some(&m.cols) {
        return None;
    }
    Some(ech.back_substitute(m.cols, Some(m.cols), &[]))
}

/// Basis of `{x : m·x = 0}`, one vector per free column.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    nullspace_int(&integer_rows(m), m.cols)
}

pub(crate) fn nullspace_int(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = Echelon::compute(rows.to_vec(), ncols);
    (0..ncols)
        .filter(|j| !ech.pivots.contains(j))
        .map(|f| ech.back_substitute(ncols, None, &[(f, Rational::one())]))
        .collect()
}

/// Reduced row echelon basis of the span of `vectors`, each row made primitive.
/// Two spanning sets of the same subspace give identical output.
pub fn canonical_basis(vectors: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let ech = Echelon::compute(vectors.to_vec(), ncols);
    let k = ech.pivots.len();
    let mut rref: Vec<Vec<Rational>> = ech.rows[..k].iter().map(|r| to_rational(r)).collect();
    for i in (0..k).rev() {
        let p = ech.pivots[i];
        let lead = rref[i][p].clone();
        for x in rref[i].iter_mut() {
            *x /= lead.clone();
        }
        for h in 0..i {
            let f = rref[h][p].clone();
            if !f.is_zero() {
                let (lo, hi) = rref.split_at_mut(i);
                for (a, b) in lo[h].iter_mut().zip(hi[0].iter()) {
                    *a -= &f * b;
                }
            }
        }
    }
    rref.iter()
        .map(|r| primitive(r).expect("echelon rows are nonzero"))
        .collect()
}

/// Integer sign of a rational or integer value: -1, 0, 1.
pub fn sign<T: Signed>(x: &T) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
