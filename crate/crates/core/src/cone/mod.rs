//! Finitely generated rational convex cones.
//!
//! A [`Cone`] always carries both representations: primitive integer
//! generators (plus a lineality basis) and primitive integer facet normals
//! (plus the implicit equations of its span). Both are canonical, so two
//! cones describing the same point set hold identical data.

mod dd;

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{
    dot, is_zero_vec, primitive, rank, rank_int, to_rational, ArithError, Int, RatMatrix, Rational,
};

pub(crate) use dd::double_description;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone has a nonzero lineality space; extremal rays are not defined")]
    HasLineality,
    #[error("pairing matrix must be square of size {expected}, found {rows}x{cols}")]
    PairingShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("pairing matrix is singular")]
    SingularPairing,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MembershipStatus {
    Interior,
    Boundary,
    Outside,
}

impl fmt::Display for MembershipStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MembershipStatus::Interior => "interior",
            MembershipStatus::Boundary => "boundary",
            MembershipStatus::Outside => "outside",
        })
    }
}

/// Result of a membership query. `tight_facets` indexes [`Cone::facets`] and is
/// nonempty exactly for boundary points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub status: MembershipStatus,
    pub tight_facets: Vec<usize>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.status != MembershipStatus::Outside
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient_dim: usize,
    generators: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
    facets: Vec<Vec<Int>>,
    equations: Vec<Vec<Int>>,
}

fn check_len(expected: usize, found: usize) -> Result<(), ConeError> {
    if expected != found {
        return Err(ConeError::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn negated(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

impl Cone {
    /// The cone generated by `raw`. Redundant and zero generators are dropped;
    /// an empty list gives the zero cone.
    pub fn from_generators(ambient_dim: usize, raw: &[Vec<Rational>]) -> Result<Self, ConeError> {
        let mut gens = Vec::with_capacity(raw.len());
        for v in raw {
            check_len(ambient_dim, v.len())?;
            if !is_zero_vec(v) {
                gens.push(primitive(v)?);
            }
        }
        Ok(Self::from_integer_generators(ambient_dim, gens))
    }

    pub fn from_int_generators(ambient_dim: usize, raw: &[Vec<Int>]) -> Result<Self, ConeError> {
        for v in raw {
            check_len(ambient_dim, v.len())?;
        }
        Ok(Self::from_integer_generators(ambient_dim, raw.to_vec()))
    }

    /// Convenience constructor for small literal cones.
    pub fn from_i64(ambient_dim: usize, raw: &[&[i64]]) -> Result<Self, ConeError> {
        let v: Vec<Vec<Int>> = raw.iter().map(|r| crate::arith::int_vec(r)).collect();
        Self::from_int_generators(ambient_dim, &v)
    }

    fn from_integer_generators(ambient_dim: usize, gens: Vec<Vec<Int>>) -> Self {
        // H-representation: the extreme rays of the dual cone are the facets,
        // its lineality spans the equations.
        let dual = double_description(ambient_dim, &gens);
        let mut rows = dual.rays.clone();
        for e in &dual.lineality {
            rows.push(e.clone());
            rows.push(negated(e));
        }
        let primal = double_description(ambient_dim, &rows);
        Cone {
            ambient_dim,
            generators: primal.rays,
            lineality: primal.lineality,
            facets: dual.rays,
            equations: dual.lineality,
        }
    }

    /// The cone `{x : ⟨f, x⟩ ≥ 0, ⟨e, x⟩ = 0}`.
    pub fn from_inequalities(
        ambient_dim: usize,
        inequalities: &[Vec<Int>],
        equations: &[Vec<Int>],
    ) -> Result<Self, ConeError> {
        let mut rows = Vec::with_capacity(inequalities.len() + 2 * equations.len());
        for f in inequalities {
            check_len(ambient_dim, f.len())?;
            rows.push(f.clone());
        }
        for e in equations {
            check_len(ambient_dim, e.len())?;
            rows.push(e.clone());
            rows.push(negated(e));
        }
        let g = double_description(ambient_dim, &rows);
        let mut gens = g.rays;
        for l in &g.lineality {
            gens.push(l.clone());
            gens.push(negated(l));
        }
        Ok(Self::from_integer_generators(ambient_dim, gens))
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_integer_generators(ambient_dim, Vec::new())
    }

    /// The nonnegative orthant.
    pub fn orthant(ambient_dim: usize) -> Self {
        let gens = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Int::zero(); ambient_dim];
                v[i] = Int::from(1);
                v
            })
            .collect();
        Self::from_integer_generators(ambient_dim, gens)
    }

    pub fn whole_space(ambient_dim: usize) -> Self {
        Self::from_integer_generators(ambient_dim, Self::orthant(ambient_dim).signed_basis())
    }

    fn signed_basis(&self) -> Vec<Vec<Int>> {
        let mut out = self.generators.clone();
        out.extend(self.generators.iter().map(|g| negated(g)));
        out
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extreme rays of the pointed part, lexicographically sorted.
    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    /// Inward facet normals: the cone satisfies `⟨f, x⟩ ≥ 0` for each.
    pub fn facets(&self) -> &[Vec<Int>] {
        &self.facets
    }

    /// Linear equations cutting out the span of the cone.
    pub fn equations(&self) -> &[Vec<Int>] {
        &self.equations
    }

    /// Generators and both signs of the lineality basis; spans the cone
    /// positively.
    pub fn all_generators(&self) -> Vec<Vec<Int>> {
        let mut out = self.generators.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(negated(l));
        }
        out
    }

    pub fn dimension(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty() && self.lineality.is_empty()
    }

    /// Canonical sorted extremal rays; refuses cones with lineality.
    pub fn extremal_rays(&self) -> Result<Vec<Vec<Int>>, ConeError> {
        if !self.is_pointed() {
            return Err(ConeError::HasLineality);
        }
        Ok(self.generators.clone())
    }

    /// Sum of the extremal rays, a point of the relative interior.
    pub fn interior_point(&self) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); self.ambient_dim];
        for g in &self.generators {
            for (a, x) in acc.iter_mut().zip(g) {
                *a += Rational::from_integer(x.clone());
            }
        }
        acc
    }

    /// Membership with relative-interior semantics for lower dimensional cones.
    pub fn contains(&self, x: &[Rational]) -> Result<Membership, ConeError> {
        check_len(self.ambient_dim, x.len())?;
        let outside = Membership {
            status: MembershipStatus::Outside,
            tight_facets: Vec::new(),
        };
        for e in &self.equations {
            if !dot(&to_rational(e), x).is_zero() {
                return Ok(outside);
            }
        }
        let mut tight = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let v = dot(&to_rational(f), x);
            if v.is_negative() {
                return Ok(outside);
            }
            if v.is_zero() {
                tight.push(i);
            }
        }
        let status = if tight.is_empty() {
            MembershipStatus::Interior
        } else {
            MembershipStatus::Boundary
        };
        Ok(Membership {
            status,
            tight_facets: tight,
        })
    }

    pub fn contains_int(&self, x: &[Int]) -> Result<Membership, ConeError> {
        self.contains(&to_rational(x))
    }

    /// True when every generator of `other` lies in `self`.
    pub fn includes(&self, other: &Cone) -> Result<bool, ConeError> {
        check_len(self.ambient_dim, other.ambient_dim)?;
        for g in other.all_generators() {
            if !self.contains_int(&g)?.is_member() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Point-set equality, by mutual containment.
    pub fn equals(&self, other: &Cone) -> Result<bool, ConeError> {
        Ok(self.includes(other)? && other.includes(self)?)
    }

    /// `{y : ⟨y, x⟩ ≥ 0 for all x in self}`.
    pub fn dual(&self) -> Cone {
        let mut gens = self.facets.clone();
        for e in &self.equations {
            gens.push(e.clone());
            gens.push(negated(e));
        }
        Self::from_integer_generators(self.ambient_dim, gens)
    }

    /// The cone generated by the images `M g` of all generators.
    pub fn image(&self, m: &RatMatrix) -> Result<Cone, ConeError> {
        check_len(self.ambient_dim, m.cols())?;
        let imgs: Vec<Vec<Rational>> = self
            .all_generators()
            .iter()
            .map(|g| m.mul_vec(&to_rational(g)))
            .collect::<Result<_, _>>()?;
        Cone::from_generators(m.rows(), &imgs)
    }

    /// `{D : Dᵀ P C ≥ 0 for all C in self}`: the dual taken across a
    /// non-degenerate pairing, landing in the other lattice.
    pub fn dual_under_pairing(&self, pairing: &RatMatrix) -> Result<Cone, ConeError> {
        if !pairing.is_square() || pairing.rows() != self.ambient_dim {
            return Err(ConeError::PairingShape {
                expected: self.ambient_dim,
                rows: pairing.rows(),
                cols: pairing.cols(),
            });
        }
        if rank(pairing) < pairing.rows() {
            return Err(ConeError::SingularPairing);
        }
        Ok(self.image(pairing)?.dual())
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, ConeError> {
        check_len(self.ambient_dim, other.ambient_dim)?;
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(self.ambient_dim, &ineqs, &eqs)
    }

    /// The join `A * B`: the cone generated by both generator sets.
    pub fn join(&self, other: &Cone) -> Result<Cone, ConeError> {
        check_len(self.ambient_dim, other.ambient_dim)?;
        let mut gens = self.all_generators();
        gens.extend(other.all_generators());
        Ok(Self::from_integer_generators(self.ambient_dim, gens))
    }

    /// Rays of `self` on which `normal` vanishes.
    pub fn face_rays(&self, normal: &[Int]) -> Vec<Vec<Int>> {
        self.generators
            .iter()
            .filter(|g| crate::arith::dot_int(g, normal).is_zero())
            .cloned()
            .collect()
    }

    /// The face cut out by the facet with index `i`.
    pub fn facet_face(&self, i: usize) -> Cone {
        let normal = &self.facets[i];
        let mut gens = self.face_rays(normal);
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(negated(l));
        }
        Self::from_integer_generators(self.ambient_dim, gens)
    }

    /// Number of linearly independent facets tight at `x`.
    pub fn tight_rank(&self, x: &[Int]) -> usize {
        let tight: Vec<Vec<Int>> = self
            .facets
            .iter()
            .filter(|f| crate::arith::dot_int(f, x).is_zero())
            .cloned()
            .collect();
        rank_int(&tight, self.ambient_dim)
    }
}

pub(crate) fn fmt_int_vec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |vs: &[Vec<Int>]| {
            vs.iter()
                .map(|v| fmt_int_vec(v))
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "generators: {}", list(&self.generators))?;
        writeln!(f, "lineality: {}", list(&self.lineality))?;
        writeln!(f, "facets: {}", list(&self.facets))?;
        if !self.equations.is_empty() {
            writeln!(f, "equations: {}", list(&self.equations))?;
        }
        Ok(())
    }
}
