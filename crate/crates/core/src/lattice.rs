//! Néron–Severi data of a variety: the divisor lattice N¹(X), the curve
//! lattice N₁(X), the intersection pairing between them, named classes, and
//! the birational cones Eff, Nef, Mov and NE.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{
    combine, dot, primitive, rank, to_rational, ArithError, Int, RatMatrix, Rational,
};
use crate::chamber::{ChamberFan, FanError, Located};
use crate::cone::{Cone, ConeError};
use crate::expr::{parse_linear_expr, ExprError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("expression {0:?} mixes divisor and curve classes")]
    MixedLattices(String),
    #[error("lattice mismatch: expected {expected}, found {found}")]
    LatticeMismatch { expected: String, found: String },
    #[error("model has no intersection pairing")]
    NoPairing,
    #[error("model has no curve lattice")]
    NoCurveLattice,
    #[error("model has no chamber decomposition")]
    NoChamberDecomposition,
    #[error("pairing matrix must be {rank}x{rank} and invertible")]
    BadPairing { rank: usize },
    #[error("{what} has length {found}, lattice rank is {expected}")]
    Rank {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("map matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MapShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// A free lattice with labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    name: String,
    basis: Vec<String>,
}

impl Lattice {
    pub fn new(name: impl Into<String>, basis: &[&str]) -> Result<Arc<Self>, ModelError> {
        Self::from_labels(name, basis.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_labels(
        name: impl Into<String>,
        basis: Vec<String>,
    ) -> Result<Arc<Self>, ModelError> {
        for (i, l) in basis.iter().enumerate() {
            if basis[..i].contains(l) {
                return Err(ModelError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Arc::new(Self {
            name: name.into(),
            basis,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }
}

/// An element of a lattice with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVector {
    lattice: Arc<Lattice>,
    coords: Vec<Rational>,
}

impl ClassVector {
    pub fn new(lattice: Arc<Lattice>, coords: Vec<Rational>) -> Result<Self, ModelError> {
        if coords.len() != lattice.rank() {
            return Err(ModelError::Rank {
                what: "class vector".into(),
                expected: lattice.rank(),
                found: coords.len(),
            });
        }
        Ok(Self { lattice, coords })
    }

    pub fn zero(lattice: Arc<Lattice>) -> Self {
        let coords = vec![Rational::zero(); lattice.rank()];
        Self { lattice, coords }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// `a·self + b·other`.
    pub fn combine(
        &self,
        a: &Rational,
        other: &ClassVector,
        b: &Rational,
    ) -> Result<Self, ModelError> {
        same_lattice(&self.lattice, &other.lattice)?;
        Ok(Self {
            lattice: self.lattice.clone(),
            coords: combine(a, &self.coords, b, &other.coords),
        })
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn same_lattice(expected: &Lattice, found: &Lattice) -> Result<(), ModelError> {
    if expected != found {
        return Err(ModelError::LatticeMismatch {
            expected: expected.name().to_string(),
            found: found.name().to_string(),
        });
    }
    Ok(())
}

/// The non-degenerate pairing N¹ × N₁ → ℚ, `D·C = dᵀ M c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    divisor_lattice: Arc<Lattice>,
    curve_lattice: Arc<Lattice>,
    matrix: RatMatrix,
}

impl Pairing {
    pub fn new(
        divisor_lattice: Arc<Lattice>,
        curve_lattice: Arc<Lattice>,
        matrix: RatMatrix,
    ) -> Result<Self, ModelError> {
        let n = divisor_lattice.rank();
        if curve_lattice.rank() != n
            || matrix.rows() != n
            || matrix.cols() != n
            || rank(&matrix) != n
        {
            return Err(ModelError::BadPairing { rank: n });
        }
        Ok(Self {
            divisor_lattice,
            curve_lattice,
            matrix,
        })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn evaluate(&self, d: &ClassVector, c: &ClassVector) -> Result<Rational, ModelError> {
        same_lattice(&self.divisor_lattice, &d.lattice)?;
        same_lattice(&self.curve_lattice, &c.lattice)?;
        Ok(dot(&d.coords, &self.matrix.mul_vec(&c.coords)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConeKind {
    Eff,
    Nef,
    Mov,
    Ne,
}

impl ConeKind {
    pub const ALL: [ConeKind; 4] = [ConeKind::Eff, ConeKind::Nef, ConeKind::Mov, ConeKind::Ne];

    pub fn as_str(self) -> &'static str {
        match self {
            ConeKind::Eff => "eff",
            ConeKind::Nef => "nef",
            ConeKind::Mov => "mov",
            ConeKind::Ne => "ne",
        }
    }
}

impl fmt::Display for ConeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eff" => Ok(ConeKind::Eff),
            "nef" => Ok(ConeKind::Nef),
            "mov" => Ok(ConeKind::Mov),
            "ne" => Ok(ConeKind::Ne),
            other => Err(format!(
                "unknown cone {other:?} (expected eff, nef, mov or ne)"
            )),
        }
    }
}

/// A variety as recorded by its lattices, pairing, named classes and cones.
///
/// Construction does not enforce the cone invariants; use
/// [`VarietyModel::validate`] to check them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyModel {
    name: String,
    divisor_lattice: Arc<Lattice>,
    curve_lattice: Option<Arc<Lattice>>,
    pairing: Option<Pairing>,
    classes: BTreeMap<String, ClassVector>,
    eff: Cone,
    nef: Cone,
    mov: Option<Cone>,
    ne: Option<Cone>,
    mcd: Option<ChamberFan>,
}

impl VarietyModel {
    pub fn new(
        name: impl Into<String>,
        divisor_lattice: Arc<Lattice>,
        eff: Cone,
        nef: Cone,
    ) -> Result<Self, ModelError> {
        let r = divisor_lattice.rank();
        for (what, c) in [("eff", &eff), ("nef", &nef)] {
            check_cone_rank(what, r, c)?;
        }
        Ok(Self {
            name: name.into(),
            divisor_lattice,
            curve_lattice: None,
            pairing: None,
            classes: BTreeMap::new(),
            eff,
            nef,
            mov: None,
            ne: None,
            mcd: None,
        })
    }

    /// Attaches the curve lattice, the pairing matrix (rows indexed by the
    /// divisor basis) and optionally the Mori cone.
    pub fn with_curves(
        mut self,
        curve_lattice: Arc<Lattice>,
        pairing: RatMatrix,
        ne: Option<Cone>,
    ) -> Result<Self, ModelError> {
        let pairing = Pairing::new(self.divisor_lattice.clone(), curve_lattice.clone(), pairing)?;
        if let Some(ne) = &ne {
            check_cone_rank("ne", curve_lattice.rank(), ne)?;
        }
        self.curve_lattice = Some(curve_lattice);
        self.pairing = Some(pairing);
        self.ne = ne;
        Ok(self)
    }

    pub fn with_mov(mut self, mov: Cone) -> Result<Self, ModelError> {
        check_cone_rank("mov", self.divisor_lattice.rank(), &mov)?;
        self.mov = Some(mov);
        Ok(self)
    }

    pub fn with_nef(mut self, nef: Cone) -> Result<Self, ModelError> {
        check_cone_rank("nef", self.divisor_lattice.rank(), &nef)?;
        self.nef = nef;
        Ok(self)
    }

    pub fn with_mcd(mut self, mcd: ChamberFan) -> Result<Self, ModelError> {
        check_cone_rank("mcd support", self.divisor_lattice.rank(), mcd.support())?;
        self.mcd = Some(mcd);
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn without_mcd(mut self) -> Self {
        self.mcd = None;
        self
    }

    /// Names a divisor class.
    pub fn with_class(mut self, label: &str, coords: Vec<Rational>) -> Result<Self, ModelError> {
        let v = ClassVector::new(self.divisor_lattice.clone(), coords)?;
        self.insert_class(label, v)?;
        Ok(self)
    }

    /// Names a curve class.
    pub fn with_curve_class(
        mut self,
        label: &str,
        coords: Vec<Rational>,
    ) -> Result<Self, ModelError> {
        let lattice = self
            .curve_lattice
            .clone()
            .ok_or(ModelError::NoCurveLattice)?;
        let v = ClassVector::new(lattice, coords)?;
        self.insert_class(label, v)?;
        Ok(self)
    }

    fn insert_class(&mut self, label: &str, v: ClassVector) -> Result<(), ModelError> {
        let clashes_with_basis = self.divisor_lattice.index_of(label).is_some()
            || self
                .curve_lattice
                .as_ref()
                .is_some_and(|l| l.index_of(label).is_some());
        if clashes_with_basis || self.classes.contains_key(label) {
            return Err(ModelError::DuplicateLabel(label.to_string()));
        }
        self.classes.insert(label.to_string(), v);
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn divisor_lattice(&self) -> &Arc<Lattice> {
        &self.divisor_lattice
    }

    pub fn curve_lattice(&self) -> Option<&Arc<Lattice>> {
        self.curve_lattice.as_ref()
    }

    pub fn pairing(&self) -> Option<&Pairing> {
        self.pairing.as_ref()
    }

    pub fn classes(&self) -> &BTreeMap<String, ClassVector> {
        &self.classes
    }

    pub fn eff(&self) -> &Cone {
        &self.eff
    }

    pub fn nef(&self) -> &Cone {
        &self.nef
    }

    pub fn mov(&self) -> Option<&Cone> {
        self.mov.as_ref()
    }

    pub fn ne(&self) -> Option<&Cone> {
        self.ne.as_ref()
    }

    pub fn mcd(&self) -> Option<&ChamberFan> {
        self.mcd.as_ref()
    }

    pub fn cone(&self, kind: ConeKind) -> Option<&Cone> {
        match kind {
            ConeKind::Eff => Some(&self.eff),
            ConeKind::Nef => Some(&self.nef),
            ConeKind::Mov => self.mov.as_ref(),
            ConeKind::Ne => self.ne.as_ref(),
        }
    }

    /// The lattice a cone of this kind lives in.
    pub fn lattice_of(&self, kind: ConeKind) -> Option<&Arc<Lattice>> {
        match kind {
            ConeKind::Ne => self.curve_lattice.as_ref(),
            _ => Some(&self.divisor_lattice),
        }
    }

    pub fn divisor(&self, coords: Vec<Rational>) -> Result<ClassVector, ModelError> {
        ClassVector::new(self.divisor_lattice.clone(), coords)
    }

    pub fn curve(&self, coords: Vec<Rational>) -> Result<ClassVector, ModelError> {
        let lattice = self
            .curve_lattice
            .clone()
            .ok_or(ModelError::NoCurveLattice)?;
        ClassVector::new(lattice, coords)
    }

    /// Resolves a basis or named-class label.
    pub fn lookup(&self, label: &str) -> Result<ClassVector, ModelError> {
        if let Some(i) = self.divisor_lattice.index_of(label) {
            return Ok(unit(&self.divisor_lattice, i));
        }
        if let Some(l) = &self.curve_lattice {
            if let Some(i) = l.index_of(label) {
                return Ok(unit(l, i));
            }
        }
        self.classes
            .get(label)
            .cloned()
            .ok_or_else(|| ModelError::UnknownLabel(label.to_string()))
    }

    /// The class of a linear combination of labels, e.g. `"H - E_p"`. All
    /// labels must come from the same lattice; `"0"` is the zero divisor.
    pub fn class_of(&self, expr: &str) -> Result<ClassVector, ModelError> {
        let parsed = parse_linear_expr(expr)?;
        let mut acc: Option<ClassVector> = None;
        for (coeff, label) in &parsed.terms {
            let v = self.lookup(label)?;
            acc = Some(match acc {
                None => ClassVector {
                    coords: v.coords.iter().map(|x| x * coeff).collect(),
                    lattice: v.lattice,
                },
                Some(a) => {
                    if a.lattice != v.lattice {
                        return Err(ModelError::MixedLattices(expr.to_string()));
                    }
                    a.combine(&Rational::one(), &v, coeff)?
                }
            });
        }
        Ok(acc.unwrap_or_else(|| ClassVector::zero(self.divisor_lattice.clone())))
    }

    /// `D·C` through the stored pairing.
    pub fn intersection_number(
        &self,
        d: &ClassVector,
        c: &ClassVector,
    ) -> Result<Rational, ModelError> {
        self.pairing
            .as_ref()
            .ok_or(ModelError::NoPairing)?
            .evaluate(d, c)
    }

    /// A readable name for a ray: a basis label, else the first named class
    /// (in label order) that is a positive multiple of it.
    pub fn label_for(&self, lattice: &Lattice, ray: &[Int]) -> Option<String> {
        let target = primitive(&to_rational(ray)).ok()?;
        for (i, b) in lattice.basis().iter().enumerate() {
            if target
                .iter()
                .enumerate()
                .all(|(j, x)| if j == i { x.is_one() } else { x.is_zero() })
            {
                return Some(b.clone());
            }
        }
        self.classes
            .iter()
            .filter(|(_, v)| v.lattice.as_ref() == lattice)
            .find(|(_, v)| primitive(&v.coords).ok().as_ref() == Some(&target))
            .map(|(k, _)| k.clone())
    }

    /// Locates a divisor class in the chamber decomposition.
    pub fn locate(&self, x: &ClassVector) -> Result<Vec<Located>, ModelError> {
        same_lattice(&self.divisor_lattice, &x.lattice)?;
        let fan = self
            .mcd
            .as_ref()
            .ok_or(ModelError::NoChamberDecomposition)?;
        Ok(fan.locate(&x.coords)?)
    }

    /// Checks the recorded data against the inclusion chain
    /// `Nef ⊂ Mov ⊂ Eff` and, when a pairing and Mori cone are present,
    /// `Nef = dual of NE under the pairing`. Returns human readable violations.
    pub fn validate(&self) -> Result<Vec<String>, ModelError> {
        let mut issues = Vec::new();
        let upper = self.mov.as_ref().unwrap_or(&self.eff);
        if !upper.includes(&self.nef)? {
            issues.push(format!(
                "nef is not contained in {}",
                if self.mov.is_some() { "mov" } else { "eff" }
            ));
        }
        if let Some(mov) = &self.mov {
            if !self.eff.includes(mov)? {
                issues.push("mov is not contained in eff".into());
            }
        }
        if let (Some(p), Some(ne)) = (&self.pairing, &self.ne) {
            let dual = ne.dual_under_pairing(p.matrix())?;
            if !dual.equals(&self.nef)? {
                issues.push("nef differs from the dual of ne under the pairing".into());
            }
        }
        if let Some(fan) = &self.mcd {
            if !fan.support().equals(&self.eff)? {
                issues.push("chamber decomposition support differs from eff".into());
            }
        }
        Ok(issues)
    }
}

fn unit(lattice: &Arc<Lattice>, i: usize) -> ClassVector {
    let mut coords = vec![Rational::zero(); lattice.rank()];
    coords[i] = Rational::one();
    ClassVector {
        lattice: lattice.clone(),
        coords,
    }
}

fn check_cone_rank(what: &str, expected: usize, c: &Cone) -> Result<(), ModelError> {
    if c.ambient_dim() != expected {
        return Err(ModelError::Rank {
            what: what.to_string(),
            expected,
            found: c.ambient_dim(),
        });
    }
    Ok(())
}

/// A linear map between lattices, `x ↦ M x` with `M` of shape
/// target rank × source rank. Used for pullbacks `i*: N¹(X) → N¹(Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    source: Arc<Lattice>,
    target: Arc<Lattice>,
    matrix: RatMatrix,
}

impl LatticeMap {
    pub fn new(
        source: Arc<Lattice>,
        target: Arc<Lattice>,
        matrix: RatMatrix,
    ) -> Result<Self, ModelError> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(ModelError::MapShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: target.rank(),
                expected_cols: source.rank(),
            });
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    /// Sends each source basis vector to the target basis vector with the
    /// same label; unmatched labels map to zero. When no label is shared and
    /// the ranks agree, basis vectors are matched by position instead.
    pub fn identity_on_shared_labels(source: Arc<Lattice>, target: Arc<Lattice>) -> Self {
        let (n, m) = (target.rank(), source.rank());
        let shared = source.basis().iter().any(|l| target.index_of(l).is_some());
        let mut entries = vec![Rational::zero(); n * m];
        for (j, label) in source.basis().iter().enumerate() {
            let i = if shared {
                target.index_of(label)
            } else if n == m {
                Some(j)
            } else {
                None
            };
            if let Some(i) = i {
                entries[i * m + j] = Rational::one();
            }
        }
        let matrix = RatMatrix::new(n, m, entries).expect("shape matches ranks");
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn source(&self) -> &Arc<Lattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Lattice> {
        &self.target
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &ClassVector) -> Result<ClassVector, ModelError> {
        same_lattice(&self.source, &x.lattice)?;
        Ok(ClassVector {
            lattice: self.target.clone(),
            coords: self.matrix.mul_vec(&x.coords)?,
        })
    }

    /// Image of a cone living in the source lattice.
    pub fn apply_cone(&self, c: &Cone) -> Result<Cone, ModelError> {
        Ok(c.image(&self.matrix)?)
    }

    /// Square and invertible over ℚ.
    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_square() && rank(&self.matrix) == self.matrix.rows()
    }

    /// Integer matrix with determinant ±1.
    pub fn is_integral_isomorphism(&self) -> bool {
        self.matrix.is_integral() && self.matrix.determinant().is_some_and(|d| d.abs().is_one())
    }

    pub fn inverse(&self) -> Option<LatticeMap> {
        Some(LatticeMap {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: self.matrix.inverse()?,
        })
    }
}
