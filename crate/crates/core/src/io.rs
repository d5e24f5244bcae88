//! JSON model files.
//!
//! Rationals are written as `"p/q"` strings (integers without a
//! denominator). Cones are written with generators, lineality and facets;
//! on input only the generators and lineality are read and everything else
//! is recomputed. Output is pretty-printed with a trailing newline, so an
//! export of an import of an export is byte-identical to the first export.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{format_rational, parse_rational, to_rational, Int, RatMatrix, Rational};
use crate::chamber::{Chamber, ChamberFan};
use crate::cone::Cone;
use crate::lattice::{Lattice, ModelError, VarietyModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("bad number {0:?}")]
    Number(String),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

/// A number in a file: a `"p/q"` string or a plain JSON integer.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Text(String),
    Int(i64),
}

impl Num {
    fn value(&self) -> Result<Rational, IoError> {
        match self {
            Num::Text(s) => parse_rational(s).map_err(|_| IoError::Number(s.clone())),
            Num::Int(i) => Ok(Rational::from_integer(Int::from(*i))),
        }
    }
}

fn nums(v: &[Rational]) -> Vec<Num> {
    v.iter().map(|x| Num::Text(format_rational(x))).collect()
}

fn int_nums(v: &[Int]) -> Vec<Num> {
    nums(&to_rational(v))
}

fn values(v: &[Num]) -> Result<Vec<Rational>, IoError> {
    v.iter().map(Num::value).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeFile {
    pub generators: Vec<Vec<Num>>,
    #[serde(default)]
    pub lineality: Vec<Vec<Num>>,
    #[serde(default)]
    pub facets: Vec<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equations: Vec<Vec<Num>>,
}

impl ConeFile {
    pub fn from_cone(c: &Cone) -> Self {
        let conv = |rows: &[Vec<Int>]| rows.iter().map(|r| int_nums(r)).collect();
        Self {
            generators: conv(c.generators()),
            lineality: conv(c.lineality()),
            facets: conv(c.facets()),
            equations: conv(c.equations()),
        }
    }

    /// Builds the cone from generators and lineality. `dim` is required
    /// when both lists are empty.
    pub fn to_cone(&self, dim: Option<usize>) -> Result<Cone, IoError> {
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(values(g)?);
        }
        for l in &self.lineality {
            let v = values(l)?;
            gens.push(v.iter().map(|x| -x).collect());
            gens.push(v);
        }
        let dim = match (dim, gens.first()) {
            (Some(d), _) => d,
            (None, Some(g)) => g.len(),
            (None, None) => {
                return Err(IoError::Schema(
                    "cannot infer the dimension of an empty cone".into(),
                ))
            }
        };
        Cone::from_generators(dim, &gens).map_err(|e| IoError::Model(e.into()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConesFile {
    pub eff: ConeFile,
    pub nef: ConeFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mov: Option<ConeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ne: Option<ConeFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChamberFile {
    pub label: String,
    pub generators: Vec<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McdFile {
    pub chambers: Vec<ChamberFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub divisor_basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve_basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<Vec<Num>>>,
    #[serde(default)]
    pub classes: BTreeMap<String, Vec<Num>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub curve_classes: BTreeMap<String, Vec<Num>>,
    pub cones: ConesFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mcd: Option<McdFile>,
}

impl ModelFile {
    pub fn from_model(m: &VarietyModel) -> Self {
        let mut classes = BTreeMap::new();
        let mut curve_classes = BTreeMap::new();
        for (label, v) in m.classes() {
            if v.lattice() == m.divisor_lattice() {
                classes.insert(label.clone(), nums(v.coords()));
            } else {
                curve_classes.insert(label.clone(), nums(v.coords()));
            }
        }
        let pairing = m
            .pairing()
            .map(|p| p.matrix().row_vecs().iter().map(|r| nums(r)).collect());
        let mcd = m.mcd().map(|fan| McdFile {
            chambers: fan
                .chambers()
                .iter()
                .map(|c| ChamberFile {
                    label: c.label.clone(),
                    generators: c.cone.generators().iter().map(|g| int_nums(g)).collect(),
                    description: c.description.clone(),
                })
                .collect(),
        });
        Self {
            name: m.name().to_string(),
            divisor_basis: m.divisor_lattice().basis().to_vec(),
            curve_basis: m.curve_lattice().map(|l| l.basis().to_vec()),
            pairing,
            classes,
            curve_classes,
            cones: ConesFile {
                eff: ConeFile::from_cone(m.eff()),
                nef: ConeFile::from_cone(m.nef()),
                mov: m.mov().map(ConeFile::from_cone),
                ne: m.ne().map(ConeFile::from_cone),
            },
            mcd,
        }
    }

    pub fn to_model(&self) -> Result<VarietyModel, IoError> {
        let div = Lattice::from_labels(format!("N1({})", self.name), self.divisor_basis.clone())?;
        let r = div.rank();
        let eff = self.cones.eff.to_cone(Some(r))?;
        let nef = self.cones.nef.to_cone(Some(r))?;
        let mut m = VarietyModel::new(self.name.clone(), div, eff.clone(), nef)?;

        match (&self.curve_basis, &self.pairing) {
            (Some(basis), Some(rows)) => {
                let curves = Lattice::from_labels(format!("N_1({})", self.name), basis.clone())?;
                let rows: Vec<Vec<Rational>> =
                    rows.iter().map(|r| values(r)).collect::<Result<_, _>>()?;
                if rows.len() != r || rows.iter().any(|row| row.len() != curves.rank()) {
                    return Err(ModelError::BadPairing { rank: r }.into());
                }
                let matrix =
                    RatMatrix::from_rows(curves.rank(), &rows).map_err(ModelError::from)?;
                let ne = match &self.cones.ne {
                    Some(c) => Some(c.to_cone(Some(curves.rank()))?),
                    None => None,
                };
                m = m.with_curves(curves, matrix, ne)?;
            }
            (None, None) => {
                if self.cones.ne.is_some() {
                    return Err(IoError::Schema(
                        "cone \"ne\" needs \"curve_basis\" and \"pairing\"".into(),
                    ));
                }
            }
            _ => {
                return Err(IoError::Schema(
                    "\"curve_basis\" and \"pairing\" must be given together".into(),
                ))
            }
        }
        if let Some(mov) = &self.cones.mov {
            m = m.with_mov(mov.to_cone(Some(r))?)?;
        }
        for (label, coords) in &self.classes {
            m = m.with_class(label, values(coords)?)?;
        }
        for (label, coords) in &self.curve_classes {
            m = m.with_curve_class(label, values(coords)?)?;
        }
        if let Some(mcd) = &self.mcd {
            let mut chambers = Vec::with_capacity(mcd.chambers.len());
            for c in &mcd.chambers {
                let gens: Vec<Vec<Rational>> = c
                    .generators
                    .iter()
                    .map(|g| values(g))
                    .collect::<Result<_, _>>()?;
                let cone = Cone::from_generators(r, &gens).map_err(ModelError::from)?;
                let mut chamber = Chamber::new(c.label.clone(), cone);
                chamber.description = c.description.clone();
                chambers.push(chamber);
            }
            let fan = ChamberFan::new(eff, chambers).map_err(ModelError::from)?;
            m = m.with_mcd(fan)?;
        }
        Ok(m)
    }
}

pub fn export_model(m: &VarietyModel) -> String {
    serde_json::to_string_pretty(&ModelFile::from_model(m)).expect("model serializes") + "\n"
}

pub fn import_model(text: &str) -> Result<VarietyModel, IoError> {
    let file: ModelFile = serde_json::from_str(text)?;
    file.to_model()
}

/// A cone file: either a cone object or a bare list of generators.
pub fn import_cone(text: &str) -> Result<Cone, IoError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Either {
        Object(ConeFile),
        List(Vec<Vec<Num>>),
    }
    match serde_json::from_str(text)? {
        Either::Object(c) => c.to_cone(None),
        Either::List(generators) => ConeFile {
            generators,
            lineality: vec![],
            facets: vec![],
            equations: vec![],
        }
        .to_cone(None),
    }
}

pub fn export_cone(c: &Cone) -> String {
    serde_json::to_string_pretty(&ConeFile::from_cone(c)).expect("cone serializes") + "\n"
}
