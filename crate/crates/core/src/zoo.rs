//! Built-in models: projective space, the blow-up of ℙⁿ at two points, the
//! spaces of complete collineations and complete quadrics of ℙ³, and the
//! embedded pairs relating them.

use thiserror::Error;

use crate::arith::{rat_vec, RatMatrix};
use crate::chamber::{Chamber, ChamberFan};
use crate::cone::Cone;
use crate::lattice::{Lattice, LatticeMap, ModelError, VarietyModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZooError {
    #[error("{0}")]
    Precondition(String),
    #[error("unknown model {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// An embedding `i: Y ↪ X` recorded by the two models and the pullback on
/// divisor classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPair {
    pub ambient: VarietyModel,
    pub sub: VarietyModel,
    pub pullback: LatticeMap,
}

impl TwinPair {
    pub fn new(
        ambient: VarietyModel,
        sub: VarietyModel,
        pullback: LatticeMap,
    ) -> Result<Self, ModelError> {
        for (expected, found) in [
            (ambient.divisor_lattice(), pullback.source()),
            (sub.divisor_lattice(), pullback.target()),
        ] {
            if expected != found {
                return Err(ModelError::LatticeMismatch {
                    expected: expected.name().to_string(),
                    found: found.name().to_string(),
                });
            }
        }
        Ok(Self {
            ambient,
            sub,
            pullback,
        })
    }

    /// Pair with the default map: identity on shared basis labels.
    pub fn with_identity(ambient: VarietyModel, sub: VarietyModel) -> Result<Self, ModelError> {
        let map = LatticeMap::identity_on_shared_labels(
            ambient.divisor_lattice().clone(),
            sub.divisor_lattice().clone(),
        );
        Self::new(ambient, sub, map)
    }

    /// The pair read in the other direction, when the pullback is invertible.
    pub fn inverse(&self) -> Option<Self> {
        Some(Self {
            ambient: self.sub.clone(),
            sub: self.ambient.clone(),
            pullback: self.pullback.inverse()?,
        })
    }
}

fn cone(dim: usize, gens: &[&[i64]]) -> Cone {
    Cone::from_i64(dim, gens).expect("built-in generators have the right length")
}

pub const MODEL_NAMES: [&str; 6] = [
    "p1",
    "p3",
    "blowup-p2-2pts",
    "blowup-p3-2pts",
    "collineations-3",
    "quadrics-3",
];

/// Looks up a built-in by name: `p<n>`, `blowup-p<n>-2pts`,
/// `collineations-3`, `quadrics-3`.
pub fn by_name(name: &str) -> Result<VarietyModel, ZooError> {
    let unknown = || ZooError::Unknown(name.to_string());
    match name {
        "collineations-3" => complete_collineations_3(),
        "quadrics-3" => complete_quadrics_3(),
        _ => {
            if let Some(n) = name
                .strip_prefix("blowup-p")
                .and_then(|s| s.strip_suffix("-2pts"))
            {
                let n = n.parse().map_err(|_| unknown())?;
                blowup_pn_two_points(n)
            } else if let Some(n) = name.strip_prefix('p') {
                let n = n.parse().map_err(|_| unknown())?;
                projective_space(n)
            } else {
                Err(unknown())
            }
        }
    }
}

/// ℙⁿ: Picard rank one, every cone is the ray spanned by the hyperplane class.
pub fn projective_space(n: usize) -> Result<VarietyModel, ZooError> {
    if n == 0 {
        return Err(ZooError::Precondition(
            "projective space needs n >= 1".into(),
        ));
    }
    let name = format!("p{n}");
    let div = Lattice::new(format!("N1({name})"), &["H"])?;
    let curves = Lattice::new(format!("N_1({name})"), &["h"])?;
    let ray = cone(1, &[&[1]]);
    let fan = ChamberFan::new(
        ray.clone(),
        vec![Chamber::new(format!("P^{n}"), ray.clone())],
    )
    .map_err(ModelError::from)?;
    let m = VarietyModel::new(name, div, ray.clone(), ray.clone())?
        .with_curves(curves, RatMatrix::identity(1), Some(ray.clone()))?
        .with_mov(ray)?
        .with_mcd(fan)?;
    Ok(m)
}

const H: &[i64] = &[1, 0, 0];
const E_P: &[i64] = &[0, 1, 0];
const E_Q: &[i64] = &[0, 0, 1];
const H_P: &[i64] = &[1, -1, 0];
const H_Q: &[i64] = &[1, 0, -1];
const H_PQ: &[i64] = &[1, -1, -1];

/// The blow-up of ℙⁿ at two points p and q. Movable cone and chamber
/// decomposition are recorded only for `n >= 3`.
pub fn blowup_pn_two_points(n: usize) -> Result<VarietyModel, ZooError> {
    if n < 2 {
        return Err(ZooError::Precondition(
            "the blow-up of P^n at two points needs n >= 2".into(),
        ));
    }
    let name = format!("blowup-p{n}-2pts");
    let div = Lattice::new(format!("N1({name})"), &["H", "E_p", "E_q"])?;
    let curves = Lattice::new(format!("N_1({name})"), &["h", "e_p", "e_q"])?;
    let eff = cone(3, &[E_P, E_Q, H_PQ]);
    let nef = cone(3, &[H, H_P, H_Q]);
    let ne = cone(3, &[&[0, 1, 0], &[0, 0, 1], &[1, -1, -1]]);
    let pairing = RatMatrix::diagonal(&rat_vec(&[1, -1, -1]));

    let mut m = VarietyModel::new(name, div, eff.clone(), nef.clone())?
        .with_curves(curves, pairing, Some(ne))?
        .with_class("H_p", rat_vec(H_P))?
        .with_class("H_q", rat_vec(H_Q))?
        .with_class("H_{p,q}", rat_vec(H_PQ))?
        .with_curve_class("L", rat_vec(&[1, -1, -1]))?;
    if n >= 3 {
        let chambers = vec![
            Chamber::new("X", nef).described("the blow-up itself"),
            Chamber::new("X'", cone(3, &[H_P, H_Q, H_PQ])).described(format!(
                "small modification, quadric bundle over P^{}",
                n - 2
            )),
            Chamber::new(format!("Bl_p P^{n}"), cone(3, &[H, H_P, E_Q]))
                .described("contraction of E_q"),
            Chamber::new(format!("Bl_q P^{n}"), cone(3, &[H, H_Q, E_P]))
                .described("contraction of E_p"),
            Chamber::new(format!("P^{n}"), cone(3, &[H, E_P, E_Q]))
                .described("contraction of E_p and E_q"),
        ];
        m = m
            .with_mov(cone(3, &[H, H_P, H_Q, H_PQ]))?
            .with_mcd(ChamberFan::new(eff, chambers).map_err(ModelError::from)?)?;
    }
    Ok(m)
}

/// The strict transform of ℙᵏ through p and q inside the blow-up of ℙⁿ.
pub fn linear_section_twin(n: usize, k: usize) -> Result<TwinPair, ZooError> {
    if k <= 1 || k >= n {
        return Err(ZooError::Precondition(format!(
            "a linear section pair needs n > k > 1, got n={n}, k={k}"
        )));
    }
    let ambient = blowup_pn_two_points(n)?;
    let sub = blowup_pn_two_points(k)?;
    let map = LatticeMap::new(
        ambient.divisor_lattice().clone(),
        sub.divisor_lattice().clone(),
        RatMatrix::identity(3),
    )?;
    Ok(TwinPair::new(ambient, sub, map)?)
}

// Classes in the basis (H, E_1, E_2).
const E_1: &[i64] = &[0, 1, 0];
const E_2: &[i64] = &[0, 0, 1];
const E_3: &[i64] = &[4, -3, -2];
const D_2: &[i64] = &[2, -1, 0];
const D_3: &[i64] = &[3, -2, -1];
const D_M: &[i64] = &[6, -3, -2];

/// Chambers of the cross-section of the effective cone, one triangle per
/// region cut out by the drawn segments. H lies on the segment E_1 D_2,
/// D_3 on E_3 D_2, and D_M is where H E_3 meets D_3 E_1.
const SEGRE_CHAMBERS: [[&str; 3]; 9] = [
    ["H", "D_2", "D_3"],
    ["H", "D_3", "D_M"],
    ["E_1", "H", "D_M"],
    ["E_3", "D_3", "D_M"],
    ["E_1", "E_3", "D_M"],
    ["E_1", "E_2", "H"],
    ["E_2", "H", "D_2"],
    ["E_2", "D_2", "D_3"],
    ["E_2", "E_3", "D_3"],
];

fn segre_class(label: &str) -> &'static [i64] {
    match label {
        "H" => H,
        "E_1" => E_1,
        "E_2" => E_2,
        "E_3" => E_3,
        "D_2" => D_2,
        "D_3" => D_3,
        "D_M" => D_M,
        _ => unreachable!("fixed chamber table"),
    }
}

fn complete_space(name: &str, suffix: &str) -> Result<VarietyModel, ZooError> {
    let l = |s: &str| format!("{s}{suffix}");
    let basis = [l("H"), l("E_1"), l("E_2")];
    let div = Lattice::from_labels(format!("N1({name})"), basis.to_vec())?;
    let eff = cone(3, &[E_1, E_2, E_3]);
    let nef = cone(3, &[H, D_2, D_3]);
    let mov = cone(3, &[H, D_2, D_3, D_M]);
    let chambers = SEGRE_CHAMBERS
        .iter()
        .map(|labels| {
            let gens: Vec<&[i64]> = labels.iter().map(|s| segre_class(s)).collect();
            let names: Vec<String> = labels.iter().map(|s| l(s)).collect();
            Chamber::new(format!("<{}>", names.join(",")), cone(3, &gens))
        })
        .collect();
    let mut m = VarietyModel::new(name, div, eff.clone(), nef)?
        .with_mov(mov)?
        .with_mcd(ChamberFan::new(eff, chambers).map_err(ModelError::from)?)?;
    for c in ["D_2", "D_3", "D_M", "E_3"] {
        m = m.with_class(&l(c), rat_vec(segre_class(c)))?;
    }
    Ok(m)
}

/// Complete collineations of ℙ³, basis (H, E_1, E_2). No curve data.
pub fn complete_collineations_3() -> Result<VarietyModel, ZooError> {
    complete_space("collineations-3", "")
}

/// Complete quadrics of ℙ³, basis (H^+, E_1^+, E_2^+). No curve data.
pub fn complete_quadrics_3() -> Result<VarietyModel, ZooError> {
    complete_space("quadrics-3", "^+")
}

/// Quadrics inside collineations; the pullback replaces each basis class by
/// its `^+` counterpart.
pub fn collineations_quadrics_pair() -> Result<TwinPair, ZooError> {
    let ambient = complete_collineations_3()?;
    let sub = complete_quadrics_3()?;
    let map = LatticeMap::new(
        ambient.divisor_lattice().clone(),
        sub.divisor_lattice().clone(),
        RatMatrix::identity(3),
    )?;
    Ok(TwinPair::new(ambient, sub, map)?)
}

/// The blow-up of ℙ³ at two points against a copy whose nef cone is
/// replaced by ⟨H, H_p⟩: the pullback preserves Eff but not Nef.
pub fn nef_mismatch_pair() -> Result<TwinPair, ZooError> {
    let ambient = blowup_pn_two_points(3)?;
    let sub = ambient
        .clone()
        .with_name("blowup-p3-2pts-bad-nef")
        .with_nef(cone(3, &[H, H_P]))?;
    Ok(TwinPair::with_identity(ambient, sub)?)
}

/// The blow-up of ℙ³ at two points against a copy whose chamber X' is cut
/// in two along the ray H_p + H_q + H_{p,q}.
pub fn subdivided_chamber_pair() -> Result<TwinPair, ZooError> {
    let ambient = blowup_pn_two_points(3)?;
    let fan = ambient
        .mcd()
        .expect("n = 3 records a chamber decomposition");
    let mid: &[i64] = &[3, -2, -2];
    let mut chambers: Vec<Chamber> = fan
        .chambers()
        .iter()
        .filter(|c| c.label != "X'")
        .cloned()
        .collect();
    chambers.push(Chamber::new("X'_a", cone(3, &[H_P, mid, H_PQ])));
    chambers.push(Chamber::new("X'_b", cone(3, &[mid, H_Q, H_PQ])));
    chambers.push(Chamber::new("X'_c", cone(3, &[H_P, H_Q, mid])));
    let sub = ambient
        .clone()
        .with_name("blowup-p3-2pts-subdivided")
        .with_mcd(ChamberFan::new(fan.support().clone(), chambers).map_err(ModelError::from)?)?;
    Ok(TwinPair::with_identity(ambient, sub)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat};
    use crate::chamber::verify_fan;
    use crate::lattice::ConeKind;

    #[test]
    fn every_builtin_validates() {
        for name in MODEL_NAMES {
            let m = by_name(name).unwrap();
            assert_eq!(m.name(), name);
            assert!(m.validate().unwrap().is_empty(), "{name}");
            if let Some(fan) = m.mcd() {
                assert!(verify_fan(fan).unwrap().passed(), "{name}");
            }
        }
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(by_name("p0"), Err(ZooError::Precondition(_))));
        assert!(matches!(
            by_name("blowup-p1-2pts"),
            Err(ZooError::Precondition(_))
        ));
        assert!(matches!(by_name("px"), Err(ZooError::Unknown(_))));
        assert!(matches!(by_name("grassmannian"), Err(ZooError::Unknown(_))));
    }

    #[test]
    fn projective_space_is_rank_one() {
        let m = projective_space(3).unwrap();
        for k in ConeKind::ALL {
            assert_eq!(m.cone(k).unwrap().generators(), [int_vec(&[1])]);
        }
        let (d, c) = (m.lookup("H").unwrap(), m.lookup("h").unwrap());
        assert_eq!(m.intersection_number(&d, &c).unwrap(), rat(1));
        assert_eq!(m.mcd().unwrap().chambers().len(), 1);
    }

    #[test]
    fn surface_case_omits_movable_data() {
        let m = blowup_pn_two_points(2).unwrap();
        assert!(m.mov().is_none() && m.mcd().is_none());
        assert!(m.validate().unwrap().is_empty());
    }

    #[test]
    fn recorded_data_is_independent_of_n() {
        let a = blowup_pn_two_points(3).unwrap();
        let b = blowup_pn_two_points(7).unwrap();
        for k in ConeKind::ALL {
            assert_eq!(a.cone(k), b.cone(k));
        }
        assert_eq!(a.pairing().unwrap().matrix(), b.pairing().unwrap().matrix());
    }

    #[test]
    fn linear_section_preconditions() {
        assert!(linear_section_twin(4, 3).is_ok());
        assert!(linear_section_twin(4, 1).is_err());
        assert!(linear_section_twin(3, 3).is_err());
    }

    #[test]
    fn segre_classes() {
        let m = complete_collineations_3().unwrap();
        assert_eq!(
            m.class_of("3H - 2E_1 - E_2").unwrap().coords(),
            rat_vec(D_3)
        );
        assert_eq!(m.lookup("D_M").unwrap().coords(), rat_vec(&[6, -3, -2]));
        assert_eq!(
            m.eff().extremal_rays().unwrap(),
            vec![
                int_vec(&[0, 0, 1]),
                int_vec(&[0, 1, 0]),
                int_vec(&[4, -3, -2])
            ]
        );
        let chambers = m.mcd().unwrap();
        let a = &chambers.chamber("<H,D_2,D_3>").unwrap().cone;
        let b = &chambers.chamber("<H,D_3,D_M>").unwrap().cone;
        assert!(m.mov().unwrap().equals(&a.join(b).unwrap()).unwrap());
        let q = complete_quadrics_3().unwrap();
        assert!(q.mcd().unwrap().chamber("<H^+,D_2^+,D_3^+>").is_some());
        assert_eq!(q.lookup("D_M^+").unwrap().coords(), rat_vec(D_M));
    }

    #[test]
    fn pairs_check_their_lattices() {
        let a = blowup_pn_two_points(3).unwrap();
        let b = complete_collineations_3().unwrap();
        let wrong = LatticeMap::identity_on_shared_labels(
            b.divisor_lattice().clone(),
            a.divisor_lattice().clone(),
        );
        assert!(TwinPair::new(a, b, wrong).is_err());
    }

    #[test]
    fn subdivided_fan_still_verifies() {
        let pair = subdivided_chamber_pair().unwrap();
        let fan = pair.sub.mcd().unwrap();
        assert_eq!(fan.chambers().len(), 7);
        assert!(verify_fan(fan).unwrap().passed());
    }
}
