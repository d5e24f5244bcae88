//! Lefschetz divisorial equivalence and birational twins for an embedded pair.
//!
//! Cones are compared after pulling back generators; chambers are matched by
//! cone equality, never by label.

use std::fmt;

use serde::Serialize;

use crate::cone::Cone;
use crate::lattice::{LatticeMap, ModelError};
use crate::zoo::TwinPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-missing-data")]
    Skipped,
}

impl CheckStatus {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Skipped => "skipped-missing-data",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    DivisoriallyEquivalent,
    BirationalTwins,
    Partial,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::DivisoriallyEquivalent => "divisorially_equivalent",
            Self::BirationalTwins => "birational_twins",
            Self::Partial => "partial",
            Self::Fail => "fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An ambient chamber and the sub chamber its pullback equals, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberMatch {
    pub ambient: String,
    pub sub: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct McdDetail {
    pub matches: Vec<ChamberMatch>,
    pub unmatched_sub: Vec<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub ambient: String,
    pub sub: String,
    pub map_is_isomorphism: bool,
    pub map_is_integral_isomorphism: bool,
    pub eff_match: CheckStatus,
    pub mov_match: CheckStatus,
    pub nef_match: CheckStatus,
    pub mcd_match: CheckStatus,
    pub mcd_detail: McdDetail,
    /// The Mori dream space hypotheses cannot be checked from lattice data.
    pub mori_dream_space: &'static str,
    pub verdict: Verdict,
}

impl EquivalenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ambient: {}", self.ambient)?;
        writeln!(f, "sub: {}", self.sub)?;
        writeln!(
            f,
            "pullback isomorphism over Q: {}",
            self.map_is_isomorphism
        )?;
        writeln!(
            f,
            "pullback isomorphism over Z: {}",
            self.map_is_integral_isomorphism
        )?;
        writeln!(f, "eff: {}", self.eff_match.as_str())?;
        writeln!(f, "mov: {}", self.mov_match.as_str())?;
        writeln!(f, "nef: {}", self.nef_match.as_str())?;
        writeln!(f, "mcd: {}", self.mcd_match.as_str())?;
        for m in &self.mcd_detail.matches {
            match &m.sub {
                Some(s) => writeln!(f, "  {} -> {}", m.ambient, s)?,
                None => writeln!(f, "  {} -> unmatched", m.ambient)?,
            }
        }
        for s in &self.mcd_detail.unmatched_sub {
            writeln!(f, "  unmatched in sub: {s}")?;
        }
        if let Some(note) = &self.mcd_detail.note {
            writeln!(f, "  {note}")?;
        }
        writeln!(f, "mori dream space: {}", self.mori_dream_space)?;
        write!(f, "verdict: {}", self.verdict)
    }
}

fn cone_match(
    map: &LatticeMap,
    ambient: Option<&Cone>,
    sub: Option<&Cone>,
) -> Result<CheckStatus, ModelError> {
    match (ambient, sub) {
        (Some(a), Some(s)) => Ok(CheckStatus::from_bool(map.apply_cone(a)?.equals(s)?)),
        _ => Ok(CheckStatus::Skipped),
    }
}

/// Tests `i*Eff(X) = Eff(Y)`, `i*Mov(X) = Mov(Y)` and `i*Nef(X) = Nef(Y)`.
/// A cone missing on either side is skipped, which caps the verdict at
/// partial. A pullback that is not invertible fails outright.
pub fn check_divisorial_equivalence(pair: &TwinPair) -> Result<EquivalenceReport, ModelError> {
    let (a, s, map) = (&pair.ambient, &pair.sub, &pair.pullback);
    let map_is_isomorphism = map.is_isomorphism();
    let eff_match = cone_match(map, Some(a.eff()), Some(s.eff()))?;
    let mov_match = cone_match(map, a.mov(), s.mov())?;
    let nef_match = cone_match(map, Some(a.nef()), Some(s.nef()))?;
    let checks = [eff_match, mov_match, nef_match];
    let verdict = if !map_is_isomorphism || checks.contains(&CheckStatus::Fail) {
        Verdict::Fail
    } else if checks.contains(&CheckStatus::Skipped) {
        Verdict::Partial
    } else {
        Verdict::DivisoriallyEquivalent
    };
    Ok(EquivalenceReport {
        ambient: a.name().to_string(),
        sub: s.name().to_string(),
        map_is_isomorphism,
        map_is_integral_isomorphism: map.is_integral_isomorphism(),
        eff_match,
        mov_match,
        nef_match,
        mcd_match: CheckStatus::Skipped,
        mcd_detail: McdDetail {
            note: Some("chamber decompositions are compared only by the twin check".into()),
            ..McdDetail::default()
        },
        mori_dream_space: "assumed",
        verdict,
    })
}

/// Divisorial equivalence plus a bijection between chambers under which the
/// pullback of each ambient chamber equals its partner.
pub fn check_birational_twins(pair: &TwinPair) -> Result<EquivalenceReport, ModelError> {
    let fan_a = pair
        .ambient
        .mcd()
        .ok_or(ModelError::NoChamberDecomposition)?;
    let fan_s = pair.sub.mcd().ok_or(ModelError::NoChamberDecomposition)?;
    let mut report = check_divisorial_equivalence(pair)?;

    let mut used = vec![false; fan_s.chambers().len()];
    let mut matches = Vec::new();
    for c in fan_a.chambers() {
        let image = pair.pullback.apply_cone(&c.cone)?;
        let mut partner = None;
        for (j, d) in fan_s.chambers().iter().enumerate() {
            if !used[j] && image.equals(&d.cone)? {
                used[j] = true;
                partner = Some(d.label.clone());
                break;
            }
        }
        matches.push(ChamberMatch {
            ambient: c.label.clone(),
            sub: partner,
        });
    }
    let unmatched_sub: Vec<String> = fan_s
        .chambers()
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(d, _)| d.label.clone())
        .collect();
    let bijective = unmatched_sub.is_empty() && matches.iter().all(|m| m.sub.is_some());
    report.mcd_match = CheckStatus::from_bool(bijective);
    report.mcd_detail = McdDetail {
        matches,
        unmatched_sub,
        note: None,
    };
    report.verdict = match report.verdict {
        Verdict::Fail => Verdict::Fail,
        _ if !bijective => Verdict::Fail,
        Verdict::Partial => Verdict::Partial,
        _ => Verdict::BirationalTwins,
    };
    Ok(report)
}
