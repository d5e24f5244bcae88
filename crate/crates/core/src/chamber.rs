//! Wall-and-chamber decompositions of a cone.
//!
//! A [`ChamberFan`] stores only its maximal chambers. [`verify_fan`] certifies
//! that they subdivide the support: containment, disjoint interiors, and a
//! wall condition (every chamber facet is either on the support boundary or
//! shared with exactly one neighbour). With a connected adjacency graph the
//! last two imply coverage.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::arith::{Int, Rational};
use crate::cone::{Cone, ConeError, Membership, MembershipStatus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("fan has no chambers")]
    Empty,
    #[error("fan failed verification: {0}")]
    Invalid(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub label: String,
    pub cone: Cone,
    pub description: Option<String>,
}

impl Chamber {
    pub fn new(label: impl Into<String>, cone: Cone) -> Self {
        Self {
            label: label.into(),
            cone,
            description: None,
        }
    }

    pub fn described(mut self, description: impl Into<String>) -> Self {
        self.description = Some(description.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberFan {
    support: Cone,
    chambers: Vec<Chamber>,
}

/// One chamber containing a queried point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub label: String,
    pub membership: Membership,
}

/// A codimension-one cone shared by two chambers. Labels are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub cone: Cone,
    pub chambers: (String, String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub details: Vec<String>,
}

impl CheckOutcome {
    fn from_details(details: Vec<String>) -> Self {
        Self {
            passed: details.is_empty(),
            details,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanReport {
    pub containment: CheckOutcome,
    pub disjointness: CheckOutcome,
    pub walls: CheckOutcome,
    pub coverage: CheckOutcome,
}

impl FanReport {
    pub fn passed(&self) -> bool {
        self.containment.passed
            && self.disjointness.passed
            && self.walls.passed
            && self.coverage.passed
    }

    pub fn criteria(&self) -> [(&'static str, &CheckOutcome); 4] {
        [
            ("containment", &self.containment),
            ("disjoint interiors", &self.disjointness),
            ("wall condition", &self.walls),
            ("coverage", &self.coverage),
        ]
    }
}

impl fmt::Display for FanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, c) in self.criteria() {
            writeln!(f, "{name}: {}", if c.passed { "pass" } else { "fail" })?;
            for d in &c.details {
                writeln!(f, "  {d}")?;
            }
        }
        Ok(())
    }
}

impl ChamberFan {
    pub fn new(support: Cone, chambers: Vec<Chamber>) -> Result<Self, FanError> {
        for c in &chambers {
            if c.cone.ambient_dim() != support.ambient_dim() {
                return Err(ConeError::DimensionMismatch {
                    expected: support.ambient_dim(),
                    found: c.cone.ambient_dim(),
                }
                .into());
            }
        }
        Ok(Self { support, chambers })
    }

    pub fn support(&self) -> &Cone {
        &self.support
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn chamber(&self, label: &str) -> Option<&Chamber> {
        self.chambers.iter().find(|c| c.label == label)
    }

    /// Every chamber containing `x`, in chamber order, with its status.
    /// Empty when `x` is outside the support.
    pub fn locate(&self, x: &[Rational]) -> Result<Vec<Located>, FanError> {
        let mut out = Vec::new();
        for c in &self.chambers {
            let m = c.cone.contains(x)?;
            if m.is_member() {
                out.push(Located {
                    label: c.label.clone(),
                    membership: m,
                });
            }
        }
        Ok(out)
    }

    /// Internal walls with the two chambers each separates; errors when the
    /// fan does not verify.
    pub fn walls(&self) -> Result<Vec<Wall>, FanError> {
        let report = verify_fan(self)?;
        if !report.passed() {
            let failed: Vec<&str> = report
                .criteria()
                .iter()
                .filter(|(_, c)| !c.passed)
                .map(|(n, _)| *n)
                .collect();
            return Err(FanError::Invalid(failed.join(", ")));
        }
        let wall_dim = self.support.dimension() - 1;
        let mut walls = Vec::new();
        for (i, a) in self.chambers.iter().enumerate() {
            for b in &self.chambers[i + 1..] {
                let meet = a.cone.intersect(&b.cone)?;
                if meet.dimension() == wall_dim {
                    let (x, y) = if a.label <= b.label {
                        (a.label.clone(), b.label.clone())
                    } else {
                        (b.label.clone(), a.label.clone())
                    };
                    walls.push(Wall {
                        cone: meet,
                        chambers: (x, y),
                    });
                }
            }
        }
        walls.sort_by(|p, q| {
            (p.cone.generators(), &p.chambers).cmp(&(q.cone.generators(), &q.chambers))
        });
        Ok(walls)
    }
}

fn neg(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

/// Checks that the chambers subdivide the support.
pub fn verify_fan(fan: &ChamberFan) -> Result<FanReport, FanError> {
    if fan.chambers.is_empty() {
        return Err(FanError::Empty);
    }
    let support = &fan.support;
    let chambers = &fan.chambers;

    // (a) containment, pointedness and full dimension within the support span
    let mut issues = Vec::new();
    for c in chambers {
        if !support.includes(&c.cone)? {
            issues.push(format!(
                "chamber {} is not contained in the support",
                c.label
            ));
        }
        if !c.cone.is_pointed() {
            issues.push(format!("chamber {} is not pointed", c.label));
        }
        if c.cone.dimension() != support.dimension() {
            issues.push(format!(
                "chamber {} has dimension {}, support has {}",
                c.label,
                c.cone.dimension(),
                support.dimension()
            ));
        }
    }
    let containment = CheckOutcome::from_details(issues);

    // (b) an interior point of each chamber avoids the interior of the others
    let mut issues = Vec::new();
    for (i, a) in chambers.iter().enumerate() {
        let p = a.cone.interior_point();
        for (j, b) in chambers.iter().enumerate() {
            if i != j && b.cone.contains(&p)?.status == MembershipStatus::Interior {
                issues.push(format!(
                    "interior point of {} lies inside {}",
                    a.label, b.label
                ));
            }
        }
    }
    let disjointness = CheckOutcome::from_details(issues);

    // (c) wall matching
    let mut issues = Vec::new();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, a) in chambers.iter().enumerate() {
        for (k, normal) in a.cone.facets().iter().enumerate() {
            let face = a.cone.facet_face(k);
            let on_boundary = support.facets().iter().any(|s| {
                face.generators()
                    .iter()
                    .all(|g| crate::arith::dot_int(s, g) == Int::from(0))
            });
            if on_boundary {
                continue;
            }
            let flipped = neg(normal);
            let mut partners = Vec::new();
            for (j, b) in chambers.iter().enumerate() {
                if j == i {
                    continue;
                }
                if let Some(kb) = b.cone.facets().iter().position(|f| *f == flipped) {
                    if b.cone.facet_face(kb) == face {
                        partners.push(j);
                    }
                }
            }
            if partners.len() == 1 {
                edges.insert((i.min(partners[0]), i.max(partners[0])));
            } else {
                let rays: Vec<String> = face
                    .generators()
                    .iter()
                    .map(|g| crate::cone::fmt_int_vec(g))
                    .collect();
                issues.push(format!(
                    "facet <{}> of chamber {} is shared by {} other chambers",
                    rays.join(","),
                    a.label,
                    partners.len()
                ));
            }
        }
    }
    let walls = CheckOutcome::from_details(issues);

    // (d) coverage: (a)-(c) plus a connected adjacency graph
    let mut issues = Vec::new();
    let mut seen = vec![false; chambers.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(x, y) in &edges {
            let w = if x == v {
                y
            } else if y == v {
                x
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    for (c, s) in chambers.iter().zip(&seen) {
        if !s {
            issues.push(format!(
                "chamber {} is not connected through walls",
                c.label
            ));
        }
    }
    if !(containment.passed && disjointness.passed && walls.passed) {
        issues.push("coverage not certified: an earlier criterion failed".into());
    }
    let coverage = CheckOutcome::from_details(issues);

    Ok(FanReport {
        containment,
        disjointness,
        walls,
        coverage,
    })
}
