//! SVG cross-sections of chamber decompositions on rank-3 lattices.
//!
//! Each ray `r` is drawn at `r / ⟨ℓ, r⟩` on the affine plane `⟨ℓ, x⟩ = 1`.
//! Coordinates stay exact until they are printed with two decimals.

use std::collections::BTreeSet;
use std::fmt::Write;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{dot, nullspace, rat, solve, to_rational, Int, RatMatrix, Rational};
use crate::lattice::VarietyModel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlotError {
    #[error("cross-sections are drawn for rank 3 lattices only, this one has rank {0}")]
    Rank(usize),
    #[error("model has no chamber decomposition")]
    NoChambers,
    #[error("no functional takes the value 1 on every ray of eff; pass a slice")]
    NoDefaultSlice,
    #[error("slice has {found} entries, expected {expected}")]
    SliceLength { expected: usize, found: usize },
    #[error("slice is not positive on ray {0}")]
    SliceMissesRay(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotSpec {
    /// The functional ℓ; `None` picks the one equal to 1 on each ray of eff.
    pub slice: Option<Vec<Rational>>,
    pub width: u32,
    pub height: u32,
}

impl Default for PlotSpec {
    fn default() -> Self {
        Self {
            slice: None,
            width: 480,
            height: 360,
        }
    }
}

const MARGIN: i64 = 40;

/// The functional with value 1 on every ray of `eff`, if there is one.
pub fn default_slice(model: &VarietyModel) -> Result<Vec<Rational>, PlotError> {
    let rays = model.eff().generators();
    let m = RatMatrix::from_rows(
        model.divisor_lattice().rank(),
        &rays.iter().map(|r| to_rational(r)).collect::<Vec<_>>(),
    )
    .map_err(|_| PlotError::NoDefaultSlice)?;
    solve(&m, &vec![Rational::one(); rays.len()]).ok_or(PlotError::NoDefaultSlice)
}

type Point = (Rational, Rational);

pub fn render_mcd(model: &VarietyModel, spec: &PlotSpec) -> Result<String, PlotError> {
    let rank = model.divisor_lattice().rank();
    if rank != 3 {
        return Err(PlotError::Rank(rank));
    }
    let fan = model.mcd().ok_or(PlotError::NoChambers)?;
    let ell = match &spec.slice {
        Some(s) => s.clone(),
        None => default_slice(model)?,
    };
    if ell.len() != rank {
        return Err(PlotError::SliceLength {
            expected: rank,
            found: ell.len(),
        });
    }
    for g in fan.support().generators() {
        if !dot(&ell, &to_rational(g)).is_positive() {
            return Err(PlotError::SliceMissesRay(crate::cone::fmt_int_vec(g)));
        }
    }

    // Two linear coordinates on the plane orthogonal to ℓ; restricted to
    // the slice they are an affine chart.
    let ell_row =
        RatMatrix::from_rows(rank, std::slice::from_ref(&ell)).expect("one row of length rank");
    let chart = nullspace(&ell_row);
    let project = |r: &[Int]| -> Point {
        let v = to_rational(r);
        let t = dot(&ell, &v);
        let x: Vec<Rational> = v.iter().map(|c| c / &t).collect();
        (dot(&chart[0], &x), dot(&chart[1], &x))
    };

    let mut rays: BTreeSet<Vec<Int>> = fan.support().generators().iter().cloned().collect();
    for c in fan.chambers() {
        rays.extend(c.cone.generators().iter().cloned());
    }
    let points: Vec<Point> = rays.iter().map(|r| project(r)).collect();
    let min_x = points.iter().map(|p| &p.0).min().unwrap().clone();
    let max_x = points.iter().map(|p| &p.0).max().unwrap().clone();
    let min_y = points.iter().map(|p| &p.1).min().unwrap().clone();
    let max_y = points.iter().map(|p| &p.1).max().unwrap().clone();
    let (w, h) = (rat(spec.width as i64), rat(spec.height as i64));
    let inner_w = &w - rat(2 * MARGIN);
    let inner_h = &h - rat(2 * MARGIN);
    let dx = &max_x - &min_x;
    let dy = &max_y - &min_y;
    let scale = match (dx.is_zero(), dy.is_zero()) {
        (true, true) => Rational::one(),
        (true, false) => &inner_h / &dy,
        (false, true) => &inner_w / &dx,
        (false, false) => (&inner_w / &dx).min(&inner_h / &dy),
    };
    // Center the drawing; y grows downwards in SVG.
    let off_x = (&w - &dx * &scale) / rat(2);
    let off_y = (&h - &dy * &scale) / rat(2);
    let to_view = |p: &Point| -> Point {
        (
            &off_x + (&p.0 - &min_x) * &scale,
            &off_y + (&max_y - &p.1) * &scale,
        )
    };

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        spec.width, spec.height
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(model.name()));
    let _ = writeln!(
        svg,
        r#"<g stroke="black" stroke-width="1" stroke-linejoin="round">"#
    );
    for c in fan.chambers() {
        let fill = if model.nef().includes(&c.cone).unwrap_or(false) {
            "#999999"
        } else if model
            .mov()
            .is_some_and(|m| m.includes(&c.cone).unwrap_or(false))
        {
            "#dddddd"
        } else {
            "#ffffff"
        };
        let mut pts: Vec<Point> = c
            .cone
            .generators()
            .iter()
            .map(|r| to_view(&project(r)))
            .collect();
        sort_around_centroid(&mut pts);
        let coords: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{},{}", fixed2(x), fixed2(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polygon points="{}" fill="{}"><title>{}</title></polygon>"#,
            coords.join(" "),
            fill,
            escape(&c.label)
        );
    }
    let _ = writeln!(svg, "</g>");

    let view_points: Vec<Point> = points.iter().map(to_view).collect();
    let n = Rational::from_integer(Int::from(view_points.len() as i64));
    let cx = view_points.iter().fold(Rational::zero(), |a, p| a + &p.0) / &n;
    let cy = view_points.iter().fold(Rational::zero(), |a, p| a + &p.1) / &n;
    let _ = writeln!(
        svg,
        r#"<g font-family="serif" font-size="14" text-anchor="middle">"#
    );
    for (ray, (x, y)) in rays.iter().zip(&view_points) {
        let label = model
            .label_for(model.divisor_lattice(), ray)
            .unwrap_or_else(|| crate::cone::fmt_int_vec(ray));
        // Push labels away from the middle of the picture.
        let lx = x + nudge(&(x - &cx), 12);
        let ly = y + nudge(&(y - &cy), 12) + rat(5);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}">{}</text>"#,
            fixed2(&lx),
            fixed2(&ly),
            escape(&label)
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

fn nudge(d: &Rational, by: i64) -> Rational {
    if d.is_positive() {
        rat(by)
    } else if d.is_negative() {
        rat(-by)
    } else {
        Rational::zero()
    }
}

/// Counter-clockwise order around the centroid, compared exactly.
fn sort_around_centroid(pts: &mut [Point]) {
    let n = Rational::from_integer(Int::from(pts.len() as i64));
    let cx = pts.iter().fold(Rational::zero(), |a, p| a + &p.0) / &n;
    let cy = pts.iter().fold(Rational::zero(), |a, p| a + &p.1) / &n;
    let half = |p: &Point| {
        let (x, y) = (&p.0 - &cx, &p.1 - &cy);
        y.is_negative() || (y.is_zero() && x.is_negative())
    };
    pts.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| {
            let cross = (&a.0 - &cx) * (&b.1 - &cy) - (&a.1 - &cy) * (&b.0 - &cx);
            Rational::zero().cmp(&cross)
        })
    });
}

/// Rounds half away from zero to two decimals.
fn fixed2(x: &Rational) -> String {
    let scaled = x * rat(100);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice = r.abs() * 2;
    let mut cents = q;
    if twice >= *scaled.denom() {
        cents += if scaled.is_negative() { -1 } else { 1 };
    }
    let sign = if cents.is_negative() { "-" } else { "" };
    let (whole, frac) = cents.abs().div_rem(&Int::from(100));
    format!("{sign}{whole}.{frac:02}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
