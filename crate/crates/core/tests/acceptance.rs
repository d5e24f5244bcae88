//! Acceptance suite: one PASS/FAIL line per criterion.

mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;

use mori_cones::arith::{primitive, rat, rat_vec, Int, RatMatrix, Rational};
use mori_cones::chamber::{verify_fan, Chamber, ChamberFan};
use mori_cones::cli;
use mori_cones::cone::{Cone, MembershipStatus};
use mori_cones::io::{export_model, import_model};
use mori_cones::lefschetz::{
    check_birational_twins, check_divisorial_equivalence, CheckStatus, Verdict,
};
use mori_cones::monomial::MonomialSystem;
use mori_cones::plot::{render_mcd, PlotSpec};
use mori_cones::zoo;
use rand::seq::SliceRandom;

use support::{fm_member, random_generators, rng};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cone3(g: &[&[i64]]) -> Cone {
    Cone::from_i64(3, g).unwrap()
}

fn ray_set(rays: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut v = rays.to_vec();
    v.sort();
    v
}

fn pairing_table() -> Check {
    let m = zoo::blowup_pn_two_points(3).map_err(|e| e.to_string())?;
    let expected = [
        ("H", "h", 1),
        ("H", "e_p", 0),
        ("H", "e_q", 0),
        ("E_p", "h", 0),
        ("E_p", "e_p", -1),
        ("E_p", "e_q", 0),
        ("E_q", "h", 0),
        ("E_q", "e_p", 0),
        ("E_q", "e_q", -1),
    ];
    for (d, c, v) in expected {
        let got = m
            .intersection_number(&m.lookup(d).unwrap(), &m.lookup(c).unwrap())
            .unwrap();
        ensure!(got == rat(v), "{d}.{c} = {got}, expected {v}");
    }
    Ok("9/9 intersection numbers match".into())
}

fn blowup_cones() -> Check {
    let m = zoo::blowup_pn_two_points(3).unwrap();
    let class = |e: &str| primitive(m.class_of(e).unwrap().coords()).unwrap();
    let ne = ray_set(&m.ne().unwrap().extremal_rays().unwrap());
    let want_ne = ray_set(&[class("e_p"), class("e_q"), class("h - e_p - e_q")]);
    ensure!(ne == want_ne, "ne rays {ne:?}");
    let eff = ray_set(&m.eff().extremal_rays().unwrap());
    let want_eff = ray_set(&[class("E_p"), class("E_q"), class("H_{p,q}")]);
    ensure!(eff == want_eff, "eff rays {eff:?}");
    Ok("ne = <e_p,e_q,h-e_p-e_q>, eff = <E_p,E_q,H_{p,q}>".into())
}

fn duality_chain() -> Check {
    let m = zoo::blowup_pn_two_points(3).unwrap();
    let pairing = RatMatrix::diagonal(&rat_vec(&[1, -1, -1]));
    let nef = m.ne().unwrap().dual_under_pairing(&pairing).unwrap();
    let want = cone3(&[&[1, 0, 0], &[1, -1, 0], &[1, 0, -1]]);
    ensure!(nef.equals(&want).unwrap(), "dual of ne is {nef}");
    ensure!(m.nef().equals(&want).unwrap(), "recorded nef differs");
    let mov = cone3(&[&[1, 0, 0], &[1, -1, 0], &[1, 0, -1], &[1, -1, -1]]);
    ensure!(
        m.mov().unwrap().equals(&mov).unwrap(),
        "recorded mov differs"
    );
    for g in nef.generators() {
        ensure!(
            mov.contains_int(g).unwrap().is_member(),
            "nef ray {g:?} not in mov"
        );
    }
    for g in mov.generators() {
        ensure!(
            m.eff().contains_int(g).unwrap().is_member(),
            "mov ray {g:?} not in eff"
        );
    }
    Ok("nef = <H,H_p,H_q>; nef in mov in eff".into())
}

fn blowup_mcd() -> Check {
    let m = zoo::blowup_pn_two_points(3).unwrap();
    let fan = m.mcd().unwrap();
    let report = verify_fan(fan).unwrap();
    ensure!(report.passed(), "verify_fan failed:\n{report}");

    let hits = m.locate(&m.class_of("3H-2E_p-2E_q").unwrap()).unwrap();
    ensure!(
        hits.len() == 1,
        "3H-2E_p-2E_q located in {} chambers",
        hits.len()
    );
    ensure!(
        hits[0].membership.status == MembershipStatus::Interior,
        "not interior"
    );
    let x_prime = &fan.chamber(&hits[0].label).unwrap().cone;
    ensure!(
        *x_prime == cone3(&[&[1, -1, 0], &[1, 0, -1], &[1, -1, -1]]),
        "chamber {} is not <H_p,H_q,H_pq>",
        hits[0].label
    );

    let hits = m.locate(&m.class_of("2H-E_p-E_q").unwrap()).unwrap();
    ensure!(
        hits.len() == 2,
        "2H-E_p-E_q located in {} chambers",
        hits.len()
    );
    ensure!(
        hits.iter()
            .all(|h| h.membership.status == MembershipStatus::Boundary),
        "2H-E_p-E_q is interior to a chamber"
    );
    let a = &fan.chamber(&hits[0].label).unwrap().cone;
    let b = &fan.chamber(&hits[1].label).unwrap().cone;
    let wall = a.intersect(b).unwrap();
    ensure!(
        wall == cone3(&[&[1, -1, 0], &[1, 0, -1]]),
        "shared face is {wall}"
    );

    let d = m.class_of("H_p + H_q + H_{p,q}").unwrap();
    let l = m.lookup("L").unwrap();
    let v = m.intersection_number(&d, &l).unwrap();
    ensure!(v == rat(-1), "(H_p+H_q+H_pq).L = {v}");
    Ok("fan verifies; X' interior; wall <H_p,H_q>; (H_p+H_q+H_pq).L = -1".into())
}

fn segre_models() -> Check {
    let m = zoo::complete_collineations_3().unwrap();
    let fan = m.mcd().unwrap();
    ensure!(
        fan.support()
            .equals(&cone3(&[&[0, 1, 0], &[0, 0, 1], &[4, -3, -2]]))
            .unwrap(),
        "support is not <E_1,E_2,E_3>"
    );
    let report = verify_fan(fan).unwrap();
    ensure!(report.passed(), "nine-chamber fan failed:\n{report}");

    // The seven-chamber list that merges <E_1,E_2,H> with <E_2,H,D_2> and
    // <E_2,D_2,D_3> with <E_2,E_3,D_3> is not face to face.
    let (h, d2, d3, dm): (&[i64], &[i64], &[i64], &[i64]) =
        (&[1, 0, 0], &[2, -1, 0], &[3, -2, -1], &[6, -3, -2]);
    let (e1, e2, e3): (&[i64], &[i64], &[i64]) = (&[0, 1, 0], &[0, 0, 1], &[4, -3, -2]);
    let merged = ChamberFan::new(
        fan.support().clone(),
        [
            [h, d2, d3],
            [h, d3, dm],
            [e1, h, dm],
            [e3, d3, dm],
            [e1, e3, dm],
            [e1, d2, e2],
            [e2, d2, e3],
        ]
        .iter()
        .enumerate()
        .map(|(i, g)| Chamber::new(format!("c{i}"), cone3(g)))
        .collect(),
    )
    .unwrap();
    let merged_report = verify_fan(&merged).unwrap();
    ensure!(
        !merged_report.walls.passed,
        "the merged seven-chamber list unexpectedly passes the wall condition"
    );

    let a = &fan.chamber("<H,D_2,D_3>").unwrap().cone;
    let b = &fan.chamber("<H,D_3,D_M>").unwrap().cone;
    let mov = cone3(&[h, d2, d3, dm]);
    ensure!(m.mov().unwrap().equals(&mov).unwrap(), "mov differs");
    ensure!(
        mov.equals(&a.join(b).unwrap()).unwrap(),
        "mov is not the join"
    );

    let r = check_birational_twins(&zoo::collineations_quadrics_pair().unwrap()).unwrap();
    ensure!(
        r.verdict == Verdict::BirationalTwins,
        "verdict {}",
        r.verdict
    );
    Ok(format!(
        "{}-chamber fan verifies (merged 7-chamber list fails the wall condition); mov = join; birational_twins",
        fan.chambers().len()
    ))
}

fn twin_example() -> Check {
    let r = check_birational_twins(&zoo::linear_section_twin(4, 3).unwrap()).unwrap();
    ensure!(
        r.verdict == Verdict::BirationalTwins,
        "linear section verdict {}",
        r.verdict
    );
    let r = check_divisorial_equivalence(&zoo::nef_mismatch_pair().unwrap()).unwrap();
    ensure!(
        r.nef_match == CheckStatus::Fail,
        "nef_match {:?}",
        r.nef_match
    );
    ensure!(
        r.eff_match == CheckStatus::Pass,
        "eff_match {:?}",
        r.eff_match
    );
    ensure!(
        r.verdict == Verdict::Fail,
        "nef mismatch verdict {}",
        r.verdict
    );
    Ok("(4,3) birational_twins; nef mismatch: nef fail, eff pass".into())
}

fn monomial_maps() -> Check {
    let alpha = MonomialSystem::builtin("box3.alpha").unwrap();
    let beta = MonomialSystem::builtin("box3.beta").unwrap();
    let coordinate_points: Vec<Vec<Rational>> = (0..4)
        .map(|i| (0..4).map(|j| rat((i == j) as i64)).collect())
        .collect();
    let p = rat_vec(&[1, 0, 0, 0]);
    let q = rat_vec(&[0, 0, 0, 1]);
    for (name, s) in [("alpha", &alpha), ("beta", &beta)] {
        let base: Vec<&Vec<Rational>> = coordinate_points
            .iter()
            .filter(|x| s.is_base_point(x).unwrap())
            .collect();
        ensure!(base == vec![&p, &q], "{name} base points {base:?}");
    }
    ensure!(
        beta.vanishes_to_order(&p, 2).unwrap(),
        "beta not singular at p"
    );
    ensure!(
        !alpha.vanishes_to_order(&p, 2).unwrap(),
        "alpha singular at p"
    );
    for (name, s) in [("alpha", &alpha), ("beta", &beta)] {
        let dims = s.sample_dimensions(20, 2024);
        ensure!(
            dims.iter().all(|d| *d == Some(3)),
            "{name} dimensions {dims:?}"
        );
    }
    Ok("base points {p,q}; beta double at p, alpha not; dimension 3 at 20 points".into())
}

fn property_suites() -> Check {
    const CASES: usize = 128;
    let mut r = rng(8);
    for case in 0..CASES {
        let (dim, g) = random_generators(&mut r);
        let c = Cone::from_generators(dim, &g).unwrap();
        ensure!(
            c.dual().dual().equals(&c).unwrap(),
            "biduality, case {case}"
        );

        let (_, h) = random_generators(&mut r);
        let h: Vec<Vec<Rational>> = h
            .into_iter()
            .map(|mut v| {
                v.resize(dim, Rational::from_integer(Int::from(1)));
                v
            })
            .collect();
        let b = Cone::from_generators(dim, &h).unwrap();
        let lhs = c.join(&b).unwrap().dual();
        let rhs = c.dual().intersect(&b.dual()).unwrap();
        ensure!(lhs.equals(&rhs).unwrap(), "dual of join, case {case}");

        for _ in 0..4 {
            let x = support::random_vec(&mut r, dim, -4, 4);
            let ours = c.contains(&x).unwrap().is_member();
            ensure!(
                ours == fm_member(&g, &x),
                "membership disagrees, case {case}, point {x:?}"
            );
        }
        ensure!(
            c.contains(&c.interior_point()).unwrap().is_member(),
            "interior point, case {case}"
        );

        let v = support::random_vec(&mut r, dim, -9, 9);
        if v.iter().any(|x| *x != rat(0)) {
            let t = Rational::new(
                Int::from(1 + case as i64 % 7),
                Int::from(1 + case as i64 % 5),
            );
            let scaled: Vec<Rational> = v.iter().map(|x| x * &t).collect();
            ensure!(
                primitive(&scaled).unwrap() == primitive(&v).unwrap(),
                "primitive, case {case}"
            );
        }
    }

    let mut fans: Vec<ChamberFan> = ["blowup-p3-2pts", "collineations-3"]
        .iter()
        .map(|n| zoo::by_name(n).unwrap().mcd().unwrap().clone())
        .collect();
    let mut broken = fans[0].chambers().to_vec();
    broken.retain(|c| c.label != "P^3");
    fans.push(ChamberFan::new(fans[0].support().clone(), broken).unwrap());
    for case in 0..CASES {
        let fan = &fans[case % fans.len()];
        let mut chambers = fan.chambers().to_vec();
        chambers.shuffle(&mut r);
        let shuffled = ChamberFan::new(fan.support().clone(), chambers).unwrap();
        let (a, b) = (verify_fan(fan).unwrap(), verify_fan(&shuffled).unwrap());
        let verdicts = |x: &mori_cones::chamber::FanReport| x.criteria().map(|(_, c)| c.passed);
        ensure!(
            verdicts(&a) == verdicts(&b),
            "fan verdict changed under permutation, case {case}"
        );
    }
    Ok(format!("{CASES} seeded cases per property"))
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mori-cones").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn interfaces() -> Check {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    for name in zoo::MODEL_NAMES {
        let m = zoo::by_name(name).unwrap();
        let text = export_model(&m);
        let again = export_model(&import_model(&text).unwrap());
        ensure!(again == text, "{name}: export/import is not byte-identical");
        let shipped = std::fs::read_to_string(data.join(format!("{name}.json")))
            .map_err(|e| format!("{name}: {e}"))?;
        ensure!(shipped == text, "{name}: data file differs from export");
    }

    let count = |svg: &str, tag: &str| svg.matches(tag).count();
    let two_point =
        render_mcd(&zoo::blowup_pn_two_points(3).unwrap(), &PlotSpec::default()).unwrap();
    ensure!(
        (count(&two_point, "<polygon"), count(&two_point, "<text")) == (5, 6),
        "box 3 plot has {} polygons, {} labels",
        count(&two_point, "<polygon"),
        count(&two_point, "<text")
    );
    let segre_model = zoo::complete_collineations_3().unwrap();
    let segre = render_mcd(&segre_model, &PlotSpec::default()).unwrap();
    let chambers = segre_model.mcd().unwrap().chambers().len();
    ensure!(
        (count(&segre, "<polygon"), count(&segre, "<text")) == (chambers, 7),
        "collineations plot has {} polygons, {} labels",
        count(&segre, "<polygon"),
        count(&segre, "<text")
    );
    for l in ["E_1", "E_2", "E_3", "H", "D_2", "D_3", "D_M"] {
        ensure!(segre.contains(&format!(">{l}</text>")), "label {l} missing");
    }

    let dir = tempfile::tempdir().unwrap();
    let bad_nef = dir.path().join("bad-nef.json");
    std::fs::write(
        &bad_nef,
        export_model(&zoo::nef_mismatch_pair().unwrap().sub),
    )
    .unwrap();
    let bad_nef = bad_nef.to_str().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    let garbage = garbage.to_str().unwrap();
    let cases: [(&[&str], i32); 6] = [
        (&["twin", "check", "collineations-3", "quadrics-3"], 0),
        (&["twin", "check", "blowup-p3-2pts", bad_nef], 1),
        (&["twin", "check", "blowup-p3-2pts", "blowup-p2-2pts"], 2),
        (&["mcd", "verify", "blowup-p3-2pts"], 0),
        (&["twin", "frobnicate"], 64),
        (&["model", "import", garbage], 65),
    ];
    for (args, want) in cases {
        let (code, _, err) = run_cli(args);
        ensure!(
            code == want,
            "{args:?} exited {code}, expected {want}: {err}"
        );
    }
    Ok(format!(
        "round trips byte-identical; plots 5/6 and {chambers}/7; exit codes 0/1/2/64/65"
    ))
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("two-point blow-up pairing table", pairing_table),
        ("two-point blow-up curve and divisor cones", blowup_cones),
        ("duality and inclusion chain", duality_chain),
        ("two-point blow-up chamber decomposition", blowup_mcd),
        ("collineations and quadrics of P^3", segre_models),
        ("linear section twins and nef mismatch", twin_example),
        ("monomial maps alpha and beta", monomial_maps),
        ("seeded property suites", property_suites),
        ("interface stability", interfaces),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
