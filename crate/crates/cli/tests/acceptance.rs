//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

use num_complex::Complex64;
use optlim::coloring::{find_p, find_region_coloring, ColoringError};
use optlim::golden;
use optlim::potential::{build_potential, dilog, PotentialFunction};
use optlim::quandle::{cross_ratio, det2, hopf, mobius_apply, star, star_inv, Parabolic};
use optlim::volume::{check_cross_ratios, complex_volume, solution_w0};
use optlim::{parse_diagram, ShadowColoring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

struct Criterion(&'static str);

impl Criterion {
    fn check(&self, ok: bool, detail: &str) {
        if ok {
            println!("acceptance {}: PASS ({detail})", self.0);
        } else {
            println!("acceptance {}: FAIL ({detail})", self.0);
            panic!("acceptance {} failed: {detail}", self.0);
        }
    }
}

fn fig8_coloring(t: Complex64) -> ShadowColoring {
    ShadowColoring {
        arcs: golden::fig8_arc_colors(t),
        regions: golden::fig8_region_colors(t),
        p: golden::example_p(),
    }
}

fn trefoil_coloring() -> ShadowColoring {
    ShadowColoring {
        arcs: golden::trefoil_arc_colors(),
        regions: golden::trefoil_region_colors(),
        p: golden::example_p(),
    }
}

#[test]
fn criterion_1_fig8_golden() {
    let start = Instant::now();
    let d = parse_diagram(golden::FIG8_PD).unwrap();
    let t = golden::omega_minus();
    let rep = complex_volume(&d, &fig8_coloring(t), 1e-9).unwrap();
    let want_w0 = [
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 0.0),
        3.0 * t + 5.0,
        6.0 * t + 7.0,
        4.0 * t + 9.0,
        2.0 * t + 3.0,
    ];
    let w0_ok = rep
        .w0
        .iter()
        .zip(want_w0.iter())
        .all(|(a, b)| (a - b).norm() < 1e-12);
    let elapsed = start.elapsed();
    Criterion("1 (figure-eight golden)").check(
        w0_ok
            && rep.max_residual < 1e-9
            && (rep.vol - 2.029883212819).abs() < 1e-6
            && rep.cs.abs() < 1e-6
            && elapsed.as_secs_f64() < 1.0,
        &format!(
            "w0 exact, residual {:.1e}, vol {:.12}, cs {:.1e}, {:.0} ms",
            rep.max_residual,
            rep.vol,
            rep.cs,
            elapsed.as_secs_f64() * 1e3
        ),
    );
}

#[test]
fn criterion_2_fig8_conjugate_root() {
    let d = parse_diagram(golden::FIG8_PD).unwrap();
    let rep = complex_volume(&d, &fig8_coloring(golden::omega_plus()), 1e-9).unwrap();
    Criterion("2 (conjugate root)").check(
        (rep.vol + 2.029883212819).abs() < 1e-6,
        &format!("vol {:.12}", rep.vol),
    );
}

#[test]
fn criterion_3_trefoil_golden() {
    let start = Instant::now();
    let d = parse_diagram(golden::TREFOIL_PD).unwrap();
    let rep = complex_volume(&d, &trefoil_coloring(), 1e-9).unwrap();
    let want = [5.0, 3.0, 7.0, 2.0, 1.0, 8.0];
    let w0_ok = rep
        .w0
        .iter()
        .zip(want.iter())
        .all(|(a, b)| (a - Complex64::new(*b, 0.0)).norm() < 1e-12);
    let elapsed = start.elapsed();
    Criterion("3 (trefoil golden)").check(
        w0_ok
            && rep.max_residual < 1e-9
            && rep.vol.abs() < 1e-8
            && (rep.cs.abs() - 1.6449340668).abs() < 1e-6
            && elapsed.as_secs_f64() < 1.0,
        &format!(
            "w0 = (5,3,7,2,1,8), residual {:.1e}, vol {:.1e}, |cs| {:.10}, {:.0} ms",
            rep.max_residual,
            rep.vol,
            rep.cs.abs(),
            elapsed.as_secs_f64() * 1e3
        ),
    );
}

#[test]
fn criterion_4_robustness_sweep() {
    let cases: [(&str, Vec<Parabolic>); 2] = [
        (golden::FIG8_PD, golden::fig8_arc_colors(golden::omega_minus())),
        (golden::TREFOIL_PD, golden::trefoil_arc_colors()),
    ];
    let mut max_res: f64 = 0.0;
    let mut max_dvol: f64 = 0.0;
    let mut max_dcs: f64 = 0.0;
    for (pd, arcs) in &cases {
        let d = parse_diagram(pd).unwrap();
        let mut base: Option<(f64, f64)> = None;
        for seed in 0..20u64 {
            let regions = find_region_coloring(&d, arcs, seed).unwrap();
            let p = find_p(arcs, &regions, seed, None).unwrap();
            let coloring = ShadowColoring {
                arcs: arcs.clone(),
                regions,
                p,
            };
            let rep = complex_volume(&d, &coloring, 1e-8).unwrap();
            max_res = max_res.max(rep.max_residual);
            match base {
                None => base = Some((rep.vol, rep.cs)),
                Some((v, c)) => {
                    max_dvol = max_dvol.max((rep.vol - v).abs());
                    let dc = (rep.cs - c).rem_euclid(PI * PI);
                    max_dcs = max_dcs.max(dc.min(PI * PI - dc));
                }
            }
        }
    }
    Criterion("4 (robustness sweep)").check(
        max_res < 1e-8 && max_dvol < 1e-8 && max_dcs < 1e-8,
        &format!(
            "2 diagrams x 20 colorings: residual {max_res:.1e}, Δvol {max_dvol:.1e}, Δcs {max_dcs:.1e}"
        ),
    );
}

#[test]
fn criterion_5_cross_ratio_suite() {
    let mut max_err: f64 = 0.0;
    let mut count = 0;
    for (pd, coloring) in [
        (golden::FIG8_PD, fig8_coloring(golden::omega_minus())),
        (golden::TREFOIL_PD, trefoil_coloring()),
    ] {
        let d = parse_diagram(pd).unwrap();
        let w0 = solution_w0(&coloring.regions, &coloring.p).unwrap();
        for c in check_cross_ratios(&d, &coloring, &w0).unwrap() {
            max_err = max_err.max(c.error);
            count += 1;
        }
    }
    Criterion("5 (cross-ratio identities)").check(
        count == 32 && max_err < 1e-10,
        &format!("{count} identities, max error {max_err:.1e}"),
    );
}

fn fd_grad(pf: &PotentialFunction, w: &[Complex64], k: usize) -> Option<Complex64> {
    let h = 1e-6;
    let mut wp = w.to_vec();
    let mut wm = w.to_vec();
    wp[k] += Complex64::new(h, 0.0);
    wm[k] -= Complex64::new(h, 0.0);
    let dre = (pf.eval_w(&wp).ok()? - pf.eval_w(&wm).ok()?) / (2.0 * h);
    wp = w.to_vec();
    wm = w.to_vec();
    wp[k] += Complex64::new(0.0, h);
    wm[k] -= Complex64::new(0.0, h);
    let dim = (pf.eval_w(&wp).ok()? - pf.eval_w(&wm).ok()?) / (2.0 * h);
    Some(w[k] * 0.5 * (dre + dim / Complex64::new(0.0, 1.0)))
}

#[test]
fn criterion_6_gradient_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut max_rel: f64 = 0.0;
    for pd in [golden::FIG8_PD, golden::TREFOIL_PD] {
        let d = parse_diagram(pd).unwrap();
        let pf = build_potential(&d);
        let mut done = 0;
        while done < 100 {
            let w: Vec<Complex64> = (0..pf.n_vars)
                .map(|_| {
                    Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
                })
                .collect();
            if w.iter().any(|x| x.norm() < 0.2) {
                continue;
            }
            let Ok(g) = pf.grad_w(&w) else { continue };
            let mut ok = true;
            for k in 0..w.len() {
                let Some(fd) = fd_grad(&pf, &w, k) else {
                    ok = false;
                    break;
                };
                max_rel = max_rel.max((g[k] - fd).norm() / (1.0 + g[k].norm()));
            }
            if ok {
                done += 1;
            }
        }
    }
    Criterion("6 (gradient oracle)").check(
        max_rel < 1e-6,
        &format!("100 points per diagram, max relative error {max_rel:.1e}"),
    );
}

fn random_parabolic(rng: &mut ChaCha8Rng) -> Parabolic {
    loop {
        let p = Parabolic::new(
            Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)),
            Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)),
        );
        if p.alpha.norm() > 0.2 || p.beta.norm() > 0.2 {
            return p;
        }
    }
}

#[test]
fn criterion_7_quandle_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut max_err: f64 = 0.0;
    let dist = |a: &Parabolic, b: &Parabolic| {
        let scale = 1.0 + a.alpha.norm() + a.beta.norm();
        ((a.alpha - b.alpha).norm()).max((a.beta - b.beta).norm()) / scale
    };
    for _ in 0..1000 {
        let (a, b, c) = (
            random_parabolic(&mut rng),
            random_parabolic(&mut rng),
            random_parabolic(&mut rng),
        );
        // idempotence
        max_err = max_err.max(dist(&star(&a, &a), &a));
        // inversion
        max_err = max_err.max(dist(&star_inv(&star(&a, &b), &b), &a));
        // right self-distributivity
        let lhs = star(&star(&a, &b), &c);
        let rhs = star(&star(&a, &c), &star(&b, &c));
        max_err = max_err.max(dist(&lhs, &rhs));
        // det invariance
        let dd = (det2(&star(&a, &c), &star(&b, &c)) - det2(&a, &b)).norm();
        max_err = max_err.max(dd / (1.0 + det2(&a, &b).norm()));
        // Hopf equivariance (skip near-infinite values, where CP¹ distance
        // and the euclidean proxy diverge)
        if let (
            optlim::quandle::HopfValue::Finite(x),
            optlim::quandle::HopfValue::Finite(y),
        ) = (hopf(&star(&a, &b)), mobius_apply(&b, &hopf(&a)))
        {
            if x.norm() < 10.0 {
                max_err = max_err.max((x - y).norm() / (1.0 + x.norm()));
            }
        }
    }
    Criterion("7 (quandle suite)").check(
        max_err < 1e-10,
        &format!("1000 trials x 5 properties, max error {max_err:.1e}"),
    );
}

#[test]
fn criterion_8_dilog_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut max_err: f64 = 0.0;
    let mut done = 0;
    while done < 1000 {
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        if z.norm() < 1e-2 || (1.0 - z).norm() < 1e-2 || z.im.abs() < 1e-6 {
            continue;
        }
        let refl = dilog(z) + dilog(1.0 - z)
            - (Complex64::new(PI * PI / 6.0, 0.0) - z.ln() * (1.0 - z).ln());
        let lnz = (-z).ln();
        let inv = dilog(z) + dilog(1.0 / z)
            - (-Complex64::new(PI * PI / 6.0, 0.0) - 0.5 * lnz * lnz);
        max_err = max_err.max(refl.norm()).max(inv.norm());
        done += 1;
    }
    let at_one = (dilog(Complex64::new(1.0, 0.0)) - PI * PI / 6.0).norm();
    Criterion("8 (dilog identities)").check(
        max_err < 1e-11 && at_one < 1e-13,
        &format!("1000 points, max identity error {max_err:.1e}, |Li2(1) - pi^2/6| = {at_one:.1e}"),
    );
}

#[test]
fn criterion_9_negative_paths() {
    // (a) perturbed arc colors → CLI exit code 3
    let jobs = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../jobs");
    let text = std::fs::read_to_string(jobs.join("fig8.json")).unwrap();
    let mut job: serde_json::Value = serde_json::from_str(&text).unwrap();
    let v = job["arc_colors"][1][1][0].as_f64().unwrap();
    job["arc_colors"][1][1][0] = serde_json::json!(v + 1e-3);
    let dir = tempfile::tempdir().unwrap();
    let bad_arcs = dir.path().join("bad_arcs.json");
    std::fs::write(&bad_arcs, job.to_string()).unwrap();
    let code3 = std::process::Command::new(env!("CARGO_BIN_EXE_optlim"))
        .arg("run")
        .arg(&bad_arcs)
        .output()
        .unwrap()
        .status
        .code();

    // (b) p with a Hopf collision is rejected
    let t = golden::omega_minus();
    let arcs = golden::fig8_arc_colors(t);
    let p_rejected = matches!(
        find_p(&arcs, &golden::fig8_region_colors(t), 0, Some(arcs[0])),
        Err(ColoringError::CandidateRejected { .. })
    );

    // (c) a trivial-component diagram (kink running entirely over itself)
    // → CLI exit code 2
    let mut bad: serde_json::Value = serde_json::from_str(&text).unwrap();
    bad["diagram"] = serde_json::json!("X 1 2 1 2 over=2\n");
    let bad_pd = dir.path().join("bad_pd.json");
    std::fs::write(&bad_pd, bad.to_string()).unwrap();
    let code2 = std::process::Command::new(env!("CARGO_BIN_EXE_optlim"))
        .arg("run")
        .arg(&bad_pd)
        .output()
        .unwrap()
        .status
        .code();

    Criterion("9 (negative paths)").check(
        code3 == Some(3) && p_rejected && code2 == Some(2),
        &format!("perturbed arcs exit {code3:?}, bad p rejected {p_rejected}, trivial diagram exit {code2:?}"),
    );
}

#[test]
fn criterion_9b_degenerate_cross_ratio_rejected() {
    // extra negative path at the library level: a repeated point makes the
    // cross-ratio degenerate
    let a = Parabolic::from_re(1.0, 2.0);
    let b = Parabolic::from_re(0.0, 1.0);
    let d = Parabolic::from_re(3.0, 1.0);
    Criterion("9b (degenerate cross-ratio)").check(
        cross_ratio(&a, &b, &a, &d).is_err(),
        "det(v0, v2) = 0 detected",
    );
}
