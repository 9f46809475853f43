//! Pipeline head: the explicit solution w⁰_k = det(p, s_k), the shape-parameter
//! parameter cross-ratio identities, non-degeneracy diagnostics, and the
//! extraction of vol + i·cs from W₀.

use crate::coloring::{check_separation, ShadowColoring, SEPARATION_TOL};
use crate::diagram::LinkDiagram;
use crate::potential::{build_potential, PotentialError};
use crate::quandle::{cross_ratio, det2, hopf, star, Parabolic};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Tolerance for the cross-ratio identity comparisons.
pub const CROSS_RATIO_TOL: f64 = 1e-7;

/// One shape-parameter identity instance at a crossing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossRatioCheck {
    pub crossing: usize,
    pub label: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub error: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VolumeReport {
    /// The solution w⁰ of the hyperbolicity equations.
    pub w0: Vec<Complex64>,
    /// max_k |exp(w_k ∂W/∂w_k) − 1| at w⁰.
    pub max_residual: f64,
    pub cross_ratio_checks: Vec<CrossRatioCheck>,
    /// Non-degeneracy violations; empty = pass.
    pub nondegeneracy: Vec<String>,
    /// W₀(w⁰) before mod-π² reduction; equals i(vol + i·cs) mod π².
    pub w0_raw: Complex64,
    pub vol: f64,
    /// Chern–Simons value, reduced into (−π²/2, π²/2].
    pub cs: f64,
    /// The ± realizing the arc relation at each crossing.
    pub sign_choices: Vec<i8>,
}

#[derive(Debug, thiserror::Error)]
pub enum VolumeError {
    #[error("coloring check failed: {0}")]
    Coloring(#[from] crate::coloring::ColoringError),
    #[error("w0[{}] = det(p, s{}) vanishes; p collides with a region color", k + 1, k + 1)]
    ZeroComponent { k: usize },
    #[error("potential evaluation failed: {0}")]
    Potential(#[from] PotentialError),
    #[error("hyperbolicity residual {max:.3e} exceeds tolerance {tol:.3e}")]
    ResidualTooLarge { max: f64, tol: f64 },
    #[error("degenerate cross-ratio for identity {label} at crossing {}", crossing + 1)]
    DegenerateCrossRatio { crossing: usize, label: String },
    #[error(
        "cross-ratio identity {label} fails at crossing {}: error {error:.3e}",
        crossing + 1
    )]
    CrossRatioMismatch {
        crossing: usize,
        label: String,
        error: f64,
    },
    #[error("non-degeneracy violated: {0}")]
    Degenerate(String),
}

/// w⁰_k = det(p, s_k); nonzero whenever p satisfies the avoidance condition.
pub fn solution_w0(regions: &[Parabolic], p: &Parabolic) -> Result<Vec<Complex64>, VolumeError> {
    let w: Vec<Complex64> = regions.iter().map(|s| det2(p, s)).collect();
    match w.iter().position(|x| x.norm() == 0.0) {
        Some(k) => Err(VolumeError::ZeroComponent { k }),
        None => Ok(w),
    }
}

/// Evaluate the four shape-parameter identities at every crossing.
///
/// At a positive crossing with over-color a_k, incoming under-color a_l and
/// region color s in slot d, the four edge parameters are
/// w_d/w_a, w_b/w_c, w_b/w_a, w_d/w_c; at a negative crossing (a_l now the
/// outgoing under-color) they are w_a/w_b, w_c/w_d, w_c/w_b, w_a/w_d. Each is
/// compared against its determinant cross-ratio.
pub fn check_cross_ratios(
    diagram: &LinkDiagram,
    coloring: &ShadowColoring,
    w0: &[Complex64],
) -> Result<Vec<CrossRatioCheck>, VolumeError> {
    let p = &coloring.p;
    let mut out = Vec::new();
    for ci in 0..diagram.n_crossings() {
        let sign = diagram.signs[ci];
        let ca = diagram.crossing_arcs[ci];
        let a_k = coloring.arcs[ca.over];
        let a_l = if sign == 1 {
            coloring.arcs[ca.under_in]
        } else {
            coloring.arcs[ca.under_out]
        };
        let [qa, qb, qc, qd] = diagram.quadrants[ci];
        let s = coloring.regions[qd];
        let pk = star(p, &a_k);
        let sk = star(&s, &a_k);
        let sl = star(&s, &a_l);
        let slk = star(&sl, &a_k);
        let alk = star(&a_l, &a_k);
        let r = |i: usize, j: usize| w0[i] / w0[j];
        // (label, cross-ratio points, invert?, w-ratio)
        let identities: [(&str, [Parabolic; 4], bool, Complex64); 4] = if sign == 1 {
            [
                ("wd/wa", [pk, *p, a_k, sk], false, r(qd, qa)),
                ("wb/wc", [pk, *p, a_k, slk], true, r(qb, qc)),
                ("wb/wa", [*p, alk, sk, slk], false, r(qb, qa)),
                ("wd/wc", [*p, a_l, s, sl], true, r(qd, qc)),
            ]
        } else {
            [
                ("wa/wb", [*p, pk, a_k, slk], true, r(qa, qb)),
                ("wc/wd", [*p, pk, a_k, sk], false, r(qc, qd)),
                ("wc/wb", [*p, alk, slk, sk], false, r(qc, qb)),
                ("wa/wd", [*p, a_l, sl, s], true, r(qa, qd)),
            ]
        };
        for (label, pts, invert, rhs) in identities {
            let cr = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).map_err(|_| {
                VolumeError::DegenerateCrossRatio {
                    crossing: ci,
                    label: label.to_string(),
                }
            })?;
            let lhs = if invert { 1.0 / cr } else { cr };
            out.push(CrossRatioCheck {
                crossing: ci,
                label: label.to_string(),
                lhs,
                rhs,
                error: (lhs - rhs).norm(),
            });
        }
    }
    Ok(out)
}

/// Diagnostic list of Hopf-value collisions among the tetrahedron vertices:
/// the per-edge separation triples, h(p) against every arc and region value, and
/// h(p*a_k) against h(a_k) and h(p).
pub fn check_nondegeneracy(diagram: &LinkDiagram, coloring: &ShadowColoring) -> Vec<String> {
    let mut out = Vec::new();
    for v in check_separation(
        diagram,
        &coloring.arcs,
        &coloring.regions,
        SEPARATION_TOL,
    ) {
        out.push(format!(
            "edge {}: {} collides with {}",
            v.edge, v.pair.0, v.pair.1
        ));
    }
    let hp = hopf(&coloring.p);
    for (k, a) in coloring.arcs.iter().enumerate() {
        if hp.approx_eq(&hopf(a), SEPARATION_TOL) {
            out.push(format!("h(p) collides with h(a{})", k + 1));
        }
        let hpk = hopf(&star(&coloring.p, a));
        if hpk.approx_eq(&hopf(a), SEPARATION_TOL) {
            out.push(format!("h(p*a{}) collides with h(a{})", k + 1, k + 1));
        }
        if hpk.approx_eq(&hp, SEPARATION_TOL) {
            out.push(format!("h(p*a{}) collides with h(p)", k + 1));
        }
    }
    for (j, s) in coloring.regions.iter().enumerate() {
        if hp.approx_eq(&hopf(s), SEPARATION_TOL) {
            out.push(format!("h(p) collides with h(s{})", j + 1));
        }
    }
    out
}

/// Full pipeline: w⁰ → residuals → cross-ratio identities → non-degeneracy →
/// W₀ → vol + i·cs.
pub fn complex_volume(
    diagram: &LinkDiagram,
    coloring: &ShadowColoring,
    tolerance: f64,
) -> Result<VolumeReport, VolumeError> {
    let sign_choices = crate::coloring::verify_arc_coloring(
        diagram,
        &coloring.arcs,
        crate::coloring::CONSISTENCY_TOL,
    )?;
    let w0 = solution_w0(&coloring.regions, &coloring.p)?;
    let pf = build_potential(diagram);
    let residuals = pf.residuals(&w0)?;
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    if max_residual > tolerance {
        return Err(VolumeError::ResidualTooLarge {
            max: max_residual,
            tol: tolerance,
        });
    }
    let cross_ratio_checks = check_cross_ratios(diagram, coloring, &w0)?;
    for c in &cross_ratio_checks {
        if c.error > CROSS_RATIO_TOL {
            return Err(VolumeError::CrossRatioMismatch {
                crossing: c.crossing,
                label: c.label.clone(),
                error: c.error,
            });
        }
    }
    let nondegeneracy = check_nondegeneracy(diagram, coloring);
    if let Some(first) = nondegeneracy.first() {
        return Err(VolumeError::Degenerate(first.clone()));
    }
    let w0_raw = pf.eval_w0(&w0)?;
    let vol = w0_raw.im;
    let pi2 = PI * PI;
    let mut cs = (-w0_raw.re).rem_euclid(pi2);
    if cs > pi2 / 2.0 {
        cs -= pi2;
    }
    Ok(VolumeReport {
        w0,
        max_residual,
        cross_ratio_checks,
        nondegeneracy,
        w0_raw,
        vol,
        cs,
        sign_choices,
    })
}
