//! The potential function W of a diagram: per-crossing dilogarithm terms,
//! evaluation, analytic gradient, hyperbolicity residuals and the corrected
//! value W₀.

use crate::diagram::LinkDiagram;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

/// Principal-branch complex dilogarithm Li₂(z).
///
/// Power series in u = −log(1−z) after mapping the argument into the unit
/// region, following the usual inversion/reflection transformations. The
/// branch cut is [1, ∞), continuous from below.
pub fn dilog(z: Complex64) -> Complex64 {
    const PI2_6: f64 = PI * PI / 6.0;
    if z.im == 0.0 && z.re == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if z.im == 0.0 && z.re == 1.0 {
        return Complex64::new(PI2_6, 0.0);
    }
    // on the cut [1, ∞), take the limit from below (negative-zero imaginary
    // part keeps both transformation branches on that side)
    let z = if z.im == 0.0 && z.re > 1.0 {
        Complex64::new(z.re, -0.0)
    } else {
        z
    };

    let nz = z.norm_sqr();
    let rz = z.re;
    let (u, rest, sgn): (Complex64, Complex64, f64) = if rz <= 0.5 {
        if nz > 1.0 {
            let lz = (-z).ln();
            (
                (1.0 - 1.0 / z).ln() * -1.0,
                -0.5 * lz * lz - PI2_6,
                -1.0,
            )
        } else {
            ((1.0 - z).ln() * -1.0, Complex64::new(0.0, 0.0), 1.0)
        }
    } else if nz <= 2.0 * rz {
        let u = -z.ln();
        (u, u * (1.0 - z).ln() + PI2_6, -1.0)
    } else {
        let lz = (-z).ln();
        (
            (1.0 - 1.0 / z).ln() * -1.0,
            -0.5 * lz * lz - PI2_6,
            -1.0,
        )
    };

    // Li2 series with even Bernoulli numbers: u + Σ B_n u^{n+1}/(n+1)!
    const BF: [f64; 10] = [
        -1.0 / 4.0,
        1.0 / 36.0,
        -1.0 / 3600.0,
        1.0 / 211_680.0,
        -1.0 / 10_886_400.0,
        1.0 / 526_901_760.0,
        -4.064_761_645_144_226e-11,
        3.443_789_899_943_112e-12,
        -2.954_059_293_018_258e-13,
        2.558_474_314_203_205e-14,
    ];
    let u2 = u * u;
    let series = u
        + u2 * (BF[0]
            + u * (BF[1]
                + u2 * (BF[2]
                    + u2 * (BF[3]
                        + u2 * (BF[4]
                            + u2 * (BF[5]
                                + u2 * (BF[6]
                                    + u2 * (BF[7] + u2 * (BF[8] + u2 * BF[9])))))))));
    sgn * series + rest
}

/// One crossing term of W: sign and the (a, b, c, d) region-variable slots
/// (0-based indices into the w vector).
#[derive(Debug, Clone, Copy)]
pub struct CrossingTerm {
    pub sign: i8,
    pub slots: [usize; 4],
}

#[derive(Debug, Clone)]
pub struct PotentialFunction {
    pub terms: Vec<CrossingTerm>,
    pub n_vars: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum PotentialError {
    #[error("region variable w{} is zero", k + 1)]
    ZeroVariable { k: usize },
    #[error("singular dilogarithm argument (ratio = 1) in the term of crossing {}", crossing + 1)]
    Singular { crossing: usize },
}

/// Assemble W from the diagram's signs and quadrant slots.
pub fn build_potential(diagram: &LinkDiagram) -> PotentialFunction {
    let terms = diagram
        .signs
        .iter()
        .zip(diagram.quadrants.iter())
        .map(|(&sign, &slots)| CrossingTerm { sign, slots })
        .collect();
    PotentialFunction {
        terms,
        n_vars: diagram.n_regions(),
    }
}

fn check_vars(w: &[Complex64]) -> Result<(), PotentialError> {
    match w.iter().position(|x| x.norm() == 0.0) {
        Some(k) => Err(PotentialError::ZeroVariable { k }),
        None => Ok(()),
    }
}

impl PotentialFunction {
    /// W(w) with principal branches throughout.
    pub fn eval_w(&self, w: &[Complex64]) -> Result<Complex64, PotentialError> {
        assert_eq!(w.len(), self.n_vars);
        check_vars(w)?;
        let mut total = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let [wa, wb, wc, wd] = t.slots.map(|k| w[k]);
            let s = t.sign as f64;
            let bracket = -dilog(wc / wb) - dilog(wc / wd) + dilog(wa * wc / (wb * wd))
                + dilog(wb / wa)
                + dilog(wd / wa)
                - Complex64::new(PI * PI / 6.0, 0.0)
                + (wb / wa).ln() * (wd / wa).ln();
            total += s * bracket;
        }
        Ok(total)
    }

    /// The vector of w_k·∂W/∂w_k, assembled analytically from
    /// ∂Li₂(z)/∂z = −log(1−z)/z and the log·log product rule.
    pub fn grad_w(&self, w: &[Complex64]) -> Result<Vec<Complex64>, PotentialError> {
        assert_eq!(w.len(), self.n_vars);
        check_vars(w)?;
        let mut g = vec![Complex64::new(0.0, 0.0); self.n_vars];
        for (ci, t) in self.terms.iter().enumerate() {
            let [a, b, c, d] = t.slots;
            let [wa, wb, wc, wd] = t.slots.map(|k| w[k]);
            let s = t.sign as f64;
            // w_k d/dw_k Li2(u) = e_k * (-log(1-u)), e_k = exponent of w_k in u
            let add_li2 = |g: &mut Vec<Complex64>,
                               coef: f64,
                               u: Complex64,
                               exps: &[(usize, f64)]|
             -> Result<(), PotentialError> {
                if (1.0 - u).norm() == 0.0 {
                    return Err(PotentialError::Singular { crossing: ci });
                }
                let l = -(1.0 - u).ln();
                for &(k, e) in exps {
                    g[k] += s * coef * e * l;
                }
                Ok(())
            };
            add_li2(&mut g, -1.0, wc / wb, &[(c, 1.0), (b, -1.0)])?;
            add_li2(&mut g, -1.0, wc / wd, &[(c, 1.0), (d, -1.0)])?;
            add_li2(
                &mut g,
                1.0,
                wa * wc / (wb * wd),
                &[(a, 1.0), (c, 1.0), (b, -1.0), (d, -1.0)],
            )?;
            add_li2(&mut g, 1.0, wb / wa, &[(b, 1.0), (a, -1.0)])?;
            add_li2(&mut g, 1.0, wd / wa, &[(d, 1.0), (a, -1.0)])?;
            let lb = (wb / wa).ln();
            let ld = (wd / wa).ln();
            g[b] += s * ld;
            g[d] += s * lb;
            g[a] -= s * (lb + ld);
        }
        Ok(g)
    }

    /// Residuals |exp(w_k ∂W/∂w_k) − 1| of the hyperbolicity equations.
    pub fn residuals(&self, w: &[Complex64]) -> Result<Vec<f64>, PotentialError> {
        Ok(self
            .grad_w(w)?
            .iter()
            .map(|g| (g.exp() - 1.0).norm())
            .collect())
    }

    /// W₀(w) = W(w) − Σ (w_k ∂W/∂w_k) log w_k, meaningful mod π² at solutions.
    pub fn eval_w0(&self, w: &[Complex64]) -> Result<Complex64, PotentialError> {
        let grad = self.grad_w(w)?;
        let mut out = self.eval_w(w)?;
        for (g, wk) in grad.iter().zip(w.iter()) {
            out -= g * wk.ln();
        }
        Ok(out)
    }
}

fn ratio(num: usize, den: usize) -> String {
    format!("w{}/w{}", num + 1, den + 1)
}

fn product_ratio(slots: [usize; 4]) -> String {
    let pair = |i: usize, j: usize| {
        let (lo, hi) = (i.min(j), i.max(j));
        if lo == hi {
            format!("w{}^2", lo + 1)
        } else {
            format!("w{}*w{}", lo + 1, hi + 1)
        }
    };
    let [a, b, c, d] = slots;
    format!("{}/({})", pair(a, c), pair(b, d))
}

impl fmt::Display for PotentialFunction {
    /// One bracket per crossing, signs written out.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let [a, b, c, d] = t.slots;
            let (p, m) = if t.sign == 1 { ("+", "-") } else { ("-", "+") };
            // the leading term carries no explicit "+"
            let lead = if t.sign == 1 { "-" } else { "" };
            if i > 0 {
                writeln!(f, "+")?;
            }
            writeln!(
                f,
                "{{ {lead}Li2({}) {m} Li2({}) {p} Li2({}) {p} Li2({}) {p} Li2({}) {m} pi^2/6 {p} log({})*log({}) }}",
                ratio(c, b),
                ratio(c, d),
                product_ratio(t.slots),
                ratio(b, a),
                ratio(d, a),
                ratio(b, a),
                ratio(d, a),
            )?;
        }
        Ok(())
    }
}
