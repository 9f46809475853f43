//! Conjugation quandle of parabolic PSL(2,C) elements.
//!
//! A parabolic element is encoded by a nonzero column vector (α, β) ∈ C²,
//! identified with the matrix [[1+αβ, −α²], [β², 1−αβ]]. The quandle operation
//! `a * b` is conjugation of `a` by `b`, the Hopf map sends an element to its
//! fixed point α/β ∈ CP¹, and `det2` is the 2×2 determinant of two column
//! vectors. Representatives are kept as given; no projective normalization.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default tolerance for comparing finite Hopf values.
pub const HOPF_EQ_TOL: f64 = 1e-10;

/// A parabolic element as a fixed representative in C² \ {0}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parabolic {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl Parabolic {
    pub fn new(alpha: Complex64, beta: Complex64) -> Self {
        Parabolic { alpha, beta }
    }

    pub fn from_re(alpha: f64, beta: f64) -> Self {
        Parabolic::new(Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.norm() == 0.0 && self.beta.norm() == 0.0
    }

    pub fn neg(&self) -> Self {
        Parabolic::new(-self.alpha, -self.beta)
    }
}

/// Point of CP¹ = C ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HopfValue {
    Finite(Complex64),
    Infinity,
}

impl HopfValue {
    /// Equality under `tol` for finite values; ∞ matches only ∞.
    pub fn approx_eq(&self, other: &HopfValue, tol: f64) -> bool {
        match (self, other) {
            (HopfValue::Finite(a), HopfValue::Finite(b)) => (a - b).norm() <= tol,
            (HopfValue::Infinity, HopfValue::Infinity) => true,
            _ => false,
        }
    }
}

/// `a * b`: conjugation of `a` by `b`, as the 2×2 matrix
/// [[1+γδ, −γ²], [δ², 1−γδ]] applied to (α, β).
pub fn star(a: &Parabolic, b: &Parabolic) -> Parabolic {
    let (g, d) = (b.alpha, b.beta);
    let gd = g * d;
    Parabolic::new(
        (1.0 + gd) * a.alpha - g * g * a.beta,
        d * d * a.alpha + (1.0 - gd) * a.beta,
    )
}

/// `a *⁻¹ b`: exact inverse of `star(·, b)`.
pub fn star_inv(a: &Parabolic, b: &Parabolic) -> Parabolic {
    let (g, d) = (b.alpha, b.beta);
    let gd = g * d;
    Parabolic::new(
        (1.0 - gd) * a.alpha + g * g * a.beta,
        -d * d * a.alpha + (1.0 + gd) * a.beta,
    )
}

/// Hopf map α/β, with ∞ exactly when β = 0.
pub fn hopf(a: &Parabolic) -> HopfValue {
    if a.beta.norm() == 0.0 {
        HopfValue::Infinity
    } else {
        HopfValue::Finite(a.alpha / a.beta)
    }
}

/// Möbius transformation of the parabolic `a` applied to z ∈ CP¹:
/// z ↦ ((1+αβ)z − α²) / (β²z + (1−αβ)).
pub fn mobius_apply(a: &Parabolic, z: &HopfValue) -> HopfValue {
    let (al, be) = (a.alpha, a.beta);
    let ab = al * be;
    match z {
        HopfValue::Finite(z) => {
            let num = (1.0 + ab) * z - al * al;
            let den = be * be * z + (1.0 - ab);
            if den.norm() == 0.0 {
                HopfValue::Infinity
            } else {
                HopfValue::Finite(num / den)
            }
        }
        HopfValue::Infinity => {
            if be.norm() == 0.0 {
                HopfValue::Infinity
            } else {
                HopfValue::Finite((1.0 + ab) / (be * be))
            }
        }
    }
}

/// det(a, b) = α₁β₂ − β₁α₂. Invariant under simultaneous right action.
pub fn det2(a: &Parabolic, b: &Parabolic) -> Complex64 {
    a.alpha * b.beta - b.alpha * a.beta
}

/// Degenerate configuration in a determinant cross-ratio.
#[derive(Debug, thiserror::Error)]
#[error("degenerate cross-ratio: vanishing determinant det(v{0}, v{1})")]
pub struct DegenerateCrossRatio(pub usize, pub usize);

/// Cross-ratio [h(v0), h(v1), h(v2), h(v3)] via determinants:
/// det(v0,v3)det(v1,v2) / (det(v0,v2)det(v1,v3)).
pub fn cross_ratio(
    v0: &Parabolic,
    v1: &Parabolic,
    v2: &Parabolic,
    v3: &Parabolic,
) -> Result<Complex64, DegenerateCrossRatio> {
    let d02 = det2(v0, v2);
    let d13 = det2(v1, v3);
    if d02.norm() == 0.0 {
        return Err(DegenerateCrossRatio(0, 2));
    }
    if d13.norm() == 0.0 {
        return Err(DegenerateCrossRatio(1, 3));
    }
    Ok(det2(v0, v3) * det2(v1, v2) / (d02 * d13))
}
