//! Built-in example data: the figure-eight knot and a four-crossing trefoil
//! diagram (one kink), together with the shadow-colorings used in the worked
//! examples. Handy for tests and for the bundled job files.

use crate::quandle::Parabolic;
use num_complex::Complex64;

/// Figure-eight knot, four crossings. Edge ids run along the strand; the `R`
/// and `A` lines pin region and arc numbering.
pub const FIG8_PD: &str = "\
# figure-eight knot 4_1
X 1 4 2 5 over=4
X 5 8 6 1 over=8
X 7 3 8 2 over=2
X 3 7 4 6 over=6
R 1 1 4 6
R 2 1 5
R 3 2 5 8
R 4 2 4 7
R 5 3 7
R 6 3 6 8
A 1 6 7
A 2 8 1
A 3 2 3
A 4 4 5
";

/// Trefoil drawn with four crossings, one of them a kink.
pub const TREFOIL_PD: &str = "\
# trefoil knot 3_1, diagram with a kink
X 1 5 2 4 over=4
X 5 3 6 2 over=2
X 3 1 4 8 over=8
X 7 6 8 7 over=6
R 1 2 4 6 7 8
R 2 2 5
R 3 1 4
R 4 3 6 8
R 5 1 3 5
R 6 7
A 1 2 3
A 2 4 5
A 3 8 1
A 4 6 7
";

/// A primitive cube root of unity, the root with negative imaginary part:
/// t = (−1 − √3·i)/2, satisfying t² + t + 1 = 0.
pub fn omega_minus() -> Complex64 {
    Complex64::new(-0.5, -(3f64).sqrt() / 2.0)
}

/// The conjugate root t = (−1 + √3·i)/2.
pub fn omega_plus() -> Complex64 {
    Complex64::new(-0.5, (3f64).sqrt() / 2.0)
}

/// Figure-eight arc colors a₁..a₄ for a given root t of t²+t+1=0.
pub fn fig8_arc_colors(t: Complex64) -> Vec<Parabolic> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    vec![
        Parabolic::new(zero, t),
        Parabolic::new(one, zero),
        Parabolic::new(-t, one + t),
        Parabolic::new(-t, t),
    ]
}

/// Figure-eight region colors s₁..s₆ for the same t.
pub fn fig8_region_colors(t: Complex64) -> Vec<Parabolic> {
    let one = Complex64::new(1.0, 0.0);
    vec![
        Parabolic::new(one, one),
        Parabolic::new(0.0 * one, one),
        Parabolic::new(-t - 1.0, t + 2.0),
        Parabolic::new(-2.0 * t - 1.0, 2.0 * t + 3.0),
        Parabolic::new(-2.0 * t - 1.0, t + 4.0),
        Parabolic::new(one, t + 2.0),
    ]
}

/// Trefoil arc colors a₁..a₄ (a₃ = a₄).
pub fn trefoil_arc_colors() -> Vec<Parabolic> {
    vec![
        Parabolic::from_re(1.0, 0.0),
        Parabolic::from_re(0.0, 1.0),
        Parabolic::from_re(-1.0, 1.0),
        Parabolic::from_re(-1.0, 1.0),
    ]
}

/// Trefoil region colors s₁..s₆.
pub fn trefoil_region_colors() -> Vec<Parabolic> {
    vec![
        Parabolic::from_re(-1.0, 2.0),
        Parabolic::from_re(1.0, 2.0),
        Parabolic::from_re(-1.0, 3.0),
        Parabolic::from_re(0.0, 1.0),
        Parabolic::from_re(1.0, 1.0),
        Parabolic::from_re(-2.0, 3.0),
    ]
}

/// The auxiliary point p = (2, 1) used by both examples.
pub fn example_p() -> Parabolic {
    Parabolic::from_re(2.0, 1.0)
}

/// Hyperbolic volume of the figure-eight knot complement.
pub const VOL_FIG8: f64 = 2.029883212819307;
