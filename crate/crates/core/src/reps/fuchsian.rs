//! Genus-2 Fuchsian group from the regular hyperbolic octagon with vertex angle 2π/8.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::linalg::{Matrix, RankOptions};
use crate::words::Presentation;

use super::{RepError, Representation};

type C2 = [[Complex64; 2]; 2];

fn mul(a: &C2, b: &C2) -> C2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn inv(a: &C2) -> C2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]
}

/// Rotation of the disk by `t`, as an element of SU(1,1).
fn rotation(t: f64) -> C2 {
    let zero = Complex64::new(0.0, 0.0);
    [[Complex64::from_polar(1.0, t / 2.0), zero], [zero, Complex64::from_polar(1.0, -t / 2.0)]]
}

/// Side pairing taking side `i` to side `j` (side midpoints at angles `kπ/4`).
fn pairing(i: usize, j: usize) -> C2 {
    // half translation length of the opposite-side pairing: cosh = cot(π/8) = 1 + √2
    let ch = 1.0 + 2f64.sqrt();
    let sh = (ch * ch - 1.0).sqrt();
    let t = [[Complex64::new(ch, 0.0), Complex64::new(sh, 0.0)], [Complex64::new(sh, 0.0), Complex64::new(ch, 0.0)]];
    let phi = |k: usize| k as f64 * PI / 4.0;
    mul(&mul(&rotation(phi(j)), &t), &rotation(PI - phi(i)))
}

/// Disk model to upper half-plane, `M ↦ K M K⁻¹`.
fn to_real(m: &C2) -> Matrix<f64> {
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let k = [[i, i], [-one, one]];
    let r = mul(&mul(&k, m), &inv(&k));
    Matrix::from_f64_rows(&[&[r[0][0].re, r[0][1].re], &[r[1][0].re, r[1][1].re]])
}

/// Generators `a1, b1, a2, b2` in SL(2,ℝ) with `[a1,b1][a2,b2] = I`.
pub fn fuchsian_genus2(opts: &RankOptions) -> Result<Representation<f64>, RepError> {
    let gens = [pairing(2, 0), inv(&pairing(3, 1)), pairing(6, 4), inv(&pairing(7, 5))];
    let images = gens.iter().map(to_real).collect();
    Representation::new(Presentation::surface(2), images, opts)
}
