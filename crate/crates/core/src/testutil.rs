#![allow(dead_code)]
//! Random inputs shared by the property tests.

use crate::linalg::{c, ComplexMatrix};
use num_complex::Complex64;
use rand::Rng;

pub fn gaussian_c<R: Rng>(rng: &mut R) -> Complex64 {
    // Box-Muller, both components.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let th = 2.0 * std::f64::consts::PI * u2;
    c(r * th.cos(), r * th.sin())
}

pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(dim, |_, _| gaussian_c(rng));
    (&a + &a.adjoint()).scale_re(0.5)
}

/// Haar-ish random `U(2)` via Gram-Schmidt on a Gaussian matrix.
pub fn random_u2<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let v0 = [gaussian_c(rng), gaussian_c(rng)];
    let n0 = (v0[0].norm_sqr() + v0[1].norm_sqr()).sqrt();
    let (a, b) = (v0[0] / n0, v0[1] / n0);
    let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    ComplexMatrix::from_rows(&[[a, -b.conj() * phase], [b, a.conj() * phase]])
}

pub fn random_local<R: Rng>(rng: &mut R) -> ComplexMatrix {
    random_u2(rng).kron(&random_u2(rng))
}

/// A random unit spinor.
pub fn random_spinor<R: Rng>(rng: &mut R) -> (Complex64, Complex64) {
    let (x, y) = (gaussian_c(rng), gaussian_c(rng));
    let n = (x.norm_sqr() + y.norm_sqr()).sqrt();
    (x / n, y / n)
}
