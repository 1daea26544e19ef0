//! Minimal dense complex matrix helpers for fixed small dimensions.

use num_complex::Complex64;

pub type CMat<const D: usize> = [[Complex64; D]; D];

pub fn zero<const D: usize>() -> CMat<D> {
    [[Complex64::new(0.0, 0.0); D]; D]
}

pub fn identity<const D: usize>() -> CMat<D> {
    let mut m = zero::<D>();
    for i in 0..D {
        m[i][i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn mat_mul<const D: usize>(a: &CMat<D>, b: &CMat<D>) -> CMat<D> {
    let mut out = zero::<D>();
    for i in 0..D {
        for j in 0..D {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..D {
                acc += a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn adjoint<const D: usize>(a: &CMat<D>) -> CMat<D> {
    let mut out = zero::<D>();
    for i in 0..D {
        for j in 0..D {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

/// Max absolute entry of (u†u − I).
pub fn unitarity_deviation<const D: usize>(u: &CMat<D>) -> f64 {
    let gram = mat_mul(&adjoint(u), u);
    let mut dev: f64 = 0.0;
    for i in 0..D {
        for j in 0..D {
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((gram[i][j] - target).norm());
        }
    }
    dev
}

pub fn phase(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}
