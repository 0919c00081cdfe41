//! Shared distribution and small-matrix helpers.

use statrs::distribution::{Continuous, ContinuousCDF, Normal, StudentsT};

pub const LN_2PI: f64 = 1.837877066409345483560659472811;

pub fn norm_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

pub fn norm_cdf(x: f64) -> f64 {
    Normal::standard().cdf(x)
}

/// Standard normal quantile, one Newton step on top of the library inverse
/// to pin the round trip.
pub fn norm_ppf(u: f64) -> f64 {
    let mut x = Normal::standard().inverse_cdf(u);
    let f = norm_pdf(x);
    if f > 1e-300 {
        x -= (norm_cdf(x) - u) / f;
    }
    x
}

/// Student-t density with `nu` degrees of freedom.
pub fn t_pdf(x: f64, nu: f64) -> f64 {
    StudentsT::new(0.0, 1.0, nu).expect("nu > 0").pdf(x)
}

pub fn t_logpdf(x: f64, nu: f64) -> f64 {
    StudentsT::new(0.0, 1.0, nu).expect("nu > 0").ln_pdf(x)
}

pub fn t_cdf(x: f64, nu: f64) -> f64 {
    StudentsT::new(0.0, 1.0, nu).expect("nu > 0").cdf(x)
}

/// Student-t quantile, polished with two Newton steps so the value is smooth
/// in nu at the level the stencil derivatives require.
pub fn t_ppf(u: f64, nu: f64) -> f64 {
    let d = StudentsT::new(0.0, 1.0, nu).expect("nu > 0");
    let mut x = d.inverse_cdf(u);
    for _ in 0..2 {
        let f = d.pdf(x);
        if f < 1e-300 {
            break;
        }
        let step = (d.cdf(x) - u) / f;
        x -= step.clamp(-1.0, 1.0);
    }
    x
}

/// Second derivative of a quotient n/g with respect to arguments a, b, from
/// the values and partials of numerator and denominator.
#[allow(clippy::too_many_arguments)]
pub fn quotient_d2(
    n: f64,
    g: f64,
    n_a: f64,
    n_b: f64,
    n_ab: f64,
    g_a: f64,
    g_b: f64,
    g_ab: f64,
) -> f64 {
    n_ab / g - n_a * g_b / (g * g) - n_b * g_a / (g * g) - n * g_ab / (g * g)
        + 2.0 * n * g_a * g_b / (g * g * g)
}

/// First derivative of a quotient n/g.
pub fn quotient_d1(n: f64, g: f64, n_a: f64, g_a: f64) -> f64 {
    (n_a * g - n * g_a) / (g * g)
}
