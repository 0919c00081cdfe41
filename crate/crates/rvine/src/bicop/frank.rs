//! Frank pair copula.
//!
//! log c = log(theta (1-E)) - theta (u1+u2) - 2 log|G|
//! with E = exp(-theta), Ei = exp(-theta ui),
//! G = (E-1) + (E1-1)(E2-1), and h(u1|u2) = E2 (E1-1) / G.
//! G and E1-1 always carry the same sign, so ratios are safe for theta < 0.

use super::{Kern1, Kern2};
use crate::util::{quotient_d1, quotient_d2};

struct Blocks {
    e: f64,
    e1: f64,
    e2: f64,
    g: f64,
    g_u1: f64,
    g_u2: f64,
    g_t: f64,
}

fn blocks(u1: f64, u2: f64, th: f64) -> Blocks {
    let e = (-th).exp();
    let e1 = (-th * u1).exp();
    let e2 = (-th * u2).exp();
    // expm1 keeps precision near the excluded theta ~ 0 boundary
    let g = (-th).exp_m1() + (-th * u1).exp_m1() * (-th * u2).exp_m1();
    Blocks {
        e,
        e1,
        e2,
        g,
        g_u1: -th * e1 * (e2 - 1.0),
        g_u2: -th * e2 * (e1 - 1.0),
        g_t: -e - u1 * e1 * (e2 - 1.0) - u2 * e2 * (e1 - 1.0),
    }
}

pub(crate) fn logpdf(u1: f64, u2: f64, th: f64) -> f64 {
    let b = blocks(u1, u2, th);
    (th * (1.0 - b.e)).ln() - th * (u1 + u2) - 2.0 * b.g.abs().ln()
}

pub(crate) fn hfun(u1: f64, u2: f64, th: f64) -> f64 {
    let b = blocks(u1, u2, th);
    (b.e2 * (b.e1 - 1.0) / b.g).clamp(0.0, 1.0)
}

/// Closed-form inverse of h in the first argument.
pub(crate) fn hinv(w: f64, u2: f64, th: f64) -> f64 {
    let e = (-th).exp();
    let e2 = (-th * u2).exp();
    let e1m1 = w * (e - 1.0) / (e2 - w * (e2 - 1.0));
    -(e1m1.ln_1p()) / th
}

pub(crate) fn kern1(u1: f64, u2: f64, th: f64) -> Kern1 {
    let b = blocks(u1, u2, th);
    let logpdf = (th * (1.0 - b.e)).ln() - th * (u1 + u2) - 2.0 * b.g.abs().ln();
    let lt = 1.0 / th + b.e / (1.0 - b.e) - (u1 + u2) - 2.0 * b.g_t / b.g;

    // h(u1|u2) = n/g with n = e2 (e1 - 1)
    let n = b.e2 * (b.e1 - 1.0);
    let n_u2 = -th * n;
    let n_t = -u2 * n - u1 * b.e1 * b.e2;
    // h(u2|u1) = m/g with m = e1 (e2 - 1)
    let m = b.e1 * (b.e2 - 1.0);
    let m_u1 = -th * m;
    let m_t = -u1 * m - u2 * b.e1 * b.e2;

    Kern1 {
        logpdf,
        l1: -th - 2.0 * b.g_u1 / b.g,
        l2: -th - 2.0 * b.g_u2 / b.g,
        lt: [lt, 0.0],
        hf: n / b.g,
        hf_d2: quotient_d1(n, b.g, n_u2, b.g_u2),
        hf_dt: [quotient_d1(n, b.g, n_t, b.g_t), 0.0],
        hr: m / b.g,
        hr_d1: quotient_d1(m, b.g, m_u1, b.g_u1),
        hr_dt: [quotient_d1(m, b.g, m_t, b.g_t), 0.0],
    }
}

pub(crate) fn kern12(u1: f64, u2: f64, th: f64) -> (Kern1, Kern2) {
    let k1 = kern1(u1, u2, th);
    let b = blocks(u1, u2, th);
    let (e1, e2) = (b.e1, b.e2);
    let th2 = th * th;

    let g_u1u1 = th2 * e1 * (e2 - 1.0);
    let g_u2u2 = th2 * e2 * (e1 - 1.0);
    let g_u1u2 = th2 * e1 * e2;
    let g_tu1 = -e1 * (e2 - 1.0) + th * u1 * e1 * (e2 - 1.0) + th * u2 * e1 * e2;
    let g_tu2 = -e2 * (e1 - 1.0) + th * u2 * e2 * (e1 - 1.0) + th * u1 * e1 * e2;
    let g_tt = b.e
        + u1 * u1 * e1 * (e2 - 1.0)
        + u2 * u2 * e2 * (e1 - 1.0)
        + 2.0 * u1 * u2 * e1 * e2;

    let dratio = |f_a: f64, f_ab: f64, f_b: f64| -> f64 {
        // d/d b of (f_a / g) where f_a, g depend on both args
        f_ab / b.g - f_a * f_b / (b.g * b.g)
    };
    let l11 = -2.0 * dratio(b.g_u1, g_u1u1, b.g_u1);
    let l12 = -2.0 * dratio(b.g_u1, g_u1u2, b.g_u2);
    let l22 = -2.0 * dratio(b.g_u2, g_u2u2, b.g_u2);
    let lt1 = -1.0 - 2.0 * (g_tu1 / b.g - b.g_t * b.g_u1 / (b.g * b.g));
    let lt2 = -1.0 - 2.0 * (g_tu2 / b.g - b.g_t * b.g_u2 / (b.g * b.g));
    let one_me = 1.0 - b.e;
    let ltt = -1.0 / th2 - b.e / (one_me * one_me)
        - 2.0 * (g_tt / b.g - b.g_t * b.g_t / (b.g * b.g));

    // h(u1|u2) = n/g
    let n = e2 * (e1 - 1.0);
    let n_u2 = -th * n;
    let n_t = -u2 * n - u1 * e1 * e2;
    let n_u2u2 = th2 * n;
    let n_tu2 = -e2 * (e1 - 1.0) + th * (u2 * e2 * (e1 - 1.0) + u1 * e1 * e2);
    let n_tt = u2 * u2 * e2 * (e1 - 1.0) + u1 * u1 * e1 * e2 + 2.0 * u1 * u2 * e1 * e2;
    let hf_d22 = quotient_d2(n, b.g, n_u2, n_u2, n_u2u2, b.g_u2, b.g_u2, g_u2u2);
    let hf_dt2 = quotient_d2(n, b.g, n_t, n_u2, n_tu2, b.g_t, b.g_u2, g_tu2);
    let hf_dtt = quotient_d2(n, b.g, n_t, n_t, n_tt, b.g_t, b.g_t, g_tt);

    // h(u2|u1) = m/g, mirror with u1 <-> u2
    let m = e1 * (e2 - 1.0);
    let m_u1 = -th * m;
    let m_t = -u1 * m - u2 * e1 * e2;
    let m_u1u1 = th2 * m;
    let m_tu1 = -e1 * (e2 - 1.0) + th * (u1 * e1 * (e2 - 1.0) + u2 * e1 * e2);
    let m_tt = u1 * u1 * e1 * (e2 - 1.0) + u2 * u2 * e1 * e2 + 2.0 * u1 * u2 * e1 * e2;
    let hr_d11 = quotient_d2(m, b.g, m_u1, m_u1, m_u1u1, b.g_u1, b.g_u1, g_u1u1);
    let hr_dt1 = quotient_d2(m, b.g, m_t, m_u1, m_tu1, b.g_t, b.g_u1, g_tu1);
    let hr_dtt = quotient_d2(m, b.g, m_t, m_t, m_tt, b.g_t, b.g_t, g_tt);

    let k2 = Kern2 {
        l11,
        l12,
        l22,
        lt1: [lt1, 0.0],
        lt2: [lt2, 0.0],
        ltt: [[ltt, 0.0], [0.0, 0.0]],
        hf_d22,
        hf_dt2: [hf_dt2, 0.0],
        hf_dtt: [[hf_dtt, 0.0], [0.0, 0.0]],
        hr_d11,
        hr_dt1: [hr_dt1, 0.0],
        hr_dtt: [[hr_dtt, 0.0], [0.0, 0.0]],
    };
    (k1, k2)
}
