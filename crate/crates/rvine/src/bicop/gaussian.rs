//! Gaussian pair copula: density, h-function and all partials in closed form.
//!
//! With x = qnorm(u1), y = qnorm(u2), rho in (-1,1):
//!   log c = -log sqrt(1-rho^2) - [rho^2(x^2+y^2) - 2 rho x y] / (2(1-rho^2))
//!   h(u1|u2) = Phi((x - rho y)/sqrt(1-rho^2))

use super::{Kern1, Kern2};
use crate::util::{norm_cdf, norm_pdf, norm_ppf};

pub(crate) fn logpdf(u1: f64, u2: f64, rho: f64) -> f64 {
    let x = norm_ppf(u1);
    let y = norm_ppf(u2);
    let s2 = 1.0 - rho * rho;
    -0.5 * s2.ln() - (rho * rho * (x * x + y * y) - 2.0 * rho * x * y) / (2.0 * s2)
}

pub(crate) fn hfun(u1: f64, u2: f64, rho: f64) -> f64 {
    let x = norm_ppf(u1);
    let y = norm_ppf(u2);
    norm_cdf((x - rho * y) / (1.0 - rho * rho).sqrt())
}

pub(crate) fn hinv(w: f64, u2: f64, rho: f64) -> f64 {
    let y = norm_ppf(u2);
    let q = norm_ppf(w);
    norm_cdf(q * (1.0 - rho * rho).sqrt() + rho * y)
}

struct Blocks {
    x: f64,
    y: f64,
    fx: f64, // phi(x)
    fy: f64,
    s2: f64,
    s: f64,
    q: f64, // (x - rho y)/s, the h-score of u1 given u2
    fq: f64,
    p: f64, // (y - rho x)/s, score of u2 given u1
    fp: f64,
}

fn blocks(u1: f64, u2: f64, rho: f64) -> Blocks {
    let x = norm_ppf(u1);
    let y = norm_ppf(u2);
    let s2 = 1.0 - rho * rho;
    let s = s2.sqrt();
    let q = (x - rho * y) / s;
    let p = (y - rho * x) / s;
    Blocks {
        x,
        y,
        fx: norm_pdf(x),
        fy: norm_pdf(y),
        s2,
        s,
        q,
        fq: norm_pdf(q),
        p,
        fp: norm_pdf(p),
    }
}

pub(crate) fn kern1(u1: f64, u2: f64, rho: f64) -> Kern1 {
    let b = blocks(u1, u2, rho);
    let (x, y, s2, s) = (b.x, b.y, b.s2, b.s);
    let logpdf = -0.5 * s2.ln() - (rho * rho * (x * x + y * y) - 2.0 * rho * x * y) / (2.0 * s2);
    // d log c / dx = rho (y - rho x) / s2, then chain through x = qnorm(u1)
    let ax = rho * (y - rho * x) / s2;
    let ay = rho * (x - rho * y) / s2;
    let lt = rho / s2 + (x * y * (1.0 + rho * rho) - rho * (x * x + y * y)) / (s2 * s2);
    Kern1 {
        logpdf,
        l1: ax / b.fx,
        l2: ay / b.fy,
        lt: [lt, 0.0],
        hf: norm_cdf(b.q),
        hf_d2: -rho * b.fq / (s * b.fy),
        hf_dt: [b.fq * (rho * x - y) / (s2 * s), 0.0],
        hr: norm_cdf(b.p),
        hr_d1: -rho * b.fp / (s * b.fx),
        hr_dt: [b.fp * (rho * y - x) / (s2 * s), 0.0],
    }
}

pub(crate) fn kern12(u1: f64, u2: f64, rho: f64) -> (Kern1, Kern2) {
    let k1 = kern1(u1, u2, rho);
    let b = blocks(u1, u2, rho);
    let (x, y, s2, s) = (b.x, b.y, b.s2, b.s);
    let sumsq = x * x + y * y;
    let axx = -rho * rho / s2;
    let ax = rho * (y - rho * x) / s2;
    let ay = rho * (x - rho * y) / s2;

    // second log-derivatives; d(1/phi(x))/dx = x/phi(x)
    let l11 = (axx + ax * x) / (b.fx * b.fx);
    let l22 = (axx + ay * y) / (b.fy * b.fy);
    let l12 = (rho / s2) / (b.fx * b.fy);
    let lt1 = (y * (1.0 + rho * rho) - 2.0 * rho * x) / (s2 * s2) / b.fx;
    let lt2 = (x * (1.0 + rho * rho) - 2.0 * rho * y) / (s2 * s2) / b.fy;
    let ltt = (1.0 + rho * rho) / (s2 * s2)
        + (2.0 * rho * x * y - sumsq) / (s2 * s2)
        + (x * y * (1.0 + rho * rho) - rho * sumsq) * 4.0 * rho / (s2 * s2 * s2);

    // h(u1|u2) = Phi(q): second-order pieces
    let q_rho = (rho * x - y) / (s2 * s);
    let q_rhorho = x / (s2 * s) + 3.0 * rho * (rho * x - y) / (s2 * s2 * s);
    let hf_d22 = (-rho / s) * b.fq * (b.q * rho / s + y) / (b.fy * b.fy);
    let hf_dt2 = b.fq * (rho * b.q * q_rho / s - 1.0 / (s2 * s)) / b.fy;
    let hf_dtt = b.fq * (q_rhorho - b.q * q_rho * q_rho);

    // mirror for h(u2|u1) = Phi(p); p = (y - rho x)/s
    let p_rho = (rho * y - x) / (s2 * s);
    let p_rhorho = y / (s2 * s) + 3.0 * rho * (rho * y - x) / (s2 * s2 * s);
    let hr_d11 = (-rho / s) * b.fp * (b.p * rho / s + x) / (b.fx * b.fx);
    let hr_dt1 = b.fp * (rho * b.p * p_rho / s - 1.0 / (s2 * s)) / b.fx;
    let hr_dtt = b.fp * (p_rhorho - b.p * p_rho * p_rho);

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
