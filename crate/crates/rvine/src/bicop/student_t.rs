//! Student-t pair copula (rho, nu), nu > 2.
//!
//! The (u1, u2, rho) partials are closed-form. The nu partials run through
//! the t quantile, which has no closed-form nu-derivative; they are computed
//! with high-order central-difference stencils in nu applied to the analytic
//! kernels (7 nodes / 6th order for the score bundle, 9 nodes / 8th order
//! when second derivatives are needed). Stencil truncation error is ~1e-13,
//! far below the 1e-6 relative tolerance the derivative contracts require.

use super::{Kern1, Kern2};
use crate::util::{t_cdf, t_logpdf, t_pdf, t_ppf};

pub(crate) fn logpdf(u1: f64, u2: f64, rho: f64, nu: f64) -> f64 {
    let x = t_ppf(u1, nu);
    let y = t_ppf(u2, nu);
    let s2 = 1.0 - rho * rho;
    let q = x * x + y * y - 2.0 * rho * x * y;
    -(2.0 * std::f64::consts::PI).ln() - 0.5 * s2.ln() - t_logpdf(x, nu) - t_logpdf(y, nu)
        - 0.5 * (nu + 2.0) * (q / (nu * s2)).ln_1p()
}

pub(crate) fn hfun(u1: f64, u2: f64, rho: f64, nu: f64) -> f64 {
    let x = t_ppf(u1, nu);
    let y = t_ppf(u2, nu);
    let sq = ((nu + y * y) * (1.0 - rho * rho) / (nu + 1.0)).sqrt();
    t_cdf((x - rho * y) / sq, nu + 1.0)
}

pub(crate) fn hinv(w: f64, u2: f64, rho: f64, nu: f64) -> f64 {
    let y = t_ppf(u2, nu);
    let sq = ((nu + y * y) * (1.0 - rho * rho) / (nu + 1.0)).sqrt();
    let x = t_ppf(w, nu + 1.0) * sq + rho * y;
    t_cdf(x, nu)
}

/// d log t_nu(x) / dx
fn dlndt(x: f64, nu: f64) -> f64 {
    -(nu + 1.0) * x / (nu + x * x)
}

/// d^2 log t_nu(x) / dx^2
fn d2lndt(x: f64, nu: f64) -> f64 {
    let d = nu + x * x;
    -(nu + 1.0) * (nu - x * x) / (d * d)
}

/// Everything analytic at one fixed nu: density log-derivatives in
/// (u1, u2, rho) plus both h-orientations and their (u, rho) partials.
#[derive(Debug, Clone, Copy, Default)]
struct TAt {
    logpdf: f64,
    l1: f64,
    l2: f64,
    lr: f64,
    hf: f64,
    hf_d2: f64,
    hf_dr: f64,
    hr: f64,
    hr_d1: f64,
    hr_dr: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct TAt2 {
    l11: f64,
    l12: f64,
    l22: f64,
    lr1: f64,
    lr2: f64,
    lrr: f64,
    hf_d22: f64,
    hf_dr2: f64,
    hf_drr: f64,
    hr_d11: f64,
    hr_dr1: f64,
    hr_drr: f64,
}

/// One h-orientation: conditional of the variable with score `a` given the
/// one with score `b` (density db at b). Returns value and (d_b, d_rho)
/// first partials, plus second partials when `second` is set.
#[allow(clippy::too_many_arguments)]
fn h_parts(
    a: f64,
    b: f64,
    db: f64,
    dlndt_b: f64,
    rho: f64,
    nu: f64,
    second: bool,
) -> (f64, f64, f64, f64, f64, f64) {
    let s2 = 1.0 - rho * rho;
    let sq2 = (nu + b * b) * s2 / (nu + 1.0);
    let sq = sq2.sqrt();
    let q = (a - rho * b) / sq;
    let tq = t_pdf(q, nu + 1.0);
    let h = t_cdf(q, nu + 1.0);

    let sq_b = b * s2 / ((nu + 1.0) * sq);
    let sq_r = -rho * (nu + b * b) / ((nu + 1.0) * sq);
    let q_b = (-rho - q * sq_b) / sq;
    let q_r = (-b - q * sq_r) / sq;

    // chain through b = qt(u_b; nu)
    let h_db = tq * q_b / db;
    let h_dr = tq * q_r;

    if !second {
        return (h, h_db, h_dr, 0.0, 0.0, 0.0);
    }

    let dln_q = -(nu + 2.0) * q / ((nu + 1.0) + q * q);
    let sq_bb = s2 * (sq - b * sq_b) / ((nu + 1.0) * sq2);
    let sq_rb = -rho * (2.0 * b * sq - (nu + b * b) * sq_b) / ((nu + 1.0) * sq2);
    let k = (nu + b * b) / (nu + 1.0);
    let sq_rr = -k / sq + rho * k * sq_r / sq2;
    let q_bb = -(2.0 * q_b * sq_b + q * sq_bb) / sq;
    let q_rb = (-1.0 - q_b * sq_r - q * sq_rb - q_r * sq_b) / sq;
    let q_rr = -(2.0 * q_r * sq_r + q * sq_rr) / sq;

    let h_dbb = tq * (dln_q * q_b * q_b + q_bb - q_b * dlndt_b) / (db * db);
    let h_drb = tq * (dln_q * q_b * q_r + q_rb) / db;
    let h_drr = tq * (dln_q * q_r * q_r + q_rr);
    (h, h_db, h_dr, h_dbb, h_drb, h_drr)
}

fn eval_at(u1: f64, u2: f64, rho: f64, nu: f64, second: bool) -> (TAt, TAt2) {
    let x = t_ppf(u1, nu);
    let y = t_ppf(u2, nu);
    let dtx = t_pdf(x, nu);
    let dty = t_pdf(y, nu);
    let s2 = 1.0 - rho * rho;
    let den = nu * s2;
    let q = x * x + y * y - 2.0 * rho * x * y;
    let w = 1.0 + q / den;
    let half_np2 = 0.5 * (nu + 2.0);

    let logpdf = -(2.0 * std::f64::consts::PI).ln() - 0.5 * s2.ln() - t_logpdf(x, nu)
        - t_logpdf(y, nu)
        - half_np2 * w.ln();

    let wx = (2.0 * x - 2.0 * rho * y) / den;
    let wy = (2.0 * y - 2.0 * rho * x) / den;
    let wr = (-2.0 * x * y * s2 + 2.0 * rho * q) / (nu * s2 * s2);
    let dlx = dlndt(x, nu);
    let dly = dlndt(y, nu);
    let lx = -dlx - half_np2 * wx / w;
    let ly = -dly - half_np2 * wy / w;

    let mut at = TAt {
        logpdf,
        l1: lx / dtx,
        l2: ly / dty,
        lr: rho / s2 - half_np2 * wr / w,
        ..Default::default()
    };

    let (hf, hf_d2, hf_dr, hf_d22, hf_dr2, hf_drr) = h_parts(x, y, dty, dly, rho, nu, second);
    let (hr, hr_d1, hr_dr, hr_d11, hr_dr1, hr_drr) = h_parts(y, x, dtx, dlx, rho, nu, second);
    at.hf = hf;
    at.hf_d2 = hf_d2;
    at.hf_dr = hf_dr;
    at.hr = hr;
    at.hr_d1 = hr_d1;
    at.hr_dr = hr_dr;

    if !second {
        return (at, TAt2::default());
    }

    let wxx = 2.0 / den;
    let wxy = -2.0 * rho / den;
    let wrx = (-2.0 * y * s2 + 2.0 * rho * (2.0 * x - 2.0 * rho * y)) / (nu * s2 * s2);
    let wry = (-2.0 * x * s2 + 2.0 * rho * (2.0 * y - 2.0 * rho * x)) / (nu * s2 * s2);
    // w_rho = N/D, N = -2xy s2 + 2 rho q, D = nu s2^2
    let nrr = 2.0 * q; // dN/drho
    let drr = -4.0 * nu * rho * s2; // dD/drho
    let wrr = (nrr * (nu * s2 * s2) - (-2.0 * x * y * s2 + 2.0 * rho * q) * drr)
        / (nu * s2 * s2 * nu * s2 * s2);

    let lxx = -d2lndt(x, nu) - half_np2 * (wxx / w - wx * wx / (w * w));
    let lyy = -d2lndt(y, nu) - half_np2 * (wxx / w - wy * wy / (w * w));
    let lxy = -half_np2 * (wxy / w - wx * wy / (w * w));
    let lrx = -half_np2 * (wrx / w - wr * wx / (w * w));
    let lry = -half_np2 * (wry / w - wr * wy / (w * w));

    let at2 = TAt2 {
        l11: (lxx - lx * dlx) / (dtx * dtx),
        l12: lxy / (dtx * dty),
        l22: (lyy - ly * dly) / (dty * dty),
        lr1: lrx / dtx,
        lr2: lry / dty,
        lrr: (1.0 + rho * rho) / (s2 * s2) - half_np2 * (wrr / w - wr * wr / (w * w)),
        hf_d22,
        hf_dr2,
        hf_drr,
        hr_d11,
        hr_dr1,
        hr_drr,
    };
    (at, at2)
}

/// 7-point, 6th-order central first-derivative weights (divided by h).
const W7_D1: [f64; 7] = [
    -1.0 / 60.0,
    3.0 / 20.0,
    -3.0 / 4.0,
    0.0,
    3.0 / 4.0,
    -3.0 / 20.0,
    1.0 / 60.0,
];

/// 9-point, 8th-order central first-derivative weights.
const W9_D1: [f64; 9] = [
    1.0 / 280.0,
    -4.0 / 105.0,
    1.0 / 5.0,
    -4.0 / 5.0,
    0.0,
    4.0 / 5.0,
    -1.0 / 5.0,
    4.0 / 105.0,
    -1.0 / 280.0,
];

/// 9-point, 8th-order central second-derivative weights.
const W9_D2: [f64; 9] = [
    -1.0 / 560.0,
    8.0 / 315.0,
    -1.0 / 5.0,
    8.0 / 5.0,
    -205.0 / 72.0,
    8.0 / 5.0,
    -1.0 / 5.0,
    8.0 / 315.0,
    -1.0 / 560.0,
];

fn nu_step(nu: f64, halfwidth: f64) -> f64 {
    (0.01 * nu).min(0.8 * (nu - 2.0) / halfwidth).max(1e-4)
}

pub(crate) fn kern1(u1: f64, u2: f64, rho: f64, nu: f64) -> Kern1 {
    let (c, _) = eval_at(u1, u2, rho, nu, false);
    let h = nu_step(nu, 3.0);
    let mut dlog = 0.0;
    let mut dhf = 0.0;
    let mut dhr = 0.0;
    for (k, wk) in W7_D1.iter().enumerate() {
        if *wk == 0.0 {
            continue;
        }
        let (a, _) = eval_at(u1, u2, rho, nu + (k as f64 - 3.0) * h, false);
        dlog += wk * a.logpdf;
        dhf += wk * a.hf;
        dhr += wk * a.hr;
    }
    Kern1 {
        logpdf: c.logpdf,
        l1: c.l1,
        l2: c.l2,
        lt: [c.lr, dlog / h],
        hf: c.hf,
        hf_d2: c.hf_d2,
        hf_dt: [c.hf_dr, dhf / h],
        hr: c.hr,
        hr_d1: c.hr_d1,
        hr_dt: [c.hr_dr, dhr / h],
    }
}

pub(crate) fn kern12(u1: f64, u2: f64, rho: f64, nu: f64) -> (Kern1, Kern2) {
    let (c, c2) = eval_at(u1, u2, rho, nu, true);
    let h = nu_step(nu, 4.0);

    // stencil accumulators: first derivative of [logpdf, l1, l2, lr, hf,
    // hf_d2, hf_dr, hr, hr_d1, hr_dr], second derivative of [logpdf, hf, hr]
    let mut d1 = [0.0f64; 10];
    let mut d2 = [0.0f64; 3];
    for k in 0..9 {
        let w1 = W9_D1[k];
        let w2 = W9_D2[k];
        let (a, _) = if k == 4 {
            (c, TAt2::default())
        } else {
            eval_at(u1, u2, rho, nu + (k as f64 - 4.0) * h, false)
        };
        let vals = [
            a.logpdf, a.l1, a.l2, a.lr, a.hf, a.hf_d2, a.hf_dr, a.hr, a.hr_d1, a.hr_dr,
        ];
        for (acc, v) in d1.iter_mut().zip(vals.iter()) {
            *acc += w1 * v;
        }
        d2[0] += w2 * a.logpdf;
        d2[1] += w2 * a.hf;
        d2[2] += w2 * a.hr;
    }
    for v in d1.iter_mut() {
        *v /= h;
    }
    for v in d2.iter_mut() {
        *v /= h * h;
    }

    let k1 = Kern1 {
        logpdf: c.logpdf,
        l1: c.l1,
        l2: c.l2,
        lt: [c.lr, d1[0]],
        hf: c.hf,
        hf_d2: c.hf_d2,
        hf_dt: [c.hf_dr, d1[4]],
        hr: c.hr,
        hr_d1: c.hr_d1,
        hr_dt: [c.hr_dr, d1[7]],
    };
    let k2 = Kern2 {
        l11: c2.l11,
        l12: c2.l12,
        l22: c2.l22,
        lt1: [c2.lr1, d1[1]],
        lt2: [c2.lr2, d1[2]],
        ltt: [[c2.lrr, d1[3]], [d1[3], d2[0]]],
        hf_d22: c2.hf_d22,
        hf_dt2: [c2.hf_dr2, d1[5]],
        hf_dtt: [[c2.hf_drr, d1[6]], [d1[6], d2[1]]],
        hr_d11: c2.hr_d11,
        hr_dt1: [c2.hr_dr1, d1[8]],
        hr_dtt: [[c2.hr_drr, d1[9]], [d1[9], d2[2]]],
    };
    (k1, k2)
}
