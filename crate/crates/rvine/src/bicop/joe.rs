//! Joe pair copula, theta >= 1.
//!
//! With b_i = 1-u_i, a_i = b_i^th, S = a1 + a2 - a1 a2, R = th - 1 + S:
//!   log c = (1/th - 2) ln S + (th-1)(ln b1 + ln b2) + ln R
//!   h(u1|u2) = S^(1/th - 1) (1 - a1) b2^(th-1)   (log-form used for derivs)

use super::{Kern1, Kern2};

#[allow(clippy::too_many_lines)]
struct Blocks {
    b1: f64,
    b2: f64,
    lb1: f64,
    lb2: f64,
    a1: f64,
    a2: f64,
    s: f64,
    lns: f64,
    // first partials (u-derivatives are w.r.t. u, not b)
    a1_u: f64,
    a2_u: f64,
    a1_t: f64,
    a2_t: f64,
    s_1: f64,
    s_2: f64,
    s_t: f64,
    // second partials
    a1_uu: f64,
    a2_uu: f64,
    a1_ut: f64,
    a2_ut: f64,
    a1_tt: f64,
    a2_tt: f64,
    s_11: f64,
    s_22: f64,
    s_12: f64,
    s_1t: f64,
    s_2t: f64,
    s_tt: f64,
}

fn blocks(u1: f64, u2: f64, th: f64) -> Blocks {
    let b1 = 1.0 - u1;
    let b2 = 1.0 - u2;
    let (lb1, lb2) = (b1.ln(), b2.ln());
    let a1 = b1.powf(th);
    let a2 = b2.powf(th);
    let s = a1 + a2 - a1 * a2;
    let a1_u = -th * b1.powf(th - 1.0);
    let a2_u = -th * b2.powf(th - 1.0);
    let a1_t = a1 * lb1;
    let a2_t = a2 * lb2;
    let a1_uu = th * (th - 1.0) * b1.powf(th - 2.0);
    let a2_uu = th * (th - 1.0) * b2.powf(th - 2.0);
    let a1_ut = a1_u * (1.0 / th + lb1);
    let a2_ut = a2_u * (1.0 / th + lb2);
    let a1_tt = a1 * lb1 * lb1;
    let a2_tt = a2 * lb2 * lb2;
    Blocks {
        b1,
        b2,
        lb1,
        lb2,
        a1,
        a2,
        s,
        lns: s.ln(),
        a1_u,
        a2_u,
        a1_t,
        a2_t,
        s_1: a1_u * (1.0 - a2),
        s_2: a2_u * (1.0 - a1),
        s_t: a1_t * (1.0 - a2) + a2_t * (1.0 - a1),
        a1_uu,
        a2_uu,
        a1_ut,
        a2_ut,
        a1_tt,
        a2_tt,
        s_11: a1_uu * (1.0 - a2),
        s_22: a2_uu * (1.0 - a1),
        s_12: -a1_u * a2_u,
        s_1t: a1_ut * (1.0 - a2) - a1_u * a2_t,
        s_2t: a2_ut * (1.0 - a1) - a2_u * a1_t,
        s_tt: a1_tt * (1.0 - a2) + a2_tt * (1.0 - a1) - 2.0 * a1_t * a2_t,
    }
}

pub(crate) fn logpdf(u1: f64, u2: f64, th: f64) -> f64 {
    let b = blocks(u1, u2, th);
    (1.0 / th - 2.0) * b.lns + (th - 1.0) * (b.lb1 + b.lb2) + (th - 1.0 + b.s).ln()
}

pub(crate) fn hfun(u1: f64, u2: f64, th: f64) -> f64 {
    let b = blocks(u1, u2, th);
    ((1.0 / th - 1.0) * b.lns + (1.0 - b.a1).ln() + (th - 1.0) * b.lb2).exp()
}

pub(crate) fn kern1(u1: f64, u2: f64, th: f64) -> Kern1 {
    let b = blocks(u1, u2, th);
    let r = th - 1.0 + b.s;
    let c2 = 1.0 / th - 2.0;
    let logpdf = c2 * b.lns + (th - 1.0) * (b.lb1 + b.lb2) + r.ln();
    let l1 = c2 * b.s_1 / b.s - (th - 1.0) / b.b1 + b.s_1 / r;
    let l2 = c2 * b.s_2 / b.s - (th - 1.0) / b.b2 + b.s_2 / r;
    let lt = -b.lns / (th * th) + c2 * b.s_t / b.s + (b.lb1 + b.lb2) + (1.0 + b.s_t) / r;

    let c1 = 1.0 / th - 1.0;
    let hf = (c1 * b.lns + (1.0 - b.a1).ln() + (th - 1.0) * b.lb2).exp();
    let hf_h2 = c1 * b.s_2 / b.s - (th - 1.0) / b.b2;
    let hf_ht = -b.lns / (th * th) + c1 * b.s_t / b.s - b.a1_t / (1.0 - b.a1) + b.lb2;
    let hr = (c1 * b.lns + (1.0 - b.a2).ln() + (th - 1.0) * b.lb1).exp();
    let hr_h1 = c1 * b.s_1 / b.s - (th - 1.0) / b.b1;
    let hr_ht = -b.lns / (th * th) + c1 * b.s_t / b.s - b.a2_t / (1.0 - b.a2) + b.lb1;

    Kern1 {
        logpdf,
        l1,
        l2,
        lt: [lt, 0.0],
        hf,
        hf_d2: hf * hf_h2,
        hf_dt: [hf * hf_ht, 0.0],
        hr,
        hr_d1: hr * hr_h1,
        hr_dt: [hr * hr_ht, 0.0],
    }
}

pub(crate) fn kern12(u1: f64, u2: f64, th: f64) -> (Kern1, Kern2) {
    let k1 = kern1(u1, u2, th);
    let b = blocks(u1, u2, th);
    let r = th - 1.0 + b.s;
    let th2 = th * th;
    let c2 = 1.0 / th - 2.0;
    let c1 = 1.0 / th - 1.0;
    let s = b.s;
    let s2 = s * s;
    let r2 = r * r;
    let r_t = 1.0 + b.s_t;

    let l11 = c2 * (b.s_11 / s - b.s_1 * b.s_1 / s2) - (th - 1.0) / (b.b1 * b.b1)
        + b.s_11 / r
        - b.s_1 * b.s_1 / r2;
    let l22 = c2 * (b.s_22 / s - b.s_2 * b.s_2 / s2) - (th - 1.0) / (b.b2 * b.b2)
        + b.s_22 / r
        - b.s_2 * b.s_2 / r2;
    let l12 = c2 * (b.s_12 / s - b.s_1 * b.s_2 / s2) + b.s_12 / r - b.s_1 * b.s_2 / r2;
    let lt1 = -b.s_1 / (s * th2) + c2 * (b.s_1t / s - b.s_1 * b.s_t / s2) - 1.0 / b.b1
        + b.s_1t / r
        - b.s_1 * r_t / r2;
    let lt2 = -b.s_2 / (s * th2) + c2 * (b.s_2t / s - b.s_2 * b.s_t / s2) - 1.0 / b.b2
        + b.s_2t / r
        - b.s_2 * r_t / r2;
    let ltt = 2.0 * b.lns / (th2 * th) - 2.0 * b.s_t / (s * th2)
        + c2 * (b.s_tt / s - b.s_t * b.s_t / s2)
        + b.s_tt / r
        - r_t * r_t / r2;

    // h(u1|u2) log-form second derivatives
    let one_a1 = 1.0 - b.a1;
    let one_a2 = 1.0 - b.a2;
    let hf = k1.hf;
    let hf_h2 = k1.hf_d2 / hf;
    let hf_ht = k1.hf_dt[0] / hf;
    let h22 = c1 * (b.s_22 / s - b.s_2 * b.s_2 / s2) - (th - 1.0) / (b.b2 * b.b2);
    let ht2 = -b.s_2 / (s * th2) + c1 * (b.s_2t / s - b.s_2 * b.s_t / s2) - 1.0 / b.b2;
    let htt = 2.0 * b.lns / (th2 * th) - 2.0 * b.s_t / (s * th2)
        + c1 * (b.s_tt / s - b.s_t * b.s_t / s2)
        - (b.a1_tt * one_a1 + b.a1_t * b.a1_t) / (one_a1 * one_a1);

    let hr = k1.hr;
    let hr_h1 = k1.hr_d1 / hr;
    let hr_ht = k1.hr_dt[0] / hr;
    let g11 = c1 * (b.s_11 / s - b.s_1 * b.s_1 / s2) - (th - 1.0) / (b.b1 * b.b1);
    let gt1 = -b.s_1 / (s * th2) + c1 * (b.s_1t / s - b.s_1 * b.s_t / s2) - 1.0 / b.b1;
    let gtt = 2.0 * b.lns / (th2 * th) - 2.0 * b.s_t / (s * th2)
        + c1 * (b.s_tt / s - b.s_t * b.s_t / s2)
        - (b.a2_tt * one_a2 + b.a2_t * b.a2_t) / (one_a2 * one_a2);

    let k2 = Kern2 {
        l11,
        l12,
        l22,
        lt1: [lt1, 0.0],
        lt2: [lt2, 0.0],
        ltt: [[ltt, 0.0], [0.0, 0.0]],
        hf_d22: hf * (hf_h2 * hf_h2 + h22),
        hf_dt2: [hf * (hf_ht * hf_h2 + ht2), 0.0],
        hf_dtt: [[hf * (hf_ht * hf_ht + htt), 0.0], [0.0, 0.0]],
        hr_d11: hr * (hr_h1 * hr_h1 + g11),
        hr_dt1: [hr * (hr_ht * hr_h1 + gt1), 0.0],
        hr_dtt: [[hr * (hr_ht * hr_ht + gtt), 0.0], [0.0, 0.0]],
    };
    (k1, k2)
}
