//! Gumbel pair copula, theta >= 1.
//!
//! With w_i = -ln u_i, s = w1^th + w2^th, r = s^(1/th), C = exp(-r):
//!   log c = -r + w1 + w2 + (2/th - 2) ln s + (th-1)(ln w1 + ln w2)
//!           + ln(1 + (th-1)/r)
//!   h(u1|u2) = C w2^(th-1) s^(1/th - 1) / u2   (log-form used for derivs)

use super::{Kern1, Kern2};

struct Blocks {
    w1: f64,
    w2: f64,
    lw1: f64,
    lw2: f64,
    s: f64,
    lns: f64,
    r: f64,
    t: f64, // 1 + (th-1)/r
    // first partials
    w1_u: f64,
    w2_u: f64,
    s_1: f64,
    s_2: f64,
    s_t: f64,
    r_1: f64,
    r_2: f64,
    r_t: f64,
    // second partials
    s_11: f64,
    s_22: f64,
    s_1t: f64,
    s_2t: f64,
    s_tt: f64,
    r_11: f64,
    r_12: f64,
    r_22: f64,
    r_1t: f64,
    r_2t: f64,
    r_tt: f64,
}

fn blocks(u1: f64, u2: f64, th: f64) -> Blocks {
    let w1 = -u1.ln();
    let w2 = -u2.ln();
    let (lw1, lw2) = (w1.ln(), w2.ln());
    let p1 = w1.powf(th);
    let p2 = w2.powf(th);
    let s = p1 + p2;
    let lns = s.ln();
    let r = s.powf(1.0 / th);
    let w1_u = -1.0 / u1;
    let w2_u = -1.0 / u2;
    let s_1 = th * w1.powf(th - 1.0) * w1_u;
    let s_2 = th * w2.powf(th - 1.0) * w2_u;
    let s_t = p1 * lw1 + p2 * lw2;
    let pow1m = s.powf(1.0 / th - 1.0);
    let pow2m = s.powf(1.0 / th - 2.0);
    let r_1 = pow1m * s_1 / th;
    let r_2 = pow1m * s_2 / th;
    let g = -lns / (th * th) + s_t / (th * s);
    let r_t = r * g;

    let s_11 = th * (th - 1.0) * w1.powf(th - 2.0) * w1_u * w1_u
        + th * w1.powf(th - 1.0) / (u1 * u1);
    let s_22 = th * (th - 1.0) * w2.powf(th - 2.0) * w2_u * w2_u
        + th * w2.powf(th - 1.0) / (u2 * u2);
    let s_1t = s_1 * (1.0 / th + lw1);
    let s_2t = s_2 * (1.0 / th + lw2);
    let s_tt = p1 * lw1 * lw1 + p2 * lw2 * lw2;

    let r_11 = ((1.0 / th - 1.0) * pow2m * s_1 * s_1 + pow1m * s_11) / th;
    let r_12 = (1.0 / th - 1.0) * pow2m * s_1 * s_2 / th;
    let r_22 = ((1.0 / th - 1.0) * pow2m * s_2 * s_2 + pow1m * s_22) / th;
    // d/dth of r_1 = (1/th) s^(1/th - 1) s_1
    let dpow1m_t = pow1m * (-lns / (th * th) + (1.0 / th - 1.0) * s_t / s);
    let r_1t = -pow1m * s_1 / (th * th) + dpow1m_t * s_1 / th + pow1m * s_1t / th;
    let r_2t = -pow1m * s_2 / (th * th) + dpow1m_t * s_2 / th + pow1m * s_2t / th;
    let g_t = -s_t / (s * th * th) + 2.0 * lns / (th * th * th) + s_tt / (th * s)
        - s_t * (s + th * s_t) / (th * s * th * s);
    let r_tt = r * (g * g + g_t);

    Blocks {
        w1,
        w2,
        lw1,
        lw2,
        s,
        lns,
        r,
        t: 1.0 + (th - 1.0) / r,
        w1_u,
        w2_u,
        s_1,
        s_2,
        s_t,
        r_1,
        r_2,
        r_t,
        s_11,
        s_22,
        s_1t,
        s_2t,
        s_tt,
        r_11,
        r_12,
        r_22,
        r_1t,
        r_2t,
        r_tt,
    }
}

pub(crate) fn logpdf(u1: f64, u2: f64, th: f64) -> f64 {
    let b = blocks(u1, u2, th);
    -b.r + b.w1 + b.w2 + (2.0 / th - 2.0) * b.lns + (th - 1.0) * (b.lw1 + b.lw2) + b.t.ln()
}

pub(crate) fn hfun(u1: f64, u2: f64, th: f64) -> f64 {
    let b = blocks(u1, u2, th);
    (-b.r + (th - 1.0) * b.lw2 + (1.0 / th - 1.0) * b.lns + b.w2).exp()
}

pub(crate) fn kern1(u1: f64, u2: f64, th: f64) -> Kern1 {
    let b = blocks(u1, u2, th);
    let logpdf =
        -b.r + b.w1 + b.w2 + (2.0 / th - 2.0) * b.lns + (th - 1.0) * (b.lw1 + b.lw2) + b.t.ln();
    let c1 = 2.0 / th - 2.0;
    let t_1 = -(th - 1.0) * b.r_1 / (b.r * b.r);
    let t_2 = -(th - 1.0) * b.r_2 / (b.r * b.r);
    let t_t = 1.0 / b.r - (th - 1.0) * b.r_t / (b.r * b.r);
    let l1 = -b.r_1 + b.w1_u + c1 * b.s_1 / b.s + (th - 1.0) * b.w1_u / b.w1 + t_1 / b.t;
    let l2 = -b.r_2 + b.w2_u + c1 * b.s_2 / b.s + (th - 1.0) * b.w2_u / b.w2 + t_2 / b.t;
    let lt = -b.r_t - 2.0 * b.lns / (th * th) + c1 * b.s_t / b.s + (b.lw1 + b.lw2) + t_t / b.t;

    let c2 = 1.0 / th - 1.0;
    let hf = (-b.r + (th - 1.0) * b.lw2 + c2 * b.lns + b.w2).exp();
    let hf_h2 = -b.r_2 + (th - 1.0) * b.w2_u / b.w2 + c2 * b.s_2 / b.s + b.w2_u;
    let hf_ht = -b.r_t + b.lw2 - b.lns / (th * th) + c2 * b.s_t / b.s;
    let hr = (-b.r + (th - 1.0) * b.lw1 + c2 * b.lns + b.w1).exp();
    let hr_h1 = -b.r_1 + (th - 1.0) * b.w1_u / b.w1 + c2 * b.s_1 / b.s + b.w1_u;
    let hr_ht = -b.r_t + b.lw1 - b.lns / (th * th) + c2 * b.s_t / b.s;

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
    let th2 = th * th;
    let c1 = 2.0 / th - 2.0;
    let c2 = 1.0 / th - 1.0;
    let (r, s, t) = (b.r, b.s, b.t);
    let r2 = r * r;
    let r3 = r2 * r;
    let w1_uu = 1.0 / (u1 * u1);
    let w2_uu = 1.0 / (u2 * u2);

    let t_1 = -(th - 1.0) * b.r_1 / r2;
    let t_2 = -(th - 1.0) * b.r_2 / r2;
    let t_t = 1.0 / r - (th - 1.0) * b.r_t / r2;
    let t_11 = -(th - 1.0) * (b.r_11 / r2 - 2.0 * b.r_1 * b.r_1 / r3);
    let t_12 = -(th - 1.0) * (b.r_12 / r2 - 2.0 * b.r_1 * b.r_2 / r3);
    let t_22 = -(th - 1.0) * (b.r_22 / r2 - 2.0 * b.r_2 * b.r_2 / r3);
    let t_t1 = -b.r_1 / r2 - (th - 1.0) * (b.r_1t / r2 - 2.0 * b.r_1 * b.r_t / r3);
    let t_t2 = -b.r_2 / r2 - (th - 1.0) * (b.r_2t / r2 - 2.0 * b.r_2 * b.r_t / r3);
    let t_tt = -2.0 * b.r_t / r2 - (th - 1.0) * (b.r_tt / r2 - 2.0 * b.r_t * b.r_t / r3);

    let l11 = -b.r_11 + w1_uu + c1 * (b.s_11 / s - b.s_1 * b.s_1 / (s * s))
        + (th - 1.0) * (w1_uu / b.w1 - b.w1_u * b.w1_u / (b.w1 * b.w1))
        + t_11 / t
        - t_1 * t_1 / (t * t);
    let l12 = -b.r_12 - c1 * b.s_1 * b.s_2 / (s * s) + t_12 / t - t_1 * t_2 / (t * t);
    let l22 = -b.r_22 + w2_uu + c1 * (b.s_22 / s - b.s_2 * b.s_2 / (s * s))
        + (th - 1.0) * (w2_uu / b.w2 - b.w2_u * b.w2_u / (b.w2 * b.w2))
        + t_22 / t
        - t_2 * t_2 / (t * t);
    let lt1 = -b.r_1t - 2.0 * b.s_1 / (s * th2) + c1 * (b.s_1t / s - b.s_1 * b.s_t / (s * s))
        + b.w1_u / b.w1
        + t_t1 / t
        - t_1 * t_t / (t * t);
    let lt2 = -b.r_2t - 2.0 * b.s_2 / (s * th2) + c1 * (b.s_2t / s - b.s_2 * b.s_t / (s * s))
        + b.w2_u / b.w2
        + t_t2 / t
        - t_2 * t_t / (t * t);
    let ltt = -b.r_tt + 4.0 * b.lns / (th2 * th) - 4.0 * b.s_t / (s * th2)
        + c1 * (b.s_tt / s - b.s_t * b.s_t / (s * s))
        + t_tt / t
        - t_t * t_t / (t * t);

    // h(u1|u2) log-form second derivatives
    let hf = k1.hf;
    let hf_h2 = k1.hf_d2 / hf;
    let hf_ht = k1.hf_dt[0] / hf;
    let h22 = -b.r_22 + (th - 1.0) * (w2_uu / b.w2 - b.w2_u * b.w2_u / (b.w2 * b.w2))
        + c2 * (b.s_22 / s - b.s_2 * b.s_2 / (s * s))
        + w2_uu;
    let ht2 = -b.r_2t + b.w2_u / b.w2 - b.s_2 / (s * th2)
        + c2 * (b.s_2t / s - b.s_2 * b.s_t / (s * s));
    let htt = -b.r_tt + 2.0 * b.lns / (th2 * th) - 2.0 * b.s_t / (s * th2)
        + c2 * (b.s_tt / s - b.s_t * b.s_t / (s * s));

    let hr = k1.hr;
    let hr_h1 = k1.hr_d1 / hr;
    let hr_ht = k1.hr_dt[0] / hr;
    let g11 = -b.r_11 + (th - 1.0) * (w1_uu / b.w1 - b.w1_u * b.w1_u / (b.w1 * b.w1))
        + c2 * (b.s_11 / s - b.s_1 * b.s_1 / (s * s))
        + w1_uu;
    let gt1 = -b.r_1t + b.w1_u / b.w1 - b.s_1 / (s * th2)
        + c2 * (b.s_1t / s - b.s_1 * b.s_t / (s * s));
    // the theta-theta log-derivative has no w-term; identical for both orientations
    let gtt = htt;

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
