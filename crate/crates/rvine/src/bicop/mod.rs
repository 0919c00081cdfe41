//! Bivariate copula families: densities, h-functions (conditional CDFs),
//! h-inverses, and the first/second partial derivative bundles consumed by
//! the vine score and observed-information recursions.
//!
//! Conventions used throughout:
//! * `h1(u1, u2)` is the conditional CDF of the *first* argument given the
//!   second, i.e. dC(u1,u2)/du2. `h2` conditions the second on the first.
//! * Derivative identities dh1/du1 = c, d^2 h1/du1^2 = dc/du1, etc. are not
//!   stored; callers read them off the density entries.
//! * The single supported rotation reflects the second argument:
//!   c_rot(u1, u2) = c(u1, 1-u2).

mod frank;
mod gaussian;
mod gumbel;
mod joe;
mod student_t;
pub mod tau;

use crate::error::{Result, RvineError};

/// Copula-scale values are clamped into [EPS_U, 1-EPS_U] before evaluation;
/// every family's density and derivatives are singular at the boundary.
pub const EPS_U: f64 = 1e-10;

/// Clamp a copula-scale value into the working-interior interval.
pub fn clamp_u(u: f64) -> f64 {
    u.clamp(EPS_U, 1.0 - EPS_U)
}

/// A pair of copula-scale arguments, strictly interior after clamping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPair {
    pub u1: f64,
    pub u2: f64,
}

impl UnitPair {
    pub fn new(u1: f64, u2: f64) -> Self {
        UnitPair {
            u1: clamp_u(u1),
            u2: clamp_u(u2),
        }
    }
}

/// The parametric families of the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyCode {
    Independence,
    Gaussian,
    StudentT,
    Frank,
    Gumbel,
    Joe,
}

/// Rotation of a pair copula. `SecondArgReflected` is c(u1, 1-u2), used to
/// fit negatively dependent data with families that only cover positive
/// dependence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Rotation {
    #[default]
    None,
    SecondArgReflected,
}

/// Family tag: the family plus its rotation state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyTag {
    pub code: FamilyCode,
    pub rotation: Rotation,
}

impl FamilyTag {
    pub fn new(code: FamilyCode, rotation: Rotation) -> Self {
        FamilyTag { code, rotation }
    }

    pub fn plain(code: FamilyCode) -> Self {
        FamilyTag {
            code,
            rotation: Rotation::None,
        }
    }

    /// Number of parameter slots carried by the family.
    pub fn npar(&self) -> usize {
        match self.code {
            FamilyCode::Independence => 0,
            FamilyCode::StudentT => 2,
            _ => 1,
        }
    }

    /// Numeric code for spec files: 0=Independence, 1=Gaussian, 2=StudentT,
    /// 3=Frank, 4=Gumbel, 5=Joe; suffix "r" marks the reflected rotation.
    pub fn file_code(&self) -> String {
        let n = match self.code {
            FamilyCode::Independence => 0,
            FamilyCode::Gaussian => 1,
            FamilyCode::StudentT => 2,
            FamilyCode::Frank => 3,
            FamilyCode::Gumbel => 4,
            FamilyCode::Joe => 5,
        };
        match self.rotation {
            Rotation::None => n.to_string(),
            Rotation::SecondArgReflected => format!("{n}r"),
        }
    }

    pub fn from_file_code(s: &str) -> Result<Self> {
        let (num, rot) = match s.strip_suffix('r') {
            Some(head) => (head, Rotation::SecondArgReflected),
            None => (s, Rotation::None),
        };
        let code = match num {
            "0" => FamilyCode::Independence,
            "1" => FamilyCode::Gaussian,
            "2" => FamilyCode::StudentT,
            "3" => FamilyCode::Frank,
            "4" => FamilyCode::Gumbel,
            "5" => FamilyCode::Joe,
            other => {
                return Err(RvineError::Domain(format!(
                    "unknown family code '{other}'"
                )))
            }
        };
        if code == FamilyCode::Independence && rot == Rotation::SecondArgReflected {
            return Err(RvineError::Domain(
                "independence copula cannot be rotated".into(),
            ));
        }
        Ok(FamilyTag { code, rotation: rot })
    }

    pub fn name(&self) -> String {
        let base = match self.code {
            FamilyCode::Independence => "Indep.",
            FamilyCode::Gaussian => "Gauss",
            FamilyCode::StudentT => "Student-t",
            FamilyCode::Frank => "Frank",
            FamilyCode::Gumbel => "Gumbel",
            FamilyCode::Joe => "Joe",
        };
        match self.rotation {
            Rotation::None => base.to_string(),
            Rotation::SecondArgReflected => format!("r. {base}"),
        }
    }
}

/// Parameters of a pair copula. `theta` is the main parameter (rho for the
/// elliptical families); `nu` is the Student-t degrees of freedom and is
/// ignored by every other family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BicopParams {
    pub theta: f64,
    pub nu: f64,
}

impl BicopParams {
    pub fn new(theta: f64, nu: f64) -> Self {
        BicopParams { theta, nu }
    }

    pub fn one(theta: f64) -> Self {
        BicopParams { theta, nu: f64::NAN }
    }

    pub fn none() -> Self {
        BicopParams {
            theta: f64::NAN,
            nu: f64::NAN,
        }
    }

    pub fn slot(&self, s: usize) -> f64 {
        if s == 0 {
            self.theta
        } else {
            self.nu
        }
    }

    pub fn set_slot(&mut self, s: usize, v: f64) {
        if s == 0 {
            self.theta = v;
        } else {
            self.nu = v;
        }
    }
}

/// Frank parameters with |theta| below this are rejected; the density is
/// numerically unstable near zero and theta = 0 is excluded from the domain.
pub const FRANK_THETA_MIN: f64 = 1e-6;

/// Check that the parameters lie in the family's domain.
pub fn check_params(family: FamilyTag, p: BicopParams) -> Result<()> {
    match family.code {
        FamilyCode::Independence => Ok(()),
        FamilyCode::Gaussian => {
            if p.theta > -1.0 && p.theta < 1.0 {
                Ok(())
            } else {
                Err(RvineError::Domain(format!(
                    "Gaussian rho must be in (-1, 1), got {}",
                    p.theta
                )))
            }
        }
        FamilyCode::StudentT => {
            if !(p.theta > -1.0 && p.theta < 1.0) {
                Err(RvineError::Domain(format!(
                    "Student-t rho must be in (-1, 1), got {}",
                    p.theta
                )))
            } else if !(p.nu > 2.0) {
                Err(RvineError::Domain(format!(
                    "Student-t nu must exceed 2, got {}",
                    p.nu
                )))
            } else {
                Ok(())
            }
        }
        FamilyCode::Frank => {
            if p.theta.is_finite() && p.theta.abs() >= FRANK_THETA_MIN {
                Ok(())
            } else {
                Err(RvineError::Domain(format!(
                    "Frank theta must satisfy |theta| >= {FRANK_THETA_MIN}, got {}",
                    p.theta
                )))
            }
        }
        FamilyCode::Gumbel | FamilyCode::Joe => {
            if p.theta >= 1.0 {
                Ok(())
            } else {
                Err(RvineError::Domain(format!(
                    "{:?} theta must be >= 1, got {}",
                    family.code, p.theta
                )))
            }
        }
    }
}

/// Kernel-level first-order data for an (unrotated) family at given args.
/// Log-derivative form for the density, raw form for the h-functions.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Kern1 {
    pub logpdf: f64,
    /// d log c / du1, du2, dtheta-slots
    pub l1: f64,
    pub l2: f64,
    pub lt: [f64; 2],
    /// h(u1|u2) and its du2 / dtheta partials
    pub hf: f64,
    pub hf_d2: f64,
    pub hf_dt: [f64; 2],
    /// h(u2|u1) and its du1 / dtheta partials
    pub hr: f64,
    pub hr_d1: f64,
    pub hr_dt: [f64; 2],
}

/// Kernel-level second-order data.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Kern2 {
    pub l11: f64,
    pub l12: f64,
    pub l22: f64,
    pub lt1: [f64; 2],
    pub lt2: [f64; 2],
    pub ltt: [[f64; 2]; 2],
    pub hf_d22: f64,
    pub hf_dt2: [f64; 2],
    pub hf_dtt: [[f64; 2]; 2],
    pub hr_d11: f64,
    pub hr_dt1: [f64; 2],
    pub hr_dtt: [[f64; 2]; 2],
}

/// First-order derivative bundle of one pair copula term, density form.
#[derive(Debug, Clone, Copy, Default)]
pub struct DerivBundle1 {
    pub logpdf: f64,
    pub pdf: f64,
    /// dc/du1, dc/du2, dc/dtheta per slot
    pub d1: f64,
    pub d2: f64,
    pub dpar: [f64; 2],
    /// h(u1|u2): value, du2-partial, dtheta-partials (du1-partial = pdf)
    pub h1: f64,
    pub h1_d2: f64,
    pub h1_dpar: [f64; 2],
    /// h(u2|u1): value, du1-partial, dtheta-partials (du2-partial = pdf)
    pub h2: f64,
    pub h2_d1: f64,
    pub h2_dpar: [f64; 2],
}

/// Second-order derivative bundle (the Hessian recursion's inputs).
#[derive(Debug, Clone, Copy, Default)]
pub struct DerivBundle2 {
    pub d11: f64,
    pub d12: f64,
    pub d22: f64,
    pub dpar_d1: [f64; 2],
    pub dpar_d2: [f64; 2],
    pub dpar2: [[f64; 2]; 2],
    /// d^2 h1/du2^2, d^2 h1/dtheta du2, d^2 h1/dtheta dgamma
    pub h1_d22: f64,
    pub h1_dpar_d2: [f64; 2],
    pub h1_dpar2: [[f64; 2]; 2],
    /// mirror set for h2
    pub h2_d11: f64,
    pub h2_dpar_d1: [f64; 2],
    pub h2_dpar2: [[f64; 2]; 2],
}

fn kern1(code: FamilyCode, u1: f64, u2: f64, p: BicopParams) -> Kern1 {
    match code {
        FamilyCode::Independence => Kern1 {
            logpdf: 0.0,
            hf: u1,
            hr: u2,
            ..Default::default()
        },
        FamilyCode::Gaussian => gaussian::kern1(u1, u2, p.theta),
        FamilyCode::StudentT => student_t::kern1(u1, u2, p.theta, p.nu),
        FamilyCode::Frank => frank::kern1(u1, u2, p.theta),
        FamilyCode::Gumbel => gumbel::kern1(u1, u2, p.theta),
        FamilyCode::Joe => joe::kern1(u1, u2, p.theta),
    }
}

fn kern12(code: FamilyCode, u1: f64, u2: f64, p: BicopParams) -> (Kern1, Kern2) {
    match code {
        FamilyCode::Independence => (
            Kern1 {
                logpdf: 0.0,
                hf: u1,
                hr: u2,
                ..Default::default()
            },
            Kern2::default(),
        ),
        FamilyCode::Gaussian => gaussian::kern12(u1, u2, p.theta),
        FamilyCode::StudentT => student_t::kern12(u1, u2, p.theta, p.nu),
        FamilyCode::Frank => frank::kern12(u1, u2, p.theta),
        FamilyCode::Gumbel => gumbel::kern12(u1, u2, p.theta),
        FamilyCode::Joe => joe::kern12(u1, u2, p.theta),
    }
}

/// Apply the second-argument reflection to kernel data computed at
/// (u1, 1-u2). Chain rule: d/du2 -> -d/dv; h2 maps to 1 - h2.
fn reflect1(k: Kern1) -> Kern1 {
    Kern1 {
        logpdf: k.logpdf,
        l1: k.l1,
        l2: -k.l2,
        lt: k.lt,
        hf: k.hf,
        hf_d2: -k.hf_d2,
        hf_dt: k.hf_dt,
        hr: 1.0 - k.hr,
        hr_d1: -k.hr_d1,
        hr_dt: [-k.hr_dt[0], -k.hr_dt[1]],
    }
}

fn reflect2(k: Kern2) -> Kern2 {
    Kern2 {
        l11: k.l11,
        l12: -k.l12,
        l22: k.l22,
        lt1: k.lt1,
        lt2: [-k.lt2[0], -k.lt2[1]],
        ltt: k.ltt,
        hf_d22: k.hf_d22,
        hf_dt2: [-k.hf_dt2[0], -k.hf_dt2[1]],
        hf_dtt: k.hf_dtt,
        hr_d11: -k.hr_d11,
        hr_dt1: k.hr_dt1.map(|v| -v),
        hr_dtt: [k.hr_dtt[0].map(|v| -v), k.hr_dtt[1].map(|v| -v)],
    }
}

fn rotated_args(family: FamilyTag, u: UnitPair) -> (f64, f64) {
    match family.rotation {
        Rotation::None => (u.u1, u.u2),
        Rotation::SecondArgReflected => (u.u1, 1.0 - u.u2),
    }
}

/// Copula density c(u1, u2).
pub fn pdf(family: FamilyTag, p: BicopParams, u: UnitPair) -> Result<f64> {
    check_params(family, p)?;
    let (a1, a2) = rotated_args(family, u);
    let lp = match family.code {
        FamilyCode::Independence => 0.0,
        FamilyCode::Gaussian => gaussian::logpdf(a1, a2, p.theta),
        FamilyCode::StudentT => student_t::logpdf(a1, a2, p.theta, p.nu),
        FamilyCode::Frank => frank::logpdf(a1, a2, p.theta),
        FamilyCode::Gumbel => gumbel::logpdf(a1, a2, p.theta),
        FamilyCode::Joe => joe::logpdf(a1, a2, p.theta),
    };
    let v = lp.exp();
    if !v.is_finite() || v <= 0.0 {
        return Err(RvineError::Eval(format!(
            "density underflow for {} at ({}, {})",
            family.name(),
            u.u1,
            u.u2
        )));
    }
    Ok(v)
}

/// Log copula density.
pub fn log_pdf(family: FamilyTag, p: BicopParams, u: UnitPair) -> Result<f64> {
    check_params(family, p)?;
    let (a1, a2) = rotated_args(family, u);
    let lp = match family.code {
        FamilyCode::Independence => 0.0,
        FamilyCode::Gaussian => gaussian::logpdf(a1, a2, p.theta),
        FamilyCode::StudentT => student_t::logpdf(a1, a2, p.theta, p.nu),
        FamilyCode::Frank => frank::logpdf(a1, a2, p.theta),
        FamilyCode::Gumbel => gumbel::logpdf(a1, a2, p.theta),
        FamilyCode::Joe => joe::logpdf(a1, a2, p.theta),
    };
    if !lp.is_finite() {
        return Err(RvineError::Eval(format!(
            "log-density not finite for {} at ({}, {})",
            family.name(),
            u.u1,
            u.u2
        )));
    }
    Ok(lp)
}

/// h-function: conditional CDF of the first argument given the second,
/// h(u1, u2) = dC(u1, u2)/du2.
pub fn h(family: FamilyTag, p: BicopParams, u: UnitPair) -> Result<f64> {
    check_params(family, p)?;
    let (a1, a2) = rotated_args(family, u);
    let v = match family.code {
        FamilyCode::Independence => a1,
        FamilyCode::Gaussian => gaussian::hfun(a1, a2, p.theta),
        FamilyCode::StudentT => student_t::hfun(a1, a2, p.theta, p.nu),
        FamilyCode::Frank => frank::hfun(a1, a2, p.theta),
        FamilyCode::Gumbel => gumbel::hfun(a1, a2, p.theta),
        FamilyCode::Joe => joe::hfun(a1, a2, p.theta),
    };
    Ok(v.clamp(0.0, 1.0))
}

/// Conditional CDF of the second argument given the first,
/// h(u2 | u1) = dC(u1, u2)/du1 for the same (possibly rotated) copula.
pub fn h_second_given_first(family: FamilyTag, p: BicopParams, u: UnitPair) -> Result<f64> {
    check_params(family, p)?;
    let (a1, a2) = rotated_args(family, u);
    let base = match family.code {
        FamilyCode::Independence => a2,
        FamilyCode::Gaussian => gaussian::hfun(a2, a1, p.theta),
        FamilyCode::StudentT => student_t::hfun(a2, a1, p.theta, p.nu),
        FamilyCode::Frank => frank::hfun(a2, a1, p.theta),
        FamilyCode::Gumbel => gumbel::hfun(a2, a1, p.theta),
        FamilyCode::Joe => joe::hfun(a2, a1, p.theta),
    };
    let v = match family.rotation {
        Rotation::None => base,
        Rotation::SecondArgReflected => 1.0 - base,
    };
    Ok(v.clamp(0.0, 1.0))
}

/// Inverse of the h-function in its first argument: returns x with
/// h(x, u2) = w. Root-finding tolerance 1e-12 on the h scale; errors after
/// 200 bracketing iterations.
pub fn h_inverse(family: FamilyTag, p: BicopParams, w: f64, u2: f64) -> Result<f64> {
    check_params(family, p)?;
    let w = clamp_u(w);
    let u2c = clamp_u(u2);
    // closed forms where available
    let (a2, rot) = match family.rotation {
        Rotation::None => (u2c, false),
        Rotation::SecondArgReflected => (1.0 - u2c, true),
    };
    let _ = rot; // base inverse already conditions on the reflected arg
    match family.code {
        FamilyCode::Independence => return Ok(w),
        FamilyCode::Gaussian => return Ok(clamp_u(gaussian::hinv(w, a2, p.theta))),
        FamilyCode::StudentT => return Ok(clamp_u(student_t::hinv(w, a2, p.theta, p.nu))),
        FamilyCode::Frank => return Ok(clamp_u(frank::hinv(w, a2, p.theta))),
        _ => {}
    }
    // bracketing bisection on the monotone map x -> h(x, u2)
    let f = |x: f64| -> f64 {
        match family.code {
            FamilyCode::Gumbel => gumbel::hfun(x, a2, p.theta),
            FamilyCode::Joe => joe::hfun(x, a2, p.theta),
            _ => unreachable!(),
        }
    };
    let mut lo = EPS_U;
    let mut hi = 1.0 - EPS_U;
    if f(lo) >= w {
        return Ok(lo);
    }
    if f(hi) <= w {
        return Ok(hi);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if !fm.is_finite() {
            return Err(RvineError::Convergence(format!(
                "h_inverse: non-finite h at {mid}"
            )));
        }
        if fm < w {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    let x = 0.5 * (lo + hi);
    if (f(x) - w).abs() > 1e-8 {
        return Err(RvineError::Convergence(format!(
            "h_inverse failed to bracket root for {} (w={w}, u2={u2})",
            family.name()
        )));
    }
    Ok(x)
}

fn assemble1(k: Kern1, np: usize) -> DerivBundle1 {
    let pdf = k.logpdf.exp();
    let mut b = DerivBundle1 {
        logpdf: k.logpdf,
        pdf,
        d1: pdf * k.l1,
        d2: pdf * k.l2,
        dpar: [0.0; 2],
        h1: k.hf,
        h1_d2: k.hf_d2,
        h1_dpar: [0.0; 2],
        h2: k.hr,
        h2_d1: k.hr_d1,
        h2_dpar: [0.0; 2],
    };
    for s in 0..np {
        b.dpar[s] = pdf * k.lt[s];
        b.h1_dpar[s] = k.hf_dt[s];
        b.h2_dpar[s] = k.hr_dt[s];
    }
    b
}

fn assemble2(k1: Kern1, k2: Kern2, np: usize) -> DerivBundle2 {
    let pdf = k1.logpdf.exp();
    let mut b = DerivBundle2 {
        d11: pdf * (k1.l1 * k1.l1 + k2.l11),
        d12: pdf * (k1.l1 * k1.l2 + k2.l12),
        d22: pdf * (k1.l2 * k1.l2 + k2.l22),
        h1_d22: k2.hf_d22,
        h2_d11: k2.hr_d11,
        ..Default::default()
    };
    for s in 0..np {
        b.dpar_d1[s] = pdf * (k1.lt[s] * k1.l1 + k2.lt1[s]);
        b.dpar_d2[s] = pdf * (k1.lt[s] * k1.l2 + k2.lt2[s]);
        b.h1_dpar_d2[s] = k2.hf_dt2[s];
        b.h2_dpar_d1[s] = k2.hr_dt1[s];
        for t in 0..np {
            b.dpar2[s][t] = pdf * (k1.lt[s] * k1.lt[t] + k2.ltt[s][t]);
            b.h1_dpar2[s][t] = k2.hf_dtt[s][t];
            b.h2_dpar2[s][t] = k2.hr_dtt[s][t];
        }
    }
    b
}

/// All first partials needed by the score recursion.
pub fn deriv_bundle_first(family: FamilyTag, p: BicopParams, u: UnitPair) -> Result<DerivBundle1> {
    check_params(family, p)?;
    let (a1, a2) = rotated_args(family, u);
    let mut k = kern1(family.code, a1, a2, p);
    if family.rotation == Rotation::SecondArgReflected {
        k = reflect1(k);
    }
    let b = assemble1(k, family.npar());
    if !b.pdf.is_finite() || b.pdf <= 0.0 {
        return Err(RvineError::Eval(format!(
            "density underflow for {} at ({}, {})",
            family.name(),
            u.u1,
            u.u2
        )));
    }
    Ok(b)
}

/// Full symmetric second-order bundle plus the first-order bundle.
pub fn deriv_bundle_second(
    family: FamilyTag,
    p: BicopParams,
    u: UnitPair,
) -> Result<(DerivBundle1, DerivBundle2)> {
    check_params(family, p)?;
    let (a1, a2) = rotated_args(family, u);
    let (mut k1v, mut k2v) = kern12(family.code, a1, a2, p);
    if family.rotation == Rotation::SecondArgReflected {
        k1v = reflect1(k1v);
        k2v = reflect2(k2v);
    }
    let b1 = assemble1(k1v, family.npar());
    if !b1.pdf.is_finite() || b1.pdf <= 0.0 {
        return Err(RvineError::Eval(format!(
            "density underflow for {} at ({}, {})",
            family.name(),
            u.u1,
            u.u2
        )));
    }
    Ok((b1, assemble2(k1v, k2v, family.npar())))
}
