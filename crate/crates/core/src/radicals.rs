//! Square-root branch policy and the radical invariants `beta`, `gamma`,
//! `beta1`, `beta2` of a curve.
//!
//! Every square root in this crate goes through [`principal_sqrt`]: the cut
//! lies on the negative real axis and points on the cut map to the positive
//! imaginary axis, so `principal_sqrt(-2) == i*sqrt(2)`.

use num_complex::Complex64;

use crate::curve::{Curve, Tolerance};
use crate::error::{Error, Result};

/// Principal square root.
///
/// Returns `w` with `w * w == z` and either `Re(w) > 0`, or `Re(w) == 0` and
/// `Im(w) >= 0`. A negative-zero imaginary part is treated as `+0`.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    let re = z.re;
    // -0.0 + 0.0 == +0.0, everything else unchanged
    let im = z.im + 0.0;
    if re == 0.0 && im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if !re.is_finite() || !im.is_finite() {
        return z.sqrt();
    }
    // Scale to keep |z| well inside the representable range.
    let big = re.abs().max(im.abs());
    let (re_s, im_s, back) = if big > 1e300 {
        (re * 0.25, im * 0.25, 2.0)
    } else if big < 1e-300 {
        (
            re * 4.0f64.powi(300),
            im * 4.0f64.powi(300),
            2.0f64.powi(-300),
        )
    } else {
        (re, im, 1.0)
    };
    let t = ((re_s.abs() + re_s.hypot(im_s)) * 0.5).sqrt();
    let (w_re, w_im) = if re_s >= 0.0 {
        (t, im_s / (2.0 * t))
    } else {
        (im_s.abs() / (2.0 * t), t.copysign(im_s))
    };
    Complex64::new(w_re * back, w_im * back)
}

/// The radicals the order-8 construction is assembled from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorsionRadicals {
    /// `sqrt((e1 - e3) / (e1 - e2))`
    pub beta: Complex64,
    /// `sqrt((e1 - e3) * (e1 - e2))`
    pub gamma: Complex64,
    pub beta1: Complex64,
    pub beta2: Complex64,
}

impl TorsionRadicals {
    pub fn of(curve: &Curve) -> Result<Self> {
        let (beta, gamma) = beta_gamma(curve)?;
        let (beta1, beta2) = beta_invariants(beta)?;
        Ok(TorsionRadicals {
            beta,
            gamma,
            beta1,
            beta2,
        })
    }
}

/// `(beta, gamma)` for the curve, both through the principal branch.
pub fn beta_gamma(curve: &Curve) -> Result<(Complex64, Complex64)> {
    let [e1, e2, e3] = curve.roots();
    let d12 = e1 - e2;
    let d13 = e1 - e3;
    if d12 == Complex64::new(0.0, 0.0) || d13 == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateCurve(format!(
            "coincident roots e1={e1}, e2={e2}, e3={e3}"
        )));
    }
    Ok((principal_sqrt(d13 / d12), principal_sqrt(d13 * d12)))
}

/// True when `beta` is real (to within `tol`) and exceeds 1.
pub fn beta_is_real_above_one(beta: Complex64, tol: Tolerance) -> bool {
    beta.im.abs() <= tol.rel * beta.norm().max(1.0) && beta.re > 1.0
}

/// `(beta1, beta2)`:
///
/// ```text
/// beta1 = sqrt((beta + 1) / (beta - 1)) + sqrt(2 / (beta - 1))
/// beta2 = sqrt(2 / (beta + 1)) + 1 / beta
/// ```
///
/// Logs a warning (but still computes) when `beta` is not real and above 1.
pub fn beta_invariants(beta: Complex64) -> Result<(Complex64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    if beta == Complex64::new(0.0, 0.0) || beta == one || beta == -one {
        return Err(Error::InvalidBeta(beta.to_string()));
    }
    if !beta_is_real_above_one(beta, Tolerance::default()) {
        log::warn!("beta = {beta} is not a real number above 1; the order-8 formula is outside its stated domain");
    }
    let beta1 = principal_sqrt((beta + one) / (beta - one)) + principal_sqrt(two / (beta - one));
    let beta2 = principal_sqrt(two / (beta + one)) + one / beta;
    if !(beta1.is_finite() && beta2.is_finite()) {
        return Err(Error::InvalidBeta(beta.to_string()));
    }
    Ok((beta1, beta2))
}
