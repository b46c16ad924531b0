//! Change of model between the factored curve and the depressed
//! short Weierstrass form `Y^2 = X^3 + A*X + B`.
//!
//! `X = x - s/3` with `s = e1 + e2 + e3`, and `Y = y/2` absorbs the leading 4.

use num_complex::Complex64;

use crate::curve::{Curve, Point, Tolerance};
use crate::error::{Error, Result};

/// `Y^2 = X^3 + A*X + B`, together with the shift back to the factored model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortWeierstrass {
    pub a: Complex64,
    pub b: Complex64,
    /// `(e1 + e2 + e3) / 3`; zero for curves given directly by `A`, `B`.
    pub shift: Complex64,
    /// Upper bound on the magnitude of the original roots, used to size
    /// tolerances consistently with the factored model.
    root_bound: f64,
}

impl ShortWeierstrass {
    /// A short curve given by its coefficients, with no shift.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let sw = ShortWeierstrass {
            a,
            b,
            shift: Complex64::new(0.0, 0.0),
            // Fujiwara: every root r of X^3 + aX + b has |r| <= 2 max(|a|^(1/2), |b|^(1/3)).
            root_bound: 2.0 * a.norm().sqrt().max(b.norm().cbrt()),
        };
        if !(a.is_finite() && b.is_finite()) || sw.discriminant() == Complex64::new(0.0, 0.0) {
            return Err(Error::DegenerateCurve(format!(
                "Y^2 = X^3 + ({a})X + ({b}) is singular"
            )));
        }
        Ok(sw)
    }

    /// `-16(4A^3 + 27B^2)`
    pub fn discriminant(&self) -> Complex64 {
        -16.0 * (4.0 * self.a * self.a * self.a + 27.0 * self.b * self.b)
    }

    /// `X^3 + A*X + B`
    pub fn cubic(&self, x: Complex64) -> Complex64 {
        x * x * x + self.a * x + self.b
    }

    /// Coordinate scale `S` for a point with short abscissa `x`.
    pub fn scale(&self, x: Complex64) -> f64 {
        [
            self.root_bound,
            self.shift.norm(),
            x.norm(),
            (x + self.shift).norm(),
        ]
        .into_iter()
        .fold(1.0, f64::max)
    }

    pub fn contains(&self, p: &Point, tol: Tolerance) -> bool {
        match p.coords() {
            None => true,
            Some((x, y)) => {
                x.is_finite()
                    && y.is_finite()
                    && (y * y - self.cubic(x)).norm() <= tol.residual(self.scale(x))
            }
        }
    }

    pub(crate) fn require(&self, p: &Point, tol: Tolerance) -> Result<()> {
        if self.contains(p, tol) {
            Ok(())
        } else {
            Err(Error::OffCurve(format!(
                "{p} does not satisfy Y^2 = X^3 + AX + B"
            )))
        }
    }
}

/// Depress the factored curve. Symmetric functions are taken from the roots.
pub fn to_short(curve: &Curve) -> ShortWeierstrass {
    let [e1, e2, e3] = curve.roots();
    let s = e1 + e2 + e3;
    let p = e1 * e2 + e1 * e3 + e2 * e3;
    let q = e1 * e2 * e3;
    let a = p - s * s / 3.0;
    let b = -2.0 * s * s * s / 27.0 + p * s / 3.0 - q;
    ShortWeierstrass {
        a,
        b,
        shift: s / 3.0,
        root_bound: [e1, e2, e3].iter().map(|e| e.norm()).fold(0.0, f64::max),
    }
}

/// `(x, y) -> (x - shift, y / 2)`.
pub fn map_point(sw: &ShortWeierstrass, p: &Point, tol: Tolerance) -> Result<Point> {
    let mapped = match p.coords() {
        None => Point::Infinity,
        Some((x, y)) => Point::affine(x - sw.shift, y / 2.0),
    };
    sw.require(&mapped, tol)?;
    Ok(mapped)
}

/// `(X, Y) -> (X + shift, 2Y)`.
pub fn unmap_point(sw: &ShortWeierstrass, p: &Point, tol: Tolerance) -> Result<Point> {
    sw.require(p, tol)?;
    Ok(match p.coords() {
        None => Point::Infinity,
        Some((x, y)) => Point::affine(x + sw.shift, 2.0 * y),
    })
}

/// Group law on the short model, written independently of the factored one.
pub fn short_add(sw: &ShortWeierstrass, p: &Point, q: &Point, tol: Tolerance) -> Result<Point> {
    sw.require(p, tol)?;
    sw.require(q, tol)?;
    let ((x1, y1), (x2, y2)) = match (p.coords(), q.coords()) {
        (None, _) => return Ok(*q),
        (_, None) => return Ok(*p),
        (Some(a), Some(b)) => (a, b),
    };
    let eps = tol.coordinate(sw.scale(x1).max(sw.scale(x2)));
    let slope = if (x1 - x2).norm() <= eps {
        if (y1 + y2).norm() <= eps {
            return Ok(Point::Infinity);
        }
        if (y1 - y2).norm() > eps {
            return Err(Error::InconsistentAddends(format!("{p} and {q}")));
        }
        (3.0 * x1 * x1 + sw.a) / (2.0 * y1)
    } else {
        (y2 - y1) / (x2 - x1)
    };
    let x3 = slope * slope - x1 - x2;
    Ok(Point::affine(x3, slope * (x1 - x3) - y1))
}
