//! Curves `y^2 = 4(x - e1)(x - e2)(x - e3)` over the complex numbers and
//! their chord-tangent group law.
//!
//! Substituting a line `y = l*x + c` into the cubic gives a cubic in `x`
//! with leading coefficient 4, so its three roots sum to
//! `l^2/4 + e1 + e2 + e3`. Addition and doubling are built on that identity
//! directly rather than by rescaling to a monic model.
//!
//! Floating point comparisons go through [`Tolerance`]: coordinates are
//! compared at `rel * S` and curve residuals at `rel * S^3`, where
//! `S = max(1, |e1|, |e2|, |e3|, |x| ...)`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::radicals::principal_sqrt;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative comparison policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(rel: f64) -> Result<Self> {
        if rel.is_finite() && rel > 0.0 {
            Ok(Tolerance { rel })
        } else {
            Err(Error::Parse(format!(
                "tolerance must be positive and finite, got {rel}"
            )))
        }
    }

    /// `S = max(1, |e1|, |e2|, |e3|, |x| for each x)`.
    pub fn scale(curve: &Curve, xs: &[Complex64]) -> f64 {
        xs.iter()
            .chain(curve.e.iter())
            .map(|z| z.norm())
            .fold(1.0, f64::max)
    }

    /// Threshold for comparing coordinates at scale `s`.
    pub fn coordinate(&self, s: f64) -> f64 {
        self.rel * s
    }

    /// Threshold for the curve-equation residual at scale `s`.
    pub fn residual(&self, s: f64) -> f64 {
        self.rel * s * s * s
    }
}

/// Sign applied to the principal root when recovering `y` from `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// A point of the curve: the identity at infinity or an affine pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Infinity,
    Affine { x: Complex64, y: Complex64 },
}

impl Point {
    pub fn affine(x: Complex64, y: Complex64) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn coords(&self) -> Option<(Complex64, Complex64)> {
        match *self {
            Point::Infinity => None,
            Point::Affine { x, y } => Some((x, y)),
        }
    }

    pub fn x(&self) -> Option<Complex64> {
        self.coords().map(|(x, _)| x)
    }

    /// Coordinate-wise comparison at `rel * S`.
    pub fn approx_eq(&self, other: &Point, curve: &Curve, tol: Tolerance) -> bool {
        match (self.coords(), other.coords()) {
            (None, None) => true,
            (Some((x1, y1)), Some((x2, y2))) => {
                let eps = tol.coordinate(Tolerance::scale(curve, &[x1, x2]));
                (x1 - x2).norm() <= eps && (y1 - y2).norm() <= eps
            }
            _ => false,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// `y^2 = 4(x - e1)(x - e2)(x - e3)` with pairwise distinct roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curve {
    e: [Complex64; 3],
}

impl Curve {
    pub fn new(e1: Complex64, e2: Complex64, e3: Complex64) -> Result<Self> {
        let e = [e1, e2, e3];
        if e.iter().any(|z| !z.is_finite()) {
            return Err(Error::DegenerateCurve(format!(
                "non-finite root in ({e1}, {e2}, {e3})"
            )));
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if e[i] == e[j] {
                return Err(Error::DegenerateCurve(format!(
                    "roots e{} and e{} coincide at {}",
                    i + 1,
                    j + 1,
                    e[i]
                )));
            }
        }
        Ok(Curve { e })
    }

    pub fn roots(&self) -> [Complex64; 3] {
        self.e
    }

    pub fn e1(&self) -> Complex64 {
        self.e[0]
    }

    pub fn e2(&self) -> Complex64 {
        self.e[1]
    }

    pub fn e3(&self) -> Complex64 {
        self.e[2]
    }

    pub fn root_sum(&self) -> Complex64 {
        self.e[0] + self.e[1] + self.e[2]
    }

    /// `4(x - e1)(x - e2)(x - e3)`
    pub fn cubic(&self, x: Complex64) -> Complex64 {
        let [e1, e2, e3] = self.e;
        4.0 * (x - e1) * (x - e2) * (x - e3)
    }

    fn cubic_derivative(&self, x: Complex64) -> Complex64 {
        let [e1, e2, e3] = self.e;
        let (a, b, c) = (x - e1, x - e2, x - e3);
        4.0 * (a * b + a * c + b * c)
    }

    /// Membership test; the identity is always on the curve.
    pub fn contains(&self, p: &Point, tol: Tolerance) -> bool {
        match p.coords() {
            None => true,
            Some((x, y)) => {
                if !(x.is_finite() && y.is_finite()) {
                    return false;
                }
                let s = Tolerance::scale(self, &[x]);
                (y * y - self.cubic(x)).norm() <= tol.residual(s)
            }
        }
    }

    fn require(&self, p: &Point, tol: Tolerance) -> Result<()> {
        if self.contains(p, tol) {
            Ok(())
        } else {
            Err(Error::OffCurve(format!(
                "{p} does not satisfy y^2 = 4(x-e1)(x-e2)(x-e3)"
            )))
        }
    }

    /// `branch * sqrt(4(x - e1)(x - e2)(x - e3))` on the principal branch.
    pub fn y_from_x(&self, x: Complex64, branch: Sign) -> Complex64 {
        branch.factor() * principal_sqrt(self.cubic(x))
    }

    /// The affine point above `x` on the given branch.
    pub fn lift_x(&self, x: Complex64, branch: Sign) -> Point {
        Point::affine(x, self.y_from_x(x, branch))
    }

    pub fn negate(&self, p: &Point) -> Point {
        negate(p)
    }

    pub fn add(&self, p: &Point, q: &Point, tol: Tolerance) -> Result<Point> {
        self.require(p, tol)?;
        self.require(q, tol)?;
        self.add_unchecked(p, q, tol)
    }

    pub fn double(&self, p: &Point, tol: Tolerance) -> Result<Point> {
        self.require(p, tol)?;
        Ok(self.double_unchecked(p, tol))
    }

    /// `k * p` by double-and-add.
    pub fn multiply(&self, k: u64, p: &Point, tol: Tolerance) -> Result<Point> {
        self.require(p, tol)?;
        let mut acc = Point::Infinity;
        for bit in (0..u64::BITS - k.leading_zeros()).rev() {
            acc = self.double_unchecked(&acc, tol);
            if (k >> bit) & 1 == 1 {
                acc = self.add_unchecked(&acc, p, tol)?;
            }
        }
        Ok(acc)
    }

    /// Smallest `n <= max_order` with `n * p` at infinity, found by repeated
    /// addition so every intermediate multiple passes the vertical-chord test.
    pub fn order_of(&self, p: &Point, max_order: u32, tol: Tolerance) -> Result<Option<u32>> {
        self.require(p, tol)?;
        let mut acc = *p;
        for n in 1..=max_order {
            if acc.is_infinity() {
                return Ok(Some(n));
            }
            acc = self.add_unchecked(&acc, p, tol)?;
        }
        Ok(None)
    }

    /// The multiples `k * p` for `k = 1..=count`, accumulated by repeated
    /// addition.
    pub fn multiples(&self, p: &Point, count: u32, tol: Tolerance) -> Result<Vec<(u32, Point)>> {
        self.require(p, tol)?;
        let mut out = Vec::with_capacity(count as usize);
        let mut acc = Point::Infinity;
        for k in 1..=count {
            acc = self.add_unchecked(&acc, p, tol)?;
            out.push((k, acc));
        }
        Ok(out)
    }

    pub(crate) fn add_unchecked(&self, p: &Point, q: &Point, tol: Tolerance) -> Result<Point> {
        let ((x1, y1), (x2, y2)) = match (p.coords(), q.coords()) {
            (None, _) => return Ok(*q),
            (_, None) => return Ok(*p),
            (Some(a), Some(b)) => (a, b),
        };
        let eps = tol.coordinate(Tolerance::scale(self, &[x1, x2]));
        if (x1 - x2).norm() <= eps {
            if (y1 + y2).norm() <= eps {
                return Ok(Point::Infinity);
            }
            if (y1 - y2).norm() <= eps {
                return Ok(self.double_unchecked(p, tol));
            }
            return Err(Error::InconsistentAddends(format!(
                "{p} and {q} share an x-coordinate but their y-coordinates are neither equal nor opposite"
            )));
        }
        let slope = (y2 - y1) / (x2 - x1);
        Ok(self.third_point(slope, x1, y1, x2))
    }

    pub(crate) fn double_unchecked(&self, p: &Point, tol: Tolerance) -> Point {
        let Some((x, y)) = p.coords() else {
            return Point::Infinity;
        };
        if y.norm() <= tol.coordinate(Tolerance::scale(self, &[x])) {
            return Point::Infinity;
        }
        let slope = self.cubic_derivative(x) / (2.0 * y);
        self.third_point(slope, x, y, x)
    }

    /// Reflection of the third intersection of the line through `(x1, y1)`
    /// with the given slope, where `x2` is the second intersection.
    fn third_point(&self, slope: Complex64, x1: Complex64, y1: Complex64, x2: Complex64) -> Point {
        let x3 = slope * slope / 4.0 + self.root_sum() - x1 - x2;
        let y3 = -(slope * (x3 - x1) + y1);
        Point::affine(x3, y3)
    }
}

/// `(x, y) -> (x, -y)`; the identity is its own inverse.
pub fn negate(p: &Point) -> Point {
    match *p {
        Point::Infinity => Point::Infinity,
        Point::Affine { x, y } => Point::affine(x, ZERO - y),
    }
}
