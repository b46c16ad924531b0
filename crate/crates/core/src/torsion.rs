//! Explicit torsion points: the three points of order 2, the four order-4
//! points above `e1 +- gamma`, and a closed-form point of order 8.

use num_complex::Complex64;

use crate::curve::{Curve, Point, Sign, Tolerance};
use crate::division;
use crate::error::Result;
use crate::normalize::{map_point, to_short};
use crate::radicals::{beta_is_real_above_one, principal_sqrt, TorsionRadicals};

/// Largest order searched when verifying a constructed point.
pub const ORDER_SEARCH_LIMIT: u32 = 16;

/// `(e1, 0)`, `(e2, 0)`, `(e3, 0)`.
pub fn order2_points(curve: &Curve) -> [Point; 3] {
    curve
        .roots()
        .map(|e| Point::affine(e, Complex64::new(0.0, 0.0)))
}

/// The two pairs of order-4 points with `x = e1 + gamma` and `x = e1 - gamma`,
/// in the order `(e1+g, +), (e1+g, -), (e1-g, +), (e1-g, -)`.
pub fn order4_points(curve: &Curve) -> Result<[Point; 4]> {
    let (_, gamma) = crate::radicals::beta_gamma(curve)?;
    let e1 = curve.e1();
    let mut out = [Point::Infinity; 4];
    for (i, x) in [e1 + gamma, e1 - gamma].into_iter().enumerate() {
        let y = curve.y_from_x(x, Sign::Plus);
        out[2 * i] = Point::affine(x, y);
        out[2 * i + 1] = Point::affine(x, -y);
    }
    Ok(out)
}

/// Abscissa of the order-8 point.
///
/// ```text
/// x = e1 - g - g (sqrt((b+1)/2) - 1)
///       * (1 - 1/b + sqrt(1 + 1/b) (sqrt(b1 + b2) + i (sqrt(b1 - b2) + sqrt(1 - 1/b))))
/// ```
///
/// with `b = beta`, `g = gamma`, `b1 = beta1`, `b2 = beta2` and every root
/// principal.
pub fn order8_x(curve: &Curve) -> Result<Complex64> {
    let r = TorsionRadicals::of(curve)?;
    Ok(order8_x_from(curve.e1(), &r))
}

fn order8_x_from(e1: Complex64, r: &TorsionRadicals) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    let inv = one / r.beta;
    let outer = r.gamma * (principal_sqrt((r.beta + one) / 2.0) - one);
    let inner = principal_sqrt(r.beta1 + r.beta2)
        + i * (principal_sqrt(r.beta1 - r.beta2) + principal_sqrt(one - inv));
    let bracket = one - inv + principal_sqrt(one + inv) * inner;
    e1 - r.gamma - outer * bracket
}

/// The order-8 point on the requested `y` branch.
pub fn order8_point(curve: &Curve, branch: Sign) -> Result<Point> {
    Ok(curve.lift_x(order8_x(curve)?, branch))
}

/// Everything computed while checking the order-8 construction on a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Order8Report {
    pub radicals: TorsionRadicals,
    pub branch: Sign,
    pub point: Point,
    /// `(k, k*P)` for `k = 1..=8`, by repeated addition.
    pub multiples: Vec<(u32, Point)>,
    /// Order found by the group law, searching up to 16.
    pub verified_order: Option<u32>,
    /// Order certified by the division polynomials.
    pub oracle_order: Option<u32>,
    pub four_p_is_e2: bool,
    pub oracle_confirms: bool,
    pub beta_assumption_met: bool,
}

impl Order8Report {
    pub fn multiple(&self, k: u32) -> Option<Point> {
        self.multiples
            .iter()
            .find(|(j, _)| *j == k)
            .map(|(_, p)| *p)
    }

    /// Both certifiers report order 8 and `4P` lands on `(e2, 0)`.
    pub fn passed(&self) -> bool {
        self.verified_order == Some(8) && self.oracle_confirms && self.four_p_is_e2
    }
}

/// Build the order-8 point and check it with the group law and the
/// division polynomials.
///
/// Curves where `beta` is not real and above 1 are still processed; the
/// report records that through `beta_assumption_met`.
pub fn verify_order8(curve: &Curve, branch: Sign, tol: Tolerance) -> Result<Order8Report> {
    let radicals = TorsionRadicals::of(curve)?;
    let point = curve.lift_x(order8_x_from(curve.e1(), &radicals), branch);
    let multiples = curve.multiples(&point, 8, tol)?;
    let verified_order = curve.order_of(&point, ORDER_SEARCH_LIMIT, tol)?;

    let e2 = Point::affine(curve.e2(), Complex64::new(0.0, 0.0));
    let four_p_is_e2 = multiples[3].1.approx_eq(&e2, curve, tol);

    let sw = to_short(curve);
    let mapped = map_point(&sw, &point, tol)?;
    let oracle_confirms = division::is_order_exactly_8(&sw, &mapped, tol)?;
    let oracle_order = division::certified_order(&sw, &mapped, tol)?;

    Ok(Order8Report {
        beta_assumption_met: beta_is_real_above_one(radicals.beta, tol),
        radicals,
        branch,
        point,
        multiples,
        verified_order,
        oracle_order,
        four_p_is_e2,
        oracle_confirms,
    })
}

/// Every ordering of the roots whose `beta` is real and above 1, as the
/// permutation (indices into the original roots) and the relabelled curve.
/// The identity comes first when it qualifies.
pub fn permutations_with_real_beta(curve: &Curve, tol: Tolerance) -> Vec<([usize; 3], Curve)> {
    const PERMUTATIONS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let e = curve.roots();
    PERMUTATIONS
        .into_iter()
        .filter_map(|perm| {
            let relabelled = Curve::new(e[perm[0]], e[perm[1]], e[perm[2]]).ok()?;
            let (beta, _) = crate::radicals::beta_gamma(&relabelled).ok()?;
            beta_is_real_above_one(beta, tol).then_some((perm, relabelled))
        })
        .collect()
}
