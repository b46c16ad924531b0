//! Elliptic curves over the complex numbers in factored form
//! `y^2 = 4(x - e1)(x - e2)(x - e3)`.
//!
//! The crate provides the chord-tangent group law, a closed-form point of
//! order 8 built from nested square roots of the root differences, and two
//! independent ways of certifying the order of a torsion point: repeated
//! addition under the group law, and pointwise division polynomials on the
//! depressed short Weierstrass model.
//!
//! ```
//! use torsion8::{Curve, Sign, Tolerance, torsion};
//! use num_complex::Complex64;
//!
//! let i = Complex64::i();
//! let curve = Curve::new(i, Complex64::new(0.0, 0.0), -i).unwrap();
//! let report = torsion::verify_order8(&curve, Sign::Plus, Tolerance::default()).unwrap();
//! assert_eq!(report.verified_order, Some(8));
//! assert!(report.four_p_is_e2 && report.oracle_confirms);
//! ```

pub mod cli;
pub mod curve;
pub mod division;
mod error;
pub mod golden;
pub mod json;
pub mod normalize;
pub mod radicals;
pub mod torsion;

pub use curve::{Curve, Point, Sign, Tolerance};
pub use error::{Error, Result};
pub use normalize::ShortWeierstrass;
pub use radicals::{principal_sqrt, TorsionRadicals};
pub use torsion::Order8Report;

pub use num_complex::Complex64;
