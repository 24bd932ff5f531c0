//! Exact arithmetic for Sharygin triangles.
//!
//! A scalene triangle whose bisectral triangle (the triangle spanned by the
//! feet of the internal angle bisectors) is isosceles is called a Sharygin
//! triangle. Side triples of such triangles are the points of the plane cubic
//!
//! ```text
//! q(a,b,c) = -c^3 - c^2(a+b) + c(a^2+ab+b^2) + a^3 + a^2 b + a b^2 + b^3 = 0
//! ```
//!
//! lying inside the triangle-inequality region. The cubic is an elliptic curve
//! isomorphic to `y^2 = x^3 + 5x^2 - 32x`, so integer Sharygin triangles come
//! from its rational points.
//!
//! Modules:
//! - [`curve`]: the three coordinate models, transforms, group law, Hessian and inflexions.
//! - [`triangle`]: bisectral geometry, the Sharygin predicate, trigonometric form.
//! - [`torsion`]: Nagell–Lutz torsion, the duplication growth certificate, point counts mod p.
//! - [`descent`]: arithmetic in `Q(sqrt 17)` and the checkable ingredients of the 2-descent.
//! - [`heptagon`]: cyclotomic polynomials and the regular-polygon search.
//! - [`enumeration`]: walking `nA` and `nA + D`, the appendix table, the triangle catalog.
//!
//! All scalars are exact: [`rug::Integer`] and [`rug::Rational`]. Numeric
//! (floating point) code is confined to [`numeric`] helpers and uses MPFR at a
//! configurable precision.

pub mod curve;
pub mod descent;
pub mod enumeration;
pub mod error;
pub mod heptagon;
pub mod numeric;
pub mod poly;
pub mod primes;
pub mod torsion;
pub mod triangle;

pub use error::{Error, Result};

/// Arbitrary-precision rational; `rug` keeps it in lowest terms with a positive denominator.
pub type ExactRational = rug::Rational;
