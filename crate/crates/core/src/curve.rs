//! The Sharygin cubic in its three coordinate models.
//!
//! - `Cubic`: `q(a,b,c) = 0` in `(a:b:c)`, the side-length model. Origin `O = (1:-1:0)`.
//! - `Weierstrass`: `y^2 = x^3 + 5x^2 - 32x`, where the group law is computed.
//! - `Minimal`: `y^2 + xy = x^3 + x^2 - 2x`, the minimal model.
//!
//! Transforms (all verified against the appendix table of points):
//!
//! ```text
//! cubic -> weierstrass:   x = 4(a+b+2c) / (2(a+b)+c),  y = 12(b-a) / (2(a+b)+c)
//! weierstrass -> cubic:   (8-x-y : 8-x+y : 4x-8)
//! minimal -> weierstrass: (x, y) -> (4x, 4x + 8y)
//! ```
//!
//! The denominator `2(a+b)+c` is the tangent line at the inflexion `O`, so it
//! vanishes on the curve only at `O`.

use std::fmt;
use std::sync::OnceLock;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::poly::{det3, resultant, IntPoly, Poly3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoordinateForm {
    /// `y^2 + xy = x^3 + x^2 - 2x`
    Minimal,
    /// `y^2 = x^3 + 5x^2 - 32x`
    Weierstrass,
    /// `q(a,b,c) = 0`
    Cubic,
}

impl CoordinateForm {
    pub const ALL: [CoordinateForm; 3] = [Self::Minimal, Self::Weierstrass, Self::Cubic];

    /// Column number used by the appendix table (1, 2, 3).
    pub fn column(self) -> usize {
        match self {
            Self::Minimal => 1,
            Self::Weierstrass => 2,
            Self::Cubic => 3,
        }
    }
}

/// A projective point `(u:v:w)` stored as its canonical representative:
/// coprime integers whose first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectiveTriple {
    coords: [Integer; 3],
    form: CoordinateForm,
}

fn canonicalize(coords: &[Rational; 3]) -> Result<[Integer; 3]> {
    if coords.iter().all(|c| *c == 0) {
        return Err(Error::ZeroTriple);
    }
    let lcm = coords
        .iter()
        .fold(Integer::from(1), |l, c| l.lcm(c.denom()));
    let mut ints: [Integer; 3] = std::array::from_fn(|i| {
        coords[i].numer() * Integer::from(lcm.div_exact_ref(coords[i].denom()))
    });
    let g = ints.iter().fold(Integer::new(), |g, c| g.gcd(c));
    let negate = ints.iter().find(|c| **c != 0).is_some_and(|c| *c < 0);
    for c in ints.iter_mut() {
        c.div_exact_mut(&g);
        if negate {
            *c = -std::mem::take(c);
        }
    }
    Ok(ints)
}

impl ProjectiveTriple {
    pub fn new(form: CoordinateForm, coords: [Rational; 3]) -> Result<Self> {
        Ok(Self {
            coords: canonicalize(&coords)?,
            form,
        })
    }

    pub fn from_integers(form: CoordinateForm, coords: [Integer; 3]) -> Result<Self> {
        Self::new(form, coords.map(Rational::from))
    }

    pub fn from_i64(form: CoordinateForm, coords: [i64; 3]) -> Result<Self> {
        Self::new(form, coords.map(Rational::from))
    }

    pub fn coords(&self) -> &[Integer; 3] {
        &self.coords
    }

    pub fn rational_coords(&self) -> [Rational; 3] {
        std::array::from_fn(|i| Rational::from(&self.coords[i]))
    }

    pub fn form(&self) -> CoordinateForm {
        self.form
    }

    fn expect_form(&self, form: CoordinateForm) -> Result<()> {
        if self.form == form {
            Ok(())
        } else {
            Err(Error::FormMismatch {
                expected: form,
                got: self.form,
            })
        }
    }

    /// Whether the defining equation of the tagged form vanishes.
    pub fn is_on_curve(&self) -> bool {
        let [u, v, w] = &self.coords;
        match self.form {
            CoordinateForm::Cubic => cubic_q_int(u, v, w) == 0,
            CoordinateForm::Weierstrass => {
                // Y^2 Z = X^3 + 5 X^2 Z - 32 X Z^2
                let lhs = Integer::from(v * v) * w;
                let rhs = Integer::from(u * u) * u + Integer::from(u * u) * w * 5u32
                    - Integer::from(w * w) * u * 32u32;
                lhs == rhs
            }
            CoordinateForm::Minimal => {
                // Y^2 Z + X Y Z = X^3 + X^2 Z - 2 X Z^2
                let lhs = Integer::from(v * v) * w + Integer::from(u * v) * w;
                let rhs = Integer::from(u * u) * u + Integer::from(u * u) * w
                    - Integer::from(w * w) * u * 2u32;
                lhs == rhs
            }
        }
    }

    /// Group inverse in the tagged model.
    pub fn negate(&self) -> Self {
        let [u, v, w] = self.coords.clone();
        let coords = match self.form {
            CoordinateForm::Cubic => [v, u, w],
            CoordinateForm::Weierstrass => [u, -v, w],
            CoordinateForm::Minimal => {
                let nv = -(Integer::from(&u + &v));
                [u, nv, w]
            }
        };
        Self::from_integers(self.form, coords).expect("negation of a nonzero triple is nonzero")
    }
}

impl fmt::Display for ProjectiveTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [u, v, w] = &self.coords;
        write!(f, "({u}:{v}:{w})")
    }
}

/// A point of `y^2 = x^3 + a2 x^2 + a4 x + a6`: the identity or an affine pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WeierstrassPoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl WeierstrassPoint {
    pub fn affine(x: impl Into<Rational>, y: impl Into<Rational>) -> Self {
        Self::Affine {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            Self::Infinity => None,
            Self::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&Rational> {
        match self {
            Self::Infinity => None,
            Self::Affine { y, .. } => Some(y),
        }
    }

    pub fn negate(&self) -> Self {
        match self {
            Self::Infinity => Self::Infinity,
            Self::Affine { x, y } => Self::Affine {
                x: x.clone(),
                y: Rational::from(-y),
            },
        }
    }

    /// `(x:y:1)`, or `(0:1:0)` for the identity.
    pub fn to_projective(&self) -> ProjectiveTriple {
        let coords = match self {
            Self::Infinity => [Rational::new(), Rational::from(1), Rational::new()],
            Self::Affine { x, y } => [x.clone(), y.clone(), Rational::from(1)],
        };
        ProjectiveTriple::new(CoordinateForm::Weierstrass, coords).expect("nonzero")
    }

    pub fn from_projective(p: &ProjectiveTriple) -> Result<Self> {
        p.expect_form(CoordinateForm::Weierstrass)?;
        if !p.is_on_curve() {
            return Err(Error::NotOnCurve(p.to_string()));
        }
        let [x, y, z] = p.rational_coords();
        if z == 0 {
            return Ok(Self::Infinity);
        }
        Ok(Self::Affine {
            x: x / &z,
            y: y / &z,
        })
    }

    /// Parses `O`/`inf` or `x,y` with rational entries such as `121/16,1397/64`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s.to_ascii_lowercase().as_str(), "o" | "inf" | "infinity") {
            return Ok(Self::Infinity);
        }
        let s = s.trim_start_matches('(').trim_end_matches(')');
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `x,y`, got `{s}`")))?;
        Ok(Self::Affine {
            x: parse_rational(x)?,
            y: parse_rational(y)?,
        })
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    s.parse::<Rational>()
        .map_err(|e| Error::Parse(format!("`{s}`: {e}")))
}

impl fmt::Display for WeierstrassPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => write!(f, "O"),
            Self::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// `y^2 = x^3 + a2 x^2 + a4 x + a6` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a2: Integer,
    pub a4: Integer,
    pub a6: Integer,
}

impl WeierstrassCurve {
    pub fn new(a2: i64, a4: i64, a6: i64) -> Self {
        Self {
            a2: a2.into(),
            a4: a4.into(),
            a6: a6.into(),
        }
    }

    /// `y^2 = x^3 + 5x^2 - 32x`
    pub fn sharygin() -> Self {
        Self::new(5, -32, 0)
    }

    pub fn rhs(&self, x: &Rational) -> Rational {
        let mut acc = Rational::from(x + &self.a2);
        acc *= x;
        acc += &self.a4;
        acc *= x;
        acc += &self.a6;
        acc
    }

    pub fn contains(&self, p: &WeierstrassPoint) -> bool {
        match p {
            WeierstrassPoint::Infinity => true,
            WeierstrassPoint::Affine { x, y } => Rational::from(y.square_ref()) == self.rhs(x),
        }
    }

    /// Discriminant of the cubic `x^3 + a2 x^2 + a4 x + a6`.
    pub fn cubic_discriminant(&self) -> Integer {
        let (a, b, c) = (&self.a2, &self.a4, &self.a6);
        let a3 = Integer::from(a.pow(3u32));
        let b3 = Integer::from(b.pow(3u32));
        -Integer::from(&a3 * c) * 4u32
            + Integer::from(a.square_ref()) * Integer::from(b.square_ref())
            + Integer::from(a * b) * c * 18u32
            - b3 * 4u32
            - Integer::from(c.square_ref()) * 27u32
    }

    /// Discriminant of the elliptic curve, `16` times the cubic discriminant.
    pub fn discriminant(&self) -> Integer {
        self.cubic_discriminant() * 16u32
    }

    pub fn is_smooth(&self) -> bool {
        self.discriminant() != 0
    }

    pub fn negate(&self, p: &WeierstrassPoint) -> WeierstrassPoint {
        p.negate()
    }

    /// Chord-tangent addition with identity at infinity.
    pub fn add(&self, p: &WeierstrassPoint, q: &WeierstrassPoint) -> WeierstrassPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (WeierstrassPoint::Infinity, _) => return q.clone(),
            (_, WeierstrassPoint::Infinity) => return p.clone(),
            (
                WeierstrassPoint::Affine { x: x1, y: y1 },
                WeierstrassPoint::Affine { x: x2, y: y2 },
            ) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if *y1 != *y2 || *y1 == 0 {
                return WeierstrassPoint::Infinity;
            }
            self.tangent_slope(x1, y1)
        } else {
            Rational::from(y2 - y1) / Rational::from(x2 - x1)
        };
        let x3 = Rational::from(lambda.square_ref()) - &self.a2 - x1 - x2;
        let y3 = lambda * Rational::from(x1 - &x3) - y1;
        WeierstrassPoint::Affine { x: x3, y: y3 }
    }

    fn tangent_slope(&self, x: &Rational, y: &Rational) -> Rational {
        let num =
            Rational::from(x.square_ref()) * 3u32 + Rational::from(x * &self.a2) * 2u32 + &self.a4;
        num / Rational::from(y * 2u32)
    }

    pub fn double(&self, p: &WeierstrassPoint) -> WeierstrassPoint {
        self.add(p, p)
    }

    pub fn sub(&self, p: &WeierstrassPoint, q: &WeierstrassPoint) -> WeierstrassPoint {
        self.add(p, &q.negate())
    }

    /// `n * p` by double-and-add; negative `n` multiplies the inverse.
    pub fn scalar_mul(&self, n: i64, p: &WeierstrassPoint) -> WeierstrassPoint {
        let base = if n < 0 { p.negate() } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = WeierstrassPoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.double(&pow);
            }
        }
        acc
    }
}

/// The fixed data of the Sharygin curve.
#[derive(Clone, Debug)]
pub struct CurveConstants {
    pub curve: WeierstrassCurve,
    /// `2506752 = 2^14 * 3^2 * 17`
    pub elliptic_discriminant: Integer,
    /// `156672`, the discriminant of `x^3 + 5x^2 - 32x`
    pub cubic_discriminant: Integer,
    /// `O = (1:-1:0)`, the identity in the cubic model.
    pub origin: ProjectiveTriple,
    /// `D = (1:1:-1)`, the rational 2-torsion point.
    pub torsion_d: ProjectiveTriple,
    /// `A = (1:0:-1)`, the point of infinite order.
    pub generator_a: ProjectiveTriple,
}

impl CurveConstants {
    pub fn sharygin() -> Self {
        let curve = WeierstrassCurve::sharygin();
        let cubic = |c| ProjectiveTriple::from_i64(CoordinateForm::Cubic, c).expect("nonzero");
        Self {
            elliptic_discriminant: curve.discriminant(),
            cubic_discriminant: curve.cubic_discriminant(),
            curve,
            origin: cubic([1, -1, 0]),
            torsion_d: cubic([1, 1, -1]),
            generator_a: cubic([1, 0, -1]),
        }
    }
}

/// `A = (-4, -12)` in the Weierstrass model.
pub fn point_a() -> WeierstrassPoint {
    WeierstrassPoint::affine(-4, -12)
}

/// `D = (0, 0)` in the Weierstrass model.
pub fn point_d() -> WeierstrassPoint {
    WeierstrassPoint::affine(0, 0)
}

/// `q(a,b,c)` on integers.
pub fn cubic_q_int(a: &Integer, b: &Integer, c: &Integer) -> Integer {
    let ab = Integer::from(a + b);
    let a2 = Integer::from(a.square_ref());
    let b2 = Integer::from(b.square_ref());
    let c2 = Integer::from(c.square_ref());
    let quad = Integer::from(&a2 + &b2) + Integer::from(a * b);
    // a^3 + a^2 b + a b^2 + b^3 = (a + b)(a^2 + b^2)
    let cubic_ab = &ab * Integer::from(&a2 + &b2);
    cubic_ab + Integer::from(c * &quad) - Integer::from(&c2 * &ab) - c2 * c
}

/// `q(a,b,c)` on rationals.
pub fn cubic_q(a: &Rational, b: &Rational, c: &Rational) -> Rational {
    let ab = Rational::from(a + b);
    let a2 = Rational::from(a.square_ref());
    let b2 = Rational::from(b.square_ref());
    let c2 = Rational::from(c.square_ref());
    let quad = Rational::from(&a2 + &b2) + Rational::from(a * b);
    let cubic_ab = &ab * Rational::from(&a2 + &b2);
    cubic_ab + Rational::from(c * &quad) - Rational::from(&c2 * &ab) - c2 * c
}

/// `q` as a polynomial in variables `(a, b, c) = (v0, v1, v2)`.
pub fn cubic_q_poly() -> &'static Poly3 {
    static Q: OnceLock<Poly3> = OnceLock::new();
    Q.get_or_init(|| {
        Poly3::from_terms(&[
            (-1, [0, 0, 3]),
            (-1, [1, 0, 2]),
            (-1, [0, 1, 2]),
            (1, [2, 0, 1]),
            (1, [1, 1, 1]),
            (1, [0, 2, 1]),
            (1, [3, 0, 0]),
            (1, [2, 1, 0]),
            (1, [1, 2, 0]),
            (1, [0, 3, 0]),
        ])
    })
}

/// The Hessian determinant `det(d^2 q / dv_i dv_j)`, a ternary cubic.
pub fn hessian_poly() -> &'static Poly3 {
    static H: OnceLock<Poly3> = OnceLock::new();
    H.get_or_init(|| {
        let q = cubic_q_poly();
        let m: [[Poly3; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| q.derivative(i).derivative(j)));
        det3(&m)
    })
}

/// `q` evaluated on the canonical representative of a cubic-model point.
pub fn eval_cubic_q(t: &ProjectiveTriple) -> Result<Rational> {
    t.expect_form(CoordinateForm::Cubic)?;
    let [a, b, c] = t.coords();
    Ok(Rational::from(cubic_q_int(a, b, c)))
}

/// Hessian determinant at the canonical representative.
pub fn hessian_eval(t: &ProjectiveTriple) -> Result<Rational> {
    t.expect_form(CoordinateForm::Cubic)?;
    Ok(hessian_poly().eval(&t.rational_coords()))
}

/// Gradient `(dq/da, dq/db, dq/dc)`.
pub fn cubic_gradient(p: &[Rational; 3]) -> [Rational; 3] {
    let q = cubic_q_poly();
    std::array::from_fn(|i| q.derivative(i).eval(p))
}

/// Tangent line `l . (a,b,c) = 0` at a cubic-model point, as primitive integers
/// with first nonzero coefficient positive.
pub fn tangent_line(t: &ProjectiveTriple) -> Result<[Integer; 3]> {
    t.expect_form(CoordinateForm::Cubic)?;
    if !t.is_on_curve() {
        return Err(Error::NotOnCurve(t.to_string()));
    }
    let grad = cubic_gradient(&t.rational_coords());
    match canonicalize(&grad) {
        Ok(l) => Ok(l),
        Err(Error::ZeroTriple) => Err(Error::SingularPoint(t.to_string())),
        Err(e) => Err(e),
    }
}

/// Intersection multiplicity of the tangent line at `t` with the curve at `t`:
/// 2 at an ordinary point, 3 at an inflexion.
pub fn tangent_contact_order(t: &ProjectiveTriple) -> Result<usize> {
    let line = tangent_line(t)?;
    let p0 = t.coords().clone();
    // A second point on the line: cross the line with a coordinate axis vector.
    let other = (0..3)
        .map(|i| {
            let mut e = [Integer::new(), Integer::new(), Integer::new()];
            e[i] = Integer::from(1);
            cross(&line, &e)
        })
        .find(|v| v.iter().any(|c| *c != 0) && cross(v, &p0).iter().any(|c| *c != 0))
        .ok_or_else(|| Error::SingularPoint(t.to_string()))?;
    // q(u * p0 + s * p1) as a binary cubic in (u, s) = (v0, v1).
    let subs: [Poly3; 3] = std::array::from_fn(|i| {
        &Poly3::term(p0[i].clone(), [1, 0, 0]) + &Poly3::term(other[i].clone(), [0, 1, 0])
    });
    let restricted = cubic_q_poly().substitute(&subs);
    Ok(restricted
        .terms()
        .map(|(e, _)| e[1] as usize)
        .min()
        .unwrap_or(3))
}

fn cross(u: &[Integer; 3], v: &[Integer; 3]) -> [Integer; 3] {
    [
        Integer::from(&u[1] * &v[2]) - Integer::from(&u[2] * &v[1]),
        Integer::from(&u[2] * &v[0]) - Integer::from(&u[0] * &v[2]),
        Integer::from(&u[0] * &v[1]) - Integer::from(&u[1] * &v[0]),
    ]
}

/// Resultant in `c` of `q(t,1,c)` and `H(t,1,c)`: its roots are the slopes
/// `t = a/b` of the inflexion points with `b != 0`.
pub fn inflexion_resultant() -> IntPoly {
    let q = cubic_q_poly().coefficients_in(2, 0);
    let h = hessian_poly().coefficients_in(2, 0);
    resultant(&q, &h)
}

/// The degree-8 factor cutting out the eight non-rational inflexions:
/// the resultant with the factor `t + 1` (from `O = (1:-1:0)`) removed,
/// made primitive with positive leading coefficient.
pub fn inflexion_polynomial() -> IntPoly {
    let mut r = inflexion_resultant();
    let origin_factor = IntPoly::from_i64(&[1, 1]);
    while let Some(q) = r.div_exact(&origin_factor) {
        r = q;
    }
    r.primitive_part()
}

/// All inflexion points defined over `Q`.
pub fn rational_inflexions() -> Vec<ProjectiveTriple> {
    let mut out = Vec::new();
    let q = cubic_q_poly();
    let h = hessian_poly();
    let mut push = |a: Rational, b: Rational, c: Rational| {
        let pt = [a, b, c];
        if q.eval(&pt) == 0 && h.eval(&pt) == 0 {
            let t = ProjectiveTriple::new(CoordinateForm::Cubic, pt).expect("nonzero");
            if !out.contains(&t) {
                out.push(t);
            }
        }
    };
    // Chart b = 1: rational slopes t, then rational c on q(t, 1, c) = 0.
    for t in inflexion_resultant().rational_roots() {
        let coeffs = cubic_q_poly().coefficients_in(2, 0);
        let in_c: Vec<Rational> = coeffs.iter().map(|p| p.eval(&t)).collect();
        for c in rational_roots_of(&in_c) {
            push(t.clone(), Rational::from(1), c);
        }
    }
    // Line b = 0: q(a, 0, c) = (a - c)(a + c)^2, and (0:0:1) is not on the curve.
    for c in [Rational::from(1), Rational::from(-1)] {
        push(Rational::from(1), Rational::new(), c);
    }
    out
}

fn rational_roots_of(coeffs: &[Rational]) -> Vec<Rational> {
    let lcm = coeffs
        .iter()
        .fold(Integer::from(1), |l, c| l.lcm(c.denom()));
    let ints: Vec<Integer> = coeffs
        .iter()
        .map(|c| c.numer() * Integer::from(lcm.div_exact_ref(c.denom())))
        .collect();
    IntPoly::new(ints).rational_roots()
}

/// Smoothness of the Sharygin curve: its discriminant is nonzero.
pub fn check_smooth() -> bool {
    WeierstrassCurve::sharygin().is_smooth()
}

/// Cubic model to Weierstrass model.
pub fn cubic_to_weierstrass(p: &ProjectiveTriple) -> Result<WeierstrassPoint> {
    p.expect_form(CoordinateForm::Cubic)?;
    if !p.is_on_curve() {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    let [a, b, c] = p.coords();
    let ab = Integer::from(a + b);
    let den = Integer::from(&ab * 2u32) + c;
    if den == 0 {
        return Ok(WeierstrassPoint::Infinity);
    }
    let x_num = (ab + Integer::from(c * 2u32)) * 4u32;
    let y_num = Integer::from(b - a) * 12u32;
    Ok(WeierstrassPoint::Affine {
        x: Rational::from((x_num, den.clone())),
        y: Rational::from((y_num, den)),
    })
}

/// Weierstrass model to cubic model.
pub fn weierstrass_to_cubic(p: &WeierstrassPoint) -> ProjectiveTriple {
    let coords = match p {
        WeierstrassPoint::Infinity => [Rational::from(1), Rational::from(-1), Rational::new()],
        WeierstrassPoint::Affine { x, y } => {
            let eight_minus_x = Rational::from(8 - x);
            [
                Rational::from(&eight_minus_x - y),
                eight_minus_x + y,
                Rational::from(x * 4u32) - 8u32,
            ]
        }
    };
    ProjectiveTriple::new(CoordinateForm::Cubic, coords).expect("image is never (0:0:0)")
}

/// Minimal model to Weierstrass model: `(x, y) -> (4x, 4x + 8y)`.
pub fn minimal_to_weierstrass(p: &ProjectiveTriple) -> Result<WeierstrassPoint> {
    p.expect_form(CoordinateForm::Minimal)?;
    if !p.is_on_curve() {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    let [x, y, z] = p.rational_coords();
    if z == 0 {
        return Ok(WeierstrassPoint::Infinity);
    }
    let x1 = x / &z;
    let y1 = y / &z;
    let x2 = Rational::from(&x1 * 4u32);
    let y2 = &x2 + y1 * 8u32;
    Ok(WeierstrassPoint::Affine { x: x2, y: y2 })
}

/// Weierstrass model to minimal model: `(x, y) -> (x/4, (y - x)/8)`.
pub fn weierstrass_to_minimal(p: &WeierstrassPoint) -> ProjectiveTriple {
    let coords = match p {
        WeierstrassPoint::Infinity => [Rational::new(), Rational::from(1), Rational::new()],
        WeierstrassPoint::Affine { x, y } => [
            Rational::from(x / 4u32),
            Rational::from(y - x) / 8u32,
            Rational::from(1),
        ],
    };
    ProjectiveTriple::new(CoordinateForm::Minimal, coords).expect("nonzero")
}

/// Expresses a Weierstrass point in the requested model.
pub fn to_form(p: &WeierstrassPoint, form: CoordinateForm) -> ProjectiveTriple {
    match form {
        CoordinateForm::Minimal => weierstrass_to_minimal(p),
        CoordinateForm::Weierstrass => p.to_projective(),
        CoordinateForm::Cubic => weierstrass_to_cubic(p),
    }
}

/// Any tagged triple to the Weierstrass model.
pub fn from_triple(p: &ProjectiveTriple) -> Result<WeierstrassPoint> {
    match p.form() {
        CoordinateForm::Minimal => minimal_to_weierstrass(p),
        CoordinateForm::Weierstrass => WeierstrassPoint::from_projective(p),
        CoordinateForm::Cubic => cubic_to_weierstrass(p),
    }
}
