//! Triangle predicates: validity, the bisectral triangle, the Sharygin
//! condition, its trigonometric form, and triangles read off curve points.

use std::fmt;
use std::sync::OnceLock;

use rug::{Float, Integer, Rational};

use crate::curve::{cubic_q, cubic_q_poly, CoordinateForm, ProjectiveTriple};
use crate::error::{Error, Result};
use crate::numeric::{pi_fraction, NumericConfig};
use crate::poly::Poly3;

/// Side lengths satisfying the strict triangle inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriangleTriple {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl TriangleTriple {
    pub fn new(
        a: impl Into<Rational>,
        b: impl Into<Rational>,
        c: impl Into<Rational>,
    ) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        let ok = a > 0
            && b > 0
            && c > 0
            && a < Rational::from(&b + &c)
            && b < Rational::from(&a + &c)
            && c < Rational::from(&a + &b);
        if !ok {
            return Err(Error::DegenerateTriangle(format!("({a}, {b}, {c})")));
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn sides(&self) -> [&Rational; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn is_scalene(&self) -> bool {
        self.a != self.b && self.b != self.c && self.a != self.c
    }

    pub fn scaled(&self, lambda: &Rational) -> Result<Self> {
        Self::new(
            Rational::from(&self.a * lambda),
            Rational::from(&self.b * lambda),
            Rational::from(&self.c * lambda),
        )
    }

    /// Sides in the given order `perm`, e.g. `[1, 0, 2]` swaps `a` and `b`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let s = self.sides();
        Self {
            a: s[perm[0]].clone(),
            b: s[perm[1]].clone(),
            c: s[perm[2]].clone(),
        }
    }

    /// The similar triangle with coprime positive integer sides.
    pub fn primitive_integers(&self) -> [Integer; 3] {
        let t = ProjectiveTriple::new(
            CoordinateForm::Cubic,
            [self.a.clone(), self.b.clone(), self.c.clone()],
        )
        .expect("sides are positive");
        t.coords().clone()
    }

    /// `primitive_integers` sorted increasingly; equal iff the triangles are similar.
    pub fn sorted_primitive(&self) -> [Integer; 3] {
        let mut s = self.primitive_integers();
        s.sort();
        s
    }

    /// `q(a, b, c)` on these sides.
    pub fn q(&self) -> Rational {
        cubic_q(&self.a, &self.b, &self.c)
    }
}

impl fmt::Display for TriangleTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Squared sides of the bisectral triangle: `a2 = |B'C'|^2`, `b2 = |A'C'|^2`, `c2 = |A'B'|^2`,
/// where `A'`, `B'`, `C'` are the feet of the bisectors from `A`, `B`, `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisectralSquares {
    pub a2: Rational,
    pub b2: Rational,
    pub c2: Rational,
}

impl BisectralSquares {
    pub fn as_array(&self) -> [&Rational; 3] {
        [&self.a2, &self.b2, &self.c2]
    }

    pub fn has_equal_pair(&self) -> bool {
        self.a2 == self.b2 || self.b2 == self.c2 || self.a2 == self.c2
    }
}

/// Squared distance between the two bisector feet adjacent to a vertex, from the
/// two foot distances `u`, `v` along the sides and `2 * cos` of the vertex angle
/// given as `(s^2 + t^2 - o^2) / (s t)`.
fn foot_distance_sq(u: &Rational, v: &Rational, two_cos: &Rational) -> Rational {
    Rational::from(u.square_ref()) + Rational::from(v.square_ref())
        - Rational::from(u * v) * two_cos
}

fn two_cos(opposite: &Rational, s: &Rational, t: &Rational) -> Rational {
    (Rational::from(s.square_ref()) + Rational::from(t.square_ref())
        - Rational::from(opposite.square_ref()))
        / Rational::from(s * t)
}

/// Bisector feet split each side in the ratio of the adjacent sides
/// (`BA' = ac/(b+c)`, `A'C = ab/(b+c)`, ...), then the law of cosines at each vertex.
pub fn bisectral_squares(t: &TriangleTriple) -> BisectralSquares {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let ab = Rational::from(a + b);
    let ac = Rational::from(a + c);
    let bc = Rational::from(b + c);
    let prod_bc = Rational::from(b * c);
    let prod_ac = Rational::from(a * c);
    let prod_ab = Rational::from(a * b);

    // at A: AB' = bc/(a+c) on AC, AC' = bc/(a+b) on AB
    let a2 = foot_distance_sq(
        &Rational::from(&prod_bc / &ac),
        &Rational::from(&prod_bc / &ab),
        &two_cos(a, b, c),
    );
    // at B: BA' = ac/(b+c) on BC, BC' = ac/(a+b) on BA
    let b2 = foot_distance_sq(
        &Rational::from(&prod_ac / &bc),
        &Rational::from(&prod_ac / &ab),
        &two_cos(b, a, c),
    );
    // at C: CA' = ab/(b+c) on CB, CB' = ab/(a+c) on CA
    let c2 = foot_distance_sq(
        &Rational::from(&prod_ab / &bc),
        &Rational::from(&prod_ab / &ac),
        &two_cos(c, a, b),
    );
    BisectralSquares { a2, b2, c2 }
}

/// Scalene with an isosceles bisectral triangle.
pub fn is_sharygin(t: &TriangleTriple) -> bool {
    t.is_scalene() && bisectral_squares(t).has_equal_pair()
}

/// The triangle with sides given by a cubic-model point, keeping the order `(a, b, c)`.
/// `Ok(None)` when no sign choice makes the point lie in the triangle region.
pub fn point_to_triangle(p: &ProjectiveTriple) -> Result<Option<TriangleTriple>> {
    if p.form() != CoordinateForm::Cubic {
        return Err(Error::FormMismatch {
            expected: CoordinateForm::Cubic,
            got: p.form(),
        });
    }
    if !p.is_on_curve() {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    let coords = p.coords();
    let sign = if coords.iter().all(|c| *c > 0) {
        1
    } else if coords.iter().all(|c| *c < 0) {
        -1
    } else {
        return Ok(None);
    };
    let [a, b, c] = coords.clone().map(|x| Rational::from(x * sign));
    Ok(TriangleTriple::new(a, b, c).ok())
}

/// Cosine of the angle opposite the largest side.
pub fn largest_angle_cosine(t: &TriangleTriple) -> Rational {
    let mut s = [&t.a, &t.b, &t.c];
    s.sort();
    two_cos(s[2], s[0], s[1]) / 2u32
}

/// `-1/4 < x < (sqrt(17) - 5)/4`, as `4x + 1 > 0`, `4x + 5 > 0` and `(4x + 5)^2 < 17`.
pub fn in_obtuse_interval(x: &Rational) -> bool {
    let four_x = Rational::from(x * 4u32);
    let shifted = Rational::from(&four_x + 5u32);
    four_x + 1u32 > 0 && shifted > 0 && shifted.square() < 17u32
}

/// Angles of a triangle; `gamma = pi - alpha - beta`.
#[derive(Clone, Debug)]
pub struct AngleTriple {
    pub alpha: Float,
    pub beta: Float,
    pub gamma: Float,
}

impl AngleTriple {
    pub fn new(cfg: &NumericConfig, alpha: Float, beta: Float) -> Result<Self> {
        let gamma = cfg.pi() - &alpha - &beta;
        let tiny = |x: &Float| *x <= 0 || cfg.is_negligible(x);
        if tiny(&alpha) || tiny(&beta) || tiny(&gamma) {
            return Err(Error::DegenerateTriangle(format!(
                "angles ({alpha}, {beta}, {gamma})"
            )));
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// `alpha = (ka/na) pi`, `beta = (kb/nb) pi`.
    pub fn from_pi_fractions(
        cfg: &NumericConfig,
        alpha: (i64, i64),
        beta: (i64, i64),
    ) -> Result<Self> {
        Self::new(
            cfg,
            pi_fraction(cfg, alpha.0, alpha.1),
            pi_fraction(cfg, beta.0, beta.1),
        )
    }
}

/// `sin a + sin b + sin(a+b) - sin(a+2b) - sin(2a+b) - sin(2a+2b)`.
pub fn trig_residual(angles: &AngleTriple) -> Float {
    let a = &angles.alpha;
    let b = &angles.beta;
    let prec = a.prec().max(b.prec());
    let s = |x: Float| x.sin();
    let f = |v: Float| Float::with_val(prec, v);
    let ab = f(Float::with_val(prec, a + b));
    let a2b = f(Float::with_val(prec, &ab + b));
    let two_ab = f(Float::with_val(prec, &ab + a));
    let two_two = f(Float::with_val(prec, &ab * 2u32));
    s(a.clone()) + s(b.clone()) + s(ab) - s(a2b) - s(two_ab) - s(two_two)
}

/// Tangent lengths from the incircle: `a = y + z`, `b = x + z`, `c = x + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkelovChart {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl MarkelovChart {
    pub fn new(x: impl Into<Rational>, y: impl Into<Rational>, z: impl Into<Rational>) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    pub fn from_sides(a: &Rational, b: &Rational, c: &Rational) -> Self {
        let half = |r: Rational| r / 2u32;
        Self {
            x: half(Rational::from(b + c) - a),
            y: half(Rational::from(a + c) - b),
            z: half(Rational::from(a + b) - c),
        }
    }

    pub fn sides(&self) -> [Rational; 3] {
        [
            Rational::from(&self.y + &self.z),
            Rational::from(&self.x + &self.z),
            Rational::from(&self.x + &self.y),
        ]
    }
}

/// `4z^3 + 6xyz - 3xy(x+y) + 5z(x^2+y^2) + 9z^2(x+y)`
pub fn markelov_eval(m: &MarkelovChart) -> Rational {
    markelov_poly().eval(&[m.x.clone(), m.y.clone(), m.z.clone()])
}

pub fn markelov_poly() -> &'static Poly3 {
    static M: OnceLock<Poly3> = OnceLock::new();
    M.get_or_init(|| {
        Poly3::from_terms(&[
            (4, [0, 0, 3]),
            (6, [1, 1, 1]),
            (-3, [2, 1, 0]),
            (-3, [1, 2, 0]),
            (5, [2, 0, 1]),
            (5, [0, 2, 1]),
            (9, [1, 0, 2]),
            (9, [0, 1, 2]),
        ])
    })
}

/// The constant `k` with `markelov(x,y,z) = k * q(y+z, x+z, x+y)`, by symbolic expansion.
pub fn markelov_factor() -> Option<Rational> {
    let x = Poly3::var(0);
    let y = Poly3::var(1);
    let z = Poly3::var(2);
    let subs = [&y + &z, &x + &z, &x + &y];
    markelov_poly().ratio_to(&cubic_q_poly().substitute(&subs))
}

/// The triangle on vertices `1, zeta, zeta^3` of the regular heptagon, `zeta = e^{2 pi i/7}`.
#[derive(Clone, Debug)]
pub struct HeptagonTriangle {
    /// `|zeta - 1|`, `|zeta^3 - zeta|`, `|zeta^3 - 1|`
    pub sides: [Float; 3],
}

impl HeptagonTriangle {
    /// `|zeta^3 - zeta| / |zeta - 1|`
    pub fn ratio(&self) -> Float {
        Float::with_val(self.sides[1].prec(), &self.sides[1] / &self.sides[0])
    }

    pub fn is_scalene(&self, cfg: &NumericConfig) -> bool {
        let s = &self.sides;
        let differ = |x: &Float, y: &Float| !cfg.is_negligible(&Float::with_val(cfg.bits, x - y));
        differ(&s[0], &s[1]) && differ(&s[1], &s[2]) && differ(&s[0], &s[2])
    }

    /// Numeric bisectral squares, same formulas as the exact version.
    pub fn bisectral_squares(&self) -> [Float; 3] {
        let [a, b, c] = &self.sides;
        let p = a.prec();
        let fl = |v: Float| v;
        let two_cos = |o: &Float, s: &Float, t: &Float| {
            fl(Float::with_val(p, s * s) + Float::with_val(p, t * t) - Float::with_val(p, o * o))
                / Float::with_val(p, s * t)
        };
        let dist = |u: Float, v: Float, tc: Float| {
            Float::with_val(p, &u * &u) + Float::with_val(p, &v * &v) - u * v * tc
        };
        let ab = Float::with_val(p, a + b);
        let ac = Float::with_val(p, a + c);
        let bc = Float::with_val(p, b + c);
        let pbc = Float::with_val(p, b * c);
        let pac = Float::with_val(p, a * c);
        let pab = Float::with_val(p, a * b);
        [
            dist(
                Float::with_val(p, &pbc / &ac),
                Float::with_val(p, &pbc / &ab),
                two_cos(a, b, c),
            ),
            dist(
                Float::with_val(p, &pac / &bc),
                Float::with_val(p, &pac / &ab),
                two_cos(b, a, c),
            ),
            dist(
                Float::with_val(p, &pab / &bc),
                Float::with_val(p, &pab / &ac),
                two_cos(c, a, b),
            ),
        ]
    }

    /// Scalene, with two bisectral squares equal within tolerance.
    pub fn is_sharygin(&self, cfg: &NumericConfig) -> bool {
        let [x, y, z] = self.bisectral_squares();
        let close = |u: &Float, v: &Float| cfg.is_negligible(&Float::with_val(cfg.bits, u - v));
        self.is_scalene(cfg) && (close(&x, &y) || close(&y, &z) || close(&x, &z))
    }
}

/// `|zeta^k - 1| = 2 sin(k pi / 7)`.
pub fn heptagon_triangle(cfg: &NumericConfig) -> HeptagonTriangle {
    let chord = |k: i64| pi_fraction(cfg, k, 7).sin() * 2u32;
    HeptagonTriangle {
        sides: [chord(1), chord(2), chord(3)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: i64, b: i64, c: i64) -> TriangleTriple {
        TriangleTriple::new(a, b, c).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn rejects_degenerate() {
        assert!(TriangleTriple::new(1, 2, 3).is_err());
        assert!(TriangleTriple::new(0, 1, 1).is_err());
        assert!(TriangleTriple::new(-3, 4, 5).is_err());
    }

    #[test]
    fn equilateral_bisectral_is_medial() {
        let s = bisectral_squares(&tri(1, 1, 1));
        assert_eq!(s.a2, r(1, 4));
        assert_eq!(s.b2, r(1, 4));
        assert_eq!(s.c2, r(1, 4));
        assert!(!is_sharygin(&tri(1, 1, 1)));
    }

    #[test]
    fn right_triangle_against_coordinates() {
        // B = (0,0), C = (3,0), A = (3,4): a = BC = 3, b = CA = 4, c = AB = 5
        let t = tri(3, 4, 5);
        let pt = |x: Rational, y: Rational| (x, y);
        let lerp = |p: &(Rational, Rational), q: &(Rational, Rational), s: Rational| {
            let one_minus = Rational::from(1 - &s);
            pt(
                Rational::from(&p.0 * &one_minus) + Rational::from(&q.0 * &s),
                Rational::from(&p.1 * &one_minus) + Rational::from(&q.1 * &s),
            )
        };
        let a_pt = pt(r(3, 1), r(4, 1));
        let b_pt = pt(r(0, 1), r(0, 1));
        let c_pt = pt(r(3, 1), r(0, 1));
        // A' on BC with BA'/BC = c/(b+c), etc.
        let a_foot = lerp(&b_pt, &c_pt, r(5, 9));
        let b_foot = lerp(&c_pt, &a_pt, r(3, 8));
        let c_foot = lerp(&a_pt, &b_pt, r(4, 7));
        let d2 = |p: &(Rational, Rational), q: &(Rational, Rational)| {
            Rational::from(&p.0 - &q.0).square() + Rational::from(&p.1 - &q.1).square()
        };
        let s = bisectral_squares(&t);
        assert_eq!(s.a2, d2(&b_foot, &c_foot));
        assert_eq!(s.b2, d2(&a_foot, &c_foot));
        assert_eq!(s.c2, d2(&a_foot, &b_foot));
        assert_eq!(s.a2, r(585, 196));
        assert_eq!(s.b2, r(1360, 441));
        assert_eq!(s.c2, r(145, 36));
        assert!(!is_sharygin(&t));
    }

    #[test]
    fn flagship_triangle() {
        let t = tri(18_800_081, 1_481_089, 19_214_131);
        let s = bisectral_squares(&t);
        assert_eq!(s.a2, s.b2);
        assert!(is_sharygin(&t));
        assert_eq!(t.q(), 0);
    }

    #[test]
    fn point_to_triangle_cases() {
        let cubic = |c: [i64; 3]| ProjectiveTriple::from_i64(CoordinateForm::Cubic, c).unwrap();
        assert_eq!(
            point_to_triangle(&cubic([1_481_089, 18_800_081, 19_214_131])).unwrap(),
            Some(tri(1_481_089, 18_800_081, 19_214_131))
        );
        assert_eq!(point_to_triangle(&cubic([1, 0, -1])).unwrap(), None);
        assert_eq!(point_to_triangle(&cubic([1, 1, -1])).unwrap(), None);
        assert!(point_to_triangle(&cubic([1, 1, 1])).is_err());
    }

    #[test]
    fn cosine_examples() {
        assert_eq!(largest_angle_cosine(&tri(3, 4, 5)), 0);
        assert_eq!(largest_angle_cosine(&tri(1, 1, 1)), r(1, 2));
        let flagship = largest_angle_cosine(&tri(18_800_081, 1_481_089, 19_214_131));
        assert!(in_obtuse_interval(&flagship));
        assert!(!in_obtuse_interval(&Rational::new()));
        assert!(!in_obtuse_interval(&r(-1, 4)));
    }

    #[test]
    fn trig_residual_examples() {
        let cfg = NumericConfig::default();
        let hept = AngleTriple::from_pi_fractions(&cfg, (1, 7), (2, 7)).unwrap();
        assert!(trig_residual(&hept).abs() < 1e-30);
        let eq = AngleTriple::from_pi_fractions(&cfg, (1, 3), (1, 3)).unwrap();
        assert!(trig_residual(&eq).abs() > 1e-3);
        assert!(AngleTriple::from_pi_fractions(&cfg, (2, 3), (1, 3)).is_err());
    }

    #[test]
    fn law_of_sines_identity() {
        // q(2 sin a, 2 sin b, 2 sin(a+b)) = 8 sin a sin b * residual
        let cfg = NumericConfig::default();
        for (ka, kb) in [(1, 5), (2, 9), (3, 11), (1, 13)] {
            let ang = AngleTriple::from_pi_fractions(&cfg, (ka, 17), (kb, 19)).unwrap();
            let sa = ang.alpha.clone().sin();
            let sb = ang.beta.clone().sin();
            let sc = Float::with_val(cfg.bits, &ang.alpha + &ang.beta).sin();
            let to_q = |x: &Float| x.to_rational().unwrap() * 2u32;
            let q = cubic_q(&to_q(&sa), &to_q(&sb), &to_q(&sc));
            let lhs = Float::with_val(cfg.bits, &q);
            let rhs = sa * sb * trig_residual(&ang) * 8u32;
            assert!(Float::with_val(cfg.bits, lhs - rhs).abs() < 1e-30);
        }
    }

    #[test]
    fn markelov_examples() {
        assert_eq!(markelov_eval(&MarkelovChart::new(-1, 0, 1)), 0);
        assert_eq!(
            markelov_eval(&MarkelovChart::new(r(-1, 2), r(-1, 2), r(3, 2))),
            0
        );
        assert_eq!(markelov_eval(&MarkelovChart::new(1, 1, 1)), 32);
        assert_eq!(markelov_factor(), Some(Rational::from(1)));
        let m = MarkelovChart::from_sides(&r(1, 1), &r(1, 1), &r(-1, 1));
        assert_eq!(m, MarkelovChart::new(r(-1, 2), r(-1, 2), r(3, 2)));
        assert_eq!(m.sides(), [r(1, 1), r(1, 1), r(-1, 1)]);
    }

    #[test]
    fn heptagon_numeric() {
        let cfg = NumericConfig::default();
        let h = heptagon_triangle(&cfg);
        let two_cos = pi_fraction(&cfg, 1, 7).cos() * 2u32;
        assert!(Float::with_val(cfg.bits, h.ratio() - two_cos).abs() < 1e-30);
        assert!(h.is_scalene(&cfg));
        assert!(h.is_sharygin(&cfg));
    }
}
