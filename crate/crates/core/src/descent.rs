//! Arithmetic in `K = Q(sqrt 17)` and the checkable pieces of the 2-descent
//! for `y^2 = x (x - e2) (x - e3)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use crate::curve::{WeierstrassCurve, WeierstrassPoint};
use crate::error::{Error, Result};

/// `r + s sqrt(17)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QF17 {
    pub r: Rational,
    pub s: Rational,
}

impl QF17 {
    pub fn new(r: impl Into<Rational>, s: impl Into<Rational>) -> Self {
        Self {
            r: r.into(),
            s: s.into(),
        }
    }

    pub fn rational(r: impl Into<Rational>) -> Self {
        Self::new(r, 0)
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn sqrt17() -> Self {
        Self::new(0, 1)
    }

    /// `(r + s sqrt 17) / d`
    pub fn frac(r: i64, s: i64, d: i64) -> Self {
        Self::new(Rational::from((r, d)), Rational::from((s, d)))
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.s == 0
    }

    pub fn is_rational(&self) -> bool {
        self.s == 0
    }

    pub fn conj(&self) -> Self {
        Self::new(self.r.clone(), Rational::from(-&self.s))
    }

    /// `r^2 - 17 s^2`
    pub fn norm(&self) -> Rational {
        Rational::from(self.r.square_ref()) - Rational::from(self.s.square_ref()) * 17u32
    }

    /// `2r`
    pub fn trace(&self) -> Rational {
        Rational::from(&self.r * 2u32)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0 {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(Self::new(c.r / &n, c.s / &n))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// A square root in `K`, if one exists.
    ///
    /// If `z = (r + s sqrt 17)^2` then `N(z) = n^2` with `n = r^2 - 17 s^2`,
    /// `r^2 = (A + n)/2` and `17 s^2 = (A - n)/2`, `A` the rational part of `z`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = rational_sqrt(&self.norm())?;
        for n in [n.clone(), -n] {
            let r2 = Rational::from(&self.r + &n) / 2u32;
            let s2 = Rational::from(&self.r - &n) / 34u32;
            let (Some(r), Some(mut s)) = (rational_sqrt(&r2), rational_sqrt(&s2)) else {
                continue;
            };
            // 2rs must equal the sqrt(17)-part
            if Rational::from(&r * &s) * 2u32 != self.s {
                s = -s;
            }
            let root = Self::new(r, s);
            if root.square() == *self {
                return Some(root);
            }
        }
        None
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }
}

/// Square root of a nonnegative rational, if rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if *q < 0 || !q.numer().is_perfect_square() || !q.denom().is_perfect_square() {
        return None;
    }
    Some(Rational::from((
        q.numer().clone().sqrt(),
        q.denom().clone().sqrt(),
    )))
}

impl Add for &QF17 {
    type Output = QF17;
    fn add(self, o: &QF17) -> QF17 {
        QF17::new(
            Rational::from(&self.r + &o.r),
            Rational::from(&self.s + &o.s),
        )
    }
}

impl Sub for &QF17 {
    type Output = QF17;
    fn sub(self, o: &QF17) -> QF17 {
        QF17::new(
            Rational::from(&self.r - &o.r),
            Rational::from(&self.s - &o.s),
        )
    }
}

impl Mul for &QF17 {
    type Output = QF17;
    fn mul(self, o: &QF17) -> QF17 {
        let rr = Rational::from(&self.r * &o.r);
        let ss = Rational::from(&self.s * &o.s) * 17u32;
        let rs = Rational::from(&self.r * &o.s) + Rational::from(&self.s * &o.r);
        QF17::new(rr + ss, rs)
    }
}

impl Neg for &QF17 {
    type Output = QF17;
    fn neg(self) -> QF17 {
        QF17::new(Rational::from(-&self.r), Rational::from(-&self.s))
    }
}

impl fmt::Display for QF17 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r == 0, self.s == 0) {
            (_, true) => write!(f, "{}", self.r),
            (true, false) => write!(f, "{}*sqrt17", self.s),
            (false, false) if self.s < 0 => {
                write!(f, "{} - {}*sqrt17", self.r, Rational::from(-&self.s))
            }
            _ => write!(f, "{} + {}*sqrt17", self.r, self.s),
        }
    }
}

/// The constants of the descent over `K`.
#[derive(Clone, Debug)]
pub struct DescentConstants {
    pub e1: QF17,
    /// `-(5 + 3 sqrt 17)/2`
    pub e2: QF17,
    /// `-(5 - 3 sqrt 17)/2`
    pub e3: QF17,
    /// Fundamental unit `4 + sqrt 17`, of norm -1.
    pub i_tilde: QF17,
    /// `(5 + sqrt 17)/2`
    pub two_plus: QF17,
    /// `(5 - sqrt 17)/2`
    pub two_minus: QF17,
    pub three: QF17,
    pub sqrt17: QF17,
    /// Finite places of `S`; the infinite place is implicit.
    pub finite_places: [u64; 3],
}

impl Default for DescentConstants {
    fn default() -> Self {
        Self {
            e1: QF17::zero(),
            e2: QF17::frac(-5, -3, 2),
            e3: QF17::frac(-5, 3, 2),
            i_tilde: QF17::new(4, 1),
            two_plus: QF17::frac(5, 1, 2),
            two_minus: QF17::frac(5, -1, 2),
            three: QF17::rational(3),
            sqrt17: QF17::sqrt17(),
            finite_places: [2, 3, 17],
        }
    }
}

impl DescentConstants {
    /// Generators of `K(S,2)`: `-1`, the unit, the primes above 2 and 3, and `sqrt 17`.
    pub fn ks2_generators(&self) -> [QF17; 6] {
        [
            QF17::rational(-1),
            self.i_tilde.clone(),
            self.two_plus.clone(),
            self.two_minus.clone(),
            self.three.clone(),
            self.sqrt17.clone(),
        ]
    }
}

/// All 64 products of subsets of the `K(S,2)` generators, indexed by bitmask.
pub fn ks2_representatives() -> Vec<QF17> {
    let gens = DescentConstants::default().ks2_generators();
    (0u32..64)
        .map(|mask| {
            gens.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(QF17::one(), |acc, (_, g)| &acc * g)
        })
        .collect()
}

/// `x / y` is a square in `K`.
pub fn square_equivalent(x: &QF17, y: &QF17) -> bool {
    x.div(y).map(|q| q.is_square()).unwrap_or(false)
}

/// A solution of `b1 z1^2 - b2 z2^2 = e2`, `b1 z1^2 - b1 b2 z3^2 = e3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentWitness {
    pub b1: QF17,
    pub b2: QF17,
    pub z1: QF17,
    pub z2: QF17,
    pub z3: QF17,
}

/// Checks both equations and returns `(b1 z1^2 + e1, b1 b2 z1 z2 z3)`,
/// which must be a rational point of the curve.
pub fn verify_witness(w: &DescentWitness) -> Result<WeierstrassPoint> {
    let k = DescentConstants::default();
    let b1z1 = &w.b1 * &w.z1.square();
    if &b1z1 - &(&w.b2 * &w.z2.square()) != k.e2 {
        return Err(Error::WitnessRejected("b1 z1^2 - b2 z2^2 != e2".into()));
    }
    if &b1z1 - &(&(&w.b1 * &w.b2) * &w.z3.square()) != k.e3 {
        return Err(Error::WitnessRejected("b1 z1^2 - b1 b2 z3^2 != e3".into()));
    }
    let x = &b1z1 + &k.e1;
    let y = &(&(&w.b1 * &w.b2) * &(&w.z1 * &w.z2)) * &w.z3;
    if !x.is_rational() || !y.is_rational() {
        return Err(Error::WitnessRejected(format!(
            "point ({x}, {y}) is not rational"
        )));
    }
    let p = WeierstrassPoint::affine(x.r, y.r);
    if !WeierstrassCurve::sharygin().contains(&p) {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    Ok(p)
}

/// One row of the solution table: a witness and the point it should produce.
#[derive(Clone, Debug)]
pub struct WitnessRow {
    pub label: &'static str,
    pub witness: DescentWitness,
    pub expected: WeierstrassPoint,
}

/// The four rows `(b1, b2) = (1, 1), (-2, i 2-), (-1, 3 i), (2, 3 2-)`.
pub fn builtin_witness_table() -> Vec<WitnessRow> {
    let k = DescentConstants::default();
    let row =
        |label, b1: QF17, b2: QF17, z1: QF17, z2: QF17, z3: QF17, x: i64, y: i64| WitnessRow {
            label,
            witness: DescentWitness { b1, b2, z1, z2, z3 },
            expected: WeierstrassPoint::affine(x, y),
        };
    vec![
        row(
            "2A",
            QF17::one(),
            QF17::one(),
            QF17::rational(2),
            QF17::frac(3, 1, 2),
            QF17::frac(-3, 1, 2),
            4,
            4,
        ),
        row(
            "2A+D",
            QF17::rational(-2),
            &k.i_tilde * &k.two_minus,
            QF17::rational(2),
            QF17::frac(5, -1, 2),
            QF17::frac(-1, -1, 4),
            -8,
            8,
        ),
        row(
            "3A",
            QF17::rational(-1),
            &k.i_tilde * &k.three,
            QF17::one(),
            QF17::frac(-3, 1, 2),
            QF17::frac(-5, 1, 2),
            -1,
            6,
        ),
        row(
            "A+D",
            QF17::rational(2),
            &k.two_minus * &k.three,
            QF17::rational(2),
            QF17::frac(3, 1, 2),
            QF17::frac(-1, -1, 4),
            8,
            -24,
        ),
    ]
}

/// The descent map `E(Q) -> (K*/K*^2)^2` with the special values at `e1`, `e2`, infinity.
pub fn descent_image(p: &WeierstrassPoint) -> Result<(QF17, QF17)> {
    let k = DescentConstants::default();
    let x = match p {
        WeierstrassPoint::Infinity => return Ok((QF17::one(), QF17::one())),
        WeierstrassPoint::Affine { x, .. } => QF17::rational(x.clone()),
    };
    if x == k.e1 {
        let e12 = &k.e1 - &k.e2;
        return Ok(((&k.e1 - &k.e3).div(&e12)?, e12));
    }
    if x == k.e2 {
        let e21 = &k.e2 - &k.e1;
        return Ok((e21.clone(), (&k.e2 - &k.e3).div(&e21)?));
    }
    Ok((&x - &k.e1, &x - &k.e2))
}

/// Componentwise square equivalence of two descent images.
pub fn same_class(u: &(QF17, QF17), v: &(QF17, QF17)) -> bool {
    square_equivalent(&u.0, &v.0) && square_equivalent(&u.1, &v.1)
}

/// Checks of the ninth elimination step.
#[derive(Clone, Debug)]
pub struct Step9Report {
    /// `conj(2+)/2+ = (21 - 5 sqrt 17)/4`
    pub b_squared: QF17,
    /// `2t^2 - 21t + 2 = 0` at `t = B^2`
    pub quadratic_holds: bool,
    /// neither root of `2t^2 - 21t + 2` is a square in `K`
    pub b_not_in_k: bool,
    /// `2t^2 + 21t + 2 = 0` at `t = -B^2`
    pub companion_holds: bool,
    /// neither root of `2t^2 + 21t + 2` is a square in `K`
    pub companion_not_in_k: bool,
}

impl Step9Report {
    pub fn passed(&self) -> bool {
        self.quadratic_holds && self.b_not_in_k && self.companion_holds && self.companion_not_in_k
    }
}

fn quadratic_at(a: i64, b: i64, c: i64, t: &QF17) -> QF17 {
    let at2 = &QF17::rational(a) * &t.square();
    let bt = &QF17::rational(b) * t;
    &(&at2 + &bt) + &QF17::rational(c)
}

pub fn step9_report() -> Step9Report {
    let k = DescentConstants::default();
    let b_squared = k.two_plus.conj().div(&k.two_plus).expect("2+ is nonzero");
    let roots = [b_squared.clone(), b_squared.conj()];
    let neg_roots = [-&roots[0], -&roots[1]];
    Step9Report {
        quadratic_holds: roots.iter().all(|t| quadratic_at(2, -21, 2, t).is_zero()),
        b_not_in_k: roots.iter().all(|t| !t.is_square()),
        companion_holds: neg_roots
            .iter()
            .all(|t| quadratic_at(2, 21, 2, t).is_zero()),
        companion_not_in_k: neg_roots.iter().all(|t| !t.is_square()),
        b_squared,
    }
}

/// `2B^4 - 21B^2 + 2 = 0` for `B^2 = conj(2+)/2+`, and `B` is not in `K`.
pub fn minpoly_check_step9() -> bool {
    step9_report().passed()
}

/// Odd squares mod 8 are `{1}`, so `z^2 = 5 (mod 8)` has no solution.
pub fn squares_mod8_obstruction() -> bool {
    let odd: Vec<u32> = (0..8u32)
        .filter(|t| t % 2 == 1)
        .map(|t| t * t % 8)
        .collect();
    let all: Vec<u32> = (0..8u32).map(|t| t * t % 8).collect();
    let even_ok = (0..8u32)
        .filter(|t| t % 2 == 0)
        .all(|t| [0, 4].contains(&(t * t % 8)));
    odd.iter().all(|&s| s == 1) && !all.contains(&5) && even_ok
}

/// A residue mod `2^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAdicApprox {
    pub residue: Integer,
    pub modulus_exponent: u32,
}

/// The two embeddings `K -> Q_2`, by the image of `sqrt 17`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoAdicBranch {
    /// `sqrt 17 = 9 (mod 32)`
    Canonical,
    /// `sqrt 17 = 23 (mod 32)`
    Conjugate,
}

/// `alpha mod 2^k` where `alpha` is the 2-adic root of 17 with `alpha = 9 (mod 32)`.
///
/// Solutions of `x^2 = 17 (mod 2^k)` are `+-alpha` and `+-alpha + 2^(k-1)`, so the
/// lift is carried to `2^(k+1)` and then reduced, which pins down `alpha` itself.
fn two_adic_alpha(k: u32) -> Integer {
    let mut x = Integer::from(9);
    let mut j = 6; // 9^2 = 81 = 17 (mod 64)
    while j < k + 1 {
        let m = Integer::from(1) << (j + 1);
        let diff = Integer::from(x.square_ref()) - 17u32;
        if !diff.is_divisible(&m) {
            x += Integer::from(1) << (j - 1);
        }
        j += 1;
    }
    x.keep_bits(k)
}

/// Both branches of `sqrt 17` mod `2^k`, canonical branch first.
pub fn hensel_sqrt17(k: u32) -> Result<[TwoAdicApprox; 2]> {
    if k < 5 {
        return Err(Error::Parse(format!("2-adic precision {k} < 5")));
    }
    let alpha = two_adic_alpha(k);
    let minus = (Integer::from(1) << k) - &alpha;
    Ok([
        TwoAdicApprox {
            residue: alpha,
            modulus_exponent: k,
        },
        TwoAdicApprox {
            residue: minus,
            modulus_exponent: k,
        },
    ])
}

fn v_p(n: &Integer, p: u32) -> i64 {
    let mut n = n.clone();
    let mut v = 0;
    while n != 0 && n.is_divisible_u(p) {
        n.div_exact_u_mut(p);
        v += 1;
    }
    v
}

fn v_p_rational(q: &Rational, p: u32) -> i64 {
    v_p(q.numer(), p) - v_p(q.denom(), p)
}

/// `ord_17(x) = ord_17(N x)/2`, a half-integer since 17 ramifies.
pub fn ord17(x: &QF17) -> Result<Rational> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::from((v_p_rational(&x.norm(), 17), 2)))
}

/// `ord_2` through the embedding `sqrt 17 -> +-alpha`, raising the precision
/// until the residue is nonzero.
pub fn ord2(x: &QF17, branch: TwoAdicBranch) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let d = Integer::from(x.r.denom().lcm_ref(x.s.denom()));
    let big_r = x.r.numer() * Integer::from(d.div_exact_ref(x.r.denom()));
    let big_s = x.s.numer() * Integer::from(d.div_exact_ref(x.s.denom()));
    let mut k = 32;
    loop {
        let [plus, minus] = hensel_sqrt17(k)?;
        let root = match branch {
            TwoAdicBranch::Canonical => plus.residue,
            TwoAdicBranch::Conjugate => minus.residue,
        };
        let value = (&big_r + Integer::from(&big_s * &root)).keep_bits(k);
        if value != 0 {
            return Ok(value.find_one(0).expect("nonzero") as i64 - v_p(&d, 2));
        }
        k *= 2;
    }
}
