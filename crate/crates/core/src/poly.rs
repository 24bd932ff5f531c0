//! Small exact polynomial types: univariate over `Z` and trivariate over `Z`.
//!
//! These back the symbolic checks (Hessian, resultants, coordinate
//! substitutions) and the cyclotomic code. Nothing here is tuned for large
//! degrees.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Integer, Rational};

/// Dense univariate polynomial with integer coefficients, lowest degree first.
/// The zero polynomial has no coefficients; otherwise the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<Integer>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `t^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Integer::new(); n + 1];
        coeffs[n] = Integer::from(1);
        Self { coeffs }
    }

    /// `t^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.coeffs[0] -= 1;
        Self::new(p.coeffs)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn scale(&self, k: &Integer) -> Self {
        Self::new(self.coeffs.iter().map(|c| Integer::from(c * k)).collect())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= t;
            acc += c;
        }
        acc
    }

    pub fn eval_int(&self, t: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= t;
            acc += c;
        }
        acc
    }

    /// gcd of the coefficients (non-negative).
    pub fn content(&self) -> Integer {
        self.coeffs.iter().fold(Integer::new(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|l| *l < 0) {
            g = -g;
        }
        Self::new(
            self.coeffs
                .iter()
                .map(|c| Integer::from(c.div_exact_ref(&g)))
                .collect(),
        )
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Division with remainder. Requires the leading coefficient of `divisor` to be
    /// a unit (±1), or every intermediate quotient coefficient to be integral; returns
    /// `None` if an inexact step occurs.
    pub fn div_rem(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![Integer::new(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            if !rem[i].is_divisible(&lead) {
                return None;
            }
            let q = Integer::from(rem[i].div_exact_ref(&lead));
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= Integer::from(&q * dc);
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact division; `None` if `divisor` does not divide `self` over `Z`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    /// All rational roots, by the rational root theorem (leading and constant
    /// coefficient divisors). Zero is reported if the constant term vanishes.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut roots = Vec::new();
        let mut p = self.clone();
        while p.coeffs.first().is_some_and(|c| *c == 0) {
            p = Self::new(p.coeffs[1..].to_vec());
            if !roots.contains(&Rational::new()) {
                roots.push(Rational::new());
            }
        }
        if deg == 0 || p.degree() == Some(0) {
            return roots;
        }
        let nums = crate::primes::divisors(&p.coeffs[0].clone().abs());
        let dens = crate::primes::divisors(&p.leading().unwrap().clone().abs());
        for n in &nums {
            for d in &dens {
                for sign in [1, -1] {
                    let r = Rational::from((Integer::from(n * sign), d.clone()));
                    if p.eval(&r) == 0 && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Integer::from(a * b);
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| Integer::from(-c)).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let mag = Integer::from(c.abs_ref());
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag == 1) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag} t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag} t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Determinant of a square matrix over `Z[t]`, by cofactor expansion along the first row.
/// Fine for the 6x6 Sylvester matrices used here.
pub fn poly_det(m: &[Vec<IntPoly>]) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::constant(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = IntPoly::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<IntPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * &poly_det(&minor);
        acc = if col % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Resultant of two polynomials whose coefficients lie in `Z[t]`
/// (`f[i]` is the coefficient of `c^i`), via the Sylvester matrix.
pub fn resultant(f: &[IntPoly], g: &[IntPoly]) -> IntPoly {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![IntPoly::zero(); size];
        for (i, c) in f.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![IntPoly::zero(); size];
        for (i, c) in g.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    poly_det(&rows)
}

/// Sparse polynomial in three variables with integer coefficients.
/// Exponent vectors index the variables in order `[v0, v1, v2]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly3 {
    terms: BTreeMap<[u32; 3], Integer>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<Integer>) -> Self {
        Self::term(c, [0, 0, 0])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::term(1, e)
    }

    pub fn term(c: impl Into<Integer>, exps: [u32; 3]) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(coefficient, [e0, e1, e2])` pairs.
    pub fn from_terms(terms: &[(i64, [u32; 3])]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &(c, e)| &acc + &Self::term(c, e))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Integer)> {
        self.terms.iter()
    }

    pub fn scale(&self, k: &Integer) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, Integer::from(c * k));
        }
        out
    }

    fn add_term(&mut self, e: [u32; 3], c: Integer) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_default();
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(1), |acc, _| &acc * self)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[var] -= 1;
            out.add_term(ne, Integer::from(c * e[var]));
        }
        out
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut acc = Rational::new();
        for (e, c) in &self.terms {
            let mut t = Rational::from(c);
            for (v, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= Rational::from(v.pow(k as i32));
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `subs[i]` for variable `i`.
    pub fn substitute(&self, subs: &[Poly3; 3]) -> Poly3 {
        let mut acc = Poly3::zero();
        for (e, c) in &self.terms {
            let mut t = Poly3::constant(c.clone());
            for (s, &k) in subs.iter().zip(e) {
                if k > 0 {
                    t = &t * &s.pow(k);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// If `self = k * other` for a rational `k`, returns `k`.
    pub fn ratio_to(&self, other: &Poly3) -> Option<Rational> {
        let (e, c) = other.terms.iter().next()?;
        let k = Rational::from((self.terms.get(e)?.clone(), c.clone()));
        let same_support = self.terms.len() == other.terms.len();
        let proportional = other.terms.iter().all(|(e, c)| {
            self.terms
                .get(e)
                .is_some_and(|s| *s == Rational::from(&k * c))
        });
        (same_support && proportional).then_some(k)
    }

    /// Sets `fixed` to 1 and views the result as a polynomial in `main` whose
    /// coefficients are univariate polynomials in `param`.
    /// Entry `i` of the result is the coefficient of `main^i`.
    pub fn coefficients_in(&self, main: usize, param: usize) -> Vec<IntPoly> {
        let deg = self.terms.keys().map(|e| e[main]).max().unwrap_or(0) as usize;
        let mut dense: Vec<BTreeMap<usize, Integer>> = vec![BTreeMap::new(); deg + 1];
        for (e, c) in &self.terms {
            *dense[e[main] as usize]
                .entry(e[param] as usize)
                .or_default() += c;
        }
        dense
            .into_iter()
            .map(|m| {
                let len = m.keys().max().map_or(0, |k| k + 1);
                let mut v = vec![Integer::new(); len];
                for (k, c) in m {
                    v[k] = c;
                }
                IntPoly::new(v)
            })
            .collect()
    }
}

impl Add for &Poly3 {
    type Output = Poly3;
    fn add(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly3 {
    type Output = Poly3;
    fn sub(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, Integer::from(-c));
        }
        out
    }
}

impl Mul for &Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.add_term(e, Integer::from(c1 * c2));
            }
        }
        out
    }
}

/// Determinant of a 3x3 matrix of trivariate polynomials.
pub fn det3(m: &[[Poly3; 3]; 3]) -> Poly3 {
    let minor = |r1: usize, c1: usize, r2: usize, c2: usize| {
        &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
    };
    let t0 = &m[0][0] * &minor(1, 1, 2, 2);
    let t1 = &m[0][1] * &minor(1, 0, 2, 2);
    let t2 = &m[0][2] * &minor(1, 0, 2, 1);
    &(&t0 - &t1) + &t2
}
