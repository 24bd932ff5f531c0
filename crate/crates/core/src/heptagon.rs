//! Exact root-of-unity identities: the heptagon triangle and the search for
//! triangles on vertices of a regular polygon.
//!
//! For `x = e^{i alpha}`, `y = e^{i beta}` the Sharygin condition becomes
//! `1 + x + y + x^2 y^3 + x^3 y^2 + x^3 y^3 = 0` (the dropped factor `xy - 1`
//! cannot vanish when `alpha + beta < pi/2`). With `x = zeta^m`, `y = zeta^n`,
//! `zeta = e^{i pi / N}`, this is a polynomial identity at a primitive `2N`-th root
//! of unity, decided exactly by divisibility by `Phi_{2N}`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;
use rug::{Float, Integer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{pi_fraction, NumericConfig};
use crate::poly::IntPoly;
use crate::primes::divisors;

/// Threshold below which the numeric prefilter hands a triple to the exact test.
pub const PREFILTER_THRESHOLD: f64 = 1e-10;

fn cache() -> &'static RwLock<HashMap<usize, Arc<IntPoly>>> {
    static C: OnceLock<RwLock<HashMap<usize, Arc<IntPoly>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `Phi_n`, by dividing `t^n - 1` by `Phi_d` for the proper divisors `d` of `n`. Memoized.
pub fn cyclotomic_polynomial(n: usize) -> Arc<IntPoly> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = IntPoly::x_pow_minus_one(n);
    for d in divisors(&Integer::from(n)) {
        let d = d.to_usize().unwrap();
        if d < n {
            p = p
                .div_exact(&cyclotomic_polynomial(d))
                .expect("Phi_d divides t^n - 1");
        }
    }
    let p = Arc::new(p);
    cache().write().unwrap().insert(n, p.clone());
    p
}

/// A polynomial in `zeta_n` reduced modulo `Phi_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicElement {
    n: usize,
    coeffs: Vec<Integer>,
}

impl CyclotomicElement {
    pub fn from_poly(n: usize, p: &IntPoly) -> Self {
        let phi = cyclotomic_polynomial(n);
        let (_, r) = p.div_rem(&phi).expect("Phi_n is monic");
        let deg = phi.degree().unwrap();
        let mut coeffs: Vec<Integer> = r.coeffs().to_vec();
        coeffs.resize(deg, Integer::new());
        Self { n, coeffs }
    }

    /// `zeta_n^k`
    pub fn zeta_pow(n: usize, k: usize) -> Self {
        Self::from_poly(n, &IntPoly::monomial(k % n))
    }

    pub fn constant(n: usize, c: i64) -> Self {
        Self::from_poly(n, &IntPoly::constant(c))
    }

    pub fn conductor(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    fn as_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_poly(self.n, &(&self.as_poly() + &o.as_poly()))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_poly(self.n, &(&self.as_poly() - &o.as_poly()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_poly(self.n, &(&self.as_poly() * &o.as_poly()))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_poly(self.n, &self.as_poly().scale(&Integer::from(k)))
    }
}

/// Positivity of the real and imaginary parts of `x`, `y` and `xy`, strictly.
pub fn check_constraints(big_n: u32, m: u32, n: u32) -> Result<()> {
    if m >= 1 && n >= 1 && 2 * m < big_n && 2 * n < big_n && 2 * (m + n) < big_n {
        Ok(())
    } else {
        Err(Error::SearchConstraint(format!(
            "(N, m, n) = ({big_n}, {m}, {n}) needs 1 <= m, n and m + n < N/2"
        )))
    }
}

/// The six exponents of `1 + x + y + x^2y^3 + x^3y^2 + x^3y^3` at `x = t^m`, `y = t^n`.
fn exponents(m: u32, n: u32) -> [u32; 6] {
    [0, m, n, 2 * m + 3 * n, 3 * m + 2 * n, 3 * m + 3 * n]
}

/// Coefficients of the expression modulo `t^N + 1`.
fn reduced_expression(big_n: u32, m: u32, n: u32) -> Vec<i64> {
    let mut v = vec![0i64; big_n as usize];
    for e in exponents(m, n) {
        let e = e % (2 * big_n);
        if e < big_n {
            v[e as usize] += 1;
        } else {
            v[(e - big_n) as usize] -= 1;
        }
    }
    v
}

/// Remainder mod a monic polynomial in `i64`; `None` on overflow.
fn is_divisible_i64(mut a: Vec<i64>, phi: &[i64]) -> Option<bool> {
    let d = phi.len() - 1;
    while a.len() > d {
        let lead = a.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let off = a.len() - d;
        for (i, c) in phi[..d].iter().enumerate() {
            a[off + i] = a[off + i].checked_sub(lead.checked_mul(*c)?)?;
        }
    }
    Some(a.iter().all(|&c| c == 0))
}

/// Exact test: does `Phi_{2N}` divide the expression reduced mod `t^N + 1`?
pub fn expression_is_zero(big_n: u32, m: u32, n: u32) -> Result<bool> {
    check_constraints(big_n, m, n)?;
    let reduced = reduced_expression(big_n, m, n);
    let phi = cyclotomic_polynomial(2 * big_n as usize);
    let small: Option<Vec<i64>> = phi.coeffs().iter().map(|c| c.to_i64()).collect();
    if let Some(fast) = small.and_then(|phi64| is_divisible_i64(reduced.clone(), &phi64)) {
        return Ok(fast);
    }
    let p = IntPoly::new(reduced.into_iter().map(Integer::from).collect());
    Ok(p.div_exact(&phi).is_some())
}

/// `|P(zeta_{2N})|` at the configured precision.
pub fn expression_abs(cfg: &NumericConfig, big_n: u32, m: u32, n: u32) -> Float {
    let roots = RootTable::new(cfg, big_n);
    roots.abs_expression(m, n)
}

/// `cos` and `sin` of `j pi / N` for `j < 2N`.
struct RootTable {
    cos: Vec<Float>,
    sin: Vec<Float>,
    bits: u32,
}

impl RootTable {
    fn new(cfg: &NumericConfig, big_n: u32) -> Self {
        let (cos, sin) = (0..2 * big_n as i64)
            .map(|j| {
                let a = pi_fraction(cfg, j, big_n as i64);
                let (s, c) = a.sin_cos(Float::new(cfg.bits));
                (c, s)
            })
            .unzip();
        Self {
            cos,
            sin,
            bits: cfg.bits,
        }
    }

    fn abs_expression(&self, m: u32, n: u32) -> Float {
        let period = self.cos.len() as u32;
        let mut re = Float::new(self.bits);
        let mut im = Float::new(self.bits);
        for e in exponents(m, n) {
            let j = (e % period) as usize;
            re += &self.cos[j];
            im += &self.sin[j];
        }
        (re.square() + im.square()).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SearchHit {
    #[serde(rename = "N")]
    pub big_n: u32,
    pub m: u32,
    pub n: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Exact test on every triple.
    Exact,
    /// Numeric prefilter, exact test on near-zeros.
    Numeric,
}

/// All `(N, m, n)` with `3 <= N <= n_max` within the constraints whose expression vanishes.
pub fn search(n_max: u32, mode: SearchMode, cfg: &NumericConfig) -> Result<Vec<SearchHit>> {
    if n_max < 3 {
        return Err(Error::SearchConstraint(format!("NMax = {n_max} < 3")));
    }
    let per_n: Vec<Vec<SearchHit>> = (3..=n_max)
        .into_par_iter()
        .map(|big_n| search_one(big_n, mode, cfg))
        .collect::<Result<_>>()?;
    let mut hits: Vec<SearchHit> = per_n.into_iter().flatten().collect();
    hits.sort();
    Ok(hits)
}

fn search_one(big_n: u32, mode: SearchMode, cfg: &NumericConfig) -> Result<Vec<SearchHit>> {
    let table = (mode == SearchMode::Numeric).then(|| RootTable::new(cfg, big_n));
    let mut hits = Vec::new();
    for m in 1..big_n {
        for n in 1..big_n {
            if 2 * (m + n) >= big_n {
                break;
            }
            if let Some(t) = &table {
                if t.abs_expression(m, n) >= PREFILTER_THRESHOLD {
                    continue;
                }
            }
            if expression_is_zero(big_n, m, n)? {
                hits.push(SearchHit { big_n, m, n });
            }
        }
    }
    Ok(hits)
}

/// `z = zeta_14 + zeta_14^{-1}` satisfies `z^3 - z^2 - 2z + 1 = 0`, which has no rational root.
pub fn cos7_minpoly_check() -> bool {
    let z = CyclotomicElement::zeta_pow(14, 1).add(&CyclotomicElement::zeta_pow(14, 13));
    let z2 = z.mul(&z);
    let z3 = z2.mul(&z);
    let value = z3
        .sub(&z2)
        .sub(&z.scale(2))
        .add(&CyclotomicElement::constant(14, 1));
    let poly = IntPoly::from_i64(&[1, -2, -1, 1]);
    value.is_zero() && poly.rational_roots().is_empty()
}
