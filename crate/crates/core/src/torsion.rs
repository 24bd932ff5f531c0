//! Torsion by Nagell–Lutz with the Mazur bound, the duplication growth
//! certificate for points of infinite order, and point counts mod p.

use std::io::Write;

use rayon::prelude::*;
use rug::{Integer, Rational};

use crate::curve::{WeierstrassCurve, WeierstrassPoint};
use crate::error::{Error, Result};
use crate::primes::{factor, is_prime_u64, pow_mod, primes_up_to};

/// Largest order of a rational torsion point (Mazur).
pub const MAZUR_BOUND: u32 = 12;

/// Discriminant whose divisors bound the `y` of a torsion point.
pub const NAGELL_LUTZ_BOUND: u64 = 2_506_752;

/// Primes of bad reduction.
pub const BAD_PRIMES: [u64; 3] = [2, 3, 17];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCandidate {
    pub point: WeierstrassPoint,
    /// `y`, which is zero or divides the discriminant.
    pub y_divisor: Integer,
    /// Least `n <= 12` with `n P = O`, if any.
    pub confirmed_order: Option<u32>,
}

/// Least `n` in `1..=bound` with `n p = O`.
pub fn order_up_to(curve: &WeierstrassCurve, p: &WeierstrassPoint, bound: u32) -> Option<u32> {
    let mut acc = p.clone();
    for n in 1..=bound {
        if acc.is_infinity() {
            return Some(n);
        }
        acc = curve.add(&acc, p);
    }
    None
}

/// Integer points with `y = 0` or `y | 2506752`, each tested for order `<= 12`.
pub fn torsion_candidates() -> Vec<TorsionCandidate> {
    let curve = WeierstrassCurve::sharygin();
    let bound = Integer::from(NAGELL_LUTZ_BOUND);
    let bound_factors = factor(&bound);
    let mut ys = vec![Integer::new()];
    for d in crate::primes::divisors_from_factors(&bound_factors) {
        ys.push(Integer::from(-&d));
        ys.push(d);
    }
    ys.sort();
    let mut out: Vec<TorsionCandidate> = ys
        .par_iter()
        .flat_map_iter(|y| {
            integer_x_for_y(&curve, y).into_iter().map(|x| {
                let point = WeierstrassPoint::affine(x, y.clone());
                TorsionCandidate {
                    confirmed_order: order_up_to(&curve, &point, MAZUR_BOUND),
                    point,
                    y_divisor: y.clone(),
                }
            })
        })
        .collect();
    out.sort_by(|a, b| {
        (a.point.x(), a.point.y())
            .partial_cmp(&(b.point.x(), b.point.y()))
            .unwrap()
    });
    out
}

/// Integer roots of `x^3 + 5x^2 - 32x - y^2`, from the divisors of `y^2`.
fn integer_x_for_y(curve: &WeierstrassCurve, y: &Integer) -> Vec<Integer> {
    let y2 = Rational::from(y.square_ref());
    let mut cands: Vec<Integer> = if *y == 0 {
        // x (x^2 + 5x - 32): x = 0, or a root of the quadratic
        let mut v = vec![Integer::new()];
        let disc = Integer::from(&curve.a2 * &curve.a2) - Integer::from(&curve.a4 * 4u32);
        if disc >= 0 && disc.is_perfect_square() {
            let r = disc.sqrt();
            for s in [
                Integer::from(&r - &curve.a2),
                -Integer::from(&r + &curve.a2),
            ] {
                if s.is_even() {
                    v.push(s / 2u32);
                }
            }
        }
        v
    } else {
        let factors: Vec<(Integer, u32)> = factor(y).into_iter().map(|(p, e)| (p, 2 * e)).collect();
        crate::primes::divisors_from_factors(&factors)
            .into_iter()
            .flat_map(|d| [Integer::from(-&d), d])
            .collect()
    };
    cands.retain(|x| curve.rhs(&Rational::from(x)) == y2);
    cands.sort();
    cands.dedup();
    cands
}

/// Candidates of order at most 12, with the identity first.
pub fn torsion_subgroup() -> Vec<WeierstrassPoint> {
    let mut out = vec![WeierstrassPoint::Infinity];
    out.extend(
        torsion_candidates()
            .into_iter()
            .filter(|c| c.confirmed_order.is_some())
            .map(|c| c.point),
    );
    out
}

/// `x(2P) = (x^2 + 32)^2 / (4x(x^2 + 5x - 32))`.
pub fn duplication_x(x0: &Rational) -> Result<Rational> {
    let x2 = Rational::from(x0.square_ref());
    let den = Rational::from(x0 * 4u32) * ((&x2 + Rational::from(x0 * 5u32)) - 32u32);
    if den == 0 {
        return Err(Error::TwoTorsionDuplication(x0.to_string()));
    }
    Ok((x2 + 32u32).square() / den)
}

/// Successive numerators `p_1 < p_2 < ...` of `x(2^k P)`, all odd and positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthCertificate {
    pub start: WeierstrassPoint,
    pub numerators: Vec<Integer>,
    pub steps: usize,
}

/// Removes the common factors of 3 and 17.
///
/// With `p` odd and `gcd(p, q) = 1`, a prime dividing both `(p^2 + 32q^2)^2`
/// and `4pq(p^2 + 5pq - 32q^2)` divides `5p - 64q` and `4896 = 2^5 3^2 17`,
/// so it is 3 or 17. This avoids a full gcd of multi-million-digit integers.
fn strip_common(num: &mut Integer, den: &mut Integer) {
    for l in [3u32, 17] {
        while num.is_divisible_u(l) && den.is_divisible_u(l) {
            num.div_exact_u_mut(l);
            den.div_exact_u_mut(l);
        }
    }
}

/// Duplicates `steps` times from `start`, recording each new x-numerator and
/// checking it is odd, positive and larger than the last.
pub fn growth_certificate(start: &WeierstrassPoint, steps: usize) -> Result<GrowthCertificate> {
    let x0 = start
        .x()
        .ok_or_else(|| Error::GrowthPrecondition("start point is the identity".into()))?;
    let mut p = x0.numer().clone();
    let mut q = x0.denom().clone();
    if p <= 0 || p.is_even() {
        return Err(Error::GrowthPrecondition(format!(
            "numerator {p} of x = {x0} is not odd and positive"
        )));
    }
    let mut numerators = Vec::with_capacity(steps);
    for step in 1..=steps {
        let p2 = Integer::from(p.square_ref());
        let q2 = Integer::from(q.square_ref());
        let pq = Integer::from(&p * &q);
        let mut num = (&p2 + Integer::from(&q2 * 32u32)).square();
        let mut den = pq.clone() * 4u32 * (p2 + pq * 5u32 - q2 * 32u32);
        if den < 0 {
            num = -num;
            den = -den;
        }
        strip_common(&mut num, &mut den);
        if num <= p || num.is_even() || den == 0 {
            return Err(Error::GrowthBreach { step });
        }
        p = num;
        q = den;
        numerators.push(p.clone());
    }
    Ok(GrowthCertificate {
        start: start.clone(),
        numerators,
        steps,
    })
}

/// `N_p` affine points on `y^2 = x^3 + 5x^2 - 32x` over `F_p`, and the trace
/// `a_p = 1 + p - #E(F_p) = p - N_p` (the group also contains `O`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionCount {
    pub p: u64,
    pub np: u64,
    pub ap: i64,
}

impl ReductionCount {
    /// `#E(F_p)`, counting the point at infinity.
    pub fn group_order(&self) -> u64 {
        self.np + 1
    }

    /// Hasse: `a_p^2 <= 4p`.
    pub fn within_hasse(&self) -> bool {
        (self.ap as i128).pow(2) <= 4 * self.p as i128
    }
}

pub fn count_points_mod_p(p: u64) -> Result<ReductionCount> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if BAD_PRIMES.contains(&p) {
        return Err(Error::BadPrime(p));
    }
    let n = p as usize;
    let mut roots = vec![0u32; n];
    for y in 0..p {
        roots[(y * y % p) as usize] += 1;
    }
    let a2 = 5 % p;
    let a4 = p - 32 % p;
    let mut np = 0u64;
    for x in 0..p {
        let rhs = ((x * x % p + a2 * x % p + a4) % p) * x % p;
        np += roots[rhs as usize] as u64;
    }
    Ok(ReductionCount {
        p,
        np,
        ap: p as i64 - np as i64,
    })
}

#[derive(Clone, Debug)]
pub struct HasseReport {
    pub counts: Vec<ReductionCount>,
    pub violations: Vec<u64>,
}

impl HasseReport {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["p", "Np", "ap"])?;
        for c in &self.counts {
            out.write_record([c.p.to_string(), c.np.to_string(), c.ap.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Counts every good prime `p <= p_max` in parallel and collects Hasse violations.
pub fn hasse_scan(p_max: u64) -> HasseReport {
    let primes: Vec<u64> = primes_up_to(p_max)
        .into_iter()
        .filter(|p| !BAD_PRIMES.contains(p))
        .collect();
    let counts: Vec<ReductionCount> = primes
        .par_iter()
        .map(|&p| count_points_mod_p(p).expect("good prime"))
        .collect();
    let violations = counts
        .iter()
        .filter(|c| !c.within_hasse())
        .map(|c| c.p)
        .collect();
    HasseReport { counts, violations }
}

/// A point of the reduction mod a good prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModPoint {
    Infinity,
    Affine(u64, u64),
}

fn reduce_rational(r: &Rational, p: u64) -> Option<u64> {
    let den = r.denom().mod_u(p as u32) as u64;
    if den == 0 {
        return None;
    }
    let num = r.numer().mod_u(p as u32) as u64;
    Some(num * pow_mod(den, p - 2, p) % p)
}

/// Reduction mod `p`; points whose coordinates have `p` in the denominator
/// reduce to the identity.
pub fn reduce_point(pt: &WeierstrassPoint, p: u64) -> ModPoint {
    match pt {
        WeierstrassPoint::Infinity => ModPoint::Infinity,
        WeierstrassPoint::Affine { x, y } => match (reduce_rational(x, p), reduce_rational(y, p)) {
            (Some(x), Some(y)) => ModPoint::Affine(x, y),
            _ => ModPoint::Infinity,
        },
    }
}

pub fn on_curve_mod_p(pt: ModPoint, p: u64) -> bool {
    match pt {
        ModPoint::Infinity => true,
        ModPoint::Affine(x, y) => {
            let (x, y, m) = (x as u128, y as u128, p as u128);
            let rhs = (x * x % m * x + 5 * x % m * x + (m - 32 % m) * x) % m;
            y * y % m == rhs
        }
    }
}

/// Chord-tangent law over `F_p` for the Sharygin curve.
pub fn add_mod_p(a: ModPoint, b: ModPoint, p: u64) -> ModPoint {
    let (x1, y1, x2, y2) = match (a, b) {
        (ModPoint::Infinity, _) => return b,
        (_, ModPoint::Infinity) => return a,
        (ModPoint::Affine(x1, y1), ModPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    let m = p as u128;
    let (x1w, y1w, x2w, y2w) = (x1 as u128, y1 as u128, x2 as u128, y2 as u128);
    let lambda = if x1 == x2 {
        if (y1 + y2) % p == 0 {
            return ModPoint::Infinity;
        }
        let num = (3 * x1w % m * x1w + 10 * x1w + (m - 32 % m)) % m;
        num * pow_mod(2 * y1 % p, p - 2, p) as u128 % m
    } else {
        let num = (y2w + m - y1w) % m;
        let den = ((x2w + m - x1w) % m) as u64;
        num * pow_mod(den, p - 2, p) as u128 % m
    };
    let x3 = (lambda * lambda % m + 3 * m - 5 % m - x1w - x2w) % m;
    let y3 = (lambda * ((x1w + m - x3) % m) % m + m - y1w) % m;
    ModPoint::Affine(x3 as u64, y3 as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::point_a;

    #[test]
    fn torsion_is_z2() {
        assert_eq!(
            torsion_subgroup(),
            vec![WeierstrassPoint::Infinity, WeierstrassPoint::affine(0, 0)]
        );
    }

    #[test]
    fn two_a_is_a_rejected_candidate() {
        let cands = torsion_candidates();
        let c = cands
            .iter()
            .find(|c| c.point == WeierstrassPoint::affine(4, 4))
            .expect("(4,4) is a Nagell-Lutz candidate");
        assert_eq!(c.confirmed_order, None);
        let y0: Vec<_> = cands.iter().filter(|c| c.y_divisor == 0).collect();
        assert_eq!(y0.len(), 1);
        assert_eq!(y0[0].point, WeierstrassPoint::affine(0, 0));
        assert_eq!(y0[0].confirmed_order, Some(2));
    }

    #[test]
    fn duplication_examples() {
        let e = WeierstrassCurve::sharygin();
        assert_eq!(duplication_x(&Rational::from(4)).unwrap(), 36);
        let x12 = duplication_x(&Rational::from((121, 16))).unwrap();
        assert_eq!(Some(&x12), e.scalar_mul(12, &point_a()).x());
        assert!(matches!(
            duplication_x(&Rational::new()),
            Err(Error::TwoTorsionDuplication(_))
        ));
    }

    #[test]
    fn growth_from_six_a() {
        let e = WeierstrassCurve::sharygin();
        let six = e.scalar_mul(6, &point_a());
        let cert = growth_certificate(&six, 4).unwrap();
        assert_eq!(cert.numerators.len(), 4);
        for k in 0..3 {
            let pt = e.scalar_mul(6 << (k + 1), &point_a());
            assert_eq!(&cert.numerators[k], pt.x().unwrap().numer());
        }
        let two = e.scalar_mul(2, &point_a());
        assert!(matches!(
            growth_certificate(&two, 3),
            Err(Error::GrowthPrecondition(_))
        ));
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_points_mod_p(5).unwrap().np, 9);
        assert_eq!(count_points_mod_p(5).unwrap().ap, -4);
        assert_eq!(count_points_mod_p(7).unwrap().np, 9);
        assert_eq!(count_points_mod_p(7).unwrap().ap, -2);
    }

    #[test]
    fn affine_count_alone_breaks_the_bound() {
        // 1 + p - N_p with affine N_p overshoots 2 sqrt(p) here; the group order does not
        let c = count_points_mod_p(2441).unwrap();
        assert_eq!(c.np, 2343);
        assert!(99i64.pow(2) > 4 * 2441);
        assert!(c.within_hasse());
        assert!(matches!(count_points_mod_p(3), Err(Error::BadPrime(3))));
        assert!(matches!(count_points_mod_p(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn counts_match_brute_force() {
        for p in [5u64, 7, 11, 13, 19, 23, 29, 31] {
            let brute = (0..p)
                .flat_map(|x| (0..p).map(move |y| (x, y)))
                .filter(|&(x, y)| on_curve_mod_p(ModPoint::Affine(x, y), p))
                .count() as u64;
            assert_eq!(count_points_mod_p(p).unwrap().np, brute, "p = {p}");
        }
    }

    #[test]
    fn reduction_of_sums() {
        let e = WeierstrassCurve::sharygin();
        let a = point_a();
        let two = e.double(&a);
        let three = e.add(&two, &a);
        for p in [5u64, 7, 11, 13] {
            let lhs = reduce_point(&three, p);
            let rhs = add_mod_p(reduce_point(&two, p), reduce_point(&a, p), p);
            assert_eq!(lhs, rhs, "p = {p}");
        }
    }
}
