//! Small-number helpers: sieving, trial-division factoring, divisor lists.

use rug::Integer;

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division. Only meant for numbers whose
/// cofactor after small primes is itself small or prime; panics never, but may be slow.
pub fn factor(n: &Integer) -> Vec<(Integer, u32)> {
    let mut n = Integer::from(n.abs_ref());
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut d = Integer::from(2);
    while Integer::from(&d * &d) <= n {
        let mut e = 0;
        while n.is_divisible(&d) {
            n.div_exact_mut(&d);
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `|n|` in increasing order. `divisors(0)` is empty.
pub fn divisors(n: &Integer) -> Vec<Integer> {
    if *n == 0 {
        return Vec::new();
    }
    divisors_from_factors(&factor(n))
}

/// Divisors of `prod p^e`, increasing.
pub fn divisors_from_factors(factors: &[(Integer, u32)]) -> Vec<Integer> {
    let mut divs = vec![Integer::from(1)];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = Integer::from(1);
            for _ in 0..=*e {
                next.push(Integer::from(d * &pk));
                pk *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// `base^exp mod m` for `m < 2^63`.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}
