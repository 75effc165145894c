//! Scalar number theory: gcd, modular arithmetic, trial-division
//! factorization, p-adic valuations, and constructive CRT.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::Error;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended Euclid on signed 128-bit values: returns `(g, x, y)` with
/// `a*x + b*y = g = gcd(a, b)`, `g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest `k` with `p^k | n`.
///
/// Rejects non-prime `p` and `n = 0`.
pub fn pot(p: u64, n: u64) -> Result<u32, Error> {
    if !is_prime(p) {
        return Err(Error::invalid(alloc::format!("pot: {p} is not prime")));
    }
    if n == 0 {
        return Err(Error::invalid("pot: n must be positive".to_string()));
    }
    let mut k = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    Ok(k)
}

/// Valuation without the primality check, for internal use on known primes.
pub(crate) fn pot_unchecked(p: u64, mut n: u64) -> u32 {
    let mut k = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// Prime factorization `n = ∏ p_i^{k_i}` with ascending `p_i`. `n >= 1`.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m % p == 0 {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

pub fn divisor_count(n: u64) -> u64 {
    factorize(n)
        .iter()
        .map(|&(_, k)| u64::from(k) + 1)
        .product()
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % modulus as u128) as u64;
        }
        base = ((base as u128 * base as u128) % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `m`, requiring `gcd(a, m) = 1`.
pub fn mul_order(a: u64, m: u64) -> u64 {
    debug_assert_eq!(gcd(a % m, m), 1);
    if m == 1 {
        return 1;
    }
    // The order divides phi(m); test divisors of phi in ascending order.
    let phi = euler_phi(m);
    let mut divisors: Vec<u64> = Vec::new();
    let mut d = 1;
    while d * d <= phi {
        if phi % d == 0 {
            divisors.push(d);
            divisors.push(phi / d);
        }
        d += 1;
    }
    divisors.sort_unstable();
    for d in divisors {
        if pow_mod(a, d, m) == 1 {
            return d;
        }
    }
    unreachable!("order must divide phi(m)")
}

/// Unique solution in `[0, ∏ m_i)` of the system `x ≡ r_i (mod m_i)`.
///
/// The moduli must be pairwise coprime (moduli equal to 1 are allowed
/// and contribute nothing).
pub fn crt_solve(congruences: &[(u64, u64)]) -> Result<u64, Error> {
    let mut modulus: u128 = 1;
    let mut solution: u128 = 0;
    for &(m, r) in congruences {
        if m == 0 {
            return Err(Error::invalid("crt: modulus must be positive".to_string()));
        }
        let r = u128::from(r % m);
        let m = u128::from(m);
        let (g, p, _) = ext_gcd(modulus as i128, m as i128);
        if g != 1 {
            return Err(Error::invalid(alloc::format!(
                "crt: moduli {modulus} and {m} share a factor {g}"
            )));
        }
        let combined = modulus.checked_mul(m).ok_or_else(|| {
            Error::invalid("crt: modulus product overflows u128".to_string())
        })?;
        // solution + modulus * t ≡ r (mod m) with t = (r - solution) * p.
        let diff = (r as i128 - (solution % m) as i128).rem_euclid(m as i128) as u128;
        let t = (diff * (p.rem_euclid(m as i128) as u128)) % m;
        solution = (solution + modulus * t) % combined;
        modulus = combined;
    }
    u64::try_from(solution)
        .map_err(|_| Error::invalid("crt: solution exceeds u64".to_string()))
}
