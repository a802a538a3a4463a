//! Integer machinery shared by the field constructors: modular arithmetic,
//! deterministic primality testing, factorization of group orders, and raw
//! dense polynomial arithmetic over F_p on plain coefficient slices.
//!
//! Everything here is `pub(crate)`; the public face of the crate works in
//! terms of [`crate::field::FieldDescriptor`] and friends.

pub(crate) fn mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, modulus);
        }
        base = mulmod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller-Rabin for u64 (the first twelve primes as witnesses
/// cover the full 64-bit range).
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Distinct prime factors of `n`, ascending.
pub(crate) fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
    }
    let mut p = 7u64;
    while p * p <= n && p < 100_000 {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 2;
    }
    // Whatever survives trial division is prime or a product of large primes.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            if !out.contains(&m) {
                out.push(m);
            }
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p, coefficients lowest-degree first, always
// trimmed (no trailing zeros; the zero polynomial is the empty vec).
// ---------------------------------------------------------------------------

pub(crate) fn ptrim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn pdeg(v: &[u64]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub(crate) fn padd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    ptrim(out)
}

pub(crate) fn psub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    ptrim(out)
}

pub(crate) fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    ptrim(out)
}

pub(crate) fn invmod_prime(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Quotient and remainder of `a / b` over F_p. Panics on a zero divisor;
/// callers validate.
pub(crate) fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quot = vec![0u64; a.len() - b.len() + 1];
    let lead_inv = invmod_prime(*b.last().unwrap(), p);
    for i in (0..quot.len()).rev() {
        let coeff = mulmod(rem[i + b.len() - 1], lead_inv, p);
        if coeff == 0 {
            continue;
        }
        quot[i] = coeff;
        for (j, &bc) in b.iter().enumerate() {
            let idx = i + j;
            rem[idx] = (rem[idx] + p - mulmod(coeff, bc, p)) % p;
        }
    }
    (ptrim(quot), ptrim(rem))
}

pub(crate) fn pmod(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    pdivrem(a, f, p).1
}

pub(crate) fn pmulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    pmod(&pmul(a, b, p), f, p)
}

pub(crate) fn ppowmod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = pmod(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = pmulmod(&acc, &base, f, p);
        }
        base = pmulmod(&base, &base, f, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = pmod(&a, &b, p);
        a = b;
        b = r;
    }
    // Normalize monic so degree comparisons are canonical.
    if let Some(&lead) = a.last() {
        let inv = invmod_prime(lead, p);
        for c in &mut a {
            *c = mulmod(*c, inv, p);
        }
    }
    a
}

/// Monic degree-m polynomial x^m + (base-p digits of `v` as low coefficients).
pub(crate) fn candidate_modulus(v: u64, m: u32, p: u64) -> Vec<u64> {
    let mut coeffs = vec![0u64; m as usize + 1];
    let mut v = v;
    for c in coeffs.iter_mut().take(m as usize) {
        *c = v % p;
        v /= p;
    }
    coeffs[m as usize] = 1;
    coeffs
}

/// Irreducibility over F_p via the Frobenius criterion: f (monic, deg m) is
/// irreducible iff x^(p^m) = x mod f and gcd(x^(p^(m/r)) - x, f) = 1 for
/// every prime r dividing m.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = pdeg(f).unwrap();
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob = Vec::with_capacity(m + 1);
    frob.push(x.clone());
    for _ in 0..m {
        let next = ppowmod(frob.last().unwrap(), p, f, p);
        frob.push(next);
    }
    if frob[m] != x {
        return false;
    }
    for r in distinct_prime_factors(m as u64) {
        let t = psub(&frob[m / r as usize], &x, p);
        let g = pgcd(&t, f, p);
        if pdeg(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_basics() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(Into::<u64>::into(2u32.pow(31) - 1)));
        assert!(!is_prime(1));
        assert!(!is_prime(242));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn factors_of_group_orders() {
        assert_eq!(distinct_prime_factors(242), vec![2, 11]);
        assert_eq!(distinct_prime_factors(3124), vec![2, 11, 71]);
        assert_eq!(distinct_prime_factors(1), Vec::<u64>::new());
        // 3355443200000000 style composites with a large prime tail
        assert_eq!(distinct_prime_factors(2 * 1_000_000_007), vec![2, 1_000_000_007]);
    }

    #[test]
    fn poly_divrem_identity() {
        let p = 3;
        let a = vec![2, 0, 0, 1, 1]; // x^4 + x^3 + 2
        let b = vec![1, 1]; // x + 1
        let (q, r) = pdivrem(&a, &b, p);
        let back = padd(&pmul(&q, &b, p), &r, p);
        assert_eq!(back, a);
    }

    #[test]
    fn irreducibility_small_cases() {
        // x^2 + 1 over F_3 is irreducible; x^2 over F_3 is not.
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[0, 0, 1], 3));
        // x^2 + 1 over F_5 splits (2^2 = -1).
        assert!(!is_irreducible(&[1, 0, 1], 5));
    }
}
