//! Small integer helpers used throughout the crate.

/// Trial-division primality test; inputs are tiny primes in practice.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `base^exp`, returning `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// `base^exp` for values known to fit.
pub fn pow(base: u64, exp: u32) -> u64 {
    checked_pow(base, exp).expect("integer power overflow")
}

/// p-adic valuation of a nonzero integer.
pub fn val_p(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Multiplicative inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod_p(a: u8, p: u8) -> u8 {
    let (p, a) = (p as u32, a as u32 % p as u32);
    debug_assert!(a != 0);
    let mut r = 1u32;
    let mut b = a;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r as u8
}

/// Reduce a signed integer into `0..m`.
pub fn modulo(n: i64, m: u64) -> u64 {
    n.rem_euclid(m as i64) as u64
}

/// Smallest `l` with `p^l >= i` (for `i >= 1`).
pub fn ceil_log(i: u64, p: u64) -> u32 {
    let mut l = 0;
    let mut q = 1u64;
    while q < i {
        q *= p;
        l += 1;
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn inverses() {
        for p in [2u8, 3, 5, 7] {
            for a in 1..p {
                assert_eq!(a as u32 * inv_mod_p(a, p) as u32 % p as u32, 1);
            }
        }
    }

    #[test]
    fn logs() {
        assert_eq!(ceil_log(1, 3), 0);
        assert_eq!(ceil_log(3, 3), 1);
        assert_eq!(ceil_log(4, 3), 2);
        assert_eq!(val_p(54, 3), 3);
    }
}
