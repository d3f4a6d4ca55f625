//! Modular arithmetic on machine words: primality, fast exponentiation,
//! quadratic residues and square roots of -1 modulo a prime.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus accepted by the operations that take a prime `p`.
pub const MAX_MODULUS: u64 = (1 << 62) - 1;

/// Largest prime accepted by [`wilson_sqrt_minus_one_oracle`].
pub const WILSON_LIMIT: u64 = 100_000;

/// An element of `Z/mZ`, stored as its least nonnegative representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `value` modulo `modulus`.
    ///
    /// Panics if `modulus < 2`.
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Self {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// The additive inverse `modulus - value` (or 0).
    pub fn negated(self) -> Self {
        Self::new(self.modulus - self.value, self.modulus)
    }

    /// The smaller of `{self, -self}`.
    fn canonical_sign(self) -> Self {
        let neg = self.negated();
        if neg.value < self.value {
            neg
        } else {
            self
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_raw(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `base^exp mod modulus` by square-and-multiply with 128-bit products.
///
/// Panics if `modulus < 2`.
pub fn pow_mod(base: u64, exp: u64, modulus: u64) -> Residue {
    assert!(modulus >= 2, "modulus must be at least 2");
    Residue::new(pow_mod_raw(base, exp, modulus), modulus)
}

// The first twelve primes as Miller-Rabin witnesses decide primality for
// every n < 3.3e24, which covers all of u64.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test over the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n == w {
            return true;
        }
        if n.is_multiple_of(w) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod_raw(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n > 2 && is_prime(n)
}

/// Checks that `p` is an odd prime within the 62-bit bound.
pub fn ensure_odd_prime(p: u64) -> Result<()> {
    if p > MAX_MODULUS {
        return Err(Error::TooLarge {
            what: "p",
            value: p,
            bound: MAX_MODULUS,
        });
    }
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// Legendre symbol `(a | p)` via Euler's criterion. `p` must be an odd prime.
pub fn legendre(a: u64, p: u64) -> i8 {
    debug_assert!(p > 2 && is_prime(p));
    match pow_mod_raw(a, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// The least `n >= 2` that is not a square modulo `p`.
pub fn smallest_nonresidue(p: u64) -> Result<Residue> {
    ensure_odd_prime(p)?;
    // Terminates: half of the nonzero residues are non-squares.
    let n = (2..p).find(|&n| legendre(n, p) == -1).unwrap();
    Ok(Residue::new(n, p))
}

fn ensure_one_mod_four(p: u64) -> Result<()> {
    ensure_odd_prime(p)?;
    if p % 4 != 1 {
        return Err(Error::NotOneModFour(p));
    }
    Ok(())
}

/// A square root of -1 modulo a prime `p ≡ 1 (mod 4)`, computed as
/// `n^((p-1)/4)` for the smallest non-residue `n`. Returns the smaller of the
/// two roots.
pub fn sqrt_minus_one(p: u64) -> Result<Residue> {
    ensure_one_mod_four(p)?;
    let n = smallest_nonresidue(p)?;
    Ok(pow_mod(n.value(), (p - 1) / 4, p).canonical_sign())
}

/// `((p-1)/2)! mod p`, the square root of -1 given by Wilson's theorem.
///
/// Linear in `p`; only meant as an independent check of [`sqrt_minus_one`].
pub fn wilson_sqrt_minus_one_oracle(p: u64) -> Result<Residue> {
    ensure_one_mod_four(p)?;
    if p > WILSON_LIMIT {
        return Err(Error::TooLarge {
            what: "p",
            value: p,
            bound: WILSON_LIMIT,
        });
    }
    let fact = (2..=(p - 1) / 2).fold(1u64, |acc, k| mul_mod(acc, k, p));
    Ok(Residue::new(fact, p).canonical_sign())
}

/// Inverse of `a` modulo the prime `p`, or `None` when `p | a`.
pub fn inverse_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    (a != 0).then(|| pow_mod_raw(a, p - 2, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_small() {
        assert!(is_prime(2));
        assert!(is_prime(29));
        assert!(!is_prime(33));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..200_000u64 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn primality_large() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(!is_prime(u64::MAX));
        // strong pseudoprime to every base 2..=23
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(!is_prime(4_294_967_297)); // 641 * 6700417
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn pow_mod_examples() {
        assert_eq!(pow_mod(2, 3, 13).value(), 8);
        assert_eq!(pow_mod(5, 12, 13).value(), 1);
        assert_eq!(pow_mod(123, 0, 2).value(), 1);
        assert_eq!(pow_mod(0, 0, 7).value(), 1);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 13), -1);
        assert_eq!(legendre(0, 13), 0);
        assert_eq!(legendre(26, 13), 0);
        assert_eq!(legendre(4, 13), 1);
        // squares mod 13
        let squares: Vec<u64> = (1..13).filter(|&a| legendre(a, 13) == 1).collect();
        assert_eq!(squares, vec![1, 3, 4, 9, 10, 12]);
    }

    #[test]
    fn nonresidue_examples() {
        assert_eq!(smallest_nonresidue(13).unwrap().value(), 2);
        assert_eq!(smallest_nonresidue(17).unwrap().value(), 3);
        assert_eq!(smallest_nonresidue(3).unwrap().value(), 2);
        assert_eq!(smallest_nonresidue(9), Err(Error::NotOddPrime(9)));
        assert_eq!(smallest_nonresidue(2), Err(Error::NotOddPrime(2)));
    }

    #[test]
    fn sqrt_minus_one_examples() {
        assert_eq!(sqrt_minus_one(5).unwrap().value(), 2);
        assert_eq!(sqrt_minus_one(13).unwrap().value(), 5);
        assert_eq!(sqrt_minus_one(17).unwrap().value(), 4);
        assert_eq!(sqrt_minus_one(7), Err(Error::NotOneModFour(7)));
        assert_eq!(sqrt_minus_one(21), Err(Error::NotOddPrime(21)));
    }

    #[test]
    fn wilson_examples() {
        assert_eq!(wilson_sqrt_minus_one_oracle(5).unwrap().value(), 2);
        assert_eq!(wilson_sqrt_minus_one_oracle(13).unwrap().value(), 5);
        assert_eq!(wilson_sqrt_minus_one_oracle(29).unwrap().value(), 12);
        assert!(matches!(
            wilson_sqrt_minus_one_oracle(100_153),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn sqrt_minus_one_agrees_with_wilson() {
        for p in (5..10_000u64).filter(|&p| p % 4 == 1 && is_prime(p)) {
            let i = sqrt_minus_one(p).unwrap();
            assert_eq!(mul_mod(i.value(), i.value(), p), p - 1, "p = {p}");
            assert_eq!(i, wilson_sqrt_minus_one_oracle(p).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn fermat_little_theorem_sampled() {
        for p in (3..2_000u64).filter(|&p| is_prime(p)) {
            for g in [2, 3, p - 1, p / 2 + 1] {
                if g % p != 0 {
                    assert_eq!(pow_mod(g, p - 1, p).value(), 1);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn legendre_is_multiplicative(a in 0u64..1_000_000, b in 0u64..1_000_000, idx in 0usize..8) {
            let p = [3u64, 5, 13, 101, 997, 7919, 1_000_003, 2_147_483_647][idx];
            prop_assert_eq!(legendre(a * b % p, p), legendre(a, p) * legendre(b, p));
        }

        #[test]
        fn pow_mod_matches_repeated_multiplication(b in 0u64..u64::MAX, e in 0u64..64, m in 2u64..u64::MAX) {
            let naive = (0..e).fold(1 % m, |acc, _| mul_mod(acc, b % m, m));
            prop_assert_eq!(pow_mod(b, e, m).value(), naive);
        }

        #[test]
        fn inverse_is_inverse(a in 1u64..1_000_000) {
            let p = 1_000_003;
            if let Some(inv) = inverse_mod(a, p) {
                prop_assert_eq!(mul_mod(a, inv, p), 1);
            }
        }
    }
}
