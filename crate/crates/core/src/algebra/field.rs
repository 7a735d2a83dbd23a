//! Prime fields `F_p` with `p < 2^32`, used to realize roots of unity exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

/// Primes used for torsion characters exceed this bound.
pub const PRIME_FLOOR: u64 = 1_000_000;

/// An element of `F_p`. The modulus travels with the value so that polynomials
/// over `F_p` need no external context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp { value: value % modulus, modulus }
    }

    pub fn from_i64(v: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Fp { value: v.rem_euclid(m) as u64, modulus }
    }

    /// Reduces a rational; `None` when the denominator vanishes mod p.
    pub fn from_rational(q: &BigRational, modulus: u64) -> Option<Self> {
        let p = BigInt::from(modulus);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        let den = Fp::new(den, modulus).inv()?;
        Some(Fp::new(num, modulus) * den)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_one(self) -> bool {
        self.value == 1
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            Some(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn inv(self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        Some(self.pow(self.modulus - 2))
    }
}

impl std::ops::Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp { value: (self.value + o.value) % self.modulus, modulus: self.modulus }
    }
}

impl std::ops::Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp { value: (self.value + self.modulus - o.value) % self.modulus, modulus: self.modulus }
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp { value: self.value * o.value % self.modulus, modulus: self.modulus }
    }
}

impl std::ops::Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

impl std::fmt::Display for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn is_prime(n: u64) -> bool {
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

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `F_p` together with a fixed primitive `N`-th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    pub p: u64,
    pub root_order: u64,
    pub zeta: u64,
}

impl PrimeField {
    /// The smallest prime `p > 10^6` with `p ≡ 1 (mod order)`, and the `order`-th
    /// root of unity `g^((p-1)/order)` for the least primitive root `g`.
    pub fn for_root_order(order: u64) -> Self {
        assert!(order >= 1, "root order must be positive");
        let mut p = PRIME_FLOOR + 1;
        p += (order + 1 - p % order) % order; // first p > floor with p ≡ 1 mod order
        while !is_prime(p) {
            p += order;
        }
        let factors = prime_factors(p - 1);
        let g = (2..p)
            .find(|&g| factors.iter().all(|&q| Fp::new(g, p).pow((p - 1) / q).value != 1))
            .expect("a prime field has a primitive root");
        let zeta = Fp::new(g, p).pow((p - 1) / order).value;
        PrimeField { p, root_order: order, zeta }
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp::new(v, self.p)
    }

    pub fn zeta(&self) -> Fp {
        Fp::new(self.zeta, self.p)
    }

    /// `zeta^e` for any integer exponent.
    pub fn root_power(&self, e: i64) -> Fp {
        let n = self.root_order as i64;
        self.zeta().pow(e.rem_euclid(n) as u64)
    }

    pub fn from_rational(&self, q: &BigRational) -> Option<Fp> {
        Fp::from_rational(q, self.p)
    }

    /// Multiplicative order of `x`, or `None` for zero.
    pub fn order_of(&self, x: Fp) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut ord = self.p - 1;
        for q in prime_factors(self.p - 1) {
            while ord.is_multiple_of(q) && x.pow(ord / q).is_one() {
                ord /= q;
            }
        }
        Some(ord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_prime_congruent() {
        for n in [1u64, 2, 3, 4, 5, 6, 12, 30] {
            let f = PrimeField::for_root_order(n);
            assert!(f.p > PRIME_FLOOR);
            assert_eq!(f.p % n, 1 % n);
            assert!(is_prime(f.p));
            // nothing smaller qualifies
            let mut q = PRIME_FLOOR + 1;
            while q < f.p {
                assert!(!(is_prime(q) && q % n == 1 % n), "{q} is smaller for order {n}");
                q += 1;
            }
            assert_eq!(f.order_of(f.zeta()), Some(n));
        }
    }

    #[test]
    fn field_arithmetic() {
        let f = PrimeField::for_root_order(2);
        let a = f.elem(5);
        assert_eq!((a * a.inv().unwrap()).value(), 1);
        assert_eq!((-a + a).value(), 0);
        let half = BigRational::new(1.into(), 2.into());
        let h = f.from_rational(&half).unwrap();
        assert_eq!((h + h).value(), 1);
        assert_eq!(f.root_power(-1), f.zeta().inv().unwrap());
    }
}
