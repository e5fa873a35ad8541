use std::fmt;

use serde::Serialize;

use super::SeriesError;

/// Largest supported modulus exponent of two; keeps sums of two residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 62;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The ring `Z/p^k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Modulus {
    p: u64,
    k: u32,
    value: u64,
}

impl Modulus {
    pub fn new(p: u64, k: u32) -> Result<Self, SeriesError> {
        if !is_prime(p) {
            return Err(SeriesError::NotPrime(p));
        }
        if k == 0 {
            return Err(SeriesError::BadModulus(format!("{p}^0")));
        }
        let value = p
            .checked_pow(k)
            .filter(|&v| v <= MAX_MODULUS)
            .ok_or_else(|| SeriesError::BadModulus(format!("{p}^{k}")))?;
        Ok(Modulus { p, k, value })
    }

    /// Recognises an integer of the form `p^k`.
    pub fn from_value(m: u64) -> Result<Self, SeriesError> {
        if m < 2 {
            return Err(SeriesError::BadModulus(m.to_string()));
        }
        let p = (2..=m).find(|d| m % d == 0).expect("m >= 2");
        let mut rest = m;
        let mut k = 0;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(SeriesError::BadModulus(format!("{m} is not a prime power")));
        }
        Modulus::new(p, k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.value {
            s - self.value
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.value - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.value - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.value as u128) as u64
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.value as i64) as u64
    }

    pub fn reduce_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.value as i128) as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.value;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a unit, `None` when `p | a`.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let (mut r0, mut r1) = (self.value as i128, (a % self.value) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        (r0 == 1).then(|| self.reduce_i128(t0))
    }

    /// Representative in `(-m/2, m/2]`.
    pub fn balanced(&self, a: u64) -> i64 {
        if a > self.value / 2 {
            a as i64 - self.value as i64
        } else {
            a as i64
        }
    }

    /// `p`-adic valuation of a residue, capped at `k` for zero.
    pub fn valuation(&self, a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        let mut a = a;
        let mut v = 0;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn coeff(&self, value: u64) -> ModCoeff {
        ModCoeff { value: value % self.value, modulus: *self }
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.k)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A residue together with the ring it lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ModCoeff {
    value: u64,
    modulus: Modulus,
}

impl ModCoeff {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn balanced(&self) -> i64 {
        self.modulus.balanced(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Whether `p^e` divides this residue (meaningful for `e ≤ k`).
    pub fn divisible_by_p_pow(&self, e: u32) -> bool {
        self.modulus.valuation(self.value) >= e
    }
}

impl fmt::Display for ModCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        assert_eq!(Modulus::new(3, 2).unwrap().value(), 9);
        assert!(Modulus::new(4, 1).is_err());
        assert!(Modulus::new(2, 63).is_err());
        assert!(Modulus::new(2, 62).is_ok());
        let m = Modulus::from_value(125).unwrap();
        assert_eq!((m.p(), m.k()), (5, 3));
        assert!(Modulus::from_value(12).is_err());
        assert!(Modulus::from_value(1).is_err());
    }

    #[test]
    fn arithmetic() {
        let m = Modulus::new(5, 2).unwrap();
        assert_eq!(m.add(20, 10), 5);
        assert_eq!(m.sub(3, 10), 18);
        assert_eq!(m.neg(1), 24);
        assert_eq!(m.mul(7, 8), 6);
        assert_eq!(m.reduce_i64(-1), 24);
        assert_eq!(m.inv(2), Some(13));
        assert_eq!(m.inv(10), None);
        assert_eq!(m.balanced(24), -1);
        assert_eq!(m.valuation(10), 1);
        assert_eq!(m.valuation(0), 2);
        assert_eq!(m.pow(2, 10), 1024 % 25);
    }

    #[test]
    fn big_modulus_products_do_not_overflow() {
        let m = Modulus::new(2, 62).unwrap();
        let a = m.value() - 1;
        assert_eq!(m.mul(a, a), 1);
        assert_eq!(m.add(a, a), m.value() - 2);
    }
}
