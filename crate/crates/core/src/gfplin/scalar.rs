use super::GfError;

/// A prime modulus, validated at construction by trial division.
///
/// All moduli in this crate are small (the theory is desk-scale), so trial
/// division is plenty. The newtype keeps unvalidated integers out of the
/// arithmetic paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime, GfError> {
        if p < 2 {
            return Err(GfError::NotPrime(p));
        }
        if p == 2 {
            return Ok(Prime(2));
        }
        if p.is_multiple_of(2) {
            return Err(GfError::NotPrime(p));
        }
        let mut d = 3u64;
        while d.saturating_mul(d) <= p {
            if p.is_multiple_of(d) {
                return Err(GfError::NotPrime(p));
            }
            d += 2;
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_i64(self, v: i64) -> u64 {
        let p = self.0 as i64;
        (v.rem_euclid(p)) as u64
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.0
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0 && a < self.0);
        self.pow(a, self.0 - 2)
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn scalar(self, value: u64) -> FieldScalar {
        FieldScalar {
            value: self.reduce(value),
            modulus: self,
        }
    }
}

/// A single validated residue in `[0, p)` for a prime `p`.
///
/// The bulk containers ([`super::FieldMatrix`], [`super::Subspace`]) store raw
/// residues with one shared [`Prime`]; this type is the checked entry point
/// used at API boundaries such as file parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u64,
    modulus: Prime,
}

impl FieldScalar {
    pub fn new(value: u64, p: u64) -> Result<FieldScalar, GfError> {
        let modulus = Prime::new(p)?;
        Ok(modulus.scalar(value))
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }
}
