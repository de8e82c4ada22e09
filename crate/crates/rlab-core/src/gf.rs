//! Small finite fields GF(p^m) with elements encoded as base-p digit packs.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u32),
    #[error("field size {0} exceeds the supported bound")]
    TooLarge(u32),
}

/// Arithmetic context for GF(q), q = p^m. Elements are integers in 0..q whose
/// base-p digits are the coefficients of the residue polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf {
    pub q: u32,
    pub p: u32,
    pub m: u32,
    /// Monic irreducible polynomial of degree m, low-to-high coefficients
    /// (length m+1); unused for prime fields.
    irred: Vec<u32>,
}

pub const MAX_FIELD_SIZE: u32 = 4096;

fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut m = 0;
            let mut r = q;
            while r % p == 0 {
                r /= p;
                m += 1;
            }
            return if r == 1 { Some((p, m)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

impl Gf {
    pub fn new(q: u32) -> Result<Self, GfError> {
        if q > MAX_FIELD_SIZE {
            return Err(GfError::TooLarge(q));
        }
        let (p, m) = factor_prime_power(q).ok_or(GfError::NotAPrimePower(q))?;
        let irred = if m == 1 {
            vec![0, 1] // x; placeholder, prime fields do not reduce
        } else {
            find_irreducible(p, m)
        };
        Ok(Gf { q, p, m, irred })
    }

    #[inline]
    fn digits(&self, x: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.m as usize);
        let mut v = x;
        for _ in 0..self.m {
            d.push(v % self.p);
            v /= self.p;
        }
        d
    }

    #[inline]
    fn pack(&self, d: &[u32]) -> u32 {
        let mut v = 0;
        for &c in d.iter().rev() {
            v = v * self.p + (c % self.p);
        }
        v
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&sum)
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let da = self.digits(a);
        let neg: Vec<u32> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        self.pack(&neg)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a as u64 * b as u64 % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let m = self.m as usize;
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce modulo the irreducible polynomial (monic)
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (k, &ic) in self.irred.iter().enumerate().take(m) {
                let idx = i - m + k;
                prod[idx] = (prod[idx] + c * (self.p - ic % self.p)) % self.p;
            }
        }
        self.pack(&prod[..m])
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "division by zero in GF({})", self.q);
        // a^(q-2) by square and multiply
        let mut result = 1u32;
        let mut base = a;
        let mut e = self.q - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while a.len() > db && a.len() >= 1 {
        let da = a.len() - 1;
        if da < db {
            break;
        }
        let f = a[da] * lead_inv % p;
        if f != 0 {
            for k in 0..=db {
                let idx = da - db + k;
                a[idx] = (a[idx] + p * p - f * b[k] % p) % p;
            }
        }
        a.pop();
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // Fermat
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Smallest monic irreducible polynomial of degree m over Z/p, by trial
/// division against all lower-degree monic polynomials.
fn find_irreducible(p: u32, m: u32) -> Vec<u32> {
    let m = m as usize;
    let total = (p as u64).pow(m as u32);
    'candidates: for code in 0..total {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut v = code;
        for _ in 0..m {
            coeffs.push((v % p as u64) as u32);
            v /= p as u64;
        }
        coeffs.push(1); // monic
        if coeffs[0] == 0 {
            continue; // divisible by x
        }
        // trial division by monic polynomials of degree 1..=m/2
        for d in 1..=m / 2 {
            let dt = (p as u64).pow(d as u32);
            for dc in 0..dt {
                let mut div = Vec::with_capacity(d + 1);
                let mut w = dc;
                for _ in 0..d {
                    div.push((w % p as u64) as u32);
                    w /= p as u64;
                }
                div.push(1);
                let r = poly_rem(coeffs.clone(), &div, p);
                if r.iter().all(|&c| c == 0) {
                    continue 'candidates;
                }
            }
        }
        return coeffs;
    }
    unreachable!("irreducible polynomials of every degree exist over finite fields")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Gf::new(5).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.mul(f.inv(3), 3), 1);
    }

    #[test]
    fn gf4_is_a_field() {
        let f = Gf::new(4).unwrap();
        for a in 1..4 {
            assert_eq!(f.mul(f.inv(a), a), 1);
        }
        // characteristic 2: a + a = 0
        for a in 0..4 {
            assert_eq!(f.add(a, a), 0);
        }
        // multiplicative group is cyclic of order 3
        let mut pow = 1;
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..3 {
            pow = f.mul(pow, 2);
            seen.insert(pow);
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn gf9_inverses() {
        let f = Gf::new(9).unwrap();
        for a in 1..9 {
            assert_eq!(f.mul(a, f.inv(a)), 1, "a={a}");
        }
        // distributivity spot check
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn non_prime_power_rejected() {
        assert!(Gf::new(6).is_err());
        assert!(Gf::new(12).is_err());
    }
}
