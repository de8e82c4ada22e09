//! Laurent polynomials over a finite field, with truncated power-series
//! division for the lattice normal form.

use std::fmt;

use crate::gf::Gf;

/// A Laurent polynomial sum c_i t^(val + i), coefficients in GF(q).
/// Normalized: zero is the empty coefficient vector; otherwise the first and
/// last coefficients are nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    pub val: i32,
    pub coeffs: Vec<u32>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { val: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Laurent { val: 0, coeffs: vec![1] }
    }

    /// c * t^e
    pub fn monomial(c: u32, e: i32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Laurent { val: e, coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(val: i32, coeffs: Vec<u32>) -> Self {
        let mut l = Laurent { val, coeffs };
        l.normalize();
        l
    }

    fn normalize(&mut self) {
        while let Some(&last) = self.coeffs.last() {
            if last == 0 {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.val += lead_zeros as i32;
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// t-adic valuation; None for zero.
    pub fn valuation(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn degree(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.val + self.coeffs.len() as i32 - 1)
        }
    }

    pub fn coeff_at(&self, e: i32) -> u32 {
        if self.is_zero() || e < self.val {
            return 0;
        }
        let idx = (e - self.val) as usize;
        self.coeffs.get(idx).copied().unwrap_or(0)
    }

    pub fn shift(&self, e: i32) -> Self {
        if self.is_zero() {
            Self::zero()
        } else {
            Laurent { val: self.val + e, coeffs: self.coeffs.clone() }
        }
    }

    pub fn add(&self, other: &Laurent, gf: &Gf) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.val.min(other.val);
        let hi = (self.val + self.coeffs.len() as i32).max(other.val + other.coeffs.len() as i32);
        let mut coeffs = vec![0u32; (hi - lo) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let idx = (self.val - lo) as usize + i;
            coeffs[idx] = gf.add(coeffs[idx], c);
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            let idx = (other.val - lo) as usize + i;
            coeffs[idx] = gf.add(coeffs[idx], c);
        }
        Laurent::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self, gf: &Gf) -> Laurent {
        Laurent::from_coeffs(self.val, self.coeffs.iter().map(|&c| gf.neg(c)).collect())
    }

    pub fn sub(&self, other: &Laurent, gf: &Gf) -> Laurent {
        self.add(&other.neg(gf), gf)
    }

    pub fn mul(&self, other: &Laurent, gf: &Gf) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = gf.add(coeffs[i + j], gf.mul(a, b));
            }
        }
        Laurent::from_coeffs(self.val + other.val, coeffs)
    }

    pub fn scale(&self, c: u32, gf: &Gf) -> Laurent {
        if c == 0 {
            return Laurent::zero();
        }
        Laurent::from_coeffs(self.val, self.coeffs.iter().map(|&a| gf.mul(a, c)).collect())
    }

    /// Drops all terms of degree >= cutoff.
    pub fn truncate_above(&self, cutoff: i32) -> Laurent {
        if self.is_zero() || self.val >= cutoff {
            return Laurent::zero();
        }
        let keep = ((cutoff - self.val) as usize).min(self.coeffs.len());
        Laurent::from_coeffs(self.val, self.coeffs[..keep].to_vec())
    }

    /// Keeps only terms of degree >= cutoff; no field ops involved.
    pub fn terms_from(&self, cutoff: i32) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        if self.val >= cutoff {
            return self.clone();
        }
        let skip = (cutoff - self.val) as usize;
        if skip >= self.coeffs.len() {
            return Laurent::zero();
        }
        Laurent::from_coeffs(cutoff, self.coeffs[skip..].to_vec())
    }

    /// Multiplicative inverse as a power series in t, correct modulo
    /// t^(prec - val); the result has valuation -val.
    pub fn series_inverse(&self, prec: i32, gf: &Gf) -> Laurent {
        assert!(!self.is_zero(), "cannot invert zero");
        let u0 = self.coeffs[0];
        let u0_inv = gf.inv(u0);
        let terms = (prec.max(1)) as usize;
        let mut inv = vec![0u32; terms];
        inv[0] = u0_inv;
        for k in 1..terms {
            let mut s = 0u32;
            for j in 1..=k {
                let uj = self.coeffs.get(j).copied().unwrap_or(0);
                if uj != 0 && inv[k - j] != 0 {
                    s = gf.add(s, gf.mul(uj, inv[k - j]));
                }
            }
            inv[k] = gf.neg(gf.mul(u0_inv, s));
        }
        Laurent::from_coeffs(-self.val, inv)
    }

    /// self / other, with the quotient kept to `prec` significant terms.
    pub fn series_div(&self, other: &Laurent, prec: i32, gf: &Gf) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let inv = other.series_inverse(prec + self.coeffs.len() as i32, gf);
        let cut = self.val - other.val + prec;
        self.mul(&inv, gf).truncate_above(cut)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.val + i as i32;
            match e {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "t")?,
                1 => write!(f, "{c}t")?,
                _ if c == 1 => write!(f, "t^{e}")?,
                _ => write!(f, "{c}t^{e}")?,
            }
        }
        Ok(())
    }
}
