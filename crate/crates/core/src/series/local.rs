use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, render, Rat};

/// Expansion point of a [`LocalSeries`]. At infinity the local variable is `1/z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Center {
    At(Rat),
    Infinity,
}

impl Center {
    pub fn at(v: i64) -> Self {
        Center::At(int(v))
    }
}

/// Truncated Laurent series `sum_{e = min_exp}^{trunc-1} c_e t^e`.
///
/// Coefficients at exponents `>= trunc` are unknown; reading one is an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSeries {
    center: Center,
    min_exp: i64,
    coeffs: Vec<Rat>,
}

impl LocalSeries {
    pub fn new(center: Center, min_exp: i64, coeffs: Vec<Rat>) -> Self {
        LocalSeries {
            center,
            min_exp,
            coeffs,
        }
    }

    /// Known-zero series trusted on `[min_exp, trunc)`.
    pub fn zero(center: Center, min_exp: i64, trunc: i64) -> Self {
        let len = (trunc - min_exp).max(0) as usize;
        LocalSeries::new(center, min_exp, vec![Rat::zero(); len])
    }

    /// `c t^e`, trusted below `trunc`.
    pub fn monomial(center: Center, c: Rat, e: i64, trunc: i64) -> Self {
        if trunc <= e {
            return LocalSeries::zero(center, trunc, trunc);
        }
        let mut s = LocalSeries::zero(center, e, trunc);
        s.coeffs[0] = c;
        s
    }

    pub fn center(&self) -> &Center {
        &self.center
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn trunc(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> Result<Rat> {
        if e >= self.trunc() {
            return Err(Error::Precision {
                needed: e,
                trunc: self.trunc(),
            });
        }
        if e < self.min_exp {
            return Ok(Rat::zero());
        }
        Ok(self.coeffs[(e - self.min_exp) as usize].clone())
    }

    pub fn coeff_ref(&self, e: i64) -> Option<&Rat> {
        if e < self.min_exp || e >= self.trunc() {
            None
        } else {
            Some(&self.coeffs[(e - self.min_exp) as usize])
        }
    }

    /// Coefficient of `t^{-1}`.
    pub fn residue(&self) -> Result<Rat> {
        self.coeff(-1)
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exponent of the first nonzero trusted coefficient.
    pub fn order(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.min_exp + i as i64)
    }

    /// Drops leading zeros so that `min_exp` is the true order (when known).
    pub fn normalized(mut self) -> Self {
        if let Some(i) = self.coeffs.iter().position(|c| !c.is_zero()) {
            self.coeffs.drain(..i);
            self.min_exp += i as i64;
        } else {
            self.min_exp = self.trunc();
            self.coeffs.clear();
        }
        self
    }

    pub fn truncated(&self, trunc: i64) -> Self {
        if trunc >= self.trunc() {
            return self.clone();
        }
        let keep = (trunc - self.min_exp).max(0) as usize;
        let min_exp = self.min_exp.min(trunc);
        LocalSeries::new(self.center.clone(), min_exp, self.coeffs[..keep].to_vec())
    }

    /// Re-expresses the series starting at a lower `min_exp` by padding zeros.
    pub fn with_min_exp(&self, min_exp: i64) -> Self {
        if min_exp >= self.min_exp {
            return self.clone();
        }
        let mut c = vec![Rat::zero(); (self.min_exp - min_exp) as usize];
        c.extend(self.coeffs.iter().cloned());
        LocalSeries::new(self.center.clone(), min_exp, c)
    }

    fn same_center(&self, o: &LocalSeries) {
        assert_eq!(self.center, o.center, "series expanded at different points");
    }

    pub fn add(&self, o: &LocalSeries) -> LocalSeries {
        self.same_center(o);
        let min_exp = self.min_exp.min(o.min_exp);
        let trunc = self.trunc().min(o.trunc());
        let len = (trunc - min_exp).max(0) as usize;
        let mut c = Vec::with_capacity(len);
        for i in 0..len as i64 {
            let e = min_exp + i;
            let a = self.coeff_ref(e);
            let b = o.coeff_ref(e);
            c.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Rat::zero(),
            });
        }
        LocalSeries::new(self.center.clone(), min_exp, c)
    }

    pub fn sub(&self, o: &LocalSeries) -> LocalSeries {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> LocalSeries {
        LocalSeries::new(
            self.center.clone(),
            self.min_exp,
            self.coeffs.iter().map(|c| -c).collect(),
        )
    }

    pub fn scale(&self, r: &Rat) -> LocalSeries {
        LocalSeries::new(
            self.center.clone(),
            self.min_exp,
            self.coeffs.iter().map(|c| c * r).collect(),
        )
    }

    /// Adds `r * o` into `self` in place, narrowing the trusted window as needed.
    pub fn add_scaled(&mut self, o: &LocalSeries, r: &Rat) {
        self.same_center(o);
        if o.min_exp < self.min_exp {
            *self = self.with_min_exp(o.min_exp);
        }
        let trunc = self.trunc().min(o.trunc());
        self.coeffs.truncate((trunc - self.min_exp).max(0) as usize);
        if r.is_zero() {
            return;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            let e = o.min_exp + i as i64;
            if e >= trunc {
                break;
            }
            if !c.is_zero() {
                self.coeffs[(e - self.min_exp) as usize] += c * r;
            }
        }
    }

    pub fn mul(&self, o: &LocalSeries) -> LocalSeries {
        self.same_center(o);
        let min_exp = self.min_exp + o.min_exp;
        let trunc = (self.trunc() + o.min_exp).min(o.trunc() + self.min_exp);
        let len = (trunc - min_exp).max(0) as usize;
        let mut c = vec![Rat::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        LocalSeries::new(self.center.clone(), min_exp, c)
    }

    /// Coefficient of `t^e` in `self * o` without forming the product.
    pub fn product_coeff(&self, o: &LocalSeries, e: i64) -> Result<Rat> {
        let trunc = (self.trunc() + o.min_exp).min(o.trunc() + self.min_exp);
        if e >= trunc {
            return Err(Error::Precision { needed: e, trunc });
        }
        let mut acc = Rat::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.min_exp + i as i64;
            if let Some(b) = o.coeff_ref(e - ea) {
                if !b.is_zero() {
                    acc += a * b;
                }
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> LocalSeries {
        if k == 0 {
            let rel = self.trunc() - self.min_exp;
            return LocalSeries::monomial(self.center.clone(), Rat::one(), 0, rel);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero trusted coefficient.
    pub fn inverse(&self) -> Result<LocalSeries> {
        let s = self.clone().normalized();
        if s.coeffs.is_empty() {
            return Err(Error::ZeroSeries);
        }
        let n = s.coeffs.len();
        let a0 = s.coeffs[0].clone();
        let inv0 = Rat::one() / &a0;
        let mut out: Vec<Rat> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rat::zero();
            for j in 1..=k {
                if !s.coeffs[j].is_zero() {
                    acc += &s.coeffs[j] * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(LocalSeries::new(s.center, -s.min_exp, out))
    }

    pub fn div(&self, o: &LocalSeries) -> Result<LocalSeries> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Termwise `d/dt`.
    pub fn derivative(&self) -> LocalSeries {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * int(self.min_exp + i as i64))
            .collect();
        LocalSeries::new(self.center.clone(), self.min_exp - 1, c)
    }

    pub fn one(center: Center, trunc: i64) -> Self {
        LocalSeries::monomial(center, Rat::one(), 0, trunc)
    }
}

impl fmt::Display for LocalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*t^{}", render(c), self.min_exp + i as i64)?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.trunc())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn s(min: i64, c: &[i64]) -> LocalSeries {
        LocalSeries::new(Center::at(0), min, c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn trunc_propagation() {
        let a = s(-2, &[1, 2, 3]);
        let b = s(1, &[1, 1]);
        let p = a.mul(&b);
        assert_eq!(p.min_exp(), -1);
        assert_eq!(p.trunc(), (1 + 1).min(3 - 2));
        assert!(p.coeff(1).is_err());
    }

    #[test]
    fn residue_needs_precision() {
        let a = s(-3, &[1]);
        assert!(matches!(a.residue(), Err(Error::Precision { .. })));
        let b = s(-3, &[1, 0, 5]);
        assert_eq!(b.residue().unwrap(), int(5));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = s(-1, &[2, 1, 0, 4, 1]);
        let inv = a.inverse().unwrap();
        let p = a.mul(&inv);
        assert_eq!(p.coeff(0).unwrap(), int(1));
        for e in 1..p.trunc() {
            assert_eq!(p.coeff(e).unwrap(), int(0));
        }
        assert_eq!(inv.coeff(1).unwrap(), rat(1, 2));
        assert_eq!(inv.coeff(2).unwrap(), rat(-1, 4));
    }

    #[test]
    fn zero_window_inverse_fails() {
        assert_eq!(s(0, &[0, 0]).inverse(), Err(Error::ZeroSeries));
    }
}
