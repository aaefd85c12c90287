use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::local::{Center, LocalSeries};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exact::Rat;

/// Quotient of polynomials, kept coprime with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if num.is_zero() {
            return Ok(RationalFn::from_poly(Poly::zero()));
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g)?;
        let (d, _) = den.div_rem(&g)?;
        let l = d.lead();
        let inv = Rat::one() / l;
        Ok(RationalFn {
            num: n.scale(&inv),
            den: d.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(r: Rat) -> Self {
        RationalFn::from_poly(Poly::constant(r))
    }

    pub fn var() -> Self {
        RationalFn::from_poly(Poly::var())
    }

    /// `z^e` for any integer `e`.
    pub fn z_pow(e: i64) -> Self {
        if e >= 0 {
            RationalFn::from_poly(Poly::monomial(Rat::one(), e as usize))
        } else {
            RationalFn {
                num: Poly::one(),
                den: Poly::monomial(Rat::one(), (-e) as usize),
            }
        }
    }

    /// `c / (z - a)^k`
    pub fn pole(c: Rat, a: Rat, k: u32) -> Self {
        let d = Poly::linear(Rat::one(), -a).pow(k);
        RationalFn::new(Poly::constant(c), d).expect("nonzero denominator")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RationalFn) -> RationalFn {
        RationalFn::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .expect("nonzero denominator")
    }

    pub fn sub(&self, o: &RationalFn) -> RationalFn {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn scale(&self, r: &Rat) -> RationalFn {
        RationalFn::new(self.num.scale(r), self.den.clone()).expect("nonzero denominator")
    }

    pub fn div(&self, o: &RationalFn) -> Result<RationalFn> {
        RationalFn::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn pow(&self, e: u32) -> RationalFn {
        RationalFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn derivative(&self) -> RationalFn {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFn::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(self.num.eval(x) / d)
    }

    /// `f(1/z)` as a rational function of `z`.
    pub fn at_inverse(&self) -> RationalFn {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let n = self.num.reversed(dn);
        let d = self.den.reversed(dd);
        let shift = dd as i64 - dn as i64;
        let f = RationalFn::new(n, d).expect("nonzero denominator");
        f.mul(&RationalFn::z_pow(shift))
    }

    /// `f(g(z))` for a rational `g`.
    pub fn compose(&self, g: &RationalFn) -> RationalFn {
        let eval = |p: &Poly| {
            let mut acc = RationalFn::from_poly(Poly::zero());
            for a in p.coeffs().iter().rev() {
                acc = acc.mul(g).add(&RationalFn::constant(a.clone()));
            }
            acc
        };
        eval(&self.num)
            .div(&eval(&self.den))
            .expect("composition with a nonzero denominator")
    }

    /// Laurent expansion at `center`, trusted for exponents below `order`.
    pub fn laurent_at(&self, center: &Center, order: i64) -> Result<LocalSeries> {
        match center {
            Center::At(c) => {
                let n = self.num.shift(c);
                let d = self.den.shift(c);
                Ok(relabel(expand_at_zero(&n, &d, order)?, center.clone()))
            }
            Center::Infinity => {
                let g = self.at_inverse();
                let s = expand_at_zero(&g.num, &g.den, order)?;
                Ok(relabel(s, Center::Infinity))
            }
        }
    }

    /// Decomposes into a polynomial part plus principal parts at the given poles.
    pub fn partial_fractions(&self, poles: &[Rat]) -> Result<PartialFractions> {
        let mut rest = self.den.clone();
        let mut mult = Vec::new();
        for p in poles {
            let lin = Poly::linear(Rat::one(), -p.clone());
            let mut m = 0u32;
            loop {
                let (q, r) = rest.div_rem(&lin)?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            mult.push((p.clone(), m));
        }
        if rest.degree() != Some(0) {
            return Err(Error::Decomposition(format!(
                "denominator factor {rest} has roots outside the declared poles"
            )));
        }
        let (poly, _) = self.num.div_rem(&self.den)?;
        let mut terms = BTreeMap::new();
        for (p, m) in mult {
            if m == 0 {
                continue;
            }
            let s = self.laurent_at(&Center::At(p.clone()), 0)?;
            for k in 1..=m {
                let c = s.coeff(-(k as i64))?;
                if !c.is_zero() {
                    terms.insert((p.clone(), k), c);
                }
            }
        }
        Ok(PartialFractions { poly, terms })
    }
}

fn relabel(s: LocalSeries, c: Center) -> LocalSeries {
    LocalSeries::new(c, s.min_exp(), s.coeffs().to_vec())
}

fn expand_at_zero(n: &Poly, d: &Poly, order: i64) -> Result<LocalSeries> {
    let vd = d.valuation().ok_or(Error::ZeroDivision)?;
    let Some(vn) = n.valuation() else {
        let min = order.min(0);
        return Ok(LocalSeries::zero(Center::at(0), min, order));
    };
    let min_exp = vn as i64 - vd as i64;
    let len = (order - min_exp).max(0) as usize;
    let nc = &n.coeffs()[vn..];
    let dc = &d.coeffs()[vd..];
    let inv0 = Rat::one() / &dc[0];
    let mut out: Vec<Rat> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = nc.get(k).cloned().unwrap_or_else(Rat::zero);
        for j in 1..=k.min(dc.len() - 1) {
            if !dc[j].is_zero() {
                acc -= &dc[j] * &out[k - j];
            }
        }
        out.push(acc * &inv0);
    }
    Ok(LocalSeries::new(Center::at(0), min_exp, out))
}

/// Result of [`RationalFn::partial_fractions`]: `f = poly + sum c / (z - a)^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub poly: Poly,
    pub terms: BTreeMap<(Rat, u32), Rat>,
}

impl PartialFractions {
    pub fn recombine(&self) -> RationalFn {
        let mut acc = RationalFn::from_poly(self.poly.clone());
        for ((a, k), c) in &self.terms {
            acc = acc.add(&RationalFn::pole(c.clone(), a.clone(), *k));
        }
        acc
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn rf(n: &[i64], d: &[i64]) -> RationalFn {
        RationalFn::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    #[test]
    fn laurent_examples() {
        let s = rf(&[1], &[-1, 1]).laurent_at(&Center::at(1), 2).unwrap();
        assert_eq!(s.coeff(-1).unwrap(), int(1));
        assert_eq!(s.coeff(0).unwrap(), int(0));
        assert_eq!(s.coeff(1).unwrap(), int(0));
        let g = rf(&[1], &[1, -1]).laurent_at(&Center::at(0), 3).unwrap();
        assert_eq!(g.coeffs(), &[int(1), int(1), int(1)]);
        let dx = rf(&[-1, 0, 1], &[0, 0, 1]).laurent_at(&Center::at(1), 3).unwrap();
        assert_eq!(dx.coeff(0).unwrap(), int(0));
        assert_eq!(dx.coeff(1).unwrap(), int(2));
        assert_eq!(dx.coeff(2).unwrap(), int(-3));
    }

    #[test]
    fn laurent_at_infinity() {
        // z^2/(z-1) = z + 1 + 1/z + ... ; in w = 1/z: w^{-1} + 1 + w + ...
        let s = rf(&[0, 0, 1], &[-1, 1]).laurent_at(&Center::Infinity, 3).unwrap();
        assert_eq!(s.min_exp(), -1);
        assert_eq!(s.coeffs(), &[int(1), int(1), int(1), int(1)]);
    }

    #[test]
    fn partial_fraction_examples() {
        let pf = rf(&[1], &[-1, 0, 1]).partial_fractions(&[int(1), int(-1)]).unwrap();
        assert_eq!(pf.terms.get(&(int(1), 1)), Some(&rat(1, 2)));
        assert_eq!(pf.terms.get(&(int(-1), 1)), Some(&rat(-1, 2)));
        assert!(pf.poly.is_zero());

        let f = rf(&[0, 0, 1], &[-1, 1]);
        let pf = f.partial_fractions(&[int(1)]).unwrap();
        assert_eq!(pf.terms.get(&(int(1), 1)), Some(&int(1)));
        assert_eq!(pf.poly, Poly::from_ints(&[1, 1]));

        let f = rf(&[1, 0, 1], &[0, 0, -1, 1]);
        let pf = f.partial_fractions(&[int(0), int(1), int(-1)]).unwrap();
        assert_eq!(pf.recombine(), f);

        assert!(rf(&[1], &[1, 0, 1]).partial_fractions(&[int(1)]).is_err());
    }

    #[test]
    fn inverse_substitution() {
        let x = RationalFn::var().add(&RationalFn::z_pow(-1));
        assert_eq!(x.at_inverse(), x);
    }
}
