//! The rational spectral curve `x = z + 1/z` with `y` replaced by its
//! polynomial truncations `y_N`, and the recursion kernel expanded at the
//! branch points `z = ±1`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::exact::{int, rat, Rat};
use crate::series::{Center, LocalSeries, Poly, RationalFn};

pub const BRANCHES: [i64; 2] = [1, -1];

/// Overall sign of the recursion kernel, fixed by requiring the three-point
/// genus-zero invariant to expand with coefficient `+1`.
const KERNEL_SIGN: i64 = 1;

#[derive(Debug)]
pub struct SpectralCurve {
    n: usize,
    y: Poly,
    slices: Mutex<HashMap<(i64, i64), Arc<KernelSlice>>>,
}

/// Kernel expanded in `t = z - branch`: `forms[i]` multiplies `dz0/(z0 - branch)^(i+2)`.
#[derive(Clone, Debug)]
pub struct KernelSlice {
    pub branch: i64,
    pub z_order: i64,
    pub forms: Vec<LocalSeries>,
}

impl KernelSlice {
    /// Series multiplying the z0 pole form of the given order.
    pub fn for_order(&self, order: u32) -> Option<&LocalSeries> {
        self.forms.get((order as usize).checked_sub(2)?)
    }
}

/// Smallest truncation for which `omega^g_n` is independent of `N`.
pub fn default_truncation(g: u32, n: u32) -> usize {
    (6 * g as i64 - 5 + 2 * n as i64).max(1) as usize
}

impl SpectralCurve {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "truncation order must be positive");
        let base = Poly::from_ints(&[1, 0, -1]);
        let mut y = Poly::zero();
        let mut p = Poly::one();
        for k in 1..=n {
            p = &p * &base;
            y = &y + &p.scale(&rat(-1, 2 * k as i64));
        }
        SpectralCurve {
            n,
            y,
            slices: Mutex::new(HashMap::new()),
        }
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn y(&self) -> &Poly {
        &self.y
    }

    pub fn y_fn(&self) -> RationalFn {
        RationalFn::from_poly(self.y.clone())
    }

    pub fn x() -> RationalFn {
        RationalFn::var().add(&RationalFn::z_pow(-1))
    }

    /// `dx/dz = 1 - 1/z^2`
    pub fn dx() -> RationalFn {
        RationalFn::constant(Rat::one()).sub(&RationalFn::z_pow(-2))
    }

    /// `y_N(z) - y_N(1/z)`
    pub fn ydiff(&self) -> RationalFn {
        let y = self.y_fn();
        y.sub(&y.at_inverse())
    }

    /// `Φ = ∫ y_N dx` with zero integration constant; rational because `y_N` is even.
    pub fn phi(&self) -> RationalFn {
        let mut acc = RationalFn::constant(Rat::zero());
        for (j, c) in self.y.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = j as i64;
            acc = acc.add(&RationalFn::z_pow(j + 1).scale(&(c / int(j + 1))));
            acc = acc.sub(&RationalFn::z_pow(j - 1).scale(&(c / int(j - 1))));
        }
        acc
    }

    /// `-y_N dx` as the dz-coefficient.
    pub fn omega01(&self) -> RationalFn {
        self.y_fn().mul(&Self::dx()).neg()
    }

    /// `1 / (2 (y(z) - y(1/z)) x'(z))`
    pub fn kernel_denominator(&self) -> RationalFn {
        let d = self.ydiff().mul(&Self::dx()).scale(&int(2));
        RationalFn::constant(Rat::one())
            .div(&d)
            .expect("ydiff is not identically zero")
    }

    /// The kernel at `branch`, trusted through `t^z_order`.
    pub fn kernel_slice(&self, branch: i64, z_order: i64) -> Arc<KernelSlice> {
        let key = (branch, z_order);
        if let Some(s) = self.slices.lock().unwrap().get(&key) {
            return s.clone();
        }
        let slice = Arc::new(self.build_slice(branch, z_order));
        self.slices
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(slice)
            .clone()
    }

    fn build_slice(&self, branch: i64, z_order: i64) -> KernelSlice {
        let c = Center::at(branch);
        let trunc = z_order + 1;
        let den = self
            .kernel_denominator()
            .laurent_at(&c, trunc + 2)
            .expect("kernel denominator expands");
        let s = RationalFn::z_pow(-1)
            .sub(&RationalFn::constant(int(branch)))
            .laurent_at(&c, trunc + 4)
            .expect("regular at the branch point")
            .normalized();
        let t = LocalSeries::monomial(c.clone(), Rat::one(), 1, trunc + 4);
        let mut forms = Vec::new();
        let mut sm = s.clone();
        let mut tm = t.clone();
        for m in 1..=(z_order + 2) {
            if m > 1 {
                sm = sm.mul(&s);
                tm = tm.mul(&t);
            }
            let num = sm.sub(&tm);
            let k = num.mul(&den).scale(&int(KERNEL_SIGN)).truncated(trunc);
            forms.push(k);
        }
        KernelSlice {
            branch,
            z_order,
            forms,
        }
    }
}

/// Bergmann kernel coefficient `1/(z1 - z2)^2`.
pub fn bergmann(z1: &Rat, z2: &Rat) -> Rat {
    let d = z1 - z2;
    Rat::one() / (&d * &d)
}

/// `B(z, 1/z)` as a dz^2-coefficient: `-1/(z^2 - 1)^2`.
pub fn bergmann_on_fiber() -> RationalFn {
    let d = Poly::from_ints(&[-1, 0, 1]).pow(2);
    RationalFn::new(Poly::constant(int(-1)), d).expect("nonzero")
}

/// `B(z1, z2) - dx1 dx2/(x1 - x2)^2` restricted to the diagonal: `1/(z^2 - 1)^2`.
pub fn bergmann_regularized_diagonal() -> RationalFn {
    bergmann_on_fiber().neg()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_small_n() {
        assert_eq!(SpectralCurve::new(1).y(), &Poly::new(vec![rat(-1, 2), int(0), rat(1, 2)]));
        let c2 = SpectralCurve::new(2);
        let expect = &Poly::from_ints(&[-1, 0, 1]).scale(&rat(1, 2))
            + &Poly::from_ints(&[1, 0, -1]).pow(2).scale(&rat(-1, 4));
        assert_eq!(c2.y(), &expect);
    }

    #[test]
    fn ydiff_n1() {
        let c = SpectralCurve::new(1);
        let expect = RationalFn::new(Poly::from_ints(&[-1, 0, 0, 0, 1]), Poly::from_ints(&[0, 0, 2])).unwrap();
        assert_eq!(c.ydiff(), expect);
        let d = c.ydiff().derivative();
        assert_eq!(d.eval(&int(1)).unwrap(), int(2));
    }

    #[test]
    fn phi_is_antiderivative() {
        for n in 1..5 {
            let c = SpectralCurve::new(n);
            assert_eq!(c.phi().derivative(), c.y_fn().mul(&SpectralCurve::dx()));
        }
    }
}
