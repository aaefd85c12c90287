//! The unstable cases (0,1) and (0,2), expanded at `x = infinity` on the branch
//! `z = infinity` after removing their singular parts.

use num_traits::{One, Zero};

use super::coeffs::CoeffTable;
use crate::error::{Error, Result};
use crate::exact::{self, binomial, int, Rat};
use crate::series::{Center, LocalSeries};

fn var(trunc: i64) -> LocalSeries {
    LocalSeries::monomial(Center::at(0), Rat::one(), 1, trunc)
}

/// `ln(1 + h)` for a series with `h(0) = 0`.
fn log1p(h: &LocalSeries) -> Result<LocalSeries> {
    if !h.coeff(0)?.is_zero() {
        return Err(Error::Check("log1p needs a series vanishing at 0".into()));
    }
    let trunc = h.trunc();
    let mut acc = LocalSeries::zero(Center::at(0), 0, trunc);
    let mut p = h.clone();
    for k in 1..trunc.max(1) {
        let c = exact::rat(exact::sign(k + 1), k);
        acc.add_scaled(&p, &c);
        p = p.mul(h);
    }
    Ok(acc)
}

/// The local inverse `w(xi)` of `xi = w / (1 + w^2)`, where `w = 1/z` and
/// `xi = 1/x`: the fixed point of `w = xi (1 + w^2)`.
pub fn inverse_branch(trunc: i64) -> LocalSeries {
    let xi = var(trunc);
    let one = LocalSeries::one(Center::at(0), trunc);
    let mut w = LocalSeries::zero(Center::at(0), 0, trunc);
    for _ in 0..trunc {
        w = xi.mul(&one.add(&w.mul(&w))).truncated(trunc);
    }
    w
}

/// A series plus a multiple of `ln xi`.
#[derive(Clone, Debug)]
struct LogSeries {
    log: Rat,
    reg: LocalSeries,
}

impl LogSeries {
    fn sub(&self, o: &LogSeries) -> LogSeries {
        LogSeries {
            log: &self.log - &o.log,
            reg: self.reg.sub(&o.reg),
        }
    }
}

/// `M^0_1(b) = -res_{x = inf} x^b (omega^0_1 + ln x dx)` for `b = 1..=bound`,
/// by composing with the inverse branch and, independently, by a residue in `w`.
pub fn expansion_0_1(bound: i64) -> Result<CoeffTable> {
    let trunc = bound + 3;
    let w = inverse_branch(trunc);
    // ln x = -ln xi; ln z = -ln w = -ln xi - ln(w / xi)
    let ln_x = LogSeries {
        log: int(-1),
        reg: LocalSeries::zero(Center::at(0), 0, trunc),
    };
    let w_over_xi = LocalSeries::new(Center::at(0), w.min_exp() - 1, w.coeffs().to_vec());
    let ln_z = LogSeries {
        log: int(-1),
        reg: log1p(&w_over_xi.sub(&LocalSeries::one(Center::at(0), trunc - 1)))?.neg(),
    };
    let f = ln_x.sub(&ln_z);
    if !f.log.is_zero() {
        return Err(Error::Check("logarithmic terms do not cancel".into()));
    }
    // -res_{x=inf} x^b f dx = [xi^{b+1}] f
    let wt = var(trunc);
    let w2 = wt.mul(&wt);
    let one = LocalSeries::one(Center::at(0), trunc);
    let lnw = log1p(&w2)?;
    let mut t = CoeffTable::new(0, 1);
    for b in 1..=bound {
        let a = f.reg.coeff(b + 1)?;
        let kernel = one.add(&w2).pow(b as u32).mul(&one.sub(&w2)).mul(&lnw);
        let r = kernel.coeff(b + 1)?;
        if a != r {
            return Err(Error::Check(format!("M^0_1({b}) routes disagree: {a} vs {r}")));
        }
        t.entries.insert(vec![b], a);
    }
    Ok(t)
}

/// `M^0_2(b1, b2)` for `b_i = 1..=bound` from `B - dx1 dx2/(x1 - x2)^2`,
/// which at the branch `z = infinity` is `dw1 dw2 / (1 - w1 w2)^2`.
pub fn expansion_0_2(bound: i64) -> Result<CoeffTable> {
    let trunc = bound + 2;
    let w = inverse_branch(trunc);
    let dw = w.derivative();
    let mut wj_dw = Vec::new();
    let mut p = LocalSeries::one(Center::at(0), trunc);
    for _ in 0..bound {
        wj_dw.push(p.mul(&dw));
        p = p.mul(&w);
    }
    let mut t = CoeffTable::new(0, 2);
    for b1 in 1..=bound {
        for b2 in 1..=bound {
            let mut direct = Rat::zero();
            let mut composed = Rat::zero();
            for j in 0..bound {
                let c1 = b1 + 1 + j;
                let c2 = b2 + 1 + j;
                if c1 % 2 == 0 && c2 % 2 == 0 {
                    direct += exact::big(binomial(b1, c1 / 2) * binomial(b2, c2 / 2)) * int(j + 1);
                }
                let s = &wj_dw[j as usize];
                composed += s.coeff(b1 - 1)? * s.coeff(b2 - 1)? * int(j + 1);
            }
            if direct != composed {
                return Err(Error::Check(format!(
                    "M^0_2({b1},{b2}) routes disagree: {direct} vs {composed}"
                )));
            }
            t.entries.insert(vec![b1, b2], direct);
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_branch() {
        let w = inverse_branch(8);
        let c: Vec<Rat> = (0..8).map(|e| w.coeff(e).unwrap()).collect();
        assert_eq!(c[1], int(1));
        assert_eq!(c[3], int(1));
        assert_eq!(c[5], int(2));
        assert_eq!(c[7], int(5));
        assert!(c[2].is_zero());
    }

    #[test]
    fn log1p_of_monomial() {
        let h = var(5);
        let l = log1p(&h).unwrap();
        assert_eq!(l.coeff(3).unwrap(), exact::rat(1, 3));
        assert_eq!(l.coeff(4).unwrap(), exact::rat(-1, 4));
    }
}
