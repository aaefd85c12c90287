use num_traits::Zero;
use rayon::prelude::*;

use super::coeffs::Expansion;
use super::quasi::parity_order;
use super::transform::prefactor_product;
use crate::eo::checks::CheckReport;
use crate::eo::Engine;
use crate::error::Result;
use crate::exact::{int, rat, render, Rat};

fn grid(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `M^g_{n+1}(b, 0)`: prefactors of `b` times the m-form with a trailing 0
/// placed in the even block.
pub fn m_with_zero(upper: &Expansion, b: &[i64]) -> Rat {
    let (k, perm) = parity_order(b);
    let mut x: Vec<i64> = perm.iter().map(|&i| b[i]).collect();
    x.push(0);
    prefactor_product(b) * upper.mq.sector(k).eval_ints(&x)
}

/// Divisor `M_{n+1}(b, 1) = d M_n(b)` with `2d = 2 - 2g - n + sum b` and
/// string `M_{n+1}(b, 0) = sum_i b_i M_n(.., b_i - 1, ..)` on all `b` with
/// entries `<= bound`.
pub fn check_m_divisor_string_with(lower: &Expansion, upper: &Expansion, bound: i64) -> Result<CheckReport> {
    assert_eq!(lower.g(), upper.g());
    assert_eq!(lower.n() + 1, upper.n());
    let g = lower.g() as i64;
    let n = lower.n() as i64;
    let results: Vec<Result<(Vec<i64>, Rat, Rat, Rat, Rat)>> = grid(n as usize, bound)
        .into_par_iter()
        .map(|b| {
            let mut b1 = b.clone();
            b1.push(1);
            let sum: i64 = b.iter().sum();
            let div_l = upper.m_value(&b1)?;
            let div_r = rat(2 - 2 * g - n + sum, 2) * lower.m_value(&b)?;
            let str_l = m_with_zero(upper, &b);
            let mut str_r = Rat::zero();
            for i in 0..b.len() {
                let mut c = b.clone();
                c[i] -= 1;
                str_r += int(b[i]) * lower.m_value(&c)?;
            }
            Ok((b, div_l, div_r, str_l, str_r))
        })
        .collect();
    let mut rep = CheckReport::new();
    for r in results {
        let (b, dl, dr, sl, sr) = r?;
        rep.record(dl == dr, || {
            format!("divisor at ({},{}) b={b:?}: {} vs {}", g, n, render(&dl), render(&dr))
        });
        rep.record(sl == sr, || {
            format!("string at ({},{}) b={b:?}: {} vs {}", g, n, render(&sl), render(&sr))
        });
    }
    Ok(rep)
}

pub fn check_m_divisor_string(engine: &Engine, g: u32, n: u32, bound: i64) -> Result<CheckReport> {
    let lower = Expansion::compute(engine, g, n)?;
    let upper = Expansion::compute(engine, g, n + 1)?;
    check_m_divisor_string_with(&lower, &upper, bound)
}
