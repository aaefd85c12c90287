//! The polynomials `p^g_{n,k}` recovered from Gromov-Witten values, and the
//! two propositions evaluating them at non-stationary insertions.

use num_traits::Zero;
use rayon::prelude::*;

use super::toprec::{GWKey, Insertion, TopRec};
use crate::eo::checks::CheckReport;
use crate::eo::is_stable;
use crate::error::{Error, Result};
use crate::exact::{big, factorial, int, render, Rat};
use crate::expand::interp::Grid;
use crate::expand::{top_degree, Form, MPoly, QuasiPoly};

/// Insertions `prod_{i<k} tau_{2u_i} prod_{i>=k} tau_{2u_i - 1}` (all point class).
pub fn sector_insertions(k: usize, u: &[i64]) -> Vec<Insertion> {
    u.iter()
        .enumerate()
        .map(|(i, &x)| Insertion::point(if i < k { 2 * x as u32 } else { 2 * x as u32 - 1 }))
        .collect()
}

/// `u_{k+1} ... u_n / prod u_i!^2`.
pub fn sector_prefactor(k: usize, u: &[i64]) -> Rat {
    let mut r: Rat = u[k..].iter().map(|&x| int(x)).product();
    for &x in u {
        let f = big(factorial(x as u64));
        r /= &f * &f;
    }
    r
}

/// Fits sector `k` of `p^g_n` from genus <= 1 invariants.
pub fn p_polynomial(oracle: &TopRec, g: u32, n: u32, k: usize) -> Result<MPoly> {
    if !is_stable(g, n) || g > 1 {
        return Err(Error::Unsupported(format!("p-polynomial for (g, n) = ({g}, {n})")));
    }
    let nv = n as usize;
    if (k + nv) % 2 == 1 {
        return Ok(MPoly::zero(nv));
    }
    let node = move |i: usize, idx: u32| if i < k { idx as i64 } else { idx as i64 + 1 };
    let grid = Grid {
        nvars: nv,
        degree: top_degree(g, n),
        node: &node,
    };
    grid.fit(
        |idx| {
            let u: Vec<i64> = idx.iter().enumerate().map(|(i, &j)| node(i, j)).collect();
            let v = oracle.eval(&GWKey::new(g, sector_insertions(k, &u)))?;
            Ok(v / sector_prefactor(k, &u))
        },
        nv + 1,
    )
}

pub fn p_quasi(oracle: &TopRec, g: u32, n: u32) -> Result<QuasiPoly> {
    let sectors: Result<Vec<MPoly>> = (0..=n as usize)
        .into_par_iter()
        .map(|k| p_polynomial(oracle, g, n, k))
        .collect();
    Ok(QuasiPoly {
        g,
        n,
        form: Form::P,
        sectors: sectors?,
    })
}

fn u_grid(k: usize, len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for i in 0..len {
        let lo = if i < k { 0 } else { 1 };
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Checks, for all `u_i <= bound`,
/// `<tau_0(1) prod_{i<k} tau_{2u_i} prod_{k<=i<n-1} tau_{2u_i-1}>
///     = (u_{k+1}..u_{n-1} / prod u_i!^2) p_{n,k}(u, 0)` and
/// `<tau_1(1) prod_{1<=i<k} tau_{2u_i} prod_{i>=k} tau_{2u_i-1}>
///     = (u_{k+1}..u_n / prod_{i>=2} u_i!^2) d/du_1 p_{n,k} at u_1 = 0`.
pub fn check_eval_props(oracle: &TopRec, g: u32, n: u32, bound: i64) -> Result<CheckReport> {
    let p = p_quasi(oracle, g, n)?;
    let nv = n as usize;
    let mut rep = CheckReport::new();
    for k in 0..nv {
        let sector = p.sector(k);
        for u in u_grid(k, nv - 1, bound) {
            let mut ins = sector_insertions(k, &u);
            ins.push(Insertion::unit(0));
            let lhs = oracle.eval(&GWKey::new(g, ins))?;
            let mut x: Vec<Rat> = u.iter().map(|&v| int(v)).collect();
            x.push(Rat::zero());
            let rhs = sector_prefactor(k, &u) * sector.eval(&x);
            rep.record(lhs == rhs, || {
                format!("tau_0(1) at g={g} n={n} k={k} u={u:?}: {} vs {}", render(&lhs), render(&rhs))
            });
        }
    }
    for k in 1..=nv {
        let d = p.sector(k).partial(0);
        for u in u_grid(k - 1, nv - 1, bound) {
            let mut ins = sector_insertions(k - 1, &u);
            ins.push(Insertion::unit(1));
            let lhs = oracle.eval(&GWKey::new(g, ins))?;
            let mut x: Vec<Rat> = vec![Rat::zero()];
            x.extend(u.iter().map(|&v| int(v)));
            let rhs = sector_prefactor(k - 1, &u) * d.eval(&x);
            rep.record(lhs == rhs, || {
                format!("tau_1(1) at g={g} n={n} k={k} u={u:?}: {} vs {}", render(&lhs), render(&rhs))
            });
        }
    }
    Ok(rep)
}
