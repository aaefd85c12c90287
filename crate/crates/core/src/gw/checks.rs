//! Agreement between the oracles, the closed formulas and the universal
//! equations.

use num_traits::Zero;
use rayon::prelude::*;

use super::closed::{ClosedForm, CLOSED_FORMS};
use super::plancherel::Plancherel;
use super::toprec::{GWKey, Insertion, TopRec};
use crate::eo::checks::CheckReport;
use crate::error::Result;
use crate::exact::{big, factorial, int, render, Rat};

/// Sorted stationary power vectors of length `n` with sum `<= max_sum` and
/// entries `<= max_entry`.
pub fn stationary_vectors(n: usize, max_entry: u32, max_sum: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, lo: u32, hi: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in lo..=hi.min(left) {
            cur.push(b);
            rec(n, b, hi, left - b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, max_entry, max_sum, &mut Vec::new(), &mut out);
    out
}

fn dimension_ok(g: u32, b: &[u32]) -> bool {
    GWKey::stationary(g, b).degree().is_some()
}

/// `connected_stationary == stationary_toprec` for `g <= 1`, `1 <= n <= max_n`,
/// `b_i <= max_b`, on keys satisfying the dimension constraint.
pub fn check_oracle_agreement(pl: &Plancherel, tr: &TopRec, max_n: usize, max_b: u32) -> Result<CheckReport> {
    let mut cases = Vec::new();
    for g in 0..=1u32 {
        for n in 1..=max_n {
            for b in stationary_vectors(n, max_b, max_b * n as u32) {
                if dimension_ok(g, &b) {
                    cases.push((g, b));
                }
            }
        }
    }
    let res: Vec<Result<(u32, Vec<u32>, Rat, Rat)>> = cases
        .into_par_iter()
        .map(|(g, b)| {
            let a = pl.connected_stationary(g, &b);
            let t = tr.stationary(g, &b)?;
            Ok((g, b, a, t))
        })
        .collect();
    let mut rep = CheckReport::new();
    for r in res {
        let (g, b, a, t) = r?;
        rep.record(a == t, || {
            format!("g={g} b={b:?}: plancherel {} vs toprec {}", render(&a), render(&t))
        });
    }
    Ok(rep)
}

fn u_vectors(len: usize, lo: &[i64], bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &l in lo.iter().take(len) {
        out = out
            .into_iter()
            .flat_map(|v| {
                (l..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Argument vectors for a closed form with `u_i <= bound`. The symmetric
/// n-point family uses weakly increasing vectors of every length
/// `1..=max_n` with entries `<= npoint_bound`.
pub fn closed_form_arguments(c: &ClosedForm, bound: i64, npoint_bound: i64, max_n: usize) -> Vec<Vec<i64>> {
    match c.arity {
        Some(len) => {
            let e = c.evens.unwrap_or(len);
            let lo: Vec<i64> = (0..len).map(|i| if i < e { 0 } else { 1 }).collect();
            u_vectors(len, &lo, bound)
        }
        None => (1..=max_n)
            .flat_map(|len| {
                stationary_vectors(len, npoint_bound as u32, npoint_bound as u32 * len as u32)
                    .into_iter()
                    .map(|v| v.into_iter().map(|x| x as i64).collect())
            })
            .collect(),
    }
}

/// Every closed formula against the Plancherel oracle, and for `g <= 1` also
/// against the recursion.
pub fn check_closed_forms(pl: &Plancherel, tr: &TopRec, bound: i64, npoint_bound: i64, max_n: usize) -> Result<CheckReport> {
    let mut cases = Vec::new();
    for c in CLOSED_FORMS {
        for u in closed_form_arguments(c, bound, npoint_bound, max_n) {
            cases.push((c, u));
        }
    }
    let res: Vec<Result<(&ClosedForm, Vec<i64>, Rat, Rat, Option<Rat>)>> = cases
        .into_par_iter()
        .map(|(c, u)| {
            let want = c.eval(&u)?;
            let b = c.powers(&u).expect("arguments in range");
            let a = pl.connected_stationary(c.g, &b);
            let t = if c.g <= 1 { Some(tr.stationary(c.g, &b)?) } else { None };
            Ok((c, u, want, a, t))
        })
        .collect();
    let mut rep = CheckReport::new();
    for r in res {
        let (c, u, want, a, t) = r?;
        let ok = a == want && t.as_ref().is_none_or(|t| *t == want);
        rep.record(ok, || {
            format!(
                "{} u={u:?}: formula {} plancherel {} toprec {}",
                c.name,
                render(&want),
                render(&a),
                t.as_ref().map(render).unwrap_or_else(|| "-".into())
            )
        });
    }
    Ok(rep)
}

/// `sum_{|lambda| = d} (dim lambda / d!)^2 = 1/d!`.
pub fn check_vacuum(pl: &Plancherel, max_d: u32) -> CheckReport {
    let mut rep = CheckReport::new();
    for d in 0..=max_d {
        let v = pl.vacuum(d);
        let want = Rat::from_integer(1.into()) / big(factorial(d as u64));
        rep.record(v == want, || format!("vacuum at d={d}: {}", render(&v)));
    }
    rep
}

/// String, dilaton and divisor equations on stationary brackets of total
/// power `<= max_weight` (including the removed insertion). Left sides are
/// evaluated with one recursion step on the added or a stationary insertion
/// before any reduction; divisor left sides are also compared against the
/// partition sums.
pub fn check_gw_equations(pl: &Plancherel, tr: &TopRec, max_weight: u32, max_n: usize) -> Result<CheckReport> {
    let mut cases = Vec::new();
    for g in 0..=1u32 {
        for n in 1..=max_n {
            for b in stationary_vectors(n, max_weight, max_weight) {
                cases.push((g, b));
            }
        }
    }
    let res: Vec<Result<CheckReport>> = cases
        .into_par_iter()
        .map(|(g, b)| gw_equations_at(pl, tr, g, &b, max_weight))
        .collect();
    let mut rep = CheckReport::new();
    for r in res {
        rep.merge(r?);
    }
    Ok(rep)
}

fn gw_equations_at(pl: &Plancherel, tr: &TopRec, g: u32, b: &[u32], max_weight: u32) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let n = b.len();
    let weight: u32 = b.iter().sum();
    let base: Vec<Insertion> = b.iter().map(|&x| Insertion::point(x)).collect();
    let lower = GWKey::new(g, base.clone());
    let d = lower.degree();
    let stable = d.is_some_and(|d| d > 0) || 2 * g as i64 - 2 + n as i64 > 0;
    let enough = g == 1 || n >= 2;
    // index of the last insertion, with the largest power, in the canonical order
    let top = n - 1;
    if !stable || !enough {
        return Ok(rep);
    }

    // string
    let mut ins = base.clone();
    ins.push(Insertion::unit(0));
    let key = GWKey::new(g, ins);
    if b[top] >= 1 {
        let idx = key.insertions.iter().position(|x| *x == Insertion::point(b[top])).unwrap();
        let lhs = tr.eval_recursion_first(&key, idx)?;
        let mut rhs = Rat::zero();
        for i in 0..n {
            if b[i] >= 1 {
                let mut c = b.to_vec();
                c[i] -= 1;
                rhs += tr.stationary(g, &c)?;
            }
        }
        rep.record(lhs == rhs, || format!("string at {key}: {} vs {}", render(&lhs), render(&rhs)));
    }

    // dilaton
    if weight < max_weight {
        let mut ins = base.clone();
        ins.push(Insertion::unit(1));
        let key = GWKey::new(g, ins);
        let idx = key.insertions.iter().position(|x| *x == Insertion::unit(1)).unwrap();
        let lhs = tr.eval_recursion_first(&key, idx)?;
        let rhs = int(2 * g as i64 - 2 + n as i64) * tr.eval(&lower)?;
        rep.record(lhs == rhs, || format!("dilaton at {key}: {} vs {}", render(&lhs), render(&rhs)));
    }

    // divisor
    if let (Some(d), true) = (d, b[top] >= 1) {
        let mut with0 = b.to_vec();
        with0.push(0);
        let key = GWKey::stationary(g, &with0);
        let idx = key.insertions.iter().position(|x| *x == Insertion::point(b[top])).unwrap();
        let lhs = tr.eval_recursion_first(&key, idx)?;
        let lhs_pl = pl.connected_stationary(g, &with0);
        let rhs = int(d as i64) * tr.eval(&lower)?;
        let rhs_pl = int(d as i64) * pl.connected_stationary(g, b);
        rep.record(lhs == rhs && lhs_pl == rhs_pl && lhs == lhs_pl, || {
            format!(
                "divisor at {key}: {} vs {} (partition sums {} vs {})",
                render(&lhs),
                render(&rhs),
                render(&lhs_pl),
                render(&rhs_pl)
            )
        });
    }
    Ok(rep)
}
