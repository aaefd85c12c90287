//! Intersection numbers of psi classes on the moduli of curves.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::eo::checks::CheckReport;
use crate::exact::{int, rat, render, Rat};
use crate::expand::{top_degree, Form, QuasiPoly};

/// `(2m - 1)!!`, with `(-1)!! = 1`.
fn odd_double_factorial(m: i64) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * (2 * i - 1))
}

fn dimension_ok(g: u32, beta: &[u32]) -> bool {
    let n = beta.len() as i64;
    let s: i64 = beta.iter().map(|&b| b as i64).sum();
    2 * g as i64 - 2 + n > 0 && s == 3 * g as i64 - 3 + n
}

/// Memoized `<tau_{beta_1} ... tau_{beta_n}>_g`.
#[derive(Default)]
pub struct Psi {
    memo: Mutex<HashMap<(u32, Vec<u32>), Rat>>,
}

impl Psi {
    pub fn new() -> Self {
        Psi::default()
    }

    /// Zero unless `(g, n)` is stable and `sum beta = 3g - 3 + n`.
    pub fn intersection(&self, g: u32, beta: &[u32]) -> Rat {
        let mut key = beta.to_vec();
        key.sort_by(|a, b| b.cmp(a));
        if !dimension_ok(g, &key) {
            return Rat::zero();
        }
        if let Some(v) = self.memo.lock().unwrap().get(&(g, key.clone())) {
            return v.clone();
        }
        let v = self.compute(g, &key);
        self.memo.lock().unwrap().insert((g, key), v.clone());
        v
    }

    fn compute(&self, g: u32, beta: &[u32]) -> Rat {
        let n = beta.len();
        if g == 0 && n == 3 {
            return Rat::one();
        }
        if g == 1 && n == 1 {
            return rat(1, 24);
        }
        let stable_after = 2 * g as i64 - 2 + n as i64 - 1 > 0;
        if stable_after {
            if let Some(p) = beta.iter().position(|&b| b == 0) {
                let mut rest = beta.to_vec();
                rest.remove(p);
                let mut acc = Rat::zero();
                for j in 0..rest.len() {
                    if rest[j] >= 1 {
                        let mut c = rest.clone();
                        c[j] -= 1;
                        acc += self.intersection(g, &c);
                    }
                }
                return acc;
            }
            if let Some(p) = beta.iter().position(|&b| b == 1) {
                let mut rest = beta.to_vec();
                rest.remove(p);
                return int(2 * g as i64 - 2 + rest.len() as i64) * self.intersection(g, &rest);
            }
        }
        self.dvv(g, beta)
    }

    /// One step of the Dijkgraaf-Verlinde-Verlinde recursion on the largest
    /// entry of `beta`, without string or dilaton reduction at the top.
    pub fn dvv(&self, g: u32, beta: &[u32]) -> Rat {
        let mut beta = beta.to_vec();
        beta.sort_by(|a, b| b.cmp(a));
        if !dimension_ok(g, &beta) {
            return Rat::zero();
        }
        let k = beta[0] as i64;
        if k == 0 {
            return self.intersection(g, &beta);
        }
        let rest = &beta[1..];
        let mut acc = Rat::zero();
        for j in 0..rest.len() {
            let dj = rest[j] as i64;
            let coef = Rat::new(odd_double_factorial(k + dj), odd_double_factorial(dj));
            let mut c = rest.to_vec();
            c[j] = (k + dj - 1) as u32;
            acc += coef * self.intersection(g, &c);
        }
        let half = rat(1, 2);
        for r in 0..=k - 2 {
            let s = k - 2 - r;
            let coef = Rat::from_integer(odd_double_factorial(r + 1) * odd_double_factorial(s + 1)) * &half;
            if g >= 1 {
                let mut c = vec![r as u32, s as u32];
                c.extend_from_slice(rest);
                acc += &coef * self.intersection(g - 1, &c);
            }
            for mask in 0..(1usize << rest.len()) {
                let mut i = vec![r as u32];
                let mut jv = vec![s as u32];
                for (t, &x) in rest.iter().enumerate() {
                    if mask >> t & 1 == 1 {
                        i.push(x);
                    } else {
                        jv.push(x);
                    }
                }
                for g1 in 0..=g {
                    let a = self.intersection(g1, &i);
                    if !a.is_zero() {
                        acc += &coef * a * self.intersection(g - g1, &jv);
                    }
                }
            }
        }
        acc / Rat::from_integer(odd_double_factorial(k + 1))
    }
}

/// Exponent vectors of total degree `d` in `n` variables.
fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in monomials(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Top-degree coefficients of sector `k`: `[1 + (-1)^{k+n}] 2^{-(2g-2+n)} <psi^beta>`
/// for the m-form and `2^g <psi^beta>` for the p-form (on sectors with
/// `k = n mod 2`; the others must vanish).
pub fn check_top_coefficients(psi: &Psi, q: &QuasiPoly, k: usize) -> CheckReport {
    let (g, n) = (q.g, q.n);
    let d = top_degree(g, n);
    let sector = q.sector(k);
    let live = (k + n as usize) % 2 == 0;
    let mut rep = CheckReport::new();
    for beta in monomials(n as usize, d) {
        let v = psi.intersection(g, &beta);
        let want = match (q.form, live) {
            (_, false) => Rat::zero(),
            (Form::M, true) => int(2) * v / int(2).pow(2 * g as i32 - 2 + n as i32),
            (Form::P, true) => int(2).pow(g as i32) * v,
            (Form::N, true) => panic!("top coefficients are stated for the m- and p-forms"),
        };
        let got = sector.coeff(&beta);
        rep.record(got == want, || {
            format!(
                "{:?}-form (g,n,k)=({g},{n},{k}) beta={beta:?}: {} vs {}",
                q.form,
                render(&got),
                render(&want)
            )
        });
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_numbers() {
        let p = Psi::new();
        assert_eq!(p.intersection(0, &[0, 0, 0]), int(1));
        assert_eq!(p.intersection(1, &[1]), rat(1, 24));
        assert_eq!(p.intersection(2, &[4]), rat(1, 1152));
        assert_eq!(p.intersection(0, &[1, 0, 0, 0]), int(1));
        assert_eq!(p.intersection(0, &[1, 1, 0, 0]), int(0));
        assert_eq!(monomials(3, 2).len(), 6);
    }
}
