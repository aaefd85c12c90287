//! Exact polynomial interpolation on lower sets of tensor grids.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::mpoly::MPoly;
use crate::error::{Error, Result};
use crate::exact::{self, Rat};

/// Solves `A x = rhs` for square integer `A` by Bareiss fraction-free
/// elimination; `None` if `A` is singular.
pub fn solve_bareiss(a: &[Vec<BigInt>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let scale = exact::lcm_denoms(rhs.iter());
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            assert_eq!(row.len(), n);
            let mut v = row.clone();
            let b = r * Rat::from_integer(scale.clone());
            v.push(b.to_integer());
            v
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rat::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rat::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rat::from_integer(m[i][i].clone());
    }
    let s = Rat::from_integer(scale);
    Some(x.into_iter().map(|v| v / &s).collect())
}

/// Exponent vectors with total degree at most `d`, in graded order.
pub fn simplex(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum()).then(a.cmp(b)));
    out
}

/// Interpolation problem: a polynomial of total degree `<= degree` in
/// `nvars` variables `X_i = node_value(i, idx)`, where `idx` runs over a
/// lower set of the tensor grid.
pub struct Grid<'a> {
    pub nvars: usize,
    pub degree: u32,
    /// Integer coordinate of node `idx` in variable `i`; distinct in `idx`.
    pub node: &'a dyn Fn(usize, u32) -> i64,
}

impl Grid<'_> {
    fn coords(&self, idx: &[u32]) -> Vec<i64> {
        idx.iter().enumerate().map(|(i, &k)| (self.node)(i, k)).collect()
    }

    /// Fits the polynomial to `sample(idx)` on the simplex of grid indices and
    /// checks it on `extra` further points outside it.
    pub fn fit<S>(&self, sample: S, extra: usize) -> Result<MPoly>
    where
        S: Fn(&[u32]) -> Result<Rat>,
    {
        let monos = simplex(self.nvars, self.degree);
        let pts = monos.clone();
        let mut a = Vec::with_capacity(pts.len());
        let mut rhs = Vec::with_capacity(pts.len());
        for p in &pts {
            let x = self.coords(p);
            a.push(
                monos
                    .iter()
                    .map(|e| {
                        x.iter()
                            .zip(e)
                            .map(|(&xi, &ei)| BigInt::from(xi).pow(ei))
                            .product::<BigInt>()
                    })
                    .collect(),
            );
            rhs.push(sample(p)?);
        }
        let sol = solve_bareiss(&a, &rhs)
            .ok_or_else(|| Error::Check("interpolation system is singular".into()))?;
        let poly = MPoly::from_terms(self.nvars, monos.into_iter().zip(sol));
        for j in 0..extra {
            let idx: Vec<u32> = (0..self.nvars)
                .map(|i| self.degree + 1 + ((i + j) % 3) as u32)
                .collect();
            let x = self.coords(&idx);
            let want = sample(&idx)?;
            let got = poly.eval_ints(&x);
            if got != want {
                return Err(Error::Check(format!(
                    "interpolant misses validation point {x:?}: {} vs {}",
                    exact::render(&got),
                    exact::render(&want)
                )));
            }
        }
        Ok(poly)
    }
}

/// Largest absolute numerator, for diagnostics.
pub fn height(p: &MPoly) -> BigInt {
    p.terms()
        .values()
        .map(|c| c.numer().abs())
        .max()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn bareiss_small() {
        let a = vec![
            vec![BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3)],
        ];
        let x = solve_bareiss(&a, &[int(3), rat(1, 2)]).unwrap();
        assert_eq!(x, vec![rat(17, 10), rat(-2, 5)]);
        let sing = vec![vec![BigInt::from(1), BigInt::from(2)], vec![BigInt::from(2), BigInt::from(4)]];
        assert!(solve_bareiss(&sing, &[int(1), int(2)]).is_none());
    }

    #[test]
    fn recovers_polynomial() {
        let target = MPoly::from_terms(2, [(vec![2, 0], rat(1, 3)), (vec![1, 1], int(-2)), (vec![0, 0], int(7))]);
        let node = |_: usize, k: u32| 2 * k as i64 + 1;
        let g = Grid {
            nvars: 2,
            degree: 2,
            node: &node,
        };
        let fit = g
            .fit(|idx| Ok(target.eval_ints(&[node(0, idx[0]), node(1, idx[1])])), 3)
            .unwrap();
        assert_eq!(fit, target);
        assert!(g.fit(|idx| Ok(int((idx[0] as i64).pow(3))), 3).is_err());
    }
}
