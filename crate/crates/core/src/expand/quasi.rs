use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::interp::Grid;
use super::mpoly::MPoly;
use crate::eo::is_stable;
use crate::error::{Error, Result};
use crate::exact::Rat;

/// Which family of sector polynomials a [`QuasiPoly`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `N^g_{n,k}` in the `b_i`, even in every variable.
    N,
    /// `m^g_{n,k}` in the `b_i`.
    M,
    /// `p^g_{n,k}` in the `u_i`.
    P,
}

/// One polynomial per parity sector `k = 0..=n`. In sector `k` the first `k`
/// variables are the odd ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPoly {
    pub g: u32,
    pub n: u32,
    pub form: Form,
    pub sectors: Vec<MPoly>,
}

#[derive(Serialize, Deserialize)]
struct SectorJson {
    k: usize,
    terms: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct QuasiJson {
    g: u32,
    n: u32,
    form: Form,
    sectors: Vec<SectorJson>,
}

/// Permutation putting odd entries first (stable), and the number of odd entries.
pub fn parity_order(b: &[i64]) -> (usize, Vec<usize>) {
    let mut perm: Vec<usize> = (0..b.len()).filter(|&i| b[i].rem_euclid(2) == 1).collect();
    let k = perm.len();
    perm.extend((0..b.len()).filter(|&i| b[i].rem_euclid(2) == 0));
    (k, perm)
}

/// Degree `3g - 3 + n` of the sector polynomials.
pub fn top_degree(g: u32, n: u32) -> u32 {
    3 * g + n - 3
}

impl QuasiPoly {
    pub fn zero(g: u32, n: u32, form: Form) -> Self {
        QuasiPoly {
            g,
            n,
            form,
            sectors: vec![MPoly::zero(n as usize); n as usize + 1],
        }
    }

    pub fn sector(&self, k: usize) -> &MPoly {
        &self.sectors[k]
    }

    /// Value at `b` for the N- and m-forms, choosing the sector by parity.
    pub fn eval(&self, b: &[i64]) -> Rat {
        assert_eq!(b.len(), self.n as usize);
        assert!(self.form != Form::P, "p-form sectors are not chosen by parity");
        let (k, perm) = parity_order(b);
        let x: Vec<i64> = perm.iter().map(|&i| b[i]).collect();
        self.sectors[k].eval_ints(&x)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = QuasiJson {
            g: self.g,
            n: self.n,
            form: self.form,
            sectors: self
                .sectors
                .iter()
                .enumerate()
                .map(|(k, p)| SectorJson { k, terms: p.to_json() })
                .collect(),
        };
        serde_json::to_value(q).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> std::result::Result<Self, String> {
        let q: QuasiJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        let mut out = QuasiPoly::zero(q.g, q.n, q.form);
        for s in q.sectors {
            if s.k > q.n as usize {
                return Err(format!("sector {} out of range", s.k));
            }
            out.sectors[s.k] = MPoly::from_json(q.n as usize, &s.terms)?;
        }
        Ok(out)
    }

    /// Variable names used for rendering.
    pub fn names(&self) -> Vec<String> {
        let v = if self.form == Form::P { "u" } else { "b" };
        (1..=self.n).map(|i| format!("{v}{i}")).collect()
    }
}

impl fmt::Display for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        for (k, p) in self.sectors.iter().enumerate() {
            writeln!(f, "g={} n={} k={}: {}", self.g, self.n, k, p.display_with(&names))?;
        }
        Ok(())
    }
}

/// Fits `N^g_n` sector by sector from point values.
///
/// Sectors with `k` of the wrong parity are spot-checked to vanish and stored
/// as zero. The others are fitted in the `b_i^2` on odd/even grids and
/// validated on `n + 1` points off the fitting simplex.
pub fn interpolate_quasi<S>(g: u32, n: u32, sample: S) -> Result<QuasiPoly>
where
    S: Fn(&[i64]) -> Result<Rat> + Sync,
{
    if !is_stable(g, n) {
        return Err(Error::Unsupported(format!("(g, n) = ({g}, {n}) is not stable")));
    }
    let nv = n as usize;
    let d = top_degree(g, n);
    let sectors: Result<Vec<MPoly>> = (0..=nv)
        .into_par_iter()
        .map(|k| {
            let bval = move |i: usize, idx: u32| -> i64 {
                if i < k {
                    2 * idx as i64 + 1
                } else {
                    2 * idx as i64 + 2
                }
            };
            if (k + nv) % 2 == 1 {
                for j in 0..3u32 {
                    let b: Vec<i64> = (0..nv).map(|i| bval(i, j + i as u32 % 2)).collect();
                    let v = sample(&b)?;
                    if !v.is_zero() {
                        return Err(Error::Check(format!("sector k = {k} should vanish but N{b:?} = {v}")));
                    }
                }
                return Ok(MPoly::zero(nv));
            }
            let node = move |i: usize, idx: u32| bval(i, idx).pow(2);
            let grid = Grid {
                nvars: nv,
                degree: d,
                node: &node,
            };
            let fit = grid.fit(
                |idx| {
                    let b: Vec<i64> = idx.iter().enumerate().map(|(i, &j)| bval(i, j)).collect();
                    sample(&b)
                },
                nv + 1,
            )?;
            Ok(MPoly::from_terms(
                nv,
                fit.terms()
                    .iter()
                    .map(|(e, c)| (e.iter().map(|x| 2 * x).collect(), c.clone())),
            ))
        })
        .collect();
    Ok(QuasiPoly {
        g,
        n,
        form: Form::N,
        sectors: sectors?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn parity_ordering() {
        assert_eq!(parity_order(&[2, 3, 4, 1]), (2, vec![1, 3, 0, 2]));
    }

    #[test]
    fn fits_synthetic_quasi_polynomial() {
        // odd sector k = 1 of a (1,1)-shaped function
        let q = interpolate_quasi(1, 1, |b| {
            Ok(if b[0] % 2 == 1 {
                (int(b[0] * b[0]) - int(3)) * rat(1, 48)
            } else {
                Rat::zero()
            })
        })
        .unwrap();
        assert!(q.sectors[0].is_zero());
        assert_eq!(q.eval(&[5]), rat(22, 48));
        assert_eq!(QuasiPoly::from_json(&q.to_json()).unwrap(), q);
    }
}
