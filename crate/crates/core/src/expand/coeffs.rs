use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::quasi::{interpolate_quasi, QuasiPoly};
use super::transform::{m_to_p, n_to_m, prefactor_product};
use crate::eo::{Engine, Multidiff, PoleForm};
use crate::error::{Error, Result};
use crate::exact::{self, binomial, int, Rat};

/// `N^g_n(b)`: coefficient of `prod z_i^{b_i - 1} dz_i` at `z = 0`, over `prod b_i`.
pub fn n_value(w: &Multidiff, b: &[i64]) -> Rat {
    assert_eq!(b.len(), w.n as usize);
    assert!(b.iter().all(|&x| x >= 1), "N is indexed by positive integers");
    let funcs: Vec<_> = b
        .iter()
        .map(|&bi| move |f: PoleForm| f.coeff_at_zero((bi - 1) as u64) / int(bi))
        .collect();
    w.contract(&funcs)
}

/// `M^g_n(b) = prod_i res_{z_i = 0} x_i^{b_i} omega`, read directly off the pole forms.
pub fn m_value_residue(w: &Multidiff, b: &[i64]) -> Rat {
    assert_eq!(b.len(), w.n as usize);
    if b.iter().any(|&x| x <= 0) {
        return Rat::zero();
    }
    // x^b = sum_l C(b, l) z^{b - 2l}; pairs with z^{2l - b - 1} of the form
    let funcs: Vec<_> = b
        .iter()
        .map(|&bi| {
            move |f: PoleForm| -> Rat {
                (0..=bi)
                    .filter(|&l| 2 * l - bi - 1 >= 0)
                    .map(|l| exact::big(binomial(bi, l)) * f.coeff_at_zero((2 * l - bi - 1) as u64))
                    .sum()
            }
        })
        .collect();
    w.contract(&funcs)
}

/// `M(b) = sum_{l_i in (b_i/2, b_i]} N(2l - b) prod (2l_i - b_i) C(b_i, l_i)`.
pub fn m_from_n<F>(n_of: F, b: &[i64]) -> Rat
where
    F: Fn(&[i64]) -> Rat,
{
    if b.iter().any(|&x| x <= 0) {
        return Rat::zero();
    }
    let ranges: Vec<Vec<i64>> = b.iter().map(|&bi| (bi / 2 + 1..=bi).collect()).collect();
    let mut acc = Rat::zero();
    let mut idx = vec![0usize; b.len()];
    loop {
        let l: Vec<i64> = idx.iter().zip(&ranges).map(|(&i, r)| r[i]).collect();
        let arg: Vec<i64> = l.iter().zip(b).map(|(&li, &bi)| 2 * li - bi).collect();
        let w: Rat = l
            .iter()
            .zip(b)
            .map(|(&li, &bi)| exact::big(binomial(bi, li)) * int(2 * li - bi))
            .product();
        let v = n_of(&arg);
        if !v.is_zero() {
            acc += w * v;
        }
        let mut j = 0;
        loop {
            if j == b.len() {
                return acc;
            }
            idx[j] += 1;
            if idx[j] < ranges[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// `omega^g_n` together with its fitted N-form and transformed m-form.
pub struct Expansion {
    pub omega: Arc<Multidiff>,
    pub nq: QuasiPoly,
    pub mq: QuasiPoly,
}

impl Expansion {
    pub fn compute(engine: &Engine, g: u32, n: u32) -> Result<Self> {
        let omega = engine.omega(g, n)?;
        let nq = interpolate_quasi(g, n, |b| Ok(n_value(&omega, b)))?;
        let mq = n_to_m(&nq);
        Ok(Expansion { omega, nq, mq })
    }

    pub fn g(&self) -> u32 {
        self.nq.g
    }

    pub fn n(&self) -> u32 {
        self.nq.n
    }

    pub fn n_value(&self, b: &[i64]) -> Rat {
        n_value(&self.omega, b)
    }

    /// `M^g_n(b)` by the binomial sum over exact `N` values and by the
    /// monomial transform; the two must agree.
    pub fn m_value(&self, b: &[i64]) -> Result<Rat> {
        if b.iter().any(|&x| x <= 0) {
            return Ok(Rat::zero());
        }
        let direct = m_from_n(|a| n_value(&self.omega, a), b);
        let via = prefactor_product(b) * self.mq.eval(b);
        if direct != via {
            return Err(Error::Check(format!(
                "N to M routes disagree at {b:?}: {} vs {}",
                exact::render(&direct),
                exact::render(&via)
            )));
        }
        Ok(direct)
    }

    pub fn pq(&self) -> QuasiPoly {
        m_to_p(&self.mq)
    }

    pub fn table(&self, bs: &[Vec<i64>]) -> Result<CoeffTable> {
        let mut t = CoeffTable::new(self.g(), self.n());
        for b in bs {
            t.entries.insert(b.clone(), self.m_value(b)?);
        }
        Ok(t)
    }
}

/// All vectors of `n` positive integers with entries `<= max_entry` and sum `<= max_sum`.
pub fn b_vectors(n: usize, max_entry: i64, max_sum: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, me: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let rest = (n - cur.len() - 1) as i64;
        for v in 1..=me.min(left - rest) {
            cur.push(v);
            rec(n, me, left - v, cur, out);
            cur.pop();
        }
    }
    rec(n, max_entry, max_sum, &mut cur, &mut out);
    out
}

/// Coefficients `M^g_n(b)` keyed by `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub g: u32,
    pub n: u32,
    pub entries: BTreeMap<Vec<i64>, Rat>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    b: Vec<i64>,
    #[serde(with = "exact::as_text")]
    value: Rat,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    g: u32,
    n: u32,
    entries: Vec<EntryJson>,
}

impl CoeffTable {
    pub fn new(g: u32, n: u32) -> Self {
        CoeffTable {
            g,
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, b: &[i64]) -> Option<&Rat> {
        self.entries.get(b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson {
            g: self.g,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(b, v)| EntryJson {
                    b: b.clone(),
                    value: v.clone(),
                })
                .collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> std::result::Result<Self, String> {
        let t: TableJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        Ok(CoeffTable {
            g: t.g,
            n: t.n,
            entries: t.entries.into_iter().map(|e| (e.b, e.value)).collect(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("g,n,b,value\n");
        for (b, v) in &self.entries {
            let bs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{},{},\"{}\",{}\n", self.g, self.n, bs.join(","), exact::render(v)));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_b_vectors() {
        let v = b_vectors(2, 3, 4);
        assert_eq!(v, vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 1], vec![2, 2], vec![3, 1]]);
    }

    #[test]
    fn binomial_sum_of_constant() {
        // N = 1 everywhere: M(b) = sum_{l > b/2} (2l - b) C(b, l)
        assert_eq!(m_from_n(|_| int(1), &[3]), int(6));
        assert_eq!(m_from_n(|_| int(1), &[2]), int(2));
    }

    #[test]
    fn table_json_roundtrip() {
        let mut t = CoeffTable::new(0, 3);
        t.entries.insert(vec![3, 2, 2], int(24));
        let j = t.to_json();
        assert_eq!(j["entries"][0]["value"], "24");
        assert_eq!(CoeffTable::from_json(&j).unwrap(), t);
    }
}
