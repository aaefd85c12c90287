//! Stationary invariants from the Plancherel measure on partitions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{self, big, factorial, int, rat, Rat};

/// Weakly decreasing positive parts, in lexicographically decreasing order.
pub fn partitions(d: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the irreducible representation of `S_|lambda|`, by hook lengths.
pub fn dim_partition(lambda: &[u32]) -> BigInt {
    let d: u32 = lambda.iter().sum();
    let mut hooks = BigInt::one();
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&r| r > j).count() as u32;
            hooks *= arm + leg + 1;
        }
    }
    factorial(d as u64) / hooks
}

/// `p_k(lambda) = sum_i [(lambda_i - i + 1/2)^k - (-i + 1/2)^k] + (1 - 2^-k) zeta(-k)`.
pub fn shifted_power_sum(k: u32, lambda: &[u32]) -> Rat {
    assert!(k >= 1);
    let mut s = exact::pk_constant(k as usize);
    for (i, &l) in lambda.iter().enumerate() {
        let i = i as i64 + 1;
        let a = rat(2 * (l as i64 - i) + 1, 2);
        let b = rat(-2 * i + 1, 2);
        s += exact::pow(&a, k) - exact::pow(&b, k);
    }
    s
}

struct Level {
    /// `(dim lambda)^2`.
    dims2: Vec<BigInt>,
    /// `p_k(lambda) / k!` per `k` as integer numerators over a common
    /// denominator, filled on demand.
    scaled: HashMap<u32, Arc<(Vec<BigInt>, BigInt)>>,
    parts: Vec<Vec<u32>>,
}

/// Memoized partition sums.
#[derive(Default)]
pub struct Plancherel {
    levels: Mutex<HashMap<u32, Level>>,
    sums: Mutex<HashMap<(u32, Vec<u32>), Rat>>,
    moment_memo: Mutex<SeriesMemo>,
    cumulant_memo: Mutex<SeriesMemo>,
}

type SeriesMemo = HashMap<(Vec<u32>, usize), Arc<Vec<Rat>>>;

impl Plancherel {
    pub fn new() -> Self {
        Plancherel::default()
    }

    fn with_level<R>(&self, d: u32, f: impl FnOnce(&mut Level) -> R) -> R {
        let mut g = self.levels.lock().unwrap();
        let level = g.entry(d).or_insert_with(|| {
            let parts = partitions(d);
            let dims2 = parts.iter().map(|l| dim_partition(l).pow(2)).collect();
            Level {
                dims2,
                scaled: HashMap::new(),
                parts,
            }
        });
        f(level)
    }

    fn scaled(&self, d: u32, k: u32) -> Arc<(Vec<BigInt>, BigInt)> {
        self.with_level(d, |lv| {
            let parts = &lv.parts;
            lv.scaled
                .entry(k)
                .or_insert_with(|| {
                    let kf = big(factorial(k as u64));
                    let vals: Vec<Rat> = parts.iter().map(|l| shifted_power_sum(k, l) / &kf).collect();
                    let den = exact::lcm_denoms(vals.iter());
                    let nums = vals
                        .iter()
                        .map(|v| (v * Rat::from_integer(den.clone())).to_integer())
                        .collect();
                    Arc::new((nums, den))
                })
                .clone()
        })
    }

    /// `sum_{|lambda| = d} (dim lambda / d!)^2`.
    pub fn vacuum(&self, d: u32) -> Rat {
        let s: BigInt = self.with_level(d, |lv| lv.dims2.iter().sum());
        let f = factorial(d as u64);
        Rat::new(s, &f * &f)
    }

    /// `<prod tau_{b_i}(omega)>^._d`, allowing disconnected domains.
    pub fn disconnected_stationary(&self, d: u32, b: &[u32]) -> Rat {
        let mut key = (d, b.to_vec());
        key.1.sort();
        if let Some(v) = self.sums.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = self.partition_sum(d, &key.1);
        self.sums.lock().unwrap().insert(key, v.clone());
        v
    }

    fn partition_sum(&self, d: u32, b: &[u32]) -> Rat {
        let mut acc: Vec<BigInt> = self.with_level(d, |lv| lv.dims2.clone());
        let f = factorial(d as u64);
        let mut den = &f * &f;
        for &bi in b {
            let s = self.scaled(d, bi + 1);
            for (a, v) in acc.iter_mut().zip(s.0.iter()) {
                *a *= v;
            }
            den *= &s.1;
        }
        Rat::new(acc.into_iter().sum(), den)
    }

    /// `e^{-q} sum_d q^d <prod tau_{b_i}>^._d` up to `q^dmax`, for sorted `b`.
    fn moments(&self, b: &[u32], dmax: usize) -> Arc<Vec<Rat>> {
        let key = (b.to_vec(), dmax);
        if let Some(v) = self.moment_memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let exp_neg: Vec<Rat> = (0..=dmax)
            .map(|j| int(exact::sign(j as i64)) / big(factorial(j as u64)))
            .collect();
        let raw: Vec<Rat> = (0..=dmax as u32).map(|d| self.disconnected_stationary(d, b)).collect();
        let v = Arc::new(truncated_mul(&raw, &exp_neg, dmax));
        self.moment_memo.lock().unwrap().insert(key, v.clone());
        v
    }

    /// Connected part of [`Self::moments`], by `C_S = E_S - sum C_T E_{S \ T}`
    /// over proper subsets `T` containing the first insertion.
    fn cumulant(&self, b: &[u32], dmax: usize) -> Arc<Vec<Rat>> {
        let key = (b.to_vec(), dmax);
        if let Some(v) = self.cumulant_memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let mut c = (*self.moments(b, dmax)).clone();
        let n = b.len();
        for mask in 0..(1usize << (n - 1)) - 1 {
            let mut t = vec![b[0]];
            let mut rest = Vec::new();
            for i in 1..n {
                if mask >> (i - 1) & 1 == 1 {
                    t.push(b[i]);
                } else {
                    rest.push(b[i]);
                }
            }
            let prod = truncated_mul(&self.cumulant(&t, dmax), &self.moments(&rest, dmax), dmax);
            for (x, y) in c.iter_mut().zip(prod) {
                *x -= y;
            }
        }
        let v = Arc::new(c);
        self.cumulant_memo.lock().unwrap().insert(key, v.clone());
        v
    }

    /// Connected `<prod tau_{b_i}(omega)>^g`: the coefficient of `q^d` in the
    /// cumulant of the normalized series `e^{-q} sum_d q^d <prod_{i in T} tau_{b_i}>^._d`,
    /// with `2d = sum b + 2 - 2g`.
    pub fn connected_stationary(&self, g: u32, b: &[u32]) -> Rat {
        let total: i64 = b.iter().map(|&x| x as i64).sum::<i64>() + 2 - 2 * g as i64;
        if total < 0 || total % 2 != 0 || b.is_empty() {
            return Rat::zero();
        }
        let dmax = (total / 2) as usize;
        let mut sorted = b.to_vec();
        sorted.sort();
        self.cumulant(&sorted, dmax)[dmax].clone()
    }

    /// The same value from the explicit sum over set partitions of the
    /// insertions with weights `(-1)^{m-1} (m-1)!`.
    pub fn connected_by_set_partitions(&self, g: u32, b: &[u32]) -> Rat {
        let total: i64 = b.iter().map(|&x| x as i64).sum::<i64>() + 2 - 2 * g as i64;
        if total < 0 || total % 2 != 0 || b.is_empty() {
            return Rat::zero();
        }
        let dmax = (total / 2) as usize;
        let n = b.len();
        let sub = |mask: usize| -> Vec<u32> {
            let mut v: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| b[i]).collect();
            v.sort();
            v
        };
        let mut acc = Rat::zero();
        for blocks in set_partitions(n) {
            let m = blocks.len();
            let mut prod = vec![Rat::zero(); dmax + 1];
            prod[0] = Rat::one();
            for &blk in &blocks {
                prod = truncated_mul(&prod, &self.moments(&sub(blk), dmax), dmax);
            }
            let coef = big(factorial(m as u64 - 1)) * int(exact::sign(m as i64 - 1));
            acc += coef * &prod[dmax];
        }
        acc
    }
}

fn truncated_mul(a: &[Rat], b: &[Rat], dmax: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); dmax + 1];
    for (i, x) in a.iter().enumerate().take(dmax + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(dmax + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Set partitions of `{0..n}` as lists of block bitmasks.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for k in 0..blocks.len() {
            blocks[k] |= 1 << i;
            rec(i + 1, n, blocks, out);
            blocks[k] &= !(1 << i);
        }
        blocks.push(1 << i);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hook_lengths() {
        assert_eq!(dim_partition(&[1]), 1.into());
        assert_eq!(dim_partition(&[2, 1]), 2.into());
        assert_eq!(dim_partition(&[3, 2]), 5.into());
        let s: num_bigint::BigInt = partitions(4).iter().map(|l| dim_partition(l).pow(2)).sum();
        assert_eq!(s, 24.into());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|d| partitions(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn power_sums() {
        assert_eq!(shifted_power_sum(1, &[1]), rat(23, 24));
        assert_eq!(shifted_power_sum(3, &[]), rat(7, 960));
        assert_eq!(shifted_power_sum(2, &[1, 1]), int(-2));
    }

    #[test]
    fn bell_numbers() {
        let c: Vec<usize> = (1..7).map(|n| set_partitions(n).len()).collect();
        assert_eq!(c, vec![1, 2, 5, 15, 52, 203]);
    }
}
