use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;

use super::multidiff::{excess, multisets, Kind, Multidiff, PoleForm, Sheet};
use crate::curve::{self, default_truncation, SpectralCurve, BRANCHES};
use crate::error::{Error, Result};
use crate::exact::{binomial, int, Rat};
use crate::series::{Center, LocalSeries};

/// Memoizing evaluator of the recursion.
///
/// Each `(g, n)` is computed with the curve truncation
/// `max(floor, 6g - 5 + 2n, 1)`, where `floor` defaults to 1.
#[derive(Debug)]
pub struct Engine {
    floor: usize,
    fixed: Option<usize>,
    memo: Mutex<HashMap<(u32, u32), Arc<Multidiff>>>,
    curves: Mutex<HashMap<usize, Arc<SpectralCurve>>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

pub fn is_stable(g: u32, n: u32) -> bool {
    2 * g as i64 - 2 + n as i64 > 0
}

/// `6g - 4 + 2n`, the largest pole order of `omega^g_n`.
pub fn max_pole_order(g: u32, n: u32) -> u32 {
    (6 * g as i64 - 4 + 2 * n as i64) as u32
}

/// `2(3g - 3 + n)`, the largest total excess over all slots.
pub fn max_total_excess(g: u32, n: u32) -> u32 {
    (2 * (3 * g as i64 - 3 + n as i64)) as u32
}

impl Engine {
    pub fn new() -> Self {
        Engine::with_truncation_floor(1)
    }

    pub fn with_truncation_floor(floor: usize) -> Self {
        Engine {
            floor: floor.max(1),
            fixed: None,
            memo: Mutex::new(HashMap::new()),
            curves: Mutex::new(HashMap::new()),
        }
    }

    /// Uses the curve `y_N` for every `(g, n)`, even where `N` is too small
    /// for the result to be exact.
    pub fn with_fixed_truncation(big_n: usize) -> Self {
        Engine {
            fixed: Some(big_n.max(1)),
            ..Engine::new()
        }
    }

    pub fn truncation_for(&self, g: u32, n: u32) -> usize {
        self.fixed.unwrap_or_else(|| default_truncation(g, n).max(self.floor))
    }

    pub fn curve(&self, big_n: usize) -> Arc<SpectralCurve> {
        let mut c = self.curves.lock().unwrap();
        c.entry(big_n)
            .or_insert_with(|| Arc::new(SpectralCurve::new(big_n)))
            .clone()
    }

    pub fn omega(&self, g: u32, n: u32) -> Result<Arc<Multidiff>> {
        if n == 0 {
            return Err(Error::Unsupported("multidifferentials need n >= 1".into()));
        }
        if (g, n) == (0, 1) {
            return Ok(Arc::new(Multidiff::special(Kind::W01)));
        }
        if (g, n) == (0, 2) {
            return Ok(Arc::new(Multidiff::special(Kind::W02)));
        }
        if let Some(m) = self.memo.lock().unwrap().get(&(g, n)) {
            return Ok(m.clone());
        }
        let chi = 2 * g as i64 - 2 + n as i64;
        for g1 in 0..=g {
            for n1 in 1..=n {
                if is_stable(g1, n1) && (2 * g1 as i64 - 2 + n1 as i64) < chi {
                    self.omega(g1, n1)?;
                }
            }
        }
        if g >= 1 {
            self.omega(g - 1, n + 1)?;
        }
        let curve = self.curve(self.truncation_for(g, n));
        let w = Arc::new(self.compute(&curve, g, n)?);
        Ok(self
            .memo
            .lock()
            .unwrap()
            .entry((g, n))
            .or_insert(w)
            .clone())
    }

    fn cached(&self, g: u32, n: u32) -> Arc<Multidiff> {
        self.omega(g, n).expect("dependency computed before use")
    }

    fn compute(&self, curve: &SpectralCurve, g: u32, nt: u32) -> Result<Multidiff> {
        let s = nt as usize - 1;
        let bt = max_pole_order(g, nt) as i64;
        let et = max_total_excess(g, nt);
        let trunc_f = bt + 1;
        let mut found: BTreeMap<Vec<PoleForm>, Rat> = BTreeMap::new();
        let subsets = multisets(s, et + 1);

        for alpha in BRANCHES {
            let kernel = curve.kernel_slice(alpha, bt + 2);
            let tables = FactorTables::build(self, g, nt, alpha, trunc_f)?;
            let rows: Vec<Result<Vec<(Vec<PoleForm>, Rat)>>> = subsets
                .par_iter()
                .map(|set| {
                    let q = tables.bracket_recursion(set)?;
                    let Some(q) = q else { return Ok(Vec::new()) };
                    let mut out = Vec::new();
                    let room = et + 1 - excess(set);
                    for m in 1..=(room as i64 + 1) {
                        let k = &kernel.forms[(m - 1) as usize];
                        let v = k.product_coeff(&q, -1)?;
                        let mut key = set.clone();
                        key.push(PoleForm::new(alpha, (m + 1) as u32));
                        key.sort();
                        out.push((key, v));
                    }
                    Ok(out)
                })
                .collect();
            for r in rows {
                for (key, v) in r? {
                    match found.get(&key) {
                        Some(prev) if *prev != v => {
                            return Err(Error::Check(format!(
                                "omega^{g}_{nt} is not symmetric at {key:?}: {prev} vs {v}"
                            )))
                        }
                        Some(_) => {}
                        None => {
                            found.insert(key, v);
                        }
                    }
                }
            }
        }
        for (k, v) in &found {
            if excess(k) > et && !v.is_zero() {
                return Err(Error::Check(format!(
                    "omega^{g}_{nt} exceeds its pole bound at {k:?}"
                )));
            }
        }
        found.retain(|k, v| excess(k) <= et && !v.is_zero());
        Ok(Multidiff::from_canonical(g, nt, found))
    }
}

/// Bergmann kernel `B(z, w)` expanded for `z` near `alpha` as a series in
/// `t = z - alpha`, coefficient of the pole form `f` in `w`.
pub(crate) fn bergmann_factor(f: PoleForm, sheet: Sheet, alpha: i64, trunc: i64) -> LocalSeries {
    let c = Center::at(alpha);
    if f.alpha() != alpha {
        return LocalSeries::zero(c, 0, trunc.max(0));
    }
    let k = f.order as i64;
    match sheet {
        Sheet::Same => LocalSeries::monomial(c, int(k - 1), k - 2, trunc),
        Sheet::Swapped => {
            // -(k-1) (1/z - alpha)^{k-2} / z^2
            let r = crate::series::RationalFn::z_pow(-1)
                .sub(&crate::series::RationalFn::constant(int(alpha)))
                .pow((k - 2) as u32)
                .mul(&crate::series::RationalFn::z_pow(-2))
                .scale(&int(-(k - 1)));
            r.laurent_at(&c, trunc).expect("regular at the branch point")
        }
    }
}

/// Slot-evaluated lower invariants at one branch point.
pub(crate) struct FactorTables {
    pub alpha: i64,
    pub trunc: i64,
    pub g: u32,
    same: HashMap<(u32, Vec<PoleForm>), LocalSeries>,
    swapped: HashMap<(u32, Vec<PoleForm>), LocalSeries>,
    /// `omega^{g-1}_{|K|+2}(z, z', K)` for the recursion (`z' = 1/z`).
    pair_split: HashMap<Vec<PoleForm>, LocalSeries>,
    /// `omega^{g-1}_{|K|+2}(z, z, K)` on each sheet, for the loop equation.
    pair_same: HashMap<Vec<PoleForm>, LocalSeries>,
    pair_swapped: HashMap<Vec<PoleForm>, LocalSeries>,
    /// `-y_N dx` on each sheet.
    w01: Option<(LocalSeries, LocalSeries)>,
}

pub(crate) struct FormSeries {
    alpha: i64,
    trunc: i64,
    cache: HashMap<(PoleForm, Sheet), LocalSeries>,
}

impl FormSeries {
    pub fn new(alpha: i64, trunc: i64) -> Self {
        FormSeries {
            alpha,
            trunc,
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, f: PoleForm, sheet: Sheet) -> &LocalSeries {
        let (a, t) = (self.alpha, self.trunc);
        self.cache
            .entry((f, sheet))
            .or_insert_with(|| f.series(sheet, a, t))
    }
}

fn accumulate(map: &mut HashMap<(u32, Vec<PoleForm>), LocalSeries>, key: (u32, Vec<PoleForm>), s: &LocalSeries, c: &Rat) {
    match map.get_mut(&key) {
        Some(acc) => acc.add_scaled(s, c),
        None => {
            map.insert(key, s.scale(c));
        }
    }
}

fn accumulate_pair(map: &mut HashMap<Vec<PoleForm>, LocalSeries>, key: Vec<PoleForm>, s: &LocalSeries, c: &Rat) {
    match map.get_mut(&key) {
        Some(acc) => acc.add_scaled(s, c),
        None => {
            map.insert(key, s.scale(c));
        }
    }
}

/// Distinct values in a sorted key, with the key minus one copy of each.
fn removals(key: &[PoleForm]) -> Vec<(PoleForm, Vec<PoleForm>)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < key.len() {
        let f = key[i];
        let mut rest = key.to_vec();
        rest.remove(i);
        out.push((f, rest));
        while i < key.len() && key[i] == f {
            i += 1;
        }
    }
    out
}

/// Sub-multisets `M` of a sorted key with the number of index subsets giving `M`.
pub(crate) fn sub_multisets(key: &[PoleForm]) -> Vec<(Vec<PoleForm>, Vec<PoleForm>, Rat)> {
    let mut groups: Vec<(PoleForm, usize)> = Vec::new();
    for f in key {
        match groups.last_mut() {
            Some((g, c)) if g == f => *c += 1,
            _ => groups.push((*f, 1)),
        }
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; groups.len()];
    loop {
        let mut m = Vec::new();
        let mut r = Vec::new();
        let mut w = num_bigint::BigInt::from(1);
        for (i, (f, c)) in groups.iter().enumerate() {
            for _ in 0..pick[i] {
                m.push(*f);
            }
            for _ in pick[i]..*c {
                r.push(*f);
            }
            w *= binomial(*c as i64, pick[i] as i64);
        }
        out.push((m, r, Rat::from_integer(w)));
        let mut i = 0;
        loop {
            if i == groups.len() {
                return out;
            }
            if pick[i] < groups[i].1 {
                pick[i] += 1;
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Accumulates `w * a * b` into `q` on `q`'s window, checking precision.
pub(crate) fn mul_into(q: &mut LocalSeries, a: &LocalSeries, b: &LocalSeries, w: &Rat) -> Result<()> {
    let need = q.trunc();
    let have = (a.trunc() + b.min_exp()).min(b.trunc() + a.min_exp());
    if have < need {
        return Err(Error::Precision {
            needed: need - 1,
            trunc: have,
        });
    }
    let lo = a.min_exp() + b.min_exp();
    if lo < q.min_exp() {
        *q = q.with_min_exp(lo);
    }
    let qmin = q.min_exp();
    let mut terms: Vec<(i64, Rat)> = Vec::new();
    for (i, x) in a.coeffs().iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let ea = a.min_exp() + i as i64;
        let xw = x * w;
        for (j, y) in b.coeffs().iter().enumerate() {
            let e = ea + b.min_exp() + j as i64;
            if e >= need {
                break;
            }
            if !y.is_zero() {
                terms.push((e, &xw * y));
            }
        }
    }
    let mut coeffs = q.coeffs().to_vec();
    for (e, v) in terms {
        coeffs[(e - qmin) as usize] += v;
    }
    *q = LocalSeries::new(q.center().clone(), qmin, coeffs);
    Ok(())
}

impl FactorTables {
    /// Tables for the recursion producing `omega^g_nt` at branch `alpha`.
    pub fn build(engine: &Engine, g: u32, nt: u32, alpha: i64, trunc: i64) -> Result<Self> {
        let mut t = FactorTables {
            alpha,
            trunc,
            g,
            same: HashMap::new(),
            swapped: HashMap::new(),
            pair_split: HashMap::new(),
            pair_same: HashMap::new(),
            pair_swapped: HashMap::new(),
            w01: None,
        };
        let mut fs = FormSeries::new(alpha, trunc);
        let chi = 2 * g as i64 - 2 + nt as i64;
        for g1 in 0..=g {
            for n1 in 1..=nt {
                if is_stable(g1, n1) && (2 * g1 as i64 - 2 + n1 as i64) < chi {
                    t.add_single(&engine.cached(g1, n1), &mut fs);
                }
            }
        }
        if g >= 1 {
            t.add_pairs(&engine.cached(g - 1, nt + 1), &mut fs, true, false);
        }
        Ok(t)
    }

    /// Tables for the loop equation whose top term is `omega^g_nt`.
    /// `lookup` supplies the stable invariants, so callers can substitute a perturbed one.
    pub fn build_loop<L>(lookup: &L, curve: &SpectralCurve, g: u32, nt: u32, alpha: i64, trunc: i64) -> Result<Self>
    where
        L: Fn(u32, u32) -> Result<Arc<Multidiff>>,
    {
        let mut t = FactorTables {
            alpha,
            trunc,
            g,
            same: HashMap::new(),
            swapped: HashMap::new(),
            pair_split: HashMap::new(),
            pair_same: HashMap::new(),
            pair_swapped: HashMap::new(),
            w01: None,
        };
        let mut fs = FormSeries::new(alpha, trunc);
        let chi = 2 * g as i64 - 2 + nt as i64;
        for g1 in 0..=g {
            for n1 in 1..=nt {
                if is_stable(g1, n1) && (2 * g1 as i64 - 2 + n1 as i64) <= chi {
                    t.add_single(&*lookup(g1, n1)?, &mut fs);
                }
            }
        }
        if g >= 1 {
            t.add_pairs(&*lookup(g - 1, nt + 1)?, &mut fs, false, true);
        }
        let c = Center::at(alpha);
        let w = curve.omega01();
        let same = w.laurent_at(&c, trunc)?;
        let pulled = w
            .at_inverse()
            .mul(&crate::series::RationalFn::z_pow(-2))
            .neg()
            .laurent_at(&c, trunc)?;
        t.w01 = Some((same, pulled));
        Ok(t)
    }

    fn add_single(&mut self, w: &Multidiff, fs: &mut FormSeries) {
        if w.kind != Kind::Generic {
            return;
        }
        for (key, c) in w.canonical_terms() {
            for (f, rest) in removals(key) {
                let a = fs.get(f, Sheet::Same).clone();
                accumulate(&mut self.same, (w.g, rest.clone()), &a, c);
                let b = fs.get(f, Sheet::Swapped).clone();
                accumulate(&mut self.swapped, (w.g, rest), &b, c);
            }
        }
    }

    fn add_pairs(&mut self, w: &Multidiff, fs: &mut FormSeries, split: bool, diag: bool) {
        let c0 = Center::at(self.alpha);
        if w.kind == Kind::W02 {
            if split {
                let s = curve::bergmann_on_fiber().laurent_at(&c0, self.trunc).expect("expands");
                self.pair_split.insert(Vec::new(), s);
            }
            if diag {
                let s = curve::bergmann_regularized_diagonal()
                    .laurent_at(&c0, self.trunc)
                    .expect("expands");
                self.pair_same.insert(Vec::new(), s.clone());
                self.pair_swapped.insert(Vec::new(), s);
            }
            return;
        }
        for (key, c) in w.canonical_terms() {
            for (f1, rest1) in removals(key) {
                for (f2, rest) in removals(&rest1) {
                    let z1 = fs.get(f1, Sheet::Same).clone();
                    if split {
                        let z2 = fs.get(f2, Sheet::Swapped).clone();
                        accumulate_pair(&mut self.pair_split, rest.clone(), &z1.mul(&z2), c);
                    }
                    if diag {
                        let z2 = fs.get(f2, Sheet::Same).clone();
                        accumulate_pair(&mut self.pair_same, rest.clone(), &z1.mul(&z2), c);
                        let s1 = fs.get(f1, Sheet::Swapped).clone();
                        let s2 = fs.get(f2, Sheet::Swapped).clone();
                        accumulate_pair(&mut self.pair_swapped, rest.clone(), &s1.mul(&s2), c);
                    }
                }
            }
        }
    }

    /// Series of `omega^{g1}(z, K)` on the given sheet; `None` when identically zero.
    fn factor(&self, g1: u32, k: &[PoleForm], sheet: Sheet) -> Option<LocalSeries> {
        if g1 == 0 && k.len() == 1 {
            return Some(bergmann_factor(k[0], sheet, self.alpha, self.trunc));
        }
        if g1 == 0 && k.is_empty() {
            let (a, b) = self.w01.as_ref()?;
            return Some(match sheet {
                Sheet::Same => a.clone(),
                Sheet::Swapped => b.clone(),
            });
        }
        let map = match sheet {
            Sheet::Same => &self.same,
            Sheet::Swapped => &self.swapped,
        };
        map.get(&(g1, k.to_vec())).cloned()
    }

    fn zero_q(&self, trunc: i64) -> LocalSeries {
        LocalSeries::zero(Center::at(self.alpha), 0, trunc)
    }

    /// The bracket `omega^{g-1}(z, 1/z, S) + sum' omega(z, I) omega(1/z, J)`,
    /// trusted through `t^0`; `None` if every term is absent.
    pub fn bracket_recursion(&self, set: &[PoleForm]) -> Result<Option<LocalSeries>> {
        let g = self.g;
        let mut q = self.zero_q(1);
        let mut any = false;
        if g >= 1 {
            if let Some(p) = self.pair_split.get(set) {
                q.add_scaled(p, &Rat::from_integer(1.into()));
                any = true;
            }
        }
        for (m, r, w) in sub_multisets(set) {
            for g1 in 0..=g {
                let g2 = g - g1;
                if (g1 == 0 && m.is_empty()) || (g2 == 0 && r.is_empty()) {
                    continue;
                }
                let Some(a) = self.factor(g1, &m, Sheet::Same) else { continue };
                let Some(b) = self.factor(g2, &r, Sheet::Swapped) else { continue };
                mul_into(&mut q, &a, &b, &w)?;
                any = true;
            }
        }
        Ok(any.then_some(q))
    }

    /// The loop-equation bracket on one sheet, trusted below `trunc`.
    pub fn bracket_loop(&self, set: &[PoleForm], sheet: Sheet, trunc: i64) -> Result<Option<LocalSeries>> {
        let g = self.g;
        let mut q = self.zero_q(trunc);
        let mut any = false;
        if g >= 1 {
            let pairs = match sheet {
                Sheet::Same => &self.pair_same,
                Sheet::Swapped => &self.pair_swapped,
            };
            if let Some(p) = pairs.get(set) {
                if p.trunc() < trunc {
                    return Err(Error::Precision {
                        needed: trunc - 1,
                        trunc: p.trunc(),
                    });
                }
                q.add_scaled(p, &int(1));
                any = true;
            }
        }
        for (m, r, w) in sub_multisets(set) {
            for g1 in 0..=g {
                let g2 = g - g1;
                let Some(a) = self.factor(g1, &m, sheet) else { continue };
                let Some(b) = self.factor(g2, &r, sheet) else { continue };
                mul_into(&mut q, &a, &b, &w)?;
                any = true;
            }
        }
        Ok(any.then_some(q))
    }
}
