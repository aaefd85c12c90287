//! Structural identities satisfied by the invariants: fiber sums, the string
//! and dilaton equations, loop equations, pole bounds and stabilization in N.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use super::engine::{is_stable, max_pole_order, max_total_excess, Engine, FactorTables};
use super::multidiff::{multisets, Kind, Multidiff, PoleForm, Sheet};
use crate::curve::{SpectralCurve, BRANCHES};
use crate::error::{Error, Result};
use crate::exact::{int, Rat};
use crate::series::{Center, LocalSeries, RationalFn};

/// Outcome of a check, with a description of the first discrepancy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub passed: bool,
    pub cases: usize,
    pub failure: Option<String>,
}

impl Default for CheckReport {
    fn default() -> Self {
        CheckReport::new()
    }
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport {
            passed: true,
            cases: 0,
            failure: None,
        }
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.failure = Some(what());
        }
    }

    pub fn merge(&mut self, o: CheckReport) {
        self.cases += o.cases;
        if !o.passed && self.passed {
            self.passed = false;
            self.failure = o.failure;
        }
    }
}

/// Decomposes a rational function with poles at `±1` into pole forms.
pub fn to_pole_forms(f: &RationalFn) -> Result<BTreeMap<PoleForm, Rat>> {
    let pf = f.partial_fractions(&[int(1), int(-1)])?;
    if !pf.poly.is_zero() {
        return Err(Error::Decomposition(format!("{f} does not vanish at infinity")));
    }
    let mut out = BTreeMap::new();
    for ((a, k), c) in pf.terms {
        if k < 2 {
            return Err(Error::Decomposition(format!("{f} has a residue at {a}")));
        }
        let b = if a == int(1) { 1 } else { -1 };
        out.insert(PoleForm::new(b, k), c);
    }
    Ok(out)
}

/// The pullback `sigma^* f` of a pole form under `z -> 1/z`, in pole forms.
pub fn involution_image(f: PoleForm) -> BTreeMap<PoleForm, Rat> {
    to_pole_forms(&f.pulled_back()).expect("pullback has poles at the same branch")
}

/// True iff `omega(z_S, z) + omega(z_S, 1/z) = 0` identically in the last slot.
pub fn check_fiber_sum(w: &Multidiff) -> bool {
    match w.kind {
        Kind::W01 => false,
        Kind::W02 => false,
        Kind::Generic => fiber_sum_defect(w).is_empty(),
    }
}

/// Nonzero coefficients of `omega(z_S, z) + omega(z_S, 1/z)`, keyed by
/// (remaining slots, last slot).
pub fn fiber_sum_defect(w: &Multidiff) -> BTreeMap<(Vec<PoleForm>, PoleForm), Rat> {
    let mut cache: HashMap<PoleForm, BTreeMap<PoleForm, Rat>> = HashMap::new();
    let mut acc: BTreeMap<(Vec<PoleForm>, PoleForm), Rat> = BTreeMap::new();
    for (key, c) in w.canonical_terms() {
        let mut i = 0;
        while i < key.len() {
            let f = key[i];
            let mut rest = key.clone();
            rest.remove(i);
            *acc.entry((rest.clone(), f)).or_insert_with(Rat::zero) += c;
            let img = cache.entry(f).or_insert_with(|| involution_image(f));
            for (h, v) in img.iter() {
                *acc.entry((rest.clone(), *h)).or_insert_with(Rat::zero) += c * v;
            }
            while i < key.len() && key[i] == f {
                i += 1;
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

/// For the Bergmann kernel the fiber sum is `dx dx1 / (x - x1)^2`; checked
/// exactly at the given pairs of rational points.
pub fn bergmann_fiber_defect_matches(points: &[(Rat, Rat)]) -> bool {
    let x = SpectralCurve::x();
    let dx = SpectralCurve::dx();
    points.iter().all(|(z, z1)| {
        let direct = crate::curve::bergmann(z1, z);
        let zi = Rat::from_integer(1.into()) / z;
        let pulled = crate::curve::bergmann(z1, &zi) * (-(&zi * &zi));
        let xs = x.eval(z).unwrap() - x.eval(z1).unwrap();
        let expect = dx.eval(z).unwrap() * dx.eval(z1).unwrap() / (&xs * &xs);
        direct + pulled == expect
    })
}

/// Expansions at `branch` of the last-slot dependence at `z` and at `1/z`,
/// keyed by the remaining (sorted) slots.
pub fn omega_at_fiber_pair(w: &Multidiff, branch: i64, trunc: i64) -> BTreeMap<Vec<PoleForm>, (LocalSeries, LocalSeries)> {
    let mut out: BTreeMap<Vec<PoleForm>, (LocalSeries, LocalSeries)> = BTreeMap::new();
    let zero = || LocalSeries::zero(Center::at(branch), 0, trunc);
    for (key, c) in w.canonical_terms() {
        let mut i = 0;
        while i < key.len() {
            let f = key[i];
            let mut rest = key.clone();
            rest.remove(i);
            let e = out.entry(rest).or_insert_with(|| (zero(), zero()));
            e.0.add_scaled(&f.series(Sheet::Same, branch, trunc), c);
            e.1.add_scaled(&f.series(Sheet::Swapped, branch, trunc), c);
            while i < key.len() && key[i] == f {
                i += 1;
            }
        }
    }
    out
}

fn residue_against(weight: &RationalFn, f: PoleForm) -> Result<Rat> {
    weight
        .mul(&f.rational())
        .laurent_at(&Center::at(f.alpha()), 0)?
        .residue()
}

fn x_pow(m: u32) -> RationalFn {
    SpectralCurve::x().pow(m)
}

fn canonical_from_slots(map: BTreeMap<Vec<PoleForm>, Rat>) -> BTreeMap<Vec<PoleForm>, Rat> {
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Left side of the string equation: `sum_alpha Res y x^m omega_{n+1}(z_S, z)`.
pub fn string_lhs(curve: &SpectralCurve, upper: &Multidiff, m: u32) -> Result<BTreeMap<Vec<PoleForm>, Rat>> {
    let weight = curve.y_fn().mul(&x_pow(m));
    let mut cache: HashMap<PoleForm, Rat> = HashMap::new();
    for key in upper.canonical_terms().keys() {
        for f in key {
            if !cache.contains_key(f) {
                cache.insert(*f, residue_against(&weight, *f)?);
            }
        }
    }
    Ok(upper.contract_last(|f| cache[&f].clone()))
}

/// Right side of the string equation: `-sum_i d/dz_i (x_i^m omega_n / dx_i)`.
pub fn string_rhs(lower: &Multidiff, m: u32) -> Result<BTreeMap<Vec<PoleForm>, Rat>> {
    let xm = x_pow(m);
    let dx = SpectralCurve::dx();
    let mut images: HashMap<PoleForm, BTreeMap<PoleForm, Rat>> = HashMap::new();
    let mut acc: BTreeMap<Vec<PoleForm>, Rat> = BTreeMap::new();
    for (key, c) in lower.canonical_terms() {
        let mut i = 0;
        while i < key.len() {
            let f = key[i];
            let mut rest = key.clone();
            rest.remove(i);
            if !images.contains_key(&f) {
                let r = xm.mul(&f.rational()).div(&dx)?.derivative().neg();
                images.insert(f, to_pole_forms(&r)?);
            }
            for (h, v) in &images[&f] {
                let mut l = rest.clone();
                l.push(*h);
                l.sort();
                let mult = l.iter().filter(|x| *x == h).count();
                *acc.entry(l).or_insert_with(Rat::zero) += c * v * int(mult as i64);
            }
            while i < key.len() && key[i] == f {
                i += 1;
            }
        }
    }
    Ok(canonical_from_slots(acc))
}

/// Left side of the dilaton equation: `sum_alpha Res Phi omega_{n+1}(z_S, z)`.
pub fn dilaton_lhs(curve: &SpectralCurve, upper: &Multidiff) -> Result<BTreeMap<Vec<PoleForm>, Rat>> {
    let phi = curve.phi();
    let mut cache: HashMap<PoleForm, Rat> = HashMap::new();
    for key in upper.canonical_terms().keys() {
        for f in key {
            if !cache.contains_key(f) {
                cache.insert(*f, residue_against(&phi, *f)?);
            }
        }
    }
    Ok(upper.contract_last(|f| cache[&f].clone()))
}

/// Truncation of `y` sufficient for residues against `omega^g_{n+1}`.
pub fn residue_truncation(g: u32, n_upper: u32) -> usize {
    max_pole_order(g, n_upper) as usize + 1
}

/// String (`m = 0, 1`) and dilaton equations relating `omega^g_{n+1}` to `omega^g_n`.
pub fn check_string_dilaton(engine: &Engine, g: u32, n: u32) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    if !is_stable(g, n) {
        return Err(Error::Unsupported(format!("string/dilaton need a stable (g, n), got ({g}, {n})")));
    }
    let upper = engine.omega(g, n + 1)?;
    let lower = engine.omega(g, n)?;
    let curve = engine.curve(residue_truncation(g, n + 1));
    for m in 0..=1 {
        let l = string_lhs(&curve, &upper, m)?;
        let r = string_rhs(&lower, m)?;
        rep.record(l == r, || format!("string equation m = {m} fails for omega^{g}_{}", n + 1));
    }
    let l = dilaton_lhs(&curve, &upper)?;
    let r: BTreeMap<_, _> = lower
        .scaled(&int(2 * g as i64 - 2 + n as i64))
        .canonical_terms()
        .clone();
    rep.record(l == r, || format!("dilaton equation fails for omega^{g}_{}", n + 1));
    Ok(rep)
}

/// Pole orders are at least 2 and the maximum `6g - 4 + 2n` is attained.
pub fn check_pole_bound(w: &Multidiff) -> bool {
    if w.kind != Kind::Generic {
        return true;
    }
    let ok_min = w.canonical_terms().keys().all(|k| k.iter().all(|f| f.order >= 2));
    let ok_total = w
        .canonical_terms()
        .keys()
        .all(|k| super::multidiff::excess(k) <= max_total_excess(w.g, w.n));
    ok_min && ok_total && w.max_order() == max_pole_order(w.g, w.n)
}

/// Every slot transposition fixes the coefficient map.
pub fn check_symmetry(w: &Multidiff) -> bool {
    let ex = w.expanded_terms();
    let n = w.n as usize;
    ex.iter().all(|(k, v)| {
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let mut t = k.clone();
                t.swap(i, j);
                ex.get(&t) == Some(v)
            })
        })
    })
}

/// `omega^g_n` on the curves with truncation `N` and `N + 1` coincide.
pub fn check_stabilization(g: u32, n: u32, big_n: usize) -> Result<bool> {
    let a = Engine::with_truncation_floor(big_n).omega(g, n)?;
    let b = Engine::with_truncation_floor(big_n + 1).omega(g, n)?;
    Ok(a == b)
}

/// Loop equation for the bracket whose top term is `omega^g_nt`, using
/// the engine's invariants.
pub fn check_loop_equation(engine: &Engine, g: u32, nt: u32) -> Result<CheckReport> {
    let lookup = |a: u32, b: u32| engine.omega(a, b);
    let curve = engine.curve(loop_truncation(g, nt));
    check_loop_equation_with(&lookup, &curve, g, nt)
}

/// Truncation from which the loop equation does not depend on `N`: changing
/// `y_N` at order `N + 1` moves the bracket by `O(t^(N + 2 - (6g - 4 + 2nt)))`.
pub fn loop_truncation(g: u32, nt: u32) -> usize {
    (6 * g as i64 - 4 + 2 * nt as i64).max(1) as usize
}

/// Loop equation with caller-supplied invariants: for every key `S` the fiber
/// sum of the bracket, divided by `dx^2`, has no pole at `z = ±1`.
pub fn check_loop_equation_with<L>(lookup: &L, curve: &SpectralCurve, g: u32, nt: u32) -> Result<CheckReport>
where
    L: Fn(u32, u32) -> Result<Arc<Multidiff>>,
{
    use rayon::prelude::*;
    if nt == 0 {
        return Err(Error::Unsupported("loop equations need nt >= 1".into()));
    }
    let s = nt as usize - 1;
    let top = if is_stable(g, nt) { max_pole_order(g, nt) as i64 } else { 0 };
    let trunc = top + 4;
    let mut reach = if is_stable(g, nt) { max_total_excess(g, nt) } else { 0 };
    if is_stable(g, s as u32) {
        reach += max_pole_order(g, s as u32) + 2;
    }
    reach += 2;
    let sets = multisets(s, reach);
    let mut rep = CheckReport::new();
    for alpha in BRANCHES {
        let tables = FactorTables::build_loop(lookup, curve, g, nt, alpha, trunc)?;
        let results: Vec<Result<Option<String>>> = sets
            .par_iter()
            .map(|set| {
                let a = tables.bracket_loop(set, Sheet::Same, 2)?;
                let b = tables.bracket_loop(set, Sheet::Swapped, 2)?;
                let q = match (a, b) {
                    (None, None) => return Ok(None),
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (Some(a), Some(b)) => a.add(&b),
                };
                for e in q.min_exp()..2 {
                    let c = q.coeff(e)?;
                    if !c.is_zero() {
                        return Ok(Some(format!(
                            "loop equation for omega^{g}_{nt} at z = {alpha}: key {set:?} has t^{e} coefficient {c}"
                        )));
                    }
                }
                Ok(None)
            })
            .collect();
        for r in results {
            let r = r?;
            rep.record(r.is_none(), || r.clone().unwrap_or_default());
        }
    }
    Ok(rep)
}
