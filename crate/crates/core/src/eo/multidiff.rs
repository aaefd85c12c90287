use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{self, binomial, int, Rat};
use crate::series::{Center, LocalSeries, RationalFn};

/// The one-form `dz / (z - branch)^order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PoleForm {
    pub branch: i8,
    pub order: u32,
}

/// Which point of the fiber `{z, 1/z}` a slot is evaluated at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sheet {
    Same,
    Swapped,
}

impl PoleForm {
    pub fn new(branch: i64, order: u32) -> Self {
        assert!(branch == 1 || branch == -1, "branch must be +1 or -1");
        assert!(order >= 2, "pole forms have zero residue");
        PoleForm {
            branch: branch as i8,
            order,
        }
    }

    pub fn excess(&self) -> u32 {
        self.order - 2
    }

    pub fn alpha(&self) -> i64 {
        self.branch as i64
    }

    /// dz-coefficient as a rational function of `z`.
    pub fn rational(&self) -> RationalFn {
        RationalFn::pole(Rat::one(), int(self.alpha()), self.order)
    }

    /// dz-coefficient of the pullback under `z -> 1/z`.
    pub fn pulled_back(&self) -> RationalFn {
        self.rational().at_inverse().mul(&RationalFn::z_pow(-2)).neg()
    }

    /// Expansion of the dz-coefficient at `center` on the given sheet.
    pub fn series(&self, sheet: Sheet, center: i64, trunc: i64) -> LocalSeries {
        let c = Center::at(center);
        match sheet {
            Sheet::Same if center == self.alpha() => {
                LocalSeries::monomial(c, Rat::one(), -(self.order as i64), trunc)
            }
            Sheet::Same => {
                // (t + 2c)^{-k} = sum_j C(-k, j) (2c)^{-k-j} t^j
                let k = self.order as i64;
                let two_c = int(2 * center);
                let len = trunc.max(0);
                let coeffs = (0..len)
                    .map(|j| {
                        let b = exact::big(binomial(k + j - 1, j)) * int(exact::sign(j));
                        b / exact::pow(&two_c, (k + j) as u32)
                    })
                    .collect();
                LocalSeries::new(c, 0, coeffs)
            }
            Sheet::Swapped => self
                .pulled_back()
                .laurent_at(&c, trunc)
                .expect("pullback expands"),
        }
    }

    /// Taylor coefficient of `z^j` in `1/(z - branch)^order` at `z = 0`.
    pub fn coeff_at_zero(&self, j: u64) -> Rat {
        let a = self.alpha();
        let k = self.order as i64;
        let s = exact::sign(k) * a.pow((k + j as i64) as u32 % 2);
        exact::big(binomial(k + j as i64 - 1, j as i64)) * int(s)
    }
}

/// Which of the three kinds of object a [`Multidiff`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    Generic,
    /// `-y_N dx`
    W01,
    /// The Bergmann kernel, kept in closed form.
    W02,
}

/// A symmetric multidifferential stored as one coefficient per sorted tuple of
/// pole forms; the coefficient of any permutation is the same.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multidiff {
    pub g: u32,
    pub n: u32,
    pub kind: Kind,
    terms: BTreeMap<Vec<PoleForm>, Rat>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    forms: Vec<PoleForm>,
    #[serde(with = "exact::as_text")]
    coeff: Rat,
}

#[derive(Serialize, Deserialize)]
struct MultidiffJson {
    g: u32,
    n: u32,
    terms: Vec<TermJson>,
}

impl Multidiff {
    pub fn special(kind: Kind) -> Self {
        let (g, n) = match kind {
            Kind::W01 => (0, 1),
            Kind::W02 => (0, 2),
            Kind::Generic => panic!("generic multidifferentials carry terms"),
        };
        Multidiff {
            g,
            n,
            kind,
            terms: BTreeMap::new(),
        }
    }

    /// Builds from canonical (sorted) keys.
    pub fn from_canonical(g: u32, n: u32, terms: BTreeMap<Vec<PoleForm>, Rat>) -> Self {
        debug_assert!(terms.keys().all(|k| k.len() == n as usize && k.windows(2).all(|w| w[0] <= w[1])));
        Multidiff {
            g,
            n,
            kind: Kind::Generic,
            terms: terms.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Builds from arbitrary ordered terms; fails if they are not symmetric.
    pub fn from_ordered(g: u32, n: u32, terms: &BTreeMap<Vec<PoleForm>, Rat>) -> Option<Self> {
        let mut canon = BTreeMap::new();
        for (k, v) in terms {
            if v.is_zero() {
                continue;
            }
            let mut s = k.clone();
            s.sort();
            canon.insert(s, v.clone());
        }
        let md = Multidiff::from_canonical(g, n, canon);
        let expanded = md.expanded_terms();
        let nonzero: BTreeMap<_, _> = terms
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        (expanded == nonzero).then_some(md)
    }

    pub fn canonical_terms(&self) -> &BTreeMap<Vec<PoleForm>, Rat> {
        &self.terms
    }

    pub fn coeff(&self, key: &[PoleForm]) -> Rat {
        let mut k = key.to_vec();
        k.sort();
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff_sorted(&self, key: &[PoleForm]) -> Option<&Rat> {
        self.terms.get(key)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every ordered tuple with its coefficient.
    pub fn expanded_terms(&self) -> BTreeMap<Vec<PoleForm>, Rat> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.terms {
            for p in distinct_permutations(k) {
                out.insert(p, v.clone());
            }
        }
        out
    }

    pub fn max_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|f| f.order))
            .max()
            .unwrap_or(0)
    }

    pub fn negated(&self) -> Self {
        let mut m = self.clone();
        for v in m.terms.values_mut() {
            *v = -v.clone();
        }
        m
    }

    pub fn scaled(&self, r: &Rat) -> Self {
        let t = self.terms.iter().map(|(k, v)| (k.clone(), v * r)).collect();
        Multidiff::from_canonical(self.g, self.n, t)
    }

    /// Overwrites one canonical coefficient; used to build perturbed copies in tests.
    pub fn with_coeff(&self, key: &[PoleForm], value: Rat) -> Self {
        let mut k = key.to_vec();
        k.sort();
        let mut m = self.clone();
        if value.is_zero() {
            m.terms.remove(&k);
        } else {
            m.terms.insert(k, value);
        }
        m
    }

    /// Sums `value(f) * coeff` over the given slot-wise linear functionals,
    /// contracting one slot at a time on symmetric representatives.
    pub fn contract<F>(&self, funcs: &[F]) -> Rat
    where
        F: Fn(PoleForm) -> Rat,
    {
        assert_eq!(funcs.len(), self.n as usize);
        let mut level: BTreeMap<Vec<PoleForm>, Rat> = self.terms.clone();
        for f in funcs.iter().rev() {
            let mut next: BTreeMap<Vec<PoleForm>, Rat> = BTreeMap::new();
            let mut cache: BTreeMap<PoleForm, Rat> = BTreeMap::new();
            for (k, v) in &level {
                let mut i = 0;
                while i < k.len() {
                    let form = k[i];
                    let w = cache.entry(form).or_insert_with(|| f(form)).clone();
                    if !w.is_zero() {
                        let mut rest = k.clone();
                        rest.remove(i);
                        *next.entry(rest).or_insert_with(Rat::zero) += v * w;
                    }
                    while i < k.len() && k[i] == form {
                        i += 1;
                    }
                }
            }
            level = next;
        }
        level.get(&Vec::new()).cloned().unwrap_or_else(Rat::zero)
    }

    /// Contracts the last slot with a linear functional, leaving `n - 1` slots.
    pub fn contract_last<F>(&self, f: F) -> BTreeMap<Vec<PoleForm>, Rat>
    where
        F: Fn(PoleForm) -> Rat,
    {
        let mut next: BTreeMap<Vec<PoleForm>, Rat> = BTreeMap::new();
        for (k, v) in &self.terms {
            let mut i = 0;
            while i < k.len() {
                let form = k[i];
                let w = f(form);
                if !w.is_zero() {
                    let mut rest = k.clone();
                    rest.remove(i);
                    *next.entry(rest).or_insert_with(Rat::zero) += v * w;
                }
                while i < k.len() && k[i] == form {
                    i += 1;
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        next
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .expanded_terms()
            .into_iter()
            .map(|(forms, coeff)| TermJson { forms, coeff })
            .collect();
        serde_json::to_value(MultidiffJson {
            g: self.g,
            n: self.n,
            terms,
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let j: MultidiffJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        let terms = j.terms.into_iter().map(|t| (t.forms, t.coeff)).collect();
        Multidiff::from_ordered(j.g, j.n, &terms).ok_or_else(|| "terms are not symmetric".into())
    }
}

/// All distinct orderings of a sorted multiset, in lexicographic order.
pub fn distinct_permutations(sorted: &[PoleForm]) -> Vec<Vec<PoleForm>> {
    let mut cur = sorted.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Sorted multisets of `size` pole forms with total excess at most `max_excess`.
pub fn multisets(size: usize, max_excess: u32) -> Vec<Vec<PoleForm>> {
    let mut forms = Vec::new();
    for b in [-1i64, 1] {
        for e in 0..=max_excess {
            forms.push(PoleForm::new(b, e + 2));
        }
    }
    forms.sort();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(
        forms: &[PoleForm],
        start: usize,
        size: usize,
        budget: u32,
        cur: &mut Vec<PoleForm>,
        out: &mut Vec<Vec<PoleForm>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..forms.len() {
            let f = forms[i];
            if f.excess() > budget {
                continue;
            }
            cur.push(f);
            rec(forms, i, size, budget - f.excess(), cur, out);
            cur.pop();
        }
    }
    rec(&forms, 0, size, max_excess, &mut cur, &mut out);
    out
}

/// Total excess of a key.
pub fn excess(key: &[PoleForm]) -> u32 {
    key.iter().map(|f| f.excess()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn permutations_of_multiset() {
        let a = PoleForm::new(-1, 2);
        let b = PoleForm::new(1, 2);
        assert_eq!(distinct_permutations(&[a, a, b]).len(), 3);
        assert_eq!(distinct_permutations(&[a, b, PoleForm::new(1, 3)]).len(), 6);
    }

    #[test]
    fn swapped_order_two_form() {
        let f = PoleForm::new(1, 2);
        let s = f.series(Sheet::Swapped, 1, 2);
        assert_eq!(s.order(), Some(-2));
        assert_eq!(s.coeff(-2).unwrap(), int(-1));
        assert_eq!(s.coeff(-1).unwrap(), int(0));
    }

    #[test]
    fn same_sheet_regular_expansion() {
        let f = PoleForm::new(-1, 3);
        let s = f.series(Sheet::Same, 1, 4);
        let direct = f.rational().laurent_at(&Center::at(1), 4).unwrap();
        assert_eq!(s.coeffs(), direct.coeffs());
        assert_eq!(s.coeff(0).unwrap(), rat(1, 8));
    }

    #[test]
    fn taylor_at_zero() {
        for b in [-1, 1] {
            for k in 2..6 {
                let f = PoleForm::new(b, k);
                let s = f.rational().laurent_at(&Center::at(0), 8).unwrap();
                for j in 0..8u64 {
                    assert_eq!(f.coeff_at_zero(j), s.coeff(j as i64).unwrap());
                }
            }
        }
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(1, 0).len(), 2);
        assert_eq!(multisets(2, 0).len(), 3);
        assert_eq!(multisets(1, 2).len(), 6);
    }
}
