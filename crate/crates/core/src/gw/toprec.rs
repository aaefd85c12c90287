//! Genus <= 1 invariants of the projective line from the topological
//! recursion relations, with string, divisor and dilaton reductions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{big, factorial, int, rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Fundamental,
    Point,
}

/// `tau_b(1)` or `tau_b(omega)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Insertion {
    pub class: Class,
    pub b: u32,
}

impl Insertion {
    pub fn point(b: u32) -> Self {
        Insertion { class: Class::Point, b }
    }

    pub fn unit(b: u32) -> Self {
        Insertion {
            class: Class::Fundamental,
            b,
        }
    }

    fn lowered(self) -> Self {
        Insertion {
            class: self.class,
            b: self.b - 1,
        }
    }
}

impl fmt::Display for Insertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class {
            Class::Fundamental => write!(f, "tau_{}(1)", self.b),
            Class::Point => write!(f, "tau_{}(w)", self.b),
        }
    }
}

/// A bracket `<prod tau_{b_i}(alpha_i)>^g` with insertions in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GWKey {
    pub g: u32,
    pub insertions: Vec<Insertion>,
}

impl GWKey {
    pub fn new(g: u32, mut insertions: Vec<Insertion>) -> Self {
        insertions.sort();
        GWKey { g, insertions }
    }

    pub fn stationary(g: u32, b: &[u32]) -> Self {
        GWKey::new(g, b.iter().map(|&x| Insertion::point(x)).collect())
    }

    /// The degree solving `sum b = 2g - 2 + 2d + l`, if any.
    pub fn degree(&self) -> Option<u32> {
        degree(self.g, &self.insertions)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("key serializes")
    }
}

impl fmt::Display for GWKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, x) in self.insertions.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ">^{}", self.g)
    }
}

fn degree(g: u32, ins: &[Insertion]) -> Option<u32> {
    let s: i64 = ins.iter().map(|x| x.b as i64).sum();
    let l = ins.iter().filter(|x| x.class == Class::Fundamental).count() as i64;
    let twice = s - 2 * g as i64 + 2 - l;
    if twice < 0 || twice % 2 != 0 {
        None
    } else {
        Some((twice / 2) as u32)
    }
}

fn without(ins: &[Insertion], p: usize) -> Vec<Insertion> {
    let mut v = ins.to_vec();
    v.remove(p);
    v
}

fn with(front: &[Insertion], rest: &[Insertion]) -> Vec<Insertion> {
    let mut v = front.to_vec();
    v.extend_from_slice(rest);
    v
}

fn split(s: &[Insertion], mask: usize) -> (Vec<Insertion>, Vec<Insertion>) {
    let mut i = Vec::new();
    let mut j = Vec::new();
    for (t, x) in s.iter().enumerate() {
        if mask >> t & 1 == 1 {
            i.push(*x);
        } else {
            j.push(*x);
        }
    }
    (i, j)
}

const UNIT0: Insertion = Insertion {
    class: Class::Fundamental,
    b: 0,
};
const POINT0: Insertion = Insertion {
    class: Class::Point,
    b: 0,
};

/// Memoized evaluator.
#[derive(Default)]
pub struct TopRec {
    memo: Mutex<HashMap<GWKey, Rat>>,
}

impl TopRec {
    pub fn new() -> Self {
        TopRec::default()
    }

    pub fn eval(&self, key: &GWKey) -> Result<Rat> {
        self.val(key.g, key.insertions.clone())
    }

    /// `<prod tau_{b_i}(omega)>^g`.
    pub fn stationary(&self, g: u32, b: &[u32]) -> Result<Rat> {
        self.eval(&GWKey::stationary(g, b))
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }

    fn val(&self, g: u32, ins: Vec<Insertion>) -> Result<Rat> {
        let key = GWKey::new(g, ins);
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(&key)?;
        self.memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn compute(&self, key: &GWKey) -> Result<Rat> {
        let g = key.g;
        let ins = &key.insertions;
        if g > 1 {
            return Err(Error::Unsupported(format!("{key}: genus above 1")));
        }
        let Some(d) = degree(g, ins) else {
            return Ok(Rat::zero());
        };
        let n = ins.len();
        let l = ins.iter().filter(|x| x.class == Class::Fundamental).count();

        if g == 0 && d == 0 {
            return Ok(match n {
                0..=2 => Rat::zero(),
                3 if l == 2 && ins.iter().all(|x| x.b == 0) => Rat::one(),
                3 => Rat::zero(),
                _ => return self.reduce_or_recurse(key, d),
            });
        }
        if g == 0 && n == 0 {
            return Ok(Rat::one());
        }
        if g == 0 && n == 1 && ins[0].class == Class::Point {
            let f = big(factorial(d as u64));
            return Ok(Rat::one() / (&f * &f));
        }
        if g == 1 && d == 0 && n == 1 {
            return Ok(match ins[0].class {
                Class::Point => rat(-1, 24),
                Class::Fundamental => rat(1, 12),
            });
        }
        if g == 1 && n == 0 {
            return Err(Error::Unsupported(format!("{key}: unstable")));
        }
        self.reduce_or_recurse(key, d)
    }

    fn reduce_or_recurse(&self, key: &GWKey, d: u32) -> Result<Rat> {
        let g = key.g;
        let ins = &key.insertions;
        let n = ins.len();
        let removable = d > 0 || 2 * g as i64 - 2 + n as i64 - 1 > 0;
        if removable {
            if let Some(p) = ins.iter().position(|&x| x == UNIT0) {
                return self.string(g, &without(ins, p));
            }
            if let Some(p) = ins.iter().position(|&x| x == POINT0) {
                return self.divisor(g, d, &without(ins, p));
            }
            if let Some(p) = ins.iter().position(|&x| x == Insertion::unit(1)) {
                let rest = without(ins, p);
                return Ok(int(2 * g as i64 - 2 + rest.len() as i64) * self.val(g, rest)?);
            }
        }
        let first = ins.iter().position(|x| x.b >= 1);
        match (g, first) {
            (0, Some(idx)) if n >= 3 => self.trr0(ins, idx),
            (0, Some(idx)) => self.inverse_divisor(ins, idx, d),
            (0, None) if n == 2 && d == 1 => Ok(Rat::one()),
            (1, Some(idx)) => self.trr1(ins, idx),
            _ => Err(Error::Unsupported(format!("{key}: no reduction applies"))),
        }
    }

    /// `<tau_0(1) rest> = sum_i <.. tau_{b_i - 1} ..>`.
    fn string(&self, g: u32, rest: &[Insertion]) -> Result<Rat> {
        let mut acc = Rat::zero();
        for i in 0..rest.len() {
            if rest[i].b >= 1 {
                let mut v = rest.to_vec();
                v[i] = v[i].lowered();
                acc += self.val(g, v)?;
            }
        }
        Ok(acc)
    }

    /// Sum over `i` of `<.. tau_{b_i - 1}(alpha_i cup omega) ..>`.
    fn cup_terms(&self, g: u32, rest: &[Insertion]) -> Result<Rat> {
        let mut acc = Rat::zero();
        for i in 0..rest.len() {
            if rest[i].b >= 1 && rest[i].class == Class::Fundamental {
                let mut v = rest.to_vec();
                v[i] = Insertion::point(rest[i].b - 1);
                acc += self.val(g, v)?;
            }
        }
        Ok(acc)
    }

    fn divisor(&self, g: u32, d: u32, rest: &[Insertion]) -> Result<Rat> {
        let mut acc = self.cup_terms(g, rest)?;
        if d > 0 {
            acc += int(d as i64) * self.val(g, rest.to_vec())?;
        }
        Ok(acc)
    }

    /// Genus-0 recursion splitting off `ins[idx]`, which must have `b >= 1`;
    /// the two other distinguished insertions are the first two remaining.
    fn trr0(&self, ins: &[Insertion], idx: usize) -> Result<Rat> {
        debug_assert!(ins.len() >= 3 && ins[idx].b >= 1);
        let a = ins[idx].lowered();
        let rest = without(ins, idx);
        let (pair, s) = rest.split_at(2);
        let mut acc = Rat::zero();
        for mask in 0..(1usize << s.len()) {
            let (i, j) = split(s, mask);
            let l1 = self.val(0, with(&[UNIT0, a], &i))?;
            if !l1.is_zero() {
                acc += l1 * self.val(0, with(&[POINT0, pair[0], pair[1]], &j))?;
            }
            let l2 = self.val(0, with(&[POINT0, a], &i))?;
            if !l2.is_zero() {
                acc += l2 * self.val(0, with(&[UNIT0, pair[0], pair[1]], &j))?;
            }
        }
        Ok(acc)
    }

    /// Genus 0 with fewer than three insertions and positive degree: solve the
    /// divisor equation for the bracket, evaluating the augmented bracket by
    /// the recursion on `ins[idx]` so the divisor is not removed again.
    fn inverse_divisor(&self, ins: &[Insertion], idx: usize, d: u32) -> Result<Rat> {
        let mut aug = ins.to_vec();
        aug.push(POINT0);
        let x = if aug.len() >= 3 {
            self.trr0(&aug, idx)?
        } else {
            self.inverse_divisor(&aug, idx, d)?
        };
        Ok((x - self.cup_terms(0, ins)?) / int(d as i64))
    }

    fn trr1(&self, ins: &[Insertion], idx: usize) -> Result<Rat> {
        let a = ins[idx].lowered();
        let s = without(ins, idx);
        let mut acc = Rat::zero();
        for mask in 0..(1usize << s.len()) {
            let (i, j) = split(&s, mask);
            let l1 = self.val(0, with(&[UNIT0, a], &i))?;
            if !l1.is_zero() {
                acc += l1 * self.val(1, with(&[POINT0], &j))?;
            }
            let l2 = self.val(0, with(&[POINT0, a], &i))?;
            if !l2.is_zero() {
                acc += l2 * self.val(1, with(&[UNIT0], &j))?;
            }
        }
        acc += rat(1, 12) * self.val(0, with(&[UNIT0, POINT0, a], &s))?;
        Ok(acc)
    }

    /// Evaluates a genus-0 bracket with at least three insertions by one
    /// recursion step on `ins[idx]` before any reduction, giving a value that
    /// does not use the reduction equations at the top level.
    pub fn eval_recursion_first(&self, key: &GWKey, idx: usize) -> Result<Rat> {
        let ins = &key.insertions;
        if idx >= ins.len() || ins[idx].b == 0 {
            return Err(Error::Unsupported(format!("{key}: insertion {idx} has power 0")));
        }
        if degree(key.g, ins).is_none() {
            return Ok(Rat::zero());
        }
        match key.g {
            0 if ins.len() >= 3 => self.trr0(ins, idx),
            1 => self.trr1(ins, idx),
            _ => Err(Error::Unsupported(format!("{key}: recursion needs g = 1 or three insertions"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_from_dimension() {
        assert_eq!(GWKey::stationary(1, &[2]).degree(), Some(1));
        assert_eq!(GWKey::stationary(0, &[0, 0, 0]).degree(), Some(1));
        assert_eq!(GWKey::stationary(1, &[1]).degree(), None);
    }

    #[test]
    fn small_brackets() {
        let t = TopRec::new();
        assert_eq!(t.stationary(0, &[0, 0]).unwrap(), int(1));
        assert_eq!(t.eval(&GWKey::new(0, vec![Insertion::unit(1)])).unwrap(), int(-2));
        assert_eq!(t.stationary(1, &[0]).unwrap(), rat(-1, 24));
        assert_eq!(t.stationary(0, &[2]).unwrap(), rat(1, 4));
    }
}
