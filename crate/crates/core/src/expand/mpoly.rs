use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{self, int, Rat};
use crate::series::Poly;

/// Sparse multivariate polynomial over `Rat` in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    #[serde(with = "exact::as_text")]
    coeff: Rat,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::from_terms(nvars, [(e, Rat::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rat)>>(nvars: usize, it: I) -> Self {
        let mut p = MPoly::zero(nvars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// A univariate polynomial placed in variable `i`.
    pub fn from_univariate(nvars: usize, i: usize, p: &Poly) -> Self {
        let mut out = MPoly::zero(nvars);
        for (d, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = d as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Rat) {
        assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Terms of exactly the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, r: &Rat) -> MPoly {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), c * r)))
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut p = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t *= exact::pow(xi, ei);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_ints(&self, x: &[i64]) -> Rat {
        let v: Vec<Rat> = x.iter().map(|&a| int(a)).collect();
        self.eval(&v)
    }

    /// Replaces each monomial `prod x_i^e_i` by `prod f(i, e_i)`.
    pub fn map_monomials<F>(&self, f: F) -> MPoly
    where
        F: Fn(usize, u32) -> Poly,
    {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(self.nvars, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                t = t.mul(&MPoly::from_univariate(self.nvars, i, &f(i, ei)));
            }
            out = out.add(&t);
        }
        out
    }

    /// Sets variable `i` to `v`, keeping the number of variables.
    pub fn substitute(&self, i: usize, v: &Rat) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            out.add_term(e2, c * exact::pow(v, e[i]));
        }
        out
    }

    pub fn partial(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * int(e[i] as i64));
        }
        out
    }

    /// Reorders variables: new variable `j` is old variable `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> MPoly {
        MPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (perm.iter().map(|&p| e[p]).collect(), c.clone())),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let t: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                exp: e.clone(),
                coeff: c.clone(),
            })
            .collect();
        serde_json::to_value(t).expect("serializable")
    }

    pub fn from_json(nvars: usize, v: &serde_json::Value) -> Result<Self, String> {
        let t: Vec<TermJson> = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        if t.iter().any(|x| x.exp.len() != nvars) {
            return Err(format!("expected {nvars} exponents per term"));
        }
        Ok(MPoly::from_terms(nvars, t.into_iter().map(|x| (x.exp, x.coeff))))
    }

    /// Text rendering with the given variable names, highest degree first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            let neg = c < &Rat::zero();
            let a = exact::abs(c);
            let body = if mono.is_empty() {
                exact::render(&a)
            } else if a.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", exact::render(&a), mono.join("*"))
            };
            if n == 0 {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// LaTeX rendering with `names` as variable symbols.
    pub fn latex_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{{{}}}", names[i], k) })
                .collect();
            let neg = c < &Rat::zero();
            let a = exact::abs(c);
            let coef = if a.denom().is_one() {
                a.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            let body = if mono.is_empty() {
                coef
            } else if a.is_one() {
                mono.join(" ")
            } else {
                format!("{coef} {}", mono.join(" "))
            };
            if n == 0 {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// Terms highest degree first, then by exponent vector descending.
    fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Rat)> {
        let mut v: Vec<(&Vec<u32>, &Rat)> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then(b.cmp(a))
        });
        v
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("b{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn arithmetic_and_eval() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p.eval_ints(&[3, 2]), int(5));
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.partial(0).eval_ints(&[3, 2]), int(6));
        assert_eq!(p.substitute(1, &int(0)).eval_ints(&[4, 9]), int(16));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let p = MPoly::from_terms(2, [(vec![1, 0], rat(1, 2)), (vec![0, 2], int(-3))]);
        assert_eq!(MPoly::from_json(2, &p.to_json()).unwrap(), p);
        assert_eq!(p.to_string(), "-3*b2^2 + 1/2*b1");
        let names = vec!["b_1".to_string(), "b_2".to_string()];
        assert_eq!(p.latex_with(&names), "-3 b_2^{2} + \\frac{1}{2} b_1");
    }
}
