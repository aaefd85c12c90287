//! Closed formulas for stationary invariants in low genus.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{big, factorial, int, Rat};

/// A named formula for `<prod_{i<=e} tau_{2u_i}(omega) prod_{i>e} tau_{2u_i-1}(omega)>^g`.
#[derive(Clone, Copy, Debug)]
pub struct ClosedForm {
    pub name: &'static str,
    pub g: u32,
    /// Number of insertions; `None` for the even n-point family.
    pub arity: Option<usize>,
    /// Number of leading even insertions `tau_{2u}`; the rest are `tau_{2u-1}`.
    pub evens: Option<usize>,
    f: fn(&[i64]) -> Rat,
}

impl ClosedForm {
    /// Insertion powers for `u`; `None` if an odd slot has `u < 1`.
    pub fn powers(&self, u: &[i64]) -> Option<Vec<u32>> {
        let e = self.evens.unwrap_or(u.len());
        u.iter()
            .enumerate()
            .map(|(i, &x)| {
                if i < e {
                    (x >= 0).then_some(2 * x as u32)
                } else {
                    (x >= 1).then(|| 2 * x as u32 - 1)
                }
            })
            .collect()
    }

    pub fn eval(&self, u: &[i64]) -> Result<Rat> {
        if let Some(a) = self.arity {
            if u.len() != a {
                return Err(Error::Parse(format!("{} takes {a} arguments, got {}", self.name, u.len())));
            }
        } else if u.is_empty() {
            return Err(Error::Parse(format!("{} needs at least one argument", self.name)));
        }
        if self.powers(u).is_none() {
            return Err(Error::Parse(format!("{}: argument out of range in {u:?}", self.name)));
        }
        Ok((self.f)(u))
    }
}

fn fsq(u: &[i64]) -> Rat {
    let p: num_bigint::BigInt = u.iter().map(|&x| factorial(x as u64)).product();
    big(&p * &p)
}

fn sum(u: &[i64]) -> i64 {
    u.iter().sum()
}

fn g0_two_even(u: &[i64]) -> Rat {
    Rat::one() / (fsq(u) * int(u[0] + u[1] + 1))
}

fn g0_two_odd(u: &[i64]) -> Rat {
    int(u[0] * u[1]) / (fsq(u) * int(u[0] + u[1]))
}

fn g0_three_even(u: &[i64]) -> Rat {
    Rat::one() / fsq(u)
}

fn g0_three_mixed(u: &[i64]) -> Rat {
    int(u[1] * u[2]) / fsq(u)
}

fn g0_four_even(u: &[i64]) -> Rat {
    int(sum(u) + 1) / fsq(u)
}

fn g0_four_mixed(u: &[i64]) -> Rat {
    int(u[2] * u[3] * sum(u)) / fsq(u)
}

fn g0_four_odd(u: &[i64]) -> Rat {
    int(u.iter().product::<i64>() * sum(u)) / fsq(u)
}

fn g0_even_npoint(u: &[i64]) -> Rat {
    let e = u.len() as i32 - 3;
    int(sum(u) + 1).pow(e) / fsq(u)
}

fn g1_one(u: &[i64]) -> Rat {
    int(2 * u[0] - 1) / (fsq(u) * int(24))
}

fn g1_two_even(u: &[i64]) -> Rat {
    let (a, b) = (u[0], u[1]);
    int(2 * a * a + 2 * b * b + 2 * a * b - a - b) / (fsq(u) * int(24))
}

fn g1_two_odd(u: &[i64]) -> Rat {
    let (a, b) = (u[0], u[1]);
    int(a * b * (2 * a * a + 2 * b * b + 2 * a * b - 3 * a - 3 * b)) / (fsq(u) * int(24))
}

fn pairs(u: &[i64], f: impl Fn(i64, i64) -> i64) -> i64 {
    let mut s = 0;
    for i in 0..u.len() {
        for j in 0..u.len() {
            if i != j {
                s += f(u[i], u[j]);
            }
        }
    }
    s
}

fn g1_three_even(u: &[i64]) -> Rat {
    let s: i64 = u.iter().map(|&x| 2 * x * x * x - x * x).sum::<i64>()
        + pairs(u, |a, b| a * b * (4 * a - 1))
        + 4 * u[0] * u[1] * u[2];
    int(s) / (fsq(u) * int(24))
}

fn g1_three_mixed(u: &[i64]) -> Rat {
    let s: i64 = u.iter().map(|&x| 2 * x * x * x - 5 * x * x + 3 * x).sum::<i64>()
        + pairs(u, |a, b| a * b * (4 * a - 3))
        + 2 * u[0] * u[0]
        - 3 * u[0]
        - 2 * u[1] * u[2]
        + 4 * u[0] * u[1] * u[2];
    int(u[1] * u[2] * s) / (fsq(u) * int(24))
}

fn g2_one(u: &[i64]) -> Rat {
    let x = u[0];
    int(x * x * (2 * x - 3) * (10 * x - 17)) / (fsq(u) * int(128 * 9 * 5))
}

fn g3_one(u: &[i64]) -> Rat {
    let x = u[0];
    let num = x * x * (x - 1) * (x - 1) * (2 * x - 5) * (140 * x * x - 784 * x + 1101);
    int(num) / (fsq(u) * int(1024 * 81 * 5 * 7))
}

macro_rules! form {
    ($name:expr, $g:expr, $arity:expr, $evens:expr, $f:expr) => {
        ClosedForm {
            name: $name,
            g: $g,
            arity: $arity,
            evens: $evens,
            f: $f,
        }
    };
}

pub const CLOSED_FORMS: &[ClosedForm] = &[
    form!("genus0-two-point-even", 0, Some(2), Some(2), g0_two_even),
    form!("genus0-two-point-odd", 0, Some(2), Some(0), g0_two_odd),
    form!("genus0-three-point-even", 0, Some(3), Some(3), g0_three_even),
    form!("genus0-three-point-mixed", 0, Some(3), Some(1), g0_three_mixed),
    form!("genus0-four-point-even", 0, Some(4), Some(4), g0_four_even),
    form!("genus0-four-point-mixed", 0, Some(4), Some(2), g0_four_mixed),
    form!("genus0-four-point-odd", 0, Some(4), Some(0), g0_four_odd),
    form!("genus0-even-npoint", 0, None, None, g0_even_npoint),
    form!("genus1-one-point", 1, Some(1), Some(1), g1_one),
    form!("genus1-two-point-even", 1, Some(2), Some(2), g1_two_even),
    form!("genus1-two-point-odd", 1, Some(2), Some(0), g1_two_odd),
    form!("genus1-three-point-even", 1, Some(3), Some(3), g1_three_even),
    form!("genus1-three-point-mixed", 1, Some(3), Some(1), g1_three_mixed),
    form!("genus2-one-point", 2, Some(1), Some(1), g2_one),
    form!("genus3-one-point", 3, Some(1), Some(1), g3_one),
];

pub fn closed_form(name: &str) -> Result<&'static ClosedForm> {
    CLOSED_FORMS
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::Parse(format!("unknown closed form {name:?}")))
}

pub fn closed_forms(name: &str, u: &[i64]) -> Result<Rat> {
    closed_form(name)?.eval(u)
}

/// A formula covering `<prod tau_{b_i}(omega)>^g` and its arguments, with the
/// even powers moved to the front.
pub fn closed_for(g: u32, b: &[u32]) -> Option<(&'static ClosedForm, Vec<i64>)> {
    let mut evens: Vec<i64> = b.iter().filter(|&&x| x % 2 == 0).map(|&x| x as i64 / 2).collect();
    let e = evens.len();
    evens.extend(b.iter().filter(|&&x| x % 2 == 1).map(|&x| (x as i64 + 1) / 2));
    let u = evens;
    CLOSED_FORMS
        .iter()
        .find(|c| {
            c.g == g
                && c.arity.is_none_or(|a| a == b.len())
                && c.evens.unwrap_or(b.len()) == e
                && !b.is_empty()
        })
        .map(|c| (c, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn spot_values() {
        assert_eq!(closed_forms("genus0-even-npoint", &[0; 5]).unwrap(), int(1));
        assert_eq!(closed_forms("genus2-one-point", &[2]).unwrap(), rat(1, 1920));
        assert_eq!(closed_forms("genus3-one-point", &[0]).unwrap(), int(0));
        assert_eq!(closed_forms("genus1-one-point", &[1]).unwrap(), rat(1, 24));
        assert!(closed_forms("genus1-two-point-odd", &[0, 1]).is_err());
        assert!(closed_forms("nope", &[1]).is_err());
        let (c, u) = closed_for(0, &[1, 2, 3]).unwrap();
        assert_eq!((c.name, u), ("genus0-three-point-mixed", vec![1, 1, 2]));
        assert_eq!(closed_for(0, &[0; 6]).unwrap().0.name, "genus0-even-npoint");
        assert!(closed_for(1, &[1, 2]).is_none());
    }
}
