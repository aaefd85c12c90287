use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::mpoly::MPoly;
use super::quasi::{Form, QuasiPoly};
use crate::exact::{self, binomial, int, rat, Rat};
use crate::series::Poly;

fn cache() -> &'static Mutex<HashMap<u32, (Poly, Poly)>> {
    static C: OnceLock<Mutex<HashMap<u32, (Poly, Poly)>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `(p_alpha, q_alpha)` as polynomials in `n`.
pub fn transform_polys(alpha: u32) -> (Poly, Poly) {
    if let Some(v) = cache().lock().unwrap().get(&alpha) {
        return v.clone();
    }
    let v = if alpha == 0 {
        (Poly::one(), Poly::one())
    } else {
        let (p, q) = transform_polys(alpha - 1);
        let four_n2 = Poly::monomial(int(4), 2);
        let p_prev = p.shift(&int(-1));
        let q_prev = q.shift(&int(-1));
        // p: 4n^2 (p(n) - p(n-1)) + 4n p(n-1)
        // q: 4n^2 (q(n) - q(n-1)) + (4n+1) q(n)
        (
            &(&four_n2 * &(&p - &p_prev)) + &(&Poly::monomial(int(4), 1) * &p_prev),
            &(&four_n2 * &(&q - &q_prev)) + &(&Poly::linear(int(4), int(1)) * &q),
        )
    };
    cache().lock().unwrap().insert(alpha, v.clone());
    v
}

/// `p_alpha(b/2)` as a polynomial in `b`.
pub fn p_in_b(alpha: u32) -> Poly {
    transform_polys(alpha).0.compose(&Poly::linear(rat(1, 2), int(0)))
}

/// `q_alpha((b-1)/2)` as a polynomial in `b`.
pub fn q_in_b(alpha: u32) -> Poly {
    transform_polys(alpha).1.compose(&Poly::linear(rat(1, 2), rat(-1, 2)))
}

/// `b C(b-1, (b-1)/2)` for odd `b`, `(b/2) C(b, b/2)` for even `b`.
pub fn prefactor(b: i64) -> Rat {
    if b.rem_euclid(2) == 1 {
        exact::big(binomial(b - 1, (b - 1) / 2)) * int(b)
    } else {
        exact::big(binomial(b, b / 2)) * rat(b, 2)
    }
}

pub fn prefactor_product(b: &[i64]) -> Rat {
    b.iter().map(|&x| prefactor(x)).product()
}

/// Term-by-term transform of the N-form into the m-form.
pub fn n_to_m(nq: &QuasiPoly) -> QuasiPoly {
    assert_eq!(nq.form, Form::N);
    let sectors = nq
        .sectors
        .iter()
        .enumerate()
        .map(|(k, p)| transform_sector(p, k))
        .collect();
    QuasiPoly {
        g: nq.g,
        n: nq.n,
        form: Form::M,
        sectors,
    }
}

fn transform_sector(p: &MPoly, k: usize) -> MPoly {
    p.map_monomials(|i, e| {
        assert!(e % 2 == 0, "N-form exponents are even");
        if i < k {
            q_in_b(e / 2)
        } else {
            p_in_b(e / 2)
        }
    })
}

/// The p-form: `m` with `b_i = 2u_i + 1` in the odd block and `b_i = 2u_i`
/// in the even block.
pub fn m_to_p(mq: &QuasiPoly) -> QuasiPoly {
    assert_eq!(mq.form, Form::M);
    let sectors = mq
        .sectors
        .iter()
        .enumerate()
        .map(|(k, p)| {
            p.map_monomials(|i, e| {
                let sub = if i < k {
                    Poly::linear(int(2), int(1))
                } else {
                    Poly::linear(int(2), int(0))
                };
                sub.pow(e)
            })
        })
        .collect();
    QuasiPoly {
        g: mq.g,
        n: mq.n,
        form: Form::P,
        sectors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_prefactors() {
        assert_eq!(prefactor(1), int(1));
        assert_eq!(prefactor(3), int(6));
        assert_eq!(prefactor(2), int(2));
        assert_eq!(prefactor(4), int(12));
    }

    // sum_{l > b/2} (2l - b)^{2a+1} C(b, l) = prefactor * (p or q)
    #[test]
    fn transform_matches_binomial_sums() {
        for a in 0..5u32 {
            let (pb, qb) = (p_in_b(a), q_in_b(a));
            for b in 1..12i64 {
                let s: Rat = (0..=b)
                    .filter(|&l| 2 * l > b)
                    .map(|l| exact::big(binomial(b, l)) * exact::pow(&int(2 * l - b), 2 * a + 1))
                    .sum();
                let poly = if b % 2 == 1 { &qb } else { &pb };
                assert_eq!(s, prefactor(b) * poly.eval(&int(b)), "a={a} b={b}");
            }
        }
    }
}
