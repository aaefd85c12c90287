use num_traits::Zero;
use proptest::prelude::*;

use spectralrec::exact::{int, parse, rat, render};
use spectralrec::series::{Center, LocalSeries, Poly, RationalFn};
use spectralrec::Rat;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 1..=max_len).prop_map(Poly::new)
}

/// A denominator with roots only at +1 and -1.
fn branch_den() -> impl Strategy<Value = Poly> {
    (0u32..=3, 0u32..=3, 1i64..=5).prop_map(|(a, b, c)| {
        let p = Poly::from_ints(&[-1, 1]).pow(a);
        let q = Poly::from_ints(&[1, 1]).pow(b);
        &(&p * &q) * &Poly::constant(int(c))
    })
}

proptest! {
    #[test]
    fn render_parse_roundtrip(r in small_rat()) {
        prop_assert_eq!(parse(&render(&r)).unwrap(), r);
    }

    #[test]
    fn partial_fractions_recombine(num in poly(5), den in branch_den()) {
        let f = RationalFn::new(num, den).unwrap();
        let pf = f.partial_fractions(&[int(1), int(-1)]).unwrap();
        prop_assert_eq!(pf.recombine(), f);
    }

    // s * s^-1 = 1, and s^-1 equals the expansion of 1/p
    #[test]
    fn series_inverse(p in poly(5)) {
        prop_assume!(!p.coeff(0).is_zero());
        let order = 8;
        let s = RationalFn::from_poly(p.clone()).laurent_at(&Center::at(0), order).unwrap();
        let inv = s.inverse().unwrap();
        let one = s.mul(&inv);
        for e in 0..one.trunc() {
            let want = if e == 0 { int(1) } else { int(0) };
            prop_assert_eq!(one.coeff(e).unwrap(), want);
        }
        let direct = RationalFn::new(Poly::one(), p).unwrap().laurent_at(&Center::at(0), order).unwrap();
        for e in 0..inv.trunc().min(order) {
            prop_assert_eq!(inv.coeff(e).unwrap(), direct.coeff(e).unwrap());
        }
    }

    #[test]
    fn expansion_at_a_point_matches_shift(p in poly(4), c in -3i64..=3) {
        let f = RationalFn::from_poly(p.clone());
        let s = f.laurent_at(&Center::at(c), 6).unwrap();
        let shifted = p.shift(&int(c));
        for e in 0..6 {
            prop_assert_eq!(s.coeff(e).unwrap(), shifted.coeff(e as usize));
        }
    }

    #[test]
    fn series_product_is_commutative(a in prop::collection::vec(small_rat(), 1..6), b in prop::collection::vec(small_rat(), 1..6), ea in -3i64..3, eb in -3i64..3) {
        let x = LocalSeries::new(Center::at(1), ea, a);
        let y = LocalSeries::new(Center::at(1), eb, b);
        prop_assert_eq!(x.mul(&y).normalized(), y.mul(&x).normalized());
    }
}

#[test]
fn reading_beyond_truncation_is_an_error() {
    let s = LocalSeries::monomial(Center::at(0), int(1), -2, 3);
    assert!(s.coeff(3).is_err());
    assert_eq!(s.coeff(-2).unwrap(), int(1));
}
