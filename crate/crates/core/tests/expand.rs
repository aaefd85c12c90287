use num_traits::Zero;
use spectralrec::eo::Engine;
use spectralrec::exact::{int, rat, Rat};
use spectralrec::expand::*;

fn v(n: usize, i: usize) -> MPoly {
    MPoly::var(n, i)
}

fn c(n: usize, r: Rat) -> MPoly {
    MPoly::constant(n, r)
}

fn sq(p: &MPoly) -> MPoly {
    p.mul(p)
}

#[test]
fn n_values_at_small_points() {
    let e = Engine::new();
    let w03 = e.omega(0, 3).unwrap();
    assert_eq!(n_value(&w03, &[1, 1, 1]), int(1));
    assert_eq!(n_value(&w03, &[2, 1, 1]), int(0));
    assert_eq!(n_value(&w03, &[2, 2, 1]), int(1));
    let w11 = e.omega(1, 1).unwrap();
    assert_eq!(n_value(&w11, &[1]), rat(-1, 24));
    assert_eq!(n_value(&w11, &[3]), rat(1, 8));
}

#[test]
fn interpolated_sectors_match_closed_forms() {
    let e = Engine::new();
    let x = Expansion::compute(&e, 0, 4).unwrap();
    let s2: MPoly = (0..4).map(|i| sq(&v(4, i))).fold(MPoly::zero(4), |a, b| a.add(&b));
    assert_eq!(x.nq.sector(0), &s2.scale(&rat(1, 4)));
    assert_eq!(x.nq.sector(2), &s2.sub(&c(4, int(2))).scale(&rat(1, 4)));
    assert!(x.nq.sector(1).is_zero() && x.nq.sector(3).is_zero());

    let x = Expansion::compute(&e, 1, 2).unwrap();
    let s = sq(&v(2, 0)).add(&sq(&v(2, 1)));
    let want = s
        .sub(&c(2, int(6)))
        .mul(&s.sub(&c(2, int(2))))
        .scale(&rat(1, 384));
    assert_eq!(x.nq.sector(2), &want);
    assert!(x.nq.sector(1).is_zero());

    let x = Expansion::compute(&e, 1, 1).unwrap();
    assert_eq!(x.mq.sector(1), &v(1, 0).sub(&c(1, int(2))).scale(&rat(1, 24)));
}

#[test]
fn m_values_by_three_routes() {
    let e = Engine::new();
    let x11 = Expansion::compute(&e, 1, 1).unwrap();
    assert_eq!(x11.m_value(&[1]).unwrap(), rat(-1, 24));
    assert_eq!(x11.m_value(&[3]).unwrap(), rat(1, 4));
    let x03 = Expansion::compute(&e, 0, 3).unwrap();
    assert_eq!(x03.m_value(&[3, 2, 2]).unwrap(), int(24));
    for (x, maxb) in [(&x11, 9), (&x03, 5)] {
        for b in b_vectors(x.n() as usize, maxb, 30) {
            let m = x.m_value(&b).unwrap();
            assert_eq!(m, m_value_residue(&x.omega, &b), "b = {b:?}");
            let s: i64 = b.iter().sum();
            if (s - x.n() as i64).rem_euclid(2) == 1 {
                assert!(m.is_zero());
            }
        }
    }
}

#[test]
fn transform_polynomials() {
    use spectralrec::series::Poly;
    assert_eq!(p_in_b(1), Poly::from_ints(&[0, 2]));
    assert_eq!(p_in_b(2), Poly::from_ints(&[0, -8, 8]));
    assert_eq!(p_in_b(3), Poly::from_ints(&[0, 96, -128, 48]));
    assert_eq!(q_in_b(1), Poly::from_ints(&[-1, 2]));
    assert_eq!(q_in_b(2), Poly::from_ints(&[5, -12, 8]));
    assert_eq!(q_in_b(3), Poly::from_ints(&[-61, 166, -152, 48]));
    for a in 0..7u32 {
        let (p, q) = transform_polys(a);
        let lead: Rat = spectralrec::exact::big(spectralrec::exact::factorial(a as u64)) * int(4).pow(a as i32);
        assert_eq!(p.lead(), lead);
        assert_eq!(q.lead(), lead);
        assert_eq!(p.degree(), Some(a as usize));
    }
}

#[test]
fn exceptional_one_point() {
    let t = expansion_0_1(9).unwrap();
    for b in 1..=9i64 {
        let want = if b % 2 == 1 {
            let u = (b - 1) / 2;
            let f = |k: i64| spectralrec::exact::big(spectralrec::exact::factorial(k as u64));
            f(2 * u + 1) / (f(u + 1) * f(u + 1))
        } else {
            Rat::zero()
        };
        assert_eq!(t.get(&[b]).unwrap(), &want, "b = {b}");
    }
    assert_eq!(t.get(&[3]).unwrap(), &rat(3, 2));
}

#[test]
fn exceptional_two_point_small() {
    let t = expansion_0_2(4).unwrap();
    assert_eq!(t.get(&[1, 1]).unwrap(), &int(1));
    assert_eq!(t.get(&[2, 2]).unwrap(), &int(2));
    assert_eq!(t.get(&[1, 2]).unwrap(), &int(0));
}

// B(z1, z2) - dx1 dx2 / (x1 - x2)^2 = dw1 dw2 / (1 - w1 w2)^2 with w = 1/z
#[test]
fn regularized_bergmann_in_w() {
    use spectralrec::curve::bergmann;
    for (a, b) in [(rat(3, 1), rat(5, 2)), (rat(-7, 3), rat(2, 9)), (rat(11, 4), rat(-1, 5))] {
        let xp = |z: &Rat| Rat::from_integer(1.into()) - Rat::from_integer(1.into()) / (z * z);
        let x = |z: &Rat| z + Rat::from_integer(1.into()) / z;
        let lhs = bergmann(&a, &b) - xp(&a) * xp(&b) / ((x(&a) - x(&b)) * (x(&a) - x(&b)));
        let (w1, w2) = (a.recip(), b.recip());
        // dw/dz = -w^2
        let jac = (&w1 * &w1) * (&w2 * &w2);
        let one = Rat::from_integer(1.into());
        let rhs = one.clone() / ((&one - &w1 * &w2) * (&one - &w1 * &w2)) * jac;
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn divisor_and_string_on_m() {
    let e = Engine::new();
    for (g, n) in [(0, 3), (1, 1), (1, 2)] {
        let r = check_m_divisor_string(&e, g, n, 6).unwrap();
        assert!(r.passed, "{:?}", r.failure);
    }
}

#[test]
fn quasi_json_roundtrip() {
    let e = Engine::new();
    let x = Expansion::compute(&e, 1, 2).unwrap();
    assert_eq!(QuasiPoly::from_json(&x.mq.to_json()).unwrap(), x.mq);
}
