use spectralrec::eo::Engine;
use spectralrec::exact::{int, rat, Rat};
use spectralrec::expand::{m_to_p, Expansion, MPoly};
use spectralrec::gw::checks::*;
use spectralrec::gw::*;

fn mp(n: usize, terms: &[(&[u32], Rat)]) -> MPoly {
    MPoly::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), c.clone())))
}

#[test]
fn partition_sums() {
    let pl = Plancherel::new();
    assert_eq!(pl.disconnected_stationary(0, &[2]), rat(7, 5760));
    assert_eq!(pl.disconnected_stationary(1, &[2]), rat(247, 5760));
    assert_eq!(pl.disconnected_stationary(1, &[0]), rat(23, 24));
    assert_eq!(pl.connected_stationary(1, &[2]), rat(1, 24));
    assert_eq!(pl.connected_stationary(0, &[0, 0, 0]), int(1));
    assert_eq!(pl.connected_stationary(0, &[1, 1]), rat(1, 2));
    assert_eq!(pl.connected_stationary(1, &[0]), rat(-1, 24));
    assert_eq!(pl.connected_stationary(2, &[4]), rat(1, 1920));
    assert_eq!(pl.connected_stationary(1, &[1]), int(0));
    assert_eq!(pl.connected_stationary(3, &[1]), int(0));
    assert!(check_vacuum(&pl, 10).passed);
    for (g, b) in [(0, vec![1, 2, 3]), (1, vec![2, 2, 0, 4]), (0, vec![1, 1, 2, 2, 4]), (2, vec![3, 3])] {
        assert_eq!(pl.connected_stationary(g, &b), pl.connected_by_set_partitions(g, &b), "{b:?}");
    }
}

#[test]
fn recursion_examples() {
    let tr = TopRec::new();
    assert_eq!(tr.stationary(0, &[0, 0, 0]).unwrap(), int(1));
    assert_eq!(tr.stationary(0, &[2, 1, 1]).unwrap(), int(1));
    assert_eq!(tr.stationary(1, &[2, 2]).unwrap(), rat(1, 6));
    assert_eq!(tr.stationary(1, &[0]).unwrap(), rat(-1, 24));
    assert!(tr.stationary(2, &[4]).is_err());
    let key = GWKey::new(0, vec![Insertion::unit(0), Insertion::point(3)]);
    assert_eq!(tr.eval(&key).unwrap(), rat(1, 4));
    let j = key.to_json();
    assert_eq!(j["insertions"][1]["class"], "point");
}

#[test]
fn oracles_agree() {
    let pl = Plancherel::new();
    let tr = TopRec::new();
    let r = check_oracle_agreement(&pl, &tr, 4, 6).unwrap();
    assert!(r.passed, "{:?}", r.failure);
    assert!(r.cases > 300);
}

#[test]
fn closed_forms_against_oracles() {
    let pl = Plancherel::new();
    let tr = TopRec::new();
    let r = check_closed_forms(&pl, &tr, 4, 3, 6).unwrap();
    assert!(r.passed, "{:?}", r.failure);
}

#[test]
fn string_divisor_dilaton() {
    let pl = Plancherel::new();
    let tr = TopRec::new();
    let r = check_gw_equations(&pl, &tr, 12, 4).unwrap();
    assert!(r.passed, "{:?}", r.failure);
}

#[test]
fn p_polynomials_from_invariants() {
    let tr = TopRec::new();
    assert_eq!(p_polynomial(&tr, 0, 3, 3).unwrap(), MPoly::one(3));
    assert_eq!(
        p_polynomial(&tr, 1, 1, 1).unwrap(),
        mp(1, &[(&[1], rat(1, 12)), (&[0], rat(-1, 24))])
    );
    let want = mp(
        2,
        &[
            (&[2, 0], rat(1, 12)),
            (&[0, 2], rat(1, 12)),
            (&[1, 1], rat(1, 12)),
            (&[1, 0], rat(-1, 8)),
            (&[0, 1], rat(-1, 8)),
        ],
    );
    assert_eq!(p_polynomial(&tr, 1, 2, 0).unwrap(), want);
    assert!(p_polynomial(&tr, 1, 2, 1).unwrap().is_zero());
}

#[test]
fn p_form_from_recursion_matches_invariants() {
    let e = Engine::new();
    let tr = TopRec::new();
    for (g, n) in [(0, 3), (0, 4), (1, 1), (1, 2), (1, 3)] {
        let x = Expansion::compute(&e, g, n).unwrap();
        assert_eq!(m_to_p(&x.mq), p_quasi(&tr, g, n).unwrap(), "(g, n) = ({g}, {n})");
    }
}

#[test]
fn evaluation_propositions() {
    let tr = TopRec::new();
    for (g, n) in [(0, 3), (0, 4), (1, 1), (1, 2), (1, 3)] {
        let r = check_eval_props(&tr, g, n, 4).unwrap();
        assert!(r.passed, "{:?}", r.failure);
    }
    let two = |a: Insertion, b: Insertion| GWKey::new(0, vec![a, b]);
    for u in 1..5u32 {
        let f = spectralrec::exact::big(spectralrec::exact::factorial(u as u64));
        let v = tr.eval(&two(Insertion::unit(0), Insertion::point(2 * u - 1))).unwrap();
        assert_eq!(v, int(1) / (&f * &f));
        let v = tr.eval(&two(Insertion::unit(1), Insertion::point(2 * u))).unwrap();
        assert_eq!(v, -tr.stationary(0, &[2 * u]).unwrap());
    }
    let k = GWKey::new(1, vec![Insertion::unit(1), Insertion::point(2)]);
    assert_eq!(tr.eval(&k).unwrap(), rat(1, 24));
}
