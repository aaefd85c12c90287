use spectralrec::eo::Engine;
use spectralrec::exact::{big, factorial, int, rat};
use spectralrec::expand::{m_to_p, Expansion};
use spectralrec::psi::*;

fn vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn genus_one_ones() {
    let p = Psi::new();
    for n in 1..=6usize {
        let want = big(factorial(n as u64 - 1)) / int(24);
        assert_eq!(p.intersection(1, &vec![1; n]), want);
        if n > 1 {
            assert_eq!(p.dvv(1, &vec![1; n]), want);
        }
    }
}

#[test]
fn known_values() {
    let p = Psi::new();
    assert_eq!(p.intersection(2, &[4]), rat(1, 1152));
    assert_eq!(p.intersection(2, &[3, 2]), rat(29, 5760));
    assert_eq!(p.intersection(3, &[7]), rat(1, 82944));
    assert_eq!(p.intersection(0, &[2, 0, 0, 0, 0]), int(1));
    assert_eq!(p.intersection(0, &[1, 1, 0, 0, 0]), int(2));
}

// string and dilaton against a recursion step on the largest entry
#[test]
fn string_and_dilaton() {
    let p = Psi::new();
    for g in 0..=3u32 {
        for n in 1..=4usize {
            for beta in vectors(n, 3 * g + 1) {
                let mut s = vec![0];
                s.extend(&beta);
                if 2 * g as i64 - 2 + n as i64 > 0 && beta.iter().any(|&b| b >= 2) {
                    let mut rhs = int(0);
                    for j in 0..n {
                        if beta[j] >= 1 {
                            let mut c = beta.clone();
                            c[j] -= 1;
                            rhs += p.intersection(g, &c);
                        }
                    }
                    assert_eq!(p.dvv(g, &s), rhs, "string g={g} {beta:?}");
                    let mut d = vec![1];
                    d.extend(&beta);
                    let rhs = int(2 * g as i64 - 2 + n as i64) * p.intersection(g, &beta);
                    assert_eq!(p.dvv(g, &d), rhs, "dilaton g={g} {beta:?}");
                }
            }
        }
    }
}

#[test]
fn top_coefficients_on_table_rows() {
    let e = Engine::new();
    let p = Psi::new();
    for (g, n) in [(0, 3), (0, 4), (1, 1), (1, 2), (1, 3), (2, 1), (3, 1)] {
        let x = Expansion::compute(&e, g, n).unwrap();
        let pq = m_to_p(&x.mq);
        for k in 0..=n as usize {
            let r = check_top_coefficients(&p, &x.mq, k);
            assert!(r.passed, "{:?}", r.failure);
            let r = check_top_coefficients(&p, &pq, k);
            assert!(r.passed, "{:?}", r.failure);
        }
    }
}
