use spectralrec::eo::Engine;
use spectralrec::expand::{n_to_m, Form};
use spectralrec::golden::*;
use spectralrec::exact::rat;

// the transcribed N and m rows are consistent with each other
#[test]
fn golden_n_transforms_to_golden_m() {
    for (g, n) in TABLE7_ROWS {
        let nq = golden(g, n, Form::N).unwrap();
        let mq = golden(g, n, Form::M).unwrap();
        assert_eq!(n_to_m(&nq), mq, "({g},{n})");
    }
}

#[test]
fn golden_spot_values() {
    let n11 = golden(1, 1, Form::N).unwrap();
    assert_eq!(n11.eval(&[3]), rat(6, 48));
    let m11 = golden(1, 1, Form::M).unwrap();
    assert_eq!(m11.eval(&[5]), rat(3, 24));
    let m12 = golden(1, 2, Form::M).unwrap();
    // (b1^2 + b2^2 + b1 b2 - 4(b1 + b2) + 5)/48 at (1, 3)
    assert_eq!(m12.eval(&[1, 3]), rat(1 + 9 + 3 - 16 + 5, 48));
}

#[test]
fn engine_matches_golden() {
    let diffs = diff_table7(&Engine::new()).unwrap();
    assert_eq!(diffs.len(), 2 * TABLE7_ROWS.iter().map(|&(_, n)| n as usize + 1).sum::<usize>());
    for d in diffs {
        assert!(d.matches(), "{:?} ({},{},{})", d.form, d.g, d.n, d.k);
    }
}
