use std::path::Path;

use lpdual::{parse_alist, read_fixture_dir, serialize_alist, AlistErrorKind};
use lpdual_core::oracle::{brute_force_ml, lp_oracle};
use lpdual_core::ParityCheckMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const HAMMING: &str = "7 3\n3 4\n2 3 2 2 1 1 1\n4 4 4\n1 3\n1 2 3\n1 2\n2 3\n1\n2\n3\n1 2 3 5\n2 3 4 6\n1 2 4 7\n";

#[test]
fn hamming_alist() {
    let h = parse_alist(HAMMING).unwrap();
    assert_eq!((h.m(), h.n(), h.num_edges()), (3, 7, 12));
    assert_eq!(h.gf2_rank(), 3);
    assert_eq!(parse_alist(&serialize_alist(&h)).unwrap(), h);
}

#[test]
fn random_regular_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let h = ParityCheckMatrix::random_regular(100, 3, 6, false, &mut rng).unwrap();
    assert_eq!(parse_alist(&serialize_alist(&h)).unwrap(), h);
}

#[test]
fn errors_name_the_offending_line() {
    let bad = HAMMING.replace("1 2 4 7", "1 2 4 9");
    let err = parse_alist(&bad).unwrap_err();
    assert_eq!(err.line, 14);
    assert!(matches!(err.kind, AlistErrorKind::IndexOutOfRange { index: 9, bound: 7 }));
}

prop_compose! {
    fn matrix()(n in 3usize..16, m in 1usize..10, seed in any::<u64>()) -> ParityCheckMatrix {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let mut row: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.4)).collect();
                if row.is_empty() {
                    row.push(rng.random_range(0..n));
                }
                row
            })
            .collect();
        ParityCheckMatrix::from_rows(n, &rows).unwrap()
    }
}

proptest! {
    #[test]
    fn parse_inverts_serialize(h in matrix()) {
        let text = serialize_alist(&h);
        let back = parse_alist(&text).unwrap();
        prop_assert_eq!(back.rows(), h.rows());
        prop_assert_eq!(back.cols(), h.cols());
    }
}

#[test]
fn frozen_fixtures_agree_with_the_oracles() {
    let fixtures = read_fixture_dir(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")).unwrap();
    assert!(fixtures.len() >= 50);
    let mut pseudocodeword_found = false;
    for f in &fixtures {
        let lp = lp_oracle(&f.code, &f.llr).unwrap();
        let (_, ml) = brute_force_ml(&f.code, &f.llr).unwrap();
        assert!(lp.unique);
        assert!((lp.value - f.lp_value).abs() < 1e-9);
        assert_eq!(ml, f.ml_value);
        assert_eq!(lp.is_integral, f.integral);
        assert_eq!(lp.support, f.support());
        pseudocodeword_found |= !f.integral && f.lp_value < f.ml_value - 1e-9;
    }
    assert!(pseudocodeword_found);
}
