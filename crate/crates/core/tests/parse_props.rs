use std::path::PathBuf;

use proptest::prelude::*;
use qgroup_core::parse::{parse_cartan, parse_int_matrix, parse_root_vec, parse_weight, parse_weight_list};
use qgroup_core::rootdata::Weight;

fn corpus(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {}", dir.display(), e))
        .map(|e| std::fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    out
}

#[test]
fn cartan_seeds_parse() {
    let seeds = corpus("parse_cartan");
    assert!(!seeds.is_empty());
    for s in seeds {
        let c = parse_cartan(&s).unwrap_or_else(|e| panic!("{:?}: {}", s, e));
        for i in 0..c.rank() {
            for j in 0..c.rank() {
                assert_eq!(c.dot(i, j), c.dot(j, i));
            }
        }
    }
}

#[test]
fn weight_seeds_parse() {
    for s in corpus("parse_weight_list") {
        assert!((1..=3).any(|r| parse_weight_list(&s, r).is_ok()), "{:?}", s);
    }
    for s in corpus("parse_root_vec") {
        assert!((1..=3).any(|r| parse_root_vec(&s, r).is_ok()), "{:?}", s);
    }
}

#[test]
fn rejects_garbage() {
    for s in ["", "A0", "2,-1;-1", "[[2,1],[0,2]]", "[[0]]", "[[2,-1],[-1,2]"] {
        assert!(parse_cartan(s).is_err(), "{:?}", s);
    }
    assert!(parse_weight("1,2", 1).is_err());
    assert!(parse_weight("1/0", 1).is_err());
    assert!(parse_root_vec("-1", 1).is_err());
    assert!(parse_root_vec("1,1", 1).is_err());
}

proptest! {
    #[test]
    fn parsers_never_panic(s in "\\PC{0,40}", rank in 1usize..4) {
        let _ = parse_int_matrix(&s);
        let _ = parse_cartan(&s);
        let _ = parse_weight(&s, rank);
        let _ = parse_weight_list(&s, rank);
        let _ = parse_root_vec(&s, rank);
    }

    #[test]
    fn structured_noise_never_panics(s in "[-0-9,;/\\[\\] ]{0,40}", rank in 1usize..4) {
        let _ = parse_int_matrix(&s);
        let _ = parse_cartan(&s);
        let _ = parse_weight_list(&s, rank);
        let _ = parse_root_vec(&s, rank);
    }

    #[test]
    fn weight_roundtrip(v in prop::collection::vec((-50i64..50, 1i64..7), 1..4)) {
        let text: Vec<String> = v.iter().map(|(a, b)| format!("{}/{}", a, b)).collect();
        let w = parse_weight(&text.join(","), v.len()).unwrap();
        let again: Vec<String> = w.coords().iter().map(|c| c.to_string()).collect();
        prop_assert_eq!(parse_weight(&again.join(","), v.len()).unwrap(), w);
    }

    #[test]
    fn int_weight_roundtrip(v in prop::collection::vec(-1000i64..1000, 1..5)) {
        let text: Vec<String> = v.iter().map(|a| a.to_string()).collect();
        prop_assert_eq!(parse_weight(&text.join(","), v.len()).unwrap(), Weight::from_ints(&v));
    }
}
