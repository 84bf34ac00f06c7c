#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    for rank in 1..=3 {
        if let Ok(nu) = qgroup_core::parse::parse_root_vec(data, rank) {
            assert_eq!(nu.rank(), rank);
        }
    }
});
