#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    for rank in 1..=3 {
        if let Ok(ws) = qgroup_core::parse::parse_weight_list(data, rank) {
            assert!(ws.iter().all(|w| w.coords().len() == rank));
        }
        let _ = qgroup_core::parse::parse_weight(data, rank);
    }
});
