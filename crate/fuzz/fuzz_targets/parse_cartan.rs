#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(c) = qgroup_core::parse::parse_cartan(data) {
        assert!(c.rank() >= 1);
        let _ = c.varpi();
    }
});
