#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(cfg) = qgroup_cli::decode_config(data) {
        // a decoded config re-encodes and decodes to itself
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(qgroup_cli::decode_config(&text).unwrap(), cfg);
        let _ = qgroup_cli::Job::new(cfg);
    }
});
