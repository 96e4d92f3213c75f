#![no_main]

use fiedler_core::graph6;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = graph6::decode(text) {
        let encoded = graph6::encode(&g);
        assert_eq!(graph6::decode(&encoded).unwrap(), g);
    }
});
