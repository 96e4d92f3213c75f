#![no_main]

use fiedler_core::parse_edge_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_edge_list(text) {
        let back = parse_edge_list(&g.to_edge_list()).expect("re-parse of own output");
        assert!(back.edges().eq(g.edges()));
    }
});
