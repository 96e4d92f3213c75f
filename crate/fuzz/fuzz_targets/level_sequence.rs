#![no_main]

use fiedler_core::enumeration::LevelSequence;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(code) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(seq) = LevelSequence::parse(code) {
        assert_eq!(LevelSequence::parse(&seq.code()).unwrap(), seq);
        let g = seq.to_graph();
        assert_eq!(g.n(), seq.len());
        assert!(g.is_tree());
    }
});
