#![no_main]

use fiedler_core::admissibility::CaterpillarSpec;
use fiedler_core::generators::Family;
use libfuzzer_sys::fuzz_target;

// parse only: the parameters may describe graphs far too large to build
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(family) = text.parse::<Family>() {
        assert_eq!(family.to_string().parse::<Family>().unwrap(), family);
    }
    if let Ok(spec) = text.parse::<CaterpillarSpec>() {
        assert_eq!(spec.to_string().parse::<CaterpillarSpec>().unwrap(), spec);
    }
});
