#![no_main]

use homverify::format::{parse_graph6, to_graph6};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(h) = parse_graph6(text) {
        // Whatever parses must survive a round trip.
        let again = parse_graph6(&to_graph6(&h)).expect("re-encoded graph6 parses");
        assert_eq!(h, again);
    }
});
