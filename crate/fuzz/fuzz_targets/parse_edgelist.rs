#![no_main]

use homverify::format::{parse_edgelist, to_edgelist};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(h) = parse_edgelist(text) {
        let again = parse_edgelist(&to_edgelist(&h)).expect("re-encoded edge list parses");
        assert_eq!(h, again);
    }
});
