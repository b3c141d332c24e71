#![no_main]

use homverify::TargetGraph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = TargetGraph::parse(text) {
        let again = TargetGraph::parse(&g.to_text()).expect("re-encoded target parses");
        assert_eq!(g, again);
    }
});
