#![no_main]

use hsbb_core::{solve, InstanceFile, Settings};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = InstanceFile::from_json(text) else {
        return;
    };
    // Huge universes are rejected or merely slow; neither is interesting here.
    if file.num_vertices > 4096 {
        return;
    }
    let Ok(mut h) = file.to_hypergraph() else {
        return;
    };
    assert_eq!(hsbb_core::parse_instance(text).unwrap(), h);
    if h.num_vertices() <= 24 && h.num_edges() <= 40 {
        let before = h.clone();
        let r = solve(&mut h, &Settings::default());
        assert!(r.optimal && r.verified);
        assert_eq!(h, before);
    }
});
