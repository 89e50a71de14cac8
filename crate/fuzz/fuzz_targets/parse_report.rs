#![no_main]

use hsbb_core::Report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = Report::from_json(text) {
        assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    }
});
