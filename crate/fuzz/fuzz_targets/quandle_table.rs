#![no_main]

use kei::format::{parse_quandle_with_limits, quandle_to_json, quandle_to_text};
use kei::Limits;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let limits = Limits {
        max_order: 48,
        ..Limits::default()
    };
    if let Ok(q) = parse_quandle_with_limits(text, &limits) {
        // checkers must not panic on arbitrary tables
        let _ = q.check_rack();
        let _ = q.check_involutory();
        assert_eq!(
            parse_quandle_with_limits(&quandle_to_text(&q), &limits).unwrap(),
            q
        );
        assert_eq!(
            parse_quandle_with_limits(&quandle_to_json(&q), &limits).unwrap(),
            q
        );
    }
});
