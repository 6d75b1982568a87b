#![no_main]

use kei::format::{group_to_text, parse_group_with_limits};
use kei::Limits;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let limits = Limits {
        max_order: 32,
        ..Limits::default()
    };
    if let Ok(g) = parse_group_with_limits(text, &limits) {
        let back = parse_group_with_limits(&group_to_text(&g), &limits).unwrap();
        assert_eq!(back.rows(), g.rows());
        let _ = g.sign_characters();
    }
});
