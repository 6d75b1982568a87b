#![no_main]

use kei::PresentedGroup;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = PresentedGroup::parse(text) {
        assert_eq!(PresentedGroup::parse(&p.to_text()).unwrap(), p);
    }
});
