#![no_main]

use kei::{fiq_op, Alphabet, FiqElement};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let alphabet = Alphabet::standard(3);
    let mut parts = text.splitn(2, '|');
    let Some(Ok(x)) = parts.next().map(|p| FiqElement::parse(&alphabet, p)) else {
        return;
    };
    assert_eq!(FiqElement::from_word(&x.expansion()).unwrap(), x);
    assert_eq!(fiq_op(&x, &x).unwrap(), x);
    if let Some(Ok(y)) = parts.next().map(|p| FiqElement::parse(&alphabet, p)) {
        let xy = fiq_op(&x, &y).unwrap();
        assert_eq!(fiq_op(&x, &xy).unwrap(), y);
    }
});
