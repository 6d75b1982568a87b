#![no_main]

use kei::{Alphabet, Mode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&flag, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let mode = if flag & 1 == 0 {
        Mode::Free
    } else {
        Mode::Coxeter
    };
    let alphabet = Alphabet::standard(1 + (flag as usize >> 1) % 6);
    if let Ok(w) = alphabet.parse_word(text, mode) {
        let shown = alphabet.format_word(&w);
        assert_eq!(alphabet.parse_word(&shown, mode).unwrap(), w);
        assert!(w.multiply(&w.invert()).unwrap().is_empty());
        if mode == Mode::Coxeter {
            assert_eq!(w.is_involution(), w.kurosh_witness().is_ok());
        }
    }
});
