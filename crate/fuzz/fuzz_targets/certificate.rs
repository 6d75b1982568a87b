#![no_main]

use std::sync::OnceLock;

use kei::{
    enveloping_presentation, verify_certificate, DerivationCertificate, FiniteQuandle,
    PresentedGroup,
};
use libfuzzer_sys::fuzz_target;

fn presentation() -> &'static PresentedGroup {
    static P: OnceLock<PresentedGroup> = OnceLock::new();
    P.get_or_init(|| enveloping_presentation(&FiniteQuandle::swap_example()).unwrap())
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = DerivationCertificate::from_json(text) {
        if cert.steps.len() > 64 || cert.start.len() > 256 {
            return;
        }
        // malformed steps are errors, never panics
        let _ = verify_certificate(presentation(), &cert);
    }
});
