#![no_main]
use libfuzzer_sys::fuzz_target;
use vortex_moduli::scalars::parse_scalar_json;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_scalar_json(s);
    }
});
