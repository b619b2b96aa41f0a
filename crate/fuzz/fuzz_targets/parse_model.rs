#![no_main]
use libfuzzer_sys::fuzz_target;
use vortex_moduli::model_file::parse_model;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(file) = parse_model(s) {
            // anything that parses must re-serialise to an equal file
            assert_eq!(parse_model(&file.to_json()).ok(), Some(file.clone()));
            let _ = file.to_model();
        }
    }
});
