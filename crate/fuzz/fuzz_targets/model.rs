#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::wire::parse_model;

fuzz_target!(|data: &str| {
    if let Ok(m) = parse_model(data) {
        let _ = m.dimension();
    }
});
