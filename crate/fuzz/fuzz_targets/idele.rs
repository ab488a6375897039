#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::adele::{idele_decompose, idele_norm};
use jl_core::wire::parse_idele;

fuzz_target!(|data: &str| {
    if let Ok(g) = parse_idele(data) {
        let _ = idele_norm(&g);
        if let Err(e) = idele_decompose(&g) {
            assert!(!e.is_internal(), "{e}");
        }
    }
});
