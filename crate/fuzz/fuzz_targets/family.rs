#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::satake::independence_witness;
use jl_core::wire::parse_family;

fuzz_target!(|data: &str| {
    if let Ok(fam) = parse_family(data) {
        if let Err(e) = independence_witness(&fam) {
            assert!(e.kind() != "InternalInconsistency", "{e}");
        }
    }
});
