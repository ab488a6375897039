#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::wire::parse_poly;

fuzz_target!(|data: &str| {
    let _ = parse_poly(data);
});
