#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::wire::parse_qmatrix;

fuzz_target!(|data: &str| {
    let _ = parse_qmatrix(data);
});
