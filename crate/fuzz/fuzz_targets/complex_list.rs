#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::wire::{parse_complex, parse_complex_list};

fuzz_target!(|data: &str| {
    let _ = parse_complex(data);
    let _ = parse_complex_list(data);
});
