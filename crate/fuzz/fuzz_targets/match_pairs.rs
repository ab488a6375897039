#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::finitetf::models;
use jl_core::wire::parse_match;

fuzz_target!(|data: &str| {
    let left = models::s3_a3();
    let right = models::c3_s3();
    let _ = parse_match(&left, &right, data);
});
