#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::quatcsa::QuaternionAlgebra;
use jl_core::wire::parse_quaternion;

fuzz_target!(|data: &str| {
    let _ = parse_quaternion(&QuaternionAlgebra::hamilton(), data);
});
