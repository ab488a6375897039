#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::quatcsa::QuaternionAlgebra;
use jl_core::wire::parse_quat_matrix;

fuzz_target!(|data: &str| {
    let alg = QuaternionAlgebra::local_division_model(3).unwrap();
    let _ = parse_quat_matrix(&alg, data);
});
