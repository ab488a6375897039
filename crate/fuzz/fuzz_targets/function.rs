#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::finitetf::models;
use jl_core::wire::parse_function;

fuzz_target!(|data: &str| {
    let m = models::sl23_odd();
    if let Ok(f) = parse_function(m.group(), data) {
        let s = m.spectral_trace(&f).unwrap();
        assert_eq!(s.value, m.geometric_trace(&f).unwrap().total.value);
    }
});
