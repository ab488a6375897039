#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::adele::integrate_factorizable;
use jl_core::wire::parse_integrand;

fuzz_target!(|data: &str| {
    if let Ok((fs, active)) = parse_integrand(data) {
        let _ = integrate_factorizable(&fs, &active);
    }
});
