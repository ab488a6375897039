#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::wire::parse_satake;

fuzz_target!(|data: &[u8]| {
    let Some((&q, rest)) = data.split_first() else { return };
    if let Ok(s) = std::str::from_utf8(rest) {
        let _ = parse_satake(u64::from(q), s);
    }
});
