#![no_main]

use libfuzzer_sys::fuzz_target;
use jl_core::wire::parse_word;

// First byte picks the rank, second the residue field size.
fuzz_target!(|data: &[u8]| {
    let [n, q, rest @ ..] = data else { return };
    if let Ok(s) = std::str::from_utf8(rest) {
        let _ = parse_word(usize::from(n % 5), u64::from(*q), s);
    }
});
