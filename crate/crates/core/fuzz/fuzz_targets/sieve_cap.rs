#![no_main]

use libfuzzer_sys::fuzz_target;
use mertens_matrix::arith::parse_sieve_cap;

fuzz_target!(|data: &str| {
    if let Ok(cap) = parse_sieve_cap(data) {
        assert!(cap > 0);
    }
});
