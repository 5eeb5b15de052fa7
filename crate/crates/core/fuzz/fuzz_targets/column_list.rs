#![no_main]

use libfuzzer_sys::fuzz_target;
use mertens_matrix::harness::parse_columns;

fuzz_target!(|data: &str| {
    if let Ok(cols) = parse_columns(data) {
        assert!(!cols.is_empty());
        assert!(cols.iter().all(|c| !c.is_empty() && !c.contains(',')));
    }
});
