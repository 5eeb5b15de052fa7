#![no_main]

use libfuzzer_sys::fuzz_target;
use mertens_matrix::harness::{parse_columns, parse_sweep_csv, render_svg};

fuzz_target!(|data: &[u8]| {
    let Ok(table) = parse_sweep_csv(data) else {
        return;
    };
    let columns: Vec<String> = table.header().to_vec();
    let _ = render_svg(&table, &columns, None);
    if let Ok(cols) = parse_columns("ratio_M_sqrt,ratio_Mtilde_sqrt") {
        let _ = render_svg(&table, &cols, Some(500_000.0));
    }
});
