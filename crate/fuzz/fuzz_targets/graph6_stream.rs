#![no_main]

use libfuzzer_sys::fuzz_target;
use principal_ratio::search::{ingest_graph6, CountFold};

fuzz_target!(|data: &[u8]| {
    let Ok((count, stats)) = ingest_graph6(data, &CountFold, Some(1)) else {
        return;
    };
    assert_eq!(count, stats.consumed);
    assert_eq!(stats.consumed + stats.diagnostics.len() as u64, stats.lines);
});
