#![no_main]

use libfuzzer_sys::fuzz_target;
use principal_ratio::graph6;

fuzz_target!(|data: &[u8]| {
    // anything that decodes must re-encode to a string that decodes to the same graph
    if let Ok(g) = graph6::decode_bytes(data) {
        let text = graph6::encode(&g);
        assert_eq!(graph6::decode(&text).unwrap(), g);
    }
});
