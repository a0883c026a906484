#![no_main]

use libfuzzer_sys::fuzz_target;
use principal_ratio::edgelist;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = edgelist::parse(text) {
        assert_eq!(edgelist::parse(&edgelist::write(&g)).unwrap(), g);
    }
});
