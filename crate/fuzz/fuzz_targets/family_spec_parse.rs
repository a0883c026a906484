#![no_main]

use libfuzzer_sys::fuzz_target;
use principal_ratio::FamilySpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = text.parse::<FamilySpec>() {
        // construction may still refuse out-of-range sizes, but must not panic
        let _ = spec.build();
        assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), spec);
    }
});
