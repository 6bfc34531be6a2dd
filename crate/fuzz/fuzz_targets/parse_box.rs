#![no_main]

use libfuzzer_sys::fuzz_target;
use qtangent_cli::BoxSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(b) = s.parse::<BoxSpec>() {
        assert_eq!(b.to_string().parse::<BoxSpec>().unwrap(), b);
        assert!(!b.0.is_empty());
    }
});
