#![no_main]

use libfuzzer_sys::fuzz_target;
use qtangent::qalg::QPoly;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = s.parse::<QPoly>() {
        let again: QPoly = p.to_string().parse().expect("display output parses");
        assert_eq!(again, p);
    }
});
