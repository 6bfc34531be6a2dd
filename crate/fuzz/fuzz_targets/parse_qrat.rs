#![no_main]

use libfuzzer_sys::fuzz_target;
use qtangent::qalg::QRat;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = s.parse::<QRat>() {
        let again: QRat = x.to_string().parse().expect("display output parses");
        assert_eq!(again, x);
        assert!(!x.den().is_zero());
    }
});
