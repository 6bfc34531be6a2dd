#![no_main]

use libfuzzer_sys::fuzz_target;
use qtangent::contfrac::ScheduleName;
use qtangent::updown::Variant;
use qtangent_cli::{Format, Suite};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = s.parse::<Variant>() {
        assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
    }
    if let Ok(n) = s.parse::<ScheduleName>() {
        assert_eq!(n.as_str(), s);
    }
    if let Ok(x) = s.parse::<Suite>() {
        assert_eq!(x.name(), s);
    }
    let _ = s.parse::<Format>();
});
