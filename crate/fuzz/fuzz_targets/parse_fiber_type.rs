#![no_main]

use esurf::kodaira::FiberType;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = text.parse::<FiberType>() {
        assert_eq!(f.to_string(), text);
    }
});
