#![no_main]

use esurf::monodromy::parse_cycle_type;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_cycle_type(text) {
        assert_eq!(parse_cycle_type(&t.to_string()).as_ref(), Ok(&t));
    }
});
