#![no_main]

use esurf::configuration::Configuration;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = Configuration::parse(text) {
        assert_eq!(Configuration::parse(&c.to_string()).as_ref(), Ok(&c));
        let _ = c.report();
    }
});
