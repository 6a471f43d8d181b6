#![no_main]

use esurf::ratfunc::parse_poly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_poly(text) {
        assert_eq!(parse_poly(&p.to_string()).as_ref(), Ok(&p));
    }
});
